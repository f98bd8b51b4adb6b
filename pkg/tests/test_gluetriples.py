from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metricgroup.cocycles import are_cohomologous, cocycle_from_triple, fsexp_consistency
from metricgroup.errors import GroupMismatch, TooLarge
from metricgroup.groups import (FinAbGroup, GroupHom, enumerate_isos, invariant_factor_types,
                                search_injective_homs)
from metricgroup.gluetriples import (GlueTriple, classify, enumerate_classes, enumerate_Q,
                                     equivalent, identity_triple, inverse, is_valid, product,
                                     projection, realize_triple, twist, validate)
from metricgroup.lattices import discriminant_form
from metricgroup.quadforms import (QuadraticForm, automorphisms, enumerate_forms, is_nondegenerate,
                                   signature)

Z2, Z3, Z4, Z22 = (FinAbGroup(f) for f in [(2,), (3,), (4,), (2, 2)])


@pytest.fixture(scope="module")
def tables():
    return {g.factors: enumerate_Q(g) for g in (Z2, Z3, Z4, Z22)}


def brute_triples(G):
    """Every valid triple over every Gamma of order |G|^2 and every form on it."""
    out = []
    for gamma in invariant_factor_types(G.order ** 2):
        for q in enumerate_forms(gamma, nondegenerate_only=True):
            for hom in search_injective_homs(G, gamma):
                t = GlueTriple(G, q, hom)
                if is_valid(t):
                    out.append(t)
    return out


def brute_classes(G):
    reps = []
    for t in brute_triples(G):
        if not any(r.gamma.invariant_factors == t.gamma.invariant_factors
                   and equivalent(r, t) is not None for r in reps):
            reps.append(t)
    return reps


@pytest.mark.parametrize("G, count", [(Z2, 2), (Z3, 3)])
def test_class_count_matches_pairwise_equivalence_oracle(G, count):
    reps = brute_classes(G)
    classes = enumerate_classes(G)
    assert len(reps) == len(classes) == count
    assert sorted(classify(t, classes) for t in reps) == list(range(count))


@pytest.mark.parametrize("factors, order, structure", [
    ((2,), 2, (2,)), ((3,), 3, (3,)), ((4,), 4, (4,)), ((2, 2), 8, (2, 2, 2)),
])
def test_q_group_orders_and_structure(tables, factors, order, structure):
    table = tables[factors]
    assert table.order == order
    assert table.structure().factors == structure
    assert table.check_group_axioms()


def test_classes_are_valid_and_pairwise_inequivalent(tables):
    for table in tables.values():
        for a, t in enumerate(table.classes):
            assert is_valid(t)
            for s in table.classes[a + 1:]:
                if s.gamma.invariant_factors == t.gamma.invariant_factors:
                    assert equivalent(t, s) is None


def test_identity_and_inverses(tables):
    for factors, table in tables.items():
        G = FinAbGroup(factors)
        ident = identity_triple(G)
        assert is_valid(ident)
        assert table.classes[table.identity].gamma.invariant_factors == \
            ident.gamma.invariant_factors
        for a, t in enumerate(table.classes):
            assert classify(product(t, inverse(t)), table.classes) == table.identity
            assert classify(product(ident, t), table.classes) == a


def test_map_to_cohomology_is_an_injective_homomorphism(tables):
    for table in tables.values():
        cocycles = [cocycle_from_triple(t) for t in table.classes]
        n = table.order
        for a in range(n):
            for b in range(a + 1, n):
                assert not are_cohomologous(cocycles[a], cocycles[b])
            for b in range(n):
                assert are_cohomologous(cocycles[a] + cocycles[b],
                                        cocycles[table.multiply(a, b)])


def test_fsexp_agrees_with_cyclic_restrictions(tables):
    for table in tables.values():
        for t in table.classes:
            assert fsexp_consistency(t).consistent


# the class of t * s must not depend on the representatives chosen
@given(st.sampled_from([Z2, Z3, Z4]), st.data())
def test_product_is_well_defined_on_classes(G, data):
    classes = enumerate_classes(G)
    t = data.draw(st.sampled_from(classes))
    s = data.draw(st.sampled_from(classes))
    aut = data.draw(st.sampled_from(automorphisms(t.q)))
    moved = GlueTriple(G, t.q, aut.hom.compose(t.i))
    assert equivalent(moved, t) is not None
    assert classify(product(moved, s), classes) == classify(product(t, s), classes)


@pytest.mark.parametrize("G", [Z2, Z3, Z4])
def test_twisting_by_group_automorphisms_stays_valid(G):
    for t in enumerate_classes(G):
        for a in enumerate_isos(G, G):
            assert is_valid(twist(t, a))
        assert equivalent(twist(t, GroupHom.identity(G)), t) is not None


def test_validation_reports_the_first_failure():
    G = Z2
    toric = QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    assert validate(GlueTriple.build(G, toric, [(1, 0)])).valid
    small = QuadraticForm.cyclic(2, Fraction(1, 4))
    assert validate(GlueTriple.build(G, small, [(1,)])).first_failure[0] == "order"
    degenerate = QuadraticForm.zero(FinAbGroup((2, 2)))
    assert validate(GlueTriple.build(G, degenerate, [(1, 0)])).first_failure[0] == "nondegenerate"
    assert validate(GlueTriple.build(G, toric, [(0, 0)])).first_failure[0] == "injective"
    assert validate(GlueTriple.build(G, toric, [(1, 1)])).first_failure[0] == "isotropic"
    ds = QuadraticForm(FinAbGroup((2, 2)), (Fraction(1, 4), Fraction(3, 4)), ((0, 0), (0, 0)))
    assert validate(GlueTriple.build(G, ds, [(1, 1)])).valid
    z4 = QuadraticForm.cyclic(16, Fraction(1, 32))
    bad = validate(GlueTriple.build(FinAbGroup((4,)), z4, [(4,)]))
    assert bad.first_failure[0] == "isotropic"


def test_lagrangian_failure():
    G = FinAbGroup((2,))
    q = QuadraticForm(FinAbGroup((4,)), (Fraction(1, 8),), ((0,),))
    assert not is_nondegenerate(QuadraticForm.zero(FinAbGroup((4,))))
    diag = validate(GlueTriple.build(G, q, [(2,)]))
    assert diag.first_failure[0] == "isotropic"
    q0 = QuadraticForm(FinAbGroup((4,)), (Fraction(0),), ((0,),))
    assert validate(GlueTriple.build(G, q0, [(2,)])).first_failure[0] == "nondegenerate"


def test_projection_is_a_surjection_killing_the_image():
    t = identity_triple(FinAbGroup((2, 3)))
    p = projection(t)
    assert len(set(p.tolist())) == 6
    for y in t.images:
        assert p[t.gamma.index(y)] == 0


def test_equivalence_needs_the_same_group():
    with pytest.raises(GroupMismatch):
        equivalent(identity_triple(Z2), identity_triple(Z3))
    with pytest.raises(GroupMismatch):
        product(identity_triple(Z2), identity_triple(Z4))


def test_enumeration_bound():
    with pytest.raises(TooLarge):
        enumerate_Q(FinAbGroup((8,)))
    assert enumerate_Q(FinAbGroup(())).order == 1


@pytest.mark.parametrize("G", [Z2, Z3])
def test_realization_round_trip(G):
    for t in enumerate_classes(G):
        r = realize_triple(t)
        assert r.E.is_even() and r.E.is_unimodular()
        assert r.sign in (1, -1)
        assert r.L.rank % 8 == signature(t.q)
        assert is_valid(r.recovered)
        disc = discriminant_form(r.L)
        p = projection(r.recovered)
        for g, x in r.coset_reps.items():
            assert G.element(int(p[disc.group.index(disc.coset_of(x))])) == g
