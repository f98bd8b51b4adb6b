import cmath
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metricgroup.errors import DegenerateForm, InvalidForm, NotIsotropic
from metricgroup.groups import (FinAbGroup, GroupHom, Subgroup, enumerate_isos,
                                enumerate_subgroups)
from metricgroup.quadforms import (QuadraticForm, automorphisms, constrained_isometry,
                                   direct_sum, enumerate_forms, equivalence, gauss_sum, induce,
                                   is_isotropic, is_nondegenerate, isotropic_subgroups,
                                   lagrangians, negate, orthogonal_complement, orthogonal_sum,
                                   radical, signature)

SMALL = [(2,), (3,), (4,), (5,), (2, 2)]


def brute_forms(group):
    """Every function G -> (1/2e)Z/Z that is even with a bilinear polarization."""
    level = 2 * group.exponent
    els = group.elements()
    idx = {x: i for i, x in enumerate(els)}
    add = [[idx[group.add(x, y)] for y in els] for x in els]
    neg = [idx[group.neg(x)] for x in els]
    found = set()
    for rest in product(range(level), repeat=len(els) - 1):
        t = (0,) + rest
        if any(t[neg[i]] != t[i] for i in range(len(els))):
            continue
        b = [[(t[add[i][j]] - t[i] - t[j]) % level for j in range(len(els))]
             for i in range(len(els))]
        if all((b[add[i][j]][k] - b[i][k] - b[j][k]) % level == 0
               for i in range(len(els)) for j in range(len(els)) for k in range(len(els))):
            found.add(tuple(Fraction(v, level) for v in t))
    return found


def brute_radical(q):
    els = q.group.elements()
    return [x for x in els if all(q.b(x, y) == 0 for y in els)]


def brute_isometry_count(q):
    g = q.group
    els = g.elements()
    count = 0
    for imgs in product(els, repeat=g.rank):
        try:
            hom = GroupHom(g, g, imgs)
        except ValueError:
            continue
        if len({hom(x) for x in els}) == g.order and all(q(hom(x)) == q(x) for x in els):
            count += 1
    return count


def forms_on(factors, nondegenerate=False):
    return enumerate_forms(FinAbGroup(factors), nondegenerate_only=nondegenerate)


any_form = st.sampled_from([(2,), (3,), (4,), (2, 2), (2, 4), (3, 3), (8,), (6,)]).flatmap(
    lambda fs: st.sampled_from(forms_on(fs)))
nondeg_form = st.sampled_from([(2,), (3,), (4,), (2, 2), (2, 4), (4, 4), (3, 3), (9,), (12,)]
                              ).flatmap(lambda fs: st.sampled_from(forms_on(fs, True)))


@pytest.mark.parametrize("factors", SMALL)
def test_enumeration_matches_brute_force(factors):
    g = FinAbGroup(factors)
    ours = {tuple(q.values()) for q in enumerate_forms(g)}
    assert ours == brute_forms(g)


# frozen from brute_forms
@pytest.mark.parametrize("factors, total, nondeg", [
    ((2,), 4, 2), ((3,), 3, 2), ((4,), 8, 4), ((5,), 5, 4), ((2, 2), 32, 16),
])
def test_form_counts(factors, total, nondeg):
    forms = forms_on(factors)
    assert len(forms) == total
    assert sum(is_nondegenerate(q) for q in forms) == nondeg
    assert sum(len(brute_radical(q)) == 1 for q in forms) == nondeg
    assert len(forms_on(factors, True)) == nondeg


@given(any_form)
def test_radical_matches_brute_force(q):
    assert {q.group.element(i) for i in radical(q).members} == set(brute_radical(q))


def test_invalid_forms_are_rejected():
    g = FinAbGroup((3,))
    with pytest.raises(InvalidForm):
        QuadraticForm(g, (Fraction(1, 2),), ((0,),))
    with pytest.raises(InvalidForm):
        QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 4)), (Fraction(1, 4), 0)))
    with pytest.raises(InvalidForm):
        QuadraticForm.from_function(FinAbGroup((4,)), lambda x: Fraction(x[0], 4))


@given(any_form, st.data())
def test_polarization_is_symmetric_and_bilinear(q, data):
    g = q.group
    draw = lambda: g.element(data.draw(st.integers(0, g.order - 1)))
    x, y, z = draw(), draw(), draw()
    assert q.b(x, y) == q.b(y, x)
    assert q.b(g.add(x, y), z) == (q.b(x, z) + q.b(y, z)) % 1
    assert q.b(x, y) == (q(g.add(x, y)) - q(x) - q(y)) % 1
    assert q(g.neg(x)) == q(x)


@pytest.mark.parametrize("form, sigma", [
    (QuadraticForm.cyclic(2, Fraction(1, 4)), 1),
    (QuadraticForm.cyclic(2, Fraction(3, 4)), 7),
    (QuadraticForm.cyclic(3, Fraction(1, 3)), 2),
    (QuadraticForm.cyclic(3, Fraction(2, 3)), 6),
    (QuadraticForm.cyclic(4, Fraction(1, 8)), 1),
    (QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 2)), (Fraction(1, 2), 0))), 0),
    (QuadraticForm(FinAbGroup((2, 2)), (Fraction(1, 2),) * 2,
                   ((0, Fraction(1, 2)), (Fraction(1, 2), 0))), 4),
])
def test_signatures(form, sigma):
    assert signature(form) == sigma
    raw = sum(cmath.exp(2j * cmath.pi * float(v)) for v in form.values())
    assert abs(raw / abs(raw) - cmath.exp(2j * cmath.pi * sigma / 8)) < 1e-12


def test_signature_of_degenerate_form_raises():
    with pytest.raises(DegenerateForm):
        signature(QuadraticForm.zero(FinAbGroup((2,))))


@given(nondeg_form, nondeg_form)
def test_signature_is_additive(q1, q2):
    assert signature(direct_sum(q1, q2)) == (signature(q1) + signature(q2)) % 8
    assert signature(negate(q1)) == (-signature(q1)) % 8
    assert abs(abs(gauss_sum(q1)) - 1) < 1e-9


@given(nondeg_form, st.data())
def test_equivalence_witness_is_an_isometry(q, data):
    g = q.group
    hom = data.draw(st.sampled_from(enumerate_isos(g, g)))
    moved = q.pullback(hom)
    iso = equivalence(moved, q)
    assert iso is not None
    assert all(q(iso(x)) == moved(x) for x in g.elements())


def test_inequivalent_forms():
    semion = QuadraticForm.cyclic(2, Fraction(1, 4))
    anti = QuadraticForm.cyclic(2, Fraction(3, 4))
    assert equivalence(semion, anti) is None
    toric = QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    assert equivalence(toric, direct_sum(semion, anti)) is None
    assert equivalence(negate(semion), anti) is not None


# frozen from brute_isometry_count
@pytest.mark.parametrize("form, expected", [
    (QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 2)), (Fraction(1, 2), 0))), 2),
    (QuadraticForm(FinAbGroup((2, 2)), (Fraction(1, 2),) * 2,
                   ((0, Fraction(1, 2)), (Fraction(1, 2), 0))), 6),
    (QuadraticForm(FinAbGroup((2, 2)), (Fraction(1, 4), Fraction(3, 4)), ((0, 0), (0, 0))), 1),
    (QuadraticForm(FinAbGroup((2, 2)), (Fraction(1, 4),) * 2, ((0, 0), (0, 0))), 2),
    (QuadraticForm.cyclic(9, Fraction(1, 9)), 2),
    (QuadraticForm.cyclic(5, Fraction(1, 5)), 2),
])
def test_automorphism_counts(form, expected):
    assert len(automorphisms(form)) == expected
    assert brute_isometry_count(form) == expected


def test_constrained_isometry():
    toric = QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    swap = constrained_isometry(toric, toric, [((1, 0), (0, 1))])
    assert swap is not None and swap((0, 1)) == (1, 0)
    assert constrained_isometry(toric, toric, [((1, 0), (1, 1))]) is None


@given(any_form)
def test_isotropic_subgroups_match_brute_force(q):
    ours = {s.members for s in isotropic_subgroups(q)}
    oracle = {s.members for s in enumerate_subgroups(q.group)
              if all(q(q.group.element(i)) == 0 for i in s.members)}
    assert ours == oracle
    for s in isotropic_subgroups(q):
        assert is_isotropic(q, s)


@given(nondeg_form)
def test_complement_orders_multiply(q):
    for s in enumerate_subgroups(q.group):
        assert s.order * orthogonal_complement(q, s).order == q.group.order


@given(nondeg_form)
def test_induced_form_is_nondegenerate_of_the_right_order(q):
    for h in isotropic_subgroups(q):
        q2, sq = induce(q, h)
        assert q2.group.order * h.order ** 2 == q.group.order
        assert is_nondegenerate(q2)
        assert signature(q2) == signature(q)
        for x, y in zip(sq.lifts, q2.group.gens()):
            assert q(x) == q2(y)
    for lag in lagrangians(q):
        assert lag.order ** 2 == q.group.order


def test_induce_rejects_non_isotropic():
    semion = QuadraticForm.cyclic(2, Fraction(1, 4))
    with pytest.raises(NotIsotropic):
        induce(semion, Subgroup.whole(semion.group))


def test_lagrangian_counts():
    toric = QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    fermions = QuadraticForm(FinAbGroup((2, 2)), (Fraction(1, 2),) * 2,
                             ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    assert len(lagrangians(toric)) == 2
    assert len(lagrangians(fermions)) == 0
    assert len(lagrangians(QuadraticForm.cyclic(9, Fraction(1, 9)))) == 1
    assert lagrangians(QuadraticForm.cyclic(2, Fraction(1, 4))) == []


def test_orthogonal_sum_and_pullback():
    semion = QuadraticForm.cyclic(2, Fraction(1, 4))
    q = orthogonal_sum(semion, semion, semion)
    assert q.group.factors == (2, 2, 2)
    assert q((1, 1, 1)) == Fraction(3, 4)
    diag = GroupHom(FinAbGroup((2,)), q.group, [(1, 1, 0)])
    assert q.pullback(diag)((1,)) == Fraction(1, 2)
