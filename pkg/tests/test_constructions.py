from fractions import Fraction

import pytest

from metricgroup.checks import embedding_orbits
from metricgroup.cocycles import fsexp_pointed
from metricgroup.constructions import (niemeier_orbifold, spin16_example, spin16_generators,
                                       spin16_presentation)
from metricgroup.gluetriples import is_valid, realize_triple
from metricgroup.groups import FinAbGroup
from metricgroup.quadforms import automorphisms, is_nondegenerate, lagrangians


def test_spin16_sublattice():
    ex = spin16_example()
    assert ex.quotient().factors == (2, 2)
    assert abs(ex.sublattice.det) == 16
    assert ex.disc.group.factors == (4, 4)
    assert ex.sublattice.is_even()


def test_spin16_generators_span_the_discriminant_group():
    x, y = spin16_generators()
    g = spin16_example().disc.group
    span = {g.add(g.mul(s, x), g.mul(t, y)) for s in range(4) for t in range(4)}
    assert len(span) == 16


def test_spin16_presentations():
    q, hom = spin16_presentation()
    assert hom.is_bijective()
    assert [q((s, t)) for s in range(4) for t in range(4)] == \
        [Fraction(s * t, 4) % 1 for s in range(4) for t in range(4)]
    quv, _ = spin16_presentation(uv=True)
    assert [quv((s, t)) for s in range(4) for t in range(4)] == \
        [Fraction((s + t) * t, 4) % 1 for s in range(4) for t in range(4)]


def test_spin16_symmetries_and_lagrangians():
    q = spin16_example().disc.form
    assert is_nondegenerate(q)
    assert len(automorphisms(q)) == 4
    assert len(lagrangians(q)) == 3
    embs, orbits = embedding_orbits(q, FinAbGroup((2, 2)))
    assert len(embs) == 6 and len(orbits) == 3
    assert sorted(len(o) for o in orbits) == [2, 2, 2]


def test_spin16_triple():
    ex = spin16_example()
    t = ex.triple()
    assert is_valid(t)
    assert t.gamma.factors == (4, 4)
    r = realize_triple(t)
    assert r.E.is_unimodular() and r.sign in (1, -1)


@pytest.mark.parametrize("n, gamma", [(2, (2, 2)), (3, (9,)), (4, (2, 8))])
def test_niemeier_orbifolds(n, gamma):
    orb = niemeier_orbifold(n)
    t = orb.triple()
    assert orb.quotient().factors == (n,)
    assert t.gamma.factors == gamma
    assert abs(orb.sublattice.det) == n * n
    assert is_valid(t)
    assert Fraction(1, n * n) in t.q.values()
    assert fsexp_pointed(t.q) == n * n


def test_niemeier_orbifold_rejects_small_n():
    with pytest.raises(ValueError):
        niemeier_orbifold(1)
