import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from metricgroup.errors import DegenerateForm
from metricgroup.groups import FinAbGroup
from metricgroup.moddata import (build, charge_eighths, exponent_tables, t_order,
                                 verify_conjugate_pair, verlinde_coefficients)
from metricgroup.quadforms import QuadraticForm, enumerate_forms, signature

NONDEG = [q for fs in [(2,), (3,), (4,), (5,), (2, 2), (6,), (7,), (8,), (2, 4), (3, 3), (4, 4),
                       (2, 2, 2)]
          for q in enumerate_forms(FinAbGroup(fs), nondegenerate_only=True)]


def test_semion_matrices():
    data = build(QuadraticForm.cyclic(2, Fraction(1, 4)))
    r = 1 / np.sqrt(2)
    assert np.allclose(data.S, [[r, r], [r, -r]], atol=1e-12)
    assert np.allclose(data.T, np.diag([1, 1j]), atol=1e-12)
    assert abs(data.charge - cmath.exp(2j * cmath.pi / 8)) < 1e-12
    assert charge_eighths(data) == "1/8"


def test_toric_code_matrices():
    q = QuadraticForm(FinAbGroup((2, 2)), (0, 0), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    data = build(q)
    assert np.allclose(data.S * 2, [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
    assert abs(data.charge - 1) < 1e-12
    assert t_order(data) == 2


@given(st.sampled_from(NONDEG))
def test_modular_relations(q):
    data = build(q)
    assert data.failures() == []
    assert data.sigma == signature(q)
    n = q.group.order
    assert np.allclose(data.S @ data.S.conj().T, np.eye(n), atol=1e-9)


@given(st.sampled_from(NONDEG))
def test_verlinde_reproduces_the_group_law(q):
    data = build(q)
    n = verlinde_coefficients(data)
    g = q.group
    els = g.elements()
    for a, x in enumerate(els[:4]):
        for b, y in enumerate(els[:4]):
            c = g.index(g.add(x, y))
            row = np.round(n[a, b].real).astype(int)
            assert row[c] == 1 and row.sum() == 1


@given(st.sampled_from(NONDEG))
def test_conjugate_pair(q):
    assert verify_conjugate_pair(q)


def test_degenerate_forms_are_rejected():
    with pytest.raises(DegenerateForm):
        build(QuadraticForm.zero(FinAbGroup((3,))))


def test_exponent_tables_are_exact():
    q = QuadraticForm.cyclic(3, Fraction(1, 3))
    data = build(q)
    s, t = exponent_tables(data)
    assert t == [Fraction(0), Fraction(1, 3), Fraction(1, 3)]
    assert s[1][1] == Fraction(1, 3)
    for a in range(3):
        for b in range(3):
            assert abs(data.S[a, b] - cmath.exp(2j * cmath.pi * float(s[a][b])) / np.sqrt(3)) < 1e-12
