"""S and T matrices of the pointed modular category attached to a metric group."""
import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, sqrt

import numpy as np

from .errors import DegenerateForm, NumericalInconsistency
from .quadforms import is_nondegenerate, negate, signature

TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class PointedModularData:
    q: object
    S: np.ndarray
    T: np.ndarray
    charge: complex
    sigma: int

    @property
    def group(self):
        return self.q.group

    def checks(self, tol=TOLERANCE):
        """``(name, max deviation)`` for every modular relation."""
        S, T, c = self.S, self.T, self.charge
        n = len(S)
        eye = np.eye(n)
        s2 = S @ S
        neg = np.zeros((n, n))
        g = self.group
        neg[np.arange(n), g.indices_of(-g.array)] = 1
        st = S @ T
        out = [
            ("unitary", np.abs(S @ S.conj().T - eye).max()),
            ("symmetric", np.abs(S - S.T).max()),
            ("S^2 is charge conjugation", np.abs(s2 - neg).max()),
            ("S^4 = I", np.abs(s2 @ s2 - eye).max()),
            ("(ST)^3 = c S^2", np.abs(st @ st @ st - c * s2).max()),
            ("c^8 = 1", abs(c ** 8 - 1)),
            ("c = exp(2 pi i sigma / 8)", abs(c - cmath.exp(2j * cmath.pi * self.sigma / 8))),
            ("Verlinde = group law", verlinde_deviation(self)),
        ]
        return out

    def failures(self, tol=TOLERANCE):
        return [(name, dev) for name, dev in self.checks() if not dev <= tol]

    def t_order(self):
        return t_order(self)


def build(q, tol=TOLERANCE):
    """Modular data with ``S_ab = exp(-2 pi i b(a, b)) / sqrt|A|`` and ``T = diag(exp(2 pi i q))``."""
    if not is_nondegenerate(q):
        raise DegenerateForm("the S-matrix of a degenerate form is singular")
    g = q.group
    n = g.order
    level = q.level
    arr = g.array
    pair = (arr @ q.bilinear_matrix @ arr.T) % level
    S = np.exp(-2j * np.pi * pair / level) / sqrt(n)
    T = np.diag(np.exp(2j * np.pi * q.table / level))
    sigma = signature(q)
    gauss = np.exp(2j * np.pi * q.table / level).sum() / sqrt(n)
    data = PointedModularData(q, S, T, complex(gauss), sigma)
    bad = data.failures(tol)
    if bad:
        raise NumericalInconsistency(f"modular relations fail: {bad}")
    return data


def verlinde_coefficients(data):
    """``N_ab^c = sum_x S_ax S_bx conj(S_cx) / S_0x`` as an |A|^3 array."""
    S = data.S
    return np.einsum("ax,bx,cx->abc", S, S, S.conj() / S[0][None, :])


def verlinde_deviation(data):
    from .cocycles import addition_table

    g = data.group
    n = g.order
    add = addition_table(g)
    expect = np.zeros((n, n, n))
    a, b = np.indices((n, n))
    expect[a, b, add] = 1
    return float(np.abs(verlinde_coefficients(data) - expect).max())


def t_order(data):
    return lcm(1, *(Fraction(int(v), data.q.level).denominator for v in data.q.table))


def charge_eighths(data):
    """The central charge as ``sigma/8`` (a string)."""
    return f"{data.sigma}/8"


def verify_conjugate_pair(q, tol=TOLERANCE):
    """``negate(q)`` has entrywise conjugate S and T and the reciprocal charge."""
    a = build(q, tol)
    b = build(negate(q), tol)
    return (np.abs(b.S - a.S.conj()).max() <= tol
            and np.abs(b.T - a.T.conj()).max() <= tol
            and abs(b.charge * a.charge - 1) <= tol)


def exponent_tables(data):
    """Exact rational exponents: ``S_ab ~ -b(a, b)`` and ``T_aa ~ q(a)``."""
    g = data.group
    q = data.q
    els = g.elements()
    s = [[(-q.b(x, y)) % 1 for y in els] for x in els]
    t = [q(x) for x in els]
    return s, t


__all__ = ["PointedModularData", "build", "verlinde_coefficients", "verlinde_deviation",
           "t_order", "verify_conjugate_pair", "exponent_tables", "charge_eighths", "TOLERANCE"]
