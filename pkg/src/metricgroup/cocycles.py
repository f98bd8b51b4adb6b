"""Normalized 3-cocycles ``G^3 -> Q/Z`` on finite abelian groups.

Tables are integer numpy arrays read modulo ``level``; the value at
``(x, y, z)`` (element indices) is ``values[x, y, z] / level``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd, lcm

import numpy as np

from . import linalg
from .errors import InvalidForm, NotCyclic, TooLarge
from .groups import FinAbGroup, check_order, maximal_cyclic_subgroups
from .quadforms import QuadraticForm

# |G|^3 rows by |G|^2 unknowns in the coboundary system
MAX_COBOUNDARY_ENTRIES = 1 << 26


@lru_cache(maxsize=64)
def addition_table(group):
    if group.rank == 0:
        return np.zeros((1, 1), dtype=np.int64)
    arr = group.array
    total = arr[:, None, :] + arr[None, :, :]
    return group.indices_of(total.reshape(-1, group.rank)).reshape(group.order, group.order)


def _carry(group, i):
    """``(y_i + z_i - (y+z)_i) / d_i`` for canonical coordinates, as a |G| x |G| table."""
    col = group.array[:, i]
    add = addition_table(group)
    return (col[:, None] + col[None, :] - col[add]) // group.factors[i]


def _as_level(values, level, new_level):
    return (np.asarray(values, dtype=np.int64) * (new_level // level)) % new_level


@dataclass(frozen=True, eq=False)
class Cocycle3:
    group: FinAbGroup
    values: np.ndarray
    level: int = 1

    def __post_init__(self):
        n = self.group.order
        vals = np.asarray(self.values, dtype=np.int64).reshape(n, n, n) % self.level
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, group):
        n = group.order
        return cls(group, np.zeros((n, n, n), dtype=np.int64), 1)

    @classmethod
    def from_function(cls, group, fn):
        check_order(group.order ** 3, "cocycle table")
        els = group.elements()
        vals = [Fraction(fn(x, y, z)) % 1 for x in els for y in els for z in els]
        level = lcm(1, *(v.denominator for v in vals))
        table = np.array([int(v * level) for v in vals], dtype=np.int64)
        return cls(group, table, level)

    def __call__(self, x, y, z):
        g = self.group
        return Fraction(int(self.values[g.index(x), g.index(y), g.index(z)]), self.level)

    def reduced(self):
        """Same cochain at the smallest level that holds its values."""
        g = gcd(self.level, *np.unique(self.values).tolist())
        return Cocycle3(self.group, self.values // g, self.level // g)

    def _align(self, other):
        if other.group != self.group:
            raise ValueError("cochains live on different groups")
        level = lcm(self.level, other.level)
        return (_as_level(self.values, self.level, level),
                _as_level(other.values, other.level, level), level)

    def __add__(self, other):
        a, b, level = self._align(other)
        return Cocycle3(self.group, a + b, level).reduced()

    def __sub__(self, other):
        a, b, level = self._align(other)
        return Cocycle3(self.group, a - b, level).reduced()

    def __neg__(self):
        return Cocycle3(self.group, -self.values, self.level)

    def __mul__(self, k):
        return Cocycle3(self.group, int(k) * self.values, self.level).reduced()

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cocycle3):
            return NotImplemented
        a, b, _ = self._align(other)
        return bool(np.array_equal(a, b))

    def __hash__(self):
        r = self.reduced()
        return hash((self.group, r.level, r.values.tobytes()))

    def is_normalized(self):
        v = self.values
        return not (v[0].any() or v[:, 0].any() or v[:, :, 0].any())

    def nonzero(self):
        """Sparse ``(x, y, z, value)`` entries in index order."""
        g = self.group
        out = []
        for a, b, c in zip(*np.nonzero(self.values)):
            out.append((g.element(int(a)), g.element(int(b)), g.element(int(c)),
                        Fraction(int(self.values[a, b, c]), self.level)))
        return out

    def __repr__(self):
        return f"Cocycle3({self.group}, level={self.level}, nonzero={len(self.nonzero())})"


@dataclass(frozen=True, eq=False)
class Cochain2:
    group: FinAbGroup
    values: np.ndarray
    level: int = 1

    def __call__(self, x, y):
        g = self.group
        return Fraction(int(self.values[g.index(x), g.index(y)]), self.level)

    def coboundary(self):
        add = addition_table(self.group)
        f = self.values
        n = self.group.order
        x = np.arange(n)[:, None, None]
        y = np.arange(n)[None, :, None]
        z = np.arange(n)[None, None, :]
        d = f[y, z] - f[add[x, y], z] + f[x, add[y, z]] - f[x, y]
        return Cocycle3(self.group, d, self.level)


def coboundary(phi):
    return phi.coboundary()


def random_cochain2(group, level, rng, normalized=True):
    n = group.order
    vals = rng.integers(0, level, size=(n, n))
    if normalized:
        vals[0, :] = 0
        vals[:, 0] = 0
    return Cochain2(group, vals, level)


# -- cocycle and coboundary tests ------------------------------------------
def cocycle_defect(omega):
    """First ``(x, y, z, w)`` violating the cocycle identity, or None."""
    add = addition_table(omega.group)
    w = omega.values
    n = omega.group.order
    for x in range(n):
        wx = w[x]
        total = (w                       # w(y, z, t)
                 - w[add[x]]             # w(x+y, z, t)
                 + wx[add]               # w(x, y+z, t)
                 - wx[:, add]            # w(x, y, z+t)
                 + wx[:, :, None])       # w(x, y, z)
        bad = np.argwhere(total % omega.level)
        if len(bad):
            y, z, t = (int(v) for v in bad[0])
            g = omega.group
            return g.element(x), g.element(y), g.element(z), g.element(t)
    return None


def is_cocycle(omega):
    return cocycle_defect(omega) is None


def is_coboundary(omega):
    """A normalized-or-not 2-cochain ``phi`` with ``d phi = omega``, or None.

    The system is solved over ``Z / m'`` with ``m' = m * exp(G)``, where m
    is the level of the reduced cocycle.  This suffices: if ``omega = d phi``
    over Q/Z then ``m phi`` is a 2-cocycle, which ``exp(G)`` kills in
    cohomology, so phi can be corrected to take values in ``(1/m')Z/Z``.
    """
    omega = omega.reduced()
    group = omega.group
    n = group.order
    if n ** 5 > MAX_COBOUNDARY_ENTRIES:
        raise TooLarge(f"coboundary system for |G| = {n} exceeds {MAX_COBOUNDARY_ENTRIES} entries")
    if omega.level == 1:
        return Cochain2(group, np.zeros((n, n), dtype=np.int64), 1)
    m = omega.level * group.exponent
    add = addition_table(group)
    x, y, z = (a.reshape(-1) for a in np.indices((n, n, n)))
    rows = np.arange(n ** 3)
    a = np.zeros((n ** 3, n * n), dtype=np.int64)
    np.add.at(a, (rows, y * n + z), 1)
    np.add.at(a, (rows, add[x, y] * n + z), -1)
    np.add.at(a, (rows, x * n + add[y, z]), 1)
    np.add.at(a, (rows, x * n + y), -1)
    b = (omega.values.reshape(-1) * (m // omega.level)) % m
    sol = linalg.solve_mod(a % m, b, m)
    if sol is None:
        return None
    phi = Cochain2(group, np.asarray(sol, dtype=np.int64).reshape(n, n), m)
    if coboundary(phi) != omega:  # pragma: no cover - solver self-check
        raise AssertionError("coboundary witness does not reproduce the cocycle")
    return phi


def are_cohomologous(a, b):
    return is_coboundary(a - b) is not None


def class_order(omega, bound=None):
    """Smallest k >= 1 with ``k omega`` a coboundary."""
    bound = bound or omega.reduced().level * omega.group.exponent
    for k in range(1, bound + 1):
        if is_coboundary(k * omega) is not None:
            return k
    raise AssertionError("no multiple of omega became a coboundary")  # pragma: no cover


# -- standard cocycles -------------------------------------------------------
def _from_int_table(group, table, level):
    return Cocycle3(group, table, level).reduced()


def cup_with_carry(group, i, j, numerator=1, denominator=None):
    """``omega(a, b, c) = numerator * a_i * carry_j(b, c) / denominator`` (default d_i).

    With ``i == j`` this is the standard generator of ``H^3(Z_{d_i})``; with
    ``i != j`` it is the mixed generator of order ``gcd(d_i, d_j)``.
    """
    d = denominator or group.factors[i]
    col = group.array[:, i]
    table = numerator * col[:, None, None] * _carry(group, j)[None, :, :]
    return _from_int_table(group, table, d)


def trilinear(group, i, j, k, numerator=1):
    """``a_i b_j c_k / gcd(d_i, d_j, d_k)``."""
    g = gcd(gcd(group.factors[i], group.factors[j]), group.factors[k])
    arr = group.array
    table = numerator * (arr[:, i][:, None, None] * arr[:, j][None, :, None]
                         * arr[:, k][None, None, :])
    return _from_int_table(group, table, g)


def z2cube_volume():
    """``(1/2) a_1 b_2 c_3`` on ``Z2^3``."""
    return trilinear(FinAbGroup((2, 2, 2)), 0, 1, 2)


def standard_cyclic_cocycle(n, k=1):
    """``(k/n) a (b + c - [b + c])`` on ``Z_n``; its class has order ``n / gcd(n, k)``."""
    return cup_with_carry(FinAbGroup((n,)), 0, 0, numerator=k)


def h3_generators(group):
    """Cocycles generating H^3 of a finite abelian group, with their class orders.

    One per factor (cyclic part), per pair (mixed part) and per triple
    (trilinear part).
    """
    gens = []
    r = group.rank
    for i in range(r):
        gens.append((cup_with_carry(group, i, i), group.factors[i]))
    for i, j in combinations(range(r), 2):
        gens.append((cup_with_carry(group, i, j), gcd(group.factors[i], group.factors[j])))
    for i, j, k in combinations(range(r), 3):
        order = gcd(gcd(group.factors[i], group.factors[j]), group.factors[k])
        gens.append((trilinear(group, i, j, k), order))
    return gens


def h3_representatives(group):
    """One cocycle for each combination of the generators above."""
    gens = h3_generators(group)
    for coeffs in product(*[range(o) for _, o in gens]):
        omega = Cocycle3.zero(group)
        for c, (g, _) in zip(coeffs, gens):
            if c:
                omega = omega + c * g
        yield coeffs, omega


# -- antisymmetrization --------------------------------------------------------
@dataclass(frozen=True, eq=False)
class AlternatingForm:
    """Alternating trilinear map ``G^3 -> Q/Z`` as a dense table."""

    group: FinAbGroup
    values: np.ndarray
    level: int

    def __call__(self, x, y, z):
        g = self.group
        return Fraction(int(self.values[g.index(x), g.index(y), g.index(z)]), self.level)

    def is_zero(self):
        return not (self.values % self.level).any()

    def key(self):
        g = gcd(self.level, *np.unique(self.values).tolist())
        return (self.level // g, (self.values // g).tobytes())

    def on_generators(self):
        """Values on ``(e_i, e_j, e_k)`` for ``i < j < k``, which determine the map."""
        gens = self.group.gens()
        return {(i, j, k): self(gens[i], gens[j], gens[k])
                for i, j, k in combinations(range(self.group.rank), 3)}

    def is_trilinear(self):
        add = addition_table(self.group)
        v = self.values
        lhs = v[add]                                   # f(x + x', y, z)
        rhs = v[:, None, :, :] + v[None, :, :, :]      # f(x, y, z) + f(x', y, z)
        return not ((lhs - rhs) % self.level).any()

    def is_alternating(self):
        v = self.values
        n = len(v)
        idx = np.arange(n)
        return not (v[idx, idx, :] % self.level).any() and not (
            (v + v.transpose(1, 0, 2)) % self.level).any()


def phi_star(omega):
    """Alternating six-term sum of the permuted values of omega."""
    n = omega.group.order
    w = omega.values
    a, b, c = np.indices((n, n, n))
    table = (w[a, b, c] + w[b, c, a] + w[c, a, b]
             - w[b, a, c] - w[a, c, b] - w[c, b, a]) % omega.level
    return AlternatingForm(omega.group, table, omega.level)


def is_pointed_class(omega):
    return phi_star(omega).is_zero()


# -- abelian cocycles ----------------------------------------------------------
@dataclass(frozen=True, eq=False)
class AbelianCocycle:
    omega: Cocycle3
    c: np.ndarray
    level: int

    @property
    def group(self):
        return self.omega.group

    def braiding(self, x, y):
        g = self.group
        return Fraction(int(self.c[g.index(x), g.index(y)]), self.level)

    def hexagon_defects(self):
        """Counts of violated hexagon identities (first, second)."""
        level = lcm(self.level, self.omega.level)
        c = _as_level(self.c, self.level, level)
        w = _as_level(self.omega.values, self.omega.level, level)
        add = addition_table(self.group)
        n = self.group.order
        x, y, z = np.indices((n, n, n))
        first = (c[x, add[y, z]] - c[x, y] - c[x, z]
                 - w[x, y, z] + w[y, x, z] - w[y, z, x]) % level
        second = (c[add[x, y], z] - c[x, z] - c[y, z]
                  + w[x, y, z] - w[x, z, y] + w[z, x, y]) % level
        return int(np.count_nonzero(first)), int(np.count_nonzero(second))

    def satisfies_hexagons(self):
        return self.hexagon_defects() == (0, 0)

    def trace(self):
        """The quadratic form ``a -> c(a, a)``."""
        n = self.group.order
        diag = self.c[np.arange(n), np.arange(n)]
        return QuadraticForm.from_table(self.group, diag % self.level, self.level)


def abelian_cocycle_from_form(q):
    """An abelian cocycle ``(omega, c)`` with ``c(a, a) = q(a)``.

    ``c(x, y) = sum_i q(e_i) x_i y_i + sum_{i<j} b(e_i, e_j) x_i y_j`` on
    canonical coordinates, and ``omega = sum_i d_i q(e_i) * x_i carry_i(y, z)``.
    """
    group = q.group
    arr = group.array
    level = q.level
    dint = [int(v * level) for v in q.diag]
    c = np.zeros((group.order, group.order), dtype=np.int64)
    w = np.zeros((group.order,) * 3, dtype=np.int64)
    for i, d in enumerate(group.factors):
        c += dint[i] * np.outer(arr[:, i], arr[:, i])
        w += dint[i] * d * arr[:, i][:, None, None] * _carry(group, i)[None, :, :]
        for j in range(i + 1, group.rank):
            c += int(q.cross[i][j] * level) * np.outer(arr[:, i], arr[:, j])
    return AbelianCocycle(Cocycle3(group, w, level), c % level, level)


# -- restriction and Frobenius-Schur exponents --------------------------------
def restrict(omega, sub, generator=None):
    """Pull omega back along ``Z_|H| -> H``, ``1 -> generator``."""
    group = omega.group
    g = generator if generator is not None else (sub.cyclic_generator() if sub is not None else None)
    if g is None:
        raise NotCyclic("restriction needs a cyclic subgroup")
    n = group.element_order(g)
    if sub is not None and n != sub.order:
        raise NotCyclic(f"{g} does not generate the subgroup")
    idx = np.array([group.index(group.mul(j, g)) for j in range(n)], dtype=np.int64)
    table = omega.values[np.ix_(idx, idx, idx)]
    return Cocycle3(FinAbGroup((n,) if n > 1 else ()), table, omega.level)


def cyclic_invariant(omega, g):
    """``sum_{j < ord(g)} omega(g, j g, g)``."""
    group = omega.group
    total = Fraction(0)
    for j in range(group.element_order(g)):
        total += omega(g, group.mul(j, g), g)
    return total % 1


def cyclic_class_order(omega):
    """Class order of a cocycle on a cyclic group, read off the cyclic invariant."""
    group = omega.group
    if group.rank == 0:
        return 1
    if len(group.invariant_factors) != 1:
        raise NotCyclic(f"{group} is not cyclic")
    gen = next(x for x in group.elements() if group.element_order(x) == group.order)
    return cyclic_invariant(omega, gen).denominator


@dataclass(frozen=True)
class FSexpTerm:
    generator: tuple
    order: int
    class_order: int

    @property
    def contribution(self):
        return self.order * self.class_order


def fsexp_terms(omega):
    group = omega.group
    if group.order == 1:
        return []
    out = []
    for h in maximal_cyclic_subgroups(group):
        g = h.cyclic_generator()
        out.append(FSexpTerm(g, h.order, cyclic_class_order(restrict(omega, h))))
    return out


def fsexp_from_cocycle(omega):
    """lcm over maximal cyclic H of ``ord(omega|H) * |H|``."""
    return lcm(1, *(t.contribution for t in fsexp_terms(omega)))


def fsexp_pointed(q):
    """Order of the T-matrix: lcm of the denominators of the values of q."""
    return lcm(1, *(v.denominator for v in q.values()))


def _lift(t, g):
    """Some ``x`` in Gamma with ``p(x) = g``."""
    from .gluetriples import projection

    p = projection(t)
    hits = np.nonzero(p == t.G.index(g))[0]
    return t.gamma.element(int(hits[0]))


def triple_invariant(t, g):
    """``n q(x)`` for a lift x of g, ``n = ord(g)``; independent of the lift."""
    n = t.G.element_order(g)
    return (n * t.q(_lift(t, g))) % 1


def cocycle_from_triple(t):
    """A cocycle on G whose cyclic invariants match those of the triple.

    The class restricted to ``<g>`` has invariant ``triple_invariant(t, g)``
    (the twist of a lift of g, scaled by its order).  The cocycle is
    assembled from the per-factor and per-pair generators, whose
    coefficients are fixed by the invariants of ``e_i`` and ``e_i + e_j``.
    """
    G = t.G
    gens = G.gens()
    omega = Cocycle3.zero(G)
    for i, d in enumerate(G.factors):
        k = triple_invariant(t, gens[i]) * d
        if k.denominator != 1:  # pragma: no cover - excluded by the theory
            raise AssertionError("cyclic invariant is not a multiple of 1/d")
        omega = omega + int(k) * cup_with_carry(G, i, i)
    for i, j in combinations(range(G.rank), 2):
        g = G.add(gens[i], gens[j])
        gap = (triple_invariant(t, g) - cyclic_invariant(omega, g)) % 1
        k = gap * gcd(G.factors[i], G.factors[j])
        if k.denominator != 1:  # pragma: no cover
            raise AssertionError("mixed invariant is not a multiple of 1/gcd")
        omega = omega + int(k) * cup_with_carry(G, i, j)
    return omega


@dataclass(frozen=True)
class FSexpComparison:
    pointed: int
    from_cocycle: int

    @property
    def consistent(self):
        return self.pointed == self.from_cocycle

    def __bool__(self):
        return self.consistent


def fsexp_consistency(t, omega=None):
    """Compare the T-order of ``t.q`` with the NS formula for omega."""
    omega = cocycle_from_triple(t) if omega is None else omega
    if omega.group != t.G:
        raise InvalidForm("cocycle and triple live on different groups")
    return FSexpComparison(fsexp_pointed(t.q), fsexp_from_cocycle(omega))


# -- dihedral arithmetic -----------------------------------------------------------
@dataclass(frozen=True)
class DihedralChain:
    m: int
    fsexp: int
    candidates: tuple

    @property
    def rotation_order(self):
        return self.candidates[0][0] if len(self.candidates) == 1 else None

    @property
    def reflection_order(self):
        return self.candidates[0][1] if len(self.candidates) == 1 else None

    @property
    def order(self):
        """``ord(omega)`` when the restriction orders are forced."""
        if len(self.candidates) != 1:
            return None
        r, s = self.candidates[0]
        return lcm(r, s)


def dihedral_chain(m, fsexp=None):
    """Restriction orders on ``D_2m`` (m odd) compatible with a given FSexp.

    The maximal cyclic subgroups are the rotations (order m) and the
    reflections (order 2, all conjugate), so FSexp = lcm(r m, 2 s) with
    ``r | m`` and ``s | 2``.  For odd m, H^3 is cyclic of order 2m and is
    detected by these two restrictions, so ``ord(omega) = lcm(r, s)``.
    The default FSexp is ``4 m^2``, the value forced by an order-m rotation
    class and an order-2 reflection class.
    """
    if m % 2 == 0 or m < 3:
        raise ValueError("the dihedral argument needs odd m >= 3")
    fsexp = 4 * m * m if fsexp is None else fsexp
    cands = tuple((r, s) for r in range(1, m + 1) if m % r == 0 for s in (1, 2)
                  if lcm(r * m, 2 * s) == fsexp)
    return DihedralChain(m, fsexp, cands)


__all__ = [
    "Cocycle3", "Cochain2", "AbelianCocycle", "AlternatingForm", "addition_table", "coboundary",
    "random_cochain2", "cocycle_defect", "is_cocycle", "is_coboundary", "are_cohomologous",
    "class_order", "cup_with_carry", "trilinear", "z2cube_volume", "standard_cyclic_cocycle",
    "h3_generators", "h3_representatives", "phi_star", "is_pointed_class",
    "abelian_cocycle_from_form", "restrict", "cyclic_invariant", "cyclic_class_order",
    "fsexp_terms", "fsexp_from_cocycle", "fsexp_pointed", "cocycle_from_triple", "triple_invariant",
    "fsexp_consistency", "FSexpComparison", "dihedral_chain", "DihedralChain",
]
