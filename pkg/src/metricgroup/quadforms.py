"""Quadratic forms ``q: A -> Q/Z`` on finite abelian groups.

Values are stored additively: a multiplicative twist ``exp(2 pi i r)`` is
the rational ``r`` in ``[0, 1)``.  Internally every form on a group of
exponent ``e`` takes values in ``(1/N)Z/Z`` with ``N = 2e`` and the value
table is kept as integers mod ``N``.
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from . import config
from .errors import DegenerateForm, InvalidForm, NotIsotropic, NumericalInconsistency
from .groups import (FinAbGroup, GroupHom, Subgroup, _join_cyclic, check_order,
                     search_injective_homs, subquotient)


def mod1(x):
    return Fraction(x) % 1


def parse_rational(text):
    return mod1(Fraction(str(text)))


def format_rational(x):
    x = Fraction(x)
    return "0" if x == 0 else f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass(frozen=True)
class QuadraticForm:
    """``q(sum x_i e_i) = sum x_i^2 diag[i] + sum_{i<j} x_i x_j cross[i][j]``."""

    group: FinAbGroup
    diag: tuple
    cross: tuple

    def __post_init__(self):
        k = self.group.rank
        diag = tuple(mod1(v) for v in self.diag)
        cross = tuple(tuple(mod1(v) for v in row) for row in self.cross) if k else ()
        if len(diag) != k or len(cross) != k or any(len(r) != k for r in cross):
            raise InvalidForm("diag/cross sizes do not match the group")
        for i, d in enumerate(self.group.factors):
            if cross[i][i] != 0:
                raise InvalidForm("cross must have zero diagonal")
            if mod1(2 * d * diag[i]) or mod1(d * d * diag[i]):
                raise InvalidForm(f"q(e_{i}) = {diag[i]} is not well defined on Z_{d}")
            for j in range(k):
                if cross[i][j] != cross[j][i]:
                    raise InvalidForm("cross must be symmetric")
                if mod1(d * cross[i][j]):
                    raise InvalidForm(f"b(e_{i}, e_{j}) = {cross[i][j]} is not killed by {d}")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "cross", cross)

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, group):
        k = group.rank
        return cls(group, (0,) * k, ((0,) * k,) * k)

    @classmethod
    def cyclic(cls, n, value):
        """Form on ``Z_n`` with ``q(1) = value``."""
        return cls(FinAbGroup((n,) if n > 1 else ()), (value,) if n > 1 else (),
                   ((0,),) if n > 1 else ())

    @classmethod
    def from_function(cls, group, fn):
        """Form agreeing with ``fn`` (element -> rational); raises InvalidForm otherwise."""
        gens = group.gens()
        diag = [mod1(fn(e)) for e in gens]
        cross = [[mod1(fn(group.add(a, b)) - fn(a) - fn(b)) if i != j else Fraction(0)
                  for j, b in enumerate(gens)] for i, a in enumerate(gens)]
        q = cls(group, tuple(diag), tuple(map(tuple, cross)))
        for x in group.elements():
            if q(x) != mod1(fn(x)):
                raise InvalidForm(f"function is not quadratic (mismatch at {x})")
        return q

    @classmethod
    def from_table(cls, group, table, level):
        vals = {idx: Fraction(int(v), level) for idx, v in enumerate(table)}
        return cls.from_function(group, lambda x: vals[group.index(x)])

    # -- evaluation -----------------------------------------------------
    @cached_property
    def level(self):
        return 2 * self.group.exponent

    @cached_property
    def _dint(self):
        return np.array([int(v * self.level) for v in self.diag], dtype=np.int64)

    @cached_property
    def bilinear_matrix(self):
        """Integer matrix M with ``b(x, y) = x M y^T / level mod 1``."""
        k = self.group.rank
        m = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                m[i, j] = 2 * self._dint[i] if i == j else int(self.cross[i][j] * self.level)
        return m % self.level

    @cached_property
    def table(self):
        """Integer values ``level * q(x)`` for every element in index order."""
        x = self.group.array
        n = self.level
        vals = (x * x) @ self._dint
        k = self.group.rank
        for i in range(k):
            for j in range(i + 1, k):
                c = int(self.cross[i][j] * n)
                if c:
                    vals = vals + c * x[:, i] * x[:, j]
        return vals % n

    def __call__(self, x):
        return Fraction(int(self.table[self.group.index(x)]), self.level)

    def b(self, x, y):
        v = int(np.asarray(x, dtype=np.int64) @ self.bilinear_matrix @ np.asarray(y, dtype=np.int64))
        return Fraction(v % self.level, self.level)

    def values(self):
        return [Fraction(int(v), self.level) for v in self.table]

    @cached_property
    def value_key(self):
        return tuple(int(v) for v in self.table)

    @cached_property
    def value_multiset(self):
        return tuple(sorted(self.values()))

    def __eq__(self, other):
        return (isinstance(other, QuadraticForm) and self.group == other.group
                and self.value_key == other.value_key)

    def __hash__(self):
        return hash((self.group, self.value_key))

    def __repr__(self):
        return (f"QuadraticForm({self.group}, diag={[format_rational(v) for v in self.diag]}, "
                f"cross={[[format_rational(v) for v in r] for r in self.cross]})")

    def pullback(self, hom):
        """``q o hom`` as a form on ``hom.source``."""
        return QuadraticForm.from_function(hom.source, lambda x: self(hom(x)))


@dataclass(frozen=True)
class FormIsometry:
    """A group isomorphism ``hom`` with ``target o hom == source`` pointwise."""

    hom: GroupHom
    source: QuadraticForm
    target: QuadraticForm

    def __call__(self, x):
        return self.hom(x)

    def compose(self, other):
        """``self o other``."""
        return FormIsometry(self.hom.compose(other.hom), other.source, self.target)

    def inverse(self):
        return FormIsometry(self.hom.inverse(), self.target, self.source)

    def verify(self):
        if not self.hom.is_bijective():
            return False
        return bool(np.array_equal(self.target.table[self.hom.index_map], self.source.table))


# -- basic operations ----------------------------------------------------
def polarize(q):
    """Bicharacter ``b(x, y) = q(x + y) - q(x) - q(y)``."""
    return q.b


def _pairings_with(q, gens):
    """``level * b(x, g)`` for every element x (rows) and every g in gens (cols)."""
    if not gens:
        return np.zeros((q.group.order, 0), dtype=np.int64)
    g = np.array(gens, dtype=np.int64).reshape(len(gens), q.group.rank)
    return (q.group.array @ q.bilinear_matrix @ g.T) % q.level


def orthogonal_complement(q, sub):
    """``{x : b(x, h) = 0 for all h in sub}``."""
    pair = _pairings_with(q, list(sub.generators))
    idx = np.nonzero(~pair.any(axis=1))[0]
    group = q.group
    return Subgroup.generated_by(group, [group.element(int(i)) for i in idx]) if len(idx) > 1 \
        else Subgroup.trivial(group)


def radical(q):
    return orthogonal_complement(q, Subgroup.whole(q.group))


def is_nondegenerate(q):
    return radical(q).order == 1


def gauss_sum(q):
    """``(1/sqrt|A|) sum_a exp(2 pi i q(a))`` in floating point."""
    z = np.exp(2j * np.pi * q.table / q.level).sum()
    return complex(z) / math.sqrt(q.group.order)


def gauss_milgram_signature(q):
    """Signature ``n`` in Z/8 with ``gauss_sum(q) == exp(2 pi i n / 8)``."""
    if not is_nondegenerate(q):
        raise DegenerateForm("Gauss-Milgram signature needs a nondegenerate form")
    z = gauss_sum(q)
    if abs(abs(z) - 1) > 1e-9:
        raise NumericalInconsistency(f"|Gauss sum| = {abs(z)} for a nondegenerate form")
    angle = cmath.phase(z) / (2 * math.pi) * 8
    n = round(angle)
    if abs(angle - n) * 2 * math.pi / 8 > 1e-6:
        raise NumericalInconsistency(f"Gauss sum argument {angle}/8 is not a multiple of 1/8")
    return n % 8


signature = gauss_milgram_signature


def direct_sum(q1, q2):
    k1, k2 = q1.group.rank, q2.group.rank
    cross = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
    for i in range(k1):
        for j in range(k1):
            cross[i][j] = q1.cross[i][j]
    for i in range(k2):
        for j in range(k2):
            cross[k1 + i][k1 + j] = q2.cross[i][j]
    return QuadraticForm(q1.group.direct_sum(q2.group), q1.diag + q2.diag,
                         tuple(map(tuple, cross)))


def orthogonal_sum(*forms):
    out = QuadraticForm.zero(FinAbGroup(()))
    for f in forms:
        out = direct_sum(out, f)
    return out


def negate(q):
    return QuadraticForm(q.group, tuple(-v for v in q.diag),
                         tuple(tuple(-v for v in row) for row in q.cross))


# -- isotropic subgroups -------------------------------------------------
def is_isotropic(q, sub):
    return not q.table[sorted(sub.members)].any()


def isotropic_subgroups(q):
    """All subgroups on which q vanishes, sorted by order then members."""
    group = q.group
    check_order(group.order)
    iso = [int(i) for i in np.nonzero(q.table == 0)[0]]
    found = {frozenset([0]): Subgroup.trivial(group)}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for s in frontier:
            arr = np.array(sorted(s.members), dtype=np.int64)
            pair = _pairings_with(q, list(s.generators))
            for x in iso:
                if x in s.members or pair[x].any():
                    continue
                g = group.element(x)
                members = frozenset(_join_cyclic(group, arr, g).tolist())
                if members not in found:
                    sub = Subgroup(group, s.generators + (g,), members)
                    found[members] = sub
                    nxt.append(sub)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, sorted(s.members)))


def lagrangians(q):
    """Isotropic subgroups H with ``|H|^2 == |A|``."""
    n = q.group.order
    r = math.isqrt(n)
    if r * r != n:
        return []
    return [h for h in isotropic_subgroups(q) if h.order == r]


def induce(q, sub):
    """Form ``q''`` on ``H^perp / H`` together with the subquotient data."""
    if not is_isotropic(q, sub):
        raise NotIsotropic("subgroup is not isotropic")
    perp = orthogonal_complement(q, sub)
    if not sub.members <= perp.members:
        raise NotIsotropic("subgroup is not contained in its orthogonal complement")
    sq = subquotient(q.group, perp, sub)
    lifts = sq.lifts
    new = sq.group
    diag = tuple(q(x) for x in lifts)
    cross = tuple(tuple(q.b(x, y) if i != j else Fraction(0) for j, y in enumerate(lifts))
                  for i, x in enumerate(lifts))
    return QuadraticForm(new, diag, cross), sq


def induced_form(q, sub):
    return induce(q, sub)[0]


# -- equivalence ----------------------------------------------------------
def _isometries(q1, q2, fixed=(), limit=None):
    """Isometries ``q1 -> q2``; ``fixed`` is a list of (x, y) with j(x) = y required."""
    g1, g2 = q1.group, q2.group
    if g1.invariant_factors != g2.invariant_factors:
        return
    if q1.value_multiset != q2.value_multiset:
        return
    check_order(g2.order)
    ords = g2.order_table
    gens1 = g1.gens()
    b1 = [[q1.b(a, b) for b in gens1] for a in gens1]
    level = q2.level
    b1int = [[int(v * level) % level for v in row] for row in b1]
    m2 = q2.bilinear_matrix
    arr2 = g2.array

    # a fixed constraint is checked once every generator it involves is assigned
    checks = {}
    for x, y in fixed:
        x = g1.reduce(x)
        last = max((i for i, a in enumerate(x) if a), default=-1)
        checks.setdefault(last, []).append((x, g2.reduce(y)))
    for x, y in checks.pop(-1, []):
        if any(y):
            return

    def candidates(i):
        want = int(q1(gens1[i]) * level) % level
        return np.nonzero((ords == g1.factors[i]) & (q2.table == want))[0]

    def compatible(i, y, chosen):
        row = arr2[y] @ m2
        for j, c in enumerate(chosen):
            if int(row @ arr2[c]) % level != b1int[i][j]:
                return False
        if i in checks:
            imgs = [g2.element(c) for c in chosen] + [g2.element(y)]
            for x, target in checks[i]:
                img = g2.zero
                for a, v in zip(x, imgs):
                    img = g2.add(img, g2.mul(a, v))
                if img != target:
                    return False
        return True

    for hom in search_injective_homs(g1, g2, candidates, compatible, limit=limit):
        yield FormIsometry(hom, q1, q2)


def equivalence(q1, q2):
    """A witness isometry ``q1 -> q2`` or None."""
    if q1.group.invariant_factors != q2.group.invariant_factors:
        return None
    if q1.value_multiset != q2.value_multiset:
        return None
    if is_nondegenerate(q1) and is_nondegenerate(q2) and signature(q1) != signature(q2):
        return None
    return next(_isometries(q1, q2, limit=1), None)


def is_equivalent(q1, q2):
    return equivalence(q1, q2) is not None


def automorphisms(q):
    return list(_isometries(q, q))


def constrained_isometry(q1, q2, fixed):
    """An isometry ``j`` with ``j(x) == y`` for each pair in ``fixed``, or None."""
    return next(_isometries(q1, q2, fixed=fixed, limit=1), None)


# -- enumeration -----------------------------------------------------------
def form_parameter_ranges(group):
    """Admissible numerators over ``level`` for diag and cross entries."""
    n = 2 * group.exponent
    diag = []
    for d in group.factors:
        step = n // (2 * d) if d % 2 == 0 else n // d
        diag.append(list(range(0, n, step)))
    cross = {}
    for i, j in product(range(group.rank), repeat=2):
        if i < j:
            g = math.gcd(group.factors[i], group.factors[j])
            cross[i, j] = list(range(0, n, n // g))
    return n, diag, cross


def form_tables(group):
    """Every quadratic form on ``group`` as (diag ints, cross ints, value tables)."""
    check_order(group.order)
    n, diag, cross = form_parameter_ranges(group)
    pairs = sorted(cross)
    count = math.prod(len(r) for r in diag) * math.prod(len(cross[p]) for p in pairs)
    check_order(count, "form parameter space", bound=config.MAX_FORM_PARAMETERS)
    grids = np.meshgrid(*[np.array(r) for r in diag], *[np.array(cross[p]) for p in pairs],
                        indexing="ij")
    params = np.stack([g.reshape(-1) for g in grids], axis=1).astype(np.int64) \
        if grids else np.zeros((1, 0), dtype=np.int64)
    k = group.rank
    x = group.array
    tables = (x * x) @ params[:, :k].T
    for col, (i, j) in enumerate(pairs):
        tables = tables + np.outer(x[:, i] * x[:, j], params[:, k + col])
    return n, params, pairs, (tables % n).T


def _build(group, n, row, pairs):
    k = group.rank
    diag = tuple(Fraction(int(v), n) for v in row[:k])
    cross = [[Fraction(0)] * k for _ in range(k)]
    for col, (i, j) in enumerate(pairs):
        cross[i][j] = cross[j][i] = Fraction(int(row[k + col]), n)
    return QuadraticForm(group, diag, tuple(map(tuple, cross)))


def nondegenerate_mask(group, n, params, pairs):
    """Boolean mask of the parameter rows giving nondegenerate forms."""
    k = group.rank
    if k == 0:
        return np.ones(len(params), dtype=bool)
    m = np.zeros((len(params), k, k), dtype=np.int64)
    for i in range(k):
        m[:, i, i] = 2 * params[:, i]
    for col, (i, j) in enumerate(pairs):
        m[:, i, j] = m[:, j, i] = params[:, k + col]
    xm = np.einsum("ak,fkl->fal", group.array, m) % n
    zero_rows = (~xm.any(axis=2)).sum(axis=1)
    return zero_rows == 1


def enumerate_forms(group, nondegenerate_only=False):
    """All quadratic forms on ``group``, sorted by value table."""
    n, params, pairs, tables = form_tables(group)
    if nondegenerate_only:
        keep = nondegenerate_mask(group, n, params, pairs)
        params, tables = params[keep], tables[keep]
    order = sorted(range(len(params)), key=lambda r: tuple(tables[r]))
    return [_build(group, n, params[r], pairs) for r in order]


__all__ = [
    "QuadraticForm", "FormIsometry", "mod1", "polarize", "radical", "is_nondegenerate",
    "gauss_sum", "gauss_milgram_signature", "signature", "isotropic_subgroups", "lagrangians",
    "orthogonal_complement", "induce", "induced_form", "direct_sum", "orthogonal_sum", "negate",
    "equivalence", "is_equivalent", "automorphisms", "constrained_isometry", "enumerate_forms",
]
