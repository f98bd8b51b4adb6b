"""Finite abelian groups given by cyclic decompositions.

A group is ``Z_{d_1} x ... x Z_{d_k}``; its elements are coordinate tuples
reduced mod ``d_i``.  Elements are also numbered 0..order-1 in mixed radix
(last coordinate fastest), which is how subgroups store their members.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from math import gcd, lcm, prod

import numpy as np

from . import config, linalg
from .errors import InvalidSubgroup, TooLarge


def check_order(n, what="group", bound=None):
    bound = config.max_order() if bound is None else bound
    if n > bound:
        raise TooLarge(f"{what} of order {n} exceeds bound {bound} "
                       "(set METRICGROUP_MAX_ORDER to raise it)")


@dataclass(frozen=True)
class FinAbGroup:
    """``Z_{d_1} x ... x Z_{d_k}`` with every ``d_i >= 2``.

    ``factors`` need not form a divisibility chain; direct sums keep their
    summands side by side.  ``invariant_factors`` gives the canonical chain.
    """

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        if any(d < 2 for d in self.factors):
            raise ValueError(f"cyclic factors must be >= 2, got {self.factors}")

    @classmethod
    def parse(cls, text):
        """Parse the literal ``"2,4"`` (``""`` or ``"1"`` is the trivial group)."""
        parts = [p.strip() for p in str(text).split(",") if p.strip()]
        return cls(tuple(d for d in map(int, parts) if d != 1))

    @classmethod
    def trivial(cls):
        return cls(())

    def __str__(self):
        if not self.factors:
            return "1"
        return " x ".join(f"Z{d}" for d in self.factors)

    @property
    def rank(self):
        return len(self.factors)

    @cached_property
    def order(self):
        return prod(self.factors)

    @cached_property
    def exponent(self):
        return reduce(lcm, self.factors, 1)

    @cached_property
    def invariant_factors(self):
        if not self.factors:
            return ()
        s, _, _ = linalg.smith_normal_form(
            [[d if i == j else 0 for j in range(self.rank)] for i, d in enumerate(self.factors)])
        return tuple(d for d in linalg.diagonal(s) if d > 1)

    @cached_property
    def elementary_divisors(self):
        from sympy import factorint
        out = []
        for d in self.factors:
            out += [p ** e for p, e in factorint(d).items()]
        return tuple(sorted(out))

    def is_isomorphic(self, other):
        return self.invariant_factors == other.invariant_factors

    def canonical(self):
        return FinAbGroup(self.invariant_factors)

    def direct_sum(self, other):
        return FinAbGroup(self.factors + other.factors)

    # -- elements -------------------------------------------------------
    @property
    def zero(self):
        return (0,) * self.rank

    def gens(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def reduce(self, x):
        if len(x) != self.rank:
            raise ValueError(f"element {x} has wrong length for {self}")
        return tuple(int(a) % d for a, d in zip(x, self.factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x):
        return tuple(-a % d for a, d in zip(x, self.factors))

    def mul(self, n, x):
        return tuple(n * a % d for a, d in zip(x, self.factors))

    def element_order(self, x):
        return reduce(lcm, (d // gcd(a, d) for a, d in zip(x, self.factors)), 1)

    @cached_property
    def strides(self):
        out = []
        s = 1
        for d in reversed(self.factors):
            out.append(s)
            s *= d
        return tuple(reversed(out))

    def index(self, x):
        return sum((int(a) % d) * s for a, d, s in zip(x, self.factors, self.strides))

    def element(self, idx):
        return tuple((idx // s) % d for d, s in zip(self.factors, self.strides))

    @cached_property
    def array(self):
        """All elements as an ``order x rank`` int64 array, in index order."""
        check_order(self.order)
        if not self.factors:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.arange(d) for d in self.factors], indexing="ij")
        return np.stack([g.reshape(-1) for g in grids], axis=1).astype(np.int64)

    def elements(self):
        return [tuple(int(v) for v in row) for row in self.array]

    def indices_of(self, arr):
        """Vectorised ``index`` for an ``n x rank`` array (reduced first)."""
        arr = np.asarray(arr, dtype=np.int64)
        if not self.factors:
            return np.zeros(arr.shape[0] if arr.ndim else 1, dtype=np.int64)
        arr = arr.reshape(-1, self.rank)
        mods = np.array(self.factors, dtype=np.int64)
        return (arr % mods) @ np.array(self.strides, dtype=np.int64)

    @cached_property
    def order_table(self):
        """Element orders in index order."""
        out = np.ones(self.order, dtype=np.int64)
        for d, col in zip(self.factors, self.array.T):
            out = np.lcm(out, d // np.gcd(col, d))
        return out


def pairing(group):
    """The standard pairing ``<x, chi> = sum x_i chi_i / d_i mod 1``.

    This fixes the identification of the character group with ``group``.
    """
    def pair(x, chi):
        return sum(Fraction(a * b, d) for a, b, d in zip(x, chi, group.factors)) % 1
    return pair


dual_identification = pairing


def exterior_cube(group):
    """Third exterior power: sum over i<j<k of ``Z_gcd(d_i, d_j, d_k)``."""
    fs = [gcd(gcd(a, b), c) for a, b, c in combinations(group.factors, 3)]
    return FinAbGroup(tuple(f for f in fs if f > 1))


class Subgroup:
    """A subgroup stored as its set of member indices plus a generating set."""

    def __init__(self, parent, generators, members):
        self.parent = parent
        self.generators = tuple(tuple(g) for g in generators)
        self.members = frozenset(int(m) for m in members)

    @classmethod
    def generated_by(cls, parent, gens):
        gens = [parent.reduce(g) for g in gens]
        members = np.array([0], dtype=np.int64)
        kept = []
        for g in gens:
            grown = _join_cyclic(parent, members, g)
            if len(grown) > len(members):
                kept.append(g)
                members = grown
        return cls(parent, kept, members.tolist())

    @classmethod
    def trivial(cls, parent):
        return cls(parent, (), [0])

    @classmethod
    def whole(cls, parent):
        return cls(parent, parent.gens(), range(parent.order))

    @classmethod
    def from_members(cls, parent, members):
        """Build from an explicit element set; raises InvalidSubgroup if not closed."""
        members = sorted({parent.index(m) if isinstance(m, tuple) else int(m) for m in members})
        sub = cls.generated_by(parent, [parent.element(m) for m in members])
        if sub.members != frozenset(members):
            raise InvalidSubgroup("element set is not closed under addition")
        return sub

    @property
    def order(self):
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        if isinstance(x, (int, np.integer)):
            return int(x) in self.members
        return self.parent.index(x) in self.members

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent == other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((self.parent, self.members))

    def __le__(self, other):
        return self.members <= other.members

    def __repr__(self):
        return f"Subgroup(order={self.order}, generators={list(self.generators)})"

    def elements(self):
        return [self.parent.element(m) for m in sorted(self.members)]

    def join(self, other):
        return Subgroup.generated_by(self.parent, list(self.generators) + list(other.generators))

    def is_cyclic(self):
        ords = self.parent.order_table[sorted(self.members)]
        return int(ords.max()) == self.order

    def cyclic_generator(self):
        for m in sorted(self.members):
            if int(self.parent.order_table[m]) == self.order:
                return self.parent.element(m)
        return None

    def structure(self):
        """Abstract group isomorphic to this subgroup, with the embedding."""
        sq = subquotient(self.parent, self, Subgroup.trivial(self.parent))
        return sq.group, GroupHom(sq.group, self.parent, sq.lifts)


def _join_cyclic(parent, members, g):
    """Member indices of ``S + <g>`` for S given by an index array."""
    n = parent.element_order(g)
    if n == 1:
        return members
    multiples = np.array([parent.mul(k, g) for k in range(n)], dtype=np.int64)
    coords = parent.array[members]
    summed = coords[:, None, :] + multiples[None, :, :]
    return np.unique(parent.indices_of(summed.reshape(-1, parent.rank)))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by the images of the source's standard generators."""

    source: FinAbGroup
    target: FinAbGroup
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.target.reduce(y) for y in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.rank:
            raise ValueError("need one image per source generator")
        for d, y in zip(self.source.factors, imgs):
            if any(self.target.mul(d, y)):
                raise ValueError(f"image {y} of a generator of order {d} is not killed by {d}")

    @cached_property
    def matrix(self):
        return np.array(self.images, dtype=np.int64).reshape(self.source.rank, self.target.rank)

    def __call__(self, x):
        out = self.target.zero
        for a, y in zip(x, self.images):
            out = self.target.add(out, self.target.mul(a, y))
        return out

    @cached_property
    def index_map(self):
        """Target index of the image of every source element, in source index order."""
        return self.target.indices_of(self.source.array @ self.matrix)

    def is_injective(self):
        return len(np.unique(self.index_map)) == self.source.order

    def is_surjective(self):
        return len(np.unique(self.index_map)) == self.target.order

    def is_bijective(self):
        return self.source.order == self.target.order and self.is_injective()

    def image(self):
        return Subgroup(self.target, [y for y in self.images if any(y)], self.index_map.tolist())

    def kernel(self):
        idx = np.nonzero(self.index_map == 0)[0]
        return Subgroup.from_members(self.source, idx.tolist())

    def compose(self, other):
        """``self o other``."""
        return GroupHom(other.source, self.target, [self(y) for y in other.images])

    def inverse(self):
        if not self.is_bijective():
            raise ValueError("not an isomorphism")
        lookup = {int(t): s for s, t in enumerate(self.index_map)}
        return GroupHom(self.target, self.source,
                        [self.source.element(lookup[self.target.index(e)]) for e in self.target.gens()])

    def __eq__(self, other):
        return (isinstance(other, GroupHom) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    @classmethod
    def identity(cls, group):
        return cls(group, group, group.gens())


@dataclass(frozen=True)
class Subquotient:
    """``K/H`` for subgroups ``H <= K`` of an ambient group.

    ``lifts[j]`` is an ambient element over the j-th generator of ``group``;
    ``project`` maps ambient members of K to coordinates in ``group``.
    """

    ambient: FinAbGroup
    group: FinAbGroup
    lifts: tuple
    table: dict

    def project(self, x):
        return self.table[self.ambient.index(x)]


def _coefficients(parent, gens):
    """Map every element of <gens> to one integer coefficient vector."""
    m = len(gens)
    coeff = {0: (0,) * m}
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            x = parent.element(idx)
            c = coeff[idx]
            for a, g in enumerate(gens):
                y = parent.index(parent.add(x, g))
                if y not in coeff:
                    coeff[y] = c[:a] + (c[a] + 1,) + c[a + 1:]
                    nxt.append(y)
        frontier = nxt
    return coeff


def subquotient(parent, big, small):
    """Present ``big / small`` as a FinAbGroup in invariant-factor form."""
    if not small.members <= big.members:
        raise InvalidSubgroup("small subgroup is not contained in big subgroup")
    gens = list(big.generators)
    m = len(gens)
    if m == 0:
        return Subquotient(parent, FinAbGroup(()), (), {0: ()})
    coeff = _coefficients(parent, gens)
    relations = linalg.kernel_mod(gens, list(parent.factors))
    relations += [list(coeff[parent.index(h)]) for h in small.generators]
    factors, proj, lifts = linalg.cokernel(relations, m)
    q = FinAbGroup(tuple(factors))
    table = {}
    for idx, c in coeff.items():
        table[idx] = tuple(sum(ci * proj[i][j] for i, ci in enumerate(c)) % f
                           for j, f in enumerate(factors))
    lift_elems = []
    for row in lifts:
        x = parent.zero
        for a, g in zip(row, gens):
            x = parent.add(x, parent.mul(a, g))
        lift_elems.append(x)
    return Subquotient(parent, q, tuple(lift_elems), table)


def quotient(group, sub):
    """``group / sub`` with its projection homomorphism."""
    if sub.parent != group:
        raise InvalidSubgroup("subgroup belongs to a different group")
    closed = Subgroup.generated_by(group, sub.generators)
    if closed.members != sub.members:
        raise InvalidSubgroup("subgroup is not closed")
    n = group.rank
    relations = [[d if i == j else 0 for j in range(n)] for i, d in enumerate(group.factors)]
    relations += [list(h) for h in sub.generators]
    if n == 0:
        return FinAbGroup(()), GroupHom(group, FinAbGroup(()), [])
    factors, proj, _ = linalg.cokernel(relations, n)
    q = FinAbGroup(tuple(factors))
    return q, GroupHom(group, q, [tuple(row) for row in proj])


def cyclic_subgroups(group):
    check_order(group.order)
    seen = {}
    for idx in range(group.order):
        g = group.element(idx)
        sub = Subgroup.generated_by(group, [g])
        seen.setdefault(sub.members, sub)
    return sorted(seen.values(), key=lambda s: (s.order, sorted(s.members)))


def enumerate_subgroups(group):
    """Every subgroup, each exactly once, sorted by order then members."""
    check_order(group.order)
    cyclic = cyclic_subgroups(group)
    found = {frozenset([0]): Subgroup.trivial(group)}
    frontier = [found[frozenset([0])]]
    while frontier:
        nxt = []
        for s in frontier:
            arr = np.array(sorted(s.members), dtype=np.int64)
            for c in cyclic:
                if c.members <= s.members:
                    continue
                g = c.generators[0]
                members = frozenset(_join_cyclic(group, arr, g).tolist())
                if members not in found:
                    sub = Subgroup(group, s.generators + (g,), members)
                    found[members] = sub
                    nxt.append(sub)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, sorted(s.members)))


def maximal_cyclic_subgroups(group):
    cyc = cyclic_subgroups(group)
    return [c for c in cyc if not any(c.members < d.members for d in cyc)]


def search_injective_homs(source, target, candidates=None, compatible=None, limit=None):
    """Backtracking search for injective homomorphisms ``source -> target``.

    ``candidates(i)`` may narrow the target indices tried for generator i
    (default: all elements of the right order); ``compatible(i, y, chosen)``
    may reject a partial assignment.  Yields GroupHom objects.
    """
    check_order(target.order)
    ords = target.order_table
    k = source.rank
    if k == 0:
        yield GroupHom(source, target, [])
        return
    pools = []
    for i, d in enumerate(source.factors):
        pool = np.nonzero(ords == d)[0] if candidates is None else np.asarray(candidates(i))
        pools.append([int(v) for v in pool])
    count = 0
    chosen = []

    def rec(i, members):
        nonlocal count
        if i == k:
            count += 1
            yield GroupHom(source, target, [target.element(c) for c in chosen])
            return
        d = source.factors[i]
        mset = set(members.tolist())
        for y in pools[i]:
            ye = target.element(y)
            if any(target.index(target.mul(j, ye)) in mset for j in range(1, d)):
                continue
            if compatible is not None and not compatible(i, y, chosen):
                continue
            chosen.append(y)
            yield from rec(i + 1, _join_cyclic(target, members, ye))
            chosen.pop()
            if limit is not None and count >= limit:
                return

    yield from rec(0, np.array([0], dtype=np.int64))


def enumerate_isos(source, target):
    """All isomorphisms ``source -> target`` (empty iff non-isomorphic)."""
    check_order(source.order)
    check_order(target.order)
    if not source.is_isomorphic(target):
        return []
    return list(search_injective_homs(source, target))


def automorphism_count(group):
    """``|Aut(group)|`` from the elementary divisors (Hillar and Rhea's formula)."""
    from sympy import factorint

    by_prime = {}
    for q in group.elementary_divisors:
        (p, e), = factorint(q).items()
        by_prime.setdefault(p, []).append(e)
    total = 1
    for p, es in by_prime.items():
        es = sorted(es)
        n = len(es)
        for k, e in enumerate(es, start=1):
            d = max(l for l in range(1, n + 1) if es[l - 1] == e)
            c = min(l for l in range(1, n + 1) if es[l - 1] == e)
            total *= (p ** d - p ** (k - 1)) * p ** (e * (n - d)) * p ** ((e - 1) * (n - c + 1))
    return total


def invariant_factor_types(order):
    """Every abelian group of the given order, as invariant-factor chains."""
    out = []

    def rec(rest, chain):
        # chain holds factors from the largest down; each divides the one before
        if rest == 1:
            out.append(tuple(reversed(chain)))
            return
        for d in range(2, (chain[-1] if chain else rest) + 1):
            if rest % d == 0 and (not chain or chain[-1] % d == 0):
                rec(rest // d, chain + [d])

    rec(order, [])
    return [FinAbGroup(c) for c in sorted(out)]


def hom_permutation(hom):
    return hom.index_map


__all__ = [
    "FinAbGroup", "Subgroup", "GroupHom", "Subquotient", "pairing", "dual_identification",
    "exterior_cube", "subquotient", "quotient", "cyclic_subgroups", "enumerate_subgroups",
    "maximal_cyclic_subgroups", "search_injective_homs", "enumerate_isos",
    "automorphism_count", "invariant_factor_types",
]
