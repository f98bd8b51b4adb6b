"""Triples ``(Gamma, q, i)`` and the group they form under gluing.

The character group of G is identified with G through ``groups.pairing``:
the character with coordinates ``chi`` sends g to ``sum g_k chi_k / d_k``.
So ``i`` is a homomorphism G -> Gamma, and ``i(e_k)`` is the image of the
character dual to the k-th generator.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config
from .errors import GroupMismatch, TooLarge
from .groups import (FinAbGroup, GroupHom, Subgroup, automorphism_count, enumerate_isos,
                     enumerate_subgroups, invariant_factor_types, quotient, search_injective_homs)
from .quadforms import (QuadraticForm, _pairings_with, constrained_isometry, direct_sum,
                        form_tables, induce, is_nondegenerate, negate, nondegenerate_mask,
                        orthogonal_complement)


@dataclass(frozen=True)
class GlueTriple:
    G: FinAbGroup
    q: QuadraticForm
    i: GroupHom

    @property
    def gamma(self):
        return self.q.group

    @classmethod
    def build(cls, G, q, images):
        return cls(G, q, GroupHom(G, q.group, [tuple(y) for y in images]))

    @property
    def images(self):
        return self.i.images

    def key(self):
        """Sort key: invariant factors, value table, then embedding images."""
        return (self.gamma.factors, tuple(int(v) for v in self.q.table),
                tuple(self.gamma.index(y) for y in self.images))

    def __repr__(self):
        return f"GlueTriple(G={self.G}, q={self.q!r}, i={list(self.images)})"


@dataclass
class Diagnostics:
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))
        return ok

    @property
    def valid(self):
        return all(ok for _, ok, _ in self.checks)

    @property
    def first_failure(self):
        return next(((n, d) for n, ok, d in self.checks if not ok), None)

    def __bool__(self):
        return self.valid


def pairing_matrix(t):
    """``d_k * b(i(e_k), x)`` for every x in Gamma (rows), as rationals scaled to ints.

    Entry (x, k) is the k-th coordinate of p(x) whenever it is integral.
    """
    pair = _pairings_with(t.q, list(t.images))
    d = np.array(t.G.factors, dtype=np.int64)
    return pair * d, t.q.level


def projection(t):
    """``p: Gamma -> G`` with ``<p(x), chi> = b(i(chi), x)``; as an index array."""
    scaled, level = pairing_matrix(t)
    if (scaled % level).any():
        raise ValueError("b(i(chi), x) is not a character value of G")
    coords = (scaled // level) % np.array(t.G.factors, dtype=np.int64)
    return t.G.indices_of(coords)


def validate(t):
    """Check every triple invariant; stops at the first failure."""
    diag = Diagnostics()
    G, gamma, q = t.G, t.gamma, t.q
    if not diag.add("order", gamma.order == G.order ** 2,
                    f"|Gamma| = {gamma.order}, |G|^2 = {G.order ** 2}"):
        return diag
    if not diag.add("nondegenerate", is_nondegenerate(q)):
        return diag
    if not diag.add("injective", t.i.is_injective()):
        return diag
    image = t.i.image()
    bad = [x for x in image.elements() if q(x) != 0]
    if not diag.add("isotropic", not bad, f"q({bad[0]}) = {q(bad[0])}" if bad else ""):
        return diag
    perp = orthogonal_complement(q, image)
    if not diag.add("lagrangian", perp.members == image.members,
                    f"|i(G)^perp| = {perp.order}, |i(G)| = {image.order}"):
        return diag
    try:
        p = projection(t)
    except ValueError as exc:
        diag.add("projection", False, str(exc))
        return diag
    diag.add("projection", len(set(p.tolist())) == G.order,
             "p: Gamma/i(G) -> G is onto" if len(set(p.tolist())) == G.order else "p not onto")
    return diag


def is_valid(t):
    return validate(t).valid


def identity_triple(G):
    """``(G^ x G, ev, chi -> (chi, 0))`` with ``ev(chi, g) = <g, chi>``."""
    gamma = FinAbGroup(G.factors + G.factors)
    k = G.rank
    diag = (Fraction(0),) * (2 * k)
    cross = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for a, d in enumerate(G.factors):
        cross[a][k + a] = cross[k + a][a] = Fraction(1, d)
    q = QuadraticForm(gamma, diag, tuple(map(tuple, cross)))
    images = [tuple(int(j == a) for j in range(2 * k)) for a in range(k)]
    return GlueTriple.build(G, q, images)


def _check_same_group(t1, t2):
    if t1.G != t2.G:
        raise GroupMismatch(f"triples over different groups: {t1.G} and {t2.G}")


def product(t1, t2):
    """Glue along ``H = {(i(chi), i'(-chi))}`` and pass to ``H^perp / H``."""
    _check_same_group(t1, t2)
    big = direct_sum(t1.q, t2.q)
    g1, g2 = t1.gamma, t2.gamma
    gens = [tuple(a) + tuple(g2.neg(b)) for a, b in zip(t1.images, t2.images)]
    h = Subgroup.generated_by(big.group, gens)
    form, sq = induce(big, h)
    images = [sq.project(tuple(a) + g2.zero) for a in t1.images]
    return GlueTriple.build(t1.G, form, images)


def inverse(t):
    return GlueTriple(t.G, negate(t.q), GroupHom(t.G, negate(t.q).group, t.images))


def equivalent(t1, t2):
    """An isometry ``j`` with ``j o i1 == i2``, or None."""
    _check_same_group(t1, t2)
    if t1.gamma.invariant_factors != t2.gamma.invariant_factors:
        return None
    return constrained_isometry(t1.q, t2.q, list(zip(t1.images, t2.images)))


def are_equivalent(t1, t2):
    return equivalent(t1, t2) is not None


def twist(t, aut):
    """``(Gamma, q, i o aut)`` for an automorphism ``aut`` of G."""
    return GlueTriple(t.G, t.q, t.i.compose(aut))


# -- lattices ---------------------------------------------------------------
def recover_triple(disc, glue, twists, G):
    """Triple of an even unimodular overlattice of ``disc.lattice``.

    ``glue`` are dual vectors whose cosets generate the glue group ``E/L``;
    ``twists[l]`` is a dual vector ``x_l`` representing the l-th generator of
    G, so that ``i(chi)`` is the glue coset with ``b(i(chi), x_l) = chi_l / d_l``.
    """
    q = disc.form
    gamma = q.group
    glue_group = Subgroup.generated_by(gamma, [disc.coset_of(v) for v in glue])
    xs = [disc.coset_of(v) for v in twists]
    if len(xs) != G.rank:
        raise ValueError("need one twist vector per generator of G")
    members = [gamma.element(idx) for idx in sorted(glue_group.members)]
    images = []
    for k, dk in enumerate(G.factors):
        want = [Fraction(int(k == l), dk) for l in range(G.rank)]
        hits = [h for h in members if [q.b(h, x) for x in xs] == want]
        if len(hits) != 1:
            raise ValueError(f"{len(hits)} glue cosets pair with the twists like generator {k}")
        images.append(hits[0])
    return GlueTriple.build(G, q, images)


@dataclass(frozen=True)
class RealizedTriple:
    triple: GlueTriple
    E: object
    L: object
    basis: tuple
    coset_reps: dict
    recovered: GlueTriple
    sign: int

    @property
    def round_trip_ok(self):
        return self.sign in (1, -1)


def realize_triple(t, **search):
    """Build ``L`` realizing q, glue ``j o i(G)`` to an even unimodular ``E``.

    ``coset_reps`` maps each g in G to a dual vector ``x_g`` of L with
    ``p(E + x_g) = g``.  The recovered triple is compared with ``t`` up to
    the sign automorphism ``x -> -x`` of the discriminant form.
    """
    from .lattices import overlattice, realize

    L, disc, iso = realize(t.q, **search)
    gamma = disc.group
    glued = [iso(y) for y in t.images]
    sub = Subgroup.generated_by(gamma, glued)
    E, basis = overlattice(L, sub, disc)
    if not E.is_unimodular():
        raise AssertionError("glued lattice is not unimodular")
    q = disc.form
    xs = []
    for l, dl in enumerate(t.G.factors):
        want = [Fraction(int(k == l), dk) for k, dk in enumerate(t.G.factors)]
        x = next(x for x in gamma.elements() if [q.b(h, x) for h in glued] == want)
        xs.append(x)
    lifts = [disc.lift(x) for x in xs]
    coset_reps = {}
    for g in t.G.elements():
        vec = [Fraction(0)] * L.rank
        for a, lam in zip(g, lifts):
            vec = [v + a * w for v, w in zip(vec, lam)]
        coset_reps[g] = tuple(vec)
    recovered = recover_triple(disc, [disc.lift(h) for h in glued], lifts, t.G)
    sign = 0
    if equivalent(recovered, t) is not None:
        sign = 1
    else:
        flipped = GlueTriple.build(t.G, recovered.q, [gamma.neg(y) for y in recovered.images])
        if equivalent(flipped, t) is not None:
            sign = -1
    return RealizedTriple(t, E, L, tuple(map(tuple, basis)), coset_reps, recovered, sign)


# -- enumeration of Q(G) -----------------------------------------------------
def _admits_lagrangian_type(gamma, G):
    for s in enumerate_subgroups(gamma):
        if s.order != G.order:
            continue
        if not s.structure()[0].is_isomorphic(G):
            continue
        if quotient(gamma, s)[0].is_isomorphic(G):
            return True
    return False


def _form_orbits(gamma):
    """Representative value tables of nondegenerate forms up to Aut(Gamma)."""
    count = automorphism_count(gamma)
    if count > config.MAX_AUTOMORPHISMS:
        raise TooLarge(f"|Aut({gamma})| = {count} exceeds {config.MAX_AUTOMORPHISMS}")
    perms = np.array([h.index_map for h in enumerate_isos(gamma, gamma)], dtype=np.int64)
    n, params, pairs, tables = form_tables(gamma)
    tables = tables[nondegenerate_mask(gamma, n, params, pairs)]
    tables = np.unique(tables, axis=0)  # sorted lexicographically
    seen = set()
    reps = []
    for row in tables:
        key = row.tobytes()
        if key in seen:
            continue
        orbit = row[perms]
        seen.update(r.tobytes() for r in orbit)
        stab = perms[(orbit == row).all(axis=1)]
        reps.append((row, stab))
    return n, perms, reps


def _embeddings(G, q, table):
    gamma = q.group
    level = q.level
    m = q.bilinear_matrix
    arr = gamma.array
    ords = gamma.order_table

    def candidates(k):
        return np.nonzero((ords == G.factors[k]) & (table == 0))[0]

    def compatible(k, y, chosen):
        row = arr[y] @ m
        return all(int(row @ arr[c]) % level == 0 for c in chosen)

    for hom in search_injective_homs(G, gamma, candidates, compatible):
        yield tuple(gamma.index(y) for y in hom.images)


@dataclass(frozen=True)
class QGroupTable:
    G: FinAbGroup
    classes: tuple
    table: tuple
    identity: int
    inverses: tuple

    @property
    def order(self):
        return len(self.classes)

    def multiply(self, a, b):
        return self.table[a][b]

    def check_group_axioms(self):
        n = self.order
        t = self.table
        ok = all(t[a][b] == t[b][a] for a in range(n) for b in range(n))
        ok &= all(t[self.identity][a] == a for a in range(n))
        ok &= all(t[a][self.inverses[a]] == self.identity for a in range(n))
        ok &= all(t[t[a][b]][c] == t[a][t[b][c]]
                  for a in range(n) for b in range(n) for c in range(n))
        return ok

    def element_orders(self):
        out = []
        for a in range(self.order):
            x, k = a, 1
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return out

    def structure(self):
        """Abelian group type of the table, matched by element-order statistics."""
        orders = sorted(self.element_orders())
        for cand in invariant_factor_types(self.order) if self.order > 1 else [FinAbGroup(())]:
            if sorted(cand.order_table.tolist()) == orders:
                return cand
        raise AssertionError("table is not an abelian group")  # pragma: no cover


def classify(t, classes):
    """Position of the class of ``t`` among canonical ``classes``."""
    for k, c in enumerate(classes):
        if c.gamma.invariant_factors != t.gamma.invariant_factors:
            continue
        if c.q.value_multiset != t.q.value_multiset:
            continue
        if equivalent(t, c) is not None:
            return k
    raise LookupError("triple matches none of the enumerated classes")


def enumerate_classes(G, max_group_order=None):
    """Canonical representatives of Q(G), sorted by ``GlueTriple.key``."""
    bound = config.DEFAULT_Q_ORDER if max_group_order is None else max_group_order
    if G.order > bound:
        raise TooLarge(f"|G| = {G.order} exceeds the Q(G) bound {bound}")
    G = FinAbGroup(G.factors)
    classes = []
    for gamma in invariant_factor_types(G.order ** 2) if G.order > 1 else [FinAbGroup(())]:
        if G.order > 1 and not _admits_lagrangian_type(gamma, G):
            continue
        n, _, reps = _form_orbits(gamma)
        for row, stab in reps:
            q = QuadraticForm.from_table(gamma, row, n)
            found = set()
            for emb in _embeddings(G, q, q.table):
                canon = min(tuple(int(v) for v in stab[:, list(emb)][r]) for r in range(len(stab)))
                found.add(canon)
            for canon in sorted(found):
                classes.append(GlueTriple.build(G, q, [gamma.element(c) for c in canon]))
    classes.sort(key=GlueTriple.key)
    return classes


def enumerate_Q(G, max_group_order=None):
    """The group Q(G) as a Cayley table over canonical class representatives."""
    classes = enumerate_classes(G, max_group_order)
    n = len(classes)
    table = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            table[a][b] = classify(product(classes[a], classes[b]), classes)
    identity = classify(identity_triple(G), classes)
    inverses = tuple(classify(inverse(c), classes) for c in classes)
    result = QGroupTable(G, tuple(classes), tuple(map(tuple, table)), identity, inverses)
    if not result.check_group_axioms():
        raise AssertionError("Q(G) table fails the abelian group axioms")
    return result


__all__ = [
    "GlueTriple", "Diagnostics", "validate", "is_valid", "identity_triple", "product", "inverse",
    "equivalent", "are_equivalent", "twist", "projection", "recover_triple", "realize_triple",
    "RealizedTriple", "QGroupTable", "classify", "enumerate_classes", "enumerate_Q",
]
