"""Positive definite even lattices given by Gram matrices.

Vectors are rational coordinate rows with respect to the lattice basis, so
``(x, y) = x G y^T``.  A dual vector ``lam`` is represented the same way;
it lies in the dual lattice iff ``G lam`` is integral.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import InvalidLattice, NotIsotropic, RealizationNotFound, SignatureMismatch
from .groups import FinAbGroup
from .quadforms import (QuadraticForm, equivalence, induced_form, is_isotropic, isotropic_subgroups,
                        orthogonal_sum, signature)


@dataclass(frozen=True)
class EvenLattice:
    gram: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise InvalidLattice("Gram matrix must be square")
        for i in range(n):
            if gram[i][i] % 2:
                raise InvalidLattice(f"diagonal entry {gram[i][i]} is odd")
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise InvalidLattice("Gram matrix must be symmetric")
        if not _positive_definite(gram):
            raise InvalidLattice("Gram matrix is not positive definite")

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def det(self):
        return linalg.determinant(self.gram)

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_unimodular(self):
        return abs(self.det) == 1

    @cached_property
    def gram_inverse(self):
        return linalg.inverse(self.gram) if self.rank else []

    def inner(self, x, y):
        return sum(Fraction(a) * g * Fraction(b)
                   for a, row in zip(x, self.gram) for g, b in zip(row, y))

    def norm(self, x):
        return self.inner(x, x)

    def __str__(self):
        return self.name or f"lattice(rank={self.rank}, det={self.det})"


def _positive_definite(gram):
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def is_even(lattice):
    return lattice.is_even()


def is_unimodular(lattice):
    return lattice.is_unimodular()


def orthogonal_sum_lattice(*lattices, name=""):
    n = sum(l.rank for l in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                gram[off + i][off + j] = l.gram[i][j]
        off += l.rank
    return EvenLattice(tuple(map(tuple, gram)),
                       name or " + ".join(l.name or "?" for l in lattices))


def gram_from_basis(basis, ambient=None):
    """Gram matrix of rational basis rows under an ambient Gram (default identity)."""
    if ambient is None:
        g = linalg.matmul(basis, linalg.transpose(basis))
    else:
        g = linalg.matmul(linalg.matmul(basis, ambient), linalg.transpose(basis))
    out = []
    for row in g:
        if any(Fraction(x).denominator != 1 for x in row):
            raise InvalidLattice("basis does not span an integral lattice")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


@dataclass(frozen=True)
class DiscriminantForm:
    """``(L°/L, q_L)`` with ``q_L(lam) = (lam, lam)/2 mod 1``.

    ``lifts[j]`` is a dual vector (lattice coordinates) over generator j.
    """

    lattice: EvenLattice
    group: FinAbGroup
    form: QuadraticForm
    lifts: tuple
    proj: tuple

    def lift(self, x):
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for a, lam in zip(x, self.lifts):
            out = [o + a * v for o, v in zip(out, lam)]
        return tuple(out)

    def coset_of(self, lam):
        """Group element of the dual vector ``lam``; ValueError if not in L°."""
        y = [sum(Fraction(g) * Fraction(v) for g, v in zip(row, lam)) for row in self.lattice.gram]
        if any(v.denominator != 1 for v in y):
            raise ValueError(f"{lam} is not in the dual lattice")
        return tuple(sum(int(v) * self.proj[i][j] for i, v in enumerate(y)) % d
                     for j, d in enumerate(self.group.factors))


def discriminant_form(lattice):
    n = lattice.rank
    if n == 0:
        g = FinAbGroup(())
        return DiscriminantForm(lattice, g, QuadraticForm.zero(g), (), ())
    factors, proj, ys = linalg.cokernel(lattice.gram, n)
    ginv = lattice.gram_inverse
    lifts = []
    for y in ys:
        lifts.append(tuple(sum(Fraction(ginv[i][k]) * y[k] for k in range(n)) for i in range(n)))
    group = FinAbGroup(tuple(factors))
    diag = tuple(lattice.norm(l) / 2 for l in lifts)
    cross = tuple(tuple(lattice.inner(a, b) if i != j else Fraction(0)
                        for j, b in enumerate(lifts)) for i, a in enumerate(lifts))
    form = QuadraticForm(group, diag, cross)
    return DiscriminantForm(lattice, group, form, tuple(lifts), tuple(map(tuple, proj)))


def sublattice_from_basis(lattice, basis, name=""):
    """Even lattice spanned by ``basis`` rows (coordinates in ``lattice``)."""
    return EvenLattice(gram_from_basis(basis, lattice.gram), name)


def quotient_group(basis):
    """``L / K`` where the rows of ``basis`` span K inside ``Z^n``."""
    n = len(basis)
    factors, _, _ = linalg.cokernel(basis, n)
    return FinAbGroup(tuple(factors))


def kernel_sublattice(lattice, duals, name=""):
    """``K = {a in L : (u, a) in Z for all u in duals}``.

    ``duals`` are rational vectors in the coordinates of ``lattice``.
    Returns ``(K, basis)`` with the rows of ``basis`` spanning K inside L.
    """
    n = lattice.rank
    if not duals:
        basis = linalg.identity(n)
        return EvenLattice(lattice.gram, name or lattice.name), basis
    functionals = [[sum(Fraction(g) * Fraction(v) for g, v in zip(row, u)) for row in lattice.gram]
                   for u in duals]
    den = linalg.common_denominator(functionals)
    a = [[int(f[i] * den) for f in functionals] for i in range(n)]
    basis = linalg.kernel_mod(a, [den] * len(duals))
    basis = linalg.row_basis(basis)
    return EvenLattice(gram_from_basis(basis, lattice.gram), name), basis


def overlattice(lattice, sub, disc=None, name=""):
    """Lattice generated by ``lattice`` and lifts of the isotropic subgroup ``sub``.

    Returns ``(E, basis)``; rows of ``basis`` are E's basis in the
    coordinates of ``lattice``.
    """
    disc = disc or discriminant_form(lattice)
    if not is_isotropic(disc.form, sub):
        raise NotIsotropic("glue subgroup is not isotropic; the overlattice would not be even")
    gens = [list(r) for r in linalg.identity(lattice.rank)]
    gens += [list(disc.lift(h)) for h in sub.generators]
    basis = linalg.row_basis(gens)
    basis = [[Fraction(x) for x in row] for row in basis]
    return EvenLattice(gram_from_basis(basis, lattice.gram), name), basis


# -- realization of forms by lattices --------------------------------------
@dataclass(frozen=True)
class Block:
    lattice: EvenLattice
    disc: DiscriminantForm

    @property
    def name(self):
        return self.lattice.name

    @cached_property
    def divisors(self):
        return self.disc.group.elementary_divisors

    @cached_property
    def signature(self):
        return signature(self.disc.form)


def _sub_multiset(small, big):
    rest = list(big)
    for x in small:
        if x in rest:
            rest.remove(x)
        else:
            return None
    return rest


def _combinations(blocks, target, max_blocks):
    """Block index tuples whose elementary divisors exactly match ``target``."""
    out = []

    def rec(start, chosen, rest):
        if not rest:
            out.append(tuple(chosen))
            return
        if len(chosen) == max_blocks:
            return
        for idx in range(start, len(blocks)):
            left = _sub_multiset(blocks[idx].divisors, rest)
            if left is not None:
                rec(idx, chosen + [idx], left)

    rec(0, [], list(target))
    return out


def _certify(q, lattice, name):
    lattice = EvenLattice(lattice.gram, name)
    disc = discriminant_form(lattice)
    iso = equivalence(q, disc.form)
    if iso is None:  # pragma: no cover - self-certification
        raise RealizationNotFound(f"{name} failed to certify")
    return lattice, disc, iso


def _pad(parts, min_rank, max_pads):
    from .catalog import e8

    parts = list(parts)
    while sum(l.rank for l in parts) < min_rank and len(parts) and max_pads:
        parts.append(e8())
        max_pads -= 1
    if not parts and min_rank > 0 and max_pads:
        return _pad([e8()], min_rank, max_pads - 1)
    return parts if sum(l.rank for l in parts) >= min_rank else None


def _direct(q, blocks, computed, max_blocks):
    combos = _combinations(blocks, q.group.elementary_divisors, max_blocks)
    combos = [c for c in combos if sum(blocks[i].signature for i in c) % 8 == computed]
    combos.sort(key=lambda c: (sum(blocks[i].lattice.rank for i in c), c))
    for combo in combos:
        parts = [blocks[i] for i in combo]
        if equivalence(q, orthogonal_sum(*[p.disc.form for p in parts])) is not None:
            yield [p.lattice for p in parts]


def _glued(q, blocks, computed, max_blocks, max_glue):
    """Block sums M with an isotropic H such that ``H^perp / H`` realizes q."""
    from itertools import combinations_with_replacement

    n = q.group.order
    combos = []
    for size in range(1, max_blocks + 1):
        for c in combinations_with_replacement(range(len(blocks)), size):
            order = 1
            for i in c:
                order *= blocks[i].disc.group.order
            h2, rest = divmod(order, n)
            h = math.isqrt(h2)
            if rest or h * h != h2 or not 1 < h <= max_glue:
                continue
            if sum(blocks[i].signature for i in c) % 8 != computed:
                continue
            combos.append((sum(blocks[i].lattice.rank for i in c), c, h))
    combos.sort()
    for _, combo, h in combos:
        parts = [blocks[i] for i in combo]
        lattice = orthogonal_sum_lattice(*[p.lattice for p in parts])
        disc = discriminant_form(lattice)
        for sub in isotropic_subgroups(disc.form):
            if sub.order != h or equivalence(q, induced_form(disc.form, sub)) is None:
                continue
            glued, _ = overlattice(lattice, sub, disc)
            name = " + ".join(p.name for p in parts) + f" glued by {sub.structure()[0]}"
            yield glued, name


def realize(q, sig=None, blocks=None, max_blocks=3, max_pads=2, min_rank=0, max_glue=4):
    """Find an even lattice whose discriminant form is equivalent to ``q``.

    Returns ``(lattice, disc, isometry)`` with ``isometry: q -> disc.form``.
    Orthogonal sums of catalog blocks are tried first (fewest total rank,
    then lexicographic); failing that, block sums glued along an isotropic
    subgroup of order at most ``max_glue``.  E8 pads only raise the rank to
    ``min_rank``.
    """
    from .catalog import realization_blocks

    computed = signature(q)
    if sig is not None and sig % 8 != computed:
        raise SignatureMismatch(f"requested signature {sig} but the form has {computed}")
    blocks = realization_blocks() if blocks is None else blocks
    if q.group.order == 1:
        parts = _pad([], min_rank, max_pads)
        if parts is not None:
            lattice = orthogonal_sum_lattice(*parts) if parts else EvenLattice((), "0")
            return _certify(q, lattice, lattice.name)
    for parts in _direct(q, blocks, computed, max_blocks):
        padded = _pad(parts, min_rank, max_pads)
        if padded is not None:
            lattice = orthogonal_sum_lattice(*padded)
            return _certify(q, lattice, lattice.name)
    for glued, name in _glued(q, blocks, computed, min(max_blocks, 2), max_glue):
        padded = _pad([glued], min_rank, max_pads)
        if padded is not None:
            lattice = orthogonal_sum_lattice(*padded) if len(padded) > 1 else glued
            return _certify(q, lattice, name if len(padded) == 1 else lattice.name)
    raise RealizationNotFound(
        f"no realization of {q.group} form (signature {computed}) with <= {max_blocks} "
        f"blocks from {len(blocks)} catalog entries, glue order <= {max_glue} "
        f"and <= {max_pads} E8 pads")


def realize_form(q, sig=None, **kwargs):
    """Even lattice with discriminant form equivalent to ``q``."""
    return realize(q, sig, **kwargs)[0]


__all__ = [
    "EvenLattice", "DiscriminantForm", "discriminant_form", "is_even", "is_unimodular",
    "orthogonal_sum_lattice", "gram_from_basis", "kernel_sublattice", "overlattice",
    "quotient_group", "realize", "realize_form", "sublattice_from_basis", "Block",
]
