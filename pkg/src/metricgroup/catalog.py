"""Named lattices: root lattices, the spin lattice and the A1^24 Niemeier lattice."""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property

from . import linalg
from .lattices import Block, EvenLattice, discriminant_form, gram_from_basis

GOLAY_B_ROWS = (
    "110111000101", "101110001011", "011100010111", "111000101101",
    "110001011011", "100010110111", "000101101111", "001011011101",
    "010110111001", "101101110001", "011011100011", "111111111110",
)


# -- root lattices ---------------------------------------------------------
def _from_edges(n, edges, name):
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return EvenLattice(tuple(map(tuple, g)), name)


def a_lattice(n):
    return _from_edges(n, [(i, i + 1) for i in range(n - 1)], f"A{n}")


def d_lattice(n):
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    return _from_edges(n, edges, f"D{n}")


def e_lattice(n):
    if n not in (6, 7, 8):
        raise ValueError("E_n needs n in 6, 7, 8")
    edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    return _from_edges(n, edges, f"E{n}")


def a1():
    return a_lattice(1)


def e7():
    return e_lattice(7)


def e8():
    return e_lattice(8)


def d16():
    return d_lattice(16)


def rank_one(k):
    """``<2k>``: discriminant ``Z_{2k}`` with ``q(x) = x^2 / (4k)``."""
    return EvenLattice(((2 * k,),), f"<{2 * k}>")


# -- spin lattice ----------------------------------------------------------
def d_roots_eps(n):
    """Simple roots of D_n in the standard epsilon frame."""
    roots = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        roots.append(r)
    r = [0] * n
    r[n - 2] = r[n - 1] = 1
    roots.append(r)
    return roots


@cache
def spin16_frame():
    """``(Gamma16, basis)`` with basis rows in epsilon coordinates.

    The basis is the D16 simple roots with the last replaceable root swapped
    for ``w = (1/2)(1, ..., 1)``.
    """
    roots = d_roots_eps(16)
    w = [Fraction(1, 2)] * 16
    for k in range(15, -1, -1):
        basis = [list(map(Fraction, r)) for r in roots]
        basis[k] = w
        den = linalg.common_denominator(basis)
        det = linalg.determinant([[int(x * den) for x in row] for row in basis])
        if abs(Fraction(det, den ** 16)) == 1:
            lattice = EvenLattice(gram_from_basis(basis), "Gamma16")
            return lattice, tuple(tuple(r) for r in basis)
    raise AssertionError("no root can be exchanged for w")  # pragma: no cover


def build_spin16():
    return spin16_frame()[0]


def to_lattice_coords(basis, vector):
    """Coordinates of ``vector`` (ambient frame) in the rows of ``basis``."""
    inv = linalg.inverse(basis)
    return tuple(sum(Fraction(v) * inv[i][j] for i, v in enumerate(vector))
                 for j in range(len(basis)))


# -- binary codes ----------------------------------------------------------
@dataclass(frozen=True)
class BinaryCode:
    generator_matrix: tuple

    @property
    def length(self):
        return len(self.generator_matrix[0])

    @property
    def dimension(self):
        return len(self.generator_matrix)

    @cached_property
    def codewords(self):
        rows = [int("".join(map(str, r)), 2) for r in self.generator_matrix]
        words = {0}
        for r in rows:
            words |= {w ^ r for w in words}
        return frozenset(words)

    def weight_enumerator(self):
        return dict(sorted(Counter(bin(w).count("1") for w in self.codewords).items()))

    def words_as_tuples(self):
        n = self.length
        return sorted(tuple((w >> (n - 1 - i)) & 1 for i in range(n)) for w in self.codewords)

    def is_self_orthogonal(self):
        g = self.generator_matrix
        return all(sum(a * b for a, b in zip(r, s)) % 2 == 0 for r in g for s in g)

    def is_self_dual(self):
        return (self.is_self_orthogonal() and 2 * self.dimension == self.length
                and len(self.codewords) == 2 ** self.dimension)

    def is_doubly_even(self):
        return all(bin(w).count("1") % 4 == 0 for w in self.codewords)


GolayCode = BinaryCode

GOLAY_WEIGHTS = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


@cache
def build_golay():
    rows = []
    for i, b in enumerate(GOLAY_B_ROWS):
        rows.append(tuple(int(j == i) for j in range(12)) + tuple(int(c) for c in b))
    return BinaryCode(tuple(rows))


def _cyclic_hamming_basis(taps):
    """Extended [8,4] Hamming code from a cyclic [7,4] code with generator ``taps``."""
    rows = []
    for shift in range(4):
        word = [0] * 7
        for t in taps:
            word[(t + shift) % 7] = 1
        rows.append(word + [sum(word) % 2])
    return rows


def build_golay_from_hamming():
    """``<(S,S,0), (S,0,S), (T,T,T)>`` from two extended Hamming codes meeting in {0, 1}."""
    c1 = _cyclic_hamming_basis((0, 1, 3))
    c2 = _cyclic_hamming_basis((0, 2, 3))
    zero = [0] * 8
    rows = [s + s + zero for s in c1] + [s + zero + s for s in c1] + [t + t + t for t in c2]
    return BinaryCode(tuple(tuple(r) for r in rows))


def hamming_codes_meet_trivially():
    """The two [8,4] codes used above intersect exactly in {0, all-ones}."""
    c1 = BinaryCode(tuple(map(tuple, _cyclic_hamming_basis((0, 1, 3))))).codewords
    c2 = BinaryCode(tuple(map(tuple, _cyclic_hamming_basis((0, 2, 3))))).codewords
    return c1 & c2 == {0, 255}


# -- Niemeier lattice ------------------------------------------------------
@cache
def niemeier_frame(code=None):
    """``(L, basis)`` with basis rows in alpha coordinates, ``(a_i, a_j) = 2 delta_ij``."""
    code = code or build_golay()
    gens = [[Fraction(c, 2) for c in row] for row in code.generator_matrix]
    gens += [[Fraction(int(i == j)) for j in range(24)] for i in range(24)]
    basis = [[Fraction(x) for x in row] for row in linalg.row_basis(gens)]
    ambient = [[2 * int(i == j) for j in range(24)] for i in range(24)]
    lattice = EvenLattice(gram_from_basis(basis, ambient), "NiemeierA1_24")
    return lattice, tuple(tuple(r) for r in basis)


def build_niemeier_a1_24():
    return niemeier_frame()[0]


def a1_24():
    return EvenLattice(tuple(tuple(2 * int(i == j) for j in range(24)) for i in range(24)), "A1^24")


# -- lookup ----------------------------------------------------------------
CATALOG = {
    "A1": a1,
    "E7": e7,
    "E8": e8,
    "D16": d16,
    "Gamma16": build_spin16,
    "NiemeierA1_24": build_niemeier_a1_24,
}


def by_name(name):
    """Catalog names plus the families ``A<n>``, ``D<n>``, ``E6``, ``<2k>``."""
    if name in CATALOG:
        return CATALOG[name]()
    if name.startswith("<") and name.endswith(">"):
        two_k = int(name[1:-1])
        if two_k <= 0 or two_k % 2:
            raise ValueError(f"rank-one lattice needs a positive even norm, got {two_k}")
        return rank_one(two_k // 2)
    head, tail = name[:1], name[1:]
    if tail.isdigit():
        n = int(tail)
        if head == "A" and n >= 1:
            return a_lattice(n)
        if head == "D" and n >= 4:
            return d_lattice(n)
        if head == "E" and n in (6, 7, 8):
            return e_lattice(n)
    raise KeyError(f"unknown lattice {name!r}")


@cache
def realization_blocks(max_root_rank=16, max_norm=16):
    """Blocks for the form-realization search, each with a nontrivial discriminant."""
    from .constructions import niemeier_orbifold, spin16_example

    lattices = [rank_one(k) for k in range(1, max_norm // 2 + 1)]
    lattices += [a_lattice(n) for n in range(2, min(max_root_rank, 8) + 1)]
    lattices += [d_lattice(n) for n in range(4, max_root_rank + 1)]
    lattices += [e_lattice(6), e_lattice(7)]
    lattices.append(spin16_example().sublattice)
    lattices += [niemeier_orbifold(n).sublattice for n in (2, 3, 4)]
    seen = set()
    blocks = []
    for lat in lattices:
        if lat.gram in seen:
            continue
        seen.add(lat.gram)
        blocks.append(Block(lat, discriminant_form(lat)))
    return tuple(blocks)


__all__ = [
    "a_lattice", "d_lattice", "e_lattice", "a1", "e7", "e8", "d16", "rank_one",
    "build_spin16", "spin16_frame", "build_golay", "build_golay_from_hamming",
    "build_niemeier_a1_24", "niemeier_frame", "BinaryCode", "GolayCode", "GOLAY_WEIGHTS",
    "CATALOG", "by_name", "realization_blocks", "to_lattice_coords", "a1_24",
    "hamming_codes_meet_trivially",
]
