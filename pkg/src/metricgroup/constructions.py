"""Orbifold sublattices of the spin lattice and of the A1^24 Niemeier lattice.

Each construction cuts a unimodular lattice down to the sublattice fixed by
a group of inner automorphisms ``e^beta -> exp(2 pi i (x, beta)) e^beta`` and
records the data that ``gluetriples.recover_triple`` needs.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property

from . import linalg
from .catalog import niemeier_frame, spin16_frame, to_lattice_coords
from .groups import FinAbGroup, GroupHom
from .lattices import EvenLattice, discriminant_form, kernel_sublattice, quotient_group


def _matvec(v, m):
    return tuple(sum(Fraction(a) * Fraction(row[j]) for a, row in zip(v, m))
                 for j in range(len(m[0])))


@dataclass(frozen=True)
class Orbifold:
    """A unimodular ``ambient`` and the sublattice cut out by ``twists``.

    ``basis`` expresses the sublattice in ambient coordinates; ``twists`` are
    the defining dual vectors in ambient coordinates, one per generator of G.
    """

    name: str
    ambient: EvenLattice
    sublattice: EvenLattice
    basis: tuple
    twists: tuple
    G: FinAbGroup

    @cached_property
    def disc(self):
        return discriminant_form(self.sublattice)

    def to_sub(self, v):
        """Ambient coordinates -> sublattice coordinates."""
        return _matvec(v, linalg.inverse(self.basis))

    @cached_property
    def glue_vectors(self):
        """Ambient basis vectors, written in sublattice coordinates."""
        return tuple(self.to_sub(row) for row in linalg.identity(self.ambient.rank))

    @cached_property
    def twist_vectors(self):
        return tuple(self.to_sub(t) for t in self.twists)

    def quotient(self):
        return quotient_group(self.basis)

    def triple(self):
        from .gluetriples import recover_triple

        return recover_triple(self.disc, self.glue_vectors, self.twist_vectors, self.G)


@cache
def spin16_example():
    """``K = {a in Gamma16 : (u, a), (v, a) in Z}`` with u, v from the epsilon frame."""
    lattice, frame = spin16_frame()
    half = Fraction(1, 2)
    u = [half] * 8 + [0] * 8
    v = [0] * 7 + [half] + [0] * 7 + [-half]
    twists = (to_lattice_coords(frame, u), to_lattice_coords(frame, v))
    sub, basis = kernel_sublattice(lattice, list(twists), name="K16")
    return Orbifold("spin16", lattice, sub, tuple(map(tuple, basis)), twists,
                    FinAbGroup((2, 2)))


def spin16_generators():
    """Cosets ``x = u + K`` and ``y = -u + v + K`` in the discriminant group of K."""
    ex = spin16_example()
    u, v = ex.twist_vectors
    x = ex.disc.coset_of(u)
    y = ex.disc.coset_of(tuple(b - a for a, b in zip(u, v)))
    return x, y


def spin16_presentation(uv=False):
    """The discriminant form of K pulled back to ``Z4 x Z4``.

    By default along ``(s, t) -> s x + t y``; with ``uv`` along the cosets
    of u and v instead.
    """
    ex = spin16_example()
    if uv:
        gens = tuple(ex.disc.coset_of(w) for w in ex.twist_vectors)
    else:
        gens = spin16_generators()
    hom = GroupHom(FinAbGroup((4, 4)), ex.disc.group, gens)
    return ex.disc.form.pullback(hom), hom


@cache
def niemeier_orbifold(n):
    """``E = {a in L : (alpha_1 / n, a) in Z}`` inside the A1^24 Niemeier lattice."""
    if n < 2:
        raise ValueError("n must be at least 2")
    lattice, frame = niemeier_frame()
    alpha = [Fraction(1, n)] + [0] * 23
    twist = to_lattice_coords(frame, alpha)
    sub, basis = kernel_sublattice(lattice, [twist], name=f"NiemeierA1_24/Z{n}")
    return Orbifold(f"niemeier-{n}", lattice, sub, tuple(map(tuple, basis)), (twist,),
                    FinAbGroup((n,)))


__all__ = ["Orbifold", "spin16_example", "spin16_generators", "spin16_presentation",
           "niemeier_orbifold"]
