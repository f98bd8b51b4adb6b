"""Verification bundles for the worked examples, shared by the CLI and the tests."""
import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import isclose, sqrt

import numpy as np

from .catalog import (GOLAY_WEIGHTS, a1, build_golay, build_golay_from_hamming,
                      build_niemeier_a1_24, build_spin16, e7, e8)
from .cocycles import (fsexp_consistency, fsexp_pointed, h3_representatives, is_coboundary,
                       is_cocycle, is_pointed_class, phi_star, z2cube_volume)
from .constructions import (niemeier_orbifold, spin16_example, spin16_generators,
                            spin16_presentation)
from .gluetriples import GlueTriple, equivalent, realize_triple, twist, validate
from .groups import FinAbGroup, GroupHom, exterior_cube, search_injective_homs
from .lattices import discriminant_form
from .moddata import build, verify_conjugate_pair
from .quadforms import automorphisms, equivalence, gauss_sum, negate, signature
from .serialize import rat


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = ""

    def to_json(self):
        return {"name": self.name, "passed": bool(self.passed), "detail": self.detail}


@dataclass
class Bundle:
    name: str
    checks: list = field(default_factory=list)
    results: dict = field(default_factory=dict)

    def check(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def a1_e7():
    b = Bundle("a1-e7")
    qa = discriminant_form(a1()).form
    qe = discriminant_form(e7()).form
    b.results["A1"] = [rat(v) for v in qa.values()]
    b.results["E7"] = [rat(v) for v in qe.values()]
    b.check("disc(A1) = (Z2, 1/4)", qa.group.factors == (2,) and qa((1,)) == Fraction(1, 4))
    b.check("disc(E7) = (Z2, 3/4)", qe.group.factors == (2,) and qe((1,)) == Fraction(3, 4))
    b.check("negated disc(A1) is equivalent to disc(E7)", equivalence(negate(qa), qe) is not None)
    da, de = build(qa), build(qe)
    b.check("E7 modular data is the conjugate of A1's",
            np.allclose(de.S, da.S.conj(), atol=1e-9) and np.allclose(de.T, da.T.conj(), atol=1e-9)
            and abs(de.charge * da.charge - 1) < 1e-9)
    b.check("conjugate pair check", verify_conjugate_pair(qa))
    return b


def milgram():
    b = Bundle("milgram")
    expected = {"A1": (a1, 1), "E7": (e7, 7), "E8": (e8, 0), "Gamma16": (build_spin16, 0),
                "NiemeierA1_24": (build_niemeier_a1_24, 0)}
    for name, (make, sigma) in expected.items():
        lat = make()
        q = discriminant_form(lat).form
        sig = signature(q)
        b.results[name] = {"rank": lat.rank, "signature": sig}
        b.check(f"{name}: signature {sig} = rank {lat.rank} mod 8 = {sigma}",
                sig == lat.rank % 8 == sigma)
        raw = gauss_sum(q) * sqrt(q.group.order)
        b.check(f"{name}: |sum exp(2 pi i q)| = sqrt|A|",
                isclose(abs(raw), sqrt(q.group.order), abs_tol=1e-9))
        b.check(f"{name}: Gauss sum phase = exp(2 pi i rank / 8)",
                abs(gauss_sum(q) - cmath.exp(2j * cmath.pi * lat.rank / 8)) < 1e-9)
    return b


def niemeier(n=2):
    b = Bundle(f"niemeier --n {n}")
    lat = build_niemeier_a1_24()
    code = build_golay()
    b.check("rank 24", lat.rank == 24)
    b.check("even", lat.is_even())
    b.check("unimodular", lat.is_unimodular())
    b.check("Golay code: 759 words of weight 8", code.weight_enumerator().get(8) == 759)
    b.check("Golay weight enumerator", code.weight_enumerator() == GOLAY_WEIGHTS)
    b.check("Golay code self-dual and doubly even", code.is_self_dual() and code.is_doubly_even())
    b.check("Hamming-code construction has the same enumerator",
            build_golay_from_hamming().weight_enumerator() == GOLAY_WEIGHTS)
    orb = niemeier_orbifold(n)
    t = orb.triple()
    values = sorted(set(t.q.values()))
    fs = fsexp_pointed(t.q)
    cmp = fsexp_consistency(t)
    b.results.update({"quotient": list(orb.quotient().factors),
                      "disc_group": list(t.gamma.factors),
                      "q_values": [rat(v) for v in values], "fsexp": fs,
                      "fsexp_from_cocycle": cmp.from_cocycle})
    b.check(f"L/E = Z{n}", orb.quotient().factors == (n,))
    b.check("orbifold triple is valid", validate(t).valid)
    b.check(f"q-value 1/{n * n} occurs", Fraction(1, n * n) in values)
    b.check(f"FSexp {fs} is a multiple of {n * n}", fs % (n * n) == 0)
    b.check("T-order matches the cyclic-restriction formula", cmp.consistent)
    return b


def _z4z4_matrix(hom):
    return tuple(tuple(int(v) for v in y) for y in hom.images)


def spin16():
    b = Bundle("spin16")
    ex = spin16_example()
    b.check("[L:K] = 4 and L/K = Z2 x Z2", ex.quotient().factors == (2, 2)
            and abs(ex.sublattice.det) == 16)
    b.check("K°/K = Z4 x Z4", ex.disc.group.factors == (4, 4))
    q, _ = spin16_presentation()
    st = all(q((s, t)) == Fraction(s * t, 4) % 1 for s in range(4) for t in range(4))
    b.check("q(sx + ty) = st/4", st)
    quv, _ = spin16_presentation(uv=True)
    b.check("q(su + tv) = (s + t)t/4",
            all(quv((s, t)) == Fraction((s + t) * t, 4) % 1 for s in range(4) for t in range(4)))
    auts = automorphisms(q)
    mats = {_z4z4_matrix(a.hom) for a in auts}
    expected = {((1, 0), (0, 1)), ((3, 0), (0, 3)), ((0, 1), (1, 0)), ((0, 3), (3, 0))}
    b.results["automorphisms"] = sorted(mats)
    b.results["aut_order"] = len(auts)
    b.check("Aut has order 4", len(auts) == 4)
    b.check("Aut = {+-id, +-kappa} with kappa swapping x and y", mats == expected)
    t = ex.triple()
    x, y = (np.array(v) for v in spin16_generators())
    b.check("i(psi1) = 2x + 2y and i(psi2) = 2x",
            t.images == (tuple((2 * x + 2 * y) % 4), tuple((2 * x) % 4)))
    b.check("triple from Gamma16 > K is valid", validate(t).valid)
    _, orbits = embedding_orbits(ex.disc.form, t.G)
    b.results["embedding_orbits"] = len(orbits)
    b.check("3 orbits of Lagrangian embeddings of Z2 x Z2", len(orbits) == 3)
    return b


def embedding_orbits(q, G):
    """Orbits of isotropic embeddings ``G -> q.group`` under Aut(q)."""
    gamma = q.group
    level = q.level
    table = q.table
    m = q.bilinear_matrix
    arr = gamma.array

    def candidates(k):
        return np.nonzero((gamma.order_table == G.factors[k]) & (table == 0))[0]

    def compatible(k, y, chosen):
        return all(int(arr[y] @ m @ arr[c]) % level == 0 for c in chosen)

    embs = [h for h in search_injective_homs(G, gamma, candidates, compatible)]
    auts = automorphisms(q)
    orbits = []
    seen = set()
    for e in embs:
        if e.images in seen:
            continue
        orbit = {a.hom.compose(e).images for a in auts}
        seen |= orbit
        orbits.append(sorted(orbit))
    return embs, orbits


def embeddings():
    b = Bundle("embeddings")
    ex = spin16_example()
    G = FinAbGroup((2, 2))
    embs, orbits = embedding_orbits(ex.disc.form, G)
    b.results["embeddings"] = len(embs)
    b.results["orbits"] = len(orbits)
    b.check("exactly 3 orbits of Lagrangian embeddings", len(orbits) == 3)
    t = ex.triple()
    delta = GroupHom(G, G, [(0, 1), (1, 1)])
    twisted = [t, twist(t, delta), twist(t, delta.compose(delta))]
    pairwise = all(equivalent(twisted[a], twisted[c]) is None
                   for a in range(3) for c in range(a + 1, 3))
    b.check("delta-twisted triples are pairwise inequivalent", pairwise)
    b.check("twisted triples are valid", all(validate(s).valid for s in twisted))
    r = realize_triple(t)
    b.results["realized"] = {"L": r.L.name, "rank": r.E.rank}
    b.check("realized E is even unimodular", r.E.is_even() and r.E.is_unimodular())
    b.check("recovered triple matches (up to sign)", r.sign in (1, -1))
    return b


def z2cube():
    b = Bundle("z2cube")
    omega = z2cube_volume()
    G = omega.group
    b.check("volume form is a cocycle", is_cocycle(omega))
    b.check("volume form is not a coboundary", is_coboundary(omega) is None)
    phi = phi_star(omega)
    b.results["phi_star"] = {str(k): rat(v) for k, v in phi.on_generators().items()}
    b.check("phi*(e1, e2, e3) = 1/2", phi(*G.gens()) == Fraction(1, 2))
    b.check("phi* is alternating and trilinear", phi.is_alternating() and phi.is_trilinear())
    image = {phi_star(w).key() for _, w in h3_representatives(G)}
    cube = exterior_cube(G).order
    b.results["phi_star_image"] = len(image)
    b.check(f"phi* image has {cube} elements (Hom of the exterior cube)", len(image) == cube == 2)
    two_gen = [FinAbGroup(f) for f in ((2, 2), (4,), (2, 4), (3, 3))]
    b.check("every class on 2-generated groups is pointed",
            all(is_pointed_class(w) for g in two_gen for _, w in h3_representatives(g)))
    return b


BUNDLES = {
    "a1-e7": a1_e7,
    "milgram": milgram,
    "niemeier": niemeier,
    "spin16": spin16,
    "embeddings": embeddings,
    "z2cube": z2cube,
}


def run(name, **kwargs):
    if name not in BUNDLES:
        raise KeyError(name)
    return BUNDLES[name](**kwargs)


__all__ = ["Check", "Bundle", "BUNDLES", "run", "embedding_orbits", "GlueTriple"]
