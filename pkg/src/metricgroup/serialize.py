"""JSON encodings of groups, forms, lattices, triples, cocycles and reports.

Rationals are strings ``"a/b"`` (or ``"0"``); groups are lists of cyclic
factors.
"""
import json
from fractions import Fraction
from pathlib import Path

from .errors import InvalidForm
from .groups import FinAbGroup, GroupHom
from .lattices import EvenLattice
from .quadforms import QuadraticForm, format_rational, parse_rational, signature


def load(path_or_text):
    """Parse JSON from a file path or from a literal JSON string."""
    text = str(path_or_text)
    if text.lstrip().startswith(("{", "[")):
        return json.loads(text)
    return json.loads(Path(text).read_text())


def dumps(obj, pretty=False):
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=False)
    return json.dumps(obj, separators=(",", ":"))


def rat(x):
    return format_rational(Fraction(x) % 1)


def exact(x):
    """Unreduced rational string (for vectors, not Q/Z values)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def group_to_json(group):
    return list(group.factors)


def group_from_json(data):
    if isinstance(data, str):
        return FinAbGroup.parse(data)
    return FinAbGroup(tuple(int(d) for d in data if int(d) != 1))


def form_to_json(q):
    return {"group": group_to_json(q.group),
            "diag": [rat(v) for v in q.diag],
            "cross": [[rat(v) for v in row] for row in q.cross]}


def form_from_json(data):
    try:
        group = group_from_json(data["group"])
        k = group.rank
        diag = [parse_rational(v) for v in data.get("diag", ["0"] * k)]
        cross = data.get("cross")
        if cross is None:
            cross = [["0"] * k for _ in range(k)]
        cross = [[parse_rational(v) for v in row] for row in cross]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidForm(f"malformed form JSON: {exc}") from exc
    return QuadraticForm(group, tuple(diag), tuple(map(tuple, cross)))


def form_table(q):
    return [[list(x), rat(q(x))] for x in q.group.elements()]


def lattice_to_json(lattice):
    return {"name": lattice.name, "gram": [list(row) for row in lattice.gram]}


def lattice_from_json(data):
    return EvenLattice(tuple(tuple(int(v) for v in row) for row in data["gram"]),
                       data.get("name", ""))


def triple_to_json(t):
    return {"G": group_to_json(t.G), "Gamma": group_to_json(t.gamma),
            "q": form_to_json(t.q), "i": [list(y) for y in t.images]}


def triple_from_json(data):
    from .gluetriples import GlueTriple

    G = group_from_json(data["G"])
    q = form_from_json(data["q"])
    if "Gamma" in data and group_from_json(data["Gamma"]).factors != q.group.factors:
        raise InvalidForm("Gamma does not match the group of q")
    try:
        hom = GroupHom(G, q.group, [tuple(int(v) for v in y) for y in data["i"]])
    except ValueError as exc:
        raise InvalidForm(f"i is not a homomorphism: {exc}") from exc
    return GlueTriple(G, q, hom)


def cocycle_to_json(omega):
    return {"group": group_to_json(omega.group),
            "values": [[list(x), list(y), list(z), rat(v)] for x, y, z, v in omega.nonzero()]}


def cocycle_from_json(data):
    from .cocycles import Cocycle3

    group = group_from_json(data["group"])
    entries = {}
    for x, y, z, v in data.get("values", []):
        key = tuple(group.reduce(tuple(a)) for a in (x, y, z))
        entries[key] = parse_rational(v)
    return Cocycle3.from_function(group, lambda x, y, z: entries.get((x, y, z), 0))


def disc_report(disc):
    lattice = disc.lattice
    return {
        "lattice": lattice_to_json(lattice),
        "rank": lattice.rank,
        "det": lattice.det,
        "group": group_to_json(disc.group),
        "form": form_to_json(disc.form),
        "q_table": form_table(disc.form),
        "signature": signature(disc.form),
        "lifts": [[exact(v) for v in lam] for lam in disc.lifts],
    }


def qtable_to_json(table, with_table=True):
    out = {"G": group_to_json(table.G), "order": table.order,
           "structure": group_to_json(table.structure()),
           "identity": table.identity, "inverses": list(table.inverses),
           "classes": [triple_to_json(c) for c in table.classes]}
    if with_table:
        out["table"] = [list(row) for row in table.table]
    return out


def moddata_report(data):
    from .moddata import exponent_tables

    s, t = exponent_tables(data)
    return {"form": form_to_json(data.q), "T": [rat(v) for v in t],
            "S": [[rat(v) for v in row] for row in s], "charge": f"{data.sigma}/8"}


__all__ = [
    "load", "dumps", "rat", "exact", "group_to_json", "group_from_json", "form_to_json",
    "form_from_json", "form_table", "lattice_to_json", "lattice_from_json", "triple_to_json",
    "triple_from_json", "cocycle_to_json", "cocycle_from_json", "disc_report", "qtable_to_json",
    "moddata_report",
]
