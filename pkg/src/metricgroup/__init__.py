"""Metric groups, even lattices, glue triples and 3-cocycles of finite abelian groups."""
from .groups import FinAbGroup, GroupHom, Subgroup
from .quadforms import QuadraticForm
from .lattices import EvenLattice, discriminant_form
from .gluetriples import GlueTriple

__version__ = "0.1.0"

__all__ = ["FinAbGroup", "GroupHom", "Subgroup", "QuadraticForm", "EvenLattice",
           "discriminant_form", "GlueTriple", "__version__"]
