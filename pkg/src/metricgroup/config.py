"""Global resource bounds.

``METRICGROUP_MAX_ORDER`` overrides the default bound on the order of any
group that gets enumerated element by element.
"""
import os

DEFAULT_MAX_ORDER = 4096


def max_order():
    value = os.environ.get("METRICGROUP_MAX_ORDER")
    if value:
        return int(value)
    return DEFAULT_MAX_ORDER

# enumerate_forms sweeps a parameter box; 4^4 * 2^6 for Z2^4 must fit
MAX_FORM_PARAMETERS = 1 << 20

# enumerate_Q materializes Aut(Gamma) as permutation arrays
MAX_AUTOMORPHISMS = 1 << 18

# default bound on |G| for enumerate_Q
DEFAULT_Q_ORDER = 4
