"""Size caps for the exhaustive algorithms.

These are artifact choices: each exhaustive routine checks its cap up front and
raises :class:`~hololab.errors.CapExceeded` rather than running unbounded.
"""

import os

# orders of groups whose normal-subgroup lattice / classes we enumerate
NORMAL_SUBGROUP_CAP = 512

# bound on |G|**k for generator-image tuple scans in homomorphism search
HOM_TUPLE_CAP = 10**8

# largest permutation group we materialize element by element
ELEMENT_CAP = 10**6

# full associativity check up to this order, sampled above it
ASSOC_FULL_LIMIT = 256
ASSOC_SAMPLES = 10**6
ASSOC_SEED = 0

# brute-force Sym(d) scans; 11 and 12 need an explicit override
DEFAULT_MAX_DEGREE = 10
HARD_MAX_DEGREE = 12

DEFAULT_SEED = 20240601


def max_degree_from_env(default: int = DEFAULT_MAX_DEGREE) -> int:
    value = os.environ.get("HOLOLAB_MAX_DEGREE")
    if not value:
        return default
    return int(value)
