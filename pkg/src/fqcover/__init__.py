"""Covering systems of F_q[x]: exact verification and non-covering certificates.

The package splits into:

- algebra: exact F_q and F_q[x] arithmetic (parsing, gcd, factorization, CRT)
- covering: systems of progressions, the brute-force coverage oracle, search
- friable: exact smooth-polynomial counts, norm tails, prime reciprocal sums
- distortion: distorted measures, moment bounds, certificates
- cli: the `fqcover` command

Hot residue-enumeration loops live in a compiled extension when available;
a pure-Python twin is selected automatically otherwise (or when
FQCOVER_PURE_PYTHON=1).
"""

from .algebra import (
    FieldSpec,
    Poly,
    crt,
    enumerate_irreducibles,
    enumerate_monic,
    factor,
    format_poly,
    is_irreducible,
    parse_poly,
    poly_gcd,
    poly_lcm,
)
from .covering import (
    CoverageReport,
    CoveringSystem,
    Progression,
    covers,
    density_sum,
    is_distinct,
    lcm_modulus,
    load_system,
    multiplicity,
    parse_system,
    search_distinct,
)
from .distortion import (
    Certificate,
    DeltaSchedule,
    MeasureTable,
    PrimeTower,
    auto_schedule,
    bad_fraction,
    bad_set,
    build_tower,
    certify,
    exact_moment,
    first_moment_bound,
    initial_measure,
    measure_step,
    min_degree_threshold,
    second_moment_bound,
)
from .friable import (
    FriableTable,
    friable_count,
    friable_table,
    friable_tail,
    friable_tail_top,
    irreducible_count,
    mertens_sum,
    warlimont_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "FieldSpec",
    "Poly",
    "crt",
    "enumerate_irreducibles",
    "enumerate_monic",
    "factor",
    "format_poly",
    "is_irreducible",
    "parse_poly",
    "poly_gcd",
    "poly_lcm",
    "CoverageReport",
    "CoveringSystem",
    "Progression",
    "covers",
    "density_sum",
    "is_distinct",
    "lcm_modulus",
    "load_system",
    "multiplicity",
    "parse_system",
    "search_distinct",
    "Certificate",
    "DeltaSchedule",
    "MeasureTable",
    "PrimeTower",
    "auto_schedule",
    "bad_fraction",
    "bad_set",
    "build_tower",
    "certify",
    "exact_moment",
    "first_moment_bound",
    "initial_measure",
    "measure_step",
    "min_degree_threshold",
    "second_moment_bound",
    "FriableTable",
    "friable_count",
    "friable_table",
    "friable_tail",
    "friable_tail_top",
    "irreducible_count",
    "mertens_sum",
    "warlimont_ratio",
]
