"""
Uniformity analysis of polynomial congruential generators modulo m^n.

Residues are base-m digit vectors, least significant digit first. A
collection of integer polynomials (f_1, ..., f_s) maps every x in [m^n]
to the point (f_1(x), ..., f_s(x)) / m^n; the package measures how
evenly these points fill the unit cube: cube frequencies (optionally
conditioned on the low digits of x), Weyl sums and discrepancy, and it
builds and verifies the explicit hitting set for the power collection
(y, y^2, ..., y^s).

All counts, frequencies and discrepancies are exact (ints and Fractions).
"""

from .types import (
    RingSpec,
    Residue,
    UnitPoint,
    IntPolynomial,
    Explicit,
    Iterate,
    Monomial,
    Collection,
    IntMatrix,
    Point,
    SuffixCondition,
    EnumerationMode,
    EXHAUSTIVE,
    GridBox,
    FrequencyReport,
    WeylSumResult,
    DiscrepancyMode,
    DiscrepancyReport,
    SweepRow,
    CoreSets,
    WitnessParams,
    AdmissibleZ,
    LResult,
    WitnessReport,
    HorizonRow,
)
from .errors import (
    PCGUniformityError,
    ConfigurationError,
    UsageError,
    DimensionError,
    CapacityError,
    ParseError,
)
from .config import Limits, DEFAULT_LIMITS
from .mring import reduce, arith, power, substr, to_unit_point, carry_defect, borrow_defect
from .functions import (
    eval_mod,
    iterate_mod,
    build_collection,
    parse_collection,
    parse_polynomial,
    compose,
    expand_iterate,
    subcollection,
    triangular_completion,
    determinant,
    is_nondegenerate,
    transform_affine,
)
from .pointset import SplitMix64, phi_n, enumerate_points, pcg_stream
from .analysis import (
    box_contains,
    cube_frequency,
    all_cube_frequencies,
    neighborhood,
    inner_core,
    weyl_sum,
    weyl_spectrum,
    discrepancy,
    convergence_sweep,
)
from .witness import (
    find_ell,
    membership_in_B,
    apply_L,
    verify_hit,
    scan_admissible,
    admissible_count_formula,
    horizon_scan,
    run_witness,
)

__all__ = [
    "RingSpec",
    "Residue",
    "UnitPoint",
    "IntPolynomial",
    "Explicit",
    "Iterate",
    "Monomial",
    "Collection",
    "IntMatrix",
    "Point",
    "SuffixCondition",
    "EnumerationMode",
    "EXHAUSTIVE",
    "GridBox",
    "FrequencyReport",
    "WeylSumResult",
    "DiscrepancyMode",
    "DiscrepancyReport",
    "SweepRow",
    "CoreSets",
    "WitnessParams",
    "AdmissibleZ",
    "LResult",
    "WitnessReport",
    "HorizonRow",
    "PCGUniformityError",
    "ConfigurationError",
    "UsageError",
    "DimensionError",
    "CapacityError",
    "ParseError",
    "Limits",
    "DEFAULT_LIMITS",
    "reduce",
    "arith",
    "power",
    "substr",
    "to_unit_point",
    "carry_defect",
    "borrow_defect",
    "eval_mod",
    "iterate_mod",
    "build_collection",
    "parse_collection",
    "parse_polynomial",
    "compose",
    "expand_iterate",
    "subcollection",
    "triangular_completion",
    "determinant",
    "is_nondegenerate",
    "transform_affine",
    "SplitMix64",
    "phi_n",
    "enumerate_points",
    "pcg_stream",
    "box_contains",
    "cube_frequency",
    "all_cube_frequencies",
    "neighborhood",
    "inner_core",
    "weyl_sum",
    "weyl_spectrum",
    "discrepancy",
    "convergence_sweep",
    "find_ell",
    "membership_in_B",
    "apply_L",
    "verify_hit",
    "scan_admissible",
    "admissible_count_formula",
    "horizon_scan",
    "run_witness",
]
