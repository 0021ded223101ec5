"""Exact-arithmetic stability calculator for framed sheaf pairs.

The package decides delta-(semi)stability, slope stability and sectional
stability of pairs (sheaf, framing) on polarized curves and surfaces against
caller-supplied subobject witnesses, computes the wall-and-chamber structure
of the stability parameter together with the numerical existence bounds, and
evaluates the one-parameter-subgroup weight criterion both in closed form
and by brute-force enumeration.  All arithmetic is exact.
"""

from .polynomial import (
    RationalPolynomial,
    as_fraction,
    cauchy_root_bound,
    eventually_leq,
    eventually_lt,
    hilbert_polynomial,
)
from .model import (
    PairProblem,
    Regime,
    SchemaError,
    SubobjectWitness,
    TargetSheafDescriptor,
    VarietyContext,
    Violation,
    classify_regime,
    problem_from_json,
    problem_to_json,
    validate_witness,
)
from .stability import (
    ChainReport,
    Verdict,
    check_chi,
    check_mu,
    check_sectional,
    curve_threshold,
    implication_chain,
    standard_polynomial,
)
from .chambers import (
    Chamber,
    DeltaBound,
    DiscriminantBound,
    OnWall,
    OnWallError,
    WallSet,
    Window,
    chamber_of,
    delta_upper_bound,
    discriminant_bound,
    enumerate_chambers,
    framed_delta_window,
    level_structure_boundary_dimension,
    level_structure_dimension,
    level_structure_window,
    mu_interval_criterion,
    rank2_chamber,
    restriction_degree,
    series_empty,
    series_indices,
    wall_set,
)
from .gitweights import (
    BasisProfile,
    WeightVector,
    brute_force_verdict,
    cone_coefficients,
    condition_rows,
    critical_indices,
    critical_mu,
    eta_delta_conversion,
    hilbert_verdict,
    integer_weight_tuples,
    mu_hat,
    special_weight_vector,
    subspace_criterion,
)

__version__ = "0.1.0"

__all__ = [
    "BasisProfile",
    "Chamber",
    "ChainReport",
    "DeltaBound",
    "DiscriminantBound",
    "OnWall",
    "OnWallError",
    "PairProblem",
    "RationalPolynomial",
    "Regime",
    "SchemaError",
    "SubobjectWitness",
    "TargetSheafDescriptor",
    "VarietyContext",
    "Verdict",
    "Violation",
    "WallSet",
    "WeightVector",
    "Window",
    "as_fraction",
    "brute_force_verdict",
    "cauchy_root_bound",
    "chamber_of",
    "check_chi",
    "check_mu",
    "check_sectional",
    "classify_regime",
    "cone_coefficients",
    "condition_rows",
    "critical_indices",
    "critical_mu",
    "curve_threshold",
    "delta_upper_bound",
    "discriminant_bound",
    "enumerate_chambers",
    "eta_delta_conversion",
    "eventually_leq",
    "eventually_lt",
    "framed_delta_window",
    "hilbert_polynomial",
    "hilbert_verdict",
    "implication_chain",
    "integer_weight_tuples",
    "level_structure_boundary_dimension",
    "level_structure_dimension",
    "level_structure_window",
    "mu_hat",
    "mu_interval_criterion",
    "problem_from_json",
    "problem_to_json",
    "rank2_chamber",
    "restriction_degree",
    "series_empty",
    "series_indices",
    "special_weight_vector",
    "standard_polynomial",
    "subspace_criterion",
    "validate_witness",
    "wall_set",
]
