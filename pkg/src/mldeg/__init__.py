"""Exact ML degrees of diagonal linear concentration models.

The reciprocal ML degree of a linear concentration model with diagonal
constraints, the plain ML degree, and the generalized score-equation count
are all functions of the matroid of the subspace; this package computes
them in exact arithmetic and certifies the counts independently with an
exact polynomial-system solver.
"""

from .invariants import (
    InvariantReport,
    char_poly,
    char_poly_flats,
    compute_invariants,
    mobius_invariant,
    poincare_poly,
    tutte,
    tutte_bruteforce,
)
from .linalg import (
    QMatrix,
    Subspace,
    contract_subspace,
    kernel,
    rank,
    restrict_subspace,
    rref,
)
from .matroids import (
    FlatLattice,
    Matroid,
    connected_components,
    contract,
    contract_set,
    delete,
    flats,
    is_partition_matroid,
    matroid_from_json_dict,
    restrict,
    uniform_matroid,
)
from .mldegree import (
    MLDegreeReport,
    RmldOneReport,
    StratificationReport,
    classify_rmld_one,
    ml_degree_report,
    mld,
    rmld,
    score_count,
    score_count_dc,
    uniform_rmld,
    uniform_tutte,
    verify_stratification,
)
from .ratpoly import BiPoly, Rational, UniPoly, format_rational, parse_rational
from .solver import (
    CapacityError,
    CertificationError,
    GroebnerBasis,
    MPoly,
    NonGenericParameters,
    OracleCaps,
    PolySystem,
    SolveReport,
    SolverLimits,
    build_score_system,
    buchberger,
    count_torus_solutions,
    oracle_score_count,
    random_generic_s,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
