"""chebdyn: exact and numerical toolkit for Chebyshev dynamical systems.

Chebyshev maps, their preperiodic points (roots-of-unity sums), local and
global canonical heights at every place of the rationals, Galois-averaged
log-distances, S-integrality certificates with finiteness scans, and
quantitative equidistribution experiments.
"""

from .chebyshev import (
    ChebyshevMap,
    Orbit,
    Preperiodicity,
    cheb_eval,
    cheb_poly,
    is_preperiodic_rational,
    orbit,
)
from .cyclotomic import (
    CollisionError,
    GaloisOrbit,
    PreperiodicPoint,
    conjugate_norm_value,
    conjugate_poly,
    conjugate_poly_by_resultant,
    cyclotomic_poly,
    cyclotomic_poly_by_quotients,
    galois_orbit,
    psi_degree,
    real_cyclotomic_poly,
    real_cyclotomic_value,
)
from .equidist import (
    CountRow,
    EquidistAverage,
    GapRecord,
    Interval,
    ProbeResult,
    arccos_prediction,
    baker_gap_probe,
    count_in_interval,
    count_sweep,
    equidistribution_average,
)
from .exact_arith import (
    ARCH,
    FactorBudget,
    Factorization,
    Place,
    ProductFormulaResult,
    factorize,
    is_prime,
    log_abs,
    product_formula_check,
    valuation,
)
from .heights import (
    ConvergenceRow,
    HeightReport,
    galois_average_log_distance,
    global_height,
    height_convergence_experiment,
    local_height_arch_closed,
    local_height_arch_iterative,
    local_height_arch_quadrature,
    local_height_nonarch,
)
from .integrality import (
    IntegralityCertificate,
    PlaceSet,
    ScanRecord,
    ScanSummary,
    finiteness_scan,
    is_s_integral,
    meets_integer,
)
from .intpoly import IntPolynomial

__version__ = "0.1.0"

__all__ = [
    "ARCH",
    "ChebyshevMap",
    "CollisionError",
    "ConvergenceRow",
    "CountRow",
    "EquidistAverage",
    "FactorBudget",
    "Factorization",
    "GaloisOrbit",
    "GapRecord",
    "HeightReport",
    "IntegralityCertificate",
    "IntPolynomial",
    "Interval",
    "Orbit",
    "Place",
    "PlaceSet",
    "Preperiodicity",
    "PreperiodicPoint",
    "ProbeResult",
    "ProductFormulaResult",
    "ScanRecord",
    "ScanSummary",
    "arccos_prediction",
    "baker_gap_probe",
    "cheb_eval",
    "cheb_poly",
    "conjugate_norm_value",
    "conjugate_poly",
    "conjugate_poly_by_resultant",
    "count_in_interval",
    "count_sweep",
    "cyclotomic_poly",
    "cyclotomic_poly_by_quotients",
    "equidistribution_average",
    "factorize",
    "finiteness_scan",
    "galois_average_log_distance",
    "galois_orbit",
    "global_height",
    "height_convergence_experiment",
    "is_preperiodic_rational",
    "is_prime",
    "is_s_integral",
    "local_height_arch_closed",
    "local_height_arch_iterative",
    "local_height_arch_quadrature",
    "local_height_nonarch",
    "log_abs",
    "meets_integer",
    "orbit",
    "product_formula_check",
    "psi_degree",
    "real_cyclotomic_poly",
    "real_cyclotomic_value",
    "valuation",
]
