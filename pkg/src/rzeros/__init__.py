"""High precision evaluation and zero census of Riemann's function R(s).

R(s) is the half-sum branch of the zeta decomposition
zeta(s) = R(s) + chi(s) conj(R(1 - conj(s))): a main Dirichlet chunk
plus a saddle-crossing integral.  The package evaluates R and R' to a
requested digit count, locates every zero of R in the upper half plane
below a horizon by scanning a far-left seed line and tracking level
curves, certifies them by Newton iteration, and computes the statistics
the zeros are known for (counting law, leftmost records, Siegel's sum),
with fixed-decimal persistence and CSV/x-ray export.
"""
from .errors import (BasinError, CertificationError, ConvergenceError,
                     DivergenceError, DomainError, HorizonError, PoleError,
                     PoleProximityError, RunawayError, RZerosError,
                     SingularFitError, TrackingError, ZeroFileError)
from .numerics import PrecisionContext, chi, log_gamma, theta, zeta_em
from .rfunc import (QuadratureParams, RValue, eval_path_integral, eval_r,
                    eval_r_prime, identity_residual, pfunc, xi_weighted,
                    z_function)
from .stats import (AnnulusRow, ExtremalFitReport, FitResult, RecordEntry,
                    annulus_table, density_evolution, extremal_fit_check,
                    fit_abc, h_conj_residual, histogram, predicted_n, records,
                    siegel_sum)
from .store import (XrayGrid, ZerosFile, emit_series, read_zeros, write_zeros,
                    xray_grid)
from .zerofinder import (CompletenessReport, Seed, Zero, ZeroSet,
                         compute_zeros, refine_newton, scan_seeds,
                         track_curve, verify_completeness)

__version__ = "0.1.0"

__all__ = [
    "PrecisionContext", "QuadratureParams", "RValue", "Seed", "Zero",
    "ZeroSet", "CompletenessReport", "FitResult", "RecordEntry", "AnnulusRow",
    "ExtremalFitReport", "ZerosFile", "XrayGrid",
    "eval_r", "eval_r_prime", "eval_path_integral", "z_function",
    "identity_residual", "xi_weighted", "pfunc", "chi", "theta", "log_gamma",
    "zeta_em", "scan_seeds", "track_curve", "refine_newton", "compute_zeros",
    "verify_completeness", "predicted_n", "fit_abc", "records",
    "extremal_fit_check", "siegel_sum", "h_conj_residual", "histogram",
    "density_evolution", "annulus_table", "write_zeros", "read_zeros",
    "emit_series", "xray_grid",
    "RZerosError", "PoleError", "PoleProximityError", "ConvergenceError",
    "DomainError", "TrackingError", "RunawayError", "BasinError",
    "DivergenceError", "HorizonError", "CertificationError",
    "SingularFitError", "ZeroFileError",
    "__version__",
]
