"""Log-likelihood bias corrections (AIC, AICc, TIC, C_N, bootstrap EIC) for
Gaussian and Laplace models under Gaussian or Laplace data."""

__version__ = "0.1.0"

from .analytic import Scenario, aic, aic_penalty, cn, sugiura_correction
from .distributions import Family, TruthSpec, sample
from .infomat import SingularHessianError, empirical_tic_gauss, info_matrices, tic_trace
from .models import DegenerateSampleError, InsufficientDataError, expected_loglik, fit, loglik, max_loglik, pseudo_true
from .montecarlo import ExperimentSpec, run_bootstrap, run_methods_table, run_true_bias
from .resampling import BootstrapConfig, bootstrap_bias
from .rng import StreamKey

__all__ = [
    "Family", "TruthSpec", "Scenario", "StreamKey",
    "sample", "fit", "loglik", "max_loglik", "expected_loglik", "pseudo_true",
    "aic", "aic_penalty", "sugiura_correction", "cn",
    "info_matrices", "tic_trace", "empirical_tic_gauss",
    "BootstrapConfig", "bootstrap_bias",
    "ExperimentSpec", "run_true_bias", "run_bootstrap", "run_methods_table",
    "SingularHessianError", "DegenerateSampleError", "InsufficientDataError",
]
