"""Nested sampling with geometry-aware Metropolis-Hastings proposals.

Circular parameters get wrapped Gaussian steps, spherical (theta, phi)
pairs get Gaussian steps in 3-D followed by projection back onto the unit
sphere, so neither kind of trial can land outside its domain.
"""

__version__ = "0.1.0"

from .exceptions import (ConfigError, DegenerateInputError, GeonestError, KernelError,
                         ModelMisconfigurationError, UsageError)
from .geometry import UnitVec3, angles_to_cart, cart_to_angles, project_to_sphere, wrap
from .kernel import BACKEND
from .mh import ChainStats, LivePoint, evolve_chain, mh_step
from .models import MODELS, Model, build_model
from .oracle import QuadratureSpec, grid_log_evidence, grid_posterior_moment
from .proposal import ProposalScales, TrialOutcome, propose, suggest_scales
from .sampler import (DeadPointRecord, RunResult, SamplerConfig, log_sum_exp,
                      posterior_resample, run)
from .space import (Circular, Linear, ParameterSpace, SphericalPair, domain_contains,
                    log_prior_density, sample_prior)

__all__ = [
    "BACKEND", "ChainStats", "Circular", "ConfigError", "DeadPointRecord",
    "DegenerateInputError", "GeonestError", "KernelError", "Linear", "LivePoint", "MODELS",
    "Model", "ModelMisconfigurationError", "ParameterSpace", "ProposalScales",
    "QuadratureSpec", "RunResult", "SamplerConfig", "SphericalPair", "TrialOutcome",
    "UnitVec3", "UsageError", "angles_to_cart", "build_model", "cart_to_angles",
    "domain_contains", "evolve_chain", "grid_log_evidence", "grid_posterior_moment",
    "log_prior_density", "log_sum_exp", "mh_step", "posterior_resample", "project_to_sphere",
    "propose", "run", "sample_prior", "suggest_scales", "wrap",
]
