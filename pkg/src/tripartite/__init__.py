"""Three-qubit correlators, Mermin and Svetlichny inequalities, and hybrid
local / two-particle-nonlocal hidden-variable polytope membership."""

from .errors import NonSmoothPoint, NumericalFailure, OutcomeImpossible, ZeroVector
from .hybrid import (HybridCertificate, HybridVertex, Verdict, enumerate_vertices, membership,
                     trivial_model_octet, verify_certificate)
from .inequalities import (CorrelationOctet, InequalityReport, SettingsHextet, classify,
                           mermin_m, mermin_m_prime, octet_from_settings, svetlichny)
from .optimizer import (Objective, OptimizationResult, Parameterization,
                        finite_difference_check, optimize)
from .quantum import (BipartiteState, BlochDirection, TripartiteState, concurrence, correlator,
                      direction, ghz, ghz_correlator_xy, make_state, project_particle, w,
                      w_correlator_xz, xy, xz)
from .sampler import ShotEstimate, outcome_distribution, sample_octet

__version__ = "0.1.0"
