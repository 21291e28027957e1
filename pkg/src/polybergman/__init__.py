"""Numerics for Toeplitz operators with vertical symbols on poly-Bergman
spaces of the upper half-plane: spectral functions, the generic-position
projection system, reproducing kernels and Bargmann-type transforms."""

__version__ = "0.1.0"

from ._core import BACKEND  # noqa: E402
from .errors import (AlphabetError, CertificationError, DomainError,  # noqa: E402
                     IndexOutOfRangeError, InvalidIntervalError, MissingEndpointError,
                     NonFiniteSampleError, NotSeparableError, PoleError, PolyBergmanError)
from .specfun import (beta_fn, digamma, gamma_fn, harmonic, laguerre_ell,  # noqa: E402
                      laguerre_table, laplace_J, laplace_tJ, loggamma, nielsen_beta)
from .quadrature import HalfLineRule, PlaneRule, integrate_halfline, integrate_plane  # noqa: E402
from .symbols import (VerticalSymbol, a0_symbol, canonical_family, make_constant,  # noqa: E402
                      make_indicator, parse_symbol)
from .spectral import (CompactifiedGrid, SpectralMatrix, boundary_limits,  # noqa: E402
                       gamma_a0_matrix, gamma_indicator_closed, gamma_matrix, gamma_true)
from .projections import (generic_position_certificate, m_vector, p_gamma,  # noqa: E402
                          q_projection)
from .algebras import (GeneratorWord, PureState, SampledMatrixFunction,  # noqa: E402
                       evaluate_word, membership, pure_state_apply, separate)
from .kernels import (KernelMatrix, g_kernel, kernel_Kgamma, kernel_PT,  # noqa: E402
                      kernel_PT_oracle, phi_m, reproducing_check)
from .transforms import (HalfLineProfile, apply_Rn, apply_Rn_star,  # noqa: E402
                         build_image_element, vector_profile)
