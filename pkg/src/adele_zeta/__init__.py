"""Zeta integrals of GL(1) over Q: local test-function algebras, completed
Dirichlet L-functions with analytic continuation, and place-by-place
decomposition checks for abelian extensions."""

from .archimedean import (ArchTestFunction, GammaFactor, arch_fourier, arch_zeta, gamma_fn,
                          gamma_duplication_check, mellin_multiplier, stirling_profile)
from .characters import (DirichletCharacter, HeckeCharacterPoint, enumerate_characters, evaluate,
                         gauss_sum, kronecker_character, root_number, trivial_character)
from .errors import ConfigError, DomainError, PoleError
from .extensions import (abelian_decomposition_identity, decomposition_identity, dedekind_euler_factor,
                         norm_pushforward, splitting_type, twisted_convolution)
from .global_zeta import (CompletedLFunction, GlobalTestFunction, ThetaSeries, functional_equation_check,
                          height, numerical_residues, poisson_residual, residues, standard_L, theta_lift,
                          zeta_continued, zeta_euler)
from .mellin import growth_report, mellin_numeric, multiplicative_convolution, seminorm_profile
from .padic import (EulerFactor, LocalCharacter, PAdicTestFunction, distinguished_decomposition,
                    generator_convolve, local_component, local_fourier, local_zeta, local_zeta_symbolic)

__version__ = "0.1.0"
