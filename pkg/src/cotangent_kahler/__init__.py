"""Numerical checks for natural diagonal-lift Kahler-Einstein structures on the cotangent bundle of a space form."""

from .bundle import AdaptedBlocks, canonical_symplectic, j_apply, j_coordinate, radial_coefficients, lift_blocks, metric_full
from .connection import (
    curvature_blocks,
    curvature_fd_oracle,
    full_connection,
    koszul_oracle,
    ricci_blocks,
    ricci_closed_forms,
    ricci_coefficients,
)
from .errors import (
    ConfigError,
    DomainError,
    GeometryError,
    InadmissibleProfileError,
    InputError,
    OracleError,
    SingularProfileError,
)
from .frame import PhasePoint, TangentVector, adapted, coordinate, frame_change_at
from .nijenhuis import integrability_verdict, nijenhuis_analytic, nijenhuis_oracle
from .profile import EinsteinProfileParams, LiftProfile, closed_form_vw, einstein_u
from .spaceform import SpaceFormParams, christoffel_at, metric_at, riemann_at
from .verify import Context, SampleSpec, run_suites, sample_phase_points

__all__ = [
    "AdaptedBlocks",
    "ConfigError",
    "Context",
    "DomainError",
    "EinsteinProfileParams",
    "GeometryError",
    "InadmissibleProfileError",
    "InputError",
    "LiftProfile",
    "OracleError",
    "PhasePoint",
    "SampleSpec",
    "SingularProfileError",
    "SpaceFormParams",
    "TangentVector",
    "adapted",
    "canonical_symplectic",
    "christoffel_at",
    "closed_form_vw",
    "coordinate",
    "curvature_blocks",
    "curvature_fd_oracle",
    "einstein_u",
    "frame_change_at",
    "full_connection",
    "integrability_verdict",
    "j_apply",
    "j_coordinate",
    "koszul_oracle",
    "lift_blocks",
    "metric_at",
    "metric_full",
    "nijenhuis_analytic",
    "nijenhuis_oracle",
    "radial_coefficients",
    "ricci_blocks",
    "ricci_closed_forms",
    "ricci_coefficients",
    "riemann_at",
    "run_suites",
    "sample_phase_points",
]
