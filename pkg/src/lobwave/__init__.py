"""Exact electromagnetic modes in 3-D Lobachevsky space.

The constant-negative-curvature background acts on Maxwell fields like
a diagonal effective medium diag(1, 1, e^{-2z}); its modes separate
into imaginary-order Bessel kernels on the imaginary axis and reflect
off an exponential barrier with unit reflection coefficient for the
physical decaying branch.
"""

from .errors import (
    AccuracyError,
    ConditioningError,
    DegenerateModeError,
    DomainError,
    LobwaveError,
    RangeError,
)
from .geometry import (
    EmbeddingPoint,
    MediumTensors,
    PoincarePoint,
    QuasiCartesian,
    effective_tensors,
    embedding_to_poincare,
    energy_density,
    poincare_to_quasi,
    to_embedding,
    volume_weight,
)
from .modes import (
    FieldVector,
    MaxwellMatrices,
    MAXWELL_MATRICES,
    ModeAmplitudes,
    ModeParams,
    amplitudes_at,
    assemble_field,
    eval_G,
    heun_form_residual,
    maxwell_residual_firstorder,
    maxwell_residual_matrix,
    plane_wave_special,
)
from .scattering import (
    AsymptoticAmplitudes,
    BarrierInfo,
    NeumannAudit,
    ReflectionResult,
    amplitudes_analytic,
    amplitudes_fit,
    neumann_audit,
    penetration_depth,
    reflection,
    reflection_numeric_oracle,
    schrodinger_potential,
    turning_point,
)
from .specfun import (
    BasisBranch,
    SpecialValue,
    basis_G1,
    bessel_I_imag,
    bessel_K_imag,
    gamma_modulus_sq,
    log_gamma,
    recurrence_shift,
    wronskian_IK,
)

__version__ = "1.0.0"

__all__ = [
    "AccuracyError",
    "AsymptoticAmplitudes",
    "BarrierInfo",
    "BasisBranch",
    "ConditioningError",
    "DegenerateModeError",
    "DomainError",
    "EmbeddingPoint",
    "FieldVector",
    "LobwaveError",
    "MAXWELL_MATRICES",
    "MaxwellMatrices",
    "MediumTensors",
    "ModeAmplitudes",
    "ModeParams",
    "NeumannAudit",
    "PoincarePoint",
    "QuasiCartesian",
    "RangeError",
    "ReflectionResult",
    "SpecialValue",
    "amplitudes_analytic",
    "amplitudes_at",
    "amplitudes_fit",
    "assemble_field",
    "basis_G1",
    "bessel_I_imag",
    "bessel_K_imag",
    "effective_tensors",
    "embedding_to_poincare",
    "energy_density",
    "eval_G",
    "gamma_modulus_sq",
    "heun_form_residual",
    "log_gamma",
    "maxwell_residual_firstorder",
    "maxwell_residual_matrix",
    "neumann_audit",
    "penetration_depth",
    "plane_wave_special",
    "poincare_to_quasi",
    "recurrence_shift",
    "reflection",
    "reflection_numeric_oracle",
    "schrodinger_potential",
    "to_embedding",
    "turning_point",
    "volume_weight",
    "wronskian_IK",
]
