"""qcorr: quantum-correlation analysis for two-qubit states.

Computes entropic and geometric discord, correlation-matrix and
correlation-tensor ranks, operator Schmidt decompositions, local Kraus
channel action, and remote-state-preparation fidelity.
"""
from .channels import (
    KrausChannel,
    LocalProductMap,
    apply_local,
    builtin_channel,
    kraus,
    random_channel,
    validate_cptp,
)
from .correlations import (
    CorrelationMatrix,
    OperatorSchmidtTerm,
    Quantumness,
    QuantumnessVerdict,
    classify,
    correlation_matrix,
    correlation_rank,
    numerical_rank,
    operator_schmidt,
    tensor_rank,
)
from .discord import (
    ConditionalOutcome,
    DiscordResult,
    OptimizerSettings,
    classical_correlations,
    conditional_state,
    discord,
    discord_oracle,
    geometric_discord,
    mutual_information,
)
from .errors import (
    Annihilated,
    EmptyChannel,
    NoConvergence,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    NumericsError,
    OptimizerBudgetExceeded,
    ParamOutOfRange,
    ParseError,
    QcorrError,
    UnknownName,
)
from .rsp import (
    EquatorialTarget,
    RspResult,
    rsp_efficiency,
    rsp_fidelity,
    rsp_protocol_average,
    rsp_protocol_eval,
)
from .states import (
    BlochForm,
    DensityMatrix,
    Tolerances,
    bloch_decompose,
    bloch_reconstruct,
    named_state,
    partial_trace,
    random_density,
    random_unitary,
    validate_density,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "Annihilated",
    "BlochForm",
    "ConditionalOutcome",
    "CorrelationMatrix",
    "DensityMatrix",
    "DiscordResult",
    "EmptyChannel",
    "EquatorialTarget",
    "KrausChannel",
    "LocalProductMap",
    "NoConvergence",
    "NotHermitian",
    "NotPositive",
    "NotUnitTrace",
    "NumericsError",
    "OperatorSchmidtTerm",
    "OptimizerBudgetExceeded",
    "OptimizerSettings",
    "ParamOutOfRange",
    "ParseError",
    "QcorrError",
    "Quantumness",
    "QuantumnessVerdict",
    "RspResult",
    "Tolerances",
    "UnknownName",
    "apply_local",
    "bloch_decompose",
    "bloch_reconstruct",
    "builtin_channel",
    "classical_correlations",
    "classify",
    "conditional_state",
    "correlation_matrix",
    "correlation_rank",
    "discord",
    "discord_oracle",
    "geometric_discord",
    "kraus",
    "mutual_information",
    "named_state",
    "numerical_rank",
    "operator_schmidt",
    "partial_trace",
    "random_channel",
    "random_density",
    "random_unitary",
    "rsp_efficiency",
    "rsp_fidelity",
    "rsp_protocol_average",
    "rsp_protocol_eval",
    "tensor_rank",
    "validate_cptp",
    "validate_density",
    "von_neumann_entropy",
    "__version__",
]
