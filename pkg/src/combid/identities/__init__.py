"""Identity registry and verifier."""

from .backends import FACTORED, PRINCIPAL, FactoredBackend, PrincipalBackend
from .catalog import IdentitySpec, Symbol, build_registry, get_spec, registry
from .verify import (
    CONDITION_CAP,
    DEFAULT_TOLERANCE,
    FD_TOLERANCE,
    GUARD_BAND,
    STATUSES,
    EvalRecord,
    SweepReport,
    cross_check,
    eq21_forms,
    make_rng,
    reversal_check,
    sample_assignment,
    sweep,
    verify_instance,
)

__all__ = [
    "FACTORED",
    "PRINCIPAL",
    "FactoredBackend",
    "PrincipalBackend",
    "IdentitySpec",
    "Symbol",
    "build_registry",
    "get_spec",
    "registry",
    "CONDITION_CAP",
    "DEFAULT_TOLERANCE",
    "FD_TOLERANCE",
    "GUARD_BAND",
    "STATUSES",
    "EvalRecord",
    "SweepReport",
    "cross_check",
    "eq21_forms",
    "make_rng",
    "reversal_check",
    "sample_assignment",
    "sweep",
    "verify_instance",
]
