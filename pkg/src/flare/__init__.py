"""FLARE: incremental rule learning and forward reasoning over
attribute-value vectors with don't-care and don't-know cells."""

from .model import (
    DONT_CARE,
    DONT_KNOW,
    AttributeDef,
    KnowledgeBase,
    Schema,
    StoredRule,
    Vector,
    effective_target_value,
    is_asserted,
    validate_vector,
)
from .metrics import attr_distance, concordant, covers, distance, overlaps, specificity
from .reasoner import ReasonConfig, ReasonOutcome, reason, resolve
from .learner import AdaptReport, adapt, learn
from .precepts import generate_precepts
from .clauses import expand_internal_disjunction, parse_clauses, translate
from .harness import EvalConfig, EvalResult, cross_validate, load_dataset, run_scenario

__version__ = "0.1.0"

__all__ = [
    "DONT_CARE",
    "DONT_KNOW",
    "AttributeDef",
    "KnowledgeBase",
    "Schema",
    "StoredRule",
    "Vector",
    "effective_target_value",
    "is_asserted",
    "validate_vector",
    "attr_distance",
    "concordant",
    "covers",
    "distance",
    "overlaps",
    "specificity",
    "ReasonConfig",
    "ReasonOutcome",
    "reason",
    "resolve",
    "AdaptReport",
    "adapt",
    "learn",
    "generate_precepts",
    "expand_internal_disjunction",
    "parse_clauses",
    "translate",
    "EvalConfig",
    "EvalResult",
    "cross_validate",
    "load_dataset",
    "run_scenario",
]
