"""Variability modelling toolkit for system families.

varkit covers the whole customization pipeline: variability models with
Alternative/OR/None variants, area pruning, requirement application,
decision tables, interactive configuration sessions with dependency
propagation, exhaustive enumeration, and derivation of customized product
models from variant-tagged work products.
"""

from .engine import (
    DecisionRow,
    DecisionTable,
    ValueState,
    VariantState,
    apply_requirements,
    derive_decision_table,
    prune_by_area,
    render_decision_table,
    requires_closure,
    topo_order,
)
from .errors import (
    ArityViolationError,
    DanglingEdgeError,
    DuplicateAnswerError,
    DuplicateElementIdError,
    MandatoryExclusionError,
    MissingAttributeError,
    NarrowToEmptyError,
    NoSuchAnswerError,
    NotFoundError,
    ParseError,
    RefNotInModelError,
    ScopeTooLargeError,
    UnknownAreaError,
    UnknownElementError,
    UnresolvedTagError,
    VarkitError,
)
from .io import (
    Answer,
    AnswersDocument,
    parse_answers,
    parse_model,
    render_variant_table,
    write_answers,
    write_model,
)
from .model import (
    ALL,
    Finding,
    RelationKind,
    ValidationReport,
    VariabilityModel,
    Variant,
    VariantValue,
    is_value_id,
    is_variant_id,
    owner_of,
    resolve_ref,
    validate_model,
)
from .oracle import MAX_ORACLE_VALUES, enumerate_configurations
from .product import (
    ProductEdge,
    ProductElement,
    ProductModel,
    RemovalReport,
    TraceReport,
    derive_customized_product,
    export_graph_text,
    normalize_tag,
    parse_product_model,
    trace_report,
    write_product_model,
)
from .session import (
    Configuration,
    ConfigurationSession,
    Conflict,
    IncompleteReport,
    PendingDecision,
    PropagationOutcome,
    new_session,
)

__version__ = "0.1.0"

__all__ = [
    "ALL",
    "Answer",
    "AnswersDocument",
    "ArityViolationError",
    "Configuration",
    "ConfigurationSession",
    "Conflict",
    "DanglingEdgeError",
    "DecisionRow",
    "DecisionTable",
    "DuplicateAnswerError",
    "DuplicateElementIdError",
    "Finding",
    "IncompleteReport",
    "MAX_ORACLE_VALUES",
    "MandatoryExclusionError",
    "MissingAttributeError",
    "NarrowToEmptyError",
    "NoSuchAnswerError",
    "NotFoundError",
    "ParseError",
    "PendingDecision",
    "ProductEdge",
    "ProductElement",
    "ProductModel",
    "PropagationOutcome",
    "RefNotInModelError",
    "RelationKind",
    "RemovalReport",
    "ScopeTooLargeError",
    "TraceReport",
    "UnknownAreaError",
    "UnknownElementError",
    "UnresolvedTagError",
    "ValidationReport",
    "ValueState",
    "VariabilityModel",
    "Variant",
    "VariantState",
    "VariantValue",
    "VarkitError",
    "apply_requirements",
    "derive_customized_product",
    "derive_decision_table",
    "enumerate_configurations",
    "export_graph_text",
    "is_value_id",
    "is_variant_id",
    "new_session",
    "normalize_tag",
    "owner_of",
    "parse_answers",
    "parse_model",
    "parse_product_model",
    "prune_by_area",
    "render_decision_table",
    "render_variant_table",
    "requires_closure",
    "resolve_ref",
    "topo_order",
    "trace_report",
    "validate_model",
    "write_answers",
    "write_model",
    "write_product_model",
]
