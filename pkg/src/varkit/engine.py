"""Customization operations over variant models.

This module holds the pure transformations of the customization process:
restricting a model to one applicable area, narrowing it with captured
requirements, computing the dependency closure of a selection, and deriving
the decision table that guides an application engineer through the remaining
choices.  Interactive sessions build on these in :mod:`varkit.session`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    NarrowToEmptyError,
    NotFoundError,
    RefNotInModelError,
    UnknownAreaError,
)
from .io import AnswersDocument
from .model import (
    ALL,
    Finding,
    RelationKind,
    VariabilityModel,
    Variant,
    is_value_id,
    owner_of,
    variant_dependency_graph,
)


class ValueState(str, Enum):
    """Lifecycle of one variant value inside a configuration session."""

    PENDING = "pending"
    SELECTED_EXPLICIT = "selected_explicit"
    FORCED = "forced"
    EXCLUDED_EXPLICIT = "excluded_explicit"
    EXCLUDED_BY_PROPAGATION = "excluded_by_propagation"


class VariantState(str, Enum):
    UNDECIDED = "undecided"
    INCLUDED = "included"
    EXCLUDED = "excluded"


#: Value states that count as "in the product".
POSITIVE_VALUE_STATES = frozenset({ValueState.SELECTED_EXPLICIT, ValueState.FORCED})
#: Value states that count as "kept out of the product".
NEGATIVE_VALUE_STATES = frozenset({ValueState.EXCLUDED_EXPLICIT, ValueState.EXCLUDED_BY_PROPAGATION})


def prune_by_area(model: VariabilityModel, area: str) -> tuple[VariabilityModel, tuple[Finding, ...]]:
    """Restrict ``model`` to the variants applicable in ``area``.

    A variant survives when its areas contain ``area`` or the ALL token.
    Survivors whose requires targets were pruned away are removed as well,
    transitively, each with a CASCADE_REMOVED warning, so the result is
    always a self-contained valid model.
    """
    area = area.strip()
    declared = {a.strip() for a in model.areas}
    if area == ALL or area not in declared:
        raise UnknownAreaError(f"area {area!r} is not declared by model {model.name!r}", where=area)

    kept = {v.id for v in model.variants if v.applies_to(area)}
    warnings: list[Finding] = []

    def resolves(ref: str) -> bool:
        return owner_of(ref) in kept

    changed = True
    while changed:
        changed = False
        for v in model.variants:
            if v.id not in kept:
                continue
            missing = [ref for ref in v.requires if not resolves(ref)]
            if missing:
                kept.discard(v.id)
                warnings.append(Finding(
                    "CASCADE_REMOVED", v.id,
                    f"variant {v.id} removed: it requires {missing[0]}, which is outside the {area!r} scope",
                ))
                changed = True
    variants = tuple(v for v in model.variants if v.id in kept)
    return VariabilityModel(name=model.name, areas=model.areas, variants=variants), tuple(warnings)


def apply_requirements(
    model: VariabilityModel, answers: AnswersDocument
) -> tuple[VariabilityModel, tuple[Finding, ...]]:
    """Narrow ``model`` by captured requirements.

    Answered variants keep only the chosen values (relation collapses to
    ``none`` when a single value remains); excluded variants are removed.
    Removal cascades to any variant whose requires target disappeared, with
    a CASCADE_REMOVED warning per casualty.  Unanswered variants keep all
    their values.
    """
    chosen_by_variant: dict[str, frozenset[str]] = {}
    for a in answers.answers:
        variant = model.variant(a.variant)
        if variant is None:
            raise RefNotInModelError(f"answer targets {a.variant!r}, which is not in the model", where=a.variant)
        if not a.values:
            raise NarrowToEmptyError(f"answer for {a.variant} selects no values", where=a.variant)
        for value_id in a.values:
            if variant.value(value_id) is None:
                raise RefNotInModelError(
                    f"answer for {a.variant} names {value_id!r}, which is not one of its values", where=value_id
                )
        chosen_by_variant[a.variant] = frozenset(a.values)

    excluded: set[str] = set()
    for ref in answers.exclusions:
        if model.variant(ref) is None:
            raise RefNotInModelError(f"exclusion targets {ref!r}, which is not a variant in the model", where=ref)
        excluded.add(ref)

    narrowed: dict[str, Variant] = {}
    for v in model.variants:
        if v.id in excluded:
            continue
        if v.id in chosen_by_variant:
            values = tuple(vv for vv in v.values if vv.id in chosen_by_variant[v.id])
            relation = RelationKind.NONE if len(values) == 1 else v.relation
            v = replace(v, values=values, relation=relation)
        narrowed[v.id] = v

    def resolves(ref: str) -> bool:
        owner = narrowed.get(owner_of(ref))
        if owner is None:
            return False
        return ref == owner.id or owner.value(ref) is not None

    warnings: list[Finding] = []
    changed = True
    while changed:
        changed = False
        for vid in [v.id for v in model.variants if v.id in narrowed]:
            v = narrowed[vid]
            missing = [ref for ref in v.requires if not resolves(ref)]
            if missing:
                del narrowed[vid]
                warnings.append(Finding(
                    "CASCADE_REMOVED", vid,
                    f"variant {vid} removed: it requires {missing[0]}, which is no longer available",
                ))
                changed = True
    variants = tuple(narrowed[v.id] for v in model.variants if v.id in narrowed)
    return VariabilityModel(name=model.name, areas=model.areas, variants=variants), tuple(warnings)


def requires_closure(model: VariabilityModel, seed) -> frozenset[str]:
    """Least fixed point of the dependency rules over ``seed``.

    Selecting a value pulls in its variant; an included variant pulls in all
    its requires targets; a required value pulls in that value (and so its
    variant).  Monotone and extensive in the seed; terminates on any model.
    """
    out: set[str] = set()
    work = list(seed)
    while work:
        ref = work.pop()
        if ref in out:
            continue
        if not model.has_ref(ref):
            raise NotFoundError(f"closure seed ref {ref!r} does not resolve", where=ref)
        out.add(ref)
        owner = owner_of(ref)
        if ref != owner:
            work.append(owner)
        else:
            variant = model.variant(ref)
            work.extend(r for r in variant.requires if r not in out)
    return frozenset(out)


@dataclass(frozen=True)
class DecisionRow:
    """One choice point: which values of ``trace`` go into the product.

    ``guard`` lists the value-refs that must already be selected before this
    decision is meaningful; an empty guard marks a top-level decision.
    """

    trace: str
    name: str
    question: str
    guard: tuple[str, ...]
    options: tuple[tuple[str, str], ...]
    relation: RelationKind


@dataclass(frozen=True)
class DecisionTable:
    rows: tuple[DecisionRow, ...]

    def row(self, variant_id: str) -> DecisionRow | None:
        for r in self.rows:
            if r.trace == variant_id:
                return r
        return None


def topo_order(model: VariabilityModel) -> tuple[Variant, ...]:
    """Variants sorted so that every dependency target comes before its
    dependents; ties broken by model order.  A cyclic residue (only possible
    on invalid models) is appended in model order."""
    deps: dict[str, set[str]] = {v.id: set() for v in model.variants}
    for source, target in variant_dependency_graph(model):
        if source != target:
            deps[source].add(target)
    remaining = [v.id for v in model.variants]
    placed: list[str] = []
    placed_set: set[str] = set()
    while remaining:
        for vid in remaining:
            if deps[vid] <= placed_set:
                placed.append(vid)
                placed_set.add(vid)
                remaining.remove(vid)
                break
        else:
            placed.extend(remaining)
            break
    return tuple(model.variant(vid) for vid in placed)


def derive_decision_table(model: VariabilityModel) -> DecisionTable:
    """One decision row per variant, dependency targets first.

    A row's guard carries the value-refs from the variant's requires list;
    variant-level targets order the row after that variant but add no guard
    value.  Question text falls back to a generated prompt.
    """
    rows = []
    for v in topo_order(model):
        rows.append(DecisionRow(
            trace=v.id,
            name=v.name,
            question=v.question if v.question is not None else f"Select value(s) for {v.name}",
            guard=tuple(ref for ref in v.requires if is_value_id(ref)),
            options=tuple((vv.id, vv.name) for vv in v.values),
            relation=v.relation,
        ))
    return DecisionTable(rows=tuple(rows))


def render_decision_table(table: DecisionTable) -> str:
    rows = [("Variant", "Guard", "Question", "Values", "Trace")]
    for r in table.rows:
        rows.append((
            r.name,
            ", ".join(r.guard),
            r.question,
            ", ".join(name for _, name in r.options),
            r.trace,
        ))
    return "\n".join(" | ".join(cells) for cells in rows) + "\n"
