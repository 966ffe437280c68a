"""Interactive configuration sessions with dependency propagation.

A session walks an application engineer through the open decisions of an
area-pruned model.  Every answer is validated by replaying the whole answer
log against a fresh state: the replayed state either reaches a consistent
fixed point and is committed, or the triggering call is rejected with the
conflicting refs and the session is left untouched.  Because the state is a
pure function of the log, retracting an answer is simply replaying without
it, and the final state never depends on answer order.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .engine import (
    NEGATIVE_VALUE_STATES,
    POSITIVE_VALUE_STATES,
    DecisionRow,
    ValueState,
    VariantState,
    derive_decision_table,
    prune_by_area,
)
from .errors import (
    ArityViolationError,
    MandatoryExclusionError,
    NoSuchAnswerError,
    RefNotInModelError,
)
from .io import Answer
from .model import RelationKind, VariabilityModel, Variant, owner_of


@dataclass(frozen=True)
class Conflict:
    """A ref whose required and excluded roles clashed, with the reason."""

    ref: str
    reason: str


@dataclass(frozen=True)
class PropagationOutcome:
    """Net state deltas of one answer/retract, or the conflicts that
    rejected it.  ``forced``/``excluded`` list refs newly decided by
    propagation (never the explicitly chosen ones); ``released`` lists refs
    returned to pending."""

    forced: tuple[str, ...] = ()
    excluded: tuple[str, ...] = ()
    released: tuple[str, ...] = ()
    conflicts: tuple[Conflict, ...] = ()

    @property
    def rejected(self) -> bool:
        return bool(self.conflicts)


@dataclass(frozen=True)
class Configuration:
    """A complete, consistent set of choices: the recipe for one member.

    ``selections`` maps each included variant to its selected values, both
    in model order; variants absent from it are excluded."""

    area: str
    selections: tuple[tuple[str, tuple[str, ...]], ...]

    def as_dict(self) -> dict[str, tuple[str, ...]]:
        return dict(self.selections)

    def includes(self, ref: str) -> bool:
        """True when ``ref`` (variant or value id) is part of the product."""
        owner = owner_of(ref)
        for variant_id, values in self.selections:
            if variant_id == owner:
                return ref == owner or ref in values
        return False


@dataclass(frozen=True)
class IncompleteReport:
    undecided: tuple[str, ...]


@dataclass(frozen=True)
class PendingDecision:
    """A decision row still waiting for an answer.  ``blocked`` marks rows
    whose guard values are neither selected nor forced yet."""

    row: DecisionRow
    blocked: bool
    unmet_guard: tuple[str, ...]


def _fresh_states(model: VariabilityModel):
    values = {vv.id: ValueState.PENDING for v in model.variants for vv in v.values}
    variants = {
        v.id: VariantState.INCLUDED if v.mandatory else VariantState.UNDECIDED
        for v in model.variants
    }
    return values, variants


def _ref_excluded(values, variants, ref: str) -> bool:
    owner = owner_of(ref)
    if ref == owner:
        return variants[ref] is VariantState.EXCLUDED
    return values[ref] in NEGATIVE_VALUE_STATES


def _apply_entry(model, values, variants, entry: Answer) -> Conflict | None:
    """Mark one log entry's explicit decisions.  Consequences (and most
    contradictions) are left to :func:`_propagate`; only clashes visible at
    marking time are reported here."""
    variant = model.variant(entry.variant)
    if entry.values:
        variants[variant.id] = VariantState.INCLUDED
        for vv in variant.values:
            if vv.id in entry.values:
                values[vv.id] = ValueState.SELECTED_EXPLICIT
            else:
                if values[vv.id] in POSITIVE_VALUE_STATES:
                    return Conflict(
                        vv.id,
                        f"value {vv.id} is forced by another selection but the answer for {variant.id} omits it",
                    )
                values[vv.id] = ValueState.EXCLUDED_EXPLICIT
    else:
        if variant.mandatory:
            return Conflict(variant.id, f"variant {variant.id} is mandatory and cannot be excluded")
        positive = [vv.id for vv in variant.values if values[vv.id] in POSITIVE_VALUE_STATES]
        if positive:
            return Conflict(
                positive[0],
                f"value {positive[0]} is forced by another selection; variant {variant.id} cannot be excluded",
            )
        if variants[variant.id] is VariantState.INCLUDED:
            return Conflict(
                variant.id,
                f"variant {variant.id} is required by another selection and cannot be excluded",
            )
        variants[variant.id] = VariantState.EXCLUDED
        for vv in variant.values:
            values[vv.id] = ValueState.EXCLUDED_EXPLICIT
    return None


def _propagate(model, values, variants) -> Conflict | None:
    """Run the dependency rules to a fixed point, mutating the state maps.

    Rules, applied per variant in model order until nothing changes:
    a selected value includes its variant; an included variant forces every
    requires target; a decided value of an Alternative group excludes its
    siblings; an included single-value variant forces that value; an
    excluded variant excludes its values; an undecided variant with an
    excluded requires target becomes excluded.  The first contradiction
    found is returned (iteration order makes it deterministic).
    """
    while True:
        changed = False
        for v in model.variants:
            state = variants[v.id]
            positive = [vv.id for vv in v.values if values[vv.id] in POSITIVE_VALUE_STATES]
            if positive and state is VariantState.EXCLUDED:
                return Conflict(positive[0], f"value {positive[0]} is selected but variant {v.id} is excluded")
            if positive and state is VariantState.UNDECIDED:
                variants[v.id] = VariantState.INCLUDED
                state = VariantState.INCLUDED
                changed = True
            if state is VariantState.INCLUDED:
                for ref in v.requires:
                    owner = owner_of(ref)
                    if ref == owner:
                        dep = variants[ref]
                        if dep is VariantState.EXCLUDED:
                            return Conflict(ref, f"{v.id} requires {ref}, which is excluded")
                        if dep is VariantState.UNDECIDED:
                            variants[ref] = VariantState.INCLUDED
                            changed = True
                    else:
                        val = values[ref]
                        if val in NEGATIVE_VALUE_STATES:
                            return Conflict(ref, f"{v.id} requires {ref}, which is excluded")
                        if val is ValueState.PENDING:
                            values[ref] = ValueState.FORCED
                            changed = True
                if v.relation is RelationKind.ALTERNATIVE and positive:
                    if len(positive) > 1:
                        return Conflict(
                            positive[1],
                            f"alternative variant {v.id} has two selected values: {positive[0]} and {positive[1]}",
                        )
                    for vv in v.values:
                        if vv.id != positive[0] and values[vv.id] is ValueState.PENDING:
                            values[vv.id] = ValueState.EXCLUDED_BY_PROPAGATION
                            changed = True
                if v.relation is RelationKind.NONE and not positive:
                    only = v.values[0].id
                    if values[only] in NEGATIVE_VALUE_STATES:
                        return Conflict(only, f"variant {v.id} is included but its only value {only} is excluded")
                    values[only] = ValueState.FORCED
                    changed = True
            elif state is VariantState.EXCLUDED:
                for vv in v.values:
                    if values[vv.id] is ValueState.PENDING:
                        values[vv.id] = ValueState.EXCLUDED_BY_PROPAGATION
                        changed = True
            if variants[v.id] is VariantState.UNDECIDED:
                for ref in v.requires:
                    if _ref_excluded(values, variants, ref):
                        variants[v.id] = VariantState.EXCLUDED
                        changed = True
                        break
        if not changed:
            return None


def _replay(model, log: Iterable[Answer]):
    values, variants = _fresh_states(model)
    # settle mandatory inclusions so the empty log is already a fixed point
    conflict = _propagate(model, values, variants)
    if conflict is not None:
        return values, variants, conflict
    for entry in log:
        conflict = _apply_entry(model, values, variants, entry) or _propagate(model, values, variants)
        if conflict is not None:
            return values, variants, conflict
    return values, variants, None


class ConfigurationSession:
    """Stepwise configuration of one family member for one applicable area.

    Mutations are single-writer: callers sharing a session across threads
    must serialize answer/retract externally.
    """

    def __init__(self, model: VariabilityModel, area: str):
        pruned, warnings = prune_by_area(model, area)
        self.model = pruned
        self.area = area.strip()
        self.prune_warnings = warnings
        self.log: tuple[Answer, ...] = ()
        self._values, self._variants, _ = _replay(pruned, ())
        self._table = derive_decision_table(pruned)

    @property
    def value_states(self) -> Mapping[str, ValueState]:
        return MappingProxyType(self._values)

    @property
    def variant_states(self) -> Mapping[str, VariantState]:
        return MappingProxyType(self._variants)

    @property
    def decision_table(self):
        return self._table

    def answer(self, variant_id: str, values: Iterable[str]) -> PropagationOutcome:
        """Decide ``variant_id``: select the given values, or exclude the
        variant when ``values`` is empty.  Re-answering replaces the earlier
        decision.  On conflict the session is unchanged."""
        chosen = frozenset(values)
        variant = self.model.variant(variant_id)
        if variant is None:
            raise RefNotInModelError(
                f"variant {variant_id!r} is not in the session scope", where=variant_id
            )
        for value_id in sorted(chosen):
            if variant.value(value_id) is None:
                raise RefNotInModelError(
                    f"{value_id!r} is not a value of variant {variant_id}", where=value_id
                )
        if not chosen:
            if variant.mandatory:
                raise MandatoryExclusionError(
                    f"variant {variant_id} is mandatory and cannot be excluded", where=variant_id
                )
        elif variant.relation in (RelationKind.ALTERNATIVE, RelationKind.NONE) and len(chosen) != 1:
            raise ArityViolationError(
                f"variant {variant_id} ({variant.relation.value}) takes exactly one value, got {len(chosen)}",
                where=variant_id,
            )
        ordered = tuple(vv.id for vv in variant.values if vv.id in chosen)
        entry = Answer(variant=variant_id, values=ordered)
        if any(e.variant == variant_id for e in self.log):
            new_log = tuple(entry if e.variant == variant_id else e for e in self.log)
        else:
            new_log = self.log + (entry,)
        return self._commit(new_log)

    def retract(self, variant_id: str) -> PropagationOutcome:
        """Undo the logged decision for ``variant_id`` and replay the rest."""
        if not any(e.variant == variant_id for e in self.log):
            raise NoSuchAnswerError(
                f"variant {variant_id!r} has no logged answer or exclusion", where=variant_id
            )
        outcome = self._commit(tuple(e for e in self.log if e.variant != variant_id))
        if outcome.rejected:  # a shrunk log can only relax constraints
            raise RuntimeError(f"retract replay conflicted: {outcome.conflicts[0].reason}")
        return outcome

    def _commit(self, new_log: tuple[Answer, ...]) -> PropagationOutcome:
        values, variants, conflict = _replay(self.model, new_log)
        if conflict is not None:
            return PropagationOutcome(conflicts=(conflict,))
        outcome = self._diff(values, variants, new_log)
        self.log = new_log
        self._values, self._variants = values, variants
        return outcome

    def _diff(self, values, variants, log) -> PropagationOutcome:
        answered = {e.variant for e in log if e.values}
        forced: list[str] = []
        excluded: list[str] = []
        released: list[str] = []
        for vid, new in variants.items():
            old = self._variants[vid]
            if new is old:
                continue
            if new is VariantState.INCLUDED and vid not in answered:
                forced.append(vid)
            elif new is VariantState.EXCLUDED:
                excluded.append(vid)
            elif new is VariantState.UNDECIDED:
                released.append(vid)
        for ref, new in values.items():
            old = self._values[ref]
            if new is old:
                continue
            if new is ValueState.FORCED:
                forced.append(ref)
            elif new in NEGATIVE_VALUE_STATES:
                excluded.append(ref)
            elif new is ValueState.PENDING:
                released.append(ref)
        key = self.model.ref_sort_key
        return PropagationOutcome(
            forced=tuple(sorted(forced, key=key)),
            excluded=tuple(sorted(excluded, key=key)),
            released=tuple(sorted(released, key=key)),
        )

    def _arity_satisfied(self, variant: Variant) -> bool:
        positive = sum(1 for vv in variant.values if self._values[vv.id] in POSITIVE_VALUE_STATES)
        if variant.relation is RelationKind.OR:
            return positive >= 1
        return positive == 1

    def pending_decisions(self) -> list[PendingDecision]:
        """Decision rows still needing an answer, in table order.  Rows whose
        guard values are not yet selected/forced come back flagged blocked
        with the unmet refs."""
        out: list[PendingDecision] = []
        for row in self._table.rows:
            variant = self.model.variant(row.trace)
            state = self._variants[row.trace]
            if state is VariantState.EXCLUDED:
                continue
            if state is VariantState.INCLUDED and self._arity_satisfied(variant):
                continue
            unmet = tuple(
                ref for ref in row.guard if self._values[ref] not in POSITIVE_VALUE_STATES
            )
            out.append(PendingDecision(row=row, blocked=bool(unmet), unmet_guard=unmet))
        return out

    def current_configuration(self) -> Configuration | IncompleteReport:
        """The finished Configuration, or the variants still undecided."""
        undecided = [
            v.id
            for v in self.model.variants
            if self._variants[v.id] is VariantState.UNDECIDED
            or (self._variants[v.id] is VariantState.INCLUDED and not self._arity_satisfied(v))
        ]
        if undecided:
            return IncompleteReport(undecided=tuple(undecided))
        selections = tuple(
            (v.id, tuple(vv.id for vv in v.values if self._values[vv.id] in POSITIVE_VALUE_STATES))
            for v in self.model.variants
            if self._variants[v.id] is VariantState.INCLUDED
        )
        return Configuration(area=self.area, selections=selections)

    @property
    def complete(self) -> bool:
        return isinstance(self.current_configuration(), Configuration)


def new_session(model: VariabilityModel, area: str) -> ConfigurationSession:
    """Open a session over ``model`` pruned to ``area``: every value starts
    pending, mandatory variants start included."""
    return ConfigurationSession(model, area)
