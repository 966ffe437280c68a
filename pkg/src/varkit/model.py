"""Domain types for system-family variant models, plus structural validation.

A :class:`VariabilityModel` is the catalog of variation points of a system
family: each :class:`Variant` names its possible values, the value-group
relation, the market areas it applies to, and the variants or values it
requires.  All types are immutable values; anything that inspects a model is
a pure function, and every semantic rule is enforced by
:func:`validate_model` rather than at construction time so that partially
broken models can still be loaded and reported on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .errors import NotFoundError

#: Area token meaning "applicable to every declared area".
ALL = "ALL"

VARIANT_ID_RE = re.compile(r"^V[1-9][0-9]*$")
VALUE_ID_RE = re.compile(r"^V[1-9][0-9]*\.[1-9][0-9]*$")

#: Error codes a :class:`ValidationReport` may carry.
ERROR_CODES = (
    "DUP_ID",
    "BAD_ID_FORMAT",
    "DANGLING_REF",
    "SELF_REF",
    "CYCLE",
    "ARITY",
    "UNKNOWN_AREA",
    "RESERVED_AREA",
)

#: Warning codes.
WARNING_CODES = ("EMPTY_MODEL", "CASCADE_REMOVED")


def is_variant_id(ref: str) -> bool:
    return bool(VARIANT_ID_RE.match(ref))


def is_value_id(ref: str) -> bool:
    return bool(VALUE_ID_RE.match(ref))


def owner_of(ref: str) -> str:
    """Variant id owning ``ref``: the ref itself for variant ids, the prefix
    before the dot for value ids."""
    return ref.split(".", 1)[0]


class RelationKind(str, Enum):
    """Group constraint on a variant's values when the variant is included:
    ``ALTERNATIVE`` selects exactly one value, ``OR`` at least one, and
    ``NONE`` implies the variant's single value."""

    ALTERNATIVE = "alternative"
    OR = "or"
    NONE = "none"


@dataclass(frozen=True)
class VariantValue:
    id: str
    name: str


@dataclass(frozen=True)
class Variant:
    """One variation point: an identified difference among family members."""

    id: str
    name: str
    relation: RelationKind
    values: tuple[VariantValue, ...]
    areas: tuple[str, ...] = (ALL,)
    requires: tuple[str, ...] = ()
    mandatory: bool = False
    question: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "areas", tuple(self.areas))
        object.__setattr__(self, "requires", tuple(self.requires))

    def value_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.values)

    def value(self, value_id: str) -> VariantValue | None:
        for v in self.values:
            if v.id == value_id:
                return v
        return None

    def applies_to(self, area: str) -> bool:
        area = area.strip()
        return ALL in self.areas or any(a.strip() == area for a in self.areas)


@dataclass(frozen=True)
class VariabilityModel:
    """The system-family variant catalog: declared areas plus ordered variants."""

    name: str
    areas: tuple[str, ...] = ()
    variants: tuple[Variant, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "areas", tuple(self.areas))
        object.__setattr__(self, "variants", tuple(self.variants))

    @cached_property
    def _variant_index(self) -> dict[str, Variant]:
        return {v.id: v for v in self.variants}

    @cached_property
    def _value_index(self) -> dict[str, tuple[Variant, VariantValue]]:
        return {vv.id: (v, vv) for v in self.variants for vv in v.values}

    def variant(self, variant_id: str) -> Variant | None:
        return self._variant_index.get(variant_id)

    def value(self, value_id: str) -> tuple[Variant, VariantValue] | None:
        """(owning variant, value) for ``value_id``, or None."""
        return self._value_index.get(value_id)

    def has_ref(self, ref: str) -> bool:
        return ref in self._variant_index or ref in self._value_index

    def variant_order(self, variant_id: str) -> int:
        for i, v in enumerate(self.variants):
            if v.id == variant_id:
                return i
        return len(self.variants)

    def ref_sort_key(self, ref: str) -> tuple[int, int]:
        """Deterministic ordering key: variants come before their values,
        both in model order."""
        owner = owner_of(ref)
        order = self.variant_order(owner)
        if ref == owner:
            return (order, -1)
        variant = self.variant(owner)
        if variant is not None:
            for j, vv in enumerate(variant.values):
                if vv.id == ref:
                    return (order, j)
        return (order, len(variant.values) if variant else 0)


@dataclass(frozen=True)
class Finding:
    """One validation finding; ``where`` names the offending ref or location."""

    code: str
    where: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Finding, ...] = ()
    warnings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


def resolve_ref(model: VariabilityModel, ref: str):
    """Return the :class:`Variant` or :class:`VariantValue` addressed by ``ref``.

    Raises :class:`NotFoundError` when the ref does not resolve.
    """
    variant = model.variant(ref)
    if variant is not None:
        return variant
    hit = model.value(ref)
    if hit is not None:
        return hit[1]
    raise NotFoundError(f"no variant or value with id {ref!r}", where=ref)


def variant_dependency_graph(model: VariabilityModel) -> tuple[tuple[str, str], ...]:
    """Directed edges (variant id -> id of the variant owning each requires
    target), deduplicated, in model order."""
    edges: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for v in model.variants:
        for ref in v.requires:
            target = owner_of(ref)
            if model.variant(target) is None:
                continue
            edge = (v.id, target)
            if edge not in seen:
                seen.add(edge)
                edges.append(edge)
    return tuple(edges)


def _check_areas(model: VariabilityModel, out: list) -> None:
    seen: set[str] = set()
    for i, raw in enumerate(model.areas):
        name = raw.strip()
        where = name or f"areas[{i}]"
        if not name:
            out.append(((0, i, 0), Finding("BAD_ID_FORMAT", where, "area name must be non-empty")))
        elif name == ALL:
            out.append(((0, i, 0), Finding("RESERVED_AREA", name, "'ALL' is reserved and may not be declared as an area")))
        elif "," in name:
            out.append(((0, i, 0), Finding("BAD_ID_FORMAT", name, "area name must not contain ','")))
        elif name in seen:
            out.append(((0, i, 0), Finding("DUP_ID", name, f"duplicate area name {name!r}")))
        else:
            seen.add(name)


def _check_variant(model: VariabilityModel, i: int, v: Variant, declared: set[str],
                   all_ids: dict[str, str], out: list) -> None:
    pos = (1, i)

    def add(code: str, where: str, message: str):
        out.append((pos + (code,), Finding(code, where, message)))

    id_ok = is_variant_id(v.id)
    if not id_ok:
        add("BAD_ID_FORMAT", v.id, f"variant id {v.id!r} must match V<positive integer>")
    elif v.id in all_ids:
        add("DUP_ID", v.id, f"duplicate id {v.id!r}")
    else:
        all_ids[v.id] = "variant"

    if not v.name.strip():
        add("BAD_ID_FORMAT", v.id, f"variant {v.id} name must be non-empty")

    n = len(v.values)
    if v.relation in (RelationKind.ALTERNATIVE, RelationKind.OR) and n < 2:
        add("ARITY", v.id, f"{v.relation.value} variant {v.id} needs at least 2 values, has {n}")
    if v.relation is RelationKind.NONE and n != 1:
        add("ARITY", v.id, f"variant {v.id} with relation 'none' needs exactly 1 value, has {n}")

    if not v.areas:
        add("UNKNOWN_AREA", v.id, f"variant {v.id} declares no applicable area")
    seen_areas: set[str] = set()
    for raw in v.areas:
        area = raw.strip()
        if area in seen_areas:
            add("DUP_ID", v.id, f"variant {v.id} lists area {area!r} twice")
            continue
        seen_areas.add(area)
        if area == ALL:
            if len(v.areas) > 1:
                add("RESERVED_AREA", v.id, f"variant {v.id} mixes 'ALL' with named areas")
        elif area not in declared:
            add("UNKNOWN_AREA", v.id, f"variant {v.id} names undeclared area {area!r}")

    sibling_names: set[str] = set()
    for vv in v.values:
        if not is_value_id(vv.id):
            add("BAD_ID_FORMAT", vv.id, f"value id {vv.id!r} must match V<n>.<n>")
        else:
            if id_ok and owner_of(vv.id) != v.id:
                add("BAD_ID_FORMAT", vv.id, f"value id {vv.id!r} does not belong to variant {v.id}")
            if vv.id in all_ids:
                add("DUP_ID", vv.id, f"duplicate id {vv.id!r}")
            else:
                all_ids[vv.id] = "value"
        if not vv.name.strip():
            add("BAD_ID_FORMAT", vv.id, f"value {vv.id} name must be non-empty")
        elif vv.name in sibling_names:
            add("DUP_ID", vv.id, f"duplicate value name {vv.name!r} within variant {v.id}")
        else:
            sibling_names.add(vv.name)

    seen_refs: set[str] = set()
    for ref in v.requires:
        if not (is_variant_id(ref) or is_value_id(ref)):
            add("BAD_ID_FORMAT", ref, f"requires target {ref!r} on {v.id} is not a variant or value id")
            continue
        if ref in seen_refs:
            add("DUP_ID", v.id, f"variant {v.id} requires {ref!r} twice")
            continue
        seen_refs.add(ref)
        if ref == v.id or owner_of(ref) == v.id:
            add("SELF_REF", v.id, f"variant {v.id} requires itself via {ref!r}")
            continue
        if not model.has_ref(ref):
            add("DANGLING_REF", v.id, f"variant {v.id} requires {ref!r}, which does not exist")


def _check_cycles(model: VariabilityModel, out: list) -> None:
    # Self-edges are reported as SELF_REF, so the cycle check ignores them.
    deps: dict[str, set[str]] = {v.id: set() for v in model.variants}
    for source, target in variant_dependency_graph(model):
        if source != target and target in deps:
            deps[source].add(target)
    placed: set[str] = set()
    progress = True
    while progress:
        progress = False
        for v in model.variants:
            if v.id in placed:
                continue
            if deps[v.id] <= placed:
                placed.add(v.id)
                progress = True
    leftover = [v.id for v in model.variants if v.id not in placed]
    if leftover:
        out.append(
            ((2, 0, "CYCLE"),
             Finding("CYCLE", leftover[0], "dependency cycle among " + ", ".join(leftover)))
        )


def validate_model(model: VariabilityModel) -> ValidationReport:
    """Check every structural and semantic invariant of ``model``.

    Findings are data, not failures: each violated invariant is reported
    exactly once, ordered by model position and then by code.  A model is
    valid iff the report carries no errors.
    """
    errors: list[tuple[tuple, Finding]] = []
    _check_areas(model, errors)
    declared = {a.strip() for a in model.areas if a.strip() and a.strip() != ALL}
    all_ids: dict[str, str] = {}
    for i, v in enumerate(model.variants):
        _check_variant(model, i, v, declared, all_ids, errors)
    _check_cycles(model, errors)
    errors.sort(key=lambda pair: pair[0])

    warnings: list[Finding] = []
    if not model.variants:
        warnings.append(Finding("EMPTY_MODEL", model.name or "<model>", "model declares no variants"))
    return ValidationReport(errors=tuple(f for _, f in errors), warnings=tuple(warnings))
