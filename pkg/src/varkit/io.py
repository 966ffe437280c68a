"""Serialization of variant models and answers files, plus table rendering.

The interchange format is a small XML dialect: one ``variant`` element per
variation point, one attribute per column of the tabular notation.  Parsing
is structural only (well-formedness and attribute presence); semantic rules
live in :func:`varkit.model.validate_model`.  Writing is canonical — fixed
indentation and attribute order — so written documents are diffable and
parse/write round-trips are byte-stable.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

from .errors import (
    DuplicateAnswerError,
    MissingAttributeError,
    ParseError,
    UnknownElementError,
)
from .model import ALL, RelationKind, VariabilityModel, Variant, VariantValue, owner_of

MODEL_ROOT = "variability-model"


def _element_error(exc: ET.ParseError) -> ParseError:
    line, column = exc.position if exc.position else (None, None)
    return ParseError(f"malformed document: {exc.msg.split(':')[0]}", line=line, column=column)


def _require(el: ET.Element, attr: str) -> str:
    value = el.get(attr)
    if value is None:
        raise MissingAttributeError(
            f"<{el.tag}> element is missing required attribute {attr!r}", where=el.get("id") or el.tag
        )
    return value


def _parse_root(document: bytes | str) -> ET.Element:
    try:
        return ET.fromstring(document)
    except ET.ParseError as exc:
        raise _element_error(exc) from exc


def parse_model(document: bytes | str) -> VariabilityModel:
    """Read an interchange document into a :class:`VariabilityModel`.

    Declaration order of areas, variants, values and requires entries is
    preserved exactly.  Raises :class:`ParseError` (with line/column when
    the document is not well-formed), :class:`MissingAttributeError`, or
    :class:`UnknownElementError`.
    """
    root = _parse_root(document)
    if root.tag != MODEL_ROOT:
        raise UnknownElementError(
            f"expected root element <{MODEL_ROOT}>, found <{root.tag}>", where=root.tag
        )
    areas: list[str] = []
    variants: list[Variant] = []
    seen_areas_block = False
    for child in root:
        if child.tag == "areas":
            if seen_areas_block:
                raise UnknownElementError("more than one <areas> block", where="areas")
            seen_areas_block = True
            for area_el in child:
                if area_el.tag != "area":
                    raise UnknownElementError(
                        f"unexpected element <{area_el.tag}> inside <areas>", where=area_el.tag
                    )
                areas.append(_require(area_el, "name"))
        elif child.tag == "variant":
            variants.append(_parse_variant(child))
        else:
            raise UnknownElementError(
                f"unexpected element <{child.tag}> inside <{MODEL_ROOT}>", where=child.tag
            )
    return VariabilityModel(name=_require(root, "name"), areas=tuple(areas), variants=tuple(variants))


def _parse_variant(el: ET.Element) -> Variant:
    vid = _require(el, "id")
    relation_text = _require(el, "relation")
    try:
        relation = RelationKind(relation_text)
    except ValueError:
        raise ParseError(
            f"variant {vid}: relation must be one of alternative, or, none; got {relation_text!r}",
            where=vid,
        ) from None
    mandatory_text = el.get("mandatory")
    if mandatory_text is None:
        mandatory = False
    elif mandatory_text in ("true", "false"):
        mandatory = mandatory_text == "true"
    else:
        raise ParseError(
            f"variant {vid}: mandatory must be 'true' or 'false', got {mandatory_text!r}", where=vid
        )
    values: list[VariantValue] = []
    requires: list[str] = []
    for child in el:
        if child.tag == "value":
            values.append(VariantValue(id=_require(child, "id"), name=_require(child, "name")))
        elif child.tag == "requires":
            requires.append(_require(child, "ref"))
        else:
            raise UnknownElementError(
                f"unexpected element <{child.tag}> inside <variant> {vid}", where=child.tag
            )
    return Variant(
        id=vid,
        name=_require(el, "name"),
        relation=relation,
        values=tuple(values),
        areas=tuple(part.strip() for part in _require(el, "area").split(",")),
        requires=tuple(requires),
        mandatory=mandatory,
        question=el.get("question"),
    )


def write_model(model: VariabilityModel) -> bytes:
    """Serialize ``model`` to its canonical interchange form.

    Two-space indentation, attributes in fixed order, one element per line,
    trailing newline.  ``parse_model(write_model(m))`` equals ``m``.
    """
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    lines.append(f"<{MODEL_ROOT} name={quoteattr(model.name)}>")
    if model.areas:
        lines.append("  <areas>")
        lines.extend(f"    <area name={quoteattr(a)}/>" for a in model.areas)
        lines.append("  </areas>")
    else:
        lines.append("  <areas/>")
    for variant in model.variants:
        lines.extend(_variant_lines(variant))
    lines.append(f"</{MODEL_ROOT}>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _variant_lines(v: Variant) -> list[str]:
    attrs = [
        f"id={quoteattr(v.id)}",
        f"name={quoteattr(v.name)}",
        f"relation={quoteattr(v.relation.value)}",
        f"area={quoteattr(','.join(v.areas))}",
    ]
    if v.mandatory:
        attrs.append('mandatory="true"')
    if v.question is not None:
        attrs.append(f"question={quoteattr(v.question)}")
    open_tag = "  <variant " + " ".join(attrs)
    body = [f"    <value id={quoteattr(vv.id)} name={quoteattr(vv.name)}/>" for vv in v.values]
    body.extend(f"    <requires ref={quoteattr(ref)}/>" for ref in v.requires)
    if not body:
        return [open_tag + "/>"]
    return [open_tag + ">", *body, "  </variant>"]


@dataclass(frozen=True)
class Answer:
    variant: str
    values: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))


@dataclass(frozen=True)
class AnswersDocument:
    """Captured stakeholder requirements for one target area: per-variant
    value choices plus explicit variant exclusions."""

    area: str
    answers: tuple[Answer, ...] = ()
    exclusions: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "answers", tuple(self.answers))
        object.__setattr__(self, "exclusions", tuple(self.exclusions))


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def parse_answers(document: bytes | str) -> AnswersDocument:
    """Read an answers JSON document.  Unknown fields are rejected; a variant
    may appear at most once across answers and exclusions."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"answers document is not valid JSON: {exc.msg}", line=exc.lineno, column=exc.colno
        ) from exc
    _expect(isinstance(data, dict), "answers document must be a JSON object")
    unknown = set(data) - {"area", "answers", "exclusions"}
    _expect(not unknown, "unknown answers field(s): " + ", ".join(sorted(unknown)))
    area = data.get("area")
    _expect(isinstance(area, str) and bool(area.strip()), "'area' must be a non-empty string")
    raw_answers = data.get("answers", [])
    raw_exclusions = data.get("exclusions", [])
    _expect(isinstance(raw_answers, list), "'answers' must be a list")
    _expect(isinstance(raw_exclusions, list), "'exclusions' must be a list")

    seen: set[str] = set()
    answers: list[Answer] = []
    for entry in raw_answers:
        _expect(isinstance(entry, dict), "each answer must be an object")
        unknown = set(entry) - {"variant", "values"}
        _expect(not unknown, "unknown answer field(s): " + ", ".join(sorted(unknown)))
        variant = entry.get("variant")
        _expect(isinstance(variant, str), "answer field 'variant' must be a string")
        values = entry.get("values")
        _expect(
            isinstance(values, list) and all(isinstance(x, str) for x in values),
            f"answer for {variant!r}: 'values' must be a list of strings",
        )
        for value in values:
            _expect(
                owner_of(value) == variant,
                f"value {value!r} does not belong to variant {variant!r}",
            )
        if variant in seen:
            raise DuplicateAnswerError(f"variant {variant!r} appears more than once", where=variant)
        seen.add(variant)
        answers.append(Answer(variant=variant, values=tuple(values)))

    exclusions: list[str] = []
    for ref in raw_exclusions:
        _expect(isinstance(ref, str), "each exclusion must be a variant id string")
        if ref in seen:
            raise DuplicateAnswerError(
                f"variant {ref!r} appears both answered/excluded more than once", where=ref
            )
        seen.add(ref)
        exclusions.append(ref)
    return AnswersDocument(area=area, answers=tuple(answers), exclusions=tuple(exclusions))


def write_answers(doc: AnswersDocument) -> bytes:
    payload = {
        "area": doc.area,
        "answers": [{"variant": a.variant, "values": list(a.values)} for a in doc.answers],
        "exclusions": list(doc.exclusions),
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


VARIANT_TABLE_HEADER = ("Variant", "Values of variant", "Relations", "Applicable Area", "Dependency")

_RELATION_LABEL = {
    RelationKind.ALTERNATIVE: "Alternative",
    RelationKind.OR: "OR",
    RelationKind.NONE: "",
}


def render_variant_table(model: VariabilityModel) -> str:
    """Render the model as a pipe-separated text table, one row per variant.

    Empty requires lists print as "None"; the ALL area token prints as ALL.
    """
    rows = [VARIANT_TABLE_HEADER]
    for v in model.variants:
        rows.append((
            f"{v.id}. {v.name}",
            ", ".join(f"{vv.id} {vv.name}" for vv in v.values),
            _RELATION_LABEL[v.relation],
            ALL if ALL in v.areas else ", ".join(v.areas),
            ", ".join(v.requires) if v.requires else "None",
        ))
    return "\n".join(" | ".join(cells) for cells in rows) + "\n"
