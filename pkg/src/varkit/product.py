"""Variant-tagged product models and configuration-driven derivation.

A product model is a generic flow graph of the whole system family; elements
carry an optional variant tag naming the variant or value they realize.
Deriving a member product keeps the untagged commonality plus the elements
whose tag is part of the configuration, drops the rest with their incident
edges, and reports what was removed — no control flow is rewired.
"""

from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

from .errors import (
    DanglingEdgeError,
    DuplicateElementIdError,
    MissingAttributeError,
    ParseError,
    UnknownElementError,
    UnresolvedTagError,
)
from .model import Finding, VariabilityModel, owner_of
from .session import Configuration

PRODUCT_ROOT = "product-model"

# prose spells trace tags "V.4"; tables spell them "V4"
_TAG_DOT = re.compile(r"^V\.(?=[0-9])")


def normalize_tag(tag: str) -> str:
    """Canonical spelling of a variant tag: "V.4" becomes "V4", value forms
    like "V.4.2" become "V4.2"; canonical tags pass through unchanged."""
    return _TAG_DOT.sub("V", tag.strip())


@dataclass(frozen=True)
class ProductElement:
    id: str
    kind: str
    label: str
    tag: str | None = None


@dataclass(frozen=True)
class ProductEdge:
    source: str
    target: str
    label: str | None = None


@dataclass(frozen=True)
class ProductModel:
    name: str
    elements: tuple[ProductElement, ...] = ()
    edges: tuple[ProductEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "edges", tuple(self.edges))

    def element(self, element_id: str) -> ProductElement | None:
        for el in self.elements:
            if el.id == element_id:
                return el
        return None


def _require(el: ET.Element, attr: str) -> str:
    value = el.get(attr)
    if value is None:
        raise MissingAttributeError(
            f"<{el.tag}> element is missing required attribute {attr!r}", where=el.get("id") or el.tag
        )
    return value


def parse_product_model(document: bytes | str) -> ProductModel:
    """Read a product-model document; element order is preserved and tags
    are normalized.  Raises :class:`DuplicateElementIdError` on repeated
    element ids and :class:`DanglingEdgeError` on unresolvable endpoints."""
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ParseError(f"malformed document: {exc.msg.split(':')[0]}", line=line, column=column) from exc
    if root.tag != PRODUCT_ROOT:
        raise UnknownElementError(f"expected root element <{PRODUCT_ROOT}>, found <{root.tag}>", where=root.tag)
    name = _require(root, "name")
    elements: list[ProductElement] = []
    edges: list[ProductEdge] = []
    ids: set[str] = set()
    for child in root:
        if child.tag == "element":
            element_id = _require(child, "id")
            if element_id in ids:
                raise DuplicateElementIdError(f"duplicate element id {element_id!r}", where=element_id)
            ids.add(element_id)
            tag = child.get("variant")
            elements.append(ProductElement(
                id=element_id,
                kind=_require(child, "kind"),
                label=_require(child, "label"),
                tag=normalize_tag(tag) if tag is not None else None,
            ))
        elif child.tag == "edge":
            edges.append(ProductEdge(
                source=_require(child, "from"),
                target=_require(child, "to"),
                label=child.get("label"),
            ))
        else:
            raise UnknownElementError(
                f"unexpected element <{child.tag}> inside <{PRODUCT_ROOT}>", where=child.tag
            )
    for edge in edges:
        for endpoint in (edge.source, edge.target):
            if endpoint not in ids:
                raise DanglingEdgeError(
                    f"edge {edge.source} -> {edge.target} references missing element {endpoint!r}",
                    where=endpoint,
                )
    return ProductModel(name=name, elements=tuple(elements), edges=tuple(edges))


def write_product_model(product: ProductModel) -> bytes:
    """Canonical serialization: fixed attribute order, normalized tags,
    elements before edges, trailing newline."""
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    lines.append(f"<{PRODUCT_ROOT} name={quoteattr(product.name)}>")
    for el in product.elements:
        attrs = [f"id={quoteattr(el.id)}", f"kind={quoteattr(el.kind)}", f"label={quoteattr(el.label)}"]
        if el.tag is not None:
            attrs.append(f"variant={quoteattr(el.tag)}")
        lines.append("  <element " + " ".join(attrs) + "/>")
    for edge in product.edges:
        attrs = [f"from={quoteattr(edge.source)}", f"to={quoteattr(edge.target)}"]
        if edge.label is not None:
            attrs.append(f"label={quoteattr(edge.label)}")
        lines.append("  <edge " + " ".join(attrs) + "/>")
    lines.append(f"</{PRODUCT_ROOT}>")
    return ("\n".join(lines) + "\n").encode("utf-8")


@dataclass(frozen=True)
class TraceReport:
    """Which model refs are realized by which elements, plus the tags that
    resolve to nothing and the variants no element realizes."""

    mapping: tuple[tuple[str, tuple[str, ...]], ...]
    orphan_tags: tuple[str, ...]
    unrealized_variants: tuple[str, ...]


def trace_report(model: VariabilityModel, product: ProductModel) -> TraceReport:
    realized: dict[str, list[str]] = {}
    orphans: list[str] = []
    for el in product.elements:
        if el.tag is None:
            continue
        if model.has_ref(el.tag):
            realized.setdefault(el.tag, []).append(el.id)
        elif el.tag not in orphans:
            orphans.append(el.tag)
    realized_owners = {owner_of(ref) for ref in realized}
    return TraceReport(
        mapping=tuple(
            (ref, tuple(realized[ref])) for ref in sorted(realized, key=model.ref_sort_key)
        ),
        orphan_tags=tuple(orphans),
        unrealized_variants=tuple(v.id for v in model.variants if v.id not in realized_owners),
    )


@dataclass(frozen=True)
class RemovalReport:
    """What derivation dropped: element ids, every removed edge, and the
    removed edges that left a surviving endpoint dangling."""

    removed_elements: tuple[str, ...]
    removed_edges: tuple[ProductEdge, ...]
    dangling: tuple[ProductEdge, ...]
    warnings: tuple[Finding, ...] = ()


def derive_customized_product(
    product: ProductModel,
    configuration: Configuration,
    model: VariabilityModel,
    force: bool = False,
) -> tuple[ProductModel, RemovalReport]:
    """Apply ``configuration`` to ``product``.

    Untagged elements always survive; variant-tagged elements survive when
    the variant is included, value-tagged ones when that value is selected.
    A tag that does not resolve in ``model`` aborts with
    :class:`UnresolvedTagError` unless ``force`` keeps the element and
    downgrades the problem to a warning.
    """
    warnings: list[Finding] = []
    keep: dict[str, bool] = {}
    for el in product.elements:
        if el.tag is None:
            keep[el.id] = True
        elif not model.has_ref(el.tag):
            if not force:
                raise UnresolvedTagError(
                    f"element {el.id!r} is tagged {el.tag!r}, which is not in the variability model",
                    where=el.id,
                )
            warnings.append(Finding(
                "UNRESOLVED_TAG", el.id, f"tag {el.tag!r} does not resolve; element kept"
            ))
            keep[el.id] = True
        else:
            keep[el.id] = configuration.includes(el.tag)

    kept_edges: list[ProductEdge] = []
    removed_edges: list[ProductEdge] = []
    dangling: list[ProductEdge] = []
    for edge in product.edges:
        if keep[edge.source] and keep[edge.target]:
            kept_edges.append(edge)
        else:
            removed_edges.append(edge)
            if keep[edge.source] != keep[edge.target]:
                dangling.append(edge)

    derived = ProductModel(
        name=product.name,
        elements=tuple(el for el in product.elements if keep[el.id]),
        edges=tuple(kept_edges),
    )
    report = RemovalReport(
        removed_elements=tuple(el.id for el in product.elements if not keep[el.id]),
        removed_edges=tuple(removed_edges),
        dangling=tuple(dangling),
        warnings=tuple(warnings),
    )
    return derived, report


def export_graph_text(product: ProductModel) -> str:
    """Plain-text graph description, one node/arrow statement per line, for
    quick visual inspection or feeding a diagram tool."""
    lines = []
    for el in product.elements:
        line = f"node {el.id} {el.kind} {json.dumps(el.label)}"
        if el.tag is not None:
            line += f" [{el.tag}]"
        lines.append(line)
    for edge in product.edges:
        line = f"arrow {edge.source} -> {edge.target}"
        if edge.label is not None:
            line += f" {json.dumps(edge.label)}"
        lines.append(line)
    return "\n".join(lines) + "\n"
