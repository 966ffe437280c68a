"""Product models: tags, parsing, writing, tracing, derivation."""

import pytest

from varkit import (
    Configuration,
    DanglingEdgeError,
    DuplicateElementIdError,
    MissingAttributeError,
    ProductEdge,
    ProductElement,
    ProductModel,
    UnknownElementError,
    UnresolvedTagError,
    derive_customized_product,
    export_graph_text,
    normalize_tag,
    parse_product_model,
    trace_report,
    write_product_model,
)

ACADEMIC_CONFIG = Configuration(
    area="Academic",
    selections=(("V1", ("V1.2",)), ("V3", ("V3.2",)), ("V4", ("V4.3",))),
)


class TestTags:
    def test_normalize_legacy_spelling(self):
        assert normalize_tag("V.4") == "V4"
        assert normalize_tag("V.4.2") == "V4.2"
        assert normalize_tag(" V.2 ") == "V2"

    def test_normalize_keeps_clean_tags(self):
        assert normalize_tag("V4") == "V4"
        assert normalize_tag("V4.2") == "V4.2"


class TestParseProduct:
    def test_fixture_structure(self, product):
        assert product.name == "Reserve Hall Activity"
        assert len(product.elements) == 8
        assert len(product.edges) == 8
        assert product.element("start").kind == "initial"
        assert product.element("charge-reservation").tag == "V2"
        assert product.element("send-notification").tag == "V4"
        assert product.element("confirm-reservation").tag is None

    def test_edge_fields(self, product):
        labelled = [e for e in product.edges if e.label]
        assert ("check-availability", "handle-conflict", "unavailable") in [
            (e.source, e.target, e.label) for e in labelled
        ]

    def test_duplicate_element_id(self):
        with pytest.raises(DuplicateElementIdError):
            parse_product_model(
                b'<product-model name="p">'
                b'<element id="a" kind="action" label="x"/>'
                b'<element id="a" kind="action" label="y"/>'
                b"</product-model>"
            )

    def test_dangling_edge(self):
        with pytest.raises(DanglingEdgeError):
            parse_product_model(
                b'<product-model name="p">'
                b'<element id="a" kind="action" label="x"/>'
                b'<edge from="a" to="ghost"/>'
                b"</product-model>"
            )

    def test_unknown_element(self):
        with pytest.raises(UnknownElementError):
            parse_product_model(b'<product-model name="p"><node id="a"/></product-model>')

    def test_missing_attribute(self):
        with pytest.raises(MissingAttributeError):
            parse_product_model(
                b'<product-model name="p"><element id="a" kind="action"/></product-model>'
            )


class TestWriteProduct:
    def test_round_trip(self, product):
        assert parse_product_model(write_product_model(product)) == product

    def test_fixture_tags_written_normalized(self, product, product_bytes):
        written = write_product_model(product)
        assert b'variant="V2"' in written
        assert b'variant="V.2"' not in written
        # source fixture deliberately uses the dotted legacy spelling
        assert b'variant="V.2"' in product_bytes


class TestTraceReport:
    def test_booking_traceability(self, model, product):
        report = trace_report(model, product)
        assert report.mapping == (
            ("V2", ("charge-reservation",)),
            ("V4", ("send-notification",)),
        )
        assert report.orphan_tags == ()
        assert report.unrealized_variants == ("V1", "V3", "V5")

    def test_orphan_tags_are_collected_once(self, model):
        product = ProductModel(
            name="p",
            elements=(
                ProductElement(id="a", kind="action", label="x", tag="V9"),
                ProductElement(id="b", kind="action", label="y", tag="V9"),
            ),
            edges=(),
        )
        report = trace_report(model, product)
        assert report.orphan_tags == ("V9",)
        assert report.mapping == ()


class TestDerivation:
    def test_excluded_variant_elements_removed(self, model, product):
        derived, report = derive_customized_product(product, ACADEMIC_CONFIG, model)
        assert report.removed_elements == ("charge-reservation",)
        kept = [el.id for el in derived.elements]
        assert "send-notification" in kept
        assert len(kept) == 7
        assert [(e.source, e.target) for e in report.dangling] == [
            ("confirm-reservation", "charge-reservation"),
            ("charge-reservation", "send-notification"),
        ]
        assert set(report.removed_edges) >= set(report.dangling)

    def test_edges_between_kept_elements_survive(self, model, product):
        derived, _ = derive_customized_product(product, ACADEMIC_CONFIG, model)
        pairs = [(e.source, e.target) for e in derived.edges]
        assert ("start", "specify-requirements") in pairs
        assert ("send-notification", "end") in pairs
        assert all(
            "charge-reservation" not in pair for pair in pairs
        )

    def test_value_level_tags(self, model):
        product = ProductModel(
            name="p",
            elements=(
                ProductElement(id="fax", kind="action", label="Fax it", tag="V4.1"),
                ProductElement(id="mail", kind="action", label="Mail it", tag="V4.3"),
            ),
            edges=(),
        )
        derived, report = derive_customized_product(product, ACADEMIC_CONFIG, model)
        assert [el.id for el in derived.elements] == ["mail"]
        assert report.removed_elements == ("fax",)

    def test_unresolved_tag_aborts(self, model):
        product = ProductModel(
            name="p",
            elements=(ProductElement(id="a", kind="action", label="x", tag="V9"),),
            edges=(),
        )
        with pytest.raises(UnresolvedTagError):
            derive_customized_product(product, ACADEMIC_CONFIG, model)

    def test_force_keeps_unresolved_and_warns(self, model):
        product = ProductModel(
            name="p",
            elements=(ProductElement(id="a", kind="action", label="x", tag="V9"),),
            edges=(),
        )
        derived, report = derive_customized_product(
            product, ACADEMIC_CONFIG, model, force=True
        )
        assert [el.id for el in derived.elements] == ["a"]
        assert [w.code for w in report.warnings] == ["UNRESOLVED_TAG"]

    def test_edge_between_two_removed_elements_is_not_dangling(self, model):
        product = ProductModel(
            name="p",
            elements=(
                ProductElement(id="a", kind="action", label="x", tag="V2"),
                ProductElement(id="b", kind="action", label="y", tag="V2.1"),
            ),
            edges=(ProductEdge(source="a", target="b"),),
        )
        derived, report = derive_customized_product(product, ACADEMIC_CONFIG, model)
        assert derived.elements == ()
        assert len(report.removed_edges) == 1
        assert report.dangling == ()


class TestGraphText:
    def test_layout(self, model, product):
        derived, _ = derive_customized_product(product, ACADEMIC_CONFIG, model)
        text = export_graph_text(derived)
        lines = text.splitlines()
        assert lines[0].startswith("node start initial")
        assert any(line.startswith("arrow start -> specify-requirements") for line in lines)
        assert not any("charge-reservation" in line for line in lines)
