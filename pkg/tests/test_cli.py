"""Command-line behaviour: exit codes, output shapes, file round-trips."""

import io
import json

import pytest

from varkit import parse_model, parse_product_model
from varkit.cli import main
from varkit.data import ACADEMIC_ANSWERS, PRINTED_PAPER_ANSWERS, VARIANT_MODEL, load

from support import MUTATIONS, booking_model


@pytest.fixture()
def model_path(tmp_path):
    path = tmp_path / "family.vml.xml"
    path.write_bytes(load(VARIANT_MODEL))
    return str(path)


@pytest.fixture()
def product_path(tmp_path):
    from varkit.data import ACTIVITY_PRODUCT

    path = tmp_path / "activity.product.xml"
    path.write_bytes(load(ACTIVITY_PRODUCT))
    return str(path)


@pytest.fixture()
def answers_path(tmp_path):
    path = tmp_path / "complete.answers.json"
    path.write_bytes(load(ACADEMIC_ANSWERS))
    return str(path)


@pytest.fixture()
def partial_answers_path(tmp_path):
    path = tmp_path / "partial.answers.json"
    path.write_bytes(load(PRINTED_PAPER_ANSWERS))
    return str(path)


class TestValidate:
    def test_clean_model(self, model_path, capsys):
        assert main(["validate", model_path]) == 0
        assert "0 errors, 0 warnings" in capsys.readouterr().out

    def test_broken_model(self, tmp_path, capsys):
        from varkit import write_model

        mutated = MUTATIONS["DANGLING_REF"](booking_model())
        path = tmp_path / "broken.vml.xml"
        path.write_bytes(write_model(mutated))
        assert main(["validate", str(path)]) == 1
        out = capsys.readouterr().out
        assert "DANGLING_REF" in out
        assert "1 errors, 0 warnings" in out

    def test_unparseable_model(self, tmp_path, capsys):
        path = tmp_path / "junk.xml"
        path.write_text("<broken")
        assert main(["validate", str(path)]) == 1
        assert "PARSE_ERROR" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "nope.xml")]) == 2
        assert "error" in capsys.readouterr().err


class TestRenderAndTable:
    def test_render(self, model_path, capsys):
        assert main(["render", model_path]) == 0
        out = capsys.readouterr().out
        assert out.startswith(
            "Variant | Values of variant | Relations | Applicable Area | Dependency"
        )
        assert len(out.splitlines()) == 6

    def test_table_scoped(self, model_path, capsys):
        assert main(["table", model_path, "--area", "Academic"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4
        assert lines[0] == "Variant | Guard | Question | Values | Trace"

    def test_table_unknown_area(self, model_path, capsys):
        assert main(["table", model_path, "--area", "Commercial"]) == 1
        assert "UNKNOWN_AREA" in capsys.readouterr().err


class TestPrune:
    def test_prune_to_file(self, model_path, tmp_path, capsys):
        out_path = tmp_path / "academic.vml.xml"
        assert main(["prune", model_path, "--area", "Academic", "-o", str(out_path)]) == 0
        pruned = parse_model(out_path.read_bytes())
        assert [v.id for v in pruned.variants] == ["V1", "V3", "V4"]

    def test_prune_to_stdout(self, model_path, capsys):
        assert main(["prune", model_path, "--area", "Non Academic"]) == 0


class TestConfigure:
    def test_batch_complete(self, model_path, answers_path, capsys):
        assert main(["configure", model_path, "--answers", answers_path]) == 0
        out = capsys.readouterr().out
        assert "Configuration for area 'Academic':" in out
        assert "  V1 = V1.2" in out
        assert "  V4 = V4.3" in out

    def test_batch_partial_writes_narrowed_model(
        self, model_path, partial_answers_path, tmp_path, capsys
    ):
        out_path = tmp_path / "narrowed.vml.xml"
        code = main(
            ["configure", model_path, "--answers", partial_answers_path, "-o", str(out_path)]
        )
        assert code == 0
        assert "INCOMPLETE: undecided V1, V3" in capsys.readouterr().out
        narrowed = parse_model(out_path.read_bytes())
        v4 = narrowed.variant("V4")
        assert [vv.id for vv in v4.values] == ["V4.3"]
        assert v4.relation.value == "none"
        assert len(narrowed.variant("V1").values) == 2

    def test_area_mismatch(self, model_path, answers_path, capsys):
        code = main(
            ["configure", model_path, "--answers", answers_path, "--area", "Non Academic"]
        )
        assert code == 2

    def test_conflicting_answers(self, model_path, tmp_path, capsys):
        doc = {
            "area": "Academic",
            "answers": [
                {"variant": "V1", "values": ["V1.1"]},
                {"variant": "V3", "values": ["V3.1"]},
            ],
            "exclusions": [],
        }
        path = tmp_path / "clash.answers.json"
        path.write_text(json.dumps(doc))
        assert main(["configure", model_path, "--answers", str(path)]) == 1
        out = capsys.readouterr().out
        assert "conflict [V1.2]" in out

    def test_interactive_needs_area(self, model_path, capsys):
        assert main(["configure", model_path, "--interactive"]) == 2

    def test_interactive_walk(self, model_path, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("V1.2\nV3.2\nV4.3\n"))
        code = main(["configure", model_path, "--interactive", "--area", "Academic"])
        assert code == 0
        out = capsys.readouterr().out
        assert "What is the reservation mode?" in out
        assert "Configuration for area 'Academic':" in out
        assert "  V3 = V3.2" in out

    def test_interactive_conflict_reprompts(self, model_path, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("V1.1\nV1.2\nV3.2\nV4.3\nV1.1\n"))
        # second token for V1 arrives after the first is taken, so the walk
        # continues from V3; trailing junk is never read
        code = main(["configure", model_path, "--interactive", "--area", "Academic"])
        assert code == 0
        out = capsys.readouterr().out
        assert "Configuration for area 'Academic':" in out

    def test_interactive_eof_prints_partial(self, model_path, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(""))
        code = main(["configure", model_path, "--interactive", "--area", "Academic"])
        assert code == 0
        assert "INCOMPLETE" in capsys.readouterr().out


class TestDerive:
    def test_end_to_end(self, model_path, answers_path, product_path, tmp_path, capsys):
        out_path = tmp_path / "derived.product.xml"
        code = main(
            [
                "derive",
                model_path,
                "--answers",
                answers_path,
                "--product",
                product_path,
                "-o",
                str(out_path),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "kept 7 elements, removed 1" in out
        assert "removed: charge-reservation" in out
        assert "dangling: confirm-reservation -> charge-reservation" in out
        derived = parse_product_model(out_path.read_bytes())
        assert derived.element("charge-reservation") is None
        assert derived.element("send-notification").tag == "V4"
        assert len(derived.edges) == 6

    def test_incomplete_answers(self, model_path, partial_answers_path, product_path, tmp_path, capsys):
        out_path = tmp_path / "derived.product.xml"
        code = main(
            [
                "derive",
                model_path,
                "--answers",
                str(partial_answers_path),
                "--product",
                product_path,
                "-o",
                str(out_path),
            ]
        )
        assert code == 1
        assert "INCOMPLETE" in capsys.readouterr().out
        assert not out_path.exists()


class TestEnumerate:
    def test_count_only(self, model_path, capsys):
        assert main(["enumerate", model_path, "--area", "Academic", "--count-only"]) == 0
        assert capsys.readouterr().out.strip() == "48"

    def test_listing(self, model_path, capsys):
        assert main(["enumerate", model_path, "--area", "Academic"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 49
        assert lines[-1] == "48 configurations"
        assert "(none)" in lines[:-1]
        assert any(line == "V1=V1.2 V3=V3.1,V3.2 V4=V4.1,V4.2,V4.3" for line in lines)
