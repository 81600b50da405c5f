import json
import logging

import pytest

import cli
import config


@pytest.fixture(autouse=True)
def restore_globals(monkeypatch):
    """main() reconfigures logging and writes overrides onto config."""
    for name in ("ENUMERATION_BUDGET", "ISO_SEARCH_BUDGET", "DEFAULT_SEED"):
        monkeypatch.setattr(config, name, getattr(config, name))
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


class TestCharmat:
    def test_json(self, capsys, code_file):
        code, out = run(capsys, "charmat", code_file("selfdual_bcjr_b"))
        assert code == cli.EXIT_OK
        data = json.loads(out)
        assert data["spans"] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]
        assert data["X"] == [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]]
        assert data["tie_break"] == "lex"
        assert all(data["clauses"].values())

    def test_text(self, capsys, code_file):
        code, out = run(capsys, "charmat", code_file("selfdual_bcjr_b"), "--format", "text")
        assert code == cli.EXIT_OK
        assert out.splitlines()[0].endswith("(0,3]")

    def test_missing_support(self, capsys, code_file):
        path = code_file({"p": 2, "n": 3, "generators": "100;010"})
        code, _ = run(capsys, "charmat", path)
        assert code == cli.EXIT_SUPPORT

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        code, _ = run(capsys, "charmat", str(path))
        assert code == cli.EXIT_PARSE

    def test_field_override(self, capsys, code_file):
        code, _ = run(capsys, "charmat", code_file("selfdual_bcjr_b"), "--p", "4")
        assert code == cli.EXIT_PARSE

    def test_output_file(self, capsys, code_file, tmp_path):
        target = tmp_path / "pair.json"
        code, out = run(capsys, "charmat", code_file("selfdual_bcjr_b"), "-o", str(target))
        assert code == cli.EXIT_OK
        assert out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["spans"][0] == "(0,3]"


class TestUsage:
    def test_missing_input(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["charmat"])
        assert info.value.code == cli.EXIT_PARSE

    def test_unknown_kind(self, code_file):
        with pytest.raises(SystemExit) as info:
            cli.main(["trellis", code_file("selfdual_bcjr_b"), "--kind", "minimal"])
        assert info.value.code == cli.EXIT_PARSE

    def test_budget_override(self, capsys, code_file):
        code, _ = run(capsys, "charmat", code_file("selfdual_bcjr_b"), "--enum-budget", "123", "--seed", "9")
        assert code == cli.EXIT_OK
        assert config.ENUMERATION_BUDGET == 123
        assert config.DEFAULT_SEED == 9


class TestTrellis:
    def test_bcjr_from_printed_rows(self, capsys, code_file):
        code, out = run(capsys, "trellis", code_file("selfdual_bcjr_b"))
        assert code == cli.EXIT_OK
        data = json.loads(out)
        assert data["kind"] == "bcjr"
        assert data["properties"]["scp"] == [2, 2, 2, 2]
        assert data["D"] == [[1, 0], [1, 1], [0, 0], [0, 0]]
        assert len(data["trellis"]["sections"]) == 4

    def test_kv_selection(self, capsys, code_file):
        code, out = run(capsys, "trellis", code_file("selfdual_bcjr_b"), "--kind", "kv", "--selection", "0,1")
        assert code == cli.EXIT_OK
        assert json.loads(out)["kv"] is True

    def test_kv_needs_selection(self, capsys, code_file):
        code, _ = run(capsys, "trellis", code_file("selfdual_bcjr_b"), "--kind", "kv")
        assert code == cli.EXIT_PARSE

    def test_product_text(self, capsys, code_file):
        code, out = run(capsys, "trellis", code_file("localdual_product"), "--kind", "product", "--format", "text")
        assert code == cli.EXIT_OK
        assert "SCP: (0,1,2)" in out
        assert "biproper: no" in out

    def test_not_orthogonal(self, capsys, code_file):
        path = code_file({
            "p": 2, "n": 4,
            "generators": "1001;0110",
            "parity_checks": "1000;0100",
            "spans": ["(3,0]", "(2,1]"],
        })
        code, _ = run(capsys, "trellis", path)
        assert code == cli.EXIT_FAILED


class TestDual:
    def test_both_methods(self, capsys, code_file):
        code, out = run(capsys, "dual", code_file("selfdual_bcjr_b"))
        assert code == cli.EXIT_OK
        data = json.loads(out)
        assert {"primal", "local_dual", "bcjr_dual", "comparison"} <= set(data)
        assert data["comparison"]["subtrellis"]["holds"]

    def test_trellis_file_local_only(self, capsys, code_file, tmp_path):
        _, out = run(capsys, "trellis", code_file("selfdual_bcjr_b"))
        trellis_path = tmp_path / "trellis.json"
        trellis_path.write_text(json.dumps(json.loads(out)["trellis"]), encoding="utf-8")

        code, out = run(capsys, "dual", str(trellis_path), "--method", "local")
        assert code == cli.EXIT_OK
        assert "local_dual" in json.loads(out)

        code, _ = run(capsys, "dual", str(trellis_path), "--method", "bcjr")
        assert code == cli.EXIT_PARSE

    def test_transpose_pairing(self, capsys, code_file):
        code, out = run(capsys, "dual", code_file("selfdual_bcjr_b"), "--method", "local", "--pairing", "transpose")
        assert code == cli.EXIT_OK
        assert "bcjr_dual" not in json.loads(out)


class TestExport:
    def test_dot(self, capsys, code_file):
        code, out = run(capsys, "export", code_file("selfdual_bcjr_b"))
        assert code == cli.EXIT_OK
        assert out.startswith("digraph trellis {")
        assert out.rstrip().endswith("}")

    def test_dot_format_flag(self, capsys, code_file):
        code, out = run(capsys, "trellis", code_file("selfdual_bcjr_b"), "--format", "dot")
        assert code == cli.EXIT_OK
        assert out.startswith("digraph trellis {")

    def test_dot_without_trellis(self, capsys, code_file):
        code, _ = run(capsys, "charmat", code_file("selfdual_bcjr_b"), "--format", "dot")
        assert code == cli.EXIT_FAILED


class TestKvDual:
    def test_emit_y(self, capsys, code_file):
        code, out = run(capsys, "kv-dual", code_file("selfdual_bcjr_b"))
        assert code == cli.EXIT_OK
        data = json.loads(out)
        assert data["spans"] == ["(0,3]", "(1,2]", "(2,1]", "(3,0]"]
        assert "input_order_pair" in data

    def test_emit_trellises(self, capsys, code_file):
        code, out = run(capsys, "kv-dual", code_file("selfdual_bcjr_b"), "--emit", "trellises")
        assert code == cli.EXIT_OK
        data = json.loads(out)
        assert data["passed"]
        assert [entry["K"] for entry in data["selections"]] == [[0, 1], [0, 2], [1, 3], [2, 3]]

    def test_emit_report(self, capsys, code_file):
        code, out = run(capsys, "kv-dual", code_file("selfdual_bcjr_b"), "--emit", "report", "--format", "text")
        assert code == cli.EXIT_OK
        assert "Verdict: PASS" in out


class TestVerify:
    def test_worked_examples_suite(self, capsys):
        code, out = run(capsys, "verify", "--fixtures", "selfdual_bcjr_b", "repetition_3")
        assert code == cli.EXIT_OK
        assert json.loads(out)["passed"]

    def test_kv_conjecture(self, capsys, code_file, tmp_path):
        code, out = run(capsys, "verify", code_file("selfdual_bcjr_b"), "--suite", "kv-conjecture",
                        "--report-dir", str(tmp_path / "reports"))
        assert code == cli.EXIT_OK
        data = json.loads(out)
        assert data["verdict"]["passed"]
        assert set(data["reports"]) == {"text", "json"}

    def test_kv_conjecture_needs_code(self, capsys):
        code, _ = run(capsys, "verify", "--suite", "kv-conjecture")
        assert code == cli.EXIT_PARSE

    def test_kv_conjecture_missing_support(self, capsys, code_file):
        path = code_file({"p": 2, "n": 3, "generators": "100;010"})
        code, _ = run(capsys, "verify", path, "--suite", "kv-conjecture")
        assert code == cli.EXIT_SUPPORT

    def test_properties(self, capsys):
        code, out = run(capsys, "verify", "--suite", "properties", "--count", "1", "--max-length", "4",
                        "--seed", "5", "--format", "text")
        assert code == cli.EXIT_OK
        assert "Passed: " in out
