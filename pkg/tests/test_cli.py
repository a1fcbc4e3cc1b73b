"""Command-line interface: commands, formats, exit codes, determinism."""

import json

import pytest

from smallcover.cli import main
from smallcover.instancefile import parse_instance


@pytest.fixture
def emit(tmp_path, capsys):
    def _emit(name):
        assert main(["catalog", "emit", name]) == 0
        text = capsys.readouterr().out
        path = tmp_path / f"{name}.json"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _emit


class TestCatalog:
    def test_list(self, capsys):
        assert main(["catalog", "list"]) == 0
        out = capsys.readouterr().out
        assert "rp3" in out and "bier9" in out

    def test_emit_unknown(self, capsys):
        assert main(["catalog", "emit", "nope"]) == 1


class TestAnalyze:
    def test_table_format(self, emit, capsys):
        path = emit("deltas0")
        assert main(["analyze", path]) == 0
        out = capsys.readouterr().out
        assert "not-simplex" in out
        assert "condition (1): false" in out
        assert "verdict: equivalent-false" in out

    def test_json_format_is_deterministic(self, emit, capsys):
        path = emit("rp3")
        assert main(["analyze", path, "--format", "json"]) == 0
        first = capsys.readouterr().out
        assert main(["analyze", path, "--format", "json"]) == 0
        second = capsys.readouterr().out
        assert first == second
        doc = json.loads(first)
        assert doc["conditions"] == {str(k): True for k in range(1, 8)}
        assert doc["betti"]["rational"] == [1, 0, 0, 1]
        assert doc["integral_cohomology"]["2"]["torsion"] == [2]

    def test_condition_subset(self, emit, capsys):
        path = emit("rp3")
        assert main(["analyze", path, "--format", "json", "--conditions", "1,7"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert sorted(doc["conditions"]) == ["1", "7"]

    def test_missing_file(self, capsys):
        assert main(["analyze", "/nonexistent.json"]) == 1

    def test_lambda_free_document_rejected(self, emit, capsys):
        path = emit("rp2_6v")
        assert main(["analyze", path]) == 1

    def test_bad_condition_list(self, emit):
        path = emit("rp3")
        assert main(["analyze", path, "--conditions", "9"]) == 1

    def test_rank_dimension_mismatch_is_input_error(self, tmp_path):
        doc = {
            "name": "bad-rank",
            "n": 3,
            "vertices": [1, 2, 3],
            "facets": [[1, 2], [1, 3], [2, 3]],
            "lambda": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["analyze", str(path)]) == 1


class TestTable1:
    def test_passes(self, capsys):
        assert main(["table1"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out
        assert "1  10  40  81 101  81  40  10   1" in out


class TestFuzz:
    def test_deterministic_summary(self, capsys):
        assert main(["fuzz", "--complex", "gon6", "--samples", "8", "--seed", "5"]) == 0
        first = capsys.readouterr().out
        assert main(["fuzz", "--complex", "gon6", "--samples", "8", "--seed", "5"]) == 0
        assert capsys.readouterr().out == first
        assert "8/8 agreements" in first

    def test_unknown_complex(self, capsys):
        assert main(["fuzz", "--complex", "nope", "--samples", "1", "--seed", "0"]) == 1


class TestShelling:
    def test_search(self, emit, capsys):
        path = emit("cross3")
        assert main(["shelling", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["found"] is True
        assert len(doc["order"]) == 8
        assert doc["restriction"][0] == []

    def test_verify_good_order(self, emit, tmp_path, capsys):
        path = emit("rp2")
        order = tmp_path / "order.json"
        order.write_text(json.dumps([[1, 2], [1, 3], [2, 3]]), encoding="utf-8")
        assert main(["shelling", path, "--order", str(order)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["restriction"] == [[], [3], [2, 3]]

    def test_verify_bad_order_exit_two(self, emit, tmp_path, capsys):
        path = emit("cross3")
        order = tmp_path / "order.json"
        facets = json.loads(open(path).read())["facets"]
        bad = [facets[0], [4, 5, 6]] + [
            f for f in facets if f not in (facets[0], [4, 5, 6])
        ]
        order.write_text(json.dumps(bad), encoding="utf-8")
        assert main(["shelling", path, "--order", str(order)]) == 2

    def test_not_found_reports_false(self, tmp_path, capsys):
        doc = {
            "name": "two-triangles",
            "n": 3,
            "vertices": [1, 2, 3, 4, 5, 6],
            "facets": [[1, 2, 3], [4, 5, 6]],
            "lambda": None,
        }
        path = tmp_path / "x.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["shelling", str(path)]) == 0
        assert json.loads(capsys.readouterr().out) == {"found": False}


class TestBier:
    def test_emits_valid_instance(self, tmp_path, capsys):
        doc = {
            "name": "circle",
            "n": 2,
            "vertices": [1, 2, 3],
            "facets": [[1, 2], [1, 3], [2, 3]],
            "lambda": None,
        }
        path = tmp_path / "circle.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["bier", str(path)]) == 0
        text = capsys.readouterr().out
        K, chi = parse_instance(text)
        assert K.dim == 1
        assert chi is not None

    def test_full_simplex_rejected(self, tmp_path, capsys):
        doc = {
            "name": "full",
            "n": 2,
            "vertices": [1, 2],
            "facets": [[1, 2]],
            "lambda": None,
        }
        path = tmp_path / "full.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["bier", str(path)]) == 1
