from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest

from splitauth.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(argv, capsys, monkeypatch=None, stdin=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


@pytest.fixture()
def table2_files(tmp_path, capsys):
    """family -> design -> code JSON files for the 17-point reference."""
    fam = tmp_path / "family.json"
    design = tmp_path / "design.json"
    code = tmp_path / "code.json"
    assert main(["gen-family", "2", "2", "-o", str(fam)]) == 0
    assert main(["develop", str(fam), "-o", str(design)]) == 0
    assert main(["to-code", str(design), "-o", str(code)]) == 0
    capsys.readouterr()
    return fam, design, code


@pytest.fixture()
def table1_code_file(tmp_path, capsys):
    fam = tmp_path / "family1.json"
    code = tmp_path / "code1.json"
    assert main(["gen-family", "2", "1", "-o", str(fam)]) == 0
    assert main(["to-code", str(fam), "-o", str(code)]) == 0
    capsys.readouterr()
    return code


class TestGenFamily:
    def test_reference_family(self, capsys):
        rc, out, _ = run_cli(["gen-family", "2", "1"], capsys)
        assert rc == 0
        assert json.loads(out) == {
            "v": 9,
            "u": 2,
            "c": 2,
            "base_blocks": [[[1, 2], [3, 5]]],
        }

    def test_two_base_blocks(self, capsys):
        rc, out, _ = run_cli(["gen-family", "2", "2"], capsys)
        assert rc == 0
        obj = json.loads(out)
        assert obj["v"] == 17
        assert obj["base_blocks"] == [[[1, 2], [3, 5]], [[1, 2], [11, 13]]]

    def test_smallest_family(self, capsys):
        rc, out, _ = run_cli(["gen-family", "1", "1"], capsys)
        assert rc == 0
        obj = json.loads(out)
        assert obj["v"] == 3
        assert obj["base_blocks"] == [[[1], [2]]]

    def test_rejects_nonpositive(self, capsys):
        rc, out, err = run_cli(["gen-family", "0", "1"], capsys)
        assert rc == 2
        assert out == ""
        assert err.startswith("error:")

    def test_writes_file(self, tmp_path, capsys):
        target = tmp_path / "family.json"
        rc, out, _ = run_cli(["gen-family", "2", "1", "-o", str(target)], capsys)
        assert rc == 0
        assert out == ""
        assert json.loads(target.read_text())["v"] == 9


class TestDevelop:
    def test_reference_design(self, tmp_path, capsys):
        fam = tmp_path / "family.json"
        main(["gen-family", "2", "1", "-o", str(fam)])
        capsys.readouterr()
        rc, out, err = run_cli(["develop", str(fam)], capsys)
        assert rc == 0
        obj = json.loads(out)
        assert obj["v"] == 9
        assert obj["t"] == 2
        assert len(obj["blocks"]) == 9
        assert obj["blocks"][0] == [[1, 2], [3, 5]]
        assert obj["blocks"][8] == [[9, 1], [2, 4]]
        assert obj["orbit_lengths"] == [9]
        assert "orbit of base block 1: length 9 (full)" in err

    def test_two_orbits(self, tmp_path, capsys):
        fam = tmp_path / "family.json"
        main(["gen-family", "2", "2", "-o", str(fam)])
        capsys.readouterr()
        rc, out, err = run_cli(["develop", str(fam)], capsys)
        assert rc == 0
        obj = json.loads(out)
        assert len(obj["blocks"]) == 34
        assert obj["orbit_lengths"] == [17, 17]
        assert "orbit of base block 2: length 17 (full)" in err

    def test_reads_stdin(self, capsys, monkeypatch):
        _, family_json, _ = run_cli(["gen-family", "2", "1"], capsys)
        rc, out, _ = run_cli(
            ["develop", "-"], capsys, monkeypatch, stdin=family_json
        )
        assert rc == 0
        assert len(json.loads(out)["blocks"]) == 9

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        rc, _, err = run_cli(["develop", str(bad)], capsys)
        assert rc == 2
        assert "invalid JSON" in err

    def test_bad_family_shape(self, tmp_path, capsys):
        bad = tmp_path / "family.json"
        bad.write_text(
            json.dumps({"v": 9, "u": 2, "c": 2, "base_blocks": [[[1, 2], [2, 5]]]})
        )
        rc, _, err = run_cli(["develop", str(bad)], capsys)
        assert rc == 2
        assert "repeated" in err

    def test_missing_field(self, tmp_path, capsys):
        bad = tmp_path / "family.json"
        bad.write_text(json.dumps({"v": 9, "u": 2, "base_blocks": []}))
        rc, _, err = run_cli(["develop", str(bad)], capsys)
        assert rc == 2
        assert "'c'" in err

    def test_missing_file(self, capsys):
        rc, _, err = run_cli(["develop", "/nonexistent/family.json"], capsys)
        assert rc == 2
        assert "cannot read" in err


class TestVerifyCommand:
    def test_pipeline_pass(self, table2_files, capsys):
        _, design, _ = table2_files
        rc, out, _ = run_cli(["verify", str(design)], capsys)
        assert rc == 0
        assert out == "2-(17,34,4=2×2,1), λ=1\n"

    def test_verify_family_directly(self, table2_files, capsys):
        fam, _, _ = table2_files
        rc, out, _ = run_cli(["verify", str(fam)], capsys)
        assert rc == 0
        assert out == "2-(17,34,4=2×2,1), λ=1\n"

    def test_strength_flag(self, table2_files, capsys):
        _, design, _ = table2_files
        rc, out, _ = run_cli(["verify", str(design), "-t", "1"], capsys)
        assert rc == 0
        assert out == "1-(17,34,4=2×2,8), λ=8\n"

    def test_declared_strength_used(self, tmp_path, capsys):
        # build the design file via the pipeline, then lower its declared t
        fam = tmp_path / "family.json"
        main(["gen-family", "2", "1", "-o", str(fam)])
        capsys.readouterr()
        _, out, _ = run_cli(["develop", str(fam)], capsys)
        design = json.loads(out)
        design["t"] = 1
        target = tmp_path / "design.json"
        target.write_text(json.dumps(design))
        rc, out, _ = run_cli(["verify", str(target)], capsys)
        assert rc == 0
        assert out == "1-(9,9,4=2×2,4), λ=4\n"

    def test_broken_design_fails(self, table2_files, tmp_path, capsys):
        _, design, _ = table2_files
        obj = json.loads(design.read_text())
        obj["blocks"][4] = [[5, 6], [7, 8]]
        target = tmp_path / "broken.json"
        target.write_text(json.dumps(obj))
        rc, out, _ = run_cli(["verify", str(target)], capsys)
        assert rc == 1
        assert out.startswith("defect: ")
        assert "is covered" in out
        assert out.rstrip("\n").endswith("FAIL")

    def test_strength_above_parts(self, table2_files, capsys):
        _, design, _ = table2_files
        rc, _, err = run_cli(["verify", str(design), "-t", "3"], capsys)
        assert rc == 2
        assert "exceeds" in err


class TestToCode:
    def test_reference_code(self, table2_files):
        _, _, code = table2_files
        obj = json.loads(code.read_text())
        assert obj["u"] == 2
        assert obj["v"] == 17
        assert len(obj["rules"]) == 34
        assert obj["rules"][0] == [[1, 2], [3, 5]]
        assert obj["rules"][33] == [[17, 1], [10, 12]]
        assert obj["key_dist"] == ["1/34"] * 34
        assert obj["source_dist"] == ["1/2", "1/2"]
        assert "split_dist" not in obj

    def test_family_input(self, capsys, monkeypatch):
        _, family_json, _ = run_cli(["gen-family", "1", "1"], capsys)
        rc, out, _ = run_cli(
            ["to-code", "-"], capsys, monkeypatch, stdin=family_json
        )
        assert rc == 0
        obj = json.loads(out)
        assert obj["v"] == 3
        assert obj["rules"] == [[[1], [2]], [[2], [3]], [[3], [1]]]

    def test_rejects_non_design(self, tmp_path, capsys):
        blocks = [[[1, 2], [3, 5]], [[4, 5], [6, 8]]]
        target = tmp_path / "design.json"
        target.write_text(json.dumps({"v": 9, "blocks": blocks}))
        rc, out, _ = run_cli(["to-code", str(target)], capsys)
        assert rc == 1
        assert "does not verify" in out
        assert out.rstrip("\n").endswith("FAIL")


class TestAnalyzeCommand:
    def test_reference_report(self, table2_files, capsys):
        _, _, code = table2_files
        rc, out, _ = run_cli(["analyze", str(code)], capsys)
        assert rc == 0
        assert out == (
            "rules form a splitting design: 2-(17,34,4=2×2,1), λ=1\n"
            "P_d0 = 4/17 (floor 4/17, met exactly)\n"
            "P_d1 = 1/8 (floor 1/8, met exactly)\n"
            "one-fold secure against spoofing\n"
            "encoding rules: 34, minimum possible: 34, optimal\n"
            "perfect secrecy\n"
            "PASS\n"
        )

    def test_table1_report(self, table1_code_file, capsys):
        rc, out, _ = run_cli(["analyze", str(table1_code_file)], capsys)
        assert rc == 0
        assert "rules form a splitting design: 2-(9,9,4=2×2,1), λ=1" in out
        assert "P_d0 = 4/9 (floor 4/9, met exactly)" in out
        assert "P_d1 = 1/4 (floor 1/4, met exactly)" in out
        assert out.endswith("PASS\n")

    def test_mutated_code_fails_uniformity(
        self, table1_code_file, tmp_path, capsys
    ):
        obj = json.loads(table1_code_file.read_text())
        obj["rules"][0] = [[1, 2], [3, 6]]
        target = tmp_path / "mutated.json"
        target.write_text(json.dumps(obj))
        rc, out, _ = run_cli(["analyze", str(target)], capsys)
        assert rc == 1
        assert "λ-uniformity: FAIL" in out
        assert out.endswith("FAIL\n")

    def test_structural_defect_named(self, table1_code_file, tmp_path, capsys):
        obj = json.loads(table1_code_file.read_text())
        obj["rules"][0] = [[1, 2], [2, 5]]
        target = tmp_path / "overlap.json"
        target.write_text(json.dumps(obj))
        rc, out, _ = run_cli(["analyze", str(target)], capsys)
        assert rc == 1
        assert "structure: FAIL (rule 1 repeats message 2)" in out
        assert out.endswith("FAIL\n")

    def test_orders_zero_wants_tighter_structure(
        self, table1_code_file, capsys
    ):
        rc, out, _ = run_cli(
            ["analyze", str(table1_code_file), "--orders", "0"], capsys
        )
        assert rc == 1
        assert "λ-uniformity: FAIL (index λ=4, need 1)" in out
        assert "zero-fold secure against spoofing" in out
        assert "encoding rules: 9, minimum possible: 9/4, NOT optimal" in out

    def test_orders_out_of_range(self, table1_code_file, capsys):
        rc, _, err = run_cli(
            ["analyze", str(table1_code_file), "--orders", "2"], capsys
        )
        assert rc == 2
        assert "out of range" in err

    def test_float_weights_rejected(self, table1_code_file, tmp_path, capsys):
        obj = json.loads(table1_code_file.read_text())
        obj["key_dist"] = [1 / 9] * 9
        target = tmp_path / "floats.json"
        target.write_text(json.dumps(obj))
        rc, _, err = run_cli(["analyze", str(target)], capsys)
        assert rc == 2
        assert "not exact" in err

    def test_bad_distribution_sum(self, table1_code_file, tmp_path, capsys):
        obj = json.loads(table1_code_file.read_text())
        obj["key_dist"] = ["1/9"] * 8 + ["2/9"]
        target = tmp_path / "sums.json"
        target.write_text(json.dumps(obj))
        rc, _, err = run_cli(["analyze", str(target)], capsys)
        assert rc == 2
        assert "sums to" in err


class TestExportCommand:
    def test_csv(self, table1_code_file, capsys):
        rc, out, _ = run_cli(["export", str(table1_code_file)], capsys)
        assert rc == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["rule", "s1", "s2"]
        assert rows[1] == ["e1", "{1,2}", "{3,5}"]
        assert rows[9] == ["e9", "{9,1}", "{2,4}"]
        assert len(rows) == 10

    def test_markdown(self, table1_code_file, capsys):
        rc, out, _ = run_cli(
            ["export", str(table1_code_file), "-f", "markdown"], capsys
        )
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "| rule | s₁ | s₂ |"
        assert lines[1] == "| --- | --- | --- |"
        assert lines[2] == "| e₁ | {1,2} | {3,5} |"
        assert len(lines) == 11

    def test_json_round_trip(self, table1_code_file, capsys):
        rc, out, _ = run_cli(
            ["export", str(table1_code_file), "-f", "json"], capsys
        )
        assert rc == 0
        assert json.loads(out) == json.loads(table1_code_file.read_text())

    def test_split_dist_round_trip(self, table1_code_file, tmp_path, capsys):
        obj = json.loads(table1_code_file.read_text())
        skewed = [["1/2", "1/2"], ["1/2", "1/2"]]
        obj["split_dist"] = [skewed] * 8 + [[["1/4", "3/4"], ["1/2", "1/2"]]]
        target = tmp_path / "weighted.json"
        target.write_text(json.dumps(obj))
        rc, out, _ = run_cli(["export", str(target), "-f", "json"], capsys)
        assert rc == 0
        assert json.loads(out)["split_dist"] == obj["split_dist"]


class TestDemoCommand:
    def test_table1_matches_golden(self, capsys):
        rc, out, _ = run_cli(["demo", "table1"], capsys)
        assert rc == 0
        matrix, _, report = out.partition("\n\n")
        assert matrix + "\n" == (GOLDEN / "table1.txt").read_text()
        assert "P_d0 = 4/9 (floor 4/9, met exactly)" in report
        assert "one-fold secure against spoofing" in report
        assert "encoding rules: 9, minimum possible: 9, optimal" in report
        assert "perfect secrecy" in report
        assert report.endswith("PASS\n")

    def test_table2_matches_golden(self, capsys):
        rc, out, _ = run_cli(["demo", "table2"], capsys)
        assert rc == 0
        matrix, _, report = out.partition("\n\n")
        assert matrix + "\n" == (GOLDEN / "table2.txt").read_text()
        assert "P_d0 = 4/17 (floor 4/17, met exactly)" in report
        assert "P_d1 = 1/8 (floor 1/8, met exactly)" in report
        assert "encoding rules: 34, minimum possible: 34, optimal" in report
        assert report.endswith("PASS\n")
