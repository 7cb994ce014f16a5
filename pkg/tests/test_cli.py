import csv
import json
import os

import pytest

from hexcontact.cli import main
from hexcontact.contact import read_jsonl, verify
from hexcontact.search import read_sweep_csv


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def strip_runtime(path):
    with open(path, newline="") as fh:
        return [row[:-1] for row in csv.reader(fh)]


class TestSweep:
    def test_small_hex_sweep_writes_everything(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        code, stdout, stderr = run(
            ["sweep", "--lattice", "hex", "--layers", "-1..1", "--n", "6",
             "--restarts", "2", "--out", out], capsys)
        assert code == 0
        assert "best" in stdout
        records = read_sweep_csv(os.path.join(out, "sweep_hex.csv"))
        assert [r.n for r in records] == [1, 2, 3, 4, 5, 6]
        assert records[1].best_contacts == 1
        configs = [f for f in os.listdir(out) if f.endswith(".jsonl")]
        assert len(configs) == 6
        assert os.path.exists(os.path.join(out, "delta_hex.csv"))

    def test_trivial_single_row(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        code, stdout, _ = run(["sweep", "--n", "1", "--layers", "0..1", "--out", out], capsys)
        assert code == 0
        records = read_sweep_csv(os.path.join(out, "sweep_hex.csv"))
        assert len(records) == 1 and records[0].best_contacts == 0

    def test_reruns_are_identical_modulo_runtime(self, tmp_path, capsys):
        args = ["sweep", "--layers", "-1..1", "--n", "8", "--restarts", "3", "--seed", "5"]
        a, b = str(tmp_path / "a"), str(tmp_path / "b")
        assert run(args + ["--out", a], capsys)[0] == 0
        assert run(args + ["--out", b], capsys)[0] == 0
        assert strip_runtime(os.path.join(a, "sweep_hex.csv")) == strip_runtime(
            os.path.join(b, "sweep_hex.csv"))
        for name in sorted(os.listdir(a)):
            if name.endswith(".jsonl") or name == "delta_hex.csv":
                with open(os.path.join(a, name)) as fa, open(os.path.join(b, name)) as fb:
                    assert fa.read() == fb.read()

    def test_outdir_from_environment(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("HEXCONTACT_OUTDIR", str(tmp_path / "envout"))
        code, *_ = run(["sweep", "--lattice", "oct", "--n", "2"], capsys)
        assert code == 0
        assert os.path.exists(tmp_path / "envout" / "sweep_oct.csv")

    def test_sweep_configs_verify_cleanly(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        run(["sweep", "--layers", "-1..1", "--n", "5", "--out", out], capsys)
        for name in os.listdir(out):
            if name.endswith(".jsonl"):
                cfg = read_jsonl(os.path.join(out, name))
                verify(cfg)


class TestExhaustive:
    def test_tetrahedron_value(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        code, stdout, _ = run(
            ["exhaustive", "--window", "-1..1,-1..1,-1..1", "--n", "4", "--out", out], capsys)
        assert code == 0
        assert "maximum contacts: 6" in stdout

    def test_pair_value(self, tmp_path, capsys):
        code, stdout, _ = run(
            ["exhaustive", "--window", "-1..1,-1..1,-1..1", "--n", "2",
             "--out", str(tmp_path)], capsys)
        assert code == 0
        assert "maximum contacts: 1" in stdout

    def test_whole_window_single_subset(self, tmp_path, capsys):
        code, stdout, _ = run(
            ["exhaustive", "--window", "-1..1,-1..1,-1..1", "--n", "27",
             "--out", str(tmp_path)], capsys)
        assert code == 0
        assert "maximum contacts: 90" in stdout

    def test_window_cap_refused(self, tmp_path, capsys):
        code, _, stderr = run(
            ["exhaustive", "--window", "-5..5,-5..5,-1..1", "--n", "4",
             "--out", str(tmp_path)], capsys)
        assert code == 2
        assert "cap" in stderr

    def test_subset_cap_needs_force(self, tmp_path, capsys):
        args = ["exhaustive", "--window", "-2..2,-2..2,0..1", "--n", "6",
                "--max-subsets", "1000", "--out", str(tmp_path)]
        code, _, stderr = run(args, capsys)
        assert code == 2
        assert "--force" in stderr

    def test_oct_window(self, tmp_path, capsys):
        code, stdout, _ = run(
            ["exhaustive", "--lattice", "oct", "--window", "-1..1,-1..1,-1..1",
             "--n", "4", "--out", str(tmp_path)], capsys)
        assert code == 0
        assert "maximum contacts: 6" in stdout


class TestVerifyCommand:
    def test_roundtrip_with_sweep_output(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        run(["sweep", "--layers", "-1..1", "--n", "6", "--out", out], capsys)
        path = next(os.path.join(out, f) for f in os.listdir(out) if f.startswith("c6_"))
        records = read_sweep_csv(os.path.join(out, "sweep_hex.csv"))
        code, stdout, _ = run(["verify", path], capsys)
        assert code == 0
        assert f"contacts:         {records[5].best_contacts}" in stdout

    def test_duplicate_ball_is_invariant_violation(self, tmp_path, capsys):
        path = str(tmp_path / "bad.jsonl")
        with open(path, "w") as fh:
            fh.write(json.dumps({"lattice": "oct", "n": 2, "provenance": ""}) + "\n")
            for idx in range(2):
                fh.write(json.dumps({"index": idx, "i": 0, "j": 0, "k": 0,
                                     "x": 0.0, "y": 0.0, "z": 0.0}) + "\n")
        code, _, stderr = run(["verify", path], capsys)
        assert code == 1
        assert "violation" in stderr

    def test_parse_error_exit_2(self, tmp_path, capsys):
        path = str(tmp_path / "garbage.jsonl")
        with open(path, "w") as fh:
            fh.write("not json at all\n")
        code, _, stderr = run(["verify", path], capsys)
        assert code == 2
        assert "line 1" in stderr

    def test_missing_file_exit_2(self, capsys):
        code, *_ = run(["verify", "/nonexistent/x.jsonl"], capsys)
        assert code == 2


class TestCompareCommand:
    @pytest.fixture()
    def two_sweeps(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        run(["sweep", "--layers", "-4..4", "--n", "15", "--restarts", "8", "--out", out], capsys)
        run(["sweep", "--lattice", "oct", "--n", "15", "--restarts", "8", "--out", out], capsys)
        return out

    def test_compare_writes_report(self, two_sweeps, capsys):
        out = two_sweeps
        code, stdout, _ = run(
            ["compare", os.path.join(out, "sweep_hex.csv"),
             os.path.join(out, "sweep_oct.csv"), "--out", out], capsys)
        assert code == 0
        assert "octahedral better at n" in stdout
        assert os.path.exists(os.path.join(out, "comparison.csv"))

    def test_compare_rejects_mismatched_ranges(self, tmp_path, capsys):
        a, b = str(tmp_path / "a"), str(tmp_path / "b")
        run(["sweep", "--layers", "0..1", "--n", "3", "--out", a], capsys)
        run(["sweep", "--lattice", "oct", "--n", "4", "--out", b], capsys)
        code, _, stderr = run(
            ["compare", os.path.join(a, "sweep_hex.csv"),
             os.path.join(b, "sweep_oct.csv"), "--out", a], capsys)
        assert code == 2
        assert "different n ranges" in stderr


class TestExportCommand:
    def test_csv_has_twelve_decimals(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        run(["sweep", "--layers", "0..1", "--n", "4", "--out", out], capsys)
        src = next(os.path.join(out, f) for f in os.listdir(out) if f.startswith("c4_"))
        dest = str(tmp_path / "balls.csv")
        code, *_ = run(["export", src, "--output", dest], capsys)
        assert code == 0
        with open(dest, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["index", "x", "y", "z"]
        assert len(rows) == 5
        assert all(len(cell.split(".")[1]) == 12 for cell in rows[1][1:])

    def test_jsonl_export_roundtrips_contact_count(self, tmp_path, capsys):
        out = str(tmp_path / "run")
        run(["sweep", "--layers", "0..1", "--n", "5", "--out", out], capsys)
        src = next(os.path.join(out, f) for f in os.listdir(out) if f.startswith("c5_"))
        dest = str(tmp_path / "again.jsonl")
        code, *_ = run(["export", src, "--format", "jsonl", "--output", dest], capsys)
        assert code == 0
        assert verify(read_jsonl(dest)).contacts == verify(read_jsonl(src)).contacts


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
