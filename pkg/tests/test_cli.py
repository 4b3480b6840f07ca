import json

import jsonschema
import pytest

from gelfond.cli import run

try:
    from importlib.resources import files
    SCHEMA_DIR = files("gelfond") / "schema_files"
except Exception:  # pragma: no cover
    SCHEMA_DIR = None


def _schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / f"{name}.json").read_text())


def _run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out.strip()
    rows = [json.loads(line) for line in out.splitlines() if line]
    return code, rows


class TestSum:
    def test_unit_sum_json(self, capsys):
        code, rows = _run_json(capsys, [
            "sum", "--weight", "unit", "--x", "2^10", "--alpha", "1/2",
            "--P", "const:1"])
        assert code == 0
        assert len(rows) == 1
        jsonschema.validate(rows[0], _schema("sum"))
        assert rows[0]["term_count"] == 1024

    def test_weight_aliases(self, capsys):
        code_mu, rows_mu = _run_json(capsys, [
            "sum", "--weight", "mu", "--x", "2000", "--P", "const:1"])
        code_m, rows_m = _run_json(capsys, [
            "sum", "--weight", "moebius", "--x", "2000", "--P", "const:1"])
        assert code_mu == code_m == 0
        assert rows_mu == rows_m

    def test_rerun_byte_identical(self, capsys):
        argv = ["sum", "--weight", "unit", "--x", "3000", "--P", "log:2/3"]
        assert run(argv) == 0
        first = capsys.readouterr().out
        assert run(argv) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_validation_exit_code(self, capsys):
        code = run(["sum", "--weight", "unit", "--x", "100",
                    "--alpha", "0.3", "--P", "const:1",
                    "--accumulation", "bucketed"])
        assert code == 2

    def test_capacity_exit_code(self, capsys):
        code = run(["fourier", "--mode", "table", "--lam", "30",
                    "--P", "const:1"])
        assert code == 3

    def test_bad_flag_exit_code(self, capsys):
        assert run(["sum", "--weight", "nope", "--x", "10"]) == 2

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.json"
        code = run(["sum", "--weight", "unit", "--x", "500",
                    "--P", "const:1", "--output", str(target)])
        assert code == 0
        body = json.loads(target.read_text())
        assert body["x"] == 500


class TestTypeSums:
    def test_type1(self, capsys):
        code, rows = _run_json(capsys, [
            "typeI", "--M", "8", "--N", "64", "--hi", "2^9",
            "--P", "const:1"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("typeI"))

    def test_type2(self, capsys):
        code, rows = _run_json(capsys, [
            "typeII", "--M", "8", "--N", "32", "--P", "const:1",
            "--coeff-seed", "3"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("typeII"))


class TestFourier:
    def test_table(self, capsys):
        code, rows = _run_json(capsys, [
            "fourier", "--mode", "table", "--lam", "8", "--k", "10",
            "--P", "const:1", "--offsets", "0,0.5"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("fourier"))
        assert len(rows[0]["masses"]) == 2

    def test_lemma(self, capsys):
        code, rows = _run_json(capsys, [
            "fourier", "--mode", "lemma", "--l", "6", "--kappa", "1",
            "--P", "const:4", "--grid-bits", "8", "--random-offsets", "8"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("fourier_lemma"))
        assert rows[0]["ok"] is True

    def test_doubletrunc(self, capsys):
        code, rows = _run_json(capsys, [
            "fourier", "--mode", "doubletrunc", "--mu0", "0", "--mu1", "6",
            "--mu2", "12", "--lam", "5", "--k", "16", "--P", "const:1"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("fourier_doubletrunc"))


class TestCounting:
    def test_carry_sweep_csv(self, capsys):
        code = run(["carry", "--lam", "4", "--lam-max", "6", "--kappa", "1",
                    "--rho", "2", "--P", "const:1", "--format", "csv"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4  # header + one row per lam
        assert "count" in lines[0]

    def test_carry_both_impls(self, capsys):
        code, rows = _run_json(capsys, [
            "carry", "--lam", "5", "--kappa", "1", "--rho", "2",
            "--P", "const:1", "--both-impls"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("carry"))
        assert rows[0]["agreement"] is True

    def test_perturb_sweep(self, capsys):
        code, rows = _run_json(capsys, [
            "perturb", "--mu", "3", "--nu", "7", "--rho", "1",
            "--rho-max", "3", "--both-impls"])
        assert code == 0
        assert len(rows) == 3
        assert all(r["agreement"] for r in rows)
        # count decreases as the perturbation shrinks digit overlap
        counts = [r["count"] for r in rows]
        assert counts == sorted(counts, reverse=True)

    def test_mismatch(self, capsys):
        code, rows = _run_json(capsys, [
            "mismatch", "--mu", "2", "--nu", "4", "--rho", "1",
            "--P", "const:1"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("mismatch"))


class TestAutomaton:
    def test_pair(self, capsys):
        code, rows = _run_json(capsys, [
            "automaton", "--k-states", "3", "--P", "log:2/3"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("automaton"))
        assert rows[0]["ok"] is True

    def test_exhausted_exit_code(self, capsys):
        assert run(["automaton", "--k-states", "4", "--P", "const:2",
                    "--max-m", "1000"]) == 2


class TestRunlength:
    def test_exact(self, capsys):
        code, rows = _run_json(capsys, [
            "runlength", "--exact", "--N", "3", "--k", "1"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("runlength"))
        assert rows[0]["result"] == {"E": 6, "I": 2, "E_fraction": 0.75}

    def test_word_mode(self, capsys):
        code, rows = _run_json(capsys, [
            "runlength", "--mode", "word", "--N", "32", "--seed", "9"])
        assert code == 0
        assert len(rows[0]["result"]["word"]) == 32


class TestBoundsCommands:
    def test_admissible(self, capsys):
        code, rows = _run_json(capsys, [
            "admissible", "--P", "const:10", "--x-max", "10^4"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("admissible"))
        assert rows[0]["first_failure"] == 2

    def test_bounds(self, capsys):
        code, rows = _run_json(capsys, [
            "bounds", "--x", "2^20", "--P", "log:2/3"])
        assert code == 0
        jsonschema.validate(rows[0], _schema("bounds"))
        assert rows[0]["rhs_over_x"] > 0


class TestSchemasShipped:
    def test_all_schema_files_present_and_current(self):
        from gelfond.schemas import RESPONSE_MODELS
        for name, model in RESPONSE_MODELS.items():
            shipped = _schema(name)
            assert shipped == model.model_json_schema()


class TestAccept:
    def test_single_criterion(self, capsys):
        assert run(["accept", "--only", "3"]) == 0
        out = capsys.readouterr().out
        assert "criterion" in out and "[PASS]" in out
