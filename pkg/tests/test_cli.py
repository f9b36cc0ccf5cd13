"""CLI dispatch: exact output, exit codes, determinism, formats."""

from __future__ import annotations

import json

from jthresh.cli import run
from jthresh.documents import parse_document

F1_DOC = json.dumps({
    "lattice": {"rank": 2, "matrix": [["1", "0"], ["0", "-1"]], "labels": ["H", "E"]},
    "cone": {"facets": [["0", "1"], ["1", "-1"]], "facet_labels": ["E", "F"],
             "light_cone": None},
    "classes": {"theta": ["2", "-1"], "omega": ["5", "-1"],
                "H": ["1", "0"], "F": ["1", "-1"], "mc1": ["-3", "1"]},
}).encode()

FAN_DOC = json.dumps({
    "fan": {"dim": 2, "rays": [[1, 0], [0, 1], [-1, 1], [0, -1]],
            "max_cones": [[0, 1], [1, 2], [2, 3], [3, 0]]},
    "toric_classes": {"theta": ["0", "-1", "0", "2"], "omega": ["0", "-1", "0", "5"]},
}).encode()

BAD_LATTICE_DOC = json.dumps({
    "lattice": {"rank": 2, "matrix": [["1", "0"], ["0", "1"]]},
}).encode()


def run_json(argv, stdin=b""):
    code, out = run(argv + ["--format", "json"], stdin)
    assert code == 0, out.decode()
    return json.loads(out.decode())


class TestCatalogCommand:
    def test_ross_worked_example(self):
        payload = run_json(["catalog", "ross", "--g", "4", "--sC", "2", "--t", "3"])
        assert payload["exact"]["value"] == "6/5"
        assert payload["exact"]["closed_form"] == "6/5"
        assert payload["status"] == "Solvable"
        assert payload["decimal"]["value"] == "1.20000000000"

    def test_ross_unstable_instance(self):
        payload = run_json(["catalog", "ross", "--g", "16", "--sC", "16/3", "--t", "6"])
        assert payload["exact"]["value"] == "-27"
        assert payload["status"] == "ExactUnstable"
        assert payload["audit"]["sigma"] == "45"
        assert payload["audit"]["T"] == "15/11"

    def test_bad_params_exit_code(self):
        code, out = run(["catalog", "ross", "--g", "3", "--sC", "1", "--t", "2"])
        assert code == 2
        assert out.decode().startswith("BadParams")

    def test_export_round_trips(self):
        code, out = run(["catalog", "hirzebruch", "--a", "1", "--export",
                         "--format", "json"])
        assert code == 0
        doc = parse_document(json.loads(out.decode()))
        assert doc.fan is not None and doc.lattice is not None
        assert set(doc.classes) == {"H", "E", "F"}
        assert set(doc.toric_classes) == {"H", "E", "F"}

    def test_summary_without_t(self):
        payload = run_json(["catalog", "perfect_lightcone", "--rank", "3"])
        assert payload["name"] == "perfect_lightcone"
        assert payload["cone"]["light_cone"] is True


class TestSurfaceCommands:
    def test_gamma_from_stdin(self):
        payload = run_json(["gamma", "--theta", "theta", "--omega", "omega"], F1_DOC)
        assert payload["exact"]["value"] == "-1/4"
        assert payload["status"] == "ExactUnstable"
        assert payload["audit"]["binding_facet_sigma"] == "E"
        assert payload["decimal"]["value"] == "-0.250000000000"

    def test_gamma_text_format(self):
        code, out = run(["gamma", "--theta", "theta", "--omega", "omega"], F1_DOC)
        assert code == 0
        text = out.decode()
        assert "exact.value: -1/4" in text
        assert "status: ExactUnstable" in text

    def test_seshadri_and_sigma(self):
        t = run_json(["seshadri", "--theta", "theta", "--omega", "omega"], F1_DOC)
        assert t["exact"]["value"] == "1/4" and t["binding_facet"] == "F"
        s = run_json(["sigma", "--theta", "theta", "--omega", "omega"], F1_DOC)
        assert s["exact"]["value"] == "1" and s["binding_facet"] == "E"

    def test_solvable(self):
        payload = run_json(["solvable", "--theta", "theta", "--omega", "omega"], F1_DOC)
        assert payload["solvable"] is False
        payload = run_json(["solvable", "--theta", "omega", "--omega", "omega"], F1_DOC)
        assert payload["solvable"] is True

    def test_stable_cone(self):
        payload = run_json(["stable-cone", "--theta", "theta", "--a", "H"], F1_DOC)
        assert payload["perfect"] is False
        assert payload["exact"]["boundary_t"] == "1/2"
        assert payload["exact"]["normalization"] == {"rat": "0", "coef": "1", "rad": 3}
        perfect = run_json(["stable-cone", "--theta", "theta", "--a", "F"], F1_DOC)
        assert perfect["perfect"] is True

    def test_csck(self):
        payload = run_json(["csck", "--minus-c1", "mc1", "--omega", "omega",
                            "--alpha", "1"], F1_DOC)
        assert payload["exact"]["lhs"] == "-1"
        assert payload["holds"] is True  # -1 > -3/2
        assert payload["caveats"] == ["requires discrete automorphism group"]

    def test_unknown_label(self):
        code, out = run(["gamma", "--theta", "nope", "--omega", "omega"], F1_DOC)
        assert code == 2 and out.decode().startswith("BadDocument")


class TestPathCommand:
    def test_csv_schema(self):
        code, out = run(["path", "--theta", "theta", "--a", "H",
                         "--samples", "10", "--format", "csv"], F1_DOC)
        assert code == 0
        lines = out.decode().splitlines()
        assert lines[0] == "t,R_numerator,gamma_value,solvable,decimal_approx"
        assert len(lines) == 11
        last = lines[-1].split(",")
        assert last[0] == "1" and last[2] == "1" and last[3] == "1"
        # t = 1/10 lies below the solvable boundary (sqrt(3)-1)/2
        first = lines[1].split(",")
        assert first[0] == "1/10" and first[3] == "0"

    def test_json_rows_and_intervals(self):
        payload = run_json(["path", "--theta", "theta", "--a", "H",
                            "--samples", "4"], F1_DOC)
        assert payload["numerator_coeffs"] == ["-1", "2", "2"]
        assert len(payload["rows"]) == 4
        iv = payload["solvable_set"][0]
        assert iv["lo"] == {"rat": "-1/2", "coef": "1/2", "rad": 3}
        assert iv["hi"] == "1" and iv["hi_closed"] is True

    def test_csv_only_for_path(self):
        code, out = run(["gamma", "--theta", "theta", "--omega", "omega",
                         "--format", "csv"], F1_DOC)
        assert code == 2 and out.decode().startswith("BadParams")

    def test_bad_samples(self):
        code, out = run(["path", "--theta", "theta", "--a", "H",
                         "--samples", "x"], F1_DOC)
        assert code == 2 and out.decode().startswith("BadParams")


class TestToricCommand:
    def test_toric_gamma(self):
        payload = run_json(["toric-gamma", "--theta", "theta", "--omega", "omega"],
                           FAN_DOC)
        assert payload["exact"]["value"] == "-1/4"
        assert payload["minimizer"] == [1]
        assert payload["status"] == "ExactUnstable"
        assert len(payload["scores"]) == 8
        assert payload["caveats"]  # automorphism caveat present

    def test_needs_fan(self):
        code, out = run(["toric-gamma", "--theta", "theta", "--omega", "omega"],
                        F1_DOC)
        assert code == 2 and out.decode().startswith("BadDocument")


class TestValidateCommand:
    def test_valid_document(self):
        payload = run_json(["validate"], F1_DOC)
        assert payload["ok"] is True
        assert payload["lattice"]["signature"] == [1, 1]

    def test_bad_signature_diagnostic(self):
        code, out = run(["validate"], BAD_LATTICE_DOC)
        assert code == 2
        line = out.decode()
        assert line.startswith("BadSignature") and line.count("\n") == 1

    def test_fan_document(self):
        payload = run_json(["validate"], FAN_DOC)
        assert payload["fan"]["orbits"] == 8


class TestDeterminismAndErrors:
    def test_byte_identical_runs(self):
        for argv, stdin in (
                (["gamma", "--theta", "theta", "--omega", "omega", "--format", "json"], F1_DOC),
                (["path", "--theta", "theta", "--a", "H", "--samples", "25",
                  "--format", "csv"], F1_DOC),
                (["catalog", "ross", "--g", "4", "--sC", "2", "--t", "3"], b""),
                (["toric-gamma", "--theta", "theta", "--omega", "omega",
                  "--format", "json"], FAN_DOC)):
            first = run(list(argv), stdin)
            second = run(list(argv), stdin)
            assert first == second and first[0] == 0

    def test_missing_document(self):
        code, out = run(["gamma", "--theta", "x", "--omega", "y"], b"")
        assert code == 2 and out.decode().startswith("BadDocument")

    def test_invalid_json(self):
        code, out = run(["validate"], b"{nope")
        assert code == 2 and out.decode().startswith("BadDocument")

    def test_missing_option(self):
        code, out = run(["gamma", "--theta", "theta"], F1_DOC)
        assert code == 2 and out.decode().startswith("BadParams")

    def test_query_defaults_from_document(self):
        doc = json.loads(F1_DOC)
        doc["query"] = {"theta": "theta", "omega": "omega"}
        payload = run_json(["gamma"], json.dumps(doc).encode())
        assert payload["exact"]["value"] == "-1/4"

    def test_env_digits(self, monkeypatch):
        monkeypatch.setenv("JTHRESH_DECIMAL_DIGITS", "5")
        payload = run_json(["catalog", "ross", "--g", "4", "--sC", "2", "--t", "3"])
        assert payload["decimal"]["value"] == "1.2000"
        assert payload["decimal"]["digits"] == 5
        monkeypatch.setenv("JTHRESH_DECIMAL_DIGITS", "zero")
        code, out = run(["catalog", "ross", "--g", "4", "--sC", "2", "--t", "3"])
        assert code == 2 and out.decode().startswith("BadParams")


class TestProcessEntryPoints:
    def test_module_invocation(self):
        import subprocess
        import sys
        proc = subprocess.run(
            [sys.executable, "-m", "jthresh.cli", "catalog", "ross",
             "--g", "4", "--sC", "2", "--t", "3", "--format", "json"],
            capture_output=True, stdin=subprocess.DEVNULL, timeout=60)
        assert proc.returncode == 0
        assert json.loads(proc.stdout.decode())["exact"]["value"] == "6/5"

    def test_module_invocation_stdin_and_exit_code(self):
        import subprocess
        import sys
        proc = subprocess.run(
            [sys.executable, "-m", "jthresh.cli", "validate"],
            input=BAD_LATTICE_DOC, capture_output=True, timeout=60)
        assert proc.returncode == 2
        assert proc.stdout.decode().startswith("BadSignature")
