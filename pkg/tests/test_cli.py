import json
import subprocess
import sys

import jsonschema
import pytest

from stablepairs import __version__, pairs
from stablepairs.cli import SCHEMAS, main
from stablepairs.picard import BlowUpRecord, blow_up_points, projective_plane


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hj_expand(capsys):
    assert run(capsys, "hj", "expand", "20/9") == (0, '{"chain":[3,2,2,2,3]}\n', "")


def test_hj_contract(capsys):
    code, out, _ = run(capsys, "hj", "contract", "3,2,2,2,3")
    assert code == 0 and json.loads(out) == {"r": 20, "a": 9, "label": "1/20(1,9)"}


def test_lct(capsys):
    assert run(capsys, "lct", "5", "5")[:2] == (0, '{"lct":"2/5"}\n')
    assert json.loads(run(capsys, "lct", "3", "7")[1]) == {"lct": "10/21"}


def test_classt(capsys):
    assert json.loads(run(capsys, "classt", "20/9")[1]) == {"verdict": "T", "p": 2, "q": 5, "d": 1}
    assert json.loads(run(capsys, "classt", "3/2")[1]) == {"verdict": "DuVal", "ade": "A2"}
    assert json.loads(run(capsys, "classt", "5/2")[1]) == {"verdict": "NotT"}


@pytest.mark.parametrize("argv", [
    ["hj", "expand", "20/8"], ["hj", "expand", "x"], ["hj", "contract", "3,1,3"], ["lct", "1", "4"],
    ["classt"], ["build-pair", "--stratum", "quintic-6"], ["reduce", "--scenario", "nope"], ["frobnicate"], [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_atlas_is_an_array_in_canonical_order(capsys):
    code, out, _ = run(capsys, "atlas")
    data = json.loads(out)
    assert code == 0
    assert [r["stratum"]["key"] for r in data] == [s.key for s in pairs.all_strata()]
    for r in data:
        jsonschema.validate(r, SCHEMAS["PairReport"])


def test_build_pair_envelope(capsys):
    code, out, _ = run(capsys, "build-pair", "--stratum", "trigonal-2-4")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMAS["ReportEnvelope"])
    jsonschema.validate(data["result"], SCHEMAS["PairReport"])
    assert data["version"] == __version__
    assert data["command"] == ["build-pair", "--stratum", "trigonal-2-4"]
    assert [s["label"] for s in data["result"]["surface_sings"]] == ["1/20(1,9)"]
    assert data["documented_facts"]


def test_reduce_envelope(capsys):
    code, out, _ = run(capsys, "reduce", "--scenario", "trigonal-2-4", "--trace")
    data = json.loads(out)
    assert code == 0
    jsonschema.validate(data, SCHEMAS["ReportEnvelope"])
    jsonschema.validate(data["result"], SCHEMAS["ScenarioTrace"])
    assert data["result"]["matches_builder"] is True
    assert data["result"]["steps"]
    short = json.loads(run(capsys, "reduce", "--scenario", "trigonal-2-4")[1])
    assert "steps" not in short["result"]


def test_contract_from_surface_file(capsys, tmp_path):
    S = projective_plane({"l": 1, "D": 5})
    S = blow_up_points(S, [BlowUpRecord({"l": 1, "D": 1}, f"G{i}") for i in range(1, 6)])
    path = tmp_path / "surface.json"
    path.write_text(json.dumps(S.to_json()))
    code, out, _ = run(capsys, "contract", "--surface", str(path), "--plan", "l")
    data = json.loads(out)
    assert code == 0
    jsonschema.validate(data["result"], SCHEMAS["ContractedSurface"])
    assert [s["label"] for s in data["result"]["singularities"]] == ["1/4(1,1)"]
    assert data["result"]["discrepancy"] == {"l": "1/2"}
    assert data["result"]["k_squared"] == "5"
    assert main(["contract", "--surface", str(path), "--plan", "D"]) == 2
    assert main(["contract", "--surface", str(tmp_path / "missing.json"), "--plan", "l"]) == 2


def test_verify_paper_passes(capsys):
    code, out, err = run(capsys, "verify-paper")
    data = json.loads(out)
    assert code == 0, err
    jsonschema.validate(data["result"], SCHEMAS["VerifyResult"])
    assert data["result"]["failed"] == 0


def test_verify_paper_names_the_failing_identity(capsys, monkeypatch):
    from stablepairs import golden
    real = golden.run_all

    def broken():
        results = real()
        bad = golden.CheckResult("an identity that broke", "test", False, "forced")
        return results + [bad]
    monkeypatch.setattr(golden, "run_all", broken)
    code, _, err = run(capsys, "verify-paper")
    assert code == 1
    assert "an identity that broke" in err


def test_json_schema_flag(capsys):
    code, out, _ = run(capsys, "--json-schema")
    assert code == 0 and set(json.loads(out)) == set(SCHEMAS)
    for schema in SCHEMAS.values():
        jsonschema.Draft202012Validator.check_schema(schema)


def test_human_output(capsys):
    code, out, _ = run(capsys, "atlas", "--human")
    assert code == 0 and "trigonal-2-4" in out and "1/20(1,9)" in out
    assert run(capsys, "--human", "lct", "5", "5")[1] == "lct=2/5\n"


def test_no_floats_anywhere(capsys):
    for argv in (["atlas"], ["reduce", "--scenario", "trigonal-2-4", "--trace"]):
        out = run(capsys, *argv)[1]
        json.loads(out, parse_float=lambda s: pytest.fail(f"float {s} in {argv}"))


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "stablepairs", "reduce", "--scenario", "quintic-11111", "--trace"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
