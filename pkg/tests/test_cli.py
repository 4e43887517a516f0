import json
import subprocess
import sys

import pytest

from kreinframes.cli import run


def _report(capsys, argv):
    code = run(argv + ["--quiet"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_analyze_example(capsys, corpus):
    code, rep = _report(capsys, ["analyze", "--input", str(corpus / "example33.json")])
    assert code == 0
    assert rep["result"]["is_j_frame"] is True
    assert rep["input_digest"].startswith("sha256:") and rep["tol"] == 1e-9
    assert rep["result"]["classification"]["i_plus"] == [1, 2]


def test_project_example(capsys, corpus):
    code, rep = _report(capsys, ["project", "--input", str(corpus / "example33.json")])
    assert code == 1
    sub = rep["result"]["onto_subspace"]
    assert sub["is_j_frame"] is False
    assert "neutral_vector" in sub["sub_report"]["failure_reasons"]


def test_bounds_with_symmetry(capsys, corpus):
    code, rep = _report(capsys, ["bounds", "--input", str(corpus / "example210_dim4.json")])
    assert code == 0
    esm = rep["result"]["esmeral"]
    assert esm["A"] == pytest.approx(2 - 3**0.5, abs=1e-9)
    assert esm["B"] == pytest.approx(2 + 3**0.5, abs=1e-9)


def test_merge_and_sequence(capsys, corpus):
    code, rep = _report(
        capsys, ["merge", "--input", str(corpus / "merge_f.json"), "--input2", str(corpus / "merge_g.json")]
    )
    assert code == 0 and rep["result"]["holds"]
    code, rep = _report(capsys, ["sequence", "--input", str(corpus / "split_dim5.json")])
    assert code == 0
    assert rep["result"]["span_criterion"]["agree"] and rep["result"]["intersection"]["consistent"]


def test_exact(capsys, corpus):
    code, rep = _report(capsys, ["exact", "--input", str(corpus / "example33.json"), "--depth", "2"])
    assert code == 0 and rep["result"]["is_exact"]


def test_fuzz(capsys):
    code, rep = _report(capsys, ["fuzz", "--trials", "3", "--dim", "3", "--sig", "2,1", "--seed", "4"])
    assert code == 0
    assert rep["result"]["config"] == {"trials": 3, "dim": 3, "signature": [2, 1], "seed": 4, "samples": 2000}
    assert rep["result"]["total_violations"] == 0


def test_output_file_and_tol_override(tmp_path, capsys, corpus):
    out = tmp_path / "r.json"
    assert run(["analyze", "--input", str(corpus / "example33.json"), "--output", str(out), "--tol", "1e-6", "--quiet"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["tol"] == 1e-6


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["analyze", "--input", "/nonexistent.json"], "cannot read"),
        (["merge", "--input", "CORPUS/merge_f.json"], "--input2"),
        (["merge", "--input", "CORPUS/merge_f.json", "--input2", "CORPUS/example33.json"], "same Gram"),
        (["project", "--input", "CORPUS/example210_dim4.json"], "subspace"),
        (["fuzz", "--dim", "3", "--sig", "2,2"], "signature"),
        (["analyze", "--input", "CORPUS/example33.json", "--tol", "0"], "--tol"),
    ],
)
def test_input_errors_exit_2(capsys, corpus, argv, fragment):
    argv = [a.replace("CORPUS", str(corpus)) for a in argv]
    assert run(argv) == 2
    assert fragment in capsys.readouterr().err


def test_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"gram": [[1, 0],\n [0, -1]], "vectors": [[1, 0]],}')
    assert run(["analyze", "--input", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 2


def test_module_entry_point(corpus):
    proc = subprocess.run(
        [sys.executable, "-m", "kreinframes", "analyze", "--input", str(corpus / "example33.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "is_j_frame=True" in proc.stderr


@pytest.mark.parametrize("name", ["example33.json", "split_dim5.json", "counterexample_a.json"])
def test_reports_match_the_documented_schema(capsys, corpus, name):
    import jsonschema

    schema = json.loads((corpus.parent / "docs" / "report.schema.json").read_text())
    for command in ("analyze", "sequence", "project"):
        code, rep = _report(capsys, [command, "--input", str(corpus / name)])
        if code in (0, 1):
            jsonschema.validate(rep, schema)


def test_corpus_files_match_the_problem_schema(corpus):
    import jsonschema

    schema = json.loads((corpus.parent / "docs" / "problem.schema.json").read_text())
    for path in sorted(corpus.glob("*.json")):
        jsonschema.validate(json.loads(path.read_text()), schema)
