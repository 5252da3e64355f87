"""Command-line front end: dispatch, serialization, exit codes, batch."""

import json
import os

import pytest

from lauridec.cli import (
    EXIT_FAIL,
    EXIT_NONCONVERGED,
    EXIT_OK,
    EXIT_USAGE,
    main,
)
from lauridec.hyper import GaussParams, gauss_2f1


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_fa_single_variable_matches_gauss(capsys):
    code, out, _ = run(
        capsys, "eval-fa", "--a", "0.3", "--b", "0.7", "--c", "1.1", "--x", "0.4"
    )
    assert code == EXIT_OK
    report = json.loads(out)
    want = gauss_2f1(GaussParams(0.3, 0.7, 1.1), 0.4).value
    assert report["value"] == pytest.approx(want, rel=1e-15)
    assert report["converged"] is True


def test_eval_fa_outside_domain_exits_one(capsys):
    code, _, err = run(
        capsys, "eval-fa", "--a", "0.3", "--b", "0.7,0.5", "--c", "1.1,1.2",
        "--x", "0.6,0.6",
    )
    assert code == EXIT_FAIL
    assert "DomainError" in err


def test_eval_fa_nonconvergence_exits_two(capsys):
    code, out, _ = run(
        capsys, "eval-fa", "--a", "0.9", "--b", "0.7,0.5", "--c", "1.1,1.2",
        "--x", "0.45,0.45", "--method", "direct", "--max-degree", "2",
    )
    assert code == EXIT_NONCONVERGED
    assert json.loads(out)["converged"] is False


def test_usage_error_prints_schema(capsys):
    code, _, err = run(capsys, "eval-fa", "--a", "0.3")
    assert code == EXIT_USAGE
    assert "usage" in err and "verify-lemma2" in err


def test_unknown_verb_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == EXIT_USAGE


def test_verify_lemma2_report(capsys):
    code, out, _ = run(
        capsys, "verify-lemma2", "--variant", "fa", "--a", "2.0",
        "--b", "0.3,0.4,0.5", "--max-degree", "60",
    )
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["rel_err"] <= 1e-8


def test_verify_lemma1_deterministic(capsys):
    args = ("verify-lemma1", "--variant", "fa", "--n", "2", "--draws", "4")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_seed_changes_draws(capsys):
    base = ("verify-lemma1", "--variant", "fa", "--n", "2", "--draws", "4")
    _, out1, _ = run(capsys, *base)
    _, out2, _ = run(capsys, *base, "--seed", "1")
    assert json.loads(out1)["max_rel_err"] != json.loads(out2)["max_rel_err"]


def test_json_round_trip_17_digits(capsys):
    _, out, _ = run(
        capsys, "eval-fa", "--a", "0.3", "--b", "0.7", "--c", "1.1", "--x", "0.4"
    )
    report = json.loads(out)
    reference = gauss_2f1(GaussParams(0.3, 0.7, 1.1), 0.4).value
    assert report["value"] == reference  # bit-exact after text round-trip
    assert report["terms_used"] == int(report["terms_used"])


def test_csv_output(capsys):
    code, out, _ = run(
        capsys, "eval-fa", "--a", "0.3", "--b", "0.7", "--c", "1.1",
        "--x", "0.4", "--format", "csv",
    )
    assert code == EXIT_OK
    header, row = out.strip().splitlines()
    cols = dict(zip(header.split(","), row.split(",")))
    want = gauss_2f1(GaussParams(0.3, 0.7, 1.1), 0.4).value
    assert float(cols["value"]) == want


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "eval-fa", "--a", "0.3", "--b", "0.7", "--c", "1.1",
        "--x", "0.4", "--out", str(path),
    )
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["converged"] is True


def test_env_var_tolerance(capsys, monkeypatch):
    args = ("eval-fa", "--a", "0.9", "--b", "0.7,0.5", "--c", "1.1,1.3",
            "--x", "0.3,0.3", "--method", "direct")
    monkeypatch.setenv("LAURIDEC_REL_TOL", "1e-4")
    _, loose, _ = run(capsys, *args)
    monkeypatch.delenv("LAURIDEC_REL_TOL")
    _, tight, _ = run(capsys, *args)
    assert json.loads(loose)["terms_used"] < json.loads(tight)["terms_used"]


def test_residual_verb(capsys):
    code, out, _ = run(
        capsys, "residual", "--m", "2", "--n", "1", "--alpha", "0.25",
        "--solution", "kernel", "--xi", "0.9,0.2", "--x", "0.4,0.5",
    )
    assert code == EXIT_OK
    assert abs(json.loads(out)["residual"]) <= 1e-4


def test_solve_holmgren_config(tmp_path, capsys):
    cfgfile = tmp_path / "problem.json"
    cfgfile.write_text(json.dumps({
        "m": 2, "n": 1, "alpha": [0.25], "radius": 1.0,
        "boundary": "constant", "grid_nodes": 128,
        "points": [[0.3, 0.2]],
    }))
    code, out, _ = run(capsys, "solve-holmgren", "--config", str(cfgfile))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["rows"][0]["u"] == pytest.approx(1.0, abs=1e-3)
    assert report["max_rel_err"] <= 1e-3


def test_batch_empty(tmp_path, capsys):
    manifest = tmp_path / "empty.txt"
    manifest.write_text("")
    code, out, _ = run(capsys, "batch", str(manifest))
    assert code == EXIT_OK
    assert json.loads(out)["commands"] == 0


def test_batch_pass_fail_and_malformed(tmp_path, capsys):
    manifest = tmp_path / "manifest.txt"
    manifest.write_text(
        "verify-lemma2 --variant fa --a 1.5 --b 0.3,0.4\n"
        "eval-fa --a 0.3 --b 0.7 --c 1.1 --x 0.4\n"
        "# a comment\n"
        "\n"
        "eval-fa --a 0.3 --b 0.7 --c 1.1 --x 1.4\n"
        "bogus-verb --x 1\n"
    )
    code, out, _ = run(capsys, "batch", str(manifest))
    assert code == EXIT_FAIL
    report = json.loads(out)
    assert report["passed"] == 2
    assert report["failed"] == 1
    assert report["malformed"] == 1
    lines = [row["line"] for row in report["rows"]]
    assert lines == [1, 2, 5, 6]


def test_batch_all_pass(tmp_path, capsys):
    manifest = tmp_path / "ok.txt"
    manifest.write_text(
        "eval-fa --a 0.3 --b 0.7 --c 1.1 --x 0.4\n"
        "eval-fb --a 0.6 --b 0.7 --c 1.3 --x -0.2\n"
        "verify-lemma2 --variant fb --a 1.5 --b 0.3,0.4\n"
    )
    code, out, _ = run(capsys, "batch", str(manifest))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["passed"] == 3 and report["failed"] == 0
