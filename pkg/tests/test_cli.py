import json

import pytest

from quathom import cli
from quathom.errors import ParseError, ValidationError

LAMBDA_JOB = """\
# Schur scalar of an axis pair
kind: lambda
n: 1
I: 1,0,0
J: 0,1,0
"""

EIGEN_JOB = """\
kind: solve-eigen
vars: x
N: 4
map: x -> x/2 + x^2
lambda: 1/2
r: x^2
"""

HOMOGENIZE_JOB = """\
kind: homogenize
vars: x,y
N: 4
relations: x*y
map: x -> x/2; y -> y/2 + x^2*y
"""

PSI_JOB = """\
kind: psi
n: 1
N: 2
I: 1,0,0
J: 0,1,0
"""

PLANES_JOB = """\
kind: planes
n: 2
N: 2
I: 1,0,0
plane: 1,0,0,0,0,0,0,0; 0,1,0,0,0,0,0,0; 0,0,1,0,0,0,0,0; 0,0,0,1,0,0,0,0
plane: 0,0,0,0,1,0,0,0; 0,0,0,0,0,1,0,0; 0,0,0,0,0,0,1,0; 0,0,0,0,0,0,0,1
"""

ALL_JOBS = (LAMBDA_JOB, EIGEN_JOB, HOMOGENIZE_JOB, PSI_JOB, PLANES_JOB)


def test_parse_job_reads_fields_and_comments():
    job = cli.parse_job(LAMBDA_JOB)
    assert job.kind == "lambda"
    assert job.backend == "exact"
    assert job.fields["n"] == 1


def test_parse_job_missing_kind():
    with pytest.raises(ValidationError) as err:
        cli.parse_job("n: 1\n")
    assert err.value.field == "kind"


def test_parse_job_missing_required_field():
    text = EIGEN_JOB.replace("map: x -> x/2 + x^2\n", "")
    with pytest.raises(ValidationError) as err:
        cli.parse_job(text)
    assert err.value.field == "map"


def test_parse_job_rejects_duplicates_and_bad_lines():
    with pytest.raises(ValidationError):
        cli.parse_job(LAMBDA_JOB + "n: 2\n")
    with pytest.raises(ParseError) as err:
        cli.parse_job("kind lambda\n")
    assert err.value.line == 1


def test_parse_job_bad_structure():
    with pytest.raises(ValidationError) as err:
        cli.parse_job("kind: lambda\nn: 1\nI: 1,1,0\nJ: 0,1,0\n")
    assert err.value.field == "I"


def test_serialize_round_trip():
    for text in ALL_JOBS:
        job = cli.parse_job(text)
        canonical = cli.serialize_job(job)
        assert cli.parse_job(canonical) == job
        assert cli.serialize_job(cli.parse_job(canonical)) == canonical


def test_run_job_lambda():
    report = cli.run_job(cli.parse_job(LAMBDA_JOB))
    assert report["results"]["lambda"] == "1/2"
    assert not report["diagnostics"]


def test_run_job_solve_eigen():
    report = cli.run_job(cli.parse_job(EIGEN_JOB))
    assert report["results"]["residual"] == "0"
    assert report["results"]["c"].endswith("4*x^2")


def test_run_job_reports_math_errors_as_diagnostics():
    text = EIGEN_JOB.replace("lambda: 1/2", "lambda: 2")
    report = cli.run_job(cli.parse_job(text))
    assert report["diagnostics"]
    assert report["diagnostics"][0]["error"] == "LambdaOutOfRange"


def test_parse_error_in_map_expression():
    text = EIGEN_JOB.replace("x/2 + x^2", "x/2 + x^^2")
    report = cli.run_job(cli.parse_job(text))
    assert report["diagnostics"][0]["error"] == "ParseError"
    assert "line 4" in report["diagnostics"][0]["message"]


def test_main_writes_json_and_exit_codes(tmp_path, capsys):
    path = tmp_path / "job.txt"
    path.write_text(LAMBDA_JOB)
    out = tmp_path / "report.json"
    code = cli.main([str(path), "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["results"]["lambda"] == "1/2"

    missing = cli.main([str(tmp_path / "nope.txt")])
    captured = capsys.readouterr()
    assert missing == 1
    assert "FileNotFoundError" in captured.out


def test_main_runs_multiple_jobs(tmp_path, capsys):
    paths = []
    for idx, text in enumerate((LAMBDA_JOB, PSI_JOB)):
        p = tmp_path / ("job%d.txt" % idx)
        p.write_text(text)
        paths.append(str(p))
    assert cli.main(paths + ["--format", "text"]) == 0
    captured = capsys.readouterr()
    assert captured.out.count("job:") == 2


def test_reports_are_deterministic():
    for text in ALL_JOBS:
        first = cli.report_to_json(cli.run_job(cli.parse_job(text)))
        second = cli.report_to_json(cli.run_job(cli.parse_job(text)))
        assert first == second


def test_selftest_passes():
    report = cli.selftest(seed=3)
    assert not report["diagnostics"]
    assert all(report["results"].values())
