import json

import pytest
import yaml
from click.testing import CliRunner

from app.main import cli
from app.models import OutputRecord


@pytest.fixture
def run(cache_dir):
    runner = CliRunner()

    def invoke(*args: str):
        return runner.invoke(cli, ["--cache-dir", cache_dir, "--quiet", *args])

    return invoke


def payload(result) -> dict:
    return json.loads(result.stdout)


def test_kron_verified(run) -> None:
    result = run("kron", "--alpha", "2,2", "--beta", "2,2", "--gamma", "2,2", "--verify", "--json")
    assert result.exit_code == 0
    record = payload(result)
    assert record["schema"] == "gctlab/1"
    assert record["command"] == "kron"
    assert record["result"] == {"value": 1, "method": "two_row_closed_form", "cross_checked": True}
    assert record["inputs"]["alpha"] == [2, 2]


def test_kron_oracle_method(run) -> None:
    result = run("kron", "--alpha", "4", "--beta", "2,2", "--gamma", "3,1", "--method", "oracle", "--json")
    assert result.exit_code == 0
    assert payload(result)["result"]["value"] == 0
    assert payload(result)["method"] == "oracle"


@pytest.mark.parametrize(
    "args",
    [
        ("--alpha", "2", "--beta", "3", "--gamma", "2"),
        ("--alpha", "1,2", "--beta", "3", "--gamma", "3"),
        ("--alpha", "2,1,1", "--beta", "2,2", "--gamma", "2,2", "--method", "two-row"),
    ],
)
def test_kron_usage_errors_exit_2(run, args) -> None:
    assert run("kron", *args).exit_code == 2


def test_human_output_carries_the_same_payload(run) -> None:
    args = ("kron", "--alpha", "3,1", "--beta", "3,1", "--gamma", "2,1,1")
    human = yaml.safe_load(run(*args).stdout)
    machine = payload(run(*args, "--json"))
    for record in (human, machine):
        record.pop("elapsed_ms")
        record.pop("cache_hits")
    assert human == machine


def test_separate_case_two(run) -> None:
    result = run("separate", "--n", "2", "--lambda", "2", "--mu", "", "--json")
    assert result.exit_code == 0
    cert = payload(result)["result"]
    assert cert["rho"] == [7, 1]
    assert cert["m_used"] == 8
    assert cert["case_tag"] == "case2"
    assert cert["lambda"] == [2]
    assert cert["mu"] == []


def test_separate_odd_sizes(run) -> None:
    assert run("separate", "--n", "2", "--lambda", "1", "--mu", "1").exit_code == 2
    result = run("separate", "--n", "2", "--lambda", "1", "--mu", "1", "--allow-nonzero-mod", "--json")
    assert result.exit_code == 0
    assert payload(result)["result"]["case_tag"] == "nonzero_mod_n"


def test_obstruct_tables(run) -> None:
    result = run("obstruct", "--n", "1", "--m", "2", "--d", "1", "--json")
    assert result.exit_code == 0
    assert payload(result)["result"] == {"stabilizer_component": "connected", "candidates": []}

    result = run("obstruct", "--n", "1", "--m", "2", "--d", "2", "--emit-all", "--json")
    rows = payload(result)["result"]["candidates"]
    assert [row["lambda"] for row in rows] == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]
    assert [row["det_coefficient"] for row in rows] == [1, 0, 1, 0, 1]


def test_obstruct_csv(run) -> None:
    result = run("obstruct", "--n", "1", "--m", "2", "--d", "2", "--emit-all", "--csv")
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "lambda,d,m,n,passes_ambient,passes_height,det_coefficient,is_candidate"
    assert lines[2].startswith('"3,1",2,2,1,False,True,0,False')
    assert len(lines) == 6


def test_obstruct_ceiling_exit_2(run) -> None:
    assert run("obstruct", "--n", "2", "--m", "4", "--d", "5").exit_code == 2


def test_verify_parity_suite(run) -> None:
    result = run("verify", "--suite", "parity", "--json")
    assert result.exit_code == 0
    report = payload(result)["result"]
    assert report["passed"] is True
    assert report["suites"][0]["checks"][0]["name"] == "rectangle_square_parity_law"


def test_verify_unknown_suite(run) -> None:
    assert run("verify", "--suite", "nope").exit_code == 2


def test_query_commands(run) -> None:
    assert payload(run("lr", "--lambda", "3,2,1", "--mu", "2,1", "--nu", "2,1", "--json"))["result"] == {"value": 2}

    branch = payload(run("branch", "--lambda", "2,1", "--from-rank", "3", "--to-rank", "2", "--json"))
    assert [entry["rho"] for entry in branch["result"]["entries"]] == [[2, 1], [2], [1, 1], [1]]

    levi = payload(run("levi", "--lambda", "1", "--k", "1", "--l", "1", "--json"))["result"]
    assert levi["contains_trivial"] is True
    assert len(levi["entries"]) == 2

    pleth = payload(run("plethysm", "--d", "2", "--m", "2", "--json"))["result"]
    assert pleth["terms"] == [{"shape": [4], "coefficient": 1}, {"shape": [2, 2], "coefficient": 1}]

    table = payload(run("chartable", "--n", "3", "--json"))["result"]
    assert table["values"] == [[1, 1, 1], [2, 0, -1], [1, -1, 1]]
    assert table["orthogonal"] is True


def test_repeated_runs_are_identical(run) -> None:
    first = payload(run("obstruct", "--n", "1", "--m", "2", "--d", "3", "--emit-all", "--json"))
    second = payload(run("obstruct", "--n", "1", "--m", "2", "--d", "3", "--emit-all", "--json"))
    assert first["result"] == second["result"]
    assert first["inputs"] == second["inputs"]


def test_output_record_survives_json(run) -> None:
    for args in (
        ("kron", "--alpha", "3,1", "--beta", "2,2", "--gamma", "3,1"),
        ("separate", "--n", "2", "--lambda", "2", "--mu", ""),
        ("obstruct", "--n", "1", "--m", "2", "--d", "2", "--emit-all"),
    ):
        text = run(*args, "--json").stdout
        record = OutputRecord.model_validate(json.loads(text))
        assert record.model_dump(mode="json", by_alias=True) == json.loads(text)
        assert OutputRecord.model_validate_json(record.model_dump_json(by_alias=True)) == record
