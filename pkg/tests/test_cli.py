import json

import pytest

from newspace import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_finite_exhaustive_passes(capsys):
    code, out, _ = run(capsys, "finite", "--p", "2", "--L", "4", "--pivot", "2", "--exhaustive", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == "1"
    assert doc["summary"]["counts"] == {"pass": 135, "fail": 0, "skip": 0}
    case = doc["cases"][0]
    for key in ("case_id", "p", "L", "pivot", "segments", "status", "residual_numerator", "residual_denominator"):
        assert key in case
    ids = [c["case_id"] for c in doc["cases"]]
    assert ids == sorted(ids)


def test_tree_alias_and_atoms(capsys):
    code, out, _ = run(capsys, "tree-check", "--q", "2", "--indices", "0,1,2,3", "--json")
    assert code == 0
    atoms = json.loads(out)["cases"][0]["atoms"]
    assert atoms == {"b[0]f[0]": "1/4", "b[0]f[1]": "1/4", "b[1]f[0]": "1/4", "b[1]f[1]": "1/4"}


def test_negative_control_reports_witness(capsys):
    code, out, _ = run(capsys, "finite", "--p", "2", "--L", "2", "--negative", "0..2", "--pivot", "1", "--json")
    case = json.loads(out)["cases"][0]
    assert code == 0 and case["witness"] is not None and case["residual"] != "0/1"


def test_kirillov_exact(capsys):
    code, out, _ = run(capsys, "kirillov-check", "--q", "4", "--a1", "1/3", "--json")
    case = json.loads(out)["cases"][0]
    assert code == 0 and set(case["checks"].values()) == {"0/1"}


def test_trace_csv(capsys):
    code, out, _ = run(capsys, "trace-new", "--k", "12", "--q", "8", "--n", "1", "--csv")
    assert code == 0
    assert out.splitlines() == ["k,q,n,value", "12,8,1,3"]


def test_dims_csv(capsys):
    code, out, _ = run(capsys, "dims", "--k", "12", "--qmax", "30", "--csv")
    assert code == 0
    assert out.splitlines()[0] == "k,q,n,value"
    assert len(out.splitlines()) == 1 + 4


def test_petersson_json(capsys):
    code, out, _ = run(capsys, "petersson-new", "--k", "8", "--q", "1", "--m", "2", "--n", "3", "--json")
    case = json.loads(out)["cases"][0]
    assert code == 0
    assert {"value", "tail_bound", "cutoff"} <= set(case)
    assert abs(case["value"]) <= case["tail_bound"] + 1e-6


@pytest.mark.parametrize(
    "argv",
    [
        ["finite", "--bogus"],
        ["trace-new", "--k", "12", "--q", "12"],
        ["trace-new", "--k", "12", "--q", "8", "--n", "2"],
        ["trace-new", "--k", "3", "--q", "8"],
        ["finite", "--p", "4", "--L", "2", "--exhaustive"],
        ["finite", "--p", "2", "--L", "2"],
        ["tree", "--indices", "0,1,2"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(cli.main(argv))
    assert exc.value.code == 2


def test_suite_config_rejects_unknown_keys():
    with pytest.raises(cli.UsageError):
        cli.SuiteConfig("tree", {"colour": 1})
    with pytest.raises(cli.UsageError):
        cli.SuiteConfig("nope")
    with pytest.raises(cli.UsageError):
        cli.SuiteConfig("tree", seed=-1)


def test_run_suite_reports():
    reports, summary = cli.run_suite(cli.SuiteConfig("tree", {"q": 3}))
    assert [r.case_id for r in reports] == sorted(r.case_id for r in reports)
    assert summary["counts"]["pass"] == 3
    assert all(isinstance(r.runtime_ms, int) for r in reports)


def test_failure_exit_code(monkeypatch, capsys):
    def broken(**kw):
        return "fail", 1, {}

    monkeypatch.setitem(cli.CASES, "tree", broken)
    code, out, _ = run(capsys, "tree", "--q", "2", "--indices", "0,1,2,3")
    assert code == 1 and out.startswith("FAIL")


def test_jobs_merge_is_deterministic():
    a, _ = cli.run_suite(cli.SuiteConfig("kirillov", {"sweep": 10}, jobs=1))
    b, _ = cli.run_suite(cli.SuiteConfig("kirillov", {"sweep": 10}, jobs=3))
    assert [r.to_json() for r in a] == [r.to_json() for r in b]


def test_json_byte_identical(capsys):
    first = run(capsys, "tree", "--q", "3", "--trials", "2000", "--seed", "11", "--json")
    second = run(capsys, "tree", "--q", "3", "--trials", "2000", "--seed", "11", "--json")
    assert first == second


def test_cache_group_roundtrip(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("NEWSPACE_CACHE_DIR", str(tmp_path))
    assert cli.main(["cache-group", "--p", "2", "--L", "3"]) == 0
    path = tmp_path / "group_p2_L3.txt"
    assert path.exists() and path.read_text().startswith("2 3 384\n")
    assert cli.main(["cache-group", "--p", "2", "--L", "3", "--load"]) == 0
    assert len(cli.load_group(path)) == 384
    path.write_text(path.read_text().replace("2 3 384", "3 2 384", 1))
    assert cli.main(["cache-group", "--p", "2", "--L", "3", "--load"]) == 1
    capsys.readouterr()
