import io
import json
import re

import jsonschema
import pytest
from hypothesis import given, strategies as st

from alcovelab import cli
from alcovelab.admperm import adm
from alcovelab.cli import RunConfig, build_parser, config_from_args, emit_hasse_dot, load_schema, run
from alcovelab.rootdata import root_datum


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv.split(), out, err)
    return code, out.getvalue(), err.getvalue()


def dot_counts(text):
    nodes = re.findall(r"^\s+n\d+ \[label=", text, re.M)
    edges = re.findall(r"^\s+n\d+ -> n\d+;", text, re.M)
    return len(nodes), len(edges)


REPORTS = [
    "adm --group gl --n 2 --mu 1,0",
    "perm --group gsp --n 2 --mu 1,1,0,0",
    "compare --group gl --n 3 --mu 2,1,0",
    "admK --group gl --n 3 --mu 2,0,0 --K 1,2",
    "bgmu --group gl --n 4 --mu 1,1,0,0",
    "chailength --group gl --n 4 --mu 1,1,0,0 --from 1/2,1/2,1/2,1/2 --to 1,1,0,0",
    "dimbasic --group gsp --n 2 --mu 1,1,0,0",
    "adlv-classify --mu 1,0 --lambda 1,0",
    "adlv-grid --bound 1",
    "oracle-invw --n 3 --g diag:t^1,1,1 --b antidiag:t,1,1 --randomize --seed 4",
    "oracle-search --n 2 --mu 1,0 --b antidiag:t^1,1 --depth 1",
    "oracle-search --n 2 --mu 1,0 --b diag:t^1,t^0 --level hyperspecial --depth 1",
    "oracle-search --n 2 --t 1,0 --w 2,1 --b diag:t^1,t^0 --depth 2",
    "localmodel-count --group gl --n 2 --r 1 --chain 0,1 --q 2,3,4",
    "localmodel-count --group gsp --n 2 --r 2 --chain 0 --q 2",
]


@pytest.mark.parametrize("argv", REPORTS)
def test_reports_validate_against_schemas(argv):
    code, out, _ = call(argv)
    assert code == 0
    jsonschema.validate(json.loads(out), load_schema(argv.split()[0]))


@pytest.mark.parametrize("argv", REPORTS[:8])
def test_output_is_deterministic(argv):
    assert call(argv)[1] == call(argv)[1]


def test_adm_report_has_three_elements():
    code, out, _ = call("adm --group gl --n 2 --mu 1,0 --format json")
    rep = json.loads(out)
    assert code == 0 and rep["size"] == 3
    assert sorted(e["len"] for e in rep["elements"]) == [0, 1, 1]


def test_bgmu_dot_gl4():
    code, out, _ = call("bgmu --group gl --n 4 --mu 1,1,0,0 --format dot")
    assert code == 0 and out.startswith("digraph")
    assert dot_counts(out)[0] == 5


def test_dot_small_cases():
    assert dot_counts(emit_hasse_dot(["only"], [])) == (1, 0)
    assert dot_counts(call("bgmu --n 2 --mu 1,0 --format dot")[1]) == (2, 1)
    assert dot_counts(call("adm --n 2 --mu 1,0 --format dot")[1]) == (3, 2)


def test_adm_dot_puts_tau_below_translations():
    out = call("adm --n 2 --mu 1,0 --format dot")[1]
    assert 'n0 [label="t=[1, 0] w=[2, 1] omega=1 len=0"]' in out
    assert "n0 -> n1;" in out and "n0 -> n2;" in out


def test_csv_has_header_and_lf():
    code, out, _ = call("adm --n 2 --mu 1,0 --format csv")
    assert code == 0
    assert out.splitlines()[0] == "t,w,omega,len"
    assert "\r" not in out and out.endswith("\n")
    assert len(out.splitlines()) == 4


def test_rationals_are_strings():
    rep = json.loads(call("bgmu --n 2 --mu 1,0")[1])
    assert ["1/2", "1/2"] in [e["newton"] for e in rep["elements"]]


@pytest.mark.parametrize("argv,needle", [
    ("adm --n 2 --mu 1,x", "usage error"),
    ("adm --n 2 --mu 0,1", "invalid coweight"),
    ("adm --n 2 --mu 1,0,0", "invalid coweight"),
    ("adm --n 2 --mu 1,0 --bogus", "usage error"),
    ("nosuch", "usage error"),
    ("adm --n 3 --mu 2,1,0 --cap 3", "resource cap exceeded"),
    ("adlv-classify --mu 1,0 --lambda 0,1", "usage error"),
    ("oracle-search --group gsp --n 2 --mu 1,1,0,0", "usage error"),
    ("oracle-invw --n 2 --b diag:t", "invalid input"),
])
def test_error_exit_codes(argv, needle):
    code, out, err = call(argv)
    assert code == 1 and out == ""
    assert err.startswith(needle)


def test_distinct_diagnostics():
    prefixes = {call(a)[2].split(":")[0] for a in ["adm --mu q", "adm --n 2 --mu 0,1", "adm --n 3 --mu 2,1,0 --cap 3"]}
    assert len(prefixes) == 3


def test_mismatch_exit_code(monkeypatch):
    def fake(rd, mu):
        return 3, 4

    monkeypatch.setattr(cli.kottwitz, "conj_dim_basic_forms", fake)
    code, out, _ = call("dimbasic --n 2 --mu 1,0")
    assert code == 2 and json.loads(out)["agree"] is False


def test_localmodel_report_matches_prediction():
    rep = json.loads(call("localmodel-count --n 3 --r 1 --chain 0,1,2 --q 2")[1])
    assert rep["count"] == rep["table"][0]["predicted"] == 19 and rep["match"]


def test_adlv_grid_coherent():
    code, out, _ = call("adlv-grid --bound 2 --reading dominant")
    assert code == 0 and json.loads(out)["coherent"] is True


def test_fixtures_verify():
    code, out, _ = call("fixtures-verify")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, load_schema("fixtures-verify"))
    assert rep["passed"] and len(rep["criteria"]) == 10


@pytest.mark.parametrize("argv", REPORTS)
def test_run_config_round_trip(argv):
    cfg = config_from_args(build_parser().parse_args(argv.split()))
    data = json.loads(json.dumps(cfg.to_json()))
    jsonschema.validate(data, load_schema("run_config"))
    assert RunConfig.from_json(data) == cfg


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.sampled_from(["gl", "gsp"]), st.integers(0, 99))
def test_run_config_round_trip_property(mu, group, seed):
    cfg = RunConfig(command="adm", group=group, n=len(mu), mu=mu, seed=seed, extra={"r": 1, "chain": [0, 1]})
    assert RunConfig.from_json(json.loads(json.dumps(cfg.to_json()))) == cfg


def test_cap_env_cannot_lower_flag(monkeypatch):
    monkeypatch.setenv("ALCOVELAB_CAP", "1")
    assert call("adm --n 2 --mu 1,0 --cap 100")[0] == 0
