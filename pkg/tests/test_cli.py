import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from ccycle.cli import IndexInput, index_formula, resolve_workflow, run
from ccycle.cli import schemas
from ccycle.cli.app import KINDS, validate
from ccycle.errors import InvalidInput
from ccycle.fixtures import all_examples

from oracles import exp_inverse_power_on_punctured_line, exp_power_on_line

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
KIND_TO_COMMAND = {v: k for k, v in KINDS.items()}


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, out = call(*argv)
    return code, json.loads(out)


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_torus_inline():
    assert call("torus", "--l", "2", "--k", "2,3") == (0, '{"dims":{"1":1,"2":1}}\n')


def test_torus_length_mismatch_is_schema_error():
    code, out = call_json("torus", "--l", "3", "--k", "2,3")
    assert code == 2 and out["error"]["type"] == "SchemaError"


def test_index_inline():
    assert call_json("index", "--rank", "1", "--chi-u", "0", "--boundary", "1:1,0:1") == (0, {"index": -1})


def test_malformed_json(tmp_path):
    code, out = call_json("stalk", "--input", write(tmp_path, "{oops"))
    assert code == 2
    validate(out, schemas.ERROR, "error")


def test_missing_input_file(tmp_path):
    assert call("stalk", "--input", str(tmp_path / "nope.json"))[0] == 2


def test_schema_violation(tmp_path):
    assert call("torus", "--input", write(tmp_path, {"k": [0, 2]}))[0] == 2
    assert call("index", "--input", write(tmp_path, {"rank": 1, "chi_U": 0, "boundary": [[-1, 1]]}))[0] == 2


def test_unknown_subcommand_and_no_payload():
    assert call("frobnicate")[0] == 2
    assert call("torus")[0] == 2


def test_domain_error_exit_code(tmp_path):
    payload = {"l": 1, "rank": 1, "ramification": [2], "factors": [{"orders": ["3/2"], "multiplicity": 1}]}
    code, out = call_json("cc-quasinormal", "--input", write(tmp_path, payload))
    assert code == 3
    assert out["error"]["type"] == "IntegralityViolation"


def test_unramified_fraction_is_domain_error():
    code, out = call_json("cc-limit", "--pole-orders", "1/2")
    assert code == 3 and out["error"]["type"] == "InvalidInput"


def test_problem_file_wrapper(tmp_path):
    path = write(tmp_path, {"kind": "stalk", "payload": {"k": [2, 3]}})
    assert call_json("stalk", "--input", path) == (0, {"dims": {"1": 1, "2": 1}, "euler": 0})
    assert call("torus", "--input", path)[0] == 2
    assert call("stalk", "--input", write(tmp_path, {"kind": "nonsense", "payload": {}}))[0] == 2


def test_stdin_input(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO('{"k": [4]}'))
    assert call_json("stalk", "--input", "-") == (0, {"dims": {"1": 4}, "euler": -4})


def test_pretty_output():
    code, out = call("--pretty", "cc-quasinormal", "--irr", "2,3")
    assert code == 0
    assert "D1&D2  6" in out
    code, out = call("stalk", "--k", "2,3", "--pretty")
    assert code == 0 and "euler" in out


def test_cc_limit_inline():
    code, out = call_json("cc-limit", "--pole-orders", "2", "--regular-branches", "1")
    assert out == {"cycle": {"X": 1, "D1": 3, "D2": 1, "D1&D2": 3}}


def test_branch_count_terms():
    code, out = call_json("branch-count", "--terms", "2:0:5,1:1:-1,0:1:1")
    assert code == 0 and out["count"] == 2
    assert out["edges"] == [{"start": [0, 1], "end": [2, 0], "length": 2, "valuation": "1/2"}]
    assert call_json("branch-count", "--example", "ii", "--k", "4")[1]["count"] == 4


def test_integrate_and_pushforward(tmp_path):
    strata = [{"id": "E1", "codim": 0, "chi": 1, "value": -2}, {"id": "E2", "codim": 0, "chi": 1, "value": -3},
              {"id": "E3", "codim": 0, "chi": -1, "value": -6}]
    assert call_json("integrate", "--input", write(tmp_path, {"strata": strata})) == (0, {"integral": 1})
    payload = {
        "source_strata": strata,
        "target_strata": [{"id": "0", "codim": 0, "chi": 1}],
        "fibers": {"0": {"E1": 1, "E2": 1, "E3": -1}},
    }
    assert call_json("pushforward", "--input", write(tmp_path, payload)) == (0, {"values": {"0": 1}, "integral": 1})


def test_cc_convert_both_ways(tmp_path):
    base = {
        "strata": [{"id": "X", "codim": 0, "chi": 0}, {"id": "Y", "codim": 1, "chi": 0}, {"id": "0", "codim": 2, "chi": 1}],
        "closure": {"X": ["Y", "0"], "Y": ["0"]},
        "eu_table": {"Y": {"0": 2}},
    }
    code, out = call_json("cc-convert", "--input", write(tmp_path, {**base, "cc": {"X": 1, "Y": 2, "0": 4}}))
    assert out["chi"] == {"X": 1, "Y": -1, "0": 1}
    code, back = call_json("cc-convert", "--input", write(tmp_path, {**base, "chi": out["chi"]}))
    assert back["cc"] == {"X": 1, "Y": 2, "0": 4}
    assert call("cc-convert", "--input", write(tmp_path, {**base, "eu_table": {"Q": {}}, "cc": {}}))[0] == 3


def test_identity_resolution():
    target = [{"id": "X", "codim": 0, "chi": 0}, {"id": "Y", "codim": 1, "chi": 0}, {"id": "0", "codim": 2, "chi": 1}]
    values = {"X": 3, "Y": -2, "0": 5}
    payload = {
        "target_strata": target,
        "closure": {"X": ["Y", "0"], "Y": ["0"]},
        "fibers": {z: {"strata": [{"id": z, "chi": 1, "value": v}]} for z, v in values.items()},
    }
    out = resolve_workflow(payload)
    assert out["chi"].values == values


def test_resolution_requires_every_fibre():
    payload = all_examples()["ex_i"]
    del payload["fibers"]["0"]
    with pytest.raises(InvalidInput):
        resolve_workflow(payload)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_index_formula_matches_derham_oracle(k):
    assert index_formula(IndexInput(1, 0, ((k, 1), (0, 1)))) == exp_inverse_power_on_punctured_line(k)
    assert index_formula(IndexInput(1, 1, ((k, 1),))) == exp_power_on_line(k)


def test_index_formula_rank_zero():
    assert index_formula(IndexInput(0, 7, ())) == 0


@settings(max_examples=50)
@given(st.integers(0, 5), st.integers(-5, 5), st.lists(st.tuples(st.integers(0, 9), st.integers(-3, 3)), max_size=4))
def test_index_cli_matches_library(rank, chi_u, boundary):
    buf = io.StringIO()
    code = run(["index", "--rank", str(rank), "--chi-u", str(chi_u),
                "--boundary", ",".join(f"{i}:{c}" for i, c in boundary)], stdout=buf)
    assert code == 0
    assert json.loads(buf.getvalue())["index"] == index_formula(IndexInput(rank, chi_u, tuple(boundary)))


GOLDEN = sorted(p.stem for p in (FIXTURES / "golden").glob("*.json"))


@pytest.mark.parametrize("name", GOLDEN)
def test_golden_files(name):
    problem = json.loads((FIXTURES / "inputs" / f"{name}.json").read_text())
    cmd = KIND_TO_COMMAND[problem["kind"]]
    first = call(cmd, "--input", str(FIXTURES / "inputs" / f"{name}.json"))
    second = call(cmd, "--input", str(FIXTURES / "inputs" / f"{name}.json"))
    assert first == second
    assert first == (0, (FIXTURES / "golden" / f"{name}.json").read_text())
    validate(json.loads(first[1]), schemas.RESULTS[problem["kind"]], "result")


def test_fixture_payloads_validate():
    for payload in all_examples().values():
        validate(payload, schemas.PAYLOADS["resolve"], "resolve")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ccycle", "torus", "--k", "2,4,6"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"dims": {"1": 2, "2": 4, "3": 2}}
