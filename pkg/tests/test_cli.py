from __future__ import annotations

import contextlib
import io
import json
import os

import pytest

from lambdastar.cli import run

from conftest import FIXTURES

SCENARIOS = json.loads((FIXTURES / "scenarios.json").read_text())


def _run(argv):
    buf = io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        with contextlib.redirect_stdout(buf):
            code = run(argv)
    finally:
        os.chdir(cwd)
    return code, buf.getvalue()


@pytest.mark.parametrize("sc", SCENARIOS, ids=[s["name"] for s in SCENARIOS])
def test_fixture_regression(sc):
    code, out = _run(sc["argv"])
    assert code == sc["exit"]
    assert out == (FIXTURES / "expected" / f"{sc['name']}.out").read_text()


def test_member_json_output():
    code, out = _run(["member", "dichfail.json", "-|02"])
    assert code == 0
    assert json.loads(out) == {"member": False, "word": "-|02"}


def test_toml_and_json_specs_agree():
    a = _run(["enumerate", "dichfail.json", "--bound", "1,1"])
    b = _run(["enumerate", "dichfail.toml", "--bound", "1,1"])
    assert a == b and a[0] == 0


def test_text_format():
    code, out = _run(["enumerate", "full22", "--bound", "1,0", "--format", "text"])
    assert (code, out.split()) == (0, ["-|-", "0|-", "1|-"])


def test_usage_errors():
    assert _run(["member", "missing.json", "0|-"])[0] == 2
    assert _run(["no-such-command"])[0] == 2


def test_cap_and_inconclusive_exit_three():
    assert _run(["enumerate", "dichfail.json", "--bound", "6,6", "--cap", "100"])[0] == 3
    assert _run(["sofic", "doubledoors.json", "--max-level", "1,1"])[0] == 3
    assert _run(["sofic", "doubledoors.json", "--max-level", "2,2"])[0] == 0


def test_follower_graph_roundtrip(tmp_path):
    target = tmp_path / "g.json"
    code, _ = _run(["follower-graph", "dichfail.json", "-o", str(target)])
    assert code == 0
    data = json.loads(target.read_text())
    assert len(data["vertices"]) == 10
    code, out = _run(["quantized-dynamics", str(target), "1|1"])
    assert code == 0
