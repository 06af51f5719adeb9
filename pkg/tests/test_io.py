from __future__ import annotations

import json

import pytest

from lambdastar import io as lio
from lambdastar.follower import isomorphic, follower_graph
from lambdastar.kgraph import validate_kgraph
from lambdastar.multiword import StructuralError

from conftest import FIXTURES


def test_load_forbidden_language(dichfail):
    L = lio.load_language(FIXTURES / "dichfail.json")
    assert L.forbidden == dichfail.forbidden
    T = lio.load_language(FIXTURES / "dichfail.toml")
    assert T.forbidden == dichfail.forbidden


def test_load_oracle_language(doubledoors_graph):
    L = lio.load_language(FIXTURES / "doubledoors.json")
    assert isomorphic(follower_graph(L), doubledoors_graph)


def test_load_kgraphs():
    assert validate_kgraph(lio.load_kgraph(FIXTURES / "min2.json")) == []
    assert validate_kgraph(lio.load_kgraph(FIXTURES / "fan-3.json")) == []
    assert validate_kgraph(lio.load_kgraph(FIXTURES / "broken.json"))


def test_bad_specs(tmp_path):
    p = tmp_path / "two.json"
    p.write_text(json.dumps({"rank": 1, "alphabet": [2], "forbidden": ["1"], "oracle": "full"}))
    with pytest.raises(StructuralError):
        lio.load_language(p)
    p.write_text("{not json")
    with pytest.raises(StructuralError):
        lio.load_language(p)
    p.write_text(json.dumps({"rank": 1, "alphabet": [2], "forbidden": ["1"], "colour": 3}))
    with pytest.raises(StructuralError):
        lio.load_language(p)
