"""Reading language specs and graphs from JSON or TOML files."""

from __future__ import annotations

import json
import sys
from pathlib import Path as FilePath

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .follower import LabeledRankGraph
from .kgraph import RankGraph
from .language import Language
from .multiword import StructuralError

SPEC_KEYS = {"rank", "alphabet", "forbidden", "graph", "oracle", "name"}


def read_data(path) -> dict:
    path = FilePath(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise StructuralError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        if path.suffix == ".toml":
            return tomllib.loads(text)
        return json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise StructuralError(f"{path}: {exc}") from exc


def language_from_data(data: dict, base: FilePath | None = None) -> Language:
    unknown = set(data) - SPEC_KEYS
    if unknown:
        raise StructuralError(f"unknown spec fields: {sorted(unknown)}")
    sources = [k for k in ("forbidden", "graph", "oracle") if k in data]
    if len(sources) != 1:
        raise StructuralError("a spec needs exactly one of 'forbidden', 'graph', 'oracle'")
    name = str(data.get("name", ""))
    if "graph" in data:
        g = data["graph"]
        if isinstance(g, str):
            g = read_data((base or FilePath(".")) / g)
        G = LabeledRankGraph.from_json(g)
        return Language.from_graph(G, name=name)
    alphabet = data.get("alphabet")
    if alphabet is None:
        raise StructuralError("a spec needs an 'alphabet' list")
    alphabet = [int(x) for x in alphabet]
    if "rank" in data and int(data["rank"]) != len(alphabet):
        raise StructuralError("'rank' does not match the alphabet profile")
    if "oracle" in data:
        o = data["oracle"]
        if isinstance(o, str):
            o = {"name": o}
        return Language.from_oracle(o["name"], alphabet, o.get("params"))
    return Language.from_forbidden(alphabet, list(data["forbidden"]), name=name)


def load_language(path) -> Language:
    path = FilePath(path)
    return language_from_data(read_data(path), path.parent)


def load_labeled_graph(path) -> LabeledRankGraph:
    return LabeledRankGraph.from_json(read_data(path))


def load_kgraph(path) -> RankGraph:
    return RankGraph.from_json(read_data(path))


def write_text(path, text: str) -> None:
    path = FilePath(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise StructuralError(f"cannot write {path}: {exc.strerror}") from exc
