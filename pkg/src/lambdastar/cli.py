"""Command-line front end.

Exit codes: 0 success or identity holds, 1 property violated (a witness is
printed), 2 usage or input error, 3 resource cap or inconclusive bounded
search.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path as FilePath

from . import catalog, checkers, fockmodel, follower, io, kgraph, language, projcalc
from .follower import LabeledRankGraph, NotSoficError
from .kgraph import RankGraph
from .language import Language, ResourceLimitError
from .multiword import MultiDegree, StructuralError, format_word, parse_degree, parse_word

log = logging.getLogger("lambdastar")

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- loading


def load_language(spec: str) -> Language:
    if FilePath(spec).exists():
        return io.load_language(spec)
    if spec in catalog.LANGUAGES:
        return catalog.LANGUAGES[spec]()
    raise UsageError(f"no spec file or built-in language named {spec!r}")


def load_kgraph(spec: str) -> RankGraph:
    if FilePath(spec).exists():
        data = io.read_data(spec)
        if "squares" in data or not any("letter" in e for e in data.get("edges", [])):
            return RankGraph.from_json(data)
        return LabeledRankGraph.from_json(data).to_rank_graph()
    if spec in catalog.KGRAPHS:
        return catalog.KGRAPHS[spec]()
    raise UsageError(f"no k-graph file or built-in k-graph named {spec!r}")


def load_labeled(spec: str, args) -> tuple[Language | None, LabeledRankGraph]:
    """A labeled graph file, or the follower graph of a language spec."""
    if FilePath(spec).exists():
        data = io.read_data(spec)
        if "vertices" in data and "edges" in data:
            return None, LabeledRankGraph.from_json(data)
    if spec == "threeclass":
        return None, catalog.three_class_graph()
    L = load_language(spec)
    return L, follower.follower_graph(L, args.max_level_for(L))


def colors_arg(text: str | None, rank: int) -> list[int]:
    if text is None:
        return list(range(1, rank + 1))
    try:
        out = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"bad color list {text!r}") from None
    if not out or any(not 1 <= c <= rank for c in out):
        raise UsageError(f"colors must be a nonempty subset of 1..{rank}")
    return out


def degree_arg(text: str | None, rank: int, default: int | None = None) -> MultiDegree:
    if text is None:
        if default is None:
            raise UsageError("a --bound is required")
        return MultiDegree.constant(rank, default)
    return parse_degree(text, rank)


# ---------------------------------------------------------------- output


def emit(args, payload, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def word_list(ws) -> list[str]:
    return [format_word(w) for w in ws]


def vertex_name(G: LabeledRankGraph, v: int) -> str:
    rep = G.representatives[v]
    return G.vertices[v] if rep is None else f"[{format_word(rep)}]"


# ---------------------------------------------------------------- language commands


def cmd_member(args) -> int:
    L = load_language(args.spec)
    w = parse_word(args.word, L.alphabet)
    ok = L.member(w)
    emit(args, {"word": format_word(w), "member": ok}, "true" if ok else "false")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    L = load_language(args.spec)
    bound = degree_arg(args.bound, L.rank)
    ws = language.enumerate_words(L, bound, max_words=args.cap)
    emit(args, {"bound": str(bound), "count": len(ws), "words": word_list(ws)}, "\n".join(word_list(ws)))
    return EXIT_OK


def _violations(vs) -> list[dict]:
    return [{"kind": v.kind, "message": v.message} for v in vs]


def cmd_validate(args) -> int:
    L = load_language(args.spec)
    bound = None if args.bound is None else degree_arg(args.bound, L.rank)
    vs = language.validate(L, bound)
    emit(args, {"violations": _violations(vs)}, "\n".join(v.message for v in vs) or "ok")
    return EXIT_VIOLATED if vs else EXIT_OK


def cmd_projection(args) -> int:
    L = load_language(args.spec)
    P = language.projection(L, args.coordinate)
    out = {"coordinate": args.coordinate, "alphabet": list(P.alphabet)}
    if P.forbidden is not None:
        out["forbidden"] = word_list(P.forbidden)
    if args.bound is not None:
        out["words"] = word_list(language.enumerate_words(P, degree_arg(args.bound, 1), max_words=args.cap))
    emit(args, out)
    return EXIT_OK


def _verdict(v) -> dict:
    w = v.witness
    if isinstance(w, tuple):
        w = [format_word(x) if hasattr(x, "coords") else x for x in w]
    elif hasattr(w, "coords"):
        w = format_word(w)
    return {"status": v.status, "witness": w}


def cmd_product(args) -> int:
    L = load_language(args.spec)
    bound = degree_arg(args.bound, L.rank, 2)
    v = language.is_product(L, bound, args.max_level_for(L))
    emit(args, _verdict(v))
    return {"product": EXIT_OK, "not-product": EXIT_VIOLATED}.get(v.status, EXIT_CAP)


def cmd_subshift(args) -> int:
    L = load_language(args.spec)
    bound = degree_arg(args.bound, L.rank, 2)
    horizon = args.max_level_for(L) or bound
    v = language.is_subshift_language(L, horizon, bound)
    emit(args, _verdict(v))
    return {"yes": EXIT_OK, "no": EXIT_VIOLATED}.get(v.status, EXIT_CAP)


def cmd_sofic(args) -> int:
    L = load_language(args.spec)
    v = follower.is_sofic(L, args.max_level_for(L))
    out = {"status": v.status, "size": v.data.get("size")}
    if "level" in v.data:
        out["level"] = str(v.data["level"])
    if "sizes" in v.data:
        out["sizes"] = [[str(n), k] for n, k in v.data["sizes"]]
    emit(args, out)
    return EXIT_OK if v else EXIT_CAP


def cmd_follower_graph(args) -> int:
    L = load_language(args.spec)
    G = follower.follower_graph(L, args.max_level_for(L))
    if args.output:
        io.write_text(args.output, G.dumps() + "\n")
    if args.dot:
        io.write_text(args.dot, G.to_dot())
    if not args.output:
        sys.stdout.write(G.to_dot() if args.format == "dot" else G.dumps() + "\n")
    return EXIT_OK


def cmd_quantized(args) -> int:
    L, G = load_labeled(args.spec, args)
    mu = parse_word(args.word, G.alphabet)
    M = follower.quantized_dynamics(G, mu)
    names = [vertex_name(G, v) for v in range(len(G))]
    emit(args, {"word": format_word(mu), "vertices": names, "matrix": M.tolist()})
    return EXIT_OK


# ---------------------------------------------------------------- k-graph commands


def cmd_validate_kgraph(args) -> int:
    G = load_kgraph(args.graph)
    vs = kgraph.validate_kgraph(G)
    emit(args, {"violations": _violations(vs)}, "\n".join(v.message for v in vs) or "ok")
    return EXIT_VIOLATED if vs else EXIT_OK


def cmd_paths(args) -> int:
    G = load_kgraph(args.graph)
    v = G.vertex(args.vertex)
    d = degree_arg(args.degree, G.rank)
    ps = G.paths_below(v, d) if args.below else G.paths(v, d)
    emit(args, {"paths": [G.format_path(p) for p in ps]}, "\n".join(G.format_path(p) for p in ps))
    return EXIT_OK


def cmd_lambda_min(args) -> int:
    G = load_kgraph(args.graph)
    lam, mu = G.parse_path(args.lhs), G.parse_path(args.rhs)
    pairs = kgraph.lambda_min(G, lam, mu)
    emit(args, {"count": len(pairs), "pairs": [[G.format_path(a), G.format_path(b)] for a, b in pairs]})
    return EXIT_OK


def cmd_strong_alignment(args) -> int:
    G = load_kgraph(args.graph)
    n, hits = kgraph.strong_alignment_census(G, G.parse_path(args.path), args.color)
    emit(args, {"count": n, "edges": hits})
    return EXIT_OK


def cmd_exhaustive(args) -> int:
    G = load_kgraph(args.graph)
    S = [G.parse_path(x) for x in args.set.split(";") if x.strip()]
    v = kgraph.is_exhaustive(G, args.vertex, S, degree_arg(args.bound, G.rank, 2))
    w = None if v.witness is None else G.format_path(v.witness)
    emit(args, {"status": v.status, "witness": w})
    return {"yes": EXIT_OK, "no": EXIT_VIOLATED}.get(v.status, EXIT_CAP)


def cmd_f_tracing(args) -> int:
    G = load_kgraph(args.graph)
    F = colors_arg(args.colors, G.rank)
    vs = sorted(kgraph.f_tracing(G, F))
    emit(args, {"colors": F, "vertices": [G.vertices[v] for v in vs]})
    return EXIT_OK


def cmd_cnp(args) -> int:
    G = load_kgraph(args.graph)
    F = colors_arg(args.colors, G.rank)
    rep = projcalc.cnp_check(G, args.vertex, F)
    diff = rep.expanded - rep.alternating
    payload = {
        "vertex": G.vertices[rep.vertex],
        "colors": F,
        "ck_prime": rep.expanded.format(),
        "alternating": rep.alternating.format(),
        "difference": diff.format(),
        "formal_equal": rep.formal_equal,
        "evaluation_equal": rep.evaluation_equal,
        "f_tracing": rep.f_tracing,
        "table": [[G.format_path(nu), a, b] for nu, a, b in rep.table],
    }
    lines = [
        f"(CK') expansion: {payload['ck_prime']}",
        f"alternating sum: {payload['alternating']}",
        f"difference:      {payload['difference']}",
        "evaluation table (nu, ck', alternating):",
    ] + [f"  {n} {a} {b}" for n, a, b in payload["table"]]
    emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.holds else EXIT_VIOLATED


# ---------------------------------------------------------------- checkers and Fock


def cmd_ideals(args) -> int:
    L, G = load_labeled(args.spec, args)
    F = colors_arg(args.colors, G.rank)
    name = lambda ideal: [vertex_name(G, v) for v in sorted(ideal.vertices)]
    payload = {
        "colors": F,
        "ker_phi": name(checkers.ker_phi(G, F)),
        "J": name(checkers.j_ideal(G, F)),
        "I": name(checkers.i_ideal(G, F)),
        "Q_annihilator": name(checkers.q_annihilator(G, F)),
        "Q_in_A": checkers.q_in_A(G, F),
    }
    if L is not None:
        payload["dichotomy"] = checkers.dichotomy_report(L, G, F, _search_bound(L)).as_dict()
    emit(args, payload)
    return EXIT_OK


def _search_bound(L: Language):
    return L.source.max_multilength(L.rank) if L.forbidden is not None else None


def cmd_dichotomy(args) -> int:
    L, G = load_labeled(args.spec, args)
    if L is None:
        raise UsageError("dichotomy needs a language spec")
    subsets = [colors_arg(args.colors, G.rank)] if args.colors else [list(F) for F in projcalc.nonempty_subsets(G.rank)]
    reports = [checkers.dichotomy_report(L, G, F, _search_bound(L)).as_dict() for F in subsets]
    emit(args, {"reports": reports})
    return EXIT_OK


def cmd_cross_check(args) -> int:
    L = load_language(args.spec)
    bound = degree_arg(args.bound, L.rank, 3)
    G = io.load_labeled_graph(args.graph) if args.graph else follower.follower_graph(L, args.max_level_for(L))
    space = fockmodel.FockSpace(L, bound)
    fam = fockmodel.cross_check_family(space, G)
    nica = fockmodel.check_nica_bulk(space)
    payload = {
        "dimension": space.dim,
        "family": fam.as_dict(),
        "nica": {"pairs": nica.pairs, "failures": nica.failures[:20]},
    }
    emit(args, payload)
    return EXIT_OK if fam.holds() and nica.holds else EXIT_VIOLATED


def cmd_export(args) -> int:
    data = io.read_data(args.graph) if FilePath(args.graph).exists() else {}
    if "squares" in data:
        G = RankGraph.from_json(data)
    elif args.graph in catalog.KGRAPHS:
        G = catalog.KGRAPHS[args.graph]()
    else:
        _, G = load_labeled(args.graph, args)
    text = G.to_dot() if args.format == "dot" else G.dumps() + "\n"
    if args.output:
        io.write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_acceptance(args) -> int:
    from .acceptance import run_all

    results = run_all(seed=args.seed, only=args.criterion)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", help="multidegree bound, e.g. 2,2")
    common.add_argument("--max-level", help="largest level tried when certifying soficity")
    common.add_argument("--format", choices=["json", "text", "dot"], default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--cap", type=int, default=2_000_000, help="maximum number of enumerated words")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="lambdastar", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("member", cmd_member, "membership of a multi-word")
    sp.add_argument("spec")
    sp.add_argument("word")
    add("enumerate", cmd_enumerate, "members up to --bound").add_argument("spec")
    add("validate", cmd_validate, "check a language spec").add_argument("spec")
    sp = add("projection", cmd_projection, "rank-one projection to a coordinate")
    sp.add_argument("spec")
    sp.add_argument("--coordinate", type=int, required=True)
    add("product-decompose", cmd_product, "is the language a product of rank-one languages").add_argument("spec")
    add("subshift-check", cmd_subshift, "two-sided extendability").add_argument("spec")
    add("sofic", cmd_sofic, "certify soficity").add_argument("spec")
    sp = add("follower-graph", cmd_follower_graph, "build the follower set graph")
    sp.add_argument("spec")
    sp.add_argument("-o", "--output")
    sp.add_argument("--dot")
    sp = add("quantized-dynamics", cmd_quantized, "the 0/1 matrix of alpha_mu")
    sp.add_argument("spec")
    sp.add_argument("word")
    add("validate-kgraph", cmd_validate_kgraph, "check the factorization property").add_argument("graph")
    sp = add("paths", cmd_paths, "paths with range --vertex and degree --degree")
    sp.add_argument("graph")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--degree", required=True)
    sp.add_argument("--below", action="store_true", help="all degrees up to --degree")
    sp = add("lambda-min", cmd_lambda_min, "minimal common extensions")
    sp.add_argument("graph")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp = add("strong-alignment", cmd_strong_alignment, "edges of one color meeting a path")
    sp.add_argument("graph")
    sp.add_argument("--path", required=True)
    sp.add_argument("--color", type=int, required=True)
    sp = add("exhaustive", cmd_exhaustive, "exhaustiveness of a finite set at a vertex")
    sp.add_argument("graph")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--set", required=True, help="paths separated by ';'")
    sp = add("f-tracing", cmd_f_tracing, "F-tracing vertices")
    sp.add_argument("graph")
    sp.add_argument("--colors")
    sp = add("cnp-check", cmd_cnp, "compare the (CK') product with the alternating sum")
    sp.add_argument("graph")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--colors")
    sp = add("ideals", cmd_ideals, "ker phi, J_F, I_F and Q_F data")
    sp.add_argument("spec")
    sp.add_argument("--colors")
    sp = add("dichotomy", cmd_dichotomy, "blocking-word dichotomy clauses")
    sp.add_argument("spec")
    sp.add_argument("--colors")
    sp = add("cross-check", cmd_cross_check, "Fock-space verification of the relations")
    sp.add_argument("spec")
    sp.add_argument("--graph")
    sp = add("export", cmd_export, "write a graph as JSON or DOT")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output")
    sp = add("acceptance", cmd_acceptance, "run the acceptance criteria")
    sp.add_argument("--criterion", type=int, action="append", help="run only these criteria")
    return p


def _protect_words(argv: list[str]) -> list[str]:
    """Move multi-words such as "-|2" behind "--" so they are not read as flags."""
    words = [a for a in argv if a.startswith("-|") or a == "-"]
    if not words or "--" in argv:
        return argv
    return [a for a in argv if a not in words] + ["--"] + words


def run(argv=None) -> int:
    parser = build_parser()
    argv = _protect_words(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    def max_level_for(L):
        return None if args.max_level is None else parse_degree(args.max_level, L.rank)

    args.max_level_for = max_level_for
    try:
        return args.func(args)
    except (ResourceLimitError, NotSoficError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, StructuralError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
