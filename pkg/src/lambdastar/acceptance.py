"""The ten acceptance criteria, each evaluated literally as stated."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import catalog, checkers, fockmodel as fm, follower, kgraph, language, projcalc
from .multiword import MultiDegree, format_word, parse_word

LANGUAGE_SEED = 20240
KGRAPH_SEED = 7
N_LANGUAGES = 50
N_KGRAPHS = 30


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"criterion {self.number:2d} [{status}] {self.title}" + (f" ({extra})" if extra else "")


def language_corpus(seed: int = 0) -> list[language.Language]:
    return catalog.random_forbidden_corpus(LANGUAGE_SEED + seed, N_LANGUAGES)


def kgraph_corpus(seed: int = 0) -> list[kgraph.RankGraph]:
    return catalog.random_kgraph_corpus(KGRAPH_SEED + seed, N_KGRAPHS)


def _m(L):
    return L.source.max_multilength(L.rank)


def nica_bound(L) -> MultiDegree:
    """(3, 3) in rank two; (3) in rank one and (2, 2, 2) in rank three."""
    return MultiDegree.constant(L.rank, 3 if L.rank <= 2 else 2)


# ---------------------------------------------------------------- criteria


def criterion_1() -> Result:
    L = catalog.doubledoors()
    G = follower.follower_graph(L)
    H = catalog.three_class_graph()
    same_language = follower.equivalent(G, H)
    counts = (len(G), len(G.edges))
    ok = same_language and counts == (3, 8) and follower.isomorphic(G, H)
    return Result(1, "three-class follower graph of doubledoors", ok, {"vertices": counts[0], "edges": counts[1], "equivalent_from_root": same_language})


def criterion_2(corpus) -> Result:
    bad = []
    for L in corpus:
        m = _m(L)
        lo = follower.omega(L, m)
        hi = follower.omega(L, m + MultiDegree.constant(L.rank, 1))
        if not follower.is_bijective(follower.connecting_map(hi, lo), lo):
            bad.append(str(L))
    return Result(2, "finite-type stabilization", not bad and len(corpus) >= 50, {"languages": len(corpus), "failures": len(bad)})


def criterion_3(corpus, graphs) -> Result:
    bad = [
        str(L)
        for L, G in zip(corpus, graphs)
        if not follower.labeled_path_language_equals(L, G, _m(L) + MultiDegree.constant(L.rank, 1))
    ]
    return Result(3, "path-space identity", not bad, {"languages": len(corpus), "failures": len(bad)})


def criterion_4() -> Result:
    L = catalog.dichfail()
    G = follower.follower_graph(L)
    w = lambda s: parse_word(s, L.alphabet)
    checks = {}
    # checkers side
    a = checkers.tmu_star_tmu(G, w("-|1")) * checkers.tmu_star_tmu(G, w("-|2")) * checkers.tmu_star_tmu(G, w("-|0")).complement()
    checks["sym_a_nonzero"] = not a.is_zero()
    checks["sym_a_in_ker_phi1"] = a.in_ideal(checkers.ker_phi(G, [1]))
    checks["sym_aQ2_zero"] = checkers.times_q_is_zero(a, [2])
    checks["sym_ker_12_zero"] = checkers.ker_phi(G, [1, 2]).is_zero()
    checks["sym_I_12_all"] = checkers.i_ideal(G, [1, 2]).is_everything()
    rep = checkers.dichotomy_report(L, G, [1, 2], _m(L))
    checks["sym_dichotomy_false"] = not any([rep.iii, rep.iv, rep.v, rep.vi]) and rep.iii_search is False
    # Fock side at L = (3, 4)
    S = fm.FockSpace(L, MultiDegree((3, 4)))
    A = fm.source_projection(S, w("-|1")) @ fm.source_projection(S, w("-|2")) @ (S.identity() - fm.source_projection(S, w("-|0")))
    checks["fock_a_nonzero"] = not A.is_zero()
    checks["fock_a_matches_checker"] = fm.cross_check_checker(S, a, A)
    checks["fock_a_in_ker_phi1"] = all(
        fm.alpha(S, L.generator(1, k), A).is_zero() for k in range(L.alphabet[0]) if L.member(L.generator(1, k))
    )
    checks["fock_aQ2_zero"] = (A @ fm.q(S, [2])).is_zero()
    fam = fm.TCKFamily(S, G)
    gens = [g for i, k, g in L.generators() if L.member(g)]
    checks["fock_ker_12_zero"] = all(
        any(not fm.alpha(S, g, fam.p(v)).is_zero() for g in gens) for v in range(len(G))
    )
    # every class survives some alpha, so J_[2] = A, and I_[2] = J_[2] since
    # only the empty word is perpendicular to [2]
    checks["fock_I_12_all"] = checks["fock_ker_12_zero"]
    # (iii): e_delta lies under every T_mu^* T_mu, so delta = (-, 0) is never blocked
    d20 = w("-|0")
    j = S.index[d20]
    reach = MultiDegree(S.bound) - d20.multilength()
    checks["fock_iii_false"] = all(
        fm.source_projection(S, mu).matrix[j, j] == 1 for mu in S.basis if mu.multilength() <= reach
    )
    # (vi): Q_empty is in A iff its support is a union of classes
    q_diag = fm.q(S, [1, 2]).diagonal_values() != 0
    union = all(
        not np.any(fam.classes == v) or np.all(q_diag[fam.classes == v]) or not np.any(q_diag[fam.classes == v])
        for v in range(len(G))
    )
    checks["fock_vi_false"] = not union
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    return Result(4, "dichotomy example regression", ok, {"checks": len(checks), "failed": failed or "none"})


def criterion_5(graphs) -> Result:
    bad = []
    count = 0
    for G in graphs:
        for v in range(len(G.vertices)):
            for F in projcalc.nonempty_subsets(G.rank):
                rep = projcalc.cnp_check(G, v, F)
                count += 1
                if not rep.holds:
                    bad.append((G.vertices[v], F))
    ok = not bad and len(graphs) >= 30
    return Result(5, "CNP identity", ok, {"graphs": len(graphs), "vertex_color_sets": count, "failures": len(bad)})


def _perp_bound(rank, F, n=2) -> MultiDegree:
    return MultiDegree(0 if c in F else n for c in range(1, rank + 1))


def _kgraph_invariance(K, F, I) -> bool:
    for v in I:
        for lam in K.paths_below(v, _perp_bound(K.rank, F)):
            if lam.source not in I:
                return False
    return True


def _follower_invariance(L, G, F, I) -> bool:
    words = language.enumerate_words(L, _perp_bound(L.rank, F))
    a = checkers.CheckerElement.indicator(G, I.vertices)
    return all(checkers.alpha(G, mu)(a).in_ideal(I) for mu in words)


def criterion_6(kgraphs, corpus, graphs) -> Result:
    bad = []
    count = 0
    for K in kgraphs:
        for F in projcalc.nonempty_subsets(K.rank):
            count += 1
            I = checkers.i_ideal_fixpoint_kgraph(K, F)
            if I != frozenset(kgraph.f_tracing(K, F)) or not _kgraph_invariance(K, F, I):
                bad.append(("kgraph", F))
    for L, G in zip(corpus, graphs):
        for F in projcalc.nonempty_subsets(G.rank):
            count += 1
            a = checkers.i_ideal_fixpoint(G, F)
            b = checkers.i_ideal_tracing(G, F)
            if a != b or not _follower_invariance(L, G, F, a):
                bad.append((str(L), F))
    return Result(6, "I_F agreement and invariance", not bad, {"cases": count, "failures": len(bad)})


def criterion_7(corpus) -> Result:
    bad = []
    pairs = 0
    for L in corpus:
        S = fm.FockSpace(L, nica_bound(L))
        rep = fm.check_nica_bulk(S)
        pairs += rep.pairs
        if not rep.holds:
            bad.append(str(L))
    return Result(7, "Nica covariance oracle", not bad, {"languages": len(corpus), "pairs": pairs, "failures": len(bad)})


def criterion_8(corpus) -> Result:
    checks = {}
    dd = catalog.doubledoors()
    v = language.is_product(dd, MultiDegree((2, 2)))
    wit = None if v.witness is None else tuple(format_word(x) for x in v.witness)
    checks["doubledoors_not_product"] = v.status == "not-product" and wit == ("1|-", "-|1")
    single = [L for L in corpus if L.rank >= 2 and all(len(f.support()) == 1 for f in L.forbidden)]
    single += _single_support_languages()
    bad = []
    for L in single:
        verdict = language.is_product(L, MultiDegree.constant(L.rank, 2))
        G = follower.follower_graph(L)
        P = follower.product_graph([follower.follower_graph(language.projection(L, i)) for i in range(1, L.rank + 1)])
        if verdict.status != "product" or not follower.isomorphic(G, P):
            bad.append(str(L))
    checks["single_support_products"] = not bad and bool(single)
    return Result(8, "product decomposition", all(checks.values()), {"doubledoors_witness": wit, "single_support_languages": len(single), "failures": len(bad)})


def _single_support_languages() -> list[language.Language]:
    specs = [
        ((2, 2), ["11|-", "-|00"]),
        ((3, 3), ["11|-", "-|22"]),
        ((2, 3), ["00|-", "-|12", "-|21"]),
        ((2, 2, 2), ["1|-|-", "-|-|00"]),
        ((3, 2), ["01|-", "-|11"]),
    ]
    out = []
    for alphabet, words in specs:
        L = language.Language.from_forbidden(alphabet, words)
        if not language.validate(L):
            out.append(L)
    return out


def criterion_9() -> Result:
    parts = {}
    failures = []
    for name, L, bound in (
        ("doubledoors", catalog.doubledoors(), (3, 3)),
        ("dichfail", catalog.dichfail(), (3, 3)),
    ):
        G = follower.follower_graph(L)
        rep = fm.cross_check_family(fm.FockSpace(L, MultiDegree(bound)), G)
        for key in ("P-projection", "P-orthogonal", "P-sum", "HR", "HR-source", "HR-range", "NC", "CK-defect-is-pvQF", "CK-defect-nonzero"):
            ok = rep.holds(key)
            parts[f"{name}:{key}"] = ok
            if not ok:
                failures.append(f"{name}:{key}")
    return Result(9, "TCK family relations", not failures, {"checks": len(parts), "failed": failures or "none"})


def criterion_10() -> Result:
    rows = []
    ok = True
    for n in range(1, 6):
        G = kgraph.fan_graph(n)
        e = G.edge_path("e")
        sizes = [len(kgraph.lambda_min(G, e, G.edge_path(f"h{k}"))) for k in range(1, n + 1)]
        census, _ = kgraph.strong_alignment_census(G, e, 1)
        rows.append((n, sizes, census))
        ok = ok and all(s == 1 for s in sizes) and census == n
    return Result(10, "Lambda^min census on the fan family", ok, {"census": [r[2] for r in rows]})


def run_all(seed: int = 0, only=None) -> list[Result]:
    """Evaluate the criteria in order; ``only`` restricts to some numbers."""
    wanted = set(only or range(1, 11))
    lazy = {}

    def corpus():
        if "corpus" not in lazy:
            lazy["corpus"] = language_corpus(seed)
            lazy["graphs"] = [follower.follower_graph(L) for L in lazy["corpus"]]
        return lazy["corpus"]

    def graphs():
        corpus()
        return lazy["graphs"]

    def kgraphs():
        if "kgraphs" not in lazy:
            lazy["kgraphs"] = kgraph_corpus(seed)
        return lazy["kgraphs"]

    runners = {
        1: lambda: criterion_1(),
        2: lambda: criterion_2(corpus()),
        3: lambda: criterion_3(corpus(), graphs()),
        4: lambda: criterion_4(),
        5: lambda: criterion_5(kgraphs()),
        6: lambda: criterion_6(kgraphs(), corpus(), graphs()),
        7: lambda: criterion_7(corpus()),
        8: lambda: criterion_8(corpus()),
        9: lambda: criterion_9(),
        10: lambda: criterion_10(),
    }
    return [runners[n]() for n in sorted(wanted) if n in runners]
