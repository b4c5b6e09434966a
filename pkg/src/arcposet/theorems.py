"""Reproducible checks of the structural results on arc-diagram posets.

Each ``check_*`` function builds both sides of a claim from separate code
paths (native arc moves against rook cover criteria, direct enumeration
against recurrences) and returns a :class:`CheckReport`.  A failing report
always carries a concrete witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, Callable

from . import arc_diagrams as ad
from . import poset_core as pc
from . import qstirling as qs
from . import rook_monoid as rm
from .arc_diagrams import ArcDiagram
from .poset_core import FinitePoset
from .rook_monoid import Rook

__all__ = [
    "CheckReport", "arc_poset", "stirling_poset", "special_diagrams", "permutation_poset",
    "check_phi_isomorphism", "check_grading", "check_stirling_poset", "check_boolean",
    "check_intervals", "check_idempotent_strata", "lattice_survey", "check_length_formulas",
    "check_statistics", "check_cover_oracle", "check_drop_first", "check_q_identities",
    "THEOREMS", "run_theorem", "run_all",
]


@dataclass
class CheckReport:
    theorem: str
    params: dict[str, int]
    verdict: str
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "params": dict(self.params), "verdict": self.verdict,
                "witness": self.witness, "details": self.details}


def _report(theorem: str, params: dict, witness: Any = None, **details) -> CheckReport:
    return CheckReport(theorem, params, "fail" if witness is not None else "pass", witness, details)


def _bound(name: str, n: int, lo: int, hi: int) -> None:
    if not lo <= n <= hi:
        raise ValueError(f"{name}: n={n} outside {lo}..{hi}")


# --- posets built from native arc moves -----------------------------------------

@lru_cache(maxsize=None)
def arc_poset(n: int, cover_fn: Callable[[ArcDiagram], set] = ad.covers_up) -> FinitePoset:
    """All arc-diagrams on ``n`` vertices ordered by the native cover moves."""
    els = sorted(ad.enumerate_diagrams(n), key=lambda a: (ad.t_index(a), rm.phi(a).a))
    index = {a: i for i, a in enumerate(els)}
    edges = [(i, index[b]) for i, a in enumerate(els) for b in cover_fn(a)]
    return FinitePoset.from_covers(els, edges, labels=[str(a) for a in els])


@lru_cache(maxsize=None)
def stirling_poset(n: int, k: int) -> FinitePoset:
    """Induced subposet of diagrams with exactly ``k`` arcs."""
    P = arc_poset(n)
    return P.induced([i for i, a in enumerate(P.elements) if a.k == k])


def special_diagrams(n: int) -> tuple[ArcDiagram, ArcDiagram, ArcDiagram, ArcDiagram]:
    """``(X, Y, Z, W)`` on ``2n`` vertices: nested block, parallel block, empty, single chain."""
    if n < 1:
        raise ValueError("n must be positive")
    zeros = (0,) * n
    x = rm.phi_inv(Rook(zeros + tuple(range(n, 0, -1))))
    y = rm.phi_inv(Rook(zeros + tuple(range(1, n + 1))))
    z = rm.phi_inv(Rook((0,) * (2 * n)))
    w = rm.phi_inv(Rook((0,) + tuple(range(1, n + 1)) + (0,) * (n - 1)))
    return x, y, z, w


def permutation_poset(n: int) -> FinitePoset:
    """Bruhat order on ``S_n`` from transposition covers, independent of rook code."""
    perms = sorted(itertools.permutations(range(1, n + 1)),
                   key=lambda w: (sum(w[i] > w[j] for i in range(n) for j in range(i + 1, n)), w))
    index = {w: i for i, w in enumerate(perms)}
    edges = []
    for w in perms:
        for i in range(n):
            for j in range(i + 1, n):
                if w[i] < w[j] and not any(w[i] < w[s] < w[j] for s in range(i + 1, j)):
                    v = list(w)
                    v[i], v[j] = v[j], v[i]
                    edges.append((index[w], index[tuple(v)]))
    return FinitePoset.from_covers(perms, edges, labels=[str(w) for w in perms])


def _brute_force_rook_count(n: int) -> int:
    return sum(1 for a in itertools.product(range(n + 1), repeat=n)
               if len([v for v in a if v]) == len({v for v in a if v}))


def _labels(P: FinitePoset, idxs) -> list[str]:
    return [P.labels[i] for i in idxs]


# --- checks -----------------------------------------------------------------------

def check_phi_isomorphism(n: int, arc_covers: Callable[[ArcDiagram], set] = ad.covers_up) -> CheckReport:
    """Native arc covers against rook covers pulled back through phi, edge for edge."""
    _bound("phi-isomorphism", n, 1, 6)
    params = {"n": n}
    diagrams = list(ad.enumerate_diagrams(n))
    images = {rm.phi(a) for a in diagrams}
    if images != set(rm.enumerate_universe("Bnil", n)) or len(images) != len(diagrams):
        return _report("phi-isomorphism", params, {"reason": "phi is not a bijection onto strictly upper rooks"})
    edges = 0
    for a in diagrams:
        if rm.phi_inv(rm.phi(a)) != a:
            return _report("phi-isomorphism", params, {"reason": "phi_inv does not invert phi", "diagram": str(a)})
        native = {rm.phi(b) for b in arc_covers(a)}
        rook = rm.covers_up(rm.phi(a), "Bnil")
        if native != rook:
            return _report("phi-isomorphism", params, {
                "diagram": str(a),
                "arc_only": sorted(str(rm.phi_inv(x)) for x in native - rook),
                "rook_only": sorted(str(rm.phi_inv(x)) for x in rook - native)})
        edges += len(native)
    return _report("phi-isomorphism", params, elements=len(diagrams), cover_edges=edges)


def check_grading(n: int) -> CheckReport:
    _bound("grading", n, 1, 6)
    params = {"n": n}
    P = arc_poset(n)
    mins, maxs = P.minimal(), P.maximal()
    empty = ArcDiagram(n)
    full = ArcDiagram(n, tuple((i, i + 1) for i in range(1, n)))
    if [P.elements[i] for i in mins] != [empty] or [P.elements[i] for i in maxs] != [full]:
        return _report("grading", params, {"minimal": _labels(P, mins), "maximal": _labels(P, maxs)})
    g = pc.check_rank_function(P, ad.t_index)
    if not g:
        lo, hi = g.witness["cover"]
        return _report("grading", params, {"cover": [P.labels[lo], P.labels[hi]], "t": g.witness["ranks"]})
    if ad.t_index(empty) != 0 or ad.t_index(full) != comb(n, 2):
        return _report("grading", params, {"reason": "extreme ranks", "top": ad.t_index(full)})
    hist: dict[int, int] = {}
    for t in g.rank.values():
        hist[t] = hist.get(t, 0) + 1
    return _report("grading", params, elements=len(P), top_rank=comb(n, 2),
                   rank_sizes=[hist[t] for t in sorted(hist)])


def check_stirling_poset(n: int, k: int) -> CheckReport:
    """Size, unique minimum, maxima from idempotents, grading and gap laws for ``k`` arcs."""
    _bound("stirling-poset", n, 1, 7)
    params = {"n": n, "k": k}
    if not 0 <= k <= n - 1:
        raise ValueError("need 0 <= k <= n-1")
    S = stirling_poset(n, k)
    if len(S) != ad.stirling2(n, n - k):
        return _report("stirling-poset", params, {"size": len(S), "expected": ad.stirling2(n, n - k)})
    mins = [S.elements[i] for i in S.minimal()]
    expected_min = rm.phi_inv(rm.lift(rm.min_of_P(n - 1, k)))
    if mins != [expected_min] or ad.t_index(expected_min) != k * (k + 1) // 2:
        return _report("stirling-poset", params, {"minimal": [str(a) for a in mins], "expected": str(expected_min)})
    maxs = {S.elements[i] for i in S.maximal()}
    expected_max = {rm.phi_inv(rm.lift(e)) for e in rm.enumerate_universe("Ek", n - 1, k)}
    top = rm.idempotent_length(n - 1, k)
    if maxs != expected_max or len(maxs) != comb(n - 1, k) or any(ad.t_index(a) != top for a in maxs):
        return _report("stirling-poset", params, {"maximal": sorted(map(str, maxs)),
                                                  "expected": sorted(map(str, expected_max))})
    g = pc.check_rank_function(S, ad.t_index)
    if not g:
        lo, hi = g.witness["cover"]
        return _report("stirling-poset", params, {"cover": [S.labels[lo], S.labels[hi]], "t": g.witness["ranks"]})
    gaps = {}
    if k >= 1:
        prev_top = rm.idempotent_length(n - 1, k - 1)
        prev_bottom = (k - 1) * k // 2
        gaps = {"max_gap": top - prev_top, "min_gap": k * (k + 1) // 2 - prev_bottom}
        if gaps != {"max_gap": n - k, "min_gap": k}:
            return _report("stirling-poset", params, {"gaps": gaps, "expected": {"max_gap": n - k, "min_gap": k}})
    return _report("stirling-poset", params, elements=len(S), maxima=len(maxs),
                   min_t=k * (k + 1) // 2, max_t=top, **gaps)


def check_boolean(n: int) -> CheckReport:
    """Diagrams with two chains against the boolean lattice on ``n-1`` atoms minus its top."""
    _bound("boolean", n, 3, 7)
    params = {"n": n}
    S = stirling_poset(n, n - 2)
    B = pc.boolean_lattice(n - 1, drop_top=True)
    psi = [rm.fixed_points(rm.drop_first(rm.phi(a))) for a in S.elements]
    target = {e: i for i, e in enumerate(B.elements)}
    if sorted(map(sorted, psi)) != sorted(map(sorted, target)) or len(set(psi)) != len(psi):
        return _report("boolean", params, {"reason": "fixed-point map is not a bijection onto proper subsets"})
    mapped = {(target[psi[lo]], target[psi[hi]]) for lo, hi in S.covers}
    if mapped != set(B.covers):
        bad = sorted(mapped ^ set(B.covers))[0]
        return _report("boolean", params, {"cover": [B.labels[bad[0]], B.labels[bad[1]]]})
    if not pc.are_isomorphic(S, B):
        return _report("boolean", params, {"reason": "no isomorphism found by search"})
    return _report("boolean", params, elements=len(S), bottom_image=sorted(psi[S.minimal()[0]]))


def check_intervals(n: int) -> CheckReport:
    _bound("intervals", n, 1, 3)
    params = {"n": n}
    A = arc_poset(2 * n)
    x, y, z, w = (A.index(d) for d in special_diagrams(n))
    r_count = _brute_force_rook_count(n)
    R = rm.generator_closure("R", n)
    if len(R) != r_count:
        return _report("intervals", params, {"reason": "rook enumeration disagrees with brute force",
                                             "enumerated": len(R), "brute_force": r_count})
    pairs = {"YX~S": (y, x, permutation_poset(n)),
             "ZY~B": (z, y, rm.generator_closure("B", n)),
             "ZX~R": (z, x, R)}
    sizes = {}
    for name, (lo, hi, target) in pairs.items():
        I = A.interval(lo, hi)
        sizes[name] = len(I)
        if not pc.are_isomorphic(I, target):
            return _report("intervals", params, {"interval": name, "size": len(I), "target_size": len(target)})
    I4 = A.interval(y, w)
    g = pc.is_graded(I4)
    rank_length = max(g.rank.values()) if g else None
    if not (g and len(I4.minimal()) == 1 and len(I4.maximal()) == 1 and rank_length == n * (n - 1)):
        return _report("intervals", params, {"interval": "YW", "graded": bool(g), "rank_length": rank_length})
    sizes["YW"] = len(I4)
    return _report("intervals", params, sizes=sizes, yw_rank_length=rank_length)


def check_idempotent_strata(n: int) -> CheckReport:
    _bound("idempotent-strata", n, 1, 7)
    params = {"n": n}
    B = rm.universe_poset("B", n)
    for lo, hi in B.covers:
        if B.elements[lo].rank > B.elements[hi].rank:
            return _report("idempotent-strata", params, {"reason": "rank drops", "cover": [B.labels[lo], B.labels[hi]]})
    E = rm.enumerate_universe("E", n)
    for e, f in itertools.product(E, repeat=2):
        if rm.bruhat_leq_oracle(e, f) != rm.idempotent_leq(e, f):
            return _report("idempotent-strata", params, {"pair": [str(e), str(f)], "reason": "idempotent order mismatch"})
    strata = []
    for k in range(n + 1):
        Ek = [e for e in E if e.rank == k]
        for e in Ek:
            if rm.length(e) != rm.idempotent_length(n, k):
                return _report("idempotent-strata", params, {"idempotent": str(e), "length": rm.length(e)})
        P = rm.universe_poset("P", n, k)
        if len(P) != ad.stirling2(n + 1, n + 1 - k):
            return _report("idempotent-strata", params, {"k": k, "size": len(P),
                                                         "expected": ad.stirling2(n + 1, n + 1 - k)})
        e0 = rm.min_of_P(n, k)
        mins = [P.elements[i] for i in P.minimal()]
        maxs = {P.elements[i] for i in P.maximal()}
        if mins != [e0] or maxs != set(Ek) or len(maxs) != comb(n, k):
            return _report("idempotent-strata", params, {"k": k, "minimal": [str(m) for m in mins],
                                                         "maximal": sorted(map(str, maxs))})
        g = pc.check_rank_function(P, rm.length)
        if not g:
            lo, hi = g.witness["cover"]
            return _report("idempotent-strata", params, {"k": k, "cover": [P.labels[lo], P.labels[hi]]})
        lengths = set()
        for e in Ek:
            inside = {P.elements[i] for i in P.interval_indices(P.index(e0), P.index(e))}
            ambient = {B.elements[i] for i in B.interval_indices(B.index(e0), B.index(e))}
            if inside != ambient:
                return _report("idempotent-strata", params, {"k": k, "interval_top": str(e),
                                                             "reason": "maximal interval is not an interval of B"})
            lengths.add(rm.length(e) - rm.length(e0))
        if len(lengths) != 1:
            return _report("idempotent-strata", params, {"k": k, "interval_lengths": sorted(lengths)})
        strata.append(len(P))
    return _report("idempotent-strata", params, strata_sizes=strata)


def lattice_survey(n: int) -> CheckReport:
    """Census of lattice and non-lattice intervals across all Stirling posets on ``n`` vertices."""
    _bound("lattice-survey", n, 1, 6)
    params = {"n": n}
    census = []
    found = []
    for k in range(n):
        S = stirling_poset(n, k)
        total = bad = 0
        for lo, hi in sorted(S.comparable_pairs()):
            total += 1
            I = S.interval(lo, hi)
            if not pc.is_lattice(I)[0]:
                bad += 1
                g = pc.is_graded(I)
                found.append({"k": k, "bottom": S.labels[lo], "top": S.labels[hi], "size": len(I),
                              "rank": max(g.rank.values()) if g else None,
                              "maximal": lo in S.minimal() and hi in S.maximal()})
        census.append({"k": k, "intervals": total, "non_lattice": bad})
    witness = None
    if n <= 4 and found:
        witness = {"unexpected_non_lattice": found[0]}
    elif n == 5 and not found:
        witness = {"reason": "no non-lattice interval at n=5"}
    return _report("lattice-survey", params, witness, census=census, non_lattice=found)


def check_length_formulas(n: int) -> CheckReport:
    _bound("length-formulas", n, 1, 7)
    params = {"n": n}
    for x in rm.enumerate_universe("R", n):
        if rm.length(x) != rm.length_via_coinv(x):
            return _report("length-formulas", params, {"rook": str(x), "sum_inv": rm.length(x),
                                                       "coinv": rm.length_via_coinv(x)})
    for w in itertools.permutations(range(1, n + 1)):
        if rm.length(w) != comb(n + 1, 2) + rm.inversions(w):
            return _report("length-formulas", params, {"permutation": list(w)})
    return _report("length-formulas", params, rooks=len(rm.enumerate_universe("R", n)))


def check_statistics(n: int) -> CheckReport:
    """Depth-index equals crossing-index, the cross/depth balance, and depth-index equals rook length."""
    _bound("statistics", n, 1, 8)
    params = {"n": n}
    count = 0
    for a in ad.enumerate_diagrams(n):
        count += 1
        t, c = ad.t_index(a), ad.c_index(a)
        lhs = sum(ad.cross_arc(a, x) for x in a.arcs)
        rhs = (sum(ad.depth_vertex(a, v) for v in range(1, n + 1))
               - sum(ad.depth_arc(a, x) for x in a.arcs)
               - sum(ad.depth_chain(a, ch) for ch in a.chains))
        ell = rm.length(rm.phi(a))
        if not (t == c and lhs == rhs and t == ell):
            return _report("statistics", params, {"diagram": str(a), "t": t, "c": c, "cross": lhs,
                                                  "depth_balance": rhs, "length": ell})
    return _report("statistics", params, diagrams=count)


def check_cover_oracle(kind: str, n: int) -> CheckReport:
    """Cover criteria against the transitive reduction of the generator closure."""
    _bound("cover-oracle", n, 1, 5 if kind == "R" else 6)
    params = {"n": n}
    P = rm.generator_closure(kind, n)
    lemma = set()
    for i, x in enumerate(P.elements):
        for y in rm.covers_up(x, kind):
            if rm.length(y) != rm.length(x) + 1:
                return _report(f"cover-oracle-{kind}", params, {"cover": [str(x), str(y)], "reason": "length step"})
            lemma.add((i, P.index(y)))
    if lemma != set(P.covers):
        bad = sorted(lemma ^ set(P.covers))[0]
        return _report(f"cover-oracle-{kind}", params, {"edge": [P.labels[bad[0]], P.labels[bad[1]]]})
    return _report(f"cover-oracle-{kind}", params, elements=len(P), covers=len(P.covers))


def check_drop_first(n: int) -> CheckReport:
    _bound("drop-first", n, 1, 7)
    params = {"n": n}
    N = rm.generator_closure("Bnil", n)
    B = rm.generator_closure("B", n - 1)
    image = [rm.drop_first(x) for x in N.elements]
    if sorted(x.a for x in image) != sorted(x.a for x in B.elements):
        return _report("drop-first", params, {"reason": "not a bijection"})
    for x, y in zip(N.elements, image):
        if rm.length(x) != rm.length(y):
            return _report("drop-first", params, {"rook": str(x), "reason": "length changed"})
    mapped = {(B.index(image[lo]), B.index(image[hi])) for lo, hi in N.covers}
    if mapped != set(B.covers):
        bad = sorted(mapped ^ set(B.covers))[0]
        return _report("drop-first", params, {"edge": [B.labels[bad[0]], B.labels[bad[1]]]})
    return _report("drop-first", params, elements=len(N))


def check_q_identities(n_max: int) -> CheckReport:
    _bound("q-identities", n_max, 1, 8)
    records = qs.verify_identities(n_max)
    failed = next((r for r in records if r["failure"] is not None), None)
    return _report("q-identities", {"nmax": n_max}, failed,
                   identities={r["identity"]: r["checked"] for r in records})


# --- orchestration ------------------------------------------------------------------

def _sweep(fn, lo: int, hi: int):
    return [fn(n) for n in range(lo, hi + 1)]


THEOREMS: dict[str, Callable[[int], list[CheckReport]]] = {
    "length-formulas": lambda m: _sweep(check_length_formulas, 1, min(m, 6)),
    "statistics": lambda m: _sweep(check_statistics, 1, min(m, 8)),
    "cover-oracle": lambda m: (_sweep(lambda n: check_cover_oracle("R", n), 1, min(m, 5))
                               + _sweep(lambda n: check_cover_oracle("Bnil", n), 1, min(m, 6))),
    "drop-first": lambda m: _sweep(check_drop_first, 1, min(m, 7)),
    "phi-isomorphism": lambda m: _sweep(check_phi_isomorphism, 1, min(m, 6)),
    "grading": lambda m: _sweep(check_grading, 1, min(m, 6)),
    "stirling-poset": lambda m: [check_stirling_poset(n, k) for n in range(1, min(m, 7) + 1) for k in range(n)],
    "boolean": lambda m: _sweep(check_boolean, 3, min(m, 7)),
    "intervals": lambda m: _sweep(check_intervals, 1, min(3, max(1, m // 2))),
    "idempotent-strata": lambda m: _sweep(check_idempotent_strata, 1, min(m, 7)),
    "lattice-survey": lambda m: _sweep(lattice_survey, 1, min(m, 6)),
    "q-identities": lambda m: [check_q_identities(min(m, 8))],
}


def run_theorem(theorem: str, nmax: int) -> list[CheckReport]:
    if theorem not in THEOREMS:
        raise KeyError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    return THEOREMS[theorem](nmax)


def run_all(nmax: int) -> list[CheckReport]:
    return [r for name in THEOREMS for r in run_theorem(name, nmax)]
