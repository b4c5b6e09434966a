"""Finite posets stored as a Hasse diagram over indexed elements.

Elements are opaque payloads with display labels.  Order queries run on
bitset down-sets (Python ints) computed once at construction.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

__all__ = [
    "FinitePoset", "CycleError", "GradingResult", "ELResult",
    "is_graded", "check_rank_function", "is_chain_graded",
    "meet", "join", "is_lattice", "mobius",
    "find_isomorphism", "are_isomorphic", "IsomorphismBudgetExceeded",
    "verify_el_labeling", "to_dot", "to_json", "boolean_lattice", "chain",
]


class CycleError(ValueError):
    pass


class IsomorphismBudgetExceeded(RuntimeError):
    pass


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Indexed elements plus an irredundant cover relation ``(lower, upper)``."""

    def __init__(self, elements: Sequence[Any], down: Sequence[int], labels: Sequence[str] | None = None,
                 covers: Iterable[tuple[int, int]] | None = None):
        # down[i] is the bitset of all j <= i, including i
        self.elements = list(elements)
        self.labels = [str(e) for e in self.elements] if labels is None else list(labels)
        self._down = list(down)
        self._index: dict[Hashable, int] | None = None
        self.covers = self._reduce() if covers is None else tuple(sorted(covers))

    # -- construction ----------------------------------------------------

    @classmethod
    def from_covers(cls, elements: Sequence[Any], covers: Iterable[tuple[int, int]],
                    labels: Sequence[str] | None = None) -> FinitePoset:
        """Order generated by ``covers`` (redundant edges allowed); raises on cycles."""
        m = len(elements)
        preds: list[list[int]] = [[] for _ in range(m)]
        succs: list[list[int]] = [[] for _ in range(m)]
        indeg = [0] * m
        for lo, hi in set(covers):
            if lo == hi:
                raise CycleError(f"loop at {lo}")
            preds[hi].append(lo)
            succs[lo].append(hi)
            indeg[hi] += 1
        queue = deque(i for i in range(m) if indeg[i] == 0)
        down = [1 << i for i in range(m)]
        done = 0
        while queue:
            i = queue.popleft()
            done += 1
            for p in preds[i]:
                down[i] |= down[p]
            for s in succs[i]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    queue.append(s)
        if done != m:
            raise CycleError("cover relation contains a cycle")
        # every cover of the generated order is one of the generating edges
        reduced = []
        for y in range(m):
            below = 0
            for p in preds[y]:
                below |= down[p] & ~(1 << p)
            reduced.extend((p, y) for p in preds[y] if not below >> p & 1)
        return cls(elements, down, labels, reduced)

    def induced(self, members: Sequence[int]) -> FinitePoset:
        """Induced subposet on ``members`` (indices into this poset), in the given order."""
        pos = {old: new for new, old in enumerate(members)}
        down = []
        for old in members:
            mask = 0
            for j in _bits(self._down[old]):
                if j in pos:
                    mask |= 1 << pos[j]
            down.append(mask)
        return FinitePoset([self.elements[i] for i in members], down, [self.labels[i] for i in members])

    def _reduce(self) -> tuple[tuple[int, int], ...]:
        out = []
        for y, dm in enumerate(self._down):
            strict = dm & ~(1 << y)
            below = 0
            for x in _bits(strict):
                below |= self._down[x] & ~(1 << x)
            for x in _bits(strict & ~below):
                out.append((x, y))
        return tuple(sorted(out))

    # -- queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, element: Hashable) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        try:
            return self._index[element]
        except KeyError:
            raise KeyError(f"{element} not in poset") from None

    def down_mask(self, i: int) -> int:
        return self._down[i]

    @cached_property
    def _up(self) -> list[int]:
        up = [0] * len(self)
        for y, dm in enumerate(self._down):
            for x in _bits(dm):
                up[x] |= 1 << y
        return up

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def leq(self, x: int, y: int) -> bool:
        return bool(self._down[y] >> x & 1)

    @cached_property
    def _upper_covers(self) -> list[list[int]]:
        up: list[list[int]] = [[] for _ in range(len(self))]
        for lo, hi in self.covers:
            up[lo].append(hi)
        return up

    @cached_property
    def _lower_covers(self) -> list[list[int]]:
        dn: list[list[int]] = [[] for _ in range(len(self))]
        for lo, hi in self.covers:
            dn[hi].append(lo)
        return dn

    def upper_covers(self, i: int) -> list[int]:
        return self._upper_covers[i]

    def lower_covers(self, i: int) -> list[int]:
        return self._lower_covers[i]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self._lower_covers[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self._upper_covers[i]]

    def interval(self, x: int, y: int) -> FinitePoset:
        """Induced subposet on ``{z : x <= z <= y}``; empty when ``x`` is not below ``y``."""
        mask = self._down[y] & self._up[x]
        return self.induced(list(_bits(mask)))

    def interval_indices(self, x: int, y: int) -> list[int]:
        return list(_bits(self._down[y] & self._up[x]))

    def topological_order(self) -> list[int]:
        return sorted(range(len(self)), key=lambda i: self._down[i].bit_count())

    def comparable_pairs(self) -> Iterable[tuple[int, int]]:
        for y, dm in enumerate(self._down):
            for x in _bits(dm):
                yield x, y


# --- grading ----------------------------------------------------------------

@dataclass
class GradingResult:
    graded: bool
    rank: dict[int, int] = field(default_factory=dict)
    witness: Any = None

    def __bool__(self) -> bool:
        return self.graded


def is_graded(P: FinitePoset) -> GradingResult:
    """Rank 0 on minimal elements and +1 along every cover, or a conflicting witness."""
    rank: dict[int, int] = {}
    for y in P.topological_order():
        lows = P.lower_covers(y)
        if not lows:
            rank[y] = 0
            continue
        values = {rank[x] + 1 for x in lows}
        if len(values) > 1:
            a = min(lows, key=lambda x: rank[x])
            b = max(lows, key=lambda x: rank[x])
            return GradingResult(False, witness={"covers": [[a, y], [b, y]],
                                                 "ranks": [rank[a], rank[b]]})
        rank[y] = values.pop()
    return GradingResult(True, rank)


def check_rank_function(P: FinitePoset, rank: Callable[[Any], int]) -> GradingResult:
    """Check that ``rank(payload)`` rises by exactly one along every cover."""
    values = {i: rank(e) for i, e in enumerate(P.elements)}
    for lo, hi in P.covers:
        if values[hi] != values[lo] + 1:
            return GradingResult(False, values, {"cover": [lo, hi], "ranks": [values[lo], values[hi]]})
    return GradingResult(True, values)


def is_chain_graded(P: FinitePoset) -> bool:
    """True when all maximal chains have the same length."""
    longest: dict[int, int] = {}
    shortest: dict[int, int] = {}
    for x in reversed(P.topological_order()):
        ups = P.upper_covers(x)
        if not ups:
            longest[x] = shortest[x] = 0
        else:
            longest[x] = 1 + max(longest[u] for u in ups)
            shortest[x] = 1 + min(shortest[u] for u in ups)
    lengths = {longest[m] for m in P.minimal()} | {shortest[m] for m in P.minimal()}
    return len(lengths) <= 1


# --- lattice operations -----------------------------------------------------

def meet(P: FinitePoset, x: int, y: int) -> int | None:
    lower = P.down_mask(x) & P.down_mask(y)
    for z in _bits(lower):
        if P.down_mask(z) == lower:
            return z
    return None


def join(P: FinitePoset, x: int, y: int) -> int | None:
    upper = P.up_mask(x) & P.up_mask(y)
    for z in _bits(upper):
        if P.up_mask(z) == upper:
            return z
    return None


def is_lattice(P: FinitePoset) -> tuple[bool, tuple[int, int, str] | None]:
    """``(True, None)`` or ``(False, (x, y, "meet"|"join"))`` for the first failing pair."""
    if len(P) == 0:
        return False, None
    for x in range(len(P)):
        for y in range(x + 1, len(P)):
            if meet(P, x, y) is None:
                return False, (x, y, "meet")
            if join(P, x, y) is None:
                return False, (x, y, "join")
    return True, None


def mobius(P: FinitePoset, x: int, y: int) -> int:
    if not P.leq(x, y):
        raise ValueError("mobius needs x <= y")
    mu: dict[int, int] = {}
    members = sorted(P.interval_indices(x, y), key=lambda z: P.down_mask(z).bit_count())
    for z in members:
        if z == x:
            mu[z] = 1
        else:
            mu[z] = -sum(v for w, v in mu.items() if P.leq(w, z))
    return mu[y]


# --- isomorphism --------------------------------------------------------------

def _colors(P: FinitePoset) -> list[int]:
    height = {}
    for z in P.topological_order():
        lows = P.lower_covers(z)
        height[z] = 1 + max((height[w] for w in lows), default=-1)
    color = [hash((height[i], len(P.upper_covers(i)), len(P.lower_covers(i)))) for i in range(len(P))]
    for _ in range(len(P)):
        new = [hash((color[i],
                     tuple(sorted(color[u] for u in P.upper_covers(i))),
                     tuple(sorted(color[d] for d in P.lower_covers(i)))))
               for i in range(len(P))]
        if len(set(new)) == len(set(color)):
            return new
        color = new
    return color


def find_isomorphism(P: FinitePoset, Q: FinitePoset, *, budget: int = 2_000_000) -> dict[int, int] | None:
    """Cover-preserving bijection ``P -> Q`` found by refined backtracking, or ``None``.

    Colors come from iterated refinement of (height, up-degree, down-degree);
    candidates must match color and cover adjacency to every mapped element.
    """
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return None
    cp, cq = _colors(P), _colors(Q)
    if Counter(cp) != Counter(cq):
        return None
    by_color: dict[int, list[int]] = {}
    for j, c in enumerate(cq):
        by_color.setdefault(c, []).append(j)
    # BFS from minimal elements so each new element touches mapped neighbours
    order: list[int] = []
    seen: set[int] = set()
    for start in sorted(range(len(P)), key=lambda i: (len(by_color[cp[i]]), i)):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        while queue:
            i = queue.popleft()
            order.append(i)
            for nb in sorted(P.upper_covers(i) + P.lower_covers(i)):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
    up_q = [set(Q.upper_covers(j)) for j in range(len(Q))]
    dn_q = [set(Q.lower_covers(j)) for j in range(len(Q))]
    fwd: dict[int, int] = {}
    used: set[int] = set()
    steps = 0

    def ok(i: int, j: int) -> bool:
        ups = P.upper_covers(i)
        dns = P.lower_covers(i)
        for u in ups:
            if u in fwd and fwd[u] not in up_q[j]:
                return False
        for d in dns:
            if d in fwd and fwd[d] not in dn_q[j]:
                return False
        mapped_up = sum(1 for u in ups if u in fwd)
        mapped_dn = sum(1 for d in dns if d in fwd)
        back_up = sum(1 for v in up_q[j] if v in used)
        back_dn = sum(1 for v in dn_q[j] if v in used)
        return mapped_up == back_up and mapped_dn == back_dn

    def rec(pos: int) -> bool:
        nonlocal steps
        if pos == len(order):
            return True
        i = order[pos]
        for j in by_color[cp[i]]:
            if j in used:
                continue
            steps += 1
            if steps > budget:
                raise IsomorphismBudgetExceeded(f"isomorphism search exceeded {budget} steps")
            if ok(i, j):
                fwd[i] = j
                used.add(j)
                if rec(pos + 1):
                    return True
                del fwd[i]
                used.discard(j)
        return False

    return dict(fwd) if rec(0) else None


def are_isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    return find_isomorphism(P, Q) is not None


# --- EL-labelings -------------------------------------------------------------

@dataclass
class ELResult:
    accepted: bool
    interval: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted


def verify_el_labeling(P: FinitePoset, labels: dict[tuple[int, int], Any]) -> ELResult:
    """Check every interval for a unique weakly increasing maximal chain that is also lex-smallest.

    Intervals ``[x, y]`` are examined for all ``x < y``, so posets with several
    maximal elements are handled without a global top.
    """
    missing = [c for c in P.covers if c not in labels]
    if missing:
        raise ValueError(f"labeling is not total; missing {missing[0]}")
    lexmin: dict[tuple[int, int], tuple] = {}
    inc: dict[tuple[int, int, Any], int] = {}

    def lex(x: int, y: int) -> tuple:
        key = (x, y)
        if key not in lexmin:
            if x == y:
                lexmin[key] = ()
            else:
                lexmin[key] = min((labels[(x, z)],) + lex(z, y)
                                  for z in P.upper_covers(x) if P.leq(z, y))
        return lexmin[key]

    def count(x: int, y: int, floor) -> int:
        key = (x, y, floor)
        if key not in inc:
            if x == y:
                inc[key] = 1
            else:
                inc[key] = sum(count(z, y, labels[(x, z)]) for z in P.upper_covers(x)
                               if P.leq(z, y) and (floor is None or labels[(x, z)] >= floor))
        return inc[key]

    for x, y in sorted(P.comparable_pairs()):
        if x == y:
            continue
        n_inc = count(x, y, None)
        if n_inc != 1:
            return ELResult(False, (x, y), f"condition (1): {n_inc} weakly increasing maximal chains")
        seq = lex(x, y)
        if any(seq[i] > seq[i + 1] for i in range(len(seq) - 1)):
            return ELResult(False, (x, y), "condition (2): lexicographically smallest chain is not increasing")
    return ELResult(True)


# --- export ---------------------------------------------------------------------

def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def to_dot(P: FinitePoset, name: str = "poset", rank: dict[int, int] | None = None) -> str:
    """DOT digraph, edges pointing from lower to upper, layered by rank when graded."""
    if rank is None:
        g = is_graded(P)
        rank = g.rank if g else None
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=\"monospace\"];"]
    for i, lab in enumerate(P.labels):
        lines.append(f"  n{i} [label=\"{_dot_escape(lab)}\"];")
    if rank:
        for r in sorted(set(rank.values())):
            members = " ".join(f"n{i};" for i in sorted(rank) if rank[i] == r)
            lines.append(f"  {{ rank=same; {members} }}")
    for lo, hi in P.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(P: FinitePoset) -> str:
    payload = {"elements": P.labels, "covers": [list(c) for c in sorted(P.covers)]}
    return json.dumps(payload, sort_keys=True)


# --- small fixtures ---------------------------------------------------------

def chain(m: int) -> FinitePoset:
    return FinitePoset.from_covers(list(range(m)), [(i, i + 1) for i in range(m - 1)])


def boolean_lattice(m: int, drop_top: bool = False) -> FinitePoset:
    """Subsets of ``{1..m}`` under inclusion, optionally without the full set."""
    subsets = sorted(range(1 << m), key=lambda s: (bin(s).count("1"), s))
    if drop_top:
        subsets = subsets[:-1]
    pos = {s: i for i, s in enumerate(subsets)}
    covers = [(pos[s], pos[s | 1 << b]) for s in subsets for b in range(m)
              if not s >> b & 1 and (s | 1 << b) in pos]
    els = [frozenset(b + 1 for b in range(m) if s >> b & 1) for s in subsets]
    labels = ["{" + ",".join(map(str, sorted(e))) + "}" for e in els]
    return FinitePoset.from_covers(els, covers, labels)
