"""Arc-diagrams on labeled vertices ``1..n`` and their statistics.

An arc-diagram is a set partition drawn on a line: the elements of each block
are joined, in increasing order, by arcs.  Each vertex is the left endpoint
of at most one arc and the right endpoint of at most one arc.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

__all__ = [
    "ArcDiagram", "SetPartition", "PartitionParseError",
    "from_set_partition", "to_set_partition", "parse_partition", "parse_diagram",
    "depth_vertex", "depth_arc", "depth_chain", "cross_arc", "crossing_count",
    "t_index", "c_index", "covers_up", "enumerate_diagrams", "enumerate_with_arcs",
    "bell", "stirling2", "MAX_ENUMERATE_N",
]

MAX_ENUMERATE_N = 12

Arc = tuple[int, int]


class PartitionParseError(ValueError):
    """Malformed set-partition text; ``caret()`` points at the offending spot."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(message)
        self.text = text
        self.pos = pos

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^ {self.args[0]}"


@dataclass(frozen=True)
class SetPartition:
    """A set partition of ``{1..n}`` in standard form (blocks sorted by minimum)."""
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            for v in b:
                if not 1 <= v <= self.n:
                    raise ValueError(f"element {v} outside 1..{self.n}")
                if v in seen:
                    raise ValueError(f"element {v} appears in two blocks")
                seen.add(v)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise ValueError(f"blocks do not cover {missing}")
        object.__setattr__(self, "blocks", blocks)

    def __str__(self) -> str:
        sep = "," if self.n >= 10 else ""
        return "|".join(sep.join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class ArcDiagram:
    """Immutable arc-diagram: ``n`` vertices and a sorted tuple of arcs ``(i, j)``, ``i < j``."""
    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        arcs = tuple(sorted((int(i), int(j)) for i, j in self.arcs))
        lefts: set[int] = set()
        rights: set[int] = set()
        for i, j in arcs:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"arc ({i},{j}) invalid on {self.n} vertices")
            if i in lefts:
                raise ValueError(f"vertex {i} starts two arcs")
            if j in rights:
                raise ValueError(f"vertex {j} ends two arcs")
            lefts.add(i)
            rights.add(j)
        object.__setattr__(self, "arcs", arcs)

    @cached_property
    def succ(self) -> dict[int, int]:
        """Right neighbour of each vertex that starts an arc."""
        return {i: j for i, j in self.arcs}

    @cached_property
    def pred(self) -> dict[int, int]:
        """Left neighbour of each vertex that ends an arc."""
        return {j: i for i, j in self.arcs}

    @cached_property
    def chains(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for v in range(1, self.n + 1):
            if v in self.pred:
                continue
            chain = [v]
            while chain[-1] in self.succ:
                chain.append(self.succ[chain[-1]])
            out.append(tuple(chain))
        return tuple(out)

    @cached_property
    def chain_of(self) -> dict[int, int]:
        return {v: c for c, chain in enumerate(self.chains) for v in chain}

    @property
    def k(self) -> int:
        return len(self.arcs)

    def with_arcs(self, arcs: Iterable[Arc]) -> ArcDiagram:
        return ArcDiagram(self.n, tuple(arcs))

    def __str__(self) -> str:
        return str(to_set_partition(self))

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_json(cls, data: dict | str) -> ArcDiagram:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["n"]), tuple(tuple(a) for a in data["arcs"]))


def from_set_partition(p: SetPartition) -> ArcDiagram:
    arcs = [(b[m], b[m + 1]) for b in p.blocks for m in range(len(b) - 1)]
    return ArcDiagram(p.n, tuple(arcs))


def to_set_partition(a: ArcDiagram) -> SetPartition:
    return SetPartition(a.n, a.chains)


_BLOCK_RE = re.compile(r"\s*([0-9,\s]+?)\s*(\||$)")


def parse_partition(text: str, n: int | None = None) -> SetPartition:
    """Parse bar notation such as ``18|2569|37|4``.

    With a comma anywhere, or with ``n >= 10``, blocks are comma-separated
    integers (``1,10|2,3``); otherwise every digit is one element.
    ``n`` defaults to the largest element.
    """
    stripped = text.strip()
    if not stripped:
        raise PartitionParseError("empty partition", text, 0)
    blocks: list[list[int]] = []
    pos = 0
    whole_numbers = "," in text or (n is not None and n >= 10)
    for raw in text.split("|"):
        body = raw.strip()
        lead = len(raw) - len(raw.lstrip())
        if not body:
            raise PartitionParseError("empty block", text, pos + lead)
        for off, ch in enumerate(raw):
            if not (ch.isdigit() or ch in ", "):
                raise PartitionParseError(f"unexpected character {ch!r}", text, pos + off)
        if whole_numbers:
            items = [s.strip() for s in body.split(",")]
            if any(not s or " " in s for s in items):
                raise PartitionParseError("malformed element", text, pos + lead)
            block = [int(s) for s in items]
        else:
            block = [int(ch) for ch in body if ch.isdigit()]
        blocks.append(block)
        pos += len(raw) + 1
    flat = [v for b in blocks for v in b]
    if 0 in flat:
        raise PartitionParseError("elements start at 1", text, text.index("0"))
    if n is None:
        n = max(flat)
    try:
        return SetPartition(n, tuple(tuple(b) for b in blocks))
    except ValueError as exc:
        raise PartitionParseError(str(exc), text, 0) from None


def parse_diagram(text: str, n: int | None = None) -> ArcDiagram:
    """Parse either bar notation or the JSON form ``{"n": .., "arcs": [[i, j], ..]}``."""
    s = text.strip()
    if s.startswith("{"):
        try:
            return ArcDiagram.from_json(s)
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise PartitionParseError(f"bad JSON diagram: {exc}", text, 0) from None
    return from_set_partition(parse_partition(text, n))


# --- statistics -----------------------------------------------------------

def _check_vertex(a: ArcDiagram, v: int) -> None:
    if not 1 <= v <= a.n:
        raise ValueError(f"vertex {v} outside 1..{a.n}")


def depth_vertex(a: ArcDiagram, v: int) -> int:
    _check_vertex(a, v)
    return sum(1 for r, s in a.arcs if r < v < s)


def depth_arc(a: ArcDiagram, arc: Arc) -> int:
    i, j = arc
    if (i, j) not in a.succ.items():
        raise ValueError(f"arc {arc} not in diagram")
    return sum(1 for r, s in a.arcs if r < i and s > j)


def depth_chain(a: ArcDiagram, chain: Iterable[int]) -> int:
    chain = tuple(chain)
    if chain not in a.chains:
        raise ValueError(f"{chain} is not a chain of the diagram")
    lo, hi = chain[0], chain[-1]
    return sum(1 for r, s in a.arcs if r < lo and s > hi)


def _cross(x: Arc, y: Arc) -> bool:
    (i, j), (r, s) = x, y
    return i < r < j < s or r < i < s < j


def cross_arc(a: ArcDiagram, arc: Arc) -> int:
    """Number of distinct chains holding at least one arc that crosses ``arc``."""
    if tuple(arc) not in a.succ.items():
        raise ValueError(f"arc {arc} not in diagram")
    return len({a.chain_of[r] for r, s in a.arcs if _cross(arc, (r, s))})


def crossing_count(a: ArcDiagram) -> int:
    arcs = a.arcs
    return sum(1 for x in range(len(arcs)) for y in range(x + 1, len(arcs)) if _cross(arcs[x], arcs[y]))


def _arc_weight(n: int, k: int) -> int:
    return sum(n - i for i in range(1, k + 1))


def t_index(a: ArcDiagram) -> int:
    """Depth-index: arc weight minus vertex depths plus arc depths."""
    vertex = sum(depth_vertex(a, v) for v in range(1, a.n + 1))
    arc = sum(depth_arc(a, x) for x in a.arcs)
    return _arc_weight(a.n, a.k) - vertex + arc


def c_index(a: ArcDiagram) -> int:
    """Crossing-index: arc weight minus chain depths minus arc cross numbers."""
    chain = sum(depth_chain(a, c) for c in a.chains)
    cross = sum(cross_arc(a, x) for x in a.arcs)
    return _arc_weight(a.n, a.k) - chain - cross


# --- cover moves ----------------------------------------------------------

def _replace(a: ArcDiagram, old: Iterable[Arc], new: Iterable[Arc]) -> ArcDiagram:
    arcs = set(a.arcs)
    arcs.difference_update(old)
    arcs.update(new)
    return a.with_arcs(arcs)


def _shorten_left(a: ArcDiagram, i: int, j: int) -> ArcDiagram | None:
    # skipped vertices must already start arcs that close before j
    b = i + 1
    while b < j and b in a.succ:
        if a.succ[b] > j:
            return None
        b += 1
    if b >= j:
        return None
    return _replace(a, [(i, j)], [(b, j)])


def _shorten_right(a: ArcDiagram, i: int, j: int) -> ArcDiagram | None:
    # skipped vertices must already end arcs that open after i
    p = j - 1
    while p > i and p in a.pred:
        if a.pred[p] < i:
            return None
        p -= 1
    if p <= i:
        return None
    return _replace(a, [(i, j)], [(i, p)])


def _uncross(a: ArcDiagram, x: Arc, y: Arc) -> ArcDiagram | None:
    (i, p), (r, q) = x, y
    if not i < r < p < q:
        return None
    # every arc ending strictly between p and q must open outside [i, r]
    for s in range(p + 1, q):
        u = a.pred.get(s)
        if u is not None and i <= u <= r:
            return None
    return _replace(a, [x, y], [(r, p), (i, q)])


def _add_arc(a: ArcDiagram, j: int) -> ArcDiagram | None:
    if j in a.pred or any(v not in a.pred for v in range(j + 1, a.n + 1)):
        return None
    b = 1
    while b < j and b in a.succ:
        if a.succ[b] > j:
            return None
        b += 1
    if b >= j:
        return None
    return _replace(a, [], [(b, j)])


def covers_up(a: ArcDiagram) -> set[ArcDiagram]:
    """All diagrams covering ``a``: shortenings, crossing removals, new arcs."""
    out: set[ArcDiagram] = set()
    cands: list[ArcDiagram | None] = []
    for i, j in a.arcs:
        cands.append(_shorten_left(a, i, j))
        cands.append(_shorten_right(a, i, j))
    for x in a.arcs:
        for y in a.arcs:
            cands.append(_uncross(a, x, y))
    for j in range(2, a.n + 1):
        cands.append(_add_arc(a, j))
    out.update(c for c in cands if c is not None)
    return out


# --- enumeration ----------------------------------------------------------

def _growth_strings(n: int) -> Iterator[list[int]]:
    s = [0] * n
    def rec(pos: int, m: int):
        if pos == n:
            yield s
            return
        for v in range(m + 1):
            s[pos] = v
            yield from rec(pos + 1, max(m, v + 1))
    if n == 0:
        yield []
        return
    yield from rec(1, 1)


def _diagram_from_growth(s: list[int]) -> ArcDiagram:
    last: dict[int, int] = {}
    arcs = []
    for v, b in enumerate(s, start=1):
        if b in last:
            arcs.append((last[b], v))
        last[b] = v
    return ArcDiagram(len(s), tuple(arcs))


def enumerate_diagrams(n: int, *, limit: int = MAX_ENUMERATE_N) -> Iterator[ArcDiagram]:
    """Every arc-diagram on ``n`` vertices, once each, in restricted-growth order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > limit:
        raise ValueError(f"n={n} exceeds enumeration bound {limit}")
    for s in _growth_strings(n):
        yield _diagram_from_growth(s)


def enumerate_with_arcs(n: int, k: int, *, limit: int = MAX_ENUMERATE_N) -> list[ArcDiagram]:
    return [a for a in _all(n, limit) if a.k == k]


@lru_cache(maxsize=None)
def _cached_all(n: int) -> tuple[ArcDiagram, ...]:
    return tuple(enumerate_diagrams(n, limit=n))


def _all(n: int, limit: int) -> tuple[ArcDiagram, ...]:
    if n > limit:
        raise ValueError(f"n={n} exceeds enumeration bound {limit}")
    return _cached_all(n)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind via ``S(n,k) = S(n-1,k-1) + k S(n-1,k)``."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))
