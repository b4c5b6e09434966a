"""Rook matrices in one-line notation and the Bruhat-Chevalley-Renner order.

A rook ``x = (a_1, ..., a_n)`` records, for column ``j``, the row ``a_j`` of
its nonzero entry (``0`` for an empty column).  ``x`` is upper triangular when
``a_j <= j`` and strictly upper triangular when ``a_j < j`` for all ``j``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .arc_diagrams import ArcDiagram, PartitionParseError
from .poset_core import FinitePoset

__all__ = [
    "Rook", "UNIVERSES", "length", "inversions", "coinversions", "length_via_coinv",
    "ppr_moves_up", "lemma_covers_up", "covers_up", "bruhat_leq_oracle",
    "phi", "phi_inv", "drop_first", "lift", "enumerate_universe", "universe_poset",
    "generator_closure", "min_of_P", "idempotent_length", "idempotent_leq", "fixed_points", "parse_rook", "RookParseError",
    "in_universe",
]

UNIVERSES = ("R", "B", "Bnil", "E", "Ek", "P")

# enumeration bounds per universe family
_BOUNDS = {"R": 8, "B": 9, "Bnil": 10, "E": 12, "Ek": 12, "P": 9}


@dataclass(frozen=True)
class Rook:
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        n = len(a)
        nz = [v for v in a if v]
        if any(v < 0 or v > n for v in a):
            raise ValueError(f"entries of {a} must lie in 0..{n}")
        if len(set(nz)) != len(nz):
            raise ValueError(f"nonzero entries of {a} repeat")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def rank(self) -> int:
        return sum(1 for v in self.a if v)

    @property
    def is_upper(self) -> bool:
        return all(v <= i for i, v in enumerate(self.a, 1))

    @property
    def is_strictly_upper(self) -> bool:
        return all(v < i for i, v in enumerate(self.a, 1))

    @property
    def is_idempotent(self) -> bool:
        return all(v in (0, i) for i, v in enumerate(self.a, 1))

    def matrix(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for j, i in enumerate(self.a):
            if i:
                m[i - 1][j] = 1
        return m

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.a)) + ")"

    def to_json(self) -> dict:
        return {"n": self.n, "a": list(self.a)}


class RookParseError(PartitionParseError):
    """Malformed one-line rook text."""


def parse_rook(text: str) -> Rook:
    """Accept ``4,0,5``, ``(4,0,5)`` or ``{"n": 3, "a": [4, 0, 5]}``."""
    s = text.strip()
    if s.startswith("{"):
        try:
            return Rook(tuple(json.loads(s)["a"]))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise RookParseError(f"bad JSON rook: {exc}", text, 0) from None
    pos = 0
    values = []
    body = text.replace("(", " ").replace(")", " ").replace("[", " ").replace("]", " ")
    for token in body.split(","):
        lead = len(token) - len(token.lstrip())
        if not token.strip():
            if body.strip():
                raise RookParseError("empty entry", text, pos + lead)
        elif not token.strip().isdigit():
            raise RookParseError(f"not a nonnegative integer: {token.strip()!r}", text, pos + lead)
        else:
            values.append(int(token))
        pos += len(token) + 1
    try:
        return Rook(tuple(values))
    except ValueError as exc:
        raise RookParseError(str(exc), text, 0) from None


def _as_tuple(x) -> tuple[int, ...]:
    return x.a if isinstance(x, Rook) else tuple(x)


def inversions(x) -> int:
    a = _as_tuple(x)
    return sum(1 for i in range(len(a)) for j in range(i + 1, len(a)) if a[i] > a[j])


def coinversions(x) -> int:
    a = _as_tuple(x)
    return sum(1 for i in range(len(a)) for j in range(i + 1, len(a)) if 0 < a[i] < a[j])


def length(x) -> int:
    """Entry sum plus inversion count."""
    a = _as_tuple(x)
    return sum(a) + inversions(a)


def length_via_coinv(x) -> int:
    """Shifted entry sum ``a_i + n - i`` over nonzero entries, minus coinversions."""
    a = _as_tuple(x)
    n = len(a)
    return sum(v + n - i for i, v in enumerate(a, 1) if v) - coinversions(a)


# --- generator moves and covers -------------------------------------------

def _raise_moves(a: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    n = len(a)
    used = set(a)
    for i in range(n):
        for b in range(a[i] + 1, n + 1):
            if b not in used:
                yield a[:i] + (b,) + a[i + 1:]


def _swap_moves(a: tuple[int, ...]) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i] < a[j]:
                b = list(a)
                b[i], b[j] = a[j], a[i]
                yield i, j, tuple(b)


def ppr_moves_up(x) -> set[Rook]:
    """Single generator steps: raise one entry, or swap a pair into decreasing order."""
    a = _as_tuple(x)
    out = {Rook(b) for b in _raise_moves(a)}
    out.update(Rook(b) for _, _, b in _swap_moves(a))
    return out


def lemma_covers_up(x) -> set[Rook]:
    """Covers of ``x`` in the full rook monoid, by the raise and swap criteria.

    Raising ``a_i`` to ``b`` is a cover iff every value strictly between
    ``a_i`` and ``b`` already sits left of position ``i``; when ``a_i = 0``
    every entry right of ``i`` must also be nonzero.  Swapping ``a_i < a_j``
    (``i < j``) is a cover iff no entry strictly between them has value in
    ``[a_i, a_j]``.
    """
    a = _as_tuple(x)
    n = len(a)
    out: set[Rook] = set()
    pos = {v: p for p, v in enumerate(a) if v}
    for i in range(n):
        if a[i] == 0 and any(v == 0 for v in a[i + 1:]):
            continue
        b = a[i] + 1
        while b <= n and b in pos and pos[b] < i:
            b += 1
        if b <= n and b not in pos:
            out.add(Rook(a[:i] + (b,) + a[i + 1:]))
    for i, j, b in _swap_moves(a):
        if all(a[s] < a[i] or a[s] > a[j] for s in range(i + 1, j)):
            out.add(Rook(b))
    return out


def in_universe(x: Rook, kind: str, k: int | None = None) -> bool:
    if kind == "R":
        return True
    if kind == "B":
        return x.is_upper
    if kind == "Bnil":
        return x.is_strictly_upper
    if kind == "E":
        return x.is_idempotent
    if kind == "Ek":
        return x.is_idempotent and x.rank == k
    if kind == "P":
        return x.is_upper and x.rank == k
    raise ValueError(f"unknown universe {kind!r}")


def covers_up(x: Rook, universe: str = "R", k: int | None = None) -> set[Rook]:
    """Upper covers of ``x`` inside ``universe`` (``R``, ``B``, ``Bnil`` or rank slice ``P``).

    ``B`` and ``Bnil`` are lower intervals of the full monoid, so their covers
    are the ambient covers that stay inside.  ``P`` covers come from the
    induced subposet.
    """
    if not in_universe(x, universe, k):
        raise ValueError(f"{x} is not in universe {universe}")
    if universe == "P":
        poset = universe_poset("P", x.n, k)
        idx = poset.index(x)
        return {poset.elements[j] for j in poset.upper_covers(idx)}
    if universe not in ("R", "B", "Bnil"):
        raise ValueError(f"covers not defined for universe {universe}")
    return {y for y in lemma_covers_up(x) if in_universe(y, universe)}


def bruhat_leq_oracle(x: Rook, y: Rook) -> bool:
    """Reachability of ``y`` from ``x`` by generator moves, via a memoized closure table.

    The table is built over the smallest of ``Bnil``, ``B``, ``R`` containing
    both arguments (each is a lower interval of the next).
    """
    if x.n != y.n:
        raise ValueError("size mismatch")
    for kind in ("Bnil", "B", "R"):
        if in_universe(x, kind) and in_universe(y, kind):
            break
    poset = generator_closure(kind, x.n)
    return poset.leq(poset.index(x), poset.index(y))


# --- enumeration ----------------------------------------------------------

def _partial_injections(n: int, cap) -> Iterator[tuple[int, ...]]:
    a = [0] * n
    used = [False] * (n + 1)
    def rec(j: int):
        if j == n:
            yield tuple(a)
            return
        a[j] = 0
        yield from rec(j + 1)
        for v in range(1, cap(j + 1) + 1):
            if not used[v]:
                used[v] = True
                a[j] = v
                yield from rec(j + 1)
                used[v] = False
        a[j] = 0
    yield from rec(0)


def _sort_key(x: Rook):
    return (length(x), x.a)


def enumerate_universe(kind: str, n: int, k: int | None = None, *, limit: int | None = None) -> list[Rook]:
    """Elements of ``R``, ``B``, ``Bnil``, ``E``, ``Ek`` or ``P`` (rank-k upper rooks), sorted by length."""
    if kind not in UNIVERSES:
        raise ValueError(f"unknown universe {kind!r}")
    bound = _BOUNDS[kind] if limit is None else limit
    if n < 0 or n > bound:
        raise ValueError(f"n={n} outside enumeration bound {bound} for {kind}")
    if kind in ("Ek", "P") and (k is None or not 0 <= k <= n):
        raise ValueError(f"{kind} needs 0 <= k <= n")
    if kind == "R":
        els = _partial_injections(n, lambda j: n)
    elif kind in ("B", "P"):
        els = _partial_injections(n, lambda j: j)
    elif kind == "Bnil":
        els = _partial_injections(n, lambda j: j - 1)
    else:
        els = (tuple(i if i in s else 0 for i in range(1, n + 1))
               for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r))
    out = [Rook(a) for a in els]
    if kind in ("Ek", "P"):
        out = [x for x in out if x.rank == k]
    return sorted(out, key=_sort_key)


@lru_cache(maxsize=None)
def generator_closure(kind: str, n: int) -> FinitePoset:
    """The order on ``R``, ``B`` or ``Bnil`` as the closure of generator moves inside it."""
    if kind not in ("R", "B", "Bnil"):
        raise ValueError("closure tables exist for R, B and Bnil only")
    els = enumerate_universe(kind, n)
    index = {x: i for i, x in enumerate(els)}
    edges = []
    for i, x in enumerate(els):
        for y in ppr_moves_up(x):
            j = index.get(y)
            if j is not None:
                edges.append((i, j))
    return FinitePoset.from_covers(els, edges, labels=[str(x) for x in els])


@lru_cache(maxsize=None)
def universe_poset(kind: str, n: int, k: int | None = None) -> FinitePoset:
    """Poset on an enumerated universe; idempotent and rank slices are induced from ``B``."""
    if kind in ("R", "B", "Bnil"):
        return generator_closure(kind, n)
    ambient = generator_closure("B", n)
    members = [ambient.index(x) for x in enumerate_universe(kind, n, k)]
    return ambient.induced(members)


# --- bijections -----------------------------------------------------------

def phi(d: ArcDiagram) -> Rook:
    """Arc ``(i, j)`` becomes the entry ``a_j = i``."""
    a = [0] * d.n
    for i, j in d.arcs:
        a[j - 1] = i
    return Rook(tuple(a))


def phi_inv(x: Rook) -> ArcDiagram:
    if not x.is_strictly_upper:
        raise ValueError(f"{x} is not strictly upper triangular")
    return ArcDiagram(x.n, tuple((i, j) for j, i in enumerate(x.a, 1) if i))


def drop_first(x: Rook) -> Rook:
    """Strictly upper rook on ``n`` letters to upper rook on ``n - 1`` letters."""
    if not x.a or x.a[0] != 0:
        raise ValueError(f"{x} does not start with 0")
    if not x.is_strictly_upper:
        raise ValueError(f"{x} is not strictly upper triangular")
    return Rook(x.a[1:])


def lift(x: Rook) -> Rook:
    """Inverse of :func:`drop_first`."""
    if not x.is_upper:
        raise ValueError(f"{x} is not upper triangular")
    return Rook((0,) + x.a)


# --- idempotents and strata -------------------------------------------------

def min_of_P(n: int, k: int) -> Rook:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return Rook((0,) * (n - k) + tuple(range(1, k + 1)))


def idempotent_length(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return k * (2 * n - k + 1) // 2


def idempotent_leq(e: Rook, f: Rook) -> bool:
    """``e f = e = f e`` for diagonal idempotents, i.e. support inclusion."""
    if not (e.is_idempotent and f.is_idempotent):
        raise ValueError("idempotents expected")
    return {v for v in e.a if v} <= {v for v in f.a if v}


def fixed_points(x: Rook) -> frozenset[int]:
    return frozenset(v for i, v in enumerate(x.a, 1) if v == i)
