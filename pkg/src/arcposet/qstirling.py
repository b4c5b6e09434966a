"""Exact polynomials in ``q`` and the q-Stirling generating functions.

Four routes are provided: a direct sum of ``q**t`` over arc-diagrams, the
bracket recurrence, the Garsia-Remmel recurrence and the staircase rook
polynomial.  The identities tying them together are checked by
:func:`verify_identities`.
"""
from __future__ import annotations

import csv
import io
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .arc_diagrams import enumerate_with_arcs, stirling2, t_index
from .rook_monoid import enumerate_universe, length

__all__ = [
    "QPolynomial", "q_integer", "bracket_direct", "bracket_recurrence", "gr_stirling",
    "staircase_rook_poly", "verify_identities", "csv_table", "MAX_DIRECT_N",
]

MAX_DIRECT_N = 9


class QPolynomial:
    """Univariate polynomial with exact integer coefficients; zero terms are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        c: dict[int, int] = {}
        for e, v in items:
            e, v = int(e), int(v)
            if e < 0:
                raise ValueError("negative exponent")
            if v:
                c[e] = c.get(e, 0) + v
                if not c[e]:
                    del c[e]
        self._c = dict(sorted(c.items()))

    @classmethod
    def monomial(cls, e: int, coeff: int = 1) -> QPolynomial:
        return cls({e: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    @property
    def degree(self) -> int:
        return max(self._c, default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other: QPolynomial | int) -> QPolynomial:
        other = _coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return QPolynomial(c)

    __radd__ = __add__

    def __neg__(self) -> QPolynomial:
        return QPolynomial({e: -v for e, v in self._c.items()})

    def __sub__(self, other: QPolynomial | int) -> QPolynomial:
        return self + (-_coerce(other))

    def __mul__(self, other: QPolynomial | int) -> QPolynomial:
        other = _coerce(other)
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return QPolynomial(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPolynomial({0: other})
        return isinstance(other, QPolynomial) and self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(self._c.items()))

    def __call__(self, q):
        return sum(v * q ** e for e, v in self._c.items())

    def reciprocal_shift(self, shift: int) -> QPolynomial:
        """``q**shift * p(1/q)``; raises if a negative power would remain."""
        if self._c and shift < self.degree:
            raise ValueError(f"q^{shift} * p(1/q) is not a polynomial (degree {self.degree})")
        return QPolynomial({shift - e: v for e, v in self._c.items()})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in self._c.items():
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            mag = abs(v)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if v > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QPolynomial({self._c!r})"

    def to_json(self) -> dict:
        return {"coeffs": {str(e): v for e, v in self._c.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> QPolynomial:
        return cls({int(e): v for e, v in data["coeffs"].items()})


def _coerce(x) -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, int):
        return QPolynomial({0: x})
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


ZERO = QPolynomial()
ONE = QPolynomial({0: 1})


def q_integer(m: int) -> QPolynomial:
    """``[m]_q = 1 + q + ... + q^(m-1)``; zero for ``m <= 0``."""
    return QPolynomial([1] * max(m, 0))


def bracket_direct(n: int, k: int) -> QPolynomial:
    """Sum of ``q**t(A)`` over arc-diagrams on ``n`` vertices with ``k`` arcs."""
    if n > MAX_DIRECT_N:
        raise ValueError(f"n={n} exceeds direct-sum bound {MAX_DIRECT_N}")
    if n == 0:
        return ONE if k == 0 else ZERO
    if k < 0:
        return ZERO
    terms: dict[int, int] = {}
    for a in enumerate_with_arcs(n, k):
        t = t_index(a)
        terms[t] = terms.get(t, 0) + 1
    return QPolynomial(terms)


@lru_cache(maxsize=None)
def bracket_recurrence(n: int, k: int) -> QPolynomial:
    if k < 0 or k > n:
        return ZERO
    if k == 0:
        return ONE
    m = n - 1
    qk = QPolynomial.monomial(k)
    return qk * bracket_recurrence(m, k) + q_integer(m + 1 - k) * qk * bracket_recurrence(m, k - 1)


@lru_cache(maxsize=None)
def gr_stirling(n: int, k: int) -> QPolynomial:
    """Garsia-Remmel q-Stirling number ``S_{n,k}(q)``."""
    if k < 0 or k > n:
        return ZERO
    if n == 0:
        return ONE
    return (QPolynomial.monomial(k - 1) * gr_stirling(n - 1, k - 1) if k >= 1 else ZERO) \
        + q_integer(k) * gr_stirling(n - 1, k)


@lru_cache(maxsize=None)
def staircase_rook_poly(n: int, k: int) -> QPolynomial:
    """``R_k(delta_n, q)`` with statistic ``C(n,2) - length`` over rank-k strictly upper rooks."""
    if n > MAX_DIRECT_N:
        raise ValueError(f"n={n} exceeds staircase bound {MAX_DIRECT_N}")
    top = comb(n, 2)
    terms: dict[int, int] = {}
    for x in enumerate_universe("Bnil", n):
        if x.rank == k:
            s = top - length(x)
            terms[s] = terms.get(s, 0) + 1
    return QPolynomial(terms)


def verify_identities(n_max: int) -> list[dict]:
    """Check every identity for ``n <= n_max``; returns one record per identity family.

    Each record has ``identity``, ``checked`` (count) and ``failure`` (``None``
    or the first failing ``(n, k)`` with both sides).
    """
    if n_max > 8:
        raise ValueError("n_max is bounded by 8")
    out = []

    def record(name: str, cases):
        checked, failure = 0, None
        for params, lhs, rhs in cases:
            checked += 1
            if lhs != rhs:
                failure = {"params": params, "lhs": str(lhs), "rhs": str(rhs)}
                break
        out.append({"identity": name, "checked": checked, "failure": failure})

    record("direct = recurrence", (
        ({"n": n, "k": k}, bracket_direct(n, k), bracket_recurrence(n, k))
        for n in range(1, n_max + 1) for k in range(0, n + 1)))
    record("bracket(1) = S(n, n-k)", (
        ({"n": n, "k": k}, bracket_direct(n, k)(1), stirling2(n, n - k))
        for n in range(1, n_max + 1) for k in range(0, n + 1)))
    record("S_{n,k} = R_{n-k}(staircase)", (
        ({"n": n, "k": k}, gr_stirling(n, k), staircase_rook_poly(n, n - k))
        for n in range(1, n_max + 1) for k in range(0, n + 1)))
    record("bracket = q^C(n,2) R_k(staircase, 1/q)", (
        ({"n": n, "k": k}, bracket_direct(n, k), staircase_rook_poly(n, k).reciprocal_shift(comb(n, 2)))
        for n in range(1, n_max + 1) for k in range(0, n + 1)))
    record("degree = k(2n-k-1)/2", (
        ({"n": n, "k": k}, bracket_direct(n, k).degree, k * (2 * n - k - 1) // 2)
        for n in range(1, n_max + 1) for k in range(0, n)))
    record("coefficients nonnegative", (
        ({"n": n, "k": k}, all(v >= 0 for v in bracket_recurrence(n, k).coeffs.values()), True)
        for n in range(1, n_max + 1) for k in range(0, n + 1)))
    return out


def csv_table(n_max: int, method: str = "recurrence") -> str:
    fn = {"direct": bracket_direct, "recurrence": bracket_recurrence,
          "gr": gr_stirling, "staircase": staircase_rook_poly}[method]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "polynomial"])
    for n in range(1, n_max + 1):
        for k in range(0, n + 1):
            w.writerow([n, k, str(fn(n, k))])
    return buf.getvalue()
