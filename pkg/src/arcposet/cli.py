"""Command-line front end: ``arcposet <subcommand> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
Every output is deterministic for a fixed invocation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from functools import lru_cache
from typing import Sequence

from . import arc_diagrams as ad
from . import poset_core as pc
from . import qstirling as qs
from . import rook_monoid as rm
from . import theorems as th
from .arc_diagrams import ArcDiagram, PartitionParseError

SCHEMA = 1

# largest n each command accepts without --unsafe-nmax
BUDGETS = {
    "enumerate": 10,
    "stats": 12,
    "hasse-full": 7,
    "hasse-stirling": 7,
    "hasse-interval": 7,
    "rook-R": 5,
    "rook-B": 7,
    "rook-Bnil": 8,
    "rook-P": 7,
    "interval": 8,
    "qpoly-direct": 9,
    "qpoly-staircase": 9,
    "qpoly-recurrence": 40,
    "qpoly-gr": 40,
    "verify": 7,
}


class UsageError(Exception):
    pass


def _budget(args, key: str, n: int) -> None:
    limit = BUDGETS[key] if args.unsafe_nmax is None else args.unsafe_nmax
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if n > limit:
        raise UsageError(f"n={n} exceeds the budget {limit} for {key}; pass --unsafe-nmax to override")


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poset_payload(P: pc.FinitePoset, **extra) -> dict:
    payload = json.loads(pc.to_json(P))
    payload.update(extra, schema=SCHEMA)
    return payload


def _diagram_arg(text: str, n: int) -> ArcDiagram:
    """Resolve ``X``, ``Y``, ``Z``, ``W`` (on an even vertex count) or a partition string."""
    key = text.strip().upper()
    if key in ("X", "Y", "Z", "W"):
        if n % 2:
            raise UsageError(f"special diagram {key} needs an even vertex count, got n={n}")
        return dict(zip("XYZW", th.special_diagrams(n // 2)))[key]
    d = ad.parse_diagram(text, n)
    if d.n != n:
        raise UsageError(f"diagram {text!r} has {d.n} vertices, expected {n}")
    return d


# --- subcommands ------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    _budget(args, "enumerate", args.n)
    if args.arcs is None:
        diagrams = list(ad.enumerate_diagrams(args.n, limit=max(args.n, ad.MAX_ENUMERATE_N)))
    else:
        diagrams = [d for d in ad.enumerate_diagrams(args.n, limit=max(args.n, ad.MAX_ENUMERATE_N))
                    if d.k == args.arcs]
    if args.format == "json":
        _emit(args, _dumps({"schema": SCHEMA, "n": args.n, "arcs": args.arcs, "count": len(diagrams),
                            "diagrams": [d.to_json() | {"t": ad.t_index(d)} for d in diagrams]}))
    else:
        _emit(args, "".join(f"{d}\t{ad.t_index(d)}\n" for d in diagrams))
    return 0


def _partition_stats(d: ArcDiagram) -> dict:
    return {
        "partition": str(d),
        "n": d.n,
        "arcs": [list(a) for a in d.arcs],
        "t": ad.t_index(d),
        "c": ad.c_index(d),
        "crossings": ad.crossing_count(d),
        "rook": list(rm.phi(d).a),
        "length": rm.length(rm.phi(d)),
        "vertex_depth": [ad.depth_vertex(d, v) for v in range(1, d.n + 1)],
        "arc_stats": [{"arc": list(a), "depth": ad.depth_arc(d, a), "cross": ad.cross_arc(d, a)} for a in d.arcs],
        "chain_depth": [{"chain": list(c), "depth": ad.depth_chain(d, c)} for c in d.chains],
    }


def _rook_stats(x: rm.Rook) -> dict:
    out = {
        "rook": list(x.a),
        "n": x.n,
        "rank": x.rank,
        "length": rm.length(x),
        "length_via_coinv": rm.length_via_coinv(x),
        "inv": rm.inversions(x),
        "coinv": rm.coinversions(x),
        "upper": x.is_upper,
        "strictly_upper": x.is_strictly_upper,
        "idempotent": x.is_idempotent,
    }
    if x.is_strictly_upper:
        out["partition"] = str(rm.phi_inv(x))
    return out


def cmd_stats(args) -> int:
    if args.partition is not None:
        d = ad.parse_diagram(args.partition, args.n)
        _budget(args, "stats", d.n)
        data = _partition_stats(d)
        if args.format == "json":
            _emit(args, _dumps(data | {"schema": SCHEMA}))
            return 0
        lines = [f"partition: {data['partition']}", f"n: {d.n}", f"arcs: {d.k}",
                 f"t: {data['t']}", f"c: {data['c']}", f"crossings: {data['crossings']}",
                 f"rook: {rm.phi(d)}", f"length: {data['length']}",
                 "vertex depth: " + " ".join(map(str, data["vertex_depth"])), "arc\tdepth\tcross"]
        lines += [f"{{{a['arc'][0]},{a['arc'][1]}}}\t{a['depth']}\t{a['cross']}" for a in data["arc_stats"]]
        lines.append("chain\tdepth")
        lines += [f"{'-'.join(map(str, c['chain']))}\t{c['depth']}" for c in data["chain_depth"]]
    else:
        x = rm.parse_rook(args.rook)
        _budget(args, "stats", max(x.n, 1))
        data = _rook_stats(x)
        if args.format == "json":
            _emit(args, _dumps(data | {"schema": SCHEMA}))
            return 0
        lines = [f"rook: {x}"] + [f"{key}: {data[key]}" for key in data if key != "rook"]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _hasse_poset(args) -> tuple[pc.FinitePoset, dict[int, int]]:
    fam = args.family
    if fam == "full":
        _budget(args, "hasse-full", args.n)
        P = th.arc_poset(args.n)
        return P, {i: ad.t_index(a) for i, a in enumerate(P.elements)}
    if fam == "stirling":
        _budget(args, "hasse-stirling", args.n)
        if args.k is None or not 0 <= args.k <= args.n - 1:
            raise UsageError("--family stirling needs 0 <= --k <= n-1")
        P = th.stirling_poset(args.n, args.k)
        return P, {i: ad.t_index(a) for i, a in enumerate(P.elements)}
    if fam == "rook":
        kind = args.universe
        _budget(args, f"rook-{kind}", args.n)
        if kind == "P" and (args.k is None or not 0 <= args.k <= args.n):
            raise UsageError("--universe P needs 0 <= --k <= n")
        P = rm.universe_poset(kind, args.n, args.k if kind == "P" else None)
        return P, {i: rm.length(x) for i, x in enumerate(P.elements)}
    _budget(args, "hasse-interval", args.n)
    if args.x is None or args.y is None:
        raise UsageError("--family interval needs --x and --y")
    A = th.arc_poset(args.n)
    P = A.interval(A.index(_diagram_arg(args.x, args.n)), A.index(_diagram_arg(args.y, args.n)))
    return P, {i: ad.t_index(a) for i, a in enumerate(P.elements)}


def cmd_hasse(args) -> int:
    P, rank = _hasse_poset(args)
    if args.format == "dot":
        _emit(args, pc.to_dot(P, name=args.family, rank=rank))
    else:
        _emit(args, _dumps(_poset_payload(P, family=args.family, n=args.n,
                                          rank=[rank[i] for i in range(len(P))])))
    return 0


_QPOLY = {"direct": qs.bracket_direct, "recurrence": qs.bracket_recurrence,
          "gr": qs.gr_stirling, "staircase": qs.staircase_rook_poly}


def cmd_qpoly(args) -> int:
    _budget(args, f"qpoly-{args.method}", args.n)
    ks = range(args.n + 1) if args.k is None else [args.k]
    if args.k is not None and not 0 <= args.k <= args.n:
        raise UsageError("need 0 <= --k <= --n")
    rows = [(args.n, k, _QPOLY[args.method](args.n, k)) for k in ks]
    if args.format == "json":
        _emit(args, _dumps({"schema": SCHEMA, "method": args.method,
                            "polynomials": [{"n": n, "k": k, **p.to_json()} for n, k, p in rows]}))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "polynomial"])
        w.writerows([n, k, str(p)] for n, k, p in rows)
        _emit(args, buf.getvalue())
    elif args.k is not None:
        _emit(args, f"{rows[0][2]}\n")
    else:
        _emit(args, "".join(f"k={k}: {p}\n" for _, k, p in rows))
    return 0


def cmd_interval(args) -> int:
    _budget(args, "interval", args.n)
    A = th.arc_poset(args.n)
    lo, hi = _diagram_arg(args.source, args.n), _diagram_arg(args.target, args.n)
    I = A.interval(A.index(lo), A.index(hi))
    rank = {i: ad.t_index(a) for i, a in enumerate(I.elements)}
    if args.format == "dot":
        _emit(args, pc.to_dot(I, name="interval", rank=rank))
        return 0
    lattice, witness = pc.is_lattice(I) if len(I) else (False, None)
    summary = {
        "from": str(lo), "to": str(hi), "size": len(I),
        "comparable": len(I) > 0,
        "rank_length": ad.t_index(hi) - ad.t_index(lo) if len(I) else None,
        "graded": bool(pc.is_graded(I)) if len(I) else None,
        "lattice": lattice,
        "lattice_witness": None if witness is None else
        [I.labels[witness[0]], I.labels[witness[1]], witness[2]],
    }
    if args.format == "json":
        _emit(args, _dumps(_poset_payload(I, **summary)))
    else:
        _emit(args, "".join(f"{key}: {value}\n" for key, value in summary.items()))
    return 0


def cmd_verify(args) -> int:
    _budget(args, "verify", args.nmax)
    if args.theorem is not None:
        try:
            reports = th.run_theorem(args.theorem, args.nmax)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    else:
        reports = th.run_all(args.nmax)
    passed = all(r.passed for r in reports)
    text = _dumps({"schema": SCHEMA, "nmax": args.nmax, "passed": passed,
                   "reports": [r.to_dict() for r in reports]})
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0 if passed else 1


# --- parser -------------------------------------------------------------------------

@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arcposet", description=__doc__.splitlines()[0])
    parser.add_argument("--unsafe-nmax", type=int, default=None, metavar="N",
                        help="replace every size budget with N")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list arc-diagrams with their depth-index")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--arcs", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stats", help="statistics of a set partition or a rook")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--partition")
    g.add_argument("--rook")
    p.add_argument("--n", type=int, help="vertex count when trailing singletons are omitted")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("hasse", help="Hasse diagram as DOT or JSON")
    p.add_argument("--family", choices=("full", "stirling", "rook", "interval"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--universe", choices=("R", "B", "Bnil", "P"), default="B")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--output")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("qpoly", help="q-Stirling polynomials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=tuple(_QPOLY), default="recurrence")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_qpoly)

    p = sub.add_parser("interval", help="interval between two arc-diagrams")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("verify", help="run the theorem checks")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--theorem", choices=sorted(th.THEOREMS))
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PartitionParseError as exc:
        print(exc.caret(), file=sys.stderr)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"arcposet: error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
