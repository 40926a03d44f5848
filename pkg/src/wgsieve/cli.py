"""Command-line surface: table emission and cache/verification entry points.

Output discipline: every numeric cell is formatted once, deterministically
(12 significant digits for floats, exact strings for integers and rationals),
and JSON carries numbers as decimal strings so nothing is re-rounded
downstream.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import archimedean, buchstab, local, oracles, reference, rosser, series
from .arith import ResourceLimitError
from .buchstab import QuadratureError


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".12g")
    return str(v)


@dataclass
class OutputTable:
    name: str
    columns: list[str]
    rows: list[list]

    def emit(self, fmt: str) -> str:
        cells = [[_fmt(v) for v in row] for row in self.rows]
        if fmt == "json":
            payload = {
                "table": self.name,
                "rows": [dict(zip(self.columns, row)) for row in cells],
            }
            return json.dumps(payload, indent=2)
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(cells)
            return buf.getvalue().rstrip("\n")
        widths = [
            max(len(c), *(len(r[i]) for r in cells)) if cells else len(c)
            for i, c in enumerate(self.columns)
        ]
        head = "| " + " | ".join(c.ljust(w) for c, w in zip(self.columns, widths)) + " |"
        sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
        body = [
            "| " + " | ".join(v.ljust(w) for v, w in zip(row, widths)) + " |"
            for row in cells
        ]
        return "\n".join([head, sep, *body])


def _emit_record(name: str, record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({k: _fmt(v) for k, v in record.items()}, indent=2)
    return OutputTable(name, list(record), [list(record.values())]).emit(fmt)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_expsum(args) -> int:
    from .expsums import complete_sum, unit_sum

    fn = unit_sum if args.units else complete_sum
    v = fn(args.k, args.q, args.a)
    rec = {
        "k": args.k,
        "q": args.q,
        "a": args.a,
        "units": args.units,
        "real": v.real,
        "imag": v.imag,
        "abs": abs(v),
    }
    print(_emit_record("expsum", rec, args.format))
    return 0


def _orthogonality_residual(p: int, n_res: int, b: int) -> float:
    from .expsums import all_residue_sums

    s2 = all_residue_sums(2, p, units_only=False)
    s3 = all_residue_sums(3, p, units_only=True)
    s4 = all_residue_sums(4, p, units_only=True)
    sb = all_residue_sums(b, p, units_only=True)
    a = np.arange(p)
    lhs = np.sum(s2 * s3**4 * s4 * sb * np.exp((-2j * np.pi / p) * ((a * n_res) % p))) / p
    return abs(complex(lhs) - local.count_L(p, n_res, b))


def _cmd_local(args) -> int:
    n_res = args.n % args.p
    c = local.local_counts(args.p, n_res, args.b)
    rec = {
        "p": args.p,
        "n_res": n_res,
        "b": args.b,
        "L": c.L,
        "K": c.K,
        "Lstar": c.Lstar,
        "Ep": c.Ep,
        "Ep_bound": c.Ep_bound,
        "expsum_residual": _orthogonality_residual(args.p, n_res, args.b),
    }
    print(_emit_record("local", rec, args.format))
    return 0


def _cmd_sseries(args) -> int:
    val = series.singular_series(args.n, args.b, args.pmax)
    rec = {"point": val.point, "lo": val.lo, "hi": val.hi}
    print(_emit_record("sseries", rec, args.format))
    if val.lo <= 0:
        print("verification failure: singular series enclosure not positive", file=sys.stderr)
        return 1
    return 0


def _cmd_omega(args) -> int:
    from .arith import primes_up_to

    rows = [
        [int(p), series.omega_p(int(p), args.n, args.b)]
        for p in primes_up_to(args.pmax)[1:]
    ]
    print(OutputTable("omega", ["p", "omega_p"], rows).emit(args.format))
    return 0


def _cmd_cb(args) -> int:
    r0 = args.r0 if args.r0 is not None else reference.R_ORDER[args.b]
    val = buchstab.C_total(args.b, r0, args.tol)
    rec = {
        "b": args.b,
        "r0": r0,
        "point": val.point,
        "lo": val.lo,
        "hi": val.hi,
        "ref_bound": reference.C_BOUND[args.b],
        "below_log2": val.hi < math.log(2),
    }
    print(_emit_record("cb", rec, args.format))
    return 0


def _rb_row(b: int, tol: float) -> list:
    bud = buchstab.budget(b)
    val = buchstab.C_total(b, reference.R_ORDER[b], tol)
    return [
        b,
        bud.s,
        bud.M,
        val.point,
        val.lo,
        val.hi,
        reference.C_BOUND[b],
        reference.R_ORDER[b],
        buchstab.min_r(b, tol),
    ]


def _cmd_rb(args) -> int:
    bs = list(reference.B_RANGE) if args.all else [args.b]
    if bs == [None]:
        raise ValueError("pass --b B or --all")
    workers = args.threads if args.threads > 0 else min(4, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda b: _rb_row(b, args.tol), bs))
    cols = ["b", "s_b", "M", "C_point", "C_lo", "C_hi", "ref_bound", "r_ref", "min_r"]
    print(OutputTable("rb", cols, rows).emit(args.format))
    return 0


def _cmd_lumu(args) -> int:
    bs = [args.b] if args.b is not None else list(reference.B_RANGE)
    rows = []
    for b in bs:
        ref = reference.R4_ORDER.get(b, "") if args.a == 4 else ""
        rows.append([args.a, b, buchstab.lumu_r(args.a, b), ref])
    print(OutputTable("lumu", ["a", "b", "r_ab", "ref"], rows).emit(args.format))
    return 0


def _cmd_rosser(args) -> int:
    z, D = args.z, args.dlevel
    if args.density == "omega":
        g = rosser.density_from_counts(args.n, args.b, z)
    elif args.density == "uniform":
        g = rosser.density_uniform(z)
    else:
        g = rosser.density_random(z, args.seed)
    rec = {
        "lower_sum": rosser.sifted_sum(rosser.LOWER, g, z, D),
        "V_z": rosser.direct_product(g, z),
        "upper_sum": rosser.sifted_sum(rosser.UPPER, g, z, D),
        "f3_target": buchstab.sieve_f(3.0),
        "F3_target": buchstab.sieve_F(3.0),
    }
    print(_emit_record("rosser", rec, args.format))
    if not rec["lower_sum"] <= rec["V_z"] <= rec["upper_sum"]:
        print("verification failure: sandwich inequality violated", file=sys.stderr)
        return 1
    return 0


def _cmd_jint(args) -> int:
    val = archimedean.singular_integral_J(args.n, args.b, args.bins)
    rec = {"value": val.point, "lo": val.lo, "hi": val.hi}
    print(_emit_record("jint", rec, args.format))
    return 0


def _cmd_jfit(args) -> int:
    Ns = np.geomspace(args.nmin, args.nmax, args.npoints)
    slope, rms = archimedean.exponent_fit(args.b, Ns, bins=args.bins)
    rows = [
        [float(N), archimedean.singular_integral_J(float(N), args.b, args.bins).point]
        for N in Ns
    ]
    out = OutputTable("jfit", ["N", "J"], rows).emit(args.format)
    target = 35.0 / 36.0 + 1.0 / args.b
    if args.format == "json":
        payload = json.loads(out)
        payload.update(slope=_fmt(slope), target=_fmt(target), rms=_fmt(rms))
        out = json.dumps(payload, indent=2)
    else:
        out += f"\nslope {_fmt(slope)} target {_fmt(target)} rms {_fmt(rms)}"
    print(out)
    return 0


def _cmd_verify(args) -> int:
    reports = oracles.run_suites(args.suite)
    ok = True
    for r in reports:
        ok &= r.passed
        line = {
            "name": r.name,
            "cases": r.cases,
            "max_deviation": _fmt(r.max_deviation),
            "passed": r.passed,
            "seconds": format(r.seconds, ".2f"),
        }
        print(json.dumps(line))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wg", description="Sieve and density computations")
    p.add_argument("--format", choices=["json", "csv", "md"], default="md")
    p.add_argument("--tol", type=float, default=buchstab.DEFAULT_TOL)
    p.add_argument("--threads", type=int, default=0, help="0 = auto")
    p.add_argument("--cache", metavar="DIR", help="override the level-cache directory")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("expsum", help="complete or unit power sums mod q")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--units", action="store_true")
    sp.set_defaults(fn=_cmd_expsum)

    sp = sub.add_parser("local", help="congruence counts L, K, Lstar at a prime")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.set_defaults(fn=_cmd_local)

    sp = sub.add_parser("sseries", help="certified truncated singular series")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--pmax", type=int, default=10**3)
    sp.set_defaults(fn=_cmd_sseries)

    sp = sub.add_parser("omega", help="sieve density omega(p) table")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--pmax", type=int, default=100)
    sp.set_defaults(fn=_cmd_omega)

    sp = sub.add_parser("cb", help="C(b) enclosure")
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--r0", type=int)
    sp.set_defaults(fn=_cmd_cb)

    sp = sub.add_parser("rb", help="full decision table over b")
    sp.add_argument("--b", type=int)
    sp.add_argument("--all", action="store_true")
    sp.set_defaults(fn=_cmd_rb)

    sp = sub.add_parser("lumu", help="floor-formula comparison orders r(a,b)")
    sp.add_argument("--a", type=int, default=4)
    sp.add_argument("--b", type=int)
    sp.set_defaults(fn=_cmd_lumu)

    sp = sub.add_parser("rosser", help="sandwich sums for Rosser weights")
    sp.add_argument("--dlevel", type=float, required=True)
    sp.add_argument("--z", type=float, required=True)
    sp.add_argument("--density", choices=["omega", "uniform", "random"], default="uniform")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--b", type=int, default=12)
    sp.add_argument("--n", type=int, default=1000003)
    sp.set_defaults(fn=_cmd_rosser)

    sp = sub.add_parser("jint", help="singular integral J(N)")
    sp.add_argument("--n", type=float, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--bins", type=int, default=4096)
    sp.set_defaults(fn=_cmd_jint)

    sp = sub.add_parser("jfit", help="growth exponent of J(N)")
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--npoints", type=int, default=6)
    sp.add_argument("--nmin", type=float, default=10**6)
    sp.add_argument("--nmax", type=float, default=10**12)
    sp.add_argument("--bins", type=int, default=4096)
    sp.set_defaults(fn=_cmd_jfit)

    sp = sub.add_parser("verify", help="run oracle suites")
    sp.add_argument(
        "--suite",
        default="all",
        choices=["local", "series", "rosser", "buchstab", "archimedean", "all"],
    )
    sp.set_defaults(fn=_cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache:
        os.environ["WG_CACHE_DIR"] = args.cache
    try:
        return args.fn(args)
    except (ValueError, ResourceLimitError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
