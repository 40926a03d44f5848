"""Tabulate the sieve constant C(b) for every admissible b.

For each b this prints the sieve budget (s_b, M_b), the reference almost-prime
order r(b), the smallest order our own computation certifies, the converged
value of C(b, r(b)) with its enclosure width, the shipped reference bound, and
the gap between the two.  Negative gap means the computed value exceeds the
bound; a large positive gap means the bound is slack.
"""
import argparse
import csv
import math
import sys
import time

from wgsieve import buchstab, reference


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=buchstab.DEFAULT_TOL)
    ap.add_argument("--csv", metavar="PATH", help="also write the table as csv")
    args = ap.parse_args(argv)

    header = ("b", "s_b", "M", "r_ref", "min_r", "C_point", "width", "ref_bound", "gap")
    rows = []
    t0 = time.perf_counter()
    for b in reference.B_RANGE:
        bud = buchstab.budget(b)
        r0 = reference.R_ORDER[b]
        enc = buchstab.C_total(b, r0, tol=args.tol)
        rows.append(
            (
                b,
                "%.4f" % bud.s,
                bud.M,
                r0,
                buchstab.min_r(b, tol=args.tol),
                "%.9f" % enc.point,
                "%.1e" % enc.width,
                "%.6f" % reference.C_BOUND[b],
                "%+.6f" % (reference.C_BOUND[b] - enc.point),
            )
        )
    elapsed = time.perf_counter() - t0

    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(str(v).rjust(w) for v, w in zip(r, widths)))
    print()
    print("log 2 = %.9f; every C_point above would break the final inequality" % math.log(2))
    print("%d rows in %.1fs" % (len(rows), elapsed))

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
        print("wrote", args.csv)
    return 0


if __name__ == "__main__":
    sys.exit(main())
