"""Fit the growth exponent of the Archimedean integral J(N) for each b.

The density heuristic predicts J(N) ~ N^(35/36 + 1/b) up to slowly varying
factors.  This fits log J against log N over a log-spaced grid and reports
the deviation of the fitted slope from the prediction.
"""
import argparse
import sys
import time

import numpy as np

from wgsieve import archimedean, reference


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bs", type=int, nargs="*", default=list(reference.B_RANGE))
    ap.add_argument("--nmin", type=float, default=1e6)
    ap.add_argument("--nmax", type=float, default=1e12)
    ap.add_argument("--points", type=int, default=6)
    args = ap.parse_args(argv)

    Ns = np.geomspace(args.nmin, args.nmax, args.points)
    print("fit over %d points, N in [%g, %g]" % (args.points, args.nmin, args.nmax))
    print("%3s  %10s  %10s  %9s  %8s" % ("b", "slope", "predicted", "deviation", "rms"))
    t0 = time.perf_counter()
    worst = 0.0
    for b in args.bs:
        slope, rms = archimedean.exponent_fit(b, Ns)
        target = 35.0 / 36.0 + 1.0 / b
        dev = slope - target
        worst = max(worst, abs(dev))
        print("%3d  %10.6f  %10.6f  %+9.4f  %8.2e" % (b, slope, target, dev, rms))
    print("worst |deviation| %.4f over %d fits in %.1fs" % (worst, len(args.bs), time.perf_counter() - t0))
    return 0


if __name__ == "__main__":
    sys.exit(main())
