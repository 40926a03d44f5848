"""Watch the Rosser sandwich tighten as the level D grows.

For a fixed sieve limit z and the congruence-count density of one target N,
the lower and upper sifted sums must bracket the plain product over primes
below z.  As D grows, both sums converge toward it from their respective
sides; the relative gap is the price of the truncated weights.
"""
import argparse
import sys
import time

import numpy as np

from wgsieve import rosser


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000003)
    ap.add_argument("--b", type=int, default=12)
    ap.add_argument("--z", type=float, default=1e3)
    ap.add_argument("--dmin", type=float, default=1e4)
    ap.add_argument("--dmax", type=float, default=1e10)
    ap.add_argument("--steps", type=int, default=7)
    args = ap.parse_args(argv)

    g = rosser.density_from_counts(args.n, args.b, args.z)
    target = rosser.direct_product(g, args.z)
    print("N = %d, b = %d, z = %g, product V(z) = %.9f" % (args.n, args.b, args.z, target))
    print("%12s  %12s  %12s  %10s" % ("D", "lower", "upper", "rel gap"))
    for D in np.geomspace(args.dmin, args.dmax, args.steps):
        t0 = time.perf_counter()
        lo = rosser.sifted_sum("lower", g, args.z, float(D))
        hi = rosser.sifted_sum("upper", g, args.z, float(D))
        dt = time.perf_counter() - t0
        assert lo <= target <= hi, (lo, target, hi)
        print("%12.3e  %12.9f  %12.9f  %10.2e  (%.2fs)" % (D, lo, hi, (hi - lo) / target, dt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
