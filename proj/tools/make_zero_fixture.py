#!/usr/bin/env python3
"""Generate the L(s, Delta) zero-ordinate fixture with Rubinstein's lcalc.

Requires the `passagemath-lcalc` wheel (bundles libLfunction) and numpy:

    python3 -m venv /tmp/lc && /tmp/lc/bin/pip install passagemath-lcalc numpy
    /tmp/lc/bin/python tools/make_zero_fixture.py --count 200000 --out data/zeros/delta.zeros

Zeros are located by sign changes of the Hardy Z-function on a fixed step
grid, chunk by chunk, and every chunk is checked against lcalc's N(T)
(argument principle). A chunk with missing zeros is rescanned with a finer
step.
"""
import argparse
import math
import sys
import time

import numpy as np
from sage.libs.lcalc.lcalc_Lfunction import Lfunction_D


def tau_coefficients(n_max):
    """tau(1..n_max) as Python ints via Delta = q * (eta^3)^8 (Jacobi)."""
    jacobi = []
    k = 0
    while k * (k + 1) // 2 < n_max:
        jacobi.append((k * (k + 1) // 2, (-1) ** k * (2 * k + 1)))
        k += 1
    series = np.zeros(n_max, dtype=object)
    series[0] = 1
    for _ in range(8):
        out = np.zeros(n_max, dtype=object)
        for shift, c in jacobi:
            out[shift:] += c * series[: n_max - shift]
        series = out
    return [0] + list(series)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200000)
    ap.add_argument("--coefficients", type=int, default=300000)
    ap.add_argument("--chunk", type=float, default=25.0)
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    t0 = time.time()
    tau = tau_coefficients(args.coefficients)
    lam = [float(tau[n]) / n ** 5.5 for n in range(1, args.coefficients + 1)]
    print(f"coefficients ready in {time.time() - t0:.1f}s", file=sys.stderr)
    L = Lfunction_D("Delta", 1, lam, 0, 1 / (2 * math.pi), 1, [1], [5.5], [], [])

    found = 0
    lo = 0.0
    with open(args.out, "w") as fh:
        fh.write("# zeros of L(s, Delta), level 1, weight 12, analytic normalization\n")
        fh.write("# computed with lcalc (libLfunction); one ordinate per line\n")
        n_lo = 0
        while found < args.count:
            hi = lo + args.chunk
            n_hi = int(round(float(L._N(hi)))) // 2
            step = args.step
            while True:
                zs = [float(z) for z in L.find_zeros(lo, hi, step)]
                zs = [z for z in zs if lo < z <= hi]
                if len(zs) == n_hi - n_lo or step < 1e-4:
                    break
                step /= 4
            if len(zs) != n_hi - n_lo:
                print(f"WARNING [{lo},{hi}]: found {len(zs)} expected {n_hi - n_lo}",
                      file=sys.stderr)
            for z in zs:
                if found >= args.count:
                    break
                fh.write(f"{z:.10f}\n")
                found += 1
            fh.flush()
            lo, n_lo = hi, n_hi
            print(f"T={hi:.1f} zeros={found} elapsed={time.time() - t0:.0f}s",
                  file=sys.stderr)


if __name__ == "__main__":
    main()
