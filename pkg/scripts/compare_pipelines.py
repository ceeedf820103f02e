#!/usr/bin/env python3
"""Timing and agreement of the three routes to the minimal-form coefficients.

Route A: the closed-form double sums over the integer Hauptmodul tables.
Route B: the Frobenius recursion on the weight-zero differential equation.
Route C: direct truncated-series algebra (binomial power of the
Hauptmodul deviation times the partial hypergeometric sum), with no
tables and no recursion.  All three must agree exactly.
"""

import argparse
import time

from vvmf2.forms import hauptmodul
from vvmf2.minform import h_closed, h_frobenius, seq_f
from vvmf2.params import params_from_exponents, seed_exponents
from vvmf2.qseries import PureQSeries


def direct_series_route(params, kmax):
    K, _ = hauptmodul(kmax + 2)
    kinv = K.inv()
    f, _ = seq_f(params, kmax)
    total = PureQSeries.constant(1, len(kinv.coeffs))
    power = PureQSeries.constant(1, len(kinv.coeffs))
    for k in range(1, kmax + 1):
        power = power * kinv
        total = total + power * f[k]
    one_plus_x = kinv.shifted(-1)
    series = one_plus_x.pow_binomial(params.l1).shifted(params.l1) * total
    return [series.coeff(params.l1 + n) for n in range(kmax + 1)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instance", choices=("m2", "m5"), default="m2")
    ap.add_argument("--kmax", type=int, nargs="+", default=[10, 20, 40])
    args = ap.parse_args()

    params = params_from_exponents(seed_exponents(args.instance))
    print(f"{'Kmax':>6} {'closed':>10} {'frobenius':>10} {'series':>10}  agreement")
    for kmax in args.kmax:
        t0 = time.monotonic()
        a, _ = h_closed(params, kmax)
        ta = time.monotonic() - t0
        t0 = time.monotonic()
        b, _ = h_frobenius(params, kmax)
        tb = time.monotonic() - t0
        t0 = time.monotonic()
        c = direct_series_route(params, kmax)
        tc = time.monotonic() - t0
        ok = all(a[n] == b[n] == c[n] for n in range(kmax + 1))
        print(f"{kmax:>6} {ta:>9.3f}s {tb:>9.3f}s {tc:>9.3f}s  {'exact' if ok else 'MISMATCH'}")
        if not ok:
            raise SystemExit(1)


if __name__ == "__main__":
    main()
