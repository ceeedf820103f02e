#!/usr/bin/env python3
"""Denominator growth experiment for a built-in instance.

Builds the minimal form by both pipelines, factors every coefficient
denominator, and prints the prime-by-prime verdict table: for each K
with p_K = u + K*v prime and inert, does p_K divide the denominator of
d(K) while all earlier coefficients stay p_K-integral?
"""

import argparse

from vvmf2.denoms import factor_trial, verify_ubd
from vvmf2.minform import minimal_form
from vvmf2.params import params_from_exponents, seed_exponents
from vvmf2.quadratic import denominator_of


def fmt_factors(factors, cofactor):
    parts = [f"{p}^{e}" if e > 1 else f"{p}" for p, e in sorted(factors.items())]
    if cofactor > 1:
        parts.append(f"[{cofactor}]")
    return " * ".join(parts) if parts else "1"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instance", choices=("m2", "m5"), default="m2")
    ap.add_argument("--kmax", type=int, default=40)
    ap.add_argument("--factor-bound", type=int, default=10**6)
    args = ap.parse_args()

    params = params_from_exponents(seed_exponents(args.instance))
    print(f"instance {args.instance}: M={params.M}, u={params.u}, v={params.v}, "
          f"a={params.a}, b={params.b}, c={params.c}")
    mf = minimal_form(params, args.kmax, "both")
    print(f"both pipelines agree through K={args.kmax}")

    print(f"\n{'K':>4} {'den(d(K))':<40} {'p_K':>5}  verdict")
    report = verify_ubd(mf, args.kmax, args.factor_bound)
    rows = {r.K: r for r in report.rows_d}
    for K in range(1, args.kmax + 1):
        den = denominator_of(mf.tables.d[K])
        factors, cofactor = factor_trial(den, args.factor_bound)
        r = rows[K]
        if not r.is_prime:
            verdict = "-"
        elif not r.in_S:
            verdict = "split prime, no claim"
        elif r.exempt:
            verdict = "exempt: " + "; ".join(r.exempt)
        else:
            verdict = "PASS" if r.passed else "FAIL"
        print(f"{K:>4} {fmt_factors(factors, cofactor):<40} {r.p:>5}  {verdict}")

    print(f"\nempirical threshold: every audited inert prime from {report.threshold} on passes")
    if report.exceptional:
        print(f"non-exempt failures at primes: {list(report.exceptional)}")
    else:
        print("no non-exempt failures in range")


if __name__ == "__main__":
    main()
