#!/usr/bin/env python3
"""Scan how fast the greatest-prime-ordered mu* sums collapse to zero.

For each exponent budget the final running sum is the identity defect at
those bounds; the prime-ratio reconstruction of e carries the same defect
in its logarithm, which the table confirms side by side.
"""

import argparse
import cmath

from geoprod import GpoBounds, builtin, mu_star_partial_sums, prime_extend


def run(s: float, max_prime_index: int, budgets: list[int]) -> None:
    model = builtin("exp")
    print(f"s = {s}, primes = first {max_prime_index}")
    print(f"{'budget':>6}  {'terms':>8}  {'|sum mu*|':>12}  {'|log ext - 1|':>14}")
    for budget in budgets:
        bounds = GpoBounds(max_prime_index, budget)
        count = 0
        running = 0j
        for _, running in mu_star_partial_sums(s, bounds):
            count += 1
        result = prime_extend(model, 1.0, s, bounds, cross_check=False)
        defect = abs(cmath.log(result.value) - 1.0)
        print(f"{budget:>6}  {count:>8}  {abs(running):>12.3e}  {defect:>14.3e}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s", type=float, default=2.0)
    parser.add_argument("--max-prime-index", type=int, default=6)
    parser.add_argument("--budgets", type=int, nargs="+", default=[8, 12, 16, 20, 24])
    args = parser.parse_args()
    run(args.s, args.max_prime_index, args.budgets)
