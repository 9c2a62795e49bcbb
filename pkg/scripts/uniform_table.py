#!/usr/bin/env python3
"""Tabulate reciprocal ML degrees of generic models.

For each rank r the values along n fit a degree r-1 polynomial in n; the
script prints the table and, for r = 3 and r = 4, compares against the
closed quadratic/cubic forms.
"""

import argparse
from fractions import Fraction

from mldeg import uniform_rmld


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--max-r", type=int, default=6)
    args = parser.parse_args()

    header = ["r\\n"] + [str(n) for n in range(1, args.max_n + 1)]
    print("  ".join(h.rjust(6) for h in header))
    for r in range(1, args.max_r + 1):
        row = [f"r={r}"]
        for n in range(1, args.max_n + 1):
            row.append(str(uniform_rmld(n, r)) if r <= n else ".")
        print("  ".join(cell.rjust(6) for cell in row))

    print("\nPolynomial fits:")
    ok3 = all(
        uniform_rmld(n, 3) == 2 * n * n - 8 * n + 7
        for n in range(3, args.max_n + 1)
    )
    print(f"  r=3: 2n^2 - 8n + 7             matches: {ok3}")
    ok4 = all(
        uniform_rmld(n, 4)
        == Fraction(4, 3) * n ** 3 - 10 * n ** 2 + Fraction(68, 3) * n - 15
        for n in range(4, args.max_n + 1)
    )
    print(f"  r=4: (4/3)n^3 - 10n^2 + (68/3)n - 15   matches: {ok4}")


if __name__ == "__main__":
    main()
