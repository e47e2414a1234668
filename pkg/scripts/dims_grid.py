#!/usr/bin/env python3
"""Print the main/degenerate dimension table with reducibility flags.

Usage: python scripts/dims_grid.py [n_max] [d_max] [r_max]
"""

import sys

from quotbilin.bilin import bilin_dims


def main() -> int:
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    d_max = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    r_max = int(sys.argv[3]) if len(sys.argv) > 3 else 4
    header = f"{'n':>3} {'d':>3} {'r1':>3} {'r2':>3} {'main':>6} {'degen':>6} " \
             f"{'red.count':>10} {'red.secant':>10} {'irred':>6}"
    print(header)
    print("-" * len(header))
    for n in range(1, n_max + 1):
        for d in range(2, d_max + 1):
            for r1 in range(d, r_max + 1):
                for r2 in range(d, r_max + 1):
                    rep = bilin_dims(n, d, r1, r2)
                    print(f"{n:>3} {d:>3} {r1:>3} {r2:>3} {rep.main_dim:>6} "
                          f"{rep.degenerate_dim:>6} "
                          f"{str(rep.reducible_by_count):>10} "
                          f"{str(rep.reducible_by_secant):>10} "
                          f"{str(rep.irreducible):>6}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
