#!/usr/bin/env python3
"""Sample random framed modules and compare the two tangent computations.

Usage: python scripts/tangent_sweep.py [count] [seed] [field]
"""

import random
import sys

from quotbilin.exactalg import QQ, parse_field
from quotbilin.modcore import rand_framed_module
from quotbilin.quot import hom_KM_univariate, quot_tangent


def main() -> int:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 25
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    field = parse_field(sys.argv[3]) if len(sys.argv) > 3 else QQ
    rng = random.Random(seed)
    mismatches = 0
    for i in range(count):
        d = rng.randint(1, 3)
        r = rng.randint(1, 3)
        m = rand_framed_module(rng, field, 1, d, r)
        tdim = quot_tangent(m).dim
        odim = hom_KM_univariate(m).dim
        status = "ok" if tdim == odim == d * r else "MISMATCH"
        if status != "ok":
            mismatches += 1
        print(f"[{i:3}] d={d} r={r} deformation={tdim} hom_oracle={odim} "
              f"expected={d * r} {status}")
    print(f"{count} samples over {field.name}, {mismatches} mismatches")
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
