"""
Forward-edge density along tournament prefixes
==============================================

The upward transitive tournament has density 1 on every prefix, its
mirror density 0.  Block constructions sit in between: the factorial
scheme dips after each block boundary and recovers inside the next
block, with the dips creeping upward toward 1/2.
"""

import math
from fractions import Fraction

from tourlab import (
    FactorialBlock,
    TransitiveOmega,
    density_profile,
    factorial_scheme,
    rank_decompose,
    window_min_density,
)

# A coarse profile of the factorial-block tournament.
profile = density_profile(FactorialBlock(), 3000, stride=500)
print("factorial-block density samples:")
for n, d in profile.samples:
    print(f"  n={n:<5} density={float(d):.4f} ({d})")

# The minimum over each inter-factorial window rises toward 1/2.
print("\nper-window minima:")
for k in range(5, 10):
    lo, hi = math.factorial(k - 1) + 1, math.factorial(k)
    m, at = window_min_density(factorial_scheme(), lo, hi)
    gap = float(Fraction(1, 2) - m)
    print(f"  n in ({lo - 1}, {hi}]: min {float(m):.5f} at n={at}"
          f"  (1/2 - min = {gap:.5f})")

# Rank decomposition of a transitive prefix: one vertex per level.
d = rank_decompose(TransitiveOmega(), 8)
print(f"\nK_omega prefix of 8: {d.levels} levels, sizes {d.level_sizes()}")
