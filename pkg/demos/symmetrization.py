"""Symmetrization, fibers and the induced power maps.

pi_n sends a point of C^n to its elementary symmetric polynomials; the fiber
is recovered from the roots of t^n - s1 t^(n-1) + ... and the power map P_l
is the polynomial map with P_l o pi_n = pi_n o (z -> z^l).
"""

import numpy as np

from symell import fiber, power_map, symmetrize

z = np.array([2.0, 3.0])
s = symmetrize(z)
print("pi_2(2, 3)          =", s)
print("fiber back          =", fiber(s))

# P_2 has the explicit form (s1^2 - 2 s2, s2^2) for n = 2
print("P_2(5, 6)           =", power_map(s, 2), " vs  (s1^2 - 2 s2, s2^2) =", [25 - 12, 36])

# the defining identity on a random point of C^4
rng = np.random.default_rng(0)
w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
for l in (2, 3):
    gap = np.max(np.abs(power_map(symmetrize(w), l) - symmetrize(w**l)))
    print(f"|P_{l}(pi(w)) - pi(w^{l})| = {gap:.1e}")

# fibers are multisets: order is canonical, repeated roots are kept
print("fiber of (2, 1)     =", fiber([2, 1]), "(double root 1)")
