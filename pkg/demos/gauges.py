"""Gauges of symmetrized ellipsoids and a CSV slice for plotting.

mu(s) is the ball gauge of the fiber; it is weighted homogeneous,
mu(lam s1, lam^2 s2, ...) = |lam| mu(s), and P_l turns E_{p,n} into E_{p/l,n}.
"""

from fractions import Fraction

import numpy as np

from symell import EllipsoidParams, classify, minkowski_sym, mu_balanced, power_map, weighted_scale
from symell.domains import ellipsoid_member

E = EllipsoidParams(1, 2)
s = np.array([7 / 5, 12 / 25])  # pi_2(3/5, 4/5), a boundary point
print("mu(pi(3/5, 4/5))         =", minkowski_sym(s, E))
print("classify                 =", classify(s, E, 1e-6).region.value)
print("mu after lambda = 1/2    =", minkowski_sym(weighted_scale(s, 0.5), E))
print("bisection from membership:", mu_balanced(ellipsoid_member(E), [1, 2], weighted_scale(s, 0.5)))

# the gauge law under P_2: E_{1,2} -> E_{1/2,2}
t = np.array([0.3 + 0.2j, -0.1j])
mu = minkowski_sym(t, E)
print(f"mu_src^2 = {mu**2:.12f}   mu_dst(P_2 s) = "
      f"{minkowski_sym(power_map(t, 2), EllipsoidParams(Fraction(1, 2), 2)):.12f}")

# a coarse real slice s = (x, y) of E_{1,2}; the CLI `slice` command writes the same grid as CSV
xs = np.linspace(-2, 2, 21)
for y in xs[::-4]:
    print("".join("#" if minkowski_sym([x, y], E) < 1 else "." for x in xs), f" y = {y:+.1f}")
