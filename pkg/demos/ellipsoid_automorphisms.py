"""The three automorphism families of symmetrized ellipsoids.

PhiI rotates with weights, PhiII descends from a symmetric-center Moebius
map of the ball (only on E_{1,n}) and PhiIII is the extra involution of
E_{1/2,2}.  All of them keep the boundary on the boundary.
"""

from fractions import Fraction

import numpy as np

from symell import EllipsoidParams, PhiI, PhiII, PhiIII, ell_aut_eval, ell_aut_inverse, minkowski_sym
from symell.automorph import phi2_closed_form
from symell.domains import sample_boundary
from symell.unimodular import Turn

E13 = EllipsoidParams(1, 3)
psi = PhiII(E13, Turn(Fraction(1, 5)), Turn(Fraction(2, 3)), Fraction(1, 3))
s = np.array([0.2 + 0.1j, -0.05, 0.01j])
print("PhiII via the ball lift :", ell_aut_eval(psi, s))
print("PhiII closed form       :", phi2_closed_form(psi, s))
print("inverse round trip      :", ell_aut_eval(ell_aut_inverse(psi), ell_aut_eval(psi, s)))

t = np.array([0.4, 0.03])
once = ell_aut_eval(PhiIII(), t)
print("PhiIII(0.4, 0.03)       :", once, " twice:", ell_aut_eval(PhiIII(), once))

for aut in (PhiI(E13, Turn(Fraction(1, 7))), psi, PhiIII(Turn(Fraction(1, 3)))):
    dev = max(abs(minkowski_sym(ell_aut_eval(aut, b), aut.params) - 1) for b in sample_boundary(aut.params, 0, 100))
    print(f"{type(aut).__name__:7s} boundary drift over 100 samples: {dev:.1e}")
