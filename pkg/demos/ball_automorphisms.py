"""Automorphisms of the unit ball in the (a, Q, R) form and the four template families.

An automorphism is z -> Q (z - a) / (R (1 - <z, a>)); the data satisfy a
Stein-type system that make_moebius_aut meets by construction.  Only those
whose center is symmetric descend to the symmetrized ball.
"""

from fractions import Fraction

import numpy as np

from symell import LII, LIV, check_equivariance, from_lemma_template, make_moebius_aut, verify_stein
from symell.automorph import random_unitary
from symell.unimodular import ONE, Turn

rng = np.random.default_rng(1)
phi = make_moebius_aut([0.3 + 0.4j, -0.2j, 0.1], random_unitary(3, rng))
print("Stein residual                 :", f"{verify_stein(phi):.1e}")
z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
z /= np.linalg.norm(z)
print("|phi(z)| on the sphere          :", np.linalg.norm(phi(z)))
print("phi(a)                          :", np.round(phi(phi.a), 15))

rot = from_lemma_template(LIV(ONE, ONE))
print("LIV(1, 1) at (1, 0)             :", rot([1, 0]))

lii = from_lemma_template(LII(Fraction(1, 4), Turn(Fraction(1, 8)), Turn(Fraction(1, 2)), [ONE] * 3))
res = check_equivariance(lii, 1, 1)
print("LII commutes with permutations  :", res.complete, f"({len(res.table)} witnesses)")
bad = check_equivariance(make_moebius_aut([0.5, 0.0]), 1, 1)
print("center (0.5, 0) fails at sigma  :", bad.failure[0])
