"""Proper maps between symmetrized ellipsoids, checked numerically.

A proper map E_{p,n} -> E_{q,n} exists exactly when p/q is a positive integer;
the standard ones are P_{p/q} after an automorphism, and in dimension two there
is an extra chain through PhiIII.
"""

from fractions import Fraction

from symell import (
    EllipsoidParams,
    PhiI,
    PhiII,
    build_special,
    build_standard,
    count_preimages,
    eval_proper,
    exists_proper,
    verify_boundary,
)
from symell.domains import sample_interior
from symell.propermaps import Chain, PowerStep, ScaleStep
from symell.unimodular import ONE, Turn

for p, q in [(1, Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 3)), (Fraction(2, 3), Fraction(1, 6))]:
    print(f"proper map E_{{{p}}} -> E_{{{q}}} exists: {exists_proper(p, q)}")

E12 = EllipsoidParams(1, 2)
f = build_standard(1, Fraction(1, 2), 2, PhiI(E12))
print("P_2(0.5, 0.06) =", eval_proper(f, [0.5, 0.06]))

for name, g in [
    ("P_3 on E_{1,3}", build_standard(1, Fraction(1, 3), 3, PhiI(EllipsoidParams(1, 3)))),
    ("special m=2", build_special(2, Turn(Fraction(1, 6)), PhiII(E12, ONE, Turn(Fraction(1, 2)), Fraction(1, 4)))),
    ("P_2 then doubling", Chain((PowerStep(2), ScaleStep(2.0)), E12, EllipsoidParams(Fraction(1, 2), 2))),
]:
    r = verify_boundary(g, 200, 0)
    line = f"{name:18s} passes={r.passed!s:5s} boundary residual {r['boundary_to_boundary'].max_residual:.1e}"
    if not isinstance(g, Chain):
        line += f", preimages {count_preimages(g, sample_interior(g.dst, 1, 1)[0])}"
    print(line)
