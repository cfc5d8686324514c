"""Computational toolkit for symmetrized ellipsoids E_{p,n} = pi_n(B_{p,n}).

Modules: :mod:`.polyroot` (monic root finding), :mod:`.symmetric` (the
symmetrization map and induced polynomial maps), :mod:`.domains` (gauges,
membership, samplers), :mod:`.automorph` (ball and ellipsoid automorphisms),
:mod:`.propermaps` (proper maps and their numerical verification) and
:mod:`.cli`.
"""

from .automorph import (
    LI,
    LII,
    LIII,
    LIV,
    BallAutomorphism,
    PhiI,
    PhiII,
    PhiIII,
    check_equivariance,
    ell_aut_eval,
    ell_aut_inverse,
    eval_ball_aut,
    from_lemma_template,
    induce_from_ball,
    make_moebius_aut,
    make_unitary_aut,
    verify_stein,
)
from .domains import (
    Classification,
    EllipsoidParams,
    Region,
    ball_gauge,
    classify,
    minkowski_sym,
    mu_balanced,
    sample_boundary,
    sample_interior,
)
from .polyroot import MonicPoly, coeffs_from_roots, find_roots
from .propermaps import (
    Chain,
    Special,
    Standard,
    build_special,
    build_standard,
    count_preimages,
    eval_proper,
    exists_proper,
    verify_boundary,
    verify_commuting,
)
from .symmetric import fiber, linear_sym_map, power_map, symmetrize, weighted_scale
from .unimodular import Turn

__version__ = "0.1.0"
