import math
from fractions import Fraction

import numpy as np
import pytest

from symell.automorph import (
    LI,
    LII,
    LIII,
    LIV,
    BallAutomorphism,
    InducedMap,
    PhiI,
    PhiII,
    PhiIII,
    ball_inverse,
    check_equivariance,
    compose,
    ell_aut_eval,
    ell_aut_inverse,
    from_lemma_template,
    identity_aut,
    induce_from_ball,
    make_moebius_aut,
    make_unitary_aut,
    phi2_closed_form,
    random_ball_points,
    random_unitary,
    stein_residuals,
    template_formula,
    verify_stein,
)
from symell.domains import EllipsoidParams, minkowski_sym, sample_boundary, sample_interior
from symell.errors import (
    ConstructionError,
    DomainError,
    EquivarianceError,
    PoleError,
    SearchBudgetExceeded,
    ValidationError,
)
from symell.symmetric import fiber, symmetrize
from symell.unimodular import ONE, Turn, roots_of_unity

from conftest import rel_err

HALF = Turn(Fraction(1, 2))


def random_moebius(rng, n, norm=None):
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    a *= (norm if norm is not None else 0.95 * rng.uniform()) / np.linalg.norm(a)
    return make_moebius_aut(a, random_unitary(n, rng))


def unit_sphere(rng, n, count):
    z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_turn(rng, d=97):
    return Turn(Fraction(int(rng.integers(d)), d))


# --- Turn -----------------------------------------------------------------


def test_turn_exact_arithmetic():
    t = Turn(Fraction(1, 3))
    assert (t**3) == ONE and t.is_root_of_unity(3) and not t.is_root_of_unity(2)
    assert Turn(Fraction(5, 4)) == Turn(Fraction(1, 4))
    assert HALF.value == -1 and Turn(Fraction(1, 4)).value == 1j
    assert t * t.conj() == ONE
    assert len(roots_of_unity(4)) == 4 and all(r.is_root_of_unity(4) for r in roots_of_unity(4))


# --- construction and Stein system ----------------------------------------


def test_unitary_examples():
    assert verify_stein(make_unitary_aut(np.eye(3))) == 0
    D = np.diag(np.exp(1j * np.array([0.3, 1.1])))
    z = np.array([0.2, 0.5j])
    np.testing.assert_allclose(make_unitary_aut(D)(z), D @ z)
    H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    w = np.array([0.3 + 0.1j, -0.2j])
    np.testing.assert_allclose(make_unitary_aut(H)(w), template_formula(LIV(ONE, ONE), w), atol=1e-15)
    with pytest.raises(ValidationError) as info:
        make_unitary_aut(np.array([[1, 0.1], [0, 1]]))
    assert info.value.residual > 1e-3


def test_moebius_one_dimensional():
    a0 = 0.4
    phi = make_moebius_aut([a0])
    for z in [0.1, -0.7j, 0.5 + 0.5j]:
        assert phi([z])[0] == pytest.approx((z - a0) / (1 - a0 * z), abs=1e-15)
    assert abs(phi([a0])[0]) < 1e-16


def test_moebius_construction(rng):
    assert verify_stein(make_moebius_aut(np.zeros(3))) == 0
    for n in (2, 3, 4):
        for _ in range(25):
            phi = random_moebius(rng, n, 0.7)
            assert verify_stein(phi) < 1e-10
            assert abs(phi.R) == pytest.approx(1 / math.sqrt(1 - 0.49), rel=1e-14)
            assert np.max(np.abs(phi(phi.a))) < 1e-15
    with pytest.raises(DomainError):
        make_moebius_aut([0.8, 0.6])
    with pytest.raises(ValidationError):
        make_moebius_aut([0.1, 0.1], np.ones((2, 2)))


def test_corrupted_matrix_fails_stein(rng):
    phi = random_moebius(rng, 3, 0.5)
    Q = phi.Q.copy()
    Q[0, 1] += 0.1
    assert verify_stein(BallAutomorphism(phi.a, Q, phi.R)) > 1e-3


def test_literal_third_relation_needs_conjugate(rng):
    # with G = Q^T conj(Q) the first two relations force G conj(a) = |R|^2 conj(a);
    # the unconjugated reading G a = |R|^2 a fails once a is genuinely complex
    phi = make_moebius_aut([0.3 + 0.4j, 0.2 - 0.1j])
    G = phi.Q.T @ phi.Q.conj()
    R2 = abs(phi.R) ** 2
    assert np.max(np.abs(G @ phi.a.conj() - R2 * phi.a.conj())) < 1e-14
    assert np.max(np.abs(G @ phi.a - R2 * phi.a)) > 1e-3
    real = make_moebius_aut([0.3, -0.2])
    G = real.Q.T @ real.Q.conj()
    assert np.max(np.abs(G @ real.a - abs(real.R) ** 2 * real.a)) < 1e-14


def test_stein_report_keys():
    res = stein_residuals(identity_aut(2))
    assert set(res) == {"constraint_A", "constraint_B", "stein_1", "stein_2", "stein_3"}
    assert max(res.values()) == 0


# --- evaluation -------------------------------------------------------------


def test_sphere_preservation(rng):
    for _ in range(100):
        n = int(rng.integers(2, 6))
        phi = random_moebius(rng, n)
        z = unit_sphere(rng, n, 5)
        np.testing.assert_allclose(np.linalg.norm(phi(z), axis=1), 1, atol=1e-9)


def test_ball_maps_into_ball(rng):
    phi = random_moebius(rng, 3, 0.9)
    z = random_ball_points(rng, 3, 200, 0.999)
    assert np.all(np.linalg.norm(phi(z), axis=1) < 1)


def test_batch_matches_pointwise(rng):
    phi = random_moebius(rng, 3)
    z = random_ball_points(rng, 3, 10)
    np.testing.assert_allclose(phi(z), np.array([phi(x) for x in z]), atol=1e-15)


def test_pole_guard():
    phi = make_moebius_aut([0.5, 0.0])
    with pytest.raises(PoleError):
        phi([2.0, 0.0])


def test_inverse_and_composition(rng):
    for n in (2, 3):
        phi, psi = random_moebius(rng, n), random_moebius(rng, n)
        z = random_ball_points(rng, n, 50)
        assert rel_err(ball_inverse(phi)(phi(z)), z) < 1e-12
        comp = compose(phi, psi)
        assert verify_stein(comp) < 1e-10
        assert rel_err(comp(z), phi(psi(z))) < 1e-12
        s = unit_sphere(rng, n, 50)
        np.testing.assert_allclose(np.linalg.norm(comp(s), axis=1), 1, atol=1e-9)


# --- templates ----------------------------------------------------------------


def random_templates(rng):
    yield LI(random_turn(rng), [Turn(Fraction(k, 3)) for k in (0, 1, 2)], m=3)
    yield LII(Fraction(1, 5), random_turn(rng), random_turn(rng), [ONE, HALF, ONE], m=2)
    yield LII(Fraction(-1, 3), random_turn(rng), random_turn(rng), [ONE] * 4)
    yield LIII(Fraction(2, 5), random_turn(rng), random_turn(rng), m=2)
    yield LIV(random_turn(rng), HALF, m=2, l=2)


def test_templates_match_formula(rng):
    for t in random_templates(rng):
        phi = from_lemma_template(t)
        z = random_ball_points(rng, phi.n, 100)
        assert np.max(np.abs(phi(z) - template_formula(t, z))) <= 1e-12
        if isinstance(t, (LII, LIII)):
            np.testing.assert_array_equal(phi.a, float(t.a0))
        else:
            assert not phi.a.any()


def test_template_identity_cases(rng):
    z = random_ball_points(rng, 3, 20)
    np.testing.assert_allclose(from_lemma_template(LI(ONE, [ONE] * 3))(z), z, atol=1e-15)
    np.testing.assert_allclose(from_lemma_template(LII(0, ONE, HALF, [ONE] * 3))(z), z, atol=1e-15)
    w = np.array([0.3 + 0.2j, -0.1j])
    expected = np.array([w[0] + w[1], w[0] - w[1]]) / math.sqrt(2)
    np.testing.assert_allclose(from_lemma_template(LIV(ONE, ONE))(w), expected, atol=1e-15)


@pytest.mark.parametrize(
    "make",
    [
        lambda: LI(ONE, [HALF, ONE], m=1),
        lambda: LII(Fraction(3, 5), ONE, ONE, [ONE, ONE, ONE]),
        lambda: LII(0, ONE, ONE, [ONE, ONE], l=2, m=2),
        lambda: LIII(0, ONE, ONE, m=3),
        lambda: LIII(Fraction(3, 4), ONE, ONE),
        lambda: LIV(ONE, Turn(Fraction(1, 3)), m=2),
        lambda: LIV(ONE, ONE, m=3, l=2),
    ],
)
def test_template_validation(make):
    with pytest.raises(ConstructionError):
        make()


# --- equivariance ---------------------------------------------------------------


def test_equivariance_identity():
    res = check_equivariance(identity_aut(2), 2, 2)
    assert res.complete and len(res.table) == 2 * 4
    for (sigma, xi), (tau, eta) in res.table.items():
        # z = eta * (xi * z_sigma)_tau forces tau = sigma^-1 and eta_j = conj(xi_tau(j))
        assert all(sigma[tau[j]] == j for j in range(2))
        assert all(eta[j] == xi[tau[j]].conj() for j in range(2))


@pytest.mark.parametrize("n", [2, 3])
def test_equivariance_lii(n):
    t = LII(Fraction(1, 4), Turn(Fraction(1, 7)), Turn(Fraction(2, 5)), [ONE] * n)
    res = check_equivariance(from_lemma_template(t), 1, 1)
    assert res.complete and len(res.table) == math.factorial(n)


def test_equivariance_lii_with_eta():
    t = LII(Fraction(1, 5), ONE, HALF, [ONE, HALF, ONE], m=2)
    assert check_equivariance(from_lemma_template(t), 1, 2).complete


def test_equivariance_liv():
    assert check_equivariance(from_lemma_template(LIV(ONE, HALF)), 2, 2).complete


def test_equivariance_failure_witness():
    res = check_equivariance(make_moebius_aut([0.5, 0.0]), 1, 1)
    assert not res.complete
    sigma, xi = res.failure
    assert sigma == (1, 0)


def test_equivariance_budget():
    with pytest.raises(SearchBudgetExceeded):
        check_equivariance(identity_aut(5), 1, 1)
    with pytest.raises(SearchBudgetExceeded):
        check_equivariance(identity_aut(4), 4, 4, budget=1000)


# --- induced maps and ellipsoid automorphisms ------------------------------------


def test_induced_identity(rng):
    s = symmetrize(random_ball_points(rng, 3, 10))
    ind = induce_from_ball(identity_aut(3))
    assert all(rel_err(ind(x), x) < 1e-12 for x in s)


def test_induced_rejects_asymmetric_center():
    with pytest.raises(EquivarianceError) as info:
        InducedMap(make_moebius_aut([0.5, 0.0]))
    assert info.value.witness is not None


def test_induced_li_is_phi_i(rng):
    zeta = Turn(Fraction(3, 11))
    params = EllipsoidParams(1, 3)
    ind = induce_from_ball(from_lemma_template(LI(zeta, [ONE] * 3)))
    for s in sample_interior(params, 0, 30):
        expected = zeta.value ** np.arange(1, 4) * s
        assert rel_err(ind(s), expected) < 1e-12
        assert rel_err(ell_aut_eval(PhiI(params, zeta), s), expected) < 1e-15


def test_phi_i_example():
    zeta = Turn(Fraction(1, 4))
    np.testing.assert_allclose(ell_aut_eval(PhiI((1, 3), zeta), [1, 1, 1]), [1j, -1, -1j], atol=1e-15)


def test_phi_ii_three_routes(rng):
    for n in (2, 3, 4):
        params = EllipsoidParams(1, n)
        for _ in range(5):
            a0 = Fraction(int(rng.integers(-9, 10)), 10 * n)
            psi = PhiII(params, random_turn(rng), random_turn(rng), a0, random_turn(rng))
            t = psi.template
            for s in sample_interior(params, int(rng.integers(1000)), 20):
                induced = ell_aut_eval(psi, s)
                z = psi.omega.value * fiber(s)
                direct = symmetrize(template_formula(t, z))
                assert rel_err(induced, phi2_closed_form(psi, s)) <= 1e-10
                assert rel_err(induced, direct) <= 1e-10


def test_phi_ii_identity_and_errors(rng):
    params = EllipsoidParams(1, 3)
    psi = PhiII(params, ONE, HALF)
    for s in sample_interior(params, 1, 10):
        assert rel_err(ell_aut_eval(psi, s), s) < 1e-12
    with pytest.raises(ConstructionError):
        PhiII(EllipsoidParams(Fraction(1, 2), 2), ONE, HALF)
    with pytest.raises(ConstructionError):
        PhiII(params, ONE, HALF, Fraction(3, 5))


def test_phi_iii_examples_and_involution(rng):
    s = np.array([0.4 + 0.1j, -0.2j])
    np.testing.assert_allclose(ell_aut_eval(PhiIII(), s), [s[0], s[0] ** 2 / 4 - s[1]], atol=1e-16)
    for s in sample_interior(EllipsoidParams(Fraction(1, 2), 2), 5, 100):
        twice = ell_aut_eval(PhiIII(), ell_aut_eval(PhiIII(), s))
        assert np.max(np.abs(twice - s)) <= 1e-12
    with pytest.raises(ConstructionError):
        PhiIII(ONE, EllipsoidParams(1, 2))


def test_phi_iii_descends_from_liv(rng):
    # pi_2(LIV(zeta, 1)(z)^2) = PhiIII(zeta^2)(pi_2(z^2)), by expanding the squares
    for _ in range(5):
        zeta = random_turn(rng)
        phi = from_lemma_template(LIV(zeta, ONE))
        for z in random_ball_points(rng, 2, 20):
            lhs = symmetrize(phi(z) ** 2)
            rhs = ell_aut_eval(PhiIII(zeta**2), symmetrize(z**2))
            assert rel_err(lhs, rhs) < 1e-14


def all_families(rng):
    for n in (2, 3):
        yield PhiI((1, n), random_turn(rng))
        yield PhiI((Fraction(1, 3), n), random_turn(rng))
        yield PhiII((1, n), random_turn(rng), random_turn(rng), Fraction(1, 2 * n), random_turn(rng))
    yield PhiIII(random_turn(rng))


def test_families_preserve_boundary(rng):
    for psi in all_families(rng):
        for s in sample_boundary(psi.params, 11, 200):
            assert abs(minkowski_sym(ell_aut_eval(psi, s), psi.params) - 1) <= 1e-8


def test_families_preserve_interior(rng):
    for psi in all_families(rng):
        for s in sample_interior(psi.params, 12, 50):
            assert minkowski_sym(ell_aut_eval(psi, s), psi.params) < 1


def test_inverses(rng):
    zeta = Turn(Fraction(2, 9))
    assert ell_aut_inverse(PhiI((1, 2), zeta)) == PhiI((1, 2), zeta.conj())
    assert ell_aut_inverse(PhiIII()) == PhiIII()
    for psi in all_families(rng):
        inv = ell_aut_inverse(psi)
        for s in sample_interior(psi.params, 13, 100):
            assert rel_err(ell_aut_eval(inv, ell_aut_eval(psi, s)), s) <= 1e-9


def test_phi_ii_inverse_matches_ball_inverse(rng):
    psi = PhiII((1, 3), Turn(Fraction(1, 6)), Turn(Fraction(3, 8)), Fraction(-1, 4), Turn(Fraction(1, 5)))
    inv = ell_aut_inverse(psi)
    z = random_ball_points(rng, 3, 30)
    assert rel_err(inv.ball_lift(z), ball_inverse(psi.ball_lift)(z)) < 1e-12
    assert inv.a0 == Fraction(1, 4)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        ell_aut_eval(PhiI((1, 3)), [1, 2])
