"""Automorphisms of the unit ball and of symmetrized ellipsoids.

Ball automorphisms are stored as ``(a, Q, R)`` and act by

    phi_j(z) = sum_k Q[j, k] * (z_k - a_k) / (R * (1 - sum_k conj(a_k) * z_k)).

The four template families (:class:`LI`, :class:`LII`, :class:`LIII`,
:class:`LIV`) convert to that representation, and :func:`induce_from_ball`
pushes a ball automorphism that commutes with permutations (and, for ``l > 1``,
with coordinatewise ``l``-th roots of unity) down to symmetrized coordinates.

Ellipsoid automorphisms come in three variants: :class:`PhiI` (weighted torus
rotations, any ``(p, n)``), :class:`PhiII` (Moebius type, ``p = 1``) and
:class:`PhiIII` (the exceptional family of ``E_{1/2,2}``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Union

import numpy as np

from .domains import EllipsoidParams
from .errors import (
    ConsistencyError,
    ConstructionError,
    DomainError,
    EquivarianceError,
    PoleError,
    SearchBudgetExceeded,
    ValidationError,
)
from .symmetric import as_cvec, fiber, linear_sym_map, symmetrize, weighted_scale
from .unimodular import ONE, Turn, as_fraction, roots_of_unity

#: tolerance for the unitarity / Stein checks done at construction time
TOL_STEIN = 1e-10
#: denominators smaller than this are reported as poles
POLE_GUARD = 1e-14
#: cap on n! * l**n * m**n for the exhaustive equivariance search
EQUIVARIANCE_BUDGET = 10**6


# ---------------------------------------------------------------------------
# ball automorphisms


@dataclass(frozen=True, eq=False)
class BallAutomorphism:
    a: np.ndarray
    Q: np.ndarray
    R: complex

    def __post_init__(self):
        a = np.array(self.a, dtype=complex).reshape(-1)
        Q = np.array(self.Q, dtype=complex)
        if Q.shape != (a.size, a.size):
            raise ValueError(f"Q must be {a.size}x{a.size}, got {Q.shape}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(Q)) and np.isfinite(self.R)):
            raise ValueError("automorphism data must be finite")
        if np.linalg.norm(a) >= 1:
            raise DomainError("the center a must lie in the open unit ball")
        if self.R == 0:
            raise ValueError("R must be nonzero")
        a.setflags(write=False)
        Q.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "R", complex(self.R))

    @property
    def n(self) -> int:
        return self.a.size

    def __call__(self, z) -> np.ndarray:
        return eval_ball_aut(self, z)


def identity_aut(n: int) -> BallAutomorphism:
    return BallAutomorphism(np.zeros(n), np.eye(n), 1.0)


def eval_ball_aut(phi: BallAutomorphism, z) -> np.ndarray:
    """Evaluate ``phi`` at a point ``(n,)`` or at each row of ``(k, n)``."""
    z = np.asarray(z, dtype=complex)
    den = phi.R * (1.0 - z @ phi.a.conj())
    if np.any(np.abs(den) < POLE_GUARD):
        raise PoleError("denominator vanishes; input lies outside the closed ball")
    num = (z - phi.a) @ phi.Q.T
    return num / np.asarray(den)[..., None]


def jacobian(phi: BallAutomorphism, z) -> np.ndarray:
    """Complex Jacobian matrix of ``phi`` at ``z``."""
    z = as_cvec(z)
    t = 1.0 - phi.a.conj() @ z
    inner = np.eye(phi.n) / t + np.outer(z - phi.a, phi.a.conj()) / t**2
    return phi.Q @ inner / phi.R


def from_center_jacobian(a, J) -> BallAutomorphism:
    """The automorphism vanishing at ``a`` with Jacobian ``J`` there.

    Uses positive real ``R``; ``Q = R (1 - |a|^2) J``.
    """
    a = as_cvec(a)
    r2 = float(np.vdot(a, a).real)
    R = 1.0 / math.sqrt(1.0 - r2)
    return BallAutomorphism(a, R * (1.0 - r2) * np.asarray(J, dtype=complex), R)


def ball_inverse(phi: BallAutomorphism) -> BallAutomorphism:
    c = phi(np.zeros(phi.n))
    return from_center_jacobian(c, np.linalg.inv(jacobian(phi, np.zeros(phi.n))))


def compose(phi: BallAutomorphism, psi: BallAutomorphism) -> BallAutomorphism:
    """``phi o psi``."""
    c = ball_inverse(psi)(phi.a)
    return from_center_jacobian(c, jacobian(phi, phi.a) @ jacobian(psi, c))


def precompose_unitary(phi: BallAutomorphism, U) -> BallAutomorphism:
    """``z -> phi(U z)`` for unitary ``U``, computed exactly."""
    U = np.asarray(U, dtype=complex)
    return BallAutomorphism(U.conj().T @ phi.a, phi.Q @ U, phi.R)


def stein_residuals(phi: BallAutomorphism) -> dict[str, float]:
    """Max-abs residual of each defining relation of ``(a, Q, R)``.

    The third relation is checked as ``Q^T conj(Q) conj(a) = |R|^2 conj(a)``,
    which is what the first two relations imply for complex ``a``.
    """
    a, Q, R = phi.a, phi.Q, phi.R
    I = np.eye(phi.n)
    R2 = abs(R) ** 2
    G = Q.T @ Q.conj()
    return {
        "constraint_A": float(np.max(np.abs(Q.conj() @ (I - np.outer(a.conj(), a)) @ Q.T - I))),
        "constraint_B": abs(R.conjugate() * (1.0 - a @ a.conj()) * R - 1.0),
        "stein_1": float(np.max(np.abs(G - R2 * np.outer(a.conj(), a) - I))),
        "stein_2": abs(R2 - a @ G @ a.conj() - 1.0),
        "stein_3": float(np.max(np.abs(G @ a.conj() - R2 * a.conj()))) if phi.n else 0.0,
    }


def verify_stein(phi: BallAutomorphism) -> float:
    """Largest residual over the Stein system and the two defining constraints."""
    return max(stein_residuals(phi).values())


def unitarity_residual(U) -> float:
    U = np.asarray(U, dtype=complex)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def make_unitary_aut(U, tol: float = TOL_STEIN) -> BallAutomorphism:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("U must be a square matrix")
    res = unitarity_residual(U)
    if res > tol:
        raise ValidationError("matrix is not unitary", res)
    return BallAutomorphism(np.zeros(U.shape[0]), U, 1.0)


def make_moebius_aut(a, U=None, tol: float = TOL_STEIN) -> BallAutomorphism:
    """Automorphism sending ``a`` to 0, ``Q = U (I - a a^*)^(-1/2)``.

    The positive square root is built in closed form from the rank-one
    structure, so all unitary freedom sits in ``U``.
    """
    a = as_cvec(a)
    n = a.size
    U = np.eye(n, dtype=complex) if U is None else np.asarray(U, dtype=complex)
    r2 = float(np.vdot(a, a).real)
    if r2 >= 1.0:
        raise DomainError(f"|a| = {math.sqrt(r2):.6g} is not inside the unit ball")
    res = unitarity_residual(U)
    if res > tol:
        raise ValidationError("U is not unitary", res)
    root = 1.0 / math.sqrt(1.0 - r2)
    M = np.eye(n, dtype=complex)
    if r2 > 0:
        M += (root - 1.0) * np.outer(a, a.conj()) / r2
    return BallAutomorphism(a, U @ M, root)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a Ginibre matrix."""
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_ball_points(rng: np.random.Generator, n: int, count: int, radius: float = 0.9):
    w = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    return w * (radius * rng.uniform(size=(count, 1)) ** (1.0 / (2 * n)))


# ---------------------------------------------------------------------------
# template families


def _turns(xs) -> tuple[Turn, ...]:
    return tuple(Turn.of(x) for x in xs)


def _check_roots(eta: tuple[Turn, ...], m: int):
    for e in eta:
        if not e.is_root_of_unity(m):
            raise ConstructionError(f"eta = exp(2 pi i {e}) is not an {m}-th root of unity")


def _check_lm(m: int, l: int):
    if int(m) != m or int(l) != l or m < 1 or l < 1:
        raise ConstructionError("m and l must be positive integers")
    if m % l:
        raise ConstructionError(f"m/l = {m}/{l} is not an integer")


def _check_center(a0: Fraction, n: int):
    if n * a0 * a0 >= 1:
        raise ConstructionError(f"a0 = {a0} violates n*a0^2 < 1 for n = {n}")


@dataclass(frozen=True)
class LI:
    """``zeta * (eta_1 z_1, ..., eta_n z_n)`` with ``eta_j**m = 1``."""

    zeta: Turn
    eta: tuple[Turn, ...]
    m: int = 1
    l: int = 1

    def __post_init__(self):
        object.__setattr__(self, "zeta", Turn.of(self.zeta))
        object.__setattr__(self, "eta", _turns(self.eta))
        _check_lm(self.m, self.l)
        _check_roots(self.eta, self.m)

    @property
    def n(self) -> int:
        return len(self.eta)


@dataclass(frozen=True)
class LII:
    """Moebius template with symmetric real center ``(a0, ..., a0)``."""

    a0: Fraction
    zeta1: Turn
    zeta2: Turn
    eta: tuple[Turn, ...]
    m: int = 1
    l: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a0", as_fraction(self.a0))
        object.__setattr__(self, "zeta1", Turn.of(self.zeta1))
        object.__setattr__(self, "zeta2", Turn.of(self.zeta2))
        object.__setattr__(self, "eta", _turns(self.eta))
        _check_lm(self.m, self.l)
        if self.l != 1:
            raise ConstructionError("the LII template requires l = 1")
        if self.n < 2:
            raise ConstructionError("the LII template needs n >= 2")
        _check_center(self.a0, self.n)
        _check_roots(self.eta, self.m)

    @property
    def n(self) -> int:
        return len(self.eta)


@dataclass(frozen=True)
class LIII:
    """Two-dimensional template built from a Moebius part and a 45 degree rotation."""

    a0: Fraction
    zeta1: Turn
    zeta2: Turn
    m: int = 2
    l: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a0", as_fraction(self.a0))
        object.__setattr__(self, "zeta1", Turn.of(self.zeta1))
        object.__setattr__(self, "zeta2", Turn.of(self.zeta2))
        _check_lm(self.m, self.l)
        if self.l != 1 or self.m % 2:
            raise ConstructionError("the LIII template requires l = 1 and even m")
        _check_center(self.a0, 2)

    n = 2


@dataclass(frozen=True)
class LIV:
    """``zeta/sqrt(2) * (z1 + z2, eta (z1 - z2))`` with ``eta**m = 1``."""

    zeta: Turn
    eta: Turn
    m: int = 2
    l: int = 2

    def __post_init__(self):
        object.__setattr__(self, "zeta", Turn.of(self.zeta))
        object.__setattr__(self, "eta", Turn.of(self.eta))
        _check_lm(self.m, self.l)
        if self.l != 2:
            raise ConstructionError("the LIV template requires l = 2")
        _check_roots((self.eta,), self.m)

    n = 2


LemmaTemplate = Union[LI, LII, LIII, LIV]


def _root(a0: Fraction, n: int) -> float:
    return math.sqrt(float(1 - n * a0 * a0))


def template_formula(t: LemmaTemplate, z) -> np.ndarray:
    """Evaluate a template straight from its closed formula (no ``(a, Q, R)``)."""
    z = np.asarray(z, dtype=complex)
    if isinstance(t, LI):
        eta = np.array([e.value for e in t.eta])
        return t.zeta.value * eta * z
    if isinstance(t, LII):
        n, a0 = t.n, float(t.a0)
        eta = np.array([e.value for e in t.eta])
        tot = z.sum(axis=-1, keepdims=True)
        bracket = t.zeta1.value * (tot - n * a0) + t.zeta2.value * _root(t.a0, n) * (tot - n * z)
        return eta * bracket / (n * (1.0 - a0 * tot))
    if isinstance(t, LIII):
        a0 = float(t.a0)
        z1, z2 = z[..., 0], z[..., 1]
        den = math.sqrt(2) * (1.0 - a0 * (z1 + z2))
        first = t.zeta1.value * (z1 + z2 - 2 * a0)
        second = t.zeta2.value * _root(t.a0, 2) * (z1 - z2)
        return np.stack([first / den, second / den], axis=-1)
    if isinstance(t, LIV):
        z1, z2 = z[..., 0], z[..., 1]
        c = t.zeta.value / math.sqrt(2)
        return np.stack([c * (z1 + z2), c * t.eta.value * (z1 - z2)], axis=-1)
    raise TypeError(f"not a template: {t!r}")


def from_lemma_template(t: LemmaTemplate) -> BallAutomorphism:
    """``(a, Q, R)`` data of a template; validated against the Stein system."""
    if isinstance(t, LI):
        Q = t.zeta.value * np.diag([e.value for e in t.eta])
        phi = BallAutomorphism(np.zeros(t.n), Q, 1.0)
    elif isinstance(t, LII):
        n, r = t.n, _root(t.a0, t.n)
        z1, z2 = t.zeta1.value, t.zeta2.value
        base = np.full((n, n), z1 / r + z2, dtype=complex) - n * z2 * np.eye(n)
        Q = np.array([e.value for e in t.eta])[:, None] * base / n
        phi = BallAutomorphism(np.full(n, float(t.a0)), Q, 1.0 / r)
    elif isinstance(t, LIII):
        r = _root(t.a0, 2)
        z1, z2 = t.zeta1.value, t.zeta2.value
        Q = np.array([[z1 / r, z1 / r], [z2, -z2]]) / math.sqrt(2)
        phi = BallAutomorphism(np.full(2, float(t.a0)), Q, 1.0 / r)
    elif isinstance(t, LIV):
        Q = t.zeta.value / math.sqrt(2) * np.array([[1, 1], [t.eta.value, -t.eta.value]])
        phi = BallAutomorphism(np.zeros(2), Q, 1.0)
    else:
        raise TypeError(f"not a template: {t!r}")
    res = verify_stein(phi)
    if res > TOL_STEIN:
        raise ValidationError("template data violate the Stein system", res)
    return phi


# ---------------------------------------------------------------------------
# equivariance


Perm = tuple[int, ...]


@dataclass
class EquivarianceResult:
    """Witness table ``(sigma, xi) -> (tau, eta)`` or the first failing pair.

    Permutations are 0-based image tuples; ``xi`` and ``eta`` are tuples of
    :class:`Turn`.
    """

    complete: bool
    table: dict[tuple[Perm, tuple[Turn, ...]], tuple[Perm, tuple[Turn, ...]]]
    failure: tuple[Perm, tuple[Turn, ...]] | None = None

    def __bool__(self) -> bool:
        return self.complete


def check_equivariance(
    phi: BallAutomorphism,
    l: int,
    m: int,
    samples: int = 8,
    *,
    seed: int = 0,
    tol: float = 1e-9,
    budget: int = EQUIVARIANCE_BUDGET,
) -> EquivarianceResult:
    """Search ``phi(z) = eta * phi_tau(xi * z_sigma)`` for every ``(sigma, xi)``.

    ``sigma, tau`` range over permutations, ``xi_j**l = 1`` and ``eta_j**m = 1``;
    ``z_sigma = (z_sigma(1), ..., z_sigma(n))``.  The identity is tested at
    ``samples`` random points of the ball.  ``eta`` is found componentwise,
    which is exhaustive because each component is matched independently.
    """
    n = phi.n
    cost = math.factorial(n) * l**n * m**n
    if n > 4 or cost > budget:
        raise SearchBudgetExceeded(f"n! l^n m^n = {cost} (n = {n}) exceeds the budget {budget}")
    rng = np.random.default_rng(seed)
    z = random_ball_points(rng, n, samples)
    target = phi(z)
    perms = list(itertools.permutations(range(n)))
    etas = roots_of_unity(m)
    eta_vals = [e.value for e in etas]
    table = {}
    for sigma in perms:
        for xi in itertools.product(roots_of_unity(l), repeat=n):
            w = np.array([x.value for x in xi]) * z[:, list(sigma)]
            image = phi(w)
            witness = None
            for tau in perms:
                cand = image[:, list(tau)]
                chosen = []
                for j in range(n):
                    hit = next(
                        (k for k, e in enumerate(eta_vals)
                         if np.max(np.abs(target[:, j] - e * cand[:, j])) <= tol),
                        None,
                    )
                    if hit is None:
                        break
                    chosen.append(etas[hit])
                else:
                    witness = (tau, tuple(chosen))
                    break
            if witness is None:
                return EquivarianceResult(False, table, (sigma, xi))
            table[(sigma, xi)] = witness
    return EquivarianceResult(True, table)


class InducedMap:
    """``s -> symmetrize(phi(fiber(s)**(1/l))**l)`` for a ball automorphism ``phi``.

    Construction checks on random points that the right side does not depend
    on the choice of preimage (adjacent transpositions and an ``l``-th root of
    unity in one coordinate generate all the choices).
    """

    def __init__(self, phi: BallAutomorphism, l: int = 1, *, check: bool = True,
                 samples: int = 8, seed: int = 0, tol: float = 1e-9):
        if int(l) != l or l < 1:
            raise ValueError("l must be a positive integer")
        self.phi = phi
        self.l = int(l)
        if check:
            self._check(samples, seed, tol)

    def _lifted(self, z):
        return symmetrize(self.phi(z) ** self.l)

    def _check(self, samples, seed, tol):
        n = self.phi.n
        rng = np.random.default_rng(seed)
        z = random_ball_points(rng, n, samples)
        base = self._lifted(z)
        moves = []
        for j in range(n - 1):
            perm = list(range(n))
            perm[j], perm[j + 1] = perm[j + 1], perm[j]
            moves.append((tuple(perm), np.ones(n, dtype=complex)))
        if self.l > 1:
            xi = np.ones(n, dtype=complex)
            xi[0] = np.exp(2j * np.pi / self.l)
            moves.append((tuple(range(n)), xi))
        for perm, xi in moves:
            moved = self._lifted(xi * z[:, list(perm)])
            res = float(np.max(np.abs(moved - base) / np.maximum(1.0, np.abs(base))))
            if res > tol:
                raise EquivarianceError(
                    f"ball automorphism does not descend for l = {self.l} "
                    f"(permutation {perm}, residual {res:.3e})",
                    witness=(perm, xi, res),
                )

    def __call__(self, s) -> np.ndarray:
        w = fiber(s)
        z = w if self.l == 1 else np.power(w, 1.0 / self.l)
        return self._lifted(z)


def induce_from_ball(phi: BallAutomorphism, l: int = 1, **kw) -> InducedMap:
    return InducedMap(phi, l, **kw)


# ---------------------------------------------------------------------------
# automorphisms of symmetrized ellipsoids


def _params(p) -> EllipsoidParams:
    return p if isinstance(p, EllipsoidParams) else EllipsoidParams(*p)


@dataclass(frozen=True)
class PhiI:
    """``(zeta s1, zeta^2 s2, ..., zeta^n sn)``; an automorphism of every ``E_{p,n}``."""

    params: EllipsoidParams
    zeta: Turn = ONE

    def __post_init__(self):
        object.__setattr__(self, "params", _params(self.params))
        object.__setattr__(self, "zeta", Turn.of(self.zeta))


@dataclass(frozen=True)
class PhiII:
    """Moebius-type automorphism of ``E_{1,n}`` induced by an ``LII`` template.

    ``omega`` precomposes with the rotation ``PhiI(omega)``; it defaults to 1
    and is needed so that the family is closed under inversion.
    """

    params: EllipsoidParams
    zeta1: Turn
    zeta2: Turn
    a0: Fraction = Fraction(0)
    omega: Turn = ONE

    def __post_init__(self):
        object.__setattr__(self, "params", _params(self.params))
        for name in ("zeta1", "zeta2", "omega"):
            object.__setattr__(self, name, Turn.of(getattr(self, name)))
        object.__setattr__(self, "a0", as_fraction(self.a0))
        if self.params.p != 1:
            raise ConstructionError(f"PhiII exists only for p = 1, got p = {self.params.p}")
        _check_center(self.a0, self.params.n)

    @property
    def template(self) -> LII:
        return LII(self.a0, self.zeta1, self.zeta2, (ONE,) * self.params.n)

    @cached_property
    def ball_lift(self) -> BallAutomorphism:
        """Ball automorphism ``z -> LII(z * omega)`` inducing this map."""
        base = from_lemma_template(self.template)
        return precompose_unitary(base, self.omega.value * np.eye(self.params.n))

    @cached_property
    def induced(self) -> InducedMap:
        return induce_from_ball(self.ball_lift, 1)


@dataclass(frozen=True)
class PhiIII:
    """``(zeta s1, zeta^2 (s1^2/4 - s2))`` on ``E_{1/2,2}``."""

    zeta: Turn = ONE
    params: EllipsoidParams = field(default_factory=lambda: EllipsoidParams(Fraction(1, 2), 2))

    def __post_init__(self):
        object.__setattr__(self, "zeta", Turn.of(self.zeta))
        object.__setattr__(self, "params", _params(self.params))
        if self.params != EllipsoidParams(Fraction(1, 2), 2):
            raise ConstructionError("PhiIII exists only on E_{1/2,2}")


EllipsoidAutomorphism = Union[PhiI, PhiII, PhiIII]


def phi2_closed_form(psi: PhiII, s) -> np.ndarray:
    """PhiII from the closed form ``S_L(s)_j / (n (1 - a0 s1))**j``."""
    n = psi.params.n
    s = weighted_scale(as_cvec(s), psi.omega.value)
    a0 = float(psi.a0)
    r = _root(psi.a0, n)
    z1, z2 = psi.zeta1.value, psi.zeta2.value
    S = linear_sym_map(s, z1 + z2 * r, -n * z2 * r, -n * a0 * z1)
    den = n * (1.0 - a0 * s[0])
    if abs(den) < POLE_GUARD:
        raise PoleError("1 - a0*s1 vanishes; input lies outside the closed domain")
    return S / den ** np.arange(1, n + 1)


def ell_aut_eval(psi: EllipsoidAutomorphism, s) -> np.ndarray:
    s = as_cvec(s)
    if s.size != psi.params.n:
        raise ValueError(f"point has dimension {s.size}, expected {psi.params.n}")
    if isinstance(psi, PhiI):
        return weighted_scale(s, psi.zeta.value)
    if isinstance(psi, PhiII):
        if abs(1.0 - float(psi.a0) * psi.omega.value * s[0]) < POLE_GUARD:
            raise PoleError("1 - a0*s1 vanishes; input lies outside the closed domain")
        return psi.induced(s)
    if isinstance(psi, PhiIII):
        z = psi.zeta.value
        return np.array([z * s[0], z * z * (s[0] * s[0] / 4 - s[1])])
    raise TypeError(f"not an ellipsoid automorphism: {psi!r}")


def ell_aut_inverse(psi: EllipsoidAutomorphism) -> EllipsoidAutomorphism:
    """Inverse within the same family.

    For PhiII the parameters come from the closed-form inverse of the
    mean/deviation splitting of the LII template; the result is then checked
    against the numerically inverted ball lift.
    """
    if isinstance(psi, PhiI):
        return PhiI(psi.params, psi.zeta.conj())
    if isinstance(psi, PhiIII):
        return PhiIII(psi.zeta.conj(), psi.params)
    if isinstance(psi, PhiII):
        inv = PhiII(
            psi.params,
            zeta1=psi.omega.conj(),
            zeta2=psi.zeta1 * psi.zeta2.conj() * psi.omega.conj(),
            a0=-psi.a0,
            omega=psi.zeta1.conj(),
        )
        direct = ball_inverse(psi.ball_lift)
        z = random_ball_points(np.random.default_rng(0), psi.params.n, 4)
        res = float(np.max(np.abs(direct(z) - inv.ball_lift(z))))
        if res > 1e-9:
            raise ConsistencyError(f"PhiII inverse disagrees with the ball inverse ({res:.3e})")
        return inv
    raise TypeError(f"not an ellipsoid automorphism: {psi!r}")
