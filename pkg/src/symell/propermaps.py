"""Proper holomorphic maps between symmetrized ellipsoids.

A map is described by a chain of steps applied left to right: automorphism
steps, power steps ``P_l`` and (for negative controls only) plain coordinate
scalings.  :class:`Standard` is ``P_k o psi``; :class:`Special` is the
exceptional two-dimensional chain ``P_m o PhiIII o P_2 o PhiII`` from
``E_{1,2}`` to ``E_{1/(2m),2}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .automorph import (
    BallAutomorphism,
    EllipsoidAutomorphism,
    PhiI,
    PhiII,
    PhiIII,
    ell_aut_eval,
    ell_aut_inverse,
)
from .domains import EllipsoidParams, minkowski_sym, sample_boundary, sample_interior
from .errors import (
    ConsistencyError,
    ConstructionError,
    DegenerateTargetError,
    DomainError,
    SymellError,
)
from .polyroot import has_cluster
from .symmetric import as_cvec, fiber, power_map, symmetrize, weighted_scale
from .unimodular import Turn, as_fraction

#: roots closer than this make a target non-generic for preimage counting
DEDUPE_TOL = 1e-7
#: relative forward-evaluation residual a claimed preimage must meet
PREIMAGE_CHECK = 1e-8
#: commuting-relation residual bound
COMMUTING_TOL = 1e-8


def exists_proper(p, q) -> bool:
    """Whether a proper holomorphic map ``E_{p,n} -> E_{q,n}`` exists: ``p/q`` in N."""
    p, q = as_fraction(p), as_fraction(q)
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")
    return (p / q).denominator == 1


# ---------------------------------------------------------------------------
# chain steps


@dataclass(frozen=True)
class AutStep:
    aut: EllipsoidAutomorphism


@dataclass(frozen=True)
class PowerStep:
    l: int


@dataclass(frozen=True)
class ScaleStep:
    """Multiply every coordinate by ``factor`` (not an automorphism in general)."""

    factor: complex


Step = Union[AutStep, PowerStep, ScaleStep]


def _apply(step: Step, s: np.ndarray) -> np.ndarray:
    if isinstance(step, AutStep):
        return ell_aut_eval(step.aut, s)
    if isinstance(step, PowerStep):
        return power_map(s, step.l)
    if isinstance(step, ScaleStep):
        return step.factor * s
    raise TypeError(f"unknown step {step!r}")


# ---------------------------------------------------------------------------
# map specifications


@dataclass(frozen=True)
class Standard:
    """``f = P_k o psi`` with ``k = src.p / dst.p``."""

    k: int
    psi: EllipsoidAutomorphism
    src: EllipsoidParams
    dst: EllipsoidParams

    def __post_init__(self):
        if self.src.n != self.dst.n:
            raise ConstructionError("source and target dimensions differ")
        if self.src.p != self.k * self.dst.p:
            raise ConstructionError(f"k = {self.k} but p/q = {self.src.p / self.dst.p}")
        if self.psi.params != self.src:
            raise ConstructionError(f"psi acts on {self.psi.params}, not on {self.src}")

    @property
    def steps(self) -> list[Step]:
        return [AutStep(self.psi), PowerStep(self.k)]


@dataclass(frozen=True)
class Special:
    """``f = P_m o PhiIII(zeta3) o P_2 o phi2`` from ``E_{1,2}`` to ``E_{1/(2m),2}``."""

    m: int
    zeta3: Turn
    phi2: PhiII

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ConstructionError("m must be a positive integer")
        object.__setattr__(self, "zeta3", Turn.of(self.zeta3))
        if not isinstance(self.phi2, PhiII) or self.phi2.params != EllipsoidParams(1, 2):
            raise ConstructionError("phi2 must be a PhiII automorphism of E_{1,2}")

    @property
    def src(self) -> EllipsoidParams:
        return EllipsoidParams(1, 2)

    @property
    def dst(self) -> EllipsoidParams:
        return EllipsoidParams(Fraction(1, 2 * self.m), 2)

    @property
    def steps(self) -> list[Step]:
        return [AutStep(self.phi2), PowerStep(2), AutStep(PhiIII(self.zeta3)), PowerStep(self.m)]


@dataclass(frozen=True)
class Chain:
    """Arbitrary step chain; used for negative controls.  No properness implied."""

    steps: tuple[Step, ...]
    src: EllipsoidParams
    dst: EllipsoidParams


ProperMapSpec = Union[Standard, Special, Chain]


def build_standard(p, q, n: int, psi: EllipsoidAutomorphism) -> Standard:
    p, q = as_fraction(p), as_fraction(q)
    if not exists_proper(p, q):
        raise ConstructionError(f"p/q = {p / q} is not a positive integer")
    return Standard(int(p / q), psi, EllipsoidParams(p, n), EllipsoidParams(q, n))


def build_special(m: int, zeta3, phi2: PhiII) -> Special:
    return Special(m, zeta3, phi2)


def eval_proper(f: ProperMapSpec, s) -> np.ndarray:
    """Evaluate the chain of ``f`` at ``s`` (a point of the closed source domain)."""
    s = as_cvec(s)
    for step in f.steps:
        s = _apply(step, s)
    return s


# ---------------------------------------------------------------------------
# verification


@dataclass
class Check:
    name: str
    samples: int
    max_residual: float
    tolerance: float | None
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    checks: list[Check]
    seed: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def _safe(fn, *args) -> float:
    try:
        return fn(*args)
    except SymellError:
        return float("inf")


def verify_boundary(
    f: ProperMapSpec,
    samples: int = 500,
    seed: int = 0,
    tol: float = 1e-6,
    *,
    eps_levels=(1e-1, 1e-2, 1e-3, 1e-4),
) -> VerificationReport:
    """Numerical surrogate for properness of ``f``.

    * ``boundary_to_boundary``: boundary samples land on ``|mu_dst - 1| <= tol``.
    * ``interior_to_interior``: interior samples land at ``mu_dst < 1``.
    * ``compactness``: for source gauge ``1 - eps`` the worst target gauge
      ``1 - delta(eps)`` is recorded; this check is informational only.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    src, dst = f.src, f.dst

    def mu_image(s):
        return minkowski_sym(eval_proper(f, s), dst)

    bnd = sample_boundary(src, seed, samples)
    dev = [_safe(lambda s: abs(mu_image(s) - 1.0), s) for s in bnd]
    checks = [Check("boundary_to_boundary", samples, max(dev), tol, max(dev) <= tol)]

    inner = sample_interior(src, seed + 1, samples)
    mus = [_safe(mu_image, s) for s in inner]
    checks.append(Check("interior_to_interior", samples, max(mus), 1.0, max(mus) < 1.0))

    probe = bnd[: min(samples, 100)]
    delta = {}
    for eps in eps_levels:
        vals = [_safe(mu_image, weighted_scale(s, 1.0 - eps)) for s in probe]
        delta[str(eps)] = 1.0 - min(vals)
    checks.append(
        Check("compactness", len(probe), max(delta.values()), None, True, {"delta": delta})
    )
    return VerificationReport(checks, seed)


def _rel_err(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


def _dedupe(points: list[np.ndarray], tol: float) -> list[np.ndarray]:
    kept: list[np.ndarray] = []
    for x in points:
        if all(np.max(np.abs(x - y)) >= tol for y in kept):
            kept.append(x)
    return kept


def _power_preimages(u: np.ndarray, l: int, tol: float) -> list[np.ndarray]:
    w = fiber(u)
    if has_cluster(w, tol) or np.min(np.abs(w)) < tol:
        raise DegenerateTargetError(
            "intermediate fiber has colliding or vanishing roots; retry with another target"
        )
    if l == 1:
        return [u]
    base = np.power(w, 1.0 / l)
    unity = np.exp(2j * np.pi * np.arange(l) / l)
    combos = np.array(list(itertools.product(unity, repeat=w.size)))
    return _dedupe(list(symmetrize(base * combos)), tol)


def preimages(f: ProperMapSpec, t, dedupe_tol: float = DEDUPE_TOL) -> list[np.ndarray]:
    """All points ``s`` with ``f(s) = t``, found by inverting the chain step by step."""
    t = as_cvec(t)
    layer = [t]
    for step in reversed(f.steps):
        if isinstance(step, AutStep):
            inv = ell_aut_inverse(step.aut)
            layer = [ell_aut_eval(inv, u) for u in layer]
        elif isinstance(step, PowerStep):
            layer = _dedupe(
                [x for u in layer for x in _power_preimages(u, step.l, dedupe_tol)], dedupe_tol
            )
        elif isinstance(step, ScaleStep):
            layer = [u / step.factor for u in layer]
        else:
            raise TypeError(f"unknown step {step!r}")
    for s in layer:
        res = _rel_err(eval_proper(f, s), t)
        if res > PREIMAGE_CHECK:
            raise ConsistencyError(f"claimed preimage maps {res:.3e} away from the target")
    return layer


def count_preimages(f: ProperMapSpec, t, dedupe_tol: float = DEDUPE_TOL) -> int:
    """Number of distinct preimages of a generic target ``t``."""
    return len(preimages(f, t, dedupe_tol))


def verify_commuting(
    f: ProperMapSpec,
    phi: BallAutomorphism,
    p,
    q,
    center,
    radius: float,
    samples: int = 64,
    seed: int = 0,
    tol: float = COMMUTING_TOL,
) -> VerificationReport:
    """Check ``f(pi_n(z**l)) = pi_n(phi(z)**m)`` on the patch ``B(center, radius)``.

    ``l = 1/p`` and ``m = 1/q`` must be positive integers; the patch must sit
    in the unit ball away from the coordinate hyperplanes and ``phi`` must not
    send it onto them.
    """
    p, q = as_fraction(p), as_fraction(q)
    l, m = 1 / p, 1 / q
    if l.denominator != 1 or m.denominator != 1:
        raise DomainError("1/p and 1/q must be positive integers")
    l, m = int(l), int(m)
    center = as_cvec(center)
    if center.size != phi.n:
        raise DomainError("center dimension does not match the automorphism")
    if np.linalg.norm(center) + radius >= 1.0 or np.min(np.abs(center)) <= radius:
        raise DomainError("patch must lie in the unit ball minus the coordinate hyperplanes")
    rng = np.random.default_rng(seed)
    n = phi.n
    d = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    z = center + radius * rng.uniform(size=(samples, 1)) ** (1.0 / (2 * n)) * d
    image = phi(z)
    if np.min(np.abs(image)) < 1e-12:
        raise DomainError("phi maps the patch onto a coordinate hyperplane")
    worst = 0.0
    for zi, wi in zip(z, image):
        lhs = eval_proper(f, symmetrize(zi**l))
        rhs = symmetrize(wi**m)
        worst = max(worst, _rel_err(lhs, rhs))
    return VerificationReport([Check("commuting", samples, worst, tol, worst <= tol)], seed)


def identity_spec(params: EllipsoidParams) -> Standard:
    return Standard(1, PhiI(params), params, params)
