"""Generalized ellipsoids B_{p,n}, symmetrized ellipsoids E_{p,n} and their gauges."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import BracketError
from .symmetric import as_cvec, fiber, symmetrize
from .unimodular import as_fraction

#: bracketing steps (doublings or halvings) before mu_balanced gives up
BRACKET_STEPS = 60


@dataclass(frozen=True)
class EllipsoidParams:
    """Exponent ``p`` (exact, positive) and dimension ``n >= 2``."""

    p: Fraction
    n: int

    def __post_init__(self):
        p = as_fraction(self.p)
        if p <= 0:
            raise ValueError(f"p must be positive, got {p}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", int(self.n))

    def __str__(self) -> str:
        return f"E_{{{self.p},{self.n}}}"


class Region(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class Classification:
    region: Region
    mu: float
    band: float


def ball_gauge(z, p) -> float | np.ndarray:
    """``(sum |z_j|**(2p))**(1/(2p))`` over the last axis.

    Positively homogeneous of degree one; ``z`` lies in ``B_{p,n}`` iff the
    value is below one.
    """
    a = np.abs(np.asarray(z, dtype=complex))
    two_p = 2.0 * float(as_fraction(p))
    m = a.max(axis=-1, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    g = safe[..., 0] * np.sum((a / safe) ** two_p, axis=-1) ** (1.0 / two_p)
    g = np.where(m[..., 0] > 0, g, 0.0)
    return float(g) if g.ndim == 0 else g


def _check_dim(s: np.ndarray, params: EllipsoidParams):
    if s.size != params.n:
        raise ValueError(f"point has dimension {s.size}, expected n={params.n}")


def minkowski_sym(s, params: EllipsoidParams) -> float:
    """Gauge of ``E_{p,n}`` at ``s``: the ball gauge of the fiber of ``s``.

    Every preimage of ``s`` is a reordering of one root multiset and the ball
    gauge is permutation invariant, so a single fiber suffices.
    """
    s = as_cvec(s)
    _check_dim(s, params)
    if not s.any():
        return 0.0
    return ball_gauge(fiber(s), params.p)


def classify(s, params: EllipsoidParams, band: float = 1e-9) -> Classification:
    """Interior, Boundary (``|mu - 1| <= band``) or Exterior, with the gauge."""
    if not 0 < band < 0.1:
        raise ValueError("band must lie in (0, 0.1)")
    mu = minkowski_sym(s, params)
    if abs(mu - 1.0) <= band:
        region = Region.BOUNDARY
    elif mu < 1.0:
        region = Region.INTERIOR
    else:
        region = Region.EXTERIOR
    return Classification(region, mu, band)


def ellipsoid_member(params: EllipsoidParams) -> Callable[[np.ndarray], bool]:
    """Membership oracle ``s -> s in E_{p,n}``."""
    return lambda s: minkowski_sym(s, params) < 1.0


def mu_balanced(
    member: Callable[[np.ndarray], bool],
    weights: Sequence[int],
    s,
    tol: float = 1e-10,
) -> float:
    """Generalized Minkowski functional of a balanced domain given by ``member``.

    ``inf{lam > 0 : (lam**-k1 * s1, ..., lam**-kn * sn) in D}``, found by
    doubling or halving from ``lam = 1`` and then bisecting to absolute
    tolerance ``tol``.  The domain must be bounded, contain 0 and be balanced
    for ``weights``.
    """
    if not 0 < tol < 1e-2:
        raise ValueError("tol must lie in (0, 1e-2)")
    s = as_cvec(s)
    k = np.asarray(weights, dtype=float)
    if k.shape != s.shape or np.any(k <= 0):
        raise ValueError("weights must be positive and match the dimension of s")
    if not s.any():
        return 0.0

    def inside(lam: float) -> bool:
        return bool(member(s * lam ** (-k)))

    lam = 1.0
    if inside(lam):
        hi = lam
        for _ in range(BRACKET_STEPS):
            lam /= 2.0
            if not inside(lam):
                break
            hi = lam
        else:
            return hi
        lo = lam
    else:
        lo = lam
        for _ in range(BRACKET_STEPS):
            lam *= 2.0
            if inside(lam):
                break
            lo = lam
        else:
            raise BracketError(
                f"oracle rejected every scaling up to 2**{BRACKET_STEPS}; "
                "point too far or oracle not balanced"
            )
        hi = lam
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _sphere(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    w = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return w / np.linalg.norm(w, axis=1, keepdims=True)


def sample_boundary(params: EllipsoidParams, seed: int, count: int) -> np.ndarray:
    """Points of the boundary of ``E_{p,n}``, one per row.

    Directions are uniform on the Euclidean unit sphere of C^n, rescaled to
    ball gauge one and symmetrized.  This covers the boundary but is not
    uniform for any surface measure.  Candidates whose recomputed gauge misses
    one by more than 1e-9 (nearly colliding fiber entries) are redrawn.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        w = _sphere(rng, params.n, count)
        w /= ball_gauge(w, params.p)[:, None]
        for s in symmetrize(w):
            if abs(minkowski_sym(s, params) - 1.0) <= 1e-9:
                out.append(s)
                if len(out) == count:
                    break
    return np.array(out)


def sample_interior(
    params: EllipsoidParams, seed: int, count: int, *, max_gauge: float = 0.999
) -> np.ndarray:
    """Interior points of ``E_{p,n}`` with gauge spread over ``(0, max_gauge)``.

    Each candidate is re-classified and replaced if it does not come out
    Interior with band 1e-9.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        w = _sphere(rng, params.n, count)
        radius = max_gauge * rng.uniform(size=count) ** (1.0 / (2 * params.n))
        w *= (radius / ball_gauge(w, params.p))[:, None]
        for s in symmetrize(w):
            if classify(s, params, 1e-9).region is Region.INTERIOR:
                out.append(s)
                if len(out) == count:
                    break
    return np.array(out)

