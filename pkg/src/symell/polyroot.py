"""Roots of monic complex polynomials and the inverse Vieta expansion.

Polynomials are written ``t**n + c[0]*t**(n-1) + ... + c[n-1]`` and are passed
around as the length-``n`` coefficient vector ``c`` (the leading 1 is implicit).

Roots are found by Ehrlich-Aberth simultaneous iteration started on the circle
of radius ``1 + max|c_i|``, followed by a few guarded Newton steps per root.
Multiple roots are kept as repeated entries; nothing is deflated numerically.
Exactly vanishing trailing coefficients are the one exception: they are split
off as exact zero roots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RootFindingError

#: residual bound advertised by :func:`find_roots`, relative to ``1 + max|c_i|``
TOL_RESID = 1e-10
#: roots closer than this are merged by :func:`distinct_roots`
TOL_CLUSTER = 1e-7
#: grid used to round coordinates before the canonical lexicographic sort
ORDER_ROUNDING = 1e-9

_EPS = np.finfo(float).eps
_SEED_ANGLE = 0.4


@dataclass(frozen=True)
class MonicPoly:
    """``t**n + c1*t**(n-1) + ... + cn``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = _as_coeffs(self.coeffs)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def __call__(self, t):
        return _horner(self.coeffs, np.asarray(t, dtype=complex))[0]


def _as_coeffs(coeffs) -> np.ndarray:
    if isinstance(coeffs, MonicPoly):
        return coeffs.coeffs
    c = np.array(coeffs, dtype=complex).reshape(-1)
    if c.size < 1:
        raise ValueError("a monic polynomial needs degree >= 1")
    if not np.all(np.isfinite(c)):
        raise ValueError("polynomial coefficients must be finite")
    return c


def _horner(c: np.ndarray, z: np.ndarray):
    """Value and derivative of the monic polynomial at every entry of z."""
    p = np.ones_like(z)
    dp = np.zeros_like(z)
    for ck in c:
        dp = dp * z + p
        p = p * z + ck
    return p, dp


def _horner_abs(c_abs: np.ndarray, r: np.ndarray) -> np.ndarray:
    s = np.ones_like(r)
    for ck in c_abs:
        s = s * r + ck
    return s


def _aberth(c: np.ndarray, maxiter: int) -> np.ndarray:
    n = len(c)
    if n == 1:
        return np.array([-c[0]])
    radius = 1.0 + np.max(np.abs(c))
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + _SEED_ANGLE))
    c_abs = np.abs(c)
    # componentwise backward-error threshold, a small multiple of Horner's rounding
    slack = 4 * n * _EPS
    active = np.ones(n, dtype=bool)
    eye = np.eye(n, dtype=bool)
    for _ in range(maxiter):
        p, dp = _horner(c, z)
        active &= np.abs(p) > slack * _horner_abs(c_abs, np.abs(z))
        if not active.any():
            break
        diff = z[:, None] - z[None, :]
        diff[eye] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / diff
            inv[eye] = 0.0
            w = p / (dp - p * inv.sum(axis=1))
        bad = ~np.isfinite(w)
        if bad.any():
            # coincident iterates: nudge them apart deterministically
            w[bad] = -1e-8 * radius * np.exp(1j * (k[bad] + 1.0))
        z = np.where(active, z - w, z)
    return z


def _polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    for _ in range(steps):
        p, dp = _horner(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            z_new = z - p / dp
        ok = np.isfinite(z_new)
        p_new = _horner(c, np.where(ok, z_new, z))[0]
        take = ok & (np.abs(p_new) < np.abs(p))
        if not take.any():
            break
        z = np.where(take, z_new, z)
    return z


def canonical_order(roots) -> np.ndarray:
    """Sort lexicographically by (real, imag) after rounding to ``ORDER_ROUNDING``."""
    r = np.asarray(roots, dtype=complex).reshape(-1)
    re = np.round(r.real / ORDER_ROUNDING) * ORDER_ROUNDING
    im = np.round(r.imag / ORDER_ROUNDING) * ORDER_ROUNDING
    return r[np.lexsort((im, re))]


def find_roots(poly, *, tol_resid: float = TOL_RESID, maxiter: int = 500) -> np.ndarray:
    """All roots of a monic polynomial, with multiplicity, in canonical order.

    ``poly`` is a :class:`MonicPoly` or the coefficient vector ``(c1, ..., cn)``.
    Every returned root ``r`` satisfies ``|poly(r)| <= tol_resid * (1 + max|c_i|)``;
    otherwise :class:`RootFindingError` is raised with the best residual seen.

    >>> find_roots([-5, 6])
    array([2.+0.j, 3.+0.j])
    """
    c = _as_coeffs(poly)
    n = len(c)
    nz = np.flatnonzero(c != 0)
    m = 0 if nz.size == 0 else int(nz[-1]) + 1
    roots = np.zeros(n, dtype=complex)
    if m:
        head = c[:m]
        z = _polish(head, _aberth(head, maxiter))
        resid = np.abs(_horner(head, z)[0])
        bound = tol_resid * (1.0 + np.max(np.abs(c)))
        if not np.all(np.isfinite(z)) or np.max(resid) > bound:
            best = float(np.nanmax(resid)) if np.any(np.isfinite(resid)) else float("inf")
            raise RootFindingError(f"root finder did not converge for degree {n}", best)
        roots[:m] = z
    return canonical_order(roots)


def coeffs_from_roots(roots) -> np.ndarray:
    """Coefficients ``(c1, ..., cn)`` of ``prod (t - r_j)``.

    Uses the incremental product recurrence, one root at a time.
    """
    r = np.asarray(roots, dtype=complex).reshape(-1)
    if r.size < 1:
        raise ValueError("at least one root is required")
    if not np.all(np.isfinite(r)):
        raise ValueError("roots must be finite")
    c = np.zeros(r.size + 1, dtype=complex)
    c[0] = 1.0
    for j, rj in enumerate(r, start=1):
        c[1 : j + 1] = c[1 : j + 1] - rj * c[:j]
    return c[1:]


def distinct_roots(roots, tol: float = TOL_CLUSTER) -> list[tuple[complex, int]]:
    """Deduplicated view: clusters of roots closer than ``tol``.

    Returns ``(mean, multiplicity)`` pairs; the multiset view is untouched.
    Clusters are the connected components of the "closer than tol" graph.
    """
    r = np.asarray(roots, dtype=complex).reshape(-1)
    n = r.size
    label = list(range(n))

    def find(i):
        while label[i] != i:
            label[i] = label[label[i]]
            i = label[i]
        return i

    close = np.abs(r[:, None] - r[None, :]) < tol
    for i in range(n):
        for j in range(i + 1, n):
            if close[i, j]:
                label[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = [(complex(np.mean(r[idx])), len(idx)) for idx in groups.values()]
    return sorted(out, key=lambda t: (round(t[0].real, 9), round(t[0].imag, 9)))


def has_cluster(roots, tol: float = TOL_CLUSTER) -> bool:
    """True if two entries of ``roots`` lie within ``tol`` of each other."""
    return len(distinct_roots(roots, tol)) < np.size(roots)
