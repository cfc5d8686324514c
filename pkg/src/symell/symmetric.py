"""The symmetrization map and the polynomial maps it induces.

Points of C^n are 1-d complex arrays ``z``.  Symmetrized coordinates
``s = symmetrize(z)`` are 1-d complex arrays too, with ``s[k-1]`` the order-k
elementary symmetric polynomial of ``z``; coordinate ``k`` carries weight ``k``
under the disk action ``(lam*s1, lam**2*s2, ..., lam**n*sn)``.

``power_map`` and ``linear_sym_map`` are evaluated pointwise through the fiber
(the roots of ``t**n - s1*t**(n-1) + ... + (-1)**n*sn``) rather than from
expanded coefficient tables.
"""

from __future__ import annotations

import numpy as np

from .polyroot import find_roots


def as_cvec(z, *, min_dim: int = 1) -> np.ndarray:
    v = np.array(z, dtype=complex).reshape(-1)
    if v.size < min_dim:
        raise ValueError(f"expected at least {min_dim} complex entries, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("entries must be finite")
    return v


def symmetrize(z) -> np.ndarray:
    """Elementary symmetric polynomials of the last axis of ``z``.

    Accepts a single point of shape ``(n,)`` or a batch ``(..., n)``.

    >>> symmetrize([2, 3])
    array([5.+0.j, 6.+0.j])
    """
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    e = np.zeros(z.shape[:-1] + (n + 1,), dtype=complex)
    e[..., 0] = 1.0
    for j in range(n):
        zj = z[..., j : j + 1]
        e[..., 1 : j + 2] = e[..., 1 : j + 2] + zj * e[..., : j + 1]
    return e[..., 1:]


def _char_coeffs(s: np.ndarray) -> np.ndarray:
    signs = (-1.0) ** np.arange(1, s.size + 1)
    return signs * s


def fiber(s, **kw) -> np.ndarray:
    """Root multiset of ``pi_n^{-1}(s)`` in canonical order.

    Every preimage of ``s`` under :func:`symmetrize` is an ordering of the
    returned array.
    """
    s = as_cvec(s)
    return find_roots(_char_coeffs(s), **kw)


def power_map(s, l: int) -> np.ndarray:
    """``P_l(s)``: the point ``symmetrize(w**l)`` for ``w = fiber(s)``."""
    if int(l) != l or l < 1:
        raise ValueError("l must be a positive integer")
    s = as_cvec(s)
    if l == 1:
        return s.copy()
    return symmetrize(fiber(s) ** int(l))


def apply_linear(z, A: complex, B: complex, C: complex) -> np.ndarray:
    """``L_j(z) = A*sum(z) + B*z_j + C``."""
    z = np.asarray(z, dtype=complex)
    return A * z.sum(axis=-1, keepdims=True) + B * z + C


def linear_sym_map(s, A: complex, B: complex, C: complex) -> np.ndarray:
    """``S_L(s)`` with ``pi_n o L = S_L o pi_n`` for the map of :func:`apply_linear`."""
    s = as_cvec(s)
    return symmetrize(apply_linear(fiber(s), A, B, C))


def weighted_scale(s, lam: complex) -> np.ndarray:
    """``(lam*s1, lam**2*s2, ..., lam**n*sn)``."""
    s = np.asarray(s, dtype=complex)
    return s * lam ** np.arange(1, s.shape[-1] + 1)
