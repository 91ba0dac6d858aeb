"""Hot numeric kernels with an optional numba backend.

Set ``LORENZHOLE_DISABLE_NUMBA=1`` (before import) to force the pure-numpy
implementations.  Both backends compute identical results; the numba ones
just avoid Python-level loops.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("LORENZHOLE_DISABLE_NUMBA", "").strip() not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _power_radius_numpy(a: np.ndarray, tol: float, maxiter: int) -> float:
    n = a.shape[0]
    v = np.full(n, 1.0 / n)
    lam = 0.0
    for _ in range(maxiter):
        w = a @ v + v
        lam = w.sum()
        w /= lam
        if np.abs(w - v).max() <= tol * w.max():
            return lam - 1.0
        v = w
    return lam - 1.0


def _escape_times_numpy(xs, beta, alpha, c, a, b, n_iters):
    x = np.array(xs, dtype=np.float64)
    out = np.full(x.shape[0], -1, dtype=np.int64)
    alive = np.ones(x.shape[0], dtype=np.bool_)
    for k in range(n_iters):
        hit = alive & (x > a) & (x < b)
        out[hit] = k
        alive &= ~hit
        if not alive.any():
            break
        y = beta * x + alpha
        x = np.where(x < c, y, y - 1.0)
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _power_radius_numba(a, tol, maxiter):
        n = a.shape[0]
        v = np.full(n, 1.0 / n)
        w = np.empty(n)
        lam = 0.0
        for _ in range(maxiter):
            lam = 0.0
            for i in range(n):
                acc = v[i]
                for j in range(n):
                    acc += a[i, j] * v[j]
                w[i] = acc
                lam += acc
            diff = 0.0
            top = 0.0
            for i in range(n):
                x = w[i] / lam
                d = abs(x - v[i])
                if d > diff:
                    diff = d
                if x > top:
                    top = x
                v[i] = x
            if diff <= tol * top:
                return lam - 1.0
        return lam - 1.0

    @njit(cache=True)
    def _escape_times_numba(xs, beta, alpha, c, a, b, n_iters):
        m = xs.shape[0]
        out = np.full(m, -1, dtype=np.int64)
        for i in range(m):
            x = xs[i]
            for k in range(n_iters):
                if x > a and x < b:
                    out[i] = k
                    break
                y = beta * x + alpha
                x = y if x < c else y - 1.0
        return out


def power_radius(a: np.ndarray, tol: float = 1e-9, maxiter: int = 200_000, backend: str | None = None) -> float:
    """Spectral radius of a non-negative irreducible matrix.

    Iterates with ``A + I`` so that periodic components still converge.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.shape[0] == 0:
        return 0.0
    if (backend or BACKEND) == "numba" and HAVE_NUMBA:
        return float(_power_radius_numba(a, tol, maxiter))
    return float(_power_radius_numpy(a, tol, maxiter))


def escape_times(
    xs: np.ndarray,
    beta: float,
    alpha: float,
    c: float,
    a: float,
    b: float,
    n_iters: int,
    backend: str | None = None,
) -> np.ndarray:
    """First iterate index entering the open hole ``(a, b)``, or -1 if none within ``n_iters``."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if (backend or BACKEND) == "numba" and HAVE_NUMBA:
        return _escape_times_numba(xs, beta, alpha, c, a, b, n_iters)
    return _escape_times_numpy(xs, beta, alpha, c, a, b, n_iters)
