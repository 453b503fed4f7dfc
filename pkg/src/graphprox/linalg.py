"""Dense matrix primitives: LU inverse, Jacobi eigensolver, matrix
exponential, spectral radius, and PSD square root.

Everything works on plain float64 numpy arrays and is written for the
small dense matrices this package deals in (a few hundred rows at most).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "SingularMatrixError",
    "NotPositiveSemidefiniteError",
    "NonConvergenceError",
    "EigenDecomposition",
    "is_symmetric",
    "invert",
    "sym_eigen",
    "spectral_radius",
    "matrix_exp",
    "gram_factor",
]

SYMMETRY_TOL = 1e-10
_SINGULAR_PIVOT = 1e-12
_JACOBI_OFF_FACTOR = 1e-12
_JACOBI_MAX_SWEEPS = 100
_POWER_STEP_TOL = 1e-12
_POWER_MAX_ITER = 100_000
_EXP_TAYLOR_TOL = 1e-18
PSD_CLAMP_TOL = 1e-9


class SingularMatrixError(ValueError):
    def __init__(self, pivot_index: int, pivot: float):
        self.pivot_index = pivot_index
        self.pivot = pivot
        super().__init__(
            f"matrix is singular: pivot {pivot:.3e} at elimination column {pivot_index}"
        )


class NotPositiveSemidefiniteError(ValueError):
    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.6e}"
        )


class NonConvergenceError(RuntimeError):
    """An iterative routine hit its iteration cap."""


class EigenDecomposition(NamedTuple):
    """Eigenvalues in ascending order; eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square(m: np.ndarray) -> np.ndarray:
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    return a


def is_symmetric(m: np.ndarray, tol: float = SYMMETRY_TOL) -> bool:
    a = np.asarray(m, dtype=float)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.abs(a - a.T).max() <= tol


def invert(m: np.ndarray) -> np.ndarray:
    """Inverse by Gauss-Jordan elimination with partial pivoting.

    Raises SingularMatrixError when the best available pivot drops to
    1e-12 or below. A symmetric input yields an exactly symmetric result.
    """
    a = _as_square(m)
    n = a.shape[0]
    sym = is_symmetric(a)
    aug = np.hstack([a, np.eye(n)])
    for col in range(n):
        p = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[p, col]) <= _SINGULAR_PIVOT:
            raise SingularMatrixError(col, abs(aug[p, col]))
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        aug[col] /= aug[col, col]
        factors = aug[:, col].copy()
        factors[col] = 0.0
        aug -= np.outer(factors, aug[col])
    inv = aug[:, n:]
    if sym:
        inv = 0.5 * (inv + inv.T)
    return inv


def sym_eigen(m: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi
    rotations, iterated until the off-diagonal Frobenius norm falls below
    1e-12 times the norm of the input."""
    a = _as_square(m)
    if not is_symmetric(a):
        raise ValueError("sym_eigen requires a symmetric matrix")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    norm = math.sqrt(float((a * a).sum()))
    if norm == 0.0 or n == 1:
        order = np.argsort(np.diag(a))
        return EigenDecomposition(np.diag(a)[order].copy(), v[:, order].copy())
    target = _JACOBI_OFF_FACTOR * norm
    for _ in range(_JACOBI_MAX_SWEEPS):
        # Summing the off-diagonal entries directly avoids the cancellation
        # that total-minus-diagonal suffers once they reach roundoff level.
        hollow = a.copy()
        np.fill_diagonal(hollow, 0.0)
        off = math.sqrt(float((hollow * hollow).sum()))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # An entry too small to perturb either diagonal value is
                # noise; zero it instead of rotating (avoids overflow in
                # the rotation angle as well).
                if abs(a[p, p]) + 100.0 * abs(apq) == abs(a[p, p]) and (
                    abs(a[q, q]) + 100.0 * abs(apq) == abs(a[q, q])
                ):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                row_p, row_q = a[p].copy(), a[q].copy()
                a[p] = c * row_p - s * row_q
                a[q] = s * row_p + c * row_q
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise NonConvergenceError("Jacobi sweeps did not converge")
    order = np.argsort(np.diag(a))
    return EigenDecomposition(np.diag(a)[order].copy(), v[:, order].copy())


def spectral_radius(m: np.ndarray) -> float:
    """Largest eigenvalue magnitude.

    Symmetric input goes through sym_eigen. Otherwise power iteration is
    run on m @ m: squaring makes paired +-rho eigenvalues (bipartite
    Markov matrices) coincide, and every matrix used here has a real
    spectrum, so the dominant eigenvalue of the square is rho^2.
    """
    a = _as_square(m)
    if is_symmetric(a):
        vals = sym_eigen(a).eigenvalues
        return float(np.abs(vals).max())
    n = a.shape[0]
    m2 = a @ a
    x = 1.0 + np.arange(n) / (10.0 * n)  # deterministic, not axis-aligned
    x /= math.sqrt(float((x * x).sum()))
    est_prev = math.inf
    for _ in range(_POWER_MAX_ITER):
        y = m2 @ x
        ny = math.sqrt(float((y * y).sum()))
        if ny == 0.0:
            return 0.0
        if abs(ny - est_prev) <= _POWER_STEP_TOL * max(1.0, ny):
            return math.sqrt(ny)
        est_prev = ny
        x = y / ny
    raise NonConvergenceError("power iteration did not converge")


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring: scale by 2^s so the
    infinity norm is at most 0.5, sum the Taylor series to term max-norm
    below 1e-18, then square s times."""
    a = _as_square(m)
    n = a.shape[0]
    norm = float(np.abs(a).sum(axis=1).max())
    s = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    b = a / (2.0**s)
    term = np.eye(n)
    total = np.eye(n)
    for k in range(1, 60):
        term = term @ b / k
        total += term
        if np.abs(term).max() < _EXP_TAYLOR_TOL:
            break
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(s):
            total = total @ total
    if not np.isfinite(total).all():
        raise OverflowError("matrix exponential overflowed float64")
    if is_symmetric(a):
        total = 0.5 * (total + total.T)
    return total


def gram_factor(k: np.ndarray, tol: float = PSD_CLAMP_TOL) -> np.ndarray:
    """Unique PSD square root B of a symmetric PSD matrix (B @ B = k).

    Eigenvalues in [-tol, 0) are treated as roundoff and clamped to zero;
    anything below -tol raises NotPositiveSemidefiniteError.
    """
    vals, vecs = sym_eigen(k)
    if vals[0] < -tol:
        raise NotPositiveSemidefiniteError(float(vals[0]))
    root = np.sqrt(np.clip(vals, 0.0, None))
    b = (vecs * root) @ vecs.T
    return 0.5 * (b + b.T)
