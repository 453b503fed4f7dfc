"""Property checks with explicit witnesses.

Every check returns a PropertyReport. Witness vertex indices are 1-based
to match file and report conventions; the numeric slack is the value of
the defining inequality at the witness, so a reported violation can be
reproduced by re-evaluating it there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import WeightedGraph, is_cut_between
from .linalg import is_symmetric, sym_eigen

__all__ = [
    "PropertyReport",
    "DEFAULT_TOL",
    "check_psd",
    "check_proximity",
    "check_sigma_proximity",
    "check_egocentrism",
    "check_metric",
    "check_sq_euclidean",
    "check_transitional",
    "check_cutpoint_additive",
    "check_distance_order",
    "check_sqrt_distance",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one property check.

    holds          the property was satisfied at the given tolerance
    witness        1-based vertex indices locating a violation (None if holds)
    slack          value of the deciding inequality at the witness
    sigma          common row sum, for the normalization check
    indeterminate  the deciding slack sits within one tolerance of the
                   pass/fail boundary, so the verdict is a coin toss at
                   this precision
    note           short human-readable qualifier
    """

    property: str
    holds: bool
    tolerance: float
    witness: tuple[int, ...] | None = None
    slack: float | None = None
    sigma: float | None = None
    indeterminate: bool = False
    note: str | None = None

    def __post_init__(self):
        # numpy scalars serialize badly and break equality after a JSON
        # round trip; pin plain Python types
        object.__setattr__(self, "holds", bool(self.holds))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        object.__setattr__(self, "indeterminate", bool(self.indeterminate))
        if self.witness is not None:
            object.__setattr__(self, "witness", tuple(int(v) for v in self.witness))
        if self.slack is not None:
            object.__setattr__(self, "slack", float(self.slack))
        if self.sigma is not None:
            object.__setattr__(self, "sigma", float(self.sigma))


def _distinct_triples(n: int):
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            for z in range(n):
                if z == x or z == y:
                    continue
                yield x, y, z


def check_psd(k: np.ndarray, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Positive semidefiniteness. Asymmetric input is reported as not PSD
    outright; it is never silently symmetrized."""
    a = np.asarray(k, dtype=float)
    if not is_symmetric(a):
        asym = float(np.abs(a - a.T).max())
        return PropertyReport(
            "psd", holds=False, tolerance=tol, slack=asym,
            note="matrix is not symmetric, hence not positive semidefinite",
        )
    min_eig = float(sym_eigen(a).eigenvalues[0])
    return PropertyReport(
        "psd",
        holds=min_eig >= -tol,
        tolerance=tol,
        slack=min_eig,
        indeterminate=-2.0 * tol <= min_eig <= -0.5 * tol,
        note="smallest eigenvalue",
    )


def check_proximity(k: np.ndarray, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Triangle inequality for proximities:
    k(x,y) + k(x,z) - k(y,z) <= k(x,x) over all ordered triples, strict
    when z = y != x."""
    a = np.asarray(k, dtype=float)
    if not is_symmetric(a):
        raise ValueError("check_proximity requires a symmetric matrix")
    n = a.shape[0]
    worst_weak = -np.inf
    weak_witness = None
    for x, y, z in _distinct_triples(n):
        v = a[x, y] + a[x, z] - a[y, z] - a[x, x]
        if v > worst_weak:
            worst_weak, weak_witness = v, (x, y, z)
    worst_strict = np.inf
    strict_witness = None
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            slack = a[x, x] + a[y, y] - 2.0 * a[x, y]
            if slack < worst_strict:
                worst_strict, strict_witness = slack, (x, y, y)
    weak_fail = worst_weak > tol
    strict_fail = worst_strict < tol
    indeterminate = (0.5 * tol <= worst_weak <= 2.0 * tol) or (
        0.0 <= worst_strict <= 2.0 * tol
    )
    if weak_fail:
        x, y, z = weak_witness
        return PropertyReport(
            "proximity", holds=False, tolerance=tol,
            witness=(x + 1, y + 1, z + 1), slack=float(worst_weak),
            indeterminate=indeterminate,
            note="k(x,y)+k(x,z)-k(y,z)-k(x,x) at witness (x,y,z)",
        )
    if strict_fail:
        x, y, z = strict_witness
        return PropertyReport(
            "proximity", holds=False, tolerance=tol,
            witness=(x + 1, y + 1, z + 1), slack=float(worst_strict),
            indeterminate=indeterminate,
            note="strictness margin k(x,x)+k(y,y)-2k(x,y) at witness (x,y,y)",
        )
    return PropertyReport(
        "proximity", holds=True, tolerance=tol,
        slack=None if weak_witness is None else float(worst_weak),
        indeterminate=indeterminate,
    )


def check_sigma_proximity(k: np.ndarray, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Proximity plus the normalization condition: all row sums equal.
    Reports the common row sum as sigma when they do."""
    a = np.asarray(k, dtype=float)
    prox = check_proximity(a, tol)
    rows = a.sum(axis=1)
    spread = float(rows.max() - rows.min())
    normalized = spread <= tol
    sigma = float(rows.mean()) if normalized else None
    if not prox.holds:
        return PropertyReport(
            "sigma_proximity", holds=False, tolerance=tol,
            witness=prox.witness, slack=prox.slack, sigma=sigma,
            indeterminate=prox.indeterminate, note="not a proximity",
        )
    if not normalized:
        hi, lo = int(np.argmax(rows)), int(np.argmin(rows))
        return PropertyReport(
            "sigma_proximity", holds=False, tolerance=tol,
            witness=(hi + 1, lo + 1), slack=spread,
            note="row-sum spread between witness rows",
        )
    return PropertyReport(
        "sigma_proximity", holds=True, tolerance=tol, sigma=sigma,
        indeterminate=prox.indeterminate,
    )


def check_egocentrism(k: np.ndarray, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Strict entrywise diagonal dominance: k(x,x) > k(x,y) for x != y."""
    a = np.asarray(k, dtype=float)
    n = a.shape[0]
    worst = np.inf
    witness = None
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            margin = a[x, x] - a[x, y]
            if margin < worst:
                worst, witness = margin, (x, y)
    if witness is None:  # 1x1 matrix
        return PropertyReport("egocentrism", holds=True, tolerance=tol)
    x, y = witness
    return PropertyReport(
        "egocentrism",
        holds=worst > tol,
        tolerance=tol,
        witness=None if worst > tol else (x + 1, y + 1),
        slack=float(worst),
        indeterminate=0.0 <= worst <= 2.0 * tol,
        note="diagonal dominance margin k(x,x)-k(x,y)",
    )


def _metric_axioms(
    d: np.ndarray, tol: float, prop: str, require_separation: bool = True
) -> PropertyReport:
    n = d.shape[0]
    neg = float(d.min())
    if neg < -tol:
        i, j = np.unravel_index(int(np.argmin(d)), d.shape)
        return PropertyReport(
            prop, holds=False, tolerance=tol,
            witness=(int(i) + 1, int(j) + 1), slack=neg, note="negative entry",
        )
    asym = float(np.abs(d - d.T).max())
    if asym > tol:
        i, j = np.unravel_index(int(np.argmax(np.abs(d - d.T))), d.shape)
        return PropertyReport(
            prop, holds=False, tolerance=tol,
            witness=(int(i) + 1, int(j) + 1), slack=asym, note="asymmetric",
        )
    diag = float(np.abs(np.diag(d)).max())
    if diag > tol:
        i = int(np.argmax(np.abs(np.diag(d))))
        return PropertyReport(
            prop, holds=False, tolerance=tol,
            witness=(i + 1, i + 1), slack=diag, note="nonzero self-distance",
        )
    if require_separation:
        for x in range(n):
            for y in range(x + 1, n):
                if d[x, y] <= tol:
                    return PropertyReport(
                        prop, holds=False, tolerance=tol,
                        witness=(x + 1, y + 1), slack=float(d[x, y]),
                        note="distinct vertices at zero distance",
                    )
    worst = -np.inf
    witness = None
    for x, y, z in _distinct_triples(n):
        v = d[x, z] - d[x, y] - d[y, z]
        if v > worst:
            worst, witness = v, (x, y, z)
    if witness is None:  # n < 3: nothing to check
        return PropertyReport(prop, holds=True, tolerance=tol)
    x, y, z = witness
    holds = worst <= tol
    return PropertyReport(
        prop,
        holds=holds,
        tolerance=tol,
        witness=None if holds else (x + 1, y + 1, z + 1),
        slack=float(worst),
        indeterminate=0.5 * tol <= worst <= 2.0 * tol,
        note="triangle excess d(x,z)-d(x,y)-d(y,z) at worst (x,y,z)",
    )


def check_metric(d: np.ndarray, tol: float = DEFAULT_TOL) -> PropertyReport:
    """The four metric axioms: nonnegativity, symmetry, identity of
    indiscernibles, and the triangle inequality over all ordered triples."""
    return _metric_axioms(np.asarray(d, dtype=float), tol, "metric")


def check_sq_euclidean(d: np.ndarray, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Realizability of d as squared Euclidean distances: the doubly
    centered matrix -H d H must be PSD."""
    a = np.asarray(d, dtype=float)
    if not is_symmetric(a):
        raise ValueError("check_sq_euclidean requires a symmetric matrix")
    if a.shape[0] and np.abs(np.diag(a)).max() > tol:
        raise ValueError("check_sq_euclidean requires a zero diagonal")
    n = a.shape[0]
    j = np.full((n, n), 1.0 / n)
    h = np.eye(n) - j
    b = -h @ a @ h
    min_eig = float(sym_eigen(0.5 * (b + b.T)).eigenvalues[0])
    return PropertyReport(
        "sq_euclidean",
        holds=min_eig >= -tol,
        tolerance=tol,
        slack=min_eig,
        indeterminate=-2.0 * tol <= min_eig <= -0.5 * tol,
        note="smallest eigenvalue of the centered Gram matrix",
    )


def check_transitional(
    s: np.ndarray, g: WeightedGraph, tol: float = DEFAULT_TOL
) -> PropertyReport:
    """Transitional-measure test: s_ij s_jk <= s_ik s_jj for all triples
    (relative slack), with equality exactly when j separates i from k.
    Equality detection at relative tolerance is cross-checked against the
    cut-vertex predicate in both directions."""
    a = np.asarray(s, dtype=float)
    if a.min() <= 0:
        i, j = np.unravel_index(int(np.argmin(a)), a.shape)
        raise ValueError(
            f"check_transitional requires strictly positive entries; "
            f"entry ({int(i) + 1},{int(j) + 1}) = {a[i, j]:.6g}"
        )
    n = a.shape[0]
    worst = -np.inf
    witness = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rel = (a[i, j] * a[j, k] - a[i, k] * a[j, j]) / (a[i, k] * a[j, j])
                if rel > worst:
                    worst, witness = rel, (i, j, k)
    if worst > tol:
        i, j, k = witness
        return PropertyReport(
            "transitional", holds=False, tolerance=tol,
            witness=(i + 1, j + 1, k + 1), slack=float(worst),
            indeterminate=worst <= 2.0 * tol,
            note="relative excess of s(i,j)s(j,k) over s(i,k)s(j,j)",
        )
    boundary_cases = False
    for i, j, k in _distinct_triples(n):
        rel = (a[i, j] * a[j, k] - a[i, k] * a[j, j]) / (a[i, k] * a[j, j])
        equal = abs(rel) <= tol
        boundary_cases = boundary_cases or 0.5 * tol <= abs(rel) <= 2.0 * tol
        cut = is_cut_between(g, j, i, k)
        if equal and not cut:
            return PropertyReport(
                "transitional", holds=False, tolerance=tol,
                witness=(i + 1, j + 1, k + 1), slack=float(rel),
                note="product equality although j does not separate i from k",
            )
        if cut and not equal:
            return PropertyReport(
                "transitional", holds=False, tolerance=tol,
                witness=(i + 1, j + 1, k + 1), slack=float(rel),
                note="j separates i from k but products differ",
            )
    return PropertyReport(
        "transitional", holds=True, tolerance=tol, slack=float(worst),
        indeterminate=boundary_cases,
    )


def check_cutpoint_additive(
    d: np.ndarray, g: WeightedGraph, tol: float = DEFAULT_TOL
) -> PropertyReport:
    """d(i,j) + d(j,k) = d(i,k) exactly when j separates i from k, both
    directions checked on every ordered triple."""
    a = np.asarray(d, dtype=float)
    boundary_cases = False
    for i, j, k in _distinct_triples(a.shape[0]):
        gap = a[i, j] + a[j, k] - a[i, k]
        additive = abs(gap) <= tol
        boundary_cases = boundary_cases or 0.5 * tol <= abs(gap) <= 2.0 * tol
        cut = is_cut_between(g, j, i, k)
        if additive and not cut:
            return PropertyReport(
                "cutpoint_additive", holds=False, tolerance=tol,
                witness=(i + 1, j + 1, k + 1), slack=float(gap),
                note="additive although j does not separate i from k",
            )
        if cut and not additive:
            return PropertyReport(
                "cutpoint_additive", holds=False, tolerance=tol,
                witness=(i + 1, j + 1, k + 1), slack=float(gap),
                note="j separates i from k but d(i,j)+d(j,k) != d(i,k)",
            )
    return PropertyReport(
        "cutpoint_additive", holds=True, tolerance=tol, indeterminate=boundary_cases
    )


def check_distance_order(d: np.ndarray) -> PropertyReport:
    """For the 4-vertex path: d(1,2) < d(1,3) < d(1,4)."""
    a = np.asarray(d, dtype=float)
    if a.shape != (4, 4):
        raise ValueError("check_distance_order expects a 4x4 distance matrix")
    if not a[0, 1] < a[0, 2]:
        return PropertyReport(
            "distance_order", holds=False, tolerance=0.0,
            witness=(1, 2, 1, 3), slack=float(a[0, 1] - a[0, 2]),
            note="d(1,2) >= d(1,3)",
        )
    if not a[0, 2] < a[0, 3]:
        return PropertyReport(
            "distance_order", holds=False, tolerance=0.0,
            witness=(1, 3, 1, 4), slack=float(a[0, 2] - a[0, 3]),
            note="d(1,3) >= d(1,4)",
        )
    return PropertyReport("distance_order", holds=True, tolerance=0.0)


def check_sqrt_distance(d: np.ndarray, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Necessary-condition filter for proximities: d must be entrywise
    nonnegative and its entrywise square root must satisfy the triangle
    inequality. Coinciding points are allowed (an all-zero d passes)."""
    a = np.asarray(d, dtype=float)
    if a.min() < -tol:
        i, j = np.unravel_index(int(np.argmin(a)), a.shape)
        return PropertyReport(
            "sqrt_distance", holds=False, tolerance=tol,
            witness=(int(i) + 1, int(j) + 1), slack=float(a.min()),
            note="negative entry, no square-root distance exists",
        )
    root = np.sqrt(np.clip(a, 0.0, None))
    return _metric_axioms(root, tol, "sqrt_distance", require_separation=False)
