"""Convex-geometry primitives over V-polytopes (polytopes given by vertex lists).

Everything here works on finite point sets stored column-wise.  The central
routine is a distance-to-convex-hull solver (Frank-Wolfe with away steps over
the coefficient simplex); Hausdorff distance, well-separation margins and soft
hull membership are all built on top of it.

All operations are pure functions of their inputs and safe to call
concurrently.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PointMatrix",
    "VPolytope",
    "SimplexCoeffs",
    "dist_to_hull",
    "hull_membership",
    "hausdorff",
    "diameter",
    "well_separation",
]

# Sum-to-one slack accepted on simplex coefficient vectors.
_SIMPLEX_TOL = 1e-9


def _as_matrix(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"point matrix must be 2-d (dim x count), got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValueError("point dimension must be >= 1")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("point matrix contains non-finite entries")
    return m


@dataclass(frozen=True, eq=False)
class PointMatrix:
    """A d x n collection of points; column j is the j-th point."""

    entries: np.ndarray

    def __post_init__(self):
        m = _as_matrix(self.entries)
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def count(self) -> int:
        return self.entries.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j].copy()

    def select(self, indices) -> "PointMatrix":
        return PointMatrix(self.entries[:, np.asarray(indices, dtype=int)])


def as_point_matrix(points) -> PointMatrix:
    """Coerce an ndarray (d x n) or PointMatrix to a PointMatrix."""
    if isinstance(points, PointMatrix):
        return points
    return PointMatrix(points)


@dataclass(frozen=True, eq=False)
class VPolytope:
    """Polytope represented by its vertex matrix (d x k, k >= 1)."""

    vertices: PointMatrix

    def __post_init__(self):
        pm = as_point_matrix(self.vertices)
        if pm.count < 1:
            raise ValueError("a V-polytope needs at least one vertex")
        object.__setattr__(self, "vertices", pm)

    @property
    def dim(self) -> int:
        return self.vertices.dim

    @property
    def count(self) -> int:
        return self.vertices.count

    def diameter(self) -> float:
        return diameter(self.vertices)


@dataclass(frozen=True, eq=False)
class SimplexCoeffs:
    """Nonnegative weights summing to one; a convex-combination certificate."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1:
            raise ValueError("simplex coefficients must be a 1-d vector")
        if w.size and w.min() < -_SIMPLEX_TOL:
            raise ValueError(f"negative simplex coefficient: {w.min()}")
        if abs(float(w.sum()) - 1.0) > _SIMPLEX_TOL:
            raise ValueError(f"simplex coefficients sum to {w.sum()}, expected 1")
        w = np.clip(w, 0.0, None)
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    def combine(self, S: PointMatrix) -> np.ndarray:
        """Evaluate the convex combination against the columns of ``S``."""
        return S.entries @ self.weights


def diameter(W) -> float:
    """Largest pairwise Euclidean distance, exact over all pairs.

    Scans all n*(n-1)/2 pairs (chunked Gram computation for large n);
    returns 0.0 for a single point.
    """
    pm = as_point_matrix(W)
    if pm.count == 0:
        raise ValueError("diameter of an empty point set is undefined")
    X = pm.entries
    n = pm.count
    if n == 1:
        return 0.0
    sq = np.einsum("ij,ij->j", X, X)
    best = 0.0
    chunk = max(1, int(2**22 // max(n, 1)))
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        g = X[:, start:stop].T @ X
        d2 = sq[start:stop, None] + sq[None, :] - 2.0 * g
        m = float(d2.max())
        if m > best:
            best = m
    return math.sqrt(max(best, 0.0))


def _dist_scale(C: np.ndarray) -> float:
    # max_j |x - s_j|; lower bounds diam(S u {x}) and upper bounds the distance.
    return float(np.sqrt(np.einsum("ij,ij->j", C, C).max()))


def _corrective_step(C: np.ndarray, lam: np.ndarray, r: np.ndarray):
    """Exact minimization over the affine hull of the current support.

    Solves the KKT system of min |C lam|^2 with sum(lam) = 1 restricted to
    the support, then moves as far toward that solution as nonnegativity
    allows.  Kills the zigzagging that plain away steps are prone to on
    nearly affinely dependent supports.
    """
    support = np.flatnonzero(lam > 0.0)
    s = support.size
    A = C[:, support]
    kkt = np.zeros((s + 1, s + 1))
    kkt[:s, :s] = A.T @ A
    kkt[:s, s] = 1.0
    kkt[s, :s] = 1.0
    rhs = np.zeros(s + 1)
    rhs[s] = 1.0
    try:
        sol = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError:
        sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    target = sol[:s]
    if not np.all(np.isfinite(target)):
        return lam, r, False
    step = target - lam[support]
    neg = step < 0.0
    gamma = 1.0
    if np.any(neg):
        gamma = min(1.0, float(np.min(lam[support][neg] / -step[neg])))
    if gamma <= 0.0:
        return lam, r, False
    cand = lam.copy()
    cand[support] = np.clip(lam[support] + gamma * step, 0.0, None)
    total = cand.sum()
    if total <= 0.0:
        return lam, r, False
    cand /= total
    r_cand = C @ cand
    if float(r_cand @ r_cand) < float(r @ r):
        return cand, r_cand, True
    return lam, r, False


def _frank_wolfe_hull(
    C: np.ndarray,
    gap_target: float,
    max_iter: int,
    in_radius: float | None = None,
    out_radius: float | None = None,
):
    """Away-step Frank-Wolfe for min |C @ lam|^2 over the simplex.

    ``C`` holds the hull points shifted so the query point is the origin.
    Stops when the Frank-Wolfe gap certifies the requested additive accuracy,
    or (membership mode) as soon as the distance is certified <= ``in_radius``
    or > ``out_radius``.  Every 32 iterations a fully corrective step solves
    the active-set subproblem exactly.  Returns (lam, achieved_gap, n_iter).
    """
    k = C.shape[1]
    norms2 = np.einsum("ij,ij->j", C, C)
    lam = np.zeros(k)
    lam[int(np.argmin(norms2))] = 1.0
    r = C @ lam

    gap = math.inf
    best_gap = math.inf
    stall = 0
    it = 0
    for it in range(1, max_iter + 1):
        g = C.T @ r
        s = int(np.argmin(g))
        lam_dot_g = float(lam @ g)
        gap = 2.0 * (lam_dot_g - float(g[s]))
        f = float(r @ r)
        if gap <= gap_target:
            break
        if gap < best_gap * (1.0 - 1e-3):
            best_gap = gap
            stall = 0
        else:
            stall += 1
            if stall > 128:
                break  # float64 noise floor reached; caller sees the gap
        if in_radius is not None and f <= in_radius * in_radius:
            break
        if out_radius is not None:
            lower2 = f - gap
            if lower2 > out_radius * out_radius:
                break

        support = np.flatnonzero(lam > 0.0)
        a = int(support[np.argmax(g[support])])
        fw_descent = lam_dot_g - float(g[s])
        away_descent = float(g[a]) - lam_dot_g

        if fw_descent >= away_descent:
            d = C[:, s] - r
            dd = float(d @ d)
            if dd <= 0.0:
                break
            gamma = min(max(-float(r @ d) / dd, 0.0), 1.0)
            lam *= 1.0 - gamma
            lam[s] += gamma
            r = r + gamma * d
        else:
            d = r - C[:, a]
            dd = float(d @ d)
            la = float(lam[a])
            if dd <= 0.0 or la >= 1.0:
                break
            gamma_max = la / (1.0 - la)
            gamma = min(max(-float(r @ d) / dd, 0.0), gamma_max)
            lam *= 1.0 + gamma
            lam[a] -= gamma
            if gamma >= gamma_max - 1e-15:
                lam[a] = 0.0
            r = r + gamma * d

        if it % 32 == 0 and int(np.count_nonzero(lam > 0.0)) <= 64:
            lam, r, _ = _corrective_step(C, lam, r)
        if it % 256 == 0:
            # Kill accumulated drift; lam must stay on the simplex.
            np.clip(lam, 0.0, None, out=lam)
            lam /= lam.sum()
            r = C @ lam

    np.clip(lam, 0.0, None, out=lam)
    lam /= lam.sum()
    return lam, gap, it


def _max_iter_for(count: int, tol: float) -> int:
    return max(64, int(math.ceil(50.0 * count * math.log(1.0 / min(tol, 0.5)))))


def _dist_to_hull_raw(
    x: np.ndarray,
    S: np.ndarray,
    tol: float,
    in_radius: float | None = None,
    out_radius: float | None = None,
):
    """Shared core: returns (distance, lam, scale). Absolute accuracy tol*scale."""
    C = S - x[:, None]
    scale = _dist_scale(C)
    if scale == 0.0:
        lam = np.zeros(S.shape[1])
        lam[0] = 1.0
        return 0.0, lam, scale
    # Gap certificates below ~8*eps*scale^2 are float64 noise; don't chase them.
    gap_target = max((tol * scale) ** 2, 8.0 * np.finfo(np.float64).eps * scale * scale)
    max_iter = _max_iter_for(S.shape[1], tol)
    lam, gap, _ = _frank_wolfe_hull(
        C, gap_target, max_iter, in_radius=in_radius, out_radius=out_radius
    )
    if gap > gap_target and in_radius is None and out_radius is None:
        warnings.warn(
            f"hull-distance solver stopped early; achieved gap {gap:.3e} "
            f"(target {gap_target:.3e})",
            RuntimeWarning,
            stacklevel=3,
        )
    residual = S @ lam - x
    return float(np.linalg.norm(residual)), lam, scale


def dist_to_hull(x, S, tol: float = 1e-6) -> tuple[float, SimplexCoeffs]:
    """Distance from point ``x`` to the convex hull of the columns of ``S``.

    Solves min |sum_i lam_i s_i - x| over the simplex with away-step
    Frank-Wolfe, stopping once the duality gap certifies an additive error
    of at most ``tol * diam(S u {x})``.  Returns the distance together with
    the convex-combination witness; the witness reconstructs a hull point
    at exactly the reported distance from ``x``.
    """
    pm = as_point_matrix(S)
    xv = np.asarray(x, dtype=np.float64).reshape(-1)
    if pm.count < 1:
        raise ValueError("cannot take the distance to an empty hull")
    if xv.shape[0] != pm.dim:
        raise ValueError(f"dimension mismatch: point has dim {xv.shape[0]}, hull has dim {pm.dim}")
    if not np.all(np.isfinite(xv)):
        raise ValueError("query point contains non-finite entries")
    if tol <= 0:
        raise ValueError("tol must be positive")
    dist, lam, _ = _dist_to_hull_raw(xv, pm.entries, tol)
    return dist, SimplexCoeffs(lam)


def hull_membership(x, S, radius: float, tol: float = 1e-9) -> tuple[bool, SimplexCoeffs]:
    """Decide dist(x, CH(S)) <= radius + tol, with early-exit certificates.

    Cheaper than ``dist_to_hull`` when only the yes/no answer matters: the
    solver stops as soon as either the upper bound drops below the radius or
    the duality-gap lower bound exceeds it.
    """
    pm = as_point_matrix(S)
    xv = np.asarray(x, dtype=np.float64).reshape(-1)
    if pm.count < 1:
        raise ValueError("membership in an empty hull is undefined")
    if xv.shape[0] != pm.dim:
        raise ValueError(f"dimension mismatch: point has dim {xv.shape[0]}, hull has dim {pm.dim}")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    scale = _dist_scale(pm.entries - xv[:, None])
    rel_tol = max(tol / scale, 1e-12) if scale > 0 else 1e-12
    dist, lam, _ = _dist_to_hull_raw(
        xv, pm.entries, rel_tol, in_radius=radius, out_radius=radius + tol
    )
    return dist <= radius + tol, SimplexCoeffs(lam)


def hausdorff(Pm, Qm, tol: float = 1e-6) -> float:
    """Hausdorff distance between the convex hulls of two point sets.

    The supremum over a convex hull of the distance to a convex set is
    attained at a vertex, so scanning the columns of each matrix against the
    other hull is exact.  Accuracy: additive tol * max(diam(P), diam(Q)).
    """
    P = as_point_matrix(Pm)
    Q = as_point_matrix(Qm)
    if P.count == 0 or Q.count == 0:
        raise ValueError("hausdorff distance needs two nonempty point sets")
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    scale = max(diameter(P), diameter(Q))
    best = 0.0
    for A, B in ((P, Q), (Q, P)):
        for j in range(A.count):
            x = A.entries[:, j]
            C = B.entries - x[:, None]
            local = _dist_scale(C)
            if local == 0.0:
                continue
            rel = max((tol * scale) / local, 1e-12) if scale > 0 else 1e-9
            d, _, _ = _dist_to_hull_raw(x, B.entries, rel)
            if d > best:
                best = d
    return best


def well_separation(K: VPolytope, tol: float = 1e-6) -> float:
    """Worst vertex margin of ``K``, relative to its diameter.

    Returns min_v dist(v, CH(other vertices)) / diam(K).  ``K`` counts as
    delta-well-separated exactly when the returned value is >= delta.
    Degenerate diam(K) = 0 yields 0.0.
    """
    if K.count < 2:
        raise ValueError("well-separation needs at least two vertices")
    delta_k = K.diameter()
    if delta_k == 0.0:
        return 0.0
    V = K.vertices.entries
    k = K.count
    worst = math.inf
    idx = np.arange(k)
    for ell in range(k):
        others = V[:, idx != ell]
        d, _, _ = _dist_to_hull_raw(V[:, ell], others, tol)
        worst = min(worst, d)
    return worst / delta_k
