"""Direction-query optimization oracles and an answer auditor.

An optimization oracle with error eps over a polytope K answers a unit
direction u with a point x(u) satisfying both

    x(u) in K + eps*diam(K)*B      (containment), and
    u.x(u) >= max_{y in K} u.y - eps*diam(K)   (optimality).

Four concrete oracles live here: the exact vertex argmax, a bounded-noise
wrapper around it, subset smoothing over a data matrix (answers with the
mean of the top fraction of columns along u), and the adversarial "needle"
oracle that always answers zero while logging every query.  ``audit_answer``
checks a single answer against both clauses when K is known.
"""

from __future__ import annotations

import hashlib
import math
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .geometry import PointMatrix, VPolytope, as_point_matrix, diameter, dist_to_hull

__all__ = [
    "OptOracle",
    "ExactOracle",
    "NoisyOracle",
    "SubsetSmoothingOracle",
    "NeedleOracle",
    "OracleAudit",
    "exact_oracle",
    "noisy_oracle",
    "subset_smoothing_oracle",
    "needle_oracle",
    "audit_answer",
    "find_consistent_needles",
]

_UNIT_NORM_TOL = 1e-9


def _check_unit(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    n = float(np.linalg.norm(u))
    if not (1.0 - _UNIT_NORM_TOL <= n <= 1.0 + _UNIT_NORM_TOL):
        raise ValueError(f"query direction must be a unit vector, got norm {n!r}")
    return u


class OptOracle(ABC):
    """Query interface: unit direction -> point, with an advertised guarantee.

    ``advertised_epsilon`` is the error the oracle claims relative to
    ``reference_diameter``; it is nan when unknown (data-backed oracles
    without ground truth).
    """

    dim: int
    advertised_epsilon: float

    @property
    @abstractmethod
    def reference_diameter(self) -> float: ...

    @abstractmethod
    def query(self, u) -> np.ndarray: ...


class ExactOracle(OptOracle):
    """Zero-error oracle: returns the vertex maximizing u.v.

    Ties break toward the lowest vertex index, so answers are deterministic.
    """

    def __init__(self, K: VPolytope):
        self._K = K
        self.dim = K.dim
        self.advertised_epsilon = 0.0
        self._diam = K.diameter()

    @property
    def polytope(self) -> VPolytope:
        return self._K

    @property
    def reference_diameter(self) -> float:
        return self._diam

    def query(self, u) -> np.ndarray:
        u = _check_unit(u)
        if u.shape[0] != self.dim:
            raise ValueError(f"query dim {u.shape[0]} != oracle dim {self.dim}")
        scores = u @ self._K.vertices.entries
        return self._K.vertices.column(int(np.argmax(scores)))


class NoisyOracle(OptOracle):
    """Exact answer plus a seeded perturbation of norm <= eps*diam(K).

    A ball perturbation around a vertex answer keeps both oracle clauses
    valid; a post-hoc check still shrinks the perturbation if floating point
    ever lands an answer outside the advertised contract.  Answers are a
    pure function of (query bits, seed), independent of call order.
    """

    def __init__(self, K: VPolytope, epsilon: float, seed: int):
        if not (0.0 <= epsilon <= 1.0):
            raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
        self._exact = ExactOracle(K)
        self._K = K
        self.dim = K.dim
        self.advertised_epsilon = float(epsilon)
        self._seed = int(seed)
        self._diam = K.diameter()

    @property
    def reference_diameter(self) -> float:
        return self._diam

    def _perturbation(self, u: np.ndarray) -> np.ndarray:
        digest = hashlib.blake2b(
            u.tobytes() + self._seed.to_bytes(8, "little", signed=True),
            digest_size=16,
        ).digest()
        words = [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]
        rng = np.random.default_rng(np.random.SeedSequence(words))
        g = rng.standard_normal(self.dim)
        norm = np.linalg.norm(g)
        if norm == 0.0:
            return np.zeros(self.dim)
        radius = rng.random() ** (1.0 / self.dim)
        budget = self.advertised_epsilon * self._diam
        return g / norm * radius * budget * (1.0 - 1e-12)

    def query(self, u) -> np.ndarray:
        u = _check_unit(u)
        if u.shape[0] != self.dim:
            raise ValueError(f"query dim {u.shape[0]} != oracle dim {self.dim}")
        exact = self._exact.query(u)
        if self.advertised_epsilon == 0.0 or self._diam == 0.0:
            return exact
        p = self._perturbation(u)
        budget = self.advertised_epsilon * self._diam
        best_score = float(u @ exact)
        for _ in range(8):
            x = exact + p
            ok_containment = float(np.linalg.norm(p)) <= budget
            ok_optimality = float(u @ x) >= best_score - budget
            if ok_containment and ok_optimality:
                return x
            p *= 0.5
        return exact


class SubsetSmoothingOracle(OptOracle):
    """Answers with the mean of the columns scoring highest along u.

    The subset size is ceil(fraction * n); score ties break toward lower
    column indices.  Answers depend only on the ranking of u.A_j, so the
    oracle is scale-equivariant in u and accepts any nonzero direction.
    """

    def __init__(
        self,
        data,
        fraction: float,
        advertised_epsilon: float = math.nan,
        reference_diameter: float | None = None,
    ):
        pm = as_point_matrix(data)
        if pm.count < 1:
            raise ValueError("subset smoothing needs a nonempty data matrix")
        if not (0.0 < fraction <= 1.0):
            raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
        self._data = pm
        self.dim = pm.dim
        self.fraction = float(fraction)
        self.subset_size = int(math.ceil(fraction * pm.count))
        self.advertised_epsilon = float(advertised_epsilon)
        self._diam = reference_diameter

    @property
    def data(self) -> PointMatrix:
        return self._data

    @property
    def reference_diameter(self) -> float:
        if self._diam is None:
            self._diam = diameter(self._data)
        return self._diam

    def top_indices(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.float64).reshape(-1)
        if u.shape[0] != self.dim:
            raise ValueError(f"query dim {u.shape[0]} != oracle dim {self.dim}")
        if not np.any(u):
            raise ValueError("query direction must be nonzero")
        scores = u @ self._data.entries
        order = np.argsort(-scores, kind="stable")
        return order[: self.subset_size]

    def query(self, u) -> np.ndarray:
        idx = self.top_indices(u)
        return self._data.entries[:, idx].mean(axis=1)


class NeedleOracle(OptOracle):
    """Adversarial oracle refusing information: every answer is the zero vector.

    All queries are recorded (float32 rows, appends serialized by a lock) so
    that consistent needle directions can be constructed afterwards.
    """

    def __init__(self, dim: int):
        if dim < 4:
            raise ValueError("the needle construction needs dimension >= 4")
        self.dim = int(dim)
        self.advertised_epsilon = 8.0 * math.log(dim) / math.sqrt(dim)
        self._log: list[np.ndarray] = []
        self._lock = threading.Lock()

    @property
    def reference_diameter(self) -> float:
        return 2.0

    @property
    def queries(self) -> np.ndarray:
        with self._lock:
            if not self._log:
                return np.zeros((0, self.dim), dtype=np.float32)
            return np.stack(self._log)

    @property
    def query_count(self) -> int:
        with self._lock:
            return len(self._log)

    def query(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.float64).reshape(-1)
        if u.shape[0] != self.dim:
            raise ValueError(f"query dim {u.shape[0]} != oracle dim {self.dim}")
        with self._lock:
            self._log.append(u.astype(np.float32))
        return np.zeros(self.dim)


def exact_oracle(K: VPolytope) -> ExactOracle:
    return ExactOracle(K)


def noisy_oracle(K: VPolytope, epsilon: float, seed: int) -> NoisyOracle:
    return NoisyOracle(K, epsilon, seed)


def subset_smoothing_oracle(A, fraction: float, **kwargs) -> SubsetSmoothingOracle:
    return SubsetSmoothingOracle(A, fraction, **kwargs)


def needle_oracle(d: int) -> NeedleOracle:
    return NeedleOracle(d)


@dataclass(frozen=True)
class OracleAudit:
    """Slack of one oracle answer against both contract clauses.

    containment_slack = dist(x, K) - eps*Delta   (pass: <= tol)
    optimality_slack  = u.x - max_y u.y + eps*Delta   (pass: >= -tol)
    """

    containment_slack: float
    optimality_slack: float
    passed: bool
    tol: float


def audit_answer(
    K: VPolytope,
    u,
    x,
    epsilon: float,
    tol: float = 1e-9,
    reference_diameter: float | None = None,
    dist_tol: float = 1e-9,
) -> OracleAudit:
    """Audit one oracle answer against a known polytope.

    ``reference_diameter`` overrides diam(K) as the scale of the allowed
    slack (useful when auditing a projected polytope against the ambient
    diameter).
    """
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if u.shape[0] != K.dim or x.shape[0] != K.dim:
        raise ValueError("dimension mismatch between polytope, direction and answer")
    delta_k = K.diameter() if reference_diameter is None else float(reference_diameter)
    budget = epsilon * delta_k
    dist, _ = dist_to_hull(x, K.vertices, tol=max(dist_tol, 1e-12))
    support = float(np.max(u @ K.vertices.entries))
    containment_slack = dist - budget
    optimality_slack = float(u @ x) - support + budget
    passed = containment_slack <= tol and optimality_slack >= -tol
    return OracleAudit(containment_slack, optimality_slack, passed, tol)


def find_consistent_needles(
    queries: np.ndarray,
    dim: int,
    count: int = 2,
    threshold: float | None = None,
    min_separation: float = 0.1,
    seed: int = 0,
    max_candidates: int = 10**7,
) -> np.ndarray:
    """Find unit directions u with max_i |u . v_i| <= threshold over the query log.

    Rejection-samples random unit candidates; each accepted direction must
    also satisfy |u - w| >= min_separation and |u + w| >= min_separation
    against every previously accepted w.  Raises RuntimeError once
    ``max_candidates`` candidates have been tried.  Default threshold:
    4*ln(d)/sqrt(d).
    """
    if threshold is None:
        threshold = 4.0 * math.log(dim) / math.sqrt(dim)
    V = np.asarray(queries)
    if V.dtype not in (np.float32, np.float64):
        V = V.astype(np.float64)
    if V.size and V.shape[1] != dim:
        raise ValueError(f"query log has dim {V.shape[1]}, expected {dim}")
    rng = np.random.default_rng(seed)
    found: list[np.ndarray] = []
    tried = 0
    batch = 64
    while len(found) < count:
        if tried >= max_candidates:
            raise RuntimeError(
                f"needle search exhausted {max_candidates} candidates "
                f"({len(found)}/{count} found)"
            )
        G = rng.standard_normal((batch, dim))
        G /= np.linalg.norm(G, axis=1, keepdims=True)
        for u in G:
            tried += 1
            if V.size and float(np.abs(V @ u.astype(V.dtype)).max()) > threshold:
                continue
            if any(
                np.linalg.norm(u - w) < min_separation
                or np.linalg.norm(u + w) < min_separation
                for w in found
            ):
                continue
            found.append(u.copy())
            if len(found) == count:
                break
    return np.stack(found)
