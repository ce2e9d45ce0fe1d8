"""
Brute-force validators.

Naive and exponential: cycles are enumerated with networkx,
supports by trying every subset, eigencones and solution sets on grids.
Nothing here imports the spectral, one-sided, cone or interval modules.
"""
from dataclasses import dataclass, replace
from itertools import chain, combinations, islice, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple
import logging
import math

import networkx as nx
import numpy as np

from .config import get_settings
from .exceptions import Divergent, SizeCutoff
from .tropical_core import approx_equal, approx_le, approx_lt, mat_vec

logger = logging.getLogger(__name__)

SUPPORT_MAX_DIMENSION = 5
CYCLE_MAX_DIMENSION = 7
UNIQUE_MAX_DIMENSION = 4
GRID_LIMIT = 1_000_000
CHUNK = 4096


@dataclass(frozen=True)
class OracleConfig:
    resolution: int = 25
    samples: int = 1000
    seed: int = 42
    max_dimension: int = 6

    @classmethod
    def from_settings(cls, **overrides) -> 'OracleConfig':
        conf = get_settings()
        base = cls(conf.oracle_resolution, conf.oracle_samples, conf.seed, conf.oracle_max_dimension)
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})


def _cutoff(n: int, limit: int, name: str):
    if n > limit:
        raise SizeCutoff(f"{name} is limited to n <= {limit}, got n = {n}")


def _graph(A: np.ndarray, nodes=None) -> nx.DiGraph:
    keep = range(A.shape[0]) if nodes is None else sorted(nodes)
    G = nx.DiGraph()
    G.add_nodes_from(keep)
    for i in keep:
        for j in keep:
            if A[i, j] > 0:
                G.add_edge(i, j, weight=float(A[i, j]))
    return G


def _in_box(X, x, eps: Optional[float] = None) -> bool:
    for i, value in enumerate(x):
        low_ok = approx_lt(X.lower[i], value, eps) if X.lower_open[i] else approx_le(X.lower[i], value, eps)
        if not low_ok:
            return False
        if math.isinf(X.upper[i]):
            continue
        high_ok = approx_lt(value, X.upper[i], eps) if X.upper_open[i] else approx_le(value, X.upper[i], eps)
        if not high_ok:
            return False
    return True


def _finite_upper(X) -> np.ndarray:
    upper = np.array(X.upper, dtype=float)
    finite = np.concatenate([np.asarray(X.lower, dtype=float), upper[np.isfinite(upper)]])
    big = 1e3 * max(1.0, float(finite.max()) if finite.size else 1.0)
    upper[np.isinf(upper)] = big
    return upper


# --- cycles and closures -----------------------------------------------------------

def brute_cycle_means(A) -> Dict[Tuple[int, ...], float]:
    """Geometric mean of every elementary cycle of digr(A)."""
    A = np.asarray(A, dtype=float)
    _cutoff(A.shape[0], CYCLE_MAX_DIMENSION, 'brute_cycle_means')
    means = {}
    for cycle in nx.simple_cycles(_graph(A)):
        weight = 1.0
        for k, i in enumerate(cycle):
            weight *= A[i, cycle[(k + 1) % len(cycle)]]
        means[tuple(cycle)] = weight ** (1.0 / len(cycle))
    return means


def brute_mcgm(A) -> float:
    means = brute_cycle_means(A)
    return max(means.values()) if means else 0.0


def brute_kleene_plus(A) -> np.ndarray:
    """Heaviest path weights by Floyd-Warshall relaxation."""
    P = np.array(A, dtype=float)
    n = P.shape[0]
    for k in range(n):
        P = np.maximum(P, P[:, k:k + 1] * P[k:k + 1, :])
    if np.any(np.diag(P) > 1 + 1e-9):
        raise Divergent("Path closure diverges")
    return P


# --- supports and eigencones ---------------------------------------------------------

def _subsets(n: int) -> Iterator[Tuple[int, ...]]:
    return chain.from_iterable(combinations(range(n), k) for k in range(1, n + 1))


def _realizable(A: np.ndarray, lam: float, S: FrozenSet[int], eps: Optional[float]) -> bool:
    outside = [i for i in range(A.shape[0]) if i not in S]
    if outside and np.any(A[np.ix_(outside, sorted(S))] > 0):
        return False

    G = _graph(A, S)
    critical: Set[int] = set()
    for cycle in nx.simple_cycles(G):
        weight = 1.0
        for k, i in enumerate(cycle):
            weight *= A[i, cycle[(k + 1) % len(cycle)]]
        mean = weight ** (1.0 / len(cycle))
        if approx_lt(lam, mean, eps):
            return False
        if approx_equal(mean, lam, eps):
            critical.update(cycle)
    if not critical:
        return False
    return all(v in critical or nx.descendants(G, v) & critical for v in S)


def brute_support_enum(A, lam: float, eps: Optional[float] = None) -> Set[FrozenSet[int]]:
    """Every support of an eigenvector for λ, by trying every subset."""
    A = np.asarray(A, dtype=float)
    _cutoff(A.shape[0], SUPPORT_MAX_DIMENSION, 'brute_support_enum')
    return {frozenset(S) for S in _subsets(A.shape[0]) if _realizable(A, lam, frozenset(S), eps)}


def brute_max_support(A, lam: float, eps: Optional[float] = None) -> FrozenSet[int]:
    supports = brute_support_enum(A, lam, eps)
    return frozenset().union(*supports) if supports else frozenset()


def _generators(A: np.ndarray, lam: float, eps: Optional[float]) -> np.ndarray:
    n = A.shape[0]
    supports = [frozenset(S) for S in _subsets(n) if _realizable(A, lam, frozenset(S), eps)]
    if not supports:
        return np.zeros((n, 0))
    top = sorted(frozenset().union(*supports))
    scaled = np.zeros((n, n))
    scaled[:, top] = A[:, top] / lam
    plus = brute_kleene_plus(scaled)
    critical = [i for i in top if approx_equal(plus[i, i], 1.0, eps)]
    return plus[:, critical]


def _grid(levels: np.ndarray, k: int) -> Iterator[np.ndarray]:
    combos = product(range(levels.shape[0]), repeat=k)
    while True:
        block = list(islice(combos, CHUNK))
        if not block:
            return
        yield levels[np.array(block)]


def _fit_scales(X, v: np.ndarray) -> List[float]:
    """Scalars α with α·v possibly in X: the two ends and the middle of the admissible range."""
    upper = _finite_upper(X)
    positive = v > 0
    if not np.any(positive):
        return []
    if np.any((~positive) & ((X.lower > 0) | np.asarray(X.lower_open))):
        return []
    low = float(np.max(X.lower[positive] / v[positive]))
    high = float(np.min(upper[positive] / v[positive]))
    if low > high:
        return []
    scales = [high, (low + high) / 2]
    if low > 0:
        scales.append(low)
    return scales


def brute_eigencone(A, lam: float, resolution: Optional[int] = None, box=None,
                    eps: Optional[float] = None) -> List[np.ndarray]:
    """
    Max-combinations of the critical columns of (A_λ)⁺ over a log grid of
    coefficients (0 included), each re-verified by A ⊗ x = λx.

    With ``box``, each grid direction is rescaled to fit the box and only
    points inside it are kept; the greatest eigenvector below x̄ is added.
    """
    A = np.asarray(A, dtype=float)
    conf = OracleConfig.from_settings(resolution=resolution)
    _cutoff(A.shape[0], conf.max_dimension, 'brute_eigencone')

    G = _generators(A, lam, eps)
    k = G.shape[1]
    if k == 0:
        return []

    r = conf.resolution
    while r > 1 and (r + 1) ** k > GRID_LIMIT:
        r -= 1
    levels = np.concatenate([[0.0], np.logspace(-2, 2, r)])

    points: List[np.ndarray] = []
    if box is not None:
        upper = _finite_upper(box)
        with np.errstate(divide='ignore', invalid='ignore'):
            gamma = np.where(G > 0, upper[:, None] / G, np.inf).min(axis=0)
        points.append((G * gamma[None, :]).max(axis=1))

    for coeffs in _grid(levels, k):
        block = (coeffs[:, None, :] * G[None, :, :]).max(axis=2)
        block = block[np.any(block > 0, axis=1)]
        if box is None:
            points.extend(block)
            continue
        for v in block:
            points.extend(alpha * v for alpha in _fit_scales(box, v))

    kept = []
    for x in points:
        if not np.any(x > 0) or not np.all(approx_equal(mat_vec(A, x), lam * x, eps)):
            continue
        if box is not None and not _in_box(box, x, eps):
            continue
        kept.append(x)
    logger.debug(f"Eigencone sweep: {len(kept)} of {len(points)} point(s) kept")
    return kept


# --- systems in boxes ------------------------------------------------------------------

def _gamma(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(A > 0, b[:, None] / A, np.inf).min(axis=0) if A.shape[0] else np.full(A.shape[1], np.inf)


def _coordinate_candidates(X, j: int, cap: float, resolution: int, eps: Optional[float]) -> List[float]:
    lower = float(X.lower[j])
    top = min(float(X.upper[j]), cap)
    values = [lower, (lower + top) / 2 if math.isfinite(top) else lower + 1.0]
    if math.isfinite(cap):
        values.append(cap)
    if math.isfinite(X.upper[j]):
        values.append(float(X.upper[j]))
    if math.isfinite(top):
        values.extend(np.linspace(lower, top, resolution + 2)[1:-1])
    else:
        values.extend(lower + np.logspace(-2, 2, resolution))

    kept = []
    for value in values:
        if value in kept:
            continue
        inside = _in_box_coordinate(X, j, value, eps)
        if inside and (math.isinf(cap) or approx_le(value, cap, eps)):
            kept.append(float(value))
    return kept


def _in_box_coordinate(X, j: int, value: float, eps: Optional[float]) -> bool:
    low_ok = approx_lt(X.lower[j], value, eps) if X.lower_open[j] else approx_le(X.lower[j], value, eps)
    if not low_ok:
        return False
    if math.isinf(X.upper[j]):
        return True
    return bool(approx_lt(value, X.upper[j], eps) if X.upper_open[j] else approx_le(value, X.upper[j], eps))


def brute_unique_in_box(A, b, X, resolution: Optional[int] = None, eps: Optional[float] = None) -> int:
    """
    Number of distinct solutions of A ⊗ x = b found in X on a candidate grid.

    Candidates per coordinate are γ*_j, the bounds, the middle and interior
    grid points of X_j ∩ [0, γ*_j]; 0 means unsolvable in X, 2 or more
    refutes uniqueness.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    n = A.shape[1]
    _cutoff(n, UNIQUE_MAX_DIMENSION, 'brute_unique_in_box')
    res = resolution if resolution is not None else OracleConfig.from_settings().resolution

    gamma = _gamma(A, b)
    axes = [_coordinate_candidates(X, j, float(gamma[j]), res, eps) for j in range(n)]
    if any(not axis for axis in axes):
        return 0

    solutions: List[np.ndarray] = []
    combos = product(*axes)
    while True:
        block = list(islice(combos, CHUNK))
        if not block:
            break
        points = np.array(block, dtype=float)
        images = (A[None, :, :] * points[:, None, :]).max(axis=2)
        ok = np.all(approx_equal(images, b[None, :], eps), axis=1)
        for x in points[ok]:
            if not any(np.all(approx_equal(x, s, eps)) for s in solutions):
                solutions.append(x)
                if len(solutions) >= 2:
                    return len(solutions)
    return len(solutions)


def brute_x_simple_eigencone(A, lam: float, X, resolution: Optional[int] = None,
                             unique_resolution: int = 4, eps: Optional[float] = None) -> Optional[bool]:
    """
    Sweep the eigenvectors in X; False as soon as one has a second solution
    in X, None when no eigenvector in X was found.
    """
    A = np.asarray(A, dtype=float)
    points = brute_eigencone(A, lam, resolution=resolution, box=X, eps=eps)
    if not points:
        return None
    for x in points:
        if brute_unique_in_box(A, lam * x, X, unique_resolution, eps) >= 2:
            return False
    return True


# --- sampling --------------------------------------------------------------------------

def _sample(rng: np.random.Generator, X) -> np.ndarray:
    return rng.uniform(np.asarray(X.lower, dtype=float), _finite_upper(X))


def sample_cone_in_box(G, X, seed: Optional[int] = None, samples: Optional[int] = None,
                       eps: Optional[float] = None) -> Optional[np.ndarray]:
    """A point of span(G) inside X found by seeded random combinations, or None."""
    G = np.asarray(G, dtype=float)
    conf = OracleConfig.from_settings(seed=seed, samples=samples)
    rng = np.random.default_rng(conf.seed)
    k = G.shape[1]
    if k == 0:
        zero = np.zeros(G.shape[0])
        return zero if _in_box(X, zero, eps) else None

    for _ in range(conf.samples):
        coeffs = np.exp(rng.uniform(-5, 5, k)) * (rng.random(k) < 0.8)
        v = (G * coeffs[None, :]).max(axis=1)
        for alpha in _fit_scales(X, v):
            if _in_box(X, alpha * v, eps):
                return alpha * v
    return None


def orbit_counterexample(A, lam: float, X, samples: Optional[int] = None, steps: Optional[int] = None,
                         seed: Optional[int] = None, eps: Optional[float] = None) -> Optional[Tuple[np.ndarray, int]]:
    """
    A sampled x ∈ X outside V(A, λ) whose orbit enters V(A, λ), with the
    step at which it does.
    """
    A = np.asarray(A, dtype=float)
    conf = OracleConfig.from_settings(seed=seed, samples=samples)
    horizon = steps if steps is not None else 2 * A.shape[0] ** 2
    rng = np.random.default_rng(conf.seed)

    def in_cone(y):
        return bool(np.all(approx_equal(mat_vec(A, y), lam * y, eps)))

    for _ in range(conf.samples):
        x = _sample(rng, X)
        if not _in_box(X, x, eps) or in_cone(x):
            continue
        y = x
        for t in range(1, horizon + 1):
            y = mat_vec(A, y)
            if y.max() == 0 or in_cone(y / y.max()):
                return x, t
            y = y / y.max()
    return None
