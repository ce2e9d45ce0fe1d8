"""
Max cones spanned by finitely many columns: projectors, alternating
projection onto intersections, and box-meets-cone tests.

For a cone W = span(G) and y, P_W(y) = G ⊗ γ*(G, y) is the greatest point
of W below y. A box with closed finite upper ends meets W iff P_W(x̄) lies
in the box.
"""
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from .box import Box
from .config import get_settings
from .exceptions import DimensionMismatch, IterationLimit, PreconditionViolated, SurrogateUnstable, UpperOpenUnsupported
from .one_sided import projection
from .tropical_core import all_close, approx_equal, as_matrix, as_vector
from .verdict import INCONCLUSIVE, NO, YES, Verdict

logger = logging.getLogger(__name__)

RELAXATION_STEPS = (1e-2, 1e-4, 1e-6, 1e-8)
SURROGATE_ESCALATIONS = 3


@dataclass(frozen=True, eq=False)
class ConeSpan:
    """span(G): all max-combinations of the columns of ``generators``."""
    generators: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'generators', as_matrix(self.generators))

    @property
    def dimension(self) -> int:
        return int(self.generators.shape[0])

    def project(self, y) -> np.ndarray:
        return project(self, y)

    def contains(self, y, eps: Optional[float] = None) -> bool:
        return in_cone(self, y, eps)


def project(C: ConeSpan, y) -> np.ndarray:
    """P_C(y); idempotent, homogeneous and isotone."""
    y = as_vector(y)
    if y.shape[0] != C.dimension:
        raise DimensionMismatch(f"Vector of length {y.shape[0]} for a cone in dimension {C.dimension}")
    return projection(C.generators, y)


def in_cone(C: ConeSpan, y, eps: Optional[float] = None) -> bool:
    return all_close(project(C, y), as_vector(y), eps)


@dataclass(frozen=True, eq=False)
class IntersectionResult:
    point: np.ndarray
    cycles: int
    converged: bool
    is_zero: bool
    is_positive: bool


def project_intersection(cones: Sequence[ConeSpan], y, eps: Optional[float] = None,
                         max_cycles: Optional[int] = None,
                         zero_floor: Optional[float] = None) -> IntersectionResult:
    """
    Greatest point below y in the intersection of ``cones``, by cyclic projection.

    Iterates are non-increasing. Entries that fall below ``zero_floor``
    times max(y) are set to zero so vanishing coordinates terminate.

    Raises:
        PreconditionViolated: no cones
        IterationLimit
    """
    if not cones:
        raise PreconditionViolated("project_intersection needs at least one cone")
    conf = get_settings()
    tol = conf.projection_eps if eps is None else eps
    limit = conf.projection_max_cycles if max_cycles is None else max_cycles
    floor = conf.projection_zero_floor if zero_floor is None else zero_floor

    z = as_vector(y).copy()
    cutoff = floor * (float(z.max()) if z.size else 0.0)
    for cycle in range(1, limit + 1):
        previous = z
        for cone in cones:
            z = project(cone, z)
            z[z < cutoff] = 0.0
        if np.all(approx_equal(z, previous, tol)):
            logger.debug(f"Alternating projections settled after {cycle} cycle(s)")
            return IntersectionResult(z, cycle, True, not np.any(z > 0), bool(np.all(z > 0)))

    logger.warning(f"Alternating projections did not settle within {limit} cycles")
    raise IterationLimit(f"No convergence within {limit} projection cycles")


def surrogate_upper(generators: np.ndarray, X: Box, scale: float = 1.0) -> np.ndarray:
    """x̄ with +inf replaced by U = max(1, finite data)·(spread of G)·factor·scale."""
    upper = np.array(X.upper, dtype=float)
    infinite = np.isinf(upper)
    if not np.any(infinite):
        return upper

    finite = np.concatenate([X.lower, upper[~infinite]])
    positive = generators[generators > 0]
    spread = float(positive.max() / positive.min()) if positive.size else 1.0
    base = max(1.0, float(finite.max()) if finite.size else 1.0)
    upper[infinite] = base * spread * get_settings().surrogate_factor * scale
    return upper


def _meets(C: ConeSpan, X: Box, upper: np.ndarray, eps: Optional[float]) -> Tuple[bool, np.ndarray]:
    z = project(C, upper)
    return X.contains(z, eps), z


def _scales_into(X: Box, v: np.ndarray) -> List[float]:
    """Candidate α with α·v in X: both ends and the middle of the admissible range."""
    positive = v > 0
    if not np.any(positive) or np.any(~positive & ((X.lower > 0) | X.lower_open)):
        return []
    low = float(np.max(X.lower[positive] / v[positive]))
    high = float(np.min(X.upper[positive] / v[positive]))
    if low > high:
        return []
    if math.isinf(high):
        return [low, 2 * low if low > 0 else 1.0]
    return [low, (low + high) / 2, high]


def cone_points_in_box(C: ConeSpan, X: Box, seed: Optional[int] = None, samples: Optional[int] = None,
                       eps: Optional[float] = None) -> Iterator[np.ndarray]:
    """
    Points of C inside X from a seeded search: projections of sampled box
    points, then random max-combinations of the generators rescaled into X.
    """
    conf = get_settings()
    rng = np.random.default_rng(conf.seed if seed is None else seed)
    count = conf.oracle_samples if samples is None else samples

    for y in X.sample(count, rng):
        z = project(C, y)
        if np.any(z > 0) and X.contains(z, eps):
            yield z

    G = C.generators
    k = G.shape[1]
    for _ in range(count):
        coeffs = np.exp(rng.uniform(-4, 4, k)) * (rng.random(k) < 0.75)
        v = (G * coeffs[None, :]).max(axis=1)
        for alpha in _scales_into(X, v):
            if X.contains(alpha * v, eps):
                yield alpha * v


def sample_cone_in_box(C: ConeSpan, X: Box, seed: Optional[int] = None, samples: Optional[int] = None,
                       eps: Optional[float] = None) -> Optional[np.ndarray]:
    return next(cone_points_in_box(C, X, seed, samples, eps), None)


def box_meets_cone(C: ConeSpan, X: Box, eps: Optional[float] = None) -> Verdict:
    """
    Whether C meets X, for X with every finite upper end closed.

    Unbounded coordinates use a surrogate upper value; the decision must
    agree for U and 10·U.

    Raises:
        UpperOpenUnsupported
        SurrogateUnstable
    """
    if X.n != C.dimension:
        raise DimensionMismatch(f"Box of dimension {X.n} for a cone in dimension {C.dimension}")
    if not X.is_upper_closed:
        raise UpperOpenUnsupported(f"Box {X} has an open finite upper end")

    if X.is_bounded:
        meets, z = _meets(C, X, np.array(X.upper), eps)
        verdict = Verdict(YES if meets else NO, witness=z if meets else None)
        return verdict.add('projection-in-box', meets, projection=z)

    scale = 1.0
    for attempt in range(SURROGATE_ESCALATIONS + 1):
        meets, z = _meets(C, X, surrogate_upper(C.generators, X, scale), eps)
        meets_larger, _ = _meets(C, X, surrogate_upper(C.generators, X, 10 * scale), eps)
        if meets == meets_larger:
            verdict = Verdict(YES if meets else NO, witness=z if meets else None)
            return verdict.add('projection-in-box', meets, projection=z, surrogate_scale=scale)
        logger.warning(f"Surrogate decision changed between U and 10U (attempt {attempt + 1})")
        scale *= 10
    raise SurrogateUnstable(f"Decision for {X} depends on the surrogate upper value")


def box_meets_cone_relaxed(C: ConeSpan, X: Box, eps: Optional[float] = None,
                           seed: Optional[int] = None, samples: Optional[int] = None) -> Verdict:
    """
    box_meets_cone for boxes with open finite upper ends.

    If the box with those ends closed misses C, so does X. Otherwise the
    open ends are pulled inwards by shrinking fractions; a hit inside X
    decides "yes". Seeded sampling is the last resort, after which the
    answer is "inconclusive".
    """
    if X.is_upper_closed:
        return box_meets_cone(C, X, eps)

    hull = box_meets_cone(C, X.with_closed_uppers(), eps)
    if hull.is_no:
        return hull.label('closed-upper-hull')

    open_finite = np.array(X.upper_open) & np.isfinite(X.upper)
    for fraction in RELAXATION_STEPS:
        upper = np.array(X.upper)
        upper[open_finite] -= fraction * (upper[open_finite] - X.lower[open_finite])
        shrunk = Box(X.lower, upper, X.lower_open, np.isinf(upper))
        attempt = box_meets_cone(C, shrunk, eps)
        if attempt.is_yes and X.contains(attempt.witness, eps):
            verdict = Verdict(YES, witness=attempt.witness)
            return verdict.add('shrunk-upper', True, fraction=fraction, projection=attempt.witness)

    point = sample_cone_in_box(C, X, seed=seed, samples=samples, eps=eps)
    if point is not None:
        verdict = Verdict(YES, witness=point).label('sampled')
        return verdict.add('sampled-point', True, point=point)

    logger.info(f"Could not decide whether {X} meets the cone")
    verdict = Verdict(INCONCLUSIVE).label('sampled')
    return verdict.add('sampled-point', None, samples=samples or get_settings().oracle_samples)
