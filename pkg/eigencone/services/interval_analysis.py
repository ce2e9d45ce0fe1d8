"""
Interval versions of the one-sided and eigencone questions.

Given a box X, the deciders answer whether A ⊗ x = b has a (unique)
solution inside X, whether every eigenvector in X is the only solution in X
of A ⊗ y = λx (X-simple eigencone), whether X is invariant under A, and
whether X is weakly robust: every x ∈ X whose orbit reaches V(A, λ) already
lies in V(A, λ).

Every "no" from a simplicity decider carries an eigenvector witness and a
second solution inside X that was checked by direct evaluation. When no such
pair can be produced the answer is "inconclusive".
"""
from dataclasses import dataclass
from itertools import chain, islice
from typing import FrozenSet, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from .box import Box
from .cone_geometry import (
    ConeSpan,
    box_meets_cone,
    box_meets_cone_relaxed,
    cone_points_in_box,
    project,
    project_intersection,
    surrogate_upper,
)
from .config import get_settings
from .exceptions import (
    DimensionMismatch,
    EmptyEigenconeInBox,
    IterationLimit,
    NotAnEigenvectorInBox,
    NotLowerOpen,
    NotSolvableInBox,
    PreconditionViolated,
)
from .one_sided import SystemAnalysis, analyze, column_deleted, gamma_star, residual_ok
from .spectral import EigenStructure, eigen_structure, in_eigencone, is_eigenvector
from .tropical_core import all_close, approx_equal, approx_le, approx_lt, as_matrix, as_vector, mat_vec, mat_vec_extended
from .verdict import INCONCLUSIVE, NO, YES, Verdict

logger = logging.getLogger(__name__)


# --- box basics ------------------------------------------------------------------

def contains(X: Box, x, eps: Optional[float] = None) -> bool:
    return X.contains(x, eps)


def up_closure(X: Box) -> Box:
    return X.up_closure()


def lower_closed_set(X: Box) -> FrozenSet[int]:
    return X.lower_closed_set()


def _check_box(X: Box, n: int):
    if X.n != n:
        raise DimensionMismatch(f"Box of dimension {X.n} for {n} unknown(s)")


def _box_columns(analysis: SystemAnalysis, X: Box, eps: Optional[float]) -> List[int]:
    """Columns whose γ*_j lies in X_j: the only ones that can be tight inside X."""
    gamma = analysis.gamma_star
    return [j for j in range(gamma.shape[0])
            if not math.isinf(gamma[j]) and X.contains_coordinate(j, gamma[j], eps)]


def _point_below(X: Box, j: int, cap: float, eps: Optional[float]) -> Optional[float]:
    """Some point of X_j ∩ [0, cap], preferring the lower end."""
    lower, upper = float(X.lower[j]), float(X.upper[j])
    top = min(upper, cap)
    candidates = []
    if not X.lower_open[j]:
        candidates.append(lower)
    if math.isfinite(top):
        candidates.extend([top, (lower + top) / 2])
    else:
        candidates.append(lower + 1.0)
    for value in candidates:
        if approx_le(value, cap, eps) and X.contains_coordinate(j, value, eps):
            return value
    return None


# --- one-sided systems in a box ----------------------------------------------------

def solvable_in_box(A, b, X: Box, eps: Optional[float] = None) -> Verdict:
    """
    A ⊗ x = b has a solution in X iff γ* ∈ X↑ and the M_j with γ*_j ∈ X_j
    cover supp(b).

    The witness takes γ*_j on those columns and a point of X_j below γ*_j
    elsewhere.
    """
    A = as_matrix(A)
    b = as_vector(b)
    _check_box(X, A.shape[1])
    analysis = analyze(A, b, eps)
    gamma = analysis.gamma_star

    in_up = X.up_closure().contains(gamma, eps)
    columns = _box_columns(analysis, X, eps)
    covered = analysis.covered_by(columns)

    verdict = Verdict(YES if in_up and covered else NO)
    verdict.add('gamma-in-up-closure', in_up, gamma_star=gamma)
    verdict.add('covering-in-box', covered, columns=columns, m_sets=analysis.m_sets)
    if not verdict.is_yes:
        return verdict

    witness = np.zeros(A.shape[1])
    for j in range(A.shape[1]):
        if j in columns:
            witness[j] = gamma[j]
            continue
        value = _point_below(X, j, gamma[j], eps)
        witness[j] = X.lower[j] if value is None else value
    verdict.witness = witness
    if not (X.contains(witness, eps) and residual_ok(A, witness, b, eps)):
        logger.warning("Solution witness in box failed direct evaluation")
        verdict.label('witness-unverified')
    return verdict


def find_second_solution(A, b, X: Box, x, i: int, eps: Optional[float] = None) -> Optional[np.ndarray]:
    """
    A solution y ≠ x of A ⊗ y = b inside X, moving coordinate i.

    The columns in X other than i are put at γ*; y_i tries the closed lower
    end, then γ*_i, then the middle of X_i ∩ [0, γ*_i]. Each candidate is
    checked by direct evaluation.
    """
    A = as_matrix(A)
    b = as_vector(b)
    x = as_vector(x)
    analysis = analyze(A, b, eps)
    gamma = analysis.gamma_star
    columns = _box_columns(analysis, X, eps)

    y = x.copy()
    for j in columns:
        if j != i:
            y[j] = gamma[j]

    lower, upper = float(X.lower[i]), float(X.upper[i])
    top = min(upper, float(gamma[i]))
    candidates = []
    if not X.lower_open[i]:
        candidates.append(lower)
    if math.isfinite(gamma[i]) and X.contains_coordinate(i, gamma[i], eps):
        candidates.append(float(gamma[i]))
    if math.isfinite(top):
        candidates.append((lower + top) / 2)

    for value in candidates:
        y[i] = value
        if X.contains(y, eps) and residual_ok(A, y, b, eps) and not all_close(y, x, eps):
            return y.copy()
    return None


def unique_in_box(A, b, X: Box, eps: Optional[float] = None) -> Verdict:
    """
    The solution of A ⊗ x = b in X is unique iff every column i that the
    other in-box columns can do without is pinned: x̲_i ∈ X_i and
    x̲_i = min(x̄_i, γ*_i).

    Raises:
        NotSolvableInBox
    """
    A = as_matrix(A)
    b = as_vector(b)
    solvable = solvable_in_box(A, b, X, eps)
    if not solvable.is_yes:
        raise NotSolvableInBox("A ⊗ x = b has no solution in the box")

    analysis = analyze(A, b, eps)
    gamma = analysis.gamma_star
    columns = _box_columns(analysis, X, eps)
    closed = X.lower_closed_set()

    verdict = Verdict(YES, witness=solvable.witness)
    loose = []
    for i in range(A.shape[1]):
        if not analysis.covered_by(j for j in columns if j != i):
            verdict.add('removable', False, column=i)
            continue
        cap = min(float(X.upper[i]), float(gamma[i]))
        pinned = i in closed and bool(approx_equal(X.lower[i], cap, eps))
        verdict.add('pinned', pinned, column=i, lower=X.lower[i], cap=cap)
        if not pinned:
            loose.append(i)

    if not loose:
        logger.debug(f"Unique solution in box {X}")
        return verdict

    for i in loose:
        second = find_second_solution(A, b, X, solvable.witness, i, eps)
        if second is not None:
            verdict.decision = NO
            verdict.counterexample = second
            return verdict.add('second-solution', True, column=i, solution=second)

    logger.warning(f"Uniqueness fails in {X} but no second solution could be verified")
    verdict.decision = INCONCLUSIVE
    return verdict.add('second-solution', False, columns=loose, solution=solvable.witness)


def is_x_simple_image_eigenvector(A, lam: float, x, X: Box, eps: Optional[float] = None) -> Verdict:
    """
    Raises:
        NotAnEigenvectorInBox
    """
    x = as_vector(x)
    if not (is_eigenvector(A, x, lam, eps) and X.contains(x, eps)):
        raise NotAnEigenvectorInBox(f"x is not an eigenvector for λ={lam:g} inside {X}")
    verdict = unique_in_box(A, lam * x, X, eps)
    verdict.witness = x
    return verdict


# --- derived boxes -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DerivedBoxes:
    """
    upper_l:       x̄ with coordinate l lowered to x̲_l
    section:       eigenvector candidates x ∈ X with x_l = x̲_l < γ*_l(A, λx), or None when empty
    strict_lower:  X with the lower end of l made open, or None when empty
    degenerate:    the section could differ from its literal form (zero lower bounds)
    """
    upper_l: np.ndarray
    section: Optional[Box]
    strict_lower: Optional[Box]
    degenerate: bool


def derived_boxes(A, lam: float, X: Box, l: int, eps: Optional[float] = None) -> DerivedBoxes:
    A = as_matrix(A, square=True)
    n = A.shape[0]
    _check_box(X, n)
    if not 0 <= l < n:
        raise PreconditionViolated(f"Index {l} out of range for dimension {n}")

    upper_l = np.array(X.upper)
    upper_l[l] = X.lower[l]
    strict_lower = X.with_lower_open(l)

    column = A[:, l]
    degenerate = bool(np.any((column == 0) & (X.lower == 0) & ~X.lower_open))
    return DerivedBoxes(upper_l, _section(A, lam, X, l, eps), strict_lower, degenerate)


def _section(A: np.ndarray, lam: float, X: Box, l: int, eps: Optional[float]) -> Optional[Box]:
    x_l = float(X.lower[l])
    if X.lower_open[l]:
        return None
    if A[l, l] > 0 and (x_l == 0 or not approx_lt(A[l, l], lam, eps)):
        return None

    lower = np.array(X.lower)
    upper = np.array(X.upper)
    lower_open = np.array(X.lower_open)
    upper_open = np.array(X.upper_open)
    for j in range(A.shape[0]):
        if j == l or A[j, l] == 0:
            continue
        bound = A[j, l] * x_l / lam
        if approx_le(lower[j], bound, eps):
            lower[j] = max(lower[j], bound)
            lower_open[j] = True
        if lower[j] > upper[j] or (lower[j] == upper[j] and (lower_open[j] or upper_open[j])):
            return None
    upper[l] = x_l
    upper_open[l] = False
    return Box(lower, upper, lower_open, upper_open)


# --- X-simple eigencones -----------------------------------------------------------

def _eigencone(A: np.ndarray, lam: float, eps: Optional[float]) -> Tuple[EigenStructure, ConeSpan]:
    structure = eigen_structure(A, lam, eps)
    return structure, ConeSpan(structure.generating)


def _search_in_box(A: np.ndarray, lam: float, V: ConeSpan, X: Box,
                   eps: Optional[float]) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Seeded search over eigenvectors in X for one without a unique in-box solution."""
    limit = get_settings().oracle_samples
    candidates = chain([project(V, surrogate_upper(V.generators, X))],
                       cone_points_in_box(V, X, samples=limit, eps=eps))
    for x in islice(candidates, limit):
        if not (np.any(x > 0) and X.contains(x, eps) and is_eigenvector(A, x, lam, eps)):
            continue
        try:
            outcome = unique_in_box(A, lam * x, X, eps)
        except NotSolvableInBox:
            continue
        if outcome.is_no:
            return x, outcome.counterexample
    return None


def _second_for_section(A: np.ndarray, lam: float, X: Box, w: np.ndarray, l: int,
                        eps: Optional[float]) -> Optional[np.ndarray]:
    b = lam * w
    y = w.copy()
    y[l] = min(float(X.upper[l]), float(gamma_star(A, b)[l]))
    if X.contains(y, eps) and residual_ok(A, y, b, eps) and not all_close(y, w, eps):
        return y
    return find_second_solution(A, b, X, w, l, eps)


def has_x_simple_eigencone(A, lam: float, X: Box, eps: Optional[float] = None) -> Verdict:
    """
    Whether every eigenvector x ∈ X is the only solution in X of A ⊗ y = λx.

    For X with closed finite upper ends the answer is "yes" iff
      (a) for every i, span(A without column i) ∩ V(A, λ) misses X with the
          lower end of i made open, and
      (b) for every l in c(x̲) off the critical nodes with x̲_l < x̄_l, the
          greatest eigenvector below x̄^⟨l⟩ is not in the section box of l.

    Open finite upper ends are decided on the box with those ends closed,
    then confirmed or refuted inside X; otherwise "inconclusive".

    Raises:
        NotAnEigenvalue
        EmptyEigenconeInBox
    """
    A = as_matrix(A, square=True)
    _check_box(X, A.shape[0])
    if not X.is_upper_closed:
        return _x_simple_upper_open(A, lam, X, eps)

    structure, V = _eigencone(A, lam, eps)
    meet = box_meets_cone(V, X, eps)
    if meet.is_no:
        raise EmptyEigenconeInBox(f"V(A, {lam:g}) does not meet {X}")

    verdict = Verdict(YES, witness=meet.witness)
    verdict.add('eigencone-meets-box', True, point=meet.witness)
    upper = surrogate_upper(structure.generating, X)
    n = A.shape[0]
    unverified = False

    for i in range(n):
        strict = X.with_lower_open(i)
        if strict is None:
            verdict.add('column-deleted', True, column=i, reason='point interval')
            continue
        try:
            result = project_intersection([ConeSpan(column_deleted(A, i)), V], upper)
        except IterationLimit:
            verdict.add('column-deleted', None, column=i, reason='iteration limit')
            unverified = True
            continue

        z = result.point
        hit = strict.contains(z, eps)
        verdict.add('column-deleted', not hit, column=i, projection=z, cycles=result.cycles)
        if not hit:
            continue

        w = project(V, z)
        second = None
        if is_eigenvector(A, w, lam, eps) and X.contains(w, eps):
            second = find_second_solution(A, lam * w, X, w, i, eps)
        if second is not None:
            return _refuted(verdict, w, second, 'column-deleted', i)
        unverified = True

    outside = sorted(X.lower_closed_set() - structure.critical_nodes)
    for l in outside:
        if not X.lower[l] < X.upper[l]:
            continue
        boxes = derived_boxes(A, lam, X, l, eps)
        if boxes.degenerate:
            verdict.add('degenerate-lower-bound', None, node=l)
        if boxes.section is None:
            verdict.add('lowered-upper', True, node=l, reason='empty section')
            continue

        top = np.array(boxes.upper_l)
        top[np.isinf(top)] = upper[np.isinf(top)]
        p = project(V, top)
        hit = boxes.section.contains(p, eps)
        verdict.add('lowered-upper', not hit, node=l, projection=p)
        if not hit:
            continue

        second = None
        if is_eigenvector(A, p, lam, eps):
            second = _second_for_section(A, lam, X, p, l, eps)
        if second is not None:
            return _refuted(verdict, p, second, 'lowered-upper', l)
        unverified = True

    if unverified:
        logger.warning(f"X-simplicity in {X}: a condition failed without a verified witness")
        verdict.decision = INCONCLUSIVE
        verdict.witness = None
        return verdict

    logger.info(f"V(A, {lam:g}) is X-simple for X = {X}")
    return verdict


def _refuted(verdict: Verdict, witness: np.ndarray, second: np.ndarray, condition: str, index: int) -> Verdict:
    verdict.decision = NO
    verdict.witness = witness
    verdict.counterexample = second
    logger.info(f"X-simplicity refuted by {condition} at index {index}")
    return verdict.add('second-solution', True, refuted_by=condition, index=index, solution=second)


def _x_simple_upper_open(A: np.ndarray, lam: float, X: Box, eps: Optional[float]) -> Verdict:
    _, V = _eigencone(A, lam, eps)
    meet = box_meets_cone_relaxed(V, X, eps)
    if meet.is_no:
        raise EmptyEigenconeInBox(f"V(A, {lam:g}) does not meet {X}")

    hull = has_x_simple_eigencone(A, lam, X.with_closed_uppers(), eps)
    verdict = Verdict(hull.decision, witness=hull.witness, counterexample=hull.counterexample,
                      certificate=list(hull.certificate))
    verdict.label('closed-upper-hull')

    if hull.is_yes:
        verdict.witness = meet.witness
        if meet.is_inconclusive:
            verdict.decision = INCONCLUSIVE
        return verdict
    if hull.is_no and X.contains(hull.witness, eps) and X.contains(hull.counterexample, eps):
        return verdict

    found = _search_in_box(A, lam, V, X, eps)
    verdict.label('sampled')
    if found is not None:
        x, second = found
        return _refuted(verdict, x, second, 'sampled', -1)

    verdict.decision = INCONCLUSIVE
    verdict.witness = None
    verdict.counterexample = None
    return verdict.add('sampled', None, reason='no refuting eigenvector found in the box')


def has_x_simple_eigencone_open(A, lam: float, X: Box, eps: Optional[float] = None) -> Verdict:
    """
    X-simplicity for boxes whose lower ends are all open.

    Requires every node critical with every critical component a cycle;
    then "yes" iff for every generator s the greatest point below x̄ in the
    span of the other generators is not strictly above x̲.

    Raises:
        NotLowerOpen
        EmptyEigenconeInBox
    """
    A = as_matrix(A, square=True)
    _check_box(X, A.shape[0])
    if not X.is_lower_open:
        raise NotLowerOpen(f"Box {X} has a closed lower end")

    structure, V = _eigencone(A, lam, eps)
    meet = box_meets_cone_relaxed(V, X, eps)
    if meet.is_no:
        raise EmptyEigenconeInBox(f"V(A, {lam:g}) does not meet {X}")
    if meet.is_inconclusive:
        return Verdict(INCONCLUSIVE).add('eigencone-meets-box', None)

    verdict = Verdict(YES, witness=meet.witness)
    verdict.add('eigencone-meets-box', True, point=meet.witness)

    full = structure.critical_nodes == frozenset(range(A.shape[0]))
    cycles = structure.components_are_cycles()
    verdict.add('critical-cycles', full and cycles, all_critical=full, components_cycles=cycles)
    if not (full and cycles):
        return _refute_open(A, lam, V, X, meet.witness, verdict, eps)

    upper = surrogate_upper(structure.generating, X)
    undecided = False
    for s in range(structure.generating.shape[1]):
        others = ConeSpan(structure.without_generator(s))
        if X.is_upper_closed:
            p = project(others, upper)
            above = bool(np.all(approx_lt(X.lower, p, eps)))
            verdict.add('generator-deleted', not above, generator=s, projection=p)
        else:
            relaxed = box_meets_cone_relaxed(others, X, eps)
            if relaxed.is_inconclusive:
                verdict.add('generator-deleted', None, generator=s)
                undecided = True
                continue
            above = relaxed.is_yes
            p = relaxed.witness
            verdict.add('generator-deleted', not above, generator=s, projection=p)
        if above:
            return _refute_open(A, lam, V, X, p, verdict, eps)

    if undecided:
        verdict.decision = INCONCLUSIVE
        verdict.witness = None
    return verdict


def _refute_open(A: np.ndarray, lam: float, V: ConeSpan, X: Box, w: np.ndarray, verdict: Verdict,
                 eps: Optional[float]) -> Verdict:
    if w is not None and is_eigenvector(A, w, lam, eps) and X.contains(w, eps):
        outcome = unique_in_box(A, lam * w, X, eps)
        if outcome.is_no:
            return _refuted(verdict, w, outcome.counterexample, 'unique-in-box', -1)

    found = _search_in_box(A, lam, V, X, eps)
    verdict.label('sampled')
    if found is not None:
        return _refuted(verdict, found[0], found[1], 'sampled', -1)

    logger.warning(f"X-simplicity in {X} fails but no second solution was found")
    verdict.decision = INCONCLUSIVE
    verdict.witness = None
    return verdict


# --- invariance and robustness --------------------------------------------------------

def is_invariant(A, X: Box, eps: Optional[float] = None) -> Verdict:
    """
    A ⊗ X ⊆ X, tested as x̲ <= A ⊗ x̲ and A ⊗ x̄ <= x̄.

    Open ends require the matching inequality to be strict; such verdicts
    are labelled "by-extension".
    """
    A = as_matrix(A, square=True)
    _check_box(X, A.shape[0])
    low_image = mat_vec(A, X.lower)
    high_image = mat_vec_extended(A, X.upper)

    low_ok = []
    high_ok = []
    for i in range(X.n):
        if X.lower_open[i]:
            low_ok.append(bool(approx_lt(X.lower[i], low_image[i], eps)))
        else:
            low_ok.append(bool(approx_le(X.lower[i], low_image[i], eps)))
        if math.isinf(X.upper[i]):
            high_ok.append(True)
        elif math.isinf(high_image[i]):
            high_ok.append(False)
        elif X.upper_open[i]:
            high_ok.append(bool(approx_lt(high_image[i], X.upper[i], eps)))
        else:
            high_ok.append(bool(approx_le(high_image[i], X.upper[i], eps)))

    verdict = Verdict(YES if all(low_ok) and all(high_ok) else NO)
    verdict.add('lower-image', all(low_ok), image=low_image)
    verdict.add('upper-image', all(high_ok), image=high_image)
    if not X.is_closed:
        verdict.label('by-extension')
    return verdict


def attraction_test(A, lam: float, x, steps: Optional[int] = None, eps: Optional[float] = None) -> Optional[int]:
    """
    Smallest t <= steps with A^t ⊗ x ∈ V(A, λ), 0 when x already is, None
    when the orbit does not arrive within the horizon.
    """
    A = as_matrix(A, square=True)
    x = as_vector(x)
    horizon = get_settings().orbit_steps if steps is None else steps
    if horizon < 1:
        raise PreconditionViolated(f"Orbit horizon must be at least 1, got {horizon}")
    if in_eigencone(A, x, lam, eps):
        return 0

    y = x
    for t in range(1, horizon + 1):
        y = mat_vec(A, y)
        top = y.max() if y.size else 0.0
        if top == 0:
            return t
        y = y / top
        if in_eigencone(A, y, lam, eps):
            return t
    return None


def sample_box(X: Box, count: int, seed: Optional[int] = None, cap: Optional[float] = None) -> np.ndarray:
    """
    Seeded uniform points of X (rows), with x̲ and x̄ first when they belong to X.

    Unbounded coordinates are sampled up to ``cap``, by default ten times the
    largest finite bound.
    """
    rng = np.random.default_rng(get_settings().seed if seed is None else seed)
    return X.sample(count, rng, cap)


def _orbit_counterexample(A: np.ndarray, lam: float, X: Box, samples: Sequence[np.ndarray],
                          steps: int, eps: Optional[float]) -> Optional[Tuple[np.ndarray, int]]:
    for x in samples:
        t = attraction_test(A, lam, x, steps, eps)
        if t:
            return x, t
    return None


def weak_x_robustness(A, lam: float, X: Box, eps: Optional[float] = None,
                      seed: Optional[int] = None, steps: Optional[int] = None,
                      samples: Optional[int] = None) -> Verdict:
    """
    Weak (X, λ)-robustness: every x ∈ X attracted to V(A, λ) lies in V(A, λ).

    A non-simple eigencone in X refutes it; a simple eigencone in an
    invariant X proves it. Otherwise seeded orbit sampling can only refute.
    """
    A = as_matrix(A, square=True)
    _check_box(X, A.shape[0])
    conf = get_settings()
    horizon = conf.orbit_steps if steps is None else steps
    count = conf.oracle_samples if samples is None else samples

    if X.is_point and in_eigencone(A, X.lower, lam, eps):
        verdict = Verdict(YES, witness=np.array(X.lower))
        return verdict.add('point-eigenvector', True, point=X.lower)

    try:
        simple = has_x_simple_eigencone(A, lam, X, eps)
    except EmptyEigenconeInBox:
        simple = Verdict(INCONCLUSIVE).label('eigencone-misses-box')

    verdict = Verdict(INCONCLUSIVE, certificate=list(simple.certificate), labels=list(simple.labels))
    verdict.add('x-simple', None if simple.is_inconclusive else simple.is_yes)

    if simple.is_no:
        y = simple.counterexample
        image = mat_vec(A, y)
        confirmed = in_eigencone(A, image, lam, eps) and not in_eigencone(A, y, lam, eps)
        verdict.add('attracted-outside-eigencone', confirmed, point=y, image=image, steps=1)
        if confirmed:
            verdict.decision = NO
            verdict.witness = y
            return verdict

    if simple.is_yes:
        invariant = is_invariant(A, X, eps)
        verdict.add('invariant', invariant.is_yes)
        if invariant.is_yes:
            verdict.decision = YES
            for name in invariant.labels:
                verdict.label(name)
            logger.info(f"Weakly ({X}, {lam:g})-robust")
            return verdict

    points = sample_box(X, count, seed=seed)
    found = _orbit_counterexample(A, lam, X, points, horizon, eps)
    verdict.label('orbit-sampled')
    if found is not None:
        x, t = found
        verdict.decision = NO
        verdict.witness = x
        return verdict.add('attracted-outside-eigencone', True, point=x, steps=t)

    verdict.add('attracted-outside-eigencone', None, samples=len(points), steps=horizon)
    return verdict
