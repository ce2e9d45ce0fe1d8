"""
Residuated solution theory of one-sided max-times systems A ⊗ x = b.

γ*(A, b) is the greatest x with A ⊗ x <= b; a zero column gives +inf.
M_j(A, b) are the rows made tight by column j at γ*_j. The system is
solvable iff the M_j cover supp(b), and every solution is described by a
minimal covering: coordinates in the covering sit at γ*, the rest below it.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from .config import get_settings
from .exceptions import CoveringLimitExceeded, DimensionMismatch, PreconditionViolated, Unsolvable
from .tropical_core import (
    all_close,
    approx_equal,
    approx_le,
    as_matrix,
    as_vector,
    mat_vec,
    mat_vec_extended,
    support,
)

logger = logging.getLogger(__name__)

Covering = FrozenSet[int]


def _system(A, b) -> Tuple[np.ndarray, np.ndarray]:
    A = as_matrix(A)
    b = as_vector(b)
    if A.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"Matrix has {A.shape[0]} rows, right-hand side has length {b.shape[0]}")
    return A, b


def _union(sets: Iterable[FrozenSet[int]]) -> FrozenSet[int]:
    out = set()
    for s in sets:
        out |= s
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class SystemAnalysis:
    gamma_star: np.ndarray
    m_sets: Tuple[FrozenSet[int], ...]
    solvable: bool
    unique: bool
    support_b: FrozenSet[int]

    def covered_by(self, columns: Iterable[int]) -> bool:
        return _union(self.m_sets[j] for j in columns) == self.support_b

    def removable_columns(self) -> Tuple[int, ...]:
        """Columns i whose M_i is not needed: the other M_j still cover supp(b)."""
        n = len(self.m_sets)
        return tuple(i for i in range(n) if self.covered_by(j for j in range(n) if j != i))


def gamma_star(A, b) -> np.ndarray:
    """γ*_j = min over rows with a_ij > 0 of b_i / a_ij, +inf for a zero column."""
    A, b = _system(A, b)
    m, n = A.shape
    if m == 0:
        return np.full(n, math.inf)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratios = np.where(A > 0, b[:, None] / A, math.inf)
    return ratios.min(axis=0)


def m_sets(A, b, eps: Optional[float] = None) -> Tuple[FrozenSet[int], ...]:
    """M_j(A, b) = {i : a_ij·γ*_j ≈ b_i ≠ 0}, empty when γ*_j is infinite."""
    A, b = _system(A, b)
    gamma = gamma_star(A, b)
    result = []
    for j in range(A.shape[1]):
        if math.isinf(gamma[j]):
            result.append(frozenset())
            continue
        tight = (b > 0) & (A[:, j] > 0) & approx_equal(A[:, j] * gamma[j], b, eps)
        result.append(frozenset(int(i) for i in np.flatnonzero(tight)))
    return tuple(result)


def analyze(A, b, eps: Optional[float] = None) -> SystemAnalysis:
    """
    Solvability and uniqueness of A ⊗ x = b.

    Solvable iff the M_j cover supp(b); unique iff solvable and no column i
    with γ*_i ≠ 0 can be dropped from that covering.
    """
    A, b = _system(A, b)
    gamma = gamma_star(A, b)
    sets = m_sets(A, b, eps)
    supp = support(b)
    n = A.shape[1]

    solvable = _union(sets) == supp
    unique = solvable
    if solvable:
        for i in range(n):
            if gamma[i] == 0:
                continue
            if _union(sets[j] for j in range(n) if j != i) == supp:
                unique = False
                break

    logger.debug(f"System {A.shape[0]}x{n}: solvable={solvable}, unique={unique}")
    return SystemAnalysis(gamma, sets, solvable, unique, supp)


@dataclass(frozen=True, eq=False)
class SolutionDescription:
    """
    S(A, b) as the union over minimal coverings N' of the boxes
    {x_j = γ*_j for j in N', x_j <= γ*_j otherwise}.
    """
    gamma_star: np.ndarray
    minimal_coverings: Tuple[Covering, ...]
    support_b: FrozenSet[int]
    m_sets: Tuple[FrozenSet[int], ...] = field(repr=False, default=())

    def constraints(self, covering: Covering) -> Dict[str, Dict[int, float]]:
        n = self.gamma_star.shape[0]
        return {
            'fixed': {j: float(self.gamma_star[j]) for j in sorted(covering)},
            'bounded': {j: float(self.gamma_star[j]) for j in range(n) if j not in covering},
        }

    def contains(self, x, eps: Optional[float] = None) -> bool:
        """x solves the system iff x <= γ* and its tight coordinates cover supp(b)."""
        x = as_vector(x)
        if x.shape != self.gamma_star.shape:
            raise DimensionMismatch(f"Candidate of length {x.shape[0]} for {self.gamma_star.shape[0]} unknowns")
        if not np.all(approx_le(x, self.gamma_star, eps)):
            return False
        tight = [j for j in range(x.shape[0])
                 if not math.isinf(self.gamma_star[j]) and approx_equal(x[j], self.gamma_star[j], eps)]
        return _union(self.m_sets[j] for j in tight) == self.support_b


def minimal_coverings(sets: Sequence[FrozenSet[int]], target: FrozenSet[int],
                      limit: Optional[int] = None) -> Tuple[Covering, ...]:
    """
    All inclusion-minimal index sets whose sets cover ``target``.

    Depth-first, branching on the smallest uncovered element; a branch is
    cut as soon as one of its chosen indices becomes redundant.

    Raises:
        CoveringLimitExceeded
    """
    cap = get_settings().max_coverings if limit is None else limit
    if not target:
        return (frozenset(),)

    candidates = sorted(
        (j for j, s in enumerate(sets) if s & target),
        key=lambda j: (-len(sets[j] & target), j),
    )
    found = set()

    def redundant(chosen: List[int]) -> bool:
        for j in chosen:
            others = _union(sets[k] for k in chosen if k != j) & target
            if (sets[j] & target) <= others:
                return True
        return False

    stack = [(tuple(), frozenset())]
    while stack:
        chosen, covered = stack.pop()
        uncovered = target - covered
        if not uncovered:
            found.add(frozenset(chosen))
            if len(found) > cap:
                raise CoveringLimitExceeded(f"More than {cap} minimal coverings")
            continue
        element = min(uncovered)
        for j in reversed(candidates):
            if j in chosen or element not in sets[j]:
                continue
            extended = chosen + (j,)
            if redundant(list(extended)):
                continue
            stack.append((extended, covered | (sets[j] & target)))

    return tuple(sorted(found, key=lambda c: (len(c), sorted(c))))


def solution_description(A, b, eps: Optional[float] = None,
                         max_coverings: Optional[int] = None) -> SolutionDescription:
    """
    Raises:
        Unsolvable
        CoveringLimitExceeded
    """
    analysis = analyze(A, b, eps)
    if not analysis.solvable:
        raise Unsolvable("A ⊗ x = b has no solution: the M_j do not cover supp(b)")
    coverings = minimal_coverings(analysis.m_sets, analysis.support_b, max_coverings)
    logger.info(f"Found {len(coverings)} minimal covering(s)")
    return SolutionDescription(analysis.gamma_star, coverings, analysis.support_b, analysis.m_sets)


def in_simple_image(A, b, eps: Optional[float] = None) -> bool:
    """b is in the simple image of A: A ⊗ x = b has exactly one solution."""
    analysis = analyze(A, b, eps)
    return analysis.solvable and analysis.unique


def column_deleted(A, i: int) -> np.ndarray:
    """A^{(i)}, the matrix A without column i."""
    A = as_matrix(A)
    if not 0 <= i < A.shape[1]:
        raise PreconditionViolated(f"Column index {i} out of range for {A.shape[1]} column(s)")
    return np.delete(A, i, axis=1)


def projection(A, b) -> np.ndarray:
    """P_A(b) = A ⊗ γ*(A, b), the greatest element of span(A) below b."""
    A, b = _system(A, b)
    return mat_vec_extended(A, gamma_star(A, b))


def in_span(A, b, eps: Optional[float] = None) -> bool:
    return all_close(projection(A, b), b, eps)


def construct_solution(A, b, covering: Iterable[int], values: Optional[Dict[int, float]] = None,
                       eps: Optional[float] = None) -> np.ndarray:
    """
    A solution with x_j = γ*_j on ``covering`` and prescribed values elsewhere.

    Unlisted coordinates outside the covering are 0. Prescribed values must
    not exceed γ*_j.

    Raises:
        PreconditionViolated: covering does not cover supp(b) or a value exceeds γ*_j
    """
    analysis = analyze(A, b, eps)
    covering = frozenset(covering)
    if not analysis.covered_by(covering):
        raise PreconditionViolated("The given columns do not cover supp(b)")

    values = values or {}
    x = np.zeros(analysis.gamma_star.shape[0])
    for j in range(x.shape[0]):
        if j in covering:
            if math.isinf(analysis.gamma_star[j]):
                raise PreconditionViolated(f"Column {j} is zero and cannot be part of a covering")
            x[j] = analysis.gamma_star[j]
        elif j in values:
            if not approx_le(values[j], analysis.gamma_star[j], eps):
                raise PreconditionViolated(f"x_{j} = {values[j]:g} exceeds γ*_{j}")
            x[j] = values[j]
    return x


def residual_ok(A, x, b, eps: Optional[float] = None) -> bool:
    """Direct check A ⊗ x ≈ b."""
    return all_close(mat_vec(as_matrix(A), as_vector(x)), as_vector(b), eps)
