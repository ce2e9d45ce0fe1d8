"""
Interval boxes X = X_1 × ... × X_n with per-endpoint open/closed flags.
"""
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Optional
import math

import numpy as np

from .exceptions import DimensionMismatch, InvalidBox
from .tropical_core import approx_le, approx_lt
from .verdict import to_jsonable, vector_from_jsonable


@dataclass(frozen=True, eq=False)
class Box:
    """
    Per coordinate i: lower x̲_i <= upper x̄_i (x̄_i may be +inf).

    A point interval must be closed at both ends. An infinite upper end
    is always reported as open.
    """
    lower: np.ndarray
    upper: np.ndarray
    lower_open: np.ndarray
    upper_open: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float)
        upper = np.array(self.upper, dtype=float)
        lower_open = np.array(self.lower_open, dtype=bool)
        upper_open = np.array(self.upper_open, dtype=bool)

        if lower.ndim != 1 or not (lower.shape == upper.shape == lower_open.shape == upper_open.shape):
            raise DimensionMismatch("Box bounds and flags must be vectors of the same length")
        if np.any(np.isnan(lower)) or np.any(np.isnan(upper)):
            raise InvalidBox("Box bounds must be numbers")
        if np.any(~np.isfinite(lower)) or np.any(lower < 0):
            raise InvalidBox("Lower bounds must be finite and nonnegative")
        if np.any(upper < lower):
            bad = int(np.flatnonzero(upper < lower)[0])
            raise InvalidBox(f"Coordinate {bad}: upper bound {upper[bad]:g} is below lower bound {lower[bad]:g}")

        degenerate = (lower == upper) & (lower_open | upper_open)
        if np.any(degenerate):
            bad = int(np.flatnonzero(degenerate)[0])
            raise InvalidBox(f"Coordinate {bad}: a point interval must be closed at both ends")

        upper_open = upper_open | np.isinf(upper)
        for name, value in (('lower', lower), ('upper', upper),
                            ('lower_open', lower_open), ('upper_open', upper_open)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    # --- constructors -------------------------------------------------------

    @classmethod
    def closed(cls, lower, upper) -> 'Box':
        lower = np.asarray(lower, dtype=float)
        return cls(lower, upper, np.zeros(lower.shape, bool), np.zeros(lower.shape, bool))

    @classmethod
    def point(cls, x) -> 'Box':
        return cls.closed(x, x)

    @classmethod
    def orthant(cls, n: int) -> 'Box':
        return cls.closed(np.zeros(n), np.full(n, math.inf))

    # --- queries -------------------------------------------------------------

    @property
    def n(self) -> int:
        return int(self.lower.shape[0])

    def __len__(self) -> int:
        return self.n

    def contains_coordinate(self, i: int, value: float, eps: Optional[float] = None) -> bool:
        if self.lower_open[i]:
            above = approx_lt(self.lower[i], value, eps)
        else:
            above = approx_le(self.lower[i], value, eps)
        if not above:
            return False
        if math.isinf(self.upper[i]):
            return not math.isinf(value)
        if self.upper_open[i]:
            return bool(approx_lt(value, self.upper[i], eps))
        return bool(approx_le(value, self.upper[i], eps))

    def contains(self, x, eps: Optional[float] = None) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DimensionMismatch(f"Vector of shape {x.shape} tested against a box of dimension {self.n}")
        return all(self.contains_coordinate(i, x[i], eps) for i in range(self.n))

    def up_closure(self) -> 'Box':
        """
        X↑: every upper bound becomes +inf, lower flags kept.

        A +inf coordinate counts as a member of X↑.
        """
        return _UpClosure(self.lower, np.full(self.n, math.inf), self.lower_open, np.ones(self.n, bool))

    def lower_closed_set(self) -> FrozenSet[int]:
        """c(x̲) = {i : x̲_i ∈ X_i}"""
        return frozenset(int(i) for i in np.flatnonzero(~self.lower_open))

    def lower_open_set(self) -> FrozenSet[int]:
        """o(x̲), the complement of c(x̲)"""
        return frozenset(int(i) for i in np.flatnonzero(self.lower_open))

    @property
    def is_upper_closed(self) -> bool:
        """x̄-closed: every finite upper end is closed."""
        return not bool(np.any(self.upper_open & np.isfinite(self.upper)))

    @property
    def is_lower_open(self) -> bool:
        return bool(np.all(self.lower_open))

    @property
    def is_closed(self) -> bool:
        return not bool(np.any(self.lower_open)) and self.is_upper_closed

    @property
    def is_bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.upper)))

    @property
    def is_point(self) -> bool:
        return bool(np.all(self.lower == self.upper))

    def closed_hull(self) -> 'Box':
        return Box(self.lower, self.upper, np.zeros(self.n, bool), np.zeros(self.n, bool))

    def with_closed_uppers(self) -> 'Box':
        """Every finite upper end closed, lower ends unchanged."""
        return Box(self.lower, self.upper, self.lower_open, np.isinf(self.upper))

    def with_lower_open(self, i: int) -> Optional['Box']:
        """X^{(i}: the lower end of coordinate i made strict, or None when that empties the box."""
        if self.lower[i] == self.upper[i]:
            return None
        flags = self.lower_open.copy()
        flags[i] = True
        return Box(self.lower, self.upper, flags, self.upper_open)

    def sample(self, count: int, rng: np.random.Generator, cap: Optional[float] = None) -> np.ndarray:
        """
        Uniform points of the box (rows), with x̲ and x̄ first when they belong to it.

        Unbounded coordinates are sampled up to ``cap``, by default ten times
        the largest finite bound.
        """
        finite = np.concatenate([self.lower, self.upper[np.isfinite(self.upper)]])
        top = cap if cap is not None else 10.0 * max(1.0, float(finite.max()) if finite.size else 1.0)
        upper = np.where(np.isinf(self.upper), top, self.upper)

        points = []
        for corner in (self.lower, self.upper):
            if np.all(np.isfinite(corner)) and self.contains(corner):
                points.append(np.array(corner, dtype=float))

        attempts = 0
        while len(points) < count and attempts < 10 * count:
            attempts += 1
            candidate = rng.uniform(self.lower, upper)
            if self.contains(candidate):
                points.append(candidate)
        return np.array(points[:count]).reshape(-1, self.n)

    # --- serialization --------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lower': to_jsonable(self.lower),
            'upper': to_jsonable(self.upper),
            'lower_open': to_jsonable(self.lower_open),
            'upper_open': to_jsonable(self.upper_open),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Box':
        lower = vector_from_jsonable(data['lower'])
        upper = vector_from_jsonable(data['upper'])
        n = lower.shape[0]
        lower_open = data.get('lower_open') or [False] * n
        upper_open = data.get('upper_open') or [False] * n
        return cls(lower, upper, lower_open, upper_open)

    def __str__(self) -> str:
        parts = []
        for i in range(self.n):
            left = '(' if self.lower_open[i] else '['
            if math.isinf(self.upper[i]):
                parts.append(f"{left}{self.lower[i]:g}, ∞)")
                continue
            right = ')' if self.upper_open[i] else ']'
            parts.append(f"{left}{self.lower[i]:g}, {self.upper[i]:g}{right}")
        return '×'.join(parts)

    def __repr__(self) -> str:
        return f"Box({self})"


class _UpClosure(Box):
    """X↑ admits +inf coordinates."""

    def contains_coordinate(self, i: int, value: float, eps: Optional[float] = None) -> bool:
        if math.isinf(value):
            return True
        return super().contains_coordinate(i, value, eps)

    def up_closure(self) -> 'Box':
        return self
