"""
Max-times semiring arithmetic on dense numpy arrays.

Scalars are nonnegative doubles with a ⊕ b = max(a, b) and a ⊗ b = a·b.
+inf only appears in residuation results and is never stored in a matrix.
Comparisons are relative: a ≈ b iff both are 0 or |ln a - ln b| <= eps.
"""
from typing import Iterable, Optional, Union
import logging
import math

import numpy as np

from .config import get_settings
from .exceptions import DimensionMismatch, Divergent, InvalidEntry, PreconditionViolated

logger = logging.getLogger(__name__)

INF = math.inf

ArrayLike = Union[np.ndarray, Iterable]


def _eps(eps: Optional[float]) -> float:
    return get_settings().eps_rel if eps is None else float(eps)


# --- construction -----------------------------------------------------------

def as_matrix(A: ArrayLike, *, square: bool = False) -> np.ndarray:
    """
    Validate and copy ``A`` into a float matrix.

    Raises:
        DimensionMismatch: not two-dimensional, or not square when required
        InvalidEntry: negative, NaN or infinite entries
    """
    arr = np.array(A, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatch(f"Expected a matrix, got an array with {arr.ndim} dimension(s)")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {arr.shape}")
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr < 0)):
        raise InvalidEntry("Matrix entries must be finite and nonnegative")
    return arr


def as_vector(x: ArrayLike, *, allow_inf: bool = False) -> np.ndarray:
    arr = np.array(x, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"Expected a vector, got an array with {arr.ndim} dimension(s)")
    if arr.size:
        if np.any(np.isnan(arr)) or np.any(arr < 0):
            raise InvalidEntry("Vector entries must be nonnegative numbers")
        if not allow_inf and np.any(np.isinf(arr)):
            raise InvalidEntry("Vector entries must be finite")
    return arr


def identity(n: int) -> np.ndarray:
    return np.eye(n)


def support(x: ArrayLike) -> frozenset:
    """supp(x) = {i : x_i > 0}"""
    return frozenset(int(i) for i in np.flatnonzero(np.asarray(x, dtype=float) > 0))


# --- tolerance-aware comparison -------------------------------------------

def approx_equal(a, b, eps: Optional[float] = None) -> np.ndarray:
    """Elementwise a ≈ b in the log domain; zeros and infinities compare exactly."""
    tol = _eps(eps)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    exact = ((a == 0) & (b == 0)) | (np.isinf(a) & np.isinf(b))
    with np.errstate(divide='ignore', invalid='ignore'):
        close = np.abs(np.log(a) - np.log(b)) <= tol
    finite_positive = (a > 0) & (b > 0) & np.isfinite(a) & np.isfinite(b)
    return exact | (finite_positive & close)


def approx_le(a, b, eps: Optional[float] = None) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return (a <= b) | approx_equal(a, b, eps)


def approx_lt(a, b, eps: Optional[float] = None) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return (a < b) & ~approx_equal(a, b, eps)


def all_close(a, b, eps: Optional[float] = None) -> bool:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        return False
    return bool(np.all(approx_equal(a, b, eps)))


# --- semiring operations ------------------------------------------------------

def oplus(A: ArrayLike, B: ArrayLike) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise DimensionMismatch(f"Cannot ⊕ shapes {A.shape} and {B.shape}")
    return np.maximum(A, B)


def mat_vec(A: ArrayLike, x: ArrayLike) -> np.ndarray:
    """(A ⊗ x)_i = max_j a_ij·x_j"""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if A.ndim != 2 or x.ndim != 1 or A.shape[1] != x.shape[0]:
        raise DimensionMismatch(f"Cannot multiply shape {A.shape} by vector of shape {x.shape}")
    if A.shape[1] == 0:
        return np.zeros(A.shape[0])
    return (A * x[None, :]).max(axis=1)


def mat_vec_extended(A: ArrayLike, x: ArrayLike) -> np.ndarray:
    """A ⊗ x where x may hold +inf, with 0·(+inf) = 0."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if A.ndim != 2 or x.ndim != 1 or A.shape[1] != x.shape[0]:
        raise DimensionMismatch(f"Cannot multiply shape {A.shape} by vector of shape {x.shape}")
    if A.shape[1] == 0:
        return np.zeros(A.shape[0])
    with np.errstate(invalid='ignore'):
        products = np.where(A == 0, 0.0, A * x[None, :])
    return products.max(axis=1)


def mat_mul(A: ArrayLike, B: ArrayLike, chunk: Optional[int] = None) -> np.ndarray:
    """
    Max-times matrix product.

    Rows of A are processed in blocks to bound the size of the
    intermediate (rows × inner × cols) array.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"Cannot multiply shapes {A.shape} and {B.shape}")

    rows, inner = A.shape
    out = np.zeros((rows, B.shape[1]))
    if inner == 0 or rows == 0 or B.shape[1] == 0:
        return out

    step = chunk or get_settings().matmul_chunk
    for start in range(0, rows, step):
        block = A[start:start + step]
        out[start:start + step] = (block[:, :, None] * B[None, :, :]).max(axis=1)
    return out


def mat_power(A: ArrayLike, k: int) -> np.ndarray:
    """A^{⊗k} by repeated squaring; entry (i, j) is the heaviest length-k path i→j."""
    A = as_matrix(A, square=True)
    if k < 1:
        raise PreconditionViolated(f"Matrix power needs k >= 1, got {k}")

    result = None
    base = A
    while k:
        if k & 1:
            result = base if result is None else mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def scale(alpha: float, A: ArrayLike) -> np.ndarray:
    return float(alpha) * np.asarray(A, dtype=float)


def kleene_plus(A: ArrayLike, eps: Optional[float] = None) -> np.ndarray:
    """
    A⁺ = A ⊕ A² ⊕ ... ⊕ Aⁿ, the heaviest path weights.

    Computed as A ⊗ (I ⊕ A)^{2^k} with 2^k >= n - 1. The diagonal of the
    result is the heaviest cycle weight through each node, so the series
    is finite exactly when that diagonal does not exceed 1.

    Raises:
        Divergent: some cycle has geometric mean above 1
    """
    A = as_matrix(A, square=True)
    n = A.shape[0]
    if n == 0:
        return A.copy()

    S = np.maximum(identity(n), A)
    reach = 1
    with np.errstate(over='ignore', invalid='ignore'):
        while reach < n - 1:
            S = mat_mul(S, S)
            reach *= 2
        plus = mat_mul(A, S)

    diagonal = np.diag(plus)
    if not np.all(np.isfinite(plus)) or not np.all(approx_le(diagonal, 1.0, eps)):
        worst = float(np.nanmax(diagonal)) if np.any(~np.isnan(diagonal)) else math.nan
        raise Divergent(f"Kleene plus diverges: a cycle has weight {worst:.6g} > 1")
    return plus


def kleene_star(A: ArrayLike, eps: Optional[float] = None) -> np.ndarray:
    """A* = I ⊕ A⁺"""
    plus = kleene_plus(A, eps)
    return np.maximum(identity(plus.shape[0]), plus)


def similarity_scale(A: ArrayLike, x: ArrayLike) -> np.ndarray:
    """
    Diagonal similarity diag(x)^{-1} ⊗ A ⊗ diag(x).

    Raises:
        InvalidEntry: x has a nonpositive entry
    """
    A = as_matrix(A, square=True)
    x = as_vector(x)
    if x.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"Scaling vector has length {x.shape[0]}, matrix has order {A.shape[0]}")
    if np.any(x <= 0):
        raise InvalidEntry("Scaling vector must be strictly positive")
    return A * x[None, :] / x[:, None]


def log_matrix(A: ArrayLike) -> np.ndarray:
    """Entrywise natural log with ln 0 = -inf."""
    with np.errstate(divide='ignore'):
        return np.log(np.asarray(A, dtype=float))
