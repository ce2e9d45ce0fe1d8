"""
Hypothesis strategies for small nonnegative matrices.

Entries are powers of two (or zero) so max-times products stay exact.
"""
import numpy as np
from hypothesis import strategies as st

POSITIVE = st.sampled_from([2.0 ** k for k in range(-3, 4)])
ENTRIES = st.one_of(st.just(0.0), POSITIVE)


@st.composite
def matrices(draw, min_rows=1, max_rows=4, min_cols=None, max_cols=None, square=True):
    rows = draw(st.integers(min_rows, max_rows))
    if square:
        cols = rows
    else:
        cols = draw(st.integers(min_cols or 1, max_cols or max_rows))
    values = draw(st.lists(ENTRIES, min_size=rows * cols, max_size=rows * cols))
    return np.array(values, dtype=float).reshape(rows, cols)


@st.composite
def irreducible_matrices(draw, min_n=1, max_n=4):
    """Square matrices whose digraph contains the cycle 0 → 1 → ... → n-1 → 0."""
    A = draw(matrices(min_rows=min_n, max_rows=max_n))
    n = A.shape[0]
    for i in range(n):
        j = (i + 1) % n
        if A[i, j] == 0:
            A[i, j] = draw(POSITIVE)
    return A


@st.composite
def vectors(draw, n, positive=False):
    elements = POSITIVE if positive else ENTRIES
    return np.array(draw(st.lists(elements, min_size=n, max_size=n)), dtype=float)


@st.composite
def reducible_matrices(draw, min_n=2, max_n=5):
    """Sparse block-triangular matrices: no edge from the trailing block back to the leading one."""
    A = draw(matrices(min_rows=min_n, max_rows=max_n))
    n = A.shape[0]
    split = draw(st.integers(1, n - 1))
    A[split:, :split] = 0.0
    mask = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    A[np.array(mask).reshape(n, n)] = 0.0
    return A


@st.composite
def cyclic_critical_matrices(draw, max_n=4):
    """
    λ = 1 with every node on a critical cycle and the critical components
    exactly the cycles of a random permutation; other edges are lighter.
    """
    n = draw(st.integers(1, max_n))
    sigma = draw(st.permutations(range(n)))
    light = st.sampled_from([0.0, 0.25, 0.5])
    A = np.array(draw(st.lists(light, min_size=n * n, max_size=n * n)), dtype=float).reshape(n, n)
    for i, j in enumerate(sigma):
        A[i, j] = 1.0
    d = np.array(draw(st.lists(POSITIVE, min_size=n, max_size=n)), dtype=float)
    return A * d[None, :] / d[:, None]
