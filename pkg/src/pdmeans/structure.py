"""Tensor and Hadamard products, weight products, and majorization tests.

The extraction map realizing the Hadamard product as a compression of the
tensor product is taken concretely as the principal submatrix on the
stride-(m+1) index set, which is strictly positive, unital, and satisfies
``psi(A (x) B) = A o B`` identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, DomainError
from .linalg import HermitianMatrix, PDMatrix, _herm
from .means import PDTuple, WeightVector

__all__ = [
    "MajorizationVerdict",
    "hadamard_product",
    "psi_extract",
    "tensor_product",
    "tuple_hadamard",
    "tuple_tensor",
    "weak_log_majorizes",
    "weak_majorizes",
    "weight_tensor",
]


def _as_array(a) -> np.ndarray:
    if isinstance(a, HermitianMatrix):
        return a.array
    return np.asarray(a, dtype=np.complex128)


def _wrap_like(arr: np.ndarray, *inputs):
    if all(isinstance(x, PDMatrix) for x in inputs):
        return PDMatrix(arr)
    if all(isinstance(x, HermitianMatrix) for x in inputs):
        return HermitianMatrix(arr)
    return arr


def tensor_product(a, b):
    """Kronecker product ``a (x) b`` in block order ``[a_ij * b]``."""
    out = np.kron(_as_array(a), _as_array(b))
    return _wrap_like(out, a, b)


def hadamard_product(a, b):
    """Entrywise (Schur) product; positive definite for PD factors."""
    aarr = _as_array(a)
    barr = _as_array(b)
    if aarr.shape != barr.shape:
        raise DimensionMismatchError(
            f"shapes do not agree: {aarr.shape} vs {barr.shape}")
    return _wrap_like(aarr * barr, a, b)


def psi_extract(t):
    """Compression of an m^2 x m^2 matrix to the principal submatrix on the
    stride-(m+1) indices, so that ``psi(A (x) B) == A o B`` exactly.

    The map is linear, unital (identity maps to identity) and strictly
    positive (principal compressions preserve definiteness).
    """
    arr = _as_array(t)
    m = math.isqrt(arr.shape[0])
    if m * m != arr.shape[0]:
        raise DomainError(
            f"input dimension {arr.shape[0]} is not a perfect square")
    idx = np.arange(m) * (m + 1)
    out = np.ascontiguousarray(arr[np.ix_(idx, idx)])
    return _wrap_like(out, t)


def weight_tensor(w: WeightVector, mu: WeightVector) -> WeightVector:
    """Product weights ``(w_1 mu_1, ..., w_1 mu_k, ..., w_n mu_1, ...)``."""
    return WeightVector(np.outer(w.weights, mu.weights).ravel())


def tuple_tensor(ta: PDTuple, tb: PDTuple) -> PDTuple:
    """All pairwise Kronecker products, entry (i, j) at position i*len(tb)+j."""
    return PDTuple([tensor_product(a, b) for a in ta for b in tb])


def tuple_hadamard(ta: PDTuple, tb: PDTuple) -> PDTuple:
    """All pairwise Hadamard products in the same block order."""
    return PDTuple([hadamard_product(a, b) for a in ta for b in tb])


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of a (log-)majorization comparison.

    ``worst_margin`` is the smallest slack-inclusive gap across prefixes,
    so the verdict holds exactly when ``worst_margin >= 0``.
    """

    kind: str
    holds: bool
    worst_margin: float


def _prefix_verdict(kind: str, y_pref: np.ndarray, x_pref: np.ndarray,
                    slack: float) -> MajorizationVerdict:
    scale = 1.0 + np.maximum(np.abs(y_pref), np.abs(x_pref))
    margins = y_pref - x_pref + slack * scale
    worst = float(np.min(margins))
    return MajorizationVerdict(kind=kind, holds=bool(worst >= 0.0),
                               worst_margin=worst)


def _sorted_desc(v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("expected a non-empty 1-D vector")
    return np.sort(arr)[::-1]


def weak_log_majorizes(y, x, slack: float = 1e-10) -> MajorizationVerdict:
    """Does ``y`` weakly log-majorize ``x``?

    True when every descending prefix product of ``x`` is bounded by the
    matching prefix product of ``y``.  The comparison runs in log space
    (prefix sums of logs) with additive slack ``slack * (1 + |prefix|)``,
    since raw products across many entries under- and overflow.
    """
    ys = _sorted_desc(y)
    xs = _sorted_desc(x)
    if ys.size != xs.size:
        raise DimensionMismatchError("vectors must have equal length")
    if not (np.all(ys > 0.0) and np.all(xs > 0.0)):
        raise DomainError("log-majorization requires strictly positive entries")
    return _prefix_verdict("weak-log", np.cumsum(np.log(ys)),
                           np.cumsum(np.log(xs)), slack)


def weak_majorizes(y, x, slack: float = 1e-10) -> MajorizationVerdict:
    """Does ``y`` weakly majorize ``x``?  Descending prefix sums compared
    with additive slack ``slack * (1 + |prefix|)``."""
    ys = _sorted_desc(y)
    xs = _sorted_desc(x)
    if ys.size != xs.size:
        raise DimensionMismatchError("vectors must have equal length")
    return _prefix_verdict("weak", np.cumsum(ys), np.cumsum(xs), slack)
