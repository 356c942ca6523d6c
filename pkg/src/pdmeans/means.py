"""Weighted means on the positive definite cone.

Provides the two-variable weighted geometric mean, the n-variable weighted
arithmetic and harmonic means, the matrix power mean (fixed point of
``X = sum_j w_j X #_t A_j``), the Cartan (Karcher) mean, and the Riemannian
and Thompson distances that the solvers and the verification harness use.
"""

from __future__ import annotations

import logging

import numpy as np

from .errors import DimensionMismatchError, DomainError
from .linalg import (
    PDMatrix,
    SolverConfig,
    SolverReport,
    _fixed_point,
    _herm,
    _hexp,
    _hlog,
    _hpow,
    _wsum,
)

__all__ = [
    "PDTuple",
    "WeightVector",
    "arithmetic_mean",
    "cartan_mean",
    "geometric_mean_two",
    "harmonic_mean",
    "power_mean",
    "riemannian_distance",
    "thompson_distance",
]

log = logging.getLogger("pdmeans.means")

_MIN_DAMPING = 2.0 ** -20


class WeightVector:
    """A positive probability vector, renormalized at construction."""

    __slots__ = ("_w",)

    def __init__(self, weights):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise DomainError("weights must be a non-empty 1-D sequence")
        if not np.all(w > 0.0):
            raise DomainError("all weights must be strictly positive")
        w = w / w.sum()
        w.setflags(write=False)
        self._w = w

    @classmethod
    def uniform(cls, n: int) -> "WeightVector":
        return cls(np.full(n, 1.0 / n))

    @property
    def weights(self) -> np.ndarray:
        return self._w

    def __len__(self) -> int:
        return self._w.size

    def __getitem__(self, i: int) -> float:
        return float(self._w[i])

    def __repr__(self):
        return f"WeightVector({self._w.tolist()!r})"


class PDTuple:
    """An ordered tuple of equal-dimension positive definite matrices."""

    __slots__ = ("_items",)

    def __init__(self, items):
        mats = tuple(a if isinstance(a, PDMatrix) else PDMatrix(a)
                     for a in items)
        if not mats:
            raise DomainError("a PDTuple needs at least one matrix")
        dim = mats[0].dim
        if any(a.dim != dim for a in mats):
            raise DimensionMismatchError(
                "all matrices in a tuple must share one dimension")
        self._items = mats

    @property
    def items(self) -> tuple[PDMatrix, ...]:
        return self._items

    @property
    def dim(self) -> int:
        return self._items[0].dim

    def __len__(self) -> int:
        return len(self._items)

    def __getitem__(self, i: int) -> PDMatrix:
        return self._items[i]

    def __iter__(self):
        return iter(self._items)

    def stack(self) -> np.ndarray:
        """The tuple as an (n, m, m) array."""
        return np.stack([a.array for a in self._items])

    def mpow(self, t: float) -> "PDTuple":
        """Entrywise matrix power of the tuple."""
        return PDTuple([_hpow(a.array, float(t)) for a in self._items])

    def inverse(self) -> "PDTuple":
        return self.mpow(-1.0)

    def scaled(self, c: float) -> "PDTuple":
        if not c > 0:
            raise DomainError("scale factor must be positive")
        return PDTuple([c * a.array for a in self._items])

    def __repr__(self):
        return f"PDTuple(n={len(self)}, dim={self.dim})"


def _check_lengths(weights: WeightVector, tup: PDTuple) -> None:
    if len(weights) != len(tup):
        raise DimensionMismatchError(
            f"{len(weights)} weights for {len(tup)} matrices")


def geometric_mean_two(a: PDMatrix, b: PDMatrix, t: float) -> PDMatrix:
    """Weighted geometric mean ``a #_t b = a^(1/2) (a^(-1/2) b a^(-1/2))^t a^(1/2)``.

    ``t = 0`` gives ``a`` and ``t = 1`` gives ``b``; the curve is the
    Riemannian geodesic between the two matrices.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"geodesic parameter t must lie in [0, 1], got {t}")
    if not isinstance(a, PDMatrix):
        a = PDMatrix(a)
    if not isinstance(b, PDMatrix):
        b = PDMatrix(b)
    if a.dim != b.dim:
        raise DimensionMismatchError("dimensions do not agree")
    dec = a.eig
    vt = np.conj(dec.vectors.T)
    rt = (dec.vectors * np.sqrt(dec.values)) @ vt
    irt = (dec.vectors * (dec.values ** -0.5)) @ vt
    inner = _hpow(_herm(irt @ b.array @ irt), float(t))
    return PDMatrix(_herm(rt @ inner @ rt))


def arithmetic_mean(weights: WeightVector, tup: PDTuple) -> PDMatrix:
    """Weighted arithmetic mean ``sum_j w_j A_j``."""
    _check_lengths(weights, tup)
    return PDMatrix(_wsum(weights.weights, tup.stack()))


def harmonic_mean(weights: WeightVector, tup: PDTuple) -> PDMatrix:
    """Weighted harmonic mean ``[sum_j w_j A_j^(-1)]^(-1)``."""
    _check_lengths(weights, tup)
    inv_sum = _wsum(weights.weights, _hpow(tup.stack(), -1.0))
    return PDMatrix(_hpow(inv_sum, -1.0))


def _power_map(stack: np.ndarray, w: np.ndarray, t: float):
    """The contraction ``X -> sum_j w_j X #_t A_j`` on raw arrays."""

    def fmap(x: np.ndarray) -> np.ndarray:
        vals, vecs = np.linalg.eigh(x)
        vt = np.conj(vecs.T)
        rt = (vecs * np.sqrt(vals)) @ vt
        irt = (vecs * (vals ** -0.5)) @ vt
        inner = _hpow(_herm(irt @ stack @ irt), t)
        return _herm(rt @ _wsum(w, inner) @ rt)

    return fmap


def power_mean(t: float, weights: WeightVector, tup: PDTuple,
               cfg: SolverConfig | None = None
               ) -> tuple[PDMatrix, SolverReport]:
    """Matrix power mean ``P_t`` for ``t`` in [-1, 1] \\ {0}.

    For positive ``t`` the defining equation ``X = sum_j w_j X #_t A_j`` is
    solved by Picard iteration from the arithmetic mean (the map is a strict
    Thompson-metric contraction, so the iteration converges from anywhere);
    for negative ``t`` the inversion identity
    ``P_t(w; A) = P_{-t}(w; A^(-1))^(-1)`` is applied verbatim.
    """
    if cfg is None:
        cfg = SolverConfig()
    if not -1.0 <= t <= 1.0 or t == 0.0:
        raise DomainError(f"power mean parameter must lie in [-1,1] minus 0, got {t}")
    _check_lengths(weights, tup)
    if t < 0.0:
        x, report = power_mean(-t, weights, tup.inverse(), cfg)
        return PDMatrix(_hpow(x.array, -1.0)), report
    stack = tup.stack()
    w = weights.weights
    x0 = _wsum(w, stack)
    x, report = _fixed_point(x0, _power_map(stack, w, float(t)), cfg)
    log.debug("power_mean(t=%g): %s in %d iterations (residual %.3e)",
              t, report.status, report.iterations, report.final_residual)
    return PDMatrix(x), report


def _karcher_terms(x: np.ndarray, stack: np.ndarray, w: np.ndarray):
    """Square root of x, the weighted log sum, and its size scale."""
    vals, vecs = np.linalg.eigh(x)
    vt = np.conj(vecs.T)
    rt = (vecs * np.sqrt(vals)) @ vt
    irt = (vecs * (vals ** -0.5)) @ vt
    logs = _hlog(_herm(irt @ stack @ irt))
    s = _wsum(w, logs)
    scale = float(np.dot(w, np.linalg.norm(logs, axis=(1, 2))))
    return rt, s, scale


def cartan_mean(weights: WeightVector, tup: PDTuple,
                cfg: SolverConfig | None = None
                ) -> tuple[PDMatrix, SolverReport]:
    """Cartan (Karcher) mean: the Riemannian least squares mean.

    Solves ``sum_j w_j log(X^(-1/2) A_j X^(-1/2)) = 0`` by the damped
    exponential-update iteration
    ``X <- X^(1/2) exp(theta sum_j w_j log(X^(-1/2) A_j X^(-1/2))) X^(1/2)``
    started at the log-Euclidean mean.  The step halves whenever the
    residual fails to decrease.  The convergence metric is the Frobenius
    norm of the weighted log sum relative to the overall log scale.
    """
    if cfg is None:
        cfg = SolverConfig()
    _check_lengths(weights, tup)
    stack = tup.stack()
    w = weights.weights
    x = _hexp(_wsum(w, _hlog(stack)))
    rt, s, scale = _karcher_terms(x, stack, w)
    r = float(np.linalg.norm(s)) / (1.0 + scale)
    theta = cfg.damping
    activations = 0
    residuals: list[float] = []
    while r >= cfg.tol and len(residuals) < cfg.max_iter:
        cand = _herm(rt @ _hexp(theta * s) @ rt)
        rt_c, s_c, scale_c = _karcher_terms(cand, stack, w)
        r_c = float(np.linalg.norm(s_c)) / (1.0 + scale_c)
        residuals.append(r_c)
        if not np.isfinite(r_c):
            break
        if r_c < r:
            x, rt, s, r = cand, rt_c, s_c, r_c
        else:
            activations += 1
            theta = max(_MIN_DAMPING, theta * 0.5)
    status = "converged" if r < cfg.tol else "max-iter-exceeded"
    report = SolverReport(
        iterations=len(residuals),
        final_residual=r,
        residuals=tuple(residuals),
        status=status,
        damping_activations=activations,
    )
    log.debug("cartan_mean: %s in %d iterations (residual %.3e)",
              status, report.iterations, r)
    return PDMatrix(x), report


def _log_spectrum(a: PDMatrix, b: PDMatrix) -> np.ndarray:
    """Eigenvalue logs of ``a^(-1/2) b a^(-1/2)``."""
    if a.dim != b.dim:
        raise DimensionMismatchError("dimensions do not agree")
    dec = a.eig
    irt = (dec.vectors * (dec.values ** -0.5)) @ np.conj(dec.vectors.T)
    w = np.linalg.eigvalsh(_herm(irt @ b.array @ irt))
    return np.log(w)


def riemannian_distance(a: PDMatrix, b: PDMatrix) -> float:
    """Riemannian trace metric: Frobenius norm of ``log(a^(-1/2) b a^(-1/2))``."""
    return float(np.linalg.norm(_log_spectrum(a, b)))


def thompson_distance(a: PDMatrix, b: PDMatrix) -> float:
    """Thompson metric: operator norm of ``log(a^(-1/2) b a^(-1/2))``."""
    return float(np.max(np.abs(_log_spectrum(a, b))))
