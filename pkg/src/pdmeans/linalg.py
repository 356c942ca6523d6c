"""Dense Hermitian linear algebra kernel.

Everything in this package reduces to a single primitive: the
eigendecomposition of a Hermitian matrix.  Real matrix powers, logarithms,
exponentials, congruence transforms, Loewner-order comparisons and the
seeded random generator used by the verification harness are all derived
from ``numpy.linalg.eigh``.

Matrices are wrapped in :class:`HermitianMatrix` and :class:`PDMatrix`.
Both symmetrize on construction (average with the conjugate transpose) and
validate their defining invariants; the wrapped arrays are marked
read-only, so values are immutable and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatchError,
    DomainError,
    NotPositiveDefiniteError,
    NumericalFailureError,
)

__all__ = [
    "EigenDecomposition",
    "HermitianMatrix",
    "PDMatrix",
    "SolverConfig",
    "SolverReport",
    "congruence",
    "det_via_eigs",
    "eigh",
    "loewner_leq",
    "mpow",
    "random_pd",
    "random_unitary",
    "trace",
]

# Asymmetry allowed per entry when a raw array is wrapped.
_HERMITIAN_ATOL = 1e-12
# Relative eigenvalue floor below which a matrix is rejected as not PD.
_PD_FLOOR = 1e-12
# Smallest damping factor an adaptive solver may reach.
_MIN_DAMPING = 2.0 ** -20


# ---------------------------------------------------------------------------
# raw ndarray helpers (module-private, shared by the solver modules)
# ---------------------------------------------------------------------------

def _herm(a: np.ndarray) -> np.ndarray:
    """Hermitian part (a + a*)/2; works on stacks of matrices."""
    return (a + np.conj(np.swapaxes(a, -1, -2))) * 0.5


def _hfun(a: np.ndarray, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a real spectral function to a (stack of) Hermitian matrices."""
    w, v = np.linalg.eigh(a)
    fw = fn(w)
    return _herm((v * fw[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2)))


def _hpow(a: np.ndarray, t: float) -> np.ndarray:
    """Real matrix power of a (stack of) positive definite matrices."""
    if t == 1.0:
        return np.array(a, copy=True)
    return _hfun(a, lambda w: w ** t)


def _hlog(a: np.ndarray) -> np.ndarray:
    return _hfun(a, np.log)


def _hexp(a: np.ndarray) -> np.ndarray:
    return _hfun(a, np.exp)


def _wsum(weights: np.ndarray, stack: np.ndarray) -> np.ndarray:
    """Weighted sum over the leading axis, in fixed index order."""
    return np.tensordot(weights, stack, axes=1)


def _relerr(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.linalg.norm(x - y) / np.linalg.norm(x))


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Unitary eigenvectors and descending real eigenvalues of a Hermitian
    matrix, so that ``vectors @ diag(values) @ vectors*`` reconstructs it."""

    vectors: np.ndarray
    values: np.ndarray


class HermitianMatrix:
    """An m x m complex matrix stored in exactly Hermitian form.

    Construction checks that the input is Hermitian within an absolute
    per-entry tolerance of 1e-12 and then averages with the conjugate
    transpose, so downstream arithmetic never sees asymmetry drift.
    """

    __slots__ = ("_array", "_eig")

    def __init__(self, entries):
        a = np.asarray(entries, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(
                f"expected a square matrix, got shape {a.shape}")
        asym = float(np.max(np.abs(a - np.conj(a.T)))) if a.size else 0.0
        if asym > _HERMITIAN_ATOL:
            raise DomainError(
                f"matrix is not Hermitian: max |a_ij - conj(a_ji)| = {asym:.3e}")
        h = _herm(a)
        h.setflags(write=False)
        self._array = h
        self._eig = None

    @property
    def array(self) -> np.ndarray:
        """The wrapped (read-only) complex ndarray."""
        return self._array

    @property
    def dim(self) -> int:
        return self._array.shape[0]

    @property
    def eig(self) -> EigenDecomposition:
        """Cached eigendecomposition with eigenvalues sorted descending."""
        if self._eig is None:
            self._eig = eigh(self)
        return self._eig

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._array, dtype=dtype)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class PDMatrix(HermitianMatrix):
    """A Hermitian matrix with strictly positive spectrum.

    The constructor rejects (rather than clamps) inputs whose smallest
    eigenvalue does not satisfy ``lambda_min > 1e-12 * max(1, lambda_max)``:
    clamping would silently change the object under test.
    """

    __slots__ = ()

    def __init__(self, entries):
        super().__init__(entries)
        values = self.eig.values
        lam_max = float(values[0])
        lam_min = float(values[-1])
        if not lam_min > _PD_FLOOR * max(1.0, lam_max):
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: lambda_min = {lam_min:.3e}, "
                f"lambda_max = {lam_max:.3e}")


@dataclass(frozen=True)
class SolverConfig:
    """Shared configuration for the fixed-point solvers.

    ``damping`` is the initial step size theta in (0, 1]; the adaptive
    solvers may shrink it, the plain Picard solvers use it as given.
    """

    tol: float = 1e-12
    max_iter: int = 500
    damping: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")
        if not 0.0 < self.damping <= 1.0:
            raise DomainError("damping must lie in (0, 1]")


@dataclass(frozen=True)
class SolverReport:
    """Convergence record for a fixed-point solve.

    ``residuals`` holds one entry per iteration (the residual of each new
    iterate), so an instantly converged start has ``iterations == 0`` and an
    empty trajectory.  ``traces`` is populated only by solvers that monitor
    a trace sequence; ``damping_activations`` counts step-size halvings.
    """

    iterations: int
    final_residual: float
    residuals: tuple[float, ...]
    status: str
    damping_activations: int = 0
    traces: tuple[float, ...] | None = None

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def _fixed_point(x0: np.ndarray, fmap: Callable[[np.ndarray], np.ndarray],
                 cfg: SolverConfig, *, adaptive: bool = False,
                 trace_fn: Callable[[np.ndarray], float] | None = None
                 ) -> tuple[np.ndarray, SolverReport]:
    """Iterate ``x <- (1-theta) x + theta fmap(x)`` until the relative
    residual ``|x - fmap(x)|_F / |x|_F`` drops below ``cfg.tol``.

    With ``adaptive=True``, theta halves whenever the residual fails to
    decrease and is restored by a factor 1.5 (capped at 1) after two
    consecutive decreases; divergence is declared when the residual has
    grown tenfold from its running minimum at minimal damping.

    ``trace_fn`` records one scalar per accepted iterate, starting with the
    first image of the map (the start itself is the caller's datum).
    """
    x = x0
    g = fmap(x)
    r = _relerr(x, g)
    r_min = r
    theta = cfg.damping
    streak = 0
    activations = 0
    residuals: list[float] = []
    traces: list[float] | None = [] if trace_fn is not None else None
    status = None
    while r >= cfg.tol and len(residuals) < cfg.max_iter:
        if theta == 1.0:
            x_new = g
        else:
            x_new = _herm((1.0 - theta) * x + theta * g)
        g_new = fmap(x_new)
        r_new = _relerr(x_new, g_new)
        residuals.append(r_new)
        if not math.isfinite(r_new):
            # the map left double-precision range (the iterate is no longer
            # numerically PD); stop rather than grind on poisoned values
            status = "diverged"
            break
        if traces is not None:
            traces.append(trace_fn(x_new))
        if adaptive:
            if r_new < r:
                streak += 1
                if streak >= 2:
                    theta = min(1.0, theta * 1.5)
            else:
                streak = 0
                activations += 1
                theta = max(_MIN_DAMPING, theta * 0.5)
        x, g, r = x_new, g_new, r_new
        r_min = min(r_min, r)
        if adaptive and theta <= _MIN_DAMPING and r > 10.0 * r_min:
            status = "diverged"
            break
    if status is None:
        status = "converged" if r < cfg.tol else "max-iter-exceeded"
    report = SolverReport(
        iterations=len(residuals),
        final_residual=r,
        residuals=tuple(residuals),
        status=status,
        damping_activations=activations,
        traces=tuple(traces) if traces is not None else None,
    )
    return x, report


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _as_array(a) -> np.ndarray:
    if isinstance(a, HermitianMatrix):
        return a.array
    return np.asarray(a, dtype=np.complex128)


def eigh(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    if not isinstance(a, HermitianMatrix):
        a = HermitianMatrix(a)
    arr = a.array
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        scale = float(np.linalg.norm(arr))
        raise NumericalFailureError(
            f"eigensolver failed on a {arr.shape[0]}x{arr.shape[0]} matrix: {exc}",
            dim=arr.shape[0],
            cond_estimate=scale / max(np.abs(np.diagonal(arr)).min(), 1e-300),
        ) from exc
    values = np.ascontiguousarray(w[::-1].real)
    vectors = np.ascontiguousarray(v[:, ::-1])
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenDecomposition(vectors=vectors, values=values)


def mpow(a: PDMatrix, t: float) -> PDMatrix:
    """Real matrix power ``a**t`` via the (cached) eigendecomposition."""
    if not isinstance(a, PDMatrix):
        a = PDMatrix(a)
    dec = a.eig
    powered = dec.values ** float(t)
    arr = _herm((dec.vectors * powered) @ np.conj(dec.vectors.T))
    return PDMatrix(arr)


def congruence(m, a):
    """Congruence transform ``m @ a @ m*``.

    Returns a :class:`PDMatrix` when ``a`` is one (the transform preserves
    positive definiteness for invertible ``m``), a :class:`HermitianMatrix`
    when ``a`` is Hermitian, and a plain ndarray otherwise.
    """
    marr = np.asarray(m, dtype=np.complex128)
    aarr = _as_array(a)
    if marr.shape[1] != aarr.shape[0]:
        raise DimensionMismatchError(
            f"congruence shapes do not agree: {marr.shape} vs {aarr.shape}")
    out = marr @ aarr @ np.conj(marr.T)
    if isinstance(a, PDMatrix):
        return PDMatrix(_herm(out))
    if isinstance(a, HermitianMatrix):
        return HermitianMatrix(_herm(out))
    return out


def loewner_leq(a, b, slack: float = 0.0) -> bool:
    """Loewner order test ``a <= b`` up to a relative verification slack.

    True iff ``lambda_min(b - a) >= -slack * (1 + |b - a|_2)``.  The slack
    is a numerical tolerance, not part of the mathematical order.
    """
    aarr = _as_array(a)
    barr = _as_array(b)
    if aarr.shape != barr.shape:
        raise DimensionMismatchError(
            f"cannot compare shapes {aarr.shape} and {barr.shape}")
    w = np.linalg.eigvalsh(_herm(barr - aarr))
    lam_min = float(w[0])
    norm2 = float(np.max(np.abs(w))) if w.size else 0.0
    return lam_min >= -slack * (1.0 + norm2)


def trace(a) -> float:
    """Sum of the real parts of the diagonal."""
    return float(np.trace(_as_array(a)).real)


def det_via_eigs(a: PDMatrix) -> float:
    """Determinant as the product of eigenvalues (positive for PD input)."""
    if not isinstance(a, PDMatrix):
        a = PDMatrix(a)
    return float(np.prod(a.eig.values))


def random_unitary(rng, dim: int) -> np.ndarray:
    """Haar-ish random unitary from a QR-orthogonalized complex Gaussian.

    ``rng`` may be a seed or a ``numpy.random.Generator``.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _random_pd_from_rng(rng: np.random.Generator, dim: int,
                        cond: float) -> PDMatrix:
    q = random_unitary(rng, dim)
    lam = np.exp(rng.uniform(np.log(1.0 / cond), 0.0, size=dim))
    return PDMatrix(_herm((q * lam) @ np.conj(q.T)))


def random_pd(seed: int, dim: int, cond: float = 100.0) -> PDMatrix:
    """Seeded random positive definite matrix with bounded conditioning.

    The matrix is ``Q diag(lam) Q*`` with ``Q`` a random unitary and the
    spectrum ``lam`` log-uniform on ``[1/cond, 1]``, which exercises
    conditioning regimes evenly.  Identical seeds give identical output.
    """
    if dim < 1:
        raise DomainError("dim must be a positive integer")
    if cond < 1.0:
        raise DomainError("cond must be at least 1")
    return _random_pd_from_rng(np.random.default_rng(seed), dim, cond)
