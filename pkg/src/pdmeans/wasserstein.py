"""Wasserstein mean via the square-root fixed-point map.

The Wasserstein mean ``Omega(w; A)`` is the least squares mean for the
Bures-Wasserstein metric.  It is computed by iterating

    ``K(S) = S^(-1/2) [ sum_j w_j (S^(1/2) A_j S^(1/2))^(1/2) ]^2 S^(-1/2)``

whose iterates converge to the mean from any positive definite start with
nondecreasing traces.  The module also provides the trace comparison
between powered right means and Wasserstein means of powered tuples.
"""

from __future__ import annotations

import logging

import numpy as np

from .divergences import AlphaZ
from .errors import ConvergenceError, DimensionMismatchError, DomainError
from .linalg import (
    PDMatrix,
    SolverConfig,
    SolverReport,
    _fixed_point,
    _herm,
    _hpow,
    _wsum,
    trace,
)
from .means import PDTuple, WeightVector, _check_lengths
from .rightmean import right_mean

__all__ = ["k_map", "trace_inequality_check", "wasserstein_mean"]

log = logging.getLogger("pdmeans.wasserstein")


def _k_map_raw(w: np.ndarray, stack: np.ndarray):
    def fmap(s: np.ndarray) -> np.ndarray:
        vals, vecs = np.linalg.eigh(s)
        vt = np.conj(vecs.T)
        rt = (vecs * np.sqrt(vals)) @ vt
        irt = (vecs * (vals ** -0.5)) @ vt
        roots = _wsum(w, _hpow(_herm(rt @ stack @ rt), 0.5))
        return _herm(irt @ roots @ roots @ irt)

    return fmap


def k_map(weights: WeightVector, tup: PDTuple, a: PDMatrix) -> PDMatrix:
    """One application of the Wasserstein fixed-point map ``K`` at ``a``."""
    _check_lengths(weights, tup)
    if not isinstance(a, PDMatrix):
        a = PDMatrix(a)
    if a.dim != tup.dim:
        raise DimensionMismatchError("dimensions do not agree")
    return PDMatrix(_k_map_raw(weights.weights, tup.stack())(a.array))


def wasserstein_mean(weights: WeightVector, tup: PDTuple,
                     cfg: SolverConfig | None = None,
                     start: PDMatrix | None = None
                     ) -> tuple[PDMatrix, SolverReport]:
    """Wasserstein mean by Picard iteration of the ``K`` map.

    Starts at the weighted arithmetic mean unless ``start`` is given (the
    iteration converges from every positive definite start).  Stops on the
    relative fixed-point residual ``|S - K(S)|_F / |S|_F``, not on trace
    stagnation: the trace can plateau before the matrix converges.  The
    report records the trace of every iterate produced by the map, a
    sequence that is nondecreasing up to roundoff.  (The trace of the
    arbitrary start is excluded: the first map application may decrease
    it, e.g. from any start above the mean in the commuting case.)
    """
    if cfg is None:
        cfg = SolverConfig()
    _check_lengths(weights, tup)
    stack = tup.stack()
    w = weights.weights
    if start is None:
        s0 = _wsum(w, stack)
    else:
        if start.dim != tup.dim:
            raise DimensionMismatchError("start dimension does not agree")
        s0 = start.array
    x, report = _fixed_point(s0, _k_map_raw(w, stack), cfg,
                             trace_fn=lambda s: float(np.trace(s).real))
    log.debug("wasserstein_mean: %s in %d iterations (residual %.3e)",
              report.status, report.iterations, report.final_residual)
    return PDMatrix(x), report


def trace_inequality_check(p_exp: float, weights: WeightVector, tup: PDTuple,
                           cfg: SolverConfig | None = None
                           ) -> tuple[float, float, bool]:
    """Trace comparison ``tr R_{1-p/2, 1/2}(w; A)^p <= tr Omega(w; A^p)``
    for ``1 <= p < 2``.

    Returns ``(lhs, rhs, holds)`` where ``holds`` allows the relative
    verification slack ``1e-8 * (1 + |rhs|)``.  Raises
    :class:`ConvergenceError` if either solve fails to converge.
    """
    p_exp = float(p_exp)
    if not 1.0 <= p_exp < 2.0:
        raise DomainError(f"exponent must lie in [1, 2), got {p_exp}")
    if cfg is None:
        cfg = SolverConfig()
    p = AlphaZ(1.0 - p_exp / 2.0, 0.5)
    r, rep = right_mean(p, weights, tup, cfg)
    if not rep.converged:
        raise ConvergenceError(
            f"right mean did not converge ({rep.status})", report=rep)
    lhs = float(np.sum(r.eig.values ** p_exp))
    omega, rep_w = wasserstein_mean(weights, tup.mpow(p_exp), cfg)
    if not rep_w.converged:
        raise ConvergenceError(
            f"Wasserstein mean did not converge ({rep_w.status})", report=rep_w)
    rhs = trace(omega)
    holds = lhs <= rhs + 1e-8 * (1.0 + abs(rhs))
    return lhs, rhs, holds
