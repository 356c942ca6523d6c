"""Fixed-point solver for the divergence-weighted right mean.

The right mean ``R_{a,z}(w; A)`` is the unique minimizer of the weighted
sum of alpha-z Bures-Wasserstein divergences to the tuple entries.  It is
computed here as the unique positive definite solution of

    ``X = sum_j w_j (X^(a/2z) A_j^((1-a)/z) X^(a/2z))^z``

by damped Picard iteration on the right-hand-side map, started at the
arithmetic mean (which lies in the order interval ``[a I, b I]`` spanned by
the inputs, an invariant set of the map).
"""

from __future__ import annotations

import logging

import numpy as np

from .divergences import AlphaZ, _require_strict
from .errors import DimensionMismatchError
from .linalg import (
    PDMatrix,
    SolverConfig,
    SolverReport,
    _fixed_point,
    _herm,
    _hpow,
    _relerr,
    _wsum,
)
from .means import PDTuple, WeightVector, _check_lengths

__all__ = ["residual", "residual_geomform", "right_mean"]

log = logging.getLogger("pdmeans.rightmean")


def _rhs_map(p: AlphaZ, w: np.ndarray, stack: np.ndarray):
    """The map ``X -> sum_j w_j (X^(a/2z) A_j^((1-a)/z) X^(a/2z))^z``.

    The powered inputs ``A_j^((1-a)/z)`` are fixed across iterations, so
    they are computed once; each application then costs one
    eigendecomposition of ``X`` plus one batched eigendecomposition of the
    n sandwiched matrices.
    """
    e_outer = p.alpha / (2.0 * p.z)
    powered = _hpow(stack, (1.0 - p.alpha) / p.z)

    def fmap(x: np.ndarray) -> np.ndarray:
        s = _hpow(x, e_outer)
        inner = _herm(s @ powered @ s)
        return _herm(_wsum(w, _hpow(inner, p.z)))

    return fmap


def residual(p: AlphaZ, weights: WeightVector, tup: PDTuple,
             x: PDMatrix) -> float:
    """Relative defect ``|X - sum_j w_j Q_{1-a,z}(X, A_j)|_F / |X|_F``
    of the defining fixed-point equation."""
    _require_strict(p)
    _check_lengths(weights, tup)
    xarr = x.array if isinstance(x, PDMatrix) else PDMatrix(x).array
    if xarr.shape[0] != tup.dim:
        raise DimensionMismatchError("dimensions do not agree")
    fmap = _rhs_map(p, weights.weights, tup.stack())
    return _relerr(xarr, fmap(xarr))


def residual_geomform(p: AlphaZ, weights: WeightVector, tup: PDTuple,
                      x: PDMatrix) -> float:
    """Relative defect of the equivalent geometric-mean form

    ``X^(1-a/z) = sum_j w_j X^(-a/z) #_z A_j^((1-a)/z)``,

    normalized by the Frobenius norm of the left-hand side.  On a converged
    right mean both residual forms vanish together up to conditioning.
    """
    _require_strict(p)
    _check_lengths(weights, tup)
    if not isinstance(x, PDMatrix):
        x = PDMatrix(x)
    if x.dim != tup.dim:
        raise DimensionMismatchError("dimensions do not agree")
    dec = x.eig
    vt = np.conj(dec.vectors.T)

    def xpow(t: float) -> np.ndarray:
        return _herm((dec.vectors * (dec.values ** t)) @ vt)

    # With P = X^(-a/z) the geodesic term P #_z A_j^((1-a)/z) equals
    # X^(-a/2z) (X^(a/2z) A_j^((1-a)/z) X^(a/2z))^z X^(-a/2z).
    e = p.alpha / (2.0 * p.z)
    s = xpow(e)
    s_inv = xpow(-e)
    powered = _hpow(tup.stack(), (1.0 - p.alpha) / p.z)
    inner = _hpow(_herm(s @ powered @ s), p.z)
    rhs = _herm(s_inv @ _wsum(weights.weights, inner) @ s_inv)
    lhs = xpow(1.0 - p.alpha / p.z)
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs))


def right_mean(p: AlphaZ, weights: WeightVector, tup: PDTuple,
               cfg: SolverConfig | None = None
               ) -> tuple[PDMatrix, SolverReport]:
    """The alpha-z weighted right mean of a tuple of PD matrices.

    Damped Picard iteration ``X <- (1-theta) X + theta G(X)`` on the
    defining map ``G``; theta starts at ``cfg.damping``, halves when the
    residual fails to decrease and recovers (factor 1.5, capped at 1) after
    two consecutive decreases.  Convergence is declared on the relative
    residual of the fixed-point equation, divergence when the residual has
    grown tenfold from its running minimum at minimal damping.

    A singleton tuple short-circuits to its only entry, which is exact.
    """
    _require_strict(p)
    if cfg is None:
        cfg = SolverConfig()
    _check_lengths(weights, tup)
    if len(tup) == 1:
        x = tup[0]
        res = residual(p, weights, tup, x)
        return x, SolverReport(iterations=0, final_residual=res,
                               residuals=(), status="converged")
    stack = tup.stack()
    w = weights.weights
    x0 = _wsum(w, stack)
    x, report = _fixed_point(x0, _rhs_map(p, w, stack), cfg, adaptive=True)
    log.debug("right_mean(alpha=%g, z=%g): %s in %d iterations "
              "(residual %.3e, %d damping activations)",
              p.alpha, p.z, report.status, report.iterations,
              report.final_residual, report.damping_activations)
    return PDMatrix(x), report
