"""Divergences on the positive definite cone.

Implements the alpha-z Renyi matrix kernel
``Q_{a,z}(A, B) = (A^((1-a)/2z) B^(a/z) A^((1-a)/2z))^z``, the alpha-z
Bures-Wasserstein quantum divergence built from it, the Bures-Wasserstein
metric, and the log-determinant alpha-divergence.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, DomainError, NumericalFailureError
from .linalg import PDMatrix, _herm, _hpow

__all__ = [
    "AlphaZ",
    "bures_wasserstein_distance",
    "log_det_alpha_divergence",
    "phi_alpha_z",
    "q_alpha_z",
]


class AlphaZ:
    """Parameter pair (alpha, z) for the alpha-z divergence family.

    The default constructor enforces the divergence domain
    ``0 < alpha <= z < 1``.  :meth:`relaxed` admits ``0 <= alpha <= 1`` and
    ``z > 0``, which is the wider domain on which the Renyi kernel ``Q``
    alone is defined; such parameters are rejected by the divergence and
    the right mean.
    """

    __slots__ = ("alpha", "z", "strict")

    def __init__(self, alpha: float, z: float):
        alpha = float(alpha)
        z = float(z)
        if not 0.0 < alpha <= z < 1.0:
            raise DomainError(
                f"(alpha, z) = ({alpha}, {z}) violates 0 < alpha <= z < 1")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "strict", True)

    @classmethod
    def relaxed(cls, alpha: float, z: float) -> "AlphaZ":
        """Parameters valid for ``Q`` evaluation only."""
        alpha = float(alpha)
        z = float(z)
        if not (0.0 <= alpha <= 1.0 and z > 0.0):
            raise DomainError(
                f"(alpha, z) = ({alpha}, {z}) violates 0 <= alpha <= 1, z > 0")
        obj = object.__new__(cls)
        object.__setattr__(obj, "alpha", alpha)
        object.__setattr__(obj, "z", z)
        object.__setattr__(obj, "strict", 0.0 < alpha <= z < 1.0)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("AlphaZ is immutable")

    def __repr__(self):
        return f"AlphaZ(alpha={self.alpha}, z={self.z})"

    def __eq__(self, other):
        return (isinstance(other, AlphaZ)
                and self.alpha == other.alpha and self.z == other.z)

    def __hash__(self):
        return hash((self.alpha, self.z))


def _require_strict(p: AlphaZ) -> None:
    if not p.strict:
        raise DomainError(
            f"(alpha, z) = ({p.alpha}, {p.z}) is outside the divergence "
            "domain 0 < alpha <= z < 1")


def _check_pair(a: PDMatrix, b: PDMatrix) -> tuple[PDMatrix, PDMatrix]:
    if not isinstance(a, PDMatrix):
        a = PDMatrix(a)
    if not isinstance(b, PDMatrix):
        b = PDMatrix(b)
    if a.dim != b.dim:
        raise DimensionMismatchError("dimensions do not agree")
    return a, b


def _q_inner(p: AlphaZ, a: PDMatrix, b: PDMatrix) -> np.ndarray:
    """The sandwich ``A^((1-a)/2z) B^(a/z) A^((1-a)/2z)`` before the z-power."""
    s = _hpow(a.array, (1.0 - p.alpha) / (2.0 * p.z))
    bp = _hpow(b.array, p.alpha / p.z)
    return _herm(s @ bp @ s)


def q_alpha_z(p: AlphaZ, a: PDMatrix, b: PDMatrix) -> PDMatrix:
    """The alpha-z Renyi matrix ``Q_{a,z}(A, B)``.

    For ``alpha == z`` this is the sandwiched quasi-relative entropy kernel.
    """
    a, b = _check_pair(a, b)
    return PDMatrix(_hpow(_q_inner(p, a, b), p.z))


def phi_alpha_z(p: AlphaZ, a: PDMatrix, b: PDMatrix) -> float:
    """The alpha-z Bures-Wasserstein quantum divergence.

    ``Phi_{a,z}(A, B) = tr((1-a) A + a B) - tr Q_{a,z}(A, B)``, nonnegative
    with equality iff ``A == B``.  The trace of the z-power is taken as the
    eigenvalue sum of the inner sandwich, never via a dense matrix power.
    """
    _require_strict(p)
    a, b = _check_pair(a, b)
    w = np.linalg.eigvalsh(_q_inner(p, a, b))
    tr_q = float(np.sum(w ** p.z))
    tr_lin = (1.0 - p.alpha) * float(np.trace(a.array).real) \
        + p.alpha * float(np.trace(b.array).real)
    return tr_lin - tr_q


def bures_wasserstein_distance(a: PDMatrix, b: PDMatrix) -> float:
    """Bures-Wasserstein metric
    ``d_W(A,B) = [tr((A+B)/2) - tr(A^(1/2) B A^(1/2))^(1/2)]^(1/2)``."""
    a, b = _check_pair(a, b)
    dec = a.eig
    rt = (dec.vectors * np.sqrt(dec.values)) @ np.conj(dec.vectors.T)
    w = np.linalg.eigvalsh(_herm(rt @ b.array @ rt))
    radicand = 0.5 * (float(np.trace(a.array).real)
                      + float(np.trace(b.array).real)) \
        - float(np.sum(np.sqrt(np.maximum(w, 0.0))))
    if radicand < -1e-12:
        raise NumericalFailureError(
            f"negative squared distance {radicand:.3e}", dim=a.dim)
    return float(np.sqrt(max(radicand, 0.0)))


def log_det_alpha_divergence(alpha: float, a: PDMatrix, b: PDMatrix) -> float:
    """Log-determinant alpha-divergence for ``alpha`` in (-1, 1).

    ``D(A,B) = 4/(1-alpha^2) [log det((1-alpha)/2 A + (1+alpha)/2 B)
    - log((det A)^((1-alpha)/2) (det B)^((1+alpha)/2))]``.
    """
    alpha = float(alpha)
    if not -1.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (-1, 1), got {alpha}")
    a, b = _check_pair(a, b)
    ca = 0.5 * (1.0 - alpha)
    cb = 0.5 * (1.0 + alpha)
    mix = np.linalg.eigvalsh(ca * a.array + cb * b.array)
    logdet_mix = float(np.sum(np.log(mix)))
    logdet_a = float(np.sum(np.log(a.eig.values)))
    logdet_b = float(np.sum(np.log(b.eig.values)))
    return 4.0 / (1.0 - alpha * alpha) * (
        logdet_mix - ca * logdet_a - cb * logdet_b)
