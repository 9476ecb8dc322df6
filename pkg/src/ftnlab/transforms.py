"""Fractional cosine/Hartley transform multiplexing.

The fractional cosine transform (FrCT) maps N frequency-domain amplitudes
X_k onto N time-domain samples

    x_n = sqrt(2/N) * sum_k W_k * X_k * cos(pi*alpha*(2n+1)*k / (2N)),

with W_0 = 1/sqrt(2) and W_k = 1 otherwise.  The demultiplexer applies the
transposed kernel.  At alpha = 1 this is the orthonormal Type-II DCT pair;
for alpha < 1 the subcarrier spacing is compressed by alpha and the kernel
columns are no longer orthogonal.

The fractional Hartley transform (FrHT) uses the cas kernel

    x_n = sqrt(1/N) * sum_k X_k * cas(2*pi*alpha*n*k / N),   cas t = cos t + sin t,

whose subcarrier spacing is alpha/T, i.e. twice the FrCT spacing at equal
alpha.  FrHT at alpha/2 therefore occupies the same spacing as FrCT at alpha.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import ParameterError, ShapeError


class TransformKind(enum.Enum):
    FRCT = "FrCT"
    FRHT = "FrHT"


@dataclass(frozen=True)
class TransformPlan:
    """Precomputed N x N multiplexing kernel for one (kind, n, alpha)."""

    kind: TransformKind
    n: int
    alpha: float
    kernel: np.ndarray  # kernel[n, k]; multiplex is kernel @ X

    def __post_init__(self):
        self.kernel.setflags(write=False)


def _frct_kernel(n, alpha):
    samp = np.arange(n)[:, None]
    sub = np.arange(n)[None, :]
    weight = np.where(sub == 0, 1.0 / np.sqrt(2.0), 1.0)
    return np.sqrt(2.0 / n) * weight * np.cos(
        np.pi * alpha * (2 * samp + 1) * sub / (2 * n)
    )


def _frht_kernel(n, alpha):
    samp = np.arange(n)[:, None]
    sub = np.arange(n)[None, :]
    theta = 2.0 * np.pi * alpha * samp * sub / n
    return np.sqrt(1.0 / n) * (np.cos(theta) + np.sin(theta))


def validate_size_alpha(n, alpha):
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n!r}")
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha!r}")


def make_plan(kind, n, alpha):
    """Build a :class:`TransformPlan` with a fully materialized kernel.

    Deterministic: identical arguments yield bit-identical kernels.
    """
    validate_size_alpha(n, alpha)
    if kind is TransformKind.FRCT:
        kernel = _frct_kernel(int(n), float(alpha))
    elif kind is TransformKind.FRHT:
        kernel = _frht_kernel(int(n), float(alpha))
    else:
        raise ParameterError(f"kind must be a TransformKind, got {kind!r}")
    return TransformPlan(kind=kind, n=int(n), alpha=float(alpha), kernel=kernel)


def _check_last_axis(plan, values, name):
    values = np.asarray(values, dtype=np.float64)
    if values.shape[-1] != plan.n:
        raise ShapeError(
            f"{name} last axis must have length {plan.n}, got {values.shape[-1]}"
        )
    return values


def multiplex(plan, symbols):
    """Frequency-domain symbols -> time-domain samples (kernel @ X).

    Accepts a length-N vector or an (..., N) stack of vectors.
    """
    symbols = _check_last_axis(plan, symbols, "symbols")
    return symbols @ plan.kernel.T


def demultiplex(plan, samples):
    """Time-domain samples -> frequency-domain outputs (kernel.T @ x).

    For alpha < 1 the round trip demultiplex(multiplex(v)) equals C @ v,
    where C is the subcarrier correlation matrix.
    """
    samples = _check_last_axis(plan, samples, "samples")
    return samples @ plan.kernel
