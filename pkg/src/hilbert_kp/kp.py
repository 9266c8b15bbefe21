"""The coefficient space K^p: norms, the Hilbert matrix action on Taylor
coefficients, and the embedding into K^1.

Only coefficient magnitudes are modeled; every quantity in scope depends on
|a_m| and nonnegative test sequences only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .sequences import Sequence, conjugate

ZETA_2 = math.pi ** 2 / 6.0


@dataclass(frozen=True)
class TaylorFunction:
    """Finitely supported Taylor coefficient magnitudes, 0-based."""

    coeffs: Sequence

    def __post_init__(self):
        if self.coeffs.start_index != 0:
            raise DomainError("Taylor coefficients must be 0-based")

    @staticmethod
    def from_values(values) -> "TaylorFunction":
        return TaylorFunction(Sequence(0, tuple(values)))


def kp_norm(f: TaylorFunction, p: float) -> float:
    """(sum (m+1)^(p-2) |a_m|^p)^(1/p)."""
    if p <= 0.0:
        raise DomainError(f"p must be positive, got {p}")
    total = math.fsum((m + 1) ** (p - 2.0) * abs(v) ** p
                      for m, v in enumerate(f.coeffs.values))
    return total ** (1.0 / p)


def hilbert_apply(f: TaylorFunction, n_max: int) -> TaylorFunction:
    """Coefficients c_n = sum_m a_m/(m+n+1) of the Hilbert matrix image,
    0 <= n <= n_max."""
    if n_max < 0:
        raise ParameterError(f"n_max must be >= 0, got {n_max}")
    a = np.asarray(f.coeffs.values, dtype=float)
    if len(a) == 0:
        return TaylorFunction(Sequence(0, (0.0,) * (n_max + 1)))
    m = np.nonzero(a)[0]
    if len(m) == 0:
        return TaylorFunction(Sequence(0, (0.0,) * (n_max + 1)))
    n = np.arange(n_max + 1)
    c = a[m] @ (1.0 / (m[:, None] + n[None, :] + 1.0))
    return TaylorFunction(Sequence(0, tuple(c)))


def k1_embedding_bound(f: TaylorFunction, p: float) -> tuple[float, float]:
    """Both sides of the K^p -> K^1 embedding estimate:
    lhs = sum |a_m|/(m+1), rhs = zeta(2)^(1/q) * ||f||_{K^p}."""
    pq = conjugate(p)
    lhs = math.fsum(abs(v) / (m + 1) for m, v in enumerate(f.coeffs.values))
    rhs = ZETA_2 ** (1.0 / pq.q) * kp_norm(f, p)
    return lhs, rhs
