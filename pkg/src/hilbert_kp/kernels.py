"""Hilbert-type kernels, bilinear forms and operator application.

Variants:

* ``CLASSICAL``        1/(m+n-1)
* ``WEIGHTED_MAIN``    (n/m)^(1/q-1/p) / (m+n-1)
* ``YANG_SHIFT``       (n/m)^(1/q-1/p) / (m+n)
* ``YANG_HALF_SHIFT``  ((n-1/2)/(m-1/2))^(1/q-1/p) / (m+n-1)
* ``ALPHA_ROW``        (m/n)^(1/p) / ((m+n)^(1-alpha) (m+n-1)^alpha), the
  row summand of the interpolated one-row bound.

All kernel values are strictly positive for m, n >= 1, and every weighted
variant collapses to the classical kernel at p = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, InvalidInputError, ParameterError
from .quadrature import QuadratureResult, adaptive_integrate
from .sequences import Sequence, conjugate, snap_exponent


class Variant(Enum):
    CLASSICAL = "Classical"
    WEIGHTED_MAIN = "WeightedMain"
    YANG_SHIFT = "YangShift"
    YANG_HALF_SHIFT = "YangHalfShift"
    ALPHA_ROW = "AlphaRow"


@dataclass(frozen=True)
class KernelSpec:
    variant: Variant
    p: float = 2.0
    alpha: float = 0.0

    def __post_init__(self):
        if self.variant is not Variant.CLASSICAL:
            conjugate(self.p)
        if self.variant is Variant.ALPHA_ROW and not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")

    def weight_exponent(self) -> float:
        """1/q - 1/p, snapped to exactly 0 at p = 2."""
        pq = conjugate(self.p)
        return snap_exponent(1.0 / pq.q - 1.0 / pq.p)

    def serialize(self) -> str:
        return f"{self.variant.value},{self.p},{self.alpha}"


def _pow_ratio(num: np.ndarray, den: np.ndarray, e: float) -> np.ndarray:
    """(num/den)^e as exp(e (log num - log den)); uniform relative error and
    no overflow for large indices."""
    if e == 0.0:
        return np.ones(np.broadcast_shapes(num.shape, den.shape))
    return np.exp(e * (np.log(num) - np.log(den)))


def kernel_matrix(spec: KernelSpec, m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Kernel values on the index grid m[:, None] x n[None, :]."""
    m = np.asarray(m, dtype=float)[:, None]
    n = np.asarray(n, dtype=float)[None, :]
    if np.any(m < 1) or np.any(n < 1):
        raise InvalidInputError("kernel indices must be >= 1")
    if spec.variant is Variant.CLASSICAL:
        return 1.0 / (m + n - 1.0)
    if spec.variant is Variant.WEIGHTED_MAIN:
        return _pow_ratio(n, m, spec.weight_exponent()) / (m + n - 1.0)
    if spec.variant is Variant.YANG_SHIFT:
        return _pow_ratio(n, m, spec.weight_exponent()) / (m + n)
    if spec.variant is Variant.YANG_HALF_SHIFT:
        return _pow_ratio(n - 0.5, m - 0.5, spec.weight_exponent()) / (m + n - 1.0)
    if spec.variant is Variant.ALPHA_ROW:
        s = m + n
        return (_pow_ratio(m, n, 1.0 / spec.p)
                / (s ** (1.0 - spec.alpha) * (s - 1.0) ** spec.alpha))
    raise AssertionError(spec.variant)


def kernel_value(spec: KernelSpec, m: int, n: int) -> float:
    """The coefficient multiplying a_m b_n."""
    if m < 1 or n < 1:
        raise InvalidInputError(f"kernel indices must be >= 1, got ({m}, {n})")
    return float(kernel_matrix(spec, np.array([m]), np.array([n]))[0, 0])


def _support(s: Sequence) -> tuple[np.ndarray, np.ndarray]:
    idx = np.array([i for i, v in zip(s.indices(), s.values) if v != 0.0], dtype=float)
    val = np.array([v for v in s.values if v != 0.0], dtype=float)
    return idx, val


def bilinear_form(spec: KernelSpec, a: Sequence, b: Sequence) -> float:
    """sum_{m,n} k(m,n) a_m b_n, exact over the finite supports."""
    if a.start_index != 1 or b.start_index != 1:
        raise InvalidInputError("bilinear form expects 1-based sequences")
    a.require_nonnegative("a")
    b.require_nonnegative("b")
    mi, av = _support(a)
    ni, bv = _support(b)
    if len(mi) == 0 or len(ni) == 0:
        return 0.0
    rows = kernel_matrix(spec, mi, ni) @ bv
    return math.fsum(av * rows)


def apply_operator(spec: KernelSpec, a: Sequence, n_max: int) -> Sequence:
    """c_n = sum_m k(m,n) a_m for 1 <= n <= n_max."""
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    if a.start_index != 1:
        raise InvalidInputError("apply_operator expects a 1-based sequence")
    a.require_nonnegative("a")
    mi, av = _support(a)
    if len(mi) == 0:
        return Sequence(1, (0.0,) * n_max)
    out = av @ kernel_matrix(spec, mi, np.arange(1, n_max + 1))
    return Sequence(1, tuple(out))


def row_sum_alpha(m: int, p: float, alpha: float, tol: float = 1e-9,
                  block: int = 65536, max_terms: int = 1 << 26) -> QuadratureResult:
    """The infinite row sum  sum_n (m/n)^(1/p) / ((m+n)^(1-alpha)(m+n-1)^alpha)
    with a certified remainder <= tol.

    The summand is decreasing in n, so after summing n <= N the tail is
    bracketed by the integrals over [N+1, inf) and [N, inf); the reported
    remainder covers the bracket width plus the quadrature budget.
    """
    if m < 1:
        raise InvalidInputError(f"m must be >= 1, got {m}")
    conjugate(p)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    if tol <= 0.0:
        raise ParameterError(f"tol must be positive, got {tol}")

    def term(n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        s = m + n
        return (np.exp((1.0 / p) * (math.log(m) - np.log(n)))
                / (s ** (1.0 - alpha) * (s - 1.0) ** alpha))

    partial = []
    n0 = 1
    while True:
        n = np.arange(n0, n0 + block)
        vals = term(n)
        partial.append(math.fsum(vals))
        n0 += block
        last = float(vals[-1])
        if last <= tol:
            break
        if n0 > max_terms:
            raise ParameterError(
                f"row sum for m={m}, p={p} needs more than {max_terms} terms at tol={tol}")
    N = n0 - 1

    def tail_integrand(v: np.ndarray, lo: float) -> np.ndarray:
        # t = lo/v maps [lo, inf) to (0, 1]
        t = lo / v
        return term(t) * lo / v ** 2

    quad_tol = min(tol, 1e-12 * max(1.0, sum(partial)))
    up = adaptive_integrate(lambda v: tail_integrand(v, N), 0.0, 1.0, quad_tol,
                            singularity=("lo", 1.0 - 1.0 / p))
    lo_ = adaptive_integrate(lambda v: tail_integrand(v, N + 1), 0.0, 1.0, quad_tol,
                             singularity=("lo", 1.0 - 1.0 / p))
    # sum_{n>N} term(n) lies in [lo_.value, up.value]
    tail_mid = 0.5 * (up.value + lo_.value)
    tail_err = 0.5 * (up.value - lo_.value) + up.error_estimate + lo_.error_estimate
    return QuadratureResult(math.fsum(partial) + tail_mid, abs(tail_err),
                            up.subdivisions + lo_.subdivisions)
