"""Finitely supported real sequences, l^p norms and Hölder duality.

Two indexing conventions coexist: the bilinear-form world is 1-based and the
Taylor-coefficient world is 0-based. A `Sequence` carries its start index
explicitly; `kp_to_lp_isometry` is the only operation that re-indexes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError, DivergentTailError, DomainError, InvalidInputError

# Exponents of the form 1/q - 1/p or (p-2)/p are snapped to exactly 0 below
# this threshold so that p = 2 reduces bit-for-bit to the unweighted case.
EXPONENT_SNAP = 1e-15


def snap_exponent(e: float) -> float:
    return 0.0 if abs(e) < EXPONENT_SNAP else e


@dataclass(frozen=True)
class Sequence:
    """A finitely supported real sequence.

    ``values[k]`` is the entry at index ``start_index + k``; entries beyond
    the stored block are zero.
    """

    start_index: int
    values: tuple[float, ...]

    def __post_init__(self):
        if self.start_index not in (0, 1):
            raise InvalidInputError(f"start_index must be 0 or 1, got {self.start_index}")
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for v in vals:
            if not math.isfinite(v):
                raise InvalidInputError(f"non-finite entry {v!r}")

    def __len__(self) -> int:
        return len(self.values)

    def indices(self) -> range:
        return range(self.start_index, self.start_index + len(self.values))

    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.values)

    def require_nonnegative(self, what: str = "sequence") -> None:
        for i, v in zip(self.indices(), self.values):
            if v < 0.0:
                raise InvalidInputError(f"{what} has negative entry {v} at index {i}")


@dataclass(frozen=True)
class ExponentPair:
    """Conjugate exponents with 1/p + 1/q = 1."""

    p: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and 1.0 < self.p):
            raise DomainError(f"p must lie in (1, inf), got {self.p}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-14:
            raise DomainError(f"({self.p}, {self.q}) are not conjugate")


def conjugate(p: float) -> ExponentPair:
    """Conjugate exponent pair (p, p/(p-1))."""
    if not math.isfinite(p) or p <= 1.0:
        raise DomainError(f"p must lie in (1, inf), got {p}")
    return ExponentPair(p, p / (p - 1.0))


def lp_norm(s: Sequence, p: float) -> float:
    """(sum |s_m|^p)^(1/p); exact finite sum via compensated accumulation."""
    if not math.isfinite(p) or p < 1.0:
        raise DomainError(f"p must be >= 1, got {p}")
    total = math.fsum(abs(v) ** p for v in s.values)
    return total ** (1.0 / p)


def dual_align(c: Sequence, p: float) -> Sequence:
    """Unit l^q vector attaining Hölder equality against nonnegative c.

    Returns b with ||b||_q = 1 and sum c_n b_n = ||c||_p, via
    b_n = c_n^(p-1) / ||c||_p^(p-1).
    """
    pq = conjugate(p)
    c.require_nonnegative("dual_align input")
    if c.is_zero():
        raise DegenerateInputError("cannot align against the zero sequence")
    norm = lp_norm(c, pq.p)
    scale = norm ** (pq.p - 1.0)
    return Sequence(c.start_index, tuple(v ** (pq.p - 1.0) / scale for v in c.values))


def kp_to_lp_isometry(a: Sequence, p: float) -> Sequence:
    """Map Taylor coefficients (start 0) to the 1-based l^p sequence
    A_m = a_m (m+1)^((p-2)/p), so that the l^p norm of the output equals the
    K^p norm of the input term by term."""
    conjugate(p)
    if a.start_index != 0:
        raise InvalidInputError("isometry input must be 0-based")
    e = snap_exponent((p - 2.0) / p)
    return Sequence(1, tuple(v * (m + 1) ** e for m, v in enumerate(a.values)))


def lp_to_kp_isometry(A: Sequence, p: float) -> Sequence:
    """Inverse of `kp_to_lp_isometry`: 1-based l^p sequence back to 0-based
    Taylor coefficients."""
    conjugate(p)
    if A.start_index != 1:
        raise InvalidInputError("inverse isometry input must be 1-based")
    e = snap_exponent((p - 2.0) / p)
    return Sequence(0, tuple(v / (m + 1) ** e for m, v in enumerate(A.values)))


def power_tail_bound(M: int, s: float) -> float:
    """Upper bound M^(1-s)/(s-1) for the tail sum_{m>M} m^(-s), by the
    integral test."""
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    if not math.isfinite(s) or s <= 1.0:
        raise DivergentTailError(f"tail diverges for s = {s}")
    return M ** (1.0 - s) / (s - 1.0)


def write_sequence(path, s: Sequence) -> None:
    """Write the plain-text sequence format: a `# start_index=<0|1>` header
    followed by `index,value` lines."""
    with open(path, "w") as fh:
        fh.write(f"# start_index={s.start_index}\n")
        for i, v in zip(s.indices(), s.values):
            fh.write(f"{i},{v!r}\n")


def read_sequence(path) -> Sequence:
    """Read the format written by `write_sequence`."""
    start = None
    entries = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("start_index="):
                    start = int(body.split("=", 1)[1])
                continue
            idx_text, val_text = line.split(",", 1)
            entries[int(idx_text)] = float(val_text)
    if start is None:
        raise InvalidInputError(f"{path}: missing '# start_index=' header")
    if not entries:
        return Sequence(start, ())
    top = max(entries)
    if min(entries) < start:
        raise InvalidInputError(f"{path}: entry index below start_index {start}")
    values = [entries.get(i, 0.0) for i in range(start, top + 1)]
    return Sequence(start, tuple(values))
