"""Exact linear algebra on integer matrices.

Determinants, leading principal minors, inertia at a rational shift and
linear solves all run fraction-free on integers (see :mod:`pmlab.kernels`).
Rational inputs are scaled to integers before elimination.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import kernels
from .errors import (
    NoConvergenceError,
    ShapeError,
    ShiftCollisionError,
    SingularMatrixError,
    SymmetryError,
)
from .matrices import ExactMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class InertiaTriple:
    n_pos: int
    n_zero: int
    n_neg: int

    @property
    def n(self) -> int:
        return self.n_pos + self.n_zero + self.n_neg

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_zero, self.n_neg)


@dataclass(frozen=True)
class MinorSequence:
    minors: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.minors)

    def __getitem__(self, k):
        return self.minors[k]

    @property
    def all_positive(self) -> bool:
        return all(m > 0 for m in self.minors)

    def first_nonpositive(self) -> int | None:
        """Order (1-based) of the first minor that is not positive."""
        for k, m in enumerate(self.minors, start=1):
            if m <= 0:
                return k
        return None


def _as_rows(A) -> list[list[int]]:
    if isinstance(A, ExactMatrix):
        return A.rows()
    rows = [list(r) for r in A]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError(f"matrix must be square, got {n} rows of lengths {sorted({len(r) for r in rows})}")
    return rows


def _check_symmetric(rows) -> None:
    n = len(rows)
    for r in range(n):
        for c in range(r + 1, n):
            if rows[r][c] != rows[c][r]:
                raise SymmetryError(f"matrix is not symmetric at ({r}, {c})")


def bareiss_det(A) -> int:
    """Exact determinant of a square integer matrix."""
    return int(kernels.det(kernels.coerce(_as_rows(A))))


def leading_minors(A) -> MinorSequence:
    """All leading principal minors of a symmetric integer matrix."""
    rows = _as_rows(A)
    _check_symmetric(rows)
    work = kernels.coerce(rows)
    minors = [int(m) for m in kernels.leading_minors(work)]
    # A zero minor stops pivot-free elimination; finish order by order.
    for k in range(len(minors) + 1, len(rows) + 1):
        minors.append(int(kernels.det([r[:k] for r in work[:k]])))
    return MinorSequence(tuple(minors))


def _shifted(rows, t: Fraction) -> list[list[int]]:
    p, q = t.numerator, t.denominator
    out = [[q * x for x in r] for r in rows]
    for i in range(len(out)):
        out[i][i] -= p
    return out


def inertia_at_shift(A, t=0) -> InertiaTriple:
    """Eigenvalue counts of ``A - t I`` above, at and below zero.

    ``t = p/q`` is applied as ``q A - p I`` so everything stays integral.
    Raises :class:`ShiftCollisionError` when elimination meets a zero pivot it
    cannot step around.
    """
    rows = _as_rows(A)
    _check_symmetric(rows)
    t = Fraction(t)
    result, step = kernels.inertia(kernels.coerce(_shifted(rows, t)))
    if result is None:
        raise ShiftCollisionError(t, step)
    return InertiaTriple(*(int(x) for x in result))


def _inertia_retry(rows, t: Fraction, attempts: int = 8) -> tuple[InertiaTriple, Fraction]:
    for attempt in range(attempts):
        try:
            return inertia_at_shift(rows, t), t
        except ShiftCollisionError:
            t = t + Fraction(1, 2 ** (64 + attempt))
            log.debug("shift collision, retrying at %s", t)
    raise ShiftCollisionError(t, -1)


def gershgorin_radius(rows) -> int:
    return max((sum(abs(x) for x in r) for r in rows), default=0)


def _dyadic(x: float, bits: int) -> Fraction:
    return Fraction(round(x * 2**bits), 2**bits)


def certified_min_eigenvalue(A, abs_tol, max_iter: int = 200, guess=None) -> tuple[Fraction, Fraction]:
    """Bracket ``[lo, hi]`` around the smallest eigenvalue of symmetric ``A``.

    Invariants kept at every step, each certified by an exact inertia count:
    no eigenvalue lies at or below ``lo`` and at least one lies at or below
    ``hi``.  The start is the Gershgorin interval.  Probes bisect the bracket;
    if a floating ``guess`` is supplied, the first probes are placed at
    ``guess +- abs_tol/2`` (rounded to dyadic rationals) instead, which usually closes the bracket in two
    exact inertia counts.
    """
    rows = _as_rows(A)
    _check_symmetric(rows)
    tol = Fraction(abs_tol)
    if tol <= 0:
        raise ValueError("abs_tol must be positive")
    R = gershgorin_radius(rows)
    lo, hi = Fraction(-R - 1), Fraction(R + 1)

    probes = []
    if guess is not None:
        # dyadic probes with denominators no finer than ~tol/256; the
        # half-width 127/256 tol leaves room for the rounding
        bits = max(0, 8 - math.floor(math.log2(tol)))
        half = float(tol) * 127 / 256
        probes = [_dyadic(float(guess) - half, bits), _dyadic(float(guess) + half, bits)]

    for _ in range(max_iter):
        if hi - lo <= tol:
            return lo, hi
        while probes and not (lo < probes[0] < hi):
            probes.pop(0)
        t = probes.pop(0) if probes else (lo + hi) / 2
        inertia, t = _inertia_retry(rows, t)
        if inertia.n_neg == 0 and inertia.n_zero == 0:
            lo = t
        elif inertia.n_neg == 0:
            return t, t
        else:
            hi = t
    if hi - lo <= tol:
        return lo, hi
    raise NoConvergenceError(f"bracket width {float(hi - lo)} after {max_iter} steps")


def exact_solve(A, b) -> list[Fraction]:
    """Solve ``A x = b`` exactly; ``A`` may be an :class:`ExactMatrix` or rational rows."""
    if isinstance(A, ExactMatrix):
        rows, scale = A.rows(), Fraction(A.denominator)
    else:
        frac = [[Fraction(x) for x in r] for r in _as_rows(A)]
        den = lcm(*(x.denominator for r in frac for x in r)) if frac else 1
        rows = [[int(x * den) for x in r] for r in frac]
        scale = Fraction(den)
    n = len(rows)
    b = [Fraction(x) for x in b]
    if len(b) != n:
        raise ShapeError(f"right-hand side has length {len(b)}, expected {n}")
    if n == 0:
        return []
    bden = lcm(*(x.denominator for x in b))
    rhs = [int(x * bden) for x in b]
    out = kernels.solve(kernels.coerce(rows), rhs)
    if out is None:
        raise SingularMatrixError("matrix is singular")
    nums, denom = out
    # (rows / scale) x = b  <=>  rows x = scale * b
    return [Fraction(int(x), int(denom)) * scale / bden for x in nums]


def residual(A, x, b) -> list[Fraction]:
    M = A.to_fractions() if isinstance(A, ExactMatrix) else [[Fraction(v) for v in r] for r in A]
    return [sum((a * xi for a, xi in zip(r, x)), Fraction(0)) - Fraction(bi) for r, bi in zip(M, b)]
