"""Gray-code enumeration of principal minors, optionally across processes.

Subsets of an ``m``-element index list are visited by Gray-code rank
``1 .. 2**m - 1``.  Work is cut into contiguous rank ranges (the high-order
bits of the rank), every range is scanned by the active kernel and the
partial results are folded in rank order, so the outcome does not depend on
the number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels

DEFAULT_BUDGET = 2**15
LARGE_BUDGET = 2**21
NONPOSITIVE_CAP = 16


def gray(rank: int) -> int:
    return rank ^ (rank >> 1)


def gray_rank(mask: int) -> int:
    r = 0
    while mask:
        r ^= mask
        mask >>= 1
    return r


def default_workers() -> int:
    env = os.environ.get("PMLAB_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class ScanResult:
    count: int = 0
    min_det: int | None = None
    min_mask: int = -1
    nonpositive: list[tuple[int, int]] = field(default_factory=list)
    min_scaled: Fraction | None = None
    min_scaled_mask: int = -1

    @property
    def all_positive(self) -> bool:
        return self.count > 0 and not self.nonpositive and self.min_det > 0

    def merge(self, other: ScanResult) -> ScanResult:
        """Fold a later rank range into this one (ties keep the earlier rank)."""
        self.count += other.count
        if other.min_det is not None and (self.min_det is None or other.min_det < self.min_det):
            self.min_det, self.min_mask = other.min_det, other.min_mask
        room = NONPOSITIVE_CAP - len(self.nonpositive)
        self.nonpositive.extend(other.nonpositive[:room])
        if other.min_scaled is not None and (
            self.min_scaled is None or other.min_scaled < self.min_scaled
        ):
            self.min_scaled, self.min_scaled_mask = other.min_scaled, other.min_scaled_mask
        return self


def _scan_range(args) -> ScanResult:
    rows, lo, hi, weights, base = args
    count, mdet, mmask, nonpos, num, den, smask = kernels.scan_minors(
        rows, lo, hi, weights, base, NONPOSITIVE_CAP
    )
    return ScanResult(
        count=count,
        min_det=None if mdet is None else int(mdet),
        min_mask=int(mmask),
        nonpositive=[(int(g), int(v)) for g, v in nonpos],
        min_scaled=None if num is None else Fraction(int(num), int(den)),
        min_scaled_mask=int(smask),
    )


def scan_principal_minors(
    rows,
    weights=None,
    base=1,
    workers: int | None = None,
    chunks: int | None = None,
) -> ScanResult:
    """Scan every nonempty principal minor of the integer matrix ``rows``.

    With ``weights`` the scan also tracks the minimum of
    ``det * prod(weights[subset]) / base**|subset|``.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    total = 2**m
    workers = default_workers() if workers is None else max(1, workers)
    if chunks is None:
        chunks = 1 if workers == 1 or total < 2**10 else workers * 4
    chunks = max(1, min(chunks, total))
    bounds = [total * c // chunks for c in range(chunks + 1)]
    tasks = [(rows, bounds[c], bounds[c + 1], weights, base) for c in range(chunks)]
    if workers == 1 or chunks == 1:
        parts = map(_scan_range, tasks)
        results = list(parts)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_range, tasks))
    out = ScanResult()
    for r in results:
        out.merge(r)
    return out
