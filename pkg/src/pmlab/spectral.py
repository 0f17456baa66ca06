"""Extended-precision spectra of the collocation matrix and its symmetric part.

Spectral values here are diagnostics: any claim about a negative eigenvalue
is certified separately by exact inertia counts in :mod:`pmlab.exactla`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

import mpmath

from .combinatorics import GammaSet
from .errors import InvalidDegreeError, OutOfRangeError
from .matrices import block_factorize, full_M
from .verify import FAIL, PASS, WARNING, VerificationReport, _Timer

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 1e-6
DEFAULT_DPS = 32
MAX_DEGREE = 25
PAIRING_NOTE = (
    "eigenvalues of consecutive degrees are paired by the rank of their "
    "distinct clustered values"
)


@dataclass
class SpectrumReport:
    degree: int
    eigenvalues: list  # [(mpf value, multiplicity)], strictly decreasing
    symmetrized: bool
    dps: int = DEFAULT_DPS
    threshold: float = DEFAULT_THRESHOLD
    warnings: list = field(default_factory=list)

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.eigenvalues]

    @property
    def values(self) -> list:
        return [v for v, _ in self.eigenvalues]

    def to_dict(self, digits: int = 16) -> dict:
        return {
            "degree": self.degree,
            "symmetrized": self.symmetrized,
            "precision": {"dps": self.dps, "digits": digits},
            "threshold": self.threshold,
            "eigenvalues": [
                {"value": mpmath.nstr(v, digits), "multiplicity": m}
                for v, m in self.eigenvalues
            ],
            "warnings": list(self.warnings),
        }

    def csv_rows(self, digits: int = 16):
        for v, m in self.eigenvalues:
            yield (self.degree, mpmath.nstr(v, digits), m)


def _to_mp(block) -> mpmath.matrix:
    scale = mpmath.mpf(block.denominator)
    return mpmath.matrix([[mpmath.mpf(x) / scale for x in r] for r in block.entries])


def cluster(values, threshold=DEFAULT_THRESHOLD):
    """Group sorted-descending values whose relative gap is within ``threshold``.

    Returns ``(clusters, ambiguous)`` where each cluster is ``(mean, count)``
    and ``ambiguous`` lists neighbouring cluster pairs closer than ten times
    the threshold.
    """
    values = sorted(values, reverse=True)
    groups = []
    for v in values:
        if groups:
            last = groups[-1][-1]
            scale = max(abs(v), abs(last))
            if scale == 0 or abs(last - v) <= threshold * scale:
                groups[-1].append(v)
                continue
        groups.append([v])
    clusters = [(mpmath.fsum(g) / len(g), len(g)) for g in groups]
    ambiguous = []
    for (a, _), (b, _) in zip(clusters, clusters[1:]):
        scale = max(abs(a), abs(b))
        if abs(a - b) <= 10 * threshold * scale:
            ambiguous.append((a, b))
    return clusters, ambiguous


def spectrum(d: int, symmetrized: bool = False, threshold: float = DEFAULT_THRESHOLD, dps: int = DEFAULT_DPS) -> SpectrumReport:
    """Clustered eigenvalues of ``M_{I_d}`` (or ``M + M^T``), largest first.

    The nonsymmetric matrix is block lower triangular, so its spectrum is
    the union of the diagonal blocks' spectra; each block goes through the
    general extended-precision eigensolver and imaginary parts are checked
    afterwards.  The symmetric part uses the symmetric solver.
    """
    if not isinstance(d, int) or d < 1:
        raise InvalidDegreeError(f"degree must be a positive integer, got {d!r}")
    if d > MAX_DEGREE:
        raise OutOfRangeError(f"spectra are supported for d <= {MAX_DEGREE}")
    notes = []
    with mpmath.workdps(dps):
        if symmetrized:
            M = full_M(d).symmetrized()
            vals = list(mpmath.eigsy(_to_mp(M), eigvals_only=True))
        else:
            vals = []
            bf = block_factorize(GammaSet.full(d))
            norm = mpmath.mpf(0)
            raw = []
            for block in bf.blocks:
                A = _to_mp(block)
                norm = max(norm, mpmath.mnorm(A, 1))
                if block.n == 1:
                    raw.append(A[0, 0])
                else:
                    raw.extend(mpmath.eig(A, left=False, right=False))
            limit = norm * mpmath.mpf(10) ** (-min(20, dps - 10))
            for z in raw:
                z = mpmath.mpc(z)
                if abs(z.imag) > limit:
                    notes.append(f"complex eigenvalue {mpmath.nstr(z, 10)}")
                vals.append(z.real)
        clusters, ambiguous = cluster(vals, threshold)
    for a, b in ambiguous:
        notes.append(
            f"ambiguous multiplicity: clusters {mpmath.nstr(a, 10)} and {mpmath.nstr(b, 10)} "
            "are within ten times the threshold"
        )
    report = SpectrumReport(d, clusters, symmetrized, dps, threshold, notes)
    if sum(report.multiplicities) != comb(d + 2, 2):  # pragma: no cover
        raise AssertionError("multiplicities do not add up to the matrix size")
    return report


def expected_multiplicities(d: int) -> list[int]:
    return [3] if d == 1 else [3] + list(range(3, d + 2))


def check_interlacing(d_max: int, threshold: float = DEFAULT_THRESHOLD, dps: int = DEFAULT_DPS, tol: float = 1e-12) -> VerificationReport:
    """Distinct-eigenvalue structure and interlacing across degrees ``1..d_max``.

    For every ``d < d_max`` the spectrum must have ``d`` distinct values with
    multiplicities ``3, 3, 4, ..., d+1`` and satisfy
    ``lam[d+1][i] >= lam[d][i] >= lam[d+1][i+1]`` (up to ``tol``, relative).
    """
    if not isinstance(d_max, int) or d_max < 2:
        raise InvalidDegreeError(f"maximum degree must be at least 2, got {d_max!r}")
    with _Timer() as timer:
        spectra = {d: spectrum(d, False, threshold, dps) for d in range(1, d_max + 1)}
        per_degree = []
        witnesses = []
        warn = False
        for d in range(1, d_max):
            cur, nxt = spectra[d].values, spectra[d + 1].values
            mult_ok = spectra[d].multiplicities == expected_multiplicities(d)
            real_pos = all(v > 0 for v in cur)
            chain_ok = len(nxt) == len(cur) + 1 and all(
                nxt[i] >= cur[i] * (1 - tol) and cur[i] >= nxt[i + 1] * (1 - tol)
                for i in range(len(cur))
            )
            ok = mult_ok and chain_ok and real_pos
            if spectra[d].warnings:
                warn = True
            per_degree.append(
                {
                    "degree": d,
                    "distinct": len(cur),
                    "multiplicities": spectra[d].multiplicities,
                    "multiplicities_ok": mult_ok,
                    "interlacing_ok": chain_ok,
                    "status": PASS if ok else FAIL,
                }
            )
            if not ok:
                witnesses.append((GammaSet.full(d), mpmath.nstr(cur[0], 10)))
        plot = [
            [d, mpmath.nstr(v, 16), m]
            for d in range(1, d_max + 1)
            for v, m in spectra[d].eigenvalues
        ]
        status = FAIL if witnesses else (WARNING if warn else PASS)
    return VerificationReport(
        "interlace",
        d_max,
        status,
        witnesses,
        timer.ms,
        PAIRING_NOTE,
        {"per_degree": per_degree, "plot": plot, "columns": ["d", "eigenvalue", "multiplicity"]},
    )
