"""Checks of the positivity results and conjectures on the collocation matrices.

Every engine returns a :class:`VerificationReport` (or a small result record)
whose exact numbers are kept as Python integers/fractions and serialized as
decimal strings.
"""

from __future__ import annotations

import logging
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, prod

import numpy as np

from . import kernels
from .combinatorics import (
    EDGES,
    GammaSet,
    as_composition,
    compositions,
    compositions_b,
    epsilon_set,
)
from .errors import (
    EnumerationBudgetError,
    InvalidArgumentError,
    InvalidDegreeError,
    OutOfRangeError,
)
from .exactla import certified_min_eigenvalue, exact_solve, inertia_at_shift, leading_minors
from .matrices import (
    block_factorize,
    build_M,
    build_N,
    full_M,
    line_config_reduce,
    multi_power,
    multinomial,
)
from .subsets import DEFAULT_BUDGET, LARGE_BUDGET, scan_principal_minors

log = logging.getLogger(__name__)

PASS, FAIL, WARNING = "pass", "fail", "warning"

PD_MAX_DEGREE = 18
PD_EXACT_DEGREE = 16


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class VerificationReport:
    check: str
    degree: int | None
    status: str
    witnesses: list[tuple[GammaSet, str]] = field(default_factory=list)
    elapsed_ms: float = 0.0
    notes: str = ""
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, WARNING):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError("a failing report must carry at least one witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "degree": self.degree,
            "status": self.status,
            "witnesses": [
                {"gamma": g.to_json(), "value": v} for g, v in self.witnesses
            ],
            "elapsed_ms": round(self.elapsed_ms, 3),
            "notes": self.notes,
            "details": self.details,
        }


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0


def _check_degree(d, hi=None):
    if not isinstance(d, int) or d < 1:
        raise InvalidDegreeError(f"degree must be a positive integer, got {d!r}")
    if hi is not None and d > hi:
        raise OutOfRangeError(f"degree {d} is outside the validated range 1..{hi}")


def _scaled_symmetric(M) -> list[list[int]]:
    e = M.entries
    n = M.n
    return [[e[r][c] + e[c][r] for c in range(n)] for r in range(n)]


# --------------------------------------------------------------------------
# positive definiteness of M + M^T


def verify_pd(d: int, rel_tol: float = 1e-9) -> VerificationReport:
    """Certify ``M_{I_d} + M_{I_d}^T`` positive definite (or explain why not).

    Degrees up to 16: Sylvester minors of ``d**d (M + M^T)``.  Degree 17:
    the full matrix is indefinite, so the interior block is certified
    instead and the full inertia is reported.  Degree 18: the smallest
    eigenvalue is bracketed below zero and the report fails.
    """
    _check_degree(d, PD_MAX_DEGREE)
    with _Timer() as timer:
        M = full_M(d)
        S = _scaled_symmetric(M)
        details = {"size": M.n, "scale": f"{d}^{d}"}
        witnesses = []
        notes = ""
        if d <= PD_EXACT_DEGREE:
            minors = leading_minors(S)
            k = minors.first_nonpositive()
            details["route"] = "leading-minors"
            details["positive_minors"] = sum(1 for m in minors.minors if m > 0)
            details["last_minor_bits"] = abs(minors[-1]).bit_length()
            if k is None:
                status = PASS
            else:
                status = FAIL
                g = GammaSet(d, M.gamma.members[:k])
                witnesses.append((g, str(minors[k - 1])))
        elif d == 17:
            inertia = inertia_at_shift(S, 0)
            bf = block_factorize(M.gamma)
            inner = bf.blocks[-1]
            minors = leading_minors(_scaled_symmetric(inner))
            k = minors.first_nonpositive()
            details["route"] = "interior-block"
            details["full_inertia"] = list(inertia.as_tuple())
            details["interior_size"] = inner.n
            details["interior_positive_minors"] = sum(1 for m in minors.minors if m > 0)
            notes = (
                "vertex and edge blocks are P-matrices (univariate collocation "
                "blocks are totally nonnegative); interior block symmetric part "
                "certified positive definite"
            )
            if k is None:
                status = PASS
            else:
                status = FAIL
                witnesses.append((GammaSet(d, inner.gamma.members[:k]), str(minors[k - 1])))
        else:
            guess = float(np.linalg.eigvalsh(np.array(S, dtype=float))[0])
            R = max(sum(abs(x) for x in r) for r in S)
            tol = Fraction(str(rel_tol)) * R
            lo, hi = certified_min_eigenvalue(S, tol, guess=guess)
            scale = d**d
            lo_m, hi_m = lo / scale, hi / scale
            details["route"] = "certified-min-eigenvalue"
            details["lambda_min_bracket"] = [rational_str(lo_m), rational_str(hi_m)]
            details["lambda_min_bracket_float"] = [float(lo_m), float(hi_m)]
            if hi < 0:
                status = FAIL
                witnesses.append((M.gamma, f"[{rational_str(lo_m)}, {rational_str(hi_m)}]"))
                notes = "M + M^T has a certified negative eigenvalue"
            else:
                status = WARNING
                notes = "bracket does not exclude zero"
    return VerificationReport("pd", d, status, witnesses, timer.ms, notes, details)


# --------------------------------------------------------------------------
# exhaustive principal minors


def _budget_limit(budget: str) -> int:
    if budget == "default":
        return DEFAULT_BUDGET - 1
    if budget == "large":
        return LARGE_BUDGET - 1
    raise InvalidArgumentError(f"budget must be 'default' or 'large', got {budget!r}")


def _part_rows(gamma: GammaSet):
    N = build_N(gamma)
    return kernels.coerce(N.entries)


def _scan_part(gamma: GammaSet, workers, with_m=False):
    d = gamma.degree
    weights = [multinomial(d, c) for c in gamma] if with_m else None
    return scan_principal_minors(_part_rows(gamma), weights, d**d, workers=workers)


def enumerate_principal_minors(
    d: int, scope: str = "interior", workers: int | None = None, budget: str = "default"
) -> VerificationReport:
    """Exact sign of every principal minor of ``N`` on ``I_d`` or its interior.

    ``det N_gamma`` and ``det M_gamma`` have the same sign.  With the interior
    scope the vertex and edge blocks are scanned as well, which together
    cover every principal minor of ``M_{I_d}`` through the block structure.
    """
    _check_degree(d)
    limit = _budget_limit(budget)
    if scope == "full":
        gamma = GammaSet.full(d)
    elif scope == "interior":
        gamma = GammaSet.zero_class(d, 0)
    else:
        raise InvalidArgumentError(f"scope must be 'full' or 'interior', got {scope!r}")
    required = 2 ** len(gamma) - 1
    if required > limit:
        raise EnumerationBudgetError(required, limit)

    with _Timer() as timer:
        details = {"scope": scope, "subsets": required}
        witnesses = []
        results = {}
        if len(gamma):
            results[scope] = (gamma, _scan_part(gamma, workers))
        if scope == "interior" and d >= 2:
            for e in EDGES:
                eg = epsilon_set(d, e)
                results[f"edge_{e}"] = (eg, _scan_part(eg, workers))
            details["edge_subsets"] = 2 ** (d - 1) - 1
        for name, (g, res) in results.items():
            for mask, value in res.nonpositive:
                witnesses.append((g.subset(mask), str(value)))
            if res.min_det is not None:
                details[f"min_det_N_{name}"] = str(res.min_det)
                details[f"argmin_{name}"] = g.subset(res.min_mask).to_json()
        if scope == "interior":
            # vertex blocks are the 1x1 entries d**d of N
            details["vertex_det_N"] = str(d**d)
        status = FAIL if witnesses else PASS
        notes = "" if scope == "full" else (
            "interior subsets plus vertex and edge blocks; the block lower "
            "triangular structure makes every principal minor a product of these"
        )
    return VerificationReport("minors", d, status, witnesses, timer.ms, notes, details)


# --------------------------------------------------------------------------
# closed-form determinant and the n_d formula


def extended_binomial(n: int, k: int) -> int:
    """Binomial coefficient extended to negative integers.

    Uses the limit of the Gamma-function definition, so e.g.
    ``extended_binomial(-1, -1) == 1`` while ``extended_binomial(2, -1) == 0``.
    """
    if n >= 0:
        return comb(n, k) if 0 <= k <= n else 0
    if k >= 0:
        return (-1) ** k * comb(k - n - 1, k)
    if k <= n:
        return (-1) ** (n - k) * comb(-k - 1, n - k)
    return 0


def closed_form_det_N(d: int) -> int:
    """Closed-form ``det N_{I_d}``, with the free exponent symbol read as ``d``."""
    _check_degree(d)
    total = 1
    for k in range(1, min(d, 3) + 1):
        term = d ** comb(d - 1, k)
        for i in range(1, d - k + 2):
            term *= i ** ((d - i + 1) * extended_binomial(d - i - 1, k - 2))
        total *= term ** comb(3, k)
    return total


def _closed_form_M(d: int) -> Fraction:
    weights = prod(multinomial(d, c) for c in compositions(d))
    return Fraction(closed_form_det_N(d) * weights, d ** (d * comb(d + 2, 2)))


@lru_cache(maxsize=None)
def closed_form_validated(max_degree: int = 6) -> bool:
    """Whether the closed form matches exact determinants for ``d <= max_degree``."""
    return all(_closed_form_M(d) == full_M(d).det() for d in range(1, max_degree + 1))


def closed_form_det(d: int) -> Fraction:
    """``det M_{I_d}`` from the closed-form product.

    The formula is trusted only after it reproduces the exact determinant for
    every degree up to 6; otherwise the exact determinant is returned and a
    warning is issued.
    """
    _check_degree(d)
    if not closed_form_validated():
        warnings.warn("closed-form determinant failed validation; returning exact value")
        return full_M(d).det()
    return _closed_form_M(d)


def formula_check(max_degree: int = 6) -> VerificationReport:
    _check_degree(max_degree)
    with _Timer() as timer:
        rows = []
        witnesses = []
        for d in range(1, max_degree + 1):
            exact = full_M(d).det()
            closed = _closed_form_M(d)
            rows.append({"degree": d, "det_M": rational_str(exact), "match": exact == closed})
            if exact != closed:
                witnesses.append((GammaSet.full(d), rational_str(closed)))
        status = FAIL if witnesses else PASS
    return VerificationReport(
        "formula",
        max_degree,
        status,
        witnesses,
        timer.ms,
        "exponent symbol read as the degree; binomials extended to negative arguments",
        {"degrees": rows},
    )


def n_d_formula(d: int) -> int:
    """Conjectured minimum of ``det N_gamma``; for ``d <= 2`` uses ``0**0 = 1``."""
    _check_degree(d)
    ell, r = divmod(d, 3)
    if r == 0:
        return ell ** (3 * ell)
    if r == 1:
        return (ell + 1) ** (ell + 1) * ell ** (2 * ell)
    return (ell + 1) ** (2 * ell + 2) * ell**ell


def n_d_in_conjecture_range(d: int) -> bool:
    return d >= 3


# --------------------------------------------------------------------------
# minimum determinant search


@dataclass
class MinDetResult:
    degree: int
    minimizer_M: GammaSet
    minimizer_N: GammaSet
    min_det_N: int
    min_det_M: Fraction
    conjectured_N: int
    conjectured_M: Fraction
    subsets: int = 0
    nonpositive: list = field(default_factory=list)

    @property
    def matches_N(self) -> bool:
        return self.min_det_N == self.conjectured_N

    @property
    def matches_M(self) -> bool:
        return self.min_det_M == self.conjectured_M

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "minimizer_M": self.minimizer_M.to_json(),
            "minimizer_N": self.minimizer_N.to_json(),
            "min_det_N": str(self.min_det_N),
            "min_det_M": rational_str(self.min_det_M),
            "conjectured_N": str(self.conjectured_N),
            "conjectured_M": rational_str(self.conjectured_M),
            "subsets": self.subsets,
        }


def _combine_minima(parts):
    """Global minimum of products over unions of parts, not all empty.

    ``parts`` holds ``(value, members)`` with the part minimum over nonempty
    subsets (all values positive).  If some part is below 1, every part at or
    below 1 is included (parts equal to 1 do not change the value); otherwise
    the single smallest part wins (earliest on ties).
    """
    below = [(v, m) for v, m in parts if v <= 1]
    if any(v < 1 for v, _ in below):
        return prod((v for v, _ in below), start=Fraction(1)), [c for _, m in below for c in m]
    v, m = min(parts, key=lambda p: p[0])
    return v, list(m)


def min_det_search(d: int, workers: int | None = None, budget: str = "default") -> MinDetResult:
    """Exact minima of ``det N_gamma`` and ``det M_gamma`` over all nonempty gamma.

    Uses the block structure: gamma splits into vertex, edge and interior
    parts and both determinants factor over the parts, so only the subsets of
    each part are enumerated.
    """
    _check_degree(d)
    limit = _budget_limit(budget)
    full = GammaSet.full(d)
    bf = block_factorize(full)
    required = max(2 ** len(p) - 1 for p in bf.parts)
    if required > limit:
        raise EnumerationBudgetError(required, limit)

    n_parts, m_parts = [], []
    nonpos = []
    count = 0
    for part in bf.parts:
        res = _scan_part(part, workers, with_m=True)
        count += res.count
        for mask, v in res.nonpositive:
            nonpos.append((part.subset(mask), v))
        n_parts.append((Fraction(res.min_det), part.subset(res.min_mask).members))
        m_parts.append((res.min_scaled, part.subset(res.min_scaled_mask).members))
    min_n, arg_n = _combine_minima(n_parts)
    min_m, arg_m = _combine_minima(m_parts)
    return MinDetResult(
        degree=d,
        minimizer_M=GammaSet(d, arg_m),
        minimizer_N=GammaSet(d, arg_n),
        min_det_N=int(min_n),
        min_det_M=min_m,
        conjectured_N=n_d_formula(d),
        conjectured_M=closed_form_det(d),
        subsets=count,
        nonpositive=nonpos,
    )


def min_det_report(d: int, workers: int | None = None, budget: str = "default") -> VerificationReport:
    with _Timer() as timer:
        res = min_det_search(d, workers, budget)
        witnesses = [(g, str(v)) for g, v in res.nonpositive]
        if not res.matches_N:
            witnesses.append((res.minimizer_N, str(res.min_det_N)))
        if not res.matches_M:
            witnesses.append((res.minimizer_M, rational_str(res.min_det_M)))
        status = FAIL if witnesses else PASS
        notes = "" if n_d_in_conjecture_range(d) else "d <= 2 lies outside the conjectured range; 0**0 = 1 used"
    return VerificationReport("mindet", d, status, witnesses, timer.ms, notes, res.to_dict())


# --------------------------------------------------------------------------
# brute-force oracles for small gamma


def lemma_max_check(d: int) -> VerificationReport:
    """Each ``x**i`` over the lattice ``I_d`` peaks only at ``x = i``, with value ``i**i``."""
    _check_degree(d, 12)
    with _Timer() as timer:
        lattice = compositions(d)
        witnesses = []
        for i in lattice:
            values = [multi_power(x, i) for x in lattice]
            best = max(values)
            argmax = [x for x, v in zip(lattice, values) if v == best]
            if argmax != [i] or best != multi_power(i, i):
                witnesses.append((GammaSet(d, argmax), str(best)))
        status = FAIL if witnesses else PASS
    return VerificationReport(
        "lemma", d, status, witnesses, timer.ms, "", {"compositions": len(lattice)}
    )


def _pair_det(a, b) -> int:
    return multi_power(a, a) * multi_power(b, b) - multi_power(b, a) * multi_power(a, b)


def small_gamma_min_check(d: int) -> VerificationReport:
    """Singleton minimum equals ``n_d``; adding a second point never lowers ``det N``."""
    _check_degree(d, 10)
    with _Timer() as timer:
        lattice = compositions(d)
        single = {c: multi_power(c, c) for c in lattice}
        low = min(single.values())
        argmin = [c for c in lattice if single[c] == low]
        witnesses = []
        nd = n_d_formula(d)
        if low != nd:
            witnesses.append((GammaSet(d, argmin[:1]), str(low)))
        pairs = 0
        for a in lattice:
            for b in lattice:
                if a == b:
                    continue
                pairs += 1
                if _pair_det(a, b) < single[a]:
                    witnesses.append((GammaSet(d, [a, b]), str(_pair_det(a, b))))
        status = FAIL if witnesses else PASS
        notes = "" if n_d_in_conjecture_range(d) else "d <= 2 lies outside the conjectured range; 0**0 = 1 used"
    return VerificationReport(
        "pairs",
        d,
        status,
        witnesses,
        timer.ms,
        notes,
        {
            "singleton_min": str(low),
            "singleton_argmin": [list(c) for c in argmin],
            "n_d": str(nd),
            "ordered_pairs": pairs,
        },
    )


# --------------------------------------------------------------------------
# special configurations


def _random_subset(rng: random.Random, pool, max_size=None):
    pool = list(pool)
    hi = len(pool) if max_size is None else min(max_size, len(pool))
    size = rng.randint(1, hi)
    return rng.sample(pool, size)


def _sample_case(case: int, d: int, rng: random.Random) -> GammaSet:
    lattice = compositions(d)
    bnd = [c for c in lattice if c.zero_count > 0]
    if case == 1:
        return GammaSet(d, _random_subset(rng, lattice, 2))
    if case == 2:
        axis = rng.randrange(3)
        value = rng.randint(0, d)
        line = [c for c in lattice if c[axis] == value]
        return GammaSet(d, _random_subset(rng, line))
    if case == 3:
        return GammaSet.full(d)
    if case == 4:
        return GammaSet.zero_class(d, 0)
    if case == 5:
        return GammaSet(d, _random_subset(rng, bnd))
    if case == 6:
        first = _sample_case(rng.choice([1, 2, 4]) if d >= 3 else rng.choice([1, 2]), d, rng)
        second = _sample_case(5, d, rng)
        return GammaSet(d, set(first.members) | set(second.members))
    raise InvalidArgumentError(f"case must be 1..6, got {case}")


def theorem4_check(d: int, samples: int = 1000, seed: int = 0) -> VerificationReport:
    """Random gamma from each special configuration; every ``det M_gamma`` must be positive."""
    _check_degree(d)
    rng = random.Random(f"theorem4:{d}:{seed}")
    with _Timer() as timer:
        witnesses = []
        per_case = {}
        for case in range(1, 7):
            if case == 4 and d < 3:
                per_case[case] = 0
                continue
            n = 1 if case in (3, 4) else samples
            seen = 0
            for _ in range(n):
                g = _sample_case(case, d, rng)
                value = build_M(g).det_numerator()
                seen += 1
                if value <= 0:
                    witnesses.append((g, str(value)))
                if case == 2:
                    ax = next(a for a in range(3) if len({c[a] for c in g}) == 1)
                    red = line_config_reduce(g, "ijk"[ax], g.members[0][ax])
                    if (red.det_numerator() > 0) != (value > 0):
                        witnesses.append((g, f"reduced sign mismatch {red.det_numerator()}"))
            per_case[case] = seen
        status = FAIL if witnesses else PASS
    return VerificationReport(
        "theorem4",
        d,
        status,
        witnesses,
        timer.ms,
        "",
        {"samples_per_case": {str(k): v for k, v in per_case.items()}, "seed": seed},
    )


def univariate_tn_check(d: int) -> VerificationReport:
    """All minors of the edge collocation block are nonnegative, principal ones positive."""
    _check_degree(d)
    with _Timer() as timer:
        if d < 2:
            return VerificationReport("univariate", d, PASS, [], 0.0, "no edge points", {"minors": 0})
        blocks = [build_M(epsilon_set(d, e)).entries for e in EDGES]
        witnesses = []
        if not (blocks[0] == blocks[1] == blocks[2]):
            witnesses.append((epsilon_set(d, "uv"), "edge blocks differ"))
        E = blocks[0]
        gamma = epsilon_set(d, "uv")
        n = len(E)
        count = 0
        for size in range(1, n + 1):
            for rs in combinations(range(n), size):
                for cs in combinations(range(n), size):
                    v = kernels.det([[E[r][c] for c in cs] for r in rs])
                    count += 1
                    if v < 0 or (rs == cs and v <= 0):
                        witnesses.append(
                            (GammaSet(d, [gamma.members[r] for r in rs]), f"{v} cols={list(cs)}")
                        )
        status = FAIL if witnesses else PASS
    return VerificationReport("univariate", d, status, witnesses, timer.ms, "", {"minors": count})


# --------------------------------------------------------------------------
# constrained interpolation


def solve_constrained(d: int, gamma: GammaSet, boundary_coeffs: dict, targets: dict) -> dict:
    """Coefficients on ``gamma`` so the full polynomial hits ``targets`` at gamma's points.

    ``boundary_coeffs`` fixes every coefficient outside ``gamma``.
    """
    _check_degree(d)
    if gamma.degree != d:
        raise InvalidArgumentError(f"gamma has degree {gamma.degree}, expected {d}")
    fixed = {as_composition(k): Fraction(v) for k, v in boundary_coeffs.items()}
    goal = {as_composition(k): Fraction(v) for k, v in targets.items()}
    rest = [c for c in compositions_b(d) if c not in gamma]
    missing = [c for c in rest if c not in fixed]
    if missing:
        raise InvalidArgumentError(f"no fixed coefficient for {missing[0]}")
    overlap = [c for c in fixed if c in gamma]
    if overlap:
        raise InvalidArgumentError(f"{overlap[0]} is both fixed and free")
    unknown_target = [c for c in gamma if c not in goal]
    if unknown_target:
        raise InvalidArgumentError(f"no target value for {unknown_target[0]}")
    if len(gamma) == 0:
        return {}
    if d > 17:
        warnings.warn(f"unisolvence is not established for d={d}")

    scale = d**d
    rhs = []
    for r in gamma:
        shift = sum(
            (fixed[c] * multinomial(d, c) * multi_power(r, c) for c in rest), Fraction(0)
        )
        rhs.append(goal[r] - shift / scale)
    x = exact_solve(build_M(gamma), rhs)
    return dict(zip(gamma.members, x))
