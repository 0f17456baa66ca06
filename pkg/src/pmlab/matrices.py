"""Bezier collocation matrices at domain points, kept as exact integer arrays.

``build_M`` returns ``d**d`` times the collocation matrix
``[B_j(xi_i)]`` (rows are points, columns are basis polynomials), so every
entry is the integer ``multinomial(d, j) * i**j``.  ``build_N`` drops the
multinomial column factors, leaving ``i**j``.  Both share the zero pattern
that makes the matrices block lower triangular under the block order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from . import kernels
from .combinatorics import EDGES, GammaSet, as_composition, epsilon_set
from .errors import EmptySetError, InvalidConfigurationError, InvalidDegreeError, ShapeError

AXES = {"i": 0, "j": 1, "k": 2}


def multi_power(base, exp) -> int:
    """``base**exp`` in multi-index notation with ``0**0 == 1``."""
    r = 1
    for b, e in zip(base, exp):
        if e:
            r *= b**e
    return r


def multinomial(d: int, c) -> int:
    i, j, k = c
    return factorial(d) // (factorial(i) * factorial(j) * factorial(k))


def bernstein(d: int, index, point) -> Fraction:
    """Exact value of the Bernstein polynomial ``B_index`` at barycentric ``point``."""
    index = as_composition(index)
    return multinomial(d, index) * prod(
        (Fraction(x) ** e for x, e in zip(point, index)), start=Fraction(1)
    )


def evaluate(d: int, coeffs: dict, point) -> Fraction:
    """Evaluate ``sum c_i B_i`` exactly; missing coefficients are zero."""
    return sum(
        (Fraction(c) * bernstein(d, idx, point) for idx, c in coeffs.items()),
        Fraction(0),
    )


@dataclass(frozen=True)
class ExactMatrix:
    """Square integer matrix standing for ``entries / degree**denom_exp``."""

    entries: tuple[tuple[int, ...], ...]
    degree: int
    denom_exp: int = 0
    gamma: GammaSet | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ShapeError("ExactMatrix must be square")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def denominator(self) -> int:
        return self.degree**self.denom_exp

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def value(self, r: int, c: int) -> Fraction:
        return Fraction(self.entries[r][c], self.denominator)

    def to_fractions(self) -> list[list[Fraction]]:
        s = self.denominator
        return [[Fraction(x, s) for x in r] for r in self.entries]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            tuple(zip(*self.entries)), self.degree, self.denom_exp, self.gamma
        )

    def symmetrized(self) -> ExactMatrix:
        """``A + A^T`` with the same denominator."""
        e = self.entries
        n = self.n
        return ExactMatrix(
            tuple(tuple(e[r][c] + e[c][r] for c in range(n)) for r in range(n)),
            self.degree,
            self.denom_exp,
            self.gamma,
        )

    def principal(self, idx) -> ExactMatrix:
        idx = list(idx)
        sub = None
        if self.gamma is not None:
            sub = GammaSet(self.gamma.degree, [self.gamma.members[i] for i in idx])
        return ExactMatrix(
            tuple(tuple(self.entries[r][c] for c in idx) for r in idx),
            self.degree,
            self.denom_exp,
            sub,
        )

    def det_numerator(self) -> int:
        """Determinant of the integer entries."""
        return int(kernels.det(kernels.coerce(self.entries)))

    def det(self) -> Fraction:
        return Fraction(self.det_numerator(), self.denominator**self.n)

    def trace(self) -> Fraction:
        return Fraction(sum(self.entries[r][r] for r in range(self.n)), self.denominator)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "denomExp": self.denom_exp,
            "entries": [[str(x) for x in r] for r in self.entries],
            "gamma": self.gamma.to_json() if self.gamma is not None else None,
        }


def _require_nonempty(gamma: GammaSet) -> None:
    if len(gamma) == 0:
        raise EmptySetError("gamma must be nonempty")


def build_N(gamma: GammaSet) -> ExactMatrix:
    _require_nonempty(gamma)
    m = gamma.members
    return ExactMatrix(
        tuple(tuple(multi_power(r, c) for c in m) for r in m), gamma.degree, 0, gamma
    )


def build_M(gamma: GammaSet) -> ExactMatrix:
    """``d**d * M_gamma`` as an :class:`ExactMatrix` with ``denom_exp = d``."""
    _require_nonempty(gamma)
    d = gamma.degree
    m = gamma.members
    w = [multinomial(d, c) for c in m]
    return ExactMatrix(
        tuple(tuple(wc * multi_power(r, c) for c, wc in zip(m, w)) for r in m),
        d,
        d,
        gamma,
    )


def full_M(d: int) -> ExactMatrix:
    return build_M(GammaSet.full(d))


def full_N(d: int) -> ExactMatrix:
    return build_N(GammaSet.full(d))


def scale_det_relation(gamma: GammaSet, det_n: int) -> Fraction:
    """``det M_gamma`` from ``det N_gamma``: multiply by the multinomials, divide by ``d**(d|gamma|)``."""
    d = gamma.degree
    num = det_n * prod(multinomial(d, c) for c in gamma)
    return Fraction(num, d ** (d * len(gamma)))


def det_N(gamma: GammaSet) -> int:
    return build_N(gamma).det_numerator()


def det_M(gamma: GammaSet) -> Fraction:
    return build_M(gamma).det()


@dataclass(frozen=True)
class BlockFactorization:
    gamma: GammaSet
    gamma2: GammaSet
    gamma1_edges: tuple[GammaSet, GammaSet, GammaSet]
    gamma0: GammaSet
    parts: tuple[GammaSet, ...]
    blocks: tuple[ExactMatrix, ...]

    def block_sizes(self) -> list[int]:
        return [b.n for b in self.blocks]

    def det(self) -> Fraction:
        return prod((b.det() for b in self.blocks), start=Fraction(1))


def block_factorize(gamma: GammaSet) -> BlockFactorization:
    """Split ``gamma`` into vertex singletons, edge runs and the interior.

    The diagonal blocks are the principal submatrices of ``d**d M`` on each
    part; everything above them is checked to be zero, so ``det M_gamma`` is
    the product of the block determinants.
    """
    _require_nonempty(gamma)
    d = gamma.degree
    vertices = [c for c in gamma if c.zero_count == 2]
    edges = tuple(GammaSet(d, [c for c in gamma if c.edge() == e]) for e in EDGES)
    inner = GammaSet(d, [c for c in gamma if c.zero_count == 0])
    parts = [GammaSet(d, [v]) for v in vertices]
    parts += [e for e in edges if len(e)]
    if len(inner):
        parts.append(inner)

    M = build_M(gamma)
    start = 0
    blocks = []
    for part in parts:
        stop = start + len(part)
        for r in range(start, stop):
            if any(M.entries[r][c] for c in range(stop, M.n)):
                raise AssertionError("collocation matrix is not block lower triangular")
        blocks.append(M.principal(range(start, stop)))
        start = stop
    return BlockFactorization(
        gamma,
        GammaSet(d, vertices),
        edges,
        inner,
        tuple(parts),
        tuple(blocks),
    )


def univariate_collocation(d: int, edge: str = "uv") -> ExactMatrix:
    """``d**d`` times the collocation matrix of one edge's interior points."""
    if not isinstance(d, int) or d < 1:
        raise InvalidDegreeError(f"degree must be a positive integer, got {d!r}")
    return build_M(epsilon_set(d, edge))


def line_config_reduce(gamma: GammaSet, axis: str, value: int, collocation: bool = False) -> ExactMatrix:
    """Reduce a gamma lying on a line parallel to an edge.

    Every member must have component ``axis`` equal to ``value``.  Dividing
    ``N_gamma`` by ``value**value`` leaves the univariate matrix
    ``[a_r**a_c * b_r**b_c]`` of degree ``m = d - value``.  With
    ``collocation=True`` its columns are scaled by ``binom(m, a_c)`` and the
    result is ``m**m`` times the univariate Bezier collocation matrix at the
    points ``a_r / m``.  Column scaling by positive constants preserves the
    determinant sign.
    """
    _require_nonempty(gamma)
    if axis not in AXES:
        raise InvalidConfigurationError(f"axis must be one of {sorted(AXES)}, got {axis!r}")
    ax = AXES[axis]
    bad = [c for c in gamma if c[ax] != value]
    if bad:
        raise InvalidConfigurationError(
            f"{bad[0]} does not have component {axis} = {value}"
        )
    keep = [a for a in range(3) if a != ax]
    pairs = [(c[keep[0]], c[keep[1]]) for c in gamma]
    m = gamma.degree - value
    rows = []
    for ar, br in pairs:
        row = []
        for ac, bc in pairs:
            v = multi_power((ar, br), (ac, bc))
            if collocation:
                v *= multinomial(m, (ac, bc, 0))
            row.append(v)
        rows.append(tuple(row))
    if collocation and m > 0:
        return ExactMatrix(tuple(rows), m, m, None)
    return ExactMatrix(tuple(rows), gamma.degree, 0, None)
