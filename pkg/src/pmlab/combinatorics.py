"""Weak 3-compositions, domain points and the two orderings used on them.

The c-lex order compares compositions coordinate by coordinate, larger first,
so ``(d,0,0)`` is the top element.  The block order ranks by number of zero
components first, then by the zero/nonzero pattern (itself compared c-lex),
then c-lex on the compositions.  Sorting descending by block order puts the
three vertices first, then the three edge runs (uv, uw, vw), then the interior.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    EmptySetError,
    GammaParseError,
    InvalidArgumentError,
    InvalidDegreeError,
)

EDGES = ("uv", "uw", "vw")
# index of the coordinate that vanishes on each edge
_EDGE_ZERO_AXIS = {"uv": 2, "uw": 1, "vw": 0}


class Composition(NamedTuple):
    i: int
    j: int
    k: int

    @property
    def degree(self) -> int:
        return self.i + self.j + self.k

    @property
    def zero_count(self) -> int:
        return (self.i == 0) + (self.j == 0) + (self.k == 0)

    @property
    def sgn(self) -> tuple[int, int, int]:
        return (int(self.i > 0), int(self.j > 0), int(self.k > 0))

    def edge(self) -> str | None:
        """Name of the open edge holding this composition, or None."""
        if self.zero_count != 1:
            return None
        for name, axis in _EDGE_ZERO_AXIS.items():
            if self[axis] == 0:
                return name
        return None  # pragma: no cover

    def __str__(self) -> str:
        return f"{self.i},{self.j},{self.k}"


def as_composition(value) -> Composition:
    if isinstance(value, Composition):
        return value
    if isinstance(value, str):
        return parse_composition(value)
    try:
        i, j, k = (int(x) for x in value)
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"not a composition: {value!r}") from None
    if min(i, j, k) < 0:
        raise InvalidArgumentError(f"negative component in {value!r}")
    return Composition(i, j, k)


def parse_composition(token: str) -> Composition:
    parts = token.strip().split(",")
    if len(parts) != 3:
        raise GammaParseError(token)
    try:
        i, j, k = (int(p) for p in parts)
    except ValueError:
        raise GammaParseError(token) from None
    if min(i, j, k) < 0:
        raise GammaParseError(token, f"negative component in {token!r}")
    return Composition(i, j, k)


@dataclass(frozen=True)
class DomainPoint:
    """The lattice point ``numerator / degree`` in barycentric coordinates."""

    numerator: Composition
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidDegreeError(f"degree must be positive, got {self.degree}")
        if self.numerator.degree != self.degree:
            raise InvalidArgumentError(
                f"{self.numerator} does not have total degree {self.degree}"
            )

    @property
    def barycentric(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(Fraction(c, self.degree) for c in self.numerator)

    @property
    def is_boundary(self) -> bool:
        return self.numerator.zero_count >= 1


def _check_degree(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise InvalidDegreeError(f"degree must be a positive integer, got {d!r}")


def clex_key(c: Composition) -> tuple[int, int, int]:
    return (c.i, c.j, c.k)


def b_key(c: Composition) -> tuple:
    return (c.zero_count, c.sgn, (c.i, c.j, c.k))


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def compare_clex(a: Composition, b: Composition) -> int:
    return _cmp(clex_key(a), clex_key(b))


def compare_b(a: Composition, b: Composition) -> int:
    """Three-way comparison under the block order: 1 if ``a`` ranks above ``b``."""
    a, b = as_composition(a), as_composition(b)
    if a.degree != b.degree:
        raise InvalidArgumentError(
            f"cannot compare compositions of degree {a.degree} and {b.degree}"
        )
    return _cmp(b_key(a), b_key(b))


def compositions(d: int) -> list[Composition]:
    """All weak 3-compositions of ``d`` in c-lex descending order."""
    _check_degree(d)
    return [
        Composition(i, j, d - i - j)
        for i in range(d, -1, -1)
        for j in range(d - i, -1, -1)
    ]


def compositions_b(d: int) -> list[Composition]:
    """All weak 3-compositions of ``d`` in block-order descending order."""
    return sorted(compositions(d), key=b_key, reverse=True)


def zero_class(c) -> int:
    return as_composition(c).zero_count


def zero_class_size(d: int, z: int) -> int:
    _check_degree(d)
    if z == 2:
        return 3
    if z == 1:
        return 3 * (d - 1)
    if z == 0:
        return comb(d - 1, 2)
    raise InvalidArgumentError(f"zero class must be 0, 1 or 2, got {z}")


def interior(d: int) -> list[Composition]:
    return [c for c in compositions_b(d) if c.zero_count == 0]


def boundary(d: int) -> list[Composition]:
    return [c for c in compositions_b(d) if c.zero_count > 0]


class GammaSet:
    """Canonical index set: distinct compositions of one degree, block order descending.

    Duplicates and members of the wrong degree are rejected.  Determinants do
    not depend on the (shared) row/column order, so sorting is harmless and
    makes the block structure contiguous.
    """

    __slots__ = ("_degree", "_members", "_index")

    def __init__(self, degree: int, members: Iterable = ()):
        _check_degree(degree)
        comps = [as_composition(m) for m in members]
        for c in comps:
            if c.degree != degree:
                raise InvalidArgumentError(
                    f"composition {c} has degree {c.degree}, expected {degree}"
                )
        if len(set(comps)) != len(comps):
            seen, dup = set(), None
            for c in comps:
                if c in seen:
                    dup = c
                    break
                seen.add(c)
            raise InvalidArgumentError(f"duplicate composition {dup} in gamma")
        self._degree = degree
        self._members = tuple(sorted(comps, key=b_key, reverse=True))
        self._index = {c: n for n, c in enumerate(self._members)}

    @classmethod
    def full(cls, d: int) -> GammaSet:
        return cls(d, compositions(d))

    @classmethod
    def zero_class(cls, d: int, z: int) -> GammaSet:
        return cls(d, [c for c in compositions(d) if c.zero_count == z])

    @classmethod
    def parse(cls, degree: int, text: str) -> GammaSet:
        return cls(degree, parse_gamma(text))

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def members(self) -> tuple[Composition, ...]:
        return self._members

    def index(self, c) -> int:
        return self._index[as_composition(c)]

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self._members)

    def __contains__(self, c) -> bool:
        try:
            return as_composition(c) in self._index
        except InvalidArgumentError:
            return False

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaSet):
            return NotImplemented
        return self._degree == other._degree and self._members == other._members

    def __hash__(self) -> int:
        return hash((self._degree, self._members))

    def __repr__(self) -> str:
        return f"GammaSet({self._degree}, {format_gamma(self._members)!r})"

    def subset(self, mask: int) -> GammaSet:
        """Members selected by the bits of ``mask`` (bit n picks member n)."""
        return GammaSet(
            self._degree, [c for n, c in enumerate(self._members) if mask >> n & 1]
        )

    def to_text(self) -> str:
        return format_gamma(self._members)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self._members]


def epsilon_set(d: int, edge: str) -> GammaSet:
    """The d-1 compositions strictly inside one edge of the triangle."""
    _check_degree(d)
    if edge not in _EDGE_ZERO_AXIS:
        raise InvalidArgumentError(f"edge must be one of {EDGES}, got {edge!r}")
    if d < 2:
        raise EmptySetError(f"edge {edge} has no interior compositions for d={d}")
    return GammaSet(d, [c for c in compositions(d) if c.edge() == edge])


def parse_gamma(text: str) -> list[Composition]:
    """Parse ``"3,1,0;2,2,0"`` or a JSON array of triples."""
    text = text.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GammaParseError(text, f"invalid JSON gamma: {exc}") from None
        out = []
        for item in data:
            if not isinstance(item, list) or len(item) != 3 or not all(
                isinstance(x, int) and x >= 0 for x in item
            ):
                raise GammaParseError(json.dumps(item))
            out.append(Composition(*item))
        return out
    if not text:
        return []
    return [parse_composition(tok) for tok in text.split(";") if tok.strip()]


def format_gamma(members: Sequence[Composition]) -> str:
    return ";".join(str(Composition(*c)) for c in members)
