"""Exact triple arithmetic for the Heisenberg group and its Lie algebra.

Elements of the upper unitriangular Heisenberg group of dimension n >= 3
are stored as triples (a, b, c) with a, b rational vectors of length n-2
and c a rational scalar: the group element is the n x n matrix with ones
on the diagonal, a^T in the first row, b in the last column and c in the
corner (1, n).  All arithmetic is over fractions.Fraction; nothing here
ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionMismatchError(ValueError):
    """Raised when two triples of different dimension are combined."""


def _fracvec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def _dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((xi * yi for xi, yi in zip(x, y)), Fraction(0))


@dataclass(frozen=True)
class HeisTriple:
    """Group element (a, b, c) of the rational Heisenberg group H(n, Q)."""

    dim: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: Fraction

    def __init__(self, dim: int, a: Iterable, b: Iterable, c):
        if dim < 3:
            raise ValueError("Heisenberg dimension must be >= 3")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "a", _fracvec(a))
        object.__setattr__(self, "b", _fracvec(b))
        object.__setattr__(self, "c", Fraction(c))
        if len(self.a) != dim - 2 or len(self.b) != dim - 2:
            raise ValueError("a and b must have length dim - 2")

    @property
    def ab(self) -> tuple[Fraction, ...]:
        """Concatenation (a, b): the coordinates that add up under products."""
        return self.a + self.b

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.ab + (self.c,))

    def __repr__(self):
        return f"HeisTriple({self.dim}, {list(self.a)}, {list(self.b)}, {self.c})"


@dataclass(frozen=True)
class LieTriple:
    """Lie algebra element (a, b, c); c is the (1, n) corner entry."""

    dim: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: Fraction

    def __init__(self, dim: int, a: Iterable, b: Iterable, c):
        if dim < 3:
            raise ValueError("Heisenberg dimension must be >= 3")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "a", _fracvec(a))
        object.__setattr__(self, "b", _fracvec(b))
        object.__setattr__(self, "c", Fraction(c))
        if len(self.a) != dim - 2 or len(self.b) != dim - 2:
            raise ValueError("a and b must have length dim - 2")

    def __add__(self, other: "LieTriple") -> "LieTriple":
        _check_dims(self, other)
        return LieTriple(
            self.dim,
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
            self.c + other.c,
        )

    def scale(self, factor) -> "LieTriple":
        f = Fraction(factor)
        return LieTriple(
            self.dim,
            tuple(f * x for x in self.a),
            tuple(f * x for x in self.b),
            f * self.c,
        )

    def __repr__(self):
        return f"LieTriple({self.dim}, {list(self.a)}, {list(self.b)}, {self.c})"


def _check_dims(x, y):
    if x.dim != y.dim:
        raise DimensionMismatchError(f"dimension mismatch: {x.dim} vs {y.dim}")


def heis_identity(dim: int) -> HeisTriple:
    zeros = [0] * (dim - 2)
    return HeisTriple(dim, zeros, zeros, 0)


def lie_zero(dim: int) -> LieTriple:
    zeros = [0] * (dim - 2)
    return LieTriple(dim, zeros, zeros, 0)


def heis_mul(x: HeisTriple, y: HeisTriple) -> HeisTriple:
    """(a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a.b')."""
    _check_dims(x, y)
    return HeisTriple(
        x.dim,
        tuple(p + q for p, q in zip(x.a, y.a)),
        tuple(p + q for p, q in zip(x.b, y.b)),
        x.c + y.c + _dot(x.a, y.b),
    )


def heis_product(triples: Sequence[HeisTriple]) -> HeisTriple:
    """Left-to-right product of a nonempty sequence."""
    if not triples:
        raise ValueError("empty product")
    acc = triples[0]
    for t in triples[1:]:
        acc = heis_mul(acc, t)
    return acc


def heis_inv(x: HeisTriple) -> HeisTriple:
    # (a,b,c)^-1 = (-a, -b, -c + a.b): multiply out to check the corner.
    return HeisTriple(
        x.dim,
        tuple(-p for p in x.a),
        tuple(-p for p in x.b),
        -x.c + _dot(x.a, x.b),
    )


def heis_pow(x: HeisTriple, n: int) -> HeisTriple:
    if n < 0:
        raise ValueError("negative power")
    acc = heis_identity(x.dim)
    for _ in range(n):
        acc = heis_mul(acc, x)
    return acc


def heis_log(x: HeisTriple) -> LieTriple:
    """Matrix logarithm: (a, b, c - a.b / 2)."""
    return LieTriple(x.dim, x.a, x.b, x.c - _dot(x.a, x.b) / 2)


def heis_exp(l: LieTriple) -> HeisTriple:
    """Matrix exponential: (a, b, c + a.b / 2); inverse of heis_log."""
    return HeisTriple(l.dim, l.a, l.b, l.c + _dot(l.a, l.b) / 2)


def lie_bracket(x: LieTriple, y: LieTriple) -> LieTriple:
    """[x, y] = xy - yx, supported on the corner entry only."""
    _check_dims(x, y)
    corner = _dot(x.a, y.b) - _dot(y.a, x.b)
    zeros = [0] * (x.dim - 2)
    return LieTriple(x.dim, zeros, zeros, corner)


def bracket_corner(x: LieTriple, y: LieTriple) -> Fraction:
    """Corner entry of [x, y] without building the triple."""
    _check_dims(x, y)
    return _dot(x.a, y.b) - _dot(y.a, x.b)


def bch_log_product(seq: Sequence[HeisTriple]) -> LieTriple:
    """log of a product via the Baker-Campbell-Hausdorff expansion.

    For a two-step nilpotent group the series is exact:
    log(B_1 ... B_m) = sum_i log B_i + 1/2 sum_{i<j} [log B_i, log B_j].
    """
    if not seq:
        raise ValueError("empty sequence")
    logs = [heis_log(t) for t in seq]
    acc = logs[0]
    for l in logs[1:]:
        acc = acc + l
    corner = Fraction(0)
    for i in range(len(logs)):
        for j in range(i + 1, len(logs)):
            corner += bracket_corner(logs[i], logs[j])
    return LieTriple(acc.dim, acc.a, acc.b, acc.c + corner / 2)
