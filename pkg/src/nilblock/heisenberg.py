"""Exact arithmetic in the Heisenberg groups H_n and their integer-type
lattices: product, inverse, rational powers, exponential coordinates,
fundamental-domain reduction and torus projections.

Points are kept in the (x, y, z) coordinates of the upper-unitriangular
matrix form; the matrix form itself lives only in the test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import (FieldElement, Fraction as Rational, MixedFieldError,
                       NumberField)


@dataclass(frozen=True)
class LatticeSpec:
    """The lattice of h(x, y, z) with x in delta*Z^n, y in Z^n, z in Z."""

    n: int
    delta: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension parameter must be >= 1")
        if len(self.delta) != self.n or any(d < 1 for d in self.delta):
            raise ValueError("delta must consist of n positive integers")

    @classmethod
    def standard(cls, n: int) -> "LatticeSpec":
        return cls(n, (1,) * n)

    def to_json(self) -> dict:
        return {"n": self.n, "delta": list(self.delta)}

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeSpec":
        return cls(int(obj["n"]), tuple(int(d) for d in obj["delta"]))


@dataclass(frozen=True)
class LatticeElement:
    """Element h(delta*p, q, r) of a LatticeSpec lattice, stored by integer
    coordinates before delta-scaling."""

    p: tuple[int, ...]
    q: tuple[int, ...]
    r: int

    @property
    def n(self) -> int:
        return len(self.p)

    def radius(self) -> int:
        """Max-norm of the (p, q, r) integer coordinates."""
        return max(max(abs(v) for v in self.p), max(abs(v) for v in self.q), abs(self.r))

    def embed(self, lattice: LatticeSpec, field: NumberField) -> "HeisPoint":
        x = tuple(field.from_rational(d * v) for d, v in zip(lattice.delta, self.p))
        y = tuple(field.from_rational(v) for v in self.q)
        return HeisPoint(x, y, field.from_rational(self.r))


class HeisPoint:
    """Group element h_n(x, y, z); x is the row block, y the column block."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x: Sequence[FieldElement], y: Sequence[FieldElement], z: FieldElement):
        self.x = tuple(x)
        self.y = tuple(y)
        self.z = z
        if len(self.x) != len(self.y):
            raise ValueError("x and y blocks must have equal length")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def field(self) -> NumberField:
        return self.z.field

    @classmethod
    def from_rationals(cls, field: NumberField,
                       x: Sequence[Rational | int],
                       y: Sequence[Rational | int],
                       z: Rational | int) -> "HeisPoint":
        return cls(tuple(field.from_rational(v) for v in x),
                   tuple(field.from_rational(v) for v in y),
                   field.from_rational(z))

    @classmethod
    def identity(cls, field: NumberField, n: int) -> "HeisPoint":
        zero = field.zero()
        return cls((zero,) * n, (zero,) * n, zero)

    def __eq__(self, other):
        return (isinstance(other, HeisPoint) and self.x == other.x
                and self.y == other.y and self.z == other.z)

    def __hash__(self):
        return hash((self.x, self.y, self.z))

    def __repr__(self):
        return f"HeisPoint(x={self.x}, y={self.y}, z={self.z})"

    def to_json(self) -> dict:
        return {"n": self.n,
                "x": [v.to_json() for v in self.x],
                "y": [v.to_json() for v in self.y],
                "z": self.z.to_json()}

    @classmethod
    def from_json(cls, field: NumberField, obj: dict) -> "HeisPoint":
        n = int(obj["n"])
        x = tuple(FieldElement.from_json(field, v) for v in obj["x"])
        y = tuple(FieldElement.from_json(field, v) for v in obj["y"])
        if len(x) != n or len(y) != n:
            raise ValueError("x/y block length disagrees with n")
        return cls(x, y, FieldElement.from_json(field, obj["z"]))


def _dot(x: Sequence[FieldElement], y: Sequence[FieldElement]) -> FieldElement:
    acc = x[0] * y[0]
    for a, b in zip(x[1:], y[1:]):
        acc = acc + a * b
    return acc


def _check_compatible(g: HeisPoint, h: HeisPoint) -> None:
    if g.n != h.n:
        raise ValueError(f"dimension mismatch: n={g.n} vs n={h.n}")
    if g.field is not h.field:
        raise MixedFieldError("points live in different fields")


def heis_mul(g: HeisPoint, h: HeisPoint) -> HeisPoint:
    """Group product: (x_g + x_h, y_g + y_h, z_g + z_h + <x_g, y_h>)."""
    _check_compatible(g, h)
    return HeisPoint(tuple(a + b for a, b in zip(g.x, h.x)),
                     tuple(a + b for a, b in zip(g.y, h.y)),
                     g.z + h.z + _dot(g.x, h.y))


def heis_inv(g: HeisPoint) -> HeisPoint:
    """Group inverse: h(-x, -y, -z + <x, y>)."""
    return HeisPoint(tuple(-a for a in g.x), tuple(-a for a in g.y),
                     -g.z + _dot(g.x, g.y))


def heis_pow(g: HeisPoint, t: Rational | int) -> HeisPoint:
    """One-parameter subgroup power g^t = h(tx, ty, tz + t(t-1)/2 <x,y>)."""
    t = Fraction(t)
    coef = t * (t - 1) / 2
    return HeisPoint(tuple(a * t for a in g.x), tuple(a * t for a in g.y),
                     g.z * t + _dot(g.x, g.y) * coef)


def heis_log(g: HeisPoint) -> tuple[tuple[FieldElement, ...], tuple[FieldElement, ...], FieldElement]:
    """Exponential coordinates (X, Y, Z) with Z = z - <x, y>/2."""
    return g.x, g.y, g.z - _dot(g.x, g.y) * Fraction(1, 2)


def heis_exp(x: Sequence[FieldElement], y: Sequence[FieldElement],
             z: FieldElement) -> HeisPoint:
    """Inverse of heis_log: h(X, Y, Z + <X, Y>/2)."""
    x, y = tuple(x), tuple(y)
    return HeisPoint(x, y, z + _dot(x, y) * Fraction(1, 2))


class ReducedPoint:
    """Unique fundamental-domain representative: 0 <= a_i < delta_i,
    0 <= b_i < 1, 0 <= c < 1."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a: Sequence[FieldElement], b: Sequence[FieldElement], c: FieldElement):
        self.a = tuple(a)
        self.b = tuple(b)
        self.c = c

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def field(self) -> NumberField:
        return self.c.field

    def embed(self) -> HeisPoint:
        return HeisPoint(self.a, self.b, self.c)

    def key(self) -> tuple:
        """Hashable exact-coordinate key (used for dedup and ordering)."""
        return (tuple(v.coords for v in self.a),
                tuple(v.coords for v in self.b),
                self.c.coords)

    def __eq__(self, other):
        return (isinstance(other, ReducedPoint) and self.a == other.a
                and self.b == other.b and self.c == other.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f"ReducedPoint(a={self.a}, b={self.b}, c={self.c})"

    def to_json(self) -> dict:
        return {"n": self.n,
                "a": [v.to_json() for v in self.a],
                "b": [v.to_json() for v in self.b],
                "c": self.c.to_json()}

    @classmethod
    def from_json(cls, field: NumberField, obj: dict) -> "ReducedPoint":
        return cls(tuple(FieldElement.from_json(field, v) for v in obj["a"]),
                   tuple(FieldElement.from_json(field, v) for v in obj["b"]),
                   FieldElement.from_json(field, obj["c"]))


def reduce(g: HeisPoint, lattice: LatticeSpec) -> tuple[ReducedPoint, LatticeElement]:
    """Unique decomposition g = h(a, b, c) * gamma with (a, b, c) in the
    fundamental box and gamma in the lattice; exact via field floors.

    Computed right to left: q from y, p from x, then r from the corrected z.
    """
    if g.n != lattice.n:
        raise ValueError("point and lattice dimension disagree")
    q = tuple(v.floor() for v in g.y)
    b = tuple(v - k for v, k in zip(g.y, q))
    p = []
    a = []
    for v, d in zip(g.x, lattice.delta):
        k = (v * Fraction(1, d)).floor()
        p.append(k)
        a.append(v - d * k)
    # z = c + <a, q> + r determines r and c
    corrected = g.z - _dot(tuple(a), tuple(g.z.field.from_rational(k) for k in q))
    r = corrected.floor()
    c = corrected - r
    rep = ReducedPoint(tuple(a), b, c)
    gamma = LatticeElement(tuple(p), q, r)
    return rep, gamma


def project_xyz(g: HeisPoint, lattice: LatticeSpec
                ) -> tuple[tuple[FieldElement, ...], tuple[FieldElement, ...], FieldElement]:
    """Componentwise torus projections (x mod delta, y mod 1, z mod 1)."""
    if g.n != lattice.n:
        raise ValueError("point and lattice dimension disagree")
    px = tuple(v - d * (v * Fraction(1, d)).floor() for v, d in zip(g.x, lattice.delta))
    py = tuple(v.frac() for v in g.y)
    return px, py, g.z.frac()
