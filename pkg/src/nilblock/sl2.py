"""Square roots in SL(2, R) of rational determinant-one matrices, exact
arithmetic in real quadratic extensions Q(sqrt(D)), window enumeration of
SL(2, Z), and the coset-spread evidence report.

For g != -I with trace(g) + 2 > 0, any square root X satisfies
(trace X)^2 = trace(g) + 2 and X = (g + I)/trace(X); both signs give the two
roots, represented exactly over Q(sqrt(D)) for D the square-free part of
trace(g) + 2.  The same identity covers the transposed and diagonal
degenerate branches, and every output is re-verified by exact multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .exactnum import format_rational


class SquarefreeLimitError(ValueError):
    """Trial division bound exceeded while extracting a square-free part."""


SQUAREFREE_TRIAL_LIMIT = 10 ** 6


def squarefree_part(n: int, *, limit: int = SQUAREFREE_TRIAL_LIMIT) -> int:
    """The square-free D with n = D * (perfect square), for n >= 1.

    Trial division up to ``limit``; an undecidable residual raises rather
    than returning a possibly wrong answer.
    """
    if n < 1:
        raise ValueError("squarefree_part requires a positive integer")
    result = 1
    p = 2
    while p <= limit and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                result *= p
        p += 1 if p == 2 else 2
    if n == 1:
        return result
    if p * p > n:
        # residual is prime
        return result * n
    # all prime factors of the residual exceed `limit`
    root = math.isqrt(n)
    if root * root == n:
        return result  # perfect square of something with only large factors
    if n < limit * limit:
        return result * n  # at most one prime factor left
    raise SquarefreeLimitError(f"residual {n} exceeds trial division bound {limit}")


def sqrt_of_positive_rational(x: Fraction) -> tuple[Fraction, int]:
    """Write sqrt(x) = coef * sqrt(D) with rational coef > 0 and square-free
    D >= 1 (D = 1 iff x is a rational square)."""
    if x <= 0:
        raise ValueError("expected a positive rational")
    m = x.numerator * x.denominator
    D = squarefree_part(m)
    s = math.isqrt(m // D)
    assert s * s * D == m
    return Fraction(s, x.denominator), D


class QuadElement:
    """Element u + v*sqrt(D) of a real quadratic field; v = 0 is stored with
    the canonical D = 1."""

    __slots__ = ("D", "u", "v")

    def __init__(self, u: Fraction | int, v: Fraction | int = 0, D: int = 1):
        u, v = Fraction(u), Fraction(v)
        if v == 0:
            D = 1
        else:
            if D <= 1:
                raise ValueError("irrational part requires square-free D > 1")
            if squarefree_part(D) != D:
                raise ValueError(f"{D} is not square-free")
        self.u, self.v, self.D = u, v, D

    @classmethod
    def rational(cls, q: Fraction | int) -> "QuadElement":
        return cls(Fraction(q))

    def is_rational(self) -> bool:
        return self.v == 0

    def _join(self, other: "QuadElement") -> int:
        if self.D == other.D:
            return self.D
        if self.v == 0:
            return other.D
        if other.v == 0:
            return self.D
        raise ValueError(f"mixed radicands {self.D} and {other.D}")

    def _coerce(self, other) -> "QuadElement":
        if isinstance(other, QuadElement):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(Fraction(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        D = self._join(o)
        return QuadElement(self.u + o.u, self.v + o.v, D if self.v + o.v else 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        D = self._join(o)
        return QuadElement(self.u - o.u, self.v - o.v, D if self.v - o.v else 1)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return QuadElement(-self.u, -self.v, self.D)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        D = self._join(o)
        u = self.u * o.u + self.v * o.v * D
        v = self.u * o.v + self.v * o.u
        return QuadElement(u, v, D if v else 1)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.u == o.u and self.v == o.v and self.D == o.D

    def __hash__(self):
        return hash((self.u, self.v, self.D))

    def to_float(self) -> float:
        return float(self.u) + float(self.v) * math.sqrt(self.D)

    def __repr__(self):
        if self.v == 0:
            return f"QuadElement({self.u})"
        return f"QuadElement({self.u} + {self.v}*sqrt({self.D}))"

    def to_json(self) -> dict:
        return {"u": format_rational(self.u), "v": format_rational(self.v)}


class Sl2Matrix:
    """2x2 matrix with determinant exactly 1 over a fixed Q(sqrt(D))."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        conv = lambda e: e if isinstance(e, QuadElement) else QuadElement(Fraction(e))
        self.a, self.b, self.c, self.d = conv(a), conv(b), conv(c), conv(d)
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant is not 1")

    @classmethod
    def identity(cls) -> "Sl2Matrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rational_rows(cls, rows) -> "Sl2Matrix":
        (a, b), (c, d) = rows
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def entries(self) -> tuple[QuadElement, QuadElement, QuadElement, QuadElement]:
        return self.a, self.b, self.c, self.d

    def is_rational(self) -> bool:
        return all(e.is_rational() for e in self.entries())

    def radicand(self) -> int:
        """The common D > 1 among the entries, or 1 if all rational."""
        ds = {e.D for e in self.entries() if not e.is_rational()}
        if len(ds) > 1:
            raise ValueError("entries carry mixed radicands")
        return ds.pop() if ds else 1

    def trace(self) -> QuadElement:
        return self.a + self.d

    def transpose(self) -> "Sl2Matrix":
        return Sl2Matrix(self.a, self.c, self.b, self.d)

    def __mul__(self, other: "Sl2Matrix") -> "Sl2Matrix":
        return Sl2Matrix(self.a * other.a + self.b * other.c,
                         self.a * other.b + self.b * other.d,
                         self.c * other.a + self.d * other.c,
                         self.c * other.b + self.d * other.d)

    def __neg__(self) -> "Sl2Matrix":
        return Sl2Matrix(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, other):
        return (isinstance(other, Sl2Matrix) and self.entries() == other.entries())

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"Sl2Matrix([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def to_float_rows(self) -> list[list[float]]:
        return [[self.a.to_float(), self.b.to_float()],
                [self.c.to_float(), self.d.to_float()]]

    def to_json(self) -> dict:
        return {"D": self.radicand(),
                "entries": [[self.a.to_json(), self.b.to_json()],
                            [self.c.to_json(), self.d.to_json()]]}


@dataclass(frozen=True)
class Sl2SqrtResult:
    """Square roots of a rational SL(2) matrix: zero or two roots, or the
    infinite-family marker for -I (every trace-zero matrix squares to -I)."""

    roots: tuple[Sl2Matrix, ...]
    family: bool = False

    def to_json(self) -> dict:
        return {"roots": [x.to_json() for x in self.roots], "family": self.family}


def sl2_sqrt(g: Sl2Matrix) -> Sl2SqrtResult:
    """All square roots of g in SL(2, R), for g with rational entries.

    Roots exist iff trace(g) + 2 > 0 (and g != -I); they are +/-(g + I)
    scaled by 1/sqrt(trace(g) + 2), with the positive-trace root listed
    first.  Each root is re-verified exactly before being returned.
    """
    if not g.is_rational():
        raise ValueError("square roots are computed for rational matrices only")
    minus_identity = Sl2Matrix(-1, 0, 0, -1)
    if g == minus_identity:
        return Sl2SqrtResult((), family=True)
    tau = g.trace().u + 2
    if tau <= 0:
        return Sl2SqrtResult(())
    coef, D = sqrt_of_positive_rational(tau)
    # 1/sqrt(tau) = sqrt(D)/(coef * D)
    if D == 1:
        scale = QuadElement(1 / coef)
    else:
        scale = QuadElement(0, 1 / (coef * D), D)
    pos = Sl2Matrix((g.a + 1) * scale, g.b * scale, g.c * scale, (g.d + 1) * scale)
    for root in (pos, -pos):
        if root * root != g:
            raise AssertionError("square-root post-verification failed")
    return Sl2SqrtResult((pos, -pos))


IntMatrix = tuple[tuple[int, int], tuple[int, int]]


def enumerate_sl2z(window: int) -> Iterator[IntMatrix]:
    """All integer matrices [[p, q], [r, s]] with ps - qr = 1 and
    max |entry| <= window, each exactly once, in lexicographic order."""
    if window < 1:
        raise ValueError("window must be >= 1")
    span = range(-window, window + 1)
    for p in span:
        for q in span:
            for r in span:
                if p == 0:
                    if q * r == -1:
                        for s in span:
                            yield ((p, q), (r, s))
                else:
                    num = 1 + q * r
                    if num % p == 0:
                        s = num // p
                        if -window <= s <= window:
                            yield ((p, q), (r, s))


@dataclass(frozen=True)
class SpreadReport:
    """Distinct square-free radicands D > 1 arising from square roots of the
    window's coset representatives; their count is a lower bound for the
    number of distinct lattice cosets met."""

    window: int
    radical_set: tuple[int, ...]
    coset_lower_bound: int
    counts_by_window: tuple[int, ...]

    def csv_rows(self) -> list[tuple[int, int]]:
        return [(n + 1, c) for n, c in enumerate(self.counts_by_window)]


def coset_spread(g: Sl2Matrix, window: int) -> SpreadReport:
    """Scan g * gamma over the SL(2, Z) window; whenever trace + 2 > 0 and
    the lower-left entry is nonzero, record the square-free part D > 1 of
    trace + 2.  Distinct D values pin roots into distinct quadratic fields,
    hence distinct lattice cosets."""
    if not g.is_rational():
        raise ValueError("spread is computed for rational matrices only")
    ga, gb, gc, gd = (g.a.u, g.b.u, g.c.u, g.d.u)
    first_seen: dict[int, int] = {}
    for (p, q), (r, s) in enumerate_sl2z(window):
        radius = max(abs(p), abs(q), abs(r), abs(s))
        # product g * gamma
        lower_left = gc * p + gd * r
        if lower_left == 0:
            continue
        tau = ga * p + gb * r + gc * q + gd * s + 2
        if tau <= 0:
            continue
        D = squarefree_part(tau.numerator * tau.denominator)
        if D > 1 and (D not in first_seen or radius < first_seen[D]):
            first_seen[D] = radius
    counts = []
    for n in range(1, window + 1):
        counts.append(sum(1 for rad in first_seen.values() if rad <= n))
    radicals = tuple(sorted(first_seen))
    return SpreadReport(window, radicals, len(radicals), tuple(counts))
