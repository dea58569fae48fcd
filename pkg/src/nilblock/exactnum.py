"""Exact arithmetic foundation: big rationals, real algebraic number fields
with a designated real embedding, and exact linear algebra over Q.

Rationals are ``fractions.Fraction`` throughout (always reduced, positive
denominator).  A :class:`NumberField` is Q(alpha) for a real root alpha of a
monic irreducible polynomial, pinned down by an isolating rational interval;
:class:`FieldElement` values are coordinate vectors in the power basis
1, alpha, ..., alpha^(d-1).  Ordering and floor are decided exactly by
refining the isolating interval with rational interval arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class FieldSpecError(ValueError):
    """The minimal polynomial / root interval does not define a valid field."""


class MixedFieldError(ValueError):
    """Operands belong to different ambient number fields."""


def parse_rational(text: str | int) -> Fraction:
    """Parse a "num/den" string (or bare integer string/int) exactly."""
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(x: Fraction) -> str:
    """Canonical "num/den" form, denominator always explicit."""
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Dense polynomials over Q, coefficients listed low degree first.
# ---------------------------------------------------------------------------

def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while True:
        _poly_trim(rem)
        if len(rem) < len(b):
            break
        k = len(rem) - len(b)
        f = rem[-1] * inv_lead
        quo[k] = f
        for i, bi in enumerate(b):
            rem[k + i] -= f * bi
        rem.pop()
    return _poly_trim(quo), _poly_trim(rem)


def _poly_eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def _poly_deriv(c: Sequence[Fraction]) -> list[Fraction]:
    return _poly_trim([i * c[i] for i in range(1, len(c))])


def _interval_eval(c: Sequence[Fraction], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of {p(x) : lo <= x <= hi} by interval Horner evaluation."""
    alo, ahi = Fraction(0), Fraction(0)
    for coeff in reversed(c):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + coeff, max(cands) + coeff
    return alo, ahi


def _sturm_chain(poly: Sequence[Fraction]) -> list[list[Fraction]]:
    chain = [list(poly), _poly_deriv(poly)]
    while chain[-1]:
        _, rem = _poly_divmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return [p for p in chain if p]


def _sign_variations(chain: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_real_roots(poly: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of poly in (lo, hi]."""
    chain = _sturm_chain(poly)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def _rational_roots(poly: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots, by the rational root theorem after integer scaling."""
    den_lcm = 1
    for c in poly:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in poly]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out x; 0 handled by caller if relevant
    if not ints:
        return []
    lead, const = ints[-1], ints[0]
    roots = set()
    if _poly_eval(poly, Fraction(0)) == 0:
        roots.add(Fraction(0))
    for p in _divisors(abs(const)):
        for q in _divisors(abs(lead)):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if _poly_eval(poly, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _is_rational_square(x: Fraction) -> Fraction | None:
    """Return sqrt(x) if x is a square in Q, else None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _quartic_splits_into_quadratics(poly: Sequence[Fraction]) -> bool:
    """Does the monic quartic factor as a product of two monic rational
    quadratics?  Decided through rational roots of the resolvent cubic."""
    # depress: x = y + s with s = -a3/4
    s = -poly[3] / 4

    def shifted(coeffs: Sequence[Fraction], t: Fraction) -> list[Fraction]:
        out = [Fraction(0)] * len(coeffs)
        for i, ci in enumerate(coeffs):
            binom = 1
            for j in range(i + 1):
                out[j] += ci * binom * t ** (i - j)
                binom = binom * (i - j) // (j + 1)
        return out

    dep = shifted(list(poly), s)
    assert dep[3] == 0 and dep[4] == 1
    p, q, r = dep[2], dep[1], dep[0]
    # y^4+py^2+qy+r = (y^2+uy+v)(y^2-uy+w) iff z=u^2 is a root of
    # z^3 + 2p z^2 + (p^2-4r) z - q^2.
    resolvent = [-q * q, p * p - 4 * r, 2 * p, Fraction(1)]
    for z0 in _rational_roots(resolvent):
        if z0 < 0:
            continue
        u = _is_rational_square(z0)
        if u is None:
            continue
        if u == 0:
            disc = p * p - 4 * r
            if q == 0 and _is_rational_square(disc) is not None:
                return True
            continue
        v = (p + z0 - q / u) / 2
        w = (p + z0 + q / u) / 2
        prod = _poly_mul([v, u, Fraction(1)], [w, -u, Fraction(1)])
        prod += [Fraction(0)] * (5 - len(prod))
        if prod == dep:
            return True
    return False


# ---------------------------------------------------------------------------
# Number fields and their elements
# ---------------------------------------------------------------------------

class NumberField:
    """Q(alpha) for the unique real root alpha of ``minpoly`` inside
    ``root_interval``.  Degree 1 denotes the rational field itself.

    Irreducibility is verified for degree <= 4; degree >= 5 requires
    ``trusted=True``.  The isolating interval must contain exactly one real
    root (Sturm count), and is refined lazily as comparisons demand.
    """

    def __init__(self, minpoly: Sequence[Fraction | int | str],
                 root_interval: tuple[Fraction | int | str, Fraction | int | str],
                 *, trusted: bool = False):
        coeffs = tuple(parse_rational(c) if not isinstance(c, Fraction) else c
                       for c in minpoly)
        if len(coeffs) < 2:
            raise FieldSpecError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise FieldSpecError("minimal polynomial must be monic")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        lo = parse_rational(root_interval[0]) if not isinstance(root_interval[0], Fraction) else root_interval[0]
        hi = parse_rational(root_interval[1]) if not isinstance(root_interval[1], Fraction) else root_interval[1]
        if not lo < hi:
            raise FieldSpecError("root interval must satisfy lo < hi")
        self._lo = lo
        self._hi = hi
        self._validate(trusted)
        self._zero = FieldElement(self, (Fraction(0),) * self.degree)
        self._one = FieldElement(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    @classmethod
    def rational(cls) -> "NumberField":
        """The rational field Q, as the degree-1 field with alpha = 0."""
        return cls((0, 1), (Fraction(-1, 2), Fraction(1, 2)))

    def _validate(self, trusted: bool) -> None:
        d = self.degree
        if d >= 2 and _rational_roots(self.minpoly):
            raise FieldSpecError("minimal polynomial has a rational root")
        if d == 4 and _quartic_splits_into_quadratics(self.minpoly):
            raise FieldSpecError("quartic splits into rational quadratic factors")
        if d >= 5 and not trusted:
            raise FieldSpecError(
                "degree >= 5 requires trusted=True (irreducibility is not checked)")
        if _poly_eval(self.minpoly, self._lo) == 0 or _poly_eval(self.minpoly, self._hi) == 0:
            raise FieldSpecError("root interval endpoint is itself a root")
        n = _count_real_roots(self.minpoly, self._lo, self._hi)
        if n != 1:
            raise FieldSpecError(f"root interval isolates {n} roots, expected exactly 1")

    # -- elements ----------------------------------------------------------

    def zero(self) -> "FieldElement":
        return self._zero

    def one(self) -> "FieldElement":
        return self._one

    def element(self, coords: Iterable[Fraction | int | str]) -> "FieldElement":
        cs = tuple(parse_rational(c) if not isinstance(c, Fraction) else c for c in coords)
        if len(cs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(cs)}")
        return FieldElement(self, cs)

    def from_rational(self, q: Fraction | int) -> "FieldElement":
        q = Fraction(q)
        return FieldElement(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def generator(self) -> "FieldElement":
        if self.degree == 1:
            # alpha is the rational root of the linear minpoly
            return self.from_rational(-self.minpoly[0])
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    # -- real embedding ----------------------------------------------------

    def root_interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    def refine_root_interval(self) -> None:
        """One bisection step; the kept half is certified by a sign change."""
        mid = (self._lo + self._hi) / 2
        fmid = _poly_eval(self.minpoly, mid)
        if fmid == 0:
            # cannot happen for an irreducible minpoly of degree >= 2
            raise FieldSpecError("midpoint is a rational root")
        if (_poly_eval(self.minpoly, self._lo) > 0) != (fmid > 0):
            self._hi = mid
        else:
            self._lo = mid

    def _sign_of(self, coords: Sequence[Fraction]) -> int:
        """Exact sign of sum(coords[i] * alpha^i) under the real embedding."""
        if all(c == 0 for c in coords):
            return 0
        if all(c == 0 for c in coords[1:]):
            return 1 if coords[0] > 0 else -1
        while True:
            lo_v, hi_v = _interval_eval(coords, self._lo, self._hi)
            if lo_v > 0:
                return 1
            if hi_v < 0:
                return -1
            self.refine_root_interval()

    def _floor_of(self, coords: Sequence[Fraction]) -> int:
        if all(c == 0 for c in coords[1:]):
            return math.floor(coords[0])
        while True:
            lo_v, hi_v = _interval_eval(coords, self._lo, self._hi)
            flo, fhi = math.floor(lo_v), math.floor(hi_v)
            if flo == fhi:
                return flo
            self.refine_root_interval()

    def _float_of(self, coords: Sequence[Fraction], bits: int = 60) -> float:
        if all(c == 0 for c in coords[1:]):
            return float(coords[0])
        while (self._hi - self._lo) > Fraction(1, 2 ** bits):
            self.refine_root_interval()
        alpha = float(self._lo)
        return float(sum(float(c) * alpha ** i for i, c in enumerate(coords)))

    def __repr__(self) -> str:
        return f"NumberField(degree={self.degree}, minpoly={[str(c) for c in self.minpoly]})"

    # structural equality helper (identity is what operations require)
    def same_spec(self, other: "NumberField") -> bool:
        return self.minpoly == other.minpoly

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "minpoly": [format_rational(c) for c in self.minpoly],
            "root_interval": [format_rational(self._lo), format_rational(self._hi)],
        }

    @classmethod
    def from_json(cls, obj: dict, *, trusted: bool = False) -> "NumberField":
        return cls(tuple(parse_rational(c) for c in obj["minpoly"]),
                   (parse_rational(obj["root_interval"][0]),
                    parse_rational(obj["root_interval"][1])),
                   trusted=trusted)


class FieldElement:
    """Immutable element of a NumberField, stored as power-basis coordinates."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords
        self._hash = hash(coords)

    # -- helpers -----------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise MixedFieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented  # type: ignore[return-value]

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    # -- ring/field operations ----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldElement(self.field, tuple(a * q for a in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_rational():
            q = o.coords[0]
            return FieldElement(self.field, tuple(a * q for a in self.coords))
        if self.is_rational():
            q = self.coords[0]
            return FieldElement(self.field, tuple(a * q for a in o.coords))
        prod = _poly_mul(self.coords, o.coords)
        _, rem = _poly_divmod(prod, self.field.minpoly)
        rem += [Fraction(0)] * (self.field.degree - len(rem))
        return FieldElement(self.field, tuple(rem))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return self.field.from_rational(1 / self.coords[0])
        # gcd(minpoly, self) = 1 since minpoly is irreducible; track the
        # Bezout coefficient of self only.
        r0, r1 = list(self.field.minpoly), _poly_trim(list(self.coords))
        t0, t1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
        # r0 = gcd (a nonzero constant), t0 * self = r0 (mod minpoly)
        assert len(r0) == 1, "minimal polynomial is not irreducible"
        inv_c = 1 / r0[0]
        coeffs = [c * inv_c for c in t0]
        coeffs += [Fraction(0)] * (self.field.degree - len(coeffs))
        return FieldElement(self.field, tuple(coeffs[: self.field.degree]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order structure -----------------------------------------------------

    def compare(self, other) -> int:
        """-1, 0 or 1 according to the designated real embedding."""
        o = self._coerce(other)
        diff = self - o
        return self.field._sign_of(diff.coords)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def floor(self) -> int:
        return self.field._floor_of(self.coords)

    def frac(self) -> "FieldElement":
        """Fractional part: self - floor(self), exactly in [0, 1)."""
        return self - self.floor()

    def to_float(self) -> float:
        return self.field._float_of(self.coords)

    def __repr__(self):
        return "FieldElement(" + ", ".join(str(c) for c in self.coords) + ")"

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"coords": [format_rational(c) for c in self.coords]}

    @classmethod
    def from_json(cls, field: NumberField, obj: dict) -> "FieldElement":
        return field.element([parse_rational(c) for c in obj["coords"]])


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# Exact rational matrices
# ---------------------------------------------------------------------------

class RatMatrix:
    """Dense matrix over Q with exact row reduction."""

    def __init__(self, entries: Sequence[Sequence[Fraction | int | str]]):
        self.entries = tuple(tuple(parse_rational(e) if not isinstance(e, Fraction) else e
                                   for e in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return RatMatrix([[sum((self.entries[i][k] * other.entries[k][j]
                                for k in range(self.cols)), Fraction(0))
                           for j in range(other.cols)] for i in range(self.rows)])

    def rref(self) -> tuple["RatMatrix", list[int]]:
        """Reduced row echelon form and pivot column indices."""
        m = [list(row) for row in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return RatMatrix(m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def to_json(self) -> list[list[str]]:
        return [[format_rational(e) for e in row] for row in self.entries]

    def __repr__(self):
        return f"RatMatrix({[[str(e) for e in row] for row in self.entries]})"


# ---------------------------------------------------------------------------
# Membership of field elements in a rational affine span
# ---------------------------------------------------------------------------

class SpanWitness:
    """target = sum(coeffs[j] * gens[j]) + const, verified by re-substitution."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: tuple[Fraction, ...], const: Fraction):
        self.coeffs = coeffs
        self.const = const

    def __repr__(self):
        return f"SpanWitness(coeffs={[str(c) for c in self.coeffs]}, const={self.const})"


class SpanCertificate:
    """A row of the reduced augmented system proving inconsistency: zero
    combination of the generators equals a nonzero rational residue."""

    __slots__ = ("row", "residue")

    def __init__(self, row: tuple[Fraction, ...], residue: Fraction):
        self.row = row
        self.residue = residue

    def __repr__(self):
        return f"SpanCertificate(row={[str(c) for c in self.row]}, residue={self.residue})"


def solve_rational_span(targets: Sequence[FieldElement],
                        gens: Sequence[FieldElement]) -> list[SpanWitness | SpanCertificate]:
    """For each target t decide whether t lies in Q*gens + Q, i.e. whether
    there are rationals (c_1..c_n, l) with t = sum c_j gens_j + l.

    Returns one SpanWitness or SpanCertificate per target.  Witnesses are
    re-substituted exactly before being returned.
    """
    if not targets:
        return []
    field = targets[0].field
    for e in list(targets) + list(gens):
        if e.field is not field:
            raise MixedFieldError("span inputs live in different fields")
    d = field.degree
    n = len(gens)
    # Columns: gens, the constant 1, then the target; rows: basis coordinates.
    cols = [g.coords for g in gens] + [field.one().coords]
    out: list[SpanWitness | SpanCertificate] = []
    for t in targets:
        aug = [[cols[j][i] for j in range(n + 1)] + [t.coords[i]] for i in range(d)]
        reduced, pivots = RatMatrix(aug).rref()
        if pivots and pivots[-1] == n + 1:
            # pivot in the target column: the row is zero on the generators
            # and the constant, with a nonzero residue
            row = reduced.entries[len(pivots) - 1]
            out.append(SpanCertificate(row[: n + 1], row[n + 1]))
            continue
        sol = [Fraction(0)] * (n + 1)
        for i, c in enumerate(pivots):
            sol[c] = reduced.entries[i][n + 1]
        coeffs, const = tuple(sol[:n]), sol[n]
        acc = field.from_rational(const)
        for cj, g in zip(coeffs, gens):
            acc = acc + g * cj
        if acc != t:
            raise AssertionError("span witness failed re-substitution")
        out.append(SpanWitness(coeffs, const))
    return out
