"""Connection-blockability decisions for point pairs in Heisenberg
nilmanifolds, the midpoint-enumeration evidence harness, and square-root
lattice class enumeration.

A pair is blockable exactly when each component of b1 - b2 lies in the
rational affine span of the components of a1 - a2; the decision runs on
exact linear algebra and returns either a rational witness (L, ell) or an
inconsistency certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .exactnum import (NumberField, RatMatrix, SpanCertificate,
                       format_rational, parse_rational, solve_rational_span)
from .heisenberg import (LatticeElement, LatticeSpec, ReducedPoint, heis_inv,
                         heis_mul, heis_pow, reduce)


class WindowCapError(ValueError):
    """Requested enumeration window exceeds the configured size cap."""


DEFAULT_ENUMERATION_CAP = 1_000_000


@dataclass(frozen=True)
class PointPair:
    """Two reduced points of the same nilmanifold H_n / Gamma_n(delta)."""

    lattice: LatticeSpec
    m1: ReducedPoint
    m2: ReducedPoint

    def __post_init__(self):
        if self.m1.n != self.lattice.n or self.m2.n != self.lattice.n:
            raise ValueError("point dimension disagrees with lattice")
        if self.m1.field is not self.m2.field:
            raise ValueError("pair members live in different fields")
        for m in (self.m1, self.m2):
            for v, d in zip(m.a, self.lattice.delta):
                if v.compare(0) < 0 or v.compare(d) >= 0:
                    raise ValueError("a-coordinate outside fundamental domain")
            for v in m.b + (m.c,):
                if v.compare(0) < 0 or v.compare(1) >= 0:
                    raise ValueError("coordinate outside fundamental domain")

    @property
    def field(self) -> NumberField:
        return self.m1.field


@dataclass(frozen=True)
class BlockCertificate:
    """Inconsistency row for one component of b1 - b2."""

    target_index: int
    row: tuple[Fraction, ...]
    residue: Fraction

    def to_json(self) -> dict:
        return {"target_index": self.target_index,
                "row": [format_rational(c) for c in self.row],
                "residue": format_rational(self.residue)}

    @classmethod
    def from_json(cls, obj: dict) -> "BlockCertificate":
        return cls(int(obj["target_index"]),
                   tuple(parse_rational(c) for c in obj["row"]),
                   parse_rational(obj["residue"]))


@dataclass(frozen=True)
class BlockVerdict:
    """Outcome of a blockability decision.

    blockable is equivalent to witness being present; the witness satisfies
    b1 - b2 = L (a1 - a2) + ell exactly.
    """

    blockable: bool
    witness: tuple[RatMatrix, tuple[Fraction, ...]] | None = None
    certificate: BlockCertificate | None = None

    def __post_init__(self):
        assert self.blockable == (self.witness is not None)

    def to_json(self) -> dict:
        witness = None
        if self.witness is not None:
            L, ell = self.witness
            witness = {"L": L.to_json(), "ell": [format_rational(c) for c in ell]}
        return {"blockable": self.blockable,
                "witness": witness,
                "certificate": self.certificate.to_json() if self.certificate else None}

    @classmethod
    def from_json(cls, obj: dict) -> "BlockVerdict":
        witness = None
        if obj.get("witness") is not None:
            witness = (RatMatrix(obj["witness"]["L"]),
                       tuple(parse_rational(c) for c in obj["witness"]["ell"]))
        cert = BlockCertificate.from_json(obj["certificate"]) if obj.get("certificate") else None
        return cls(bool(obj["blockable"]), witness, cert)


def normalize_to_basepoint(pair: PointPair) -> ReducedPoint:
    """Translate the pair by the inverse of the first point's lift, so that
    m1 maps to the basepoint, and return the image of m2.

    Blockability of the pair equals blockability of (basepoint, result).
    """
    h = heis_inv(pair.m1.embed())
    moved, _ = reduce(heis_mul(h, pair.m2.embed()), pair.lattice)
    return moved


def decide_pair(pair: PointPair) -> BlockVerdict:
    """Blockability of the pair: componentwise membership of b1 - b2 in the
    rational affine span of the components of a1 - a2."""
    da = [v1 - v2 for v1, v2 in zip(pair.m1.a, pair.m2.a)]
    db = [v1 - v2 for v1, v2 in zip(pair.m1.b, pair.m2.b)]
    results = solve_rational_span(db, da)
    for i, res in enumerate(results):
        if isinstance(res, SpanCertificate):
            return BlockVerdict(False, None,
                                BlockCertificate(i, res.row, res.residue))
    n = pair.lattice.n
    L = RatMatrix([list(res.coeffs) for res in results])  # type: ignore[union-attr]
    ell = tuple(res.const for res in results)  # type: ignore[union-attr]
    # re-substitution in the field (the span solver already verified rows)
    for i in range(n):
        acc = pair.field.from_rational(ell[i])
        for j in range(n):
            acc = acc + da[j] * L.entries[i][j]
        assert acc == db[i], "witness failed re-substitution"
    return BlockVerdict(True, (L, ell), None)


def decide_self(lattice: LatticeSpec, m: ReducedPoint) -> BlockVerdict:
    """Every point is blockable away from itself: zero differences admit the
    trivial witness L = 0, ell = 0."""
    n = lattice.n
    return BlockVerdict(True, (RatMatrix.zero(n, n), (Fraction(0),) * n), None)


def iter_window(n: int, window: int) -> Iterator[LatticeElement]:
    """All lattice elements with max(|p_i|, |q_i|, |r|) <= window, in
    lexicographic (p, q, r) order."""
    span = range(-window, window + 1)

    def vectors(k: int) -> Iterator[tuple[int, ...]]:
        if k == 0:
            yield ()
            return
        for head in span:
            for tail in vectors(k - 1):
                yield (head,) + tail

    for p in vectors(n):
        for q in vectors(n):
            for r in span:
                yield LatticeElement(p, q, r)


def _check_cap(n: int, window: int, cap: int) -> None:
    if window < 1:
        raise ValueError("window must be >= 1")
    count = (2 * window + 1) ** (2 * n + 1)
    if count > cap:
        raise WindowCapError(
            f"window {window} enumerates {count} lattice elements (cap {cap})")


@dataclass(frozen=True)
class MidpointReport:
    """Distinct reduced midpoint classes per window radius."""

    windows: tuple[int, ...]
    class_counts: tuple[int, ...]
    saturated: bool

    def csv_rows(self) -> list[tuple[int, int]]:
        return list(zip(self.windows, self.class_counts))


def _saturation(counts: Sequence[int], window: int) -> bool:
    tail = -(-window // 4)  # ceil(window / 4)
    last = counts[-tail:]
    return all(c == last[0] for c in last)


def enumerate_midpoints(pair: PointPair, window: int, *,
                        cap: int = DEFAULT_ENUMERATION_CAP) -> MidpointReport:
    """Midpoint classes of connecting curves over the lattice window.

    The pair is first translated so m1 becomes the basepoint; for every
    lattice gamma in the window the class of (h * gamma)^(1/2) is reduced
    exactly, and distinct classes are counted per sub-window radius.
    """
    _check_cap(pair.lattice.n, window, cap)
    m = normalize_to_basepoint(pair)
    lift = m.embed()
    field = pair.field
    half = Fraction(1, 2)
    min_radius: dict = {}
    for gamma in iter_window(pair.lattice.n, window):
        g = heis_mul(lift, gamma.embed(pair.lattice, field))
        rep, _ = reduce(heis_pow(g, half), pair.lattice)
        key = rep.key()
        radius = gamma.radius()
        if key not in min_radius or radius < min_radius[key]:
            min_radius[key] = radius
    counts = _cumulative_counts(min_radius.values(), window)
    return MidpointReport(tuple(range(1, window + 1)), tuple(counts),
                          _saturation(counts, window))


def _cumulative_counts(radii, window: int) -> list[int]:
    new_at = [0] * (window + 1)
    for radius in radii:
        new_at[radius] += 1
    counts = []
    running = new_at[0]
    for radius in range(1, window + 1):
        running += new_at[radius]
        counts.append(running)
    return counts


def sqrt_lattice_classes(lattice: LatticeSpec, window: int, *,
                         field: NumberField | None = None,
                         cap: int = DEFAULT_ENUMERATION_CAP) -> list[ReducedPoint]:
    """Deduplicated reduced classes of gamma^(1/2) over the lattice window,
    ordered lexicographically by exact coordinates."""
    _check_cap(lattice.n, window, cap)
    if field is None:
        field = NumberField.rational()
    half = Fraction(1, 2)
    classes: dict = {}
    for gamma in iter_window(lattice.n, window):
        rep, _ = reduce(heis_pow(gamma.embed(lattice, field), half), lattice)
        classes.setdefault(rep.key(), rep)
    return [classes[k] for k in sorted(classes)]


def sqrt_lattice_class_counts(lattice: LatticeSpec, window: int, *,
                              field: NumberField | None = None,
                              cap: int = DEFAULT_ENUMERATION_CAP) -> list[int]:
    """Cumulative distinct sqrt-class counts for radii 1..window (single
    enumeration pass, radius-bucketed)."""
    _check_cap(lattice.n, window, cap)
    if field is None:
        field = NumberField.rational()
    half = Fraction(1, 2)
    min_radius: dict = {}
    for gamma in iter_window(lattice.n, window):
        rep, _ = reduce(heis_pow(gamma.embed(lattice, field), half), lattice)
        key = rep.key()
        radius = gamma.radius()
        if key not in min_radius or radius < min_radius[key]:
            min_radius[key] = radius
    return _cumulative_counts(min_radius.values(), window)
