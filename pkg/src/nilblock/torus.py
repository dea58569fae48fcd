"""Flat-torus connection blocking: the midpoint blocking set of at most 2^n
points, exact verification that every geodesic in a lift window meets the
set, and the product-space verdict combinator.

Connecting curves on R^n/Z^n are the projected segments t -> p + t(q - p + k)
for integer lift vectors k; the midpoint of every such segment falls, mod 1,
on one of the 2^n points (p + q + eps)/2 with eps in {0,1}^n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .blockability import BlockCertificate, BlockVerdict
from .exactnum import RatMatrix, format_rational, parse_rational


class TorusPoint:
    """Point of R^n/Z^n with rational coordinates reduced into [0, 1)."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[Fraction | int | str]):
        self.coords = tuple((parse_rational(c) if not isinstance(c, Fraction) else c) % 1
                            for c in coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __eq__(self, other):
        return isinstance(other, TorusPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"TorusPoint({[str(c) for c in self.coords]})"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]


@dataclass(frozen=True)
class GeodesicIndex:
    """Integer lift vector k indexing the segment from p to q + k."""

    k: tuple[int, ...]


@dataclass(frozen=True)
class BlockSetResult:
    """Midpoint blocking set for a pair, with the degenerate-candidate flag.

    Candidates colliding with an endpoint are dropped (a blocking set must
    avoid the pair itself) and flagged; the t = 1/4 classes of the affected
    geodesics are reported separately for audit.
    """

    points: tuple[TorusPoint, ...]
    degenerate: bool
    quarter_points: tuple[TorusPoint, ...] = ()

    def to_json(self) -> dict:
        out = {"block_set": [b.to_json() for b in self.points],
               "degenerate": self.degenerate}
        if self.degenerate:
            out["quarter_points"] = [b.to_json() for b in self.quarter_points]
        return out


def _check_pair(p: TorusPoint, q: TorusPoint) -> None:
    if p.n != q.n:
        raise ValueError("points live on tori of different dimension")


def torus_block_set(p: TorusPoint, q: TorusPoint) -> BlockSetResult:
    """The <= 2^n midpoint classes of connecting segments, minus any class
    that coincides with p or q."""
    _check_pair(p, q)
    kept: list[TorusPoint] = []
    dropped_eps: list[tuple[int, ...]] = []
    for eps in itertools.product((0, 1), repeat=p.n):
        mid = TorusPoint([(a + b + e) / 2 for a, b, e in zip(p.coords, q.coords, eps)])
        if mid == p or mid == q:
            dropped_eps.append(eps)
        else:
            kept.append(mid)
    quarter: list[TorusPoint] = []
    for eps in dropped_eps:
        for eta in itertools.product((0, 1), repeat=p.n):
            cand = TorusPoint([(3 * a + b + e) / 4 + Fraction(h, 2)
                               for a, b, e, h in zip(p.coords, q.coords, eps, eta)])
            if cand != p and cand != q:
                quarter.append(cand)
    kept.sort(key=lambda t: t.coords)
    quarter = sorted(set(quarter), key=lambda t: t.coords)
    return BlockSetResult(tuple(kept), bool(dropped_eps), tuple(quarter))


def segment_hits(p: TorusPoint, q: TorusPoint, k: Sequence[int], b: TorusPoint) -> bool:
    """Does the open segment t -> p + t(q - p + k), t in (0, 1), pass through
    b on the torus?  Solved exactly over the rationals."""
    d = [qi - pi + ki for pi, qi, ki in zip(p.coords, q.coords, k)]
    pivot = next((i for i, di in enumerate(d) if di != 0), None)
    if pivot is None:
        return False
    delta = b.coords[pivot] - p.coords[pivot]
    dpiv = d[pivot]
    lo, hi = (Fraction(0), dpiv) if dpiv > 0 else (dpiv, Fraction(0))
    candidates = []
    mm = math.ceil(lo - delta)
    while delta + mm <= hi:
        t = (delta + mm) / dpiv
        if 0 < t < 1:
            candidates.append(t)
        mm += 1
    for t in candidates:
        if all((p.coords[i] + t * d[i] - b.coords[i]).denominator == 1
               for i in range(len(d))):
            return True
    return False


def find_unblocked(p: TorusPoint, q: TorusPoint, block_set: Iterable[TorusPoint],
                   window: int) -> GeodesicIndex | None:
    """First lift vector k (lexicographic, |k|_inf <= window) whose segment
    avoids every point of the block set, or None if all are blocked.

    Entire parity classes whose midpoint belongs to the block set are blocked
    at t = 1/2 and are skipped without per-k work; only the remaining classes
    are scanned segment by segment.
    """
    _check_pair(p, q)
    points = list(block_set)
    lookup = {b.coords for b in points}
    open_classes = set()
    for eps in itertools.product((0, 1), repeat=p.n):
        mid = tuple(((a + b + e) / 2) % 1 for a, b, e in zip(p.coords, q.coords, eps))
        if mid not in lookup:
            open_classes.add(eps)
    if not open_classes:
        return None
    for k in itertools.product(range(-window, window + 1), repeat=p.n):
        if tuple(ki % 2 for ki in k) not in open_classes:
            continue
        if all(qi - pi + ki == 0 for pi, qi, ki in zip(p.coords, q.coords, k)):
            continue  # zero direction: the constant curve, not a segment
        if not any(segment_hits(p, q, k, b) for b in points):
            return GeodesicIndex(k)
    return None


def torus_verify(p: TorusPoint, q: TorusPoint, block_set: Iterable[TorusPoint],
                 window: int) -> bool:
    """True iff every connecting segment with lift |k|_inf <= window meets
    the block set (exact rational intersection tests)."""
    if window < 1:
        raise ValueError("window must be >= 1")
    return find_unblocked(p, q, block_set, window) is None


def product_blockable(v1: BlockVerdict, v2: BlockVerdict) -> BlockVerdict:
    """Verdict for a pair in a product space: blockable iff both factors are;
    witnesses concatenate block-diagonally."""
    if v1.blockable and v2.blockable:
        L1, ell1 = v1.witness
        L2, ell2 = v2.witness
        n1, n2 = L1.rows, L2.rows
        entries = [[Fraction(0)] * (n1 + n2) for _ in range(n1 + n2)]
        for i in range(n1):
            for j in range(n1):
                entries[i][j] = L1.entries[i][j]
        for i in range(n2):
            for j in range(n2):
                entries[n1 + i][n1 + j] = L2.entries[i][j]
        return BlockVerdict(True, (RatMatrix(entries), ell1 + ell2), None)
    if not v1.blockable:
        return BlockVerdict(False, None, v1.certificate)
    offset = v1.witness[0].rows
    cert = v2.certificate
    shifted = BlockCertificate(cert.target_index + offset, cert.row, cert.residue) if cert else None
    return BlockVerdict(False, None, shifted)
