"""Seeded invariant suites runnable from the CLI.

Every suite draws its samples from one ``random.Random(seed)`` stream, so a
fixed seed yields a byte-identical report.  All comparisons are exact; there
are no tolerances to calibrate.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from . import blockability, heisenberg, sl2, torus
from .exactnum import NumberField, SpanCertificate, SpanWitness, solve_rational_span
from .heisenberg import HeisPoint, LatticeSpec, ReducedPoint


def _rand_frac(rng: random.Random, num: int = 30, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _rand_elem(rng: random.Random, field: NumberField) -> "object":
    return field.element([_rand_frac(rng) for _ in range(field.degree)])


def _matrix_form(g: HeisPoint) -> list[list[Fraction]]:
    n, size = g.n, g.n + 2
    m = [[Fraction(i == j) for j in range(size)] for i in range(size)]
    for j in range(n):
        m[0][1 + j] = g.x[j].as_rational()
    for i in range(n):
        m[1 + i][size - 1] = g.y[i].as_rational()
    m[0][size - 1] = g.z.as_rational()
    return m


def _matrix_mul(a, b):
    size = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)]
            for i in range(size)]


def _suite_field_axioms(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField((-2, 0, 1), (1, 2))
    failures = []
    cases = 0
    for _ in range(120):
        x, y, z = (_rand_elem(rng, field) for _ in range(3))
        cases += 1
        if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z):
            failures.append("associativity broken")
        if x * (y + z) != x * y + x * z:
            failures.append("distributivity broken")
        if not x.is_zero() and x * x.inverse() != field.one():
            failures.append("inverse broken")
    return cases, failures


def _suite_floor_frac(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField((-3, 0, 1), (1, 2))
    failures = []
    cases = 0
    for _ in range(80):
        x = _rand_elem(rng, field)
        cases += 1
        f = x.frac()
        if f + x.floor() != x:
            failures.append("floor + frac != x")
        if f.compare(0) < 0 or f.compare(1) >= 0:
            failures.append("frac outside [0, 1)")
    return cases, failures


def _suite_span(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField((-2, 0, 1), (1, 2))
    gen = field.generator()
    failures = []
    cases = 0
    for _ in range(40):
        c, l = _rand_frac(rng), _rand_frac(rng)
        target = gen * c + l
        cases += 1
        res = solve_rational_span([target], [gen])[0]
        if not isinstance(res, SpanWitness):
            failures.append("membership missed")
    quartic = NumberField((1, 0, -10, 0, 1), (3, Fraction(13, 4)))
    r2 = quartic.element([0, Fraction(-9, 2), 0, Fraction(1, 2)])
    r3 = quartic.element([0, Fraction(11, 2), 0, Fraction(-1, 2)])
    for _ in range(10):
        cases += 1
        res = solve_rational_span([r3 + _rand_frac(rng)], [r2])[0]
        if not isinstance(res, SpanCertificate):
            failures.append("independence missed")
    return cases, failures


def _rand_heis(rng: random.Random, field: NumberField, n: int) -> HeisPoint:
    return HeisPoint.from_rationals(field,
                                    [_rand_frac(rng) for _ in range(n)],
                                    [_rand_frac(rng) for _ in range(n)],
                                    _rand_frac(rng))


def _suite_heis_oracle(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField.rational()
    failures = []
    cases = 0
    for i in range(120):
        n = 1 + (i % 2)
        g, h = _rand_heis(rng, field, n), _rand_heis(rng, field, n)
        cases += 1
        prod = heisenberg.heis_mul(g, h)
        if _matrix_form(prod) != _matrix_mul(_matrix_form(g), _matrix_form(h)):
            failures.append("product disagrees with matrix oracle")
        if heisenberg.heis_mul(g, heisenberg.heis_inv(g)) != HeisPoint.identity(field, n):
            failures.append("inverse is not a group inverse")
    return cases, failures


def _suite_power_law(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField.rational()
    failures = []
    cases = 0
    for i in range(100):
        n = 1 + (i % 2)
        g = _rand_heis(rng, field, n)
        s, t = _rand_frac(rng), _rand_frac(rng)
        cases += 1
        lhs = heisenberg.heis_pow(g, s + t)
        rhs = heisenberg.heis_mul(heisenberg.heis_pow(g, s), heisenberg.heis_pow(g, t))
        if lhs != rhs:
            failures.append("g^(s+t) != g^s g^t")
        half = heisenberg.heis_pow(g, Fraction(1, 2))
        if heisenberg.heis_mul(half, half) != g:
            failures.append("(g^(1/2))^2 != g")
    return cases, failures


def _suite_exp_log(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField.rational()
    failures = []
    cases = 0
    for i in range(60):
        n = 1 + (i % 2)
        g = _rand_heis(rng, field, n)
        cases += 1
        x, y, z = heisenberg.heis_log(g)
        if heisenberg.heis_exp(x, y, z) != g:
            failures.append("exp(log g) != g")
        t = _rand_frac(rng)
        scaled = heisenberg.heis_exp(tuple(v * t for v in x),
                                     tuple(v * t for v in y), z * t)
        if scaled != heisenberg.heis_pow(g, t):
            failures.append("exp(t log g) != g^t")
    return cases, failures


def _suite_reduce_roundtrip(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField((-2, 0, 1), (1, 2))
    failures = []
    cases = 0
    for i in range(60):
        n = 1 + (i % 2)
        lattice = LatticeSpec(n, tuple(rng.choice((1, 2, 3)) for _ in range(n)))
        g = HeisPoint(tuple(_rand_elem(rng, field) for _ in range(n)),
                      tuple(_rand_elem(rng, field) for _ in range(n)),
                      _rand_elem(rng, field))
        cases += 1
        rep, gamma = heisenberg.reduce(g, lattice)
        back = heisenberg.heis_mul(rep.embed(), gamma.embed(lattice, field))
        if back != g:
            failures.append("embed(rep) * embed(gamma) != g")
    return cases, failures


def _rand_reduced(rng: random.Random, field: NumberField,
                  lattice: LatticeSpec) -> ReducedPoint:
    def unit() -> Fraction:
        return Fraction(rng.randint(0, 11), 12)
    a = tuple(field.from_rational(unit() * d) for d in lattice.delta)
    b = tuple(field.from_rational(unit()) for _ in range(lattice.n))
    return ReducedPoint(a, b, field.from_rational(unit()))


def _suite_block_invariance(rng: random.Random) -> tuple[int, list[str]]:
    field = NumberField((-2, 0, 1), (1, 2))
    lattice = LatticeSpec.standard(1)
    failures = []
    cases = 0
    for _ in range(30):
        m1 = _rand_reduced(rng, field, lattice)
        m2 = _rand_reduced(rng, field, lattice)
        pair = blockability.PointPair(lattice, m1, m2)
        verdict = blockability.decide_pair(pair)
        cases += 1
        g = _rand_heis(rng, field, 1)
        t1, _ = heisenberg.reduce(heisenberg.heis_mul(g, m1.embed()), lattice)
        t2, _ = heisenberg.reduce(heisenberg.heis_mul(g, m2.embed()), lattice)
        moved = blockability.decide_pair(blockability.PointPair(lattice, t1, t2))
        if moved.blockable != verdict.blockable:
            failures.append("verdict changed under translation")
        swapped = blockability.decide_pair(blockability.PointPair(lattice, m2, m1))
        if swapped.blockable != verdict.blockable:
            failures.append("verdict changed under swap")
    return cases, failures


def _suite_torus(rng: random.Random) -> tuple[int, list[str]]:
    failures = []
    cases = 0
    for i in range(24):
        n = 1 + (i % 3)
        p = torus.TorusPoint([Fraction(rng.randint(0, 9), 10) for _ in range(n)])
        q = torus.TorusPoint([Fraction(rng.randint(0, 9), 10) for _ in range(n)])
        res = torus.torus_block_set(p, q)
        cases += 1
        if not torus.torus_verify(p, q, res.points, 8):
            failures.append("block set fails verification")
        if len(res.points) > 2 ** n:
            failures.append("block set larger than 2^n")
    return cases, failures


def _suite_sl2(rng: random.Random) -> tuple[int, list[str]]:
    failures = []
    cases = 0
    produced = 0
    while produced < 40:
        a, b, c = (_rand_frac(rng, 8, 5) for _ in range(3))
        if a == 0 or c == 0:
            continue
        d = (1 + b * c) / a
        g = sl2.Sl2Matrix(a, b, c, d)
        if g.trace().u + 2 <= 0:
            continue
        produced += 1
        cases += 1
        roots = sl2.sl2_sqrt(g).roots
        if len(roots) != 2:
            failures.append("expected two roots")
            continue
        if any(x * x != g for x in roots):
            failures.append("root fails exact square check")
        if -roots[0] != roots[1]:
            failures.append("roots not closed under negation")
    rep = sl2.coset_spread(sl2.Sl2Matrix.identity(), 6)
    cases += 1
    if list(rep.counts_by_window) != sorted(rep.counts_by_window):
        failures.append("spread counts not monotone")
    if rep.counts_by_window[-1] <= rep.counts_by_window[0]:
        failures.append("spread shows no growth")
    return cases, failures


SUITES: dict[str, Callable[[random.Random], tuple[int, list[str]]]] = {
    "field-axioms": _suite_field_axioms,
    "floor-frac": _suite_floor_frac,
    "rational-span": _suite_span,
    "heisenberg-matrix-oracle": _suite_heis_oracle,
    "power-law": _suite_power_law,
    "exp-log": _suite_exp_log,
    "reduce-roundtrip": _suite_reduce_roundtrip,
    "blockability-invariance": _suite_block_invariance,
    "torus-blocking": _suite_torus,
    "sl2-roots-and-spread": _suite_sl2,
}


def run_selftest(seed: int, *, inject_fault: str | None = None) -> tuple[str, bool]:
    """Run every suite with the given seed; returns (report text, all passed).

    ``inject_fault`` forces a synthetic failure into the named suite, to
    exercise the failure listing itself.
    """
    lines = [f"nilblock selftest (seed={seed})"]
    total_cases = 0
    total_failures = 0
    for name, suite in SUITES.items():
        rng = random.Random(f"{seed}:{name}")
        cases, failures = suite(rng)
        if inject_fault == name:
            failures = failures + ["injected fault"]
        total_cases += cases
        total_failures += len(failures)
        status = "pass" if not failures else "FAIL"
        lines.append(f"{name}: {cases} cases, {len(failures)} failures ... {status}")
        for f in failures:
            lines.append(f"    {f}")
    ok = total_failures == 0
    lines.append(f"result: {'PASS' if ok else 'FAIL'} "
                 f"({len(SUITES)} suites, {total_cases} cases, {total_failures} failures)")
    return "\n".join(lines) + "\n", ok
