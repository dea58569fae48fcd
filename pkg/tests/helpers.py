"""Shared test oracles: exact matrix arithmetic for the group operations and
the bounded brute-force search confirming span certificates."""

from fractions import Fraction

from nilblock.exactnum import FieldElement
from nilblock.heisenberg import HeisPoint


def heis_matrix(g: HeisPoint) -> list[list[Fraction]]:
    """The (n+2) x (n+2) upper-unitriangular matrix form (rational coords)."""
    n, size = g.n, g.n + 2
    m = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for j in range(n):
        m[0][1 + j] = g.x[j].as_rational()
    for i in range(n):
        m[1 + i][size - 1] = g.y[i].as_rational()
    m[0][size - 1] = g.z.as_rational()
    return m


def mat_mul(a, b):
    size = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)]
            for i in range(size)]


def mat_identity(size):
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def mat_inv(m):
    """Gauss-Jordan inverse over exact rationals."""
    size = len(m)
    work = [list(row) + list(ident_row) for row, ident_row in zip(m, mat_identity(size))]
    for col in range(size):
        pivot = next(r for r in range(col, size) if work[r][col] != 0)
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(size):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[size:] for row in work]


def mat_pow(m, k: int):
    if k < 0:
        return mat_pow(mat_inv(m), -k)
    out = mat_identity(len(m))
    base = [list(r) for r in m]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def candidate_rationals(bound: int = 50) -> list[Fraction]:
    """All fractions p/q with |p| <= bound, 1 <= q <= bound (deduplicated)."""
    return sorted({Fraction(p, q) for q in range(1, bound + 1)
                   for p in range(-bound, bound + 1)})


def brute_force_line_search(target: FieldElement, gen: FieldElement,
                            bound: int = 50) -> tuple[Fraction, Fraction] | None:
    """Search coefficients c with bounded numerator/denominator such that
    target - c * gen is rational; covers every bounded (c, l) witness and
    more, so an empty result confirms a certificate."""
    for c in candidate_rationals(bound):
        residue = target - gen * c
        if residue.is_rational():
            return c, residue.as_rational()
    return None
