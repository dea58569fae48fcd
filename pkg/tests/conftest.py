from fractions import Fraction

import pytest

from nilblock.exactnum import NumberField
from nilblock.heisenberg import LatticeSpec, ReducedPoint


@pytest.fixture(scope="session")
def rational_field():
    return NumberField.rational()


@pytest.fixture(scope="session")
def sqrt2_field():
    return NumberField((-2, 0, 1), (1, 2))


@pytest.fixture(scope="session")
def sqrt3_field():
    return NumberField((-3, 0, 1), (Fraction(3, 2), 2))


@pytest.fixture(scope="session")
def cbrt2_field():
    # alpha^3 = 2
    return NumberField((-2, 0, 0, 1), (1, 2))


@pytest.fixture(scope="session")
def quartic_field():
    # alpha = sqrt2 + sqrt3, minimal polynomial x^4 - 10 x^2 + 1
    return NumberField((1, 0, -10, 0, 1), (3, Fraction(13, 4)))


@pytest.fixture(scope="session")
def quartic_sqrt2(quartic_field):
    return quartic_field.element([0, Fraction(-9, 2), 0, Fraction(1, 2)])


@pytest.fixture(scope="session")
def quartic_sqrt3(quartic_field):
    return quartic_field.element([0, Fraction(11, 2), 0, Fraction(-1, 2)])


@pytest.fixture(scope="session")
def quartic_sqrt6(quartic_field):
    # sqrt6 = (alpha^2 - 5)/2
    return quartic_field.element([Fraction(-5, 2), 0, Fraction(1, 2), 0])


def reduced(field, a, b, c, lattice=None) -> ReducedPoint:
    """Build a ReducedPoint from already-reduced scalars/elements (n = 1)."""
    conv = lambda v: v if hasattr(v, "coords") else field.from_rational(v)
    return ReducedPoint((conv(a),), (conv(b),), conv(c))


@pytest.fixture(scope="session")
def lattice1():
    return LatticeSpec.standard(1)
