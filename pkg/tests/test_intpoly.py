from fractions import Fraction

import pytest

from chebdyn.intpoly import IntPolynomial, bareiss_determinant

Z = IntPolynomial.variable()


def test_trailing_zeros_trimmed():
    assert IntPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert IntPolynomial((0, 0)).degree == -1


def test_arithmetic():
    p = Z**2 - 2
    q = Z + 1
    assert (p + q).coeffs == (-1, 1, 1)
    assert (p - q).coeffs == (-3, -1, 1)
    assert (p * q).coeffs == (-2, -2, 1, 1)
    assert (2 * q).coeffs == (2, 2)
    assert (-p).coeffs == (2, 0, -1)
    assert (3 + q).coeffs == (4, 1)


def test_divmod_exact():
    num = Z**3 - 1
    quot, rem = divmod(num, Z - 1)
    assert quot == Z**2 + Z + 1 and rem.is_zero()
    with pytest.raises(ValueError):
        (Z**2 + 1).exact_div(Z + 1)
    with pytest.raises(ValueError):
        divmod(Z**2, 2 * Z)  # leading coefficient does not divide


def test_evaluate_kinds():
    p = Z**3 - 3 * Z
    assert p.evaluate(2) == 2
    assert p.evaluate(Fraction(5, 2)) == Fraction(65, 8)
    assert p.evaluate(1.5) == pytest.approx(-1.125)
    assert p.evaluate(1j) == pytest.approx(-4j)


def test_compose():
    p2 = Z**2 - 2
    assert p2.compose(p2) == Z**4 - 4 * Z**2 + 2


def test_derivative():
    assert (Z**3 - 3 * Z).derivative() == 3 * Z**2 - 3


def test_format():
    assert str(Z**3 - 3 * Z) == "z^3 - 3*z"
    assert str(Z**2 + Z - 1) == "z^2 + z - 1"
    assert str(IntPolynomial()) == "0"
    assert str(IntPolynomial((2,))) == "2"
    assert str(-Z + 2) == "-z + 2"
    assert (Z**2 - 3).format("w") == "w^2 - 3"


def test_bareiss_determinant():
    one = IntPolynomial((1,))
    two = IntPolynomial((2,))
    # [[z, 1], [1, z]] -> z^2 - 1
    m = [[Z, one], [one, Z]]
    assert bareiss_determinant(m) == Z**2 - 1
    # integer matrix with a known determinant
    rows = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    m2 = [[IntPolynomial((v,)) for v in row] for row in rows]
    assert bareiss_determinant(m2) == IntPolynomial((-90,))
    # zero pivot forces a row swap
    m3 = [[IntPolynomial(), one], [two, IntPolynomial()]]
    assert bareiss_determinant(m3) == IntPolynomial((-2,))
