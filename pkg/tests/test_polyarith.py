from fractions import Fraction

import pytest

from scripts.polyarith import (
    Poly,
    format_poly,
    parse_rational,
    poly_divmod,
    poly_ext_gcd,
    poly_gcd_monic,
    poly_mul,
    poly_pow_mod,
    scaled_derivatives,
)
from scripts.utils import ParseError

LAM = Poly.x()
ONE = Poly.constant(1)


def poly(*coeffs):
    return Poly(tuple(Fraction(c) for c in coeffs))


class TestParseRational:
    @pytest.mark.parametrize("text, expected", [
        ("5", Fraction(5)),
        ("-3/7", Fraction(-3, 7)),
        ("+4/6", Fraction(2, 3)),
        ("0", Fraction(0)),
    ])
    def test_valid_literals(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["1/0", "", " ", "1.5", "1/-2", "abc", "1/", "5\n", "\u0661", "1/\u0662"])
    def test_invalid_literals(self, text):
        with pytest.raises(ParseError):
            parse_rational(text)

    def test_non_string(self):
        with pytest.raises(ParseError):
            parse_rational(3)


class TestPoly:
    def test_trailing_zeros_stripped(self):
        assert poly(1, 2, 0, 0) == poly(1, 2)
        assert poly(0, 0).is_zero()

    def test_degree_of_zero_is_negative_infinity(self):
        assert Poly().degree < 0
        assert Poly().degree < Poly.constant(3).degree

    def test_evaluation(self):
        assert (LAM ** 2 + 1)(Fraction(1, 2)) == Fraction(5, 4)

    def test_monic_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            Poly().monic()

    def test_string_round_trip(self):
        f = poly(Fraction(-1, 2), 0, 3)
        assert Poly.from_strings(f.to_strings()) == f
        assert f.to_strings() == ["-1/2", "0", "3"]


class TestMultiplication:
    def test_difference_of_squares(self):
        assert poly_mul(LAM + 1, LAM - 1) == LAM ** 2 - 1

    def test_zero_annihilates(self):
        assert poly_mul(Poly(), LAM ** 3 + 2).is_zero()

    def test_square(self):
        assert poly_mul(LAM ** 2 + 1, LAM ** 2 + 1) == poly(1, 0, 2, 0, 1)


class TestDivision:
    def test_exact_factor(self):
        assert poly_divmod(LAM ** 2 - 1, LAM - 1) == (LAM + 1, Poly())

    def test_monomials(self):
        assert poly_divmod(LAM ** 3, LAM ** 2) == (LAM, Poly())

    def test_rational_quotient(self):
        q, r = poly_divmod(LAM ** 2 + 1, LAM * 2)
        assert q == poly(0, Fraction(1, 2))
        assert r == ONE
        assert q * (LAM * 2) + r == LAM ** 2 + 1

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            poly_divmod(LAM, Poly())


class TestGcd:
    def test_common_factor(self):
        assert poly_gcd_monic(LAM ** 3 - LAM ** 2, LAM ** 2 * 3 - LAM * 2) == LAM

    def test_gcd_with_zero_is_monic(self):
        assert poly_gcd_monic(LAM * 2 + 4, Poly()) == LAM + 2

    def test_coprime(self):
        assert poly_gcd_monic(LAM ** 2 + 1, LAM * 2) == ONE

    def test_both_zero(self):
        with pytest.raises(ValueError):
            poly_gcd_monic(Poly(), Poly())

    @pytest.mark.parametrize("a, b, expected", [
        (LAM - 1, ONE, (Poly(), ONE, ONE)),
        (LAM ** 2 + 1, LAM * 2, (ONE, poly(0, Fraction(-1, 2)), ONE)),
        (LAM, LAM + 1, (Poly.constant(-1), ONE, ONE)),
    ])
    def test_extended(self, a, b, expected):
        u, v, g = poly_ext_gcd(a, b)
        assert (u, v, g) == expected
        assert u * a + v * b == g

    def test_extended_with_nontrivial_gcd(self):
        a = (LAM - 1) ** 2 * (LAM + 2)
        b = (LAM - 1) * (LAM ** 2 + 1)
        u, v, g = poly_ext_gcd(a, b)
        assert g == LAM - 1
        assert u * a + v * b == g
        assert v.degree < (a // g).degree


class TestDerivatives:
    def test_quadratic(self):
        assert scaled_derivatives(LAM ** 2 + 1, 2) == [LAM ** 2 + 1, LAM * 2, ONE]

    def test_linear(self):
        assert scaled_derivatives(LAM - 1, 1) == [LAM - 1, ONE]

    def test_binomial_coefficients(self):
        assert scaled_derivatives(LAM ** 4, 4) == [LAM ** 4, LAM ** 3 * 4, LAM ** 2 * 6, LAM * 4, ONE]

    def test_pow_mod(self):
        p = LAM ** 2 + 1
        assert poly_pow_mod(LAM, 4, p) == ONE
        assert poly_pow_mod(LAM + 1, 5, p ** 2) == ((LAM + 1) ** 5) % (p ** 2)


class TestFormatting:
    def test_descending_notation(self):
        assert format_poly(LAM ** 2 - LAM * 2 + 1) == "λ^2 - 2λ + 1"

    def test_fractional_coefficients(self):
        assert format_poly(poly(Fraction(-1, 3), Fraction(1, 2))) == "(1/2)λ - 1/3"

    def test_zero_and_leading_sign(self):
        assert format_poly(Poly()) == "0"
        assert format_poly(-(LAM ** 3) + 2) == "-λ^3 + 2"


def random_poly(rng, degree):
    """Random polynomial of exactly ``degree`` with small rational coefficients."""
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(degree)]
    coeffs.append(Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 2)))
    return Poly(tuple(coeffs))


def divides(d, f):
    return (f % d).is_zero()


class TestRandomizedIdentities:
    def test_division_with_remainder(self, rng):
        for _ in range(60):
            a = random_poly(rng, rng.randint(0, 7))
            b = random_poly(rng, rng.randint(0, 4))
            q, r = poly_divmod(a, b)
            assert q * b + r == a
            assert r.degree < b.degree

    def test_gcd_of_constructed_products(self, rng):
        for _ in range(40):
            common = random_poly(rng, rng.randint(0, 3))
            a = common * random_poly(rng, rng.randint(0, 3))
            b = common * random_poly(rng, rng.randint(0, 3))
            g = poly_gcd_monic(a, b)
            assert g.leading == 1
            assert divides(g, a) and divides(g, b)
            assert divides(common, g)

    def test_extended_gcd_identity(self, rng):
        for _ in range(40):
            a = random_poly(rng, rng.randint(0, 5))
            b = random_poly(rng, rng.randint(0, 5))
            u, v, g = poly_ext_gcd(a, b)
            assert u * a + v * b == g
            assert g == poly_gcd_monic(a, b)
            assert v.degree < (a // g).degree

    @pytest.mark.parametrize("degree", range(7))
    def test_taylor_expansion(self, rng, degree):
        f = random_poly(rng, degree)
        derivs = scaled_derivatives(f, degree)
        for _ in range(5):
            x = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            z = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            assert f(x + z) == sum(d(x) * z ** i for i, d in enumerate(derivs))
