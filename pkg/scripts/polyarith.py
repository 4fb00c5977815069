"""
Exact scalar and polynomial arithmetic.

Scalars are ``fractions.Fraction`` values (canonical by construction: positive
denominator, reduced). Polynomials are dense, ascending-degree tuples of
Fractions with no trailing zeros; the zero polynomial is the empty tuple.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

from scripts.utils import ParseError, VerificationError

Scalar = Union[int, Fraction]

ZERO_DEGREE = float('-inf')

_RATIONAL_PATTERN = re.compile(r'[+-]?[0-9]+(/[0-9]+)?')


def parse_rational(text: str) -> Fraction:
    """
    Parse the rational text syntax: optional sign, decimal integer, optional
    "/" followed by a positive decimal integer.

    Args:
        text (str): Literal such as "-3/7" or "5"

    Returns:
        Fraction: Canonical rational value

    Raises:
        ParseError: If the literal is empty, malformed or has a zero denominator
    """
    if not isinstance(text, str):
        raise ParseError(f"Rational literal must be a string, got {type(text).__name__}")
    if not _RATIONAL_PATTERN.fullmatch(text):
        raise ParseError(f"Malformed rational literal: {text!r}")
    if '/' in text:
        numerator, denominator = text.split('/')
        if int(denominator) == 0:
            raise ParseError(f"Zero denominator in rational literal: {text!r}")
        return Fraction(int(numerator), int(denominator))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "n" or "n/d"."""
    return str(Fraction(value))


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial over the rationals, ascending coefficients."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    # Constructors

    @classmethod
    def constant(cls, value: Scalar) -> 'Poly':
        return cls((value,))

    @classmethod
    def x(cls) -> 'Poly':
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coefficient: Scalar = 1) -> 'Poly':
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_strings(cls, values: Sequence[str]) -> 'Poly':
        return cls(tuple(parse_rational(v) for v in values))

    def to_strings(self) -> List[str]:
        return [format_rational(c) for c in self.coeffs]

    # Basic properties

    @property
    def degree(self) -> Union[int, float]:
        """Degree, or ``ZERO_DEGREE`` (negative infinity) for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def monic(self) -> 'Poly':
        if not self.coeffs:
            raise ZeroDivisionError("the zero polynomial has no monic multiple")
        lead = self.coeffs[-1]
        return Poly(tuple(c / lead for c in self.coeffs))

    def scale(self, factor: Scalar) -> 'Poly':
        return Poly(tuple(c * factor for c in self.coeffs))

    def derivative(self) -> 'Poly':
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __call__(self, value: Scalar) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    # Ring operations

    def __add__(self, other: Union['Poly', Scalar]) -> 'Poly':
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union['Poly', Scalar]) -> 'Poly':
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> 'Poly':
        return (-self) + other

    def __mul__(self, other: Union['Poly', Scalar]) -> 'Poly':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'Poly':
        if exponent < 0:
            raise ValueError("polynomial powers must be non-negative")
        result = Poly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other: 'Poly') -> Tuple['Poly', 'Poly']:
        return poly_divmod(self, other)

    def __floordiv__(self, other: 'Poly') -> 'Poly':
        return poly_divmod(self, other)[0]

    def __mod__(self, other: 'Poly') -> 'Poly':
        return poly_divmod(self, other)[1]

    def __str__(self) -> str:
        return format_poly(self)


def _as_poly(value: Any) -> Any:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return NotImplemented


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Schoolbook product."""
    if not a.coeffs or not b.coeffs:
        return Poly()
    product = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            product[i + j] += x * y
    return Poly(tuple(product))


def poly_divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    """
    Division with remainder: a = q*b + r with degree(r) < degree(b).

    Raises:
        ZeroDivisionError: If b is the zero polynomial
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    remainder = list(a.coeffs)
    shift = len(remainder) - len(b.coeffs)
    if shift < 0:
        return Poly(), a
    quotient = [Fraction(0)] * (shift + 1)
    lead = b.coeffs[-1]
    for k in range(shift, -1, -1):
        factor = remainder[k + len(b.coeffs) - 1] / lead
        quotient[k] = factor
        if factor == 0:
            continue
        for j, c in enumerate(b.coeffs):
            remainder[k + j] -= factor * c
    return Poly(tuple(quotient)), Poly(tuple(remainder[:len(b.coeffs) - 1]))


def poly_gcd_monic(a: Poly, b: Poly) -> Poly:
    """
    Monic greatest common divisor by the Euclidean algorithm.

    Raises:
        ValueError: If both inputs are zero
        VerificationError: If the normalized cofactors fail u*a + v*b = g
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_ext_gcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """
    Extended Euclidean algorithm.

    Returns (u, v, g) with u*a + v*b = g and g the monic gcd. When a is
    nonzero the pair is normalized so that degree(v) < degree(a / g); this
    makes the cofactors unique.

    Raises:
        ValueError: If both inputs are zero
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("extended gcd of two zero polynomials is undefined")
    r0, r1 = a, b
    s0, s1 = Poly.constant(1), Poly()
    t0, t1 = Poly(), Poly.constant(1)
    while not r1.is_zero():
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.leading
    g = r0.monic()
    u = s0.scale(1 / lead)
    v = t0.scale(1 / lead)
    if not a.is_zero():
        cofactor = a // g
        v = v % cofactor
        u, check = poly_divmod(g - v * b, a)
        if not check.is_zero():
            raise VerificationError("Bezout cofactor normalization left a remainder")
    return u, v, g


def scaled_derivatives(f: Poly, k: int) -> List[Poly]:
    """Return [f^(0), ..., f^(k)] where f^(i) is 1/i! times the i-th derivative."""
    if k < 0:
        raise ValueError("k must be non-negative")
    derivs = [f]
    for i in range(1, k + 1):
        derivs.append(derivs[-1].derivative().scale(Fraction(1, i)))
    return derivs


def poly_pow_mod(f: Poly, k: int, modulus: Poly) -> Poly:
    """f^k reduced modulo ``modulus`` by repeated squaring."""
    result = Poly.constant(1) % modulus
    base = f % modulus
    while k:
        if k & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        k >>= 1
    return result


def poly_product(factors: Iterable[Poly]) -> Poly:
    result = Poly.constant(1)
    for f in factors:
        result = result * f
    return result


def format_poly(f: Poly, var: str = 'λ') -> str:
    """
    Descending-degree notation, e.g. "λ^2 - 2λ + 1".

    Non-integer coefficients of non-constant terms are parenthesised: "(1/2)λ".
    """
    if f.is_zero():
        return '0'
    parts: List[str] = []
    for degree in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[degree]
        if c == 0:
            continue
        magnitude = abs(c)
        if degree == 0:
            body = str(magnitude)
        else:
            monomial = var if degree == 1 else f"{var}^{degree}"
            if magnitude == 1:
                body = monomial
            elif magnitude.denominator == 1:
                body = f"{magnitude}{monomial}"
            else:
                body = f"({magnitude}){monomial}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return ' '.join(parts)
