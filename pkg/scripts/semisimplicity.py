"""
Square-free part of the characteristic polynomial and the semisimplicity test.

The square-free part p = χ / gcd(χ, χ') has the same irreducible factors as χ,
each to the first power, and is computed without factoring anything. A map A
is certified semisimple when p(A) = 0.
"""

from dataclasses import dataclass
from typing import Tuple

from scripts.exact_linalg import Mat, char_poly, eval_poly_at
from scripts.polyarith import Poly, poly_divmod, poly_gcd_monic
from scripts.utils import CheckReport, logger


@dataclass(frozen=True)
class SquarefreeData:
    """χ = d·p with p square-free; ``big_m`` is the least M with χ | p^M."""

    chi: Poly
    d: Poly
    p: Poly
    big_m: int


def squarefree_part(chi: Poly) -> SquarefreeData:
    """
    Split a monic characteristic polynomial into d = gcd(χ, χ') and p = χ / d.

    Args:
        chi (Poly): Monic polynomial of degree at least 1

    Returns:
        SquarefreeData: chi, d, p and the multiplicity bound M

    Raises:
        ValueError: If chi is constant or not monic
    """
    if chi.degree < 1 or not chi.is_monic():
        raise ValueError(f"squarefree_part needs a monic non-constant polynomial, got {chi}")
    d = poly_gcd_monic(chi, chi.derivative())
    p, remainder = poly_divmod(chi, d)
    if not remainder.is_zero():
        raise ValueError("gcd(χ, χ') does not divide χ")
    big_m = multiplicity(chi, p)
    logger.debug(f"Square-free part: deg χ = {chi.degree}, deg p = {p.degree}, M = {big_m}")
    return SquarefreeData(chi=chi, d=d, p=p, big_m=big_m)


def multiplicity(chi: Poly, p: Poly) -> int:
    """
    Smallest M >= 1 with χ dividing p^M, found by repeated multiplication.

    Raises:
        ValueError: If p does not divide χ or no M <= deg χ works
    """
    if not (chi % p).is_zero():
        raise ValueError("p does not divide χ; inconsistent square-free data")
    power = p
    big_m = 1
    while not (power % chi).is_zero():
        if big_m >= chi.degree:
            raise ValueError(f"χ does not divide p^{big_m}; p is not the square-free part of χ")
        power = power * p
        big_m += 1
    return big_m


def squarefree_data(a: Mat) -> SquarefreeData:
    return squarefree_part(char_poly(a))


def is_semisimple(a: Mat) -> Tuple[bool, Mat]:
    """
    Factorization-free semisimplicity test.

    Returns:
        Tuple[bool, Mat]: The flag and the witness p(A); the flag is True
        exactly when the witness is the zero matrix
    """
    witness = eval_poly_at(a, squarefree_data(a).p)
    flag = witness.is_zero()
    logger.info(f"Semisimplicity test on {a.rows}x{a.cols} matrix: {flag}")
    return flag, witness


def squarefree_checks(data: SquarefreeData) -> CheckReport:
    """Exact checks of the SquarefreeData invariants."""
    report = CheckReport()
    report.record('chi_equals_d_times_p', data.chi == data.d * data.p)
    report.record('p_is_squarefree', poly_gcd_monic(data.p, data.p.derivative()) == Poly.constant(1))
    report.record('chi_divides_p_power_m', ((data.p ** data.big_m) % data.chi).is_zero())
    minimal = data.big_m == 1 or not ((data.p ** (data.big_m - 1)) % data.chi).is_zero()
    report.record('m_is_minimal', minimal)
    report.record('m_within_degree', 1 <= data.big_m <= data.chi.degree)
    return report
