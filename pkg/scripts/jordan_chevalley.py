"""
Jordan-Chevalley decomposition A = S + N by polynomial arithmetic alone.

S is sought as S = A + Σ_{j=1}^{M-1} r_j(A) p(A)^j with deg r_j < deg p, where p
is the square-free part of χ_A and M the least integer with χ_A | p^M. The r_j
come from the recursion

    r_i p' + e_i = b_i p - b_{i-1},    b_0 = 1,

driven by a Bézout pair g p - h p' = 1 and the Taylor correction terms e_i.
Only divisions with remainder by p are needed; no factor of χ_A is ever
computed. N = A - S.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from scripts.exact_linalg import Mat, char_poly, eval_poly_at
from scripts.polyarith import Poly, poly_divmod, poly_ext_gcd, poly_pow_mod, scaled_derivatives
from scripts.semisimplicity import SquarefreeData, squarefree_part
from scripts.utils import CheckReport, NotSquareFreeError, ShapeError, VerificationError, logger


@dataclass(frozen=True)
class JCState:
    """
    Polynomial sequences of one run of the recursion, keyed by index.

    ``r`` holds r_1..r_{M-1}; ``b`` holds b_0 = 1 and b_1..b_{M-1}; ``q`` holds
    q_0 = q_1 = 0 and q_2..; ``e`` holds e_1 = 0 and e_2..; ``d`` holds d_1 = 0
    and d_2..; ``y`` holds the running sums Y_n = g Y_{n-1} + e_n with Y_1 = 1.
    """

    p: Poly
    p_derivs: Tuple[Poly, ...]
    g: Poly
    h: Poly
    r: Dict[int, Poly]
    b: Dict[int, Poly]
    q: Dict[int, Poly]
    e: Dict[int, Poly]
    d: Dict[int, Poly]
    y: Dict[int, Poly]


@dataclass(frozen=True)
class JCDecomposition:
    s: Mat
    n: Mat
    s_polynomial: Poly
    state: JCState
    squarefree: SquarefreeData


def bezout_pair(p: Poly) -> Tuple[Poly, Poly]:
    """
    Polynomials g, h with g p - h p' = 1 and deg h < deg p.

    Raises:
        NotSquareFreeError: If gcd(p, p') is not 1
    """
    u, v, gcd = poly_ext_gcd(p, p.derivative())
    if gcd != Poly.constant(1):
        raise NotSquareFreeError(f"gcd(p, p') = {gcd}; p is not square-free")
    return u, -v


def _series_mul(a: List[Poly], b: List[Poly], order: int) -> List[Poly]:
    """Product of two z-series with polynomial coefficients, truncated after z^order."""
    product = [Poly() for _ in range(order + 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if not y.is_zero():
                product[i + j] = product[i + j] + x * y
    return product


def correction_term(state: JCState, n: int) -> Poly:
    """
    e_n = Σ_{j=2}^{n} c_{n,j} p^(j), where c_{n,j} is the coefficient of z^n in
    T(z)^j and T(z) = Σ_{m=1}^{n-1} r_m z^m.

    Raises:
        ValueError: If n < 2 or some r_m with m < n is missing
    """
    if n < 2:
        raise ValueError(f"correction terms start at n = 2, got {n}")
    derivs = state.p_derivs if len(state.p_derivs) > n else tuple(scaled_derivatives(state.p, n))
    if all(derivs[j].is_zero() for j in range(2, n + 1)):
        return Poly()
    missing = [m for m in range(1, n) if m not in state.r]
    if missing:
        raise ValueError(f"r_{missing[0]} is needed for e_{n}")
    series = [Poly()] + [state.r[m] for m in range(1, n)] + [Poly()]
    power = list(series)
    e_n = Poly()
    for j in range(2, n + 1):
        power = _series_mul(power, series, n)
        if not derivs[j].is_zero():
            e_n = e_n + power[n] * derivs[j]
    return e_n


def jc_iterate(a: Mat) -> JCDecomposition:
    """
    Compute the Jordan-Chevalley decomposition of a square matrix.

    Args:
        a (Mat): Square matrix of dimension at least 1

    Returns:
        JCDecomposition: S, N, the polynomial s with S = s(A), and the
        recursion's intermediate sequences

    Raises:
        ShapeError: If a is not square or is empty
        VerificationError: If an identity guaranteed by the construction fails
    """
    if not a.is_square or a.rows == 0:
        raise ShapeError(f"jc_iterate needs a non-empty square matrix, got {a.rows}x{a.cols}")
    dim = a.rows
    chi = char_poly(a)
    squarefree = squarefree_part(chi)
    p, big_m = squarefree.p, squarefree.big_m
    logger.info(f"Jordan-Chevalley on {dim}x{dim}: deg p = {p.degree}, M = {big_m}")

    p_derivs = tuple(scaled_derivatives(p, max(big_m - 1, 1)))
    g, h = bezout_pair(p)
    state = JCState(
        p=p, p_derivs=p_derivs, g=g, h=h,
        r={}, b={0: Poly.constant(1)}, q={0: Poly(), 1: Poly()},
        e={1: Poly()}, d={1: Poly()}, y={},
    )

    if big_m == 1 or chi.degree == 1:
        s_polynomial = Poly.x() % chi
        return JCDecomposition(a, Mat.zeros(dim, dim), s_polynomial, state, squarefree)

    state.r[1] = h
    state.b[1] = g
    state.y[1] = Poly.constant(1)
    p_prime = p_derivs[1]
    for n in range(2, big_m):
        e_n = correction_term(state, n)
        y_n = g * state.y[n - 1] + e_n
        d_n = state.q[n - 1] + h * y_n
        q_n, r_n = poly_divmod(d_n, p)
        b_n = -p_prime * q_n + g * y_n
        state.e[n], state.y[n], state.d[n] = e_n, y_n, d_n
        state.q[n], state.r[n], state.b[n] = q_n, r_n, b_n
        if r_n * p_prime + e_n != b_n * p - state.b[n - 1]:
            raise VerificationError(f"recursion identity failed at index {n}")
        logger.debug(f"r_{n} has degree {r_n.degree}, b_{n} has degree {b_n.degree}")

    p_of_a = eval_poly_at(a, p)
    correction = Mat.zeros(dim, dim)
    s_polynomial = Poly()
    for j in range(big_m - 1, 0, -1):
        correction = (correction + eval_poly_at(a, state.r[j])) @ p_of_a
        s_polynomial = ((s_polynomial + state.r[j]) * p) % chi
    s = a + correction
    n_part = a - s
    s_polynomial = (Poly.x() + s_polynomial) % chi

    if not eval_poly_at(s, p).is_zero():
        raise VerificationError("p(S) != 0")
    if s @ n_part != n_part @ s:
        raise VerificationError("S and N do not commute")
    if s + n_part != a:
        raise VerificationError("S + N != A")
    return JCDecomposition(s, n_part, s_polynomial, state, squarefree)


def telescoping_holds(state: JCState, big_m: int) -> bool:
    """Σ_{i=1}^{M-1} (b_i p - b_{i-1}) p^i ≡ -p modulo p^M."""
    p = state.p
    modulus = p ** big_m
    total = Poly()
    for i in range(1, big_m):
        total = total + (state.b[i] * p - state.b[i - 1]) * poly_pow_mod(p, i, modulus)
    return (total % modulus) == ((-p) % modulus)


def jc_verify(a: Mat, dec: JCDecomposition) -> CheckReport:
    """
    Re-check every identity of a decomposition exactly.

    Returns:
        CheckReport: one entry per identity; failures are recorded, not raised
    """
    if (a.rows, a.cols) != (dec.s.rows, dec.s.cols) or (a.rows, a.cols) != (dec.n.rows, dec.n.cols):
        raise ShapeError("Decomposition and matrix shapes disagree")
    report = CheckReport()
    state, big_m = dec.state, dec.squarefree.big_m
    s, n = dec.s, dec.n
    report.record('sum_equals_a', s + n == a)
    report.record('s_n_commute', s @ n == n @ s)
    report.record('p_of_s_zero', eval_poly_at(s, state.p).is_zero())
    report.record('n_nilpotent', n.power(a.rows).is_zero())
    report.record('s_is_polynomial_in_a', eval_poly_at(a, dec.s_polynomial) == s)
    report.record('chi_s_equals_chi_a', char_poly(s) == dec.squarefree.chi)
    report.record('bezout_identity', state.g * state.p - state.h * state.p.derivative() == Poly.constant(1))
    recursion_ok = all(
        state.r[i] * state.p_derivs[1] + state.e[i] == state.b[i] * state.p - state.b[i - 1]
        for i in range(1, big_m) if i in state.r
    )
    report.record('recursion_identity', recursion_ok)
    report.record('telescoping', telescoping_holds(state, big_m) if big_m > 1 else True)
    return report
