"""Exact cyclotomic machinery for the preperiodic points of Chebyshev maps.

The finite preperiodic points of the P family are the numbers
x = zeta + 1/zeta with zeta a primitive N-th root of unity, i.e.
x = 2 cos(2 pi a / N) with gcd(a, N) = 1; the Q family uses zeta - 1/zeta,
i.e. 2i sin(2 pi a / N).  For fixed N all such values form a single Galois
orbit over the rationals.

This module computes, all in exact integer arithmetic:

* the cyclotomic polynomials Phi_N (two independent algorithms),
* the real cyclotomic polynomial Psi_N, the monic minimal polynomial of
  2 cos(2 pi / N), via the palindromic decomposition of Phi_N in the
  Chebyshev basis: Phi_N(x) / x^d = c_0 + sum c_k (x^k + x^{-k}) turns into
  Psi_N(z) = c_0 + sum c_k P_k(z),
* the conjugate polynomial of degree phi(N) whose roots are all conjugate
  values with multiplicity (equal to Psi_N^2 for the P family, N >= 3),
  computed by reducing Phi_N modulo x^2 - w x + c (c = +1 for P, -1 for Q),
  which realizes the resultant of Phi_N against that quadratic; a literal
  Sylvester-matrix route is kept as an independent cross-check,
* exact rational values of the conjugate polynomial at rational arguments
  at large N, via the divisor product
      Phi_N(g) Phi_N(g') = prod_{d | N} (c^d + 1 - F_d(alpha))^{mu(N/d)}
  where g, g' are the roots of x^2 - alpha x + c and F_d is the degree-d
  family member, so no coefficient vector of Phi_N is ever needed.

Results are cached in immutable memo tables; everything is pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

import mpmath

from .chebyshev import cheb_poly, scaled_cheb_values
from .exact_arith import coprime_count_in_range, divisors, euler_phi, moebius
from .intpoly import IntPolynomial, bareiss_determinant


class CollisionError(ValueError):
    """Raised when a rational argument coincides with a conjugate value."""


class PrecisionError(ValueError):
    """Raised when an exact comparison cannot be certified at the maximum
    working precision."""


def _mul_sparse(coeffs: list[int], d: int) -> list[int]:
    """Multiply by (x^d - 1)."""
    out = [0] * (len(coeffs) + d)
    for i, c in enumerate(coeffs):
        out[i + d] += c
        out[i] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


def _div_sparse(coeffs: list[int], d: int) -> list[int]:
    """Exact division by (x^d - 1)."""
    rem = list(coeffs)
    if len(rem) <= d:
        raise ValueError("degree too small for exact division")
    quot = [0] * (len(rem) - d)
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            quot[i - d] = c
            rem[i] = 0
            rem[i - d] += c
    if any(rem[:d]):
        raise ValueError("inexact division by x^d - 1")
    while quot and quot[-1] == 0:
        quot.pop()
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> IntPolynomial:
    """Phi_N, exactly, via the divisor product
    Phi_N(x) = prod_{d | N} (x^d - 1)^{mu(N/d)}.

    >>> str(cyclotomic_poly(12))
    'z^4 - z^2 + 1'
    """
    if N < 1:
        raise ValueError("N must be positive")
    if N == 1:
        return IntPolynomial((-1, 1))
    pos = [d for d in divisors(N) if moebius(N // d) == 1]
    neg = [d for d in divisors(N) if moebius(N // d) == -1]
    acc = [1]
    for d in pos:
        acc = _mul_sparse(acc, d)
    for d in neg:
        acc = _div_sparse(acc, d)
    poly = IntPolynomial(acc)
    assert poly.degree == euler_phi(N)
    return poly


@lru_cache(maxsize=None)
def cyclotomic_poly_by_quotients(N: int) -> IntPolynomial:
    """Phi_N by peeling proper-divisor factors out of x^N - 1.

    Slower than cyclotomic_poly but fully independent of it; the two are
    compared in the test suite.
    """
    if N < 1:
        raise ValueError("N must be positive")
    poly = IntPolynomial((-1,) + (0,) * (N - 1) + (1,))
    for d in divisors(N):
        if d < N:
            poly = poly.exact_div(cyclotomic_poly_by_quotients(d))
    return poly


def psi_degree(N: int) -> int:
    """Degree of Psi_N: phi(N)/2 for N >= 3, and 1 for N = 1, 2."""
    if N < 1:
        raise ValueError("N must be positive")
    return 1 if N <= 2 else euler_phi(N) // 2


@lru_cache(maxsize=None)
def real_cyclotomic_poly(N: int) -> IntPolynomial:
    """Psi_N, the monic minimal polynomial of 2 cos(2 pi / N).

    >>> str(real_cyclotomic_poly(5))
    'z^2 + z - 1'
    """
    if N < 1:
        raise ValueError("N must be positive")
    if N == 1:
        return IntPolynomial((-2, 1))
    if N == 2:
        return IntPolynomial((2, 1))
    phi = cyclotomic_poly(N)
    d = phi.degree // 2
    cs = phi.coeffs
    assert cs == tuple(reversed(cs)), "cyclotomic polynomials are palindromic"
    acc = [0] * (d + 1)
    acc[0] = cs[d]
    for k in range(1, d + 1):
        ck = cs[d + k]
        if ck == 0:
            continue
        for i, pc in enumerate(cheb_poly("P", k).coeffs):
            acc[i] += ck * pc
    psi = IntPolynomial(acc)
    assert psi.degree == d and psi.is_monic()
    return psi


def _unit_root_product_sign(N: int) -> int:
    # product of the primitive N-th roots of unity: -1 for N = 2, else +1
    return -1 if N == 2 else 1


@lru_cache(maxsize=None)
def conjugate_poly(family: str, N: int) -> IntPolynomial:
    """Monic integer polynomial of degree phi(N) whose roots are all the
    conjugate values (with multiplicity) of the family's point of order N.

    Computed by reducing Phi_N modulo the quadratic x^2 - w x + c over the
    polynomial ring in w: if Phi_N = A(w) + B(w) x after reduction, the
    product of Phi_N over both quadratic roots is A^2 + A B w + c B^2.
    For the P family with N >= 3 this equals Psi_N(w)^2.

    >>> str(conjugate_poly("Q", 4))
    'z^2 + 4'
    """
    if family not in ("P", "Q"):
        raise ValueError(f"unknown family {family!r}")
    if N < 1:
        raise ValueError("N must be positive")
    c = 1 if family == "P" else -1
    phi = cyclotomic_poly(N)
    A = [0]
    B = [0]
    # invariants: x^k = a_k(w) + b_k(w) x  modulo  x^2 - w x + c
    a = [1]
    b = [0]
    for k, ck in enumerate(phi.coeffs):
        if ck:
            _acc_scaled(A, a, ck)
            _acc_scaled(B, b, ck)
        if k < phi.degree:
            # multiply by x:  a + b x  ->  -c b + (a + w b) x
            a, b = [-c * t for t in b], _add_shift(a, b)
    pa, pb = IntPolynomial(A), IntPolynomial(B)
    w = IntPolynomial.variable()
    res = pa * pa + pa * pb * w + c * (pb * pb)
    sign = (-1) ** euler_phi(N) * _unit_root_product_sign(N)
    poly = res if sign == 1 else -res
    assert poly.is_monic() and poly.degree == euler_phi(N)
    return poly


def _acc_scaled(target: list[int], src: list[int], scale: int) -> None:
    if len(src) > len(target):
        target.extend([0] * (len(src) - len(target)))
    for i, v in enumerate(src):
        if v:
            target[i] += scale * v


def _add_shift(a: list[int], b: list[int]) -> list[int]:
    """a(w) + w * b(w) as coefficient lists."""
    out = [0] * max(len(a), len(b) + 1)
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i + 1] += v
    while out and out[-1] == 0:
        out.pop()
    return out


def conjugate_poly_by_resultant(family: str, N: int) -> IntPolynomial:
    """The same conjugate polynomial via the Sylvester matrix of Phi_N and
    x^2 - w x + c, eliminated fraction-free (Bareiss).  Cubic in phi(N), so
    meant for cross-checks at small N rather than production sweeps.
    """
    if family not in ("P", "Q"):
        raise ValueError(f"unknown family {family!r}")
    if N < 1:
        raise ValueError("N must be positive")
    c = 1 if family == "P" else -1
    f = cyclotomic_poly(N)
    n = f.degree
    zero = IntPolynomial()
    g_row = [IntPolynomial((1,)), IntPolynomial((0, -1)), IntPolynomial((c,))]
    size = n + 2
    rows: list[list[IntPolynomial]] = []
    f_desc = [IntPolynomial((coeff,)) for coeff in reversed(f.coeffs)]
    for i in range(2):
        rows.append([zero] * i + f_desc + [zero] * (2 - 1 - i))
    for j in range(n):
        rows.append([zero] * j + g_row + [zero] * (size - 3 - j))
    res = bareiss_determinant(rows)
    sign = (-1) ** euler_phi(N) * _unit_root_product_sign(N)
    poly = res if sign == 1 else -res
    assert poly.is_monic()
    return poly


@dataclass(frozen=True)
class PreperiodicPoint:
    """A Galois orbit representative: the value zeta^a + zeta^{-a} for the
    P family or zeta^a - zeta^{-a} for the Q family, zeta = e^{2 pi i / N}.

    P-family representatives are canonicalized into 1 <= a <= N/2 (a and
    N - a give equal values); Q-family ones keep 1 <= a <= N (a and N - a
    give negated values).
    """

    family: str
    N: int
    a: int

    def __post_init__(self):
        if self.family not in ("P", "Q"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.N < 1:
            raise ValueError("N must be positive")
        if not (1 <= self.a <= self.N) or gcd(self.a, self.N) != 1:
            raise ValueError("a must lie in [1, N] and be coprime to N")
        if self.family == "P" and self.N >= 3 and self.a > self.N // 2:
            raise ValueError("P-family representative must satisfy a <= N/2")

    @staticmethod
    def canonical(family: str, N: int, a: int) -> "PreperiodicPoint":
        a = a % N
        if a == 0:
            a = N
        if gcd(a, N) != 1:
            raise ValueError("a must be coprime to N")
        if family == "P" and N >= 3:
            a = min(a, N - a)
        return PreperiodicPoint(family, N, a)

    @property
    def degree(self) -> int:
        """Field degree for P points; conjugate-multiset size for Q points."""
        if self.N <= 2:
            return 1
        return euler_phi(self.N) // 2 if self.family == "P" else euler_phi(self.N)

    def value(self) -> Union[float, complex]:
        t = 2 * math.pi * self.a / self.N
        if self.family == "P":
            return 2 * math.cos(t)
        return complex(0.0, 2 * math.sin(t))


@dataclass(frozen=True)
class GaloisOrbit:
    """All canonical representatives of order N in one family."""

    family: str
    N: int
    representatives: tuple[int, ...]
    degree: int

    def values(self) -> list:
        return [PreperiodicPoint(self.family, self.N, a).value() for a in self.representatives]


@lru_cache(maxsize=None)
def galois_orbit(family: str, N: int) -> GaloisOrbit:
    """Canonical representatives: {a <= N/2 : gcd(a, N) = 1} for the P family
    with N >= 3 (degree phi(N)/2), all coprime a in [1, N] for the Q family.
    """
    if family not in ("P", "Q"):
        raise ValueError(f"unknown family {family!r}")
    if N < 1:
        raise ValueError("N must be positive")
    if N <= 2:
        return GaloisOrbit(family, N, (1,), 1)
    if family == "P":
        reps = tuple(a for a in range(1, N // 2 + 1) if gcd(a, N) == 1)
        return GaloisOrbit(family, N, reps, euler_phi(N) // 2)
    reps = tuple(a for a in range(1, N + 1) if gcd(a, N) == 1)
    return GaloisOrbit(family, N, reps, euler_phi(N))


def conjugate_norm_value(family: str, N: int, alpha: Fraction) -> Fraction:
    """Exact value of conjugate_poly(family, N) at a rational argument.

    Uses the divisor product over d | N of (c^d + 1 - F_d(alpha))^{mu(N/d)}
    in scaled integer form, so the cost is O(N) integer operations however
    large phi(N) is.  Raises CollisionError when the argument is itself a
    conjugate value of some order dividing N.
    """
    alpha = Fraction(alpha)
    u, w = alpha.numerator, alpha.denominator
    seq = scaled_cheb_values(family, u, w, N)
    c = 1 if family == "P" else -1
    num = 1
    den = 1
    for d in divisors(N):
        mu = moebius(N // d)
        if mu == 0:
            continue
        base = (c**d + 1) * w**d - seq[d]
        if base == 0:
            raise CollisionError(
                f"argument {alpha} is a conjugate value of order dividing {d}"
            )
        if mu == 1:
            num *= base
        else:
            den *= base
    phi = euler_phi(N)
    sign = (-1) ** phi * _unit_root_product_sign(N)
    return sign * Fraction(num, den * w**phi)


_EXACT_ANGLE = {
    Fraction(2): Fraction(0),
    Fraction(1): Fraction(1, 6),
    Fraction(0): Fraction(1, 4),
    Fraction(-1): Fraction(1, 3),
    Fraction(-2): Fraction(1, 2),
}


def angle_ratio(alpha) -> "mpmath.mpf":
    """arccos(alpha/2) / (2 pi) at the current mpmath precision."""
    return mpmath.acos(mpmath.mpf(alpha.numerator) / alpha.denominator / 2) / (2 * mpmath.pi)


def _certified_floor(scale: int, ratio_fn, max_dps: int = 300) -> int:
    """floor(scale * ratio) where ratio is an irrational in [0, 1] available
    at arbitrary precision; escalates until the floor is certain."""
    dps = 30
    while dps <= max_dps:
        with mpmath.workdps(dps):
            t = scale * ratio_fn()
            fl = int(mpmath.floor(t))
            eps = mpmath.mpf(10) ** (8 - dps)
            if t - fl > eps and fl + 1 - t > eps:
                return fl
        dps *= 2
    raise PrecisionError("comparison undecidable at maximum precision")


def conjugates_greater_than(N: int, alpha: Fraction) -> int:
    """Exact count of P-family conjugates 2 cos(2 pi a / N) exceeding alpha.

    Decided in the angle domain: 2 cos(2 pi a / N) > alpha iff
    a < N arccos(alpha/2) / (2 pi), compared at adaptive precision (exactly,
    when alpha is one of the five rational conjugate values).
    """
    alpha = Fraction(alpha)
    if alpha >= 2:
        return 0
    orbit = galois_orbit("P", N)
    if alpha < -2:
        return len(orbit.representatives)
    if N == 1:
        return 1 if alpha < 2 else 0
    if N == 2:
        return 1 if alpha < -2 else 0
    if alpha in _EXACT_ANGLE:
        t = N * _EXACT_ANGLE[alpha]
        a_max = -(-t.numerator // t.denominator) - 1  # strict: a < t
    else:
        a_max = _certified_floor(N, lambda: angle_ratio(alpha))
    a_max = min(a_max, (N - 1) // 2)
    if a_max < 1:
        return 0
    return coprime_count_in_range(N, 1, a_max)


def real_cyclotomic_value(N: int, alpha: Fraction) -> Fraction:
    """Signed exact value Psi_N(alpha) for rational alpha.

    For N >= 3 the magnitude comes from the divisor-product square and the
    sign from the parity of the number of conjugates above alpha.
    """
    alpha = Fraction(alpha)
    if N < 1:
        raise ValueError("N must be positive")
    if N == 1:
        return alpha - 2
    if N == 2:
        return alpha + 2
    square = conjugate_norm_value("P", N, alpha)
    if square == 0:
        raise CollisionError(f"{alpha} is a conjugate value of order {N}")
    num_root = isqrt(square.numerator)
    den_root = isqrt(square.denominator)
    if num_root * num_root != square.numerator or den_root * den_root != square.denominator:
        raise ArithmeticError("conjugate norm square is not a perfect square")
    sign = -1 if conjugates_greater_than(N, alpha) % 2 else 1
    return sign * Fraction(num_root, den_root)
