"""S-integrality certificates for preperiodic points and the finiteness scan.

A preperiodic point b of a Chebyshev map is an algebraic integer (it is
zeta + 1/zeta for a root of unity zeta).  For rational alpha = u/w the
question whether some conjugate of b meets alpha at a prime p outside S
collapses to one integer divisibility: with d the degree of the conjugate
polynomial, the integer

    R = w^d * (minimal polynomial of b evaluated at u/w)

is divisible by exactly the primes p (with |alpha|_p <= 1) at which some
conjugate of b reduces to alpha at a place above p.  Indeed b - alpha has
positive valuation at a place above p for some conjugate iff p divides the
norm of b - alpha, which is +-R / w^d-cleared; the primes of w are excluded
by enlarging S, mirroring the usual reduction to |alpha|_p <= 1.  So the
point is S-integral with respect to alpha iff every prime factor of R lies
in S.

The scan walks all orbits of order N <= N_max (for fixed N the conjugates
form one Galois orbit, so one certificate per N suffices; the criterion is
Galois-stable), certifies each, and reports where the cumulative count of
integral orbits stops growing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .chebyshev import ChebyshevMap, is_preperiodic_rational
from .cyclotomic import (
    CollisionError,
    PreperiodicPoint,
    conjugates_greater_than,
    conjugate_norm_value,
    real_cyclotomic_value,
)
from .exact_arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    Factorization,
    Rational,
    factorize,
    is_prime,
    _int_multiplicity,
)

#: Reduced factoring effort for long scans; certificates that exceed it come
#: back indeterminate rather than stalling the sweep.
SCAN_BUDGET = FactorBudget(trial_limit=10_000, rho_iterations=4_000)


@dataclass(frozen=True)
class PlaceSet:
    """A finite set of places: the archimedean place (always included) plus
    finitely many primes."""

    finite_primes: frozenset[int] = frozenset()
    includes_archimedean: bool = True

    def __post_init__(self):
        if not self.includes_archimedean:
            raise ValueError("the set of places must contain the archimedean place")
        for p in self.finite_primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    @staticmethod
    def parse(text: str) -> "PlaceSet":
        primes = set()
        has_arch = False
        for part in text.split(","):
            part = part.strip().lower()
            if not part:
                continue
            if part in ("inf", "infinity", "arch", "oo"):
                has_arch = True
            else:
                primes.add(int(part))
        if not has_arch:
            raise ValueError("the place set must list 'inf'")
        return PlaceSet(frozenset(primes))

    def extended(self, primes) -> "PlaceSet":
        return PlaceSet(self.finite_primes | frozenset(primes))

    def __str__(self) -> str:
        return ",".join(["inf"] + [str(p) for p in sorted(self.finite_primes)])


@dataclass(frozen=True)
class IntegralityCertificate:
    """Outcome of one S-integrality check.

    ``verdict`` is True when every prime factor of the meeting integer lies
    in S (with a complete factorization), False when an offending prime was
    certified, and None when the factoring budget left a composite cofactor
    so the offending set could not be pinned down.
    """

    point: PreperiodicPoint
    alpha: Rational
    resultant: int
    factorization: Optional[Factorization]
    offending_primes: tuple[int, ...]
    verdict: Optional[bool]
    s_extension: tuple[int, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class ScanRecord:
    """One orbit in a finiteness scan (CSV-friendly flattening of the
    certificate)."""

    N: int
    a: int
    degree: int
    resultant: int
    verdict: Optional[bool]
    offending: tuple[int, ...]
    note: str = ""


@dataclass(frozen=True)
class ScanSummary:
    """Stabilization data: which orders produced integral orbits, the last
    order that added one, and the orders left undecided."""

    member_orders: tuple[int, ...]
    stabilization_N: int
    n_max: int
    indeterminate_orders: tuple[int, ...] = ()

    @property
    def final_count(self) -> int:
        return len(self.member_orders)

    def cumulative_counts(self) -> list[int]:
        """Cumulative number of integral orbits for N = 1..n_max."""
        counts = []
        c = 0
        members = set(self.member_orders)
        for N in range(1, self.n_max + 1):
            if N in members:
                c += 1
            counts.append(c)
        return counts


def meets_integer(point: PreperiodicPoint, alpha: Union[Rational, int]) -> int:
    """The integer R whose prime divisors outside the primes of
    denominator(alpha) are exactly the primes where a conjugate of the point
    meets alpha."""
    alpha = Fraction(alpha)
    u, w = alpha.numerator, alpha.denominator
    N = point.N
    if point.family == "P":
        if N == 1:
            return u - 2 * w
        if N == 2:
            return u + 2 * w
        square = conjugate_norm_value("P", N, alpha)
        # square = Psi_N(alpha)^2, so R^2 = w^(2 deg) * square is a perfect
        # square integer; recover |R| and attach the sign by conjugate count.
        r2 = square * w ** (2 * point.degree)
        assert r2.denominator == 1
        r_abs = isqrt(r2.numerator)
        if r_abs * r_abs != r2.numerator:
            raise ArithmeticError("norm square is not a perfect square")
        if r_abs == 0:
            raise CollisionError(f"{alpha} is a conjugate of the point")
        sign = -1 if conjugates_greater_than(N, alpha) % 2 else 1
        return sign * r_abs
    val = conjugate_norm_value("Q", N, alpha) * w**point.degree
    assert val.denominator == 1
    if val == 0:
        raise CollisionError(f"{alpha} is a conjugate of the point")
    return val.numerator


def is_s_integral(
    point: PreperiodicPoint,
    alpha: Union[Rational, int],
    S: PlaceSet,
    budget: FactorBudget = DEFAULT_BUDGET,
) -> IntegralityCertificate:
    """Certify whether the point is S-integral with respect to alpha.

    S is silently extended by the primes of the denominator of alpha (the
    certificate records the extension).  The meeting integer is factored
    within the budget; a leftover composite cofactor yields verdict None.
    """
    alpha = Fraction(alpha)
    extension = tuple(
        p
        for p, _ in (factorize(alpha.denominator).factors if alpha.denominator > 1 else ())
        if p not in S.finite_primes
    )
    s_all = S.finite_primes | set(extension)
    R = meets_integer(point, alpha)
    m = abs(R)
    found: dict[int, int] = {}
    for p in sorted(s_all):
        e, m = _int_multiplicity(m, p)
        if e:
            found[p] = e
    note = f"S extended by {extension}" if extension else ""
    if m == 1:
        fact = Factorization(tuple(sorted(found.items())), 1 if R > 0 else -1, True)
        return IntegralityCertificate(
            point, alpha, R, fact, (), True, s_extension=extension, note=note
        )
    tail = factorize(m, budget)
    merged = dict(found)
    for b, e in tail.factors:
        merged[b] = merged.get(b, 0) + e
    fact = Factorization(
        tuple(sorted(merged.items())), 1 if R > 0 else -1, tail.complete, tail.pseudo
    )
    offending = tuple(sorted(b for b in dict(tail.factors) if b not in tail.pseudo))
    if not tail.complete:
        return IntegralityCertificate(
            point,
            alpha,
            R,
            fact,
            offending,
            None,
            s_extension=extension,
            note=(note + "; " if note else "") + "factorization incomplete",
        )
    return IntegralityCertificate(
        point, alpha, R, fact, offending, False, s_extension=extension, note=note
    )


def is_s_integral_direct_rational(
    beta: Union[Rational, int], alpha: Union[Rational, int], S: PlaceSet
) -> bool:
    """Definition-level check for a rational preperiodic value beta: no prime
    outside S (extended at the denominator of alpha) may divide beta - alpha
    while |alpha|_p <= 1.  Used as the degree-one cross-check."""
    beta, alpha = Fraction(beta), Fraction(alpha)
    diff = beta - alpha
    if diff == 0:
        raise CollisionError("beta equals alpha")
    extension = (
        {p for p, _ in factorize(alpha.denominator).factors}
        if alpha.denominator > 1
        else set()
    )
    s_all = S.finite_primes | extension
    num = abs(diff.numerator)
    for p in s_all:
        _, num = _int_multiplicity(num, p)
    return num == 1


def finiteness_scan(
    alpha: Union[Rational, int],
    S: PlaceSet,
    n_max: int,
    map_: ChebyshevMap = ChebyshevMap("P", 2),
    budget: FactorBudget = SCAN_BUDGET,
) -> tuple[list[ScanRecord], ScanSummary]:
    """Certify one representative per Galois orbit for all orders N <= n_max
    and report where the count of S-integral orbits stabilizes.

    Requires alpha non-preperiodic (otherwise infinitely many orbits would
    meet it nowhere and the question degenerates).  Indeterminate
    certificates are listed but never counted as integral.
    """
    alpha = Fraction(alpha)
    if is_preperiodic_rational(map_, alpha).preperiodic:
        raise ValueError(f"alpha = {alpha} is preperiodic")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    records: list[ScanRecord] = []
    members: list[int] = []
    indeterminate: list[int] = []
    for N in range(1, n_max + 1):
        point = PreperiodicPoint.canonical(map_.family, N, 1)
        cert = is_s_integral(point, alpha, S, budget)
        records.append(
            ScanRecord(
                N=N,
                a=point.a,
                degree=point.degree,
                resultant=cert.resultant,
                verdict=cert.verdict,
                offending=cert.offending_primes,
                note=cert.note,
            )
        )
        if cert.verdict is True:
            members.append(N)
        elif cert.verdict is None:
            indeterminate.append(N)
    summary = ScanSummary(
        member_orders=tuple(members),
        stabilization_N=members[-1] if members else 0,
        n_max=n_max,
        indeterminate_orders=tuple(indeterminate),
    )
    return records, summary
