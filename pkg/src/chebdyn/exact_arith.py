"""Exact rational arithmetic over the places of the rationals.

Rationals are ``fractions.Fraction`` values (already reduced, positive
denominator).  A place is either the archimedean absolute value or a p-adic
one; this module provides valuations, place-wise log absolute values, integer
factorization under an explicit budget, and the exact product-formula check
used everywhere else as a consistency oracle.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

Rational = Fraction

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_EXTRA_BASES = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def is_prime(n: int) -> bool:
    """Miller-Rabin primality check, deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_DETERMINISTIC_BOUND else _MR_BASES + _MR_EXTRA_BASES
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=8)
def primes_upto(limit: int) -> tuple[int, ...]:
    """Eratosthenes sieve, inclusive."""
    if limit < 2:
        return ()
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((limit - start) // p + 1)
    return tuple(i for i, v in enumerate(sieve) if v)


@dataclass(frozen=True, order=True)
class Place:
    """A place of the rationals: ``Place(None)`` is archimedean, ``Place(p)``
    is the p-adic place."""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    @staticmethod
    def archimedean() -> "Place":
        return ARCH

    @staticmethod
    def finite(p: int) -> "Place":
        return Place(p)

    @staticmethod
    def parse(text: str) -> "Place":
        t = text.strip().lower()
        if t in ("inf", "infinity", "arch", "oo"):
            return ARCH
        return Place(int(t))

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


ARCH = Place(None)


def _int_multiplicity(n: int, q: int) -> tuple[int, int]:
    """Largest e with q^e | n, together with the cofactor n / q^e."""
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e, n


def valuation(r: Rational | int, p: int) -> int:
    """The exponent of p in r, so |r|_p = p^(-valuation(r, p))."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = Fraction(r)
    if r == 0:
        raise ValueError("valuation of zero is undefined")
    e_num, _ = _int_multiplicity(abs(r.numerator), p)
    e_den, _ = _int_multiplicity(r.denominator, p)
    return e_num - e_den


def log_abs(r: Rational | int, place: Place) -> float:
    """log|r|_v.  Archimedean logs are split over numerator and denominator
    so arbitrarily large integers never pass through a float conversion."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("log_abs of zero is undefined")
    if place.is_archimedean:
        return math.log(abs(r.numerator)) - math.log(r.denominator)
    return -valuation(r, place.prime) * math.log(place.prime)


@dataclass(frozen=True)
class FactorBudget:
    """Effort cap for factorize(): trial division bound, Pollard-rho
    iteration cap, and the deterministic seed for rho."""

    trial_limit: int = 1_000_000
    rho_iterations: int = 200_000
    seed: int = 0


DEFAULT_BUDGET = FactorBudget()


@dataclass(frozen=True)
class Factorization:
    """Signed factorization; entries in ``pseudo`` are composite cofactors
    that exceeded the budget and are not certified prime."""

    factors: tuple[tuple[int, int], ...]
    sign: int
    complete: bool
    pseudo: frozenset[int] = field(default_factory=frozenset)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v


def _brent_rho(n: int, rng: random.Random, max_iters: int) -> Optional[int]:
    """Brent-cycle Pollard rho; returns a nontrivial factor or None once the
    total iteration budget (shared across restarts) is spent."""
    if n % 2 == 0:
        return 2
    spent = 0
    while spent < max_iters:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < max_iters:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
                spent += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> Factorization:
    """Factor a nonzero integer within the given budget.

    Trial division up to ``budget.trial_limit``, then Miller-Rabin plus
    Brent-rho on what remains.  A cofactor that resists the budget is kept
    as a pseudo-factor and the result is marked incomplete.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if n > 0 else -1
    n = abs(n)
    found: dict[int, int] = {}
    pseudo: set[int] = set()
    if n > 1:
        limit = budget.trial_limit
        if limit >= 2:
            for p in primes_upto(min(limit, max(2, math.isqrt(n) + 1))):
                if p * p > n:
                    break
                if n % p == 0:
                    e, n = _int_multiplicity(n, p)
                    found[p] = e
            if 1 < n <= limit * limit and (n <= limit or is_prime(n)):
                # remaining cofactor below the square of the trial bound is prime
                found[n] = found.get(n, 0) + 1
                n = 1
    rng = random.Random(budget.seed)
    stack = [n] if n > 1 else []
    budget_left = budget.rho_iterations
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        d = _brent_rho(m, rng, budget_left) if budget_left > 0 else None
        if d is None:
            pseudo.add(m)
            found[m] = found.get(m, 0) + 1
            continue
        budget_left //= 2
        stack.extend([d, m // d])
    # pseudo-factors may share divisors; refine to a pairwise-coprime base
    if len(pseudo) > 1 or (pseudo and len(found) > len(pseudo)):
        found, pseudo = _coprime_refine(found, pseudo)
    return Factorization(
        factors=tuple(sorted(found.items())),
        sign=sign,
        complete=not pseudo,
        pseudo=frozenset(pseudo),
    )


def _coprime_refine(found: dict[int, int], pseudo: set[int]) -> tuple[dict[int, int], set[int]]:
    """Split base elements until pairwise coprime, keeping exponents exact."""
    items = list(found.items())
    changed = True
    while changed:
        changed = False
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                a, ea = items[i]
                b, eb = items[j]
                g = math.gcd(a, b)
                if g == 1 or a == b:
                    continue
                new: dict[int, int] = {}
                for base, e in items:
                    if base in (a, b):
                        continue
                    new[base] = new.get(base, 0) + e
                for part, e in ((g, ea + eb), (a // g, ea), (b // g, eb)):
                    if part > 1:
                        new[part] = new.get(part, 0) + e
                items = list(new.items())
                changed = True
                break
            if changed:
                break
    out = dict(items)
    new_pseudo = {b for b in out if not is_prime(b)}
    return out, new_pseudo


@dataclass(frozen=True)
class PlaceTerm:
    """One line of a product-formula ledger: the place, the float value of
    log|r|_v, and the integer exponent vector over the factor base."""

    place: str
    log_value: float
    exponents: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ProductFormulaResult:
    rational: Fraction
    terms: tuple[PlaceTerm, ...]
    exact_zero: bool
    complete: bool
    note: str = ""

    @property
    def log_sum(self) -> float:
        return math.fsum(t.log_value for t in self.terms)


def product_formula_check(
    r: Rational | int, budget: FactorBudget = DEFAULT_BUDGET
) -> ProductFormulaResult:
    """Verify sum over all places of log|r|_v = 0 by exact exponent ledger.

    The archimedean term is log|num| - log|den|; each finite term is
    -v_p(r) log p, with valuations recomputed by direct division so the
    cancellation genuinely cross-checks the factorization.  Cancellation is
    asserted on integer exponents, never on floats.  If the budget leaves a
    composite cofactor, the ledger uses it as a pseudo-prime base and the
    result is flagged incomplete.
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("product formula needs a nonzero rational")
    num, den = abs(r.numerator), r.denominator
    f_num = factorize(num, budget) if num > 1 else None
    f_den = factorize(den, budget) if den > 1 else None
    base: dict[int, int] = {}
    for f, s in ((f_num, 1), (f_den, -1)):
        if f is None:
            continue
        for b, e in f.factors:
            base[b] = base.get(b, 0) + s * e
    arch_exps = tuple(sorted((b, e) for b, e in base.items() if e != 0))
    terms = [
        PlaceTerm(
            place="inf",
            log_value=log_abs(r, ARCH),
            exponents=arch_exps,
        )
    ]
    totals = {b: e for b, e in arch_exps}
    for b in sorted(base):
        e_num, _ = _int_multiplicity(num, b)
        e_den, _ = _int_multiplicity(den, b)
        v = e_num - e_den
        if v == 0:
            continue
        terms.append(
            PlaceTerm(place=str(b), log_value=-v * math.log(b), exponents=((b, -v),))
        )
        totals[b] = totals.get(b, 0) - v
    exact_zero = all(e == 0 for e in totals.values())
    complete = (f_num is None or f_num.complete) and (f_den is None or f_den.complete)
    note = "" if complete else "factor base contains composite pseudo-primes"
    return ProductFormulaResult(
        rational=r,
        terms=tuple(terms),
        exact_zero=exact_zero,
        complete=complete,
        note=note,
    )


# --- small multiplicative helpers used by the cyclotomic and counting code ---


def factor_small(n: int) -> dict[int, int]:
    """Trial-division factorization for parameter-sized integers."""
    if n < 1:
        raise ValueError("factor_small needs n >= 1")
    out: dict[int, int] = {}
    m = n
    for p in primes_upto(max(2, math.isqrt(n) + 1)):
        if p * p > m:
            break
        if m % p == 0:
            out[p], m = _int_multiplicity(m, p)
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def euler_phi(n: int) -> int:
    phi = n
    for p in factor_small(n):
        phi -= phi // p
    return phi


def moebius(n: int) -> int:
    f = factor_small(n) if n > 1 else {}
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factor_small(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def coprime_count_in_range(n: int, lo: int, hi: int) -> int:
    """#{a in [lo, hi] : gcd(a, n) = 1} by inclusion-exclusion over the
    prime radical of n."""
    if hi < lo:
        return 0
    primes = list(factor_small(n)) if n > 1 else []

    def upto(x: int) -> int:
        total = 0
        for mask in range(1 << len(primes)):
            d = 1
            bits = 0
            mm = mask
            i = 0
            while mm:
                if mm & 1:
                    d *= primes[i]
                    bits += 1
                mm >>= 1
                i += 1
            total += (-1) ** bits * (x // d)
        return total

    return upto(hi) - upto(lo - 1)
