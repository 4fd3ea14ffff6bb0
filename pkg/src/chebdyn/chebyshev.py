"""The two Chebyshev-type polynomial families and their dynamics.

The P family is defined by P_1 = z, P_2 = z^2 - 2 and the three-term rule
P_{m+1} = z P_m - P_{m-1}; it satisfies P_m(w + 1/w) = w^m + w^{-m}, so
P_m(2 cos t) = 2 cos(mt), the composition law P_l o P_m = P_{lm} holds, and
for m >= 3 the only critical values are +-2.  The Q family uses Q_2 = z^2 + 2
and Q_{m+1} = z Q_m + Q_{m-1}, which is the same structure twisted onto the
imaginary axis: Q_m(z) = (-i)^m P_m(iz).

Degrees m >= 2 define dynamical systems; m = 1 is kept as a basis element.
Everything here is a pure function of its arguments.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .intpoly import IntPolynomial

Numeric = Union[int, Fraction, float, complex]

# Orbit iteration in floats stops once an iterate exceeds this bound; squaring
# maps overflow doubles within a few further steps.
ESCAPE_GUARD = 1e150

#: Rational numbers of the form zeta + 1/zeta for a root of unity zeta.
#: Such a value generates a field of degree phi(N)/2 over the rationals, so
#: rationality forces phi(N) <= 2, i.e. N in {1, 2, 3, 4, 6}, giving exactly
#: 2, -2, -1, 0, 1.
RATIONAL_PREPERIODIC_P = (-2, -1, 0, 1, 2)

#: Rational values of zeta - 1/zeta: only N in {1, 2} give a rational (zero).
RATIONAL_PREPERIODIC_Q = (0,)


@dataclass(frozen=True)
class ChebyshevMap:
    """A dynamical map from one of the two families, of degree m >= 2."""

    family: str
    m: int

    def __post_init__(self):
        if self.family not in ("P", "Q"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.m < 2:
            raise ValueError("a dynamical map needs degree m >= 2")

    def __call__(self, z: Numeric) -> Numeric:
        return cheb_eval(self.family, self.m, z)

    def __str__(self) -> str:
        return f"{self.family}_{self.m}"


@lru_cache(maxsize=None)
def cheb_poly(family: str, m: int) -> IntPolynomial:
    """Exact coefficients of P_m or Q_m, monic of degree m.

    >>> str(cheb_poly("P", 3))
    'z^3 - 3*z'
    """
    if family not in ("P", "Q"):
        raise ValueError(f"unknown family {family!r}")
    if m < 1:
        raise ValueError("family members start at m = 1")
    z = IntPolynomial.variable()
    prev = z
    if m == 1:
        return prev
    cur = z * z - (2 if family == "P" else -2)
    for _ in range(m - 2):
        if family == "P":
            prev, cur = cur, z * cur - prev
        else:
            prev, cur = cur, z * cur + prev
    return cur


def cheb_eval(family: str, m: int, z: Numeric) -> Numeric:
    """Evaluate P_m or Q_m by the three-term recursion, staying in the
    arithmetic of the argument (exact for int and Fraction)."""
    if family not in ("P", "Q"):
        raise ValueError(f"unknown family {family!r}")
    if m < 1:
        raise ValueError("family members start at m = 1")
    if m == 1:
        return z
    prev = z
    cur = z * z - 2 if family == "P" else z * z + 2
    for _ in range(m - 2):
        if family == "P":
            prev, cur = cur, z * cur - prev
        else:
            prev, cur = cur, z * cur + prev
    return cur


def scaled_cheb_values(family: str, u: int, w: int, upto: int) -> list[int]:
    """Integers w^k * F_k(u/w) for k = 0..upto, where F is the chosen family.

    F_0 = 2 by the w + 1/w parametrization.  Satisfies the integer recursion
    s_{k+1} = u s_k -+ w^2 s_{k-1} (minus for P, plus for Q), which keeps norm
    computations for rational arguments entirely in integer arithmetic.
    """
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    w2 = w * w
    out = [2]
    if upto == 0:
        return out
    out.append(u)
    if family == "P":
        for _ in range(upto - 1):
            out.append(u * out[-1] - w2 * out[-2])
    else:
        for _ in range(upto - 1):
            out.append(u * out[-1] + w2 * out[-2])
    return out


@dataclass(frozen=True)
class Orbit:
    """A forward orbit segment.  ``repeat_index`` is the position at which a
    previously seen value reappeared (exact inputs only); ``escaped_at`` is
    the position of the first iterate past the float overflow guard."""

    points: tuple
    repeat_index: Optional[int] = None
    escaped_at: Optional[int] = None

    @property
    def preperiodicity_detected(self) -> bool:
        return self.repeat_index is not None


def orbit(map_: ChebyshevMap, z0: Numeric, k: int) -> Orbit:
    """Iterate the map k times from z0.

    Exact inputs (int, Fraction) get exact iteration with repeat detection;
    float and complex inputs never claim a repeat (rounding could fake one)
    and stop early once the overflow guard is exceeded.
    """
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    exact = isinstance(z0, (int, Fraction))
    points = [z0]
    if exact:
        seen = {z0: 0}
        z = z0
        for i in range(1, k + 1):
            z = map_(z)
            points.append(z)
            if z in seen:
                return Orbit(tuple(points), repeat_index=i)
            seen[z] = i
        return Orbit(tuple(points))
    z = z0
    for i in range(1, k + 1):
        z = map_(z)
        points.append(z)
        if abs(z) > ESCAPE_GUARD:
            return Orbit(tuple(points), escaped_at=i)
    return Orbit(tuple(points))


@dataclass(frozen=True)
class Preperiodicity:
    """Decision with witness: the witness orbit exhibits the detected cycle
    when one exists in the forward dynamics."""

    preperiodic: bool
    witness: Optional[Orbit] = None


def is_preperiodic_rational(map_: ChebyshevMap, alpha: Union[int, Fraction]) -> Preperiodicity:
    """Decide whether a rational number is preperiodic under the map.

    P family: exactly the five values -2, -1, 0, 1, 2 (the rational numbers
    of the form zeta + 1/zeta, see RATIONAL_PREPERIODIC_P).  Q family: only 0.
    For the Q family with even m the forward orbit of 0 leaves the
    zeta - 1/zeta locus (Q_2 sends 0 to 2 and then the orbit escapes), so a
    cycle witness is only available for odd m; membership is decided by value
    type either way.
    """
    alpha = Fraction(alpha)
    table = RATIONAL_PREPERIODIC_P if map_.family == "P" else RATIONAL_PREPERIODIC_Q
    if alpha not in table:
        return Preperiodicity(False, None)
    wit = orbit(map_, alpha, 12)
    return Preperiodicity(True, wit if wit.repeat_index is not None else None)
