"""Quantitative equidistribution checks for conjugate orbits on [-2, 2].

Conjugates of the order-N point are 2 cos(2 pi a / N) over a coprime to N,
a <= N/2.  Counting how many land in a half-open interval (c, d] reduces to
counting coprime integers in an explicit angular range, because

    2 cos(2 pi a / N) in (c, d]  iff  a in [N t_d, N t_c)

with t_x = arccos(x/2) / (2 pi).  The expected count is the measure of the
interval, degree * (arccos(c/2) - arccos(d/2)) / pi, and the deviation stays
far below the degree in practice.

The gap probe records, for a fixed non-preperiodic rational alpha, how close
fractions a/N come to the angle t_alpha; every gap is strictly positive
(t_alpha is irrational) and the record gaps shrink polynomially in N, which
is the behaviour the height machinery relies on near the segment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Union

import mpmath
import numpy as np

from .chebyshev import ChebyshevMap, is_preperiodic_rational
from .cyclotomic import PrecisionError, _EXACT_ANGLE, galois_orbit
from .exact_arith import Rational, coprime_count_in_range
from .heights import local_height_arch_quadrature, measure_integral


class EndpointTieError(ValueError):
    """An interval endpoint coincides (to the maximum working precision)
    with a conjugate value; carries the colliding index."""

    def __init__(self, endpoint: float, N: int, a: int):
        super().__init__(
            f"endpoint {endpoint!r} ties with conjugate a={a} of order {N}; "
            "perturb the endpoint"
        )
        self.endpoint = endpoint
        self.N = N
        self.a = a


@dataclass(frozen=True)
class Interval:
    """Half-open interval (c, d] inside [-2, 2]."""

    c: float
    d: float

    def __post_init__(self):
        if not (-2 <= self.c < self.d <= 2):
            raise ValueError("need -2 <= c < d <= 2")

    def __str__(self) -> str:
        return f"({self.c}, {self.d}]"


@dataclass(frozen=True)
class GapRecord:
    """A record-setting rational approximation a/N of the target angle."""

    N: int
    a: int
    gap: float
    record: bool = True


@dataclass(frozen=True)
class ProbeResult:
    theta0: float
    records: tuple[GapRecord, ...]
    fitted_exponent: float
    exponent_stderr: float
    all_gaps_positive: bool


@dataclass(frozen=True)
class EquidistAverage:
    """Conjugate average of a test function next to its measure integral."""

    N: int
    degree: int
    function: str
    average: float
    integral: float

    @property
    def difference(self) -> float:
        return self.average - self.integral


def _angle_threshold(endpoint: float, N: int, max_dps: int = 300) -> int:
    """Largest integer strictly below N * arccos(endpoint/2) / (2 pi).

    Exact for the five rational endpoint values whose angle is rational;
    adaptive mpmath precision otherwise, raising EndpointTieError when the
    comparison stays undecidable.
    """
    key = Fraction(endpoint) if float(endpoint).is_integer() else None
    if key is not None and key in _EXACT_ANGLE:
        t = N * _EXACT_ANGLE[key]
        return -(-t.numerator // t.denominator) - 1  # ceil(t) - 1, exact
    dps = 30
    while dps <= max_dps:
        with mpmath.workdps(dps):
            t = N * mpmath.acos(mpmath.mpf(endpoint) / 2) / (2 * mpmath.pi)
            fl = int(mpmath.floor(t))
            eps = mpmath.mpf(10) ** (8 - dps)
            if t - fl > eps and fl + 1 - t > eps:
                return fl
        dps *= 2
    with mpmath.workdps(60):
        t = N * mpmath.acos(mpmath.mpf(endpoint) / 2) / (2 * mpmath.pi)
        a = int(mpmath.nint(t))
    raise EndpointTieError(endpoint, N, a)


def count_in_interval(N: int, interval: Interval, max_dps: int = 300) -> int:
    """Exact number of conjugates 2 cos(2 pi a / N) in (c, d]."""
    if N < 1:
        raise ValueError("N must be positive")
    if N == 1:
        return 1 if interval.d == 2 else 0  # single conjugate: the value 2
    if N == 2:
        return 0  # single conjugate -2, never inside a half-open (c, d]
    # x > c iff a < N t_c ; x <= d iff a >= N t_d
    hi = _angle_threshold(interval.c, N, max_dps)
    lo_excl = _angle_threshold(interval.d, N, max_dps)
    lo = lo_excl + 1
    hi = min(hi, (N - 1) // 2)
    lo = max(lo, 1)
    if hi < lo:
        return 0
    return coprime_count_in_range(N, lo, hi)


def arccos_prediction(interval: Interval, degree: int) -> float:
    """Main equidistribution term: degree * (arccos(c/2) - arccos(d/2)) / pi."""
    return degree * (math.acos(interval.c / 2) - math.acos(interval.d / 2)) / math.pi


# Built-in test functions: monomials up to degree 8, half-open interval
# indicators, and log-distance to a point off the segment.


def _parse_function(fid: str) -> tuple[Callable[[float], float], Optional[float]]:
    """Resolve a function id to (callable, exact integral if one is known)."""
    fid = fid.strip()
    if fid == "x" or (fid.startswith("x^") and fid[2:].isdigit()):
        k = 1 if fid == "x" else int(fid[2:])
        if not 1 <= k <= 8:
            raise ValueError("monomials are supported up to degree 8")
        return (lambda t, k=k: t**k), None
    if fid.startswith("indicator:"):
        c, d = (float(s) for s in fid[len("indicator:") :].split(","))
        iv = Interval(c, d)
        return (lambda t: 1.0 if iv.c < t <= iv.d else 0.0), None
    if fid.startswith("logdist:"):
        arg = fid[len("logdist:") :]
        alpha = float(Fraction(arg)) if "/" in arg else float(arg)
        if -2 <= alpha <= 2:
            raise ValueError("logdist wants a point off the segment")
        return (lambda t, a=alpha: math.log(abs(t - a))), None
    raise ValueError(f"unknown test function {fid!r}")


FUNCTION_IDS = tuple(["x"] + [f"x^{k}" for k in range(2, 9)]) + (
    "indicator:c,d",
    "logdist:alpha",
)


def equidistribution_average(N: int, fid: str, nodes: int = 1 << 16) -> EquidistAverage:
    """Average of a library function over the order-N conjugates, next to
    its integral against the invariant measure (computed by the same node
    quadrature the height code uses)."""
    f, exact = _parse_function(fid)
    orbit = galois_orbit("P", N)
    values = orbit.values()
    avg = math.fsum(f(v) for v in values) / len(values)
    if fid.startswith("logdist:"):
        alpha = float(Fraction(fid[len("logdist:") :]))
        integral = local_height_arch_quadrature(alpha, nodes).value
    else:
        integral = exact if exact is not None else measure_integral(f, nodes)
    return EquidistAverage(N, len(values), fid, avg, integral)


@dataclass(frozen=True)
class CountRow:
    """Counting-lemma sweep row: exact count vs. the arccos main term."""

    N: int
    degree: int
    count: int
    prediction: float
    deviation: float


def count_sweep(interval: Interval, n_max: int) -> list[CountRow]:
    """count_in_interval against arccos_prediction for all orders up to n_max."""
    rows = []
    for N in range(1, n_max + 1):
        deg = galois_orbit("P", N).degree
        c = count_in_interval(N, interval)
        pred = arccos_prediction(interval, deg)
        rows.append(CountRow(N, deg, c, pred, c - pred))
    return rows


def baker_gap_probe(
    alpha: Union[Rational, int], n_max: int, map_: ChebyshevMap = ChebyshevMap("P", 2)
) -> ProbeResult:
    """Sweep coprime pairs (a, N), N <= n_max, for the closest approaches of
    a/N to theta0 = arccos(alpha/2) / (2 pi).

    alpha must be a non-preperiodic rational strictly inside (-2, 2), which
    makes theta0 irrational and every gap strictly positive.  The successive
    record gaps are fitted by gap ~ N^(-C); the fit is descriptive, the only
    asserted facts being positivity of all gaps and of the exponent.
    """
    alpha = Fraction(alpha)
    if not (-2 < alpha < 2):
        raise ValueError("alpha must lie strictly inside (-2, 2)")
    if is_preperiodic_rational(map_, alpha).preperiodic:
        raise ValueError(f"alpha = {alpha} is preperiodic")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    with mpmath.workdps(60):
        theta_hp = mpmath.acos(mpmath.mpf(alpha.numerator) / alpha.denominator / 2) / (
            2 * mpmath.pi
        )
        theta0 = float(theta_hp)
    records: list[GapRecord] = []
    best = math.inf
    all_positive = True
    for N in range(2, n_max + 1):
        center = theta0 * N
        a_best = None
        gap_best = math.inf
        base = int(math.floor(center))
        for a in range(max(0, base - 2), base + 3):
            if a < 0 or gcd(a, N) != 1:
                continue
            g = abs(a / N - theta0)
            if g < gap_best:
                gap_best, a_best = g, a
        if a_best is None:
            continue
        if gap_best <= 0:
            all_positive = False
        if gap_best < best:
            # confirm the record at high precision before freezing it
            with mpmath.workdps(60):
                g_hp = abs(mpmath.mpf(a_best) / N - theta_hp)
                gap_best = float(g_hp)
                if g_hp <= 0:
                    all_positive = False
            best = gap_best
            records.append(GapRecord(N=N, a=a_best, gap=gap_best))
    pts = [(r.N, r.gap) for r in records if r.gap > 0]
    if len(pts) >= 2:
        xs = np.log([p[0] for p in pts])
        ys = np.log([p[1] for p in pts])
        (slope, _intercept), cov = np.polyfit(xs, ys, 1, cov=True)
        exponent = -float(slope)
        stderr = float(math.sqrt(max(cov[0][0], 0.0)))
    else:
        exponent, stderr = float("nan"), float("nan")
    return ProbeResult(
        theta0=theta0,
        records=tuple(records),
        fitted_exponent=exponent,
        exponent_stderr=stderr,
        all_gaps_positive=all_positive,
    )
