"""Local and global canonical heights for Chebyshev dynamical systems.

The local height of a point at a place v is the growth rate
lim_k log max(|f^k(z)|_v, 1) / m^k.  At a finite prime the map has good
reduction and the limit collapses to log max(|z|_p, 1).  At the archimedean
place three independent routes are implemented:

* ``iterative``   - run the orbit until it escapes, then continue in the log
                    domain with the exact lower-order correction of the
                    leading term;
* ``quadrature``  - integrate log|x - z| against the invariant measure
                    (1/pi) dx / sqrt(4 - x^2) on [-2, 2], which the angle
                    substitution x = 2 cos t turns into a plain node average;
* ``closed``      - log|g| for the root g of g^2 - z g + 1 = 0 with |g| >= 1
                    (the Green's function of the segment), zero on [-2, 2].

The Galois-averaged log-distance of a preperiodic point to a rational number
is evaluated exactly through conjugate norms and converges to the local
height as the order grows; ``height_convergence_experiment`` tabulates that.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Union

import numpy as np

from .chebyshev import ChebyshevMap, cheb_eval, cheb_poly
from .cyclotomic import (
    CollisionError,
    PreperiodicPoint,
    conjugate_norm_value,
    psi_degree,
    real_cyclotomic_value,
)
from .exact_arith import ARCH, Place, Rational, factorize, log_abs, valuation
from .chebyshev import is_preperiodic_rational

ESCAPE_RADIUS = 4.0
K_MAX = 200


@dataclass(frozen=True)
class HeightReport:
    """A local height value with the diagnostics of how it was obtained."""

    value: float
    method: str
    iterations: Optional[int] = None
    nodes: Optional[int] = None
    escape_step: Optional[int] = None
    note: str = ""


@dataclass(frozen=True)
class ConvergenceRow:
    """One order in a convergence sweep: the Galois-averaged log-distance,
    the local-height target, and their difference."""

    N: int
    degree: int
    average: Optional[float]
    target: float
    error: Optional[float]


def local_height_nonarch(alpha: Union[Rational, int], p: int) -> float:
    """log max(|alpha|_p, 1) = max(0, -v_p(alpha)) log p; zero at alpha = 0."""
    alpha = Fraction(alpha)
    if alpha == 0:
        return 0.0
    return max(0, -valuation(alpha, p)) * math.log(p)


def local_height_arch_closed(alpha: Union[float, complex]) -> float:
    """Green's function of the segment [-2, 2]: log|g| where g is the larger
    root of g^2 - alpha g + 1 = 0.  Exactly zero on the segment."""
    z = complex(alpha)
    if z.imag == 0 and -2.0 <= z.real <= 2.0:
        return 0.0
    disc = cmath.sqrt(z * z - 4)
    g = (z + disc) / 2
    if abs(g) < 1.0:
        g = (z - disc) / 2
    return math.log(abs(g))


@lru_cache(maxsize=None)
def _tail_coeffs(family: str, m: int) -> tuple[int, ...]:
    # F_m(z) / z^m = sum_j c_j u^j with u = 1/z^2; both families have terms
    # of one parity only, so the expansion is exact and finite.
    poly = cheb_poly(family, m)
    cs = []
    for j in range(m // 2 + 1):
        cs.append(poly.coefficient(m - 2 * j))
    return tuple(cs)


def _tail_factor(family: str, m: int, u: complex) -> complex:
    acc = 0j
    for c in reversed(_tail_coeffs(family, m)):
        acc = acc * u + c
    return acc


def local_height_arch_iterative(
    alpha: Union[float, complex],
    map_: ChebyshevMap,
    tol: float = 1e-12,
    k_max: int = K_MAX,
) -> HeightReport:
    """Escape-rate computation of the archimedean local height.

    Orbits bounded by the escape radius for k_max steps report height zero
    (the segment and its preimages); once an iterate passes the radius the
    recursion continues on L = log|z| via L <- m L + log|F_m(z)/z^m|, with
    the correction factor evaluated exactly in u = 1/z^2 so the iterate
    itself never overflows.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = complex(alpha)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("non-finite input")
    m = map_.m
    k = 0
    while abs(z) <= ESCAPE_RADIUS and k < k_max:
        z = cheb_eval(map_.family, m, z)
        k += 1
    if abs(z) <= ESCAPE_RADIUS:
        if abs(z) <= 2.0 + 1e-9:
            return HeightReport(0.0, "iterative", iterations=k, note="bounded")
        # persistent drift in (2, 4]: report the best current estimate
        est = math.log(max(abs(z), 1.0)) * math.exp(-k * math.log(m))
        return HeightReport(est, "iterative", iterations=k, note="slow escape")
    escape_step = k
    scale = math.exp(-k * math.log(m))
    g = math.log(abs(z)) * scale
    u = 1.0 / (z * z)
    extra = 0
    while extra < 2000:
        fu = _tail_factor(map_.family, m, u)
        step = math.log(abs(fu))
        scale /= m
        g += step * scale
        if u == 0 or abs(step) * scale * (m / (m - 1)) < tol:
            break
        u = u**m / (fu * fu)
        extra += 1
    return HeightReport(
        g, "iterative", iterations=k + extra, escape_step=escape_step, note="escaped"
    )


@lru_cache(maxsize=4)
def _quadrature_nodes(n: int) -> np.ndarray:
    j = np.arange(1, n + 1, dtype=np.float64)
    theta = (2 * j - 1) * math.pi / (2 * n)
    return 2.0 * np.cos(theta)


def local_height_arch_quadrature(alpha: Union[float, complex], n: int) -> HeightReport:
    """Node average of log|x - alpha| against the invariant measure.

    The angle substitution makes the nodes x_j = 2 cos((2j-1) pi / 2n) carry
    equal weight 1/n.  For real alpha strictly inside (-2, 2) the integrable
    log singularity is handled by dropping nodes inside a window of width
    w = 10/n around alpha and adding the analytic integral of log|t| over
    the window, weighted by the local measure density.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    z = complex(alpha)
    if z.imag == 0 and (z.real == 2.0 or z.real == -2.0):
        raise ValueError("quadrature is singular at the segment endpoints")
    x = _quadrature_nodes(n)
    if z.imag == 0 and -2.0 < z.real < 2.0:
        a = z.real
        w = 10.0 / n
        dist = np.abs(x - a)
        keep = dist >= w
        dropped = int(n - keep.sum())
        density = 1.0 / (math.pi * math.sqrt(4.0 - a * a))
        window = 2.0 * w * (math.log(w) - 1.0) * density
        value = float(np.log(dist[keep]).sum()) / n + window
        return HeightReport(value, "quadrature", nodes=n, note=f"dropped={dropped}")
    if z.imag == 0:
        vals = np.log(np.abs(x - z.real))
    else:
        vals = np.log(np.abs(x - z))
    return HeightReport(float(vals.sum()) / n, "quadrature", nodes=n)


def measure_integral(f: Callable[[float], float], n: int = 1 << 14) -> float:
    """Integral of f against the invariant measure by the same node average."""
    x = _quadrature_nodes(n)
    return math.fsum(f(float(t)) for t in x) / n


def global_height(alpha: Union[Rational, int], map_: ChebyshevMap) -> float:
    """Sum of local heights over all places; only the archimedean place and
    the primes of the denominator contribute."""
    alpha = Fraction(alpha)
    total = local_height_arch_iterative(float(alpha), map_).value
    if alpha != 0:
        for p, _ in factorize(alpha.denominator).factors:
            total += local_height_nonarch(alpha, p)
    return total


def galois_average_log_distance(
    point: PreperiodicPoint, alpha: Union[Rational, int], place: Place
) -> float:
    """(1/deg) sum over conjugates s of log|s(x) - alpha|_v, exactly.

    The sum collapses to a conjugate norm: (1/deg) log|Psi_N(alpha)|_v for
    the P family, and the analogous degree-phi(N) norm for the Q family,
    with the norm evaluated in exact rational arithmetic before the single
    log at the end.
    """
    alpha = Fraction(alpha)
    N = point.N
    if point.family == "P":
        if N <= 2:
            val = real_cyclotomic_value(N, alpha)
            if val == 0:
                raise CollisionError(f"{alpha} is a conjugate of the point")
            return log_abs(val, place)
        square = conjugate_norm_value("P", N, alpha)
        return log_abs(square, place) / (2 * psi_degree(N))
    val = conjugate_norm_value("Q", N, alpha)
    return log_abs(val, place) / point.degree


def height_convergence_experiment(
    alpha: Union[Rational, int],
    place: Place,
    N_values: Iterable[int],
    map_: ChebyshevMap,
) -> list[ConvergenceRow]:
    """Tabulate the Galois-averaged log-distance against the local height.

    Rows are sorted by N; a row whose order collides with alpha carries None
    instead of aborting the sweep.
    """
    alpha = Fraction(alpha)
    if place.is_archimedean:
        if alpha in (-2, 0, 2):
            raise ValueError("alpha must avoid -2, 0, 2 at the archimedean place")
        if -2 < alpha < 2 and is_preperiodic_rational(map_, alpha).preperiodic:
            raise ValueError("alpha on the segment must not be preperiodic")
        target = local_height_arch_iterative(float(alpha), map_).value
    else:
        target = local_height_nonarch(alpha, place.prime)
    rows: list[ConvergenceRow] = []
    for N in sorted(set(N_values)):
        point = PreperiodicPoint.canonical(map_.family, N, 1)
        try:
            avg = galois_average_log_distance(point, alpha, place)
        except CollisionError:
            rows.append(ConvergenceRow(N, point.degree, None, target, None))
            continue
        rows.append(ConvergenceRow(N, point.degree, avg, target, avg - target))
    return rows
