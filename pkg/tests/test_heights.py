import math
from fractions import Fraction

import pytest

from chebdyn.chebyshev import ChebyshevMap, cheb_eval
from chebdyn.cyclotomic import CollisionError, PreperiodicPoint
from chebdyn.exact_arith import ARCH, Place, valuation
from chebdyn.heights import (
    galois_average_log_distance,
    global_height,
    height_convergence_experiment,
    local_height_arch_closed,
    local_height_arch_iterative,
    local_height_arch_quadrature,
    local_height_nonarch,
    measure_integral,
)

P2 = ChebyshevMap("P", 2)
GOLDEN_HEIGHT = math.log((3 + math.sqrt(5)) / 2)  # archimedean height of 3


class TestNonarchimedean:
    def test_examples(self):
        assert local_height_nonarch(Fraction(3, 4), 2) == pytest.approx(2 * math.log(2), abs=1e-12)
        assert local_height_nonarch(Fraction(3), 3) == 0.0
        assert local_height_nonarch(Fraction(1, 11), 11) == pytest.approx(math.log(11), abs=1e-12)
        assert local_height_nonarch(Fraction(0), 5) == 0.0

    def test_functional_equation_exact_valuations(self):
        # v_p(F_m(a)) = m v_p(a) whenever v_p(a) < 0, and iterates stay
        # integral otherwise, which is the exact form of h(F(a)) = m h(a)
        for p, alpha in ((2, Fraction(3, 4)), (5, Fraction(2, 25)), (3, Fraction(7, 3))):
            for m in (2, 3, 5):
                image = cheb_eval("P", m, alpha)
                assert valuation(image, p) == m * valuation(alpha, p)
        for p, alpha in ((2, Fraction(3)), (7, Fraction(5, 3))):
            for m in (2, 3):
                image = cheb_eval("P", m, alpha)
                assert local_height_nonarch(image, p) == 0.0 == m * local_height_nonarch(alpha, p)


class TestClosedForm:
    def test_examples(self):
        assert local_height_arch_closed(2.5) == pytest.approx(math.log(2), abs=1e-12)
        assert local_height_arch_closed(3.0) == pytest.approx(GOLDEN_HEIGHT, abs=1e-12)
        assert local_height_arch_closed(1.999) == 0.0
        assert local_height_arch_closed(-2.0) == 0.0

    def test_complex_argument(self):
        v = local_height_arch_closed(3j)
        g = (3 + math.sqrt(13)) / 2  # |g| for g^2 - 3i g + 1 = 0
        assert v == pytest.approx(math.log(g), abs=1e-12)


class TestIterative:
    def test_examples(self):
        assert local_height_arch_iterative(2.5, P2, 1e-10).value == pytest.approx(
            math.log(2), abs=1e-10
        )
        assert local_height_arch_iterative(3.0, P2, 1e-10).value == pytest.approx(
            GOLDEN_HEIGHT, abs=1e-10
        )

    def test_bounded_inside_segment(self):
        rep = local_height_arch_iterative(1.5, P2, 1e-10)
        assert rep.value == 0.0 and rep.note == "bounded"

    def test_escape_diagnostics(self):
        rep = local_height_arch_iterative(3.0, P2)
        assert rep.note == "escaped" and rep.escape_step is not None

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            local_height_arch_iterative(float("nan"), P2)
        with pytest.raises(ValueError):
            local_height_arch_iterative(3.0, P2, tol=0.0)

    def test_higher_degree_map(self):
        m5 = ChebyshevMap("P", 5)
        assert local_height_arch_iterative(3.0, m5, 1e-12).value == pytest.approx(
            GOLDEN_HEIGHT, abs=1e-10
        )

    def test_q_family_map(self):
        # for the Q family the escape rate at i y matches the P rate at y
        q3 = ChebyshevMap("Q", 3)
        v = local_height_arch_iterative(3j, q3, 1e-12).value
        assert v == pytest.approx(GOLDEN_HEIGHT, abs=1e-10)


class TestQuadrature:
    def test_exterior_matches_closed(self):
        for alpha in (3.0, 2.5, -4.7, 1.3 + 0.8j):
            est = local_height_arch_quadrature(alpha, 1 << 16).value
            assert est == pytest.approx(local_height_arch_closed(alpha), abs=1e-6)

    def test_interior_vanishes(self):
        assert abs(local_height_arch_quadrature(0.5, 1 << 20).value) <= 5e-3

    def test_window_diagnostics(self):
        rep = local_height_arch_quadrature(0.5, 1 << 16)
        assert rep.nodes == 1 << 16 and "dropped=" in rep.note

    def test_endpoints_rejected(self):
        for bad in (2.0, -2.0):
            with pytest.raises(ValueError):
                local_height_arch_quadrature(bad, 1 << 10)

    def test_too_few_nodes_rejected(self):
        with pytest.raises(ValueError):
            local_height_arch_quadrature(3.0, 1)


class TestGlobalHeight:
    def test_examples(self):
        assert global_height(Fraction(5, 2), P2) == pytest.approx(2 * math.log(2), abs=1e-10)
        assert global_height(Fraction(3), P2) == pytest.approx(GOLDEN_HEIGHT, abs=1e-10)
        assert global_height(Fraction(0), P2) == 0.0

    def test_preperiodic_points_have_exact_zero(self):
        for v in (-2, -1, 0, 1, 2):
            assert global_height(Fraction(v), P2) == 0.0


class TestGaloisAverage:
    def test_archimedean_examples(self):
        p5 = PreperiodicPoint("P", 5, 1)
        assert galois_average_log_distance(p5, 3, ARCH) == pytest.approx(
            math.log(11) / 2, abs=1e-12
        )
        p12 = PreperiodicPoint("P", 12, 1)
        assert galois_average_log_distance(p12, 3, ARCH) == pytest.approx(
            math.log(6) / 2, abs=1e-12
        )

    def test_finite_place_example(self):
        p12 = PreperiodicPoint("P", 12, 1)
        assert galois_average_log_distance(p12, 3, Place(2)) == pytest.approx(
            -math.log(2) / 2, abs=1e-12
        )

    def test_degree_one_orders(self):
        p1 = PreperiodicPoint("P", 1, 1)
        assert galois_average_log_distance(p1, 3, ARCH) == pytest.approx(0.0, abs=1e-12)
        p2 = PreperiodicPoint("P", 2, 1)
        assert galois_average_log_distance(p2, 3, ARCH) == pytest.approx(math.log(5), abs=1e-12)

    def test_q_family(self):
        q4 = PreperiodicPoint("Q", 4, 1)
        # conjugate polynomial z^2 + 4 evaluated at 3 gives 13
        assert galois_average_log_distance(q4, 3, ARCH) == pytest.approx(
            math.log(13) / 2, abs=1e-12
        )

    def test_collision(self):
        with pytest.raises(CollisionError):
            galois_average_log_distance(PreperiodicPoint("P", 6, 1), 1, ARCH)

    def test_brute_force_cross_check(self):
        # float sum over actual conjugates
        from chebdyn.cyclotomic import galois_orbit

        for N in (5, 7, 12, 30):
            vals = galois_orbit("P", N).values()
            brute = sum(math.log(abs(v - 3.0)) for v in vals) / len(vals)
            point = PreperiodicPoint("P", N, 1)
            assert galois_average_log_distance(point, 3, ARCH) == pytest.approx(brute, abs=1e-9)


class TestConvergenceExperiment:
    def test_archimedean_example(self):
        rows = height_convergence_experiment(Fraction(3), ARCH, [5, 7, 12], P2)
        assert [r.N for r in rows] == [5, 7, 12]
        assert [r.degree for r in rows] == [2, 3, 2]
        expected = [
            math.log(11) / 2 - GOLDEN_HEIGHT,
            math.log(29) / 3 - GOLDEN_HEIGHT,
            math.log(6) / 2 - GOLDEN_HEIGHT,
        ]
        for row, e in zip(rows, expected):
            assert row.error == pytest.approx(e, abs=1e-6)

    def test_finite_place_zeros(self):
        rows = height_convergence_experiment(Fraction(3), Place(7), [5, 12], P2)
        assert all(r.average == 0.0 and r.target == 0.0 for r in rows)

    def test_preconditions(self):
        for bad in (Fraction(0), Fraction(2), Fraction(-2), Fraction(1)):
            with pytest.raises(ValueError):
                height_convergence_experiment(bad, ARCH, [5], P2)
        # fine at a finite place even for a preperiodic value off the collision orders
        rows = height_convergence_experiment(Fraction(1), Place(5), [5], P2)
        assert rows[0].average is not None

    def test_collision_row_does_not_abort(self):
        rows = height_convergence_experiment(Fraction(1), Place(5), [5, 6, 7], P2)
        by_n = {r.N: r for r in rows}
        assert by_n[6].average is None  # 1 is the order-6 conjugate value
        assert by_n[5].average is not None and by_n[7].average is not None


class TestMeasureIntegral:
    def test_even_moments(self):
        # moments of the equilibrium measure are central binomials
        assert measure_integral(lambda x: x * x) == pytest.approx(2.0, abs=1e-3)
        assert measure_integral(lambda x: x**4) == pytest.approx(6.0, abs=1e-2)

    def test_odd_moments_vanish(self):
        assert measure_integral(lambda x: x) == pytest.approx(0.0, abs=1e-9)
        assert measure_integral(lambda x: x**3) == pytest.approx(0.0, abs=1e-9)
