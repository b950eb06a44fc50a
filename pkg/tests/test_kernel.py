import math

import numpy as np
import pytest

from mathieu.errors import DomainError, NonConvergence, PreconditionError
from mathieu.kernel import (
    DERIVATIVE_CUTOFF,
    KERNEL_CUTOFF,
    QuadConfig,
    bose_kernel,
    f_closed,
    finite_difference,
    finite_difference_estimate,
    fprime_as_printed,
    fprime_closed,
    fsecond_as_printed,
    fsecond_closed,
    fsecond_rational_as_printed,
    integral_F,
    integral_F_parts,
    integral_S,
    quad_semiinfinite,
)
from mathieu.powser import u_derivative
from mathieu.series import SeriesParams, eval_mathieu_direct

from conftest import F_REF, S_REF

E = math.e
SAMPLES = np.geomspace(0.05, 20.0, 20)


class TestKernel:
    def test_values(self):
        assert bose_kernel(0.0) == 1.0
        assert bose_kernel(1.0) == pytest.approx(1 / (E - 1), rel=1e-15)
        assert bose_kernel(1e-8) == pytest.approx(1 - 5e-9, rel=1e-15)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            bose_kernel(-1.0)

    def test_array_input(self):
        x = np.array([0.0, 1e-3, 0.5, 3.0])
        np.testing.assert_allclose(bose_kernel(x), [bose_kernel(float(v)) for v in x])


class TestDerivativeChain:
    def test_f(self):
        assert f_closed(0.0) == -0.5
        assert f_closed(1.0) == pytest.approx(1 / (E - 1) - E / (E - 1) ** 2, rel=1e-14)
        assert f_closed(1.0) == pytest.approx(-0.338697, abs=1e-6)
        assert abs(f_closed(100.0)) < 1e-40

    def test_fprime(self):
        assert fprime_closed(0.0) == pytest.approx(1 / 6, abs=1e-16)
        assert abs(fprime_closed(1e-4) - 1 / 6) < 1e-9
        assert fprime_closed(1.0) == pytest.approx(0.150948, abs=1e-6)
        assert 1 / 6 - 1 / 60 + 1 / 1008 - 1 / 21600 == pytest.approx(fprime_closed(1.0), abs=3e-6)

    def test_fsecond(self):
        assert fsecond_closed(0.0) == 0.0
        expected = E * (2 * E**2 - 4 * E - 4) / (E - 1) ** 4
        assert fsecond_closed(1.0) == pytest.approx(expected, rel=1e-13)
        assert fsecond_closed(1.0) == pytest.approx(-0.0296285, abs=1e-7)

    def test_as_printed_values(self):
        assert fprime_as_printed(1.0) == pytest.approx(-1.690, abs=1e-3)
        assert fsecond_rational_as_printed(1.0) == pytest.approx(-0.010900, abs=1e-6)

    @pytest.mark.parametrize("x", SAMPLES)
    def test_finite_difference_chain(self, x):
        assert abs(finite_difference(bose_kernel, x, 1) - f_closed(x)) < 1e-6
        assert abs(finite_difference(f_closed, x, 1) - fprime_closed(x)) < 1e-6
        assert abs(finite_difference(fprime_closed, x, 1) - fsecond_closed(x)) < 1e-6
        assert abs(finite_difference(f_closed, x, 2) - fsecond_closed(x)) < 1e-6

    def test_printed_forms_fail_chain(self):
        assert abs(finite_difference(f_closed, 1.0, 1) - fprime_as_printed(1.0)) > 1e-2
        assert abs(finite_difference(fprime_closed, 1.0, 1) - fsecond_as_printed(1.0)) > 1e-2
        assert abs(finite_difference(fprime_closed, 1.0, 1) - fsecond_rational_as_printed(1.0)) > 1e-2

    @pytest.mark.parametrize(
        "fn,cutoff",
        [(bose_kernel, KERNEL_CUTOFF), (f_closed, DERIVATIVE_CUTOFF),
         (fprime_closed, DERIVATIVE_CUTOFF), (fsecond_closed, DERIVATIVE_CUTOFF)],
    )
    def test_branch_continuity(self, fn, cutoff):
        below = fn(np.nextafter(cutoff, 0.0))
        at = fn(cutoff)
        assert abs(at - below) < 1e-12

    def test_negativity(self):
        x = np.linspace(0.0, 40.0, 8001)[1:]
        assert np.all(fsecond_closed(x) < 0)

    def test_series_leading_term_matches_closed_form(self):
        # u''' = -x/30 + O(x^3): compare the slope of fsecond_closed near 0
        lead = float(u_derivative(3, 8)[1])
        assert lead == pytest.approx(-1 / 30)
        slope = finite_difference(fsecond_closed, 0.01, 1, 1e-3)
        assert slope == pytest.approx(lead, abs=1e-3)


class TestFiniteDifference:
    def test_square(self):
        assert abs(finite_difference(lambda t: t * t, 3.0, 1) - 6.0) < 1e-9

    def test_second_order(self):
        assert finite_difference(math.exp, 1.0, 2) == pytest.approx(E, rel=1e-9)

    def test_error_estimate_is_honest(self):
        v, err = finite_difference_estimate(math.sin, 1.0, 1)
        assert abs(v - math.cos(1.0)) <= err

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            finite_difference(math.exp, 0.001, 1, 0.01)
        with pytest.raises(PreconditionError):
            finite_difference(math.exp, 1.0, 3)


class TestQuadrature:
    @pytest.mark.parametrize("a", [1.0, 2.0, 3.0])
    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
    def test_laplace_cos(self, a, b):
        r = quad_semiinfinite(lambda x: np.exp(-a * x) * np.cos(b * x), QuadConfig(frequency=b))
        assert abs(r.value - a / (a * a + b * b)) < 1e-10
        assert r.enclosure.contains(a / (a * a + b * b))

    @pytest.mark.parametrize("a", [1.0, 2.0, 3.0])
    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
    def test_laplace_x_sin(self, a, b):
        r = quad_semiinfinite(lambda x: x * np.exp(-a * x) * np.sin(b * x), QuadConfig(frequency=b))
        assert abs(r.value - 2 * a * b / (a * a + b * b) ** 2) < 1e-10

    def test_examples(self):
        assert quad_semiinfinite(lambda x: np.exp(-2 * x) * np.cos(x), QuadConfig(frequency=1)).value == pytest.approx(0.4, abs=1e-13)
        assert quad_semiinfinite(lambda x: x * np.exp(-x) * np.sin(x), QuadConfig(frequency=1)).value == pytest.approx(0.5, abs=1e-13)
        assert quad_semiinfinite(lambda x: x * np.exp(-x), QuadConfig()).value == pytest.approx(1.0, abs=1e-13)

    def test_nonconvergence(self):
        cfg = QuadConfig(nodes_per_panel=2, refinement_levels=1, tol=1e-16, max_panel=25.0)
        with pytest.raises(NonConvergence):
            quad_semiinfinite(lambda x: np.cos(40 * x) * np.exp(-x), cfg)

    def test_panel_length(self):
        assert QuadConfig(frequency=10.0).panel_length == pytest.approx(math.pi / 10)
        assert QuadConfig(frequency=0.1).panel_length == 2.0
        assert QuadConfig().truncation_error() < 1e-18


class TestRepresentations:
    @pytest.mark.parametrize("h", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0])
    def test_three_way(self, h):
        d = eval_mathieu_direct(SeriesParams(h, tol=1e-10))
        i = integral_F(h, 1e-10)
        p = integral_F_parts(h, 1e-10)
        assert i.method == "integral" and p.method == "integral-parts"
        assert d.enclosure.overlaps(i.enclosure)
        assert d.enclosure.overlaps(p.enclosure)
        assert i.enclosure.overlaps(p.enclosure)
        assert i.enclosure.contains(F_REF[h]) and p.enclosure.contains(F_REF[h])

    def test_h4_bounds(self):
        r = integral_F(4.0)
        assert 1 / 8 - 1 / 96 < r.enclosure.lo and r.enclosure.hi < 1 / 8

    def test_parts_below_half_inverse(self):
        assert integral_F_parts(10.0).enclosure.hi < 1 / 20

    @pytest.mark.parametrize("h", [0.5, 1.0, 10.0, 50.0])
    def test_alternating_integral(self, h):
        assert integral_S(h).enclosure.contains(S_REF[h])

    def test_domain(self):
        for fn in (integral_F, integral_F_parts, integral_S):
            with pytest.raises(DomainError):
                fn(0.0)
