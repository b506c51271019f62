import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from tentspace.quadrature import (
    DiskGrid,
    PolarRule,
    QuadratureError,
    SupGrid,
    integrate_circle,
    integrate_disk,
    integrate_radial,
    kernel_sup,
    singular_substitution_exponent,
    sup_on_grid,
    weighted_disk_integral,
)


class TestDiskGrid:
    def test_weights_normalized(self):
        for grid in (DiskGrid(), DiskGrid(5, 16), DiskGrid(100, 7, rotation=0.3)):
            _, w = grid.nodes()
            assert w.sum() == pytest.approx(1.0, abs=1e-12)
            assert np.all(w > 0)

    def test_nodes_inside_disk(self):
        z, _ = DiskGrid().nodes()
        assert np.all(np.abs(z) < 1)

    def test_constant(self):
        assert integrate_disk(lambda z: np.ones_like(z.real)) == pytest.approx(1.0, abs=1e-12)

    def test_modulus_squared(self):
        assert integrate_disk(lambda z: np.abs(z) ** 2) == pytest.approx(0.5, abs=1e-14)

    def test_weight(self):
        assert integrate_disk(lambda z: 1 - np.abs(z) ** 2) == pytest.approx(0.5, abs=1e-14)

    @pytest.mark.parametrize("k", [0, 3, 20, 47, 95])
    def test_polynomials_in_u_exact(self, k):
        # int |z|^{2k} dA = 1/(k+1), exact for k < 2 * radial_order
        assert integrate_disk(lambda z: np.abs(z) ** (2 * k)) == pytest.approx(1 / (k + 1), rel=1e-12)

    @given(st.floats(0, 2 * math.pi))
    def test_rotation_invariance(self, phi):
        h = lambda z: np.exp(-np.abs(z) ** 2) / (2 - np.abs(z))
        a = integrate_disk(h, DiskGrid())
        b = integrate_disk(h, DiskGrid(rotation=phi))
        assert a == pytest.approx(b, abs=1e-10)

    def test_trigonometric_terms_vanish(self):
        val = integrate_disk(lambda z: (z**3).real, DiskGrid(angular_count=16))
        assert abs(val) < 1e-15

    def test_convergence_check_raises(self):
        spiky = lambda z: 1.0 / np.abs(z - 0.999) ** 1.5
        with pytest.raises(QuadratureError):
            integrate_disk(spiky, DiskGrid(8, 16), rtol=1e-6)

    def test_rejects_nonfinite_integrand(self):
        with pytest.raises(QuadratureError):
            integrate_disk(lambda z: np.full(z.shape, np.nan))


class TestRadial:
    def test_exponent_choice(self):
        assert singular_substitution_exponent(0.0) == 2
        assert singular_substitution_exponent(-0.5) == 4
        assert singular_substitution_exponent(3.0) == 2
        with pytest.raises(ValueError):
            singular_substitution_exponent(-1.0)

    def test_near_pole(self):
        rho = 0.9
        assert integrate_radial(lambda r: 1 / (1 - rho * r) ** 2) == pytest.approx(10.0, rel=1e-12)

    def test_linear(self):
        assert integrate_radial(lambda r: 1 - r) == pytest.approx(0.5, rel=1e-14)

    def test_logarithm(self):
        val = integrate_radial(lambda s: np.abs(np.log(s)), 0.0, complement=True)
        assert val == pytest.approx(1.0, rel=1e-10)

    @pytest.mark.parametrize("delta", [-0.9, -0.5, 0.0, 0.7, 2.0])
    def test_against_scipy(self, delta):
        rho = 0.99
        def f(s):
            return s**delta / (1 - rho + rho * s) ** (delta + 2)
        ours = integrate_radial(f, delta, complement=True)
        ref, _ = integrate.quad(f, 0, 1, points=[1 - rho], limit=200, epsabs=0, epsrel=1e-12)
        assert ours == pytest.approx(ref, rel=1e-9)


class TestCircle:
    def test_constant(self):
        assert integrate_circle(lambda t: np.ones_like(t), 16) == pytest.approx(2 * np.pi)

    def test_poisson(self):
        val = integrate_circle(lambda t: 1 / np.abs(1 - 0.5 * np.exp(1j * t)) ** 2, 64)
        assert val == pytest.approx(8 * np.pi / 3, rel=1e-14)

    def test_cosine(self):
        assert abs(integrate_circle(np.cos, 32)) < 1e-14

    def test_minimum_nodes(self):
        with pytest.raises(ValueError):
            integrate_circle(np.cos, 8)


class TestSupGrid:
    def test_dyadic_layout(self):
        g = SupGrid.dyadic(depth=5)
        pts = g.points()
        assert 0j in pts
        assert np.all(np.abs(pts) < 1)
        assert g.radii[-1] == pytest.approx(1 - 2**-5)

    def test_refinement_is_superset(self):
        g = SupGrid.dyadic(depth=4)
        fine = set(np.round(g.refine().points(), 12))
        assert set(np.round(g.points(), 12)) <= fine

    def test_rejects_points_outside(self):
        with pytest.raises(ValueError):
            SupGrid((0.0, 1.0), (1, 8))

    def test_sup_of_constant(self):
        assert sup_on_grid(lambda a: np.full(a.shape, 3.0), SupGrid.dyadic(4))[0] == 3.0

    def test_sup_attained_at_origin(self):
        value, at = sup_on_grid(lambda a: 1 - np.abs(a), SupGrid.dyadic(4))
        assert value == 1.0 and at == 0

    def test_sup_monotone_under_refinement(self):
        h = lambda a: np.abs(np.sin(40 * np.angle(a))) * (1 - np.abs(a)) ** 0.1
        g = SupGrid.dyadic(4)
        values = []
        for _ in range(3):
            values.append(sup_on_grid(h, g)[0])
            g = g.refine()
        assert values == sorted(values)


class TestPolarRule:
    @pytest.mark.parametrize("gamma", [-0.5, 0.0, 1.0, 2.5])
    def test_weighted_mass(self, gamma):
        # int (1-|z|^2)^gamma dA = 1/(gamma+1)
        val = weighted_disk_integral(lambda r, m: np.ones(m), gamma)
        assert val == pytest.approx(1 / (gamma + 1), rel=1e-12)

    def test_angle_counts(self):
        rule = PolarRule()
        _, eps, _, m = rule.nodes(0.0)
        assert np.all((m >= rule.min_angles) & (m <= rule.max_angles))
        assert np.all(np.diff(m[np.argsort(-eps)]) >= 0)

    def test_kernel_sup_constant_function(self):
        # for F = 1, gamma = 1, t = 1, power 2 the kernel integral at radius x is
        # (1 - x^2) * sum_n x^(2n) / ((n+1)(n+2)), maximal at a = 0 with value 1/2
        res = kernel_sup(lambda r, m: np.ones(m), SupGrid.dyadic(6), PolarRule(), gamma=1.0, t=1.0, power=2.0)
        assert res.value == pytest.approx(0.5, rel=1e-12)
        assert res.argmax == 0
        for (rho, _), vals in zip(SupGrid.dyadic(6).levels(), res.level_values):
            x = rho * rho
            n = np.arange(4000)
            exact = (1 - x) * np.sum(x**n / ((n + 1) * (n + 2)))
            assert np.allclose(vals, exact, rtol=1e-8)
