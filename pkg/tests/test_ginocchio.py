import math

import numpy as np
import pytest

from natpdm import ginocchio, natanzon, numerics
from natpdm.ginocchio import (
    ASSEMBLY_VARIANTS,
    GinocchioSpec,
    IndexOutOfRange,
    invert_mu,
    mass_integral,
    mu_closed_form,
    params_for,
    potential_on_x_grid,
    spectrum_closed_form,
    v_hyperbolic,
    v_polynomial,
    y_of_u,
)
from natpdm.masses import constant_mass, exponential_well_mass, rational_mass
from natpdm.natanzon import BEN_DANIEL_DUKE
from natpdm.numerics import Grid

GAMMAS = (0.5, 0.8, 1.0, 1.5, 2.0)


class TestParamsFor:
    def test_gamma_one_j_two(self):
        p = params_for(1.0, 2.0)
        assert p.c0 == pytest.approx(0.25)
        assert p.a_c == pytest.approx(-0.25)
        assert p.p0 == 0.0
        assert p.a_p == pytest.approx(21.0 / 4.0)
        assert p.q0 == 0.0
        assert p.a_q == pytest.approx(-7.0 / 4.0)

    def test_gamma_one_kills_p0(self):
        assert params_for(1.0, 5.5).p0 == 0.0

    def test_gamma_sqrt2_j_zero(self):
        p = params_for(math.sqrt(2.0), 0.0)
        assert p.c0 == pytest.approx(1.0 / 16.0)
        assert p.p0 == pytest.approx(-0.25)
        assert p.a_p == pytest.approx(-0.75)

    def test_gamma_positive_required(self):
        with pytest.raises(ValueError):
            params_for(0.0, 1.0)


class TestMuClosedForm:
    def test_gamma_one_identity(self):
        assert mu_closed_form(1.0, 1.0) == pytest.approx(1.0, abs=1e-14)

    def test_odd(self):
        for g in GAMMAS:
            u = np.linspace(-5.0, 5.0, 101)
            assert np.max(np.abs(mu_closed_form(g, u) + mu_closed_form(g, -u))) < 1e-13

    def test_origin(self):
        for g in GAMMAS:
            assert mu_closed_form(g, 0.0) == 0.0

    def test_against_u_variable_quadrature(self):
        # oracle: (1/gamma^2) integral_0^u sqrt(gamma^2 + sinh^2 t)/cosh t dt
        for g in (0.5, 2.0):
            u0 = 1.0
            quad = numerics.integrate(
                lambda t: math.sqrt(g * g + math.sinh(t) ** 2) / math.cosh(t),
                0.0, u0, 1e-12) / (g * g)
            assert mu_closed_form(g, u0) == pytest.approx(quad, abs=1e-8)

    def test_monotone(self):
        u = np.linspace(-5.0, 5.0, 201)
        for g in GAMMAS:
            assert np.all(np.diff(mu_closed_form(g, u)) > 0.0)

    def test_large_argument_stable(self):
        for g in GAMMAS:
            assert math.isfinite(mu_closed_form(g, 30.0))


class TestMassIntegral:
    def test_gamma_one_is_arctanh(self):
        for z in (0.1, 0.5, 0.9):
            assert mass_integral(1.0, z) == pytest.approx(math.atanh(math.sqrt(z)),
                                                          abs=1e-9)

    def test_z_zero(self):
        assert mass_integral(1.3, 0.0) == 0.0

    def test_consistency_with_closed_form(self):
        # the central cross-check: quadrature of the z-variable integrand
        # against the closed form at u = arctanh(sqrt(z))
        for g in GAMMAS:
            for z in np.linspace(0.1, 0.9, 9):
                closed = mu_closed_form(g, math.atanh(math.sqrt(z)))
                assert abs(mass_integral(g, float(z)) - closed) < 1e-8

    def test_domain(self):
        with pytest.raises(ValueError):
            mass_integral(1.0, 1.0)


class TestInvertMu:
    def test_gamma_one_identity(self):
        assert invert_mu(1.0, 1.0) == 1.0

    def test_zero(self):
        assert invert_mu(1.7, 0.0) == 0.0

    def test_round_trip(self):
        for g in GAMMAS:
            for u0 in (-2.0, -0.8, 0.8, 2.0):
                assert abs(invert_mu(g, mu_closed_form(g, u0)) - u0) < 1e-10


class TestPotentialForms:
    def test_hyperbolic_gamma_one(self):
        u = np.linspace(-3.0, 3.0, 61)
        assert np.max(np.abs(v_hyperbolic(1.0, 2.0, u) + 6.0 / np.cosh(u) ** 2)) < 1e-13

    def test_hyperbolic_decays(self):
        assert abs(v_hyperbolic(1.5, 2.0, 40.0)) < 1e-12

    def test_hyperbolic_value(self):
        # gamma = 1 collapse at u = 1: -6 sech^2(1)
        assert v_hyperbolic(1.0, 2.0, 1.0) == pytest.approx(-6.0 / math.cosh(1.0) ** 2,
                                                            abs=1e-14)

    def test_y_of_u(self):
        assert y_of_u(1.3, 0.0) == 0.0
        u = np.linspace(-2.0, 2.0, 41)
        assert np.max(np.abs(y_of_u(1.0, u) - np.tanh(u))) < 1e-14
        assert y_of_u(0.7, 40.0) == pytest.approx(1.0, abs=1e-12)
        assert y_of_u(0.7, -40.0) == pytest.approx(-1.0, abs=1e-12)

    def test_polynomial_vanishes_at_band_edges(self):
        for g in GAMMAS:
            assert v_polynomial(g, 2.0, 1.0) == 0.0
            assert v_polynomial(g, 2.0, -1.0) == 0.0

    def test_polynomial_gamma_one(self):
        y = np.linspace(-1.0, 1.0, 41)
        assert np.max(np.abs(v_polynomial(1.0, 2.0, y) + 6.0 * (1.0 - y ** 2))) < 1e-13

    def test_forms_agree(self):
        # the two printed forms agree once y(u) is substituted, all gamma
        u = np.linspace(-4.0, 4.0, 161)
        for g in GAMMAS:
            resid = np.abs(v_hyperbolic(g, 2.0, u) - v_polynomial(g, 2.0, y_of_u(g, u)))
            assert np.max(resid) < 1e-10
        resid1 = np.abs(v_hyperbolic(1.0, 2.0, u)
                        - v_polynomial(1.0, 2.0, y_of_u(1.0, u)))
        assert np.max(resid1) < 1e-12


class TestClosedSpectrum:
    def test_gamma_one_ground(self):
        assert spectrum_closed_form(1.0, 2.0, 0) == -4.0

    def test_gamma_one_collapse(self):
        for j in (2.0, 3.0):
            for n in range(int(j) + 1):
                assert spectrum_closed_form(1.0, j, n) == pytest.approx(
                    -(j - 2.0 * n) ** 2, abs=1e-12)

    def test_against_quantization_roots(self):
        for gamma in (0.8, 1.2):
            root = natanzon.solve_spectrum(params_for(gamma, 2.0), 0)[0]
            assert spectrum_closed_form(gamma, 2.0, 0) == pytest.approx(root, abs=1e-9)

    def test_index_range(self):
        with pytest.raises(IndexOutOfRange):
            spectrum_closed_form(1.0, 2.0, 3)
        with pytest.raises(IndexOutOfRange):
            spectrum_closed_form(1.0, 2.0, -1)

    def test_negative_below_half_j(self):
        for g in (0.8, 1.0, 1.2):
            assert spectrum_closed_form(g, 2.0, 0) < 0.0


class TestPotentialTable:
    def test_constant_mass_gamma_one(self):
        grid = Grid(-6.0, 6.0, 601)
        table = potential_on_x_grid(1.0, 2.0, constant_mass(), BEN_DANIEL_DUKE, grid)
        expected = -6.0 / np.cosh(math.sqrt(2.0) * grid.points) ** 2
        assert np.max(np.abs(table.v_total - expected)) < 1e-10
        assert np.max(np.abs(table.um)) == 0.0
        assert np.max(np.abs(table.mu - math.sqrt(2.0) * grid.points)) < 1e-10

    def test_origin_value(self):
        # u = 0 value of the hyperbolic form for general gamma
        gamma, j = 1.3, 2.0
        g2 = gamma * gamma
        expected = -g2 * g2 * (j * (j + 1.0) - g2 + 1.0) / g2 \
            - 0.75 * (3.0 * g2 - 1.0) * (g2 - 1.0) + 1.25 * (g2 - 1.0) ** 2
        grid = Grid(-2.0, 2.0, 81)
        table = potential_on_x_grid(gamma, j, constant_mass(), BEN_DANIEL_DUKE, grid)
        mid = grid.n_points // 2
        assert table.v_total[mid] == pytest.approx(expected, abs=1e-10)
        assert v_hyperbolic(gamma, j, 0.0) == pytest.approx(expected, abs=1e-14)

    def test_even_mass_gives_even_potential(self):
        grid = Grid(-4.0, 4.0, 321)
        table = potential_on_x_grid(0.9, 2.0, exponential_well_mass(0.4),
                                    BEN_DANIEL_DUKE, grid)
        assert np.max(np.abs(table.v_total - table.v_total[::-1])) < 1e-9

    def test_z_in_unit_interval(self):
        grid = Grid(-8.0, 8.0, 161)
        table = potential_on_x_grid(1.4, 2.0, rational_mass(2.0), BEN_DANIEL_DUKE, grid)
        assert np.all(table.z >= 0.0) and np.all(table.z < 1.0)

    def test_assembly_variants(self):
        grid = Grid(-3.0, 3.0, 121)
        mass = rational_mass(2.0)
        tables = {a: potential_on_x_grid(1.0, 2.0, mass, BEN_DANIEL_DUKE, grid, assembly=a)
                  for a in ASSEMBLY_VARIANTS}
        base = tables["v_only"]
        assert np.allclose(tables["v_plus_um"].v_total, base.v_hyp + base.um)
        assert np.allclose(tables["v_minus_um"].v_total, base.v_hyp - base.um)
        assert np.allclose(tables["v_plus_um_vm"].v_total, base.v_hyp + base.um + base.vm)
        with pytest.raises(ValueError):
            potential_on_x_grid(1.0, 2.0, mass, BEN_DANIEL_DUKE, grid, assembly="bogus")


class TestSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GinocchioSpec(0.0, 2.0)
        with pytest.raises(ValueError):
            GinocchioSpec(1.0, -1.0)
