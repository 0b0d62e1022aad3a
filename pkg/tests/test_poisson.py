import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from surfwalk.bounds import one_form_bound
from surfwalk.errors import InvalidGenus, InvalidParameter
from surfwalk.golden import golden_max, golden_min
from surfwalk.poisson import (F, Rg, beta_derivatives, constants, kernel_b, lemma4_check, optimize_nu,
                              poisson_bound, pocket_check, quartic, quartic_check, quartic_shifted,
                              scan_max_phi)


def test_constants_genus2():
    c = constants(2)
    assert c.X == pytest.approx(3 + 2 * math.sqrt(2))
    assert c.D == pytest.approx(3.05714, abs=1e-5)
    assert c.C == pytest.approx(2 * c.X - 1)
    assert 0 < c.delta < c.epsilon < math.pi / 8
    with pytest.raises(InvalidGenus):
        constants(1)


@pytest.mark.parametrize("g", [2, 5, 27, 100])
def test_constants_self_check(g):
    constants(g).check()


def test_distance_is_tile_spacing():
    # the hyperbolic distance between adjacent tile centres: cosh(D/2) = cot(pi/4g)
    for g in (2, 3, 7):
        c = constants(g)
        assert math.cosh(c.D / 2) == pytest.approx(1 / math.tan(math.pi / (4 * g)))


def test_kernel_b():
    assert kernel_b(1.0, 0.0) == pytest.approx(math.exp(1.0))
    assert kernel_b(1.0, math.pi) == pytest.approx(math.exp(-1.0))
    with pytest.raises(InvalidParameter):
        kernel_b(0.0, 0.0)


def test_F_matches_kernel_average():
    c = constants(3)
    phi = 0.1
    direct = np.mean([kernel_b(c.D, phi + j * 2 * math.pi / 12) ** 0.3 for j in range(12)])
    assert F(c, 0.3, phi) == pytest.approx(direct, rel=1e-13)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 12), st.floats(0, 1), st.floats(-4, 4))
def test_F_even_and_periodic(g, nu, phi):
    c = constants(g)
    v = F(c, nu, phi)
    assert F(c, nu, -phi) == pytest.approx(v, rel=1e-12)
    assert F(c, nu, phi + math.pi / (2 * g)) == pytest.approx(v, rel=1e-12)
    assert F(c, 0.0, phi) == pytest.approx(1.0, abs=1e-15)


def test_golden_section():
    x, fx = golden_min(lambda t: (t - 0.3) ** 2, 0, 1, tol=1e-9)
    assert x == pytest.approx(0.3, abs=1e-8)
    x, fx = golden_max(lambda t: -abs(t - 0.7), 0, 1, tol=1e-9)
    assert x == pytest.approx(0.7, abs=1e-8)
    # monotone functions end up at an endpoint
    assert golden_min(lambda t: t, 0, 1)[0] == 0.0


REFERENCE_NU_BOUND = {2: (0.2990, 0.7675), 3: (0.2944, 0.6588), 5: (0.2926, 0.5352), 10: (0.2905, 0.3956)}


@pytest.mark.parametrize("g", sorted(REFERENCE_NU_BOUND))
def test_optimize_nu_reference_values(g):
    nu, bound = REFERENCE_NU_BOUND[g]
    opt = optimize_nu(constants(g))
    assert abs(opt.nu - nu) <= 1e-3
    assert abs(opt.bound - bound) <= 1e-4
    assert opt.unimodal


def test_optimize_nu_is_grid_minimum():
    c = constants(4)
    opt = optimize_nu(c)
    nus = np.linspace(0, 1, 2001)
    assert opt.bound <= min(F(c, nu, 0.0) for nu in nus) + 1e-12


def test_scan_max_phi_at_zero():
    c = constants(2)
    ev = scan_max_phi(c, 0.3, math.pi / 128 / 4)
    assert ev.max_at_zero
    assert ev.max_value == ev.value_at_zero
    assert ev.max_value >= F(c, 0.3, np.linspace(0, math.pi / 8, 5000)).max() - 1e-15
    with pytest.raises(InvalidParameter):
        scan_max_phi(c, 0.3, 0.5)


def test_poisson_bound_below_one_form():
    for g in range(2, 11):
        r = poisson_bound(g)
        assert r.phi_zero_certified
        assert r.bound == r.value_at_zero
        assert r.bound <= one_form_bound(4 * g)[1]


def test_beta_derivatives_finite_differences():
    c = constants(3)
    nu = 0.4
    h = 1e-6
    for phi in (0.05, 0.4, 1.3, 2.9):
        b0, d1, d2, d3 = beta_derivatives(c, nu, phi)
        f = lambda t: beta_derivatives(c, nu, t)[0]
        assert d1 == pytest.approx((f(phi + h) - f(phi - h)) / (2 * h), rel=1e-6, abs=1e-12)
        g1 = lambda t: beta_derivatives(c, nu, t)[1]
        g2 = lambda t: beta_derivatives(c, nu, t)[2]
        assert d2 == pytest.approx((g1(phi + h) - g1(phi - h)) / (2 * h), rel=1e-6, abs=1e-12)
        assert d3 == pytest.approx((g2(phi + h) - g2(phi - h)) / (2 * h), rel=1e-6, abs=1e-12)


def test_third_derivative_closed_form_symbolic():
    phi, nu, S = sympy.symbols("phi nu S", positive=True)
    C = sympy.sqrt(1 + S**2)
    u = C - S * sympy.cos(phi)
    beta = u ** (-nu)
    closed = nu * S * sympy.sin(phi) * (1 - (3 * nu + 1) * S * (S - C * sympy.cos(phi))
                                       - nu**2 * S**2 * sympy.sin(phi) ** 2) / u ** (nu + 3)
    diff = sympy.diff(beta, phi, 3) - closed
    R = sympy.Rational
    for vals in ({phi: R(3, 10), nu: R(2, 5), S: 5}, {phi: 2, nu: R(9, 10), S: 12}):
        assert abs(diff.subs(vals).evalf(50)) < 1e-40


def test_lemma4_check():
    c = constants(2)
    cert = lemma4_check(c, 0.5)
    assert cert.certified
    assert min(cert.worst_d1, cert.worst_d2, cert.worst_d3) >= -1e-12
    with pytest.raises(InvalidParameter):
        lemma4_check(c, 1.5)
    with pytest.raises(InvalidParameter):
        lemma4_check(c, 0.5, grid=100)


def test_quartic_expansions_agree():
    for X in np.linspace(-3, 30, 50):
        assert quartic(X) == pytest.approx(quartic_shifted(X), rel=1e-9, abs=1e-9)
    value, ok = quartic_check(g=2)
    assert ok and value > 0
    # below X = 2 the certificate does not apply
    assert not quartic_check(X=1.5)[1]


def test_pocket_check():
    rows, fail = pocket_check(27)
    assert len(rows) == 26 and fail is None
    assert all(r.margin > 0 for r in rows)
    rows, _ = pocket_check(2, 2)
    assert rows[0].inv_delta == pytest.approx(1 / constants(2).delta)
    assert rows[0].R1 == pytest.approx(Rg(constants(2), 1.0))
    with pytest.raises(InvalidGenus):
        pocket_check(5, 1)
