import io
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from adele_zeta.archimedean import (ArchTestFunction, GammaFactor, arch_fourier, arch_zeta, gamma_complex,
                                    gamma_duplication_check, gamma_fn, gamma_real, log_abs_gamma,
                                    mellin_multiplier, stirling_profile)
from adele_zeta.errors import PoleError


def test_gamma_against_mpmath_grid():
    worst = 0.0
    for x in np.linspace(-4.7, 6.3, 23):
        for y in np.linspace(-12, 12, 17):
            z = complex(x, y)
            ref = complex(mpmath.gamma(z))
            worst = max(worst, abs(gamma_fn(z) - ref) / abs(ref))
    assert worst < 1e-12


def test_gamma_examples_and_poles():
    assert abs(gamma_fn(0.5) - math.sqrt(math.pi)) < 1e-14
    assert abs(gamma_fn(5) - 24) < 1e-11
    for z in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma_fn(z)


def test_log_abs_gamma_where_gamma_underflows():
    z = 0.5 + 300j
    assert abs(log_abs_gamma(z) - float(mpmath.log(abs(mpmath.gamma(z))))) < 1e-10


def test_gamma_factor_kinds():
    s = 0.3 + 2.1j
    assert abs(GammaFactor("real-even")(s) - complex(mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2))) < 1e-13
    assert abs(GammaFactor("real-odd")(s) - complex(mpmath.pi ** (-(s + 1) / 2) * mpmath.gamma((s + 1) / 2))) < 1e-13
    assert abs(GammaFactor("complex")(s) - complex(2 * (2 * mpmath.pi) ** (-s) * mpmath.gamma(s))) < 1e-13
    assert abs(GammaFactor("real-even", shift=1)(s) - GammaFactor("real-odd")(s)) < 1e-15
    g = GammaFactor("complex")
    assert abs(g.log_abs(s) - math.log(abs(g(s)))) < 1e-12
    with pytest.raises(ValueError):
        GammaFactor("quaternionic")


def test_duplication():
    rng = np.random.default_rng(0)
    s = rng.uniform(0.1, 4, 10) + 1j * rng.uniform(-20, 20, 10)
    assert np.max(gamma_duplication_check(s)) < 1e-10


def _quad_fourier(phi, y):
    re = quad(lambda x: (phi(x) * np.exp(-2j * np.pi * x * y)).real, -np.inf, np.inf, epsabs=1e-14)[0]
    im = quad(lambda x: (phi(x) * np.exp(-2j * np.pi * x * y)).imag, -np.inf, np.inf, epsabs=1e-14)[0]
    return complex(re, im)


def test_fourier_against_quadrature():
    phi = ArchTestFunction([0.3, -1, 0.5, 0.2, 0.1j])
    F = arch_fourier(phi)
    for y in (-1.3, 0.0, 0.4, 2.0):
        assert abs(F(y) - _quad_fourier(phi, y)) < 1e-10


def test_fourier_period_four_and_gaussian():
    g = ArchTestFunction.gaussian()
    assert arch_fourier(g) == g
    phi = ArchTestFunction([1, 2, -1, 0.5, 3, 0, 1])
    assert arch_fourier(arch_fourier(phi)) == phi.reflect()
    four = phi
    for _ in range(4):
        four = arch_fourier(four)
    assert four.equals(phi, atol=1e-12)


def test_closure_operations():
    phi = ArchTestFunction([1, 0.5, -2])
    xs = np.linspace(-2, 2, 9)
    assert np.allclose(phi.mul_x()(xs), xs * phi(xs))
    h = 1e-6
    num = (phi(xs + h) - phi(xs - h)) / (2 * h)
    assert np.allclose(phi.derivative()(xs), num, atol=1e-8)
    assert phi.at_zero() == 1
    assert np.allclose(phi.parity_part(0)(xs) + phi.parity_part(1)(xs), phi(xs))
    assert ArchTestFunction.from_json(phi.to_json()) == phi


def test_arch_zeta_against_quadrature():
    phi = ArchTestFunction([1, 0.3, 0.7, -0.2])
    for eps in (0, 1):
        for s in (0.8 + 1j, 2.5):
            def integrand(x, part):
                v = (phi(x) + (-1) ** eps * phi(-x)) * x ** (s - 1)
                return v.real if part == 0 else v.imag
            ref = complex(quad(integrand, 0, np.inf, args=(0,), limit=200)[0],
                          quad(integrand, 0, np.inf, args=(1,), limit=200)[0])
            assert abs(arch_zeta(phi, eps, s) - ref) < 1e-8


def test_arch_zeta_standard_is_gamma_r():
    for eps in (0, 1):
        phi = ArchTestFunction.standard(eps)
        s = 0.4 + 3j
        assert abs(arch_zeta(phi, eps, s) - gamma_real(s + eps)) < 1e-14
    with pytest.raises(PoleError):
        arch_zeta(ArchTestFunction.gaussian(), 0, 0)
    with pytest.raises(PoleError):
        arch_zeta(ArchTestFunction.standard(1), 1, -1)


def test_arch_local_functional_equation():
    """Z(F phi, eps, 1 - s) / Z(phi, eps, s) = Gamma_R(1-s+eps)/Gamma_R(s+eps) times i^-eps."""
    rng = np.random.default_rng(1)
    s = 0.3 + 1.2j
    for eps in (0, 1):
        ratios = []
        for _ in range(3):
            phi = ArchTestFunction(rng.normal(size=5)).parity_part(eps)
            ratios.append(arch_zeta(arch_fourier(phi), eps, 1 - s) / arch_zeta(phi, eps, s))
        assert max(abs(r - ratios[0]) for r in ratios) < 1e-10
        assert abs(ratios[0] - (-1j) ** eps * gamma_real(1 - s + eps) / gamma_real(s + eps)) < 1e-10


def test_stirling_profile():
    prof = stirling_profile(0.5, 60)
    assert abs(prof.decay_slope + math.pi / 4) < 0.01
    assert prof.max_deviation < 1e-2
    buf = io.StringIO()
    prof.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("# sigma=0.5") and "err_bound" in lines[0]
    assert lines[1] == "t,log_abs,model,deviation"
    with pytest.raises(ValueError):
        stirling_profile(0.5, 5)
    prof2 = stirling_profile(2.0, 40)
    assert abs(prof2.deviation[prof2.t == 40.0][0]) <= 0.05
    assert abs(prof2.decay_slope + math.pi / 4) < 0.01


def test_mellin_multiplier():
    s = np.array([0.5 + 1j, 2 + 0j])
    out = mellin_multiplier(np.ones(2), s)
    assert np.allclose(out, gamma_real(s))
    assert abs(mellin_multiplier(lambda z: 2 * z)(3) - 6 * gamma_real(3)) < 1e-14
    with pytest.raises(ValueError):
        mellin_multiplier(np.ones(2))
    assert abs(gamma_complex(1) - 1 / math.pi) < 1e-15


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=8), st.floats(-2, 2))
def test_fourier_linearity_property(coeffs, y):
    phi = ArchTestFunction(coeffs)
    psi = ArchTestFunction(list(reversed(coeffs)))
    lhs = arch_fourier(phi + psi)(y)
    rhs = arch_fourier(phi)(y) + arch_fourier(psi)(y)
    assert abs(lhs - rhs) < 1e-9 * (1 + sum(abs(c) for c in coeffs))
