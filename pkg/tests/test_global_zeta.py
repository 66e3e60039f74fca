import math

import mpmath
import numpy as np
import pytest

from adele_zeta.archimedean import ArchTestFunction, gamma_real
from adele_zeta.characters import HeckeCharacterPoint, enumerate_characters, kronecker_character, root_number
from adele_zeta.errors import DomainError, PoleError
from adele_zeta.global_zeta import (CompletedLFunction, GlobalTestFunction, ThetaSeries, functional_equation_check,
                                    height, iota_involution, iota_samples, numerical_residues, poisson_residual,
                                    residues, standard_L, theta_lift, zeta_continued, zeta_euler)
from adele_zeta.padic import PAdicTestFunction

from oracles import theta_direct

CATALAN = 0.915965594177219015054603514932


def mp_L(chi, s):
    if chi.modulus == 1:
        return complex(mpmath.zeta(s))
    return complex(mpmath.dirichlet(s, [complex(chi(a)) for a in range(chi.modulus)]))


def test_theta_lift_against_direct_sum():
    phi = GlobalTestFunction.standard()
    val, _ = theta_lift(phi, 1.0)
    assert abs(val - 0.08643481121330801) < 1e-15
    f2 = PAdicTestFunction(2, 1, 1, [1, 0.5, -1, 2j])
    f3 = PAdicTestFunction.shell(3, 0)
    phi = GlobalTestFunction(ArchTestFunction([1, 0.2, 0.3]), {2: f2, 3: f3})
    for g in (0.3, 1.0, 2.7):
        ref = theta_direct(phi.arch, phi.finite_value, 2, g) - phi.at_zero()
        assert abs(theta_lift(phi, g)[0] - ref) < 1e-13
    # explicit truncation agrees with the automatic one
    assert abs(theta_lift(phi, 0.5, T=400)[0] - theta_lift(phi, 0.5)[0]) < 1e-14
    with pytest.raises(ValueError):
        theta_lift(phi, -1)


def test_poisson_identity():
    rng = np.random.default_rng(17)
    f5 = PAdicTestFunction(5, 1, 0, rng.normal(size=5))
    phi = GlobalTestFunction(ArchTestFunction([0.5, 0, 1, 0.2]), {5: f5})
    for g in np.linspace(0.25, 4, 9):
        assert poisson_residual(phi, float(g)) < 1e-10


def test_zeta_two():
    L = standard_L()
    assert abs(L.stripped(2) - math.pi**2 / 6) < 1e-12
    assert abs(L(2) - math.pi / 6) < 1e-12
    assert abs(L.stripped(-1) + 1 / 12) < 1e-12


def test_special_values_chi_minus_four():
    L = standard_L(kronecker_character(-4))
    assert abs(L.stripped(1) - math.pi / 4) < 1e-12
    assert abs(L.stripped(2) - CATALAN) < 1e-12
    assert L.epsilon == 1 and L.conductor == 4
    assert abs(L.root_number - 1) < 1e-14


@pytest.mark.parametrize("q,idx", [(5, 1), (5, 2), (7, 3), (8, 1), (12, 3), (9, 1)])
def test_stripped_matches_mpmath(q, idx):
    chi = enumerate_characters(q)[idx]
    if not chi.is_primitive():
        pytest.skip("imprimitive")
    L = standard_L(chi)
    for s in (2, 0.5 + 3j, -0.5 + 1j, 1.2):
        assert abs(L.stripped(s) - mp_L(chi, s)) < 1e-10 * max(1, abs(mp_L(chi, s)))


@pytest.mark.parametrize("q,idx", [(1, 0), (4, 1), (5, 1), (5, 2), (7, 1), (8, 1)])
def test_functional_equation(q, idx):
    chi = enumerate_characters(q)[idx]
    L = standard_L(chi)
    for s in (0.3 + 4j, 0.7 - 11j, 2 + 1j, -1.5 + 0.5j):
        assert L.functional_equation_residual(s) < 1e-10


def test_functional_equation_check_non_standard():
    f3 = PAdicTestFunction(3, 1, 1, [1, 2, 0, -1, 0.5, 0, 0, 1j, 3])
    phi = GlobalTestFunction(ArchTestFunction([1, 0.3, 0.5]), {3: f3})
    for s in (0.4 + 2j, 1.7 - 3j):
        assert functional_equation_check(phi, None, s) < 1e-10
    chi = kronecker_character(5)
    assert functional_equation_check(GlobalTestFunction.twisted_standard(chi), chi, 0.2 + 1j) < 1e-10
    with pytest.raises(PoleError):
        functional_equation_check(phi, None, 1)


def test_euler_vs_continued():
    f2 = PAdicTestFunction(2, 1, 1, [0.5, 1, 2, -1])
    phi = GlobalTestFunction(ArchTestFunction([1, 0, 0.4]), {2: f2})
    for s in (2.0, 2 + 5j, 3.5 - 2j):
        cont = zeta_continued(phi, None, s)
        eul = zeta_euler(phi, None, s, tail="dirichlet")
        assert abs(cont - eul.value) < 1e-12 * max(1, abs(cont))
        bounded = zeta_euler(phi, None, s, P=10**4)
        assert abs(bounded.value - cont) <= bounded.err_bound + 1e-14


def test_euler_domain():
    with pytest.raises(DomainError) as info:
        zeta_euler(GlobalTestFunction.standard(), None, 0.8)
    assert info.value.abscissa == 1.0
    with pytest.raises(ValueError):
        zeta_euler(GlobalTestFunction.standard(), None, 2, tail="nope")


def test_hecke_point_input():
    chi = kronecker_character(-3)
    pt = HeckeCharacterPoint(chi, 2 + 1j)
    phi = GlobalTestFunction.twisted_standard(chi)
    assert abs(zeta_continued(phi, pt) - zeta_continued(phi, chi, 2 + 1j)) < 1e-15
    with pytest.raises(ValueError):
        zeta_continued(phi, chi)


def test_residues_and_poles():
    phi = GlobalTestFunction.standard()
    polar = residues(phi)
    assert polar.residue_at_1 == 1 and polar.residue_at_0 == -1
    r1, r0 = numerical_residues(phi)
    assert abs(r1 - 1) < 1e-7 and abs(r0 + 1) < 1e-7
    with pytest.raises(PoleError) as info:
        zeta_continued(phi, None, 1)
    assert info.value.polar_data.residue_at_1 == 1
    # a scaled Gaussian: residues follow (F Phi)(0) and -Phi(0)
    phi3 = GlobalTestFunction(ArchTestFunction([3, 0, 1]), {})
    r1, r0 = numerical_residues(phi3)
    assert abs(r1 - phi3.fourier().at_zero()) < 1e-7 and abs(r0 + 3) < 1e-7


def test_no_poles_for_nontrivial_character():
    chi = kronecker_character(-4)
    L = standard_L(chi)
    assert abs(L(1)) < 10 and abs(L(0)) < 10
    polar = L.polar_data()
    assert polar.residue_at_1 == 0 and polar.residue_at_0 == 0


def test_auto_route_and_zero_free():
    L = standard_L(method="auto")
    s = 2 + 40j
    assert abs(L.stripped(s) - mp_L(enumerate_characters(1)[0], s)) < 1e-12
    assert L.evaluate(s).method == "dirichlet"
    assert L.evaluate(0.5 + 1j).method == "continued"
    check = standard_L(kronecker_character(-4), method="auto").zero_free_check(1.5, 30)
    assert check["min_abs_L"] > 0.01
    with pytest.raises(ValueError):
        CompletedLFunction(enumerate_characters(4)[0])


def test_theta_series_weights_are_character_values():
    for chi in (kronecker_character(-4), enumerate_characters(5)[1], enumerate_characters(7)[2]):
        th = ThetaSeries(GlobalTestFunction.twisted_standard(chi), chi)
        assert th.period % chi.modulus == 0
        vals = [th.weights[n % th.period] for n in range(1, 3 * chi.modulus)]
        assert np.allclose(vals, [chi(n) for n in range(1, 3 * chi.modulus)], atol=1e-14)


def test_height_and_iota():
    assert height() == 1.0
    assert height({2: -3}, 0.5) == 8.0
    assert height({2: 3}, 4.0) == 4.0
    f = lambda x: np.exp(-x)  # noqa: E731
    iota = iota_involution(f)
    g = np.array([0.5, 1.0, 2.0])
    assert np.allclose(iota(g), np.exp(-1 / g) / g)
    assert np.allclose(iota_involution(iota)(g), f(g))
    grid, vals = iota_samples(g, f(g))
    assert np.allclose(grid, [0.5, 1.0, 2.0]) and np.allclose(vals, iota(grid))


def test_global_test_function_json():
    phi = GlobalTestFunction.twisted_standard(kronecker_character(12))
    back = GlobalTestFunction.from_json(phi.to_json())
    assert back.arch == phi.arch and set(back.finite) == {2, 3}
    assert abs(zeta_continued(back, kronecker_character(12), 2) - zeta_continued(phi, kronecker_character(12), 2)) < 1e-15


def test_root_number_matches_gauss_sum_formula():
    for chi in enumerate_characters(7)[1:]:
        L = standard_L(chi)
        assert abs(L.root_number - root_number(chi)) < 1e-15
        s = 0.25 + 2j
        lhs = L(s)
        rhs = L.root_number * L.dual()(1 - s)
        assert abs(lhs - rhs) < 1e-10
    assert abs(gamma_real(2) - 1 / math.pi) < 1e-15
