import math

import mpmath
import numpy as np
import pytest

from adele_zeta.arith import first_primes
from adele_zeta.characters import enumerate_characters, kronecker_character
from adele_zeta.extensions import (QuadraticExtensionData, abelian_decomposition_identity, cubic_characters,
                                   decomposition_identity, dedekind_euler_factor, norm_pushforward,
                                   partial_products, splitting_type, twisted_convolution)
from adele_zeta.padic import LocalCharacter, PAdicTestFunction, local_zeta


def _count_roots(d, p):
    """Number of roots of the minimal polynomial of the ring of integers of Q(sqrt d) mod p."""
    if d % 4 == 0:
        poly = lambda x: x * x - d // 4  # noqa: E731
    else:
        poly = lambda x: x * x - x + (1 - d) // 4  # noqa: E731
    return sum(1 for x in range(p) if poly(x) % p == 0)


@pytest.mark.parametrize("d", [-4, 5, -3, 8, -7, 12, -20])
def test_splitting_matches_polynomial_roots(d):
    for p in first_primes(30):
        p = int(p)
        roots = _count_roots(d, p)
        expect = {2: "split", 0: "inert", 1: "ramified"}[roots]
        assert splitting_type(p, d) == expect


@pytest.mark.parametrize("d", [-4, 5, -3, 8])
def test_decomposition_exact_first_50(d):
    for p in first_primes(50):
        check = decomposition_identity(int(p), d)
        assert check.ok and check.residual == 0.0


def test_dedekind_factor_by_norms():
    # count ideals of norm p^k: split gives k+1, inert gives 1 if k even, ramified gives 1
    for d, p in [(-4, 5), (-4, 3), (-4, 2), (5, 11), (5, 2)]:
        f = dedekind_euler_factor(p, d)
        X = 0.1
        kind = splitting_type(p, d)
        counts = [(k + 1) if kind == "split" else (1 if kind == "ramified" or k % 2 == 0 else 0) for k in range(80)]
        assert abs(f.at_x(X) - sum(c * X**k for k, c in enumerate(counts))) < 1e-14


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        splitting_type(4, -4)
    with pytest.raises(ValueError):
        dedekind_euler_factor(3, 12 * 4)
    with pytest.raises(ValueError):
        QuadraticExtensionData.from_discriminant(9)
    data = QuadraticExtensionData.from_discriminant(-8)
    assert data.is_imaginary and data.ramified == (2,)


def test_norm_pushforward():
    for d in (-4, 5, -3, 8):
        for p in first_primes(15):
            n = norm_pushforward(int(p), d)
            assert n.matches_dedekind()
            assert abs(n.zeta_partial(2) - n.zeta_symbolic()(2)) < 1e-14
    n = norm_pushforward(3, -4)
    assert n.splitting == "inert" and n.support(6) == [0, 2, 4, 6]
    assert norm_pushforward(2, -4).unit_index == 2


def test_partial_products_within_bounds():
    for d in (-4, 5, -3, 8):
        zE, zF, bE, bF = partial_products(d, 2.0, 10**4)
        assert abs(zE - zF) <= bE + bF
        # truth from closed forms: zeta(2) L(2, eta)
        eta = kronecker_character(d)
        truth = complex(mpmath.zeta(2) * mpmath.dirichlet(2, [eta(a) for a in range(abs(d))]))
        assert abs(zE - truth) <= bE + 1e-12


def test_twisted_convolution_zeta_shadow():
    """Z(f1 * eta f2, chi, s) = Z(f1, chi, s) Z(f2, chi eta, s)."""
    rng = np.random.default_rng(6)
    for p in (2, 3, 5):
        f1 = PAdicTestFunction(p, 1, 2, rng.normal(size=p**3))
        f1 = f1 - f1.at_zero() * PAdicTestFunction.ball(p, 2)
        f2 = PAdicTestFunction(p, 0, 2, rng.normal(size=p**2))
        f2 = f2 - f2.at_zero() * PAdicTestFunction.ball(p, 2)
        chars = enumerate_characters(p**2)
        for eta_unit, chi_unit in [(None, None), (chars[1], None), (chars[-1], chars[1])]:
            eta = LocalCharacter(p, -1, eta_unit)
            chi = LocalCharacter(p, 1j, chi_unit)
            conv = twisted_convolution(f1, f2, eta)
            s = 0.7 + 1.1j
            lhs = local_zeta(conv, chi, s)
            rhs = local_zeta(f1, chi, s) * local_zeta(f2, chi * eta, s)
            assert abs(lhs - rhs) < 1e-12 * max(1, abs(rhs))
    with pytest.raises(ValueError):
        twisted_convolution(PAdicTestFunction.ball(2, 0), PAdicTestFunction.shell(2, 0), None)


def test_cubic_field_conductor_seven():
    chars = cubic_characters(7)
    assert [c.order() for c in chars] == [1, 3, 3]
    checked = 0
    for p in first_primes(30):
        p = int(p)
        if p == 7:
            continue
        res = abelian_decomposition_identity(p, chars)
        assert res.ok and res.residual < 1e-14
        # f = 1 exactly for p = +-1 mod 7 (cubes mod 7), else 3
        assert res.frobenius_order == (1 if pow(p, 2, 7) == 1 else 3)
        checked += 1
        if checked == 25:
            break
    assert checked == 25
    with pytest.raises(ValueError):
        abelian_decomposition_identity(7, chars)


def test_abelian_biquadratic():
    # Q(i, sqrt 5): characters 1, chi_-4, chi_5, chi_-20
    chars = [enumerate_characters(1)[0], kronecker_character(-4), kronecker_character(5), kronecker_character(-20)]
    for p in (3, 7, 11, 13, 29, 41):
        assert abelian_decomposition_identity(p, chars).ok
    with pytest.raises(ValueError):
        abelian_decomposition_identity(3, chars[:3])


def test_group_validation():
    with pytest.raises(ValueError):
        abelian_decomposition_identity(3, [kronecker_character(-4)])
    c7 = cubic_characters(7)
    with pytest.raises(ValueError):
        abelian_decomposition_identity(3, [c7[0], c7[1], c7[1]])
    with pytest.raises(ValueError):
        cubic_characters(5)


def test_norm_pushforward_counts_directly():
    # for split p the norm map on Q_p x Q_p sends (a, b) to ab; mass on p^j is the number of (i, j-i)
    n = norm_pushforward(5, -4)
    for j in range(6):
        assert n.shell_mass(j) == len([i for i in range(j + 1)])
    assert math.isclose(sum(n.shell_mass(j) * 0.5**j for j in range(200)), 4.0)
