"""Factorisation of Dedekind zeta functions of abelian extensions of Q, prime by prime.

Extensions are described only through their characters and the splitting of
primes; no arithmetic in rings of integers is needed.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as P

from .arith import factorize, is_prime, primes_up_to
from .characters import DirichletCharacter, is_fundamental_discriminant, kronecker_character
from .padic import ATOL, EulerFactor, LocalCharacter, PAdicTestFunction, _char_table, as_local


@dataclass(frozen=True)
class QuadraticExtensionData:
    discriminant: int
    eta: DirichletCharacter
    ramified: tuple

    @classmethod
    def from_discriminant(cls, d):
        if not is_fundamental_discriminant(d):
            raise ValueError(f"{d} is not a fundamental discriminant")
        return cls(d, kronecker_character(d), tuple(p for p, _ in factorize(abs(d))))

    @property
    def is_imaginary(self):
        return self.discriminant < 0


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def splitting_type(p, d):
    """'split', 'inert' or 'ramified' for the prime p in Q(sqrt d)."""
    _check_prime(p)
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    if d % p == 0:
        return "ramified"
    return "split" if kronecker_character(d)(p) == 1 else "inert"


def dedekind_euler_factor(p, d):
    """Local factor of zeta_{Q(sqrt d)} at p as a rational function of X = p^-s."""
    kind = splitting_type(p, d)
    den = {"split": [1, -2, 1], "inert": [1, 0, -1], "ramified": [1, -1]}[kind]
    return EulerFactor(p, [1], den)


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    residual: float
    lhs: EulerFactor
    rhs: EulerFactor


def decomposition_identity(p, d):
    """Check zeta_{E,p} = zeta_p * L_p(eta) on coefficient arrays."""
    eta = kronecker_character(d)
    lhs = dedekind_euler_factor(p, d)
    rhs = EulerFactor.standard(p, 1.0) * EulerFactor(p, [1], [1, -eta(p)])
    res = lhs.residual(rhs)
    return IdentityCheck(res == 0.0, res, lhs, rhs)


# -- local convolution -----------------------------------------------------------------------------


def _shells(f, L):
    """Shell-coset table {j: values over units mod p^L} of a function vanishing near 0."""
    p = f.p
    units = np.arange(p**L)
    units = units[units % p != 0]
    mod = p ** (f.M + f.N)
    out = {}
    for j in range(-f.M, f.N):
        vals = f.values[(units * p ** (f.M + j)) % mod]
        if np.any(np.abs(vals) > ATOL):
            out[j] = vals
    return units, out


def twisted_convolution(f1, f2, eta):
    """(f1 * eta f2)(g) = int f1(g'^-1 g) f2(g') eta(g') d^x g' on Q_p^x.

    Both inputs are functions on Q_p^x (vanishing near 0), stored as
    p-adic test functions; ``eta`` is anything ``as_local`` accepts.
    """
    if f1.p != f2.p:
        raise ValueError("incompatible primes")
    p = f1.p
    if not (f1.vanishes_at_zero() and f2.vanishes_at_zero()):
        raise ValueError("twisted_convolution takes functions on Q_p^x (vanishing near 0)")
    omega = as_local(eta, p)
    k = omega.conductor_exponent
    L = max(f1.M + f1.N, f2.M + f2.N, k, 1)
    units, s1 = _shells(f1, L)
    _, s2 = _shells(f2, L)
    if not s1 or not s2:
        return PAdicTestFunction.zero(p)
    mod = p**L
    pos = np.full(mod, -1)
    pos[units] = np.arange(units.size)
    eta_u = _char_table(omega.unit)[units % p**k] if k else np.ones(units.size)
    # quotient[a, b] = index of units[a] / units[b]
    inv = np.array([pow(int(u), -1, mod) for u in units])
    quotient = pos[np.outer(units, inv) % mod]
    result = {}
    for j1, v1 in s1.items():
        for j2, v2 in s2.items():
            w = v2 * eta_u * omega.frob**j2
            conv = (v1[quotient] * w[None, :]).mean(axis=1)
            result[j1 + j2] = result.get(j1 + j2, 0) + conv
    jmin, jmax = min(result), max(result)
    M = max(0, -jmin)
    N = max(jmax + L, 1)
    r = np.arange(p ** (M + N))
    vals = np.zeros(r.size, dtype=complex)
    for j, conv in result.items():
        sel = r[(r % p ** (M + j) == 0) & (r % p ** (M + j + 1) != 0)] if M + j >= 0 else r[:0]
        u = (sel // p ** (M + j)) % mod
        vals[sel] = conv[pos[u]]
    return PAdicTestFunction(p, M, N, vals)


# -- norm pushforward ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class NormPushforward:
    """N_!(1_{O_{E,p}}) as a function on Q_p^x, described shell by shell.

    The fibre measure is normalised so that the unit shell of E_p carries
    total mass 1; ``shell_mass(j)`` is the mass landing on p^j Z_p^x and
    ``unit_index`` the index in Z_p^x of the norm subgroup it is spread over.
    """

    p: int
    discriminant: int
    splitting: str

    @property
    def unit_index(self):
        return 2 if self.splitting == "ramified" else 1

    @property
    def shell_step(self):
        return 2 if self.splitting == "inert" else 1

    def shell_mass(self, j):
        if j < 0:
            return 0
        if self.splitting == "split":
            return j + 1
        if self.splitting == "inert":
            return 1 if j % 2 == 0 else 0
        return 1

    def support(self, jmax):
        return [j for j in range(jmax + 1) if self.shell_mass(j)]

    def zeta_symbolic(self, c=1.0):
        """sum_j shell_mass(j) (c X)^j in closed form."""
        if self.splitting == "split":
            return EulerFactor(self.p, [1], [1, -2 * c, c * c])
        if self.splitting == "inert":
            return EulerFactor(self.p, [1], [1, 0, -c * c])
        return EulerFactor(self.p, [1], [1, -c])

    def zeta_partial(self, s, c=1.0, jmax=200):
        X = c * self.p ** (-complex(s))
        return sum(self.shell_mass(j) * X**j for j in range(jmax + 1))

    def matches_dedekind(self):
        return self.zeta_symbolic().residual(dedekind_euler_factor(self.p, self.discriminant)) == 0.0


def norm_pushforward(p, d):
    _check_prime(p)
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    return NormPushforward(p, d, splitting_type(p, d))


# -- abelian extensions ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianCheck:
    ok: bool
    frobenius_order: int
    residual: float
    product: np.ndarray
    expected: np.ndarray


def _validate_group(chars):
    if not chars or not chars[0].is_trivial():
        raise ValueError("the first character must be trivial")
    q = 1
    for c in chars:
        q = q * c.modulus // math.gcd(q, c.modulus)
    lifted = [c.extend(q) for c in chars]
    keys = {c.exponents for c in lifted}
    if len(keys) != len(lifted):
        raise ValueError("character list has repeated entries")
    for a in lifted:
        for b in lifted:
            if (a * b).exponents not in keys:
                raise ValueError("character list is not closed under multiplication")
    return q


def abelian_decomposition_identity(p, chars):
    """Check prod_i (1 - eta_i(p) X) = (1 - X^f)^(d/f) for an unramified prime p."""
    _check_prime(p)
    q = _validate_group(list(chars))
    if q % p == 0:
        raise ValueError(f"{p} ramifies (divides the conductor {q})")
    d = len(chars)
    turns = [c.turn(p) for c in chars]
    f = 1
    for t in turns:
        f = f * t.denominator // math.gcd(f, t.denominator)
    if d % f:
        return AbelianCheck(False, f, math.inf, np.array([]), np.array([]))
    expected_multiset = sorted(Fraction(i, f) for i in range(f) for _ in range(d // f))
    exact = sorted(turns) == expected_multiset
    product = np.array([1 + 0j])
    for c in chars:
        product = P.polymul(product, [1, -c(p)])
    expected = P.polypow([1] + [0] * (f - 1) + [-1], d // f)
    res = float(np.max(np.abs(product - expected)))
    return AbelianCheck(exact, f, res, product, expected)


def cubic_characters(conductor=7):
    """Trivial character plus the two cubic characters of the given prime conductor."""
    from .characters import enumerate_characters
    chars = [c for c in enumerate_characters(conductor) if c.order() in (1, 3)]
    if len(chars) != 3:
        raise ValueError(f"no cyclic cubic field of conductor {conductor}")
    return chars


def partial_products(d, s=2.0, P=10**4):
    """Truncated Euler products of zeta_E(s) and zeta(s) L(s, eta) with tail bounds."""
    s = complex(s)
    sigma = s.real
    primes = primes_up_to(int(P))
    X = np.exp(-s * np.log(primes.astype(float)))
    zE = np.prod([dedekind_euler_factor(int(p), d).at_x(x) for p, x in zip(primes, X)])
    eta = kronecker_character(d)
    eta_vals = np.array([eta(int(p)) for p in primes])
    zF = np.prod(1 / (1 - X)) * np.prod(1 / (1 - eta_vals * X))
    # |log tail| <= sum_{n > P} n^-sigma / (1 - P^-sigma) per degree-1 factor
    b = P ** (1 - sigma) / (sigma - 1) / (1 - P ** (-sigma))
    bound_E = abs(zE) * math.expm1(2 * b)
    bound_F = abs(zF) * math.expm1(2 * b)
    return complex(zE), complex(zF), bound_E, bound_F
