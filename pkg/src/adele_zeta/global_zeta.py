"""Global zeta integrals over the ideles of Q.

The idele class group of Q is R_{>0} x Zhat^x, so an idelic zeta integral
reduces to a Mellin transform over t > 0 of the unit-averaged theta series

    theta(t) = sum_{q in Q^x} int_{Zhat^x} Phi(q t u) omega(u) du.

For finite parts supported in D^-1 Zhat the sum runs over q = n / D and the
finite contribution of q only depends on n modulo a fixed period.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

import mpmath
import numpy as np
from scipy.integrate import quad_vec

from .archimedean import ArchTestFunction, arch_fourier, arch_zeta, gamma_real
from .arith import factorize, primes_up_to
from .characters import DirichletCharacter, HeckeCharacterPoint, root_number, trivial_character
from .errors import DomainError, PoleError
from .padic import PAdicTestFunction, _char_table, local_component, local_fourier, local_zeta

#: Target for the Gaussian tail of truncated theta sums.
THETA_TAIL = 1e-16

#: Quadrature tolerances for the Mellin integrals over [1, oo).
QUAD_EPSABS = 1e-14
QUAD_EPSREL = 1e-12


class GlobalTestFunction:
    """A factorisable Schwartz-Bruhat function on the adeles of Q.

    ``finite`` maps primes to local test functions; every other prime carries
    the indicator of Z_p.  Entries equal to that indicator are dropped.
    """

    __slots__ = ("arch", "finite")

    def __init__(self, arch=None, finite=None):
        self.arch = arch if arch is not None else ArchTestFunction.gaussian()
        finite = dict(finite or {})
        for p, f in finite.items():
            if not isinstance(f, PAdicTestFunction) or f.p != p:
                raise ValueError(f"entry at {p} is not a test function on Q_{p}")
        self.finite = {p: f for p, f in sorted(finite.items()) if not f.is_standard()}

    @classmethod
    def standard(cls):
        return cls(ArchTestFunction.gaussian(), {})

    @classmethod
    def twisted_standard(cls, chi):
        """x^eps exp(-pi x^2) tensor chi_p on Z_p^x at p | q, for a primitive chi mod q."""
        chi = _primitive(chi)
        finite = {}
        for p, _ in factorize(chi.modulus) if chi.modulus > 1 else []:
            finite[p] = PAdicTestFunction.from_unit_character(chi.component(p))
        return cls(ArchTestFunction.standard(chi.parity), finite)

    def fourier(self):
        return GlobalTestFunction(arch_fourier(self.arch),
                                  {p: local_fourier(f) for p, f in self.finite.items()})

    def at_zero(self):
        out = self.arch.at_zero()
        for f in self.finite.values():
            out *= f.at_zero()
        return complex(out)

    def finite_value(self, q):
        """Value of the finite part at a rational number q."""
        q = Fraction(q)
        if q == 0:
            out = 1 + 0j
            for f in self.finite.values():
                out *= f.at_zero()
            return out
        for p, _ in factorize(q.denominator) if q.denominator > 1 else []:
            if p not in self.finite:
                return 0j
        out = 1 + 0j
        for f in self.finite.values():
            out *= f(q)
        return out

    def with_local(self, p, f):
        finite = dict(self.finite)
        finite[p] = f
        return GlobalTestFunction(self.arch, finite)

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return GlobalTestFunction(self.arch * c, self.finite)

    __rmul__ = __mul__

    def __repr__(self):
        return f"GlobalTestFunction(arch={self.arch!r}, finite={self.finite!r})"

    def to_json(self):
        return {"arch": self.arch.to_json(), "finite": [f.to_json() for f in self.finite.values()]}

    @classmethod
    def from_json(cls, data):
        finite = {f["p"]: PAdicTestFunction.from_json(f) for f in data.get("finite", [])}
        return cls(ArchTestFunction.from_json(data["arch"]), finite)


def _primitive(chi):
    if chi is None:
        return trivial_character()
    if isinstance(chi, HeckeCharacterPoint):
        return chi.finite
    return chi.primitive()


def _split_point(chi, s):
    if isinstance(chi, HeckeCharacterPoint):
        return chi.finite, complex(chi.s if s is None else s)
    if s is None:
        raise ValueError("s is required unless chi is a HeckeCharacterPoint")
    return _primitive(chi), complex(s)


# -- theta series ------------------------------------------------------------------------------


class ThetaSeries:
    """t -> sum_{n != 0} w(n) Phi_inf(n t / D) for a global test function.

    With ``chi=None`` the weights are the finite-part values Phi_fin(n / D)
    (the theta function at the idele with archimedean component t and unit
    finite components).  With a character the weights are the unit averages
    int_{Zhat^x} Phi_fin(n u / D) omega(u) du.
    """

    def __init__(self, phi, chi=None, averaged=None):
        self.phi = phi
        if averaged is None:
            averaged = chi is not None
        chi = _primitive(chi)
        self.chi = chi
        self.averaged = averaged
        denom = 1
        for p, f in phi.finite.items():
            denom *= p**f.M
        self.denominator = denom

        primes = set(phi.finite)
        if averaged:
            primes |= {p for p, _ in factorize(chi.modulus)} if chi.modulus > 1 else set()
        period = 1
        parts = []
        for p in sorted(primes):
            f = phi.finite.get(p, PAdicTestFunction.ball(p, 0))
            table, mod = self._local_table(f, denom // p**f.M, chi if averaged else None)
            parts.append((table, mod))
            period *= mod
        n = np.arange(period)
        weights = np.ones(period, dtype=complex)
        for table, mod in parts:
            weights *= table[n % mod]
        self.period = period
        self.weights = weights
        self.coeffs = phi.arch.coeffs
        self.scale = float(np.sum(np.abs(self.coeffs))) * max(float(np.max(np.abs(weights))), 1e-300)
        self.x_star = self._tail_point()

    @staticmethod
    def _local_table(f, coprime_denom, chi):
        p = f.p
        mod_f = p ** (f.M + f.N)
        inv = pow(coprime_denom, -1, mod_f) if mod_f > 1 else 0
        if chi is None:
            n = np.arange(mod_f)
            return f.values[(n * inv) % mod_f], mod_f
        omega = local_component(chi, p)
        k = omega.conductor_exponent
        K = max(f.M + f.N, k, 1)
        mod = p**K
        units = np.arange(mod)
        units = units[units % p != 0]
        n = np.arange(mod)
        idx = (np.outer(n, units) % mod_f) * inv % mod_f if mod_f > 1 else np.zeros((mod, units.size), dtype=int)
        vals = f.values[idx]
        if k:
            vals = vals * _char_table(omega.unit)[units % p**k][None, :]
        return vals.mean(axis=1), mod

    def _tail_point(self):
        # smallest x with |Phi_inf| tail beyond x below THETA_TAIL
        deg = self.coeffs.size - 1
        target = -math.log(THETA_TAIL) + math.log(max(self.scale, 1.0)) + 2
        x = math.sqrt(target / math.pi)
        for _ in range(50):
            x_new = math.sqrt((target + deg * math.log(max(x, 1.0))) / math.pi)
            if abs(x_new - x) < 1e-9:
                break
            x = x_new
        return x + 1.0

    def truncation(self, t):
        """Number of terms per sign kept at scale t."""
        return int(math.ceil(self.denominator * self.x_star / t))

    def __call__(self, t):
        t = float(t)
        T = self.truncation(t)
        n = np.concatenate([np.arange(-T, 0), np.arange(1, T + 1)])
        w = self.weights[n % self.period]
        x = n * (t / self.denominator)
        vals = np.polynomial.polynomial.polyval(x, self.coeffs) * np.exp(-np.pi * x * x)
        return complex(np.sum(w * vals))

    def upper_limit(self, sigma):
        """A t beyond which t^sigma theta(t) is negligible."""
        t = max(1.0, self.denominator * self.x_star)
        deg = self.coeffs.size - 1
        while True:
            x = t / self.denominator
            bound = 4 * self.scale * x**deg * math.exp(-math.pi * x * x) * t ** max(sigma, 0.0) * (1 + self.denominator)
            if bound < 1e-18:
                return t
            t *= 1.05

    def mellin_above_one(self, s):
        """int_1^oo t^s theta(t) dt/t, by adaptive Gauss-Kronrod in log t.

        Returns (value, error estimate).
        """
        s = complex(s)
        if not np.any(self.weights) or not np.any(self.coeffs):
            return 0j, 0.0
        U = math.log(self.upper_limit(s.real))

        def integrand(u):
            v = np.exp(s * u) * self(math.exp(u))
            return np.array([v.real, v.imag])

        val, err = quad_vec(integrand, 0.0, U, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, norm="max")
        return complex(val[0], val[1]), float(err)


def theta_lift(phi, g=1.0, T=None, chi=None):
    """sum_{q in Q^x} Phi(q g) at the idele with archimedean component g > 0.

    With a character, the unit-averaged version is returned instead.  Returns
    (value, truncation) where truncation is the number of terms kept per sign.
    """
    if not g > 0:
        raise ValueError("g must be a positive real scale")
    series = ThetaSeries(phi, chi)
    if T is None:
        return series(g), series.truncation(g)
    n = np.concatenate([np.arange(-T, 0), np.arange(1, T + 1)])
    x = n * (g / series.denominator)
    vals = np.polynomial.polynomial.polyval(x, series.coeffs) * np.exp(-np.pi * x * x)
    return complex(np.sum(series.weights[n % series.period] * vals)), T


def poisson_residual(phi, g):
    """|theta_Phi(g) - g^-1 theta_{F Phi}(1/g) - [(F Phi)(0)/g - Phi(0)]|."""
    fphi = phi.fourier()
    lhs = theta_lift(phi, g)[0] - theta_lift(fphi, 1.0 / g)[0] / g
    rhs = fphi.at_zero() / g - phi.at_zero()
    return abs(lhs - rhs)


# -- zeta integrals ------------------------------------------------------------------------------


@dataclass
class ZetaValue:
    s: complex
    value: complex
    err_bound: float
    method: str

    def to_json(self):
        return {"s": [self.s.real, self.s.imag], "value": [self.value.real, self.value.imag],
                "err_bound": self.err_bound, "method": self.method}


def _bad_primes(phi, chi):
    primes = set(phi.finite)
    if chi.modulus > 1:
        primes |= {p for p, _ in factorize(chi.modulus)}
    return sorted(primes)


def _dirichlet_L(chi, s):
    """L(s, chi) through Hurwitz zeta values."""
    q = chi.modulus
    if q == 1:
        return complex(mpmath.zeta(s))
    total = mpmath.mpc(0)
    for a in range(1, q):
        c = chi(a)
        if c != 0:
            total += mpmath.mpc(c.real, c.imag) * mpmath.zeta(s, mpmath.mpf(a) / q)
    return complex(total * mpmath.power(q, -s))


def zeta_euler(phi, chi=None, s=None, P=10**5, tail="bound"):
    """Global zeta integral as arch_zeta times the product of local zeta integrals.

    ``tail='bound'`` truncates the unramified product at P and reports a
    rigorous bound for the omitted primes.  ``tail='dirichlet'`` replaces the
    unramified part by the partial L-function computed from Hurwitz zeta
    values, leaving only the finitely many special places as explicit local
    factors.
    """
    chi, s = _split_point(chi, s)
    if s.real <= 1:
        raise DomainError(f"Euler product needs Re s > 1, got {s}", abscissa=1.0)
    if P < 2:
        raise ValueError("prime cutoff P must be at least 2")
    value = arch_zeta(phi.arch, chi.parity, s)
    bad = _bad_primes(phi, chi)
    for p in bad:
        f = phi.finite.get(p, PAdicTestFunction.ball(p, 0))
        value *= local_zeta(f, local_component(chi, p), s)
    q = chi.modulus
    if tail == "dirichlet":
        L = _dirichlet_L(chi, s)
        for p in bad:
            if q % p:
                L *= 1 - chi(p) * p ** (-s)
        value *= L
        return ZetaValue(s, complex(value), 1e-14 * abs(value) + 1e-300, "euler")
    if tail != "bound":
        raise ValueError(f"unknown tail mode {tail!r}")
    primes = primes_up_to(int(P))
    primes = primes[~np.isin(primes, bad)]
    residues = np.array([chi(a) for a in range(q)], dtype=complex)
    c = residues[primes % q]
    logs = -np.log1p(-c * np.exp(-s * np.log(primes.astype(float))))
    value *= np.exp(np.sum(logs))
    sigma = s.real
    b = P ** (1 - sigma) / (sigma - 1) / (1 - P ** (-sigma))
    return ZetaValue(s, complex(value), float(abs(value) * math.expm1(b)), "euler")


@dataclass(frozen=True)
class PolarData:
    residue_at_1: complex
    residue_at_0: complex
    psi_at_zero: complex
    fourier_at_zero: complex

    def to_json(self):
        enc = lambda z: [z.real, z.imag]  # noqa: E731
        return {"residue_at_1": enc(self.residue_at_1), "residue_at_0": enc(self.residue_at_0),
                "psi_at_zero": enc(self.psi_at_zero), "fourier_at_zero": enc(self.fourier_at_zero)}


def residues(phi, chi=None):
    """Residues of the continued zeta integral at s = 1 and s = 0."""
    chi = _primitive(chi)
    psi0 = phi.at_zero()
    fpsi0 = phi.fourier().at_zero()
    if not chi.is_trivial():
        return PolarData(0j, 0j, psi0, fpsi0)
    return PolarData(fpsi0, -psi0, psi0, fpsi0)


def _polar_term(polar, s):
    out = 0j
    if polar.residue_at_1 != 0:
        out += polar.residue_at_1 / (s - 1)
    if polar.residue_at_0 != 0:
        out += polar.residue_at_0 / s
    return out


def _check_pole(polar, s, tol=1e-12):
    if abs(s - 1) <= tol and polar.residue_at_1 != 0:
        raise PoleError(f"pole at s=1 with residue {polar.residue_at_1}", location=1.0, polar_data=polar)
    if abs(s) <= tol and polar.residue_at_0 != 0:
        raise PoleError(f"pole at s=0 with residue {polar.residue_at_0}", location=0.0, polar_data=polar)


def zeta_continued(phi, chi=None, s=None, return_error=False):
    """Everywhere-defined zeta integral from the split at |x| = 1 and Poisson summation.

    Z(Phi, chi, s) = I(Phi, chi, s) + I(F Phi, chi^-1, 1 - s)
                     + (F Phi)(0)/(s - 1) - Phi(0)/s      (trivial chi only)

    with I(Phi, chi, s) = int_1^oo t^s theta_{Phi, chi}(t) dt/t.
    """
    chi, s = _split_point(chi, s)
    polar = residues(phi, chi)
    _check_pole(polar, s)
    a, ea = ThetaSeries(phi, chi).mellin_above_one(s)
    b, eb = ThetaSeries(phi.fourier(), chi.conj()).mellin_above_one(1 - s)
    value = a + b + _polar_term(polar, s)
    if return_error:
        return ZetaValue(s, value, ea + eb + 1e-15 * abs(value), "continued")
    return value


def functional_equation_check(phi, chi=None, s=None):
    """|Z(Phi, chi, s) - Z(F Phi, chi^-1, 1 - s)|."""
    chi, s = _split_point(chi, s)
    if chi.is_trivial() and min(abs(s), abs(s - 1)) < 1e-8:
        raise PoleError(f"s={s} is at a pole of the trivial component", location=s)
    lhs = zeta_continued(phi, chi, s)
    rhs = zeta_continued(phi.fourier(), chi.conj(), 1 - s)
    return abs(lhs - rhs)


def numerical_residues(phi, chi=None, radius=0.25, points=32):
    """Residues at 1 and 0 as contour means of (s-1) Z and s Z on small circles."""
    chi = _primitive(chi)
    theta = np.exp(2j * np.pi * (np.arange(points) + 0.5) / points)
    a = ThetaSeries(phi, chi)
    b = ThetaSeries(phi.fourier(), chi.conj())
    polar = residues(phi, chi)

    def z(s):
        return a.mellin_above_one(s)[0] + b.mellin_above_one(1 - s)[0] + _polar_term(polar, s)

    r1 = np.mean([radius * w * z(1 + radius * w) for w in theta])
    r0 = np.mean([radius * w * z(radius * w) for w in theta])
    return complex(r1), complex(r0)


def iota_involution(f):
    """iota(f)(g) = f(1/g) / g on the positive reals."""
    return lambda g: f(1.0 / np.asarray(g, dtype=float)) / np.asarray(g, dtype=float)


def iota_samples(g, values):
    """Apply iota to samples (g_i, f(g_i)); returns the new grid and values, sorted by g."""
    g = np.asarray(g, dtype=float)
    values = np.asarray(values)
    return (1.0 / g)[::-1], (g * values)[::-1]


def height(exponents=None, arch=1.0):
    """prod_v max(|g_v|_v, 1) for the idele with |g_p|_p = p^-e_p and |g_inf| = |arch|."""
    out = max(abs(arch), 1.0)
    for p, e in (exponents or {}).items():
        out *= max(float(p) ** (-e), 1.0)
    return out


# -- completed L-functions -------------------------------------------------------------------------


@dataclass
class CompletedLFunction:
    """Lambda(s, chi) = q^((s+eps)/2) Gamma_R(s+eps) L(s, chi), via the twisted standard test function.

    ``method`` selects the evaluation route: 'continued' (theta/Poisson,
    valid everywhere), 'dirichlet' (Hurwitz series, right half-plane) or
    'auto', which uses the series for Re s >= 1.5 and |Im s| >= 5 where the
    continued route loses relative accuracy to cancellation.
    """

    chi: DirichletCharacter
    method: str = "continued"
    test_function: GlobalTestFunction = field(init=False, repr=False)

    def __post_init__(self):
        if not self.chi.is_primitive():
            raise ValueError("standard_L requires a primitive character")
        if self.method not in ("continued", "dirichlet", "auto"):
            raise ValueError(f"unknown method {self.method!r}")
        self.test_function = GlobalTestFunction.twisted_standard(self.chi)
        self._theta = ThetaSeries(self.test_function, self.chi)
        self._dual_theta = ThetaSeries(self.test_function.fourier(), self.chi.conj())
        self._polar = residues(self.test_function, self.chi)

    @property
    def conductor(self):
        return self.chi.modulus

    @property
    def epsilon(self):
        return self.chi.parity

    @property
    def root_number(self):
        return root_number(self.chi)

    def gamma_factor(self, s):
        return gamma_real(complex(s) + self.epsilon)

    def _route(self, s):
        if self.method != "auto":
            return self.method
        return "dirichlet" if s.real >= 1.5 and abs(s.imag) >= 5 else "continued"

    def zeta(self, s, return_error=False):
        """The zeta integral Gamma_R(s+eps) L(s, chi) of the twisted standard test function."""
        s = complex(s)
        if self._route(s) == "dirichlet":
            val = complex(self.gamma_factor(s) * _dirichlet_L(self.chi, s))
            err = 1e-14 * abs(val)
            return ZetaValue(s, val, err, "dirichlet") if return_error else val
        _check_pole(self._polar, s)
        a, ea = self._theta.mellin_above_one(s)
        b, eb = self._dual_theta.mellin_above_one(1 - s)
        val = a + b + _polar_term(self._polar, s)
        return ZetaValue(s, val, ea + eb + 1e-15 * abs(val), "continued") if return_error else val

    def __call__(self, s):
        s = complex(s)
        return self.conductor ** ((s + self.epsilon) / 2) * self.zeta(s)

    def evaluate(self, s):
        """Lambda(s) as a ZetaValue with an error estimate."""
        s = complex(s)
        z = self.zeta(s, return_error=True)
        k = self.conductor ** ((s + self.epsilon) / 2)
        return ZetaValue(s, k * z.value, abs(k) * z.err_bound, z.method)

    def stripped(self, s):
        """L(s, chi) with the archimedean and conductor factors removed."""
        s = complex(s)
        return self.zeta(s) / self.gamma_factor(s)

    def dual(self):
        return CompletedLFunction(self.chi.conj(), self.method)

    def functional_equation_residual(self, s):
        """|Lambda(s, chi) - W(chi) Lambda(1 - s, conj chi)|."""
        s = complex(s)
        return abs(self(s) - self.root_number * self.dual()(1 - s))

    def polar_data(self):
        return self._polar

    def zero_free_check(self, sigma=1.5, t_max=30.0, step=0.5):
        """Minimum of |L| and |Lambda| on the segment sigma + i[-t_max, t_max]."""
        ts = np.arange(-t_max, t_max + step / 2, step)
        lam = np.array([self(sigma + 1j * t) for t in ts])
        gam = np.array([self.gamma_factor(sigma + 1j * t) for t in ts])
        k = np.array([self.conductor ** ((sigma + 1j * t + self.epsilon) / 2) for t in ts])
        return {"min_abs_L": float(np.min(np.abs(lam / (gam * k)))), "min_abs_Lambda": float(np.min(np.abs(lam)))}


def standard_L(chi=None, method="continued"):
    """The completed L-function attached to a primitive character (trivial if None)."""
    return CompletedLFunction(_primitive(chi), method)
