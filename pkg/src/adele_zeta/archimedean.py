"""The real place: gamma factors, Schwartz functions in the span of x^m exp(-pi x^2),
their Fourier transforms and local zeta integrals.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from numbers import Number

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import PoleError

# Lanczos coefficients, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)

#: Highest monomial degree allowed in an ArchTestFunction.
MAX_DEGREE = 64


def _check_poles(z):
    near = np.abs(z - np.round(z.real)) == 0
    bad = near & (np.round(z.real) <= 0)
    if np.any(bad):
        raise PoleError(f"gamma has a pole at {complex(z[bad][0])}", location=complex(z[bad][0]))


def _lanczos_log(z):
    # log Gamma(z) for Re z >= 1/2 (principal branch up to multiples of 2 pi i)
    z = z - 1
    x = np.full(z.shape, _LANCZOS[0], dtype=complex)
    for k in range(1, len(_LANCZOS)):
        x = x + _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def gamma_fn(s):
    """Complex gamma function (Lanczos approximation, reflection for Re s < 1/2)."""
    z = np.asarray(s, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    _check_poles(z)
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    out[right] = np.exp(_lanczos_log(z[right]))
    left = ~right
    if np.any(left):
        w = z[left]
        out[left] = np.pi / (np.sin(np.pi * w) * np.exp(_lanczos_log(1 - w)))
    return complex(out[0]) if scalar else out


def log_abs_gamma(s):
    """log|Gamma(s)|, accurate where Gamma itself would underflow."""
    z = np.asarray(s, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    _check_poles(z)
    out = np.empty(z.shape)
    right = z.real >= 0.5
    out[right] = _lanczos_log(z[right]).real
    left = ~right
    if np.any(left):
        w = z[left]
        out[left] = math.log(math.pi) - np.log(np.abs(np.sin(np.pi * w))) - _lanczos_log(1 - w).real
    return float(out[0]) if scalar else out


def gamma_real(s):
    """Gamma_R(s) = pi^(-s/2) Gamma(s/2)."""
    s = np.asarray(s, dtype=complex)
    return np.pi ** (-s / 2) * gamma_fn(s / 2)


def gamma_complex(s):
    """Gamma_C(s) = 2 (2 pi)^(-s) Gamma(s)."""
    s = np.asarray(s, dtype=complex)
    return 2 * (2 * np.pi) ** (-s) * gamma_fn(s)


@dataclass(frozen=True)
class GammaFactor:
    """An archimedean local factor of kind 'real-even', 'real-odd' or 'complex', shifted by ``shift``."""

    kind: str
    shift: complex = 0j

    def __post_init__(self):
        if self.kind not in ("real-even", "real-odd", "complex"):
            raise ValueError(f"unknown gamma factor kind {self.kind!r}")

    def __call__(self, s):
        s = np.asarray(s, dtype=complex) + self.shift
        if self.kind == "real-even":
            return gamma_real(s)
        if self.kind == "real-odd":
            return gamma_real(s + 1)
        return gamma_complex(s)

    def log_abs(self, s):
        s = np.asarray(s, dtype=complex) + self.shift
        if self.kind == "complex":
            return math.log(2) - s.real * math.log(2 * math.pi) + log_abs_gamma(s)
        if self.kind == "real-odd":
            s = s + 1
        return -s.real / 2 * math.log(math.pi) + log_abs_gamma(s / 2)

    @classmethod
    def for_parity(cls, eps):
        return cls("real-odd" if eps else "real-even")


# -- test functions ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _fourier_poly(m):
    """Coefficients of the polynomial P_m with F[x^m e^{-pi x^2}] = P_m(y) e^{-pi y^2}."""
    if m == 0:
        return (1 + 0j,)
    prev = np.array(_fourier_poly(m - 1), dtype=complex)
    deriv = P.polyder(prev) if prev.size > 1 else np.zeros(1, dtype=complex)
    shifted = P.polymulx(prev)
    out = P.polyadd(1j / (2 * np.pi) * deriv, -1j * shifted)
    return tuple(out)


class ArchTestFunction:
    """Schwartz function sum_m c_m x^m exp(-pi x^2) on the real line."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        nz = np.flatnonzero(c != 0)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)
        if c.size - 1 > MAX_DEGREE:
            raise ValueError(f"degree {c.size - 1} exceeds MAX_DEGREE={MAX_DEGREE}")
        c.flags.writeable = False
        self.coeffs = c

    @classmethod
    def gaussian(cls):
        return cls([1])

    @classmethod
    def monomial(cls, m, c=1.0):
        return cls([0] * m + [c])

    @classmethod
    def standard(cls, eps=0):
        """exp(-pi x^2) for even characters, x exp(-pi x^2) for odd ones."""
        return cls.monomial(eps)

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return P.polyval(x, self.coeffs) * np.exp(-np.pi * x * x)

    def at_zero(self):
        return complex(self.coeffs[0])

    def __add__(self, other):
        if not isinstance(other, ArchTestFunction):
            return NotImplemented
        return ArchTestFunction(P.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        if not isinstance(other, ArchTestFunction):
            return NotImplemented
        return ArchTestFunction(P.polysub(self.coeffs, other.coeffs))

    def __neg__(self):
        return ArchTestFunction(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Number):
            return ArchTestFunction(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def mul_x(self):
        return ArchTestFunction(P.polymulx(self.coeffs))

    def derivative(self):
        d = P.polyder(self.coeffs) if self.coeffs.size > 1 else np.zeros(1)
        return ArchTestFunction(P.polysub(d, 2 * np.pi * P.polymulx(self.coeffs)))

    def reflect(self):
        signs = (-1.0) ** np.arange(self.coeffs.size)
        return ArchTestFunction(self.coeffs * signs)

    def parity_part(self, eps):
        c = self.coeffs.copy()
        c[(np.arange(c.size) % 2) != eps % 2] = 0
        return ArchTestFunction(c)

    def equals(self, other, atol=1e-13):
        a, b = self.coeffs, other.coeffs
        n = max(a.size, b.size)
        return bool(np.all(np.abs(np.pad(a, (0, n - a.size)) - np.pad(b, (0, n - b.size))) <= atol))

    def __eq__(self, other):
        return isinstance(other, ArchTestFunction) and self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"ArchTestFunction({np.round(self.coeffs, 14).tolist()})"

    def to_json(self):
        return {"coeffs": [[float(z.real), float(z.imag)] for z in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls([complex(*z) for z in data["coeffs"]])


def arch_fourier(phi):
    """Fourier transform with kernel exp(-2 pi i x y), exact in the monomial-Gaussian basis."""
    out = np.zeros(phi.coeffs.size, dtype=complex)
    for m, c in enumerate(phi.coeffs):
        if c != 0:
            pm = np.array(_fourier_poly(m))
            out[: pm.size] += c * pm
    return ArchTestFunction(out)


def arch_zeta(phi, eps, s):
    """Integral over R^x of Phi(x) sgn(x)^eps |x|^s dx/|x|, in closed form."""
    s = complex(s)
    total = 0j
    for m, c in enumerate(phi.coeffs):
        if c == 0 or (m + eps) % 2:
            continue
        z = (s + m) / 2
        if z.imag == 0 and z.real <= 0 and z.real == round(z.real):
            raise PoleError(f"arch_zeta has a pole at s={s} (monomial degree {m})", location=s)
        total += c * np.pi ** (-z) * gamma_fn(z)
    return complex(total)


def gamma_duplication_check(s):
    """Relative residual of Gamma_R(s) Gamma_R(s+1) = Gamma_C(s)."""
    lhs = gamma_real(s) * gamma_real(np.asarray(s) + 1)
    rhs = gamma_complex(s)
    return np.abs(lhs - rhs) / np.abs(rhs)


@dataclass
class StirlingProfile:
    sigma: float
    t: np.ndarray
    log_abs: np.ndarray
    model: np.ndarray
    constant: float
    decay_slope: float

    @property
    def deviation(self):
        return self.log_abs - self.model

    @property
    def max_deviation(self):
        return float(np.max(np.abs(self.deviation)))

    def rows(self):
        return list(zip(self.t.tolist(), self.log_abs.tolist(), self.model.tolist(), self.deviation.tolist()))

    def to_csv(self, fh):
        fh.write(f"# sigma={self.sigma!r} constant={self.constant!r} decay_slope={self.decay_slope!r}"
                 f" max_deviation={self.max_deviation!r} err_bound=1e-12 (log_abs, per sample)\n")
        fh.write("t,log_abs,model,deviation\n")
        for row in self.rows():
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def stirling_profile(sigma, t_max, step=0.25, t_min=10.0):
    """Compare log|Gamma_R(sigma + i t)| with ((sigma - 1)/2) log t - (pi/4) t + C."""
    if t_max < 10:
        raise ValueError("t_max must be at least 10")
    if step <= 0:
        raise ValueError("step must be positive")
    t = np.arange(t_min, t_max + step / 2, step)
    data = -sigma / 2 * math.log(math.pi) + log_abs_gamma((sigma + 1j * t) / 2)
    shape = (sigma - 1) / 2 * np.log(t) - np.pi / 4 * t
    constant = float(np.mean(data - shape))
    slope = float(np.polyfit(t, data - (sigma - 1) / 2 * np.log(t), 1)[0])
    return StirlingProfile(float(sigma), t, data, shape + constant, constant, slope)


def mellin_multiplier(h, s=None):
    """Multiply a Mellin-side function by Gamma_R.

    ``h`` is either an array of samples (then ``s`` gives the sample points) or
    a callable of s.  Gamma_R decays like exp(-pi |t| / 4) on vertical lines, so
    this map does not preserve classes of functions with prescribed vertical
    growth; it is the standard factor, not a growth-corrected generator.
    """
    if callable(h):
        return lambda z: h(z) * gamma_real(z)
    if s is None:
        raise ValueError("sample points s are required for sampled input")
    return np.asarray(h, dtype=complex) * gamma_real(s)
