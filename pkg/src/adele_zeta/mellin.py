"""Numerical Mellin transforms and growth diagnostics on vertical lines."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad_vec

from .archimedean import GammaFactor

#: Decay classes accepted by mellin_numeric.
DECAY_CLASSES = ("compact", "rapid", "rapid_both")


def mellin_numeric(f, s, decay="rapid", support=None, symmetric=False, tol=1e-10):
    """int_0^oo f(x) x^s dx/x, integrated in u = log x.

    decay
        'compact'    f vanishes outside ``support = (a, b)``, 0 < a < b;
        'rapid'      f is bounded near 0 and rapidly decreasing at infinity
                     (converges for Re s > 0);
        'rapid_both' f is rapidly decreasing at both ends.
    symmetric
        Double the result, i.e. integrate an even function over R^x.
    """
    s = complex(s)
    if decay not in DECAY_CLASSES:
        raise ValueError(f"unknown decay class {decay!r}; expected one of {DECAY_CLASSES}")
    if decay == "compact":
        if support is None or not 0 < support[0] < support[1]:
            raise ValueError("compact decay class needs support=(a, b) with 0 < a < b")
        lo, hi = math.log(support[0]), math.log(support[1])
    elif decay == "rapid":
        if s.real <= 0:
            raise ValueError(f"Mellin integral of a function nonzero at 0 diverges for Re s={s.real} <= 0")
        lo = math.log(1e-18) / s.real
        hi = _rapid_upper(f)
    else:
        lo = -_rapid_upper(lambda x: f(1.0 / x))
        hi = _rapid_upper(f)

    def integrand(u):
        v = f(math.exp(u)) * np.exp(s * u)
        return np.array([v.real, v.imag])

    val, _ = quad_vec(integrand, lo, hi, epsabs=tol * 1e-3, epsrel=tol, norm="max", limit=2000)
    out = complex(val[0], val[1])
    return 2 * out if symmetric else out


def _rapid_upper(f):
    # first log-point past which |f| stays negligible
    u = 0.0
    while u < 700:
        if all(abs(f(math.exp(u + d))) < 1e-300 for d in (0.0, 0.5, 1.0)):
            return u
        u += 0.25
    raise ValueError("function does not decay fast enough for the 'rapid' class")


def multiplicative_convolution(f, h, x, support_h):
    """(f * h)(x) = int f(x / y) h(y) dy/y for h supported in ``support_h``."""
    a, b = support_h

    def integrand(u):
        y = math.exp(u)
        return np.array([f(x / y) * h(y)])

    return float(quad_vec(integrand, math.log(a), math.log(b), epsabs=1e-15, epsrel=1e-13)[0][0])


def smooth_bump(a=1.0, b=2.0):
    """exp(-1/((x-a)(b-x))) on (a, b), zero elsewhere."""
    def bump(x):
        if x <= a or x >= b:
            return 0.0
        return math.exp(-1.0 / ((x - a) * (b - x)))
    return bump


@dataclass
class VerticalStripProfile:
    """Samples of a function on the line Re s = sigma, with grid semi-norm estimates.

    The estimates are maxima over the sampled grid, hence lower bounds for the
    true suprema.
    """

    sigma: float
    t: np.ndarray
    values: np.ndarray
    orders: tuple = (0, 1, 3, 5)
    seminorms: dict = field(default_factory=dict)

    def __post_init__(self):
        order = np.argsort(self.t)
        self.t = np.asarray(self.t, dtype=float)[order]
        self.values = np.asarray(self.values, dtype=complex)[order]
        self.seminorms = {n: self.seminorm(n) for n in self.orders}

    def seminorm(self, n):
        return float(np.max((1 + np.abs(self.t) ** n) * np.abs(self.values)))

    @property
    def log_abs(self):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.values))

    def to_csv(self, fh, model=None, header=None):
        if header:
            for line in header:
                fh.write(f"# {line}\n")
        fh.write("t,re,im,log_abs,model\n")
        model = np.full(self.t.size, np.nan) if model is None else model
        for t, v, la, m in zip(self.t, self.values, self.log_abs, model):
            fh.write(f"{float(t)!r},{float(v.real)!r},{float(v.imag)!r},{float(la)!r},{float(m)!r}\n")


def seminorm_profile(fhat, sigma, n, t_max, step=0.25):
    """max over t in [-t_max, t_max] of (1 + |t|^n) |fhat(sigma + i t)|."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if t_max <= 0 or step <= 0:
        raise ValueError("t_max and step must be positive")
    t = np.arange(-t_max, t_max + step / 2, step)
    vals = np.array([fhat(sigma + 1j * x) for x in t], dtype=complex)
    return VerticalStripProfile(float(sigma), t, vals, orders=(n,)).seminorms[n]


@dataclass
class GrowthReport:
    sigma: float
    profile: VerticalStripProfile
    decay_rate: float
    power: float
    intercept: float
    gamma_log_abs: np.ndarray
    ratio_log_abs: np.ndarray

    @property
    def model(self):
        t = self.profile.t
        return self.intercept + self.power * np.log(t) + self.decay_rate * t

    def ratio_band(self):
        """Largest |log(|Lambda|/|Gamma_R|)| / log t over the grid (the polynomial exponent)."""
        return float(np.max(np.abs(self.ratio_log_abs) / np.log(self.profile.t)))

    def summary(self):
        return {"sigma": self.sigma, "decay_rate": self.decay_rate, "power": self.power,
                "intercept": self.intercept, "ratio_poly_exponent": self.ratio_band(),
                "seminorms": {str(k): v for k, v in self.profile.seminorms.items()}}


def growth_report(L, sigma=2.0, t_max=60.0, t_min=10.0, step=0.25):
    """Sample log|Lambda(sigma + i t)| and fit a + b log t + rate * t by least squares."""
    if t_max <= t_min or step <= 0:
        raise ValueError("empty t grid")
    t = np.arange(t_min, t_max + step / 2, step)
    vals = np.array([L(sigma + 1j * x) for x in t])
    profile = VerticalStripProfile(float(sigma), t, vals)
    la = profile.log_abs
    design = np.column_stack([np.ones_like(t), np.log(t), t])
    (a, b, rate), *_ = np.linalg.lstsq(design, la, rcond=None)
    gamma = GammaFactor.for_parity(L.epsilon)
    glog = np.array([gamma.log_abs(sigma + 1j * x) for x in t])
    cond_log = (sigma + L.epsilon) / 2 * math.log(L.conductor)
    return GrowthReport(float(sigma), profile, float(rate), float(b), float(a), glog, la - glog - cond_log)
