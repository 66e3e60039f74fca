"""Bruhat-Schwartz functions on Q_p, their local zeta integrals and Fourier transforms.

A test function with support in ``p^-M Z_p`` that is invariant under
translation by ``p^N Z_p`` is stored as the dense array of its values on
``p^-M Z_p / p^N Z_p``; entry ``r`` is the value at any ``x`` with
``p^M x = r mod p^(M+N)``.

Measures: additive Haar measure with vol(Z_p) = 1, multiplicative Haar measure
with vol(Z_p^x) = 1.  The two differ on Q_p^x by the constant (1 - 1/p)^-1.
"""

from fractions import Fraction
from functools import lru_cache
from numbers import Number

import numpy as np
from numpy.polynomial import polynomial as P

from .arith import is_prime
from .characters import DirichletCharacter, HeckeCharacterPoint, _root_of_unity
from .errors import DomainError

#: Absolute tolerance used when deciding whether two stored values agree.
ATOL = 1e-13

#: Snap DFT output back onto p-power rationals when the input was p-power rational.
SNAP_DFT = True


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    raise TypeError(f"p-adic points must be int or Fraction, got {type(x).__name__}")


def _p_val(x, p):
    """p-adic valuation of a nonzero Fraction."""
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _residue(x, modulus):
    """Image of a p-integral Fraction in Z/modulus."""
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


@lru_cache(maxsize=256)
def _char_table(chi):
    table = np.array([chi(a) for a in range(chi.modulus)], dtype=complex)
    table.flags.writeable = False
    return table


def _snap(values, denom_exp, p):
    scale = float(p) ** denom_exp
    scaled = values * scale
    rounded = np.round(scaled.real) + 1j * np.round(scaled.imag)
    if np.all(np.abs(scaled - rounded) <= 1e-9 * max(1.0, np.max(np.abs(scaled), initial=0.0))):
        return rounded / scale, True
    return values, False


class PAdicTestFunction:
    """Locally constant, compactly supported function on Q_p.

    Parameters
    ----------
    p : int
        The prime.
    M, N : int
        Support in ``p^-M Z_p``; invariance under ``p^N Z_p``.
    values : array_like, length ``p**(M+N)``
    canonical : bool
        Reduce (M, N) to their minimal values (the default).
    """

    __slots__ = ("p", "M", "N", "values")

    def __init__(self, p, M, N, values, canonical=True):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if M < 0 or N < 0:
            raise ValueError("M and N must be non-negative")
        values = np.array(values, dtype=complex).ravel()
        if values.size != p ** (M + N):
            raise ValueError(f"expected {p ** (M + N)} values, got {values.size}")
        if canonical:
            M, N, values = _canonicalize(p, M, N, values)
        values.flags.writeable = False
        self.p, self.M, self.N, self.values = int(p), int(M), int(N), values

    # -- constructors -------------------------------------------------------------

    @classmethod
    def ball(cls, p, k=0):
        """Indicator of p^k Z_p."""
        if k >= 0:
            vals = np.zeros(p**k, dtype=complex)
            vals[0] = 1
            return cls(p, 0, k, vals)
        return cls(p, -k, 0, np.ones(p ** (-k), dtype=complex))

    @classmethod
    def shell(cls, p, k=0):
        """Indicator of p^k Z_p^x."""
        return cls.ball(p, k) - cls.ball(p, k + 1)

    @classmethod
    def coset(cls, p, a, k):
        """Indicator of a + p^k Z_p."""
        a = _as_fraction(a)
        m = max(0, -_p_val(a, p)) if a else 0
        m = max(m, -k)
        n = max(k, 0)
        r = np.arange(p ** (m + n))
        r0 = _residue(a * p**m, p ** (m + k)) if a else 0
        vals = (r % p ** (m + k) == r0).astype(complex)
        return cls(p, m, n, vals)

    @classmethod
    def zero(cls, p):
        return cls(p, 0, 0, [0])

    @classmethod
    def from_unit_character(cls, chi):
        """The function chi(x) on Z_p^x, zero elsewhere, for chi modulo a power of p."""
        q = chi.modulus
        if q == 1:
            raise ValueError("use shell() for the trivial character")
        p = _prime_of_power(q)
        k = 0
        while p**k < q:
            k += 1
        return cls(p, 0, k, _char_table(chi))

    @classmethod
    def from_residues(cls, p, M, N, func):
        """Tabulate ``func(r)`` for residues r of p^M x modulo p^(M+N)."""
        return cls(p, M, N, [func(r) for r in range(p ** (M + N))])

    # -- evaluation ---------------------------------------------------------------

    def __call__(self, x):
        x = _as_fraction(x)
        if x == 0:
            return self.values[0]
        if _p_val(x, self.p) < -self.M:
            return 0j
        return self.values[_residue(x * self.p**self.M, self.p ** (self.M + self.N))]

    def at_zero(self):
        return complex(self.values[0])

    def refine(self, M, N):
        """Value array with respect to a coarser support bound and finer invariance."""
        if M < self.M or N < self.N:
            raise ValueError("refine can only increase M and N")
        p = self.p
        r = np.arange(p ** (M + N))
        step = p ** (M - self.M)
        out = np.zeros(r.size, dtype=complex)
        mask = r % step == 0
        out[mask] = self.values[(r[mask] // step) % p ** (self.M + self.N)]
        return out

    # -- algebra ------------------------------------------------------------------

    def _aligned(self, other):
        if other.p != self.p:
            raise ValueError("test functions live on different primes")
        M, N = max(self.M, other.M), max(self.N, other.N)
        return M, N, self.refine(M, N), other.refine(M, N)

    def __add__(self, other):
        if not isinstance(other, PAdicTestFunction):
            return NotImplemented
        M, N, a, b = self._aligned(other)
        return PAdicTestFunction(self.p, M, N, a + b)

    def __sub__(self, other):
        if not isinstance(other, PAdicTestFunction):
            return NotImplemented
        M, N, a, b = self._aligned(other)
        return PAdicTestFunction(self.p, M, N, a - b)

    def __neg__(self):
        return PAdicTestFunction(self.p, self.M, self.N, -self.values)

    def __mul__(self, other):
        if isinstance(other, PAdicTestFunction):
            M, N, a, b = self._aligned(other)
            return PAdicTestFunction(self.p, M, N, a * b)
        if isinstance(other, Number):
            return PAdicTestFunction(self.p, self.M, self.N, self.values * other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, u):
        """x -> Phi(u x) for a p-adic unit u (int or Fraction)."""
        u = _as_fraction(u)
        if u == 0 or _p_val(u, self.p) != 0:
            raise ValueError("scale() takes a p-adic unit; use dilate() for powers of p")
        mod = self.p ** (self.M + self.N)
        idx = (np.arange(mod) * _residue(u, mod)) % mod
        return PAdicTestFunction(self.p, self.M, self.N, self.values[idx])

    def dilate(self, k):
        """x -> Phi(p^k x)."""
        M, N = max(self.M, -k), max(self.N, k)
        return PAdicTestFunction(self.p, M + k, N - k, self.refine(M, N))

    def reflect(self):
        """x -> Phi(-x)."""
        mod = self.p ** (self.M + self.N)
        return PAdicTestFunction(self.p, self.M, self.N, self.values[(-np.arange(mod)) % mod])

    def vanishes_at_zero(self):
        return abs(self.values[0]) <= ATOL

    def is_standard(self):
        return self.M == 0 and self.N == 0 and abs(self.values[0] - 1) <= ATOL

    def l2_norm_sq(self):
        """Integral of |Phi|^2 against additive Haar measure."""
        return float(np.sum(np.abs(self.values) ** 2)) * float(self.p) ** (-self.N)

    def shell_average(self, j, unit_char=None):
        """Integral over u in Z_p^x of Phi(p^j u) * unit_char(u) (vol Z_p^x = 1)."""
        p = self.p
        k = _exponent_of(unit_char, p)
        if j < -self.M:
            return 0j
        if j >= self.N and k == 0:
            return complex(self.values[0])
        L = max(self.N - j, k, 1)
        u = np.arange(p**L)
        u = u[u % p != 0]
        mod = p ** (self.M + self.N)
        if j >= self.N:
            vals = np.full(u.size, self.values[0])
        else:
            vals = self.values[(u * p ** (self.M + j)) % mod]
        if k:
            vals = vals * _char_table(unit_char)[u % p**k]
        return complex(vals.mean())

    # -- comparison / serialisation ---------------------------------------------------

    def equals(self, other, atol=ATOL):
        if not isinstance(other, PAdicTestFunction) or other.p != self.p:
            return False
        _, _, a, b = self._aligned(other)
        return bool(np.all(np.abs(a - b) <= atol))

    def __eq__(self, other):
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"PAdicTestFunction(p={self.p}, M={self.M}, N={self.N}, values={np.round(self.values, 12).tolist()})"

    def to_json(self):
        return {"p": self.p, "M": self.M, "N": self.N,
                "values": [[float(v.real), float(v.imag)] for v in self.values]}

    @classmethod
    def from_json(cls, data):
        vals = [complex(re, im) for re, im in data["values"]]
        return cls(data["p"], data["M"], data["N"], vals)


def _prime_of_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            r = q
            while r % p == 0:
                r //= p
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p
    raise ValueError("modulus 1 has no prime")


def _exponent_of(unit_char, p):
    if unit_char is None or unit_char.modulus == 1:
        return 0
    q, k = unit_char.modulus, 0
    while q % p == 0:
        q //= p
        k += 1
    if q != 1:
        raise ValueError(f"unit character modulus {unit_char.modulus} is not a power of {p}")
    return k


def _canonicalize(p, M, N, values):
    if np.all(np.abs(values) <= ATOL):
        return 0, 0, np.zeros(1, dtype=complex)
    while True:
        size = values.size
        if N > 0:
            rows = values.reshape(p, size // p)
            if np.all(np.abs(rows - rows[0]) <= ATOL):
                values, N = rows[0].copy(), N - 1
                continue
        if M > 0:
            idx = np.arange(size)
            if np.all(np.abs(values[idx % p != 0]) <= ATOL):
                values, M = values[::p].copy(), M - 1
                continue
        return M, N, values


# -- local characters ------------------------------------------------------------------


class LocalCharacter:
    """A character of Q_p^x of finite order on units: p^j u -> frob^j * unit(u).

    ``unit`` is a Dirichlet character modulo a power of p (the conductor
    exponent is the exponent of that power) or ``None`` for unramified.
    """

    __slots__ = ("p", "frob", "unit")

    def __init__(self, p, frob=1.0, unit=None):
        if unit is not None and unit.modulus == 1:
            unit = None
        if unit is not None:
            _exponent_of(unit, p)
        self.p, self.frob, self.unit = p, complex(frob), unit

    @classmethod
    def unramified(cls, p, c=1.0):
        return cls(p, c, None)

    @property
    def conductor_exponent(self):
        return _exponent_of(self.unit, self.p)

    def is_unramified(self):
        return self.unit is None

    def on_unit(self, u):
        return 1 + 0j if self.unit is None else self.unit(u)

    def __call__(self, x):
        x = _as_fraction(x)
        j = _p_val(x, self.p)
        unit_part = x / Fraction(self.p) ** j
        return self.frob**j * self.on_unit(_residue(unit_part, self.unit.modulus) if self.unit else 1)

    def inverse(self):
        return LocalCharacter(self.p, 1 / self.frob, self.unit.conj() if self.unit else None)

    def __mul__(self, other):
        if not isinstance(other, LocalCharacter) or other.p != self.p:
            return NotImplemented
        if self.unit is None:
            unit = other.unit
        elif other.unit is None:
            unit = self.unit
        else:
            unit = self.unit * other.unit
        return LocalCharacter(self.p, self.frob * other.frob, unit)

    def __repr__(self):
        return f"LocalCharacter(p={self.p}, frob={self.frob}, unit={self.unit!r})"


def local_component(chi, p):
    """The p-component of the Hecke character attached to a primitive Dirichlet character.

    For p not dividing the conductor this is unramified with Frobenius value
    chi(p); at p dividing it, the unit part is the inverse of the p-primary
    part of chi and the value at p is the prime-to-p part of chi evaluated at p.
    """
    if isinstance(chi, HeckeCharacterPoint):
        chi = chi.finite
    q = chi.modulus
    if q % p:
        return LocalCharacter(p, chi(p), None)
    comp = chi.component(p)
    turn = Fraction(0)
    for r, _ in _prime_powers(q):
        if r != p:
            turn += chi.component(r).turn(p)
    return LocalCharacter(p, _root_of_unity(turn), comp.conj())


def _prime_powers(q):
    from .arith import factorize
    return factorize(q) if q > 1 else []


def as_local(chi, p):
    """Coerce None / DirichletCharacter / HeckeCharacterPoint / LocalCharacter / complex."""
    if chi is None:
        return LocalCharacter(p)
    if isinstance(chi, LocalCharacter):
        if chi.p != p:
            raise ValueError(f"local character at {chi.p} used at {p}")
        return chi
    if isinstance(chi, (DirichletCharacter, HeckeCharacterPoint)):
        return local_component(chi, p)
    if isinstance(chi, Number):
        return LocalCharacter(p, chi)
    raise TypeError(f"cannot interpret {chi!r} as a character at {p}")


# -- Euler factors ---------------------------------------------------------------------


def _trim(c):
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    nz = np.flatnonzero(np.abs(c) > 0)
    return c[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)


class EulerFactor:
    """X^shift * num(X) / den(X) with X = p^-s; coefficient arrays in ascending powers."""

    __slots__ = ("p", "num", "den", "shift")

    def __init__(self, p, num, den=(1,), shift=0):
        num, den = _trim(num), _trim(den)
        if abs(den[0]) == 0:
            raise ValueError("denominator must have nonzero constant term")
        num, den = num / den[0], den / den[0]
        if np.all(num == 0):
            shift = 0
        else:
            lead = int(np.flatnonzero(np.abs(num) > 0)[0])
            num, shift = num[lead:], shift + lead
        num.flags.writeable = False
        den.flags.writeable = False
        self.p, self.num, self.den, self.shift = p, num, den, int(shift)

    @classmethod
    def one(cls, p):
        return cls(p, [1])

    @classmethod
    def standard(cls, p, c=1.0):
        """1 / (1 - c X)."""
        return cls(p, [1], [1, -c])

    def at_x(self, X):
        return X**self.shift * P.polyval(X, self.num) / P.polyval(X, self.den)

    def __call__(self, s):
        return self.at_x(np.exp(-np.asarray(s, dtype=complex) * np.log(self.p)))

    def __mul__(self, other):
        if isinstance(other, EulerFactor):
            if other.p != self.p:
                raise ValueError("Euler factors at different primes")
            return EulerFactor(self.p, P.polymul(self.num, other.num), P.polymul(self.den, other.den),
                               self.shift + other.shift).reduce()
        if isinstance(other, Number):
            return EulerFactor(self.p, self.num * other, self.den, self.shift)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, EulerFactor) or other.p != self.p:
            return NotImplemented
        lo = min(self.shift, other.shift)
        a = P.polymul(np.concatenate([np.zeros(self.shift - lo), self.num]), other.den)
        b = P.polymul(np.concatenate([np.zeros(other.shift - lo), other.num]), self.den)
        return EulerFactor(self.p, P.polyadd(a, b), P.polymul(self.den, other.den), lo).reduce()

    def inverse(self):
        if np.all(self.num == 0):
            raise ZeroDivisionError("inverse of the zero factor")
        if abs(self.num[0]) == 0:
            raise ValueError("numerator has no constant term after shift normalisation")
        return EulerFactor(self.p, self.den, self.num, -self.shift)

    def reduce(self, tol=1e-12):
        """Cancel the denominator when it divides the numerator."""
        if self.den.size == 1 or np.all(self.num == 0):
            return self
        q, r = P.polydiv(self.num, self.den)
        scale = max(1.0, float(np.max(np.abs(self.num))))
        if np.all(np.abs(r) <= tol * scale):
            q = np.where(np.abs(q) <= tol * scale, 0, q)
            return EulerFactor(self.p, q, [1], self.shift)
        return self

    def equals(self, other, atol=0.0):
        """Cross-multiplied coefficient comparison; ``atol=0`` demands exact equality."""
        if not isinstance(other, EulerFactor) or other.p != self.p:
            return False
        return self.residual(other) <= atol

    def residual(self, other):
        lo = min(self.shift, other.shift)
        a = P.polymul(np.concatenate([np.zeros(self.shift - lo), self.num]), other.den)
        b = P.polymul(np.concatenate([np.zeros(other.shift - lo), other.num]), self.den)
        n = max(a.size, b.size)
        a = np.pad(a, (0, n - a.size))
        b = np.pad(b, (0, n - b.size))
        return float(np.max(np.abs(a - b)))

    def is_one(self, atol=0.0):
        return self.equals(EulerFactor.one(self.p), atol)

    def __repr__(self):
        return f"EulerFactor(p={self.p}, num={self.num.tolist()}, den={self.den.tolist()}, shift={self.shift})"

    def to_json(self):
        enc = lambda c: [[float(z.real), float(z.imag)] for z in c]  # noqa: E731
        return {"p": self.p, "num": enc(self.num), "den": enc(self.den), "shift": self.shift}

    @classmethod
    def from_json(cls, data):
        dec = lambda c: [complex(*z) if isinstance(z, (list, tuple)) else complex(z) for z in c]  # noqa: E731
        return cls(data["p"], dec(data["num"]), dec(data["den"]), data.get("shift", 0))


# -- local operations --------------------------------------------------------------------


def _shell_data(phi, omega):
    """Shell averages a_j (j = -M..N-1) and the constant tail coefficient."""
    unit = omega.unit
    avgs = [phi.shell_average(j, unit) for j in range(-phi.M, phi.N)]
    tail = phi.at_zero() if omega.is_unramified() else 0j
    return avgs, tail


def local_zeta(phi, chi, s):
    """Integral of Phi(x) chi_p(x) |x|_p^s d^x x over Q_p^x (vol Z_p^x = 1).

    The shells p^j Z_p^x below the invariance level are summed exactly; the
    remaining shells, on which Phi is constant, form a geometric series.
    """
    p = phi.p
    omega = as_local(chi, p)
    s = s.s if isinstance(s, HeckeCharacterPoint) else complex(s)
    ratio = omega.frob * p ** (-s)
    avgs, tail = _shell_data(phi, omega)
    total = sum(a * ratio**j for j, a in zip(range(-phi.M, phi.N), avgs))
    if abs(tail) > ATOL:
        if abs(ratio) >= 1:
            raise DomainError(f"local zeta integral at p={p} diverges for Re s={s.real} <= 0", abscissa=0.0)
        total += tail * ratio**phi.N / (1 - ratio)
    return complex(total)


def local_zeta_symbolic(phi, chi=None):
    """Local zeta integral as a rational function of X = p^-s."""
    p = phi.p
    omega = as_local(chi, p)
    if omega.conductor_exponent > phi.N:
        raise ValueError(
            f"character conductor p^{omega.conductor_exponent} deeper than smoothness p^{phi.N}")
    c = omega.frob
    avgs, tail = _shell_data(phi, omega)
    poly = np.array([a * c**j for j, a in zip(range(-phi.M, phi.N), avgs)], dtype=complex)
    if abs(tail) <= ATOL:
        return EulerFactor(p, poly if poly.size else [0], [1], -phi.M)
    if not poly.size:
        return EulerFactor(p, [tail], [1, -c])
    num = P.polyadd(P.polymul(poly, [1, -c]),
                    np.concatenate([np.zeros(phi.M + phi.N), [tail * c**phi.N]]))
    return EulerFactor(p, num, [1, -c], -phi.M).reduce()


def local_fourier(phi):
    """Fourier transform y -> integral Phi(x) psi(xy) dx, psi(x) = exp(2 pi i {x}_p).

    On the finite quotient this is p^-N times an unnormalised inverse DFT.
    The output has (M, N) swapped.
    """
    p, M, N = phi.p, phi.M, phi.N
    size = p ** (M + N)
    out = np.fft.ifft(phi.values) * size / float(p) ** N
    if SNAP_DFT:
        k = 2 * (M + N) + 2
        _, ok = _snap(phi.values, k, p)
        if ok:
            out, _ = _snap(out, k + N, p)
    return PAdicTestFunction(p, N, M, out)


def generator_convolve(phi):
    """Convolution on Q_p^x with the distribution (0 off Z_p; delta_1 on Z_p^x; 1 on pZ_p).

    Sends f to f(x) + sum_{j >= 1} A(p^-j x), where A(y) is the average of f
    over the unit shell of y.  Input must vanish near 0.
    """
    if not phi.vanishes_at_zero():
        raise ValueError("generator_convolve takes functions on Q_p^x (vanishing near 0)")
    p, M, N = phi.p, phi.M, phi.N
    avgs = np.array([phi.shell_average(j) for j in range(-M, N)], dtype=complex)
    partial = np.concatenate([[0], np.cumsum(avgs)])  # partial[i] = sum of a_{-M}..a_{-M+i-1}
    r = np.arange(p ** (M + N))
    out = np.empty(r.size, dtype=complex)
    out[0] = partial[-1]
    nz = r[1:]
    v = np.zeros(nz.size, dtype=np.int64)  # valuation of r, equal to shell index + M
    tmp = nz.copy()
    while True:
        m = tmp % p == 0
        if not m.any():
            break
        v[m] += 1
        tmp[m] //= p
    out[1:] = phi.values[1:] + partial[v]
    return PAdicTestFunction(p, M, N, out)


def distinguished_decomposition(p):
    """The pair (1_{Z_p^x} - 1_{p Z_p^x}, 1_{Z_p})."""
    return PAdicTestFunction.shell(p, 0) - PAdicTestFunction.shell(p, 1), PAdicTestFunction.ball(p, 0)


def distinguished_identity(p, c):
    """Product of the two local zetas of the distinguished vector at Frobenius value c."""
    first, second = distinguished_decomposition(p)
    omega = LocalCharacter.unramified(p, c)
    return local_zeta_symbolic(first, omega) * local_zeta_symbolic(second, omega)
