"""Dirichlet characters and points of the character variety of the ideles of Q.

Character values are kept as exact fractions of a full turn: the value of
``chi`` at ``n`` is ``exp(2*pi*i*chi.turn(n))``.  Complex numbers only appear
at the evaluation boundary (``chi(n)``).
"""

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import crt_lift, dlog_table, euler_phi, factorize, is_squarefree, primitive_root

#: Largest modulus accepted by :func:`enumerate_characters` and friends.
MAX_MODULUS = 10**6


@dataclass(frozen=True)
class _Generator:
    prime: int
    prime_power: int  # p**k
    local: int        # generator of (Z/p^k)^x, or -1 for the sign generator at 2
    order: int
    lifted: int       # CRT lift to (Z/q)^x, trivial on the other components


def _unit_group(q):
    gens = []
    for p, k in factorize(q) if q > 1 else []:
        pk = p**k
        if p == 2:
            if k >= 2:
                gens.append(_Generator(2, pk, -1, 2, crt_lift(pk - 1, pk, q)))
            if k >= 3:
                gens.append(_Generator(2, pk, 5, 2 ** (k - 2), crt_lift(5, pk, q)))
        else:
            g = primitive_root(p)
            gens.append(_Generator(p, pk, g, euler_phi(pk), crt_lift(g, pk, q)))
    return tuple(gens)


def _unit_logs(gens, n):
    """Discrete logarithms of a unit ``n`` with respect to ``gens``."""
    logs = []
    for gen in gens:
        r = n % gen.prime_power
        if gen.local == -1:
            logs.append(0 if r % 4 == 1 else 1)
        elif gen.prime == 2:
            m = r if r % 4 == 1 else (-r) % gen.prime_power
            logs.append(int(dlog_table(5, gen.prime_power, gen.order)[m]))
        else:
            logs.append(int(dlog_table(gen.local, gen.prime_power, gen.order)[r]))
    return logs


def _root_of_unity(turn):
    turn = turn % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if turn in exact:
        return exact[turn]
    return cmath.exp(2j * cmath.pi * float(turn))


class DirichletCharacter:
    """A character of (Z/qZ)^x, extended by zero to all integers.

    Parameters
    ----------
    modulus : int
    exponents : sequence of int
        One exponent per generator of the unit group (see ``generators``); the
        character sends generator ``g_i`` of order ``o_i`` to
        ``exp(2*pi*i*e_i/o_i)``.
    """

    __slots__ = ("modulus", "generators", "exponents", "conductor", "parity", "__weakref__")

    def __init__(self, modulus, exponents=None):
        modulus = int(modulus)
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        if modulus > MAX_MODULUS:
            raise OverflowError(f"modulus {modulus} exceeds MAX_MODULUS={MAX_MODULUS}")
        gens = _unit_group(modulus)
        if exponents is None:
            exponents = [0] * len(gens)
        if len(exponents) != len(gens):
            raise ValueError(f"expected {len(gens)} exponents for modulus {modulus}, got {len(exponents)}")
        exps = tuple(int(e) % g.order for e, g in zip(exponents, gens))
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "conductor", self._compute_conductor())
        minus_one = self.turn(-1)
        object.__setattr__(self, "parity", 0 if minus_one == 0 else 1)

    def __setattr__(self, name, value):
        raise AttributeError("DirichletCharacter is immutable")

    # -- values ---------------------------------------------------------------

    def turn(self, n):
        """Exact value as a fraction of a turn, or ``None`` when gcd(n, q) > 1."""
        n = int(n)
        if gcd(n, self.modulus) != 1:
            return None
        t = Fraction(0)
        for log, e, gen in zip(_unit_logs(self.generators, n), self.exponents, self.generators):
            t += Fraction(log * e, gen.order)
        return t % 1

    def __call__(self, n):
        t = self.turn(n)
        return 0j if t is None else _root_of_unity(t)

    def order(self):
        """Order of the character in the dual group."""
        out = 1
        for e, gen in zip(self.exponents, self.generators):
            o = gen.order // gcd(e, gen.order)
            out = out * o // gcd(out, o)
        return out

    # -- structure --------------------------------------------------------------

    def _compute_conductor(self):
        cond = 1
        by_prime = {}
        for e, gen in zip(self.exponents, self.generators):
            by_prime.setdefault(gen.prime, []).append((e, gen))
        for p, items in by_prime.items():
            if p == 2:
                sign = next((e for e, g in items if g.local == -1), 0)
                five = next(((e, g) for e, g in items if g.local == 5), None)
                m = 0
                if five is not None and five[0]:
                    o = five[1].order // gcd(five[0], five[1].order)
                    m = o.bit_length() - 1
                if m >= 1:
                    cond *= 2 ** (m + 2)
                elif sign:
                    cond *= 4
            else:
                (e, gen), = items
                o = gen.order // gcd(e, gen.order)
                if o > 1:
                    v = 0
                    while o % p == 0:
                        o //= p
                        v += 1
                    cond *= p ** (1 + v)
        return cond

    def is_primitive(self):
        return self.conductor == self.modulus

    def is_trivial(self):
        return not any(self.exponents)

    def primitive(self):
        """The primitive character inducing this one (modulus = conductor)."""
        if self.is_primitive():
            return self
        c = self.conductor
        return DirichletCharacter.from_turns(c, lambda h: self.turn(_lift_coprime(h, c, self.modulus)))

    def component(self, p):
        """The p-primary part, a character modulo the exact power of p dividing q."""
        pk = 1
        while self.modulus % (pk * p) == 0:
            pk *= p
        if pk == 1:
            return DirichletCharacter(1)
        exps = [e for e, g in zip(self.exponents, self.generators) if g.prime == p]
        return DirichletCharacter(pk, exps)

    def conj(self):
        return DirichletCharacter(self.modulus, [-e for e in self.exponents])

    def __mul__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        if other.modulus != self.modulus:
            q = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
            return self.extend(q) * other.extend(q)
        return DirichletCharacter(self.modulus, [a + b for a, b in zip(self.exponents, other.exponents)])

    def __pow__(self, k):
        return DirichletCharacter(self.modulus, [k * e for e in self.exponents])

    def extend(self, modulus):
        """The character induced to a multiple of the current modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        if modulus == self.modulus:
            return self
        return DirichletCharacter.from_turns(modulus, lambda h: self.turn(h))

    @classmethod
    def from_turns(cls, modulus, turn_of):
        """Build a character from a callable giving the exact turn at each generator."""
        gens = _unit_group(modulus)
        exps = []
        for gen in gens:
            t = Fraction(turn_of(gen.lifted))
            e = t * gen.order
            if e.denominator != 1:
                raise ValueError(f"value at generator {gen.lifted} is not an {gen.order}-th root of unity")
            exps.append(int(e))
        return cls(modulus, exps)

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter) and self.modulus == other.modulus
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter(modulus={self.modulus}, exponents={list(self.exponents)})"

    def to_json(self):
        return {"modulus": self.modulus, "exponents": list(self.exponents),
                "conductor": self.conductor, "parity": self.parity}

    @classmethod
    def from_json(cls, data):
        chi = cls(data["modulus"], data["exponents"])
        if "conductor" in data and data["conductor"] != chi.conductor:
            raise ValueError("conductor field inconsistent with exponents")
        if "parity" in data and data["parity"] != chi.parity:
            raise ValueError("parity field inconsistent with exponents")
        return chi


def _lift_coprime(h, c, q):
    n = h % c or c
    while gcd(n, q) != 1:
        n += c
    return n


def trivial_character(q=1):
    return DirichletCharacter(q)


def enumerate_characters(q):
    """All phi(q) characters modulo ``q``, trivial character first."""
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if q > MAX_MODULUS:
        raise OverflowError(f"modulus {q} exceeds MAX_MODULUS={MAX_MODULUS}")
    gens = _unit_group(q)
    return [DirichletCharacter(q, exps)
            for exps in itertools.product(*(range(g.order) for g in gens))]


def evaluate(chi, n):
    return chi(n)


def kronecker_symbol(d, n):
    """Kronecker symbol (d/n) for integers d and n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    out = 1
    for p, k in factorize(n) if n > 1 else []:
        if p == 2:
            if d % 2 == 0:
                return 0
            v = 1 if d % 8 in (1, 7) else -1
        else:
            r = d % p
            if r == 0:
                return 0
            v = 1 if pow(r, (p - 1) // 2, p) == 1 else -1
        out *= v**k
    return out


def is_fundamental_discriminant(d):
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def kronecker_character(d):
    """The quadratic character n -> (d/n) attached to Q(sqrt d)."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    q = abs(d)
    return DirichletCharacter.from_turns(
        q, lambda g: Fraction(0) if kronecker_symbol(d, g) == 1 else Fraction(1, 2))


def gauss_sum(chi):
    """sum_{a mod q} chi(a) exp(2 pi i a / q) for a primitive character."""
    if not chi.is_primitive():
        raise ValueError("gauss_sum requires a primitive character")
    q = chi.modulus
    return sum(chi(a) * cmath.exp(2j * cmath.pi * a / q) for a in range(q))


def root_number(chi):
    """W(chi) = g(chi) / (i^eps sqrt(q)), the sign in the classical functional equation."""
    q = chi.modulus
    return gauss_sum(chi) / ((1j) ** chi.parity * q**0.5)


@dataclass(frozen=True)
class HeckeCharacterPoint:
    """The Hecke character chi * |.|^s on the ideles of Q.

    ``finite`` must be primitive; it labels the connected component and ``s``
    is the coordinate on it.
    """

    finite: DirichletCharacter
    s: complex = 0j

    def __post_init__(self):
        if not self.finite.is_primitive():
            raise ValueError("finite part of a Hecke character point must be primitive")
        object.__setattr__(self, "s", complex(self.s))

    @property
    def epsilon(self):
        return self.finite.parity

    def same_component(self, other):
        return self.finite == other.finite

    def with_s(self, s):
        return HeckeCharacterPoint(self.finite, s)

    def dual(self):
        """chi^{-1} |.|^{1-s}, the character appearing in the functional equation."""
        return HeckeCharacterPoint(self.finite.conj(), 1 - self.s)

    def to_json(self):
        out = self.finite.to_json()
        out["s"] = [self.s.real, self.s.imag]
        return out

    @classmethod
    def from_json(cls, data):
        return cls(DirichletCharacter.from_json(data), complex(*data.get("s", (0.0, 0.0))))
