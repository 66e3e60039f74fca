"""Verification suites run by ``adele-zeta check``.

Each suite returns a list of :class:`CheckResult`; a suite passes when every
result does.
"""

import math
from dataclasses import dataclass

import numpy as np

from .archimedean import ArchTestFunction
from .arith import is_prime, primes_up_to
from .characters import kronecker_character
from .extensions import decomposition_identity, dedekind_euler_factor, splitting_type
from .global_zeta import (GlobalTestFunction, numerical_residues, poisson_residual, residues,
                          standard_L)
from .mellin import growth_report
from .padic import EulerFactor, PAdicTestFunction, distinguished_identity, generator_convolve

SEED = 20240617


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self):
        return bool(self.residual <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        return f"{status} {self.name} residual={self.residual:.3e} tol={self.tolerance:.1e}{extra}"

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "residual": self.residual,
                "tolerance": self.tolerance, "detail": self.detail}


def random_critical_points(count=20, seed=SEED):
    rng = np.random.default_rng(seed)
    return [complex(x, y) for x, y in zip(rng.uniform(0.1, 0.9, count), rng.uniform(-20, 20, count))]


def poisson_test_functions():
    """Five global test functions, two of them with exceptional finite places."""
    rng = np.random.default_rng(SEED)
    f2 = PAdicTestFunction(2, 1, 2, rng.normal(size=8) + 1j * rng.normal(size=8))
    f3 = PAdicTestFunction(3, 0, 1, [1.0, -0.5, 2.0])
    return [
        ("standard", GlobalTestFunction.standard()),
        ("x^2 gaussian", GlobalTestFunction(ArchTestFunction([0.5, 0, 1]), {})),
        ("odd arch", GlobalTestFunction(ArchTestFunction([0, 1, 0, -0.3]), {})),
        ("exceptional at 2", GlobalTestFunction(ArchTestFunction([1, 0.2]), {2: f2})),
        ("exceptional at 2,3", GlobalTestFunction(ArchTestFunction([1, 0, 0.7j]), {2: f2, 3: f3})),
    ]


def suite_fe(points=None):
    points = points or random_critical_points()
    out = []
    L = standard_L()
    worst = max(abs(L(s) - L(1 - s)) for s in points)
    out.append(CheckResult("fe trivial |Lambda(s)-Lambda(1-s)|", worst, 1e-9, f"points={len(points)}"))
    L4 = standard_L(kronecker_character(-4))
    worst = max(L4.functional_equation_residual(s) for s in points)
    out.append(CheckResult("fe chi_-4 |Lambda(s)-W Lambda(1-s)|", worst, 1e-9,
                           f"W={L4.root_number.real:.12f}{L4.root_number.imag:+.3e}i"))
    return out


def suite_poisson(scales=None):
    scales = scales if scales is not None else np.linspace(0.25, 4.0, 20)
    out = []
    for name, phi in poisson_test_functions():
        worst = max(poisson_residual(phi, float(g)) for g in scales)
        out.append(CheckResult(f"poisson {name}", worst, 1e-10, f"scales={len(scales)}"))
    return out


def suite_residues():
    phi = GlobalTestFunction.standard()
    r1, r0 = numerical_residues(phi)
    polar = residues(phi)
    out = [
        CheckResult("residue at 1 equals (F Psi)(0)=1", abs(r1 - 1), 1e-7, f"numeric={r1.real:.12f}"),
        CheckResult("residue at 0 equals -Psi(0)=-1", abs(r0 + 1), 1e-7, f"numeric={r0.real:.12f}"),
        CheckResult("closed-form polar data", abs(polar.residue_at_1 - 1) + abs(polar.residue_at_0 + 1), 0.0),
    ]
    chi = kronecker_character(-4)
    phi4 = GlobalTestFunction.twisted_standard(chi)
    r1, r0 = numerical_residues(phi4, chi)
    out.append(CheckResult("chi_-4 residues vanish", max(abs(r1), abs(r0)), 1e-7))
    L4 = standard_L(chi)
    grid = [c + 0.05 * w for c in (0, 1) for w in (1, -1, 1j, -1j)] + [0, 1]
    bound = max(abs(L4(s)) for s in grid)
    out.append(CheckResult("chi_-4 max|Lambda| near 0 and 1", bound, 10.0))
    return out


def decompose_table(d, pmax):
    rows = []
    for p in primes_up_to(pmax):
        p = int(p)
        check = decomposition_identity(p, d)
        rows.append({"p": p, "splitting": splitting_type(p, d),
                     "E_factor": _fmt(dedekind_euler_factor(p, d)), "F_product": _fmt(check.rhs),
                     "exact": check.ok})
    return rows


def _fmt(f):
    den = " ".join(f"{c.real:+g}" for c in f.den)
    return f"1/[{den}]"


def suite_decompose(d=-4, pmax=229):
    rows = decompose_table(d, pmax)
    bad = [r["p"] for r in rows if not r["exact"]]
    return [CheckResult(f"decompose d={d} primes<={pmax}", float(len(bad)), 0.0,
                        f"exact={len(rows) - len(bad)}/{len(rows)}")]


def suite_generators(primes=(2, 3, 5)):
    out = []
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        img = generator_convolve(PAdicTestFunction.shell(p, 0))
        target = PAdicTestFunction.ball(p, 0)
        same_shape = img.M == target.M and img.N == target.N
        res = float(np.max(np.abs(img.values - target.values))) if same_shape else math.inf
        out.append(CheckResult(f"generator p={p} 1_(Z_p^x) -> 1_(Z_p)", res, 0.0))
        for c in (1, -1, 1j):
            res = distinguished_identity(p, c).residual(EulerFactor.one(p))
            out.append(CheckResult(f"distinguished vector p={p} c={c}", res, 0.0))
    return out


def suite_growth(sigma=2.0, t_max=60.0):
    out = []
    for name, chi in (("trivial", None), ("chi_-4", kronecker_character(-4))):
        rep = growth_report(standard_L(chi, method="auto"), sigma=sigma, t_max=t_max)
        out.append(CheckResult(f"growth {name} rate vs -pi/4", abs(rep.decay_rate + math.pi / 4), 0.02,
                               f"rate={rep.decay_rate:.5f}"))
        out.append(CheckResult(f"growth {name} stripped ratio within t^+-5", max(rep.ratio_band() - 5, 0.0), 0.0,
                               f"exponent={rep.ratio_band():.4f}"))
    return out


SUITES = {
    "fe": suite_fe,
    "poisson": suite_poisson,
    "residues": suite_residues,
    "decompose": suite_decompose,
    "generators": suite_generators,
    "growth": suite_growth,
}
