"""Command-line interface: ``adele-zeta eval | check | profile``.

Exit codes: 0 success, 1 check failure, 2 configuration error, 3 domain error
(for example evaluation at a pole).
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .archimedean import stirling_profile
from .arith import is_prime
from .characters import enumerate_characters, is_fundamental_discriminant, kronecker_character, trivial_character
from .checks import SUITES, decompose_table
from .errors import ConfigError, DomainError, PoleError
from .global_zeta import standard_L, zeta_euler
from .mellin import growth_report

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    char: str = "trivial"
    s: list = field(default_factory=list)
    sigma: float = None
    t_grid: str = None
    suite: str = None
    d: int = -4
    pmax: int = None
    primes: list = field(default_factory=lambda: [2, 3, 5])
    tmin: float = 10.0
    tmax: float = 60.0
    step: float = 0.25
    gamma_only: bool = False
    strip_gamma: bool = False
    method: str = "continued"
    tolerance_scale: float = 1.0
    format: str = "json"
    output: str = None

    def to_json(self):
        out = asdict(self)
        out["s"] = [[z.real, z.imag] for z in self.s]
        return out

    @classmethod
    def from_json(cls, data):
        data = dict(data)
        data["s"] = [complex(*z) for z in data.get("s", [])]
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.command not in ("eval", "check", "profile"):
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.method not in ("continued", "euler", "auto"):
            raise ConfigError(f"unknown method {self.method!r}")
        if self.command == "eval" and not self.s:
            raise ConfigError("eval needs at least one s value (--s or --sigma/--t)")
        if self.command == "check":
            if self.suite not in SUITES:
                raise ConfigError(f"unknown suite {self.suite!r}; choose from {sorted(SUITES)}")
            bad = [p for p in self.primes if not is_prime(p)]
            if bad:
                raise ConfigError(f"not prime: {bad}")
            if self.suite == "decompose" and not is_fundamental_discriminant(self.d):
                raise ConfigError(f"{self.d} is not a fundamental discriminant")
        if self.command == "profile":
            if self.step <= 0 or self.tmax <= self.tmin:
                raise ConfigError("empty t grid")
            if self.sigma is None:
                raise ConfigError("profile needs --sigma")
            if self.gamma_only and self.tmax < 10:
                raise ConfigError("stirling profile needs --tmax >= 10")
        parse_character(self.char)


def parse_character(spec):
    """'trivial', 'd=<discriminant>' or 'q=<modulus>:<index>' (index into enumerate_characters)."""
    spec = spec.strip()
    try:
        if spec == "trivial":
            return trivial_character()
        if spec.startswith("d="):
            return kronecker_character(int(spec[2:]))
        if spec.startswith("q="):
            q, _, idx = spec[2:].partition(":")
            chars = enumerate_characters(int(q))
            chi = chars[int(idx or 0)]
            if not chi.is_primitive():
                raise ConfigError(f"character {spec} is not primitive (conductor {chi.conductor})")
            return chi
    except (ValueError, IndexError, OverflowError) as exc:
        raise ConfigError(f"bad character spec {spec!r}: {exc}") from exc
    raise ConfigError(f"bad character spec {spec!r}")


def _parse_s_list(text):
    out = []
    for part in text.split(","):
        part = part.strip().replace("i", "j")
        if part:
            try:
                out.append(complex(part))
            except ValueError as exc:
                raise ConfigError(f"bad s value {part!r}") from exc
    return out


def _parse_grid(sigma, spec):
    try:
        a, b, step = (float(x) for x in spec.split(":"))
    except ValueError as exc:
        raise ConfigError(f"bad t grid {spec!r}; expected start:stop:step") from exc
    if step <= 0 or b < a:
        raise ConfigError("empty t grid")
    return [complex(sigma, t) for t in np.arange(a, b + step / 2, step)]


def _threads():
    try:
        return max(1, int(os.environ.get("ADELE_ZETA_THREADS", "1")))
    except ValueError:
        return 1


def _map(func, items):
    n = _threads()
    if n == 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items))


def build_parser():
    parser = argparse.ArgumentParser(prog="adele-zeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    ev = sub.add_parser("eval", help="evaluate the completed L-function")
    ev.add_argument("--char", default="trivial")
    ev.add_argument("--s", dest="s_values", help="comma-separated complex values, e.g. 2,0.5+3j")
    ev.add_argument("--sigma", type=float)
    ev.add_argument("--t", dest="t_grid", help="start:stop:step grid of imaginary parts at --sigma")
    ev.add_argument("--strip-gamma", action="store_true", help="also report L(s, chi)")
    ev.add_argument("--method", choices=("continued", "euler", "auto"), default="continued")
    ev.add_argument("--pmax", type=int, default=10**5, help="prime cutoff for --method euler")
    common(ev)

    ck = sub.add_parser("check", help="run a verification suite")
    ck.add_argument("suite", choices=sorted(SUITES))
    ck.add_argument("--d", type=int, default=-4)
    ck.add_argument("--pmax", type=int, default=229)
    ck.add_argument("--p", dest="primes", default="2,3,5")
    ck.add_argument("--tolerance-scale", type=float, default=1.0)
    common(ck)

    pr = sub.add_parser("profile", help="emit a vertical-line profile as CSV")
    pr.add_argument("--char", default="trivial")
    pr.add_argument("--sigma", type=float, required=True)
    pr.add_argument("--tmin", type=float, default=10.0)
    pr.add_argument("--tmax", type=float, default=60.0)
    pr.add_argument("--step", type=float, default=0.25)
    pr.add_argument("--gamma-only", action="store_true")
    pr.add_argument("--output", "-o")
    return parser


def config_from_args(args):
    cfg = RunConfig(command=args.command, format=getattr(args, "format", "csv"),
                    output=getattr(args, "output", None))
    if args.command == "eval":
        cfg.char, cfg.method, cfg.pmax = args.char, args.method, args.pmax
        cfg.strip_gamma = args.strip_gamma
        if args.s_values:
            cfg.s = _parse_s_list(args.s_values)
        if args.t_grid is not None:
            if args.sigma is None:
                raise ConfigError("--t requires --sigma")
            cfg.sigma, cfg.t_grid = args.sigma, args.t_grid
            cfg.s = cfg.s + _parse_grid(args.sigma, args.t_grid)
    elif args.command == "check":
        cfg.suite, cfg.d, cfg.pmax = args.suite, args.d, args.pmax
        cfg.tolerance_scale = args.tolerance_scale
        try:
            cfg.primes = [int(x) for x in args.primes.split(",") if x.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad prime list {args.primes!r}") from exc
    else:
        cfg.char, cfg.sigma, cfg.tmin, cfg.tmax = args.char, args.sigma, args.tmin, args.tmax
        cfg.step, cfg.gamma_only, cfg.format = args.step, args.gamma_only, "csv"
    cfg.validate()
    return cfg


def _emit(text, cfg, stdout):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def cmd_eval(cfg, stdout=sys.stdout):
    chi = parse_character(cfg.char)
    L = standard_L(chi, method="auto" if cfg.method == "auto" else "continued")

    def one(s):
        if cfg.method == "euler":
            z = zeta_euler(L.test_function, chi, s, P=cfg.pmax)
            k = L.conductor ** ((s + L.epsilon) / 2)
            val, err, method = k * z.value, abs(k) * z.err_bound, "euler"
        else:
            z = L.evaluate(s)
            val, err, method = z.value, z.err_bound, z.method
        row = {"s": [s.real, s.imag], "value": [float(val.real), float(val.imag)],
               "err_bound": float(err), "method": method}
        if cfg.strip_gamma:
            k = L.conductor ** ((s + L.epsilon) / 2) * L.gamma_factor(s)
            st = val / k
            row["stripped"] = [float(st.real), float(st.imag)]
            row["stripped_err_bound"] = float(err / abs(k))
        return row

    rows = _map(one, cfg.s)
    if cfg.format == "json":
        text = json.dumps({"character": chi.to_json(), "results": rows}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = ["s_re", "s_im", "value_re", "value_im", "err_bound", "method"]
        if cfg.strip_gamma:
            head += ["stripped_re", "stripped_im", "stripped_err_bound"]
        w.writerow(head)
        for r in rows:
            line = [repr(r["s"][0]), repr(r["s"][1]), repr(r["value"][0]), repr(r["value"][1]),
                    repr(r["err_bound"]), r["method"]]
            if cfg.strip_gamma:
                line += [repr(r["stripped"][0]), repr(r["stripped"][1]), repr(r["stripped_err_bound"])]
            w.writerow(line)
        text = buf.getvalue()
    _emit(text, cfg, stdout)
    return EXIT_OK


def cmd_check(cfg, stdout=sys.stdout):
    kwargs = {}
    if cfg.suite == "decompose":
        kwargs = {"d": cfg.d, "pmax": cfg.pmax}
    elif cfg.suite == "generators":
        kwargs = {"primes": tuple(cfg.primes)}
    results = SUITES[cfg.suite](**kwargs)
    for r in results:
        r.tolerance *= cfg.tolerance_scale
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        payload = {"suite": cfg.suite, "passed": ok, "results": [r.to_json() for r in results]}
        if cfg.suite == "decompose":
            payload["table"] = decompose_table(cfg.d, cfg.pmax)
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if cfg.suite == "decompose":
            w.writerow(["p", "splitting", "E_factor", "F_product", "exact"])
            for row in decompose_table(cfg.d, cfg.pmax):
                w.writerow([row["p"], row["splitting"], row["E_factor"], row["F_product"], row["exact"]])
        else:
            w.writerow(["name", "passed", "residual", "tolerance", "detail"])
            for r in results:
                w.writerow([r.name, r.passed, repr(r.residual), repr(r.tolerance), r.detail])
        text = buf.getvalue()
    _emit(text, cfg, stdout)
    for r in results:
        print(r.line(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_profile(cfg, stdout=sys.stdout):
    buf = io.StringIO()
    if cfg.gamma_only:
        prof = stirling_profile(cfg.sigma, cfg.tmax, cfg.step, t_min=cfg.tmin)
        prof.to_csv(buf)
    else:
        chi = parse_character(cfg.char)
        rep = growth_report(standard_L(chi, method="auto"), cfg.sigma, cfg.tmax, cfg.tmin, cfg.step)
        header = [f"character={json.dumps(chi.to_json(), sort_keys=True)}",
                  f"fitted_rate={rep.decay_rate!r} power={rep.power!r} intercept={rep.intercept!r}",
                  f"reference_rate={-math.pi / 4!r} err_bound=1e-14 (relative, per sample)",
                  "seminorms=" + json.dumps(rep.summary()["seminorms"], sort_keys=True)]
        rep.profile.to_csv(buf, model=rep.model, header=header)
    _emit(buf.getvalue(), cfg, stdout)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "check": cmd_check, "profile": cmd_profile}


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg, stdout)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PoleError as exc:
        report = {"error": "pole", "message": str(exc),
                  "location": None if exc.location is None else [complex(exc.location).real, complex(exc.location).imag]}
        if exc.polar_data is not None:
            report["polar_data"] = exc.polar_data.to_json()
        stdout.write(json.dumps(report, indent=2) + "\n")
        return EXIT_DOMAIN
    except DomainError as exc:
        stdout.write(json.dumps({"error": "domain", "message": str(exc), "abscissa": exc.abscissa}) + "\n")
        return EXIT_DOMAIN


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
