"""Command-line front end: ``genhilbert <command> [options]``.

Commands: moments, classify, apply, norm, probe, identities.  Every command
writes one report (CSV or JSON) holding the full effective configuration,
the rows, a verdict or summary, the thresholds used and the library version.
Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import copy
import dataclasses
import io
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .measure import (
    VERDICT_SLOPE,
    VERDICT_SPREAD,
    VERDICT_WINDOW,
    MeasureParseError,
    carleson_constant,
    dyadic_grid,
    format_measure,
    log_carleson_constant,
    moments_upto,
    parse_measure,
)
from .operator import hankel_apply
from .probes import CHECKS, DEFAULT_THRESHOLDS, EXPERIMENTS, ProbeSpec, Thresholds, identity_suite, run_probe
from .quadrature import QuadratureScheme
from .spaces import (
    Family,
    SpaceParseError,
    SpaceSpec,
    TaylorPolynomial,
    coefficient_norm,
    norm,
    parse_space,
    test_function,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    """Invalid configuration; ``problems`` lists one message per offending key."""

    def __init__(self, problems):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


_QUADRATURE_DEFAULTS = dataclasses.asdict(QuadratureScheme())
_COMMON = {"format": "csv", "out": None, "quadrature": _QUADRATURE_DEFAULTS}
DEFAULTS = {
    "moments": {"measure": None, "n": 10},
    "classify": {"measure": None, "s": 1.0, "alpha": 0.0, "levels": 20},
    "apply": {"measure": None, "coeffs": None, "family": None, "b": None, "n_out": None},
    "norm": {"space": None, "coeffs": None, "family": None, "b": None},
    "probe": {"experiment": None, "measure": None, "space": None, "codomain": None, "family": None,
              "bmin_exp": 2, "bmax_exp": 14, "output_route": "coefficient",
              "thresholds": dataclasses.asdict(DEFAULT_THRESHOLDS)},
    "identities": {"seed": 42, "count": 100, "checks": list(CHECKS)},
}


def _merge(command: str, file_cfg: dict, flags: dict) -> dict:
    """Defaults, then the config file, then explicit flags; unknown keys are errors."""
    cfg = copy.deepcopy(_COMMON)
    cfg.update(copy.deepcopy(DEFAULTS[command]))
    problems = []
    for key in file_cfg:
        if key == "command":
            continue
        if key not in cfg:
            problems.append(f"unknown key {key!r}")
        elif key in ("quadrature", "thresholds"):
            sub = file_cfg[key]
            if not isinstance(sub, dict):
                problems.append(f"{key!r} must be an object")
                continue
            for k in sub:
                if k not in cfg[key]:
                    problems.append(f"unknown key {key}.{k}")
                else:
                    cfg[key][k] = sub[k]
        else:
            cfg[key] = file_cfg[key]
    if problems:
        raise ConfigError(problems)
    for key, value in flags.items():
        if value is not None:
            cfg[key] = value
    return cfg


def _scheme(cfg) -> QuadratureScheme:
    try:
        return QuadratureScheme(**cfg["quadrature"])
    except (TypeError, ValueError) as exc:
        raise ConfigError([f"quadrature: {exc}"]) from None


def _parse_family(text: str) -> Family:
    if text == "h1":
        return Family("h1")
    try:
        sp = parse_space(text)
    except SpaceParseError as exc:
        raise ConfigError([f"family: {exc}"]) from None
    if sp.kind not in ("bergman", "dirichlet"):
        raise ConfigError([f"family: {text!r} is not h1, bergman:... or dirichlet:..."])
    return Family(sp.kind, sp.p, sp.alpha)


def _function_from(cfg):
    """The polynomial named by ``coeffs`` or by ``family`` + ``b``, and its closed form if any."""
    if cfg["coeffs"] is not None and cfg["family"] is not None:
        raise ConfigError(["give either 'coeffs' or 'family', not both"])
    if cfg["coeffs"] is not None:
        c = cfg["coeffs"]
        if isinstance(c, str):
            try:
                c = [complex(x.replace(" ", "")) for x in c.split(",") if x.strip()]
            except ValueError:
                raise ConfigError([f"coeffs: cannot parse {cfg['coeffs']!r}"]) from None
        return TaylorPolynomial(np.asarray(c, dtype=complex)), None
    if cfg["family"] is not None:
        if cfg["b"] is None:
            raise ConfigError(["'family' needs 'b'"])
        tf = test_function(_parse_family(cfg["family"]), float(cfg["b"]))
        return tf.poly, tf
    raise ConfigError(["give 'coeffs' or 'family' with 'b'"])


def _need(cfg, *keys):
    missing = [f"missing required key {k!r}" for k in keys if cfg.get(k) is None]
    if missing:
        raise ConfigError(missing)


def _measure(cfg):
    _need(cfg, "measure")
    return parse_measure(cfg["measure"])


# ---------------------------------------------------------------------------
# commands; each returns (rows, verdict, thresholds, exit code)

def cmd_moments(cfg):
    m = _measure(cfg)
    n = int(cfg["n"])
    if n < 0:
        raise ConfigError(["'n' must be non-negative"])
    mt = moments_upto(m, n, _scheme(cfg))
    rows = [{"n": i, "moment": float(v), "exact": mt.exact} for i, v in enumerate(mt.values)]
    return rows, {"exact": mt.exact}, None, EXIT_OK


def cmd_classify(cfg):
    m = _measure(cfg)
    s, alpha = float(cfg["s"]), float(cfg["alpha"])
    if int(cfg["levels"]) < VERDICT_WINDOW:
        raise ConfigError([f"'levels' must be at least {VERDICT_WINDOW}"])
    grid = dyadic_grid(int(cfg["levels"]))
    plain = carleson_constant(m, s, grid)
    logc = log_carleson_constant(m, alpha, s, grid)
    rows = [{"j": j, "t": float(t), "carleson": float(a), "log_carleson": float(b)}
            for j, (t, a, b) in enumerate(zip(grid, plain.values, logc.values))]
    verdict = {
        "carleson": {"constant": plain.constant, "bounded": plain.bounded, "slope": plain.slope, "spread": plain.spread},
        "log_carleson": {"constant": logc.constant, "bounded": logc.bounded, "slope": logc.slope, "spread": logc.spread},
    }
    th = {"window": VERDICT_WINDOW, "slope": VERDICT_SLOPE, "spread": VERDICT_SPREAD}
    return rows, verdict, th, EXIT_OK


def cmd_apply(cfg):
    m = _measure(cfg)
    f, tf = _function_from(cfg)
    n_out = cfg["n_out"]
    if n_out is None:
        n_out = 4 * f.degree if tf is not None else max(16, 2 * f.degree)
        cfg["n_out"] = n_out
    n_out = int(n_out)
    mt = moments_upto(m, n_out + f.degree + 1, _scheme(cfg))
    app = hankel_apply(mt, f, n_out)
    rows = [{"n": i, "re": float(c.real), "im": float(c.imag)} for i, c in enumerate(app.output.coeffs)]
    return rows, {"residual_bound": app.residual_bound, "method": app.method, "moments_exact": mt.exact}, None, EXIT_OK


def cmd_norm(cfg):
    _need(cfg, "space")
    sp = parse_space(cfg["space"])
    f, tf = _function_from(cfg)
    scheme = _scheme(cfg)
    rows = [{"route": "quadrature", "value": norm(f, sp, scheme)}]
    if tf is not None:
        rows.append({"route": "closed-form-quadrature", "value": norm(tf.kernel, sp, scheme)})
    try:
        rows.append({"route": "coefficient", "value": coefficient_norm(f, sp)})
    except ValueError:
        pass
    return rows, {"space": str(sp)}, None, EXIT_OK


def _probe_spec(cfg) -> ProbeSpec:
    if cfg["experiment"] is not None:
        name = cfg["experiment"]
        if name not in EXPERIMENTS:
            raise ConfigError([f"unknown experiment {name!r}; known: {', '.join(sorted(EXPERIMENTS))}"])
        base = EXPERIMENTS[name]()
        for key, value in (("measure", format_measure(base.measure)), ("space", str(base.domain)),
                           ("codomain", str(base.codomain)), ("family", str(base.family)),
                           ("output_route", base.output_route)):
            if cfg[key] is None or (key == "output_route" and cfg[key] == "coefficient"):
                cfg[key] = value
    _need(cfg, "measure", "space")
    m = parse_measure(cfg["measure"])
    domain = parse_space(cfg["space"])
    codomain = parse_space(cfg["codomain"]) if cfg["codomain"] is not None else domain
    cfg["codomain"] = str(codomain)
    if cfg["family"] is None:
        from .probes import _family_for

        fam = _family_for(domain)
        if fam is None:
            raise ConfigError([f"no default family for {domain}; set 'family'"])
        cfg["family"] = str(fam)
    family = _parse_family(cfg["family"])
    lo, hi = int(cfg["bmin_exp"]), int(cfg["bmax_exp"])
    if not (1 <= lo and hi - lo >= 2 and hi <= 20):
        raise ConfigError(["need 1 <= bmin_exp, bmax_exp - bmin_exp >= 2, bmax_exp <= 20"])
    try:
        return ProbeSpec(m, domain, codomain, family, tuple(range(lo, hi + 1)), cfg["output_route"])
    except ValueError as exc:
        raise ConfigError([str(exc)]) from None


def cmd_probe(cfg):
    spec = _probe_spec(cfg)
    try:
        th = Thresholds(**cfg["thresholds"])
    except TypeError as exc:
        raise ConfigError([f"thresholds: {exc}"]) from None
    report = run_probe(spec, th, _scheme(cfg))
    verdict = {"verdict": report.verdict, "e_pow": report.e_pow, "e_log": report.e_log,
               "spread": report.spread, "increasing": report.increasing}
    return report.rows(), verdict, dataclasses.asdict(th), EXIT_OK


def cmd_identities(cfg):
    count = int(cfg["count"])
    if count < 1:
        raise ConfigError(["'count' must be at least 1"])
    checks = cfg["checks"]
    if isinstance(checks, str):
        checks = [c.strip() for c in checks.split(",") if c.strip()]
        cfg["checks"] = checks
    bad = [f"unknown check {c!r}" for c in checks if c not in CHECKS]
    if bad:
        raise ConfigError(bad)
    results = identity_suite(int(cfg["seed"]), count, checks)
    rows = [dataclasses.asdict(r) for r in results]
    failed = sum(not r.passed for r in results)
    summary = {name: {"count": sum(r.check == name for r in results),
                      "failed": sum(r.check == name and not r.passed for r in results),
                      "worst": _worst(name, results)} for name in checks}
    verdict = {"verdict": "pass" if failed == 0 else "fail", "failed": failed, "checks": summary}
    th = {"identity_tolerance": 1e-6, "inequality_floor": -1e-8}
    return rows, verdict, th, EXIT_OK if failed == 0 else EXIT_FAIL


def _worst(name, results):
    vals = [r.value for r in results if r.check == name]
    if not vals:
        return None
    identity = name in ("reproducing", "pairing", "radial-a", "radial-b")
    return float(max(vals) if identity else min(vals))


COMMANDS = {
    "moments": cmd_moments,
    "classify": cmd_classify,
    "apply": cmd_apply,
    "norm": cmd_norm,
    "probe": cmd_probe,
    "identities": cmd_identities,
}


# ---------------------------------------------------------------------------
# output

def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_json_safe(report), indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for key in ("experiment", "version", "config", "verdict", "thresholds", "runtime_ms"):
        buf.write(f"# {key}: {json.dumps(_json_safe(report[key]), sort_keys=False)}\n")
    rows = report["rows"]
    if rows:
        cols = list(rows[0])
        buf.write(",".join(cols) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(row[c]).replace(",", ";") for c in cols) + "\n")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genhilbert", description="Generalized Hilbert operator laboratory.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with configuration keys for this command")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--timing", action="store_true", help="record runtime_ms (breaks byte-identical reruns)")
        return p

    p = common(sub.add_parser("moments", help="moment table of a measure"))
    p.add_argument("--measure")
    p.add_argument("-n", "--n", type=int)

    p = common(sub.add_parser("classify", help="Carleson and log-Carleson traces"))
    p.add_argument("--measure")
    p.add_argument("--s", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--levels", type=int)

    p = common(sub.add_parser("apply", help="apply the Hankel operator to a polynomial"))
    p.add_argument("--measure")
    p.add_argument("--coeffs", help="comma-separated coefficients a_0,a_1,...")
    p.add_argument("--family", help="h1, bergman:p=..,alpha=.. or dirichlet:p=..,alpha=..")
    p.add_argument("--b", type=float)
    p.add_argument("--n-out", dest="n_out", type=int)

    p = common(sub.add_parser("norm", help="norm of a polynomial in a space"))
    p.add_argument("--space")
    p.add_argument("--coeffs")
    p.add_argument("--family")
    p.add_argument("--b", type=float)

    p = common(sub.add_parser("probe", help="boundedness probe along b = 1 - 2^-j"))
    p.add_argument("experiment", nargs="?", help="named experiment: " + ", ".join(EXPERIMENTS))
    p.add_argument("--measure")
    p.add_argument("--space", help="domain space")
    p.add_argument("--codomain")
    p.add_argument("--family")
    p.add_argument("--bmin-exp", dest="bmin_exp", type=int)
    p.add_argument("--bmax-exp", dest="bmax_exp", type=int)
    p.add_argument("--output-route", dest="output_route", choices=("coefficient", "quadrature"))

    p = common(sub.add_parser("identities", help="randomized identity and inequality suite"))
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--checks", help="comma-separated subset of: " + ",".join(CHECKS))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "timing")}
    try:
        file_cfg = {}
        if args.config:
            try:
                with open(args.config) as fh:
                    file_cfg = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError([f"cannot read config {args.config!r}: {exc}"]) from None
            if not isinstance(file_cfg, dict):
                raise ConfigError(["config file must hold a JSON object"])
            if file_cfg.get("command", command) != command:
                raise ConfigError([f"config is for command {file_cfg['command']!r}"])
        cfg = _merge(command, file_cfg, flags)
        if cfg["format"] not in ("csv", "json"):
            raise ConfigError([f"format must be csv or json, got {cfg['format']!r}"])
        start = time.perf_counter()
        rows, verdict, thresholds, code = COMMANDS[command](cfg)
        elapsed = (time.perf_counter() - start) * 1e3
    except (ConfigError, MeasureParseError, SpaceParseError) as exc:
        problems = getattr(exc, "problems", [str(exc)])
        for problem in problems:
            print(f"genhilbert {command}: error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"genhilbert {command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = {
        "experiment": cfg.get("experiment") or command,
        "version": __version__,
        "config": {"command": command, **cfg},
        "rows": rows,
        "verdict": verdict,
        "thresholds": thresholds,
        "runtime_ms": round(elapsed, 3) if args.timing else None,
    }
    text = render(report, cfg["format"])
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL:
        print(f"genhilbert {command}: {verdict.get('failed', '')} check(s) failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
