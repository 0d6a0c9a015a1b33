"""
Command-line front end.

Commands
--------
bounds     all applicable bounds for a symbol, n = 1..n_max
oracle     singular values of the truncated H^2 matrix
sandwich   lower bound <= oracle <= upper bound, with violation flags
fit        decay-law fits of oracle values (or of a saved oracle CSV)
constants  the constants ledger for a given p

CSV columns
-----------
bounds:    bound,n,value,rigorous,params
oracle:    n,sigma,truncation,converged
sandwich:  n,lower,oracle,upper,converged,lower_violation,upper_violation

Exit status: 0 on success, 1 on configuration errors, 2 when a rigorous
lower bound exceeds an oracle value in ``sandwich``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import bounds as B
from . import decay as D
from . import oracle as O
from .errors import HardyApproxError
from .symbols import parse_symbol

COMMANDS = ("bounds", "oracle", "sandwich", "fit", "constants")
SANDWICH_RTOL = 1e-6


class ConfigError(HardyApproxError, ValueError):
    """Invalid command-line configuration."""


@dataclass
class RunConfig:
    command: str
    symbol: str = "identity"
    p: float = 2.0
    n_max: int = 25
    truncation: int = 1024
    output_path: Optional[str] = None
    format: str = "csv"
    overrides: List[str] = field(default_factory=list)
    seed: int = 0
    kernels: bool = False
    samples: int = 1 << 16
    input_path: Optional[str] = None
    kind: Optional[str] = None
    n_range: Optional[List[int]] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not (self.p >= 1.0) or not math.isfinite(self.p):
            raise ConfigError("p must be >= 1")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.truncation < 2 or self.truncation & (self.truncation - 1):
            raise ConfigError("truncation must be a power of two")
        if not (1 <= self.n_max <= self.truncation):
            raise ConfigError("n_max must lie in [1, truncation]")
        if self.seed < 0 or self.seed >= 1 << 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.kind is not None and self.kind not in D.KINDS:
            raise ConfigError(f"kind must be one of {D.KINDS}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hardyapprox", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--symbol", default="identity",
                        help="symbol, e.g. lens:theta=0.5, automorphism:a=0.5, dilation:c=0.5, cusp")
    parser.add_argument("--p", type=float, default=2.0)
    parser.add_argument("--n-max", type=int, default=25)
    parser.add_argument("--truncation", type=int, default=1024)
    parser.add_argument("--output", default=None, help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override a constant (tau_p, lambda_constant, C_window, K_upper, kappa, chi, l, ...)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--kernels", action="store_true",
                        help="refine the oracle with the reproducing-kernel lower bound")
    parser.add_argument("--samples", type=int, default=1 << 16, help="Monte-Carlo samples for window integrals")
    parser.add_argument("--input", dest="input_path", default=None, help="oracle CSV to fit (fit command)")
    parser.add_argument("--kind", default=None, help="decay law to fit (default: all, ranked)")
    parser.add_argument("--n-range", type=int, nargs=2, default=None, metavar=("LO", "HI"))
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _constants(cfg: RunConfig, phi=None) -> B.BoundConstants:
    theta = None
    if phi is not None and phi.name == "lens" and 0 < phi.parameters["theta"] < 1:
        theta = phi.parameters["theta"]
    return B.BoundConstants(p=cfg.p, theta=theta).with_overrides(cfg.overrides)


def _oracle(cfg: RunConfig, phi) -> O.SingularValueTable:
    if cfg.kernels:
        return O.oracle_table(phi, cfg.n_max, cfg.truncation)
    return O.approximation_numbers(O.build_matrix(phi, cfg.truncation), cfg.n_max)


def _lower_reports(cfg, phi, consts) -> List[B.BoundReport]:
    reports = []
    if not phi.radial_only:
        logs, params = [], []
        for n in range(1, cfg.n_max + 1):
            _, rep = B.optimize_lobo_sequence(phi, n, cfg.p, consts)
            logs.append(rep.log_values[0])
            params.append(rep.parameters.get("sigma"))
        reports.append(B.BoundReport("lobo-optimized", np.arange(1, cfg.n_max + 1), logs, consts,
                                     consts.c_p_rigorous, {"sigma": params}))
    if phi.modulus is not None and phi.real:
        reports.append(B.radial_lower_bound(phi, cfg.p, np.arange(1, cfg.n_max + 1), constants=consts))
    if consts.theta is not None:
        ns = [n for n in range(1, cfg.n_max + 1) if B.lens_epsilon_star(consts.theta, cfg.p, n) < 1.0]
        if ns:
            reports.append(B.BoundReport("lens-asymptotic", ns,
                                         B.lens_asymptotic_log_bound(consts.theta, cfg.p, np.array(ns), consts),
                                         consts, False, {"theta": consts.theta}))
    return reports


def _upper_reports(cfg, phi, consts) -> List[B.BoundReport]:
    reports = []
    if phi.modulus is not None:
        reports.append(B.global_regular_report(phi.modulus, np.arange(1, cfg.n_max + 1), cfg.p, consts))
    if not phi.radial_only and phi.name != "constant":
        logs, params = [], []
        for n in range(1, cfg.n_max + 1):
            zeros = []
            if n > 1:
                u, _ = B.optimize_lobo_sequence(phi, n - 1, cfg.p, consts)
                zeros = B.image_sequence(phi, u).points
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                rep = B.carleson_window_upper_bound(phi, zeros, cfg.p, n=n, samples=cfg.samples,
                                                    seed=cfg.seed, constants=consts)
            logs.append(rep.log_values[0])
            params.append(rep.parameters["window_sup"])
        reports.append(B.BoundReport("carleson-window", np.arange(1, cfg.n_max + 1), logs, consts, False,
                                     {"window_sup": params, "seed": cfg.seed, "samples": cfg.samples}))
    return reports


def _reports_text(reports, fmt) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"
    rows = [row for r in reports for row in r.to_csv_rows()]
    return _csv(rows, B.CSV_HEADER)


def cmd_bounds(cfg: RunConfig) -> int:
    phi = parse_symbol(cfg.symbol)
    consts = _constants(cfg, phi)
    reports = _lower_reports(cfg, phi, consts) + _upper_reports(cfg, phi, consts)
    _emit(_reports_text(reports, cfg.format), cfg.output_path)
    return 0


def cmd_oracle(cfg: RunConfig) -> int:
    phi = parse_symbol(cfg.symbol)
    table = _oracle(cfg, phi)
    if cfg.format == "json":
        text = json.dumps({"symbol": phi.label, "truncation": table.truncation, "source": table.source,
                           "converged_upto": table.converged_upto, "nonconverged": table.nonconverged,
                           "values": table.values.tolist()}, indent=2, sort_keys=True) + "\n"
    else:
        text = table.to_csv()
    _emit(text, cfg.output_path)
    return 0


def _best(reports, n_max, pick):
    out = np.full(n_max, np.nan)
    rig = np.zeros(n_max, dtype=bool)
    for r in reports:
        for n, lv in zip(r.n_values, r.log_values):
            if 1 <= n <= n_max and math.isfinite(lv):
                cur = out[n - 1]
                if math.isnan(cur) or pick(lv, cur):
                    out[n - 1] = lv
                    rig[n - 1] = r.rigorous
    return out, rig


def cmd_sandwich(cfg: RunConfig) -> int:
    phi = parse_symbol(cfg.symbol)
    consts = _constants(cfg, phi)
    table = _oracle(cfg, phi)
    lower = [r for r in _lower_reports(cfg, phi, consts)]
    upper = _upper_reports(cfg, phi, consts)
    lo, lo_rig = _best(lower, cfg.n_max, lambda a, b: a > b)
    up, _ = _best(upper, cfg.n_max, lambda a, b: a < b)
    rows, records, violations = [], [], 0
    for n in range(1, cfg.n_max + 1):
        s = float(table.values[n - 1])
        l = math.exp(lo[n - 1]) if math.isfinite(lo[n - 1]) else float("nan")
        u = math.exp(up[n - 1]) if math.isfinite(up[n - 1]) else float("nan")
        lv = bool(l > s * (1.0 + SANDWICH_RTOL))
        uv = bool(s > u * (1.0 + SANDWICH_RTOL))
        if lv and lo_rig[n - 1]:
            violations += 1
        rows.append([n, repr(l), repr(s), repr(u), str(table.converged(n)).lower(),
                     str(lv).lower(), str(uv).lower()])
        records.append({"n": n, "lower": l, "oracle": s, "upper": u, "lower_rigorous": bool(lo_rig[n - 1]),
                        "converged": table.converged(n), "lower_violation": lv, "upper_violation": uv})
    if cfg.format == "json":
        text = json.dumps({"symbol": phi.label, "p": cfg.p, "truncation": table.truncation,
                           "rigorous_violations": violations, "rows": B._jsonable(records)},
                          indent=2, sort_keys=True) + "\n"
    else:
        text = _csv(rows, ["n", "lower", "oracle", "upper", "converged", "lower_violation", "upper_violation"])
    _emit(text, cfg.output_path)
    if violations:
        sys.stderr.write(f"{violations} rigorous lower-bound violation(s)\n")
        return 2
    return 0


def cmd_fit(cfg: RunConfig) -> int:
    if cfg.input_path is not None:
        with open(cfg.input_path, encoding="utf-8") as fh:
            table = O.SingularValueTable.from_csv(fh.read())
    else:
        table = _oracle(cfg, parse_symbol(cfg.symbol))
    n_range = tuple(cfg.n_range) if cfg.n_range else None
    if cfg.kind:
        models = [D.fit(table, cfg.kind, n_range)]
    else:
        models = D.fit_all(table, n_range)
    text = json.dumps([m.to_dict() for m in models], indent=2, sort_keys=True) + "\n"
    _emit(text, cfg.output_path)
    return 0


def cmd_constants(cfg: RunConfig) -> int:
    phi = parse_symbol(cfg.symbol) if cfg.symbol else None
    consts = _constants(cfg, phi)
    ledger = consts.ledger()
    ledger["c_p_cases"] = {
        "p=1": 1.0 / 12.0,
        "1<p<=2": "12^(-1/p)/tau_p",
        "p>2": "12^(-1/2)/tau_2",
    }
    if cfg.format == "json":
        text = json.dumps(B._jsonable(ledger), indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"p = {consts.p:g}", f"p_tilde = {consts.p_tilde:g}", f"p_star = {consts.p_star:g}",
                 f"tau_p = {consts.tau_p:g}", f"c_p = {consts.c_p:.10g}",
                 f"c_p rigorous = {str(consts.c_p_rigorous).lower()}",
                 f"c'_p = {consts.c_prime_p:.10g}", f"alpha = {consts.alpha:.10g}",
                 f"Lambda = {consts.lambda_constant:g}"]
        if consts.theta is not None:
            lines.append(f"beta_theta = {consts.beta_theta:.10g}")
            lines.append(f"beta_p_theta = {B.beta_p_theta(consts.theta, consts.p):.10g}")
        lines += [f"C_window = {consts.C_window:.10g}", f"K_upper = {consts.K_upper:g}",
                  f"kappa = {consts.kappa:g}", f"chi = {consts.chi:g}", f"l = {consts.l}"]
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.output_path)
    return 0


HANDLERS = {"bounds": cmd_bounds, "oracle": cmd_oracle, "sandwich": cmd_sandwich,
            "fit": cmd_fit, "constants": cmd_constants}


def run(config: RunConfig) -> int:
    try:
        config.validate()
        return HANDLERS[config.command](config)
    except (HardyApproxError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command, symbol=args.symbol, p=args.p, n_max=args.n_max,
                    truncation=args.truncation, output_path=args.output, format=args.format,
                    overrides=args.overrides, seed=args.seed, kernels=args.kernels, samples=args.samples,
                    input_path=args.input_path, kind=args.kind, n_range=args.n_range)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
