"""Command-line front end: gamma, qfi, optimize and crb subcommands.

Every subcommand writes a CSV (default) or JSON table. Floats are written with
12 significant digits in exponent notation so repeated runs are byte-identical.
"""
import argparse
import configparser
import math
import sys
from pathlib import Path

import numpy as np

from .errors import DomainError, OhmicProbeError
from .estimation import crb_experiment
from .optimize import maximize_qfi, scan_s
from .probes import FOUR_SCHEMES, SINGLE, Probe, parse_probe
from .qfi import closed_form_qfi, qfi_numeric, state_family
from .quadrature import QuadConfig, integrate_scaled
from .spectral import SpectralParams, decoherence_factor
from .states import Scenario, Werner

EXIT_OK, EXIT_CONFIG, EXIT_PARTIAL = 0, 1, 2

COLUMNS = {
    "gamma": ["s", "omega_c", "t", "gamma_closed", "gamma_quadrature", "abs_diff", "status"],
    "qfi": ["config", "s", "omega_c", "t", "h_closed", "h_numeric", "diff", "status"],
    "optimize": ["config", "s", "omega_c", "t_opt", "h_max", "g", "r", "status"],
    "crb": ["s", "omega_c", "t", "m_total", "n_trials", "seed", "n_valid",
            "degenerate_fraction", "mean_estimate", "variance", "bound", "ratio", "status"],
}

# axis swept by --grid
GRID_AXIS = {"gamma": "t", "qfi": "t", "optimize": "s", "crb": "t"}

_WERNER_P = "0.05:1:20"

PRESETS = {
    "optimize": {
        "fig1": dict(probes="single", s="0.5,1,2,3", omega_c="0.2:5:25"),
        "fig2": dict(probes="single", s="0.1:10:61:log", omega_c="1"),
        "fig3": dict(probes="indep-product,indep-bell", s="0.1:10:61:log", omega_c="1"),
        "fig4": dict(probes=",".join(p.label for p in FOUR_SCHEMES), s="0.5:3:51", omega_c="1"),
        "fig5": dict(
            probes=",".join(
                f"{side}-werner:{p:g}"
                for p in np.linspace(0.05, 1, 20)
                for side in ("indep", "common")
            ),
            s="0.5,1,3",
            omega_c="0.8",
        ),
    },
    "qfi": {
        "fig3": dict(probes="indep-product,indep-bell", s="1", omega_c="0.8", t="0:10:101"),
        "fig4": dict(probes=",".join(p.label for p in FOUR_SCHEMES), s="1,2", omega_c="1",
                     t="0:5:101"),
    },
}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _snap(v: float) -> float:
    # trims linspace/logspace noise so e.g. s = 1 hits the exact Ohmic branch
    return float(f"{v:.12g}")


def parse_values(text, kind=float):
    """'a,b,c' or 'start:stop:count[:log]' -> list of values."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
            raise ConfigError(f"grid must be start:stop:count[:log], got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad grid {text!r}: {exc}") from exc
        if count < 1:
            raise ConfigError(f"grid needs at least one point, got {text!r}")
        if len(parts) == 4:
            if start <= 0 or stop <= 0:
                raise ConfigError(f"log grid needs positive bounds, got {text!r}")
            vals = np.logspace(math.log10(start), math.log10(stop), count)
        else:
            vals = np.linspace(start, stop, count)
        out = [_snap(v) for v in vals]
    else:
        try:
            out = [_snap(float(v)) for v in text.split(",") if v.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad value list {text!r}: {exc}") from exc
    if kind is int:
        if any(v != int(v) for v in out):
            raise ConfigError(f"expected integers, got {text!r}")
        out = [int(v) for v in out]
    if not out:
        raise ConfigError(f"empty value list {text!r}")
    return out


def fmt(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.11e}"
    return str(value)


def render(rows, columns, fmt_name: str) -> str:
    if fmt_name == "csv":
        lines = [",".join(columns)]
        lines += [",".join(fmt(row.get(c)) for c in columns) for row in rows]
        return "\n".join(lines) + "\n"
    items = []
    for row in rows:
        fields = []
        for c in columns:
            v = row.get(c)
            if isinstance(v, str):
                text = '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
            else:
                text = fmt(v)
                if text in ("nan", "inf", "-inf"):
                    text = "null"
            fields.append(f'"{c}": {text}')
        items.append("  {" + ", ".join(fields) + "}")
    return "[\n" + ",\n".join(items) + "\n]\n"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--s", help="Ohmicity values: list a,b,c or grid start:stop:count[:log]")
    common.add_argument("--omega-c", help="cutoff frequency values")
    common.add_argument("--t", help="interrogation time values")
    common.add_argument("--p", help="Werner weights, used with --probes werner")
    common.add_argument("--n", help="GHZ sizes, used with --probes ghz")
    common.add_argument("--grid", help="grid for the subcommand's sweep axis (t, or s for optimize)")
    common.add_argument("--probes", help="comma-separated probe labels, e.g. single,indep-bell,common-werner:0.5")
    common.add_argument("--config", help="key = value file mirroring the flags")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--seed", type=int)
    common.add_argument("--figure", help="preset grid: fig1..fig5")
    common.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    common.add_argument("--m-total", type=int, help="measurements per trial (crb)")
    common.add_argument("--trials", type=int, help="number of Monte Carlo trials (crb)")
    common.add_argument("--workers", type=int, help="worker processes (capped by OHMIC_PROBE_THREADS)")

    parser = _Parser(prog="ohmic-probe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gamma", parents=[common], help="closed-form vs quadrature decoherence factor")
    sub.add_parser("qfi", parents=[common], help="closed-form vs eigendecomposition QFI")
    sub.add_parser("optimize", parents=[common], help="optimal time, QFI and QSNR")
    sub.add_parser("crb", parents=[common], help="Monte Carlo estimator variance vs Cramer-Rao bound")
    return parser


DEFAULTS = dict(s="1", omega_c="1", format="csv", seed=0, m_total=10_000, trials=1000,
                rel_tol=QuadConfig().rel_tol)


def load_config(path) -> dict:
    text = Path(path).read_text()
    cp = configparser.ConfigParser()
    try:
        cp.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    return {k.replace("-", "_"): v for k, v in cp["run"].items()}


def resolve(args) -> dict:
    """Merge defaults < config file < figure preset < explicit flags."""
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(load_config(args.config))
    figure = args.figure or cfg.get("figure")
    if figure:
        presets = PRESETS.get(args.command, {})
        if figure not in presets:
            raise ConfigError(f"no preset {figure!r} for {args.command}; have {sorted(presets)}")
        cfg.update(presets[figure])
    for key, value in vars(args).items():
        if key not in ("command", "config") and value is not None:
            cfg[key] = value
    if cfg.get("grid"):
        cfg[GRID_AXIS[args.command]] = cfg["grid"]
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg['format']!r}")
    for key in ("seed", "m_total", "trials"):
        cfg[key] = int(cfg[key])
    cfg["rel_tol"] = float(cfg["rel_tol"])
    if cfg.get("workers") is not None:
        cfg["workers"] = int(cfg["workers"])
    return cfg


def probes_from(cfg, default):
    labels = cfg.get("probes")
    if not labels:
        probes = list(default)
    else:
        try:
            probes = [parse_probe(lbl) for lbl in str(labels).split(",") if lbl.strip()]
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
    # --p / --n add Werner and GHZ probes in both bath topologies
    out = list(probes)
    if cfg.get("p"):
        for p in parse_values(cfg["p"]):
            for scen in (Scenario.INDEPENDENT, Scenario.COMMON):
                out.append(Probe(Werner(p), scen))
    if cfg.get("n"):
        for n in parse_values(cfg["n"], int):
            out.extend(parse_probe(f"{side}-ghz:{n}") for side in ("indep", "common"))
    return out


def _params(s, wc):
    try:
        return SpectralParams(s, wc)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _status(exc=None):
    return "ok" if exc is None else type(exc).__name__


def cmd_gamma(cfg):
    quad = QuadConfig(rel_tol=cfg["rel_tol"])
    rows = []
    for s in parse_values(cfg["s"]):
        for wc in parse_values(cfg["omega_c"]):
            _params(s, wc)
            for t in parse_values(cfg.get("t") or "1"):
                if t < 0:
                    raise ConfigError(f"t must be >= 0, got {t}")
                row = dict(s=s, omega_c=wc, t=t)
                try:
                    closed = decoherence_factor(wc * t, s)
                    numeric = integrate_scaled(wc * t, s, quad)
                    row.update(gamma_closed=closed, gamma_quadrature=numeric,
                               abs_diff=abs(closed - numeric), status=_status())
                except OhmicProbeError as exc:
                    row["status"] = _status(exc)
                rows.append(row)
    return rows


def cmd_qfi(cfg):
    probes = probes_from(cfg, [SINGLE, *FOUR_SCHEMES])
    rows = []
    for probe in probes:
        for s in parse_values(cfg["s"]):
            for wc in parse_values(cfg["omega_c"]):
                params = _params(s, wc)
                for t in parse_values(cfg.get("t") or "1"):
                    if t < 0:
                        raise ConfigError(f"t must be >= 0, got {t}")
                    row = dict(config=probe.label, s=s, omega_c=wc, t=t)
                    try:
                        closed = closed_form_qfi(probe.prep, probe.scenario, t, params)
                        numeric = qfi_numeric(state_family(probe.prep, probe.scenario, t, s), wc)
                        row.update(h_closed=closed, h_numeric=numeric,
                                   diff=abs(closed - numeric), status=_status())
                    except OhmicProbeError as exc:
                        row["status"] = _status(exc)
                    rows.append(row)
    return rows


def cmd_optimize(cfg):
    probes = probes_from(cfg, [SINGLE])
    s_grid = parse_values(cfg["s"])
    if any(s <= 0 for s in s_grid):
        raise ConfigError("s values must be positive")
    rows = []
    for wc in parse_values(cfg["omega_c"]):
        if wc <= 0:
            raise ConfigError(f"omega_c must be positive, got {wc}")
        for r in scan_s(s_grid, probes, wc, cfg.get("workers")):
            rows.append(dict(config=r.label, s=r.s, omega_c=r.omega_c, t_opt=r.t_opt,
                             h_max=r.h_max, g=r.g, r=r.r, status=r.error or "ok"))
    return rows


def cmd_crb(cfg, err=None):
    err = err or sys.stderr
    rows = []
    for s in parse_values(cfg["s"]):
        for wc in parse_values(cfg["omega_c"]):
            params = _params(s, wc)
            times = parse_values(cfg["t"]) if cfg.get("t") else [maximize_qfi(SINGLE, params).t_opt]
            for t in times:
                if t <= 0:
                    raise ConfigError(f"t must be > 0 for crb, got {t}")
                row = dict(s=s, omega_c=wc, t=t, m_total=cfg["m_total"],
                           n_trials=cfg["trials"], seed=cfg["seed"])
                try:
                    summary = crb_experiment(params, t, cfg["m_total"], cfg["trials"], cfg["seed"])
                    row.update(vars(summary))
                    row["status"] = _status()
                except DomainError as exc:
                    raise ConfigError(str(exc)) from exc
                except OhmicProbeError as exc:
                    print(f"crb: s={s} omega_c={wc} t={t}: {exc}", file=err)
                    row["status"] = _status(exc)
                rows.append(row)
    return rows


COMMANDS = {"gamma": cmd_gamma, "qfi": cmd_qfi, "optimize": cmd_optimize, "crb": cmd_crb}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve(args)
        rows = COMMANDS[args.command](cfg)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"ohmic-probe: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = render(rows, COLUMNS[args.command], cfg["format"])
    if cfg.get("out"):
        with open(cfg["out"], "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = sum(row.get("status") != "ok" for row in rows)
    return EXIT_PARTIAL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
