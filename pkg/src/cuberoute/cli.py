"""Command-line front end: configure a sweep, run it, emit CSV or JSON.

Configuration precedence is flags over config file over defaults; the
CUBEROUTE_SEED environment variable supplies the seed when neither flags
nor file do. The config file is a flat JSON object whose keys mirror the
flag names; unknown keys are rejected by name.

Exit codes: 0 success, 2 configuration error, 3 output I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .far import FarParams
from .harness import CaseSpec, CaseStats, Router, sweep
from .safety import UnsafeRule

CSV_HEADER = ("case,dimension,fault_count,router,runs,seed,"
              "delivered,undeliverable,hop_limit,unreachable,"
              "mpl,fault_free_mpl,pl_over_mpl,"
              "mean_iterations,max_iterations,fallbacks")

DEFAULT_DIMENSIONS = (4,)
DEFAULT_FAULTS = tuple(range(8))
DEFAULT_ROUTERS = (Router.CHIU, Router.FAR_HOPFIELD)

_ROUTER_NAMES = {r.value: r for r in Router}
_RULE_NAMES = {"chiu": UnsafeRule.CHIU, "lee": UnsafeRule.LEE}
_PARAM_KEYS = ("k1", "k2", "k3", "k4", "epsilon", "dt", "gain")


class ConfigError(Exception):
    """Bad configuration input; the message names the offending key."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved sweep definition; expands to CaseSpecs via cases()."""

    dimensions: tuple = DEFAULT_DIMENSIONS
    faults: tuple = DEFAULT_FAULTS
    routers: tuple = DEFAULT_ROUTERS
    runs: int = 1000
    seed: int = 0
    rule: UnsafeRule = UnsafeRule.CHIU
    max_hops: int | None = None
    params: FarParams = field(default_factory=FarParams)
    format: str = "csv"
    out: str | None = None

    def cases(self) -> list[CaseSpec]:
        """Cartesian expansion, ordered dimensions, then faults, then routers."""
        try:
            return [
                CaseSpec(dimension=n, fault_count=f, router=r, runs=self.runs,
                         seed=self.seed, rule=self.rule, max_hops=self.max_hops,
                         params=self.params)
                for n in self.dimensions
                for f in self.faults
                for r in self.routers
            ]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def _int_tuple(value, key: str) -> tuple:
    if isinstance(value, str):
        try:
            items = [int(tok) for tok in value.split(",")]
        except ValueError as exc:
            raise ConfigError(f"{key} must be a comma-separated list of integers") from exc
    else:
        items = value if isinstance(value, list) else [value]
        for x in items:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ConfigError(f"{key} must be an integer or list of integers")
    if not items:
        raise ConfigError(f"{key} must not be empty")
    return tuple(items)


def _int_value(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer")
    return value


def _float_value(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number")
    return float(value)


def _routers(value, key: str) -> tuple:
    names = value if isinstance(value, list) else [value]
    routers: list[Router] = []
    for name in names:
        if name == "all":
            routers.extend(Router)
        elif name in _ROUTER_NAMES:
            routers.append(_ROUTER_NAMES[name])
        else:
            raise ConfigError(f"{key} must be one of chiu, far, far-argmin, all")
    seen: list[Router] = []
    for r in routers:
        if r not in seen:
            seen.append(r)
    return tuple(seen)


def _rule(value, key: str) -> UnsafeRule:
    if value not in _RULE_NAMES:
        raise ConfigError(f"{key} must be chiu or lee")
    return _RULE_NAMES[value]


def _format(value, key: str) -> str:
    if value not in ("csv", "json"):
        raise ConfigError(f"{key} must be csv or json")
    return value


def _out(value, key: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"{key} must be a path string")
    return value


# config-file key -> canonicalizer; flags reuse the same names
_COERCERS = {
    "dimension": _int_tuple,
    "faults": _int_tuple,
    "router": _routers,
    "runs": _int_value,
    "seed": _int_value,
    "rule": _rule,
    "max_hops": _int_value,
    "format": _format,
    "out": _out,
    **{k: _float_value for k in _PARAM_KEYS},
}


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    settings = {}
    for key, value in raw.items():
        if key not in _COERCERS:
            raise ConfigError(f"unknown config key: {key!r}")
        settings[key] = _COERCERS[key](value, key)
    return settings


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cuberoute",
        description="Run fault-tolerant hypercube routing experiments.",
    )
    p.add_argument("--config", metavar="PATH", help="JSON config file")
    p.add_argument("--dimension", metavar="N[,N...]", help="cube dimensions to sweep")
    p.add_argument("--faults", metavar="K[,K...]", help="fault counts to sweep")
    p.add_argument("--runs", type=int, metavar="R", help="runs per case (default 1000)")
    p.add_argument("--seed", type=int, metavar="S", help="base seed (default $CUBEROUTE_SEED or 0)")
    p.add_argument("--router", choices=["chiu", "far", "far-argmin", "all"],
                   help="router(s) to run (default chiu and far)")
    p.add_argument("--rule", choices=["chiu", "lee"], help="unsafe-node rule (default chiu)")
    p.add_argument("--max-hops", dest="max_hops", type=int, metavar="H",
                   help="hop budget (default 4n)")
    for name in _PARAM_KEYS:
        p.add_argument(f"--{name}", type=float, metavar="X", help=f"FAR {name} coefficient")
    p.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    p.add_argument("--out", metavar="PATH", help="output path (default stdout)")
    return p


def parse_config(argv: Sequence[str] | None = None,
                 env: Mapping[str, str] | None = None) -> ExperimentConfig:
    """Resolve flags, optional config file, and environment into a config."""
    env = os.environ if env is None else env
    args = _build_parser().parse_args(argv)
    settings = _load_config_file(args.config) if args.config else {}
    for key in _COERCERS:
        value = getattr(args, key)
        if value is not None:
            settings[key] = _COERCERS[key](value, key)

    if "seed" not in settings and "CUBEROUTE_SEED" in env:
        try:
            settings["seed"] = int(env["CUBEROUTE_SEED"])
        except ValueError as exc:
            raise ConfigError("CUBEROUTE_SEED must be an integer") from exc

    try:
        params = FarParams(**{k: settings[k] for k in _PARAM_KEYS if k in settings})
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return ExperimentConfig(
        dimensions=settings.get("dimension", DEFAULT_DIMENSIONS),
        faults=settings.get("faults", DEFAULT_FAULTS),
        routers=settings.get("router", DEFAULT_ROUTERS),
        runs=settings.get("runs", 1000),
        seed=settings.get("seed", 0),
        rule=settings.get("rule", UnsafeRule.CHIU),
        max_hops=settings.get("max_hops"),
        params=params,
        format=settings.get("format", "csv"),
        out=settings.get("out"),
    )


def _float_cell(x) -> str:
    return "" if x is None else f"{x:.6f}"


def _int_cell(x) -> str:
    return "" if x is None else str(x)


def _json_float(x):
    return None if x is None else float(f"{x:.6f}")


def _result_row(index: int, stats: CaseStats) -> dict:
    spec = stats.spec
    return {
        "case": index,
        "dimension": spec.dimension,
        "fault_count": spec.fault_count,
        "router": spec.router.value,
        "runs": spec.runs,
        "seed": spec.seed,
        "delivered": stats.delivered_count,
        "undeliverable": stats.undeliverable_count,
        "hop_limit": stats.hop_limit_count,
        "unreachable": stats.unreachable_count,
        "mpl": stats.mpl,
        "fault_free_mpl": stats.fault_free_mpl,
        "pl_over_mpl": stats.pl_over_mpl,
        "mean_iterations": stats.mean_iterations,
        "max_iterations": stats.max_iterations,
        "fallbacks": stats.fallback_count,
    }


def render_results(stats: Sequence[CaseStats], format: str = "csv") -> str:
    """Result table as text; identical stats render to identical bytes."""
    if not stats:
        raise ValueError("no stats to render")
    rows = [_result_row(i, st) for i, st in enumerate(stats)]
    if format == "json":
        for row in rows:
            for key in ("mpl", "fault_free_mpl", "pl_over_mpl", "mean_iterations"):
                row[key] = _json_float(row[key])
        return json.dumps(rows, indent=2) + "\n"
    if format != "csv":
        raise ValueError(f"unknown format: {format!r}")
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join([
            str(row["case"]), str(row["dimension"]), str(row["fault_count"]),
            row["router"], str(row["runs"]), str(row["seed"]),
            str(row["delivered"]), str(row["undeliverable"]),
            str(row["hop_limit"]), str(row["unreachable"]),
            _float_cell(row["mpl"]), _float_cell(row["fault_free_mpl"]),
            _float_cell(row["pl_over_mpl"]), _float_cell(row["mean_iterations"]),
            _int_cell(row["max_iterations"]), _int_cell(row["fallbacks"]),
        ]))
    return "\n".join(lines) + "\n"


def emit_results(stats: Sequence[CaseStats], format: str = "csv",
                 path: str | None = None) -> str:
    """Render and write results to path, or stdout when path is None."""
    text = render_results(stats, format)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_config(argv)
        cases = config.cases()
    except ConfigError as exc:
        print(f"cuberoute: {exc}", file=sys.stderr)
        return 2
    stats = sweep(cases)
    try:
        emit_results(stats, config.format, config.out)
    except OSError as exc:
        print(f"cuberoute: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
