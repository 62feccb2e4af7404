"""
Command line scenario runner.

Subcommands
-----------
simulate     purity trace CSV plus a JSON summary
predict      equilibrium purity prediction as JSON
corrections  correction table CSV, optionally with the quadrature oracle

Exit codes: 0 success, 2 configuration error, 3 numeric or convergence
error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any

from .constants import ModelParams, ParameterError, default_params, validate
from .corrections import (
    MAX_ELECTRON_LEVEL,
    ORACLE_MAX_ELECTRON_LEVEL,
    ORACLE_MAX_NUCLEUS_LEVEL,
    CorrectionSource,
    TableError,
    build_correction_table,
    correction_closed_form,
    correction_oracle,
    nonadditive_gap,
)
from .dynamics import (
    ProductState,
    StateError,
    make_product_state,
    purity_trace,
    spectra_for,
    trace_summary,
)
from .equilibrium import analytic_time_average, p_eq, weights_of
from .quadrature import ConvergenceError
from .spectra import DomainError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

PRESETS: dict[str, dict[str, Any]] = {
    "fig2": {
        "electron": [(1, 1.0), (2, 1.0)],
        "nucleus": [(1, 1.0), (2, 1.0)],
        "t_max_seconds": 5e-5,
        "num_points": 2000,
    },
    "fig2-high": {
        "electron": [(14, 1.0), (15, 1.0)],
        "nucleus": [(1, 1.0), (2, 1.0)],
        "t_max_seconds": 1e20,
        "num_points": 200,
    },
    "fig3": {
        "electron": [(n, 1.0) for n in range(1, 11)],
        "nucleus": [(N, 1.0) for N in range(1, 11)],
        "t_max_seconds": 10.0,
        "num_points": 2000,
    },
}

CONFIG_KEYS = {
    "scenario",
    "electron_levels",
    "electron_amplitudes",
    "nucleus_levels",
    "nucleus_amplitudes",
    "t_max_seconds",
    "num_points",
    "correction_source",
    "param_overrides",
    "trace_path",
    "summary_path",
}


class ConfigError(ValueError):
    pass


def fmt(x: float) -> str:
    """Scientific notation with 12 significant digits."""
    return f"{x:.11e}"


def _round12(x: float | None) -> float | None:
    if x is None:
        return None
    return float(f"{x:.12g}")


@dataclass
class ScenarioConfig:
    scenario: str | None = None
    electron: list[tuple[int, complex]] | None = None
    nucleus: list[tuple[int, complex]] | None = None
    t_max_seconds: float | None = None
    num_points: int | None = None
    correction_source: str = CorrectionSource.CLOSED_FORM.value
    param_overrides: dict[str, Any] = field(default_factory=dict)
    trace_path: str | None = None
    summary_path: str | None = None

    def resolve(self) -> tuple[ProductState, float, int, ModelParams, CorrectionSource]:
        if self.scenario is not None and (self.electron or self.nucleus):
            raise ConfigError("give either a scenario preset or an explicit state, not both")
        if self.scenario is not None:
            if self.scenario not in PRESETS:
                raise ConfigError(
                    f"unknown scenario {self.scenario!r}; choose from {', '.join(PRESETS)}"
                )
            preset = PRESETS[self.scenario]
            electron, nucleus = preset["electron"], preset["nucleus"]
            t_max = self.t_max_seconds if self.t_max_seconds is not None else preset["t_max_seconds"]
            points = self.num_points if self.num_points is not None else preset["num_points"]
        else:
            if not self.electron or not self.nucleus:
                raise ConfigError("an explicit state needs both electron and nucleus amplitudes")
            electron, nucleus = self.electron, self.nucleus
            t_max, points = self.t_max_seconds, self.num_points
            if t_max is None or points is None:
                raise ConfigError("explicit states need t_max_seconds and num_points")
        if int(points) != points or points < 2:
            raise ConfigError(f"num_points must be an integer >= 2, got {points!r}")
        if not (t_max > 0 and math.isfinite(t_max)):
            raise ConfigError(f"t_max_seconds must be positive, got {t_max!r}")
        try:
            source = CorrectionSource(self.correction_source)
        except ValueError:
            raise ConfigError(f"unknown correction source {self.correction_source!r}") from None
        params = default_params().with_overrides(**self.param_overrides)
        validate(params)
        state = make_product_state(electron, nucleus)
        return state, float(t_max), int(points), params, source


def _pairs(levels, amplitudes, name):
    if levels is None and amplitudes is None:
        return None
    if levels is None or amplitudes is None or len(levels) != len(amplitudes):
        raise ConfigError(f"{name}_levels and {name}_amplitudes must have equal length")
    out = []
    for q, amp in zip(levels, amplitudes):
        if not (isinstance(amp, (list, tuple)) and len(amp) == 2):
            raise ConfigError(f"{name} amplitudes must be [re, im] pairs")
        out.append((int(q), complex(float(amp[0]), float(amp[1]))))
    return out


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = sorted(set(raw) - CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s): {', '.join(unknown)}")
    return ScenarioConfig(
        scenario=raw.get("scenario"),
        electron=_pairs(raw.get("electron_levels"), raw.get("electron_amplitudes"), "electron"),
        nucleus=_pairs(raw.get("nucleus_levels"), raw.get("nucleus_amplitudes"), "nucleus"),
        t_max_seconds=raw.get("t_max_seconds"),
        num_points=raw.get("num_points"),
        correction_source=raw.get("correction_source", CorrectionSource.CLOSED_FORM.value),
        param_overrides=dict(raw.get("param_overrides") or {}),
        trace_path=raw.get("trace_path"),
        summary_path=raw.get("summary_path"),
    )


def config_from_args(args) -> ScenarioConfig:
    config = load_config(args.config) if args.config else ScenarioConfig()
    if args.scenario is not None:
        config.scenario = args.scenario
    if config.scenario is None and config.electron is None:
        raise ConfigError("give --scenario or --config")
    if args.t_max is not None:
        config.t_max_seconds = args.t_max
    if args.points is not None:
        config.num_points = args.points
    if args.source is not None:
        config.correction_source = args.source
    if getattr(args, "out", None):
        config.trace_path = args.out
    if getattr(args, "summary", None):
        config.summary_path = args.summary
    return config


def trace_csv(trace) -> str:
    lines = ["t_seconds,purity"]
    lines += [f"{fmt(t)},{fmt(p)}" for t, p in zip(trace.times_s, trace.purity)]
    return "\n".join(lines) + "\n"


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(path: str | None, text: str, stream) -> None:
    if path is None or path == "-":
        stream.write(text)
        stream.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def simulate(config: ScenarioConfig) -> tuple[str, dict[str, Any]]:
    """Run one scenario; returns the trace CSV text and the summary mapping."""
    state, t_max, points, params, source = config.resolve()
    table = build_correction_table(state.electron_levels, state.nucleus_levels, params, source)
    spectra = spectra_for(state, params)
    trace = purity_trace(
        state, table, spectra, t_max, points, params.hbar_eV_s, config.scenario or "custom"
    )
    summary = trace_summary(trace, thresholds=(0.999,))

    period = None
    if state.dims == (2, 2):
        (n1, n2), (N1, N2) = state.electron_levels, state.nucleus_levels
        gap = nonadditive_gap(n1, n2, N1, N2, table)
        if gap != 0:
            period = 2.0 * math.pi * params.hbar_eV_s / abs(gap)

    report = {
        "scenario": config.scenario or "custom",
        "p_min": _round12(summary.min),
        "t_at_p_min_s": _round12(summary.argmin_s),
        "p_mean": _round12(summary.mean),
        "p_eq": _round12(p_eq(weights_of(state))),
        "analytic_time_average": _round12(analytic_time_average(state, table)),
        "oscillation_period_s": _round12(period),
        "first_crossing_0_999_s": _round12(summary.first_crossing[0.999]),
    }
    return trace_csv(trace), report


def predict(config: ScenarioConfig) -> dict[str, Any]:
    state, _, _, params, source = config.resolve()
    table = build_correction_table(state.electron_levels, state.nucleus_levels, params, source)
    return {
        "p_eq": _round12(p_eq(weights_of(state))),
        "analytic_time_average": _round12(analytic_time_average(state, table)),
    }


def corrections_csv(
    n_max: int, N_max: int, oracle: bool, params: ModelParams | None = None
) -> tuple[str, list[str]]:
    """Correction table CSV and, with ``oracle``, one discrepancy line per row."""
    params = params or default_params()
    if not 1 <= n_max <= MAX_ELECTRON_LEVEL:
        raise ConfigError(f"--n-max must be in 1..{MAX_ELECTRON_LEVEL}")
    if N_max < 1:
        raise ConfigError("--nn-max must be >= 1")
    if oracle and (n_max > ORACLE_MAX_ELECTRON_LEVEL or N_max > ORACLE_MAX_NUCLEUS_LEVEL):
        raise ConfigError(
            f"--oracle requires --n-max <= {ORACLE_MAX_ELECTRON_LEVEL} "
            f"and --nn-max <= {ORACLE_MAX_NUCLEUS_LEVEL}"
        )
    header = "n,N,correction_eV" + (",oracle_eV" if oracle else "")
    lines, report = [header], []
    for n in range(1, n_max + 1):
        for N in range(1, N_max + 1):
            closed = correction_closed_form(n, N, params)
            if oracle:
                quad = correction_oracle(n, N, params)
                lines.append(f"{n},{N},{fmt(closed)},{fmt(quad)}")
                report.append(
                    f"n={n} N={N} closed_form={fmt(closed)} oracle={fmt(quad)} "
                    f"oracle/closed_form={quad / closed:.6e}"
                )
            else:
                lines.append(f"{n},{N},{fmt(closed)}")
    return "\n".join(lines) + "\n", report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nucent",
        description="Electron-nucleus entanglement in a two-subsystem He+ model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_args(p):
        p.add_argument("--scenario", choices=sorted(PRESETS))
        p.add_argument("--config", help="JSON scenario file")
        p.add_argument("--t-max", type=float, help="time horizon in seconds")
        p.add_argument("--points", type=int, help="number of grid points")
        p.add_argument("--source", choices=[s.value for s in CorrectionSource])

    p_sim = sub.add_parser("simulate", help="purity trace and summary")
    scenario_args(p_sim)
    p_sim.add_argument("--out", help="trace CSV path (default: stdout)")
    p_sim.add_argument("--summary", help="summary JSON path")

    p_pred = sub.add_parser("predict", help="equilibrium purity prediction")
    scenario_args(p_pred)

    p_corr = sub.add_parser("corrections", help="first-order correction table")
    p_corr.add_argument("--n-max", type=int, required=True)
    p_corr.add_argument("--nn-max", type=int, required=True)
    p_corr.add_argument("--oracle", action="store_true", help="add the quadrature oracle column")
    p_corr.add_argument("--out", help="CSV path (default: stdout)")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            config = config_from_args(args)
            csv_text, report = simulate(config)
            _write(config.trace_path, csv_text, sys.stdout)
            if config.summary_path:
                _write(config.summary_path, dumps_json(report), sys.stdout)
            else:
                stream = sys.stderr if config.trace_path in (None, "-") else sys.stdout
                _write(None, dumps_json(report), stream)
        elif args.command == "predict":
            _write(None, dumps_json(predict(config_from_args(args))), sys.stdout)
        else:
            csv_text, report = corrections_csv(args.n_max, args.nn_max, args.oracle)
            _write(args.out, csv_text, sys.stdout)
            for line in report:
                print(line, file=sys.stderr)
    except (ConfigError, ParameterError, StateError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, TableError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
