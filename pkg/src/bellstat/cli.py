"""Command-line front end: ``bellstat <command> [options]``.

Commands
--------
exact           Wigner inequality and exact outcome probabilities of a table.
simulate        Monte Carlo reservoir sampling (infinite or finite mode).
drain           Fully drain a finite bag and record the trajectory.
quantum         Singlet-prediction inequality scan plus sampler estimates.
entropy         Multiplicity/entropy inequality checks on a vector.
counterexample  Random search for a sum-form inequality violator.

A single JSON config file can carry every option; command-line flags
override file values, which override defaults (seed 42, samples 100000,
epsilon 0.05, policy equal).  ``--config`` also accepts a shipped preset
name: wigner-uniform, marble-bag, quantum-60, counterexample-search.

Reports have a stable top-level schema ``{config, results, meta}``
(schema id bellstat-report/1).  Identical configs yield byte-identical
``config`` and ``results`` sections regardless of ``--workers``; wall-clock
duration and worker count live in ``meta`` only.  Floats are emitted with 17
significant digits, so emit -> parse -> emit is byte-identical.

Exit codes: 0 success, 2 validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import platform
import sys
import time
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import __version__
from .errors import ValidationError
from .populations import (
    Axis,
    AxisTriple,
    InequalityReport,
    PairOutcome,
    PopulationTable,
    Term,
    WIGNER_OUTCOMES,
    exact_probability,
    wigner_check,
    wigner_check_probabilities,
)
from .entropy import (
    MultiplicityVector,
    entropy_inequality,
    entropy_ratios,
    find_multiplicity_counterexample,
    multiplicity_inequality,
    product_inequality,
)
from .quantum import quantum_wigner_scan, singlet_prediction, singlet_sample
from .reservoir import (
    EmpiricalEstimate,
    ReservoirSpec,
    depletion_trajectory,
    empirical_probability,
    sample,
)
from .rng import validate_seed
from .presets import PRESET_NAMES, load_preset

COMMANDS = ("exact", "simulate", "drain", "quantum", "entropy", "counterexample")
SCHEMA_ID = "bellstat-report/1"

_DEFAULTS: dict[str, Any] = {
    "table": None,
    "omegas": None,
    "axes_spacing_deg": None,
    "axes": None,
    "steps": 1,
    "samples": 100_000,
    "seed": 42,
    "policy": "equal",
    "epsilon": 0.05,
    "mode": "infinite",
    "format": "json",
    "out": None,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully resolved, validated experiment description."""

    command: str
    table: PopulationTable | None = None
    omegas: MultiplicityVector | None = None
    axes_spacing_deg: float | None = None
    axes: AxisTriple | None = None
    steps: int = 1
    samples: int = 100_000
    seed: int = 42
    policy: str = "equal"
    epsilon: float = 0.05
    mode: str = "infinite"
    format: str = "json"
    out: str | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        validate_seed(self.seed)
        if self.samples < 1:
            raise ValidationError(f"samples must be >= 1, got {self.samples}")
        if self.steps < 1:
            raise ValidationError(f"steps must be >= 1, got {self.steps}")
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be nonnegative, got {self.epsilon}")
        if self.policy not in ("equal", "proportional"):
            raise ValidationError(f"policy must be 'equal' or 'proportional', got {self.policy!r}")
        if self.mode not in ("infinite", "finite"):
            raise ValidationError(f"mode must be 'infinite' or 'finite', got {self.mode!r}")
        if self.format not in ("json", "csv"):
            raise ValidationError(f"format must be 'json' or 'csv', got {self.format!r}")
        if self.axes_spacing_deg is not None and not 0.0 < self.axes_spacing_deg < 180.0:
            raise ValidationError(
                f"axes spacing must be in (0, 180) degrees, got {self.axes_spacing_deg}"
            )
        if self.command in ("exact", "simulate", "drain") and self.table is None:
            raise ValidationError(f"command {self.command!r} requires a population table")
        if self.command == "quantum" and self.axes_spacing_deg is None and self.axes is None:
            raise ValidationError("command 'quantum' requires --axes-spacing or explicit axes")
        if self.command == "entropy" and self.omegas is None and self.table is None:
            raise ValidationError("command 'entropy' requires --omegas or a table to derive them")
        if self.command == "simulate" and self.mode == "finite":
            assert self.table is not None
            if self.samples > self.table.total:
                raise ValidationError(
                    f"cannot draw {self.samples} pairs from a finite bag of {self.table.total}"
                )


@dataclass(frozen=True)
class RunReport:
    config: dict
    results: dict
    meta: dict

    def document(self) -> dict:
        return {"config": self.config, "results": self.results, "meta": self.meta}


# ---------------------------------------------------------------------------
# Stable serialization: sorted keys, %.17g floats, byte-stable round trips.
# ---------------------------------------------------------------------------


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValidationError(f"cannot serialize non-finite number {x!r}")
    return format(x, ".17g")


def dumps_stable(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return repr(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [dumps_stable(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(inner + it for it in items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(k), ensure_ascii=True)}: {dumps_stable(v, indent + 1)}"
            for k, v in sorted(obj.items())
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise ValidationError(f"cannot serialize {type(obj).__name__} value {obj!r}")


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _format_float(v)
    return str(v)


def _csv_lines(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Report fragments
# ---------------------------------------------------------------------------


def _outcome_dict(o: PairOutcome) -> dict:
    return {
        "label": o.label(),
        "alice_axis": o.alice_axis,
        "alice_sign": o.alice_sign,
        "bob_axis": o.bob_axis,
        "bob_sign": o.bob_sign,
    }


def _term_dict(t: Term) -> dict:
    d: dict[str, Any] = {
        "label": t.label,
        "populations": list(t.populations),
        "value": t.value,
    }
    if t.outcome is not None:
        d["outcome"] = _outcome_dict(t.outcome)
    if t.numerator is not None:
        d["numerator"] = t.numerator
        d["denominator"] = t.denominator
    return d


def _ineq_dict(r: InequalityReport) -> dict:
    d: dict[str, Any] = {
        "lhs": r.lhs,
        "rhs": r.rhs,
        "margin": r.margin,
        "holds": r.holds,
        "terms": [_term_dict(t) for t in r.terms],
    }
    if r.equal_multiplicity_precondition is not None:
        d["equal_multiplicity_precondition"] = r.equal_multiplicity_precondition
    if r.note:
        d["note"] = r.note
    return d


def _estimate_dict(e: EmpiricalEstimate, reference: float | None = None) -> dict:
    d: dict[str, Any] = {
        "outcome": _outcome_dict(e.outcome),
        "p_hat": e.p_hat,
        "stderr": e.stderr,
        "n": e.n,
    }
    if reference is not None:
        d["reference"] = reference
    return d


def _config_echo(config: ExperimentConfig) -> dict:
    axes = None
    if config.axes is not None:
        axes = {
            "a": list(config.axes.a.direction),
            "b": list(config.axes.b.direction),
            "c": list(config.axes.c.direction),
        }
    return {
        "command": config.command,
        "table": list(config.table.counts) if config.table is not None else None,
        "omegas": list(config.omegas.omegas) if config.omegas is not None else None,
        "axes_spacing_deg": config.axes_spacing_deg,
        "axes": axes,
        "steps": config.steps,
        "samples": config.samples,
        "seed": config.seed,
        "policy": config.policy,
        "epsilon": config.epsilon,
        "mode": config.mode,
        "format": config.format,
    }


# ---------------------------------------------------------------------------
# Command pipelines
# ---------------------------------------------------------------------------


def _run_exact(config: ExperimentConfig) -> dict:
    assert config.table is not None
    report = wigner_check(config.table)
    probabilities = []
    for outcome in WIGNER_OUTCOMES:
        p = exact_probability(config.table, outcome)
        probabilities.append(
            {
                "outcome": _outcome_dict(outcome),
                "numerator": p.numerator,
                "denominator": p.denominator,
                "value": p.value,
            }
        )
    return {"wigner": _ineq_dict(report), "probabilities": probabilities}


def _run_simulate(config: ExperimentConfig, workers: int) -> dict:
    assert config.table is not None
    spec = ReservoirSpec(config.mode, config.table, config.seed)  # type: ignore[arg-type]
    draws = sample(spec, config.samples, workers=workers)
    estimates = []
    p_hats = []
    for outcome in WIGNER_OUTCOMES:
        est = empirical_probability(draws, outcome)
        exact = exact_probability(config.table, outcome).value
        estimates.append(_estimate_dict(est, reference=exact))
        p_hats.append(est.p_hat)
    empirical = wigner_check_probabilities(*p_hats)
    return {
        "mode": config.mode,
        "draws": len(draws),
        "estimates": estimates,
        "empirical_wigner": _ineq_dict(empirical),
        "exact_wigner": _ineq_dict(wigner_check(config.table)),
    }


def _run_drain(config: ExperimentConfig) -> dict:
    assert config.table is not None
    spec = ReservoirSpec.finite(config.table, config.seed)
    records = depletion_trajectory(spec)
    steps = [
        {
            "step": r.step,
            "population": r.population,
            "conditional_probabilities": list(r.conditional_probabilities),
            "remaining": list(r.remaining.counts) if r.remaining is not None else None,
        }
        for r in records
    ]
    final = records[-1]
    return {
        "initial_total": config.table.total,
        "steps": steps,
        "final_conditional_probability": final.conditional_probabilities[final.population - 1],
    }


def _run_quantum(config: ExperimentConfig) -> dict:
    if config.axes is not None:
        axes = config.axes
        p_ab = singlet_prediction(axes.a, axes.b).p_pp
        p_ac = singlet_prediction(axes.a, axes.c).p_pp
        p_cb = singlet_prediction(axes.c, axes.b).p_pp
        theta = axes.angle("a", "c")
        scan_points = [
            {
                "theta_deg": math.degrees(theta),
                "lhs": p_ab,
                "rhs": p_ac + p_cb,
                "violated": not wigner_check_probabilities(p_ab, p_ac, p_cb).holds,
            }
        ]
    else:
        assert config.axes_spacing_deg is not None
        spacing = math.radians(config.axes_spacing_deg)
        axes = AxisTriple.coplanar(spacing)
        scan_points = [
            {
                "theta_deg": config.axes_spacing_deg * k / config.steps,
                "lhs": pt.lhs,
                "rhs": pt.rhs,
                "violated": pt.violated,
            }
            for k, pt in enumerate(quantum_wigner_scan(spacing, config.steps), start=1)
        ]

    counts = singlet_sample(axes, config.samples, config.seed)
    estimates = []
    for outcome in WIGNER_OUTCOMES:
        predicted = singlet_prediction(
            axes.axis(outcome.alice_axis), axes.axis(outcome.bob_axis)
        ).probability(outcome.alice_sign, outcome.bob_sign)
        estimates.append(_estimate_dict(counts.estimate(outcome), reference=predicted))
    return {
        "scan": scan_points,
        "sampler": {"n": counts.n, "estimates": estimates},
    }


def _resolve_omegas(config: ExperimentConfig) -> MultiplicityVector:
    if config.omegas is not None:
        return config.omegas
    assert config.table is not None
    return MultiplicityVector.from_counts(config.table, config.policy)  # type: ignore[arg-type]


def _run_entropy(config: ExperimentConfig) -> dict:
    v = _resolve_omegas(config)
    try:
        ratios: list[float] | None = list(entropy_ratios(v))
    except ValidationError:
        ratios = None
    return {
        "omegas": list(v.omegas),
        "multiplicity_inequality": _ineq_dict(multiplicity_inequality(v, config.epsilon)),
        "product_inequality": _ineq_dict(product_inequality(v)),
        "entropy_inequality": _ineq_dict(entropy_inequality(v)),
        "entropy_ratios": ratios,
    }


def _run_counterexample(config: ExperimentConfig) -> dict:
    found = find_multiplicity_counterexample(
        config.samples, seed=config.seed, epsilon=config.epsilon
    )
    if found is None:
        return {"budget": config.samples, "found": False, "omegas": None, "report": None}
    return {
        "budget": config.samples,
        "found": True,
        "omegas": list(found.omegas),
        "report": _ineq_dict(multiplicity_inequality(found, config.epsilon)),
    }


def run(config: ExperimentConfig, workers: int = 1) -> RunReport:
    """Execute one experiment.  Identical configs give identical results
    for any ``workers`` value."""
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    start = time.perf_counter()
    if config.command == "exact":
        results = _run_exact(config)
    elif config.command == "simulate":
        results = _run_simulate(config, workers)
    elif config.command == "drain":
        results = _run_drain(config)
    elif config.command == "quantum":
        results = _run_quantum(config)
    elif config.command == "entropy":
        results = _run_entropy(config)
    else:
        results = _run_counterexample(config)
    duration = time.perf_counter() - start
    return RunReport(
        config=_config_echo(config),
        results=results,
        meta={
            "schema": SCHEMA_ID,
            "bellstat_version": __version__,
            "numpy_version": np.__version__,
            "python_version": platform.python_version(),
            "duration_seconds": duration,
            "workers": workers,
        },
    )


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

CSV_HEADERS: dict[str, tuple[str, ...]] = {
    "exact": (
        "term", "alice_axis", "alice_sign", "bob_axis", "bob_sign",
        "populations", "numerator", "denominator", "probability",
    ),
    "simulate": (
        "outcome", "alice_axis", "alice_sign", "bob_axis", "bob_sign",
        "p_hat", "stderr", "n", "reference",
    ),
    "drain": (
        "step", "population",
        *(f"p{i}" for i in range(1, 9)),
        *(f"remaining{i}" for i in range(1, 9)),
    ),
    "quantum": ("theta", "lhs", "rhs", "violated"),
    "entropy": ("inequality", "lhs", "rhs", "margin", "holds", "equal_multiplicity_precondition"),
    "counterexample": ("found", *(f"omega{i}" for i in range(1, 9)), "lhs", "rhs", "margin"),
}


def _csv_rows(command: str, results: dict) -> list[list[Any]]:
    if command == "exact":
        return [
            [
                t["label"],
                t["outcome"]["alice_axis"], t["outcome"]["alice_sign"],
                t["outcome"]["bob_axis"], t["outcome"]["bob_sign"],
                ";".join(str(p) for p in t["populations"]),
                t["numerator"], t["denominator"], t["value"],
            ]
            for t in results["wigner"]["terms"]
        ]
    if command == "simulate":
        return [
            [
                e["outcome"]["label"],
                e["outcome"]["alice_axis"], e["outcome"]["alice_sign"],
                e["outcome"]["bob_axis"], e["outcome"]["bob_sign"],
                e["p_hat"], e["stderr"], e["n"], e["reference"],
            ]
            for e in results["estimates"]
        ]
    if command == "drain":
        return [
            [s["step"], s["population"], *s["conditional_probabilities"], *s["remaining"]]
            for s in results["steps"]
        ]
    if command == "quantum":
        return [
            [pt["theta_deg"], pt["lhs"], pt["rhs"], pt["violated"]]
            for pt in results["scan"]
        ]
    if command == "entropy":
        rows = []
        for name in ("multiplicity_inequality", "product_inequality", "entropy_inequality"):
            r = results[name]
            rows.append(
                [name, r["lhs"], r["rhs"], r["margin"], r["holds"],
                 r.get("equal_multiplicity_precondition", "")]
            )
        return rows
    if command == "counterexample":
        if not results["found"]:
            return []
        r = results["report"]
        return [[True, *results["omegas"], r["lhs"], r["rhs"], r["margin"]]]
    raise ValidationError(f"unknown command {command!r}")


def emit(report: RunReport, fmt: str) -> str:
    """Serialize a report: one stable JSON document, or CSV rows per step."""
    if fmt == "json":
        return dumps_stable(report.document()) + "\n"
    if fmt == "csv":
        command = report.config["command"]
        return _csv_lines(CSV_HEADERS[command], _csv_rows(command, report.results))
    raise ValidationError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# Argument parsing and config resolution
# ---------------------------------------------------------------------------


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x.strip()) for x in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"cannot parse {what} {text!r}: {exc}") from None


def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        return [float(x.strip()) for x in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"cannot parse {what} {text!r}: {exc}") from None


def _load_config_file(ref: str) -> dict:
    if ref in PRESET_NAMES:
        return load_preset(ref)
    try:
        with open(ref, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(
            f"config {ref!r} is neither a file nor a preset "
            f"(presets: {', '.join(PRESET_NAMES)})"
        ) from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file {ref!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValidationError(f"config file {ref!r} must hold a JSON object")
    return data


def _table_from(value: Any) -> PopulationTable:
    if isinstance(value, PopulationTable):
        return value
    if isinstance(value, str):
        value = _parse_int_list(value, "table")
    if not isinstance(value, (list, tuple)):
        raise ValidationError(f"table must be a list of 8 counts, got {value!r}")
    for n in value:
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValidationError(f"population counts must be integers, got {n!r}")
    return PopulationTable.from_counts(value)


def _omegas_from(value: Any) -> MultiplicityVector:
    if isinstance(value, MultiplicityVector):
        return value
    if isinstance(value, str):
        value = _parse_float_list(value, "omegas")
    if not isinstance(value, (list, tuple)):
        raise ValidationError(f"omegas must be a list of 8 positive reals, got {value!r}")
    return MultiplicityVector.from_iterable(value)


def _axes_from(value: Any) -> AxisTriple:
    if isinstance(value, AxisTriple):
        return value
    if not isinstance(value, dict) or set(value) != {"a", "b", "c"}:
        raise ValidationError("axes must be an object with keys 'a', 'b', 'c'")
    def axis(label: str) -> Axis:
        v = value[label]
        if not isinstance(v, (list, tuple)) or len(v) != 3:
            raise ValidationError(f"axis {label!r} must be a 3-vector, got {v!r}")
        return Axis(label, tuple(float(x) for x in v))  # type: ignore[arg-type]
    return AxisTriple(axis("a"), axis("b"), axis("c"))


_CONVERTERS = {
    "table": _table_from,
    "omegas": _omegas_from,
    "axes": _axes_from,
    "axes_spacing_deg": float,
    "steps": int,
    "samples": int,
    "seed": int,
    "policy": str,
    "epsilon": float,
    "mode": str,
    "format": str,
    "out": str,
}


def resolve_config(command: str, config_ref: str | None, overrides: dict[str, Any]) -> ExperimentConfig:
    """Merge defaults, config file, and flag overrides into a validated config."""
    merged = dict(_DEFAULTS)
    if config_ref is not None:
        file_values = _load_config_file(config_ref)
        file_command = file_values.pop("command", None)
        if file_command is not None and file_command != command:
            raise ValidationError(
                f"config file is for command {file_command!r}, invoked as {command!r}"
            )
        for key, value in file_values.items():
            if key not in merged:
                raise ValidationError(f"unknown config key {key!r}")
            merged[key] = value
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    converted = {
        key: (None if value is None else _CONVERTERS[key](value))
        for key, value in merged.items()
    }
    try:
        return ExperimentConfig(command=command, **converted)
    except TypeError as exc:
        raise ValidationError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellstat",
        description="Population-counting Bell inequality experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    help_by_command = {
        "exact": "exact probabilities and the Wigner inequality for a table",
        "simulate": "Monte Carlo reservoir sampling against exact values",
        "drain": "fully drain a finite bag, recording each conditional step",
        "quantum": "singlet-state inequality scan and sampler",
        "entropy": "multiplicity and entropy inequality checks",
        "counterexample": "search for a sum-form inequality violator",
    }
    for command in COMMANDS:
        p = sub.add_parser(command, help=help_by_command[command])
        p.add_argument("--config", metavar="FILE", help="JSON config file or preset name")
        p.add_argument("--axes-spacing", dest="axes_spacing_deg", type=float, metavar="DEG",
                       help="coplanar axis spacing in degrees")
        p.add_argument("--table", metavar="N1,...,N8", help="population counts")
        p.add_argument("--omegas", metavar="W1,...,W8", help="population multiplicities")
        p.add_argument("--samples", type=int, metavar="N", help="sample count / search budget")
        p.add_argument("--seed", type=int, metavar="S", help="64-bit unsigned RNG seed")
        p.add_argument("--policy", choices=("equal", "proportional"),
                       help="multiplicity-from-counts policy")
        p.add_argument("--epsilon", type=float, metavar="E",
                       help="equal-multiplicity ratio tolerance")
        p.add_argument("--format", choices=("json", "csv"), help="output format")
        p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
        p.add_argument("--workers", type=int, default=1, metavar="N",
                       help="parallel workers (never affects results)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {
        "axes_spacing_deg": args.axes_spacing_deg,
        "table": args.table,
        "omegas": args.omegas,
        "samples": args.samples,
        "seed": args.seed,
        "policy": args.policy,
        "epsilon": args.epsilon,
        "format": args.format,
        "out": args.out,
    }
    try:
        config = resolve_config(args.command, args.config, overrides)
        report = run(config, workers=args.workers)
        text = emit(report, config.format)
    except ValidationError as exc:
        print(f"bellstat: {exc}", file=sys.stderr)
        return 2
    try:
        if config.out is None:
            sys.stdout.write(text)
        else:
            with open(config.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"bellstat: cannot write output: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
