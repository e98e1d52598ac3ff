"""Experiment orchestration: config ingestion, verification runs, and
report serialization.

A run fans out over (theorem, function, rate exponent) groups, sweeps n
inside each group, appends fitted log-log rates per group, and writes a
deterministic CSV (fixed column order, fixed float formatting) plus an
optional JSON summary.  Hypothesis-violating combinations are skipped
with a recorded reason, never crashed on.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml

from . import bounds, corpus, partition
from .bounds import BoundReport, GridPolicy, fit_rate, verify
from .errors import ConfigError, DegenerateFit, ErfApproxError
from .funcs import ComplexFunctionSpec, FunctionSpec

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "theorem", "function", "family", "n", "exponent", "point_mode",
    "empirical_error", "bound", "slack", "modulus_quality", "verdict",
    "slope", "r2",
)

#: theorems that need an interval function, a whole-line function, a
#: fractional-corpus function, or a complex pair
_INTERVAL_THEOREMS = ("T12", "T16")
_LINE_THEOREMS = ("T13", "T14", "T15")
_FRACTIONAL_THEOREMS = ("T30", "C31", "C33")
_COMPLEX_INTERVAL_THEOREMS = ("T36", "T38", "T39")
_COMPLEX_LINE_THEOREMS = ("T37", "T41")


@dataclass(frozen=True)
class ExperimentConfig:
    functions: Tuple[dict, ...]
    theorems: Tuple[str, ...]
    sweep: Tuple[int, ...]
    rate_exponents: Tuple[float, ...]
    fractional_orders: Tuple[float, ...] = (0.5, 1.5)
    highorder_orders: Tuple[int, ...] = (1,)
    grid: GridPolicy = field(default_factory=GridPolicy)
    truncation_epsilon: float = 1e-14
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    jobs: int = 1
    seed: int = 0

    @staticmethod
    def from_file(path: str) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                raw = yaml.safe_load(fh)
        except OSError as exc:
            raise ConfigError("path", str(exc))
        except yaml.YAMLError as exc:
            raise ConfigError("yaml", str(exc))
        return ExperimentConfig.from_dict(raw)

    @staticmethod
    def from_dict(raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("document", "top level must be a mapping")
        version = raw.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ConfigError("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")

        def _list(name, caster, default=None, required=False):
            if name not in raw:
                if required:
                    raise ConfigError(name, "missing")
                return default
            val = raw[name]
            if not isinstance(val, (list, tuple)) or not val and required:
                raise ConfigError(name, "must be a non-empty list")
            try:
                return tuple(caster(v) for v in val)
            except (TypeError, ValueError) as exc:
                raise ConfigError(name, str(exc))

        theorems = _list("theorems", str, default=bounds.THEOREM_IDS)
        for t in theorems:
            if t not in bounds.THEOREM_IDS:
                raise ConfigError("theorems", f"unknown theorem id {t!r}")
        sweep = _list("sweep", int, required=True)
        if any(n < 1 for n in sweep):
            raise ConfigError("sweep", "all n must be >= 1")
        exponents = _list("rate_exponents", float, required=True)
        if any(not 0.0 < e < 1.0 for e in exponents):
            raise ConfigError("rate_exponents", "exponents must lie in (0, 1)")

        functions = raw.get("functions")
        if functions is None:
            functions = [{"id": name, "builtin": name}
                         for name in ("linear", "sin", "cos", "abs", "exp", "sq",
                                      "circle", "ramp_pair")]
        seen = set()
        for i, spec in enumerate(functions):
            if not isinstance(spec, dict) or "id" not in spec:
                raise ConfigError(f"functions[{i}]", "each entry needs an id")
            if spec["id"] in seen:
                raise ConfigError(f"functions[{i}].id", f"duplicate id {spec['id']!r}")
            seen.add(spec["id"])
            if "builtin" not in spec and "expr" not in spec:
                raise ConfigError(f"functions[{i}]", "needs 'builtin' or 'expr'")

        grid_raw = raw.get("grid", {})
        if not isinstance(grid_raw, dict):
            raise ConfigError("grid", "must be a mapping")
        grid = GridPolicy(
            x_points=int(grid_raw.get("x_points", 2048)),
            refinement=bool(grid_raw.get("refinement", True)),
            pointwise_points=int(grid_raw.get("pointwise_points", 17)),
            anchors=int(grid_raw.get("anchors", 33)),
            table_points=int(grid_raw.get("table_points", 513)),
        )
        if grid.x_points < 2:
            raise ConfigError("grid.x_points", "must be >= 2")

        output = raw.get("output", {})
        if not isinstance(output, dict):
            raise ConfigError("output", "must be a mapping")

        return ExperimentConfig(
            functions=tuple(dict(s) for s in functions),
            theorems=theorems,
            sweep=sweep,
            rate_exponents=exponents,
            fractional_orders=_list("fractional_orders", float, default=(0.5, 1.5)),
            highorder_orders=_list("highorder_orders", int, default=(1,)),
            grid=grid,
            truncation_epsilon=float(raw.get("truncation_epsilon", 1e-14)),
            csv_path=output.get("csv"),
            json_path=output.get("json"),
        )


# ------------------------------------------------------- function resolution


def _resolve(spec: dict, theorem: str):
    """Corpus variant (or expression-built function) suited to a theorem.

    Returns (object, skip_reason); exactly one is None.
    """
    fid = spec["id"]
    if "expr" in spec:
        domain = tuple(spec["domain"]) if "domain" in spec else None
        if theorem in _COMPLEX_INTERVAL_THEOREMS + _COMPLEX_LINE_THEOREMS:
            return None, "expression functions are real-valued"
        if theorem in _INTERVAL_THEOREMS + _FRACTIONAL_THEOREMS and domain is None:
            return None, "interval theorem needs a domain"
        if theorem in _LINE_THEOREMS:
            if domain is not None:
                return None, "whole-line theorem, function has a compact domain"
            if spec.get("sup_norm") is None:
                return None, "whole-line theorem needs a declared sup_norm"
        orders = int(spec.get("orders", 2 if theorem in _FRACTIONAL_THEOREMS else 0))
        try:
            f = corpus.function_from_expression(
                fid, spec["expr"], domain=domain, orders=orders,
                exact_modulus=spec.get("exact_modulus"),
                sup_norm=spec.get("sup_norm"),
                grid_window=tuple(spec["grid_window"]) if "grid_window" in spec else None,
            )
        except ErfApproxError as exc:
            return None, f"expression rejected: {exc}"
        return f, None

    name = spec["builtin"]
    pools = {
        **{t: corpus.INTERVAL_CORPUS for t in _INTERVAL_THEOREMS},
        **{t: corpus.LINE_CORPUS for t in _LINE_THEOREMS},
        **{t: corpus.FRACTIONAL_CORPUS for t in _FRACTIONAL_THEOREMS},
        **{t: corpus.COMPLEX_INTERVAL_CORPUS for t in _COMPLEX_INTERVAL_THEOREMS},
        **{t: corpus.COMPLEX_LINE_CORPUS for t in _COMPLEX_LINE_THEOREMS},
    }
    pool = pools[theorem]
    if name not in pool:
        return None, f"no {theorem}-compatible variant of builtin {name!r}"
    return pool[name], None


def _theorem_kwargs(cfg: ExperimentConfig, theorem: str, f) -> List[dict]:
    """Expand a theorem into its parameter variants (orders etc.)."""
    if theorem == "T16":
        out = []
        for N in cfg.highorder_orders:
            if len(f.derivatives) >= N:
                out.append({"N": N, "mode": "sup"})
        return out or [{}]
    if theorem == "T30":
        return [{"alpha_frac": af, "mode": "sup"} for af in cfg.fractional_orders]
    if theorem == "C31":
        return [{"alpha_frac": af} for af in cfg.fractional_orders if 0.0 < af < 1.0]
    if theorem == "T38":
        return [{"N": N, "mode": "sup"} for N in cfg.highorder_orders]
    if theorem == "T39":
        return [{"alpha_frac": af} for af in cfg.fractional_orders if af < 2.0]
    return [{}]


def _precheck(theorem: str, f, n: int, exponent: float, kw: dict) -> Optional[str]:
    """Reason to skip this (theorem, function, n) cell, or None."""
    t = float(n) ** (1.0 - exponent)
    if t < 3.0:
        return f"hypothesis n^(1-exponent) >= 3 fails: {n}^{1.0 - exponent:.2f} = {t:.3f}"
    if theorem in _FRACTIONAL_THEOREMS:
        N = math.ceil(kw.get("alpha_frac", 0.5))
        if len(f.derivatives) < N:
            return f"needs derivatives to order {N}, have {len(f.derivatives)}"
    if theorem == "T16" and len(f.derivatives) < kw.get("N", 1):
        return f"needs derivatives to order {kw.get('N', 1)}"
    if theorem in _LINE_THEOREMS and f.sup_norm is None:
        return "whole-line theorem needs a finite sup norm"
    return None


# ------------------------------------------------------- run + serialization


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


@dataclass(frozen=True)
class RunResult:
    rows: Tuple[dict, ...]          # CSV_COLUMNS-keyed, ready to serialize
    skipped: Tuple[dict, ...]
    violated: int
    held: int
    inconclusive: int


def run_verify(cfg: ExperimentConfig) -> RunResult:
    """Execute the configured verification sweep; deterministic output."""
    tasks = []
    skipped = []
    for theorem in cfg.theorems:
        for spec in cfg.functions:
            f, reason = _resolve(spec, theorem)
            if f is None:
                skipped.append({"theorem": theorem, "function": spec["id"],
                                "reason": reason})
                continue
            for exponent in cfg.rate_exponents:
                for kw in _theorem_kwargs(cfg, theorem, f):
                    ns = []
                    for n in cfg.sweep:
                        reason = _precheck(theorem, f, n, exponent, kw)
                        if reason is not None:
                            skipped.append({
                                "theorem": theorem, "function": spec["id"],
                                "n": n, "exponent": exponent, "reason": reason,
                            })
                        else:
                            ns.append(n)
                    if ns:
                        tasks.append((theorem, spec["id"], f, tuple(ns), exponent, kw))

    def run_group(task):
        theorem, fid, f, ns, exponent, kw = task
        try:
            return verify(theorem, f, ns, exponent, cfg.grid, **kw)
        except ErfApproxError as exc:
            return [{"theorem": theorem, "function": fid, "exponent": exponent,
                     "reason": f"group failed: {exc}"}]

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run_group, tasks))
    else:
        results = [run_group(t) for t in tasks]

    rows = []
    for task, reports in zip(tasks, results):
        if reports and isinstance(reports[0], dict):
            skipped.extend(reports)
            continue
        slope = r2 = None
        try:
            slope, r2 = fit_rate([(r.n, r.empirical_error) for r in reports])
        except DegenerateFit:
            pass
        for r in reports:
            rows.append({
                "theorem": r.theorem_id,
                "function": r.function_id,
                "family": r.family,
                "n": r.n,
                "exponent": r.rate_exponent,
                "point_mode": r.point_mode,
                "empirical_error": r.empirical_error,
                "bound": r.bound_value,
                "slack": r.slack,
                "modulus_quality": r.modulus_quality,
                "verdict": r.verdict,
                "slope": slope,
                "r2": r2,
            })

    verdicts = [r["verdict"] for r in rows]
    return RunResult(
        rows=tuple(rows),
        skipped=tuple(skipped),
        violated=verdicts.count("violated"),
        held=verdicts.count("holds"),
        inconclusive=verdicts.count("inconclusive-estimated"),
    )


def write_csv(result: RunResult, path: str):
    with open(path, "w") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in result.rows:
            fh.write(",".join(_fmt(row[c]) for c in CSV_COLUMNS) + "\n")


def write_json(result: RunResult, path: str, extra: Optional[dict] = None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "summary": {
            "rows": len(result.rows),
            "holds": result.held,
            "violated": result.violated,
            "inconclusive_estimated": result.inconclusive,
            "skipped": len(result.skipped),
        },
        "rows": [dict(r) for r in result.rows],
        "skipped": [dict(s) for s in result.skipped],
    }
    if extra:
        doc.update(extra)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ------------------------------------------------------- partition check


def run_partition_check(
    n_list: Sequence[int] = (1, 2, 7, 50, 311),
    alpha_list: Sequence[float] = (0.3, 0.5, 0.7, 0.9),
    grid_points: int = 10_000,
) -> dict:
    """Partition-of-unity invariant suite; returns max deviations."""
    xs = np.linspace(-8.0, 8.0, grid_points)
    max_dev = 0.0
    for n in n_list:
        sums = partition.partition_sum(xs, n)
        max_dev = max(max_dev, float(np.max(np.abs(sums - 1.0))))

    tail_ok = True
    worst_margin = math.inf
    rng = np.random.default_rng(0)
    for n in n_list:
        for alpha in alpha_list:
            if float(n) ** (1.0 - alpha) < 3.0:
                continue
            for x in rng.uniform(-2.0, 2.0, 20):
                s, bound = partition.tail_comparison(float(x), n, alpha)
                worst_margin = min(worst_margin, bound - s)
                if s >= bound:
                    tail_ok = False

    deficiencies = {
        str(n): {
            "a": partition.boundary_deficiency(n, 0.0, 1.0, "a"),
            "b": partition.boundary_deficiency(n, 0.0, 1.0, "b"),
        }
        for n in (10, 100, 1000, 10_000)
    }
    min_deficiency = min(min(d.values()) for d in deficiencies.values())

    return {
        "max_partition_deviation": max_dev,
        "partition_ok": max_dev <= 1e-12,
        "tail_strictly_below_bound": tail_ok,
        "tail_worst_margin": None if worst_margin is math.inf else worst_margin,
        "chi_integral_deviation": abs(partition.chi_integral(-12.0, 12.0) - 1.0),
        "boundary_deficiency": deficiencies,
        "boundary_deficiency_min": min_deficiency,
        "boundary_ok": min_deficiency >= 0.2488,
    }
