"""Instance generation, benchmark loops, and record serialization.

Benchmarks emit one flat record per (instance, order). Wall-clock fields
are measured on every run but written to output files only on request, so
that default outputs are byte-reproducible for a fixed configuration.
Instances may run on a process pool; records are always emitted in
instance order regardless of completion order.
"""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .coloring import InteractionGraph
from .qaoa import (
    OptimizerConfig,
    ae_gain,
    ansatz_depth,
    maxcut_ising,
    run_qaoa,
)
from .metrics import metrics_summary
from .simulator import NoiseConfig, QaoaParams, cut_distribution, qaoa_state
from .trotter import (
    ORDER_BASELINE,
    REORDER_METHODS,
    CostModel,
    UNIT_COST,
    depth_reduction,
)

TIMING_FIELDS = ("reorder_ms", "expand_ms", "baseline_expand_ms", "relative_time")


@dataclass(frozen=True)
class InstanceSpec:
    """A G(n, m) random-graph instance: n vertices, exactly m edges."""

    seed: int
    n_vertices: int
    n_edges: int
    generator: str = "gnm"

    def __post_init__(self):
        if self.generator != "gnm":
            raise ValueError(f"unknown generator {self.generator!r}")
        limit = self.n_vertices * (self.n_vertices - 1) // 2
        if not 1 <= self.n_edges <= limit:
            raise ValueError(
                f"edge count {self.n_edges} infeasible for {self.n_vertices} vertices"
            )

    @property
    def instance_id(self) -> str:
        return f"gnm-s{self.seed}-n{self.n_vertices}-m{self.n_edges}"


def generate_instance(spec: InstanceSpec) -> InteractionGraph:
    """Uniform random simple graph with exactly the requested edge count."""
    rng = random.Random(spec.seed)
    pairs = [
        (j, k)
        for j in range(1, spec.n_vertices + 1)
        for k in range(j + 1, spec.n_vertices + 1)
    ]
    chosen = rng.sample(pairs, spec.n_edges)
    return InteractionGraph(spec.n_vertices, chosen)


def sample_specs(
    count: int,
    vertex_range: tuple[int, int],
    edge_range: tuple[int, int],
    seed: int,
) -> list[InstanceSpec]:
    """Draw instance sizes uniformly from the given bands, one sub-seed each."""
    lo_v, hi_v = vertex_range
    lo_e, hi_e = edge_range
    if lo_v > hi_v or lo_e > hi_e:
        raise ValueError("empty size band")
    rng = random.Random(seed)
    specs = []
    for _ in range(count):
        n = rng.randint(lo_v, hi_v)
        limit = n * (n - 1) // 2
        m = min(rng.randint(lo_e, hi_e), limit)
        specs.append(InstanceSpec(rng.randrange(2**32), n, m))
    return specs


def _depth_instance(
    spec: InstanceSpec,
    orders: tuple[str, ...],
    cost: CostModel,
    formula: str,
    t: float,
) -> list[dict]:
    graph = generate_instance(spec)
    h = maxcut_ising(graph).to_hamiltonian()
    base = {
        "instance": spec.instance_id,
        "seed": spec.seed,
        "n_vertices": spec.n_vertices,
        "n_edges": spec.n_edges,
        "connected": graph.is_connected(),
    }
    records = []
    for order in orders:
        try:
            r = depth_reduction(h, order, cost=cost, formula=formula, t=t)
        except Exception as exc:  # record and move on
            records.append({**base, "order": order, "error": str(exc)})
            continue
        records.append(
            {
                **base,
                "order": order,
                "colors_used": r.colors,
                "baseline_depth": r.baseline_depth,
                "reordered_depth": r.reordered_depth,
                "ratio": r.ratio,
                "reorder_ms": r.reorder_ms,
                "expand_ms": r.expand_ms,
                "baseline_expand_ms": r.baseline_expand_ms,
                "relative_time": (r.reorder_ms + r.expand_ms) / r.baseline_expand_ms
                if r.baseline_expand_ms > 0
                else None,
            }
        )
    return records


def bench_depth(
    specs: list[InstanceSpec],
    orders: tuple[str, ...] = REORDER_METHODS,
    cost: CostModel = UNIT_COST,
    formula: str = "s4",
    t: float = 1.0,
    workers: int = 1,
) -> list[dict]:
    """Depth-reduction benchmark over generated max-cut instances."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    _depth_instance,
                    specs,
                    [orders] * len(specs),
                    [cost] * len(specs),
                    [formula] * len(specs),
                    [t] * len(specs),
                )
            )
    else:
        chunks = [_depth_instance(s, orders, cost, formula, t) for s in specs]
    return [record for chunk in chunks for record in chunk]


def _qaoa_instance(
    spec: InstanceSpec,
    orders: tuple[str, ...],
    p_layers: int,
    noise: NoiseConfig,
    cfg: OptimizerConfig,
) -> list[dict]:
    graph = generate_instance(spec)
    base = {
        "instance": spec.instance_id,
        "seed": spec.seed,
        "n_vertices": spec.n_vertices,
        "n_edges": spec.n_edges,
        "connected": graph.is_connected(),
    }
    try:
        cost_op = maxcut_ising(graph)
        baseline_info = ansatz_depth(graph, ORDER_BASELINE, p_layers, noise.cost)
        traces = {}
        records = []
        for order in (ORDER_BASELINE, *orders):
            info = (
                baseline_info
                if order == ORDER_BASELINE
                else ansatz_depth(graph, order, p_layers, noise.cost)
            )
            trace = run_qaoa(graph, order, p_layers, noise, cfg)
            traces[order] = trace
            state = qaoa_state(QaoaParams.from_vector(trace.best_params), cost_op)
            summary = metrics_summary(cut_distribution(state, graph))
            records.append(
                {
                    **base,
                    "order": order,
                    "colors_used": info.colors,
                    "baseline_depth": baseline_info.total_depth,
                    "reordered_depth": info.total_depth,
                    "ratio": info.total_depth / baseline_info.total_depth,
                    "best_ae": trace.best_value,
                    "gain": ae_gain(trace, traces[ORDER_BASELINE]),
                    **summary,
                }
            )
        return records
    except Exception as exc:
        return [{**base, "order": "-", "error": str(exc)}]


def bench_qaoa(
    specs: list[InstanceSpec],
    orders: tuple[str, ...] = REORDER_METHODS,
    p_layers: int = 2,
    noise: NoiseConfig = NoiseConfig(rate=0.0),
    cfg: OptimizerConfig = OptimizerConfig(),
    workers: int = 1,
) -> list[dict]:
    """QAOA benchmark: baseline and reordered runs share each instance seed."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    _qaoa_instance,
                    specs,
                    [orders] * len(specs),
                    [p_layers] * len(specs),
                    [noise] * len(specs),
                    [cfg] * len(specs),
                )
            )
    else:
        chunks = [_qaoa_instance(s, orders, p_layers, noise, cfg) for s in specs]
    return [record for chunk in chunks for record in chunk]


def _visible_fields(records: list[dict], timing: bool) -> list[str]:
    fields: list[str] = []
    for record in records:
        for key in record:
            if key not in fields:
                fields.append(key)
    if not timing:
        fields = [f for f in fields if f not in TIMING_FIELDS]
    return fields


def records_to_jsonl(records: list[dict], timing: bool = False) -> str:
    """One JSON object per line, fixed key order."""
    fields = _visible_fields(records, timing)
    lines = []
    for record in records:
        row = {k: record[k] for k in fields if k in record}
        lines.append(json.dumps(row, separators=(", ", ": ")))
    return "\n".join(lines) + "\n" if lines else ""


def records_to_csv(records: list[dict], timing: bool = False) -> str:
    fields = _visible_fields(records, timing)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(record)
    return buf.getvalue()


def render_records(records: list[dict], fmt: str, timing: bool = False) -> str:
    if fmt == "json":
        return records_to_jsonl(records, timing)
    if fmt == "csv":
        return records_to_csv(records, timing)
    raise ValueError(f"unknown format {fmt!r}")


def _mean(xs: list[float]) -> float | None:
    return sum(xs) / len(xs) if xs else None


def _median(xs: list[float]) -> float | None:
    if not xs:
        return None
    ordered = sorted(xs)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[mid]
    return 0.5 * (ordered[mid - 1] + ordered[mid])


def summary_to_csv(
    summary: dict[str, dict[str, float | int | None]], timing: bool = False
) -> str:
    """Aggregate table (one row per order) for plotting."""
    orders = sorted(summary)
    fields = ["order"]
    for order in orders:
        for key in summary[order]:
            if key not in fields:
                fields.append(key)
    if not timing:
        fields = [f for f in fields if "time" not in f and not f.endswith("_ms")]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for order in orders:
        writer.writerow({"order": order, **summary[order]})
    return buf.getvalue()


def summarize_depth(records: list[dict]) -> dict[str, dict[str, float | int | None]]:
    """Per-order mean depth ratio and mean relative processing time."""
    by_order: dict[str, dict[str, list[float]]] = {}
    for r in records:
        if "error" in r:
            continue
        acc = by_order.setdefault(r["order"], {"ratio": [], "relative_time": []})
        acc["ratio"].append(r["ratio"])
        if r.get("relative_time") is not None:
            acc["relative_time"].append(r["relative_time"])
    return {
        order: {
            "count": len(acc["ratio"]),
            "mean_ratio": _mean(acc["ratio"]),
            "mean_relative_time": _mean(acc["relative_time"]),
        }
        for order, acc in sorted(by_order.items())
    }


def summarize_qaoa(records: list[dict]) -> dict[str, dict[str, float | int | None]]:
    """Per-order mean/median gain and mean best AE/e."""
    by_order: dict[str, dict[str, list[float]]] = {}
    for r in records:
        if "error" in r or r["order"] == ORDER_BASELINE:
            continue
        acc = by_order.setdefault(r["order"], {"gain": [], "best_ae": [], "ratio": []})
        acc["gain"].append(r["gain"])
        acc["best_ae"].append(r["best_ae"])
        acc["ratio"].append(r["ratio"])
    return {
        order: {
            "count": len(acc["gain"]),
            "mean_gain": _mean(acc["gain"]),
            "median_gain": _median(acc["gain"]),
            "mean_best_ae": _mean(acc["best_ae"]),
            "mean_depth_ratio": _mean(acc["ratio"]),
        }
        for order, acc in sorted(by_order.items())
    }
