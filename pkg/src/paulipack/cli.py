"""Command-line interface.

Exit codes: 0 success, 1 input/usage error, 2 internal invariant violation.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import harness
from .coloring import (
    build_clique_presentation,
    build_interaction_graph,
    count_colors,
    misra_gries_color,
    parse_graph,
    saturation_color,
)
from .errors import InvariantError
from .metrics import CutDistribution, HypervolumeConfig, metrics_summary
from .pauli import Hamiltonian, parse_hamiltonian, to_ising
from .qaoa import OptimizerConfig, ansatz_depth, maxcut_ising, run_qaoa
from .simulator import NoiseConfig, QaoaParams, cut_distribution, qaoa_state
from .trotter import (
    ORDER_BASELINE,
    ORDER_MISRA_GRIES,
    ORDER_SATURATION,
    REORDER_METHODS,
    CostModel,
    depth_reduction,
    expand_formula,
    reorder_hamiltonian,
)

ORDER_CHOICES = click.Choice([ORDER_BASELINE, ORDER_SATURATION, ORDER_MISRA_GRIES])
METHOD_CHOICES = click.Choice(list(REORDER_METHODS))
COST_CHOICES = click.Choice(["unit", "ladder"])
FORMAT_CHOICES = click.Choice(["json", "csv"])


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _load_hamiltonian(path: str, as_kind: str) -> Hamiltonian:
    """Read a Hamiltonian, optionally via a max-cut graph file."""
    text = _read(path)
    if as_kind == "graph":
        return maxcut_ising(parse_graph(text)).to_hamiltonian()
    return parse_hamiltonian(text)


def _json_line(payload: dict) -> str:
    return json.dumps(payload, separators=(", ", ": "))


@click.group()
def cli():
    """Reorder Pauli Hamiltonians by graph coloring, schedule the Trotter
    circuit depth, and measure the effect on QAOA max-cut."""


@cli.command()
@click.option("--vertices", "-n", type=int, required=True, help="Vertex count.")
@click.option("--edges", "-m", type=int, required=True, help="Exact edge count.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None, help="Output path (default stdout).")
def gen(vertices: int, edges: int, seed: int, out: str | None):
    """Generate a uniform random G(n, m) instance in graph text format."""
    spec = harness.InstanceSpec(seed=seed, n_vertices=vertices, n_edges=edges)
    _emit(harness.generate_instance(spec).to_text(), out)


@cli.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--method", type=METHOD_CHOICES, required=True)
@click.option(
    "--as",
    "as_kind",
    type=click.Choice(["auto", "hamiltonian", "graph"]),
    default="auto",
    show_default=True,
    help="Input kind; auto = hamiltonian for saturation, graph for misra-gries.",
)
@click.option("--out", type=click.Path(), default=None)
def color(input_file: str, method: str, as_kind: str, out: str | None):
    """Color a Hamiltonian's overlap graph or a graph's edges."""
    text = _read(input_file)
    if as_kind == "auto":
        as_kind = "hamiltonian" if method == ORDER_SATURATION else "graph"
    if method == ORDER_SATURATION:
        h = (
            maxcut_ising(parse_graph(text)).to_hamiltonian()
            if as_kind == "graph"
            else parse_hamiltonian(text)
        )
        coloring = saturation_color(build_clique_presentation(h))
        colors = {str(v): c for v, c in sorted(coloring.items())}
    else:
        graph = (
            parse_graph(text)
            if as_kind == "graph"
            else build_interaction_graph(to_ising(parse_hamiltonian(text)))
        )
        coloring = misra_gries_color(graph)
        colors = {f"{j}-{k}": c for (j, k), c in sorted(coloring.items())}
    payload = {"method": method, "colors_used": count_colors(coloring), "colors": colors}
    _emit(json.dumps(payload, indent=2) + "\n", out)


@cli.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--method", type=METHOD_CHOICES, required=True)
@click.option(
    "--as",
    "as_kind",
    type=click.Choice(["hamiltonian", "graph"]),
    default="hamiltonian",
    show_default=True,
)
@click.option("--out", type=click.Path(), default=None)
def reorder(input_file: str, method: str, as_kind: str, out: str | None):
    """Rewrite a Hamiltonian as color-grouped layers."""
    h = _load_hamiltonian(input_file, as_kind)
    layered, _ = reorder_hamiltonian(h, method)
    _emit(layered.to_text(), out)


@cli.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--formula", default="s4", show_default=True, help="'s4' or 's1:<k>'.")
@click.option("--t", type=float, default=1.0, show_default=True)
@click.option(
    "--as",
    "as_kind",
    type=click.Choice(["hamiltonian", "graph"]),
    default="hamiltonian",
    show_default=True,
)
@click.option("--out", type=click.Path(), default=None)
def trotter(input_file: str, formula: str, t: float, as_kind: str, out: str | None):
    """Expand a Hamiltonian into its rotation-block stream."""
    h = _load_hamiltonian(input_file, as_kind)
    _emit(expand_formula(h, formula, t).to_text(), out)


@cli.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--order", type=ORDER_CHOICES, default=ORDER_SATURATION, show_default=True)
@click.option("--cost", type=COST_CHOICES, default="unit", show_default=True)
@click.option("--formula", default="s4", show_default=True)
@click.option("--t", type=float, default=1.0, show_default=True)
@click.option(
    "--as",
    "as_kind",
    type=click.Choice(["hamiltonian", "graph"]),
    default="graph",
    show_default=True,
)
@click.option("--out", type=click.Path(), default=None)
def depth(input_file: str, order: str, cost: str, formula: str, t: float, as_kind: str, out: str | None):
    """Baseline vs reordered scheduled depth of the expansion."""
    h = _load_hamiltonian(input_file, as_kind)
    r = depth_reduction(h, order, cost=CostModel(cost), formula=formula, t=t)
    payload = {
        "baseline_depth": r.baseline_depth,
        "reordered_depth": r.reordered_depth,
        "ratio": r.ratio,
        "colors": r.colors,
        "expand_ms": r.expand_ms,
        "reorder_ms": r.reorder_ms,
    }
    _emit(_json_line(payload) + "\n", out)


@cli.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--order", type=ORDER_CHOICES, default=ORDER_BASELINE, show_default=True)
@click.option("--layers", "-p", type=int, default=2, show_default=True)
@click.option("--noise-rate", type=float, default=1e-3, show_default=True)
@click.option("--max-iter", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cost", type=COST_CHOICES, default="unit", show_default=True)
@click.option("--dist-out", type=click.Path(), default=None, help="Write the best state's cut distribution JSON here.")
@click.option("--out", type=click.Path(), default=None)
def qaoa(input_file, order, layers, noise_rate, max_iter, seed, cost, dist_out, out):
    """Optimize noisy AE/e on a max-cut instance under one term order."""
    graph = parse_graph(_read(input_file))
    noise = NoiseConfig(rate=noise_rate, cost=CostModel(cost))
    cfg = OptimizerConfig(max_iterations=max_iter, seed=seed)
    trace = run_qaoa(graph, order, layers, noise, cfg)
    info = ansatz_depth(graph, order, layers, noise.cost)
    payload = {
        "order": order,
        "depth": info.total_depth,
        "colors": info.colors,
        "iterations": list(trace.values),
        "cumulative_max": list(trace.cumulative_max),
        "best_ae": trace.best_value,
        "best_params": list(trace.best_params),
    }
    if dist_out:
        state = qaoa_state(QaoaParams.from_vector(trace.best_params), maxcut_ising(graph))
        Path(dist_out).write_text(cut_distribution(state, graph).to_json() + "\n")
    _emit(_json_line(payload) + "\n", out)


@cli.command()
@click.argument("dist_file", type=click.Path(exists=True))
@click.option("--graph", "graph_file", type=click.Path(exists=True), required=True)
@click.option("--lambda", "hv_lambda", type=float, default=1.0, show_default=True, help="Hypervolume cut-value weight.")
@click.option("--out", type=click.Path(), default=None)
def metrics(dist_file: str, graph_file: str, hv_lambda: float, out: str | None):
    """Cut-distribution metrics from a serialized distribution."""
    graph = parse_graph(_read(graph_file))
    mapping = json.loads(_read(dist_file))
    dist = CutDistribution.from_mapping(graph, mapping)
    summary = metrics_summary(dist, HypervolumeConfig(hv_lambda))
    _emit(_json_line(summary) + "\n", out)


def _spec_options(count, v_min, v_max, e_min, e_max):
    def wrap(fn):
        fn = click.option("--count", type=int, default=count, show_default=True)(fn)
        fn = click.option("--v-min", type=int, default=v_min, show_default=True)(fn)
        fn = click.option("--v-max", type=int, default=v_max, show_default=True)(fn)
        fn = click.option("--e-min", type=int, default=e_min, show_default=True)(fn)
        fn = click.option("--e-max", type=int, default=e_max, show_default=True)(fn)
        fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
        fn = click.option("--workers", type=int, default=1, show_default=True)(fn)
        fn = click.option("--out", type=click.Path(), default=None)(fn)
        fn = click.option("--format", "fmt", type=FORMAT_CHOICES, default="json", show_default=True)(fn)
        fn = click.option("--summary-out", type=click.Path(), default=None, help="Also write a per-order aggregate CSV here.")(fn)
        fn = click.option("--timing", is_flag=True, help="Include wall-clock fields (not byte-reproducible).")(fn)
        return fn

    return wrap


@cli.command(name="bench-depth")
@_spec_options(count=100, v_min=32, v_max=64, e_min=16, e_max=256)
@click.option("--orders", default=",".join(REORDER_METHODS), show_default=True)
@click.option("--cost", type=COST_CHOICES, default="unit", show_default=True)
@click.option("--formula", default="s4", show_default=True)
def bench_depth_cmd(count, v_min, v_max, e_min, e_max, seed, workers, out, fmt, summary_out, timing, orders, cost, formula):
    """Depth-reduction benchmark on random max-cut instances."""
    specs = harness.sample_specs(count, (v_min, v_max), (e_min, e_max), seed)
    order_list = tuple(o.strip() for o in orders.split(",") if o.strip())
    records = harness.bench_depth(
        specs, order_list, cost=CostModel(cost), formula=formula, workers=workers
    )
    _emit(harness.render_records(records, fmt, timing), out)
    summary = harness.summarize_depth(records)
    if summary_out:
        Path(summary_out).write_text(harness.summary_to_csv(summary, timing))
    for order, stats in summary.items():
        click.echo(f"# {order}: {stats}", err=True)


@cli.command(name="bench-qaoa")
@_spec_options(count=30, v_min=6, v_max=9, e_min=7, e_max=11)
@click.option("--orders", default=",".join(REORDER_METHODS), show_default=True)
@click.option("--layers", "-p", type=int, default=2, show_default=True)
@click.option("--noise-rate", type=float, default=1e-3, show_default=True)
@click.option("--max-iter", type=int, default=200, show_default=True)
@click.option("--cost", type=COST_CHOICES, default="unit", show_default=True)
def bench_qaoa_cmd(count, v_min, v_max, e_min, e_max, seed, workers, out, fmt, summary_out, timing, orders, layers, noise_rate, max_iter, cost):
    """QAOA gain benchmark on random max-cut instances."""
    specs = harness.sample_specs(count, (v_min, v_max), (e_min, e_max), seed)
    order_list = tuple(o.strip() for o in orders.split(",") if o.strip())
    noise = NoiseConfig(rate=noise_rate, cost=CostModel(cost))
    cfg = OptimizerConfig(max_iterations=max_iter, seed=seed)
    records = harness.bench_qaoa(
        specs, order_list, p_layers=layers, noise=noise, cfg=cfg, workers=workers
    )
    _emit(harness.render_records(records, fmt, timing), out)
    summary = harness.summarize_qaoa(records)
    if summary_out:
        Path(summary_out).write_text(harness.summary_to_csv(summary, timing))
    for order, stats in summary.items():
        click.echo(f"# {order}: {stats}", err=True)


def main(argv=None) -> int:
    """Entry point mapping exceptions to the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except InvariantError as exc:
        click.echo(f"internal error: {exc}", err=True)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
