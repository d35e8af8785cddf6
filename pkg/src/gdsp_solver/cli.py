"""
CLI interface for gdsp-solver
"""

import functools
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import click
from loguru import logger
from pydantic import ValidationError

from . import __version__
from .errors import GdspError, HypothesisViolation
from .io.instance_handler import InstanceHandler, instance_hash
from .io.report_writer import ReportWriter, labelled_sizes, rational
from .logic.covering_lp import check_feasible, cutset_lower_bound, solve_covering_lp
from .logic.fixtures import (
    storage_gap_instance,
    storage_gap_optimal_code,
    storage_gap_sup_code,
)
from .logic.flow_bridge import build_flow_network, export_edge_list, rate_one_feasible
from .logic.graph_ops import (
    check_smooth,
    colors_used,
    compute_frontiers,
    monochrome_to_hypergraph,
    validate_instance,
)
from .logic.linear_codes import (
    build_mds_single_file,
    hyperedge_verify,
    stored_sizes,
    total_storage,
    verify_valid,
)
from .logic.oracle import brute_force_optimum, certify_match, oracle_cluster_solver
from .logic.superposition import (
    ClusterSolver,
    build_superposition_code,
    lp_cluster_solver,
    peeling_cluster_solver,
    sup,
    sup_colors,
    theorem1_decompose,
    theorem2_decompose,
)
from .types.code import LinearCode
from .types.decomposition import DecompositionResult
from .types.diagnostics import SolveReport
from .types.instance import (
    ColoredEdge,
    ColoredGraph,
    FileSpec,
    GdspInstance,
    HyperGraph,
)
from .types.oracle import DEFAULT_MAX_BITS, OracleConfig

NEGATIVE_VERDICT = 2


class RationalType(click.ParamType):
    """Exact rational given as ``p``, ``p/q`` or a terminating decimal."""

    name = "rational"

    def convert(self, value: Any, param, ctx) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number", param, ctx)


RATIONAL = RationalType()


def _handle_errors(command: Callable[..., Optional[int]]) -> Callable[..., None]:
    """Exit 1 on toolkit / validation errors, or with the command's own status."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            status = command(*args, **kwargs)
        except HypothesisViolation as e:
            message = f"error: hypothesis '{e.hypothesis}' does not hold: {e}"
            click.echo(message, err=True)
            sys.exit(1)
        except (GdspError, ValidationError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(1)
        if status:
            sys.exit(status)

    return wrapper


def _report_options(command: Callable) -> Callable:
    command = click.option(
        "--output",
        type=click.Path(dir_okay=False),
        help="Write the report to this file instead of stdout",
    )(command)
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "text"]),
        default="json",
        show_default=True,
        help="Report format (text is YAML)",
    )(command)


def _oracle_options(command: Callable) -> Callable:
    options = [
        click.option(
            "--max-f", type=int, default=2, show_default=True, help="Largest F to try"
        ),
        click.option(
            "--field-order", type=int, help="Field order q (default: the instance's)"
        ),
        click.option(
            "--time-cap",
            type=float,
            default=60.0,
            show_default=True,
            help="Seconds before the search gives up",
        ),
        click.option("--budget-cap", type=RATIONAL, help="Skip totals above this"),
        click.option(
            "--max-bits",
            type=float,
            default=DEFAULT_MAX_BITS,
            show_default=True,
            help="Refuse instances with K·N·max_f·log2(q) above this",
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _oracle_config(
    instance: GdspInstance,
    max_f: int,
    field_order: Optional[int],
    time_cap: float,
    budget_cap: Optional[Fraction],
    max_bits: float,
) -> OracleConfig:
    return OracleConfig(
        max_f=max_f,
        field_order=field_order or instance.spec.field_order,
        budget_cap=budget_cap,
        time_cap=time_cap,
        max_bits=max_bits,
    )


def _header(command: str, instance: GdspInstance) -> Dict[str, Any]:
    return {"command": command, "instance_hash": instance.instance_hash}


def _labels(instance: GdspInstance) -> List[str]:
    return instance.labels(range(1, instance.num_vertices + 1))


def _edge(instance: GdspInstance, edge: Union[ColoredEdge, Sequence[int]]) -> Dict:
    if isinstance(edge, ColoredEdge):
        return {"vertices": instance.labels([edge.u, edge.v]), "color": edge.color}
    return {"vertices": instance.labels(edge), "color": 1}


def _graph(instance: GdspInstance) -> ColoredGraph:
    """Colored graph of the instance, rejected when any edge is illegal."""
    if instance.graph is None:
        raise GdspError("this command needs a colored graph, got hyperedges")
    violations = validate_instance(instance.graph, instance.spec)
    if violations:
        raise GdspError(
            f"{len(violations)} illegal edge(s); first: {violations[0].message}"
        )
    return instance.graph


def _single_file(instance: GdspInstance) -> HyperGraph:
    if instance.hypergraph is not None:
        return instance.hypergraph
    return monochrome_to_hypergraph(_graph(instance))


def _decomposition(
    instance: GdspInstance, result: DecompositionResult
) -> Dict[str, Any]:
    labels = _labels(instance)
    return {
        "applicability": result.applicability,
        "total": rational(result.total),
        "combined": labelled_sizes(result.combined.sizes, labels),
        "clusters": [
            {
                "index": index,
                "total": rational(allocation.total),
                "allocation": labelled_sizes(allocation.sizes, labels),
            }
            for index, allocation in enumerate(result.per_cluster_allocations, 1)
        ],
    }


def _cluster_solver(
    name: str, cfg: OracleConfig, num_files: int
) -> ClusterSolver:
    if name == "lp":
        return lp_cluster_solver
    if name == "oracle":
        return oracle_cluster_solver(cfg, num_files)
    return peeling_cluster_solver


@click.group()
@click.version_option(version=__version__, prog_name="gdsp-solver")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Threshold for diagnostics written to stderr",
)
def cli(log_level: str):
    """gdsp-solver: Minimum storage for graphical distributed storage"""
    logger.remove()
    logger.add(lambda message: sys.stderr.write(message), level=log_level.upper())


@cli.command()
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--emit-code",
    type=click.Path(dir_okay=False),
    help="Write an MDS code achieving the optimum",
)
@click.option("--field-order", type=int, help="Field order for --emit-code")
@_report_options
@_handle_errors
def solve(
    instance_path: str,
    emit_code: Optional[str],
    field_order: Optional[int],
    fmt: str,
    output: Optional[str],
):
    """Solve a single-file instance exactly with the covering LP"""
    handler = InstanceHandler()
    instance = handler.read_instance(instance_path)
    h = _single_file(instance)
    solution = solve_covering_lp(h)

    summary = SolveReport(
        total=solution.optimum,
        total_source="covering-lp",
        allocation=solution.allocation,
        lower_bound=solution.optimum,
        lower_bound_source="dual-certificate",
    )
    code_report: Dict[str, Any] = {}

    if emit_code:
        f = math.lcm(1, *(size.denominator for size in solution.allocation.sizes))
        spec = FileSpec(
            num_files=1,
            symbols_per_file=f,
            field_order=field_order or instance.spec.field_order,
        )
        code = build_mds_single_file(h, solution.allocation, spec)
        verification = hyperedge_verify(code, h)
        handler.write_code(emit_code, code)
        logger.info(f"Wrote MDS code with F={f} to {emit_code}")
        summary = summary.model_copy(update={"witness": code})
        code_report = {
            "path": emit_code,
            "symbols_per_file": f,
            "field_order": spec.field_order,
            "valid": verification.valid,
            "total": rational(verification.total),
        }

    report = _header("solve", instance)
    report.update(
        {
            "optimum": rational(summary.total),
            "allocation": labelled_sizes(summary.allocation.sizes, _labels(instance)),
            "dual_certificate": [
                {"hyperedge": instance.labels(edge), "weight": rational(weight)}
                for edge, weight in zip(h.hyperedges, solution.dual_certificate)
            ],
            "provenance": {
                "optimum": summary.total_source,
                "lower_bound": summary.lower_bound_source,
                "witness": "mds-code" if summary.witness is not None else None,
            },
        }
    )
    if code_report:
        report["code"] = code_report

    ReportWriter(fmt, output).write(report)


@cli.command()
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--partition",
    "partition_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Partition file (overrides the one embedded in the instance)",
)
@click.option(
    "--cluster-solver",
    type=click.Choice(["peel", "lp", "oracle"]),
    default="peel",
    show_default=True,
    help="How each color-class subgraph is solved",
)
@click.option(
    "--global",
    "global_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Feasible allocation to split cluster by cluster (singleton color classes)",
)
@click.option(
    "--code",
    "code_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Valid code to split along a one-sided two-cluster partition",
)
@click.option(
    "--emit-code",
    type=click.Path(dir_okay=False),
    help="Write the explicit per-color superposition code",
)
@_oracle_options
@_report_options
@_handle_errors
def decompose(
    instance_path: str,
    partition_path: Optional[str],
    cluster_solver: str,
    global_path: Optional[str],
    code_path: Optional[str],
    emit_code: Optional[str],
    max_f: int,
    field_order: Optional[int],
    time_cap: float,
    budget_cap: Optional[Fraction],
    max_bits: float,
    fmt: str,
    output: Optional[str],
):
    """Check smoothness and superpose per-cluster solutions"""
    handler = InstanceHandler()
    instance = handler.read_instance(instance_path)
    g = _graph(instance)
    partition = (
        handler.read_partition(partition_path, instance)
        if partition_path
        else instance.partition
    )
    if partition is None:
        raise GdspError("no partition: pass --partition or embed one in the instance")

    report = _header("decompose", instance)
    smoothness = check_smooth(g, partition)
    report["smooth"] = smoothness.smooth
    report["violations"] = [
        {"kind": v.kind, "edge": _edge(instance, v.edge), "message": v.message}
        for v in smoothness.violations
    ]
    if smoothness.smooth:
        frontiers = compute_frontiers(g, partition)
        report["frontiers"] = [
            {"i": i, "j": j, "vertices": instance.labels(frontiers.frontier(i, j))}
            for i in range(1, partition.num_clusters + 1)
            for j in range(1, partition.num_clusters + 1)
        ]

    cfg = _oracle_config(instance, max_f, field_order, time_cap, budget_cap, max_bits)
    solver = _cluster_solver(cluster_solver, cfg, instance.spec.num_files)
    result = sup(g, partition, solver)
    report["sup"] = _decomposition(instance, result)
    report["sup"]["cluster_solver"] = cluster_solver
    for entry, colors in zip(report["sup"]["clusters"], partition.color_classes):
        entry["colors"] = list(colors)

    if global_path:
        allocation = handler.read_allocation(global_path)
        report["theorem1"] = _decomposition(
            instance, theorem1_decompose(g, partition, allocation)
        )
        report["theorem1"]["global_total"] = rational(allocation.total)

    if code_path:
        code = handler.read_code(code_path)
        report["theorem2"] = _decomposition(
            instance, theorem2_decompose(code, g, partition)
        )
        report["theorem2"]["witness_total"] = rational(total_storage(code))

    if emit_code:
        spec = FileSpec(
            num_files=instance.spec.num_files,
            symbols_per_file=instance.spec.symbols_per_file,
            field_order=field_order or instance.spec.field_order,
        )
        code = build_superposition_code(g, spec)
        handler.write_code(emit_code, code)
        report["code"] = {
            "path": emit_code,
            "symbols_per_file": code.spec.symbols_per_file,
            "field_order": code.spec.field_order,
            "total": rational(total_storage(code)),
        }

    ReportWriter(fmt, output).write(report)


@cli.command()
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("code_path", type=click.Path(exists=True, dir_okay=False))
@_report_options
@_handle_errors
def verify(instance_path: str, code_path: str, fmt: str, output: Optional[str]):
    """Check that a linear code lets every edge decode its file"""
    handler = InstanceHandler()
    instance = handler.read_instance(instance_path)
    code = handler.read_code(code_path)
    if instance.graph is not None:
        verification = verify_valid(code, _graph(instance))
    else:
        assert instance.hypergraph is not None
        verification = hyperedge_verify(code, instance.hypergraph)

    labels = _labels(instance)
    report = _header("verify", instance)
    report.update(
        {
            "valid": verification.valid,
            "failures": [_edge(instance, edge) for edge in verification.failures],
            "stored_sizes": labelled_sizes(verification.stored_sizes, labels),
            "rank_sizes": labelled_sizes(verification.rank_sizes, labels),
            "total": rational(verification.total),
            "symbols_per_file": code.spec.symbols_per_file,
        }
    )
    ReportWriter(fmt, output).write(report)
    return 0 if verification.valid else NEGATIVE_VERDICT


@cli.command()
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--claim", type=RATIONAL, help="Claimed optimum to certify")
@click.option(
    "--code-output",
    type=click.Path(dir_okay=False),
    help="Write the witness code here",
)
@_oracle_options
@_report_options
@_handle_errors
def oracle(
    instance_path: str,
    claim: Optional[Fraction],
    code_output: Optional[str],
    max_f: int,
    field_order: Optional[int],
    time_cap: float,
    budget_cap: Optional[Fraction],
    max_bits: float,
    fmt: str,
    output: Optional[str],
):
    """Brute-force the minimum over small linear codes"""
    handler = InstanceHandler()
    instance = handler.read_instance(instance_path)
    structure: Union[ColoredGraph, HyperGraph]
    if instance.graph is not None:
        structure = _graph(instance)
    else:
        assert instance.hypergraph is not None
        structure = instance.hypergraph
    cfg = _oracle_config(instance, max_f, field_order, time_cap, budget_cap, max_bits)
    num_files = instance.spec.num_files

    report = _header("oracle", instance)
    verdict = None
    if claim is not None:
        certification = certify_match(structure, claim, cfg, num_files)
        result = certification.oracle
        verdict = certification.verdict
        report["certification"] = {"claimed": rational(claim), "verdict": verdict}
    else:
        result = brute_force_optimum(structure, cfg, num_files)

    report.update(
        {
            "status": result.status,
            "search_complete": result.search_complete,
            "lower_bound": rational(result.lower_bound),
            "total": rational(result.total) if result.total is not None else None,
            "symbols_per_file": result.symbols_per_file,
            "field_order": cfg.field_order,
            "max_f": cfg.max_f,
        }
    )
    if result.witness is not None:
        report["allocation"] = labelled_sizes(
            stored_sizes(result.witness), _labels(instance)
        )
        if code_output:
            handler.write_code(code_output, result.witness)
            report["code_path"] = code_output

    ReportWriter(fmt, output).write(report)
    if verdict is not None and verdict != "matched":
        return NEGATIVE_VERDICT
    return 0


@cli.command()
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--partition",
    "partition_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Partition to superpose over in addition to the per-color split",
)
@_report_options
@_handle_errors
def bounds(
    instance_path: str, partition_path: Optional[str], fmt: str, output: Optional[str]
):
    """Cut-set lower bound next to the best known upper bound"""
    handler = InstanceHandler()
    instance = handler.read_instance(instance_path)
    candidates: Dict[str, Fraction] = {}

    if instance.hypergraph is not None or len(colors_used(_graph(instance))) <= 1:
        optimum = solve_covering_lp(_single_file(instance)).optimum
        lower, lower_source = optimum, "covering-lp"
        candidates["covering-lp"] = optimum
    else:
        g = _graph(instance)
        lower, lower_source = cutset_lower_bound(g), "cut-set"
        per_color = [[c] for c in colors_used(g)]
        candidates["per-color-superposition"] = sup_colors(
            g, per_color, lp_cluster_solver
        ).total
        partition = (
            handler.read_partition(partition_path, instance)
            if partition_path
            else instance.partition
        )
        if partition is not None:
            candidates["partition-superposition"] = sup(
                g, partition, peeling_cluster_solver
            ).total

    upper_source = min(candidates, key=lambda name: (candidates[name], name))
    upper = candidates[upper_source]
    report = _header("bounds", instance)
    report.update(
        {
            "lower_bound": {"value": rational(lower), "source": lower_source},
            "upper_bound": {"value": rational(upper), "source": upper_source},
            "gap": rational(upper - lower),
            "candidates": {name: rational(value) for name, value in candidates.items()},
        }
    )
    ReportWriter(fmt, output).write(report)


@cli.command()
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("allocation_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--export",
    "export_path",
    type=click.Path(dir_okay=False),
    help="Write the network as a plain-text edge list",
)
@_report_options
@_handle_errors
def flow(
    instance_path: str,
    allocation_path: str,
    export_path: Optional[str],
    fmt: str,
    output: Optional[str],
):
    """Max-flow check of an allocation on the network-flow reduction"""
    handler = InstanceHandler()
    instance = handler.read_instance(instance_path)
    h = _single_file(instance)
    allocation = handler.read_allocation(allocation_path)
    network = build_flow_network(h, allocation)
    feasibility = rate_one_feasible(network)

    report = _header("flow", instance)
    report.update(
        {
            "feasible": feasibility.feasible,
            "covering_feasible": check_feasible(h, allocation),
            "num_nodes": network.num_nodes,
            "sinks": [
                {
                    "sink": sink,
                    "hyperedge": instance.labels(edge),
                    "max_flow": rational(cut),
                }
                for sink, edge, cut in zip(
                    network.sinks, h.hyperedges, feasibility.min_cut_per_sink
                )
            ],
        }
    )
    writer = ReportWriter(fmt, output)
    if export_path:
        writer.write_text(export_path, export_edge_list(network))
        report["export_path"] = export_path

    writer.write(report)
    return 0 if feasibility.feasible else NEGATIVE_VERDICT


@cli.command()
@click.argument("directory", type=click.Path(file_okay=False))
@_report_options
@_handle_errors
def fixtures(directory: str, fmt: str, output: Optional[str]):
    """Write the bundled storage-gap instance and its two reference codes"""
    handler = InstanceHandler()
    instance = storage_gap_instance()
    instance = instance.model_copy(update={"instance_hash": instance_hash(instance)})
    root = Path(directory)

    codes: Dict[str, LinearCode] = {
        "storage-gap-sup-code.json": storage_gap_sup_code(),
        "storage-gap-optimal-code.json": storage_gap_optimal_code(),
    }
    handler.write_instance(str(root / "storage-gap.json"), instance)
    files: List[Dict[str, Any]] = [{"name": "storage-gap.json", "kind": "instance"}]
    for name, code in codes.items():
        handler.write_code(str(root / name), code)
        total = rational(total_storage(code))
        files.append({"name": name, "kind": "code", "total": total})

    report = _header("fixtures", instance)
    report["files"] = files
    ReportWriter(fmt, output).write(report)


if __name__ == "__main__":
    cli()
