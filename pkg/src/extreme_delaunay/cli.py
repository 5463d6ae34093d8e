"""
CLI interface for extreme-delaunay.
Uses Typer for commands and Rich for output.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 usage or
parse error, 3 resource budget exceeded or incomplete exploration.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError
from rich import box
from rich.console import Console
from rich.table import Table

from extreme_delaunay.automations.explorer import AdjacencyExplorer, initialize, initialize_from_ray
from extreme_delaunay.automations.facets import harvest_facets
from extreme_delaunay.automations.reports import build_report, write_reports
from extreme_delaunay.config import RunConfig, configure_logging, get_settings
from extreme_delaunay.errors import EnumerationBudgetExceeded, HypermetricError, ParseError
from extreme_delaunay.models.enums import IsometryMode
from extreme_delaunay.models.lattice import CVPQuery
from extreme_delaunay.services.cone_geometry import facet_orbits, lift_orbits
from extreme_delaunay.services.delaunay import find_affine_bases, is_extreme_polytope
from extreme_delaunay.services.formats import (
    format_bvector,
    format_rational,
    format_ray,
    parse_distance_vector,
    parse_gram,
    parse_polytope,
    parse_rational_list,
)
from extreme_delaunay.services.hypermetric import ann, brute_force_is_hypermetric, is_hypermetric
from extreme_delaunay.services.isometry import are_isomorphic, automorphism_group, skeleton_graph
from extreme_delaunay.services.lattice_cvp import (
    cvp_at_exact_radius,
    dispatch_norm_query,
    enumerate_strictly_inside,
)

app = typer.Typer(
    name="extreme-delaunay",
    help="Adjacency method for extreme Delaunay polytopes, in exact arithmetic",
    no_args_is_help=True,
)

console = Console(highlight=False, soft_wrap=True)
err_console = Console(stderr=True)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

_state = {"verbosity": 0, "threads": None}


def emit(line: str) -> None:
    """Print a data line verbatim."""
    console.print(line, markup=False, highlight=False)


def _mode(projective: bool) -> IsometryMode:
    return IsometryMode.PROJECTIVE if projective else get_settings().isometry_mode


@contextmanager
def handle_errors():
    """Map domain exceptions to the exit-code contract."""
    try:
        yield
    except ValidationError as e:
        for err in e.errors():
            err_console.print(f"[red]Invalid arguments:[/red] {err['msg']}")
        raise typer.Exit(EXIT_USAGE)
    except ParseError as e:
        err_console.print(f"[red]Parse error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except EnumerationBudgetExceeded as e:
        err_console.print(f"[yellow]Budget exceeded:[/yellow] {e}")
        raise typer.Exit(EXIT_BUDGET)
    except (HypermetricError, ValueError) as e:
        err_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)


@app.callback()
def main(
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="-v info, -vv debug"),
    threads: Optional[int] = typer.Option(
        None, "--threads", help="Worker threads for candidate tests (only explore runs in parallel)"
    ),
):
    """Exact hypermetric and Delaunay polytope computations."""
    _state["verbosity"] = verbose
    _state["threads"] = threads
    configure_logging(verbose)


def _config(subcommand: str, inputs: list[Path], **flags) -> RunConfig:
    """Validated run configuration; unset flags fall back to the global options, then Settings."""
    if flags.get("threads") is None:
        flags["threads"] = _state["threads"]
    given = {key: value for key, value in flags.items() if value is not None}
    return RunConfig(subcommand=subcommand, inputs=inputs, verbosity=_state["verbosity"], **given)


# ============================================================================
# Hypermetric Commands
# ============================================================================
@app.command("check")
def check_hypermetric(
    d_file: Path = typer.Argument(..., help="Distance-vector file"),
    budget_nodes: Optional[int] = typer.Option(None, "--budget-nodes", help="Enumeration node limit"),
    brute_force: Optional[int] = typer.Option(
        None, "--brute-force", help="Check every b with |b_i| <= this bound instead"
    ),
):
    """Decide whether a distance vector is hypermetric."""
    with handle_errors():
        config = _config(
            "check",
            [d_file],
            brute_force_bound=brute_force,
            budget_nodes=budget_nodes,
        )
        d = parse_distance_vector(d_file)
        if config.brute_force_bound is not None:
            verdict = brute_force_is_hypermetric(d, config.brute_force_bound)
        else:
            verdict = is_hypermetric(d, config.budget_nodes)
    if verdict.valid:
        emit("HYPERMETRIC")
        raise typer.Exit(EXIT_OK)
    emit(f"VIOLATED b={format_bvector(verdict.witness)}")
    raise typer.Exit(EXIT_NEGATIVE)


@app.command("ann")
def list_vertices(
    d_file: Path = typer.Argument(..., help="Distance-vector file"),
    budget_nodes: Optional[int] = typer.Option(None, "--budget-nodes", help="Enumeration node limit"),
):
    """List Ann(d): the vertices of the polytope on this basis, as b-vectors."""
    with handle_errors():
        config = _config("ann", [d_file], budget_nodes=budget_nodes)
        vertices = ann(parse_distance_vector(d_file), config.budget_nodes)
    emit(str(len(vertices)))
    for b in vertices:
        emit(format_bvector(b))


# ============================================================================
# Exploration
# ============================================================================
@app.command("explore")
def explore_neighbors(
    p_file: Path = typer.Argument(..., help="Polytope file (or distance vector with --from-ray)"),
    out: Path = typer.Option(..., "--out", "-o", help="Report stem: writes <out>.log and <out>.classes"),
    budget_iters: Optional[int] = typer.Option(None, "--budget-iters", help="Outer iteration limit"),
    budget_nodes: Optional[int] = typer.Option(None, "--budget-nodes", help="Enumeration node limit"),
    threads: Optional[int] = typer.Option(
        None, "--threads", help="Parallel candidate tests (overrides the global --threads)"
    ),
    from_ray: bool = typer.Option(False, "--from-ray", help="Start from a metric-cone ray"),
    projective: bool = typer.Option(False, "--projective", help="Classify up to scaling"),
):
    """Find the extreme Delaunay polytopes adjacent to an extreme one."""
    with handle_errors():
        config = _config(
            "explore",
            [p_file],
            out=out,
            budget_iters=budget_iters,
            budget_nodes=budget_nodes,
            threads=threads,
        )
        if from_ray:
            state = initialize_from_ray(parse_distance_vector(p_file).entries)
        else:
            state = initialize(parse_polytope(p_file, config.budget_nodes))
        base_ray = state.e
        explorer = AdjacencyExplorer(
            budget_iters=config.budget_iters,
            budget_nodes=config.budget_nodes,
            threads=config.threads,
            console=err_console,
            cut_search_bound=get_settings().cut_search_bound,
            cut_search_cap=get_settings().cut_search_cap,
        )
        result = explorer.explore(state, show_progress=config.verbosity > 0)
        report = build_report(result, base_ray, state.n, _mode(projective))
        log_path, classes_path = config.report_paths()
        write_reports(result, report, log_path, classes_path)

    emit(f"{report.status} iterations={report.iterations} |F|={report.final_inequalities} "
         f"neighbors={report.neighbor_count} classes={len(report.classes)}")
    if report.classes:
        table = Table(title="Isometry classes", box=box.ROUNDED)
        table.add_column("Vertices", justify="right", style="cyan")
        table.add_column("Dim", justify="right")
        table.add_column("|Aut|", justify="right", style="green")
        table.add_column("Count", justify="right")
        table.add_column("Representative ray")
        for summary in report.classes:
            table.add_row(
                str(summary.vertex_count),
                str(summary.dimension),
                str(summary.automorphism_order),
                str(summary.multiplicity),
                format_ray(summary.representative_ray),
            )
        console.print(table)
    raise typer.Exit(EXIT_OK if result.complete else EXIT_BUDGET)


# ============================================================================
# Polytope Commands
# ============================================================================
@app.command("iso")
def check_isometry(
    p1_file: Path = typer.Argument(..., help="First polytope file"),
    p2_file: Path = typer.Argument(..., help="Second polytope file"),
    projective: bool = typer.Option(False, "--projective", help="Compare up to scaling"),
):
    """Decide whether two polytopes are isometric."""
    with handle_errors():
        _config("iso", [p1_file, p2_file])
        mapping = are_isomorphic(parse_polytope(p1_file), parse_polytope(p2_file), _mode(projective))
    if mapping is None:
        emit("NOT ISOMETRIC")
        raise typer.Exit(EXIT_NEGATIVE)
    emit("ISOMETRIC")
    emit("mapping " + " ".join(str(j) for j in mapping))


@app.command("aut")
def show_automorphisms(
    p_file: Path = typer.Argument(..., help="Polytope file"),
    projective: bool = typer.Option(False, "--projective", help="Compare distances up to scaling"),
):
    """Order of the isometry group of a polytope."""
    with handle_errors():
        _config("aut", [p_file])
        group = automorphism_group(parse_polytope(p_file), _mode(projective))
    emit(f"|Aut| = {group.order}")
    if _state["verbosity"]:
        emit(f"vertex orbits = {len(group.orbits())}")


@app.command("bases")
def list_bases(
    p_file: Path = typer.Argument(..., help="Polytope file"),
    orbits: bool = typer.Option(False, "--orbits", help="Group bases under the automorphism group"),
    limit: Optional[int] = typer.Option(None, "--limit", help="Stop after this many bases"),
):
    """Enumerate the affine bases among the vertices."""
    with handle_errors():
        _config("bases", [p_file])
        polytope = parse_polytope(p_file)
        bases = find_affine_bases(polytope, limit)
        groups = automorphism_group(polytope).set_orbits(bases) if orbits else None
    emit(str(len(bases)))
    if groups is None:
        for basis in bases:
            emit(format_ray(basis))
        return
    emit(f"orbits = {len(groups)}")
    for group in groups:
        emit(f"size={len(group)} representative={format_ray(group[0])}")


@app.command("extreme")
def check_extreme(p_file: Path = typer.Argument(..., help="Polytope file")):
    """Decide whether the polytope's distance vector is an extreme ray."""
    with handle_errors():
        _config("extreme", [p_file])
        verdict = is_extreme_polytope(parse_polytope(p_file))
    if verdict.extreme:
        emit(f"EXTREME rank={verdict.rank}")
        raise typer.Exit(EXIT_OK)
    emit(f"NOT EXTREME rank={verdict.rank}")
    raise typer.Exit(EXIT_NEGATIVE)


@app.command("skeleton")
def show_skeleton(p_file: Path = typer.Argument(..., help="Polytope file")):
    """Edge count and degree sequence of the polytope's skeleton."""
    with handle_errors():
        _config("skeleton", [p_file])
        graph = skeleton_graph(parse_polytope(p_file))
    emit(f"edges={graph.number_of_edges()}")
    emit("degrees " + " ".join(str(deg) for _, deg in sorted(graph.degree())))


@app.command("facets")
def show_facets(
    p_file: Path = typer.Argument(..., help="Polytope file of an extreme polytope"),
    all_bases: bool = typer.Option(
        False, "--all-bases", help="Collect facets over one basis from every basis orbit"
    ),
    limit: Optional[int] = typer.Option(None, "--limit", help="Stop after this many bases"),
    extend: int = typer.Option(
        0, "--extend", help="Also list the orbits lifted to this many more points"
    ),
):
    """Facets of the hypermetric cone tight at an extreme polytope, by permutation orbit."""
    with handle_errors():
        _config("facets", [p_file])
        if extend < 0:
            raise ValueError("--extend must be non-negative")
        polytope = parse_polytope(p_file)
        if all_bases:
            harvest = harvest_facets(polytope, limit)
            found = list(harvest.orbits)
        else:
            found = facet_orbits(polytope)
        lifted = lift_orbits(found, extend) if extend else []

    if all_bases:
        emit(f"bases={harvest.bases} basis_orbits={len(harvest.basis_orbits)}")
    emit(f"orbits={len(found)} facets={sum(o.found for o in found)}")
    for orbit in found:
        emit(f"{format_bvector(orbit.representative)} found={orbit.found} orbit={orbit.orbit_size}")
    if extend:
        emit(f"extended={extend} points={polytope.n + 1 + extend} orbits={len(lifted)}")
        for orbit in lifted:
            emit(f"{format_bvector(orbit.representative)} orbit={orbit.orbit_size}")


# ============================================================================
# Lattice Commands
# ============================================================================
@app.command("cvp")
def closest_vectors(
    gram_file: Path = typer.Argument(..., help="Gram-matrix file"),
    target: str = typer.Argument(..., help="Target point, e.g. 1/2,1/2"),
    r2: str = typer.Argument(..., help="Squared radius, e.g. 1/2"),
    mode: str = typer.Option("exact", "--mode", help="exact | inside | dispatch"),
    budget_nodes: Optional[int] = typer.Option(None, "--budget-nodes", help="Enumeration node limit"),
):
    """Lattice vectors at, or strictly inside, a given distance from a target."""
    if mode not in ("exact", "inside", "dispatch"):
        err_console.print(f"[red]Invalid mode: {mode}[/red]")
        raise typer.Exit(EXIT_USAGE)
    with handle_errors():
        config = _config("cvp", [gram_file], budget_nodes=budget_nodes)
        gram = parse_gram(gram_file)
        x = parse_rational_list(target)
        (radius2,) = parse_rational_list(r2)
        if mode == "dispatch":
            result = dispatch_norm_query(gram, x, radius2, config.budget_nodes)
        else:
            query = CVPQuery.build(gram, x, radius2)
            if mode == "exact":
                found = cvp_at_exact_radius(query, config.budget_nodes)
            else:
                found = enumerate_strictly_inside(query, config.budget_nodes)

    if mode == "dispatch":
        emit(f"{result.definiteness.value} rank={result.reduced_dim}")
        if result.witness is None:
            emit("NONE")
            raise typer.Exit(EXIT_NEGATIVE)
        emit(f"FOUND {format_ray(result.witness)}")
        return
    emit(str(len(found)))
    for item in found:
        if mode == "exact":
            emit(format_ray(item))
        else:
            w, dist = item
            emit(f"{format_ray(w)} {format_rational(dist)}")


if __name__ == "__main__":
    app()
