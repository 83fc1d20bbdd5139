"""
CLI tool for clique tensor spectral radii, graph Lagrangians and clique-number bounds

Exit codes: 0 on success, 1 on validation errors (bad flags, malformed
files, violated preconditions), 2 on computation errors (non-convergence,
exceeded search budget). Errors are also written to stderr as one JSON
object: {"error": {"type": ..., "message": ..., "exit_code": ...}}.
"""
import io
import json
import math
from fractions import Fraction

import click

from cliquelab import log
from cliquelab.bounds import BOUNDS_CSV_COLUMNS, bounds_report, sos_check
from cliquelab.cliques import enumerate_cliques
from cliquelab.graph import GraphSpec, generate
from cliquelab.lagrangian import mu_closed_form, mu_gradient, mu_shift_local
from cliquelab.output import OUTPUT_FORMATS, dumps_csv, dumps_json, emit, render
from cliquelab.parsing import FORMATS, load_graph, save_graph
from cliquelab.spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_RESTARTS,
    DEFAULT_SHIFT,
    DEFAULT_TOL,
    SpectralResult,
    WeightVector,
    eigen_residual,
    oracle_rho_witness,
    rho_gradient_ascent,
    rho_power_iteration,
)
from cliquelab.stability import (
    SWEEP_CSV_COLUMNS,
    SweepConfig,
    edit_distance_to_turan,
    spearman_summary,
    stability_sweep,
    write_gnuplot,
)

FAMILY_ALIASES = {
    "multipartite": "multipartite_regular",
    "unicyclic": "unicyclic_girth3",
    "gnp": "erdos_renyi",
    "er": "erdos_renyi",
}
FAMILY_CHOICES = (
    "complete",
    "cycle",
    "path",
    "turan",
    "multipartite_regular",
    "unicyclic_girth3",
    "erdos_renyi",
    "petersen",
) + tuple(FAMILY_ALIASES)


def _error_object(exc, exit_code):
    return json.dumps(
        {
            "error": {
                "type": exc.__class__.__name__,
                "message": exc.format_message() if isinstance(exc, click.ClickException) else str(exc),
                "exit_code": exit_code,
            }
        }
    )


class ExitCodeGroup(click.Group):
    """Maps failures of the subcommands to exit codes 1 and 2"""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.ClickException as e:
            # bad top-level flags are validation errors too
            click.echo(_error_object(e, 1), err=True)
            e.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.Abort):
            raise
        except click.ClickException as e:
            click.echo(_error_object(e, 1), err=True)
            e.exit_code = 1
            raise
        except (ValueError, OSError) as e:
            log.logger.debug("validation error", exc_info=True)
            click.echo(_error_object(e, 1), err=True)
            ctx.exit(1)
        except RuntimeError as e:
            log.logger.debug("computation error", exc_info=True)
            click.echo(_error_object(e, 2), err=True)
            ctx.exit(2)


def graph_option(func):
    func = click.option(
        "--graph-format",
        type=click.Choice(FORMATS),
        help="Format of the graph file (default: inferred from the extension)",
    )(func)
    return click.option(
        "--graph",
        "-g",
        "graph_path",
        type=click.Path(exists=True, dir_okay=False),
        required=True,
        help="Graph file to read",
    )(func)


def output_options(func):
    func = click.option(
        "--output",
        "-o",
        "output_path",
        type=click.Path(dir_okay=False, writable=True),
        help="Write the result here instead of stdout",
    )(func)
    return click.option(
        "--format",
        "output_format",
        type=click.Choice(OUTPUT_FORMATS),
        default="json",
        show_default=True,
    )(func)


def _positive(ctx, param, value):
    if value is not None and value < 1:
        raise click.BadParameter("must be >= 1, got {}".format(value))
    return value


@click.group(cls=ExitCodeGroup)
@click.option("--verbose", "-v", count=True, help="-v for progress, -vv for debug output")
def cli(verbose):
    """Clique tensor spectral radii, graph Lagrangians and clique-number bounds.

    Graphs are read from edge lists (one "u v" pair per line) or DIMACS
    .col files. Results are printed as JSON unless --format says otherwise.
    """
    log._set_logger_handler(log.level_for_verbosity(verbose))


@cli.command()
@click.argument("family", type=click.Choice(FAMILY_CHOICES))
@click.option("--n", type=int, help="Number of vertices")
@click.option("--r", type=int, help="Number of Turán parts")
@click.option("--omega", type=int, help="Number of parts of a regular multipartite graph")
@click.option("--s", type=int, help="Part size of a regular multipartite graph")
@click.option("--p", type=str, help="Edge probability, e.g. 0.5 or 1/2")
@click.option("--seed", type=int, help="Seed for random families (required for erdos_renyi)")
@click.option(
    "--output", "-o", "output_path", type=click.Path(dir_okay=False), required=True,
    help="Graph file to write",
)
@click.option(
    "--graph-format",
    type=click.Choice(FORMATS),
    help="Format of the written file (default: inferred from the extension)",
)
def gen(family, n, r, omega, s, p, seed, output_path, graph_format):
    """Generate a graph from one of the built-in families."""
    try:
        p = Fraction(p) if p is not None else None
    except ValueError:
        raise click.BadParameter("not a number: {!r}".format(p), param_hint="--p")
    spec = GraphSpec(
        family=FAMILY_ALIASES.get(family, family), n=n, r=r, omega=omega, s=s, p=p, seed=seed
    )
    graph = generate(spec)
    save_graph(graph, output_path, graph_format)
    log.logger.info("Wrote %s to %s", graph, output_path)


@cli.command()
@graph_option
@click.option("-t", "t", type=int, required=True, callback=_positive, help="Clique order")
@click.option("--no-cliques", is_flag=True, help="Omit the clique list from the output")
@output_options
def cliques(graph_path, graph_format, t, no_cliques, output_format, output_path):
    """Enumerate the t-cliques of a graph."""
    cs = enumerate_cliques(load_graph(graph_path, graph_format), t)
    result = cs.to_dict(include_cliques=not no_cliques)
    emit(render(result, output_format, columns=["t", "count", "per_vertex"]), output_path)


@cli.command()
@graph_option
@click.option("-t", "t", type=int, required=True, help="Clique order, >= 2")
@click.option(
    "--method", type=click.Choice(["power", "gradient", "oracle"]), default="power",
    show_default=True,
)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--shift", type=float, default=DEFAULT_SHIFT, show_default=True)
@click.option("--max-iter", type=int, default=DEFAULT_MAX_ITER, show_default=True)
@click.option("--restarts", type=int, default=DEFAULT_RESTARTS, show_default=True,
              callback=_positive)
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed of the gradient ascent starts")
@output_options
def rho(graph_path, graph_format, t, method, tol, shift, max_iter, restarts, seed,
        output_format, output_path):
    """Compute the t-clique spectral radius."""
    if t < 2:
        raise click.BadParameter("must be >= 2, got {}".format(t), param_hint="-t")
    cs = enumerate_cliques(load_graph(graph_path, graph_format), t)
    if method == "power":
        result = rho_power_iteration(cs, shift=shift, tol=tol, max_iter=max_iter)
    elif method == "gradient":
        result = rho_gradient_ascent(cs, restarts=restarts, seed=seed)
    else:
        value, eigvec = oracle_rho_witness(cs)
        # the witness certifies value from below only
        result = SpectralResult(
            rho=value, lower=value, upper=math.inf, eigvec=eigvec, iterations=0,
            residual=eigen_residual(cs, value, eigvec), method="oracle",
        )
    columns = ["rho", "lower", "upper", "iterations", "residual", "method"]
    emit(render(result.to_dict(), output_format, columns=columns), output_path)


@cli.command()
@graph_option
@click.option("-t", "t", type=int, required=True, callback=_positive, help="Clique order")
@click.option(
    "--method", type=click.Choice(["closed", "gradient", "shift"]), default="closed",
    show_default=True,
)
@click.option("--restarts", type=int, callback=_positive,
              help="Gradient starts (default: 4 * 2^omega)")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed of the gradient starts")
@output_options
def mu(graph_path, graph_format, t, method, restarts, seed, output_format, output_path):
    """Compute the generalized graph Lagrangian mu_t."""
    graph = load_graph(graph_path, graph_format)
    if method == "closed":
        result = mu_closed_form(graph, t)
    else:
        cs = enumerate_cliques(graph, t)
        if method == "gradient":
            result = mu_gradient(cs, restarts=restarts, seed=seed)
        else:
            result = mu_shift_local(cs, WeightVector.uniform(graph.n))
    columns = ["mu", "mu_exact", "support_size", "method"]
    emit(render(result.to_dict(), output_format, columns=columns), output_path)


@cli.command()
@graph_option
@click.option("-t", "t", type=int, required=True, help="Clique order, >= 2")
@click.option("--omega-exact/--no-omega-exact", default=True, show_default=True,
              help="Compute the exact clique number for the thm1 check")
@click.option("--r", "r", type=int, callback=_positive,
              help="r for the K_(r+1)-free count checks")
@click.option("--s", "s", type=int, callback=_positive, help="s for the Sos check (needs --r)")
@output_options
def bounds(graph_path, graph_format, t, omega_exact, r, s, output_format, output_path):
    """Evaluate every clique bound on one graph."""
    if t < 2:
        raise click.BadParameter("must be >= 2, got {}".format(t), param_hint="-t")
    if s is not None and r is None:
        raise click.BadParameter("--s needs --r", param_hint="--s")
    report = bounds_report(
        load_graph(graph_path, graph_format), t, compute_omega=omega_exact, r=r, s=s
    )
    emit(render(report.to_dict(), output_format, columns=BOUNDS_CSV_COLUMNS), output_path)


@cli.command()
@graph_option
@click.option("-r", "r", type=int, required=True)
@click.option("-t", "t", type=int, required=True)
@click.option("-s", "s", type=int, required=True)
@output_options
def sos(graph_path, graph_format, r, t, s, output_format, output_path):
    """Check the Sos clique-count inequality on a K_(r+1)-free graph."""
    check = sos_check(load_graph(graph_path, graph_format), r, t, s)
    result = {"r": r, "t": t, "s": s, "holds": check.holds, "lhs": check.lhs,
              "rhs": check.rhs, "equality": check.equality}
    emit(render(result, output_format), output_path)


@cli.command("edit-dist")
@graph_option
@click.option("-r", "r", type=int, required=True, callback=_positive)
@click.option("--exact", "method", flag_value="exact", help="Exhaustive partition search")
@click.option("--local", "method", flag_value="local_search", help="Kernighan-Lin local search")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed of the local search starts")
@output_options
def edit_dist(graph_path, graph_format, r, method, seed, output_format, output_path):
    """Edit distance from a graph to the Turán graph T_r(n)."""
    result = edit_distance_to_turan(load_graph(graph_path, graph_format), r, method=method,
                                    seed=seed)
    emit(render(result.to_dict(), output_format), output_path)


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="Sweep configuration JSON file")
@click.option("--format", "output_format", type=click.Choice(["csv", "json", "gnuplot"]),
              default="csv", show_default=True)
@click.option("--output", "-o", "output_path", type=click.Path(dir_okay=False, writable=True))
def sweep(config_path, output_format, output_path):
    """Run a stability sweep over perturbed Turán graphs."""
    records = stability_sweep(SweepConfig.from_json(config_path))
    summary = spearman_summary(records)
    log.logger.info("Spearman correlation of rho_deficit vs edit_density: %r", summary)
    if output_format == "csv":
        text = dumps_csv([rec.to_dict() for rec in records], SWEEP_CSV_COLUMNS)
    elif output_format == "json":
        text = dumps_json({"records": [rec.to_dict() for rec in records], "summary": summary})
    else:
        buf = io.StringIO()
        write_gnuplot(records, buf)
        text = buf.getvalue()
    emit(text, output_path)


def main(argv=None):
    """Runs the CLI and returns its exit code"""
    try:
        cli.main(args=argv, prog_name="cliquelab")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    return 0
