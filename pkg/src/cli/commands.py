"""Command-line interface for tessera."""
import click

from src.core.config import RunConfig
from src.core.errors import TesseraError
from src.core.export import EXPORT_FORMATS
from src.core.isoperimetry import SELECTORS
from src.core.runner import EXIT_ERROR, Runner
from src.utils.logger import Logger

_SHARED = ("graph", "out", "witness", "seed", "budget", "threads", "verbose", "quiet")


def common_options(func):
    """Options every command accepts."""
    options = [
        click.option("--out", default="", help="Write the report here instead of stdout"),
        click.option("--witness", default="",
                     help="Where to dump a violating subgraph (default tessera-witness.json)"),
        click.option("--seed", default=0, show_default=True, type=int, help="Random seed"),
        click.option("--verbose", is_flag=True, help="Enable verbose logging"),
        click.option("--quiet", is_flag=True, help="Only log warnings and errors"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def graph_option(required: bool = True):
    return click.option("--graph", required=required, default=None,
                        type=click.Path(dir_okay=False),
                        help="tessera-graph-v1 input file")


def subgraph_options(func):
    func = click.option("--radius", type=int, default=None,
                        help="Use the ball of this radius around the root (default 1)")(func)
    return click.option("--subgraph", default=None, type=click.Path(exists=True, dir_okay=False),
                        help="Subgraph file with vertices, edges and faces")(func)


def _run(command: str, subcommand: str, options: dict) -> None:
    """Build the run configuration, execute it and exit with its code."""
    shared = {k: options.pop(k, None) for k in _SHARED}
    logger = Logger(verbose=bool(shared["verbose"]), quiet=bool(shared["quiet"]))
    try:
        config = RunConfig(
            command=command,
            subcommand=subcommand,
            input=shared["graph"] or "",
            output=shared["out"] or "",
            witness=shared["witness"] or "",
            params=options,
            seed=shared["seed"] or 0,
            budget=shared["budget"] or 0,
            threads=shared["threads"],
            verbose=bool(shared["verbose"]),
        )
        code = Runner(config, logger).run()
    except TesseraError as e:
        logger.error(str(e))
        logger.error_record(type(e).__name__, str(e))
        raise SystemExit(EXIT_ERROR)
    except (OSError, ValueError) as e:
        logger.error(str(e))
        logger.error_record(type(e).__name__, str(e))
        raise SystemExit(EXIT_ERROR)
    except Exception as e:
        logger.error(f"Unexpected error: {type(e).__name__}: {e}")
        logger.error_record(type(e).__name__, str(e))
        raise SystemExit(EXIT_ERROR)
    raise SystemExit(code)


@click.group()
def tessera():
    """Exact combinatorial geometry on planar tessellations.

    Reports are JSON on stdout (or --out); logs go to stderr. Exit codes:
    0 all checks pass, 1 violation found (witness dumped), 2 input error.
    """


@tessera.command()
@click.option("--p", type=int, required=True, help="Vertex degree")
@click.option("--q", type=int, required=True, help="Face degree")
@click.option("--height", type=int, default=3, show_default=True, help="Number of layers")
@click.option("--core", type=click.Choice(["face", "vertex"]), default="face", show_default=True)
@click.option("--perturb", default=None, help="pmax,qmax: random degrees in [p, pmax] x [q, qmax]")
@common_options
def generate(**options):
    """Generate a platonic solid or a (perturbed) regular patch."""
    _run("generate", "", options)


@tessera.command()
@graph_option()
@subgraph_options
@common_options
def analyze(**options):
    """Ratios, curvature and Gauss-Bonnet report for a subgraph."""
    _run("analyze", "", options)


@tessera.group()
def verify():
    """Check an identity or bound; exit 1 on violation."""


@verify.command("gauss-bonnet")
@graph_option()
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--max-vertices", type=int, default=8, show_default=True)
@common_options
def verify_gauss_bonnet(**options):
    """Both Gauss-Bonnet identities on seeded random subgraphs."""
    _run("verify", "gauss-bonnet", options)


@verify.command("lemma")
@graph_option()
@subgraph_options
@click.option("--p", type=int, default=None, help="Minimum vertex degree (default from graph)")
@click.option("--q", type=int, default=None, help="Minimum face degree (default from graph)")
@common_options
def verify_lemma(**options):
    """Inner boundary size against the layer lower bound."""
    _run("verify", "lemma", options)


@verify.command("weil")
@graph_option(required=False)
@subgraph_options
@click.option("--q", type=int, default=None, help="Face degree: 3, 4 or 6")
@click.option("--n-max", type=int, default=20, show_default=True)
@click.option("--budget", type=int, default=0, help="Largest subgraph enumerated on --graph")
@click.option("--max-boundary", type=int, default=None)
@common_options
def verify_weil(**options):
    """Weil bound: equality table up to --n-max, or subgraphs of --graph."""
    _run("verify", "weil", options)


@verify.command("proposition")
@graph_option()
@subgraph_options
@click.option("--q", type=int, default=None)
@common_options
def verify_proposition(**options):
    """Boundary vertices of the face closure against the curvature formula."""
    _run("verify", "proposition", options)


@verify.command("bounds")
@graph_option()
@click.option("--p1", type=int, required=True)
@click.option("--q1", type=int, required=True)
@click.option("--p2", type=int, default=None)
@click.option("--q2", type=int, default=None)
@click.option("--budget", type=int, default=8, show_default=True, help="Largest subgraph enumerated")
@click.option("--target-height", type=int, default=None, help="Height of the upper witness held to --target")
@click.option("--target", type=str, default=None, help="Largest allowed upper ratio, e.g. 0.169 or 1/20")
@click.option("--threads", type=int, default=None, help="Worker processes (default TESSERA_THREADS)")
@common_options
def verify_bounds(**options):
    """Sharp lower bounds by enumeration and upper bounds on quasi-ball witnesses."""
    _run("verify", "bounds", options)


@tessera.group()
def search():
    """Exhaustive searches."""


@search.command("min-ratio")
@graph_option()
@click.option("--max-size", "budget", type=int, default=8, show_default=True)
@click.option("--ratio", type=click.Choice(SELECTORS), default=SELECTORS[0], show_default=True)
@click.option("--threads", type=int, default=None)
@common_options
def search_min_ratio(**options):
    """Certified minimum of a ratio over connected induced subgraphs."""
    _run("search", "min-ratio", options)


@tessera.group()
def extremal():
    """Extremal constructions and their recurrences."""


@extremal.command("quasi-ball")
@graph_option(required=False)
@click.option("--p", type=int, default=None)
@click.option("--q", type=int, default=None)
@click.option("--n", type=int, default=3, show_default=True)
@common_options
def extremal_quasi_ball(**options):
    """Quasi-ball around the root and its layer growth."""
    _run("extremal", "quasi-ball", options)


@extremal.command("puffed-ball")
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, default=20, show_default=True)
@common_options
def extremal_puffed_ball(**options):
    """Puffed-ball boundary increments in the p-regular triangulation."""
    _run("extremal", "puffed-ball", options)


@extremal.command("weil")
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
@common_options
def extremal_weil(**options):
    """Subgraph attaining the Weil bound for n boundary vertices."""
    _run("extremal", "weil", options)


@extremal.command("transfer")
@graph_option()
@click.option("--p", type=int, required=True)
@click.option("--mode", type=click.Choice(["T4", "T3"]), default="T4", show_default=True)
@common_options
def extremal_transfer(**options):
    """Compare a finite triangulation with puffed-balls."""
    _run("extremal", "transfer", options)


@extremal.command("recurrence")
@click.option("--p", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--height", type=int, default=4, show_default=True)
@common_options
def extremal_recurrence(**options):
    """Layer sizes of a regular patch against both comparison sequences."""
    _run("extremal", "recurrence", options)


@extremal.command("j1")
@click.option("--p", type=int, required=True)
@click.option("--height", type=int, default=8, show_default=True)
@click.option("--patch-height", type=int, default=None, help="Height of the generated patch")
@common_options
def extremal_j1(**options):
    """Ball vertex-boundary ratios of the p-regular triangulation."""
    _run("extremal", "j1", options)


@extremal.command("sphere")
@graph_option()
@click.option("--n", type=int, default=3, show_default=True)
@common_options
def extremal_sphere(**options):
    """Sphere sizes around the root against the degree-excess recurrence."""
    _run("extremal", "sphere", options)


@tessera.command("export")
@click.argument("fmt", metavar="FORMAT", type=click.Choice(EXPORT_FORMATS))
@graph_option()
@click.option("--subgraph", default=None, type=click.Path(exists=True, dir_okay=False))
@common_options
def export_graph(fmt, **options):
    """Render a graph as DOT, SVG or JSON."""
    _run("export", fmt, options)
