"""
Command-line front end.

Every command goes through the CommandDispatcher and prints either a human
rendering of the OutputRecord or, with --json, the record itself as one JSON
object per line. Validation errors print ``error: <detail>`` on stderr and
exit with status 2.
"""
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Optional

import typer

from app.core.config import normalize_log_level, settings
from app.core.exceptions import TunnelInvariantsException, ValidationException
from app.dispatchers.command_dispatcher import TABLE_FIELDS, CommandDispatcher
from app.schemas.records import OutputRecord
from app.utils.json_formatter import configure_logging

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="knot-tunnels",
    help=settings.APP_DESCRIPTION,
    add_completion=False,
    no_args_is_help=True,
)

# Lets negative torus coordinates such as -48 through as arguments
NEGATIVE_ARGS = {"ignore_unknown_options": True}

state: Dict[str, Any] = {"json": False}


def _matrix_text(rows: List[List[int]]) -> str:
    return "[ " + ", ".join("[ " + ", ".join(str(x) for x in row) + " ]" for row in rows) + " ]"


def _join(values) -> str:
    return ", ".join(str(v) for v in values)


def _list_form(values) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


def render_gst(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    trace = record.trace
    if "configurations" not in trace:
        return [
            "This tunnel has depth 1.",
            f"This tunnel has {record.result} minimal giant step construction.",
        ]
    lines = []
    if trace["configurations"]:
        lines.append(f"The intermediate configurations are {_join(trace['configurations'])}.")
        lines.append("The transformation matrices are:")
        lines.extend(_matrix_text(matrix) for matrix in trace["matrices"])
        lines.append(f"and their product is {_matrix_text(trace['product'])}.")
    else:
        lines.append("There are no intermediate configurations.")
    if trace["leftover"]:
        lines.append("The string ends with a leftover 1.")
    else:
        lines.append(f"The final block has configuration {trace['final_configuration']}.")
    plural = "" if record.result == 1 else "s"
    lines.append(f"This tunnel has {record.result} minimal giant step construction{plural}.")
    return lines


def render_depth(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    return [
        f"The carried disks are {_join(record.trace['carried'])}.",
        f"The depths of tau_0, ..., tau_n are {_join(record.trace['depths'])}.",
        f"The numbers of minimal paths are {_join(record.trace['counts'])}.",
        f"This tunnel has depth {record.result}.",
    ]


def render_bridge_lb(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    return [
        f"The first tunnel of depth 2 is tau_{record.trace['m']}.",
        f"The bridge number sequence is {_join(record.trace['sequence'])}.",
        f"The minimum bridge number of K-tau is {record.result}.",
    ]


def render_bridge_ub(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    m = record.trace["m"]
    seed_a, seed_b = record.trace["seeds"]
    return [
        f"The first tunnel of depth 2 is tau_{m}; seeds {seed_a} at tau_{m - 2} and {seed_b} at tau_{m - 1}.",
        f"The iteration sequence is {_join(record.trace['sequence'])}.",
        f"The bridge number of K-tau is at most {record.result}.",
        f"The Fibonacci bound is {record.trace['fibonacci_upper']}.",
    ]


def render_recursion(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    lines = [f"a_1, ..., a_{record.input['d']} = {_join(record.trace['recursion'])}"]
    witness = record.trace.get("witness")
    if witness:
        lines.append(f"The tunnel with parameter string {witness} attains it.")
    elif witness is not None:
        lines.append("The simple tunnels of two-bridge knots attain it.")
    lines.append(str(record.result))
    return lines


def render_plain(record: OutputRecord, verbose: bool) -> List[str]:
    return [str(record.result)]


def render_torus_slopes(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose or not record.trace:
        return [str(record.result)]
    trace = record.trace
    lines = [
        f"Continued fraction {_list_form(trace['continued_fraction'])}, cabling word {trace['letters']}.",
    ]
    for step in trace["steps"]:
        slope = f"[ {trace['m0']} ]" if step["slope"] is None else str(step["slope"])
        p, q = step["stage_knot"]
        lines.append(f"{step['letter']}  {_matrix_text(step['matrix'])}  slope {slope}  knot ({p},{q})")
    lines.append(f"Parameter string: {trace['s_string']!r}")
    lines.append(str(record.result))
    return lines


def render_torus_depth(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    return [f"Parameter string: {record.trace['s_string']!r}", str(record.result)]


def render_torus_sstring(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    return [
        f"Continued fraction {_list_form(record.trace['continued_fraction'])}, "
        f"cabling word {record.trace['letters']}.",
        str(record.result),
    ]


def render_torus_classify(record: OutputRecord, verbose: bool) -> List[str]:
    if not verbose:
        return [str(record.result)]
    trace = record.trace
    lines = [
        f"Depth {trace['depth']}, parameter string {trace['s_string']!r}, "
        f"{trace['cabling_count']} cabling constructions, bridge number {trace['bridge_number']}.",
    ]
    if trace["distance"] is not None:
        lines.append(
            f"Distance {trace['distance']}; depth >= distance - 1 holds: {trace['depth_distance_ok']}."
        )
        lines.append("The knot has three tunnels." if trace["three_tunnels"] else "The knot has at most two tunnels.")
    lines.append(str(record.result))
    return lines


def render_torus_table(record: OutputRecord, verbose: bool) -> List[str]:
    if record.input["field"] in ("depth", "bridge"):
        lines = [_list_form(record.result)]
    else:
        lines = [f"{n}\t{value}" for n, value in record.trace["rows"]]
    if verbose and record.trace["skipped"]:
        lines.append(f"Skipped (torus links): {_join(record.trace['skipped'])}")
    return lines


def render_verify(record: OutputRecord, verbose: bool) -> List[str]:
    lines = []
    # failing invariants are listed with their first counterexample even when not verbose
    for invariant in record.trace["invariants"]:
        if not verbose and invariant["violations"] == 0:
            continue
        line = f"{invariant['name']}: {invariant['cases']} cases, {invariant['violations']} violations"
        if invariant["first_counterexample"]:
            line += f" (first: {invariant['first_counterexample']})"
        lines.append(line)
    lines.append(str(record.result))
    return lines


_RENDERERS: Dict[str, Callable[[OutputRecord, bool], List[str]]] = {
    "gst": render_gst,
    "depth": render_depth,
    "bridge-lb": render_bridge_lb,
    "bridge-ub": render_bridge_ub,
    "minbridge": render_recursion,
    "torus-minbridge": render_recursion,
    "maxbridge": render_plain,
    "fib-ub": render_plain,
    "torus-slopes": render_torus_slopes,
    "torus-depth": render_torus_depth,
    "torus-sstring": render_torus_sstring,
    "torus-classify": render_torus_classify,
    "torus-table": render_torus_table,
    "verify": render_verify,
}


def emit(record: OutputRecord, verbose: bool) -> None:
    if state["json"]:
        typer.echo(record.to_json_line())
        return
    for line in _RENDERERS[record.command](record, verbose):
        typer.echo(line)


def fail(exc: TunnelInvariantsException) -> NoReturn:
    typer.echo(f"error: {exc.detail}", err=True)
    raise typer.Exit(code=exc.exit_code)


def run(command: str, verbose: bool = False, **arguments: Any) -> OutputRecord:
    """Dispatch a command, print its record and map validation errors to exit status 2."""
    try:
        record = CommandDispatcher.dispatch(command, **arguments)
    except TunnelInvariantsException as exc:
        logger.debug(f"{command} rejected {arguments}: {exc.detail}")
        fail(exc)
    emit(record, verbose)
    return record


def _version(value: bool) -> None:
    if value:
        typer.echo(f"{settings.APP_TITLE} {settings.APP_VERSION}")
        raise typer.Exit()


@app.callback()
def main(
    json_output: bool = typer.Option(False, "--json", help="Emit one JSON record per line"),
    log_level: str = typer.Option(settings.LOG_LEVEL, "--log-level", help="Logging level for stderr"),
    log_json: bool = typer.Option(settings.LOG_JSON, "--log-json", help="Emit log records as JSON"),
    version: bool = typer.Option(False, "--version", callback=_version, is_eager=True, help="Show the version"),
) -> None:
    """Invariants of tunnel number one knot tunnels."""
    state["json"] = json_output
    try:
        level = normalize_log_level(log_level)
    except ValueError as exc:
        fail(ValidationException(detail=str(exc)))
    configure_logging(level=level, json_output=log_json, fmt=settings.LOG_FORMAT)


VERBOSE = typer.Option(False, "--verbose", help="Print the full trace")


@app.command("gst")
def gst(sstring: str = typer.Argument(..., help="Parameter string s_2...s_n"), verbose: bool = VERBOSE) -> None:
    """Count minimal giant step sequences with transfer matrices."""
    run("gst", verbose, sstring=sstring)


@app.command("depth")
def depth(sstring: str = typer.Argument(..., help="Parameter string s_2...s_n"), verbose: bool = VERBOSE) -> None:
    """Depth of the tunnel tau_n."""
    run("depth", verbose, sstring=sstring)


@app.command("bridge-lb")
def bridge_lb(
    sstring: str = typer.Argument(..., help="Parameter string with at least one 1"),
    c2: int = typer.Option(
        2, "--c2", help="Bridge number of the knot at tau_{m-2}; the bound is only as good as this seed"
    ),
    c3: int = typer.Option(
        2, "--c3", help="Bridge number of the knot at tau_{m-1}; the bound is only as good as this seed"
    ),
    verbose: bool = VERBOSE,
) -> None:
    """
    Lower bound for the bridge number of K_{tau_n}.

    The bound is conditional on the seeds: it holds only when --c2 and --c3 do
    not exceed the bridge numbers of the knots at tau_{m-2} and tau_{m-1}.
    Every nontrivial knot has bridge number at least 2, so the defaults are
    always safe but weak.
    """
    run("bridge-lb", verbose, sstring=sstring, c2=c2, c3=c3)


@app.command("bridge-ub")
def bridge_ub(
    sstring: str = typer.Argument(..., help="Parameter string with at least one 1"),
    verbose: bool = VERBOSE,
) -> None:
    """Upper bound for the bridge number of K_{tau_n}."""
    run("bridge-ub", verbose, sstring=sstring)


@app.command("minbridge")
def minbridge(d: int = typer.Argument(..., help="Depth"), verbose: bool = VERBOSE) -> None:
    """Smallest bridge number of a knot with a tunnel of depth d."""
    run("minbridge", verbose, d=d)


@app.command("torus-minbridge")
def torus_minbridge(d: int = typer.Argument(..., help="Depth"), verbose: bool = VERBOSE) -> None:
    """Smallest bridge number of a torus knot whose short tunnel has depth d."""
    run("torus-minbridge", verbose, d=d)


@app.command("maxbridge", context_settings=NEGATIVE_ARGS)
def maxbridge(n: int = typer.Argument(..., help="Number of cabling constructions")) -> None:
    """Largest bridge number produced by n cabling constructions."""
    run("maxbridge", n=n)


@app.command("fib-ub", context_settings=NEGATIVE_ARGS)
def fib_ub(
    n: int = typer.Argument(..., help="Subscript of tau_n"),
    m: int = typer.Argument(..., help="Subscript of the first depth 2 tunnel"),
) -> None:
    """Fibonacci upper bound m F_{n-m+2} + F_{n-m+1}."""
    run("fib-ub", n=n, m=m)


@app.command("torus-slopes", context_settings=NEGATIVE_ARGS)
def torus_slopes(p: int, q: int, verbose: bool = VERBOSE) -> None:
    """Slope sequence of the short tunnel of the (p,q) torus knot."""
    run("torus-slopes", verbose, p=p, q=q)


@app.command("torus-depth", context_settings=NEGATIVE_ARGS)
def torus_depth(p: int, q: int, verbose: bool = VERBOSE) -> None:
    """Depth of the short tunnel of the (p,q) torus knot."""
    run("torus-depth", verbose, p=p, q=q)


@app.command("torus-sstring", context_settings=NEGATIVE_ARGS)
def torus_sstring(p: int, q: int, verbose: bool = VERBOSE) -> None:
    """Parameter string of the short tunnel of the (p,q) torus knot."""
    run("torus-sstring", verbose, p=p, q=q)


@app.command("torus-classify", context_settings=NEGATIVE_ARGS)
def torus_classify(p: int, q: int, verbose: bool = VERBOSE) -> None:
    """Class of the short tunnel of the (p,q) torus knot."""
    run("torus-classify", verbose, p=p, q=q)


@app.command("torus-table", context_settings=NEGATIVE_ARGS)
def torus_table(
    p: int,
    start: int = typer.Option(2, "--from", help="First n"),
    stop: Optional[int] = typer.Option(None, "--to", help="Last n (default |p| - 1)"),
    field: str = typer.Option(settings.TABLE_FIELD_DEFAULT, "--field", help=f"One of {', '.join(TABLE_FIELDS)}"),
    output: Optional[Path] = typer.Option(None, "--output", help="Also write n<TAB>value rows to this file"),
    verbose: bool = VERBOSE,
) -> None:
    """One invariant of the (p,n) torus knots over a range of n."""
    if stop is None:
        stop = abs(p) - 1
    record = run("torus-table", verbose, p=p, start=start, stop=stop, field=field)
    if output is not None:
        output.write_text("".join(f"{n}\t{value}\n" for n, value in record.trace["rows"]))
        logger.info(f"Wrote {len(record.trace['rows'])} rows to {output}")


@app.command("verify")
def verify(
    max_len: Optional[int] = typer.Option(None, "--max-len", help="Longest parameter string to enumerate"),
    max_pq: Optional[int] = typer.Option(None, "--max-pq", help="Largest p of the torus sweep"),
    verbose: bool = VERBOSE,
) -> None:
    """Cross-check the fast algorithms against the oracles and sweep the torus invariants."""
    record = run("verify", verbose, max_len=max_len, max_pq=max_pq)
    if not record.trace["passed"]:
        raise typer.Exit(code=1)
