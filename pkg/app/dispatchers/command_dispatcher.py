"""
Command Dispatcher

Routes a command name to the library operation behind it. Every handler
validates its arguments, calls exactly one operation or scan and returns an
OutputRecord, so the CLI and the HTTP surface render identical values.
"""
import logging
from math import gcd
from typing import Any, Callable, Dict, List, Optional

from app.core.exceptions import TorusLinkError, ValidationException
from app.schemas.records import OutputRecord
from app.services.bounds import (
    additive_iteration,
    fibonacci_upper,
    max_bridge,
    min_bridge_at_depth,
    minimal_tunnel,
    torus_min_bridge_at_depth,
    upper_bound_iteration,
)
from app.services.corridor import TunnelClass, build_corridor, depth_profile, parse_sstring
from app.services.giantsteps import contains_sparsity_witness, count_minimal_fast
from app.services.torus import (
    TORUS_TUNNEL_DISTANCE,
    NormalizedTorus,
    TorusInput,
    cabling_trace,
    normalize,
    torus_bridge_number,
    torus_classify,
    torus_depth,
)
from app.services.verification_service import VerificationService

logger = logging.getLogger(__name__)

Handler = Callable[..., OutputRecord]

TABLE_FIELDS = ("depth", "sstring", "class", "bridge", "slopes")

TRIVIAL = "trivial"


def _rows(matrix) -> List[List[int]]:
    return [list(row) for row in matrix.rows()]


def run_gst(sstring: str) -> OutputRecord:
    s = parse_sstring(sstring)
    counted = count_minimal_fast(s)
    decomposition = counted.decomposition

    if decomposition is None:
        trace: Dict[str, Any] = {"depth": 1, "blocks": []}
    else:
        trace = {
            "depth": decomposition.depth,
            "semisimple_prefix_length": decomposition.semisimple_prefix_length,
            "blocks": list(decomposition.blocks),
            "configurations": [config.value for config in decomposition.configs],
            "matrices": [_rows(matrix) for matrix in decomposition.matrices],
            "product": _rows(counted.product),
            "final_configuration": decomposition.final_config.value if decomposition.final_config else None,
            "final_vector": list(decomposition.final_vector),
            "leftover": decomposition.leftover,
            "sparsity_witness": contains_sparsity_witness(decomposition.configs),
        }
    return OutputRecord(command="gst", input={"sstring": s.bits}, result=counted.count, trace=trace)


def run_depth(sstring: str) -> OutputRecord:
    s = parse_sstring(sstring)
    corridor = build_corridor(s)
    profile = depth_profile(corridor)
    return OutputRecord(
        command="depth",
        input={"sstring": s.bits},
        result=profile.final_depth,
        trace={
            "carried": [str(vertex) for vertex in corridor.carried],
            "depths": list(profile.depth),
            "counts": list(profile.counts),
        },
    )


def run_bridge_lb(sstring: str, c2: int, c3: int) -> OutputRecord:
    s = parse_sstring(sstring)
    iteration = additive_iteration(s, c2, c3)
    return OutputRecord(
        command="bridge-lb",
        input={"sstring": s.bits, "c2": c2, "c3": c3},
        result=iteration.final,
        trace={
            "m": iteration.m,
            "sequence": [iteration.value_at(k) for k in range(iteration.m - 2, s.n + 1)],
        },
    )


def run_bridge_ub(sstring: str) -> OutputRecord:
    s = parse_sstring(sstring)
    iteration = upper_bound_iteration(s)
    return OutputRecord(
        command="bridge-ub",
        input={"sstring": s.bits},
        result=iteration.final,
        trace={
            "m": iteration.m,
            "seeds": list(iteration.seeds),
            "sequence": list(iteration.sequence),
            "fibonacci_upper": fibonacci_upper(s.n + 1, iteration.m),
        },
    )


def run_minbridge(d: int) -> OutputRecord:
    return OutputRecord(
        command="minbridge",
        input={"d": d},
        result=min_bridge_at_depth(d),
        trace={
            "recursion": [min_bridge_at_depth(k) for k in range(1, d + 1)],
            "witness": minimal_tunnel(d).bits,
        },
    )


def run_torus_minbridge(d: int) -> OutputRecord:
    return OutputRecord(
        command="torus-minbridge",
        input={"d": d},
        result=torus_min_bridge_at_depth(d),
        trace={"recursion": [torus_min_bridge_at_depth(k) for k in range(1, d + 1)]},
    )


def run_maxbridge(n: int) -> OutputRecord:
    return OutputRecord(command="maxbridge", input={"n": n}, result=max_bridge(n))


def run_fib_ub(n: int, m: int) -> OutputRecord:
    return OutputRecord(command="fib-ub", input={"n": n, "m": m}, result=fibonacci_upper(n, m))


def _trace_fields(nt: NormalizedTorus) -> Dict[str, Any]:
    trace = cabling_trace(nt)
    return {
        "normalized": [nt.p, nt.q],
        "mirrored": nt.mirrored,
        "continued_fraction": list(trace.cf.terms),
        "letters": trace.letters,
        "m0": str(trace.m0),
        "slopes": trace.slopes,
        "s_string": trace.s_string.bits,
        "steps": [
            {
                "letter": step.letter,
                "matrix": _rows(step.matrix),
                "slope": step.slope,
                "stage_knot": list(step.stage_knot),
            }
            for step in trace.steps
        ],
        "slope_line": trace.slope_line(),
    }


def run_torus_slopes(p: int, q: int) -> OutputRecord:
    nt = normalize(TorusInput(p, q))
    if nt.is_trivial:
        return OutputRecord(command="torus-slopes", input={"p": p, "q": q}, result=TRIVIAL, trace={})
    trace = _trace_fields(nt)
    return OutputRecord(command="torus-slopes", input={"p": p, "q": q}, result=trace["slope_line"], trace=trace)


def run_torus_depth(p: int, q: int) -> OutputRecord:
    nt = normalize(TorusInput(p, q))
    trace = {"s_string": None if nt.is_trivial else cabling_trace(nt).s_string.bits}
    return OutputRecord(command="torus-depth", input={"p": p, "q": q}, result=torus_depth(nt), trace=trace)


def run_torus_sstring(p: int, q: int) -> OutputRecord:
    nt = normalize(TorusInput(p, q))
    trace = cabling_trace(nt)
    return OutputRecord(
        command="torus-sstring",
        input={"p": p, "q": q},
        result=trace.s_string.bits,
        trace={"continued_fraction": list(trace.cf.terms), "letters": trace.letters},
    )


def run_torus_classify(p: int, q: int) -> OutputRecord:
    torus = TorusInput(p, q)
    tunnel_class = torus_classify(torus)
    nt = normalize(torus)
    if nt.is_trivial:
        trace: Dict[str, Any] = {
            "depth": 0,
            "s_string": None,
            "cabling_count": 0,
            "bridge_number": 1,
            "distance": None,
            "three_tunnels": False,
            "depth_distance_ok": None,
        }
    else:
        cabling = cabling_trace(nt)
        tunnel_depth = torus_depth(nt)
        trace = {
            "depth": tunnel_depth,
            "s_string": cabling.s_string.bits,
            "cabling_count": cabling.cabling_count,
            "bridge_number": torus_bridge_number(nt),
            "distance": TORUS_TUNNEL_DISTANCE,
            "three_tunnels": tunnel_class == TunnelClass.REGULAR,
            "depth_distance_ok": tunnel_depth >= TORUS_TUNNEL_DISTANCE - 1,
        }
    return OutputRecord(command="torus-classify", input={"p": p, "q": q}, result=tunnel_class.value, trace=trace)


def table_value(nt: NormalizedTorus, field: str) -> Any:
    """One torus-table cell."""
    if field == "depth":
        return torus_depth(nt)
    if field == "bridge":
        return 1 if nt.is_trivial else torus_bridge_number(nt)
    if field == "class":
        return TunnelClass.TRIVIAL.value if nt.is_trivial else torus_classify(TorusInput(nt.p, nt.q)).value
    if nt.is_trivial:
        return "" if field == "sstring" else TRIVIAL
    trace = cabling_trace(nt)
    return trace.s_string.bits if field == "sstring" else trace.slope_line()


def run_torus_table(p: int, start: int, stop: int, field: str) -> OutputRecord:
    """
    Evaluate one field over the torus knots (p, n) for n = start..stop.

    Rows with gcd(p, n) > 1 are links and are skipped.
    """
    if field not in TABLE_FIELDS:
        raise ValidationException(detail=f"Unknown table field {field!r}; choose one of {', '.join(TABLE_FIELDS)}")
    if p == 0:
        raise TorusLinkError(detail="p must be nonzero")
    if start < 1 or start > stop:
        raise ValidationException(detail=f"Table range must satisfy 1 <= from <= to, got {start}..{stop}")

    rows = []
    skipped = []
    for n in range(start, stop + 1):
        if gcd(p, n) != 1:
            skipped.append(n)
            continue
        rows.append([n, table_value(normalize(TorusInput(p, n)), field)])

    logger.debug(f"Table of {field} for p={p}, n={start}..{stop}: {len(rows)} rows, {len(skipped)} skipped")
    return OutputRecord(
        command="torus-table",
        input={"p": p, "from": start, "to": stop, "field": field},
        result=[value for _, value in rows],
        trace={"rows": rows, "skipped": skipped},
    )


def run_verify(max_len: Optional[int] = None, max_pq: Optional[int] = None) -> OutputRecord:
    report = VerificationService().run(max_len, max_pq)
    return OutputRecord(
        command="verify",
        input={"max_len": report.max_len, "max_pq": report.max_pq},
        result=report.summary(),
        trace=report.model_dump(),
    )


class CommandDispatcher:
    """Registry of command handlers shared by the CLI and the HTTP router."""

    _command_registry: Dict[str, Handler] = {
        "gst": run_gst,
        "depth": run_depth,
        "bridge-lb": run_bridge_lb,
        "bridge-ub": run_bridge_ub,
        "minbridge": run_minbridge,
        "torus-minbridge": run_torus_minbridge,
        "maxbridge": run_maxbridge,
        "fib-ub": run_fib_ub,
        "torus-slopes": run_torus_slopes,
        "torus-depth": run_torus_depth,
        "torus-sstring": run_torus_sstring,
        "torus-classify": run_torus_classify,
        "torus-table": run_torus_table,
        "verify": run_verify,
    }

    @classmethod
    def get_handler(cls, command: str) -> Handler:
        """
        Get the handler for a command.

        Raises:
            ValidationException: If the command is not registered
        """
        if not cls.supports_command(command):
            raise ValidationException(
                detail=f"Unknown command {command!r}. Supported commands: {', '.join(cls.supported_commands())}"
            )
        return cls._command_registry[command]

    @classmethod
    def supported_commands(cls) -> List[str]:
        return list(cls._command_registry.keys())

    @classmethod
    def supports_command(cls, command: str) -> bool:
        return command in cls._command_registry

    @classmethod
    def register_command(cls, command: str, handler: Handler) -> None:
        cls._command_registry[command] = handler
        logger.info(f"Registered handler {handler.__name__} for command {command}")

    @classmethod
    def dispatch(cls, command: str, **arguments: Any) -> OutputRecord:
        """Run a command and return its record."""
        handler = cls.get_handler(command)
        logger.debug(f"Dispatching {command} with {arguments}")
        return handler(**arguments)
