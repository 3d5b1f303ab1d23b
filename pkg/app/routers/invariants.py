"""
Invariants Router

Read-only endpoints over the command dispatcher. Every endpoint answers with
the same OutputRecord the CLI prints with --json.
"""

from fastapi import APIRouter, Query
from typing import Dict, List
import logging

from app.dispatchers.command_dispatcher import CommandDispatcher
from app.schemas.records import OutputRecord

# Configure logger
logger = logging.getLogger(__name__)

# Create router
router = APIRouter()


@router.get("/commands", response_model=Dict[str, List[str]])
async def list_commands():
    """List the commands the dispatcher supports."""
    return {"commands": CommandDispatcher.supported_commands()}


@router.get("/gst/{sstring}", response_model=OutputRecord)
async def giant_step_count(sstring: str):
    """Number of minimal giant step sequences, with the transfer matrix trace."""
    return CommandDispatcher.dispatch("gst", sstring=sstring)


@router.get("/depth/{sstring}", response_model=OutputRecord)
async def tunnel_depth(sstring: str):
    """Depth of tau_n with the full depth profile."""
    return CommandDispatcher.dispatch("depth", sstring=sstring)


@router.get("/bridge/lower/{sstring}", response_model=OutputRecord)
async def bridge_lower_bound(
    sstring: str,
    c2: int = Query(2, description="Bridge number of K at tau_{m-2}"),
    c3: int = Query(2, description="Bridge number of K at tau_{m-1}"),
):
    """Lower bound for the bridge number of K_{tau_n}."""
    return CommandDispatcher.dispatch("bridge-lb", sstring=sstring, c2=c2, c3=c3)


@router.get("/bridge/upper/{sstring}", response_model=OutputRecord)
async def bridge_upper_bound(sstring: str):
    """Upper bound for the bridge number of K_{tau_n}."""
    return CommandDispatcher.dispatch("bridge-ub", sstring=sstring)


@router.get("/torus/{p}/{q}/slopes", response_model=OutputRecord)
async def torus_slopes(p: int, q: int):
    """Slope sequence and cabling trace of the short tunnel of the (p,q) torus knot."""
    return CommandDispatcher.dispatch("torus-slopes", p=p, q=q)


@router.get("/torus/{p}/{q}/depth", response_model=OutputRecord)
async def torus_depth(p: int, q: int):
    return CommandDispatcher.dispatch("torus-depth", p=p, q=q)


@router.get("/torus/{p}/{q}/sstring", response_model=OutputRecord)
async def torus_sstring(p: int, q: int):
    return CommandDispatcher.dispatch("torus-sstring", p=p, q=q)


@router.get("/torus/{p}/{q}/classify", response_model=OutputRecord)
async def torus_classify(p: int, q: int):
    return CommandDispatcher.dispatch("torus-classify", p=p, q=q)


@router.get("/bounds/min-bridge/{d}", response_model=OutputRecord)
async def min_bridge(d: int):
    return CommandDispatcher.dispatch("minbridge", d=d)


@router.get("/bounds/torus-min-bridge/{d}", response_model=OutputRecord)
async def torus_min_bridge(d: int):
    return CommandDispatcher.dispatch("torus-minbridge", d=d)


@router.get("/bounds/max-bridge/{n}", response_model=OutputRecord)
async def max_bridge(n: int):
    return CommandDispatcher.dispatch("maxbridge", n=n)


@router.get("/bounds/fibonacci-upper/{n}/{m}", response_model=OutputRecord)
async def fibonacci_upper(n: int, m: int):
    """Fibonacci bound m F_{n-m+2} + F_{n-m+1}."""
    return CommandDispatcher.dispatch("fib-ub", n=n, m=m)
