"""
Short tunnels of torus knots.

For p > q >= 2 write p/q = [n_1, ..., n_k]. The cabling sequence of the short
tunnel is read off the word U^{n_2} L^{n_3} U^{n_4} ... (last exponent lowered
by one) applied on the left of [[1, 0], [n_1, 1]]. The rows of the running
matrix are the torus knots of the principal pair, their sum is the knot of the
new tunnel, and the slope of each cabling after the first is the permanent of
the matrix. A negative q mirrors the knot and negates every slope.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from app.core.exceptions import TorusLinkError, TrivialKnotError
from app.services.corridor import SString, TunnelClass, depth
from app.services.exactnum import ContinuedFraction, L, Mat2, SimpleSlope, U, cf_expand, simple_slope

logger = logging.getLogger(__name__)

# Every tunnel of a torus knot has Hempel distance 2
TORUS_TUNNEL_DISTANCE = 2

_LETTER_MATRICES = {"U": U, "L": L}


@dataclass(frozen=True)
class TorusInput:
    p: int
    q: int


@dataclass(frozen=True)
class NormalizedTorus:
    """p > q >= 1 (or p = q = 1), with ``mirrored`` set when the input had opposite signs."""

    p: int
    q: int
    mirrored: bool = False

    @property
    def is_trivial(self) -> bool:
        return self.q <= 1


def normalize(torus: TorusInput) -> NormalizedTorus:
    """
    Sort |p|, |q| so that p > q and record whether the input was mirrored.

    Raises:
        TorusLinkError: If p or q is zero, or gcd(|p|, |q|) > 1
    """
    p, q = torus.p, torus.q
    if p == 0 or q == 0:
        raise TorusLinkError(detail=f"({p},{q}) has a zero coordinate and is not a torus knot")
    if gcd(p, q) != 1:
        raise TorusLinkError(
            detail=f"gcd({abs(p)},{abs(q)}) = {gcd(p, q)}; ({p},{q}) describes a torus link, not a knot"
        )
    mirrored = (p < 0) != (q < 0)
    big, small = max(abs(p), abs(q)), min(abs(p), abs(q))
    return NormalizedTorus(p=big, q=small, mirrored=mirrored)


def letter_word(cf: ContinuedFraction) -> str:
    """
    Chronological U/L word of the nontrivial cablings: n_2 Us, n_3 Ls, and so
    on, with the last block one letter short.

    Raises:
        TrivialKnotError: If the expansion has a single term
    """
    if len(cf) < 2:
        raise TrivialKnotError(detail=f"Expansion {cf} has one term; the knot is trivial")
    word = []
    for i, exponent in enumerate(cf.terms[1:], start=2):
        if i == len(cf):
            exponent -= 1
        word.append(("U" if i % 2 == 0 else "L") * exponent)
    return "".join(word)


@dataclass(frozen=True)
class CablingStep:
    """
    One cabling construction of the short tunnel.

    ``slope`` is None for the first construction, whose invariant is the simple slope.
    """

    letter: str
    matrix: Mat2
    slope: Optional[int]
    stage_knot: Tuple[int, int]


@dataclass(frozen=True)
class CablingTrace:
    cf: ContinuedFraction
    letters: str
    m0: SimpleSlope
    steps: Tuple[CablingStep, ...]
    s_string: SString
    mirrored: bool = False

    @property
    def slopes(self) -> List[int]:
        return [step.slope for step in self.steps[1:]]

    @property
    def cabling_count(self) -> int:
        return len(self.steps)

    def slope_line(self) -> str:
        """The slope sequence in the form ``[ 1/3 ], 5, 17, 29``."""
        return ", ".join([f"[ {self.m0} ]"] + [str(slope) for slope in self.slopes])


def _s_string_from_letters(letters: str) -> SString:
    # s_i compares the cablings producing tau_{i-1} and tau_i (letters i and i+1)
    return SString("".join(
        "0" if letters[i - 1] == letters[i] else "1"
        for i in range(2, len(letters))
    ))


def cabling_trace(nt: NormalizedTorus) -> CablingTrace:
    """
    Matrices, slopes and stage knots of every cabling of the short tunnel.

    Raises:
        TrivialKnotError: If q = 1
    """
    if nt.is_trivial:
        raise TrivialKnotError(detail=f"The ({nt.p},{nt.q}) torus knot is trivial")

    cf = cf_expand(nt.p, nt.q)
    letters = letter_word(cf)
    sign = -1 if nt.mirrored else 1

    matrix = Mat2(1, 0, cf[0], 1)
    steps = []
    m0 = None
    for position, letter in enumerate(letters):
        matrix = _LETTER_MATRICES[letter] @ matrix
        if position == 0:
            m0 = simple_slope(1, matrix.permanent)
            slope = None
        else:
            slope = sign * matrix.permanent
        steps.append(CablingStep(letter=letter, matrix=matrix, slope=slope, stage_knot=matrix.row_sums))

    if nt.mirrored:
        m0 = m0.negate()

    trace = CablingTrace(
        cf=cf,
        letters=letters,
        m0=m0,
        steps=tuple(steps),
        s_string=_s_string_from_letters(letters),
        mirrored=nt.mirrored,
    )
    logger.debug(f"Cabling trace of ({nt.p},{nt.q}): cf={cf} letters={letters} slopes={trace.slope_line()}")
    return trace


def s_string(nt: NormalizedTorus) -> SString:
    """
    Parameter string of the short tunnel: s_i is 0 when the cablings producing
    tau_{i-1} and tau_i replace the same member of the principal pair.

    Raises:
        TrivialKnotError: If q = 1
    """
    if nt.is_trivial:
        raise TrivialKnotError(detail=f"The ({nt.p},{nt.q}) torus knot is trivial")
    return _s_string_from_letters(letter_word(cf_expand(nt.p, nt.q)))


def torus_depth(nt: NormalizedTorus) -> int:
    """Depth of the short tunnel, 0 for the trivial knot."""
    if nt.is_trivial:
        return 0
    return depth(s_string(nt))


def torus_classify(torus: TorusInput) -> TunnelClass:
    """
    Class of the short tunnel: regular exactly when p is not congruent to
    +1 or -1 modulo q.

    Raises:
        TorusLinkError: If gcd(|p|, |q|) > 1
    """
    nt = normalize(torus)
    if nt.is_trivial:
        return TunnelClass.TRIVIAL
    if nt.q == 2:
        return TunnelClass.SIMPLE
    if nt.p % nt.q in (1, nt.q - 1):
        return TunnelClass.SEMISIMPLE
    return TunnelClass.REGULAR


def torus_bridge_number(nt: NormalizedTorus) -> int:
    """Bridge number of the torus knot, which is q when p > q."""
    return nt.q


def convergents(cf: ContinuedFraction) -> List[Fraction]:
    """Values of the truncations [n_1], [n_1, n_2], ..., [n_1, ..., n_k]."""
    values = []
    h_prev, h = 1, cf[0]
    k_prev, k = 0, 1
    values.append(Fraction(h, k))
    for term in cf.terms[1:]:
        h_prev, h = h, term * h + h_prev
        k_prev, k = k, term * k + k_prev
        values.append(Fraction(h, k))
    return values


def pell_family(count: int) -> List[NormalizedTorus]:
    """
    The torus knots with p/q = [1, 2], [1, 2, 2], ...; (3,2), (7,5), (17,12), ...

    Their short tunnels gain one level of depth per knot at the least possible
    bridge number.
    """
    expansion = ContinuedFraction((1,) + (2,) * count)
    return [
        NormalizedTorus(p=value.numerator, q=value.denominator)
        for value in convergents(expansion)[1:]
    ]
