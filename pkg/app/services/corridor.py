"""
Parameter strings, corridors and the breadth-first depth oracle.

A regular tunnel tau_n is determined, for depth and counting purposes, by its
binary parameter string s_2 s_3 ... s_n. The string fixes the corridor of the
tunnel: tunnel vertices tau_0 ... tau_n and one primitive vertex pi_0, where
tau_i is joined to tau_{i-1} and to the disk carried from the previous pair.
Minimal paths stay inside the corridor, so a breadth-first search over this
small graph gives exact depths and exact numbers of minimal giant step
sequences.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from app.core.exceptions import InvalidSStringError, NotRegularError, ValidationException

logger = logging.getLogger(__name__)

# Subscripts of the parameter string start at 2
FIRST_SUBSCRIPT = 2


@dataclass(frozen=True)
class SString:
    """The parameter string s_2 ... s_n; ``bits[0]`` is s_2."""

    bits: str = ""

    def __post_init__(self):
        for position, char in enumerate(self.bits):
            if char not in "01":
                raise InvalidSStringError(
                    detail=f"Invalid character {char!r} at s_{position + FIRST_SUBSCRIPT} "
                           f"of parameter string {self.bits!r}; only 0 and 1 are allowed"
                )

    @property
    def n(self) -> int:
        """Subscript of the last tunnel tau_n."""
        return len(self.bits) + 1

    @property
    def is_regular(self) -> bool:
        return "1" in self.bits

    def s(self, i: int) -> int:
        """The parameter s_i, for 2 <= i <= n."""
        if not FIRST_SUBSCRIPT <= i <= self.n:
            raise ValidationException(detail=f"s_{i} is outside s_2..s_{self.n}")
        return int(self.bits[i - FIRST_SUBSCRIPT])

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits


def parse_sstring(text: str) -> SString:
    """
    Parse a parameter string, leftmost character first (s_2).

    Surrounding whitespace is ignored; anything else outside {0,1} is an error.
    """
    return SString(text.strip())


@dataclass(frozen=True)
class CorridorVertex:
    """The primitive vertex (index None) or the tunnel vertex tau_index."""

    index: Optional[int] = None

    @property
    def is_primitive(self) -> bool:
        return self.index is None

    def __str__(self) -> str:
        return "P" if self.index is None else f"T{self.index}"


PRIMITIVE = CorridorVertex()


def tunnel(index: int) -> CorridorVertex:
    return CorridorVertex(index)


@dataclass(frozen=True)
class CorridorGraph:
    """
    Quotient 1-skeleton of a corridor.

    ``carried[i - 1]`` is c_i, the disk carried into the pair mu_i, for 1 <= i <= n.
    """

    n: int
    carried: Tuple[CorridorVertex, ...]

    def carried_at(self, i: int) -> CorridorVertex:
        return self.carried[i - 1]

    def neighbors_below(self, i: int) -> Tuple[CorridorVertex, ...]:
        """Neighbours of tau_i that come earlier on the principal path."""
        if i == 0:
            return (PRIMITIVE,)
        return (tunnel(i - 1), self.carried_at(i))

    def adjacency(self) -> Dict[CorridorVertex, List[CorridorVertex]]:
        """Undirected adjacency lists, each list in index order."""
        graph: Dict[CorridorVertex, List[CorridorVertex]] = {PRIMITIVE: []}
        for i in range(self.n + 1):
            graph.setdefault(tunnel(i), [])
            for other in self.neighbors_below(i):
                if other not in graph[tunnel(i)]:
                    graph[tunnel(i)].append(other)
                    graph[other].append(tunnel(i))
        return graph


def build_corridor(s: SString) -> CorridorGraph:
    """
    Apply the carrying rule: c_1 is primitive, then c_i = c_{i-1} when s_i = 0
    and c_i = tau_{i-2} when s_i = 1.
    """
    carried = [PRIMITIVE]
    for i in range(FIRST_SUBSCRIPT, s.n + 1):
        carried.append(carried[-1] if s.s(i) == 0 else tunnel(i - 2))
    return CorridorGraph(n=s.n, carried=tuple(carried))


@dataclass(frozen=True)
class DepthProfile:
    """Depths d_0..d_n and minimal path counts N_0..N_n of the tunnels of a corridor."""

    depth: Tuple[int, ...]
    counts: Tuple[int, ...]

    @property
    def final_depth(self) -> int:
        return self.depth[-1]

    @property
    def final_count(self) -> int:
        return self.counts[-1]


def depth_profile(g: CorridorGraph) -> DepthProfile:
    """
    Breadth-first search from the primitive vertex, counting shortest paths.

    Each vertex's count is the sum of the counts of its neighbours one level up.
    """
    graph = g.adjacency()
    distance = {PRIMITIVE: 0}
    paths = {PRIMITIVE: 1}
    queue = deque([PRIMITIVE])
    while queue:
        vertex = queue.popleft()
        for neighbor in graph[vertex]:
            if neighbor not in distance:
                distance[neighbor] = distance[vertex] + 1
                paths[neighbor] = 0
                queue.append(neighbor)
            if distance[neighbor] == distance[vertex] + 1:
                paths[neighbor] += paths[vertex]

    tunnels = [tunnel(i) for i in range(g.n + 1)]
    profile = DepthProfile(
        depth=tuple(distance[v] for v in tunnels),
        counts=tuple(paths[v] for v in tunnels),
    )
    logger.debug(f"Depth profile for n={g.n}: depths={profile.depth} counts={profile.counts}")
    return profile


def depth(s: SString) -> int:
    """Depth of tau_n."""
    return depth_profile(build_corridor(s)).final_depth


def count_minimal_oracle(s: SString) -> int:
    """Number of minimal giant step sequences producing tau_n, by exhaustive path counting."""
    return depth_profile(build_corridor(s)).final_count


def first_regular_index(s: SString) -> int:
    """
    Subscript m of the first s_m = 1; tau_m is the first tunnel of depth 2.

    Raises:
        NotRegularError: If s has no 1
    """
    position = s.bits.find("1")
    if position < 0:
        raise NotRegularError(detail=f"Parameter string {s.bits!r} has no 1, so the tunnel is not regular")
    return position + FIRST_SUBSCRIPT


class TunnelClass(str, Enum):
    TRIVIAL = "Trivial"
    SIMPLE = "Simple"
    SEMISIMPLE = "Semisimple"
    REGULAR = "Regular"


def classify(s: SString, cabling_count: int) -> TunnelClass:
    """
    Classify a tunnel from its parameter string and its number of cabling constructions.

    A nonempty string s_2..s_n belongs to a tunnel made by n + 1 cablings; the
    empty string can stand for up to two cablings.

    Raises:
        ValidationException: If the cabling count does not fit the string
    """
    if cabling_count < 0:
        raise ValidationException(detail=f"Cabling count must be nonnegative, got {cabling_count}")
    if len(s) > 0 and cabling_count != s.n + 1:
        raise ValidationException(
            detail=f"Parameter string of length {len(s)} needs {s.n + 1} cablings, got {cabling_count}"
        )
    if len(s) == 0 and cabling_count > 2:
        raise ValidationException(
            detail=f"An empty parameter string allows at most 2 cablings, got {cabling_count}"
        )

    if cabling_count == 0:
        return TunnelClass.TRIVIAL
    if cabling_count == 1:
        return TunnelClass.SIMPLE
    if not s.is_regular:
        return TunnelClass.SEMISIMPLE
    return TunnelClass.REGULAR
