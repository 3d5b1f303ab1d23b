"""
Bridge number bounds along the principal path of a regular tunnel.

Lower and upper bounds come from the same additive iteration: starting with
values at tau_{m-2} and tau_{m-1}, each later tunnel gets the sum of the values
of the two members of its principal pair. Bridge numbers of the two depth one
knots give a lower bound; the seeds m and m + 1 give an upper bound.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from app.core.exceptions import ValidationException
from app.services.corridor import SString, build_corridor, first_regular_index
from app.services.exactnum import fibonacci

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IterationResult:
    """Values of the additive iteration at tau_{m-2}, tau_{m-1} (seeds) and tau_m..tau_n."""

    m: int
    seeds: Tuple[int, int]
    values: Tuple[int, ...]

    @property
    def final(self) -> int:
        return self.values[-1]

    @property
    def sequence(self) -> Tuple[int, ...]:
        """Every value from tau_{m-2} to tau_n."""
        return self.seeds + self.values

    def value_at(self, k: int) -> int:
        """Value assigned to tau_k, for m - 2 <= k <= n."""
        return self.sequence[k - (self.m - 2)]


def additive_iteration(s: SString, seed_a: int, seed_b: int) -> IterationResult:
    """
    Run the additive iteration over the principal path of s.

    Args:
        s: Parameter string with at least one 1
        seed_a: Value at tau_{m-2}
        seed_b: Value at tau_{m-1}

    Raises:
        NotRegularError: If s has no 1
        ValidationException: If a seed is below 1
    """
    m = first_regular_index(s)
    if seed_a < 1 or seed_b < 1:
        raise ValidationException(detail=f"Seeds must be at least 1, got {seed_a} and {seed_b}")

    corridor = build_corridor(s)
    value = {m - 2: seed_a, m - 1: seed_b}
    for k in range(m, s.n + 1):
        value[k] = value[k - 1] + value[corridor.carried_at(k).index]

    result = IterationResult(
        m=m,
        seeds=(seed_a, seed_b),
        values=tuple(value[k] for k in range(m, s.n + 1)),
    )
    logger.debug(f"Additive iteration over {s.bits!r} from seeds {result.seeds}: {result.sequence}")
    return result


def lower_bound(s: SString, c2: int, c3: int) -> int:
    """Lower bound for the bridge number of K_{tau_n}, given the bridge numbers c2, c3 of the last depth one knots."""
    return additive_iteration(s, c2, c3).final


def upper_bound_iteration(s: SString) -> IterationResult:
    m = first_regular_index(s)
    return additive_iteration(s, m, m + 1)


def upper_bound(s: SString) -> int:
    """Upper bound for the bridge number of K_{tau_n}, seeding tau_{m-2} with m and tau_{m-1} with m + 1."""
    return upper_bound_iteration(s).final


def cheapest_descent(b2: int, b3: int, j_max: int) -> List[int]:
    """
    The sequence b_2, ..., b_{j_max} of a path of cheapest descent:
    b_{2n} = b_{2n-1} + b_{2n-2} and b_{2n+1} = b_{2n} + b_{2n-2}.
    """
    if j_max < 3:
        raise ValidationException(detail=f"j_max must be at least 3, got {j_max}")
    if b2 > b3:
        raise ValidationException(detail=f"Cheapest descent needs b2 <= b3, got b2={b2}, b3={b3}")

    sequence = [b2, b3]
    for j in range(4, j_max + 1):
        # sequence[i] holds b_{i+2}
        if j % 2 == 0:
            sequence.append(sequence[j - 3] + sequence[j - 4])
        else:
            sequence.append(sequence[j - 3] + sequence[j - 5])
    return sequence


def _doubling_recursion(first: int, second: int, d: int) -> int:
    """a_1 = first, a_2 = second, a_d = 2 a_{d-1} + a_{d-2}."""
    if d < 1:
        raise ValidationException(detail=f"Depth must be at least 1, got {d}")
    if d == 1:
        return first
    previous, current = first, second
    for _ in range(d - 2):
        previous, current = current, 2 * current + previous
    return current


def min_bridge_at_depth(d: int) -> int:
    """Smallest bridge number of a knot with a tunnel of depth d."""
    return _doubling_recursion(2, 4, d)


def minimal_tunnel(d: int) -> SString:
    """
    A tunnel of depth d whose lower bound with seeds 2, 2 is min_bridge_at_depth(d).

    Its principal path follows a path of cheapest descent: "1" for d = 2, then
    one more "10" per extra level. The empty string stands for depth one.
    """
    if d < 1:
        raise ValidationException(detail=f"Depth must be at least 1, got {d}")
    if d == 1:
        return SString("")
    return SString("10" * (d - 2) + "1")


def torus_min_bridge_at_depth(d: int) -> int:
    """Smallest bridge number of a torus knot whose short tunnel has depth d."""
    return _doubling_recursion(2, 5, d)


def semisimple_upper(m: int) -> int:
    """Bridge number bound m + 1 for a semisimple tunnel built by m cablings."""
    if m < 1:
        raise ValidationException(detail=f"Number of cablings must be at least 1, got {m}")
    return m + 1


def fibonacci_upper(n: int, m: int) -> int:
    """Bound m F_{n-m+2} + F_{n-m+1} for tau_n whose first depth two tunnel is tau_m."""
    if not n > m >= 2:
        raise ValidationException(detail=f"Fibonacci bound needs n > m >= 2, got n={n}, m={m}")
    return m * fibonacci(n - m + 2) + fibonacci(n - m + 1)


def max_bridge(n: int) -> int:
    """Largest bridge number F_{n+2} of a knot produced by n cabling constructions."""
    if n < 1:
        raise ValidationException(detail=f"Number of cablings must be at least 1, got {n}")
    return fibonacci(n + 2)
