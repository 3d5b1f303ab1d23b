"""
Exact arithmetic kernel.

Integers are Python ints, rationals are ``fractions.Fraction``. Slopes in Q/Z,
2x2 integer matrices and continued fractions are small frozen value types
built on top of them. Nothing in this package uses floating point.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Tuple

from app.core.exceptions import ValidationException

logger = logging.getLogger(__name__)


def reduce(num: int, den: int) -> Fraction:
    """
    Return num/den in lowest terms with the sign carried on the numerator.

    Raises:
        ValidationException: If den is zero
    """
    if den == 0:
        raise ValidationException(detail=f"Zero denominator in {num}/{den}")
    return Fraction(num, den)


@dataclass(frozen=True)
class SimpleSlope:
    """Canonical representative in [0,1) of a class in Q/Z."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise ValidationException(detail=f"Simple slope denominator must be positive, got {self.denominator}")
        if not 0 <= self.numerator < self.denominator:
            raise ValidationException(detail=f"Simple slope {self.numerator}/{self.denominator} is not in [0,1)")
        if gcd(self.numerator, self.denominator) != 1:
            raise ValidationException(detail=f"Simple slope {self.numerator}/{self.denominator} is not reduced")

    def negate(self) -> "SimpleSlope":
        """Negation in Q/Z."""
        return simple_slope(-self.numerator, self.denominator)

    @property
    def is_odd_denominator(self) -> bool:
        # Knot tunnels have odd denominators; even ones belong to link tunnels.
        return self.denominator % 2 == 1

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def simple_slope(num: int, den: int) -> SimpleSlope:
    """
    Reduce num/den modulo the integers.

    Examples:
        simple_slope(-1, 7) -> 6/7
        simple_slope(4, 3) -> 1/3
    """
    value = reduce(num, den)
    # Fraction keeps the denominator positive, so % lands in [0, den)
    return SimpleSlope(value.numerator % value.denominator, value.denominator)


@dataclass(frozen=True)
class Mat2:
    """The integer matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def permanent(self) -> int:
        return permanent(self)

    @property
    def row_sums(self) -> Tuple[int, int]:
        """Sum of the two rows, as a pair."""
        return (self.a + self.c, self.b + self.d)

    @property
    def min_entry(self) -> int:
        return min(self.a, self.b, self.c, self.d)

    def apply(self, vector: Tuple[int, int]) -> Tuple[int, int]:
        """Multiply the column vector on the right."""
        x, y = vector
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __str__(self) -> str:
        return f"[ [ {self.a}, {self.b} ], [ {self.c}, {self.d} ] ]"


IDENTITY = Mat2(1, 0, 0, 1)
U = Mat2(1, 1, 0, 1)
L = Mat2(1, 0, 1, 1)


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    """Exact product A·B."""
    return Mat2(
        A.a * B.a + A.b * B.c,
        A.a * B.b + A.b * B.d,
        A.c * B.a + A.d * B.c,
        A.c * B.b + A.d * B.d,
    )


def permanent(M: Mat2) -> int:
    """Product of the diagonal entries plus product of the off-diagonal entries."""
    return M.a * M.d + M.b * M.c


@dataclass(frozen=True)
class ContinuedFraction:
    """Simple continued fraction [n_1, n_2, ..., n_k] with positive terms."""

    terms: Tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValidationException(detail="A continued fraction needs at least one term")
        if any(term < 1 for term in self.terms):
            raise ValidationException(detail=f"Continued fraction terms must be positive: {list(self.terms)}")
        if len(self.terms) >= 2 and self.terms[-1] < 2:
            raise ValidationException(detail=f"Last term of {list(self.terms)} must be at least 2")

    @classmethod
    def from_terms(cls, terms: Iterable[int]) -> "ContinuedFraction":
        """Build an expansion, folding a trailing 1 into the previous term."""
        terms = list(terms)
        if len(terms) >= 2 and terms[-1] == 1:
            terms = terms[:-2] + [terms[-2] + 1]
        return cls(tuple(terms))

    def value(self) -> Fraction:
        result = Fraction(self.terms[-1])
        for term in reversed(self.terms[:-1]):
            result = term + 1 / result
        return result

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, index):
        return self.terms[index]

    def __str__(self) -> str:
        return "[" + ",".join(str(term) for term in self.terms) + "]"


def cf_expand(p: int, q: int) -> ContinuedFraction:
    """
    Euclidean-algorithm expansion of p/q.

    Args:
        p: Numerator, p > q
        q: Denominator, q >= 1 and coprime to p

    Returns:
        The expansion [n_1, ..., n_k]; n_k >= 2 whenever k >= 2

    Raises:
        ValidationException: If p <= q, q < 1 or gcd(p, q) != 1
    """
    if q < 1 or p <= q:
        raise ValidationException(detail=f"Continued fraction expansion needs p > q >= 1, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise ValidationException(detail=f"Continued fraction expansion needs coprime p and q, got p={p}, q={q}")

    terms = []
    while q:
        quotient, remainder = divmod(p, q)
        terms.append(quotient)
        p, q = q, remainder
    logger.debug(f"Expanded continued fraction: {terms}")
    return ContinuedFraction.from_terms(terms)


def fibonacci(n: int) -> int:
    """F_n with F_1 = F_2 = 1."""
    if n < 1:
        raise ValidationException(detail=f"Fibonacci index must be at least 1, got {n}")
    previous, current = 0, 1
    for _ in range(n - 1):
        previous, current = current, previous + current
    return current
