"""
Counting minimal giant step sequences with transfer matrices.

After the leading zeros, a parameter string splits into blocks of the forms
10, 11, 100+ and 110+. Every block starts at a nabla-edge of the corridor and
ends at the next one, one level deeper, so each block contributes one 2x2
transfer matrix. The count is

    [1 1] · M_2 · ... · M_{n-1} · (lambda_n, rho_n)^T

where the final vector comes from the last block (or is (1, 1) when the
string ends in a leftover 1).

Direction convention: the direction is the corridor side of the older
endpoint of the current nabla-edge. It starts on the left, 10 and 100+ blocks
flip it, and a block's configuration letter is the direction after the flip.
With this convention 0011100011100 reproduces L1, R2, R1 and a final L2, and
the final vector of a complete block is the unit vector on the side opposite
to its letter. Both choices agree with the breadth-first oracle in
app.services.corridor on every string.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce as fold
from typing import Optional, Sequence, Tuple

from app.services.corridor import SString, count_minimal_oracle, first_regular_index
from app.services.exactnum import IDENTITY, Mat2, mat_mul

logger = logging.getLogger(__name__)


class Config(str, Enum):
    L1 = "L1"
    R1 = "R1"
    L2 = "L2"
    R2 = "R2"

    @property
    def side(self) -> str:
        return self.value[0]

    @property
    def matrix(self) -> Mat2:
        return TRANSFER_MATRICES[self]

    @classmethod
    def of(cls, side: str, multi: bool) -> "Config":
        return cls(f"{side}{2 if multi else 1}")


TRANSFER_MATRICES = {
    Config.L1: Mat2.from_rows([[1, 0], [1, 1]]),
    Config.R1: Mat2.from_rows([[1, 1], [0, 1]]),
    Config.L2: Mat2.from_rows([[0, 0], [1, 1]]),
    Config.R2: Mat2.from_rows([[1, 1], [0, 0]]),
}

_OPPOSITE = {"L": "R", "R": "L"}

# Unit vector (lambda_n, rho_n) of a final block, keyed by its letter
_FINAL_VECTORS = {"L": (0, 1), "R": (1, 0)}
LEFTOVER_VECTOR = (1, 1)

SPARSITY_PATTERN = (Config.R1, Config.L1, Config.R1, Config.L1)
SPARSITY_WITNESS = fold(mat_mul, (config.matrix for config in SPARSITY_PATTERN), IDENTITY)


@dataclass(frozen=True)
class BlockDecomposition:
    """
    Block structure of a regular parameter string.

    ``configs`` holds one configuration per intermediate block. When the string
    ends in a leftover 1 every block is intermediate and ``final_config`` is None.
    """

    semisimple_prefix_length: int
    blocks: Tuple[str, ...]
    configs: Tuple[Config, ...]
    final_config: Optional[Config]
    final_vector: Tuple[int, int]
    leftover: bool = False

    @property
    def depth(self) -> int:
        """Each block, and a leftover 1, lowers the corridor by one level below depth 1."""
        return 1 + len(self.blocks) + (1 if self.leftover else 0)

    @property
    def matrices(self) -> Tuple[Mat2, ...]:
        return tuple(config.matrix for config in self.configs)

    def reassemble(self) -> str:
        return "0" * self.semisimple_prefix_length + "".join(self.blocks) + ("1" if self.leftover else "")


def _read_block(bits: str, start: int) -> str:
    """Greedy block starting at the 1 in position ``start``."""
    end = start + 1
    if bits[end] == "1":
        end += 1
    while end < len(bits) and bits[end] == "0":
        end += 1
    return bits[start:end]


def decompose(s: SString) -> BlockDecomposition:
    """
    Split a regular parameter string into blocks and assign configurations.

    Raises:
        NotRegularError: If s has no 1
    """
    start = first_regular_index(s) - 2
    bits = s.bits
    direction = "L"
    blocks = []
    configs = []
    leftover = False

    position = start
    while position < len(bits):
        if position + 1 == len(bits):
            leftover = True
            break
        block = _read_block(bits, position)
        flips = block[1] == "0"
        multi = len(block) >= 3
        if flips:
            direction = _OPPOSITE[direction]
        blocks.append(block)
        configs.append(Config.of(direction, multi))
        position += len(block)

    if leftover:
        final_config = None
        final_vector = LEFTOVER_VECTOR
    else:
        final_config = configs.pop()
        final_vector = _FINAL_VECTORS[final_config.side]

    decomposition = BlockDecomposition(
        semisimple_prefix_length=start,
        blocks=tuple(blocks),
        configs=tuple(configs),
        final_config=final_config,
        final_vector=final_vector,
        leftover=leftover,
    )
    logger.debug(
        f"Decomposed {bits!r}: blocks={list(decomposition.blocks)} "
        f"configs={[c.value for c in decomposition.configs]} final={final_config} vector={final_vector}"
    )
    return decomposition


@dataclass(frozen=True)
class GiantStepCount:
    count: int
    decomposition: Optional[BlockDecomposition] = None
    product: Mat2 = field(default=IDENTITY)


def count_minimal_fast(s: SString) -> GiantStepCount:
    """
    Number of minimal giant step sequences producing tau_n, by transfer matrices.

    Depth one tunnels (no 1 in s) have a unique minimal sequence.
    """
    if not s.is_regular:
        return GiantStepCount(count=1)

    decomposition = decompose(s)
    product = fold(mat_mul, decomposition.matrices, IDENTITY)
    count = sum(product.apply(decomposition.final_vector))
    return GiantStepCount(count=count, decomposition=decomposition, product=product)


def contains_sparsity_witness(configs: Sequence[Config]) -> bool:
    """True when R1, L1, R1, L1 occur consecutively, which forces more than one minimal sequence."""
    width = len(SPARSITY_PATTERN)
    return any(
        tuple(configs[i:i + width]) == SPARSITY_PATTERN
        for i in range(len(configs) - width + 1)
    )


def counts_agree(s: SString) -> bool:
    """Compare the transfer matrix count with the breadth-first oracle."""
    return count_minimal_fast(s).count == count_minimal_oracle(s)
