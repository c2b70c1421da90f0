"""
Block structure of permutations whose inversions preserve distances.

If every inversion pair (i, k) of sigma has |sigma(i) - sigma(k)| = |i - k|,
{1..n} splits into consecutive intervals on each of which sigma is the
identity or the reflection of the interval.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple


@dataclass(frozen=True)
class Block:
    start: int
    end: int
    kind: str  # "identity" or "reflection"

    def image(self, i: int) -> int:
        return i if self.kind == "identity" else self.start + self.end - i


@dataclass(frozen=True)
class PermutationDecomposition:
    blocks: Tuple[Block, ...] = ()
    violation: Optional[Tuple[int, int]] = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def _check_permutation(sigma: Sequence[int]):
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"not a permutation of 1..{len(sigma)}: {list(sigma)}")


def distance_violation(sigma: Sequence[int]) -> Optional[Tuple[int, int]]:
    """First inversion pair (i, k), 1-based with i < k, whose distance changes"""
    for i, k in combinations(range(1, len(sigma) + 1), 2):
        a, b = sigma[i - 1], sigma[k - 1]
        if a > b and a - b != k - i:
            return (i, k)
    return None


def special_permutation_decompose(sigma: Sequence[int]) -> PermutationDecomposition:
    """Maximal identity runs and reflected intervals, or the inversion pair that rules them out"""
    sigma = list(sigma)
    _check_permutation(sigma)
    violation = distance_violation(sigma)
    if violation is not None:
        return PermutationDecomposition(violation=violation)

    blocks = []
    n = len(sigma)
    i = 1
    while i <= n:
        if sigma[i - 1] == i:
            end = i
            while end < n and sigma[end] == end + 1:
                end += 1
            blocks.append(Block(i, end, "identity"))
        else:
            # earlier blocks are invariant, so sigma(i) > i
            end = sigma[i - 1]
            blocks.append(Block(i, end, "reflection"))
        i = end + 1
    return PermutationDecomposition(blocks=tuple(blocks))


def is_valid_decomposition(sigma: Sequence[int], blocks: Sequence[Block]) -> bool:
    """Blocks tile 1..n in order and sigma acts on each as its kind says"""
    expected = 1
    for block in blocks:
        if block.start != expected or block.end < block.start:
            return False
        if any(sigma[i - 1] != block.image(i) for i in range(block.start, block.end + 1)):
            return False
        expected = block.end + 1
    return expected == len(sigma) + 1
