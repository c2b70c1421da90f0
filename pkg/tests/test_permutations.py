from itertools import permutations

import pytest

from flatband.loops.permutations import (
    Block, distance_violation, is_valid_decomposition, special_permutation_decompose,
)


def tileable(sigma):
    """Whether 1..n splits into intervals on which sigma is the identity or a reversal"""
    n = len(sigma)
    reachable = [False] * (n + 1)
    reachable[0] = True
    for a in range(1, n + 1):
        if not reachable[a - 1]:
            continue
        b = a
        while b <= n and sigma[b - 1] == b:
            reachable[b] = True
            b += 1
        top = sigma[a - 1]
        if top > a and all(sigma[i - 1] == a + top - i for i in range(a, top + 1)):
            reachable[top] = True
    return reachable[n]


class TestDecomposition:
    def test_identity(self):
        result = special_permutation_decompose([1, 2, 3])
        assert result.ok and result.blocks == (Block(1, 3, "identity"),)

    def test_reflection(self):
        assert special_permutation_decompose([3, 2, 1]).blocks == (Block(1, 3, "reflection"),)

    def test_mixed(self):
        assert special_permutation_decompose([2, 1, 3, 5, 4]).blocks == (
            Block(1, 2, "reflection"), Block(3, 3, "identity"), Block(4, 5, "reflection"),
        )

    def test_violation(self):
        result = special_permutation_decompose([2, 3, 1])
        assert not result.ok
        assert result.violation == (1, 3)
        assert distance_violation([1, 2]) is None

    def test_not_a_permutation(self):
        with pytest.raises(ValueError):
            special_permutation_decompose([1, 1])

    def test_empty(self):
        assert special_permutation_decompose([]).blocks == ()

    def test_validity_check(self):
        assert not is_valid_decomposition([2, 1], [Block(1, 2, "identity")])
        assert not is_valid_decomposition([1, 2], [Block(1, 1, "identity")])


@pytest.mark.parametrize("n", range(1, 9))
def test_all_permutations(n):
    for sigma in permutations(range(1, n + 1)):
        result = special_permutation_decompose(sigma)
        assert result.ok == tileable(sigma), sigma
        if result.ok:
            assert is_valid_decomposition(sigma, result.blocks)
            kinds = [b.kind for b in result.blocks]
            assert all(not (a == b == "identity") for a, b in zip(kinds, kinds[1:]))
        else:
            i, k = result.violation
            assert sigma[i - 1] > sigma[k - 1] and sigma[i - 1] - sigma[k - 1] != k - i
