"""Kernel certification: the closed-form nonzero test against the
brute-force relation-quotient oracle, and compiled vs pure agreement."""

import pytest

from uvknot import _kernel_py, kernel, oracle

CASES = [(1, 0), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (2, 3), (2, 4), (2, 5)]


@pytest.mark.parametrize("n,k", CASES)
def test_nonzero_matches_oracle(n, k):
    # exhaustive for n <= 2 and total weight <= 4 (doubled bound 8)
    table = oracle.nonzero_table(2 * n, k, 8)
    assert table, f"empty oracle table for n={n}, k={k}"
    for (x, y, w2), alive in table.items():
        assert kernel.is_nonzero(2 * n, x, y, w2) == alive, (n, k, bin(x), bin(y), w2)


@pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (2, 3)])
def test_compiled_equals_pure(n, k):
    table = oracle.nonzero_table(2 * n, k, 6)
    for (x, y, w2), _ in table.items():
        assert kernel.is_nonzero(2 * n, x, y, w2) == _kernel_py.is_nonzero(2 * n, x, y, w2)


def test_v_vector_and_min_w2():
    # v of {0,2} on 2 strands is (1,1); of {1,3} on 4 strands is (2,1,1,0)
    assert kernel.v_vector(0b101, 2) == (1, 1)
    assert kernel.v_vector(0b1010, 4) == (2, 1, 1, 0)
    assert kernel.min_w2(0b011, 0b101, 2) == (0, 1)
    assert kernel.min_w2(0b001, 0b100, 2) == (1, 1)


def test_csign_merge_parity():
    for a in range(16):
        for b in range(16):
            if a & b:
                continue
            assert kernel.csign(a, b) == _kernel_py.csign(a, b)
    # one inversion: {1} after {0}? merging cf {bit1} then {bit0}
    assert kernel.csign(0b10, 0b01) == 1
    assert kernel.csign(0b01, 0b10) == 0


def test_known_dead_patterns():
    # R1 R2 = 0: minimal element {0} -> {2} dies entirely
    assert not kernel.is_nonzero(2, 0b001, 0b100, (1, 1))
    # U1 U2 at the middle idempotent {1} dies; alive at {1,2}
    assert not kernel.is_nonzero(2, 0b010, 0b010, (2, 2))
    assert kernel.is_nonzero(2, 0b110, 0b110, (2, 2))
    # idempotent-killed U: I_{2} U_1 = 0
    assert not kernel.is_nonzero(2, 0b100, 0b100, (2, 0))
    assert kernel.is_nonzero(2, 0b001, 0b001, (2, 0))
