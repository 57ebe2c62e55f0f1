"""Frozen reference sequences used by the regression checks and the CLI.

Indices are node counts unless stated otherwise.  Where a sequence is
listed in the OEIS the id is noted for cross-reference.
"""

# Balanced binary trees by node count (OEIS A006265).
BALANCED_COUNTS = [
    1, 1, 2, 1, 4, 6, 4, 17, 32, 44, 60, 70, 184, 476, 872, 1553, 2720,
    4288, 6312, 9004,
]

# Balanced trees that no conservative rotation leaves balanced (maximal
# elements of the balanced subposets), by node count.
MAXIMAL_BALANCED_COUNTS = [
    1, 1, 1, 1, 2, 2, 2, 4, 6, 9, 11, 13, 22, 38, 60, 89, 128, 183, 256,
    353, 512, 805, 1336, 2221, 3594, 5665, 8774, 13433, 20359, 30550,
    45437, 67086, 98491, 144492, 213876,
]

# Rotation-order intervals whose members are all balanced, by node count.
BALANCED_INTERVAL_COUNTS = [
    1, 1, 3, 1, 7, 12, 6, 52, 119, 137, 195, 231, 1019, 3503, 6593,
    12616, 26178, 43500, 64157, 94688, 232560, 817757, 2233757, 5179734,
    11676838, 24867480,
]

# Balanced intervals with a minimal lower end and a maximal upper end.
MAXIMAL_INTERVAL_COUNTS = [
    1, 1, 1, 1, 3, 2, 2, 6, 9, 15, 15, 17, 41, 77, 125, 178, 252, 376,
    531, 740, 1192, 2179, 4273, 7738, 13012, 20776, 32389, 49841, 75457,
    113011, 168888, 252881, 379348,
]

# Maximal balanced intervals refined by hypercube dimension: leaf count
# (node count + 1) -> {dimension: count}.  Dimension zero entries count
# isolated balanced trees that are both minimal and maximal.
MAXIMAL_INTERVAL_DIMENSIONS = {
    1: {0: 1},
    2: {0: 1},
    3: {1: 1},
    4: {0: 1},
    5: {1: 3},
    6: {1: 1, 2: 1},
    7: {1: 2},
    8: {0: 1, 2: 4, 3: 1},
    9: {1: 4, 2: 4, 4: 1},
    10: {1: 3, 2: 9, 3: 3},
    11: {2: 9, 3: 6},
    12: {1: 1, 2: 13, 3: 2, 4: 1},
    13: {1: 6, 2: 4, 3: 16, 4: 15},
    14: {1: 2, 2: 18, 3: 31, 4: 12, 5: 14},
}

# Balanced trees whose every rotation keeps the result balanced (right
# interior), by height.  Equals 2 ** fib(h - 3) for h >= 3.
INTERIOR_BY_HEIGHT = [
    1, 1, 2, 1, 2, 2, 4, 8, 32, 256, 8192, 2097152, 17179869184,
]

# Trees whose every node has left and right subtree sizes within one of
# each other, by node count.
WEIGHT_BALANCED_COUNTS = [
    1, 1, 2, 1, 4, 4, 4, 1, 8, 16, 32, 16, 32, 16, 8, 1, 16, 64, 256,
    256, 1024, 1024,
]

# Trees whose every node has imbalance in {0, 1}, by node count.
ZERO_ONE_BALANCED_COUNTS = [
    1, 1, 1, 1, 1, 2, 2, 2, 3, 5, 7, 9, 11, 13, 17, 26, 42, 66, 97, 134,
    180, 241, 321, 424, 564, 774, 1111,
]

# Triangle of tree counts by node count n (rows 1..8) and number of
# nodes with a nonempty right subtree (k = 0..n-1).
NARAYANA_ROWS = {
    1: [1],
    2: [1, 1],
    3: [1, 3, 1],
    4: [1, 6, 6, 1],
    5: [1, 10, 20, 10, 1],
    6: [1, 15, 50, 50, 15, 1],
    7: [1, 21, 105, 175, 105, 21, 1],
    8: [1, 28, 196, 490, 490, 196, 28, 1],
}

# Component structure of the balanced subposets (cover edges between
# balanced trees): node count -> (sorted component sizes descending,
# matching edge counts).
SUBPOSET_STRUCTURE = {
    4: ((4,), (3,)),
    5: ((4, 2), (4, 1)),
    6: ((2, 2), (1, 1)),
    7: ((16, 1), (24, 0)),
    8: ((16, 8, 8), (32, 9, 9)),
    9: ((16, 8, 8, 8, 4), (24, 12, 12, 12, 3)),
}


def fib(n: int) -> int:
    """Fibonacci numbers with fib(0) = 0, fib(1) = 1."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a
