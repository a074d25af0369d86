"""Published reference values that the ``reproduce`` command checks against.

Matrices are transcribed verbatim, including their original orientation.
"""

from __future__ import annotations

# isomorphism-class counts E(m, r)
E_TABLE = {
    (4, 1): 1,
    (4, 2): 2,
    (5, 1): 1,
    (5, 2): 2,
    (6, 1): 1,
    (6, 2): 4,
    (6, 3): 7,
    (6, 4): 4,
}

# P2(m) listings; the m = 9 listing repeats (6,3) and omits (5,2,2)
P2_TABLE = {
    4: [(2, 2), (4,)],
    5: [(3, 2), (5,)],
    6: [(2, 2, 2), (3, 3), (4, 2), (6,)],
    7: [(3, 2, 2), (4, 3), (5, 2), (7,)],
    8: [(2, 2, 2, 2), (4, 2, 2), (6, 2), (4, 4), (5, 3), (3, 3, 2), (8,)],
}
P2_TABLE_ERRANT = {
    9: [(3, 2, 2, 2), (4, 3, 2), (6, 3), (5, 4), (6, 3), (7, 2), (3, 3, 3), (9,)],
}

PRINTED_PSI = {
    (6,): [
        [1, 0, 0, 0, 0, 1],
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1, 1],
    ],
    (2, 2, 2): [
        [1, 1, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 1],
    ],
    (4, 2): [
        [1, 0, 0, 1, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 1],
    ],
    (3, 3): [
        [1, 0, 1, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 1],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1, 1],
    ],
}

# a pair displayed as equivalent, and a pair displayed as inequivalent
ISOMORPHIC_PAIR = (
    [
        [0, 0, 0, 0, 1, 1],
        [1, 0, 0, 0, 0, 1],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 1, 0],
        [0, 1, 1, 0, 0, 0],
    ],
    [
        [1, 0, 0, 0, 0, 1],
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1, 1],
    ],
)
NONISOMORPHIC_PAIR = (
    ISOMORPHIC_PAIR[0],
    [
        [1, 0, 1, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 1],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1, 1],
    ],
)

# cycle indices as {exponent vector: (numerator, denominator)}
Z_S3 = {(3, 0, 0): (1, 6), (1, 1, 0): (1, 2), (0, 0, 1): (1, 3)}
Z_C3 = {(3, 0, 0): (1, 3), (0, 0, 1): (2, 3)}
Z_D3 = {(3, 0, 0): (1, 6), (1, 1, 0): (1, 2), (0, 0, 1): (1, 3)}
Z_D5 = {(5, 0, 0, 0, 0): (1, 10), (0, 0, 0, 0, 1): (4, 10), (1, 2, 0, 0, 0): (5, 10)}

CAP_VALUES = {
    "dihedral:5": 4,
    "symmetric:3": 1,
    "dihedral:3": 1,
}
