"""Golden tables and random-instance builders shared across the test suite."""

from __future__ import annotations

import numpy as np

from qgame import (
    RegisterLayout,
    SparseState,
    make_bimatrix,
    make_extensive_scheme,
    make_multi_initial,
    make_strategic,
    make_two_by_two,
    qubits,
)
from qgame.games import NormalFormGame

# Classical 4-stage centipede bimatrix, rows/cols SS, SC, CS, CC.
EQ_CLASSICAL_CENTIPEDE4 = [
    [(2, 0), (2, 0), (2, 0), (2, 0)],
    [(2, 0), (2, 0), (2, 0), (2, 0)],
    [(1, 3), (1, 3), (4, 2), (4, 2)],
    [(1, 3), (1, 3), (3, 5), (6, 4)],
]

# Quantum 4-stage centipede bimatrix, rows A000..A111, cols B000..B111.
EQ_QUANTUM_CENTIPEDE4 = [
    [(2, 0)] * 8,
    [(2, 0)] * 8,
    [(1, 3), (1, 3), (4, 2), (4, 2), (1, 3), (1, 3), (4, 2), (4, 2)],
    [(1, 3), (1, 3), (3, 5), (6, 4), (1, 3), (1, 3), (3, 5), (6, 4)],
    [(2, 0), (2, 0), (2, 0), (2, 0), (1, 3), (1, 3), (4.5, 4.5), (4.5, 4.5)],
    [(2, 0), (2, 0), (2, 0), (2, 0), (1, 3), (1, 3), (4, 2), (4, 2)],
    [(1, 3), (1, 3), (4, 2), (4, 2), (2, 0), (2, 0), (2, 0), (2, 0)],
    [(1, 3), (1, 3), (3, 5), (6, 4), (2, 0), (2, 0), (2, 0), (2, 0)],
]

# Quantum three-player dilemma: blocks[player3 strategy][row][col] -> payoff
# triple, strategies ordered P0U0, P0U1, P1U0, P1U1 for every player.
PD3_QUANTUM_BLOCKS = [
    [
        [(3, 3, 3), (2, 5, 2), (3, 3, 3), (2, 5, 2)],
        [(5, 2, 2), (4, 4, 0), (5, 2, 2), (4, 4, 0)],
        [(3, 3, 3), (2, 5, 2), (3, 3, 3), (2, 5, 2)],
        [(5, 2, 2), (4, 4, 0), (5, 2, 2), (4, 4, 0)],
    ],
    [
        [(2, 2, 5), (0, 4, 4), (2, 2, 5), (0, 4, 4)],
        [(4, 0, 4), (1, 1, 1), (4, 0, 4), (1, 1, 1)],
        [(2, 2, 5), (0, 4, 4), (2, 2, 5), (0, 4, 4)],
        [(4, 0, 4), (1, 1, 1), (4, 0, 4), (1, 1, 1)],
    ],
    [
        [(3, 3, 3), (2, 5, 2), (3, 3, 3), (2, 5, 2)],
        [(5, 2, 2), (4, 4, 0), (5, 2, 2), (4, 4, 0)],
        [(3, 3, 3), (2, 5, 2), (2.5, 2.5, 2.5), (2.75, 2.75, 2.75)],
        [(5, 2, 2), (4, 4, 0), (2.75, 2.75, 2.75), (2.5, 2.5, 2.5)],
    ],
    [
        [(2, 2, 5), (0, 4, 4), (2, 2, 5), (0, 4, 4)],
        [(4, 0, 4), (1, 1, 1), (4, 0, 4), (1, 1, 1)],
        [(2, 2, 5), (0, 4, 4), (2.75, 2.75, 2.75), (2.5, 2.5, 2.5)],
        [(4, 0, 4), (1, 1, 1), (2.5, 2.5, 2.5), (2.75, 2.75, 2.75)],
    ],
]


def bimatrix_game(matrix, row_labels=None, col_labels=None) -> NormalFormGame:
    """Two-player NormalFormGame from a nested list of payoff pairs."""
    rows, cols = len(matrix), len(matrix[0])
    t1 = np.array([[pair[0] for pair in row] for row in matrix], dtype=float)
    t2 = np.array([[pair[1] for pair in row] for row in matrix], dtype=float)
    return NormalFormGame(
        players=2,
        strategy_counts=(rows, cols),
        payoffs=(t1, t2),
        strategy_labels=(
            tuple(row_labels or [f"r{i}" for i in range(rows)]),
            tuple(col_labels or [f"c{j}" for j in range(cols)]),
        ),
    )


MATCHING_PENNIES = bimatrix_game(
    [[(1, -1), (-1, 1)], [(-1, 1), (1, -1)]], ["H", "T"], ["H", "T"]
)


def random_game(rng, counts, integer=True) -> NormalFormGame:
    tensors = []
    for _ in counts:
        if integer:
            tensors.append(rng.integers(-5, 6, size=counts).astype(float))
        else:
            tensors.append(rng.normal(size=counts))
    return NormalFormGame(
        players=len(counts),
        strategy_counts=tuple(counts),
        payoffs=tuple(tensors),
        strategy_labels=tuple(
            tuple(f"s{i}" for i in range(c)) for c in counts
        ),
    )


def random_psi(rng, layout: RegisterLayout, max_terms: int = 4) -> SparseState:
    labels = list(layout.labels())
    k = int(rng.integers(1, min(max_terms, len(labels)) + 1))
    chosen = rng.choice(len(labels), size=k, replace=False)
    amps = rng.normal(size=k) + 1j * rng.normal(size=k)
    amps /= np.linalg.norm(amps)
    return SparseState(layout, {labels[i]: amps[j] for j, i in enumerate(chosen)})


def random_pair_matrix(rng, rows: int, cols: int):
    return [
        [(float(rng.integers(0, 10)), float(rng.integers(0, 10))) for _ in range(cols)]
        for _ in range(rows)
    ]


def random_two_by_two(rng):
    return make_two_by_two(random_pair_matrix(rng, 2, 2), random_psi(rng, qubits(2)))


def random_bimatrix(rng):
    rows = int(rng.integers(2, 5))
    cols = int(rng.integers(2, 5))
    layout = RegisterLayout((rows, cols))
    return make_bimatrix(random_pair_matrix(rng, rows, cols), random_psi(rng, layout))


def random_strategic(rng, k: int | None = None):
    k = k or int(rng.integers(2, 4))
    layout = qubits(k)
    tensors = [
        {label: float(rng.integers(0, 10)) for label in layout.labels()}
        for _ in range(k)
    ]
    return make_strategic(k, tensors, random_psi(rng, layout))


def random_extensive(rng, k: int = 2, n: int | None = None):
    n = n or int(rng.integers(k, 5))
    layout = qubits(n)
    # random surjective ownership: first k slots cover everyone, rest random
    owners = list(range(1, k + 1)) + [int(rng.integers(1, k + 1)) for _ in range(n - k)]
    rng.shuffle(owners)
    xi = {slot: owners[slot] for slot in range(n)}
    tensors = [
        {label: float(rng.integers(0, 10)) for label in layout.labels()}
        for _ in range(k)
    ]
    return make_extensive_scheme(k, n, xi, tensors, random_psi(rng, layout))


def random_multi_initial(rng, n: int | None = None):
    n = n or int(rng.integers(2, 4))
    psis = [random_psi(rng, qubits(2)) for _ in range(n)]
    return make_multi_initial(random_pair_matrix(rng, 2, 2), psis)


RANDOM_SCHEME_BUILDERS = (
    random_two_by_two,
    random_bimatrix,
    random_strategic,
    random_extensive,
    random_multi_initial,
)


def random_scheme(rng):
    builder = RANDOM_SCHEME_BUILDERS[int(rng.integers(len(RANDOM_SCHEME_BUILDERS)))]
    return builder(rng)
