"""Built-in example games, embedded so the CLI and tests need no external files."""

from __future__ import annotations

import re

import numpy as np

from .extensive import make_centipede, make_centipede_scheme, normal_representation
from .games import NormalFormGame
from .scheme import SchemeSpec, make_strategic
from .states import equal_superposition, qubits

# Three-player one-shot dilemma: second strategies form the unique classical
# equilibrium at (1,1,1) even though mutual first strategies pay (3,3,3).
PD3_TABLE: dict[tuple[int, int, int], tuple[float, float, float]] = {
    (0, 0, 0): (3, 3, 3),
    (0, 0, 1): (2, 2, 5),
    (0, 1, 0): (2, 5, 2),
    (0, 1, 1): (0, 4, 4),
    (1, 0, 0): (5, 2, 2),
    (1, 0, 1): (4, 0, 4),
    (1, 1, 0): (4, 4, 0),
    (1, 1, 1): (1, 1, 1),
}


def pd3_scheme() -> SchemeSpec:
    """Quantum scheme of the three-player dilemma with the joint state
    (|001> + |010> + |100> + |111>)/2."""
    psi = equal_superposition(
        qubits(3), [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]
    )
    tensors = [
        {label: values[player] for label, values in PD3_TABLE.items()}
        for player in range(3)
    ]
    return make_strategic(3, tensors, psi)


def pd3_classical_game() -> NormalFormGame:
    """The underlying classical three-player game (two strategies each)."""
    counts = (2, 2, 2)
    tensors = tuple(np.empty(counts) for _ in range(3))
    for label, values in PD3_TABLE.items():
        for player, value in enumerate(values):
            tensors[player][label] = value
    return NormalFormGame(
        players=3,
        strategy_counts=counts,
        payoffs=tensors,
        strategy_labels=(("U0", "U1"),) * 3,
    )


def centipede_classical_game(n: int) -> NormalFormGame:
    """Normal representation of the n-stage centipede tree."""
    return normal_representation(make_centipede(n))


_CENTIPEDE_RE = re.compile(r"^centipede(\d+)(-classical|-quantum)?$")


def builtin(name: str):
    """Resolve a builtin name to ("scheme", SchemeSpec) or ("game", NormalFormGame).

    Known names: pd3, pd3-quantum, pd3-classical, centipede<n>,
    centipede<n>-quantum, centipede<n>-classical.
    """
    if name in ("pd3", "pd3-quantum"):
        return ("scheme", pd3_scheme())
    if name == "pd3-classical":
        return ("game", pd3_classical_game())
    match = _CENTIPEDE_RE.match(name)
    if match:
        n = int(match.group(1))
        if n < 2 or n % 2:
            raise ValueError(f"centipede stage count must be even and >= 2, got {n}")
        if match.group(2) == "-classical":
            return ("game", centipede_classical_game(n))
        scheme, _ = make_centipede_scheme(n)
        return ("scheme", scheme)
    raise KeyError(f"unknown builtin {name!r}")
