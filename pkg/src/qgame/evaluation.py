"""Strategy profiles and their payoffs.

Playing a pure profile never touches an operator matrix: the projector
digits pick exactly one branch of the scheme's branch table, the shift
operators permute that branch state's labels, and the payoff is the
measurement expectation sum(|amp|^2 * payoff[label]). Mixed profiles are
exact convex combinations of pure plays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .games import BudgetError, NormalFormGame
from .scheme import (
    PlayerStrategy,
    SchemeSpec,
    strategy_digits,
    strategy_label,
    strategy_space,
)
from .states import Label, SparseState, apply_local, born_weights

DEFAULT_BUDGET = 10**7
PROB_TOL = 1e-12


@dataclass(frozen=True)
class PureProfile:
    """One pure strategy per player, ascending player order."""

    strategies: tuple[PlayerStrategy, ...]


@dataclass(frozen=True)
class MixedProfile:
    """Independent distributions over each player's pure strategies.

    Distributions map canonical strategy indices (see strategy_space /
    NormalFormGame ordering) to probabilities; each must be nonnegative
    and sum to 1 within PROB_TOL.
    """

    distributions: tuple[dict[int, float], ...]

    def __post_init__(self) -> None:
        cleaned = []
        for player, dist in enumerate(self.distributions, start=1):
            dist = {int(i): float(p) for i, p in dist.items()}
            for index, prob in dist.items():
                if index < 0:
                    raise ValueError(f"player {player} strategy index {index} is negative")
                if prob < 0:
                    raise ValueError(f"player {player} probability {prob} is negative")
            total = sum(dist.values())
            if abs(total - 1.0) > PROB_TOL:
                raise ValueError(f"player {player} probabilities sum to {total!r}, not 1")
            cleaned.append(dist)
        object.__setattr__(self, "distributions", tuple(cleaned))

    @classmethod
    def point(cls, profile: Sequence[int]) -> "MixedProfile":
        return cls(tuple({int(s): 1.0} for s in profile))


@dataclass(frozen=True)
class FinalState:
    """Post-play state: the players' projector digits on the control register
    and the (pure) operation-register state they produced."""

    control_label: Label
    operation_state: SparseState


def _check_profile(spec: SchemeSpec, profile: PureProfile) -> None:
    if len(profile.strategies) != spec.players:
        raise ValueError(f"profile needs {spec.players} strategies")
    for player, strategy in enumerate(profile.strategies, start=1):
        radix = spec.control_layout.radices[player - 1]
        if not 0 <= strategy.projector < radix:
            raise ValueError(
                f"player {player} projector digit {strategy.projector} outside radix {radix}"
            )
        owned = spec.owned_slots(player)
        if len(strategy.operators) != len(owned):
            raise ValueError(
                f"player {player} assigns {len(strategy.operators)} operators "
                f"but owns {len(owned)} slots"
            )


def resolve_branch(spec: SchemeSpec, control: Label) -> SparseState:
    """The initial state selected by a control label: the matching branch
    state if the label is in the branch table, else the default state."""
    control = spec.control_layout.check_label(control)
    for pattern, state in spec.branches:
        if pattern == control:
            return state
    return spec.default_state


def play_pure(spec: SchemeSpec, profile: PureProfile) -> FinalState:
    """Evolve a pure profile: projector digits form the control label, the
    merged operator assignment acts on the selected branch state."""
    _check_profile(spec, profile)
    control = tuple(s.projector for s in profile.strategies)
    assignment = {}
    for player, strategy in enumerate(profile.strategies, start=1):
        for slot, op in zip(spec.owned_slots(player), strategy.operators):
            assignment[slot] = op
    state = apply_local(resolve_branch(spec, control), assignment)
    return FinalState(control, state)


def payoff_pure(spec: SchemeSpec, profile: PureProfile) -> tuple[float, ...]:
    """Payoff vector of a pure profile; the control label never enters
    (measurements are diagonal on the operation register only)."""
    final = play_pure(spec, profile)
    weights = born_weights(final.operation_state)
    return tuple(
        sum(w * pm.value(label) for label, w in weights.items())
        for pm in spec.payoffs
    )


def payoff_mixed(spec: SchemeSpec, mixed: MixedProfile) -> tuple[float, ...]:
    """Expected payoffs of independent mixed strategies, computed exactly by
    enumerating the product of the per-player supports."""
    if len(mixed.distributions) != spec.players:
        raise ValueError(f"mixed profile needs {spec.players} distributions")
    spaces = [strategy_space(spec, p) for p in range(1, spec.players + 1)]
    supports = []
    for player, (dist, space) in enumerate(zip(mixed.distributions, spaces), start=1):
        support = sorted(dist.items())
        for index, _ in support:
            if index >= len(space):
                raise ValueError(
                    f"player {player} strategy index {index} out of range "
                    f"(has {len(space)} strategies)"
                )
        supports.append(support)
    totals = [0.0] * spec.players
    for combo in itertools.product(*supports):
        prob = math.prod(p for _, p in combo)
        if prob == 0.0:
            continue
        profile = PureProfile(
            tuple(space[i] for space, (i, _) in zip(spaces, combo))
        )
        for player, value in enumerate(payoff_pure(spec, profile)):
            totals[player] += prob * value
    return tuple(totals)


def _induced_labels(spec: SchemeSpec, spaces: Sequence[Sequence[PlayerStrategy]]) -> tuple[tuple[str, ...], ...]:
    if spec.players == 2:
        return (
            tuple("A" + strategy_digits(s) for s in spaces[0]),
            tuple("B" + strategy_digits(s) for s in spaces[1]),
        )
    return tuple(tuple(strategy_label(s) for s in space) for space in spaces)


def induced_game(spec: SchemeSpec, budget: int = DEFAULT_BUDGET) -> NormalFormGame:
    """Exhaustive pure-strategy payoff tensor of the scheme.

    Strategies are ordered projector digit first, then operator assignments
    lexicographically over the owned slots, so two-player games read like
    the scheme's bimatrix with rows A<digits> and columns B<digits>.
    """
    spaces = [strategy_space(spec, p) for p in range(1, spec.players + 1)]
    counts = tuple(len(space) for space in spaces)
    total = math.prod(counts)
    if total > budget:
        raise BudgetError(f"{total} profiles exceed enumeration budget {budget}")
    tensors = tuple(np.empty(counts, dtype=float) for _ in range(spec.players))
    for index in np.ndindex(*counts):
        profile = PureProfile(tuple(space[i] for space, i in zip(spaces, index)))
        values = payoff_pure(spec, profile)
        for player, value in enumerate(values):
            tensors[player][index] = value
    return NormalFormGame(
        players=spec.players,
        strategy_counts=counts,
        payoffs=tensors,
        strategy_labels=_induced_labels(spec, spaces),
    )


def classical_embedding_check(spec: SchemeSpec, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every profile whose control label matches no branch pattern
    pays exactly the classical table entry reached by shifting the all-zeros
    label with the profile's operator assignment."""
    patterns = {pattern for pattern, _ in spec.branches}
    spaces = [strategy_space(spec, p) for p in range(1, spec.players + 1)]
    total = math.prod(len(space) for space in spaces)
    if total > budget:
        raise BudgetError(f"{total} profiles exceed enumeration budget {budget}")
    zeros = spec.operation_layout.zero_label()
    radices = spec.operation_layout.radices
    for combo in itertools.product(*spaces):
        control = tuple(s.projector for s in combo)
        if control in patterns:
            continue
        digits = list(zeros)
        for player, strategy in enumerate(combo, start=1):
            for slot, op in zip(spec.owned_slots(player), strategy.operators):
                digits[slot] = (digits[slot] + op.shift) % radices[slot]
        classical_label = tuple(digits)
        payoffs = payoff_pure(spec, PureProfile(combo))
        for value, pm in zip(payoffs, spec.payoffs):
            if value != pm.value(classical_label):
                return False
    return True
