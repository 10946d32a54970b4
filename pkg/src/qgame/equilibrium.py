"""Pure Nash enumeration and best-response certification on payoff tensors.

Certification only ever scans pure alternatives: expected payoffs are
affine in any one player's distribution, so the maximum over that player's
mixed strategies is attained at a pure one. Equality up to the tie
tolerance is therefore the whole equilibrium condition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .evaluation import MixedProfile
from .games import NormalFormGame

EPSILON = 1e-9


@dataclass(frozen=True)
class EquilibriumCertificate:
    """Best-response audit of one profile.

    For a pure profile the recorded best deviation is the best payoff over
    the player's *other* pure strategies (so a strict equilibrium shows a
    positive slack); for a mixed profile it is the best payoff over all of
    the player's pure strategies. Either way the profile is an equilibrium
    iff every slack is >= -epsilon.
    """

    profile: tuple[int, ...] | MixedProfile
    payoffs: tuple[float, ...]
    best_deviations: tuple[float, ...]
    slacks: tuple[float, ...]
    epsilon: float = EPSILON

    @property
    def valid(self) -> bool:
        return all(s >= -self.epsilon for s in self.slacks)

    def to_json_dict(self, game: NormalFormGame | None = None) -> dict:
        if isinstance(self.profile, MixedProfile):
            profile: object = [
                [{"index": i, "p": p} for i, p in sorted(dist.items())]
                for dist in self.profile.distributions
            ]
            labels = None
        else:
            profile = list(self.profile)
            labels = list(game.profile_labels(self.profile)) if game is not None else None
        doc = {
            "profile": profile,
            "payoffs": list(self.payoffs),
            "best_deviations": list(self.best_deviations),
            "slacks": list(self.slacks),
            "epsilon": self.epsilon,
            "verdict": "VALID" if self.valid else "INVALID",
        }
        if labels is not None:
            doc["labels"] = labels
        return doc

    def to_json(self, game: NormalFormGame | None = None) -> str:
        return json.dumps(self.to_json_dict(game), indent=2, sort_keys=True)


def certify_pure(
    game: NormalFormGame, profile: Sequence[int], eps: float = EPSILON
) -> EquilibriumCertificate:
    """Certificate for a pure profile; deviations exclude the played strategy.
    A player with a single strategy gets slack 0 by convention."""
    idx = tuple(int(s) for s in profile)
    payoffs = game.payoff_vector(idx)
    best = []
    slacks = []
    for p in range(game.players):
        row = game.payoffs[p][idx[:p] + (slice(None),) + idx[p + 1 :]]
        if row.size == 1:
            best.append(payoffs[p])
            slacks.append(0.0)
            continue
        alternatives = np.delete(row, idx[p])
        top = float(alternatives.max())
        best.append(top)
        slacks.append(payoffs[p] - top)
    return EquilibriumCertificate(idx, payoffs, tuple(best), tuple(slacks), eps)


def pure_nash(game: NormalFormGame, eps: float = EPSILON) -> list[EquilibriumCertificate]:
    """All pure profiles where no player gains more than eps by a unilateral
    pure deviation, in lexicographic profile order."""
    mask = np.ones(game.strategy_counts, dtype=bool)
    for p in range(game.players):
        tensor = game.payoffs[p]
        best = tensor.max(axis=p, keepdims=True)
        mask &= tensor >= best - eps
    return [certify_pure(game, tuple(idx), eps) for idx in np.argwhere(mask)]


def _distribution_vector(dist: Mapping[int, float], count: int, player: int) -> np.ndarray:
    vec = np.zeros(count)
    for index, prob in dist.items():
        if not 0 <= index < count:
            raise ValueError(
                f"player {player} strategy index {index} out of range (has {count})"
            )
        vec[index] = prob
    return vec


def _expected_against(
    tensor: np.ndarray, player: int, vectors: Sequence[np.ndarray]
) -> np.ndarray:
    """Expected payoff of each of `player`'s pure strategies against the other
    players' distributions (0-indexed player). Contracting axes from the
    highest down keeps lower axis numbers stable."""
    out = tensor
    for q in reversed(range(tensor.ndim)):
        if q == player:
            continue
        out = np.tensordot(out, vectors[q], axes=([q], [0]))
    return out


def certify_mixed(
    game: NormalFormGame, mixed: MixedProfile, eps: float = EPSILON
) -> EquilibriumCertificate:
    """Certificate for a mixed profile: each player's expected payoff against
    the maximum over her pure strategies, holding the others fixed."""
    if len(mixed.distributions) != game.players:
        raise ValueError(f"mixed profile needs {game.players} distributions")
    vectors = [
        _distribution_vector(dist, count, player)
        for player, (dist, count) in enumerate(
            zip(mixed.distributions, game.strategy_counts), start=1
        )
    ]
    payoffs = []
    best = []
    slacks = []
    for p in range(game.players):
        responses = _expected_against(game.payoffs[p], p, vectors)
        expected = float(responses @ vectors[p])
        top = float(responses.max())
        payoffs.append(expected)
        best.append(top)
        slacks.append(expected - top)
    return EquilibriumCertificate(mixed, tuple(payoffs), tuple(best), tuple(slacks), eps)


def strictly_dominated(
    game: NormalFormGame, player: int, strategy: int, eps: float = EPSILON
) -> bool:
    """True iff some other pure strategy of the player beats this one by more
    than eps against every opposing pure profile. Player is 1-indexed."""
    p = player - 1
    if not 0 <= p < game.players:
        raise ValueError(f"player {player} out of range 1..{game.players}")
    tensor = np.moveaxis(game.payoffs[p], p, 0)
    if not 0 <= strategy < tensor.shape[0]:
        raise ValueError(f"strategy {strategy} out of range for player {player}")
    row = tensor[strategy]
    for other in range(tensor.shape[0]):
        if other == strategy:
            continue
        if np.all(tensor[other] > row + eps):
            return True
    return False


def best_response_set(
    game: NormalFormGame,
    player: int,
    opponents: Mapping[int, Mapping[int, float]],
    eps: float = EPSILON,
) -> set[int]:
    """Argmax set of the player's pure strategies against the opponents'
    mixed strategies (keyed by 1-indexed player), ties within eps included."""
    p = player - 1
    if not 0 <= p < game.players:
        raise ValueError(f"player {player} out of range 1..{game.players}")
    vectors: list[np.ndarray] = [np.empty(0)] * game.players
    for q in range(game.players):
        if q == p:
            vectors[q] = np.empty(0)
            continue
        if (q + 1) not in opponents:
            raise ValueError(f"missing distribution for player {q + 1}")
        dist = opponents[q + 1]
        total = sum(dist.values())
        if abs(total - 1.0) > 1e-12 or any(v < 0 for v in dist.values()):
            raise ValueError(f"player {q + 1} distribution is not a probability vector")
        vectors[q] = _distribution_vector(dist, game.strategy_counts[q], q + 1)
    responses = _expected_against(game.payoffs[p], p, vectors)
    top = responses.max()
    return {int(s) for s in np.flatnonzero(responses >= top - eps)}
