"""Perfect-information game trees, their strategic form, and the centipede family.

Tree strategies are full contingent plans: one action per owned decision
node, nodes taken in pre-order (a player's "first" node is the one reached
earliest in the tree walk). The centipede generator also builds the
quantum scheme for any even stage count together with the designated
joint-play profile and certifies it against every pure deviation.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .equilibrium import EPSILON, EquilibriumCertificate
from .evaluation import DEFAULT_BUDGET, PureProfile, payoff_pure
from .games import BudgetError, NormalFormGame
from .scheme import PayoffMap, PlayerStrategy, SchemeSpec, make_extensive_scheme, strategy_space
from .states import FLIP, IDENTITY, Label, equal_superposition, qubits

STOP = "S"
CONTINUE = "C"


@dataclass(frozen=True)
class TerminalNode:
    payoffs: tuple[float, ...]


@dataclass(frozen=True)
class DecisionNode:
    owner: int                      # 1-indexed player
    actions: tuple[str, ...]
    children: tuple["GameNode", ...]


GameNode = Union[TerminalNode, DecisionNode]


@dataclass(frozen=True)
class GameTree:
    """Finite perfect-information extensive game."""

    players: int
    root: GameNode

    def __post_init__(self) -> None:
        if self.players < 1:
            raise ValueError("tree needs at least one player")
        for node in self.walk():
            if isinstance(node, TerminalNode):
                if len(node.payoffs) != self.players:
                    raise ValueError(
                        f"terminal payoffs {node.payoffs} need {self.players} entries"
                    )
            else:
                if not 1 <= node.owner <= self.players:
                    raise ValueError(f"decision node owned by unknown player {node.owner}")
                if len(node.actions) < 2:
                    raise ValueError("every decision node needs at least 2 actions")
                if len(node.actions) != len(node.children):
                    raise ValueError("actions and children must match")
                if len(set(node.actions)) != len(node.actions):
                    raise ValueError("actions at a node must be distinct")

    def walk(self) -> Iterable[GameNode]:
        stack: list[GameNode] = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if isinstance(node, DecisionNode):
                stack.extend(reversed(node.children))

    def decision_nodes(self) -> list[DecisionNode]:
        """All decision nodes in pre-order."""
        return [n for n in self.walk() if isinstance(n, DecisionNode)]

    def player_nodes(self, player: int) -> list[DecisionNode]:
        return [n for n in self.decision_nodes() if n.owner == player]


@dataclass(frozen=True)
class TreeStrategy:
    """actions[p-1][j] is player p's choice at her j-th decision node."""

    actions: tuple[tuple[str, ...], ...]


def _node_positions(tree: GameTree) -> dict[int, int]:
    """Pre-order position of each decision node within its owner's node list,
    keyed by object identity."""
    counters = [0] * (tree.players + 1)
    positions: dict[int, int] = {}
    for node in tree.decision_nodes():
        positions[id(node)] = counters[node.owner]
        counters[node.owner] += 1
    return positions


def _check_strategy(tree: GameTree, strategy: TreeStrategy) -> None:
    if len(strategy.actions) != tree.players:
        raise ValueError(f"strategy needs plans for {tree.players} players")
    for player in range(1, tree.players + 1):
        need = len(tree.player_nodes(player))
        have = len(strategy.actions[player - 1])
        if have != need:
            raise ValueError(
                f"player {player} plan covers {have} nodes but owns {need}"
            )


def outcome(tree: GameTree, strategy: TreeStrategy) -> tuple[float, ...]:
    """Follow the chosen actions from the root and return the leaf payoffs."""
    _check_strategy(tree, strategy)
    positions = _node_positions(tree)
    node = tree.root
    while isinstance(node, DecisionNode):
        chosen = strategy.actions[node.owner - 1][positions[id(node)]]
        try:
            branch = node.actions.index(chosen)
        except ValueError:
            raise ValueError(
                f"action {chosen!r} not available at a player-{node.owner} node "
                f"with actions {node.actions}"
            ) from None
        node = node.children[branch]
    return node.payoffs


def normal_representation(tree: GameTree, budget: int = DEFAULT_BUDGET) -> NormalFormGame:
    """Strategic form of the tree: per player, every assignment of actions to
    her decision nodes, labelled by the concatenated action names."""
    plans: list[list[tuple[str, ...]]] = []
    for player in range(1, tree.players + 1):
        nodes = tree.player_nodes(player)
        plans.append([tuple(p) for p in itertools.product(*(n.actions for n in nodes))])
    counts = tuple(len(p) for p in plans)
    if math.prod(counts) > budget:
        raise BudgetError(f"{math.prod(counts)} strategy profiles exceed budget {budget}")
    labels = tuple(
        tuple("".join(plan) if plan else "-" for plan in player_plans)
        for player_plans in plans
    )
    tensors = tuple(np.empty(counts, dtype=float) for _ in range(tree.players))
    for index in np.ndindex(*counts):
        strategy = TreeStrategy(tuple(plans[p][i] for p, i in enumerate(index)))
        values = outcome(tree, strategy)
        for player, value in enumerate(values):
            tensors[player][index] = value
    return NormalFormGame(
        players=tree.players,
        strategy_counts=counts,
        payoffs=tensors,
        strategy_labels=labels,
    )


def backward_induction(tree: GameTree) -> tuple[tuple[float, ...], TreeStrategy]:
    """Leaves-up value propagation; each node picks the owner-maximizing
    action, ties broken toward the earliest-listed action."""
    choices: dict[int, str] = {}

    def value(node: GameNode) -> tuple[float, ...]:
        if isinstance(node, TerminalNode):
            return node.payoffs
        child_values = [value(child) for child in node.children]
        best = 0
        for i in range(1, len(child_values)):
            if child_values[i][node.owner - 1] > child_values[best][node.owner - 1]:
                best = i
        choices[id(node)] = node.actions[best]
        return child_values[best]

    result = value(tree.root)
    plans = tuple(
        tuple(choices[id(node)] for node in tree.player_nodes(player))
        for player in range(1, tree.players + 1)
    )
    return result, TreeStrategy(plans)


# --- centipede family -------------------------------------------------------


@dataclass(frozen=True)
class CentipedeSpec:
    """Alternating stop/continue chain with an even number of stages."""

    stages: int

    def __post_init__(self) -> None:
        if self.stages < 2 or self.stages % 2:
            raise ValueError(f"stage count must be even and >= 2, got {self.stages}")

    def stop_payoffs(self, stage: int) -> tuple[float, float]:
        """Payoffs when the game stops at the given 1-indexed stage."""
        if stage % 2:
            return (float(stage + 1), float(stage - 1))
        return (float(stage - 1), float(stage + 1))

    def pass_payoffs(self) -> tuple[float, float]:
        """Payoffs when every stage continues."""
        return (float(self.stages + 2), float(self.stages))


def make_centipede(n: int) -> GameTree:
    """n-stage centipede tree: player 1 moves at odd stages, player 2 at even
    ones; each node offers stop then continue."""
    spec = CentipedeSpec(n)
    node: GameNode = TerminalNode(spec.pass_payoffs())
    for stage in range(n, 0, -1):
        node = DecisionNode(
            owner=1 if stage % 2 else 2,
            actions=(STOP, CONTINUE),
            children=(TerminalNode(spec.stop_payoffs(stage)), node),
        )
    return GameTree(players=2, root=node)


def _centipede_rule(n: int, player: int):
    spec = CentipedeSpec(n)

    def rule(label: Label) -> float:
        for j, digit in enumerate(label):
            if digit == 0:
                return spec.stop_payoffs(j + 1)[player - 1]
        return spec.pass_payoffs()[player - 1]

    return rule


def make_centipede_scheme(n: int) -> tuple[SchemeSpec, PureProfile]:
    """Quantum scheme of the n-stage centipede plus its designated profile.

    Operation slot j carries information set j+1, so player 1 owns the even
    slots and player 2 the odd ones. The joint state superposes the
    alternating continue pattern with and without a final continue. In the
    designated profile both players project onto the joint state; player 1
    plays identity everywhere while player 2 flips every owned slot except
    the last.
    """
    spec = CentipedeSpec(n)
    op_layout = qubits(n)
    xi = {slot: 1 if slot % 2 == 0 else 2 for slot in range(n)}
    alternating = tuple(1 if slot % 2 == 0 else 0 for slot in range(n))
    psi = equal_superposition(op_layout, [alternating, alternating[:-1] + (1,)])
    payoffs = [PayoffMap(op_layout, rule=_centipede_rule(n, player)) for player in (1, 2)]
    scheme = make_extensive_scheme(2, n, xi, payoffs, psi)
    half = n // 2
    designated = PureProfile(
        (
            PlayerStrategy(1, (IDENTITY,) * half),
            PlayerStrategy(1, (FLIP,) * (half - 1) + (IDENTITY,)),
        )
    )
    return scheme, designated


def verify_centipede_equilibrium(n: int, eps: float = EPSILON) -> EquilibriumCertificate:
    """Audit the designated profile of the n-stage centipede scheme against
    every pure deviation of both players, via the sparse evaluation path."""
    scheme, designated = make_centipede_scheme(n)
    payoffs = payoff_pure(scheme, designated)
    spaces = [strategy_space(scheme, player) for player in (1, 2)]
    indices = tuple(
        space.index(strategy) for space, strategy in zip(spaces, designated.strategies)
    )
    best = []
    slacks = []
    for p in range(2):
        top = -math.inf
        for s, alternative in enumerate(spaces[p]):
            if s == indices[p]:
                continue
            strategies = list(designated.strategies)
            strategies[p] = alternative
            value = payoff_pure(scheme, PureProfile(tuple(strategies)))[p]
            if value > top:
                top = value
        best.append(top)
        slacks.append(payoffs[p] - top)
    return EquilibriumCertificate(indices, payoffs, tuple(best), tuple(slacks), eps)


def classical_deviation_cap(n: int) -> float:
    """Best payoff player 1 can reach with a projector-0 strategy against the
    designated opponent strategy of the n-stage centipede scheme."""
    scheme, designated = make_centipede_scheme(n)
    top = -math.inf
    for alternative in strategy_space(scheme, 1):
        if alternative.projector != 0:
            continue
        profile = PureProfile((alternative, designated.strategies[1]))
        top = max(top, payoff_pure(scheme, profile)[0])
    return top


# --- tree JSON ---------------------------------------------------------------
#
# {"players": 2, "root": node} with
# node := {"owner": 1, "actions": ["S", "C"], "children": [node, ...]}
#       | {"payoffs": [2.0, 0.0]}


def _node_to_json(node: GameNode) -> dict:
    if isinstance(node, TerminalNode):
        return {"payoffs": list(node.payoffs)}
    return {
        "owner": node.owner,
        "actions": list(node.actions),
        "children": [_node_to_json(child) for child in node.children],
    }


def _node_from_json(doc) -> GameNode:
    if not isinstance(doc, dict):
        raise ValueError("tree node must be a JSON object")
    if "payoffs" in doc:
        return TerminalNode(tuple(float(v) for v in doc["payoffs"]))
    try:
        return DecisionNode(
            owner=int(doc["owner"]),
            actions=tuple(str(a) for a in doc["actions"]),
            children=tuple(_node_from_json(child) for child in doc["children"]),
        )
    except KeyError as exc:
        raise ValueError(f"tree node missing field {exc}") from None


def tree_to_json(tree: GameTree) -> str:
    return json.dumps(
        {"players": tree.players, "root": _node_to_json(tree.root)},
        indent=2,
        sort_keys=True,
    )


def tree_from_json(text: str) -> GameTree:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "players" not in doc or "root" not in doc:
        raise ValueError("tree document needs 'players' and 'root' fields")
    return GameTree(players=int(doc["players"]), root=_node_from_json(doc["root"]))
