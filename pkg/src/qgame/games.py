"""Finite normal-form games as payoff tensors, with JSON/CSV/table rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured budget."""


@dataclass(frozen=True, eq=False)
class NormalFormGame:
    """k-player game: one payoff tensor per player, indexed by per-player
    strategy indices, plus human-readable strategy labels."""

    players: int
    strategy_counts: tuple[int, ...]
    payoffs: tuple[np.ndarray, ...]
    strategy_labels: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if self.players < 1:
            raise ValueError("game needs at least one player")
        if len(self.strategy_counts) != self.players:
            raise ValueError("need one strategy count per player")
        if any(c < 1 for c in self.strategy_counts):
            raise ValueError("every player needs at least one strategy")
        if len(self.payoffs) != self.players or len(self.strategy_labels) != self.players:
            raise ValueError("need one payoff tensor and one label set per player")
        for tensor in self.payoffs:
            if tensor.shape != self.strategy_counts:
                raise ValueError(
                    f"payoff tensor shape {tensor.shape} != strategy counts {self.strategy_counts}"
                )
        for count, labels in zip(self.strategy_counts, self.strategy_labels):
            if len(labels) != count:
                raise ValueError("strategy labels do not match strategy counts")

    def payoff_vector(self, profile: Sequence[int]) -> tuple[float, ...]:
        idx = tuple(profile)
        if len(idx) != self.players:
            raise ValueError(f"profile needs {self.players} indices")
        return tuple(float(t[idx]) for t in self.payoffs)

    def profile_labels(self, profile: Sequence[int]) -> tuple[str, ...]:
        return tuple(
            self.strategy_labels[p][s] for p, s in enumerate(profile)
        )


def _format_value(value: float) -> str:
    return format(value, "g")


def _format_payoffs(values: Sequence[float]) -> str:
    return "(" + ",".join(_format_value(v) for v in values) + ")"


def game_to_json_dict(game: NormalFormGame) -> dict:
    return {
        "players": game.players,
        "strategy_counts": list(game.strategy_counts),
        "strategy_labels": [list(labels) for labels in game.strategy_labels],
        "payoffs": [tensor.tolist() for tensor in game.payoffs],
    }


def game_to_json(game: NormalFormGame) -> str:
    return json.dumps(game_to_json_dict(game), indent=2, sort_keys=True)


def render_csv(game: NormalFormGame) -> str:
    """One row per strategy profile: the per-player strategy labels followed
    by the per-player payoffs, profiles in lexicographic index order."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = [f"strategy_{p}" for p in range(1, game.players + 1)]
    header += [f"payoff_{p}" for p in range(1, game.players + 1)]
    writer.writerow(header)
    for profile in np.ndindex(*game.strategy_counts):
        row = list(game.profile_labels(profile))
        row += [_format_value(v) for v in game.payoff_vector(profile)]
        writer.writerow(row)
    return out.getvalue()


def _render_block(
    game: NormalFormGame,
    tail: tuple[int, ...],
    markdown: bool,
) -> list[str]:
    rows, cols = game.strategy_counts[0], game.strategy_counts[1]
    row_labels = game.strategy_labels[0]
    col_labels = game.strategy_labels[1]
    cells = [
        [_format_payoffs(game.payoff_vector((r, c) + tail)) for c in range(cols)]
        for r in range(rows)
    ]
    if markdown:
        lines = ["| | " + " | ".join(col_labels) + " |"]
        lines.append("|" + "---|" * (cols + 1))
        for r in range(rows):
            lines.append("| " + row_labels[r] + " | " + " | ".join(cells[r]) + " |")
        return lines
    label_width = max(len(l) for l in row_labels)
    widths = [
        max(len(col_labels[c]), max(len(cells[r][c]) for r in range(rows)))
        for c in range(cols)
    ]
    lines = [
        " " * label_width
        + "  "
        + "  ".join(col_labels[c].rjust(widths[c]) for c in range(cols))
    ]
    for r in range(rows):
        lines.append(
            row_labels[r].ljust(label_width)
            + "  "
            + "  ".join(cells[r][c].rjust(widths[c]) for c in range(cols))
        )
    return lines


def render_table(game: NormalFormGame, markdown: bool = False) -> str:
    """Aligned text (or markdown) table; games with more than two players are
    shown as one row/column block per combination of the other players'
    strategies."""
    if game.players == 1:
        lines = [
            f"{label}  {_format_payoffs(game.payoff_vector((s,)))}"
            for s, label in enumerate(game.strategy_labels[0])
        ]
        return "\n".join(lines) + "\n"
    blocks: list[str] = []
    tail_counts = game.strategy_counts[2:]
    for tail in np.ndindex(*tail_counts) if tail_counts else [()]:
        lines = []
        if tail:
            header = ", ".join(
                f"player {p + 3}: {game.strategy_labels[p + 2][s]}"
                for p, s in enumerate(tail)
            )
            lines.append(header)
        lines.extend(_render_block(game, tuple(tail), markdown))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
