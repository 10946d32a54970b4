"""Scheme descriptions for quantum games with projector-selected initial states.

A scheme bundles a control register (one slot per player, holding the
projector choices), an operation register (the slots the players' shift
operators act on), a branch table mapping control patterns to initial
states, per-player diagonal payoff tables, and an ownership map telling
which player drives which operation slot.

The branch operator itself is never materialized here: sandwiching it
between a strategy profile always selects exactly one branch, so a
(pattern -> state) table plus a default state is the whole story. The
oracle module rebuilds the operator densely for cross-checking.

Players are 1-indexed. Slots are 0-indexed within each register.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .states import (
    Label,
    LocalOperator,
    RegisterLayout,
    SparseState,
    basis_state,
    qubits,
)

# Constructors reject user-supplied states this far from unit norm.
PSI_NORM_TOL = 1e-9


class SchemeError(ValueError):
    """A scheme description violates its structural contract."""


class SchemeFormatError(ValueError):
    """A serialized scheme cannot be decoded into a SchemeSpec."""


class PayoffMap:
    """Total real payoff assignment over an operation register's basis labels.

    Backed either by an explicit table or by a rule evaluated on demand;
    rules keep wide registers cheap (the table for an n-slot register has
    dimension(layout) entries).
    """

    __slots__ = ("layout", "_table", "_rule")

    def __init__(
        self,
        layout: RegisterLayout,
        table: Mapping[Iterable[int], float] | None = None,
        rule: Callable[[Label], float] | None = None,
    ):
        if (table is None) == (rule is None):
            raise ValueError("exactly one of table or rule must be given")
        self.layout = layout
        self._rule = rule
        self._table: dict[Label, float] | None = None
        if table is not None:
            self._table = {layout.check_label(l): float(v) for l, v in table.items()}

    def value(self, label: Label) -> float:
        if self._table is not None:
            try:
                return self._table[label]
            except KeyError:
                raise SchemeError(f"payoff table has no entry for label {label}") from None
        return float(self._rule(label))

    def items(self) -> Iterator[tuple[Label, float]]:
        """(label, value) pairs in lexicographic label order; total by contract."""
        for label in self.layout.labels():
            yield label, self.value(label)

    def missing_labels(self, limit: int = 4) -> list[Label]:
        """Up to `limit` labels absent from a table-backed map; rules are total."""
        if self._table is None:
            return []
        missing = []
        for label in self.layout.labels():
            if label not in self._table:
                missing.append(label)
                if len(missing) >= limit:
                    break
        return missing


@dataclass(frozen=True)
class PlayerStrategy:
    """One player's pure strategy: a projector digit for her control slot plus
    a local operator for each operation slot she owns (ascending slot order)."""

    projector: int
    operators: tuple[LocalOperator, ...]


@dataclass(frozen=True, eq=False)
class SchemeSpec:
    """Complete description of one quantum game.

    branches holds (control pattern, initial state) pairs; any control
    label not listed selects default_state, which constructors always set
    to the all-zeros basis state.
    """

    players: int
    control_layout: RegisterLayout
    operation_layout: RegisterLayout
    ownership: tuple[int, ...]          # operation slot -> owning player (1-indexed)
    branches: tuple[tuple[Label, SparseState], ...]
    payoffs: tuple[PayoffMap, ...]      # one map per player
    default_state: SparseState

    def __post_init__(self) -> None:
        if self.players < 2:
            raise SchemeError("a scheme needs at least 2 players")
        if self.control_layout.slots != self.players:
            raise SchemeError(
                f"control register has {self.control_layout.slots} slots "
                f"for {self.players} players"
            )
        if len(self.ownership) != self.operation_layout.slots:
            raise SchemeError("ownership must assign every operation slot")
        for slot, owner in enumerate(self.ownership):
            if not 1 <= owner <= self.players:
                raise SchemeError(f"operation slot {slot} owned by unknown player {owner}")
        for pattern, state in self.branches:
            self.control_layout.check_label(pattern)
            if state.layout != self.operation_layout:
                raise SchemeError(f"branch state for pattern {pattern} is on the wrong layout")
        if self.default_state.layout != self.operation_layout:
            raise SchemeError("default state is on the wrong layout")
        if len(self.payoffs) != self.players:
            raise SchemeError("need one payoff map per player")
        for pm in self.payoffs:
            if pm.layout != self.operation_layout:
                raise SchemeError("payoff map is on the wrong layout")

    def owned_slots(self, player: int) -> tuple[int, ...]:
        return tuple(s for s, owner in enumerate(self.ownership) if owner == player)


def validate(spec: SchemeSpec) -> list[str]:
    """Check the scheme's soft invariants; each violation names the invariant
    and the offending element. An empty list means the spec is well formed."""
    violations: list[str] = []
    owners = set(spec.ownership)
    for player in range(1, spec.players + 1):
        if player not in owners:
            violations.append(f"surjectivity: player {player} owns no operation slot")
    seen: set[Label] = set()
    for pattern, state in spec.branches:
        if pattern in seen:
            violations.append(f"distinct-patterns: control pattern {pattern} appears twice")
        seen.add(pattern)
        if abs(state.norm() - 1.0) > PSI_NORM_TOL:
            violations.append(
                f"normalization: branch {pattern} state has norm {state.norm():.9g}"
            )
    if abs(spec.default_state.norm() - 1.0) > PSI_NORM_TOL:
        violations.append(
            f"normalization: default state has norm {spec.default_state.norm():.9g}"
        )
    for player, pm in enumerate(spec.payoffs, start=1):
        missing = pm.missing_labels()
        if missing:
            shown = ", ".join(str(m) for m in missing)
            violations.append(f"totality: player {player} payoff table missing {shown}")
    return violations


def _check_psi(psi: SparseState, layout: RegisterLayout, who: str = "psi") -> None:
    if psi.layout != layout:
        raise SchemeError(
            f"{who} must live on layout {layout.radices}, got {psi.layout.radices}"
        )
    if abs(psi.norm() - 1.0) > PSI_NORM_TOL:
        raise SchemeError(f"{who} is not normalized (norm {psi.norm():.9g})")


def _pair_matrix_payoffs(
    payoff_matrix: Sequence[Sequence[tuple[float, float]]],
    layout: RegisterLayout,
) -> tuple[PayoffMap, PayoffMap]:
    rows, cols = layout.radices
    table1: dict[Label, float] = {}
    table2: dict[Label, float] = {}
    if len(payoff_matrix) != rows:
        raise SchemeError(f"payoff matrix needs {rows} rows, got {len(payoff_matrix)}")
    for i, row in enumerate(payoff_matrix):
        if len(row) != cols:
            raise SchemeError(f"payoff matrix row {i} needs {cols} entries, got {len(row)}")
        for j, pair in enumerate(row):
            a, b = pair
            table1[(i, j)] = float(a)
            table2[(i, j)] = float(b)
    return PayoffMap(layout, table1), PayoffMap(layout, table2)


def make_bimatrix(
    payoff_matrix: Sequence[Sequence[tuple[float, float]]],
    psi: SparseState,
) -> SchemeSpec:
    """Two-player scheme for an r x c matrix of payoff pairs, r, c >= 2.

    Player 1 shifts the first operation slot (radix r), player 2 the second
    (radix c); the joint state psi is selected when both projector digits
    are 1.
    """
    rows = len(payoff_matrix)
    cols = len(payoff_matrix[0]) if rows else 0
    if rows < 2 or cols < 2:
        raise SchemeError("payoff matrix must be at least 2x2")
    op_layout = RegisterLayout((rows, cols))
    _check_psi(psi, op_layout)
    pay1, pay2 = _pair_matrix_payoffs(payoff_matrix, op_layout)
    return SchemeSpec(
        players=2,
        control_layout=qubits(2),
        operation_layout=op_layout,
        ownership=(1, 2),
        branches=(((1, 1), psi),),
        payoffs=(pay1, pay2),
        default_state=basis_state(op_layout, op_layout.zero_label()),
    )


def make_two_by_two(
    payoff_matrix: Sequence[Sequence[tuple[float, float]]],
    psi: SparseState,
) -> SchemeSpec:
    """Two-player, two-strategy scheme; psi must live on two qubit slots."""
    if len(payoff_matrix) != 2 or any(len(row) != 2 for row in payoff_matrix):
        raise SchemeError("make_two_by_two needs a 2x2 payoff matrix")
    _check_psi(psi, qubits(2))
    return make_bimatrix(payoff_matrix, psi)


def make_strategic(
    k: int,
    payoff_tensor: Sequence[Mapping[Iterable[int], float]],
    psi: SparseState,
) -> SchemeSpec:
    """k-player scheme with one qubit control and one qubit operation slot per
    player; payoff_tensor gives each player's total map over k-bit labels."""
    if k < 2:
        raise SchemeError("strategic scheme needs at least 2 players")
    op_layout = qubits(k)
    _check_psi(psi, op_layout)
    if len(payoff_tensor) != k:
        raise SchemeError(f"need {k} payoff tables, got {len(payoff_tensor)}")
    maps = []
    for player, table in enumerate(payoff_tensor, start=1):
        pm = PayoffMap(op_layout, table=table)
        missing = pm.missing_labels()
        if missing:
            raise SchemeError(f"player {player} payoff tensor missing labels {missing}")
        maps.append(pm)
    return SchemeSpec(
        players=k,
        control_layout=qubits(k),
        operation_layout=op_layout,
        ownership=tuple(range(1, k + 1)),
        branches=(((1,) * k, psi),),
        payoffs=tuple(maps),
        default_state=basis_state(op_layout, op_layout.zero_label()),
    )


def make_extensive_scheme(
    k: int,
    n: int,
    xi: Mapping[int, int],
    payoff_tensor: Sequence[Mapping[Iterable[int], float] | PayoffMap],
    psi: SparseState,
) -> SchemeSpec:
    """Scheme for a k-player game with n information sets, n >= k.

    xi maps each operation slot 0..n-1 to the player acting there and must
    be surjective onto {1..k}. payoff_tensor entries may be explicit tables
    or PayoffMap instances (rule-backed maps keep large n affordable).
    """
    if k < 2:
        raise SchemeError("extensive scheme needs at least 2 players")
    if n < k:
        raise SchemeError(f"need at least as many information sets as players ({n} < {k})")
    op_layout = qubits(n)
    _check_psi(psi, op_layout)
    ownership = []
    for slot in range(n):
        if slot not in xi:
            raise SchemeError(f"ownership map does not cover operation slot {slot}")
        ownership.append(int(xi[slot]))
    if set(ownership) != set(range(1, k + 1)):
        raise SchemeError(f"ownership map must be surjective onto players 1..{k}")
    if len(payoff_tensor) != k:
        raise SchemeError(f"need {k} payoff tables, got {len(payoff_tensor)}")
    maps = []
    for player, table in enumerate(payoff_tensor, start=1):
        pm = table if isinstance(table, PayoffMap) else PayoffMap(op_layout, table=table)
        if pm.layout != op_layout:
            raise SchemeError(f"player {player} payoff map is on the wrong layout")
        missing = pm.missing_labels()
        if missing:
            raise SchemeError(f"player {player} payoff tensor missing labels {missing}")
        maps.append(pm)
    return SchemeSpec(
        players=k,
        control_layout=qubits(k),
        operation_layout=op_layout,
        ownership=tuple(ownership),
        branches=(((1,) * k, psi),),
        payoffs=tuple(maps),
        default_state=basis_state(op_layout, op_layout.zero_label()),
    )


def make_multi_initial(
    payoff_matrix: Sequence[Sequence[tuple[float, float]]],
    psis: Sequence[SparseState],
) -> SchemeSpec:
    """Two-player scheme with n joint states: control digits (i, i) select the
    i-th state for i = 1..n, every other pattern plays classically.

    Control slots get radix n+1 so digit 0 always falls through to the
    classical branch.
    """
    n = len(psis)
    if n < 1:
        raise SchemeError("need at least one joint state")
    if len(payoff_matrix) != 2 or any(len(row) != 2 for row in payoff_matrix):
        raise SchemeError("multi-initial scheme takes a 2x2 payoff matrix")
    op_layout = qubits(2)
    for i, psi in enumerate(psis, start=1):
        _check_psi(psi, op_layout, who=f"psi_{i}")
    control_layout = RegisterLayout((n + 1, n + 1))
    branches = tuple(((i, i), psis[i - 1]) for i in range(1, n + 1))
    if len({pattern for pattern, _ in branches}) != len(branches):
        raise SchemeError("duplicate control patterns in branch table")
    pay1, pay2 = _pair_matrix_payoffs(payoff_matrix, op_layout)
    return SchemeSpec(
        players=2,
        control_layout=control_layout,
        operation_layout=op_layout,
        ownership=(1, 2),
        branches=branches,
        payoffs=(pay1, pay2),
        default_state=basis_state(op_layout, op_layout.zero_label()),
    )


def strategy_space(spec: SchemeSpec, player: int) -> tuple[PlayerStrategy, ...]:
    """All pure strategies of a player, projector digit ascending and operator
    assignments in lexicographic order over the owned slots."""
    if not 1 <= player <= spec.players:
        raise ValueError(f"player {player} out of range 1..{spec.players}")
    control_radix = spec.control_layout.radices[player - 1]
    owned = spec.owned_slots(player)
    shift_ranges = [range(spec.operation_layout.radices[s]) for s in owned]
    strategies = []
    for digit in range(control_radix):
        for shifts in itertools.product(*shift_ranges):
            strategies.append(
                PlayerStrategy(digit, tuple(LocalOperator(s) for s in shifts))
            )
    return tuple(strategies)


def strategy_label(strategy: PlayerStrategy) -> str:
    """Readable operator-product name, e.g. 'P1⊗U0⊗U1'."""
    return f"P{strategy.projector}" + "".join(f"⊗U{op.shift}" for op in strategy.operators)


def strategy_digits(strategy: PlayerStrategy) -> str:
    """Compact digit string: projector digit then owned-slot shifts ('100').
    Falls back to dot-separated digits when any digit exceeds 9."""
    parts = [str(strategy.projector)] + [str(op.shift) for op in strategy.operators]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ".".join(parts)


# --- canonical JSON ---------------------------------------------------------
#
# {
#   "players": 2,
#   "control_radices": [2, 2],
#   "operation_radices": [2, 2, 2, 2],
#   "ownership": [1, 2, 1, 2],
#   "branches": [{"pattern": "11", "state": [{"label": "...", "re": x, "im": y}]}],
#   "payoffs": [[{"label": "0000", "value": 2.0}, ...], ...]
# }
#
# Labels are digit strings with slot 0 leftmost; when any radix exceeds 10
# the digits are comma-separated instead. A "default_state" field is added
# only when the default differs from the all-zeros basis state.


def _label_to_str(label: Label, layout: RegisterLayout) -> str:
    if any(r > 10 for r in layout.radices):
        return ",".join(str(d) for d in label)
    return "".join(str(d) for d in label)


def _label_from_str(text: str, layout: RegisterLayout) -> Label:
    try:
        if "," in text:
            digits = [int(d) for d in text.split(",")]
        else:
            digits = [int(ch) for ch in text]
        return layout.check_label(digits)
    except ValueError as exc:
        raise SchemeFormatError(f"bad basis label {text!r}: {exc}") from None


def _state_to_json(state: SparseState) -> list[dict]:
    return [
        {
            "label": _label_to_str(label, state.layout),
            "re": amp.real,
            "im": amp.imag,
        }
        for label, amp in sorted(state.amplitudes.items())
    ]


def _state_from_json(terms, layout: RegisterLayout) -> SparseState:
    if not isinstance(terms, list):
        raise SchemeFormatError("state must be a list of amplitude terms")
    amplitudes: dict[Label, complex] = {}
    for term in terms:
        try:
            label = _label_from_str(term["label"], layout)
            amplitudes[label] = complex(float(term["re"]), float(term["im"]))
        except (KeyError, TypeError) as exc:
            raise SchemeFormatError(f"bad state term {term!r}: {exc}") from None
    return SparseState(layout, amplitudes)


def scheme_to_json_dict(spec: SchemeSpec) -> dict:
    doc = {
        "players": spec.players,
        "control_radices": list(spec.control_layout.radices),
        "operation_radices": list(spec.operation_layout.radices),
        "ownership": list(spec.ownership),
        "branches": [
            {
                "pattern": _label_to_str(pattern, spec.control_layout),
                "state": _state_to_json(state),
            }
            for pattern, state in spec.branches
        ],
        "payoffs": [
            [
                {"label": _label_to_str(label, spec.operation_layout), "value": value}
                for label, value in pm.items()
            ]
            for pm in spec.payoffs
        ],
    }
    zeros = basis_state(spec.operation_layout, spec.operation_layout.zero_label())
    if spec.default_state != zeros:
        doc["default_state"] = _state_to_json(spec.default_state)
    return doc


def scheme_to_json(spec: SchemeSpec) -> str:
    return json.dumps(scheme_to_json_dict(spec), indent=2, sort_keys=True)


def scheme_from_json_dict(doc: dict) -> SchemeSpec:
    if not isinstance(doc, dict):
        raise SchemeFormatError("scheme document must be a JSON object")
    required = ["players", "control_radices", "operation_radices", "ownership", "branches", "payoffs"]
    for key in required:
        if key not in doc:
            raise SchemeFormatError(f"scheme document missing field {key!r}")
    try:
        control_layout = RegisterLayout(tuple(doc["control_radices"]))
        operation_layout = RegisterLayout(tuple(doc["operation_radices"]))
    except (TypeError, ValueError) as exc:
        raise SchemeFormatError(f"bad register layout: {exc}") from None
    branches = []
    for entry in doc["branches"]:
        try:
            pattern = _label_from_str(entry["pattern"], control_layout)
            state = _state_from_json(entry["state"], operation_layout)
        except (KeyError, TypeError) as exc:
            raise SchemeFormatError(f"bad branch entry: {exc}") from None
        branches.append((pattern, state))
    payoffs = []
    if not isinstance(doc["payoffs"], list):
        raise SchemeFormatError("payoffs must be a list with one entry per player")
    for rows in doc["payoffs"]:
        table: dict[Label, float] = {}
        for row in rows:
            try:
                label = _label_from_str(row["label"], operation_layout)
                table[label] = float(row["value"])
            except (KeyError, TypeError) as exc:
                raise SchemeFormatError(f"bad payoff entry {row!r}: {exc}") from None
        payoffs.append(PayoffMap(operation_layout, table=table))
    if "default_state" in doc:
        default = _state_from_json(doc["default_state"], operation_layout)
    else:
        default = basis_state(operation_layout, operation_layout.zero_label())
    try:
        return SchemeSpec(
            players=int(doc["players"]),
            control_layout=control_layout,
            operation_layout=operation_layout,
            ownership=tuple(int(o) for o in doc["ownership"]),
            branches=tuple(branches),
            payoffs=tuple(payoffs),
            default_state=default,
        )
    except (SchemeError, TypeError, ValueError) as exc:
        raise SchemeFormatError(f"inconsistent scheme document: {exc}") from None


def scheme_from_json(text: str) -> SchemeSpec:
    return scheme_from_json_dict(json.loads(text))
