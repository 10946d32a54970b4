"""Sparse pure states over mixed-radix registers.

The whole engine runs on two local operator families: projectors onto basis
digits (handled at the scheme level) and cyclic shifts of a slot's digit.
Shifts permute basis labels, so a state that starts as a handful of basis
terms stays a handful of terms no matter how wide the register is; states
are therefore stored as label -> amplitude maps rather than dense vectors.

Conventions: slot 0 is the leftmost digit of a label and the most
significant digit of the corresponding dense index.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Label = tuple[int, ...]

NORM_TOL = 1e-12    # tolerated deviation of sum(|amp|^2) from 1
PRUNE_TOL = 1e-15   # amplitudes below this magnitude are dropped


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered register slots, each a d-level system with radix d >= 2."""

    radices: tuple[int, ...]

    def __post_init__(self) -> None:
        radices = tuple(int(r) for r in self.radices)
        if not radices:
            raise ValueError("register layout needs at least one slot")
        if any(r < 2 for r in radices):
            raise ValueError(f"every slot radix must be >= 2, got {radices}")
        object.__setattr__(self, "radices", radices)

    @property
    def slots(self) -> int:
        return len(self.radices)

    @property
    def dimension(self) -> int:
        return math.prod(self.radices)

    def check_label(self, label: Iterable[int]) -> Label:
        """Validate a basis label against this layout and return it as a tuple."""
        digits = tuple(int(d) for d in label)
        if len(digits) != self.slots:
            raise ValueError(
                f"label {digits} has {len(digits)} digits, layout has {self.slots} slots"
            )
        for slot, (digit, radix) in enumerate(zip(digits, self.radices)):
            if not 0 <= digit < radix:
                raise ValueError(f"digit {digit} at slot {slot} outside radix {radix}")
        return digits

    def labels(self) -> Iterator[Label]:
        """All basis labels in lexicographic order (slot 0 varies slowest)."""
        return itertools.product(*(range(r) for r in self.radices))

    def zero_label(self) -> Label:
        return (0,) * self.slots

    def index_of(self, label: Label) -> int:
        """Dense row-major index of a label, slot 0 most significant."""
        index = 0
        for digit, radix in zip(label, self.radices):
            index = index * radix + digit
        return index

    def label_of(self, index: int) -> Label:
        digits = []
        for radix in reversed(self.radices):
            index, digit = divmod(index, radix)
            digits.append(digit)
        return tuple(reversed(digits))


def qubits(n: int) -> RegisterLayout:
    """Layout of n two-level slots."""
    return RegisterLayout((2,) * n)


@dataclass(frozen=True)
class LocalOperator:
    """Cyclic shift of one slot's digit; shift 0 is the identity.

    On a qubit slot, shift 1 is the bit flip. Shift amounts are reduced
    modulo the slot radix when applied, so they may exceed it.
    """

    shift: int = 0

    def __post_init__(self) -> None:
        if self.shift < 0:
            raise ValueError("shift amount must be >= 0")


IDENTITY = LocalOperator(0)
FLIP = LocalOperator(1)


@dataclass(frozen=True)
class SparseState:
    """Pure state as a map from basis labels to complex amplitudes.

    Terms with magnitude below PRUNE_TOL are dropped at construction.
    Normalization is not enforced here (scheme validation reports it);
    all operations in this module preserve the norm exactly.
    """

    layout: RegisterLayout
    amplitudes: dict[Label, complex]

    def __post_init__(self) -> None:
        kept: dict[Label, complex] = {}
        for label, amp in self.amplitudes.items():
            label = self.layout.check_label(label)
            amp = complex(amp)
            if abs(amp) >= PRUNE_TOL:
                kept[label] = amp
        object.__setattr__(self, "amplitudes", kept)

    def norm_squared(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def __repr__(self) -> str:
        terms = " + ".join(
            f"({amp:.4g})|{''.join(map(str, label))}>"
            for label, amp in sorted(self.amplitudes.items())
        )
        return f"SparseState({terms or '0'})"


def basis_state(layout: RegisterLayout, digits: Iterable[int]) -> SparseState:
    """Single-term state |digits> with amplitude 1."""
    return SparseState(layout, {layout.check_label(digits): 1.0 + 0.0j})


def equal_superposition(layout: RegisterLayout, labels: Iterable[Iterable[int]]) -> SparseState:
    """Uniform superposition of the given distinct basis labels."""
    checked = [layout.check_label(label) for label in labels]
    if len(set(checked)) != len(checked):
        raise ValueError("superposition labels must be distinct")
    amp = 1.0 / math.sqrt(len(checked))
    return SparseState(layout, {label: amp for label in checked})


def apply_local(state: SparseState, assignment: Mapping[int, LocalOperator]) -> SparseState:
    """Apply cyclic shifts to the assigned slots; unassigned slots are untouched.

    Shifts permute basis labels, so the amplitude multiset and the norm are
    preserved exactly.
    """
    radices = state.layout.radices
    shifts: dict[int, int] = {}
    for slot, op in assignment.items():
        slot = int(slot)
        if not 0 <= slot < state.layout.slots:
            raise ValueError(f"slot index {slot} out of range for {state.layout.slots}-slot layout")
        amount = op.shift % radices[slot]
        if amount:
            shifts[slot] = amount
    if not shifts:
        return state
    moved: dict[Label, complex] = {}
    for label, amp in state.amplitudes.items():
        digits = list(label)
        for slot, amount in shifts.items():
            digits[slot] = (digits[slot] + amount) % radices[slot]
        moved[tuple(digits)] = amp
    return SparseState(state.layout, moved)


def born_weights(state: SparseState) -> dict[Label, float]:
    """Measurement probabilities |amplitude|^2 per basis label."""
    return {label: abs(amp) ** 2 for label, amp in state.amplitudes.items()}
