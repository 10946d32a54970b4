"""Dense brute-force reference path.

Materializes the branch operator, the strategy sandwiches, and the payoff
measurements as explicit matrices on the full tensor-product space and
computes payoffs by literal trace. Slot 0 is the most significant digit of
the dense index, matching the sparse path's label convention, so states and
operators are comparable entry for entry. Used only for cross-checks; the
sparse path owns anything wide.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from .evaluation import MixedProfile, PureProfile, _check_profile
from .games import BudgetError
from .scheme import SchemeSpec, strategy_space
from .states import LocalOperator, RegisterLayout, SparseState

DIMENSION_GUARD = 2**14


def _full_dimension(spec: SchemeSpec) -> int:
    return spec.control_layout.dimension * spec.operation_layout.dimension


def _check_dimension(spec: SchemeSpec) -> None:
    dim = _full_dimension(spec)
    if dim > DIMENSION_GUARD:
        raise BudgetError(f"dense path refuses dimension {dim} > {DIMENSION_GUARD}")


def dense_state(state: SparseState) -> np.ndarray:
    """Column vector of a sparse state."""
    vec = np.zeros(state.layout.dimension, dtype=complex)
    for label, amp in state.amplitudes.items():
        vec[state.layout.index_of(label)] = amp
    return vec


def _projector(radix: int, digit: int) -> np.ndarray:
    mat = np.zeros((radix, radix), dtype=complex)
    mat[digit, digit] = 1.0
    return mat


def _shift_matrix(radix: int, op: LocalOperator) -> np.ndarray:
    amount = op.shift % radix
    mat = np.zeros((radix, radix), dtype=complex)
    for i in range(radix):
        mat[(i + amount) % radix, i] = 1.0
    return mat


def _kron_all(factors: Iterable[np.ndarray]) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for factor in factors:
        out = np.kron(out, factor)
    return out


def _pattern_projector(layout: RegisterLayout, pattern) -> np.ndarray:
    return _kron_all(_projector(r, d) for r, d in zip(layout.radices, pattern))


def dense_H(spec: SchemeSpec) -> np.ndarray:
    """The branch operator as a matrix: each control pattern's projector
    tensored with its state's projector, plus the complement of all patterns
    tensored with the default state's projector."""
    _check_dimension(spec)
    control_dim = spec.control_layout.dimension
    matched = np.zeros((control_dim, control_dim), dtype=complex)
    out = np.zeros((_full_dimension(spec),) * 2, dtype=complex)
    for pattern, state in spec.branches:
        proj = _pattern_projector(spec.control_layout, pattern)
        matched += proj
        vec = dense_state(state)
        out += np.kron(proj, np.outer(vec, vec.conj()))
    default_vec = dense_state(spec.default_state)
    complement = np.eye(control_dim, dtype=complex) - matched
    out += np.kron(complement, np.outer(default_vec, default_vec.conj()))
    return out


def dense_strategy_operator(spec: SchemeSpec, profile: PureProfile) -> np.ndarray:
    """The profile's sandwich operator: projectors on the control slots
    tensored with the merged shift operators on the operation slots."""
    _check_profile(spec, profile)
    control_factors = [
        _projector(radix, strategy.projector)
        for radix, strategy in zip(spec.control_layout.radices, profile.strategies)
    ]
    shifts: dict[int, LocalOperator] = {}
    for player, strategy in enumerate(profile.strategies, start=1):
        for slot, op in zip(spec.owned_slots(player), strategy.operators):
            shifts[slot] = op
    op_factors = [
        _shift_matrix(radix, shifts.get(slot, LocalOperator(0)))
        for slot, radix in enumerate(spec.operation_layout.radices)
    ]
    return _kron_all(itertools.chain(control_factors, op_factors))


def dense_final_state(spec: SchemeSpec, profile: PureProfile) -> np.ndarray:
    """Final density operator S H S^dagger of a pure profile.

    On qubit schemes every factor of S is self-adjoint and this is the
    plain sandwich S H S; conjugating keeps qudit shifts (which are not
    self-adjoint) producing a genuine density operator."""
    _check_dimension(spec)
    sandwich = dense_strategy_operator(spec, profile)
    return sandwich @ dense_H(spec) @ sandwich.conj().T


def dense_measurement(spec: SchemeSpec, player: int) -> np.ndarray:
    """Identity on the control register tensored with the player's diagonal
    payoff matrix on the operation register."""
    if not 1 <= player <= spec.players:
        raise ValueError(f"player {player} out of range 1..{spec.players}")
    values = np.array(
        [value for _, value in spec.payoffs[player - 1].items()], dtype=complex
    )
    return np.kron(np.eye(spec.control_layout.dimension, dtype=complex), np.diag(values))


def _mixed_density(spec: SchemeSpec, mixed: MixedProfile) -> np.ndarray:
    spaces = [strategy_space(spec, p) for p in range(1, spec.players + 1)]
    H = dense_H(spec)
    rho = np.zeros_like(H)
    supports = [sorted(dist.items()) for dist in mixed.distributions]
    for combo in itertools.product(*supports):
        prob = math.prod(p for _, p in combo)
        if prob == 0.0:
            continue
        profile = PureProfile(
            tuple(space[i] for space, (i, _) in zip(spaces, combo))
        )
        sandwich = dense_strategy_operator(spec, profile)
        rho += prob * (sandwich @ H @ sandwich.conj().T)
    return rho


def dense_payoff(
    spec: SchemeSpec, profile: PureProfile | MixedProfile, player: int
) -> float:
    """Player's payoff as the literal trace of (density operator x measurement)."""
    _check_dimension(spec)
    if isinstance(profile, MixedProfile):
        rho = _mixed_density(spec, profile)
    else:
        rho = dense_final_state(spec, profile)
    value = np.trace(rho @ dense_measurement(spec, player))
    if abs(value.imag) >= 1e-12:
        raise ArithmeticError(f"payoff trace has imaginary part {value.imag!r}")
    return float(value.real)


def sample_profiles(
    spec: SchemeSpec,
    exhaustive_limit: int = 64,
    samples: int = 50,
    seed: int = 0,
) -> list[PureProfile]:
    """Every pure profile when there are at most exhaustive_limit of them,
    otherwise a seeded random sample."""
    spaces = [strategy_space(spec, p) for p in range(1, spec.players + 1)]
    total = math.prod(len(space) for space in spaces)
    if total <= exhaustive_limit:
        return [
            PureProfile(combo) for combo in itertools.product(*spaces)
        ]
    rng = np.random.default_rng(seed)
    picked = []
    for _ in range(samples):
        picked.append(
            PureProfile(tuple(space[rng.integers(len(space))] for space in spaces))
        )
    return picked


def compare_paths(
    spec: SchemeSpec, profiles: Sequence[PureProfile | MixedProfile]
) -> float:
    """Max absolute payoff discrepancy between the dense trace and the sparse
    evaluation path over the sampled profiles and all players."""
    from .evaluation import payoff_mixed, payoff_pure

    worst = 0.0
    for profile in profiles:
        if isinstance(profile, MixedProfile):
            sparse = payoff_mixed(spec, profile)
        else:
            sparse = payoff_pure(spec, profile)
        for player in range(1, spec.players + 1):
            dense = dense_payoff(spec, profile, player)
            worst = max(worst, abs(dense - sparse[player - 1]))
    return worst
