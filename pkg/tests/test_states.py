"""Register, state, and local-operator behaviour."""

import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from qgame import (
    FLIP,
    IDENTITY,
    LocalOperator,
    RegisterLayout,
    SparseState,
    apply_local,
    basis_state,
    born_weights,
    equal_superposition,
    qubits,
)


def test_layout_validation():
    with pytest.raises(ValueError):
        RegisterLayout(())
    with pytest.raises(ValueError):
        RegisterLayout((2, 1))
    layout = RegisterLayout((2, 3, 4))
    assert layout.slots == 3
    assert layout.dimension == 24


def test_index_label_roundtrip():
    layout = RegisterLayout((2, 3, 2))
    for i, label in enumerate(layout.labels()):
        assert layout.index_of(label) == i
        assert layout.label_of(i) == label


def test_bit_flip_on_basis_state():
    state = basis_state(qubits(1), (0,))
    flipped = apply_local(state, {0: FLIP})
    assert flipped.amplitudes == {(1,): 1.0 + 0.0j}


@pytest.mark.parametrize("n", [2, 3, 5])
def test_qudit_shift_wraps_around(n):
    layout = RegisterLayout((n + 1,))
    state = basis_state(layout, (n,))
    assert apply_local(state, {0: LocalOperator(1)}).amplitudes == {(0,): 1.0 + 0.0j}


def test_shift_on_three_qubit_superposition():
    # flipping the last qubit of (|001>+|010>+|100>+|111>)/2
    layout = qubits(3)
    psi = equal_superposition(layout, [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)])
    shifted = apply_local(psi, {0: IDENTITY, 1: IDENTITY, 2: FLIP})
    expected = equal_superposition(layout, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
    assert shifted == expected


def test_born_weights_basis_and_bell():
    assert born_weights(basis_state(qubits(1), (1,))) == {(1,): 1.0}
    bell = equal_superposition(qubits(2), [(0, 0), (1, 1)])
    weights = born_weights(bell)
    assert set(weights) == {(0, 0), (1, 1)}
    for w in weights.values():
        assert w == pytest.approx(0.5, abs=1e-12)


def test_born_weights_alternating_superposition():
    # (|1010...10> + |1010...11>)/sqrt(2) on 10 qubits
    n = 10
    base = tuple(1 if i % 2 == 0 else 0 for i in range(n))
    other = base[:-1] + (1,)
    state = equal_superposition(qubits(n), [base, other])
    weights = born_weights(state)
    assert set(weights) == {base, other}
    for w in weights.values():
        assert w == pytest.approx(0.5, abs=1e-12)


def test_basis_state_examples():
    assert basis_state(qubits(4), (0, 0, 0, 0)).amplitudes == {(0, 0, 0, 0): 1.0 + 0.0j}
    assert basis_state(RegisterLayout((3, 3)), (2, 1)).amplitudes == {(2, 1): 1.0 + 0.0j}
    shifted = apply_local(basis_state(qubits(2), (0, 0)), {0: FLIP, 1: FLIP})
    assert shifted.amplitudes == {(1, 1): 1.0 + 0.0j}


def test_basis_state_rejects_bad_digits():
    with pytest.raises(ValueError):
        basis_state(qubits(2), (0, 2))
    with pytest.raises(ValueError):
        basis_state(qubits(2), (0,))


def test_apply_local_rejects_bad_slot():
    state = basis_state(qubits(2), (0, 0))
    with pytest.raises(ValueError):
        apply_local(state, {2: FLIP})


def test_shift_amount_reduced_mod_radix():
    state = basis_state(RegisterLayout((3,)), (2,))
    # shift 2 on radix 3: (2+2) mod 3 = 1; shift 5 acts like shift 2
    assert apply_local(state, {0: LocalOperator(2)}).amplitudes == {(1,): 1.0 + 0.0j}
    assert apply_local(state, {0: LocalOperator(5)}).amplitudes == {(1,): 1.0 + 0.0j}


def test_pruning_drops_negligible_mass():
    state = SparseState(qubits(1), {(0,): 1.0, (1,): 1e-16})
    assert set(state.amplitudes) == {(0,)}
    # the removed probability mass is far below the 1e-12 allowance
    assert abs(state.norm_squared() - 1.0) < 1e-12


layouts_st = st.lists(st.integers(2, 5), min_size=1, max_size=4).map(
    lambda radices: RegisterLayout(tuple(radices))
)


@st.composite
def states_st(draw):
    layout = draw(layouts_st)
    labels = list(layout.labels())
    k = draw(st.integers(1, min(4, len(labels))))
    picked = draw(
        st.lists(st.sampled_from(range(len(labels))), min_size=k, max_size=k, unique=True)
    )
    comps = draw(
        st.lists(
            st.floats(-1, 1, allow_nan=False, allow_infinity=False),
            min_size=2 * k,
            max_size=2 * k,
        )
    )
    amps = [complex(comps[2 * i], comps[2 * i + 1]) for i in range(k)]
    norm = math.sqrt(sum(abs(a) ** 2 for a in amps))
    if norm < 1e-3:
        amps = [1.0 + 0.0j] + [0.0j] * (k - 1)
        norm = 1.0
    return SparseState(layout, {labels[i]: a / norm for i, a in zip(picked, amps)})


@st.composite
def states_with_assignment_st(draw):
    state = draw(states_st())
    assignment = {
        slot: LocalOperator(draw(st.integers(0, 6)))
        for slot in range(state.layout.slots)
        if draw(st.booleans())
    }
    return state, assignment


@given(states_with_assignment_st())
def test_apply_local_preserves_amplitude_multiset(case):
    state, assignment = case
    result = apply_local(state, assignment)
    assert Counter(result.amplitudes.values()) == Counter(state.amplitudes.values())
    assert result.norm_squared() == state.norm_squared()


@given(states_st(), st.integers(0, 6), st.integers(0, 6), st.integers(0, 3))
def test_shift_composition(state, a, b, slot_seed):
    slot = slot_seed % state.layout.slots
    radix = state.layout.radices[slot]
    twice = apply_local(apply_local(state, {slot: LocalOperator(a)}), {slot: LocalOperator(b)})
    once = apply_local(state, {slot: LocalOperator((a + b) % radix)})
    assert twice == once


@given(states_st())
def test_born_weights_sum_to_one(state):
    weights = born_weights(state)
    assert all(w >= 0 for w in weights.values())
    assert abs(sum(weights.values()) - 1.0) <= 1e-12
