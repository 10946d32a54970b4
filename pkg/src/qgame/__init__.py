"""Quantum game schemes with projector-selected initial states.

Players pick a projector digit (which initial state their shift operators
act on) plus local cyclic shifts; payoffs are expectations of diagonal
measurements on the final state. The package evaluates profiles, extracts
the induced normal-form game, enumerates and certifies Nash equilibria,
handles extensive games through their normal representation, and carries a
dense linear-algebra oracle for cross-checking the sparse fast path.
"""

from .equilibrium import (
    EPSILON,
    EquilibriumCertificate,
    best_response_set,
    certify_mixed,
    certify_pure,
    pure_nash,
    strictly_dominated,
)
from .evaluation import (
    DEFAULT_BUDGET,
    FinalState,
    MixedProfile,
    PureProfile,
    classical_embedding_check,
    induced_game,
    payoff_mixed,
    payoff_pure,
    play_pure,
    resolve_branch,
)
from .extensive import (
    CONTINUE,
    STOP,
    CentipedeSpec,
    DecisionNode,
    GameTree,
    TerminalNode,
    TreeStrategy,
    backward_induction,
    classical_deviation_cap,
    make_centipede,
    make_centipede_scheme,
    normal_representation,
    outcome,
    tree_from_json,
    tree_to_json,
    verify_centipede_equilibrium,
)
from .games import (
    BudgetError,
    NormalFormGame,
    game_to_json,
    render_csv,
    render_table,
)
from .oracle import (
    compare_paths,
    dense_H,
    dense_final_state,
    dense_measurement,
    dense_payoff,
    dense_state,
    dense_strategy_operator,
    sample_profiles,
)
from .scheme import (
    PayoffMap,
    PlayerStrategy,
    SchemeError,
    SchemeFormatError,
    SchemeSpec,
    make_bimatrix,
    make_extensive_scheme,
    make_multi_initial,
    make_strategic,
    make_two_by_two,
    scheme_from_json,
    scheme_to_json,
    strategy_digits,
    strategy_label,
    strategy_space,
    validate,
)
from .states import (
    FLIP,
    IDENTITY,
    Label,
    LocalOperator,
    RegisterLayout,
    SparseState,
    apply_local,
    basis_state,
    born_weights,
    equal_superposition,
    qubits,
)

__version__ = "0.1.0"
