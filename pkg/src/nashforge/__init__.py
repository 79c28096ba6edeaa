"""Exact-arithmetic graphical games: equilibrium checking, refinements,
and CNF-to-game compilation with brute-force validation oracles."""

from .cnf import CnfFormula, pad_clauses, parse_dimacs, to_dimacs
from .constraints import (
    ActionConstraint,
    PayoffConstraint,
    non_random_satisfied,
    satisfies_all,
    satisfies_constraint,
)
from .equilibrium import (
    BudgetExceededError,
    NashReport,
    best_response_regret,
    enumerate_equilibria_2x2,
    enumerate_pure_nash,
    grid_profiles,
    is_nash,
    pair_slice_game,
)
from .game import (
    GraphicalGame,
    UtilityTable,
    ValidationReport,
    dependency_graph,
    game_from_dict,
    game_to_dict,
    induced_subgame,
    local_joint_actions,
    validate_game,
)
from .oracles import (
    CorpusInstance,
    LemmaReport,
    default_corpus,
    run_corpus,
    sat_brute_force,
    showcase_formula,
)
from .reductions import (
    FEncoding,
    ReductionArtifacts,
    artifacts_from_dict,
    artifacts_to_dict,
    build_action_constrained_instance,
    build_another_nash_instance,
    build_gamma_scaled,
    build_gphi,
    build_payoff_constrained_instance,
    canonical_profile,
)
from .refinements import (
    DeviationWitness,
    StrongReport,
    another_nash_desk,
    coalition_improvement_pure,
    is_pareto_within,
    strong_check_desk,
)
from .strategy import (
    IndividualStrategy,
    Profile,
    expected_payoff,
    profile_from_dict,
    profile_to_dict,
    pure_profile,
    restrict,
    substitute,
)

__version__ = "0.1.0"
