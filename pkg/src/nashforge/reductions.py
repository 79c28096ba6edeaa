"""Compile CNF formulas into graphical games whose equilibria track
satisfiability.

Every generated game uses the two-action set {T, F}.  Per variable i the
compiler emits a three-player gadget: a coordination pair x_i'/x_i''
(payoff 1 for matching, 0 otherwise) and a watcher x_i whose table makes
her best response pure in every equilibrium context of the pair.  Per
clause a player rewarded for evaluating her clause correctly from the
watchers' actions; above them a complete binary tree of AND-gate players
with the clause players as leaves; at the root a distinguished player E
paid 2 for a correct T and 1 for a correct F.  E is nobody's neighbor in
the base game, so her choice never influences the rest.

Neighbor orders are part of the game definition and are emitted
canonically: watchers see (x_i', x_i''); clause players see their
variables' watchers in ascending variable order; tree players see
(left child, right child); the scaled variant appends E last.  Identical
input formulas therefore serialize to byte-identical artifacts.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping

from .cnf import CnfFormula, TruthAssignment, clause_satisfied, pad_clauses
from .game import ActionId, GraphicalGame, PlayerId, UtilityTable
from .rationals import format_rational, parse_rational
from .strategy import (
    IndividualStrategy,
    Profile,
    pure_strategy,
    uniform_strategy,
)

T, F = "T", "F"
ACTIONS: tuple[ActionId, ...] = (T, F)

ROLE_VARIABLE = "variable"
ROLE_AUX_FIRST = "variable-aux-1"
ROLE_AUX_SECOND = "variable-aux-2"
ROLE_CLAUSE = "clause"
ROLE_TREE = "tree"
ROLE_ROOT = "root-E"
ROLE_PENNIES = "pennies"

ROOT = "E"


class FEncoding(enum.Enum):
    """Which coordination-pair equilibrium realizes a false variable in
    canonical profiles (a true variable is always realized by both-F)."""

    S2_FOR_FALSE = "s2"  # pair plays T,T: keeps the whole profile pure
    S3_FOR_FALSE = "s3"  # pair mixes 1/2,1/2: keeps payoffs strictly low


@dataclass(frozen=True)
class ReductionArtifacts:
    """A generated game plus role labels and the CNF-player correspondence."""

    game: GraphicalGame
    roles: Mapping[PlayerId, str]
    var_map: Mapping[int, tuple[PlayerId, PlayerId, PlayerId]]
    clause_map: Mapping[int, PlayerId]
    tree_children: Mapping[PlayerId, tuple[PlayerId, PlayerId]]
    cnf: CnfFormula  # the padded formula the game encodes
    gamma: Fraction | None = None
    alpha: Fraction | None = None


def _rational(x: int | Fraction) -> Fraction:
    return Fraction(x)


def _coordination_table(owner: PlayerId) -> UtilityTable:
    entries = {
        (a, b): _rational(1 if a == b else 0) for a in ACTIONS for b in ACTIONS
    }
    return UtilityTable(owner=owner, entries=entries)


def _watcher_table(owner: PlayerId) -> UtilityTable:
    rows = {
        (T, T, T): -2, (T, T, F): 0, (T, F, T): 0, (T, F, F): 1,
        (F, T, T): 2, (F, T, F): 0, (F, F, T): 0, (F, F, F): -1,
    }
    return UtilityTable(owner=owner, entries={k: _rational(v) for k, v in rows.items()})


def _clause_table(owner: PlayerId, clause: tuple[int, ...], var_order: list[int]) -> UtilityTable:
    entries: dict[tuple[ActionId, ...], Fraction] = {}
    for own in ACTIONS:
        for combo in itertools.product(ACTIONS, repeat=len(var_order)):
            sigma = {v: a == T for v, a in zip(var_order, combo)}
            value = clause_satisfied(clause, sigma)
            entries[(own, *combo)] = _rational(1 if (own == T) == value else 0)
    return UtilityTable(owner=owner, entries=entries)


def _and_gate_table(owner: PlayerId) -> UtilityTable:
    entries: dict[tuple[ActionId, ...], Fraction] = {}
    for own in ACTIONS:
        for left in ACTIONS:
            for right in ACTIONS:
                value = left == T and right == T
                entries[(own, left, right)] = _rational(1 if (own == T) == value else 0)
    return UtilityTable(owner=owner, entries=entries)


def _root_table(owner: PlayerId, alpha: Fraction | None = None) -> UtilityTable:
    """E's table: a premium for a correct T over a correct F, nothing for a
    wrong answer.  The payoff-constrained variant replaces (2, 1, 0) by
    (alpha, alpha/2, -alpha)."""
    correct_t = _rational(2) if alpha is None else alpha
    correct_f = _rational(1) if alpha is None else alpha / 2
    wrong = _rational(0) if alpha is None else -alpha
    entries: dict[tuple[ActionId, ...], Fraction] = {}
    for own in ACTIONS:
        for left in ACTIONS:
            for right in ACTIONS:
                both_true = left == T and right == T
                if own == T:
                    entries[(own, left, right)] = correct_t if both_true else wrong
                else:
                    entries[(own, left, right)] = wrong if both_true else correct_f
    return UtilityTable(owner=owner, entries=entries)


def build_gphi(cnf: CnfFormula, alpha: Fraction | None = None) -> ReductionArtifacts:
    """Compile a formula into its base game (padding first if needed)."""
    if alpha is not None and alpha <= 0:
        raise ValueError("alpha must be positive")
    padded = cnf
    m = padded.num_clauses
    if m < 2 or m & (m - 1):
        padded = pad_clauses(cnf)

    players: list[PlayerId] = []
    neighbors: dict[PlayerId, tuple[PlayerId, ...]] = {}
    actions: dict[PlayerId, tuple[ActionId, ...]] = {}
    utilities: dict[PlayerId, UtilityTable] = {}
    roles: dict[PlayerId, str] = {}
    var_map: dict[int, tuple[PlayerId, PlayerId, PlayerId]] = {}

    def add(player: PlayerId, neigh: tuple[PlayerId, ...], table: UtilityTable, role: str) -> None:
        players.append(player)
        neighbors[player] = neigh
        actions[player] = ACTIONS
        utilities[player] = table
        roles[player] = role

    for i in range(1, padded.num_vars + 1):
        watcher, first, second = f"x{i}", f"x{i}'", f"x{i}''"
        var_map[i] = (watcher, first, second)
        add(watcher, (first, second), _watcher_table(watcher), ROLE_VARIABLE)
        add(first, (second,), _coordination_table(first), ROLE_AUX_FIRST)
        add(second, (first,), _coordination_table(second), ROLE_AUX_SECOND)

    clause_map: dict[int, PlayerId] = {}
    for j, clause in enumerate(padded.clauses, start=1):
        name = f"c{j}"
        clause_map[j] = name
        var_order = sorted({abs(lit) for lit in clause})
        neigh = tuple(var_map[v][0] for v in var_order)
        add(name, neigh, _clause_table(name, clause, var_order), ROLE_CLAUSE)

    # complete binary tree over the clause players, leaves in clause order,
    # internal nodes numbered level by level up to E's two children
    tree_children: dict[PlayerId, tuple[PlayerId, PlayerId]] = {}
    level = [clause_map[j] for j in range(1, len(padded.clauses) + 1)]
    next_tree_id = 1
    while len(level) > 2:
        above: list[PlayerId] = []
        for k in range(0, len(level), 2):
            name = f"t{next_tree_id}"
            next_tree_id += 1
            tree_children[name] = (level[k], level[k + 1])
            add(name, tree_children[name], _and_gate_table(name), ROLE_TREE)
            above.append(name)
        level = above
    tree_children[ROOT] = (level[0], level[1])
    add(ROOT, tree_children[ROOT], _root_table(ROOT, alpha), ROLE_ROOT)

    game = GraphicalGame(
        players=tuple(players),
        neighbors=neighbors,
        actions=actions,
        utilities=utilities,
    )
    return ReductionArtifacts(
        game=game,
        roles=roles,
        var_map=var_map,
        clause_map=clause_map,
        tree_children=tree_children,
        cnf=padded,
        alpha=alpha,
    )


def canonical_profile(
    artifacts: ReductionArtifacts,
    sigma: TruthAssignment,
    encoding: FEncoding = FEncoding.S3_FOR_FALSE,
) -> Profile:
    """The equilibrium profile realizing a truth assignment.

    Watchers play their assigned value; a true variable's pair plays F,F;
    a false variable's pair plays T,T or the uniform mix per `encoding`.
    Clause players evaluate their clauses, AND-gates and E propagate the
    conjunction upward.  Pennies players, when present, play uniformly.
    """
    cnf = artifacts.cnf
    missing = [i for i in range(1, cnf.num_vars + 1) if i not in sigma]
    if missing:
        raise ValueError(f"assignment misses variables {missing}")
    game = artifacts.game
    half = Fraction(1, 2)
    strategies: dict[PlayerId, IndividualStrategy] = {}

    for i in range(1, cnf.num_vars + 1):
        watcher, first, second = artifacts.var_map[i]
        if sigma[i]:
            strategies[watcher] = pure_strategy(game, watcher, T)
            strategies[first] = pure_strategy(game, first, F)
            strategies[second] = pure_strategy(game, second, F)
        else:
            strategies[watcher] = pure_strategy(game, watcher, F)
            if encoding is FEncoding.S2_FOR_FALSE:
                strategies[first] = pure_strategy(game, first, T)
                strategies[second] = pure_strategy(game, second, T)
            else:
                strategies[first] = IndividualStrategy(first, {T: half, F: half})
                strategies[second] = IndividualStrategy(second, {T: half, F: half})

    value: dict[PlayerId, bool] = {}
    for j, clause in enumerate(cnf.clauses, start=1):
        name = artifacts.clause_map[j]
        value[name] = clause_satisfied(clause, sigma)
        strategies[name] = pure_strategy(game, name, T if value[name] else F)

    pending = [p for p in artifacts.tree_children if p not in value]
    while pending:
        rest: list[PlayerId] = []
        for p in pending:
            left, right = artifacts.tree_children[p]
            if left in value and right in value:
                value[p] = value[left] and value[right]
                strategies[p] = pure_strategy(game, p, T if value[p] else F)
            else:
                rest.append(p)
        pending = rest

    for p in game.players:
        if p not in strategies and artifacts.roles[p] == ROLE_PENNIES:
            strategies[p] = uniform_strategy(game, p)
    return Profile(strategies)


def build_action_constrained_instance(cnf: CnfFormula):
    """Base game plus the constraint forcing E to play T surely."""
    from .constraints import ActionConstraint

    artifacts = build_gphi(cnf)
    return artifacts, ActionConstraint(ROOT, T, "=", Fraction(1))


def build_payoff_constrained_instance(cnf: CnfFormula, alpha: Fraction):
    """Game with E's table rescaled to (alpha, alpha/2, -alpha) plus the
    constraint pinning E's expected payoff to alpha."""
    from .constraints import PayoffConstraint

    artifacts = build_gphi(cnf, alpha=Fraction(alpha))
    return artifacts, PayoffConstraint((ROOT,), "single", "=", Fraction(alpha))


def _pennies_table(owner: PlayerId, match_payoff: int) -> UtilityTable:
    entries: dict[tuple[ActionId, ...], Fraction] = {}
    for own in ACTIONS:
        for theirs in ACTIONS:
            for root_action in ACTIONS:
                if root_action == T:
                    payoff = 0
                else:
                    payoff = match_payoff if own == theirs else -match_payoff
                entries[(own, theirs, root_action)] = _rational(payoff)
    return UtilityTable(owner=owner, entries=entries)


def build_another_nash_instance(cnf: CnfFormula) -> ReductionArtifacts:
    """Base game extended with a matching-pennies pair P1/P2 watching E.

    When E plays T both are indifferent everywhere; when E plays F, P1
    earns 1 for matching P2 and -1 otherwise, and P2 the negation.  The
    pair influences nobody else, E included.
    """
    base = build_gphi(cnf)
    p1, p2 = "P1", "P2"
    players = base.game.players + (p1, p2)
    neighbors = dict(base.game.neighbors)
    actions = dict(base.game.actions)
    utilities = dict(base.game.utilities)
    roles = dict(base.roles)
    neighbors[p1] = (p2, ROOT)
    neighbors[p2] = (p1, ROOT)
    actions[p1] = actions[p2] = ACTIONS
    utilities[p1] = _pennies_table(p1, match_payoff=1)
    utilities[p2] = _pennies_table(p2, match_payoff=-1)
    roles[p1] = roles[p2] = ROLE_PENNIES
    game = GraphicalGame(
        players=players, neighbors=neighbors, actions=actions, utilities=utilities
    )
    return replace(base, game=game, roles=roles)


def build_gamma_scaled(artifacts: ReductionArtifacts, gamma: Fraction) -> ReductionArtifacts:
    """Variant where everyone watches E and earns gamma times her base
    utility whenever E plays T.

    For every profile the new expected payoff is the old one times
    (1 + (gamma - 1) * E_T), so equilibria are preserved for gamma > 0.
    """
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    game = artifacts.game
    for p in game.players:
        if p != ROOT and ROOT in game.neighbors[p]:
            raise ValueError(f"{p!r} already watches {ROOT}; cannot rescale")
    neighbors = dict(game.neighbors)
    utilities = dict(game.utilities)
    for p in game.players:
        if p == ROOT:
            continue
        neighbors[p] = game.neighbors[p] + (ROOT,)
        entries: dict[tuple[ActionId, ...], Fraction] = {}
        for joint, payoff in game.utilities[p].entries.items():
            entries[(*joint, T)] = gamma * payoff
            entries[(*joint, F)] = payoff
        utilities[p] = UtilityTable(owner=p, entries=entries)
    scaled = GraphicalGame(
        players=game.players,
        neighbors=neighbors,
        actions=dict(game.actions),
        utilities=utilities,
    )
    return replace(artifacts, game=scaled, gamma=gamma)


def artifacts_to_dict(artifacts: ReductionArtifacts) -> dict:
    from .game import game_to_dict

    data = game_to_dict(artifacts.game)
    data["roles"] = {p: artifacts.roles[p] for p in artifacts.game.players}
    data["var_map"] = {str(i): list(artifacts.var_map[i]) for i in sorted(artifacts.var_map)}
    data["clause_map"] = {
        str(j): artifacts.clause_map[j] for j in sorted(artifacts.clause_map)
    }
    data["tree"] = {
        "root": ROOT,
        "children": {p: list(c) for p, c in artifacts.tree_children.items()},
    }
    data["cnf"] = {
        "num_vars": artifacts.cnf.num_vars,
        "clauses": [list(c) for c in artifacts.cnf.clauses],
    }
    data["gamma"] = format_rational(artifacts.gamma) if artifacts.gamma is not None else None
    data["alpha"] = format_rational(artifacts.alpha) if artifacts.alpha is not None else None
    return data


def artifacts_from_dict(data: dict) -> ReductionArtifacts:
    from .game import game_from_dict

    game = game_from_dict(data)
    return ReductionArtifacts(
        game=game,
        roles=dict(data["roles"]),
        var_map={int(i): tuple(v) for i, v in data["var_map"].items()},
        clause_map={int(j): c for j, c in data["clause_map"].items()},
        tree_children={p: tuple(c) for p, c in data["tree"]["children"].items()},
        cnf=CnfFormula(
            num_vars=data["cnf"]["num_vars"],
            clauses=tuple(tuple(c) for c in data["cnf"]["clauses"]),
        ),
        gamma=parse_rational(data["gamma"]) if data.get("gamma") else None,
        alpha=parse_rational(data["alpha"]) if data.get("alpha") else None,
    )
