"""Declarative action and payoff constraints on equilibria.

An action constraint compares one player's probability of one action
against a rational bound.  A payoff constraint applies a catalog
evaluation (single / sum / min / max) to the expected payoffs of a
player set and compares the result.  Constraint files stay declarative:
the catalog is fixed, never arbitrary code.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .game import GraphicalGame, PlayerId
from .rationals import format_rational, parse_rational
from .strategy import Profile, expected_payoff

OPS = {
    "<": operator.lt,
    ">": operator.gt,
    "=": operator.eq,
    "!=": operator.ne,
    "<=": operator.le,
    ">=": operator.ge,
}

EVAL_FNS = {
    "single": lambda values: values[0],
    "sum": sum,
    "min": min,
    "max": max,
}


@dataclass(frozen=True)
class ActionConstraint:
    player: PlayerId
    action: str
    op: str
    bound: Fraction

    def to_dict(self) -> dict:
        return {
            "kind": "action",
            "player": self.player,
            "action": self.action,
            "op": self.op,
            "k": format_rational(self.bound),
        }


@dataclass(frozen=True)
class PayoffConstraint:
    players: tuple[PlayerId, ...]
    eval_fn: str
    op: str
    bound: Fraction

    def to_dict(self) -> dict:
        return {
            "kind": "payoff",
            "players": list(self.players),
            "eval": self.eval_fn,
            "op": self.op,
            "k": format_rational(self.bound),
        }


Constraint = ActionConstraint | PayoffConstraint


def constraint_from_dict(data: dict) -> Constraint:
    op = data["op"]
    if op not in OPS:
        raise ValueError(f"unknown comparison op: {op!r}")
    bound = parse_rational(data["k"])
    if data["kind"] == "action":
        return ActionConstraint(data["player"], data["action"], op, bound)
    if data["kind"] == "payoff":
        eval_fn = data.get("eval", "single")
        if eval_fn not in EVAL_FNS:
            raise ValueError(f"unknown eval function: {eval_fn!r}")
        players = tuple(data["players"])
        if eval_fn == "single" and len(players) != 1:
            raise ValueError("eval 'single' needs exactly one player")
        return PayoffConstraint(players, eval_fn, op, bound)
    raise ValueError(f"unknown constraint kind: {data['kind']!r}")


def satisfies_constraint(
    game: GraphicalGame, profile: Profile, constraint: Constraint
) -> bool:
    """Evaluate one constraint against a global profile."""
    compare = OPS[constraint.op]
    if isinstance(constraint, ActionConstraint):
        if constraint.player not in game:
            raise ValueError(f"unknown player: {constraint.player!r}")
        if constraint.action not in game.actions[constraint.player]:
            raise ValueError(
                f"unknown action {constraint.action!r} of {constraint.player!r}"
            )
        prob = profile.strategies[constraint.player].probs[constraint.action]
        return compare(prob, constraint.bound)
    for p in constraint.players:
        if p not in game:
            raise ValueError(f"unknown player: {p!r}")
    values = [expected_payoff(game, profile, p) for p in constraint.players]
    return compare(EVAL_FNS[constraint.eval_fn](values), constraint.bound)


def satisfies_all(
    game: GraphicalGame, profile: Profile, constraints: Iterable[Constraint]
) -> bool:
    """Conjunction over a constraint set."""
    return all(satisfies_constraint(game, profile, c) for c in constraints)


def non_random_constraint(game: GraphicalGame, player: PlayerId, action: str) -> ActionConstraint:
    """The requirement that `player` not play uniformly at random,
    expressed on one of her actions."""
    return ActionConstraint(
        player, action, "!=", Fraction(1, len(game.actions[player]))
    )


def non_random_satisfied(
    game: GraphicalGame, profile: Profile, players: Iterable[PlayerId]
) -> bool:
    """True iff at least one listed player deviates from the uniform mix."""
    players = list(players)
    if not players:
        raise ValueError("player set must be non-empty")
    for p in players:
        if p not in game:
            raise ValueError(f"unknown player: {p!r}")
        share = Fraction(1, len(game.actions[p]))
        if any(prob != share for prob in profile.strategies[p].probs.values()):
            return True
    return False
