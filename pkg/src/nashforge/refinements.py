"""Coalition deviations, strong-equilibrium refutation, Pareto checks.

Strong checking here is a desk-scale search, not a decision procedure:
a REFUTED verdict is sound (an improving deviation is attached), while
NO-WITNESS-FOUND only says the bounded search came up empty.  Coalition
payoffs are multilinear, not linear, in joint deviations, so a mixed
improving deviation can exist where no pure or grid one does.  The one
exception is recorded in `exhaustive`: when every coalition member
already sits at her table maximum, no deviation of any kind can strictly
improve all of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .equilibrium import (
    BudgetExceededError,
    _grid_distributions,
    best_response_regret,
    is_nash,
    resolve_budget,
)
from .game import GraphicalGame, PlayerId
from .rationals import format_rational
from .strategy import (
    IndividualStrategy,
    Profile,
    expected_payoff,
    profile_to_dict,
    restrict,
    substitute,
)


@dataclass
class DeviationWitness:
    """A joint deviation strictly improving every coalition member."""

    coalition: frozenset[PlayerId]
    deviation: Profile
    deltas: dict[PlayerId, Fraction]

    def to_dict(self) -> dict:
        return {
            "coalition": sorted(self.coalition),
            "deviation": profile_to_dict(self.deviation),
            "deltas": {p: format_rational(d) for p, d in self.deltas.items()},
        }


@dataclass
class StrongReport:
    status: str  # "REFUTED" | "NO-WITNESS-FOUND"
    witness: DeviationWitness | None
    coalitions_checked: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.to_dict() if self.witness else None,
            "coalitions_checked": self.coalitions_checked,
            "exhaustive": self.exhaustive,
        }


def check_joint_deviation(
    game: GraphicalGame, profile: Profile, deviation: Profile
) -> DeviationWitness | None:
    """Test one joint deviation; witness iff every member strictly gains."""
    coalition = deviation.domain
    deviated = substitute(profile, deviation)
    deltas: dict[PlayerId, Fraction] = {}
    for p in sorted(coalition):
        delta = expected_payoff(game, deviated, p) - expected_payoff(game, profile, p)
        if delta <= 0:
            return None
        deltas[p] = delta
    return DeviationWitness(coalition=frozenset(coalition), deviation=deviation, deltas=deltas)


def coalition_improvement_pure(
    game: GraphicalGame,
    profile: Profile,
    coalition: Iterable[PlayerId],
    budget: int | None = None,
    extra_candidates: Sequence[Profile] = (),
) -> DeviationWitness | None:
    """First pure joint deviation strictly improving every coalition member.

    Sound but not complete: absence of a pure witness does not certify
    strongness.  `extra_candidates` are tried first and may cover
    coalitions whose full pure enumeration would blow the budget (for
    example the grand coalition deviating to another known profile); if
    the enumeration is over budget and no candidates were given, raises.
    """
    coalition = sorted(set(coalition))
    if not coalition:
        raise ValueError("coalition must be non-empty")
    for candidate in extra_candidates:
        witness = check_joint_deviation(game, profile, restrict(candidate, coalition))
        if witness is not None:
            return witness
    limit = resolve_budget(budget)
    count = 1
    for p in coalition:
        count *= len(game.actions[p])
    if count > limit:
        if extra_candidates:
            return None
        raise BudgetExceededError(
            f"{count} pure joint deviations exceed budget {limit}"
        )
    for combo in itertools.product(*(game.actions[p] for p in coalition)):
        deviation = Profile(
            {
                p: IndividualStrategy(
                    p, {a: Fraction(a == act) for a in game.actions[p]}
                )
                for p, act in zip(coalition, combo)
            }
        )
        witness = check_joint_deviation(game, profile, deviation)
        if witness is not None:
            return witness
    return None


def _at_table_maximum(game: GraphicalGame, profile: Profile, player: PlayerId) -> bool:
    top = max(game.utilities[player].entries.values())
    return expected_payoff(game, profile, player) == top


def strong_check_desk(
    game: GraphicalGame,
    profile: Profile,
    max_coalition_size: int = 2,
    grid_denominator: int = 1,
    candidates: Sequence[Profile] = (),
    budget: int | None = None,
) -> StrongReport:
    """Bounded search for an improving coalition deviation.

    Sweeps singletons (equivalent to the Nash check), then all coalitions
    up to `max_coalition_size` with joint deviations on the probability
    grid of the given denominator (denominator 1 = pure deviations), then
    each candidate profile as a grand-coalition deviation.
    """
    if max_coalition_size < 1 or grid_denominator < 1:
        raise ValueError("budgets must be positive")
    limit = resolve_budget(budget)
    checked = 0
    all_at_max = all(_at_table_maximum(game, profile, p) for p in game.players)

    def refuted(witness: DeviationWitness) -> StrongReport:
        return StrongReport("REFUTED", witness, checked, exhaustive=all_at_max)

    for p in game.players:
        checked += 1
        regret, action = best_response_regret(game, profile, p)
        if regret > 0:
            deviation = Profile(
                {p: IndividualStrategy(p, {a: Fraction(a == action) for a in game.actions[p]})}
            )
            witness = check_joint_deviation(game, profile, deviation)
            if witness is not None:
                return refuted(witness)

    players = list(game.players)
    spent = 0
    for size in range(2, max_coalition_size + 1):
        for coalition in itertools.combinations(players, size):
            strategy_menu = [
                [
                    IndividualStrategy(p, dict(zip(game.actions[p], dist)))
                    for dist in _grid_distributions(len(game.actions[p]), grid_denominator)
                ]
                for p in coalition
            ]
            combos = 1
            for menu in strategy_menu:
                combos *= len(menu)
            spent += combos
            if spent > limit:
                raise BudgetExceededError(
                    f"coalition sweep exceeds budget {limit}"
                )
            checked += 1
            for combo in itertools.product(*strategy_menu):
                deviation = Profile(dict(zip(coalition, combo)))
                witness = check_joint_deviation(game, profile, deviation)
                if witness is not None:
                    return refuted(witness)

    for candidate in candidates:
        checked += 1
        witness = check_joint_deviation(game, profile, candidate)
        if witness is not None:
            return refuted(witness)
    return StrongReport("NO-WITNESS-FOUND", None, checked, exhaustive=all_at_max)


def _require_nash(game: GraphicalGame, profile: Profile, label: str) -> None:
    report = is_nash(game, profile)
    if not report.is_equilibrium:
        worst = report.worst
        raise ValueError(f"{label} fails the Nash check (witness: {worst})")


def is_pareto_within(
    game: GraphicalGame,
    profile: Profile,
    candidates: Sequence[Profile],
    verify_candidates: bool = True,
) -> tuple[bool, Profile | None]:
    """Pareto verdict relative to an explicit candidate equilibrium set.

    False (with the first dominating candidate as witness) iff some
    candidate gives every player a strictly higher payoff.  Every
    candidate must itself be a Nash equilibrium; that precondition is
    checked unless the caller already verified it.
    """
    if verify_candidates:
        for k, candidate in enumerate(candidates):
            _require_nash(game, candidate, f"candidate #{k}")
    payoffs = {p: expected_payoff(game, profile, p) for p in game.players}
    for candidate in candidates:
        if all(
            expected_payoff(game, candidate, p) > payoffs[p] for p in game.players
        ):
            return False, candidate
    return True, None


def another_nash_desk(
    game: GraphicalGame,
    profile: Profile,
    players: Iterable[PlayerId],
    candidates: Sequence[Profile],
    verify_candidates: bool = True,
) -> Profile | None:
    """First candidate equilibrium that differs from `profile` on some
    player in `players`; None when no candidate does (or the set is empty)."""
    players = set(players)
    if verify_candidates:
        _require_nash(game, profile, "profile")
        for k, candidate in enumerate(candidates):
            _require_nash(game, candidate, f"candidate #{k}")
    for candidate in candidates:
        if any(candidate.strategies[p] != profile.strategies[p] for p in players):
            return candidate
    return None
