"""Nash checking and exact equilibrium enumeration.

Regret is measured against pure deviations only.  That is sufficient: a
player's expected payoff is linear in her own strategy, so the best
response value is always attained at a pure action.  The property is
itself covered by tests rather than assumed.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .game import ActionId, GraphicalGame, PlayerId, UtilityTable
from .rationals import format_rational
from .strategy import (
    ONE,
    ZERO,
    IndividualStrategy,
    Profile,
    action_payoffs,
    pure_profile,
)

DEFAULT_BUDGET = 1_000_000
BUDGET_ENV_VAR = "NASHFORGE_BUDGET"


class BudgetExceededError(RuntimeError):
    """An enumeration would touch more states than the configured budget."""


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        if budget <= 0:
            raise ValueError("budget must be positive")
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET


@dataclass
class NashReport:
    is_equilibrium: bool
    epsilon: Fraction
    regrets: dict[PlayerId, Fraction]
    worst: tuple[PlayerId, ActionId] | None

    def to_dict(self) -> dict:
        return {
            "is_equilibrium": self.is_equilibrium,
            "epsilon": format_rational(self.epsilon),
            "regrets": {p: format_rational(r) for p, r in self.regrets.items()},
            "worst": (
                {"player": self.worst[0], "action": self.worst[1]}
                if self.worst
                else None
            ),
        }


def best_response_regret(
    game: GraphicalGame, profile: Profile, player: PlayerId
) -> tuple[Fraction, ActionId | None]:
    """Max payoff gain from a unilateral pure deviation, floored at zero.

    Returns the regret and, when positive, the lexicographically first
    action attaining it (deterministic witness for golden tests).
    """
    per_action = action_payoffs(game, profile, player)
    own = profile.strategies[player]
    current = sum((p * per_action[a] for a, p in own.support()), ZERO)
    best = max(per_action.values())
    regret = best - current
    if regret <= 0:
        return ZERO, None
    witness = min(a for a, v in per_action.items() if v == best)
    return regret, witness


def is_nash(game: GraphicalGame, profile: Profile, epsilon: Fraction = ZERO) -> NashReport:
    """Equilibrium verdict with all per-player regrets; exact when epsilon=0."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if not profile.is_global(game):
        raise ValueError("is_nash requires a global profile")
    regrets: dict[PlayerId, Fraction] = {}
    worst: tuple[PlayerId, ActionId] | None = None
    worst_regret = ZERO
    for p in game.players:
        regret, witness = best_response_regret(game, profile, p)
        regrets[p] = regret
        if witness is not None and regret > worst_regret:
            worst_regret = regret
            worst = (p, witness)
    return NashReport(
        is_equilibrium=all(r <= epsilon for r in regrets.values()),
        epsilon=epsilon,
        regrets=regrets,
        worst=worst,
    )


def enumerate_pure_nash(game: GraphicalGame, budget: int | None = None) -> list[Profile]:
    """All pure global profiles with zero regret for every player.

    Deterministic order: lexicographic over declared action orders.
    """
    limit = resolve_budget(budget)
    count = 1
    for p in game.players:
        count *= len(game.actions[p])
        if count > limit:
            raise BudgetExceededError(
                f"{count}+ pure profiles exceed budget {limit}"
            )
    found = []
    for combo in itertools.product(*(game.actions[p] for p in game.players)):
        profile = pure_profile(game, dict(zip(game.players, combo)))
        if is_nash(game, profile).is_equilibrium:
            found.append(profile)
    return found


def _grid_distributions(k: int, denominator: int) -> Iterator[tuple[Fraction, ...]]:
    """All length-k tuples of multiples of 1/denominator summing to 1."""
    for parts in _grid_compositions(denominator, k):
        yield tuple(Fraction(part, denominator) for part in parts)


def _grid_compositions(total: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _grid_compositions(total - first, k - 1):
            yield (first,) + rest


def _count_grid(k: int, denominator: int) -> int:
    # compositions of `denominator` into k nonneg parts
    import math

    return math.comb(denominator + k - 1, k - 1)


def grid_profiles(
    game: GraphicalGame, denominator: int, budget: int | None = None
) -> Iterator[Profile]:
    """Every global profile with probabilities in {0, 1/d, ..., 1}, once each."""
    if denominator < 1:
        raise ValueError("denominator must be >= 1")
    limit = resolve_budget(budget)
    count = 1
    for p in game.players:
        count *= _count_grid(len(game.actions[p]), denominator)
        if count > limit:
            raise BudgetExceededError(f"{count}+ grid profiles exceed budget {limit}")
    per_player = [
        [
            IndividualStrategy(p, dict(zip(game.actions[p], dist)))
            for dist in _grid_distributions(len(game.actions[p]), denominator)
        ]
        for p in game.players
    ]
    for combo in itertools.product(*per_player):
        yield Profile(dict(zip(game.players, combo)))


@dataclass
class PairEquilibria:
    """Exact equilibrium set of a mutually dependent binary pair.

    `profiles` lists the isolated equilibria (pure and indifference
    solutions).  `continuum` is set when some indifference holds over a
    whole interval, in which case the game has non-isolated equilibria
    that are not enumerated here.
    """

    profiles: list[Profile]
    continuum: bool


def _pair_tables(
    game: GraphicalGame, pair: tuple[PlayerId, PlayerId]
) -> tuple[dict, dict]:
    i, j = pair
    for p, q in ((i, j), (j, i)):
        if p not in game:
            raise ValueError(f"unknown player: {p!r}")
        if game.neighbors[p] != (q,):
            raise ValueError(f"{p!r} must depend exactly on {q!r}")
        if len(game.actions[p]) != 2:
            raise ValueError(f"{p!r} must be binary")
    return dict(game.utilities[i].entries), dict(game.utilities[j].entries)


def enumerate_equilibria_2x2(
    game: GraphicalGame, pair: tuple[PlayerId, PlayerId]
) -> PairEquilibria:
    """Complete exact equilibrium set for a self-contained binary pair.

    Covers all pure equilibria plus the solutions of the two indifference
    equations (interior or boundary), verified by a zero-regret check.
    Degenerate games, where an indifference equation holds identically or
    over an interval, are flagged as continua and only the isolated
    points found are returned.
    """
    i, j = pair
    u_i, u_j = _pair_tables(game, pair)
    acts_i = game.actions[i]
    acts_j = game.actions[j]

    def mixed(player: PlayerId, acts: Sequence[ActionId], p_first: Fraction) -> IndividualStrategy:
        return IndividualStrategy(player, {acts[0]: p_first, acts[1]: ONE - p_first})

    def regret_free(p_first: Fraction, q_first: Fraction) -> Profile | None:
        profile = Profile({i: mixed(i, acts_i, p_first), j: mixed(j, acts_j, q_first)})
        for p in pair:
            regret, _ = best_response_regret(game, profile, p)
            if regret != 0:
                return None
        return profile

    # d_own(b) = payoff advantage of the first action against opponent's b
    def diffs(table: dict, own: Sequence[ActionId], opp: Sequence[ActionId]) -> tuple[Fraction, Fraction]:
        a0, a1 = own
        return (
            table[(a0, opp[0])] - table[(a1, opp[0])],
            table[(a0, opp[1])] - table[(a1, opp[1])],
        )

    A_i, B_i = diffs(u_i, acts_i, acts_j)  # i's advantage vs j's first/second action
    A_j, B_j = diffs(u_j, acts_j, acts_i)

    points: list[tuple[Fraction, Fraction]] = []
    for p_first, q_first in itertools.product((ONE, ZERO), repeat=2):
        points.append((p_first, q_first))

    def indifference_root(A: Fraction, B: Fraction) -> Fraction | None:
        # q*A + (1-q)*B = 0 for the opponent's first-action probability q
        if A == B:
            return None
        q = B / (B - A)
        return q if ZERO <= q <= ONE else None

    q_star = indifference_root(A_i, B_i)  # j's mix making i indifferent
    p_star = indifference_root(A_j, B_j)  # i's mix making j indifferent
    if q_star is not None and p_star is not None:
        points.append((p_star, q_star))

    continuum = False
    if A_i == B_i == ZERO or A_j == B_j == ZERO:
        # one player indifferent everywhere: equilibria along the other's
        # best-response curve
        continuum = True
    else:
        # partial degeneracy: a player indifferent against an opponent pure
        # action that stays a best response over an interval
        for (A, B), (A_o, B_o) in (((A_i, B_i), (A_j, B_j)), ((A_j, B_j), (A_i, B_i))):
            for q_pure, advantage in ((ONE, A), (ZERO, B)):
                if advantage != ZERO:
                    continue
                # opponent plays her first action iff q_pure == 1; check the
                # set of mixes keeping that action a best response
                want_first = q_pure == ONE
                lo, hi = _best_response_interval(A_o, B_o, want_first)
                if lo is not None and hi is not None and hi > lo:
                    continuum = True

    profiles: list[Profile] = []
    seen: set[tuple[Fraction, Fraction]] = set()
    for p_first, q_first in points:
        key = (p_first, q_first)
        if key in seen:
            continue
        seen.add(key)
        profile = regret_free(p_first, q_first)
        if profile is not None:
            profiles.append(profile)
    return PairEquilibria(profiles=profiles, continuum=continuum)


def _best_response_interval(
    A: Fraction, B: Fraction, want_first: bool
) -> tuple[Fraction | None, Fraction | None]:
    """Interval of the opponent's first-action probability q where playing
    the first (or second) action is a best response, given the advantage
    line q*A + (1-q)*B."""
    # advantage(q) >= 0 means first action weakly best
    def ok(q: Fraction) -> bool:
        val = q * A + (ONE - q) * B
        return val >= 0 if want_first else val <= 0

    lo_ok, hi_ok = ok(ZERO), ok(ONE)
    if lo_ok and hi_ok:
        return ZERO, ONE
    if not lo_ok and not hi_ok:
        return None, None
    root = B / (B - A)
    root = min(max(root, ZERO), ONE)
    return (root, ONE) if hi_ok else (ZERO, root)


def pair_slice_game(
    game: GraphicalGame,
    pair: tuple[PlayerId, PlayerId],
    context: Profile,
) -> GraphicalGame:
    """Standalone 2-player game induced on `pair` by fixing all their other
    neighbors to the strategies in `context`.

    The pair's utilities are averaged exactly over the context mixture, so
    equilibria of the slice are equilibria of the original game restricted
    to the pair with the context held fixed.
    """
    i, j = pair
    tables: dict[PlayerId, UtilityTable] = {}
    for own, other in ((i, j), (j, i)):
        if other not in game.neighbors[own]:
            raise ValueError(f"{own!r} and {other!r} must be mutual neighbors")
        others = [q for q in game.neighbors[own] if q != other]
        missing = set(others) - context.domain
        if missing:
            raise ValueError(f"context must cover {sorted(missing)}")
        entries: dict[tuple[ActionId, ...], Fraction] = {}
        for a in game.actions[own]:
            for b in game.actions[other]:
                total = ZERO
                combos: list[tuple[dict, Fraction]] = [({}, ONE)]
                for q in others:
                    combos = [
                        ({**assign, q: act}, prob * pr)
                        for assign, prob in combos
                        for act, pr in context.strategies[q].support()
                    ]
                for assign, prob in combos:
                    joint = tuple(
                        b if q == other else assign[q] for q in game.neighbors[own]
                    )
                    total += prob * game.utilities[own].entries[(a, *joint)]
                entries[(a, b)] = total
        tables[own] = UtilityTable(owner=own, entries=entries)
    return GraphicalGame(
        players=(i, j),
        neighbors={i: (j,), j: (i,)},
        actions={i: game.actions[i], j: game.actions[j]},
        utilities=tables,
    )
