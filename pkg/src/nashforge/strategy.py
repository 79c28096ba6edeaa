"""Mixed strategies, profiles, profile surgery, and exact expected payoff.

Probabilities are exact rationals.  A strategy whose probabilities fall
outside [0,1] or do not sum to exactly 1 is rejected at construction;
nothing is ever silently normalized, so a reduction bug surfaces as an
error instead of a skewed distribution.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .game import ActionId, GraphicalGame, PlayerId
from .rationals import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class IndividualStrategy:
    """A probability distribution over one player's actions."""

    owner: PlayerId
    probs: Mapping[ActionId, Fraction]

    def __post_init__(self) -> None:
        total = ZERO
        for action, prob in self.probs.items():
            if not ZERO <= prob <= ONE:
                raise ValueError(
                    f"probability of {self.owner!r}/{action!r} outside [0,1]: {prob}"
                )
            total += prob
        if total != ONE:
            raise ValueError(f"probabilities of {self.owner!r} sum to {total}, not 1")

    def support(self) -> list[tuple[ActionId, Fraction]]:
        return [(a, p) for a, p in self.probs.items() if p != 0]

    def is_pure(self) -> bool:
        return any(p == ONE for p in self.probs.values())


@dataclass(frozen=True)
class Profile:
    """One strategy per covered player; global when it covers all players."""

    strategies: Mapping[PlayerId, IndividualStrategy]

    @property
    def domain(self) -> frozenset[PlayerId]:
        return frozenset(self.strategies)

    def is_global(self, game: GraphicalGame) -> bool:
        return self.domain == frozenset(game.players)

    def __getitem__(self, player: PlayerId) -> IndividualStrategy:
        return self.strategies[player]


def strategy(owner: PlayerId, probs: Mapping[ActionId, Fraction | int]) -> IndividualStrategy:
    return IndividualStrategy(owner, {a: Fraction(p) for a, p in probs.items()})


def pure_strategy(game: GraphicalGame, player: PlayerId, action: ActionId) -> IndividualStrategy:
    if player not in game:
        raise ValueError(f"unknown player: {player!r}")
    if action not in game.actions[player]:
        raise ValueError(f"action {action!r} not available to {player!r}")
    return IndividualStrategy(
        player, {a: ONE if a == action else ZERO for a in game.actions[player]}
    )


def uniform_strategy(game: GraphicalGame, player: PlayerId) -> IndividualStrategy:
    acts = game.actions[player]
    share = Fraction(1, len(acts))
    return IndividualStrategy(player, {a: share for a in acts})


def pure_profile(game: GraphicalGame, choice: Mapping[PlayerId, ActionId]) -> Profile:
    """Profile where each covered player plays her chosen action surely."""
    return Profile({p: pure_strategy(game, p, a) for p, a in choice.items()})


def restrict(profile: Profile, players: Iterable[PlayerId]) -> Profile:
    """Projection of a profile onto a subset of its domain."""
    players = set(players)
    missing = players - profile.domain
    if missing:
        raise ValueError(f"players not covered by profile: {sorted(missing)}")
    return Profile({p: profile.strategies[p] for p in players})


def substitute(profile: Profile, replacement: Profile) -> Profile:
    """Swap in the replacement players' strategies; everyone else untouched."""
    outside = replacement.domain - profile.domain
    if outside:
        raise ValueError(f"replacement players outside domain: {sorted(outside)}")
    merged = dict(profile.strategies)
    merged.update(replacement.strategies)
    return Profile(merged)


# Touched-entry counter for the table-locality guarantee: expected_payoff
# reads at most |Act(i)| * prod_j |Act(j)| entries per call.
_entry_counter: list[int] | None = None


@contextlib.contextmanager
def count_table_entries() -> Iterator[list[int]]:
    """Context manager exposing a running count of utility entries read."""
    global _entry_counter
    previous = _entry_counter
    _entry_counter = counter = [0]
    try:
        yield counter
    finally:
        _entry_counter = previous


def _check_coverage(
    game: GraphicalGame, profile: Profile, player: PlayerId, include_self: bool
) -> None:
    if player not in game:
        raise ValueError(f"unknown player: {player!r}")
    needed = set(game.neighbors[player])
    if include_self:
        needed.add(player)
    missing = needed - profile.domain
    if missing:
        raise ValueError(
            f"profile does not cover {sorted(missing)} needed for {player!r}"
        )
    for p in needed:
        if set(profile.strategies[p].probs) != set(game.actions[p]):
            raise ValueError(f"strategy of {p!r} does not match the game's action set")


def _neighbor_support(
    game: GraphicalGame, profile: Profile, player: PlayerId
) -> list[tuple[tuple[ActionId, ...], Fraction]]:
    """All joint neighbor actions with nonzero probability, with their products."""
    combos: list[tuple[tuple[ActionId, ...], Fraction]] = [((), ONE)]
    for q in game.neighbors[player]:
        support = profile.strategies[q].support()
        combos = [
            (joint + (action,), prob * p)
            for joint, prob in combos
            for action, p in support
        ]
    return combos


def action_payoffs(
    game: GraphicalGame, profile: Profile, player: PlayerId
) -> dict[ActionId, Fraction]:
    """Expected payoff of each of `player`'s pure actions against the profile.

    The profile must cover the player's neighbors; the player's own entry,
    if present, is ignored here.
    """
    _check_coverage(game, profile, player, include_self=False)
    table = game.utilities[player].entries
    result = {a: ZERO for a in game.actions[player]}
    touched = 0
    for joint, prob in _neighbor_support(game, profile, player):
        for a in result:
            result[a] += prob * table[(a, *joint)]
            touched += 1
    if _entry_counter is not None:
        _entry_counter[0] += touched
    return result


def expected_payoff(game: GraphicalGame, profile: Profile, player: PlayerId) -> Fraction:
    """Exact expectation of `player`'s utility under the profile.

    Sums utility times probability product over the joint actions in the
    support of the player and her neighbors.
    """
    _check_coverage(game, profile, player, include_self=True)
    per_action = action_payoffs(game, profile, player)
    own = profile.strategies[player]
    return sum((p * per_action[a] for a, p in own.support()), ZERO)


def profile_to_dict(profile: Profile, order: Iterable[PlayerId] | None = None) -> dict:
    players = list(order) if order is not None else sorted(profile.domain)
    strategies = {}
    for p in players:
        if p not in profile.domain:
            continue
        strat = profile.strategies[p]
        strategies[p] = {a: format_rational(prob) for a, prob in strat.probs.items()}
    return {"strategies": strategies}


def profile_from_dict(data: dict) -> Profile:
    strategies = {
        p: IndividualStrategy(p, {a: parse_rational(v) for a, v in probs.items()})
        for p, probs in data["strategies"].items()
    }
    return Profile(strategies)
