"""Graphical games with neighbor-local utility tables.

A game is a set of players, a neighbor list per player, a finite action
set per player, and one utility table per player.  A player's table is
indexed by joint actions: her own action first, then her neighbors'
actions in the declared neighbor order.  Payoffs are exact rationals.

Games are immutable after construction; every operation here is a pure
function of its inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import networkx as nx

from .rationals import format_rational, parse_rational

PlayerId = str
ActionId = str
JointAction = tuple[ActionId, ...]


@dataclass(frozen=True)
class UtilityTable:
    """One player's local payoff table.

    Entries map joint actions (owner's action first, then neighbors in
    declared order) to exact rational payoffs.  The table must be total:
    exactly one entry per element of Act(owner) x prod_j Act(j).
    """

    owner: PlayerId
    entries: Mapping[JointAction, Fraction]


@dataclass(frozen=True)
class GraphicalGame:
    players: tuple[PlayerId, ...]
    neighbors: Mapping[PlayerId, tuple[PlayerId, ...]]
    actions: Mapping[PlayerId, tuple[ActionId, ...]]
    utilities: Mapping[PlayerId, UtilityTable]

    def __contains__(self, player: PlayerId) -> bool:
        return player in self.actions


@dataclass
class ValidationReport:
    """Accumulated well-formedness violations; empty means valid."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def local_joint_actions(game: GraphicalGame, player: PlayerId) -> Iterator[JointAction]:
    """Yield the domain of `player`'s utility table, each joint action once.

    Order is lexicographic in the axis order: own action varies slowest,
    the last declared neighbor fastest, all in declared action order.
    """
    if player not in game:
        raise ValueError(f"unknown player: {player!r}")
    axes = [game.actions[player]]
    axes.extend(game.actions[q] for q in game.neighbors[player])
    return itertools.product(*axes)


def validate_game(game: GraphicalGame) -> ValidationReport:
    """Check every structural invariant; report all violations found.

    Problems are reported, never raised: callers that need hard failure
    should inspect `report.ok`.
    """
    report = ValidationReport()
    if not game.players:
        report.violations.append("no players")
    seen: set[PlayerId] = set()
    for p in game.players:
        if p in seen:
            report.violations.append(f"duplicate player id: {p}")
        seen.add(p)

    for p in game.players:
        if p not in game.neighbors:
            report.violations.append(f"missing neighbor list: {p}")
            continue
        neigh = game.neighbors[p]
        if p in neigh:
            report.violations.append(f"self-neighbor: {p}")
        if len(set(neigh)) != len(neigh):
            report.violations.append(f"duplicate neighbors: {p}")
        for q in neigh:
            if q not in seen:
                report.violations.append(f"unknown neighbor {q!r} of {p}")

    for p in game.players:
        if p not in game.actions or not game.actions[p]:
            report.violations.append(f"empty action set: {p}")
        elif len(set(game.actions[p])) != len(game.actions[p]):
            report.violations.append(f"duplicate actions: {p}")

    for p in game.players:
        if p not in game.utilities:
            report.violations.append(f"missing utility table: {p}")
            continue
        table = game.utilities[p]
        if table.owner != p:
            report.violations.append(f"utility table owner mismatch: {p}")
        if p not in game.actions or p not in game.neighbors:
            continue
        if any(q not in game.actions for q in game.neighbors[p]):
            continue  # unknown neighbors already reported; table unverifiable
        expected = set(local_joint_actions(game, p))
        got = set(table.entries)
        if got - expected:
            report.violations.append(f"stray utility entries: {p}")
        if expected - got:
            report.violations.append(f"incomplete utility table: {p}")
    return report


def dependency_graph(game: GraphicalGame) -> nx.Graph:
    """Undirected graph over players; edge {p,q} iff either neighbors the other."""
    report = validate_game(game)
    if not report.ok:
        raise ValueError(f"invalid game: {'; '.join(report.violations)}")
    graph = nx.Graph()
    graph.add_nodes_from(game.players)
    for p in game.players:
        for q in game.neighbors[p]:
            graph.add_edge(p, q)
    return graph


def induced_subgame(game: GraphicalGame, players: Iterable[PlayerId]) -> GraphicalGame:
    """The standalone game over a neighbor-closed player subset.

    Raises if some member's neighbor lies outside the subset (her table
    would be unrepresentable locally).
    """
    keep = set(players)
    unknown = keep - set(game.players)
    if unknown:
        raise ValueError(f"unknown players: {sorted(unknown)}")
    for p in keep:
        outside = set(game.neighbors[p]) - keep
        if outside:
            raise ValueError(
                f"{p!r} depends on {sorted(outside)} outside the subset"
            )
    order = tuple(p for p in game.players if p in keep)
    return GraphicalGame(
        players=order,
        neighbors={p: game.neighbors[p] for p in order},
        actions={p: game.actions[p] for p in order},
        utilities={p: game.utilities[p] for p in order},
    )


def game_to_dict(game: GraphicalGame) -> dict:
    """JSON-ready form; entry keys are joint actions joined by commas."""
    players = []
    for p in game.players:
        utility = {
            ",".join(ja): format_rational(game.utilities[p].entries[ja])
            for ja in local_joint_actions(game, p)
        }
        players.append(
            {
                "id": p,
                "actions": list(game.actions[p]),
                "neighbors": list(game.neighbors[p]),
                "utility": utility,
            }
        )
    return {"players": players}


def game_from_dict(data: dict) -> GraphicalGame:
    players: list[PlayerId] = []
    neighbors: dict[PlayerId, tuple[PlayerId, ...]] = {}
    actions: dict[PlayerId, tuple[ActionId, ...]] = {}
    utilities: dict[PlayerId, UtilityTable] = {}
    for entry in data["players"]:
        p = entry["id"]
        players.append(p)
        neighbors[p] = tuple(entry["neighbors"])
        actions[p] = tuple(entry["actions"])
        table = {
            tuple(key.split(",")): parse_rational(value)
            for key, value in entry["utility"].items()
        }
        utilities[p] = UtilityTable(owner=p, entries=table)
    return GraphicalGame(
        players=tuple(players),
        neighbors=neighbors,
        actions=actions,
        utilities=utilities,
    )
