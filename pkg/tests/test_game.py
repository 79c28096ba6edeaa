import itertools
import json
from fractions import Fraction

import pytest

from nashforge.game import (
    GraphicalGame,
    UtilityTable,
    dependency_graph,
    game_from_dict,
    game_to_dict,
    induced_subgame,
    local_joint_actions,
    validate_game,
)
from nashforge.oracles import showcase_formula
from nashforge.reductions import build_another_nash_instance, build_gphi


def tiny_game(neighbors=None):
    neighbors = neighbors or {"a": ("b",), "b": ("a",), "c": ()}
    utilities = {}
    for p, neigh in neighbors.items():
        entries = {}
        for ja in itertools.product("TF", repeat=1 + len(neigh)):
            entries[tuple(ja)] = Fraction(1)
        utilities[p] = UtilityTable(owner=p, entries=entries)
    return GraphicalGame(
        players=tuple(neighbors),
        neighbors=neighbors,
        actions={p: ("T", "F") for p in neighbors},
        utilities=utilities,
    )


class TestValidateGame:
    def test_well_formed_game_passes(self):
        assert validate_game(tiny_game()).ok

    def test_self_neighbor_reported(self):
        game = tiny_game({"a": ("a",)})
        report = validate_game(game)
        assert any("self-neighbor" in v for v in report.violations)

    def test_missing_table_entry_reported(self):
        game = tiny_game()
        entries = dict(game.utilities["a"].entries)
        entries.pop(("T", "T"))
        broken = GraphicalGame(
            players=game.players,
            neighbors=game.neighbors,
            actions=game.actions,
            utilities={**game.utilities, "a": UtilityTable("a", entries)},
        )
        report = validate_game(broken)
        assert any("incomplete utility table" in v for v in report.violations)

    def test_unknown_neighbor_reported(self):
        game = tiny_game({"a": ("z",)})
        assert not validate_game(game).ok

    def test_generated_games_validate(self, sat2_artifacts):
        assert validate_game(sat2_artifacts.game).ok


class TestDependencyGraph:
    def test_showcase_reduction_graph(self):
        art = build_gphi(showcase_formula())
        graph = dependency_graph(art.game)
        assert graph.number_of_nodes() == 39
        assert graph.number_of_edges() == 53
        assert graph.degree["E"] == 2

    def test_single_player(self):
        game = tiny_game({"solo": ()})
        graph = dependency_graph(game)
        assert graph.number_of_nodes() == 1
        assert graph.number_of_edges() == 0

    def test_pennies_triangle(self, sat2):
        art = build_another_nash_instance(sat2)
        graph = dependency_graph(art.game)
        assert graph.has_edge("P1", "P2")
        assert graph.has_edge("P1", "E")
        assert graph.has_edge("P2", "E")
        assert set(art.game.neighbors["P1"]) == {"P2", "E"}

    def test_symmetry(self, sat2_artifacts):
        graph = dependency_graph(sat2_artifacts.game)
        for p, q in graph.edges:
            assert graph.has_edge(q, p)

    def test_invalid_game_rejected(self):
        with pytest.raises(ValueError):
            dependency_graph(tiny_game({"a": ("a",)}))


class TestLocalJointActions:
    def test_two_binary_neighbors(self):
        game = tiny_game({"a": ("b", "c"), "b": (), "c": ()})
        assert len(list(local_joint_actions(game, "a"))) == 8

    def test_three_neighbors(self):
        game = tiny_game({"c": ("x", "y", "z"), "x": (), "y": (), "z": ()})
        assert len(list(local_joint_actions(game, "c"))) == 16

    def test_no_neighbors(self):
        game = tiny_game({"solo": ()})
        assert list(local_joint_actions(game, "solo")) == [("T",), ("F",)]

    def test_unknown_player(self):
        with pytest.raises(ValueError):
            local_joint_actions(tiny_game(), "ghost")

    def test_matches_table_size_on_generated_game(self, sat2_artifacts):
        game = sat2_artifacts.game
        for p in game.players:
            assert len(list(local_joint_actions(game, p))) == len(
                game.utilities[p].entries
            )


class TestSerialization:
    def test_round_trip(self, sat2_artifacts):
        game = sat2_artifacts.game
        data = json.loads(json.dumps(game_to_dict(game)))
        back = game_from_dict(data)
        assert back.players == game.players
        assert back.neighbors == dict(game.neighbors)
        for p in game.players:
            assert back.utilities[p].entries == game.utilities[p].entries

    def test_rationals_as_strings(self, sat2_artifacts):
        data = game_to_dict(sat2_artifacts.game)
        sample = next(iter(data["players"][0]["utility"].values()))
        assert "/" in sample


class TestInducedSubgame:
    def test_gadget_extraction(self, sat2_artifacts):
        watcher, first, second = sat2_artifacts.var_map[1]
        sub = induced_subgame(sat2_artifacts.game, (watcher, first, second))
        assert set(sub.players) == {watcher, first, second}
        assert validate_game(sub).ok

    def test_open_subset_rejected(self, sat2_artifacts):
        watcher = sat2_artifacts.var_map[1][0]
        with pytest.raises(ValueError):
            induced_subgame(sat2_artifacts.game, (watcher,))
