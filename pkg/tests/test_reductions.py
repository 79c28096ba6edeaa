import json
from fractions import Fraction
from pathlib import Path

import pytest

from nashforge.cnf import CnfFormula
from nashforge.equilibrium import is_nash
from nashforge.game import validate_game
from nashforge.oracles import showcase_formula
from nashforge.reductions import (
    ROLE_CLAUSE,
    ROLE_PENNIES,
    ROLE_ROOT,
    ROLE_TREE,
    FEncoding,
    artifacts_from_dict,
    artifacts_to_dict,
    build_action_constrained_instance,
    build_another_nash_instance,
    build_gamma_scaled,
    build_gphi,
    build_payoff_constrained_instance,
    canonical_profile,
)
from nashforge.strategy import expected_payoff

HALF = Fraction(1, 2)
DATA = Path(__file__).parent / "data"


class TestBuildStructure:
    def test_showcase_player_counts(self):
        art = build_gphi(showcase_formula())
        by_role = {}
        for p in art.game.players:
            by_role[art.roles[p]] = by_role.get(art.roles[p], 0) + 1
        assert len(art.game.players) == 39
        assert by_role[ROLE_CLAUSE] == 8
        assert by_role[ROLE_TREE] == 6
        assert by_role[ROLE_ROOT] == 1

    def test_roles_partition_players(self):
        art = build_gphi(showcase_formula())
        assert set(art.roles) == set(art.game.players)

    def test_maps_are_bijections(self):
        art = build_gphi(showcase_formula())
        var_players = {p for trio in art.var_map.values() for p in trio}
        assert len(var_players) == 3 * len(art.var_map)
        assert len(set(art.clause_map.values())) == len(art.clause_map)

    def test_tree_is_complete_binary(self):
        art = build_gphi(showcase_formula())
        leaves = set(art.clause_map.values())
        internal = set(art.tree_children)
        children = [c for pair in art.tree_children.values() for c in pair]
        assert len(children) == len(set(children))  # each node has one parent
        assert set(children) | {"E"} == leaves | internal
        # every leaf at equal depth
        depth = {"E": 0}
        frontier = ["E"]
        while frontier:
            node = frontier.pop()
            for child in art.tree_children.get(node, ()):
                depth[child] = depth[node] + 1
                frontier.append(child)
        assert {depth[leaf] for leaf in leaves} == {3}

    def test_neighbor_bounds_base(self):
        for cnf in (showcase_formula(), CnfFormula(3, ((1, 2, 3), (-1, -2, -3)))):
            art = build_gphi(cnf)
            for p in art.game.players:
                assert len(art.game.actions[p]) == 2
                assert len(art.game.neighbors[p]) <= 3

    def test_neighbor_bounds_scaled(self, sat2):
        art = build_gamma_scaled(build_gphi(sat2), Fraction(2))
        for p in art.game.players:
            assert len(art.game.neighbors[p]) <= 4

    def test_scaled_clause_player_with_three_variables_has_four_neighbors(self):
        cnf = CnfFormula(3, ((1, 2, 3), (-1, -2, -3)))
        art = build_gamma_scaled(build_gphi(cnf), Fraction(2))
        clause_player = art.clause_map[1]
        assert len(art.game.neighbors[clause_player]) == 4
        assert art.game.neighbors[clause_player][-1] == "E"

    def test_root_is_nobodys_neighbor_in_base(self, sat2_artifacts):
        for p in sat2_artifacts.game.players:
            assert "E" not in sat2_artifacts.game.neighbors[p] or p == "E"
        assert "E" not in sat2_artifacts.game.neighbors["E"]

    def test_generated_games_validate(self):
        for cnf in (
            showcase_formula(),
            CnfFormula(1, ((1,),)),
            CnfFormula(3, ((1, 2, 3), (-1, 2), (3,))),
        ):
            art = build_gphi(cnf)
            assert validate_game(art.game).ok

    def test_unit_clause_padding_gives_single_neighbor_clause(self):
        art = build_gphi(CnfFormula(1, ((1,),)))
        assert art.cnf.num_clauses == 2
        for j in (1, 2):
            assert len(art.game.neighbors[art.clause_map[j]]) == 1


class TestTables:
    def test_watcher_row(self, sat2_artifacts):
        u = sat2_artifacts.game.utilities["x1"].entries
        assert u[("T", "T", "T")] == -2
        assert u[("T", "F", "F")] == 1
        assert u[("F", "T", "T")] == 2
        assert u[("F", "F", "F")] == -1
        assert u[("T", "T", "F")] == 0 and u[("F", "F", "T")] == 0

    def test_coordination_rows(self, sat2_artifacts):
        u = sat2_artifacts.game.utilities["x1'"].entries
        assert u[("T", "T")] == 1 and u[("F", "F")] == 1
        assert u[("T", "F")] == 0 and u[("F", "T")] == 0

    def test_clause_evaluation_row(self, sat2_artifacts):
        # clause (X1 v X2); neighbors ordered (x1, x2); context X1=T, X2=F
        u = sat2_artifacts.game.utilities[sat2_artifacts.clause_map[1]].entries
        assert u[("T", "T", "F")] == 1
        assert u[("F", "T", "F")] == 0

    def test_root_base_rows(self, sat2_artifacts):
        u = sat2_artifacts.game.utilities["E"].entries
        assert u[("T", "T", "T")] == 2
        assert u[("F", "T", "F")] == 1 and u[("F", "F", "F")] == 1
        assert u[("T", "T", "F")] == 0 and u[("F", "T", "T")] == 0

    def test_root_alpha_rows(self, sat2):
        art, constraint = build_payoff_constrained_instance(sat2, Fraction(2))
        u = art.game.utilities["E"].entries
        assert u[("T", "T", "T")] == 2
        assert u[("F", "T", "F")] == 1
        assert u[("T", "F", "T")] == -2 and u[("F", "T", "T")] == -2
        assert constraint.players == ("E",) and constraint.bound == 2

    def test_pennies_rows(self, pennies_artifacts):
        u1 = pennies_artifacts.game.utilities["P1"].entries
        u2 = pennies_artifacts.game.utilities["P2"].entries
        assert u1[("T", "T", "F")] == 1 and u1[("T", "F", "F")] == -1
        assert all(u1[(a, b, "T")] == 0 for a in "TF" for b in "TF")
        assert u2[("T", "T", "F")] == -1 and u2[("T", "F", "F")] == 1
        assert pennies_artifacts.roles["P1"] == ROLE_PENNIES

    def test_gamma_scaling_doubles_when_root_true(self, sat2):
        base = build_gphi(sat2)
        scaled = build_gamma_scaled(base, Fraction(2))
        for p in base.game.players:
            if p == "E":
                assert scaled.game.utilities[p].entries == base.game.utilities[p].entries
                continue
            for joint, value in base.game.utilities[p].entries.items():
                assert scaled.game.utilities[p].entries[(*joint, "T")] == 2 * value
                assert scaled.game.utilities[p].entries[(*joint, "F")] == value

    def test_gamma_one_is_identity_on_payoffs(self, sat2):
        base = build_gphi(sat2)
        identical = build_gamma_scaled(base, Fraction(1))
        profile = canonical_profile(identical, {1: False, 2: True})
        for p in base.game.players:
            assert expected_payoff(identical.game, profile, p) == expected_payoff(
                base.game, profile, p
            )

    def test_gamma_must_be_positive(self, sat2_artifacts):
        with pytest.raises(ValueError):
            build_gamma_scaled(sat2_artifacts, Fraction(0))

    def test_alpha_must_be_positive(self, sat2):
        with pytest.raises(ValueError):
            build_payoff_constrained_instance(sat2, Fraction(-1))


class TestCanonicalProfile:
    def test_satisfying_assignment_root_plays_true(self, sat2_artifacts):
        profile = canonical_profile(sat2_artifacts, {1: True, 2: False})
        assert profile.strategies["E"].probs["T"] == 1

    def test_true_variable_pair_plays_false(self, sat2_artifacts):
        profile = canonical_profile(sat2_artifacts, {1: True, 2: False})
        assert profile.strategies["x1'"].probs["F"] == 1
        assert profile.strategies["x1''"].probs["F"] == 1

    def test_non_satisfying_root_plays_false(self, sat2_artifacts):
        profile = canonical_profile(sat2_artifacts, {1: True, 2: True})
        assert profile.strategies["E"].probs["F"] == 1

    def test_false_encoding_variants(self, sat2_artifacts):
        mixed = canonical_profile(
            sat2_artifacts, {1: False, 2: True}, FEncoding.S3_FOR_FALSE
        )
        assert mixed.strategies["x1'"].probs["T"] == HALF
        pure = canonical_profile(
            sat2_artifacts, {1: False, 2: True}, FEncoding.S2_FOR_FALSE
        )
        assert pure.strategies["x1'"].probs["T"] == 1
        assert pure.strategies["x1"].probs["F"] == 1

    def test_partial_assignment_rejected(self, sat2_artifacts):
        with pytest.raises(ValueError):
            canonical_profile(sat2_artifacts, {1: True})

    def test_global_and_nash_for_all_assignments(self, sat2_artifacts):
        from nashforge.oracles import assignments

        game = sat2_artifacts.game
        for sigma in assignments(2):
            for enc in FEncoding:
                profile = canonical_profile(sat2_artifacts, sigma, enc)
                assert profile.is_global(game)
                assert is_nash(game, profile).is_equilibrium

    def test_pennies_extension_uniform(self, pennies_artifacts):
        profile = canonical_profile(pennies_artifacts, {1: True, 2: True})
        assert profile.strategies["P1"].probs["T"] == HALF
        assert profile.strategies["P2"].probs["T"] == HALF

    def test_pure_global_profile_on_39_players(self):
        art = build_gphi(showcase_formula())
        sigma = {i: i <= 4 for i in range(1, 9)}
        profile = canonical_profile(art, sigma, FEncoding.S2_FOR_FALSE)
        assert profile.is_global(art.game)
        assert all(s.is_pure() for s in profile.strategies.values())
        assert is_nash(art.game, profile).is_equilibrium

    def test_tree_player_claiming_true_above_false_child(self):
        from nashforge.strategy import Profile, pure_strategy, substitute

        art = build_gphi(showcase_formula())
        sigma = {i: i <= 4 for i in range(1, 9)}
        profile = canonical_profile(art, sigma, FEncoding.S2_FOR_FALSE)
        liar = next(
            t
            for t, (lo, hi) in art.tree_children.items()
            if t != "E"
            and (
                profile.strategies[lo].probs["F"] == 1
                or profile.strategies[hi].probs["F"] == 1
            )
        )
        broken = substitute(
            profile, Profile({liar: pure_strategy(art.game, liar, "T")})
        )
        report = is_nash(art.game, broken)
        assert not report.is_equilibrium
        assert report.regrets[liar] == 1  # deviating back to F restores payoff 1


class TestActionConstrainedInstance:
    def test_constraint_shape(self, sat2):
        art, constraint = build_action_constrained_instance(sat2)
        assert constraint.player == "E"
        assert constraint.action == "T"
        assert constraint.op == "=" and constraint.bound == 1

    def test_satisfiable_formula_has_constrained_canonical(self, sat2):
        from nashforge.constraints import satisfies_constraint

        art, constraint = build_action_constrained_instance(sat2)
        profile = canonical_profile(art, {1: True, 2: False})
        assert satisfies_constraint(art.game, profile, constraint)
        assert is_nash(art.game, profile).is_equilibrium

    def test_unsatisfiable_formula_none(self, unsat2):
        from nashforge.constraints import satisfies_constraint
        from nashforge.oracles import assignments

        art, constraint = build_action_constrained_instance(unsat2)
        for sigma in assignments(art.cnf.num_vars):
            for enc in FEncoding:
                profile = canonical_profile(art, sigma, enc)
                assert not satisfies_constraint(art.game, profile, constraint)


class TestPayoffConstrainedInstance:
    def test_satisfying_profile_hits_alpha(self, sat2):
        art, constraint = build_payoff_constrained_instance(sat2, Fraction(2))
        profile = canonical_profile(art, {1: True, 2: False})
        assert expected_payoff(art.game, profile, "E") == 2
        assert is_nash(art.game, profile).is_equilibrium

    def test_non_satisfying_profile_gets_half_alpha(self, sat2):
        art, _ = build_payoff_constrained_instance(sat2, Fraction(2))
        profile = canonical_profile(art, {1: True, 2: True})
        assert expected_payoff(art.game, profile, "E") == 1


class TestDeterminism:
    def test_identical_input_identical_bytes(self):
        cnf = CnfFormula(3, ((1, -2), (2, 3), (-3, 1)))
        first = json.dumps(artifacts_to_dict(build_gphi(cnf)), indent=2)
        second = json.dumps(artifacts_to_dict(build_gphi(cnf)), indent=2)
        assert first == second

    def test_golden_artifact(self):
        art = build_gphi(CnfFormula(1, ((1,),)))
        text = json.dumps(artifacts_to_dict(art), indent=2) + "\n"
        assert text == (DATA / "golden_unit_artifact.json").read_text()

    def test_artifact_round_trip(self, sat2):
        art = build_another_nash_instance(sat2)
        back = artifacts_from_dict(json.loads(json.dumps(artifacts_to_dict(art))))
        assert back.game.players == art.game.players
        assert back.roles == dict(art.roles)
        assert back.var_map == dict(art.var_map)
        assert back.tree_children == dict(art.tree_children)
        assert back.cnf == art.cnf
        for p in art.game.players:
            assert back.game.utilities[p].entries == art.game.utilities[p].entries
