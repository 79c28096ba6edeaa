"""Acceptance suite: one test per criterion, each printing a pass/fail
line with its runtime.  Run with `pytest tests/test_acceptance.py -v -s`.

All equilibrium verdicts are exact (epsilon = 0 over rationals); the
only tolerances appearing below are the grid resolutions stated by the
criteria themselves.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from nashforge.cnf import CnfFormula
from nashforge.equilibrium import best_response_regret, enumerate_equilibria_2x2
from nashforge.game import GraphicalGame, UtilityTable, induced_subgame, validate_game
from nashforge.oracles import (
    default_corpus,
    validate_canonical_equilibria,
    validate_constrained_instances,
    validate_gadget,
    validate_payoff_scaling,
    validate_pennies_extension,
    validate_sat_equivalence,
    validate_scaled_refinements,
    _scaling_subset,
)
from nashforge.reductions import (
    build_gamma_scaled,
    build_gphi,
)
from nashforge.strategy import (
    IndividualStrategy,
    Profile,
    action_payoffs,
    count_table_entries,
    expected_payoff,
    uniform_strategy,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@pytest.fixture(scope="module")
def corpus():
    return default_corpus(seed=0)


@pytest.fixture(scope="module")
def gadget_artifacts():
    return build_gphi(CnfFormula(1, ((1,),)))


def report(number: int, name: str, passed: bool, elapsed: float) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"\nACCEPTANCE {number:2d} {name}: {status} ({elapsed:.2f}s)")
    assert passed, f"criterion {number} ({name}) failed"


def sweep(corpus, validator):
    reports = [validator(inst.cnf) for inst in corpus]
    failures = [
        (inst.label, r.name, r.detail)
        for inst, rep in zip(corpus, reports)
        for r in rep.results
        if not r.passed
    ]
    return reports, failures


def test_criterion_01_gadget_equilibrium_set(gadget_artifacts):
    start = time.perf_counter()
    game = gadget_artifacts.game
    _, first, second = gadget_artifacts.var_map[1]
    pair_game = induced_subgame(game, (first, second))

    result = enumerate_equilibria_2x2(pair_game, (first, second))
    points = sorted(
        (p.strategies[first].probs["T"], p.strategies[second].probs["T"])
        for p in result.profiles
    )
    exact_set = points == [(0, 0), (HALF, HALF), (1, 1)] and not result.continuum

    # grid refutation net at denominator 100
    eps = Fraction(1, 10_000)
    radius = Fraction(1, 100)
    targets = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)), (HALF, HALF)]
    stray = None
    ticks = [Fraction(k, 100) for k in range(101)]
    for p, q in itertools.product(ticks, ticks):
        profile = Profile(
            {
                first: IndividualStrategy(first, {"T": p, "F": 1 - p}),
                second: IndividualStrategy(second, {"T": q, "F": 1 - q}),
            }
        )
        if any(
            best_response_regret(pair_game, profile, who)[0] >= eps
            for who in (first, second)
        ):
            continue
        if not any(
            abs(p - tp) <= radius and abs(q - tq) <= radius for tp, tq in targets
        ):
            stray = (p, q)
            break
    elapsed = time.perf_counter() - start
    report(1, "gadget equilibrium set", exact_set and stray is None and elapsed < 1.0, elapsed)


def test_criterion_02_gadget_best_responses(gadget_artifacts):
    start = time.perf_counter()
    game = gadget_artifacts.game
    watcher, first, second = gadget_artifacts.var_map[1]
    expectations = {
        (Fraction(0), Fraction(0)): ("T", Fraction(1)),
        (Fraction(1), Fraction(1)): ("F", Fraction(2)),
        (HALF, HALF): ("F", QUARTER),  # computed value; not the nominal 1/2
    }
    ok = True
    for (p, q), (action, value) in expectations.items():
        context = Profile(
            {
                first: IndividualStrategy(first, {"T": p, "F": 1 - p}),
                second: IndividualStrategy(second, {"T": q, "F": 1 - q}),
            }
        )
        payoffs = action_payoffs(game, context, watcher)
        best = max(payoffs.values())
        ok = ok and [a for a in ("T", "F") if payoffs[a] == best] == [action]
        ok = ok and best == value
    # the discrepancy with the nominal 1/2 is logged by the gadget validator
    gadget_report = validate_gadget(gadget_artifacts)
    logged = any("1/4" in note and "1/2" in note for note in gadget_report.notes)
    elapsed = time.perf_counter() - start
    report(2, "watcher best responses", ok and logged and elapsed < 1.0, elapsed)


def test_criterion_03_canonical_equilibria(corpus):
    start = time.perf_counter()
    _, failures = sweep(corpus, validate_canonical_equilibria)
    elapsed = time.perf_counter() - start
    report(
        3,
        f"canonical equilibria on {len(corpus)} instances",
        not failures and elapsed < 60.0,
        elapsed,
    )


def test_criterion_04_satisfiability_equivalence(corpus):
    start = time.perf_counter()
    _, failures = sweep(corpus, validate_sat_equivalence)
    elapsed = time.perf_counter() - start
    report(
        4,
        "root-T existence matches brute-force SAT",
        not failures and elapsed < 60.0,
        elapsed,
    )


def test_criterion_05_constrained_instances(corpus):
    start = time.perf_counter()
    _, failures = sweep(corpus, validate_constrained_instances)
    elapsed = time.perf_counter() - start
    report(
        5,
        "action- and payoff-constrained instances",
        not failures and elapsed < 60.0,
        elapsed,
    )


def test_criterion_06_pennies_extension(corpus):
    start = time.perf_counter()
    _, failures = sweep(corpus, validate_pennies_extension)
    elapsed = time.perf_counter() - start
    report(
        6,
        "pennies slice and desk questions iff SAT",
        not failures and elapsed < 60.0,
        elapsed,
    )


def test_criterion_07_payoff_scaling(corpus):
    start = time.perf_counter()
    failures = []
    for inst in _scaling_subset(corpus):
        rep = validate_payoff_scaling(inst.cnf, profiles=100, seed=0)
        failures.extend(r for r in rep.results if not r.passed)
    elapsed = time.perf_counter() - start
    report(
        7,
        "payoff scaling identity and verdict agreement",
        not failures and elapsed < 60.0,
        elapsed,
    )


def test_criterion_08_scaled_refinements(corpus):
    start = time.perf_counter()
    _, failures = sweep(corpus, validate_scaled_refinements)
    elapsed = time.perf_counter() - start
    report(
        8,
        "domination / Pareto / strongness in the doubled game",
        not failures and elapsed < 120.0,
        elapsed,
    )


def test_criterion_09_structural_bounds(corpus):
    start = time.perf_counter()
    ok = True
    sample = corpus[:20] + corpus[-3:]
    for inst in sample:
        base = build_gphi(inst.cnf)
        ok = ok and validate_game(base.game).ok
        for p in base.game.players:
            ok = ok and len(base.game.actions[p]) == 2
            ok = ok and len(base.game.neighbors[p]) <= 3
        scaled = build_gamma_scaled(base, Fraction(2))
        ok = ok and validate_game(scaled.game).ok
        for p in scaled.game.players:
            ok = ok and len(scaled.game.neighbors[p]) <= 4

    # corrupted instances must fail validation
    base = build_gphi(corpus[0].cnf)
    victim = base.game.players[0]
    self_loop = GraphicalGame(
        players=base.game.players,
        neighbors={**base.game.neighbors, victim: (victim,)},
        actions=base.game.actions,
        utilities=base.game.utilities,
    )
    ok = ok and not validate_game(self_loop).ok
    entries = dict(base.game.utilities[victim].entries)
    entries.popitem()
    gappy = GraphicalGame(
        players=base.game.players,
        neighbors=base.game.neighbors,
        actions=base.game.actions,
        utilities={**base.game.utilities, victim: UtilityTable(victim, entries)},
    )
    ok = ok and not validate_game(gappy).ok
    elapsed = time.perf_counter() - start
    report(9, "structural bounds and corruption detection", ok, elapsed)


def test_criterion_10_scale_and_locality():
    rng = random.Random(0)
    clauses = []
    while len(clauses) < 200:
        variables = sorted(rng.sample(range(1, 101), 3))
        signs = [rng.choice((1, -1)) for _ in variables]
        clauses.append(tuple(s * v for v, s in zip(variables, signs)))
    cnf = CnfFormula(num_vars=100, clauses=tuple(clauses))

    start = time.perf_counter()
    artifacts = build_gphi(cnf)
    build_time = time.perf_counter() - start
    valid = validate_game(artifacts.game).ok

    # entry counter: full-support profile, busiest player
    game = artifacts.game
    profile = Profile({p: uniform_strategy(game, p) for p in game.players})
    busiest = max(game.players, key=lambda p: len(game.neighbors[p]))
    with count_table_entries() as counter:
        expected_payoff(game, profile, busiest)
    bound = 2 ** (1 + len(game.neighbors[busiest]))
    ok = build_time < 1.0 and valid and counter[0] <= bound
    report(10, f"scale ({len(game.players)} players, build {build_time:.3f}s)", ok, build_time)
