"""Independent brute-force references for the compiled games.

Satisfiability is decided by plain assignment enumeration that shares no
machinery with the game builders, so every builder claim is checked
against a reference that cannot inherit its bugs.  The validators sweep
canonical profiles, gadget equilibria, constrained instances, the
pennies extension, and the payoff-scaled variant, and report one
pass/fail entry per check with a replayable counterexample on failure.
"""

from __future__ import annotations

import hashlib
import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .cnf import CnfFormula, TruthAssignment, to_dimacs
from .constraints import non_random_satisfied, satisfies_constraint
from .equilibrium import (
    BudgetExceededError,
    enumerate_equilibria_2x2,
    grid_profiles,
    is_nash,
    pair_slice_game,
)
from .game import GraphicalGame, game_to_dict, induced_subgame
from .refinements import (
    check_joint_deviation,
    coalition_improvement_pure,
    is_pareto_within,
    another_nash_desk,
    strong_check_desk,
)
from .reductions import (
    ACTIONS,
    FEncoding,
    ROOT,
    ReductionArtifacts,
    T,
    F,
    build_action_constrained_instance,
    build_another_nash_instance,
    build_gamma_scaled,
    build_gphi,
    build_payoff_constrained_instance,
    canonical_profile,
)
from .strategy import (
    IndividualStrategy,
    Profile,
    action_payoffs,
    expected_payoff,
    profile_to_dict,
    pure_strategy,
    substitute,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


# ---------------------------------------------------------------------------
# SAT reference: assignment enumeration only, nothing shared with builders.

def assignments(num_vars: int) -> Iterator[TruthAssignment]:
    """All truth assignments in the deterministic reference order:
    counting up from all-false, variable 1 flipping fastest."""
    for k in range(1 << num_vars):
        yield {i: bool((k >> (i - 1)) & 1) for i in range(1, num_vars + 1)}


def sat_brute_force(cnf: CnfFormula, max_vars: int = 20) -> TruthAssignment | None:
    """First satisfying assignment in reference order, or None."""
    if cnf.num_vars > max_vars:
        raise BudgetExceededError(
            f"{cnf.num_vars} variables exceed the {max_vars}-variable bound"
        )
    for sigma in assignments(cnf.num_vars):
        satisfied = True
        for clause in cnf.clauses:
            clause_ok = False
            for lit in clause:
                if (lit > 0) == sigma[abs(lit)]:
                    clause_ok = True
                    break
            if not clause_ok:
                satisfied = False
                break
        if satisfied:
            return sigma
    return None


def _formula_true(cnf: CnfFormula, sigma: TruthAssignment) -> bool:
    # oracle-side evaluation, deliberately not cnf.formula_satisfied
    for clause in cnf.clauses:
        if not any((lit > 0) == sigma[abs(lit)] for lit in clause):
            return False
    return True


# ---------------------------------------------------------------------------
# Reports

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class LemmaReport:
    lemma: str
    results: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    counterexample: dict | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.results.append(CheckResult(name, passed, detail))
        return passed

    def attach_counterexample(
        self, game: GraphicalGame, profile: Profile, detail: str
    ) -> None:
        if self.counterexample is None:
            self.counterexample = {
                "game": game_to_dict(game),
                "profile": profile_to_dict(profile),
                "detail": detail,
            }

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "passed": self.passed,
            "checks": [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in self.results
            ],
            "notes": self.notes,
            "counterexample": self.counterexample,
            "elapsed_seconds": round(self.elapsed, 3),
        }


# ---------------------------------------------------------------------------
# Gadget-level validation

GADGET_EQUILIBRIA = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)), (HALF, HALF))


def validate_gadget(artifacts: ReductionArtifacts, grid_denominator: int = 10) -> LemmaReport:
    """Certify the coordination-pair equilibrium set and the watcher's
    pure best responses for every variable gadget; grid-scan one gadget
    for stray near-equilibria."""
    report = LemmaReport("gadget-equilibria")
    game = artifacts.game
    start = time.perf_counter()
    expected_br = {
        (Fraction(0), Fraction(0)): (T, Fraction(1)),
        (Fraction(1), Fraction(1)): (F, Fraction(2)),
        (HALF, HALF): (F, QUARTER),
    }
    for i in sorted(artifacts.var_map):
        watcher, first, second = artifacts.var_map[i]
        pair_eq = enumerate_equilibria_2x2(game, (first, second))
        got = sorted(
            (p.strategies[first].probs[T], p.strategies[second].probs[T])
            for p in pair_eq.profiles
        )
        ok = got == sorted(GADGET_EQUILIBRIA) and not pair_eq.continuum
        report.check(f"pair-equilibria-{i}", ok, f"found {got}")
        if not ok:
            continue
        for (p_first, p_second), (br, value) in expected_br.items():
            context = Profile(
                {
                    first: IndividualStrategy(first, {T: p_first, F: 1 - p_first}),
                    second: IndividualStrategy(second, {T: p_second, F: 1 - p_second}),
                }
            )
            payoffs = action_payoffs(game, context, watcher)
            best = max(payoffs.values())
            best_actions = [a for a in ACTIONS if payoffs[a] == best]
            ok = best_actions == [br] and best == value
            report.check(
                f"watcher-best-response-{i}-{p_first}",
                ok,
                f"best {best_actions} at {best}",
            )
    report.notes.append(
        "uniform-mix context: the watcher's best value computes to 1/4 "
        "(the nominal 1/2 does not satisfy the advantage formula); the "
        "pure best response F is unaffected"
    )

    # stray-equilibrium scan on the first gadget (tables are identical
    # constants across gadgets, so one scan covers them all)
    if artifacts.var_map:
        watcher, first, second = artifacts.var_map[min(artifacts.var_map)]
        gadget = induced_subgame(game, (watcher, first, second))
        radius = Fraction(1, grid_denominator)
        eps = Fraction(1, 10_000)
        targets = [
            (Fraction(0), Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(1), Fraction(0)),
            (HALF, HALF, Fraction(0)),
        ]
        stray: tuple | None = None
        for profile in grid_profiles(gadget, grid_denominator):
            verdict = is_nash(profile=profile, game=gadget, epsilon=eps)
            if not verdict.is_equilibrium:
                continue
            coords = (
                profile.strategies[first].probs[T],
                profile.strategies[second].probs[T],
                profile.strategies[watcher].probs[T],
            )
            near = any(
                all(abs(c - t) <= radius for c, t in zip(coords, target))
                for target in targets
            )
            if not near:
                stray = coords
                break
        report.check(
            "gadget-grid-scan",
            stray is None,
            "no stray near-equilibria" if stray is None else f"stray at {stray}",
        )
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Canonical-profile validators

CANONICAL_BUDGET_VARS = 12


def _canonical_pairs(
    artifacts: ReductionArtifacts,
) -> Iterator[tuple[TruthAssignment, FEncoding, Profile]]:
    for sigma in assignments(artifacts.cnf.num_vars):
        for encoding in (FEncoding.S3_FOR_FALSE, FEncoding.S2_FOR_FALSE):
            yield sigma, encoding, canonical_profile(artifacts, sigma, encoding)


def _check_budget(artifacts: ReductionArtifacts) -> None:
    if artifacts.cnf.num_vars > CANONICAL_BUDGET_VARS:
        raise BudgetExceededError(
            f"{artifacts.cnf.num_vars} padded variables exceed the canonical "
            f"enumeration budget of {CANONICAL_BUDGET_VARS}"
        )


def validate_canonical_equilibria(cnf: CnfFormula) -> LemmaReport:
    """Every canonical profile, under both encodings, is an exact Nash
    equilibrium of the compiled game."""
    report = LemmaReport("canonical-equilibria")
    start = time.perf_counter()
    artifacts = build_gphi(cnf)
    _check_budget(artifacts)
    failures = 0
    total = 0
    for sigma, encoding, profile in _canonical_pairs(artifacts):
        total += 1
        verdict = is_nash(artifacts.game, profile)
        if not verdict.is_equilibrium:
            failures += 1
            report.attach_counterexample(
                artifacts.game,
                profile,
                f"canonical profile not Nash (sigma={sigma}, enc={encoding.value}, "
                f"worst={verdict.worst})",
            )
    report.check(
        "canonical-profiles-nash",
        failures == 0,
        f"{total - failures}/{total} canonical profiles pass",
    )
    report.elapsed = time.perf_counter() - start
    return report


def validate_sat_equivalence(cnf: CnfFormula) -> LemmaReport:
    """E plays a sure T in the canonical profile of sigma exactly when
    sigma satisfies the padded formula, and such a profile exists exactly
    when the formula is satisfiable."""
    report = LemmaReport("root-tracks-satisfiability")
    start = time.perf_counter()
    artifacts = build_gphi(cnf)
    _check_budget(artifacts)
    any_root_true = False
    agree = True
    for sigma in assignments(artifacts.cnf.num_vars):
        profile = canonical_profile(artifacts, sigma)
        root_true = profile.strategies[ROOT].probs[T] == 1
        expected = _formula_true(artifacts.cnf, sigma)
        if root_true != expected:
            agree = False
            report.attach_counterexample(
                artifacts.game, profile, f"root/evaluation mismatch at sigma={sigma}"
            )
        any_root_true = any_root_true or root_true
    report.check("root-matches-evaluation", agree)
    satisfiable = sat_brute_force(cnf) is not None
    report.check(
        "existence-matches-sat",
        any_root_true == satisfiable,
        f"canonical root-T {'found' if any_root_true else 'absent'}, "
        f"formula {'satisfiable' if satisfiable else 'unsatisfiable'}",
    )
    report.elapsed = time.perf_counter() - start
    return report


def validate_constrained_instances(cnf: CnfFormula) -> LemmaReport:
    """The action-constrained instance admits a canonical constrained
    equilibrium iff the formula is satisfiable; the payoff-scaled
    instance pins E's payoff to alpha on satisfying canonical profiles
    and to alpha/2 otherwise."""
    report = LemmaReport("constrained-instances")
    start = time.perf_counter()
    satisfiable = sat_brute_force(cnf) is not None

    artifacts, action_constraint = build_action_constrained_instance(cnf)
    _check_budget(artifacts)
    found = False
    for sigma, encoding, profile in _canonical_pairs(artifacts):
        if satisfies_constraint(artifacts.game, profile, action_constraint):
            if is_nash(artifacts.game, profile).is_equilibrium:
                found = True
                break
    report.check(
        "action-constrained-iff-sat",
        found == satisfiable,
        f"constrained equilibrium {'found' if found else 'absent'}",
    )

    alpha = Fraction(2)
    scaled, payoff_constraint = build_payoff_constrained_instance(cnf, alpha)
    ok = True
    for sigma in assignments(scaled.cnf.num_vars):
        profile = canonical_profile(scaled, sigma)
        verdict = is_nash(scaled.game, profile)
        payoff = expected_payoff(scaled.game, profile, ROOT)
        expected = alpha if _formula_true(scaled.cnf, sigma) else alpha / 2
        holds = satisfies_constraint(scaled.game, profile, payoff_constraint) == (
            payoff == alpha
        )
        if not (verdict.is_equilibrium and payoff == expected and holds):
            ok = False
            report.attach_counterexample(
                scaled.game,
                profile,
                f"payoff-variant failure at sigma={sigma}: payoff {payoff}",
            )
            break
    report.check("payoff-variant-values", ok)
    report.elapsed = time.perf_counter() - start
    return report


def _first_nonsatisfying(cnf: CnfFormula) -> TruthAssignment | None:
    for sigma in assignments(cnf.num_vars):
        if not _formula_true(cnf, sigma):
            return sigma
    return None


def validate_pennies_extension(cnf: CnfFormula) -> LemmaReport:
    """The matching-pennies pair: unique mixed equilibrium on the E-false
    slice, canonical uniform extensions stay equilibria, and the
    another-equilibrium / non-uniform desk questions answer yes exactly
    for satisfiable formulas."""
    report = LemmaReport("pennies-extension")
    start = time.perf_counter()
    artifacts = build_another_nash_instance(cnf)
    _check_budget(artifacts)
    game = artifacts.game
    p1, p2 = "P1", "P2"
    satisfiable = sat_brute_force(cnf) is not None

    root_false = Profile({ROOT: pure_strategy(game, ROOT, F)})
    slice_game = pair_slice_game(game, (p1, p2), root_false)
    pair_eq = enumerate_equilibria_2x2(slice_game, (p1, p2))
    points = [
        (p.strategies[p1].probs[T], p.strategies[p2].probs[T])
        for p in pair_eq.profiles
    ]
    payoffs_zero = all(
        expected_payoff(slice_game, p, q) == 0
        for p in pair_eq.profiles
        for q in (p1, p2)
    )
    report.check(
        "pennies-slice-unique-mixed",
        points == [(HALF, HALF)] and not pair_eq.continuum and payoffs_zero,
        f"slice equilibria {points}",
    )

    root_true = Profile({ROOT: pure_strategy(game, ROOT, T)})
    degenerate = enumerate_equilibria_2x2(pair_slice_game(game, (p1, p2), root_true), (p1, p2))
    report.check(
        "pennies-slice-all-indifferent-when-root-true",
        degenerate.continuum,
        "continuum flagged" if degenerate.continuum else "continuum missed",
    )

    candidates: list[Profile] = []
    uniform_ok = True
    for sigma, encoding, profile in _canonical_pairs(artifacts):
        verdict = is_nash(game, profile)
        if not verdict.is_equilibrium:
            uniform_ok = False
            report.attach_counterexample(
                game, profile, f"uniform extension not Nash at sigma={sigma}"
            )
            continue
        candidates.append(profile)
        if encoding is FEncoding.S3_FOR_FALSE and _formula_true(artifacts.cnf, sigma):
            pure_pair = substitute(
                profile,
                Profile(
                    {p1: pure_strategy(game, p1, T), p2: pure_strategy(game, p2, T)}
                ),
            )
            if is_nash(game, pure_pair).is_equilibrium:
                candidates.append(pure_pair)
            else:
                uniform_ok = False
                report.attach_counterexample(
                    game, pure_pair, f"pure pennies extension not Nash at sigma={sigma}"
                )
    report.check("canonical-extensions-nash", uniform_ok)

    base_sigma = _first_nonsatisfying(artifacts.cnf)
    if base_sigma is None:
        base_sigma = next(assignments(artifacts.cnf.num_vars))
        report.notes.append("every assignment satisfies the formula; using the first")
    base = canonical_profile(artifacts, base_sigma)
    other = another_nash_desk(game, base, {p1, p2}, candidates, verify_candidates=False)
    report.check(
        "another-equilibrium-iff-sat",
        (other is not None) == satisfiable,
        "difference witness found" if other is not None else "no differing candidate",
    )
    non_random = any(non_random_satisfied(game, y, {p1, p2}) for y in candidates)
    report.check("non-uniform-equilibrium-iff-sat", non_random == satisfiable)
    report.elapsed = time.perf_counter() - start
    return report


def validate_scaled_refinements(cnf: CnfFormula) -> LemmaReport:
    """In the doubled game: for satisfiable formulas the mixed-encoded
    non-satisfying canonical profile is strictly dominated by the pure
    satisfying one (refuting Pareto and strongness); for unsatisfiable
    formulas it is Pareto-optimal within the full canonical set and the
    pure-encoded profile survives a sampled coalition sweep."""
    report = LemmaReport("scaled-refinements")
    start = time.perf_counter()
    base = build_gphi(cnf)
    _check_budget(base)
    scaled = build_gamma_scaled(base, Fraction(2))
    game = scaled.game
    sat_sigma = sat_brute_force(cnf)
    nonsat_sigma = _first_nonsatisfying(scaled.cnf)
    if nonsat_sigma is None:
        report.notes.append(
            "every assignment satisfies the formula; no distinguished "
            "non-satisfying profile exists"
        )
        report.check("applicable", True, "vacuous")
        report.elapsed = time.perf_counter() - start
        return report

    mixed_x = canonical_profile(scaled, nonsat_sigma, FEncoding.S3_FOR_FALSE)
    candidates = [p for _, _, p in _canonical_pairs(scaled)]

    if sat_sigma is not None:
        sat_full = dict(sat_sigma)
        for v in range(cnf.num_vars + 1, scaled.cnf.num_vars + 1):
            sat_full[v] = True
        star = canonical_profile(scaled, sat_full, FEncoding.S2_FOR_FALSE)
        dominated = all(
            expected_payoff(game, star, p) > expected_payoff(game, mixed_x, p)
            for p in game.players
        )
        root_jump = (
            expected_payoff(game, mixed_x, ROOT) == 1
            and expected_payoff(game, star, ROOT) == 2
        )
        report.check("strict-domination", dominated and root_jump)
        verdict, witness = is_pareto_within(game, mixed_x, candidates)
        report.check(
            "pareto-refuted",
            verdict is False and witness is not None,
            "dominating candidate found",
        )
        strong = strong_check_desk(
            game, mixed_x, max_coalition_size=1, grid_denominator=1, candidates=[star]
        )
        grand = check_joint_deviation(game, mixed_x, star)
        report.check(
            "strong-refuted-by-grand-coalition",
            strong.status == "REFUTED"
            and grand is not None
            and all(d > 0 for d in grand.deltas.values()),
        )
    else:
        verdict, witness = is_pareto_within(game, mixed_x, candidates)
        report.check("pareto-holds", verdict is True and witness is None)

        pure_x = canonical_profile(scaled, nonsat_sigma, FEncoding.S2_FOR_FALSE)
        witness_found = None
        for coalition in _sampled_coalitions(scaled):
            found = coalition_improvement_pure(game, pure_x, coalition)
            if found is not None:
                witness_found = found
                break
        report.check(
            "no-sampled-coalition-witness",
            witness_found is None,
            "" if witness_found is None else f"coalition {sorted(witness_found.coalition)}",
        )
        false_vars = [i for i in sorted(scaled.var_map) if not nonsat_sigma[i]]
        if false_vars:
            _, first, second = scaled.var_map[false_vars[0]]
            pair_witness = coalition_improvement_pure(game, mixed_x, (first, second))
            report.check(
                "mixed-encoding-pair-deviation",
                pair_witness is not None,
                "coordination pair escapes the mixed point",
            )
            report.notes.append(
                "with the mixed false-encoding the coordination pair of any "
                "false variable improves jointly from 1/2,1/2 to T,T; the "
                "no-witness claim therefore uses the pure encoding"
            )
    report.elapsed = time.perf_counter() - start
    return report


def _sampled_coalitions(artifacts: ReductionArtifacts) -> Iterator[tuple[str, ...]]:
    game = artifacts.game
    for p in game.players:
        yield (p,)
    for i in sorted(artifacts.var_map):
        watcher, first, second = artifacts.var_map[i]
        yield (first, second)
        yield (watcher, first, second)
        yield (watcher, ROOT)
    for parent, children in artifacts.tree_children.items():
        yield (parent, *children)
    yield (ROOT, *artifacts.tree_children[ROOT])


def validate_payoff_scaling(
    cnf: CnfFormula,
    gammas: Sequence[Fraction] = (Fraction(2), Fraction(3)),
    profiles: int = 100,
    grid_checks: int = 100,
    seed: int = 0,
) -> LemmaReport:
    """The scaled game multiplies every non-root payoff by
    1 + (gamma - 1) * E_T, exactly, on random rational profiles; Nash
    verdicts agree between the base and scaled games on canonical and
    random grid profiles."""
    report = LemmaReport("payoff-scaling")
    start = time.perf_counter()
    base = build_gphi(cnf)
    _check_budget(base)
    rng = random.Random(seed)
    scaled_games = [(g, build_gamma_scaled(base, g)) for g in gammas]

    def random_strategy(player: str) -> IndividualStrategy:
        den = rng.randint(1, 12)
        num = rng.randint(0, den)
        p_true = Fraction(num, den)
        return IndividualStrategy(player, {T: p_true, F: 1 - p_true})

    identity_ok = True
    for _ in range(profiles):
        profile = Profile({p: random_strategy(p) for p in base.game.players})
        e_t = profile.strategies[ROOT].probs[T]
        for gamma, scaled in scaled_games:
            factor = 1 + (gamma - 1) * e_t
            for p in base.game.players:
                base_pay = expected_payoff(base.game, profile, p)
                scaled_pay = expected_payoff(scaled.game, profile, p)
                expected = base_pay if p == ROOT else base_pay * factor
                if scaled_pay != expected:
                    identity_ok = False
                    report.attach_counterexample(
                        scaled.game, profile, f"scaling identity fails for {p}"
                    )
    report.check("scaling-identity", identity_ok, f"{profiles} random profiles")

    canonical_ok = True
    for sigma, encoding, profile in _canonical_pairs(base):
        base_verdict = is_nash(base.game, profile).is_equilibrium
        for gamma, scaled in scaled_games:
            if is_nash(scaled.game, profile).is_equilibrium != base_verdict:
                canonical_ok = False
                report.attach_counterexample(
                    scaled.game, profile, f"verdict flip at sigma={sigma}"
                )
    report.check("canonical-verdicts-agree", canonical_ok)

    grid_ok = True
    for _ in range(grid_checks):
        profile = Profile(
            {
                p: IndividualStrategy(
                    p, dict(zip(ACTIONS, _random_grid_dist(rng, 4)))
                )
                for p in base.game.players
            }
        )
        base_verdict = is_nash(base.game, profile).is_equilibrium
        for gamma, scaled in scaled_games:
            if is_nash(scaled.game, profile).is_equilibrium != base_verdict:
                grid_ok = False
                report.attach_counterexample(scaled.game, profile, "grid verdict flip")
    report.check("grid-verdicts-agree", grid_ok, f"{grid_checks} grid profiles")
    report.elapsed = time.perf_counter() - start
    return report


def _random_grid_dist(rng: random.Random, denominator: int) -> tuple[Fraction, Fraction]:
    num = rng.randint(0, denominator)
    return Fraction(num, denominator), Fraction(denominator - num, denominator)


# ---------------------------------------------------------------------------
# Validation corpus

@dataclass(frozen=True)
class CorpusInstance:
    label: str
    cnf: CnfFormula


def formula_hash(cnf: CnfFormula) -> str:
    return hashlib.sha1(to_dimacs(cnf).encode()).hexdigest()[:8]


def showcase_formula() -> CnfFormula:
    """Eight variables, eight clauses: compiles to 39 players with a
    two-level evaluation tree.  Used as the large fixed corpus instance."""
    return CnfFormula(
        num_vars=8,
        clauses=((1, 2), (1, 3), (1, -4), (4, 5), (-5, -6), (4, 6), (6, 7), (8,)),
    )


def _clause_universe(num_vars: int) -> list[tuple[int, ...]]:
    clauses: list[tuple[int, ...]] = []
    for width in range(1, min(3, num_vars) + 1):
        for variables in itertools.combinations(range(1, num_vars + 1), width):
            for signs in itertools.product((1, -1), repeat=width):
                clauses.append(tuple(s * v for v, s in zip(variables, signs)))
    return clauses


def exhaustive_small_formulas(
    max_vars: int = 3, max_clauses: int = 4
) -> list[CnfFormula]:
    """Every formula with distinct clauses of up to three literals over
    exactly n <= max_vars variables, deduplicated up to permutations of
    the literal space (variable renaming plus polarity flips)."""
    formulas: list[CnfFormula] = []
    for n in range(1, max_vars + 1):
        universe = _clause_universe(n)
        index = {c: k for k, c in enumerate(universe)}
        var_masks = [
            sum(1 << (abs(lit) - 1) for lit in clause) for clause in universe
        ]
        full_mask = (1 << n) - 1

        transforms: list[tuple[int, ...]] = []
        for perm in itertools.permutations(range(1, n + 1)):
            for flips in itertools.product((1, -1), repeat=n):
                mapping = []
                for clause in universe:
                    moved = tuple(
                        sorted(
                            (
                                (1 if lit > 0 else -1)
                                * flips[abs(lit) - 1]
                                * perm[abs(lit) - 1]
                                for lit in clause
                            ),
                            key=abs,
                        )
                    )
                    mapping.append(index[moved])
                transforms.append(tuple(mapping))

        seen: set[tuple[int, ...]] = set()
        for m in range(1, max_clauses + 1):
            for ids in itertools.combinations(range(len(universe)), m):
                mask = 0
                for k in ids:
                    mask |= var_masks[k]
                if mask != full_mask:
                    continue
                canon = min(
                    tuple(sorted(mapping[k] for k in ids)) for mapping in transforms
                )
                if canon in seen:
                    continue
                seen.add(canon)
                formulas.append(
                    CnfFormula(num_vars=n, clauses=tuple(universe[k] for k in canon))
                )
    return formulas


def random_formulas(
    count: int = 50, num_vars: int = 4, num_clauses: int = 4, seed: int = 0
) -> list[CnfFormula]:
    """Seeded random 3-literal formulas; the clause count is kept a power
    of two so no padding variables are introduced."""
    rng = random.Random(seed)
    formulas = []
    for _ in range(count):
        clauses: set[tuple[int, ...]] = set()
        while len(clauses) < num_clauses:
            variables = sorted(rng.sample(range(1, num_vars + 1), 3))
            signs = [rng.choice((1, -1)) for _ in variables]
            clauses.add(tuple(s * v for v, s in zip(variables, signs)))
        formulas.append(CnfFormula(num_vars=num_vars, clauses=tuple(sorted(clauses))))
    return formulas


def default_corpus(seed: int = 0) -> list[CorpusInstance]:
    """Exhaustive small formulas, the 39-player showcase, and 50 seeded
    random four-variable formulas."""
    instances = [
        CorpusInstance(
            label=f"v{f.num_vars}c{f.num_clauses}-{formula_hash(f)}", cnf=f
        )
        for f in exhaustive_small_formulas()
    ]
    showcase = showcase_formula()
    instances.append(CorpusInstance(label=f"showcase-{formula_hash(showcase)}", cnf=showcase))
    for k, f in enumerate(random_formulas(seed=seed)):
        instances.append(CorpusInstance(label=f"rand4-{k:02d}-{formula_hash(f)}", cnf=f))
    return instances


# ---------------------------------------------------------------------------
# Corpus runner

CORPUS_VALIDATORS = (
    ("canonical-equilibria", validate_canonical_equilibria),
    ("root-tracks-satisfiability", validate_sat_equivalence),
    ("constrained-instances", validate_constrained_instances),
    ("pennies-extension", validate_pennies_extension),
    ("scaled-refinements", validate_scaled_refinements),
)


def _scaling_subset(instances: Sequence[CorpusInstance], count: int = 4) -> list[CorpusInstance]:
    """Small, structurally varied instances for the random-profile
    scaling checks: fewest players first, padded and unsatisfiable
    instances preferred."""
    chosen: list[CorpusInstance] = []
    seen: set[str] = set()

    def take(predicate) -> None:
        for inst in instances:
            if inst.label in seen:
                continue
            if predicate(inst.cnf):
                chosen.append(inst)
                seen.add(inst.label)
                return

    take(lambda f: f.num_vars == 1)
    take(lambda f: f.num_vars == 2 and sat_brute_force(f) is not None)
    take(lambda f: f.num_vars == 2 and sat_brute_force(f) is None)
    take(lambda f: f.num_vars == 3 and f.num_clauses not in (2, 4))
    for inst in instances:
        if len(chosen) >= count:
            break
        if inst.label not in seen and inst.cnf.num_vars <= 3:
            chosen.append(inst)
            seen.add(inst.label)
    return chosen[:count]


def run_corpus(
    instances: Sequence[CorpusInstance],
    seed: int = 0,
    gadget_grid_denominator: int = 10,
    scaling_profiles: int = 100,
) -> list[LemmaReport]:
    """Run every validator over the corpus; one merged report per lemma.

    The gadget certification runs on the showcase instance (the gadget
    tables are identical constants in every compiled game); the
    random-profile scaling checks run on a small structured subset.
    """
    reports: list[LemmaReport] = []

    gadget_instance = max(instances, key=lambda inst: inst.cnf.num_vars)
    gadget_report = validate_gadget(
        build_gphi(gadget_instance.cnf), grid_denominator=gadget_grid_denominator
    )
    gadget_report.notes.append(f"gadgets certified on {gadget_instance.label}")
    reports.append(gadget_report)

    for lemma, validator in CORPUS_VALIDATORS:
        merged = LemmaReport(lemma)
        start = time.perf_counter()
        for inst in instances:
            result = validator(inst.cnf)
            failed = [r.name for r in result.results if not r.passed]
            merged.check(
                inst.label,
                result.passed,
                "" if result.passed else f"failed: {', '.join(failed)}",
            )
            for note in result.notes:
                if note not in merged.notes:
                    merged.notes.append(note)
            if merged.counterexample is None and result.counterexample is not None:
                merged.counterexample = result.counterexample
        merged.elapsed = time.perf_counter() - start
        reports.append(merged)

    scaling = LemmaReport("payoff-scaling")
    start = time.perf_counter()
    for inst in _scaling_subset(instances):
        result = validate_payoff_scaling(
            inst.cnf, profiles=scaling_profiles, seed=seed
        )
        failed = [r.name for r in result.results if not r.passed]
        scaling.check(
            inst.label,
            result.passed,
            "" if result.passed else f"failed: {', '.join(failed)}",
        )
        if scaling.counterexample is None and result.counterexample is not None:
            scaling.counterexample = result.counterexample
    scaling.elapsed = time.perf_counter() - start
    reports.append(scaling)
    return reports
