"""Command-line front end: compile reductions, verify profiles, run the
validation suite.

Decision commands (verify, check, sat, pareto, strong, validate) exit 0
for a YES answer, 1 for NO, and 2 on usage or I/O errors.  With
--format json the machine-readable result goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cnf import parse_dimacs
from .constraints import constraint_from_dict, satisfies_all
from .equilibrium import BudgetExceededError, enumerate_pure_nash, is_nash
from .game import game_from_dict, validate_game
from .oracles import default_corpus, run_corpus, sat_brute_force
from .rationals import parse_rational
from .refinements import is_pareto_within, strong_check_desk
from .reductions import (
    FEncoding,
    artifacts_to_dict,
    build_action_constrained_instance,
    build_another_nash_instance,
    build_gamma_scaled,
    build_gphi,
    build_payoff_constrained_instance,
    canonical_profile,
)
from .strategy import profile_from_dict, profile_to_dict

VARIANTS = ("base", "another-nash", "gamma", "action-constrained", "payoff-constrained")


def _read_json(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def _emit(data: dict, args: argparse.Namespace, human: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(human)


def _write_or_print(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        print(text)


def _build_variant(args: argparse.Namespace):
    cnf = parse_dimacs(Path(args.cnf).read_text())
    constraint = None
    if args.variant == "base":
        artifacts = build_gphi(cnf)
    elif args.variant == "another-nash":
        artifacts = build_another_nash_instance(cnf)
    elif args.variant == "gamma":
        artifacts = build_gamma_scaled(build_gphi(cnf), parse_rational(args.gamma))
    elif args.variant == "action-constrained":
        artifacts, constraint = build_action_constrained_instance(cnf)
    elif args.variant == "payoff-constrained":
        artifacts, constraint = build_payoff_constrained_instance(
            cnf, parse_rational(args.alpha)
        )
    else:
        raise ValueError(f"unknown variant {args.variant!r}")
    return artifacts, constraint


def _cmd_reduce(args: argparse.Namespace) -> int:
    artifacts, constraint = _build_variant(args)
    data = artifacts_to_dict(artifacts)
    data["constraint"] = constraint.to_dict() if constraint else None
    _write_or_print(json.dumps(data, indent=2) + "\n", args.output)
    if args.figure:
        from .report import dependency_graph_figure

        dependency_graph_figure(artifacts, Path(args.figure))
    return 0


def _parse_assignment(text: str, original_vars: int, padded_vars: int) -> dict[int, bool]:
    symbols = [c for c in text.replace(",", "").strip() if not c.isspace()]
    truthy, falsy = {"T", "t", "1"}, {"F", "f", "0"}
    values = []
    for c in symbols:
        if c in truthy:
            values.append(True)
        elif c in falsy:
            values.append(False)
        else:
            raise ValueError(f"bad assignment symbol {c!r}")
    if len(values) == original_vars:
        values += [True] * (padded_vars - original_vars)  # padding vars satisfied
    if len(values) != padded_vars:
        raise ValueError(
            f"assignment length {len(values)} matches neither {original_vars} "
            f"original nor {padded_vars} padded variables"
        )
    return {i + 1: v for i, v in enumerate(values)}


def _cmd_canonical(args: argparse.Namespace) -> int:
    cnf = parse_dimacs(Path(args.cnf).read_text())
    if args.variant == "another-nash":
        artifacts = build_another_nash_instance(cnf)
    else:
        artifacts = build_gphi(cnf)
    sigma = _parse_assignment(args.assignment, cnf.num_vars, artifacts.cnf.num_vars)
    encoding = FEncoding.S2_FOR_FALSE if args.encoding == "s2" else FEncoding.S3_FOR_FALSE
    profile = canonical_profile(artifacts, sigma, encoding)
    data = profile_to_dict(profile, order=artifacts.game.players)
    _write_or_print(json.dumps(data, indent=2) + "\n", args.output)
    return 0


def _load_game(path: str):
    data = _read_json(path)
    game = game_from_dict(data)
    report = validate_game(game)
    if not report.ok:
        raise ValueError(f"invalid game: {'; '.join(report.violations)}")
    return game


def _cmd_verify(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    profile = profile_from_dict(_read_json(args.profile))
    report = is_nash(game, profile, parse_rational(args.epsilon))
    _emit(
        report.to_dict(),
        args,
        f"{'equilibrium' if report.is_equilibrium else 'not an equilibrium'}"
        + (f" (worst: {report.worst})" if report.worst else ""),
    )
    return 0 if report.is_equilibrium else 1


def _cmd_enumerate_pure(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    profiles = enumerate_pure_nash(game, budget=args.budget)
    data = {"count": len(profiles), "profiles": [profile_to_dict(p, order=game.players) for p in profiles]}
    _emit(data, args, f"{len(profiles)} pure equilibria")
    if args.format != "json":
        for p in profiles:
            choice = {q: max(p.strategies[q].probs, key=p.strategies[q].probs.get) for q in game.players}
            print("  " + ", ".join(f"{q}={a}" for q, a in choice.items()))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    profile = profile_from_dict(_read_json(args.profile))
    raw = _read_json(args.constraints)
    entries = raw if isinstance(raw, list) else raw["constraints"]
    constraints = [constraint_from_dict(c) for c in entries]
    nash = is_nash(game, profile, parse_rational(args.epsilon))
    satisfied = satisfies_all(game, profile, constraints)
    verdict = nash.is_equilibrium and satisfied
    _emit(
        {
            "is_equilibrium": nash.is_equilibrium,
            "constraints_satisfied": satisfied,
            "constrained_equilibrium": verdict,
        },
        args,
        f"constrained equilibrium: {'yes' if verdict else 'no'} "
        f"(nash={nash.is_equilibrium}, constraints={satisfied})",
    )
    return 0 if verdict else 1


def _load_candidates(path: str) -> list:
    raw = _read_json(path)
    entries = raw if isinstance(raw, list) else raw["profiles"]
    return [profile_from_dict(p) for p in entries]


def _cmd_pareto(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    profile = profile_from_dict(_read_json(args.profile))
    candidates = _load_candidates(args.candidates)
    verdict, witness = is_pareto_within(game, profile, candidates)
    _emit(
        {
            "pareto_within_candidates": verdict,
            "candidate_count": len(candidates),
            "dominating": profile_to_dict(witness) if witness else None,
        },
        args,
        f"pareto within {len(candidates)} candidates: {'yes' if verdict else 'no'}",
    )
    return 0 if verdict else 1


def _cmd_strong(args: argparse.Namespace) -> int:
    game = _load_game(args.game)
    profile = profile_from_dict(_read_json(args.profile))
    candidates = _load_candidates(args.candidates) if args.candidates else []
    report = strong_check_desk(
        game,
        profile,
        max_coalition_size=args.max_coalition_size,
        grid_denominator=args.grid_denominator,
        candidates=candidates,
        budget=args.budget,
    )
    _emit(
        report.to_dict(),
        args,
        f"{report.status} after {report.coalitions_checked} coalitions"
        + (" (search exhaustive: all at table maximum)" if report.exhaustive else ""),
    )
    return 0 if report.status == "NO-WITNESS-FOUND" else 1


def _cmd_validate(args: argparse.Namespace) -> int:
    corpus = default_corpus(seed=args.seed)
    if args.limit:
        corpus = corpus[: args.limit]
    reports = run_corpus(corpus, seed=args.seed)
    all_passed = all(r.passed for r in reports)
    if args.report_dir:
        from .oracles import showcase_formula
        from .report import render_validation_report

        artifacts = build_gphi(showcase_formula())
        written = render_validation_report(reports, artifacts, Path(args.report_dir))
        print(f"report files: {', '.join(str(w) for w in written)}", file=sys.stderr)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "corpus_size": len(corpus),
                    "all_passed": all_passed,
                    "lemmas": [r.to_dict() for r in reports],
                },
                indent=2,
            )
        )
    else:
        for report in reports:
            passed = sum(1 for c in report.results if c.passed)
            print(
                f"{report.lemma}: {passed}/{len(report.results)} checks passed "
                f"[{report.elapsed:.2f}s]"
            )
            for note in report.notes:
                print(f"  note: {note}")
        print(f"overall: {'PASS' if all_passed else 'FAIL'} ({len(corpus)} instances)")
    return 0 if all_passed else 1


def _cmd_sat(args: argparse.Namespace) -> int:
    cnf = parse_dimacs(Path(args.cnf).read_text())
    sigma = sat_brute_force(cnf, max_vars=args.max_vars)
    if sigma is None:
        _emit({"satisfiable": False, "assignment": None}, args, "unsatisfiable")
        return 1
    assignment = "".join("T" if sigma[i] else "F" for i in range(1, cnf.num_vars + 1))
    _emit(
        {"satisfiable": True, "assignment": assignment},
        args,
        f"satisfiable: {assignment}",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nashforge",
        description="graphical-game equilibrium toolkit with CNF reductions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("human", "json"), default="human")

    p = sub.add_parser("reduce", help="compile a DIMACS formula into a game")
    p.add_argument("cnf")
    p.add_argument("--variant", choices=VARIANTS, default="base")
    p.add_argument("--gamma", default="2", help="scaling factor for --variant gamma")
    p.add_argument("--alpha", default="2", help="payoff bound for --variant payoff-constrained")
    p.add_argument("--output", "-o", help="write JSON here instead of stdout")
    p.add_argument("--figure", help="also render the dependency graph to this image")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("canonical", help="canonical profile for a truth assignment")
    p.add_argument("cnf")
    p.add_argument("--assignment", required=True, help="e.g. TFFT or 1001 (original or padded length)")
    p.add_argument("--encoding", choices=("s2", "s3"), default="s3")
    p.add_argument("--variant", choices=("base", "another-nash"), default="base")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_canonical)

    p = sub.add_parser("verify", help="Nash-check a profile against a game")
    p.add_argument("game")
    p.add_argument("profile")
    p.add_argument("--epsilon", default="0")
    add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("enumerate-pure", help="all pure equilibria of a game")
    p.add_argument("game")
    p.add_argument("--budget", type=int, default=None)
    add_format(p)
    p.set_defaults(func=_cmd_enumerate_pure)

    p = sub.add_parser("check", help="verify a profile against a constraint file")
    p.add_argument("game")
    p.add_argument("profile")
    p.add_argument("constraints")
    p.add_argument("--epsilon", default="0")
    add_format(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("pareto", help="Pareto check against candidate equilibria")
    p.add_argument("game")
    p.add_argument("profile")
    p.add_argument("candidates")
    add_format(p)
    p.set_defaults(func=_cmd_pareto)

    p = sub.add_parser("strong", help="bounded strong-equilibrium refutation search")
    p.add_argument("game")
    p.add_argument("profile")
    p.add_argument("--candidates")
    p.add_argument("--max-coalition-size", type=int, default=2)
    p.add_argument("--grid-denominator", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    add_format(p)
    p.set_defaults(func=_cmd_strong)

    p = sub.add_parser("validate", help="run the lemma-validation corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=None, help="cap the corpus size")
    p.add_argument("--report-dir", help="write CSV and figures here")
    add_format(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("sat", help="brute-force satisfiability of a DIMACS file")
    p.add_argument("cnf")
    p.add_argument("--max-vars", type=int, default=20)
    add_format(p)
    p.set_defaults(func=_cmd_sat)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
