"""Rendering of validation runs: delimited summaries and figures.

The validate command can write, next to its JSON verdicts, a CSV with
one row per (lemma, instance) check and a small set of matplotlib
figures: per-lemma pass rates, the regret landscape of the coordination
gadget, and role-colored dependency graphs.  Figures use float
arithmetic for drawing only; every verdict they illustrate was computed
exactly upstream.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .equilibrium import best_response_regret
from .game import GraphicalGame, dependency_graph
from .oracles import LemmaReport
from .reductions import (
    ROLE_AUX_FIRST,
    ROLE_AUX_SECOND,
    ROLE_CLAUSE,
    ROLE_PENNIES,
    ROLE_ROOT,
    ROLE_TREE,
    ROLE_VARIABLE,
    ReductionArtifacts,
)
from .strategy import IndividualStrategy, Profile

ROLE_COLORS = {
    ROLE_VARIABLE: "#1f77b4",
    ROLE_AUX_FIRST: "#aec7e8",
    ROLE_AUX_SECOND: "#aec7e8",
    ROLE_CLAUSE: "#2ca02c",
    ROLE_TREE: "#ff7f0e",
    ROLE_ROOT: "#d62728",
    ROLE_PENNIES: "#9467bd",
}


def write_validation_csv(reports: Sequence[LemmaReport], path: Path) -> None:
    """One row per (lemma, check): lemma, instance/check name, status, detail."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["lemma", "check", "status", "detail"])
        for report in reports:
            for result in report.results:
                writer.writerow(
                    [
                        report.lemma,
                        result.name,
                        "pass" if result.passed else "FAIL",
                        result.detail,
                    ]
                )


def lemma_summary_figure(reports: Sequence[LemmaReport], path: Path) -> None:
    """Horizontal stacked bars: checks passed/failed per lemma."""
    lemmas = [r.lemma for r in reports]
    passed = [sum(1 for c in r.results if c.passed) for r in reports]
    failed = [sum(1 for c in r.results if not c.passed) for r in reports]
    fig, ax = plt.subplots(figsize=(7, 0.5 * len(lemmas) + 1.5))
    ax.barh(lemmas, passed, color="#2ca02c", label="pass")
    ax.barh(lemmas, failed, left=passed, color="#d62728", label="fail")
    ax.set_xlabel("checks")
    ax.legend(loc="lower right")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def gadget_landscape_figure(
    game: GraphicalGame,
    pair: tuple[str, str],
    path: Path,
    denominator: int = 50,
) -> None:
    """Heatmap of the pair's worst regret over the probability square,
    with the exact equilibria standing out as zero-regret points."""
    i, j = pair
    values = []
    ticks = [Fraction(k, denominator) for k in range(denominator + 1)]
    for q in ticks:
        row = []
        for p in ticks:
            profile = Profile(
                {
                    i: IndividualStrategy(i, dict(zip(game.actions[i], (p, 1 - p)))),
                    j: IndividualStrategy(j, dict(zip(game.actions[j], (q, 1 - q)))),
                }
            )
            regret = max(
                best_response_regret(game, profile, i)[0],
                best_response_regret(game, profile, j)[0],
            )
            row.append(float(regret))
        values.append(row)
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    image = ax.imshow(
        values, origin="lower", extent=(0, 1, 0, 1), cmap="viridis", aspect="auto"
    )
    fig.colorbar(image, ax=ax, label="worst regret")
    ax.set_xlabel(f"P[{i} plays {game.actions[i][0]}]")
    ax.set_ylabel(f"P[{j} plays {game.actions[j][0]}]")
    ax.set_title("coordination pair regret landscape")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def dependency_graph_figure(artifacts: ReductionArtifacts, path: Path) -> None:
    """Role-colored drawing of the dependency graph, layered by role."""
    graph = dependency_graph(artifacts.game)
    layers = {
        ROLE_AUX_FIRST: 0,
        ROLE_AUX_SECOND: 0,
        ROLE_VARIABLE: 1,
        ROLE_CLAUSE: 2,
        ROLE_TREE: 3,
        ROLE_ROOT: 4,
        ROLE_PENNIES: 4,
    }
    for node in graph.nodes:
        graph.nodes[node]["layer"] = layers[artifacts.roles[node]]
    pos = nx.multipartite_layout(graph, subset_key="layer", align="horizontal")
    colors = [ROLE_COLORS[artifacts.roles[p]] for p in graph.nodes]
    fig, ax = plt.subplots(figsize=(max(6, graph.number_of_nodes() * 0.28), 6))
    nx.draw_networkx(
        graph,
        pos=pos,
        ax=ax,
        node_color=colors,
        node_size=320,
        font_size=6,
        edge_color="#999999",
    )
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_validation_report(
    reports: Sequence[LemmaReport],
    artifacts: ReductionArtifacts,
    directory: Path,
) -> list[Path]:
    """Write the CSV and the standard figures into `directory`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    csv_path = directory / "validation.csv"
    write_validation_csv(reports, csv_path)
    written.append(csv_path)
    summary_path = directory / "lemma_summary.png"
    lemma_summary_figure(reports, summary_path)
    written.append(summary_path)
    first_pair = artifacts.var_map[min(artifacts.var_map)][1:]
    landscape_path = directory / "gadget_regret.png"
    gadget_landscape_figure(artifacts.game, first_pair, landscape_path)
    written.append(landscape_path)
    graph_path = directory / "dependency_graph.png"
    dependency_graph_figure(artifacts, graph_path)
    written.append(graph_path)
    return written
