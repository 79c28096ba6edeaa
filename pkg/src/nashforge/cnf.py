"""CNF formulas, DIMACS ingestion, and power-of-two clause padding.

Clauses are tuples of signed 1-based variable indices with at most three
literals each.  Padding appends satisfiable unit clauses over fresh
variables until the clause count is the least power of two >= max(m, 2),
so the evaluation tree downstream is always a complete binary tree with
at least one level.
"""

from __future__ import annotations

from dataclasses import dataclass

TruthAssignment = dict[int, bool]

MAX_CLAUSE_ARITY = 3


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be >= 0")
        for k, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ValueError(f"clause {k} is empty")
            if len(clause) > MAX_CLAUSE_ARITY:
                raise ValueError(
                    f"clause {k} has {len(clause)} literals (max {MAX_CLAUSE_ARITY})"
                )
            if len(set(clause)) != len(clause):
                raise ValueError(f"clause {k} repeats a literal")
            for lit in clause:
                if lit == 0:
                    raise ValueError(f"clause {k} contains a zero literal")
                if abs(lit) > self.num_vars:
                    raise ValueError(
                        f"clause {k} references variable {abs(lit)} > {self.num_vars}"
                    )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def clause_satisfied(clause: tuple[int, ...], sigma: TruthAssignment) -> bool:
    return any(sigma[abs(lit)] == (lit > 0) for lit in clause)


def formula_satisfied(cnf: CnfFormula, sigma: TruthAssignment) -> bool:
    return all(clause_satisfied(c, sigma) for c in cnf.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; enforces header counts and the 3-literal bound."""
    num_vars: int | None = None
    num_clauses: int | None = None
    tokens: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise ValueError("duplicate DIMACS header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"malformed header: {line!r}")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise ValueError("clause data before DIMACS header")
        tokens.extend(int(tok) for tok in line.split())
    if num_vars is None or num_clauses is None:
        raise ValueError("missing DIMACS header")

    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            if not current:
                raise ValueError("zero-length clause")
            clauses.append(tuple(current))
            current = []
        else:
            current.append(tok)
    if current:
        raise ValueError("unterminated final clause")
    if len(clauses) != num_clauses:
        raise ValueError(
            f"header declares {num_clauses} clauses, found {len(clauses)}"
        )
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


def to_dimacs(cnf: CnfFormula) -> str:
    lines = [f"p cnf {cnf.num_vars} {cnf.num_clauses}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in cnf.clauses)
    return "\n".join(lines) + "\n"


def pad_clauses(cnf: CnfFormula) -> CnfFormula:
    """Round the clause count up to the least power of two >= max(m, 2).

    Each added clause is a single positive literal of a fresh variable, so
    the padded formula is satisfiable exactly when the original is.
    """
    m = cnf.num_clauses
    if m < 1:
        raise ValueError("cannot pad a formula with no clauses")
    target = 2
    while target < m:
        target *= 2
    fresh = range(cnf.num_vars + 1, cnf.num_vars + 1 + target - m)
    return CnfFormula(
        num_vars=cnf.num_vars + (target - m),
        clauses=cnf.clauses + tuple((v,) for v in fresh),
    )
