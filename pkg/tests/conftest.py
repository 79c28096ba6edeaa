from pathlib import Path

import pytest

from nashforge.cnf import CnfFormula
from nashforge.reductions import build_gphi

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def showcase_cnf_path() -> Path:
    return DATA / "showcase.cnf"


@pytest.fixture(scope="session")
def unsat2_cnf_path() -> Path:
    return DATA / "unsat2.cnf"


@pytest.fixture(scope="session")
def sat2() -> CnfFormula:
    # (X1 v X2) & (~X1 v ~X2): satisfiable, two clauses, no padding
    return CnfFormula(2, ((1, 2), (-1, -2)))


@pytest.fixture(scope="session")
def unsat2() -> CnfFormula:
    return CnfFormula(2, ((1, 2), (1, -2), (-1, 2), (-1, -2)))


@pytest.fixture(scope="session")
def sat2_artifacts(sat2):
    return build_gphi(sat2)


@pytest.fixture(scope="session")
def pennies_artifacts(sat2):
    from nashforge.reductions import build_another_nash_instance

    return build_another_nash_instance(sat2)


@pytest.fixture(scope="session")
def gadget_game(sat2_artifacts):
    """Standalone 3-player variable gadget (watcher + coordination pair)."""
    from nashforge.game import induced_subgame

    watcher, first, second = sat2_artifacts.var_map[1]
    return induced_subgame(sat2_artifacts.game, (watcher, first, second)), (
        watcher,
        first,
        second,
    )
