"""Session fixtures: the regression runs shared by the acceptance gates."""

import random
import time

import pytest

from dowker import Relation, gen_sphere_cube, gen_sphere_uv, gen_torus_grid, reduce
from _util import random_toplex_list


def timed_reduce(relation):
    t0 = time.perf_counter()
    reduced, stats, reports = reduce(relation)
    elapsed = time.perf_counter() - t0
    return {"initial": relation, "reduced": reduced, "stats": stats,
            "reports": reports, "elapsed": elapsed}


@pytest.fixture(scope="session")
def small_sphere_run():
    return timed_reduce(Relation.from_toplexes(gen_sphere_cube()))


@pytest.fixture(scope="session")
def small_torus_run():
    return timed_reduce(Relation.from_toplexes(gen_torus_grid(4, 4)))


@pytest.fixture(scope="session")
def big_sphere_run():
    return timed_reduce(Relation.from_toplexes(gen_sphere_uv(24, 21)))


@pytest.fixture(scope="session")
def big_torus_run():
    return timed_reduce(Relation.from_toplexes(gen_torus_grid(30, 40)))


@pytest.fixture(scope="session")
def random_runs():
    rng = random.Random(20260809)
    return [timed_reduce(Relation.from_toplexes(random_toplex_list(rng)))
            for _ in range(100)]
