import pytest

from extsym.instances import (a2_catalog, a2_modules, a2_preprojective,
                              a2_sums, three_vertex_algebra,
                              three_vertex_simples, two_loop_modules)


@pytest.fixture(scope="session")
def a2():
    alg = a2_preprojective()
    mods = a2_modules(alg)
    return alg, mods


@pytest.fixture(scope="session")
def a2_cat(a2):
    alg, _ = a2
    return a2_catalog(alg, 4)


@pytest.fixture(scope="session")
def a2_all_sums(a2):
    alg, _ = a2
    return a2_sums(alg, 3)


@pytest.fixture(scope="session")
def three_vertex():
    alg = three_vertex_algebra()
    return alg, three_vertex_simples(alg)


@pytest.fixture(scope="session")
def two_loop():
    return two_loop_modules()
