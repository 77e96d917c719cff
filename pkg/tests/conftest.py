import functools

import pytest

from wittgroup.finite_field import ff_create
from wittgroup.galois_ring import gr_create
from wittgroup.gmodule import MatrixModules
from wittgroup.matgroup import sl_group


@functools.lru_cache(maxsize=None)
def sl2_mods(p, d, n=2):
    return MatrixModules(sl_group(n, ff_create(p, d)))


@pytest.fixture(scope="session")
def mods_f4():
    return sl2_mods(2, 2)


@pytest.fixture(scope="session")
def mods_f5():
    return sl2_mods(5, 1)


@pytest.fixture(scope="session")
def gr42():
    return gr_create(2, 2, 2)


@pytest.fixture(scope="session")
def sl2_gr42(gr42):
    return sl_group(2, gr42)
