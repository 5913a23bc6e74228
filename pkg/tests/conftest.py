import pytest

from src.opcalc.dependencies import clear_service_cache
from src.opcalc.ring import make_curve_chow_symbolic, make_curve_cohomology


@pytest.fixture(scope="session")
def cohomology2():
    return make_curve_cohomology(2)


@pytest.fixture(scope="session")
def cohomology1():
    return make_curve_cohomology(1)


@pytest.fixture(scope="session")
def chow2():
    return make_curve_chow_symbolic(2)


@pytest.fixture(scope="session")
def chow2_truncated():
    return make_curve_chow_symbolic(2, psi_truncation=3)


@pytest.fixture(scope="session")
def chow2_rational():
    return make_curve_chow_symbolic(2, rational=True)


@pytest.fixture(scope="session")
def chow2_split():
    return make_curve_chow_symbolic(2, over_point=True, canonical_split=True)


@pytest.fixture(scope="session")
def chow2_trivial():
    return make_curve_chow_symbolic(2, trivial_family=True)


@pytest.fixture(autouse=True)
def _fresh_services():
    clear_service_cache()
    yield
    clear_service_cache()
