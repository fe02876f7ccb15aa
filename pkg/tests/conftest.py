import pytest

from qubit_landauer import CavitySpec, ThermalEnvironment

FIG_L = 1.234
FIG_X = 0.52345


@pytest.fixture
def fig_cavity():
    return CavitySpec(FIG_L, FIG_X, 200)


@pytest.fixture
def cold_env(fig_cavity):
    return ThermalEnvironment(1.0, fig_cavity)


@pytest.fixture
def hot_env(fig_cavity):
    return ThermalEnvironment(100.0, fig_cavity)
