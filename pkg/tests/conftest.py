import pytest

from epiecon import presets
from epiecon.population import PopulationConfig, build_population
from epiecon.simulation import ScenarioConfig, build_world


@pytest.fixture(scope="session")
def small_pop_config():
    return PopulationConfig.from_dict(presets.demo_population_config(4, 250))


@pytest.fixture(scope="session")
def small_pop(small_pop_config):
    return build_population(small_pop_config, seed=11)


@pytest.fixture(scope="session")
def small_scenario_dict():
    return presets.demo_scenario(n_persons=1200, seeds=[1])


@pytest.fixture(scope="session")
def small_world(small_scenario_dict):
    return build_world(ScenarioConfig.from_dict(small_scenario_dict))
