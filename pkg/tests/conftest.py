import dataclasses

import pytest

from deadzonesmc.common.modelcommon import SwitchingKind
from deadzonesmc.deadzone.modeldeadzone import DeadZoneSpec, DeadZoneBounds
from deadzonesmc.simulation import batch
from deadzonesmc.simulation.scenario import load_scenario


@pytest.fixture
def valve():
    return DeadZoneSpec(delta_l=-1.1, delta_r=0.9, m_l=1.8e-6, m_r=2.2e-6)


@pytest.fixture
def bounds():
    return DeadZoneBounds(
        delta_l_min=-1.1,
        delta_l_max=-0.1,
        delta_r_min=0.1,
        delta_r_max=0.9,
        m_l_min=1.8e-6,
        m_l_max=2.2e-6,
        m_r_min=1.8e-6,
        m_r_max=2.2e-6,
    )


@pytest.fixture
def case1():
    return load_scenario("case1")


@pytest.fixture
def case2():
    return load_scenario("case2")


@pytest.fixture(scope="session")
def case1_compare():
    return batch.run_compare(load_scenario("case1"))


@pytest.fixture(scope="session")
def case1_sign():
    scenario = load_scenario("case1")
    scenario = dataclasses.replace(
        scenario,
        name="case1-sign",
        controller=dataclasses.replace(scenario.controller, switching=SwitchingKind.SIGN),
    )
    return batch.execute(scenario)


@pytest.fixture(scope="session")
def case2_compare():
    return batch.run_compare(load_scenario("case2"))


@pytest.fixture(scope="session")
def case1_phi_sweep():
    return batch.run_sweep(load_scenario("case1"), "controller.phi", [0.5, 1.0, 2.0])
