from deadzonesmc.common.modelcommon import SwitchingKind
from deadzonesmc.controllers.fuzzy import FuzzyCompensator
from deadzonesmc.controllers.modelcontroller import ControllerConfig, ModelEstimate
from deadzonesmc.controllers.sliding import SurfaceSpec, SwitchingFn


def _no_drift(x):
    return 0.0


def first_order_config(kind=SwitchingKind.SIGN, phi=1.0, eta=0.1, delta_bound=0.3, compensator_on=True):
    """Controller for x' = Y(u) with exact model knowledge."""
    return ControllerConfig(
        model=ModelEstimate(f_hat=_no_drift, bm_hat=1.0),
        surface=SurfaceSpec.build(1, 1.0),
        switching=SwitchingFn(kind, phi),
        eta=eta,
        delta_bound=delta_bound,
        compensator_on=compensator_on,
    )


def zero_compensator(gamma=0.0):
    return FuzzyCompensator.initial(gamma=gamma)


def load_key_values(filename):
    """Read back a `key = value` file as strings."""
    data = {}
    with open(filename, encoding="utf8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            data[key.strip()] = value.strip()
    return data
