from .modeldeadzone import DeadZoneSpec, DeadZoneBounds
from .deadzone import apply, slope, disturbance, disturbance_bound
