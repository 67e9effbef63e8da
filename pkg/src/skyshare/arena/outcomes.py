"""Task success rules."""

from dataclasses import dataclass

import numpy as np

from .dynamics import leg_points
from .geometry import wrap_angle

YAW_TOL = np.radians(20.0)


@dataclass
class TaskOutcome:
    kind: str
    success: bool
    pos_err: float
    yaw_err: float

    def to_dict(self):
        return {"kind": self.kind, "success": bool(self.success),
                "pos_err": float(self.pos_err),
                "yaw_err": float(self.yaw_err)}


def eval_landing(state, platform, intended, leg_half):
    """Touchdown outcome: all four legs on the goal top face, yaw aligned,
    and the mission actually asking for this landing."""
    legs = leg_points(state.pos[:2], state.yaw, leg_half)
    on_top = bool(platform.contains(legs).all()) if platform else False
    yaw_err = abs(wrap_angle(state.yaw - platform.yaw)) if platform else np.pi
    pos_err = float(np.hypot(*(state.pos[:2] - platform.center))) \
        if platform else float("inf")
    success = bool(on_top and yaw_err < YAW_TOL and intended)
    return TaskOutcome("landing", success, pos_err, yaw_err)


def eval_inspection(corner_flags, state, platform):
    """Capture outcome: every goal corner inside the fused image and the
    vehicle yaw aligned with the platform."""
    yaw_err = abs(wrap_angle(state.yaw - platform.yaw))
    pos_err = float(np.hypot(*(state.pos[:2] - platform.center)))
    success = bool(np.all(corner_flags) and yaw_err < YAW_TOL)
    return TaskOutcome("inspection", success, pos_err, yaw_err)
