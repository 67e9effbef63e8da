"""Per-step cost. Lower is better; the learner minimizes this.

Velocity units are m/s (physical), action-disagreement terms use the
normalized stick units both agents act in. Near-ground velocity terms use
the post-step state; capture-motion terms use the state at the moment the
shutter fired.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class CaptureEvent:
    success: bool
    ratio: float       # goal pixels over image area
    speed2: float      # squared speed at capture, (m/s)^2
    yaw_rate2: float   # squared yaw rate at capture


@dataclass
class RewardContext:
    landing: 'bool | None' = None       # None: no touchdown this step
    capture: 'CaptureEvent | None' = None
    height: float = 10.0                # above the surface, post-step
    vel: np.ndarray = field(default_factory=lambda: np.zeros(3))
    yaw_rate: float = 0.0
    pending_steps: int = 0              # photo requested, not yet taken
    user_action: np.ndarray = field(default_factory=lambda: np.zeros(5))
    assistant_action: np.ndarray = field(default_factory=lambda: np.zeros(7))
    red_on: bool = False
    green_on: bool = False


def compute_reward(ctx, w):
    """Returns (total, breakdown of the twelve raw terms)."""
    t = {}
    if ctx.landing is None:
        t["ls"] = 0.0
    else:
        t["ls"] = -1.0 if ctx.landing else 1.0

    scale = (w.h_t - ctx.height) / w.h_t if ctx.height < w.h_t else 0.0
    t["hvel"] = scale * (ctx.vel[0] ** 2 + ctx.vel[1] ** 2)
    t["vvel"] = scale * ctx.vel[2] ** 2
    t["yvel"] = scale * ctx.yaw_rate ** 2

    if ctx.pending_steps > 0:
        t["it"] = w.growth ** min(ctx.pending_steps, w.pending_cap)
    else:
        t["it"] = 0.0
    if ctx.capture is not None:
        t["is"] = -ctx.capture.ratio if ctx.capture.success else 1.0
        t["ivel"] = ctx.capture.speed2
        t["ia"] = ctx.capture.yaw_rate2
    else:
        t["is"] = 0.0
        t["ivel"] = 0.0
        t["ia"] = 0.0

    d = ctx.assistant_action[:4] - ctx.user_action[:4]
    t["xyz"] = float(np.sqrt(d[0] ** 2 + d[1] ** 2 + d[2] ** 2))
    t["yawd"] = abs(float(d[3]))
    t["red"] = 1.0 if ctx.red_on else 0.0
    t["green"] = 1.0 if ctx.green_on else 0.0

    total = (w.k0 * t["ls"] + w.k1 * t["hvel"] + w.k2 * t["vvel"]
             + w.k3 * t["yvel"] + w.k4 * t["it"] + w.k5 * t["is"]
             + w.k6 * t["ivel"] + w.k7 * t["ia"] + w.k8 * t["xyz"]
             + w.k9 * t["yawd"] + w.k10 * t["red"] + w.k11 * t["green"])
    return float(total), t
