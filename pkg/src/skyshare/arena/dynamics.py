"""First-order velocity-tracking point dynamics with ground effect.

Velocity relaxes toward the commanded target with the exact exponential
step, so the discretization is stable for any dt. A clipped Gaussian
disturbance is added to the command itself; its scale ramps up as the
vehicle descends into the ground-effect band.
"""

from dataclasses import dataclass, field

import numpy as np

from .geometry import surface_height_at, wrap_angle


@dataclass
class UavState:
    pos: np.ndarray
    yaw: float
    vel: np.ndarray = field(default_factory=lambda: np.zeros(3))
    yaw_rate: float = 0.0
    landed: bool = False
    leg_contact: np.ndarray = field(
        default_factory=lambda: np.zeros(4, dtype=bool))

    def copy(self):
        return UavState(self.pos.copy(), self.yaw, self.vel.copy(),
                        self.yaw_rate, self.landed, self.leg_contact.copy())


def leg_points(pos_xy, yaw, leg_half):
    local = np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]]) * leg_half
    c, s = np.cos(yaw), np.sin(yaw)
    rot = np.array([[c, -s], [s, c]])
    return local @ rot.T + pos_xy


def height_above_surface(state, platforms):
    return state.pos[2] - surface_height_at(platforms, state.pos[:2])[0]


def step_dynamics(state, cmd_vel, cmd_yaw_rate, dyn, arena_radius,
                  platforms, rng):
    """Advance one step. Returns (new_state, touchdown).

    cmd_vel is body-frame (+x forward, +y left, +z up); the disturbance
    and the velocity state are world-frame.
    """
    if state.landed:
        return state.copy(), False

    c, s = np.cos(state.yaw), np.sin(state.yaw)
    cmd_vel = np.array([c * cmd_vel[0] - s * cmd_vel[1],
                        s * cmd_vel[0] + c * cmd_vel[1],
                        cmd_vel[2]])
    h = height_above_surface(state, platforms)
    if h < dyn.ground_band:
        sig = dyn.ground_sigma * max(0.0, (dyn.ground_band - h)
                                     / dyn.ground_band)
    else:
        sig = 0.0
    noise = np.clip(rng.standard_normal(4), -dyn.noise_clip, dyn.noise_clip)
    cmd_vel = cmd_vel + noise[:3] * sig
    cmd_yaw_rate = cmd_yaw_rate + noise[3] * sig * dyn.yaw_noise_scale

    a = np.exp(-dyn.dt / dyn.tau_v)
    vel = cmd_vel + (state.vel - cmd_vel) * a
    yaw_rate = cmd_yaw_rate + (state.yaw_rate - cmd_yaw_rate) * a
    pos = state.pos + vel * dyn.dt
    yaw = wrap_angle(state.yaw + yaw_rate * dyn.dt)

    # arena bounds: slide along the wall, cap at the ceiling
    r = np.hypot(pos[0], pos[1])
    if r > arena_radius:
        pos[:2] *= arena_radius / r
        er = pos[:2] / arena_radius
        v_out = vel[:2] @ er
        if v_out > 0:
            vel[:2] -= v_out * er
    if pos[2] > dyn.ceiling:
        pos[2] = dyn.ceiling
        vel[2] = min(vel[2], 0.0)

    new = UavState(pos, yaw, vel, yaw_rate)
    legs = leg_points(pos[:2], yaw, dyn.leg_half)
    leg_h = surface_height_at(platforms, legs)
    support = max(leg_h.max(), 0.0)
    touchdown = False
    if pos[2] <= support + 1e-9:
        if vel[2] <= 0.05:
            new.pos[2] = support
            new.vel[:] = 0.0
            new.yaw_rate = 0.0
            new.landed = True
            new.leg_contact = leg_h >= support - 1e-9
            touchdown = True
        else:
            new.pos[2] = support  # climbing over an edge: slide on top
    return new, touchdown
