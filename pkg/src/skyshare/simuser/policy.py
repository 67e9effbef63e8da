"""Simulated pilot: waypoint flying on a drifting goal estimate.

The pilot never sees the true goal. It flies toward an internal estimate
that two corrections move each step: a conformance term that bends the
estimate toward where the assistant is steering (previous-step action
difference, scaled by alpha / k_alpha), and a re-observation term pulling
toward the truth (scaled by beta / k_beta). Stick units over k_alpha give
meters directly; the body-frame difference is rotated into the world
before it shifts the estimate.

Commands are body-frame sticks: +x forward, +y left, +z up, yaw rate ccw.
"""

from dataclasses import dataclass

import numpy as np

from ..arena import UserAction, wrap_angle
from .fsm import LightFsm

STICK_NOISE = 0.15     # at psi = 0; scales with (1 - psi)
MIN_SPEED_FRAC = 0.35  # slowest pilot still moves


@dataclass
class GoalEstimate:
    x: float
    y: float
    yaw: float

    @property
    def xy(self):
        return np.array([self.x, self.y])


def estimate_update(est, goal, assist_sticks, user_sticks, yaw,
                    alpha, beta, k_alpha, k_beta):
    """One goal-estimate step: conformance plus re-observation.

    est, goal: (x, y, yaw) world. Stick vectors are body-frame normalized
    (vx, vy, vz, yaw_rate); vz has no estimate channel to move.
    """
    a = alpha / k_alpha
    b = beta / k_beta
    dx = (assist_sticks[0] - user_sticks[0]) * a
    dy = (assist_sticks[1] - user_sticks[1]) * a
    c, s = np.cos(yaw), np.sin(yaw)
    x = est[0] + (c * dx - s * dy) + b * (goal[0] - est[0])
    y = est[1] + (s * dx + c * dy) + b * (goal[1] - est[1])
    yw = wrap_angle(est[2] + (assist_sticks[3] - user_sticks[3]) * a
                    + b * wrap_angle(goal[2] - est[2]))
    return x, y, yw


class SimUser:
    def __init__(self, params, cfg, dyn, mission_cfg, rng):
        self.p = params
        self.cfg = cfg
        self.dyn = dyn
        self.mc = mission_cfg
        self.rng = rng
        self.fsm = LightFsm(
            cfg.light_n, cfg.light_m,
            down_rate=cfg.patience_down * (1.0 - params.alpha),
            up_rate=cfg.patience_up * params.alpha,
            enabled=params.archetype != "ignore",
        )
        self.estimate = None
        self.task_kind = None
        self.platform = None
        self.cooldown = 0
        self.descending = False
        self.phase = "approach"
        self.prev_action = np.zeros(4)   # executed sticks, for Eq-style update
        self.speed_frac = MIN_SPEED_FRAC + (1.0 - MIN_SPEED_FRAC) \
            * params.phi

    def start_task(self, task_kind, platform):
        self.task_kind = task_kind
        self.platform = platform
        sp = self.cfg.init_pos_sigma * (1.0 - self.p.beta)
        sy = self.cfg.init_yaw_sigma * (1.0 - self.p.beta)
        self.estimate = GoalEstimate(
            platform.cx + self.rng.normal(0.0, sp),
            platform.cy + self.rng.normal(0.0, sp),
            wrap_angle(platform.yaw + self.rng.normal(0.0, sy)),
        )
        self.cooldown = 0
        self.descending = False
        self.phase = "approach"

    def _update_estimate(self, assistant_prev, yaw):
        e = self.estimate
        e.x, e.y, e.yaw = estimate_update(
            (e.x, e.y, e.yaw),
            (self.platform.cx, self.platform.cy, self.platform.yaw),
            assistant_prev[:4], self.prev_action, yaw,
            self.p.alpha, self.p.beta, self.cfg.k_alpha, self.cfg.k_beta)

    def step(self, state, red_disp, green_disp, assistant_prev):
        """One pilot tick. Returns a UserAction (body-frame, m/s).

        assistant_prev: the assistant's previous executed action vector,
        or None when flying solo. Solo flight means the craft did exactly
        what the pilot commanded, so no deviation is perceived and the
        conformance term vanishes.
        """
        green_event = self.fsm.step(red_disp, green_disp)
        if self.estimate is None or state.landed:
            return UserAction.zero()
        if assistant_prev is None:
            assistant_prev = np.concatenate([self.prev_action, [0.0]])
        self._update_estimate(assistant_prev, state.yaw)
        cfg, dyn = self.cfg, self.dyn

        err_w = self.estimate.xy - state.pos[:2]
        c, s = np.cos(state.yaw), np.sin(state.yaw)
        err_body = np.array([c * err_w[0] + s * err_w[1],
                             -s * err_w[0] + c * err_w[1]])
        dist = float(np.hypot(*err_w))
        yaw_err = wrap_angle(self.estimate.yaw - state.yaw)
        speed = float(np.linalg.norm(state.vel))
        positioned = dist < cfg.settle_xy and abs(yaw_err) < cfg.settle_yaw
        calm = speed < cfg.settle_speed

        in_green = self.fsm.state == "green"
        landing = self.task_kind == "landing"
        if landing:
            if self.p.archetype == "hard":
                permission = in_green
            elif self.p.archetype == "soft":
                permission = in_green or positioned
            else:
                permission = positioned
            self.descending = permission
        else:
            self.descending = False

        photo = False
        self.cooldown = max(0, self.cooldown - 1)
        if self.task_kind == "inspection":
            if self.p.archetype == "hard":
                want = green_event or (in_green and self.cooldown == 0)
            elif self.p.archetype == "soft":
                want = green_event or (in_green and self.cooldown == 0) \
                    or (positioned and calm and self.cooldown == 0)
            else:
                want = positioned and calm and self.cooldown == 0
            if want:
                photo = True
                self.cooldown = cfg.request_cooldown

        # sticks, normalized
        sticks = np.zeros(4)
        aligning = abs(yaw_err) > cfg.align_first_rad
        if not aligning:
            sticks[0] = np.clip(cfg.k_pos * err_body[0], -dyn.max_speed,
                                dyn.max_speed) / dyn.max_speed
            sticks[1] = np.clip(cfg.k_pos * err_body[1], -dyn.max_speed,
                                dyn.max_speed) / dyn.max_speed
        sticks[3] = np.clip(cfg.k_yaw * yaw_err, -dyn.max_yaw_rate,
                            dyn.max_yaw_rate) / dyn.max_yaw_rate
        if self.descending:
            sticks[2] = -cfg.descend_rate
            self.phase = "descend"
        else:
            alt = self.mc.inspect_alt if self.task_kind == "inspection" \
                else self.mc.cruise_alt
            sticks[2] = np.clip(cfg.k_pos * (alt - state.pos[2]),
                                -dyn.max_vz, dyn.max_vz) / dyn.max_vz
            self.phase = "position" if positioned else "approach"

        noise = self.rng.normal(0.0, STICK_NOISE * (1.0 - self.p.psi), 4)
        frac = self.speed_frac
        sticks = np.clip(sticks + noise, -frac, frac)
        if self.fsm.state == "red":
            sticks = sticks * self.p.red_scale
        self.prev_action = sticks.copy()

        return UserAction(
            vel=np.array([sticks[0] * dyn.max_speed,
                          sticks[1] * dyn.max_speed,
                          sticks[2] * dyn.max_vz]),
            yaw_rate=sticks[3] * dyn.max_yaw_rate,
            photo=photo,
        )

    def state_block(self):
        """Internal state exposed to the critic and the decoder targets."""
        return {
            "patience": self.fsm.patience,
            "in_red": self.fsm.state == "red",
            "in_green": self.fsm.state == "green",
            "phase": self.phase,
        }
