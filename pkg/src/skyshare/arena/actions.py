"""Pilot and assistant actions, and the control blend between them."""

from dataclasses import dataclass

import numpy as np


@dataclass
class UserAction:
    vel: np.ndarray          # (3,) m/s target
    yaw_rate: float          # rad/s target
    photo: bool = False      # picture request (not the shutter)

    def vector(self, dyn):
        """Normalized 5-vector [vx, vy, vz, yaw_rate, photo]."""
        return np.array([
            self.vel[0] / dyn.max_speed,
            self.vel[1] / dyn.max_speed,
            self.vel[2] / dyn.max_vz,
            self.yaw_rate / dyn.max_yaw_rate,
            1.0 if self.photo else 0.0,
        ])

    @classmethod
    def zero(cls):
        return cls(np.zeros(3), 0.0, False)


@dataclass
class AssistantAction:
    vel: np.ndarray          # (3,) m/s
    yaw_rate: float
    photo: bool = False      # this channel fires the shutter
    red: bool = False
    green: bool = False

    def __post_init__(self):
        assert not (self.red and self.green), "lights are mutually exclusive"

    def vector(self, dyn):
        return np.array([
            self.vel[0] / dyn.max_speed,
            self.vel[1] / dyn.max_speed,
            self.vel[2] / dyn.max_vz,
            self.yaw_rate / dyn.max_yaw_rate,
            1.0 if self.photo else 0.0,
            1.0 if self.red else 0.0,
            1.0 if self.green else 0.0,
        ])

    @classmethod
    def from_raw(cls, raw, dyn):
        """raw: 7-vector, continuous in [-1, 1], discrete levels in [0, 1].

        Discrete channels threshold at 0.5; if both lights cross, the
        stronger one wins so the exclusivity invariant holds.
        """
        red = raw[5] > 0.5
        green = raw[6] > 0.5
        if red and green:
            red = raw[5] >= raw[6]
            green = not red
        return cls(
            vel=np.array([raw[0] * dyn.max_speed, raw[1] * dyn.max_speed,
                          raw[2] * dyn.max_vz]),
            yaw_rate=raw[3] * dyn.max_yaw_rate,
            photo=raw[4] > 0.5,
            red=bool(red),
            green=bool(green),
        )

    @classmethod
    def zero(cls):
        return cls(np.zeros(3), 0.0)


@dataclass
class BlendedCommand:
    vel: np.ndarray
    yaw_rate: float
    photo: bool        # shutter fires this step
    red: bool          # displayed to the pilot
    green: bool


def blend_actions(user, assistant):
    """Arithmetic mean of the continuous channels; the assistant owns the
    shutter and the lights."""
    return BlendedCommand(
        vel=(user.vel + assistant.vel) / 2.0,
        yaw_rate=(user.yaw_rate + assistant.yaw_rate) / 2.0,
        photo=assistant.photo,
        red=assistant.red,
        green=assistant.green,
    )
