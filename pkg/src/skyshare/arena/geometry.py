"""Arena layout: circular floor with raised rectangular platforms."""

from dataclasses import dataclass

import numpy as np


def wrap_angle(a):
    return (a + np.pi) % (2.0 * np.pi) - np.pi


def rot2d(yaw):
    c, s = np.cos(yaw), np.sin(yaw)
    return np.array([[c, -s], [s, c]])


@dataclass
class Platform:
    cx: float
    cy: float
    yaw: float
    width: float    # extent along platform x
    length: float   # extent along platform y
    height: float   # top face above the floor

    @property
    def center(self):
        return np.array([self.cx, self.cy])

    def corners(self):
        """Top-face corners, world XY. Index 0 is the marked corner."""
        hw, hl = self.width / 2.0, self.length / 2.0
        local = np.array([[-hw, -hl], [hw, -hl], [hw, hl], [-hw, hl]])
        return local @ rot2d(self.yaw).T + self.center

    def contains(self, pts):
        """pts (N, 2) world XY -> bool mask of points over the top face."""
        local = (np.atleast_2d(pts) - self.center) @ rot2d(self.yaw)
        return (np.abs(local[:, 0]) <= self.width / 2.0 + 1e-12) \
            & (np.abs(local[:, 1]) <= self.length / 2.0 + 1e-12)

    def to_dict(self):
        return {"cx": self.cx, "cy": self.cy, "yaw": self.yaw,
                "width": self.width, "length": self.length,
                "height": self.height}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def surface_height_at(platforms, pts):
    """Highest surface under each XY point (floor is 0)."""
    pts = np.atleast_2d(pts)
    h = np.zeros(len(pts))
    for p in platforms:
        mask = p.contains(pts)
        h[mask] = np.maximum(h[mask], p.height)
    return h


def generate_arena(cfg, rng):
    """Rejection-sample non-overlapping platforms inside the arena disk."""
    platforms = []
    for _ in range(cfg.platform_count):
        for attempt in range(400):
            side = rng.uniform(*cfg.width_range)
            height = rng.uniform(*cfg.height_range)
            half_diag = side * np.sqrt(2.0) / 2.0
            r = (cfg.radius - half_diag - 0.1) * np.sqrt(rng.uniform())
            ang = rng.uniform(-np.pi, np.pi)
            cx, cy = r * np.cos(ang), r * np.sin(ang)
            yaw = rng.uniform(-np.pi, np.pi)
            if all(np.hypot(cx - p.cx, cy - p.cy) >= cfg.min_spacing
                   for p in platforms):
                platforms.append(Platform(cx, cy, yaw, side, side, height))
                break
        else:
            raise RuntimeError("arena generation failed: spacing too tight")
    return platforms
