"""Downward-camera rasterizer for the platform world.

Every visible surface is a horizontal plane (floor plus platform tops), so
a full image is a handful of vectorized plane intersections painted in
ascending height order. Depth is axial distance (camera z minus surface
height), uniform across a plane, which the fusion stage exploits.
"""

from dataclasses import dataclass

import numpy as np

FLOOR_GRAY = 0.50
OUTSIDE_GRAY = 0.20
PLATFORM_GRAY = 0.80
MARKER_GRAY = 0.15
MARKER_FRAC = 0.25    # marked-corner patch size relative to the side
MIN_PLANE_DEPTH = 0.02


@dataclass
class Frame:
    gray: np.ndarray    # (H, W) in [0, 1]
    depth: np.ndarray   # (H, W) meters, axial
    seg: np.ndarray     # (H, W) platform-top mask, {0, 1}
    cam_pos: np.ndarray  # (3,) world
    yaw: float


class Renderer:
    """Renders Frames for a rig; pixel-slope grids are precomputed."""

    def __init__(self, rig, arena_radius):
        self.rig = rig
        self.radius = arena_radius
        h, w, f = rig.in_h, rig.in_w, rig.focal
        u = (np.arange(w) + 0.5 - w / 2.0) / f
        v = (np.arange(h) + 0.5 - h / 2.0) / f
        # u axis along body x, v axis along body y (fusion relies on this)
        self.su, self.sv = np.meshgrid(u, v)

    def render(self, platforms, cam_pos, yaw):
        c, s = np.cos(yaw), np.sin(yaw)
        dirx = self.su * c + self.sv * -s
        diry = self.su * s + self.sv * c
        cz = float(cam_pos[2])

        t0 = max(cz, MIN_PLANE_DEPTH)
        wx = cam_pos[0] + dirx * t0
        wy = cam_pos[1] + diry * t0
        inside = wx * wx + wy * wy <= self.radius ** 2
        gray = np.where(inside, FLOOR_GRAY, OUTSIDE_GRAY).astype(np.float32)
        depth = np.full(gray.shape, t0, dtype=np.float32)
        seg = np.zeros(gray.shape, dtype=np.float32)

        for p in sorted(platforms, key=lambda q: q.height):
            t = cz - p.height
            if t <= MIN_PLANE_DEPTH:
                continue
            wx = cam_pos[0] + dirx * t - p.cx
            wy = cam_pos[1] + diry * t - p.cy
            pc, ps = np.cos(p.yaw), np.sin(p.yaw)
            lx = wx * pc + wy * ps
            ly = -wx * ps + wy * pc
            mask = (np.abs(lx) <= p.width / 2.0) \
                & (np.abs(ly) <= p.length / 2.0)
            gray[mask] = PLATFORM_GRAY
            marker = mask & (lx <= -p.width / 2.0 + MARKER_FRAC * p.width) \
                & (ly <= -p.length / 2.0 + MARKER_FRAC * p.length)
            gray[marker] = MARKER_GRAY
            depth[mask] = t
            seg[mask] = 1.0
        return Frame(gray, depth, seg, np.asarray(cam_pos, float).copy(),
                     float(yaw))

    def stereo_positions(self, uav_pos, yaw):
        """Left/right camera centers: +-baseline along body y."""
        ey = np.array([-np.sin(yaw), np.cos(yaw)])
        d = self.rig.baseline
        left = np.array([uav_pos[0] + d * ey[0], uav_pos[1] + d * ey[1],
                         uav_pos[2]])
        right = np.array([uav_pos[0] - d * ey[0], uav_pos[1] - d * ey[1],
                          uav_pos[2]])
        return left, right

    def render_stereo(self, platforms, uav_pos, yaw):
        left, right = self.stereo_positions(uav_pos, yaw)
        return (self.render(platforms, left, yaw),
                self.render(platforms, right, yaw))
