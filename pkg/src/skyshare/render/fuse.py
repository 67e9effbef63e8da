"""Stereo-pair fusion into a single wide downward view.

The fused image is assembled as horizontal row bands. Band i is rendered
from a virtual camera interpolated along the stereo baseline (body y);
the image v axis is aligned with body y, so each virtual camera mostly
looks at world the nearer source camera saw. Per-pixel correspondence
into a source frame needs the surface height, which is solved by fixed-
point iteration on the source depth map: exact after one step on a flat
region, convergent at step edges. Pixels no source saw get validity 0.
"""

from dataclasses import dataclass, field

import numpy as np

from .raster import MIN_PLANE_DEPTH

REFINE_ITERS = 3


@dataclass
class FusedFrame:
    gray: np.ndarray     # (out_h, out_w)
    depth: np.ndarray
    seg: np.ndarray
    valid: np.ndarray
    mid_pos: np.ndarray  # (3,) virtual rig center
    yaw: float
    focal: float
    full_w: int
    full_h: int
    out_w: int
    out_h: int
    band_rows: list = field(default_factory=list)     # (r0, r1) per band
    band_offsets: list = field(default_factory=list)  # body-y cam offsets

    @property
    def platform_pixels(self):
        return int(self.seg.sum())

    @property
    def platform_ratio(self):
        return float(self.seg.sum() / self.seg.size)

    def project(self, point):
        """World point -> full-res fused (u, v), or None if outside.

        Elevated points can fall into the parallax gap between adjacent
        band cameras; those are accepted against the nearest band when the
        miss is within one inter-band parallax step (the mosaic shows the
        surrounding surface on both sides of the seam).
        """
        t = self.mid_pos[2] - point[2]
        if t <= MIN_PLANE_DEPTH:
            return None
        ex = np.array([np.cos(self.yaw), np.sin(self.yaw)])
        ey = np.array([-np.sin(self.yaw), np.cos(self.yaw)])
        offs = self.band_offsets
        slack = 0.0
        if len(offs) > 1:
            slack = abs(offs[1] - offs[0]) * self.focal / t
        best = None
        best_miss = np.inf
        for (r0, r1), off in zip(self.band_rows, offs):
            cam = self.mid_pos[:2] + off * ey
            dx = point[0] - cam[0]
            dy = point[1] - cam[1]
            u = (dx * ex[0] + dy * ex[1]) / t * self.focal \
                + self.full_w / 2.0 - 0.5
            v = (dx * ey[0] + dy * ey[1]) / t * self.focal \
                + self.full_h / 2.0 - 0.5
            if not (-0.5 <= u < self.full_w - 0.5):
                continue
            if r0 - 0.5 <= v < r1 - 0.5:
                return float(u), float(v)
            miss = max(r0 - 0.5 - v, v - (r1 - 0.5))
            if miss < best_miss:
                best_miss = miss
                best = (float(u), float(np.clip(v, r0 - 0.5, r1 - 0.5)))
        if best is not None and best_miss <= slack \
                and -0.5 <= best[1] < self.full_h - 0.5:
            return best
        return None

    def project_out(self, point):
        """World point -> output-resolution (u, v), or None."""
        uv = self.project(point)
        if uv is None:
            return None
        return (uv[0] * self.out_w / self.full_w,
                uv[1] * self.out_h / self.full_h)

    def corner_flags(self, platform):
        z = platform.height
        return np.array([self.project((c[0], c[1], z)) is not None
                         for c in platform.corners()])


def _nearest_resample(arr, out_h, out_w):
    h, w = arr.shape
    iy = np.minimum((np.arange(out_h) + 0.5) * h / out_h, h - 1).astype(int)
    ix = np.minimum((np.arange(out_w) + 0.5) * w / out_w, w - 1).astype(int)
    return arr[np.ix_(iy, ix)]


def fuse_views(left, right, rig):
    assert abs(left.yaw - right.yaw) < 1e-9, "stereo pair must share yaw"
    yaw = left.yaw
    w, hf, f = rig.in_w, rig.fused_h, rig.focal
    in_h = rig.in_h
    mid = (left.cam_pos + right.cam_pos) / 2.0
    cz = float(mid[2])
    ex = np.array([np.cos(yaw), np.sin(yaw)])
    ey = np.array([-np.sin(yaw), np.cos(yaw)])
    d = rig.baseline

    gray = np.zeros((hf, w), dtype=np.float32)
    depth = np.zeros((hf, w), dtype=np.float32)
    seg = np.zeros((hf, w), dtype=np.float32)
    valid = np.zeros((hf, w), dtype=bool)

    su_row = (np.arange(w) + 0.5 - w / 2.0) / f
    edges = np.linspace(0, hf, rig.n_mid + 1).astype(int)
    band_rows, band_offsets = [], []

    for i in range(rig.n_mid):
        r0, r1 = int(edges[i]), int(edges[i + 1])
        if r0 == r1:
            continue
        center = (r0 + r1) / 2.0
        off = d * (2.0 * center / hf - 1.0)  # -d at top rows, +d at bottom
        band_rows.append((r0, r1))
        band_offsets.append(off)
        cam = mid[:2] + off * ey

        sv_col = (np.arange(r0, r1) + 0.5 - hf / 2.0)[:, None] / f
        su = su_row[None, :]
        dirx = su * ex[0] + sv_col * ey[0]
        diry = su * ex[1] + sv_col * ey[1]

        pref = left if abs(off - d) <= abs(off + d) else right
        remaining = np.ones(dirx.shape, dtype=bool)
        for src in (pref, right if pref is left else left):
            if not remaining.any():
                break
            h_est = np.zeros(dirx.shape, dtype=np.float64)
            ui = vi = None
            good = None
            for _ in range(REFINE_ITERS):
                t = np.maximum(cz - h_est, MIN_PLANE_DEPTH)
                px = cam[0] + dirx * t - src.cam_pos[0]
                py = cam[1] + diry * t - src.cam_pos[1]
                us = (px * ex[0] + py * ex[1]) / t * f + w / 2.0 - 0.5
                vs = (px * ey[0] + py * ey[1]) / t * f + in_h / 2.0 - 0.5
                ui = np.rint(us).astype(int)
                vi = np.rint(vs).astype(int)
                good = (ui >= 0) & (ui < w) & (vi >= 0) & (vi < in_h)
                uic = np.clip(ui, 0, w - 1)
                vic = np.clip(vi, 0, in_h - 1)
                t_samp = src.depth[vic, uic]
                good &= t_samp > 0
                h_est = np.where(good, cz - t_samp, h_est)
            take = remaining & good
            uic = np.clip(ui, 0, w - 1)
            vic = np.clip(vi, 0, in_h - 1)
            rows = slice(r0, r1)
            gray[rows][take] = src.gray[vic, uic][take]
            seg[rows][take] = src.seg[vic, uic][take]
            depth[rows][take] = np.maximum(
                cz - h_est, MIN_PLANE_DEPTH)[take].astype(np.float32)
            valid[rows][take] = True
            remaining &= ~take

    out = FusedFrame(
        gray=_nearest_resample(gray, rig.out_h, rig.out_w),
        depth=_nearest_resample(depth, rig.out_h, rig.out_w),
        seg=_nearest_resample(seg, rig.out_h, rig.out_w),
        valid=_nearest_resample(valid, rig.out_h, rig.out_w),
        mid_pos=mid.copy(), yaw=yaw, focal=f,
        full_w=w, full_h=hf, out_w=rig.out_w, out_h=rig.out_h,
        band_rows=band_rows, band_offsets=band_offsets,
    )
    return out
