import dataclasses

import numpy as np
import pytest

from skyshare import render
from skyshare.arena import Platform
from skyshare.config import CmsvaeConfig, RigConfig


def rig_desk():
    return RigConfig()


def test_floor_only_depth_uniform():
    r = render.Renderer(rig_desk(), arena_radius=3.6)
    f = r.render([], np.array([0.0, 0.0, 1.5]), 0.3)
    assert np.all(f.depth == np.float32(1.5))
    assert np.all(f.seg == 0.0)
    assert set(np.unique(f.gray)) <= {np.float32(render.FLOOR_GRAY),
                                      np.float32(render.OUTSIDE_GRAY)}


def test_platform_patch_depth_and_seg():
    r = render.Renderer(rig_desk(), arena_radius=3.6)
    plat = Platform(0.0, 0.0, 0.0, 0.5, 0.5, 0.12)
    f = r.render([plat], np.array([0.0, 0.0, 1.4]), 0.0)
    on = f.seg > 0
    assert on.any()
    assert np.all(f.depth[on] == np.float32(1.4 - 0.12))
    assert np.all(f.depth[~on] == np.float32(1.4))
    # expected pixel size of the platform: side/depth * focal
    expect = (0.5 / (1.4 - 0.12)) * 32.0
    w_px = on.any(axis=0).sum()
    assert abs(w_px - expect) <= 2
    # marked corner must be visible (yaw observability)
    assert (f.gray == np.float32(render.MARKER_GRAY)).any()


def test_marker_breaks_rotational_symmetry():
    r = render.Renderer(rig_desk(), arena_radius=3.6)
    cam = np.array([0.0, 0.0, 1.4])
    a = r.render([Platform(0, 0, 0.0, 0.5, 0.5, 0.12)], cam, 0.0)
    b = r.render([Platform(0, 0, np.pi, 0.5, 0.5, 0.12)], cam, 0.0)
    assert not np.array_equal(a.gray, b.gray)


def test_projection_geometry_known_point():
    # platform offset along body x must appear displaced along image u
    rig = rig_desk()
    r = render.Renderer(rig, arena_radius=3.6)
    plat = Platform(0.6, 0.0, 0.0, 0.3, 0.3, 0.10)
    f = r.render([plat], np.array([0.0, 0.0, 1.5]), 0.0)
    ys, xs = np.nonzero(f.seg)
    u_center = xs.mean()
    # u = su * f + W/2 - 0.5, su = x_off / depth
    expect = 0.6 / (1.5 - 0.10) * rig.focal + rig.in_w / 2.0 - 0.5
    assert abs(u_center - expect) < 1.5
    v_center = ys.mean()
    assert abs(v_center - (rig.in_h / 2.0 - 0.5)) < 1.5


def test_fusion_matches_direct_band_render():
    """Fused mosaic == per-band ground-truth renders away from edges."""
    rig = rig_desk()
    r = render.Renderer(rig, arena_radius=3.6)
    plats = [Platform(0.3, 0.2, 0.4, 0.5, 0.5, 0.12),
             Platform(-0.8, -0.5, -0.7, 0.6, 0.6, 0.2)]
    uav = np.array([0.1, -0.1, 1.5])
    yaw = 0.35
    left, right = r.render_stereo(plats, uav, yaw)
    fused = render.fuse_views(left, right, rig)
    assert fused.gray.shape == (rig.out_h, rig.out_w)

    ref_rig = dataclasses.replace(rig, in_h=rig.fused_h)
    ref_r = render.Renderer(ref_rig, arena_radius=3.6)
    ey = np.array([-np.sin(yaw), np.cos(yaw)])
    mismatch = 0
    total = 0
    for (r0, r1), off in zip(fused.band_rows, fused.band_offsets):
        cam = np.array([uav[0] + off * ey[0], uav[1] + off * ey[1], uav[2]])
        ref = ref_r.render(plats, cam, yaw)
        band_ref = ref.gray[r0:r1]
        band_fused = fused.gray[r0:r1]   # desk: out == full resolution
        ok = fused.valid[r0:r1]
        total += ok.sum()
        mismatch += (np.abs(band_ref - band_fused)[ok] > 1e-6).sum()
    assert total > 0.9 * fused.gray.size   # nearly all pixels resolved
    assert mismatch / total < 0.03         # only occlusion slivers differ


def test_fusion_floor_scene_fully_valid_and_exact():
    rig = rig_desk()
    r = render.Renderer(rig, arena_radius=3.6)
    left, right = r.render_stereo([], np.array([0.0, 0.0, 1.5]), 0.0)
    fused = render.fuse_views(left, right, rig)
    assert fused.valid.all()
    assert np.all(fused.depth == np.float32(1.5))
    assert fused.platform_pixels == 0


def test_corner_flags_over_platform():
    rig = rig_desk()
    r = render.Renderer(rig, arena_radius=3.6)
    plat = Platform(0.0, 0.0, 0.2, 0.5, 0.5, 0.12)
    left, right = r.render_stereo([plat], np.array([0.0, 0.0, 1.3]), 0.2)
    fused = render.fuse_views(left, right, rig)
    assert fused.corner_flags(plat).all()
    assert fused.platform_pixels > 50

    far = Platform(2.2, 0.0, 0.0, 0.5, 0.5, 0.12)
    left, right = r.render_stereo([far], np.array([0.0, 0.0, 1.3]), 0.0)
    fused2 = render.fuse_views(left, right, rig)
    assert not fused2.corner_flags(far).any()


def test_project_out_tracks_platform_center():
    rig = rig_desk()
    r = render.Renderer(rig, arena_radius=3.6)
    plat = Platform(0.15, -0.1, 0.0, 0.5, 0.5, 0.12)
    left, right = r.render_stereo([plat], np.array([0.0, 0.0, 1.4]), 0.0)
    fused = render.fuse_views(left, right, rig)
    uv = fused.project_out((plat.cx, plat.cy, plat.height))
    assert uv is not None
    u, v = uv
    ys, xs = np.nonzero(fused.seg)
    assert abs(u - xs.mean()) < 2.5 and abs(v - ys.mean()) < 2.5


def test_synth_hifi_properties():
    rig = rig_desk()
    cfg = CmsvaeConfig()
    r = render.Renderer(rig, arena_radius=3.6)
    f = r.render([Platform(0, 0, 0, 0.5, 0.5, 0.12)],
                 np.array([0.0, 0.0, 1.4]), 0.0)
    h1 = render.synth_hifi(f, cfg, np.random.default_rng(3))
    h2 = render.synth_hifi(f, cfg, np.random.default_rng(3))
    assert np.array_equal(h1.gray, h2.gray)        # seeded determinism
    assert np.array_equal(h1.seg, f.seg)           # labels untouched
    assert h1.gray.min() >= 0.0 and h1.gray.max() <= 1.0
    assert not np.array_equal(h1.gray, f.gray)
    drop = (h1.depth == 0).mean()
    assert 0.005 < drop < 0.05
    h3 = render.synth_hifi(f, cfg, np.random.default_rng(4))
    assert not np.array_equal(h1.gray, h3.gray)
