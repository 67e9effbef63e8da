"""Synthetic high-fidelity imagery: the clean render plus sensor-like
corruption. Regions (quantized depth x segmentation) get a shared
intensity shift, pixels get white noise, depth gets multiplicative
speckle and dropout."""

import numpy as np

from .raster import Frame


def synth_hifi(frame, cfg, rng):
    gray = frame.gray.copy()
    depth = frame.depth.copy()

    # region key: same surface patch shifts together
    region = (np.round(frame.depth / 0.25).astype(np.int64) * 2
              + frame.seg.astype(np.int64))
    ids, inv = np.unique(region, return_inverse=True)
    shifts = rng.uniform(-cfg.region_jitter, cfg.region_jitter, len(ids))
    gray += shifts[inv].reshape(gray.shape).astype(np.float32)
    gray += rng.normal(0.0, cfg.pixel_sigma, gray.shape).astype(np.float32)
    np.clip(gray, 0.0, 1.0, out=gray)

    depth *= (1.0 + rng.normal(0.0, cfg.depth_speckle,
                               depth.shape)).astype(np.float32)
    drop = rng.uniform(size=depth.shape) < cfg.dropout_p
    depth[drop] = 0.0
    return Frame(gray, depth, frame.seg.copy(), frame.cam_pos.copy(),
                 frame.yaw)
