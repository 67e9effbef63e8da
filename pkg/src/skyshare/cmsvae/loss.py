"""Composite training objective.

Both fidelity pairs go through one stacked tower pass; both latent
samples (z from hifi, z-bar from lofi) are decoded against the same fused
lofi targets. Reconstruction terms average the two decode paths, the KL
term averages the two posteriors, and the similarity term closes the gap
between the two latent means. Pixels the fusion marked invalid are
excluded from every reconstruction term.
"""

import numpy as np

from ..nn import sigmoid
from ..nn.losses import cosine_gap, kl_diag_gauss


def masked_mse(pred, target, mask):
    n = max(mask.sum(), 1.0)
    d = (pred - target) * mask
    return float(np.sum(d * d) / n), (2.0 / n) * d


def masked_bce_logits(logits, target, mask):
    n = max(mask.sum(), 1.0)
    raw = np.maximum(logits, 0.0) - logits * target \
        + np.log1p(np.exp(-np.abs(logits)))
    return float(np.sum(raw * mask) / n), (sigmoid(logits) - target) * mask / n


def cmsvae_step(model, batch, cfg, rng):
    """Forward + backward; grads land in the model. Returns loss parts."""
    hifi_l, hifi_r, lofi_l, lofi_r = (batch[k] for k in
                                      ("hifi_l", "hifi_r", "lofi_l",
                                       "lofi_r"))
    tg, td, ts, tm = (batch[k] for k in
                      ("target_gray", "target_depth", "target_seg",
                       "target_valid"))
    b = hifi_l.shape[0]

    mu_h, lv_h, cache_h = model.encode(hifi_l, hifi_r)
    mu_l, lv_l, cache_l = model.encode(lofi_l, lofi_r)

    eps_h = rng.standard_normal(mu_h.shape).astype(mu_h.dtype)
    eps_l = rng.standard_normal(mu_l.shape).astype(mu_l.dtype)
    sd_h = np.exp(0.5 * lv_h)
    sd_l = np.exp(0.5 * lv_l)
    z = np.concatenate([mu_h + sd_h * eps_h, mu_l + sd_l * eps_l], axis=0)

    tg2 = np.concatenate([tg, tg], axis=0)
    td2 = np.concatenate([td, td], axis=0)
    ts2 = np.concatenate([ts, ts], axis=0)
    tm2 = np.concatenate([tm, tm], axis=0)

    pg, cg = model.dec_gray.forward(z)
    pd, cd = model.dec_depth.forward(z)
    ps, cs = model.dec_seg.forward(z)

    # both decode paths in one batch: masked means already average them
    l_gray, dg = masked_mse(pg, tg2, tm2)
    l_depth, dd = masked_mse(pd, td2, tm2)
    l_seg, dseg = masked_bce_logits(ps, ts2, tm2)
    kl_h, dmu_kh, dlv_kh = kl_diag_gauss(mu_h, lv_h)
    kl_l, dmu_kl, dlv_kl = kl_diag_gauss(mu_l, lv_l)
    l_kl = 0.5 * (kl_h + kl_l)
    l_sim, dmu_sh, dmu_sl = cosine_gap(mu_h, mu_l)

    total = (cfg.w_gray * l_gray + cfg.w_depth * l_depth
             + cfg.w_seg * l_seg + cfg.w_kl * l_kl + cfg.w_sim * l_sim)

    dz = model.dec_gray.backward(cfg.w_gray * dg, cg)
    dz += model.dec_depth.backward(cfg.w_depth * dd, cd)
    dz += model.dec_seg.backward(cfg.w_seg * dseg, cs)
    dz_h, dz_l = dz[:b], dz[b:]

    dmu_h = dz_h + cfg.w_kl * 0.5 * dmu_kh + cfg.w_sim * dmu_sh
    dlv_h = dz_h * 0.5 * sd_h * eps_h + cfg.w_kl * 0.5 * dlv_kh
    dmu_l = dz_l + cfg.w_kl * 0.5 * dmu_kl + cfg.w_sim * dmu_sl
    dlv_l = dz_l * 0.5 * sd_l * eps_l + cfg.w_kl * 0.5 * dlv_kl

    model.encode_backward(dmu_h, dlv_h, cache_h)
    model.encode_backward(dmu_l, dlv_l, cache_l)

    return total, {"gray": l_gray, "depth": l_depth, "seg": l_seg,
                   "kl": l_kl, "sim": l_sim, "total": total}
