"""Cross-modal stereo VAE: one shared feature tower applied to every
(gray, depth) view, a Gaussian latent, and three deconvolution decoders
reconstructing the fused gray/depth/segmentation planes.

The tower is Siamese four ways per sample (two fidelities x two cameras);
callers stack those applications into one batch so weight gradients
accumulate in a single backward pass.
"""

import numpy as np

from ..nn import Conv2d, Dense, Module, Upsample2x


class FeatureTower(Module):
    def __init__(self, in_h, in_w, feat_dim, rng, base_ch=8):
        c1, c2, c3, c4 = base_ch, base_ch * 2, base_ch * 2, base_ch * 3
        self.conv1 = Conv2d(2, c1, 4, stride=2, pad=1, act="relu", rng=rng)
        self.conv2 = Conv2d(c1, c2, 4, stride=2, pad=1, act="relu", rng=rng)
        self.conv3 = Conv2d(c2, c3, 3, stride=2, pad=1, act="relu", rng=rng)
        self.conv4 = Conv2d(c3, c4, 3, stride=2, pad=1, act="relu", rng=rng)
        h, w = in_h, in_w
        for k, s, p in ((4, 2, 1), (4, 2, 1), (3, 2, 1), (3, 2, 1)):
            h = (h + 2 * p - k) // s + 1
            w = (w + 2 * p - k) // s + 1
        self.flat_dim = c4 * h * w
        self.proj = Dense(self.flat_dim, feat_dim, act="relu", rng=rng)

    def forward(self, x):
        caches = []
        for conv in (self.conv1, self.conv2, self.conv3, self.conv4):
            x, c = conv.forward(x)
            caches.append(c)
        shape = x.shape
        flat = x.reshape(x.shape[0], -1)
        out, cp = self.proj.forward(flat)
        return out, (caches, shape, cp)

    def backward(self, dout, cache):
        caches, shape, cp = cache
        dx = self.proj.backward(dout, cp).reshape(shape)
        for conv, c in zip((self.conv4, self.conv3, self.conv2, self.conv1),
                           reversed(caches)):
            dx = conv.backward(dx, c)
        return dx


class GaussHead(Module):
    """Stereo features -> (mu, logvar)."""

    def __init__(self, feat_dim, latent, rng):
        self.d1 = Dense(feat_dim * 2, 128, act="relu", rng=rng)
        self.d2 = Dense(128, latent * 2, act="linear", rng=rng)
        self.latent = latent

    def forward(self, feats):
        h, c1 = self.d1.forward(feats)
        out, c2 = self.d2.forward(h)
        return out[:, :self.latent], out[:, self.latent:], (c1, c2)

    def backward(self, dmu, dlogvar, cache):
        c1, c2 = cache
        dout = np.concatenate([dmu, dlogvar], axis=1)
        return self.d1.backward(self.d2.backward(dout, c2), c1)


class PlaneDecoder(Module):
    """Latent -> one (out_h, out_w) plane through four 2x upsample stages.

    head: "sigmoid" (gray), "softplus" (depth), "linear" (seg logits).
    """

    def __init__(self, latent, out_h, out_w, rng, head="linear", base_ch=8):
        assert out_h % 16 == 0 and out_w % 16 == 0
        self.h0, self.w0 = out_h // 16, out_w // 16
        self.c0 = base_ch * 3
        self.fc = Dense(latent, self.c0 * self.h0 * self.w0, act="relu",
                        rng=rng)
        self.up = Upsample2x()
        self.conv1 = Conv2d(self.c0, base_ch * 2, 3, pad=1, act="relu",
                            rng=rng)
        self.conv2 = Conv2d(base_ch * 2, base_ch + base_ch // 2, 3, pad=1,
                            act="relu", rng=rng)
        self.conv3 = Conv2d(base_ch + base_ch // 2, base_ch, 3, pad=1,
                            act="relu", rng=rng)
        self.conv4 = Conv2d(base_ch, 1, 3, pad=1, act=head, rng=rng)

    def forward(self, z):
        x, cf = self.fc.forward(z)
        x = x.reshape(z.shape[0], self.c0, self.h0, self.w0)
        caches = [cf]
        for conv in (self.conv1, self.conv2, self.conv3, self.conv4):
            x, cu = self.up.forward(x)
            x, cc = conv.forward(x)
            caches.append((cu, cc))
        return x, caches

    def backward(self, dout, caches):
        dx = dout
        for conv, (cu, cc) in zip(
                (self.conv4, self.conv3, self.conv2, self.conv1),
                reversed(caches[1:])):
            dx = self.up.backward(conv.backward(dx, cc), cu)
        return self.fc.backward(dx.reshape(dx.shape[0], -1), caches[0])


class CmsvaeModel(Module):
    def __init__(self, cfg, rig, rng):
        self.tower = FeatureTower(rig.in_h, rig.in_w, cfg.feat_dim, rng,
                                  cfg.base_ch)
        self.head = GaussHead(cfg.feat_dim, cfg.latent, rng)
        self.dec_gray = PlaneDecoder(cfg.latent, rig.out_h, rig.out_w, rng,
                                     head="sigmoid", base_ch=cfg.base_ch)
        self.dec_depth = PlaneDecoder(cfg.latent, rig.out_h, rig.out_w, rng,
                                      head="softplus", base_ch=cfg.base_ch)
        self.dec_seg = PlaneDecoder(cfg.latent, rig.out_h, rig.out_w, rng,
                                    head="linear", base_ch=cfg.base_ch)
        self.latent = cfg.latent

    def encode(self, left, right):
        """Stereo (B, 2, H, W) pairs -> (mu, logvar, cache)."""
        b = left.shape[0]
        stack = np.concatenate([left, right], axis=0)
        feats, tc = self.tower.forward(stack)
        pair = np.concatenate([feats[:b], feats[b:]], axis=1)
        mu, logvar, hc = self.head.forward(pair)
        return mu, logvar, (tc, hc, b)

    def encode_backward(self, dmu, dlogvar, cache):
        tc, hc, b = cache
        dpair = self.head.backward(dmu, dlogvar, hc)
        f = dpair.shape[1] // 2
        dfeats = np.concatenate([dpair[:, :f], dpair[:, f:]], axis=0)
        self.tower.backward(dfeats, tc)

    def encode_mu(self, left, right):
        """Inference-only latent means for the policy."""
        mu, _, _ = self.encode(left, right)
        return mu
