"""Explicit-gradient layers on numpy.

Every layer owns `params` and matching `grads` dicts. forward() returns
(output, cache); backward(dout, cache) accumulates into grads and returns
the input gradient. No autodiff: gradients here are hand-derived, and the
test suite checks them against central finite differences in float64.
"""

import copy

import numpy as np


def _act_forward(name, z):
    if name == "linear":
        return z
    if name == "relu":
        return np.maximum(z, 0.0)
    if name == "tanh":
        return np.tanh(z)
    if name == "sigmoid":
        return sigmoid(z)
    if name == "softplus":
        # stable: log(1+e^z) = max(z,0) + log1p(e^{-|z|})
        return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))
    raise ValueError(f"unknown activation {name!r}")


def _act_backward(name, z, y, dy):
    if name == "linear":
        return dy
    if name == "relu":
        return dy * (z > 0)
    if name == "tanh":
        return dy * (1.0 - y * y)
    if name == "sigmoid":
        return dy * y * (1.0 - y)
    if name == "softplus":
        return dy * sigmoid(z)
    raise ValueError(f"unknown activation {name!r}")


def sigmoid(z):
    # piecewise form avoids overflow in exp for large |z|
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


class Layer:
    def __init__(self, dtype=np.float32):
        self.dtype = np.dtype(dtype)
        self.params = {}
        self.grads = {}

    def add_param(self, name, value):
        self.params[name] = np.ascontiguousarray(value, dtype=self.dtype)
        self.grads[name] = np.zeros_like(self.params[name])

    def zero_grads(self):
        for g in self.grads.values():
            g[...] = 0.0

    def astype(self, dtype):
        self.dtype = np.dtype(dtype)
        for k in self.params:
            self.params[k] = self.params[k].astype(self.dtype)
            self.grads[k] = self.grads[k].astype(self.dtype)
        return self


class Dense(Layer):
    """y = act(x @ w + b), x of shape (B, in_dim)."""

    def __init__(self, in_dim, out_dim, act="linear", rng=None, dtype=np.float32):
        super().__init__(dtype)
        self.in_dim, self.out_dim, self.act = in_dim, out_dim, act
        rng = rng or np.random.default_rng(0)
        if act == "relu":
            scale = np.sqrt(2.0 / in_dim)
        else:
            scale = np.sqrt(1.0 / in_dim)
        self.add_param("w", rng.normal(0.0, scale, (in_dim, out_dim)))
        self.add_param("b", np.zeros(out_dim))

    def forward(self, x):
        z = x @ self.params["w"] + self.params["b"]
        y = _act_forward(self.act, z)
        return y, (x, z, y)

    def backward(self, dy, cache):
        x, z, y = cache
        dz = _act_backward(self.act, z, y, dy)
        self.grads["w"] += x.T @ dz
        self.grads["b"] += dz.sum(axis=0)
        return dz @ self.params["w"].T


class Conv2d(Layer):
    """NCHW convolution via kernel-position accumulation. Small kernels only."""

    def __init__(self, in_ch, out_ch, ksize, stride=1, pad=0, act="linear",
                 rng=None, dtype=np.float32):
        super().__init__(dtype)
        self.in_ch, self.out_ch = in_ch, out_ch
        self.k, self.s, self.p, self.act = ksize, stride, pad, act
        rng = rng or np.random.default_rng(0)
        fan_in = in_ch * ksize * ksize
        scale = np.sqrt((2.0 if act == "relu" else 1.0) / fan_in)
        self.add_param("w", rng.normal(0.0, scale, (fan_in, out_ch)))
        self.add_param("b", np.zeros(out_ch))

    def _cols(self, xp, oh, ow):
        b, c, _, _ = xp.shape
        k, s = self.k, self.s
        cols = np.empty((b, oh, ow, c, k, k), dtype=xp.dtype)
        for kh in range(k):
            for kw in range(k):
                cols[:, :, :, :, kh, kw] = xp[
                    :, :, kh:kh + s * oh:s, kw:kw + s * ow:s].transpose(0, 2, 3, 1)
        return cols.reshape(b, oh * ow, c * k * k)

    def forward(self, x):
        b, c, h, w = x.shape
        k, s, p = self.k, self.s, self.p
        oh = (h + 2 * p - k) // s + 1
        ow = (w + 2 * p - k) // s + 1
        xp = np.pad(x, ((0, 0), (0, 0), (p, p), (p, p))) if p else x
        cols = self._cols(xp, oh, ow)
        z = cols @ self.params["w"] + self.params["b"]
        y = _act_forward(self.act, z)
        out = y.reshape(b, oh, ow, self.out_ch).transpose(0, 3, 1, 2)
        return out, (x.shape, xp.shape, cols, z, y, oh, ow)

    def backward(self, dout, cache):
        x_shape, xp_shape, cols, z, y, oh, ow = cache
        b = x_shape[0]
        k, s, p = self.k, self.s, self.p
        dy = dout.transpose(0, 2, 3, 1).reshape(b, oh * ow, self.out_ch)
        dz = _act_backward(self.act, z, y, dy)
        flat_cols = cols.reshape(b * oh * ow, -1)
        flat_dz = dz.reshape(b * oh * ow, self.out_ch)
        self.grads["w"] += flat_cols.T @ flat_dz
        self.grads["b"] += flat_dz.sum(axis=0)
        dcols = (flat_dz @ self.params["w"].T).reshape(
            b, oh, ow, self.in_ch, k, k)
        dxp = np.zeros(xp_shape, dtype=dout.dtype)
        for kh in range(k):
            for kw in range(k):
                dxp[:, :, kh:kh + s * oh:s, kw:kw + s * ow:s] += \
                    dcols[:, :, :, :, kh, kw].transpose(0, 3, 1, 2)
        if p:
            return dxp[:, :, p:-p, p:-p]
        return dxp


class Upsample2x(Layer):
    """Nearest-neighbor 2x upsampling, NCHW. No parameters."""

    def forward(self, x):
        return x.repeat(2, axis=2).repeat(2, axis=3), x.shape

    def backward(self, dy, cache):
        b, c, h, w = cache
        return dy.reshape(b, c, h, 2, w, 2).sum(axis=(3, 5))


class LstmCell(Layer):
    """Single-layer LSTM, gate order (i, f, g, o).

    c' = f*c + i*g, h' = o*tanh(c'). forward_seq runs a whole (T, B, in)
    window from zero state; an optional (T, B) validity mask zeroes the
    state after invalid rows, so a zero-left-padded window behaves exactly
    like starting at the first valid row.
    """

    def __init__(self, in_dim, hidden, rng=None, dtype=np.float32):
        super().__init__(dtype)
        self.in_dim, self.hidden = in_dim, hidden
        rng = rng or np.random.default_rng(0)
        sx = np.sqrt(1.0 / in_dim)
        sh = np.sqrt(1.0 / hidden)
        self.add_param("wx", rng.normal(0.0, sx, (in_dim, 4 * hidden)))
        self.add_param("wh", rng.normal(0.0, sh, (hidden, 4 * hidden)))
        b = np.zeros(4 * hidden)
        b[hidden:2 * hidden] = 1.0  # forget-gate bias
        self.add_param("b", b)

    def step(self, x, h, c):
        """One forward step from explicit state. No cache, inference only."""
        hd = self.hidden
        z = x @ self.params["wx"] + h @ self.params["wh"] + self.params["b"]
        i = sigmoid(z[:, :hd])
        f = sigmoid(z[:, hd:2 * hd])
        g = np.tanh(z[:, 2 * hd:3 * hd])
        o = sigmoid(z[:, 3 * hd:])
        c_new = f * c + i * g
        return o * np.tanh(c_new), c_new

    def forward_seq(self, xs, valid=None):
        t_len, b, _ = xs.shape
        hd = self.hidden
        zx = xs.reshape(t_len * b, self.in_dim) @ self.params["wx"] \
            + self.params["b"]
        zx = zx.reshape(t_len, b, 4 * hd)
        h = np.zeros((b, hd), dtype=xs.dtype)
        c = np.zeros((b, hd), dtype=xs.dtype)
        gi = np.empty((t_len, b, hd), dtype=xs.dtype)
        gf = np.empty_like(gi)
        gg = np.empty_like(gi)
        go = np.empty_like(gi)
        cs = np.empty_like(gi)        # post-step (possibly masked) cell
        tcs = np.empty_like(gi)       # tanh of pre-mask cell
        hprev = np.empty_like(gi)
        cprev = np.empty_like(gi)
        wh = self.params["wh"]
        for t in range(t_len):
            hprev[t], cprev[t] = h, c
            z = zx[t] + h @ wh
            i = sigmoid(z[:, :hd])
            f = sigmoid(z[:, hd:2 * hd])
            g = np.tanh(z[:, 2 * hd:3 * hd])
            o = sigmoid(z[:, 3 * hd:])
            c = f * c + i * g
            tc = np.tanh(c)
            h = o * tc
            if valid is not None:
                m = valid[t][:, None]
                h = h * m
                c = c * m
            gi[t], gf[t], gg[t], go[t] = i, f, g, o
            cs[t], tcs[t] = c, tc
        cache = (xs, valid, gi, gf, gg, go, cs, tcs, hprev, cprev)
        return h, cache

    def backward_seq(self, dh_last, cache):
        xs, valid, gi, gf, gg, go, cs, tcs, hprev, cprev = cache
        t_len, b, _ = xs.shape
        hd = self.hidden
        wh = self.params["wh"]
        dh = np.ascontiguousarray(dh_last)
        dc = np.zeros_like(dh)
        dz_all = np.empty((t_len, b, 4 * hd), dtype=xs.dtype)
        for t in range(t_len - 1, -1, -1):
            if valid is not None:
                m = valid[t][:, None]
                dh = dh * m
                dc = dc * m
            i, f, g, o, tc = gi[t], gf[t], gg[t], go[t], tcs[t]
            do = dh * tc * o * (1.0 - o)
            dct = dc + dh * o * (1.0 - tc * tc)
            di = dct * g * i * (1.0 - i)
            df = dct * cprev[t] * f * (1.0 - f)
            dg = dct * i * (1.0 - g * g)
            dc = dct * f
            dz = dz_all[t]
            dz[:, :hd] = di
            dz[:, hd:2 * hd] = df
            dz[:, 2 * hd:3 * hd] = dg
            dz[:, 3 * hd:] = do
            dh = dz @ wh.T
        flat_dz = dz_all.reshape(t_len * b, 4 * hd)
        self.grads["wx"] += xs.reshape(t_len * b, self.in_dim).T @ flat_dz
        self.grads["wh"] += hprev.reshape(t_len * b, hd).T @ flat_dz
        self.grads["b"] += flat_dz.sum(axis=0)
        dxs = (flat_dz @ self.params["wx"].T).reshape(xs.shape)
        return dxs


class Module:
    """Container whose Layer/Module attributes form a stable named tree.

    Names come from sorted attribute names, so two structurally identical
    modules walk their parameters in the same order (polyak updates,
    serialization, optimizer state all rely on this).
    """

    def _children(self):
        for name in sorted(vars(self)):
            obj = getattr(self, name)
            if isinstance(obj, (Layer, Module)):
                yield name, obj

    def named_layers(self, prefix=""):
        for name, obj in self._children():
            path = f"{prefix}{name}"
            if isinstance(obj, Layer):
                yield path, obj
            else:
                yield from obj.named_layers(path + "/")

    def layers(self):
        return [l for _, l in self.named_layers()]

    def named_params(self, prefix=""):
        for path, layer in self.named_layers(prefix):
            for pname in sorted(layer.params):
                yield f"{path}/{pname}", layer.params[pname]

    def zero_grads(self):
        for l in self.layers():
            l.zero_grads()

    def astype(self, dtype):
        for l in self.layers():
            l.astype(dtype)
        return self

    def clone(self):
        return copy.deepcopy(self)
