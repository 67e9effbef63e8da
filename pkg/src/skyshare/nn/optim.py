"""Adam, polyak averaging, and hard target copies over Module trees."""

import numpy as np


class Adam:
    """Adam over the parameters of one or more Modules.

    One shared timestep for the whole group; step() applies the update from
    whatever sits in the grad buffers and refuses non-finite gradients
    rather than silently corrupting moments.
    """

    def __init__(self, modules, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr, self.b1, self.b2, self.eps = lr, beta1, beta2, eps
        self.slots = []
        seen = set()
        for mod in modules:
            for path, layer in mod.named_layers():
                if id(layer) in seen:   # modules may share a submodule
                    continue
                seen.add(id(layer))
                for pname in sorted(layer.params):
                    self.slots.append((layer, pname))
        self.m = [np.zeros_like(layer.params[p]) for layer, p in self.slots]
        self.v = [np.zeros_like(layer.params[p]) for layer, p in self.slots]
        self.t = 0

    def step(self):
        self.t += 1
        bc1 = 1.0 - self.b1 ** self.t
        bc2 = 1.0 - self.b2 ** self.t
        for (layer, pname), m, v in zip(self.slots, self.m, self.v):
            g = layer.grads[pname]
            if not np.all(np.isfinite(g)):
                raise FloatingPointError(f"non-finite gradient for {pname}")
            m *= self.b1
            m += (1.0 - self.b1) * g
            v *= self.b2
            v += (1.0 - self.b2) * g * g
            layer.params[pname] -= self.lr * (m / bc1) / (
                np.sqrt(v / bc2) + self.eps)

    def state_arrays(self, prefix):
        out = {f"{prefix}/t": np.array([self.t], dtype=np.float64)}
        for idx in range(len(self.slots)):
            out[f"{prefix}/m{idx}"] = self.m[idx]
            out[f"{prefix}/v{idx}"] = self.v[idx]
        return out

    def load_state_arrays(self, prefix, arrays):
        self.t = int(arrays[f"{prefix}/t"][0])
        for idx in range(len(self.slots)):
            self.m[idx][...] = arrays[f"{prefix}/m{idx}"].reshape(
                self.m[idx].shape)
            self.v[idx][...] = arrays[f"{prefix}/v{idx}"].reshape(
                self.v[idx].shape)


def _matched_params(src_module, dst_module):
    src = dict(src_module.named_params())
    dst = dict(dst_module.named_params())
    if src.keys() != dst.keys():
        raise ValueError("module structures differ")
    return src, dst


def polyak_update(src_module, dst_module, tau):
    src, dst = _matched_params(src_module, dst_module)
    for name, p in dst.items():
        p *= 1.0 - tau
        p += tau * src[name]


def hard_update(src_module, dst_module):
    src, dst = _matched_params(src_module, dst_module)
    for name, p in dst.items():
        p[...] = src[name]
