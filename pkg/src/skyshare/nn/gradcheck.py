"""Central-difference gradient verification for explicit-gradient code.

The function under test must, on every call, zero the grad buffers, run a
full forward/backward, and return the scalar loss. Analytic gradients are
captured from the first call; numeric probes then perturb individual
parameter entries (all, or a seeded subset for large tensors).
"""

import numpy as np


def grad_check(fn, modules, eps=1e-5, max_entries=None, rng=None, floor=1e-6):
    analytic_loss = fn()
    layers = []
    seen = set()
    for mod in modules:
        for path, layer in mod.named_layers():
            if id(layer) not in seen:
                seen.add(id(layer))
                layers.append((path, layer))
    analytic = {
        (path, pname): layer.grads[pname].copy()
        for path, layer in layers for pname in layer.params
    }
    rng = rng or np.random.default_rng(0)
    report = {}
    for path, layer in layers:
        for pname, p in layer.params.items():
            flat = p.reshape(-1)
            n = flat.size
            if max_entries is not None and n > max_entries:
                idx = rng.choice(n, size=max_entries, replace=False)
            else:
                idx = np.arange(n)
            ana_flat = analytic[(path, pname)].reshape(-1)
            worst = 0.0
            for i in idx:
                orig = flat[i]
                flat[i] = orig + eps
                lp = fn()
                flat[i] = orig - eps
                lm = fn()
                flat[i] = orig
                num = (lp - lm) / (2.0 * eps)
                a = ana_flat[i]
                rel = abs(a - num) / max(abs(a), abs(num), floor)
                worst = max(worst, rel)
            report[f"{path}/{pname}"] = worst
    fn()  # leave grad buffers consistent with unperturbed params
    return max(report.values()), report
