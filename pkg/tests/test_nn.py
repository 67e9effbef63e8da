import numpy as np
import pytest

from skyshare import nn

import gradsuite


@pytest.mark.parametrize("name", sorted(gradsuite.LAYER_CHECKS))
def test_layer_gradients(name):
    worst = gradsuite.LAYER_CHECKS[name]()
    assert worst < 1e-4, f"{name}: max rel err {worst:.3e}"


def test_lstm_zero_weights_closed_form():
    # all-zero parameters: i = f = o = sigmoid(0) = 0.5, g = tanh(0) = 0,
    # so c' = 0.5*c and h' = 0.5*tanh(0.5*c)
    cell = nn.LstmCell(3, 4, dtype=np.float64)
    for p in cell.params.values():
        p[...] = 0.0
    rng = np.random.default_rng(1)
    x = rng.normal(size=(2, 3))
    c0 = rng.normal(size=(2, 4))
    h0 = rng.normal(size=(2, 4))
    h1, c1 = cell.step(x, h0, c0)
    assert np.allclose(c1, 0.5 * c0, atol=1e-12)
    assert np.allclose(h1, 0.5 * np.tanh(0.5 * c0), atol=1e-12)


def test_lstm_masked_prefix_equals_short_window():
    # zero-padded invalid prefix must act exactly like starting the window
    # at the first valid row
    rng = np.random.default_rng(2)
    cell = nn.LstmCell(5, 6, rng, dtype=np.float64)
    xs = rng.normal(size=(4, 1, 5))
    h_short, _ = cell.forward_seq(xs)
    padded = np.concatenate([np.zeros((3, 1, 5)), xs], axis=0)
    valid = np.ones((7, 1))
    valid[:3, 0] = 0.0
    h_padded, _ = cell.forward_seq(padded, valid)
    assert np.allclose(h_short, h_padded, atol=1e-12)


def test_adam_matches_reference_implementation():
    rng = np.random.default_rng(3)
    layer = nn.Dense(4, 3, "linear", rng, dtype=np.float64)
    holder = gradsuite._wrap(layer)
    w0 = {k: v.copy() for k, v in layer.params.items()}
    opt = nn.Adam([holder], lr=1e-2, beta1=0.9, beta2=0.999, eps=1e-8)

    grads = [{k: rng.normal(size=v.shape) for k, v in layer.params.items()}
             for _ in range(2)]

    # reference: textbook Adam with bias correction
    ref = {k: v.copy() for k, v in w0.items()}
    m = {k: np.zeros_like(v) for k, v in w0.items()}
    v2 = {k: np.zeros_like(v) for k, v in w0.items()}
    for t, g in enumerate(grads, start=1):
        for k in ref:
            m[k] = 0.9 * m[k] + 0.1 * g[k]
            v2[k] = 0.999 * v2[k] + 0.001 * g[k] ** 2
            mh = m[k] / (1 - 0.9 ** t)
            vh = v2[k] / (1 - 0.999 ** t)
            ref[k] -= 1e-2 * mh / (np.sqrt(vh) + 1e-8)

    for g in grads:
        layer.zero_grads()
        for k in g:
            layer.grads[k] += g[k]
        opt.step()
    for k in ref:
        assert np.allclose(layer.params[k], ref[k], atol=1e-12), k


def test_adam_rejects_nonfinite_gradients():
    layer = nn.Dense(2, 2, "linear", dtype=np.float64)
    opt = nn.Adam([gradsuite._wrap(layer)], lr=1e-3)
    layer.grads["w"][0, 0] = np.nan
    with pytest.raises(FloatingPointError):
        opt.step()


def test_ou_stationary_variance_and_decay():
    theta, sigma, dt = 0.15, 0.3, 1.0
    ou = nn.OuProcess(dim=4, theta=theta, sigma=sigma, dt=dt, decay=0.5)
    rng = np.random.default_rng(4)
    n = 200_000
    samples = np.empty((n, 4))
    for i in range(n):
        samples[i] = ou.sample(rng)
    # discrete-time OU: var_inf = sigma^2 dt / (1 - (1 - theta dt)^2)
    var_pred = sigma ** 2 * dt / (1.0 - (1.0 - theta * dt) ** 2)
    var_emp = samples[n // 10:].var()
    assert abs(var_emp - var_pred) / var_pred < 0.05
    ou.decay_sigma()
    assert ou.sigma == pytest.approx(0.15)


def test_polyak_and_hard_update():
    rng = np.random.default_rng(5)
    a = gradsuite._wrap(nn.Dense(3, 2, "linear", rng, dtype=np.float64))
    b = gradsuite._wrap(nn.Dense(3, 2, "linear",
                                 np.random.default_rng(6), dtype=np.float64))
    wa = a.layer.params["w"].copy()
    wb = b.layer.params["w"].copy()
    nn.polyak_update(a, b, tau=0.25)
    assert np.allclose(b.layer.params["w"], 0.75 * wb + 0.25 * wa)
    nn.hard_update(a, b)
    assert np.array_equal(b.layer.params["w"], a.layer.params["w"])


def test_serialize_roundtrip_and_checksum(tmp_path):
    rng = np.random.default_rng(7)
    arrays = {"x/y": rng.normal(size=(3, 4)).astype(np.float32),
              "z": rng.normal(size=(5,)).astype(np.float32)}
    path = tmp_path / "w.bin"
    entries = nn.save_arrays(path, arrays)
    back = nn.load_arrays(path, entries)
    for k, v in arrays.items():
        assert np.array_equal(back[k], v)
    # corrupt one byte: loader must refuse
    raw = bytearray(path.read_bytes())
    raw[0] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(IOError):
        nn.load_arrays(path, entries)


def test_activation_overflow_safety():
    big = np.array([[-500.0, 500.0]])
    assert np.all(np.isfinite(nn.sigmoid(big)))
    l, d = nn.bce_logits_mean(big, np.array([[0.0, 1.0]]))
    assert np.isfinite(l) and np.all(np.isfinite(d))


def test_module_shared_submodule_counted_once():
    class Shared(nn.Module):
        def __init__(self):
            self.lin = nn.Dense(2, 2, dtype=np.float64)

    class A(nn.Module):
        def __init__(self, shared):
            self.enc = shared
            self.head = nn.Dense(2, 1, dtype=np.float64)

    shared = Shared()
    a = A(shared)
    b = A(shared)
    opt = nn.Adam([a, b], lr=1e-3)
    names = [pname for (_, pname) in opt.slots]
    # shared encoder params appear once, two distinct heads appear once each
    assert len(opt.slots) == 6
