"""Loss primitives. Each returns (scalar, grad wrt prediction).

Two reduction conventions exist side by side and the names say which:
*_mean averages over every element (image losses), the sq/bce pair sums
over feature dimensions and averages over the batch (the temporal-decoder
composite is specified that way).
"""

import numpy as np

from .core import sigmoid


def mse_mean(pred, target):
    d = pred - target
    n = d.size
    return float(np.sum(d * d) / n), (2.0 / n) * d


def bce_logits_mean(logits, target):
    # elementwise binary cross entropy on logits, stable form
    n = logits.size
    loss = np.maximum(logits, 0.0) - logits * target \
        + np.log1p(np.exp(-np.abs(logits)))
    return float(loss.sum() / n), (sigmoid(logits) - target) / n


def sq_err_sum(pred, target):
    """Sum of squared errors over features, mean over batch (axis 0)."""
    b = pred.shape[0]
    d = pred - target
    return float(np.sum(d * d) / b), (2.0 / b) * d


def bce_logits_sum(logits, target):
    """Summed-over-features BCE, mean over batch (axis 0)."""
    b = logits.shape[0]
    loss = np.maximum(logits, 0.0) - logits * target \
        + np.log1p(np.exp(-np.abs(logits)))
    return float(loss.sum() / b), (sigmoid(logits) - target) / b


def kl_diag_gauss(mu, logvar):
    """KL(N(mu, exp(logvar)) || N(0, 1)), summed over dims, batch mean."""
    b = mu.shape[0]
    var = np.exp(logvar)
    kl = 0.5 * np.sum(var + mu * mu - 1.0 - logvar) / b
    return float(kl), mu / b, 0.5 * (var - 1.0) / b


def cosine_gap(a, b, eps=1e-8):
    """mean over batch of (1 - cosine similarity). Grads for both inputs."""
    n = a.shape[0]
    na = np.sqrt(np.sum(a * a, axis=1, keepdims=True)) + eps
    nb = np.sqrt(np.sum(b * b, axis=1, keepdims=True)) + eps
    dot = np.sum(a * b, axis=1, keepdims=True)
    cos = dot / (na * nb)
    loss = float(np.mean(1.0 - cos))
    da = -(b / (na * nb) - cos * a / (na * na)) / n
    db = -(a / (na * nb) - cos * b / (nb * nb)) / n
    return loss, da, db
