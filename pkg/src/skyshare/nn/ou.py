"""Ornstein-Uhlenbeck exploration noise with per-epoch sigma decay."""

import numpy as np


class OuProcess:
    def __init__(self, dim, theta=0.15, sigma=0.3, mu=0.0, dt=1.0,
                 decay=0.995, sigma_min=0.0):
        self.dim = dim
        self.theta, self.mu, self.dt = theta, mu, dt
        self.sigma = sigma
        self.decay = decay
        self.sigma_min = sigma_min
        self.value = np.full(dim, mu, dtype=np.float64)

    def reset(self):
        self.value[:] = self.mu

    def sample(self, rng):
        self.value += self.theta * (self.mu - self.value) * self.dt \
            + self.sigma * np.sqrt(self.dt) * rng.standard_normal(self.dim)
        return self.value.copy()

    def decay_sigma(self):
        self.sigma = max(self.sigma * self.decay, self.sigma_min)

    def state(self):
        return {"sigma": self.sigma, "value": self.value.tolist()}

    def load_state(self, st):
        self.sigma = float(st["sigma"])
        self.value[:] = np.asarray(st["value"], dtype=np.float64)
