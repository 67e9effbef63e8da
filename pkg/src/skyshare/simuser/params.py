"""Simulated-pilot parameter population."""

from dataclasses import dataclass

import numpy as np

ARCHETYPES = ("ignore", "soft", "hard")


@dataclass
class UserParams:
    alpha: float       # conformance: how much assistance bends the estimate
    beta: float        # perception: initial accuracy and re-observation rate
    psi: float         # stick skill: less noise at high values
    phi: float         # speed comfort: fraction of full stick used
    archetype: str     # ignore | soft | hard (light responsiveness)
    red_scale: float   # command attenuation while in the red state

    def to_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "psi": self.psi,
                "phi": self.phi, "archetype": self.archetype,
                "red_scale": self.red_scale}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def sample_user(rng, cfg):
    probs = np.asarray(cfg.archetype_probs, dtype=float)
    arch = ARCHETYPES[rng.choice(len(ARCHETYPES), p=probs / probs.sum())]
    return UserParams(
        alpha=float(rng.uniform()),
        beta=float(rng.uniform()),
        psi=float(rng.uniform()),
        phi=float(rng.uniform()),
        archetype=arch,
        red_scale=float(rng.uniform(0.0, cfg.red_scale_max)),
    )
