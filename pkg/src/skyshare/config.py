"""Configuration dataclasses and the desk/paper presets.

Everything tunable lives here. Presets are factory functions; a JSON
overlay (CLI --config) deep-merges onto the preset before construction.
"""

import dataclasses
import typing
from dataclasses import dataclass, field


@dataclass
class DynamicsConfig:
    dt: float = 0.2                # s per sim step
    tau_v: float = 0.45            # velocity tracking time constant, s
    max_speed: float = 0.5         # m/s, per horizontal axis at full stick
    max_vz: float = 0.4            # m/s vertical at full stick
    max_yaw_rate: float = 0.9      # rad/s at full stick
    ground_band: float = 0.4       # m, disturbance grows below this height
    ground_sigma: float = 0.08     # m/s disturbance std at zero height
    yaw_noise_scale: float = 0.25  # yaw-rate disturbance relative scale
    noise_clip: float = 2.0        # clip disturbance at this many sigma
    ceiling: float = 3.0           # m
    leg_half: float = 0.12         # m, half side of the leg square


@dataclass
class ArenaConfig:
    radius: float = 3.6
    platform_count: int = 3
    width_range: tuple = (0.4, 0.7)
    height_range: tuple = (0.06, 0.24)
    min_spacing: float = 1.3       # m between platform centers
    spawn_margin: float = 0.8      # spawn within radius * margin
    spawn_alt_range: tuple = (1.0, 1.8)


@dataclass
class MissionConfig:
    min_tasks: int = 1
    max_tasks: int = 3
    landing_prob: float = 0.5      # chance the final task is a landing
    episode_cap: int = 900         # steps (3 min at 5 Hz)
    cruise_alt: float = 1.4
    inspect_alt: float = 1.3


@dataclass
class RewardWeights:
    k0: float = 12.0    # landing success
    k1: float = 30.0    # horizontal velocity near ground
    k2: float = 5.0     # vertical velocity near ground
    k3: float = 15.0    # yaw rate near ground
    k4: float = 0.4     # pending-picture growth
    k5: float = 50.0    # picture outcome
    k6: float = 150.0   # speed while capturing
    k7: float = 150.0   # yaw rate while capturing
    k8: float = 0.45    # xyz action disagreement
    k9: float = 0.3     # yaw action disagreement
    k10: float = 0.07   # red light cost
    k11: float = 0.07   # green light cost
    h_t: float = 0.4    # m, height threshold for near-ground terms
    growth: float = 1.07
    pending_cap: int = 60   # cap on the growth exponent, steps


@dataclass
class RigConfig:
    in_w: int = 64
    in_h: int = 48
    out_w: int = 64
    out_h: int = 48
    fused_h: int = 48
    n_mid: int = 8            # intermediate cameras in the fused view
    baseline: float = 0.10    # m, cameras at +-baseline along body y
    max_range: float = 3.0    # m, depth normalization
    focal: float = 32.0       # px (90 deg horizontal FOV at in_w 64)


@dataclass
class UserConfig:
    k_alpha: float = 20.0
    k_beta: float = 50.0
    light_n: int = 5           # consecutive lit steps to enter a state
    light_m: int = 5           # consecutive dark steps to leave it
    patience_down: float = 0.02
    patience_up: float = 0.01
    archetype_probs: tuple = (1 / 3, 1 / 3, 1 / 3)
    k_pos: float = 1.2         # position error -> stick gain
    k_yaw: float = 1.5
    align_first_rad: float = 0.45   # rotate in place above this yaw error
    settle_xy: float = 0.25    # m, close enough to request / descend
    settle_yaw: float = 0.21   # rad
    settle_speed: float = 0.15  # m/s
    request_cooldown: int = 12  # steps between repeated photo requests
    init_pos_sigma: float = 0.55   # m, initial goal-estimate error at beta=0
    init_yaw_sigma: float = 0.7    # rad, same
    descend_rate: float = 0.8      # stick fraction while descending
    red_scale_max: float = 0.5     # S_r drawn from [0, this]


@dataclass
class Td3Config:
    latent: int = 8
    lookback: int = 25
    lstm_width: int = 64
    branch_width: int = 64
    gamma: float = 0.99
    tau: float = 0.005
    lr_actor: float = 1e-4
    lr_critic: float = 3e-4
    lr_decoder: float = 3e-4
    target_sigma: float = 0.2
    target_clip: float = 0.5
    actor_period: int = 2
    variant: str = "shared"    # shared | no_decoder | standard
    k12: float = 1.0           # decoder loss weights: velocity
    k13: float = 1.0           # yaw rate
    k14: float = 5.0           # pending-time estimate
    k15: float = 1.5           # red-state logit
    k16: float = 1.5           # green-state logit


@dataclass
class CmsvaeConfig:
    latent: int = 8
    lr: float = 1e-3
    batch: int = 32
    w_gray: float = 3.0
    w_depth: float = 1.0
    w_seg: float = 0.5
    w_kl: float = 4.0
    w_sim: float = 1.0
    base_ch: int = 8
    feat_dim: int = 96
    region_jitter: float = 0.15
    pixel_sigma: float = 0.02
    depth_speckle: float = 0.01
    dropout_p: float = 0.02


@dataclass
class TrainConfig:
    workers: int = 4
    total_iters: int = 200_000
    batch: int = 64
    buffer_capacity: int = 300_000   # transitions
    warmup_transitions: int = 3_000
    ou_theta: float = 0.15
    ou_sigma: float = 0.25
    ou_decay: float = 0.995
    ou_sigma_min: float = 0.02
    dither_start: float = 0.3   # random discrete-channel flip prob
    dither_end: float = 0.02
    dither_decay: float = 0.99
    checkpoint_every: int = 40   # epochs
    log_every: int = 1


@dataclass
class RunConfig:
    preset: str = "desk"
    seed: int = 0
    dynamics: DynamicsConfig = field(default_factory=DynamicsConfig)
    arena: ArenaConfig = field(default_factory=ArenaConfig)
    mission: MissionConfig = field(default_factory=MissionConfig)
    reward: RewardWeights = field(default_factory=RewardWeights)
    rig: RigConfig = field(default_factory=RigConfig)
    user: UserConfig = field(default_factory=UserConfig)
    td3: Td3Config = field(default_factory=Td3Config)
    cmsvae: CmsvaeConfig = field(default_factory=CmsvaeConfig)
    train: TrainConfig = field(default_factory=TrainConfig)


def desk_config():
    return RunConfig(preset="desk")


def paper_config():
    cfg = RunConfig(preset="paper")
    cfg.arena = ArenaConfig(radius=5.0, platform_count=4)
    cfg.rig = RigConfig(in_w=210, in_h=120, out_w=96, out_h=64,
                        fused_h=140, n_mid=20, focal=105.0)
    cfg.td3 = Td3Config(latent=24, lookback=50)
    cfg.cmsvae = CmsvaeConfig(latent=24)
    return cfg


def _merge(obj, overlay):
    for key, val in overlay.items():
        if not hasattr(obj, key):
            raise KeyError(f"unknown config key {key!r}")
        cur = getattr(obj, key)
        if dataclasses.is_dataclass(cur) and isinstance(val, dict):
            _merge(cur, val)
        else:
            if isinstance(cur, tuple) and isinstance(val, list):
                val = tuple(val)
            setattr(obj, key, val)
    return obj


def make_config(preset="desk", overlay=None, seed=None):
    cfg = paper_config() if preset == "paper" else desk_config()
    if overlay:
        _merge(cfg, overlay)
    if seed is not None:
        cfg.seed = int(seed)
    return cfg


def config_to_dict(cfg):
    return dataclasses.asdict(cfg)
