"""Independent oracle implementations used by unit and acceptance tests.

Written from the definitions, not from the package code: plain float
arithmetic, no shared helpers, so an error in the package cannot hide in
the oracle.
"""

import math


def reward_oracle(ctx, w):
    """Step cost from first principles. Mirrors the published term list."""
    # landing outcome
    if ctx.landing is None:
        r_ls = 0.0
    elif ctx.landing:
        r_ls = -1.0
    else:
        r_ls = 1.0

    # near-ground velocity damping, active only below the height threshold
    if ctx.height < w.h_t:
        s = (w.h_t - ctx.height) / w.h_t
    else:
        s = 0.0
    vx, vy, vz = float(ctx.vel[0]), float(ctx.vel[1]), float(ctx.vel[2])
    r_hvel = s * (vx * vx + vy * vy)
    r_vvel = s * vz * vz
    r_yvel = s * ctx.yaw_rate * ctx.yaw_rate

    # pending-picture pressure, exponential in steps outstanding
    if ctx.pending_steps > 0:
        r_it = w.growth ** min(ctx.pending_steps, w.pending_cap)
    else:
        r_it = 0.0

    # capture outcome and motion at the shutter
    if ctx.capture is None:
        r_is = r_ivel = r_ia = 0.0
    else:
        r_is = -ctx.capture.ratio if ctx.capture.success else 1.0
        r_ivel = ctx.capture.speed2
        r_ia = ctx.capture.yaw_rate2

    # disagreement between the two agents, normalized stick units
    dx = float(ctx.assistant_action[0]) - float(ctx.user_action[0])
    dy = float(ctx.assistant_action[1]) - float(ctx.user_action[1])
    dz = float(ctx.assistant_action[2]) - float(ctx.user_action[2])
    dw = float(ctx.assistant_action[3]) - float(ctx.user_action[3])
    r_xyz = math.sqrt(dx * dx + dy * dy + dz * dz)
    r_yawd = abs(dw)

    r_red = 1.0 if ctx.red_on else 0.0
    r_green = 1.0 if ctx.green_on else 0.0

    return (w.k0 * r_ls + w.k1 * r_hvel + w.k2 * r_vvel + w.k3 * r_yvel
            + w.k4 * r_it + w.k5 * r_is + w.k6 * r_ivel + w.k7 * r_ia
            + w.k8 * r_xyz + w.k9 * r_yawd + w.k10 * r_red
            + w.k11 * r_green)


def goal_estimate_oracle(est, goal, a_assist, a_user, alpha, beta,
                         k_alpha, k_beta, wrap):
    """Per-channel estimate update, conformance plus re-observation."""
    out = []
    for i in range(len(est)):
        conform = alpha * (a_assist[i] - a_user[i]) / k_alpha
        diff = goal[i] - est[i]
        if wrap[i]:
            diff = math.remainder(diff, 2.0 * math.pi)
        observe = beta * diff / k_beta
        val = est[i] + conform + observe
        if wrap[i]:
            val = math.remainder(val, 2.0 * math.pi)
        out.append(val)
    return out


def random_reward_context(rng):
    """Draw a context covering every branch of the cost."""
    from skyshare.arena import CaptureEvent, RewardContext

    landing = rng.choice([None, True, False])
    capture = None
    if rng.uniform() < 0.5:
        capture = CaptureEvent(
            success=bool(rng.uniform() < 0.5),
            ratio=float(rng.uniform(0, 0.2)),
            speed2=float(rng.uniform(0, 0.5)),
            yaw_rate2=float(rng.uniform(0, 1.0)),
        )
    return RewardContext(
        landing=landing,
        capture=capture,
        height=float(rng.uniform(-0.05, 1.2)),
        vel=rng.uniform(-0.6, 0.6, 3),
        yaw_rate=float(rng.uniform(-1, 1)),
        pending_steps=int(rng.integers(0, 120)),
        user_action=rng.uniform(-1, 1, 5),
        assistant_action=rng.uniform(-1, 1, 7),
        red_on=bool(rng.uniform() < 0.3),
        green_on=bool(rng.uniform() < 0.3),
    )
