"""Mission plans and progression. Any touchdown ends the episode, so a
landing task can only sit last in a plan."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class Task:
    kind: str        # "landing" | "inspection"
    platform: int    # index into the arena platform list

    def to_dict(self):
        return {"kind": self.kind, "platform": self.platform}


def sample_mission(rng, n_platforms, mc):
    n = int(rng.integers(mc.min_tasks, mc.max_tasks + 1))
    if n <= n_platforms:
        targets = rng.choice(n_platforms, size=n, replace=False)
    else:
        targets = rng.integers(0, n_platforms, size=n)
    tasks = [Task("inspection", int(t)) for t in targets]
    if rng.uniform() < mc.landing_prob:
        tasks[-1] = Task("landing", tasks[-1].platform)
    return tasks


@dataclass
class MissionState:
    plan: list
    idx: int = 0
    steps: int = 0
    outcomes: list = field(default_factory=list)
    terminal: bool = False
    reason: str = ""

    @property
    def task(self):
        return self.plan[self.idx] if self.idx < len(self.plan) else None

    def complete_task(self, outcome):
        self.outcomes.append(outcome)
        if outcome.success:
            self.idx += 1
            if self.idx >= len(self.plan):
                self.finish("complete")

    def finish(self, reason):
        self.terminal = True
        self.reason = reason
