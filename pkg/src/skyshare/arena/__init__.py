from .actions import AssistantAction, BlendedCommand, UserAction, blend_actions
from .dynamics import (UavState, height_above_surface, leg_points,
                       step_dynamics)
from .geometry import (Platform, generate_arena, rot2d, surface_height_at,
                       wrap_angle)
from .missions import MissionState, Task, sample_mission
from .outcomes import (YAW_TOL, TaskOutcome, eval_inspection, eval_landing)
from .reward import CaptureEvent, RewardContext, compute_reward
