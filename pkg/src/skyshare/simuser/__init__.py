from .fsm import LightFsm
from .params import ARCHETYPES, UserParams, sample_user
from .policy import GoalEstimate, SimUser, estimate_update
