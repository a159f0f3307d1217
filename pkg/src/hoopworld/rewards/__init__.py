from .formulas import (
    POST_RELEASE,
    PRE_RELEASE,
    STANCE_MODES,
    ArmPoseInput,
    ProjectilePoint,
    ball_speed_reward,
    catch_reward,
    dribble_reward,
    fingers_reward,
    gather_pose_reward,
    gather_reward,
    hand_reward,
    hands_reward,
    hold_reward,
    locomotion_reward,
    nav_reward,
    orient_reward,
    paired_hands_error,
    paired_hands_reward,
    pass_reward,
    projectile_hoop_point,
    projectile_plane_points,
    select_hand,
    shoot_reward,
    stance_style_reward,
)
from .goals import (
    GOAL_DIMS,
    catch_goal,
    dribble_goal,
    gather_goal,
    locomotion_goal,
    pass_goal,
    pivot_indicator,
    shoot_goal,
    velocity_command,
)

__all__ = [
    "POST_RELEASE",
    "PRE_RELEASE",
    "STANCE_MODES",
    "ArmPoseInput",
    "ProjectilePoint",
    "ball_speed_reward",
    "catch_reward",
    "dribble_reward",
    "fingers_reward",
    "gather_pose_reward",
    "gather_reward",
    "hand_reward",
    "hands_reward",
    "hold_reward",
    "locomotion_reward",
    "nav_reward",
    "orient_reward",
    "paired_hands_error",
    "paired_hands_reward",
    "pass_reward",
    "projectile_hoop_point",
    "projectile_plane_points",
    "select_hand",
    "shoot_reward",
    "stance_style_reward",
    "GOAL_DIMS",
    "catch_goal",
    "dribble_goal",
    "gather_goal",
    "locomotion_goal",
    "pass_goal",
    "pivot_indicator",
    "shoot_goal",
    "velocity_command",
]
