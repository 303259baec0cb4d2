"""
Rules on the last step of the game
"""

from typing import Optional

from ..models import StepKind, Verdict, VerdictTag
from .base_rule import BaseRule, GameContext

DOUBLE_COVER = "DoubleCoverCandidate"


class DoubleCoverRule(BaseRule):
    """A generically finite final map is an elliptic involution, still a link"""

    def __init__(self):
        super().__init__("double_cover")

    def evaluate(self, context: GameContext) -> Optional[Verdict]:
        step = context.final_step
        if step is None or step.kind != StepKind.FIBRATION or step.fibre_dimension != 0:
            return None
        return Verdict(
            tag=VerdictTag.LINK_CANDIDATE,
            position=context.position,
            evidence=[DOUBLE_COVER, f"final map onto P({','.join(map(str, step.base_weights))}) "
                                    f"at {step.wall} is generically finite"],
        )


class BadLinkRule(BaseRule):
    """The game ends with a K-trivial contraction after at least one wall"""

    def __init__(self):
        super().__init__("bad_link")

    def evaluate(self, context: GameContext) -> Optional[Verdict]:
        step = context.final_step
        if step is None or not context.interior_steps:
            return None
        if not context.on_ray(step.wall):
            return None
        return Verdict(
            tag=VerdictTag.BAD_LINK,
            position=context.position,
            evidence=[f"-K_Y = {context.anticanonical} lies on the final ray {step.wall}: "
                      f"{step.describe()} is K-trivial"],
        )
