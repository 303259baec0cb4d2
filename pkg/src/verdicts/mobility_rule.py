"""
Position of -K_Y against the mobile cone
"""

from typing import Optional

from ..models import Position, Verdict, VerdictTag
from .base_rule import BaseRule, GameContext


class MobilityRule(BaseRule):
    """-K_Y not in the interior of Mob(Y) obstructs the link"""

    def __init__(self, name: str, position: Position):
        super().__init__(name)
        self.position = position

    def evaluate(self, context: GameContext) -> Optional[Verdict]:
        if context.position != self.position:
            return None
        return Verdict(
            tag=VerdictTag.MOBILITY_OBSTRUCTION,
            position=self.position,
            evidence=[f"-K_Y = {context.anticanonical} is {self.position.value.lower()} "
                      f"for Mob(Y) = {context.mobile_cone}"],
        )


class OutsideMobilityRule(MobilityRule):
    def __init__(self):
        super().__init__("outside_mobility", Position.OUTSIDE)


class BoundaryMobilityRule(MobilityRule):
    def __init__(self):
        super().__init__("boundary_mobility", Position.BOUNDARY)
