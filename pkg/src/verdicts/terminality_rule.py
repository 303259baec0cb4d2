"""
Non-terminal small modifications
"""

from typing import Optional

from ..cones2d import Weight
from ..models import FlipDirection, StepKind, Verdict, VerdictTag
from .base_rule import BaseRule, GameContext


class TerminalityRule(BaseRule):
    """A flip on Y that leaves the terminal category ends the link"""

    def __init__(self):
        super().__init__("terminality")

    def _catalog_flag(self, context: GameContext, wall) -> Optional[bool]:
        ray = Weight.of(wall).primitive()
        for entry in context.flip_terminal:
            if Weight.of(entry.wall).primitive() == ray:
                return entry.terminal
        return None

    def evaluate(self, context: GameContext) -> Optional[Verdict]:
        for step in context.steps:
            if step.kind != StepKind.FLIP:
                continue
            if self._catalog_flag(context, step.wall) is False:
                return Verdict(
                    tag=VerdictTag.NON_TERMINAL_ANTIFLIP,
                    position=context.position,
                    evidence=[f"non-terminal {step.describe()} at {step.wall} (catalog)"],
                )
            if step.direction == FlipDirection.ANTIFLIP and step.terminal is False:
                return Verdict(
                    tag=VerdictTag.NON_TERMINAL_ANTIFLIP,
                    position=context.position,
                    evidence=[f"non-terminal quotient point after {step.describe()} at {step.wall}"],
                )
        return None
