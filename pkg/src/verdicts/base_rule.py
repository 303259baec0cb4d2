"""
Base rule class for all verdict rules
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional

from ..cones2d import Cone2, Weight, on_ray
from ..models import FlipTerminality, GameStep, Position, StepKind, Verdict


@dataclass
class GameContext:
    """Everything a rule may look at once the game on Y is played"""
    case_id: str
    steps: List[GameStep]
    position: Position
    anticanonical: Weight
    mobile_cone: Cone2
    flip_terminal: List[FlipTerminality] = field(default_factory=list)

    @property
    def final_step(self) -> Optional[GameStep]:
        return self.steps[-1] if self.steps else None

    @property
    def interior_steps(self) -> List[GameStep]:
        return [s for s in self.steps[1:-1]
                if s.kind in (StepKind.FLIP, StepKind.ISOMORPHISM)]

    def on_ray(self, wall) -> bool:
        """-K_Y is a positive multiple of the ray"""
        return on_ray(Weight.of(wall), self.anticanonical)


class BaseRule(ABC):
    """Base class for all verdict rules"""

    def __init__(self, name: str):
        self.name = name
        self.times_fired = 0

    @abstractmethod
    def evaluate(self, context: GameContext) -> Optional[Verdict]:
        """
        Decide whether this rule settles the case

        Args:
            context: The played game and cone data

        Returns:
            Verdict if the rule fires, None otherwise
        """
        pass

    def apply(self, context: GameContext) -> Optional[Verdict]:
        verdict = self.evaluate(context)
        if verdict is not None:
            self.times_fired += 1
        return verdict
