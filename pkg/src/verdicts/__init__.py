"""
Verdict rules for the 2-ray game, in order of precedence
"""

from typing import List, Optional

from ..models import Verdict, VerdictTag
from .base_rule import BaseRule, GameContext
from .ending_rules import DOUBLE_COVER, BadLinkRule, DoubleCoverRule
from .mobility_rule import BoundaryMobilityRule, OutsideMobilityRule
from .terminality_rule import TerminalityRule


def default_rules() -> List[BaseRule]:
    return [
        TerminalityRule(),
        OutsideMobilityRule(),
        DoubleCoverRule(),
        BadLinkRule(),
        BoundaryMobilityRule(),
    ]


def decide(context: GameContext, rules: Optional[List[BaseRule]] = None) -> Verdict:
    """First rule that fires; LinkCandidate when none does"""
    for rule in rules if rules is not None else default_rules():
        verdict = rule.apply(context)
        if verdict is not None:
            return verdict
    return Verdict(tag=VerdictTag.LINK_CANDIDATE, position=context.position,
                   evidence=["every wall of the game on Y is resolved"])


__all__ = [
    'BaseRule',
    'GameContext',
    'TerminalityRule',
    'OutsideMobilityRule',
    'DoubleCoverRule',
    'BadLinkRule',
    'BoundaryMobilityRule',
    'DOUBLE_COVER',
    'default_rules',
    'decide',
]
