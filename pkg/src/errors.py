"""
Error hierarchy for the blow-up engine
"""

from typing import Optional


class EngineError(Exception):
    """Base class for every engine failure"""

    code: str = "EngineError"

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        if code:
            self.code = code

    def __str__(self) -> str:
        return f"{self.code}: {super().__str__()}"


class ConeError(EngineError):
    code = "ConeError"


class CoxError(EngineError):
    code = "CoxError"


class BlowupError(EngineError):
    code = "BlowupError"


class GameError(EngineError):
    code = "GameError"


class UnprojectionError(EngineError):
    code = "UnprojectionError"


class IntersectError(EngineError):
    code = "IntersectError"


class HarnessError(EngineError):
    code = "HarnessError"
