"""
Data models for the blow-up engine
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class Position(str, Enum):
    """Where a class sits relative to a cone"""
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


class StepKind(str, Enum):
    """Outcome of one wall crossing"""
    DIVISORIAL_CONTRACTION = "DivisorialContraction"
    FIBRATION = "Fibration"
    FLIP = "FlipType"
    ISOMORPHISM = "IsomorphismOnY"
    FAKE_DIVISOR = "FakeDivisor"
    ERROR = "Error"


class FlipDirection(str, Enum):
    FLIP = "flip"
    FLOP = "flop"
    ANTIFLIP = "antiflip"


class VerdictTag(str, Enum):
    """Case conclusions"""
    LINK_CANDIDATE = "LinkCandidate"
    BAD_LINK = "BadLink"
    MOBILITY_OBSTRUCTION = "MobilityObstruction"
    NON_TERMINAL_ANTIFLIP = "NonTerminalAntiflip"
    REQUIRES_UNPROJECTION = "RequiresUnprojection"
    GAME_ERROR = "GameError"


class OutputFormat(str, Enum):
    TEXT = "text"
    SVG = "svg"
    JSON = "json"


# Family files

class MonomialSpec(BaseModel):
    """One monomial of an equation; present=False documents a forced absence"""
    exponents: Dict[str, int]
    present: bool = True
    coeff: str = "1"


class GenericBlock(BaseModel):
    """factor * (every monomial of the given weighted degree in variables)"""
    factor: Dict[str, int] = {}
    variables: List[str]
    degree: int = Field(ge=0)
    coeff: str = "1"


class EquationSpec(BaseModel):
    name: str
    degree: int = Field(gt=0)
    monomials: List[MonomialSpec] = []
    generic: List[GenericBlock] = []


class PointSpec(BaseModel):
    """Coordinate point p_variable with germ 1/r(1, a, r-a)"""
    variable: str
    r: int = Field(ge=2)
    a: int = Field(ge=1)


class Overrides(BaseModel):
    local_weights: Dict[str, int] = {}


class SubstitutionSpec(BaseModel):
    """Rewrite `target` by replacing `monomial` using equation `using`"""
    target: str
    monomial: Dict[str, int]
    using: str


class UnprojectionPlan(BaseModel):
    variable: str
    ideal: List[str]
    equation: str
    relation: Optional[str] = None
    power: int = Field(1, ge=1)
    substitutions: List[SubstitutionSpec] = []
    eliminate: List[str] = []


class ChartSpec(BaseModel):
    """Residual weighted projective chart: weights and equation degrees"""
    weights: List[int] = []
    degrees: List[str] = []
    zero_class: bool = False


class CanonicalRelation(BaseModel):
    """k * (-K) ~ d * D + e * E"""
    k: int = Field(gt=0)
    d: int
    e: int


class CurveSpec(BaseModel):
    description: str = ""
    e_chart: ChartSpec
    d_chart: ChartSpec
    relation: CanonicalRelation
    divisor_classes: List[Tuple[int, int]] = []
    moving: bool = True
    provenance: str = ""


class PrintedFlip(BaseModel):
    wall: Tuple[int, int]
    label: str


class FlipTerminality(BaseModel):
    wall: Tuple[int, int]
    terminal: bool
    source: str = ""


class Annotations(BaseModel):
    expected_verdict: str
    ending: Optional[str] = None
    printed_flips: List[PrintedFlip] = []
    flip_terminal: List[FlipTerminality] = []
    printed_anticanonical: Optional[Tuple[int, int]] = None
    printed_point: Optional[str] = None
    printed_curve_numbers: Dict[str, str] = {}
    notes: str = ""


class FamilySpec(BaseModel):
    """A weighted complete intersection, its centre, and catalog annotations"""
    id: str
    title: str = ""
    family: Optional[int] = None
    variables: List[str]
    ambient_weights: List[int]
    degrees: List[int]
    equations: List[EquationSpec]
    point: PointSpec
    tangent: Dict[str, Optional[str]] = {}
    overrides: Overrides = Overrides()
    unprojections: List[UnprojectionPlan] = []
    curve: Optional[CurveSpec] = None
    annotations: Annotations


# Engine records

class GameStep(BaseModel):
    """One move of the 2-ray game"""
    wall: Tuple[int, int]
    kind: StepKind
    contracted: List[str] = []
    base_variables: List[str] = []
    base_weights: List[int] = []
    base_dimension: Optional[int] = None
    fibre_dimension: Optional[int] = None
    ending: Optional[str] = None
    local_weights: List[Tuple[str, int]] = []
    eliminated: List[str] = []
    residual_degrees: List[int] = []
    direction: Optional[FlipDirection] = None
    flipping_count: Optional[str] = None
    terminal: Optional[bool] = None
    witness: Optional[str] = None
    ideal: List[str] = []
    reason: Optional[str] = None

    @property
    def weight_values(self) -> List[int]:
        return [w for _, w in self.local_weights]

    def signature(self) -> str:
        """Local weights, then residual equation degrees after ';'"""
        body = ",".join(str(w) for w in self.weight_values)
        if self.residual_degrees:
            body += ";" + ",".join(str(d) for d in self.residual_degrees)
        return f"({body})"

    def describe(self) -> str:
        if self.kind == StepKind.DIVISORIAL_CONTRACTION:
            return f"divisorial contraction of ({','.join(self.contracted)}=0)"
        if self.kind == StepKind.FIBRATION:
            base = ",".join(str(w) for w in self.base_weights)
            return f"{self.ending or 'fibration'} over P({base})"
        if self.kind == StepKind.FLIP:
            count = f"{self.flipping_count} x " if self.flipping_count not in (None, "1") else ""
            return f"{self.direction.value if self.direction else 'flip'} {count}{self.signature()}"
        if self.kind == StepKind.ISOMORPHISM:
            return f"isomorphism ({self.witness})"
        if self.kind == StepKind.FAKE_DIVISOR:
            return f"fake divisor ({','.join(self.ideal)})"
        return f"error: {self.reason}"


class UnprojectionRecord(BaseModel):
    variable: str
    weight: Tuple[int, int]
    ideal: List[str]
    kind: str
    equation: str
    equations: List[str] = []
    eliminated: List[str] = []


class RayRecord(BaseModel):
    ray: Tuple[int, int]
    variables: List[str]
    weights: List[Tuple[int, int]]


class ConeData(BaseModel):
    rays: List[RayRecord]
    mobile_cone: Tuple[Tuple[int, int], Tuple[int, int]]
    chambers: List[Tuple[Tuple[int, int], Tuple[int, int]]]
    anticanonical: Tuple[int, int]
    position: Position
    exceptional: Tuple[int, int] = (0, 1)


class BlowupSummary(BaseModel):
    point: str
    germ: str
    discrepancy: str
    local_weights: Dict[str, int]
    tangent_weights: Dict[str, int]
    valuations: Dict[str, str]
    grading: Dict[str, Tuple[int, int]]
    well_formed_gcd: int
    anticanonical_degree: Optional[str] = None


class CurveNumbers(BaseModel):
    c_e: str
    c_d: str
    c_k: str
    excluded: bool


class Verdict(BaseModel):
    tag: VerdictTag
    position: Optional[Position] = None
    evidence: List[str] = []

    @property
    def label(self) -> str:
        if self.tag == VerdictTag.MOBILITY_OBSTRUCTION and self.position:
            return f"{self.tag.value}({self.position.value})"
        return self.tag.value


class CaseReport(BaseModel):
    case_id: str
    title: str = ""
    verdict: Verdict
    expected: Optional[str] = None
    matches: bool = True
    ending: Optional[str] = None
    steps: List[GameStep] = []
    cone: Optional[ConeData] = None
    blowup: Optional[BlowupSummary] = None
    unprojections: List[UnprojectionRecord] = []
    equations: Dict[str, str] = {}
    final_model: Optional[str] = None
    curve: Optional[CurveNumbers] = None
    warnings: List[str] = []
    advisories: List[str] = []


class BatchSummary(BaseModel):
    reports: List[CaseReport] = []
    mismatches: List[str] = []
    advisory_mismatches: List[str] = []
    errors: List[str] = []
    strict: bool = False

    @property
    def exit_code(self) -> int:
        if self.errors:
            return 2
        if self.mismatches or (self.strict and self.advisory_mismatches):
            return 1
        return 0
