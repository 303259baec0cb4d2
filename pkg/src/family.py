"""
Family files: parsing, validation and conversion to engine inputs
"""

import json
from typing import Dict, List

from pydantic import ValidationError

from .blowup import EXCEPTIONAL, SingularPoint, WeightedCI
from .errors import HarnessError
from .models import EquationSpec, FamilySpec
from .polynomial import SparsePoly, expand_generic_block, mono_str, monomial


def _monomial_degree(exponents: Dict[str, int], weights: Dict[str, int], spec_id: str) -> int:
    total = 0
    for name, e in exponents.items():
        if name not in weights:
            raise HarnessError(f"{spec_id}: unknown variable {name}", code="SchemaError")
        if e < 0:
            raise HarnessError(f"{spec_id}: negative exponent on {name}", code="SchemaError")
        total += weights[name] * e
    return total


def _check_shape(spec: FamilySpec):
    if len(spec.variables) != len(spec.ambient_weights):
        raise HarnessError(f"{spec.id}: variables and ambient_weights differ in length",
                           code="SchemaError")
    if len(set(spec.variables)) != len(spec.variables):
        raise HarnessError(f"{spec.id}: duplicate variable names", code="SchemaError")
    if EXCEPTIONAL in spec.variables:
        raise HarnessError(f"{spec.id}: variable name {EXCEPTIONAL} is reserved", code="SchemaError")
    if any(w <= 0 for w in spec.ambient_weights):
        raise HarnessError(f"{spec.id}: ambient weights must be positive", code="SchemaError")
    if len(spec.degrees) != len(spec.equations):
        raise HarnessError(f"{spec.id}: {len(spec.degrees)} degrees for "
                           f"{len(spec.equations)} equations", code="SchemaError")
    if list(spec.degrees) != sorted(spec.degrees):
        raise HarnessError(f"{spec.id}: degrees must be nondecreasing", code="SchemaError")
    if spec.point.variable not in spec.variables:
        raise HarnessError(f"{spec.id}: point variable {spec.point.variable} is unknown",
                           code="SchemaError")
    names = [eq.name for eq in spec.equations]
    if len(set(names)) != len(names):
        raise HarnessError(f"{spec.id}: duplicate equation names", code="SchemaError")
    for name in spec.tangent:
        if name not in names:
            raise HarnessError(f"{spec.id}: tangent names unknown equation {name}",
                               code="SchemaError")


def build_equation(eq: EquationSpec, weights: Dict[str, int], spec_id: str) -> SparsePoly:
    """Explicit monomials plus generic blocks, without the declared absences"""
    absent = set()
    terms: Dict = {}
    for m in eq.monomials:
        deg = _monomial_degree(m.exponents, weights, spec_id)
        mono = monomial(m.exponents)
        if deg != eq.degree:
            raise HarnessError(
                f"{spec_id}: monomial {mono_str(mono)} of {eq.name} has degree {deg}, not {eq.degree}",
                code="DegreeMismatch",
            )
        if m.present:
            terms.setdefault(mono, []).append(m.coeff)
        else:
            absent.add(mono)

    for block in eq.generic:
        factor_degree = _monomial_degree(block.factor, weights, spec_id)
        _monomial_degree({v: 0 for v in block.variables}, weights, spec_id)
        if factor_degree + block.degree != eq.degree:
            raise HarnessError(
                f"{spec_id}: generic block {mono_str(monomial(block.factor))}*({block.degree}) "
                f"of {eq.name} has degree {factor_degree + block.degree}, not {eq.degree}",
                code="DegreeMismatch",
            )
        for exps in expand_generic_block(block.variables, weights, block.degree):
            merged = dict(block.factor)
            for name, e in exps.items():
                merged[name] = merged.get(name, 0) + e
            mono = monomial(merged)
            if mono not in absent:
                terms.setdefault(mono, []).append(block.coeff)

    clash = absent.intersection(terms)
    if clash:
        listed = ", ".join(mono_str(m) for m in sorted(clash))
        raise HarnessError(f"{spec_id}: {listed} declared both present and absent in {eq.name}",
                           code="SchemaError")

    poly = SparsePoly.from_terms(
        (coeff, dict(mono)) for mono, coeffs in terms.items() for coeff in coeffs
    )
    if poly.is_zero:
        raise HarnessError(f"{spec_id}: equation {eq.name} is zero", code="SchemaError")
    return poly


def weighted_ci(spec: FamilySpec) -> WeightedCI:
    weights = dict(zip(spec.variables, spec.ambient_weights))
    equations = {eq.name: build_equation(eq, weights, spec.id) for eq in spec.equations}
    return WeightedCI(tuple(spec.variables), tuple(spec.ambient_weights), equations)


def singular_point(spec: FamilySpec) -> SingularPoint:
    return SingularPoint(spec.point.variable, spec.point.r, spec.point.a)


def validate_family(spec: FamilySpec) -> FamilySpec:
    """Shape and degree checks beyond the schema"""
    _check_shape(spec)
    for eq, degree in zip(spec.equations, spec.degrees):
        if eq.degree != degree:
            raise HarnessError(f"{spec.id}: equation {eq.name} has degree {eq.degree}, "
                               f"declared {degree}", code="DegreeMismatch")
    weighted_ci(spec)
    return spec


def parse_family(text: str) -> FamilySpec:
    """
    Parse and validate a family file

    Args:
        text: JSON family file contents

    Returns:
        Validated FamilySpec
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise HarnessError(f"not valid JSON: {e}", code="SchemaError")
    try:
        spec = FamilySpec.model_validate(data)
    except ValidationError as e:
        errors: List[str] = [
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        ]
        raise HarnessError("; ".join(errors), code="SchemaError")
    return validate_family(spec)


def serialize_family(spec: FamilySpec) -> str:
    return spec.model_dump_json(indent=2, exclude_defaults=True)
