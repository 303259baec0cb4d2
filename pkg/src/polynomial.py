"""
Sparse multivariate polynomials over named variables

A polynomial maps monomials to sympy coefficients.  A monomial is a sorted
tuple of (variable, exponent) pairs with positive exponents, so the constant
monomial is the empty tuple and variables can be added or dropped freely as
the ambient space changes.  Zero coefficients are never stored.
"""

from typing import Any, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import sympy as sp

Monomial = Tuple[Tuple[str, int], ...]

ONE: Monomial = ()


def monomial(exponents: Mapping[str, int]) -> Monomial:
    """Canonical monomial from a {variable: exponent} mapping"""
    for name, e in exponents.items():
        if e < 0:
            raise ValueError(f"negative exponent {e} on {name}")
    return tuple(sorted((name, int(e)) for name, e in exponents.items() if e > 0))


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    out = dict(m1)
    for name, e in m2:
        out[name] = out.get(name, 0) + e
    return monomial(out)


def mono_div(m: Monomial, d: Monomial) -> Optional[Monomial]:
    """m / d, or None when d does not divide m"""
    out = dict(m)
    for name, e in d:
        if out.get(name, 0) < e:
            return None
        out[name] -= e
    return monomial(out)


def mono_degree(m: Monomial, name: str) -> int:
    return dict(m).get(name, 0)


def mono_vars(m: Monomial) -> Tuple[str, ...]:
    return tuple(name for name, _ in m)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


class SparsePoly:
    """Exact polynomial with sympy coefficients"""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Any]] = None):
        self.terms: Dict[Monomial, sp.Expr] = {}
        for mono, coeff in (terms or {}).items():
            c = sp.expand(sp.sympify(coeff))
            if c != 0:
                self.terms[mono] = c

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Any, Mapping[str, int]]]) -> "SparsePoly":
        out: Dict[Monomial, Any] = {}
        for coeff, exps in pairs:
            m = monomial(exps)
            out[m] = out.get(m, 0) + sp.sympify(coeff)
        return cls(out)

    @classmethod
    def constant(cls, value: Any) -> "SparsePoly":
        return cls({ONE: value})

    @classmethod
    def variable(cls, name: str) -> "SparsePoly":
        return cls({((name, 1),): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, sp.Expr]]:
        return iter(sorted(self.terms.items(), key=lambda item: item[0]))

    def support(self) -> Tuple[Monomial, ...]:
        return tuple(sorted(self.terms))

    def coefficient(self, m: Monomial) -> sp.Expr:
        return self.terms.get(m, sp.Integer(0))

    def variables(self) -> Tuple[str, ...]:
        names = set()
        for m in self.terms:
            names.update(mono_vars(m))
        return tuple(sorted(names))

    def degree_in(self, name: str) -> int:
        return max((mono_degree(m, name) for m in self.terms), default=0)

    # arithmetic

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        out: Dict[Monomial, Any] = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePoly(out)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: Any) -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        out: Dict[Monomial, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SparsePoly":
        result = SparsePoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms)))

    def scale(self, c: Any) -> "SparsePoly":
        return SparsePoly({m: coeff * sp.sympify(c) for m, coeff in self.terms.items()})

    def mul_monomial(self, m: Monomial, c: Any = 1) -> "SparsePoly":
        return SparsePoly({mono_mul(k, m): coeff * sp.sympify(c) for k, coeff in self.terms.items()})

    def divide_monomial(self, d: Monomial) -> "SparsePoly":
        """Exact division by a monomial"""
        out: Dict[Monomial, Any] = {}
        for m, c in self.terms.items():
            q = mono_div(m, d)
            if q is None:
                raise ValueError(f"{mono_str(d)} does not divide {mono_str(m)}")
            out[q] = c
        return SparsePoly(out)

    # restrictions and substitutions

    def filter(self, keep) -> "SparsePoly":
        return SparsePoly({m: c for m, c in self.terms.items() if keep(m)})

    def restrict_zero(self, names: Iterable[str]) -> "SparsePoly":
        """Set the given variables to zero"""
        zero = set(names)
        return self.filter(lambda m: not any(v in zero for v in mono_vars(m)))

    def only_in(self, names: Iterable[str]) -> "SparsePoly":
        """Terms supported on the given variables"""
        allowed = set(names)
        return self.filter(lambda m: all(v in allowed for v in mono_vars(m)))

    def set_one(self, name: str) -> "SparsePoly":
        out: Dict[Monomial, Any] = {}
        for m, c in self.terms.items():
            k = monomial({v: e for v, e in m if v != name})
            out[k] = out.get(k, 0) + c
        return SparsePoly(out)

    def substitute(self, name: str, value: "SparsePoly") -> "SparsePoly":
        """Replace every power of a variable by the matching power of value"""
        result = SparsePoly()
        powers: Dict[int, SparsePoly] = {0: SparsePoly.constant(1)}
        for m, c in self.terms.items():
            e = mono_degree(m, name)
            if e not in powers:
                powers[e] = value ** e
            rest = monomial({v: k for v, k in m if v != name})
            result = result + powers[e].mul_monomial(rest, c)
        return result

    def replace_monomial(self, target: Monomial, value: "SparsePoly") -> "SparsePoly":
        """One pass: each term divisible by target has target replaced by value"""
        result = SparsePoly()
        for m, c in self.terms.items():
            q = mono_div(m, target)
            if q is None:
                result = result + SparsePoly({m: c})
            else:
                result = result + value.mul_monomial(q, c)
        return result

    def to_expr(self, symbols: Optional[Mapping[str, sp.Symbol]] = None) -> sp.Expr:
        symbols = dict(symbols or {})
        expr = sp.Integer(0)
        for m, c in self.terms.items():
            term = c
            for name, e in m:
                sym = symbols.setdefault(name, sp.Symbol(name))
                term = term * sym ** e
            expr += term
        return expr

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda item: item[0], reverse=True):
            body = mono_str(m)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}" if m else "-1")
            elif not m:
                parts.append(f"{sp.sstr(c)}")
            else:
                coeff = sp.sstr(c)
                if len(c.args) > 1 and not c.is_Mul:
                    coeff = f"({coeff})"
                parts.append(f"{coeff}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SparsePoly({self})"


def expand_generic_block(
    variables: Sequence[str],
    weights: Mapping[str, int],
    degree: int,
) -> Iterator[Dict[str, int]]:
    """Every exponent vector on variables with the given weighted degree"""
    if not variables:
        if degree == 0:
            yield {}
        return
    head, tail = variables[0], variables[1:]
    w = weights[head]
    for e in range(degree // w + 1):
        for rest in expand_generic_block(tail, weights, degree - e * w):
            out = dict(rest)
            if e:
                out[head] = e
            yield out
