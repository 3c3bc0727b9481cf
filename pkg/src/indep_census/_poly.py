"""Sparse multivariate polynomials with exact rational coefficients."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from indep_census._errors import ValidationError

type Monomial = tuple[int, ...]
type Scalar = int | Fraction


@dataclass(frozen=True)
class ParamPoly:
    """A polynomial stored as a map from exponent vectors to nonzero coefficients."""

    nvars: int
    terms: dict[Monomial, Fraction] = field(default_factory=dict)
    names: tuple[str, ...] = ()

    @classmethod
    def constant(cls, nvars: int, value: Scalar, names: tuple[str, ...] = ()) -> "ParamPoly":
        value = Fraction(value)
        return cls(nvars, {(0,) * nvars: value} if value else {}, names)

    @classmethod
    def variable(cls, nvars: int, index: int, names: tuple[str, ...] = ()) -> "ParamPoly":
        exponents = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exponents: Fraction(1)}, names)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def _lift(self, other: "ParamPoly | Scalar") -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.nvars != self.nvars:
                raise ValidationError("polynomials live in different rings")
            return other
        return ParamPoly.constant(self.nvars, other, self.names)

    def __add__(self, other: "ParamPoly | Scalar") -> "ParamPoly":
        terms = dict(self.terms)
        for mono, coeff in self._lift(other).terms.items():
            total = terms.get(mono, Fraction(0)) + coeff
            if total:
                terms[mono] = total
            else:
                terms.pop(mono, None)
        return ParamPoly(self.nvars, terms, self.names)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.nvars, {m: -c for m, c in self.terms.items()}, self.names)

    def __sub__(self, other: "ParamPoly | Scalar") -> "ParamPoly":
        return self + -self._lift(other)

    def __rsub__(self, other: Scalar) -> "ParamPoly":
        return -self + other

    def __mul__(self, other: "ParamPoly | Scalar") -> "ParamPoly":
        rhs = self._lift(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in rhs.terms.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                terms[mono] = terms.get(mono, Fraction(0)) + c1 * c2
        return ParamPoly(self.nvars, {m: c for m, c in terms.items() if c}, self.names)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = ParamPoly.constant(self.nvars, other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a point given as one value per variable."""
        if len(point) != self.nvars:
            raise ValidationError(f"expected {self.nvars} values, got {len(point)}")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for value, exponent in zip(point, mono):
                if exponent:
                    term *= Fraction(value) ** exponent
            total += term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.names or tuple(f"x{i}" for i in range(self.nvars))
        parts = []
        for mono, coeff in sorted(self.terms.items(), reverse=True):
            factors = [
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, mono) if e
            ]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            else:
                shown = f"({coeff})" if coeff.denominator != 1 else str(coeff)
                parts.append("*".join([shown, *factors]))
        return " + ".join(parts).replace("+ -", "- ")
