"""
Analytic bound schemas module.
"""
from fractions import Fraction
from typing import List, Union

from pydantic import Field, computed_field, model_validator

from app.schemas.base import FrozenSchema

LEMMA_CONSTANT = Fraction(6, 7)


class BoundParams(FrozenSchema):
    """List sizes s (augmented) and t (given), with s > t > 0."""
    s: int
    t: int

    @model_validator(mode="after")
    def check_sizes(self) -> "BoundParams":
        if not (self.s > self.t > 0):
            raise ValueError(f"require s > t > 0, got s={self.s}, t={self.t}")
        return self

    @computed_field
    @property
    def u(self) -> int:
        return self.s - self.t

    @computed_field
    @property
    def v(self) -> float:
        return self.t / self.s

    @property
    def c(self) -> Fraction:
        return LEMMA_CONSTANT


class QValue(FrozenSchema):
    """
    The unique root of f_{s,t} in (0, 1) with its bisection bracket.

    f(bracket_lo) >= 0 >= f(bracket_hi) holds exactly, not just in floating point.
    """
    params: BoundParams
    q: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int

    @property
    def width(self) -> float:
        return self.bracket_hi - self.bracket_lo


class IntPolynomial(FrozenSchema):
    """Dense integer polynomial; coefficients[k] multiplies x**k."""
    coefficients: List[int]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    @property
    def constant(self) -> int:
        return self.coefficients[0]

    def evaluate(self, x: Union[int, float, Fraction]) -> Union[float, Fraction]:
        """Horner evaluation; exact when x is an int or Fraction."""
        if isinstance(x, float):
            acc = 0.0
        else:
            x = Fraction(x)
            acc = Fraction(0)
        for coeff in reversed(self.coefficients):
            acc = acc * x + coeff
        return acc

    def __str__(self) -> str:
        terms = []
        for power, coeff in enumerate(self.coefficients):
            if coeff == 0:
                continue
            magnitude = abs(coeff)
            if power == 0:
                body = str(magnitude)
            else:
                body = "" if magnitude == 1 else str(magnitude)
                body += "x" if power == 1 else f"x^{power}"
            sign = "-" if coeff < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


class RootCertificate(FrozenSchema):
    """Exact signs of p(x) = u^t f_{s,t}(x) at a root bracket."""
    params: BoundParams
    polynomial: IntPolynomial
    lo: float
    hi: float
    p_lo_sign: int
    p_hi_sign: int

    @property
    def straddles(self) -> bool:
        return self.p_lo_sign >= 0 >= self.p_hi_sign


class LemmaBounds(FrozenSchema):
    """Outcome of checking (6/7)(t/s) < q_{s,t} <= t/s."""
    params: BoundParams
    q: float
    lower: float
    upper: float
    f_at_upper: float
    ok: bool


class LemmaCheck(FrozenSchema):
    """Value of g(v) = ln(1 - cv) + v(1 - cv)/(1 - v)."""
    v: float = Field(gt=0, lt=1)
    c: Fraction = LEMMA_CONSTANT
    g_value: float


class RatioEntry(FrozenSchema):
    s: int
    t: int
    q: float
    ratio: float


class RatioReport(FrozenSchema):
    """q_{s,t}/(t/s) over the integer grid and along the s -> infinity limit curve."""
    s_max: int
    grid: List[RatioEntry]
    grid_min: float
    grid_argmin: RatioEntry
    limit_min: float
    limit_argmin_v: float
