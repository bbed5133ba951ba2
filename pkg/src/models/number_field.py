"""
Exact arithmetic in a real algebraic number field Q(beta) = Q[z]/(p).

A field is described by a monic integer minimal polynomial p and a rational
interval isolating one real root beta. Elements are stored as rational
coordinates in the power basis 1, beta, ..., beta^(d-1). Ring operations go
through sympy polynomials over QQ; signs and approximations come from
bisecting the isolating interval with exact rational endpoints, never from
floating point.

Example:
    >>> golden = FieldSpec(min_poly=(-1, -1, 1), root_interval=(1, 2))
    >>> phi = AlgebraicNumber.generator(golden)
    >>> phi * phi == phi + 1
    True
    >>> (1 - phi).sign()
    -1
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator
from sympy import Matrix, Poly, QQ, Rational as SympyRational, divisors, symbols

from src.config import get_settings


logger = logging.getLogger(__name__)

# Exact rationals are gcd-normalized with a positive denominator by construction
Rational = Fraction

Z = symbols("z")


class NumberFieldError(Exception):
    """Base exception for number field errors."""


class InvalidFieldSpecError(NumberFieldError):
    """Raised when a minimal polynomial and root interval do not define a field."""


class FieldMismatchError(NumberFieldError):
    """Raised when two operands live in different fields."""


class DivisionByZeroError(NumberFieldError, ZeroDivisionError):
    """Raised when inverting the zero element."""


class ReduciblePolynomialError(NumberFieldError):
    """Raised when arithmetic exposes a zero divisor, i.e. min_poly is reducible."""


# ============================================================================
# Rational and polynomial helpers
# ============================================================================

def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """
    Parse ``p/q`` or an integer into a normalized Fraction.

    Raises:
        ValueError: If the text is not a rational
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"Zero denominator in rational: {text!r}")


def to_sympy(value: Fraction) -> SympyRational:
    return SympyRational(value.numerator, value.denominator)


def from_sympy(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def rational_matrix(rows: Iterable[Iterable[Fraction]]) -> Matrix:
    """Build a sympy Matrix with exact rational entries."""
    return Matrix([[to_sympy(Fraction(c)) for c in row] for row in rows])


def _poly(coeffs: Sequence[Fraction]) -> Poly:
    """Polynomial in z from coefficients listed low-to-high."""
    return Poly([to_sympy(Fraction(c)) for c in reversed(coeffs)], Z, domain=QQ)


def _coeffs(poly: Poly, length: int) -> Tuple[Fraction, ...]:
    values = [from_sympy(c) for c in reversed(poly.all_coeffs())]
    values += [Fraction(0)] * (length - len(values))
    return tuple(values[:length])


def _evaluate(coeffs: Sequence, x: Fraction) -> Fraction:
    """Horner evaluation at a rational point."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _interval_evaluate(
    coeffs: Sequence[Fraction],
    lo: Fraction,
    hi: Fraction
) -> Tuple[Fraction, Fraction]:
    """
    Enclose the range of a polynomial over [lo, hi] by interval Horner.

    The enclosure is inclusion-monotone: nested input intervals give nested
    output intervals.
    """
    acc_lo = acc_hi = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        products = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo = min(products) + c
        acc_hi = max(products) + c
    return acc_lo, acc_hi


# ============================================================================
# FieldSpec
# ============================================================================

class FieldSpec(BaseModel):
    """
    A real number field Q(beta) given by a minimal polynomial and a root.

    Attributes:
        min_poly: Integer coefficients c_0..c_d, low-to-high, monic
        root_interval: Rationals (lo, hi) isolating exactly one real root beta
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    min_poly: Tuple[int, ...]
    root_interval: Tuple[Fraction, Fraction]

    @field_validator("min_poly", mode="before")
    @classmethod
    def validate_min_poly(cls, v) -> Tuple[int, ...]:
        """
        Validate the minimal polynomial shape.

        Raises:
            ValueError: If the degree is below 1 or the polynomial is not monic
        """
        coeffs = tuple(int(c) for c in v)
        if len(coeffs) < 2:
            raise ValueError("min_poly must have degree at least 1")
        if coeffs[-1] != 1:
            raise ValueError(f"min_poly must be monic, leading coefficient is {coeffs[-1]}")
        return coeffs

    @field_validator("root_interval", mode="before")
    @classmethod
    def validate_root_interval(cls, v) -> Tuple[Fraction, Fraction]:
        values = tuple(parse_rational(x) for x in v)
        if len(values) != 2:
            raise ValueError("root_interval needs exactly two endpoints")
        return values

    @model_validator(mode="after")
    def validate_isolation(self) -> "FieldSpec":
        """
        Check that the interval isolates a simple real root.

        Runs the squarefree check gcd(p, p') = 1, an exact Sturm root count over
        the interval and a rational-root screen.
        Irreducibility itself is not verified here.

        Raises:
            ValueError: If any of the checks fails
        """
        lo, hi = self.root_interval
        if lo >= hi:
            raise ValueError(f"root interval is empty: ({lo}, {hi})")
        s_lo = _sign(_evaluate(self.min_poly, lo))
        s_hi = _sign(_evaluate(self.min_poly, hi))
        if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
            raise ValueError(
                f"p({lo}) and p({hi}) must have opposite nonzero signs"
            )

        p = _poly(self.min_poly)
        if p.gcd(p.diff(Z)).degree() > 0:
            raise ValueError("min_poly is not squarefree")
        root_count = p.count_roots(to_sympy(lo), to_sympy(hi))
        if root_count != 1:
            raise ValueError(
                f"root interval ({lo}, {hi}) contains {root_count} real roots, expected exactly one"
            )

        if self.degree >= 2:
            constant = self.min_poly[0]
            if constant == 0:
                raise ValueError("min_poly has the rational root 0")
            for r in divisors(abs(constant)):
                for candidate in (r, -r):
                    if _evaluate(self.min_poly, Fraction(candidate)) == 0:
                        raise ValueError(f"min_poly has the rational root {candidate}")
        return self

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def describe(self) -> str:
        return " ".join(str(c) for c in self.min_poly)


def make_field_spec(
    min_poly: Sequence[int],
    root_interval: Sequence[Union[str, int, Fraction]]
) -> FieldSpec:
    """
    Build a FieldSpec, reporting validation failures as InvalidFieldSpecError.

    Raises:
        InvalidFieldSpecError: If any FieldSpec invariant fails
    """
    try:
        return FieldSpec(min_poly=tuple(min_poly), root_interval=tuple(root_interval))
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        poly = " ".join(str(c) for c in min_poly)
        raise InvalidFieldSpecError(f"Invalid field [{poly}]: {messages}") from e


@lru_cache(maxsize=None)
def _modulus(field: FieldSpec) -> Poly:
    return _poly(field.min_poly)


@lru_cache(maxsize=8192)
def root_bracket(field: FieldSpec, depth: int) -> Tuple[Fraction, Fraction]:
    """
    Isolating interval of beta after ``depth`` bisection steps.

    Deterministic, so brackets at increasing depth are nested.
    """
    if depth == 0:
        return field.root_interval
    lo, hi = root_bracket(field, depth - 1)
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    s_mid = _sign(_evaluate(field.min_poly, mid))
    if s_mid == 0:
        return mid, mid
    s_lo = _sign(_evaluate(field.min_poly, field.root_interval[0]))
    return (mid, hi) if s_mid == s_lo else (lo, mid)


# ============================================================================
# AlgebraicNumber
# ============================================================================

Scalar = Union[int, Fraction, "AlgebraicNumber"]


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    """
    An element of Q(beta) in power-basis coordinates.

    Values are immutable. Equality is exact coordinate equality within one
    field. Python operators implement the field operations; integers and
    Fractions are accepted as scalars.

    Attributes:
        field: The FieldSpec this element belongs to
        coords: d rational coordinates for 1, beta, ..., beta^(d-1)
    """

    field: FieldSpec
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.field.degree:
            raise ValueError(
                f"Expected {self.field.degree} coordinates, got {len(self.coords)}"
            )

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def of(cls, field: FieldSpec, coords: Iterable[Union[int, str, Fraction]]) -> "AlgebraicNumber":
        return cls(field, tuple(parse_rational(c) for c in coords))

    @classmethod
    def from_rational(cls, field: FieldSpec, value: Union[int, Fraction]) -> "AlgebraicNumber":
        coords = [Fraction(0)] * field.degree
        coords[0] = Fraction(value)
        return cls(field, tuple(coords))

    @classmethod
    def zero(cls, field: FieldSpec) -> "AlgebraicNumber":
        return cls.from_rational(field, 0)

    @classmethod
    def one(cls, field: FieldSpec) -> "AlgebraicNumber":
        return cls.from_rational(field, 1)

    @classmethod
    def generator(cls, field: FieldSpec) -> "AlgebraicNumber":
        """The root beta itself (beta is rational when the degree is 1)."""
        if field.degree == 1:
            return cls.from_rational(field, -field.min_poly[0])
        coords = [Fraction(0)] * field.degree
        coords[1] = Fraction(1)
        return cls(field, tuple(coords))

    # ------------------------------------------------------------------
    # Predicates
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        """True iff every power-basis coordinate is an integer."""
        return all(c.denominator == 1 for c in self.coords)

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(
                    f"Operands live in different fields: [{self.field.describe()}] "
                    f"vs [{other.field.describe()}]"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber.from_rational(self.field, other)
        return NotImplemented

    def __add__(self, other: Scalar) -> "AlgebraicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(self.field, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self.field, tuple(-x for x in self.coords))

    def __sub__(self, other: Scalar) -> "AlgebraicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(self.field, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __rsub__(self, other: Scalar) -> "AlgebraicNumber":
        return (-self) + other

    def scale(self, factor: Union[int, Fraction]) -> "AlgebraicNumber":
        """Multiply by a rational without leaving the coordinate level."""
        return AlgebraicNumber(self.field, tuple(x * factor for x in self.coords))

    def __mul__(self, other: Scalar) -> "AlgebraicNumber":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            return self.scale(other.coords[0])
        if self.is_rational():
            return other.scale(self.coords[0])
        # Degree 2d-2 product reduced modulo the minimal polynomial
        product = (_poly(self.coords) * _poly(other.coords)).rem(_modulus(self.field))
        return AlgebraicNumber(self.field, _coeffs(product, self.field.degree))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        """
        Multiplicative inverse by extended Euclid against min_poly.

        Raises:
            DivisionByZeroError: If the element is zero
            ReduciblePolynomialError: If gcd(rep(x), p) is nonconstant
        """
        if self.is_zero():
            raise DivisionByZeroError("Cannot invert the zero element")
        if self.is_rational():
            return AlgebraicNumber.from_rational(self.field, 1 / self.coords[0])

        s, _, h = _poly(self.coords).gcdex(_modulus(self.field))
        if h.degree() > 0:
            raise ReduciblePolynomialError(
                f"min_poly [{self.field.describe()}] is reducible: "
                f"element {self.format()} shares a factor of degree {h.degree()}"
            )
        inverse = AlgebraicNumber(self.field, _coeffs(s, self.field.degree))
        return inverse.scale(1 / from_sympy(h.LC()))

    def __truediv__(self, other: Scalar) -> "AlgebraicNumber":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZeroError("Division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "AlgebraicNumber":
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "AlgebraicNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = AlgebraicNumber.one(self.field)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # Equality
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return self.coords == other.coords and (
            other.field is self.field or other.field == self.field
        )

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    # ------------------------------------------------------------------
    # Real embedding
    # ------------------------------------------------------------------

    def enclosure(self, depth: int) -> Tuple[Fraction, Fraction]:
        """Rational interval containing the value after ``depth`` bisections."""
        lo, hi = root_bracket(self.field, depth)
        return _interval_evaluate(self.coords, lo, hi)

    def sign(self) -> int:
        """
        Sign of the real value: -1, 0 or +1.

        Zero iff every coordinate is zero. Otherwise the isolating interval is
        bisected until the enclosure of the value excludes zero.

        Raises:
            ReduciblePolynomialError: If the value vanishes at beta without the
                element being zero (a zero divisor of a reducible min_poly)
        """
        if self.is_zero():
            return 0
        if self.is_rational():
            return _sign(self.coords[0])

        probe_depth = get_settings().refinement_gcd_check_after

        depth = 0
        while True:
            v_lo, v_hi = self.enclosure(depth)
            if v_lo > 0:
                return 1
            if v_hi < 0:
                return -1
            depth += 1
            if depth == probe_depth:
                self._probe_zero_divisor()

    def _probe_zero_divisor(self) -> None:
        g = _poly(self.coords).gcd(_modulus(self.field))
        if g.degree() == 0:
            return
        lo, hi = self.field.root_interval
        g_coeffs = [from_sympy(c) for c in reversed(g.all_coeffs())]
        if _sign(_evaluate(g_coeffs, lo)) != _sign(_evaluate(g_coeffs, hi)):
            raise ReduciblePolynomialError(
                f"element {self.format()} vanishes at the chosen root of "
                f"[{self.field.describe()}], which is therefore reducible"
            )
        logger.debug("gcd probe found a factor away from the chosen root; refining on")

    def approximate(self, eps: Fraction) -> Fraction:
        """
        Rational q with |q - x| < eps.

        Raises:
            ValueError: If eps is not positive
        """
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if self.is_rational():
            return self.coords[0]
        depth = 0
        while True:
            v_lo, v_hi = self.enclosure(depth)
            if v_hi - v_lo < eps:
                return (v_lo + v_hi) / 2
            depth += 1

    def floor(self) -> int:
        """Exact floor of the real value."""
        if self.is_rational():
            return math.floor(self.coords[0])
        n = math.floor(self.approximate(Fraction(1, 2)))
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def fractional_part(self) -> "AlgebraicNumber":
        """The representative of x mod 1 in [0, 1)."""
        return self - self.floor()

    def compare(self, other: Scalar) -> int:
        return (self - other).sign()

    def __lt__(self, other: Scalar) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: Scalar) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: Scalar) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: Scalar) -> bool:
        return self.compare(other) >= 0

    # ------------------------------------------------------------------
    # Degree over Q
    # ------------------------------------------------------------------

    def minimal_degree(self) -> int:
        """
        Degree of the element over Q.

        The first k for which 1, x, ..., x^k are linearly dependent over Q,
        found by exact rank computation (no factorization).
        """
        power = AlgebraicNumber.one(self.field)
        rows = [power.coords]
        for k in range(1, self.field.degree + 1):
            power = power * self
            rows.append(power.coords)
            if rational_matrix(rows).rank() < len(rows):
                return k
        return self.field.degree

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def format(self, sep: str = " ") -> str:
        return sep.join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.format()})"


def evaluate_polynomial(coeffs: Sequence[Union[int, Fraction]], x: AlgebraicNumber) -> AlgebraicNumber:
    """Evaluate a polynomial given low-to-high at a field element."""
    acc = AlgebraicNumber.zero(x.field)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ============================================================================
# Functional aliases
# ============================================================================

def field_add(x: AlgebraicNumber, y: AlgebraicNumber) -> AlgebraicNumber:
    return x + y


def field_mul(x: AlgebraicNumber, y: AlgebraicNumber) -> AlgebraicNumber:
    return x * y


def field_neg(x: AlgebraicNumber) -> AlgebraicNumber:
    return -x


def field_inv(x: AlgebraicNumber) -> AlgebraicNumber:
    return x.inverse()


def sign_of(x: AlgebraicNumber) -> int:
    return x.sign()


def approximate(x: AlgebraicNumber, eps: Fraction) -> Fraction:
    return x.approximate(eps)
