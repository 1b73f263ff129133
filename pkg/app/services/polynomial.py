"""Exact integer-coefficient univariate polynomials

Coefficients are Python ints indexed by degree, so values never depend on
machine word width. Sign evaluation at a rational p/q is done on the
homogenised integer form and never touches floating point. Algebra over the
integers (gcd, square-free part, real-root counting and isolation) goes
through sympy.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import sympy
from sympy import ZZ, Poly, Symbol


Rational = Union[int, Fraction]

X = Symbol("x")


def to_sympy_rational(x: Rational) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def from_sympy_rational(x: sympy.Rational) -> Fraction:
    return Fraction(int(x.p), int(x.q))


@dataclass(frozen=True)
class Polynomial:
    """c0 + c1 x + ... + cn x^n with exact integer coefficients"""
    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coefficients = [int(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def from_terms(cls, terms: Dict[int, int]) -> "Polynomial":
        if not terms:
            return cls(())
        coefficients = [0] * (max(terms) + 1)
        for degree, coefficient in terms.items():
            coefficients[degree] += coefficient
        return cls(tuple(coefficients))

    @classmethod
    def trinomial(cls, n: int, a: int, b: int) -> "Polynomial":
        """x^n - x^a - x^b"""
        terms = {n: 1}
        for exponent in (a, b):
            terms[exponent] = terms.get(exponent, 0) - 1
        return cls.from_terms(terms)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial"""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, degree: int) -> int:
        return self.coefficients[degree] if 0 <= degree < len(self.coefficients) else 0

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, c in enumerate(self.coefficients):
            if c:
                for j, e in enumerate(other.coefficients):
                    product[i + j] += c * e
        return Polynomial(tuple(product))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coefficients) if i > 0))

    def evaluate(self, x: Rational) -> Fraction:
        """Exact value at a rational point (Horner)"""
        x = Fraction(x)
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def __call__(self, x: Rational) -> Fraction:
        return self.evaluate(x)

    def sign_at(self, x: Rational) -> int:
        """Sign of the value at x = p/q from q^deg * P(p/q), integers only"""
        if self.is_zero():
            return 0
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = self.coefficients[-1]
        q_power = q
        for c in reversed(self.coefficients[:-1]):
            acc = acc * p + c * q_power
            q_power *= q
        return (acc > 0) - (acc < 0)

    # Algebra over ZZ (sympy)

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], X, domain=ZZ)

    @classmethod
    def from_sympy(cls, poly: Poly) -> "Polynomial":
        """Integer polynomial from a sympy Poly; rational coefficients are cleared by a positive factor"""
        if poly.is_zero:
            return cls(())
        _, poly = poly.clear_denoms(convert=True)
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def primitive(self) -> "Polynomial":
        """Content divided out, leading coefficient positive"""
        if self.is_zero():
            return self
        _, part = self.to_sympy().primitive()
        if part.LC() < 0:
            part = -part
        return Polynomial.from_sympy(part)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Greatest common divisor over Q as a primitive integer polynomial"""
        return Polynomial.from_sympy(self.to_sympy().gcd(other.to_sympy())).primitive()

    def squarefree_part(self) -> "Polynomial":
        if self.degree < 1:
            return self.primitive()
        return Polynomial.from_sympy(self.to_sympy().sqf_part()).primitive()

    def count_roots(self, lo: Rational, hi: Rational) -> int:
        """Number of distinct real roots in the closed interval [lo, hi]"""
        if self.degree < 1:
            return 0
        return int(self.to_sympy().count_roots(to_sympy_rational(lo), to_sympy_rational(hi)))

    def rational_roots(self) -> List[Fraction]:
        """Distinct rational roots, ascending, from the linear factors over ZZ"""
        if self.degree < 1:
            return []
        return sorted(from_sympy_rational(r) for r in self.to_sympy().ground_roots())

    def real_root_intervals(
        self,
        lo: Optional[Rational] = None,
        hi: Optional[Rational] = None,
    ) -> List[Tuple[Fraction, Fraction]]:
        """Isolating intervals [s, t] of the distinct real roots, ascending; s == t for an exact root"""
        if self.degree < 1:
            return []
        intervals = self.squarefree_part().to_sympy().intervals(
            inf=None if lo is None else to_sympy_rational(lo),
            sup=None if hi is None else to_sympy_rational(hi),
            sqf=True,
        )
        return sorted(
            (from_sympy_rational(s), from_sympy_rational(t)) for s, t in intervals
        )

    # Rendering

    def to_dense(self) -> str:
        """Ascending coefficients "c0 c1 ... cn\""""
        return " ".join(str(c) for c in self.coefficients) if self.coefficients else "0"

    def to_sparse(self) -> str:
        """Descending nonzero terms, e.g. "x^6 - 2x - 1\""""
        terms = [(d, c) for d, c in enumerate(self.coefficients) if c]
        if not terms:
            return "0"
        parts: List[str] = []
        for d, c in reversed(terms):
            magnitude = abs(c)
            if d == 0:
                body = str(magnitude)
            else:
                power = "x" if d == 1 else f"x^{d}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def as_trinomial(self) -> Optional[Tuple[int, int, int]]:
        """(n, a, b) with a <= b when self is x^n - x^a - x^b"""
        if not self.is_monic() or self.degree < 1:
            return None
        lower = {d: c for d, c in enumerate(self.coefficients[:-1]) if c}
        if len(lower) == 1:
            (d, c), = lower.items()
            return (self.degree, d, d) if c == -2 else None
        if len(lower) == 2 and all(c == -1 for c in lower.values()):
            a, b = sorted(lower)
            return (self.degree, a, b)
        return None

    def __str__(self) -> str:
        return self.to_sparse()


