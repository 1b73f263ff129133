"""Certified Perron roots and their comparison

Brackets produced here are certified: their endpoints are exact rationals at
which the relevant polynomial has been evaluated with exact sign. The one
exception is power iteration, whose Collatz-Wielandt bounds are floating point
and serve only as a cross-check.
"""
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    ConvergenceError,
    InvalidExponentsError,
    InvalidOrderError,
    NotStronglyConnectedError,
    PreconditionError,
    UnresolvedComparisonError,
)
from app.core.logging import logger
from app.services.charpoly_service import CharpolyService, get_charpoly_service
from app.services.digraph_service import Digraph, is_strongly_connected
from app.services.family_service import CycleParams, InftyParams, ThetaParams, identify_family
from app.services.polynomial import Polynomial, Rational


class EstimateSource(str, Enum):
    """How a Perron estimate was obtained"""
    TRINOMIAL = "trinomial"
    POWER_ITERATION = "power-iteration"
    POLYNOMIAL = "polynomial"


class Ordering(str, Enum):
    """Certified ordering of two Perron roots"""
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True)
class RootBracket:
    """Closed rational interval [lo, hi] enclosing a root; lo == hi when the root is exact"""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, root: Rational) -> "RootBracket":
        return cls(Fraction(root), Fraction(root))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "RootBracket") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def to_dict(self) -> Dict[str, str]:
        return {"lo": str(self.lo), "hi": str(self.hi)}


@dataclass(frozen=True)
class PerronEstimate:
    """Approximate Perron root together with its enclosing bracket"""
    value: float
    bracket: RootBracket
    source: EstimateSource

    @property
    def certified(self) -> bool:
        return self.source != EstimateSource.POWER_ITERATION

    def format_decimal(self, precision: int) -> str:
        """Bracket midpoint rounded half-even to precision decimal places"""
        midpoint = self.bracket.midpoint
        with localcontext() as ctx:
            ctx.prec = precision + 40
            value = Decimal(midpoint.numerator) / Decimal(midpoint.denominator)
            return str(value.quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "bracket": self.bracket.to_dict(),
            "source": self.source.value,
        }


@dataclass(frozen=True)
class Comparison:
    """Evidence for a certified ordering of the largest real roots of two polynomials"""
    ordering: Ordering
    left: Polynomial
    right: Polynomial
    left_bracket: RootBracket
    right_bracket: RootBracket
    via_gcd: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ordering": self.ordering.value,
            "left": self.left.to_sparse(),
            "right": self.right.to_sparse(),
            "left_bracket": self.left_bracket.to_dict(),
            "right_bracket": self.right_bracket.to_dict(),
            "via_gcd": self.via_gcd,
        }


def default_tolerance() -> Fraction:
    return Fraction(1, 10 ** settings.RHO_TOLERANCE_DIGITS)


def comparison_cap() -> Fraction:
    return Fraction(1, 10 ** settings.COMPARE_REFINEMENT_DIGITS)


# Root isolation

def _halve(q: Polynomial, bracket: RootBracket) -> RootBracket:
    """One exact-sign bisection step; q < 0 at lo and q > 0 at hi"""
    if bracket.is_exact():
        return bracket
    mid = bracket.midpoint
    sign = q.sign_at(mid)
    if sign == 0:
        return RootBracket.exact(mid)
    if sign < 0:
        return RootBracket(mid, bracket.hi)
    return RootBracket(bracket.lo, mid)


def refine(q: Polynomial, bracket: RootBracket, tol: Fraction) -> RootBracket:
    """Bisect until the width is at most tol"""
    while bracket.width > tol:
        bracket = _halve(q, bracket)
    return bracket


def _has_single_positive_root(p: Polynomial) -> bool:
    """Positive leading coefficient, all other coefficients <= 0, at least one < 0

    Then p(x)/x^n is strictly increasing on x > 0 (one Descartes sign change),
    so the unique positive root is the largest real root and p changes sign there.
    """
    lower = p.coefficients[:-1]
    return p.leading > 0 and all(c <= 0 for c in lower) and any(c < 0 for c in lower)


def _estimate(bracket: RootBracket, source: EstimateSource) -> PerronEstimate:
    return PerronEstimate(value=float(bracket.midpoint), bracket=bracket, source=source)


class PerronService:
    """Certified spectral radii and exact comparison of Perron roots"""

    def __init__(self, charpoly: Optional[CharpolyService] = None):
        self.charpoly = charpoly or get_charpoly_service()

    def isolate_largest_root(
        self,
        p: Polynomial,
        lo: Optional[Rational] = None,
        hi: Optional[Rational] = None,
    ) -> Tuple[Polynomial, RootBracket]:
        """Bracket holding the largest real root of p (within [lo, hi] when given) and no other root

        Returns the polynomial whose signs drive further bisection (p itself on the
        monotone fast path, otherwise its square-free part) and the bracket, with
        that polynomial negative at lo and positive at hi unless the bracket is exact.
        """
        if p.degree < 1:
            raise PreconditionError(f"{p.to_sparse()} has no roots")

        if _has_single_positive_root(p):
            start = Fraction(1)
            sign = p.sign_at(start)
            if sign == 0:
                return p, RootBracket.exact(start)
            if sign > 0:
                start = Fraction(0)
            upper = Fraction(2)
            while p.sign_at(upper) < 0:
                upper *= 2
            if p.sign_at(upper) == 0:
                return p, RootBracket.exact(upper)
            return p, RootBracket(start, upper)

        q = p.squarefree_part()
        intervals = q.real_root_intervals(lo, hi)
        if not intervals:
            window = "" if lo is None and hi is None else f" in [{lo}, {hi}]"
            raise PreconditionError(f"{p.to_sparse()} has no real root{window}")
        s, t = max(intervals, key=lambda interval: (interval[1], interval[0]))

        # an endpoint s may also be the root isolated by the interval below
        exact = [r for r in q.rational_roots() if s <= r <= t]
        if exact and (exact[-1] > s or s == t or q.count_roots(s, t) == 1):
            return q, RootBracket.exact(exact[-1])

        if q.sign_at(t) < 0:
            q = -q
        while q.sign_at(s) == 0:
            mid = (s + t) / 2
            if q.sign_at(mid) < 0:
                s = mid
            else:
                t = mid
        return q, RootBracket(s, t)

    def largest_root(
        self,
        p: Polynomial,
        tol: Optional[Fraction] = None,
        lo: Optional[Rational] = None,
        hi: Optional[Rational] = None,
    ) -> RootBracket:
        """Certified bracket of width <= tol around the largest real root of p"""
        q, bracket = self.isolate_largest_root(p, lo, hi)
        return refine(q, bracket, tol if tol is not None else default_tolerance())

    # Spectral radius

    def trinomial_root(self, n: int, a: int, b: int, tol: Optional[Fraction] = None) -> PerronEstimate:
        """Unique root > 1 of x^n - x^a - x^b, bisected from [1, 2]

        f'(x) = n x^(n-1) - b x^(b-1) - a x^(a-1) > 0 for x > 1 whenever n >= a+b+1,
        so the sign change on [1, 2] certifies the root.
        """
        if not (0 <= a <= b < n and n >= a + b + 1):
            raise InvalidExponentsError(f"need 0 <= a <= b < n and n >= a+b+1, got n={n}, a={a}, b={b}")

        f = Polynomial.trinomial(n, a, b)
        tol = tol if tol is not None else default_tolerance()
        if f.sign_at(2) == 0:
            return _estimate(RootBracket.exact(2), EstimateSource.TRINOMIAL)
        bracket = refine(f, RootBracket(Fraction(1), Fraction(2)), tol)
        return _estimate(bracket, EstimateSource.TRINOMIAL)

    def power_iteration_rho(
        self,
        d: Digraph,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
    ) -> PerronEstimate:
        """rho(A) = rho(A + I) - 1 by power iteration on the primitive matrix A + I

        Starts from the all-ones vector; min/max of (Bx)_i / x_i bound rho(B)
        (Collatz-Wielandt) and the loop stops once they are within tol.
        """
        if not is_strongly_connected(d):
            raise NotStronglyConnectedError("power iteration needs an irreducible adjacency matrix")

        tol = tol if tol is not None else settings.POWER_ITERATION_TOLERANCE
        max_iter = max_iter if max_iter is not None else settings.POWER_ITERATION_MAX_ITER

        shifted = d.adjacency_matrix().astype(float) + np.eye(d.order)
        x = np.ones(d.order)
        for iteration in range(max_iter):
            y = shifted @ x
            ratios = y / x
            lower, upper = float(ratios.min()) - 1.0, float(ratios.max()) - 1.0
            if upper - lower <= tol:
                break
            x = y / y.max()
        else:
            raise ConvergenceError(f"power iteration did not reach tolerance {tol} in {max_iter} steps")

        logger.debug(f"Power iteration converged after {iteration + 1} steps: [{lower}, {upper}]")
        return PerronEstimate(
            value=(lower + upper) / 2,
            bracket=RootBracket(Fraction(lower), Fraction(upper)),
            source=EstimateSource.POWER_ITERATION,
        )

    def rho(
        self,
        d: Digraph,
        tol: Optional[Fraction] = None,
        cross_check: Optional[bool] = None,
    ) -> PerronEstimate:
        """Spectral radius of a strongly connected digraph

        C_n is exactly 1; θ and ∞ use their trinomials; anything else isolates the
        largest root of charpoly_det in [1, max out-degree + 1] and is cross-checked
        by power iteration.
        """
        if d.order < 2:
            raise InvalidOrderError(f"rho needs order >= 2, got {d.order}")
        if not is_strongly_connected(d):
            raise NotStronglyConnectedError("rho needs a strongly connected digraph")

        family = identify_family(d)
        if isinstance(family, CycleParams):
            return _estimate(RootBracket.exact(1), EstimateSource.POLYNOMIAL)
        if isinstance(family, ThetaParams):
            return self.trinomial_root(family.order, family.a, family.b, tol)
        if isinstance(family, InftyParams):
            return self.trinomial_root(family.order, family.k - 1, family.l - 1, tol)

        bracket = self.largest_root(self.charpoly.charpoly_det(d), tol, lo=1, hi=d.max_out_degree + 1)
        estimate = _estimate(bracket, EstimateSource.POLYNOMIAL)

        cross_check = settings.RHO_CROSS_CHECK if cross_check is None else cross_check
        if cross_check:
            iterated = self.power_iteration_rho(d)
            if abs(iterated.value - estimate.value) > settings.RHO_CROSS_CHECK_TOLERANCE:
                logger.warning(
                    f"Power iteration {iterated.value} disagrees with polynomial root {estimate.value}"
                )
                raise ConvergenceError("power iteration and characteristic polynomial disagree")
        return estimate

    # Comparison

    def certified_comparison(self, left: Polynomial, right: Polynomial) -> Comparison:
        """Order the largest real roots of two polynomials with exact signs

        Brackets are bisected until disjoint. Overlap down to the refinement cap is
        resolved as equality only when the gcd has a root inside both brackets.
        """
        left_q, left_bracket = self.isolate_largest_root(left)
        if left == right:
            return Comparison(Ordering.EQUAL, left, right, left_bracket, left_bracket)
        right_q, right_bracket = self.isolate_largest_root(right)

        cap = comparison_cap()
        while left_bracket.overlaps(right_bracket):
            if left_bracket.width <= cap and right_bracket.width <= cap:
                break
            if left_bracket.width >= right_bracket.width:
                left_bracket = _halve(left_q, left_bracket)
            else:
                right_bracket = _halve(right_q, right_bracket)

        if left_bracket.hi < right_bracket.lo:
            return Comparison(Ordering.LESS, left, right, left_bracket, right_bracket)
        if right_bracket.hi < left_bracket.lo:
            return Comparison(Ordering.GREATER, left, right, left_bracket, right_bracket)
        if left_bracket.is_exact() and right_bracket.is_exact():
            return Comparison(Ordering.EQUAL, left, right, left_bracket, right_bracket)

        common = left.gcd(right)
        if common.degree >= 1:
            lo = max(left_bracket.lo, right_bracket.lo)
            hi = min(left_bracket.hi, right_bracket.hi)
            if common.count_roots(lo, hi) >= 1:
                return Comparison(Ordering.EQUAL, left, right, left_bracket, right_bracket, via_gcd=True)

        raise UnresolvedComparisonError(
            f"could not separate the largest roots of {left.to_sparse()} and {right.to_sparse()}"
        )

    def compare_rho(self, p1: Polynomial, p2: Polynomial) -> Ordering:
        """Certified ordering of the Perron roots of two characteristic polynomials"""
        return self.certified_comparison(p1, p2).ordering


# Global perron service instance
perron_service = None


def get_perron_service() -> PerronService:
    """Get or create global perron service instance"""
    global perron_service
    if perron_service is None:
        perron_service = PerronService()
    return perron_service
