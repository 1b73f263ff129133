"""Characteristic polynomials of digraphs

Two independent exact engines that serve as oracles for each other:
a Faddeev-LeVerrier recurrence on the integer adjacency matrix, and the
coefficients theorem (signed counts of linear subdigraphs).
"""
from collections import defaultdict
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import CapExceededError
from app.core.logging import logger
from app.services.digraph_service import Digraph, enumerate_directed_cycles
from app.services.family_service import closed_form_charpoly, identify_family
from app.services.polynomial import Polynomial, Rational


class CharpolyMethod(str, Enum):
    """Engine selection for characteristic polynomials"""
    AUTO = "auto"
    DET = "det"
    CYCLES = "cycles"


class CharpolyService:
    """Exact characteristic polynomials by determinant recurrence or cycle expansion"""

    def charpoly_det(self, d: Digraph) -> Polynomial:
        """det(xI - A(D)) by the Faddeev-LeVerrier recurrence in exact integers

        M_k = A M_{k-1} + c_{n-k+1} I and c_{n-k} = -tr(A M_k) / k, where each
        division is exact for integer matrices.
        """
        n = d.order
        adjacency = d.adjacency_matrix().astype(object)
        identity = np.zeros((n, n), dtype=object)
        for i in range(n):
            identity[i, i] = 1

        coefficients = [0] * (n + 1)
        coefficients[n] = 1
        product = np.zeros((n, n), dtype=object)  # A M_{k-1}
        for k in range(1, n + 1):
            m = product + identity * coefficients[n - k + 1]
            product = adjacency.dot(m)
            trace = int(sum(product[i, i] for i in range(n)))
            quotient, remainder = divmod(-trace, k)
            assert remainder == 0, "Faddeev-LeVerrier division must be exact"
            coefficients[n - k] = quotient

        return Polynomial(tuple(coefficients))

    def charpoly_cycles(self, d: Digraph) -> Polynomial:
        """Coefficients theorem: [x^(n-i)] = sum over linear subdigraphs L on i vertices of (-1)^c(L)

        Linear subdigraphs are packed vertex by vertex: the lowest undecided vertex
        is either left uncovered or covered by a cycle whose lowest vertex it is.
        """
        n = d.order
        if n > settings.CYCLE_EXPANSION_ORDER_CAP:
            raise CapExceededError(
                f"charpoly_cycles supports order <= {settings.CYCLE_EXPANSION_ORDER_CAP}, got {n}"
            )

        cycles_by_start: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
        for cycle in enumerate_directed_cycles(d):
            cycles_by_start[cycle.vertices[0]].append((cycle.vertex_mask, cycle.length))

        signed_counts: Dict[int, int] = defaultdict(int)

        def pack(v: int, used: int, covered: int, parity: int):
            if v == n:
                signed_counts[covered] += -1 if parity else 1
                return
            if used >> v & 1:
                pack(v + 1, used, covered, parity)
                return
            pack(v + 1, used, covered, parity)
            for mask, length in cycles_by_start[v]:
                if not mask & used:
                    pack(v + 1, used | mask, covered + length, parity ^ 1)

        pack(0, 0, 0, 0)
        logger.debug(f"Linear subdigraph counts by size: {dict(signed_counts)}")
        return Polynomial.from_terms({n - i: total for i, total in signed_counts.items()})

    def characteristic_polynomial(self, d: Digraph) -> Polynomial:
        """Closed form for recognised families, charpoly_det otherwise"""
        family = identify_family(d)
        if family is not None:
            return closed_form_charpoly(family)
        return self.charpoly_det(d)

    def compute(self, d: Digraph, method: CharpolyMethod = CharpolyMethod.AUTO) -> Polynomial:
        engines = {
            CharpolyMethod.AUTO: self.characteristic_polynomial,
            CharpolyMethod.DET: self.charpoly_det,
            CharpolyMethod.CYCLES: self.charpoly_cycles,
        }
        return engines[CharpolyMethod(method)](d)

    def poly_eval_rational(self, p: Polynomial, x: Rational) -> Fraction:
        """Exact value of p at a rational point"""
        return p.evaluate(x)


# Global charpoly service instance
charpoly_service = None


def get_charpoly_service() -> CharpolyService:
    """Get or create global charpoly service instance"""
    global charpoly_service
    if charpoly_service is None:
        charpoly_service = CharpolyService()
    return charpoly_service
