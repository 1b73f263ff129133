"""Parametric digraph families and their closed-form characteristic polynomials

Vertex numbering inside the constructors is fixed: hubs first, then the
interiors of P_{a+2}, P_{b+2} and P_{c+2} in that order (θ), or the hub
followed by the interiors of the k-cycle and then the l-cycle (∞).
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

from app.core.exceptions import InvalidOrderError, InvalidParamsError, ParseError
from app.core.logging import logger
from app.services.digraph_service import Arc, Digraph, is_strongly_connected
from app.services.polynomial import Polynomial


class FamilyKind(str, Enum):
    """Families handled in closed form"""
    CYCLE = "cycle"
    THETA = "theta"
    INFTY = "infty"
    DPRIME = "dprime"


@dataclass(frozen=True)
class CycleParams:
    """Directed cycle C_n"""
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidOrderError(f"a directed cycle needs n >= 2, got {self.n}")

    kind = FamilyKind.CYCLE

    @property
    def order(self) -> int:
        return self.n

    @property
    def label(self) -> str:
        return f"C{self.n}"

    @property
    def spec(self) -> str:
        return f"cycle:{self.n}"


@dataclass(frozen=True)
class ThetaParams:
    """θ(a, b, c): hub paths of lengths a+1 and b+1 one way, c+1 back"""
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise InvalidParamsError(f"theta parameters must be nonnegative, got {self.as_tuple()}")
        if self.a > self.b:
            raise InvalidParamsError(f"theta parameters need a <= b, got {self.as_tuple()}")
        if self.b < 1:
            raise InvalidParamsError("theta(0,0,c) would have a multiple arc")

    kind = FamilyKind.THETA

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def order(self) -> int:
        return self.a + self.b + self.c + 2

    @property
    def label(self) -> str:
        return f"theta({self.a},{self.b},{self.c})"

    @property
    def spec(self) -> str:
        return f"theta:{self.a},{self.b},{self.c}"


@dataclass(frozen=True)
class InftyParams:
    """∞(k, l): a k-cycle and an l-cycle sharing one vertex"""
    k: int
    l: int

    def __post_init__(self):
        if self.k < 2:
            raise InvalidParamsError(f"infty cycles need length >= 2, got k={self.k}")
        if self.k > self.l:
            raise InvalidParamsError(f"infty parameters need k <= l, got ({self.k},{self.l})")

    kind = FamilyKind.INFTY

    def as_tuple(self) -> Tuple[int, int]:
        return (self.k, self.l)

    @property
    def order(self) -> int:
        return self.k + self.l - 1

    @property
    def label(self) -> str:
        return f"infty({self.k},{self.l})"

    @property
    def spec(self) -> str:
        return f"infty:{self.k},{self.l}"


@dataclass(frozen=True)
class DPrimeParams:
    """θ(0,1,n-3) plus the arc u1 -> u1'"""
    n: int

    def __post_init__(self):
        if self.n < 4:
            raise InvalidOrderError(f"theta-plus-arc needs n >= 4, got {self.n}")

    kind = FamilyKind.DPRIME

    @property
    def order(self) -> int:
        return self.n

    @property
    def label(self) -> str:
        return f"dprime({self.n})"

    @property
    def spec(self) -> str:
        return f"dprime:{self.n}"


BicyclicParams = Union[ThetaParams, InftyParams]
FamilyParams = Union[CycleParams, ThetaParams, InftyParams, DPrimeParams]


def _path_arcs(vertices: List[int]) -> List[Arc]:
    return list(zip(vertices, vertices[1:]))


def build_cycle(n: int) -> Digraph:
    """C_n with arcs i -> i+1 mod n"""
    CycleParams(n)
    return Digraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def build_theta(p: ThetaParams) -> Digraph:
    """Hub 0 starts P_{a+2} and P_{b+2}, hub 1 ends them and starts P_{c+2}"""
    a, b, c = p.as_tuple()
    interior_a = list(range(2, 2 + a))
    interior_b = list(range(2 + a, 2 + a + b))
    interior_c = list(range(2 + a + b, 2 + a + b + c))

    arcs = (
        _path_arcs([0] + interior_a + [1])
        + _path_arcs([0] + interior_b + [1])
        + _path_arcs([1] + interior_c + [0])
    )
    return Digraph(p.order, tuple(arcs))


def build_infty(p: InftyParams) -> Digraph:
    """Hub 0, then the k-cycle interior, then the l-cycle interior"""
    k_interior = list(range(1, p.k))
    l_interior = list(range(p.k, p.k + p.l - 1))
    arcs = _path_arcs([0] + k_interior + [0]) + _path_arcs([0] + l_interior + [0])
    return Digraph(p.order, tuple(arcs))


def build_theta_plus_arc(n: int) -> Digraph:
    """D' from the proof: θ(0,1,n-3) with basic paths vw, v u1 w, w u1' ... u'_{n-3} v plus u1 u1'

    With the θ numbering v = 0, w = 1, u1 = 2 and u'_i = 2 + i.
    """
    DPrimeParams(n)
    base = build_theta(ThetaParams(0, 1, n - 3))
    return base.with_arc(2, 3)


def build_family(p: FamilyParams) -> Digraph:
    if isinstance(p, CycleParams):
        return build_cycle(p.n)
    if isinstance(p, ThetaParams):
        return build_theta(p)
    if isinstance(p, InftyParams):
        return build_infty(p)
    if isinstance(p, DPrimeParams):
        return build_theta_plus_arc(p.n)
    raise InvalidParamsError(f"unknown family parameters {p!r}")


def theta_charpoly(p: ThetaParams) -> Polynomial:
    """x^n - x^a - x^b with n = a+b+c+2"""
    return Polynomial.trinomial(p.order, p.a, p.b)


def infty_charpoly(p: InftyParams) -> Polynomial:
    """x^n - x^(k-1) - x^(l-1) with n = k+l-1"""
    return Polynomial.trinomial(p.order, p.k - 1, p.l - 1)


def closed_form_charpoly(p: FamilyParams) -> Polynomial:
    if isinstance(p, CycleParams):
        return Polynomial.from_terms({p.n: 1, 0: -1})
    if isinstance(p, ThetaParams):
        return theta_charpoly(p)
    if isinstance(p, InftyParams):
        return infty_charpoly(p)
    if isinstance(p, DPrimeParams):
        return Polynomial.from_terms({p.n: 1, 1: -2, 0: -1})
    raise InvalidParamsError(f"unknown family parameters {p!r}")


def enumerate_bicyclic_params(n: int) -> List[BicyclicParams]:
    """All members of B_n: θ(a,b,c) with a+b+c = n-2, then ∞(k,l) with k+l = n+1"""
    if n < 3:
        raise InvalidOrderError(f"B_n is defined for n >= 3, got {n}")

    members: List[BicyclicParams] = []
    for a in range(0, n - 1):
        for b in range(max(a, 1), n - 1 - a):
            members.append(ThetaParams(a, b, n - 2 - a - b))
    for k in range(2, (n + 1) // 2 + 1):
        members.append(InftyParams(k, n + 1 - k))

    logger.debug(f"B_{n} has {len(members)} members")
    return members


def identify_family(d: Digraph) -> Optional[Union[CycleParams, ThetaParams, InftyParams]]:
    """Recognise C_n, θ(a,b,c) or ∞(k,l) up to isomorphism; None otherwise"""
    n = d.order
    if n < 2 or d.size not in (n, n + 1) or not is_strongly_connected(d):
        return None
    if d.size == n:
        return CycleParams(n)

    splits = [v for v in range(n) if d.out_degree(v) == 2]
    merges = [v for v in range(n) if d.in_degree(v) == 2]
    if len(splits) != 1 or len(merges) != 1:
        return None
    split, merge = splits[0], merges[0]

    def walk(start: int, first: int, stop: int) -> int:
        """Arc count of the path leaving start through first until stop"""
        length, current = 1, first
        while current != stop:
            current = d.out_neighbors[current][0]
            length += 1
        return length

    if split == merge:
        k, l = sorted(walk(split, w, split) for w in d.out_neighbors[split])
        return InftyParams(k, l)

    a1, b1 = sorted(walk(split, w, merge) for w in d.out_neighbors[split])
    c1 = walk(merge, d.out_neighbors[merge][0], split)
    return ThetaParams(a1 - 1, b1 - 1, c1 - 1)


def _parse_ints(body: str, count: int, spec: str) -> List[int]:
    try:
        values = [int(token) for token in body.split(",")]
    except ValueError:
        raise ParseError(f"malformed family spec {spec!r}")
    if len(values) != count:
        raise ParseError(f"family spec {spec!r} needs {count} integer(s)")
    return values


def parse_family_spec(spec: str) -> FamilyParams:
    """Parse "theta:a,b,c", "infty:k,l", "cycle:n" or "dprime:n\""""
    kind, sep, body = spec.strip().partition(":")
    if not sep:
        raise ParseError(f"family spec {spec!r} has no ':'")
    kind = kind.lower()

    if kind == FamilyKind.THETA.value:
        return ThetaParams(*_parse_ints(body, 3, spec))
    if kind == FamilyKind.INFTY.value:
        return InftyParams(*_parse_ints(body, 2, spec))
    if kind == FamilyKind.CYCLE.value:
        return CycleParams(*_parse_ints(body, 1, spec))
    if kind == FamilyKind.DPRIME.value:
        return DPrimeParams(*_parse_ints(body, 1, spec))
    raise ParseError(f"unknown family {kind!r} in spec {spec!r}")


def is_family_spec(text: str) -> bool:
    kind, sep, _ = text.strip().partition(":")
    return bool(sep) and kind.lower() in {kind.value for kind in FamilyKind}
