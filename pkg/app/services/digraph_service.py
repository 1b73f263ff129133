"""Digraph representation, connectivity and cycle queries

Vertices are dense indices 0..n-1 and arc sets are stored sorted, so equal
digraphs compare and hash equal regardless of how they were built.
"""
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import chain, count, permutations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    AcyclicDigraphError,
    CapExceededError,
    InvalidDigraphError,
    ParseError,
)
from app.core.logging import logger


Arc = Tuple[int, int]
# (order, code): code is the minimal arc bitmask over refinement-respecting labelings
CanonicalForm = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    """Loop-free simple digraph of order n on vertices 0..n-1"""
    order: int
    arcs: Tuple[Arc, ...] = ()

    def __post_init__(self):
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 1:
            raise InvalidDigraphError(f"order must be a positive integer, got {self.order!r}")

        arcs = tuple(sorted((int(u), int(v)) for u, v in self.arcs))
        for u, v in arcs:
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise InvalidDigraphError(f"arc {u}->{v} outside vertex range 0..{self.order - 1}")
            if u == v:
                raise InvalidDigraphError(f"loop at vertex {u}")
        if len(set(arcs)) != len(arcs):
            raise InvalidDigraphError("duplicate arcs")

        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_rows(cls, order: int, rows: Sequence[int]) -> "Digraph":
        """Build from out-neighbour bitmasks, one per vertex"""
        return cls(order, tuple((u, v) for u, row in enumerate(rows) for v in iter_bits(row)))

    @classmethod
    def from_canonical(cls, form: CanonicalForm) -> "Digraph":
        """Decode a canonical form back into its canonically labeled digraph"""
        order, code = form
        return cls(order, tuple(divmod(bit, order) for bit in iter_bits(code)))

    @property
    def size(self) -> int:
        """Number of arcs"""
        return len(self.arcs)

    @cached_property
    def arc_set(self) -> FrozenSet[Arc]:
        return frozenset(self.arcs)

    @cached_property
    def out_neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        result: List[List[int]] = [[] for _ in range(self.order)]
        for u, v in self.arcs:
            result[u].append(v)
        return tuple(tuple(vs) for vs in result)

    @cached_property
    def in_neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        result: List[List[int]] = [[] for _ in range(self.order)]
        for u, v in self.arcs:
            result[v].append(u)
        return tuple(tuple(sorted(us)) for us in result)

    @cached_property
    def out_rows(self) -> Tuple[int, ...]:
        """Out-neighbourhoods as vertex bitmasks"""
        return tuple(sum(1 << v for v in vs) for vs in self.out_neighbors)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arc_set

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors[v])

    @property
    def max_out_degree(self) -> int:
        return max(len(vs) for vs in self.out_neighbors)

    def adjacency_matrix(self) -> np.ndarray:
        """The (0,1) adjacency matrix A(D)"""
        matrix = np.zeros((self.order, self.order), dtype=np.int64)
        for u, v in self.arcs:
            matrix[u, v] = 1
        return matrix

    def with_arc(self, u: int, v: int) -> "Digraph":
        return Digraph(self.order, self.arcs + ((u, v),))

    def without_arc(self, u: int, v: int) -> "Digraph":
        if (u, v) not in self.arc_set:
            raise InvalidDigraphError(f"arc {u}->{v} not present")
        return Digraph(self.order, tuple(arc for arc in self.arcs if arc != (u, v)))

    def relabel(self, mapping: Sequence[int]) -> "Digraph":
        """Return the isomorphic copy where vertex v becomes mapping[v]"""
        if sorted(mapping) != list(range(self.order)):
            raise InvalidDigraphError("relabeling must be a permutation of the vertices")
        return Digraph(self.order, tuple((mapping[u], mapping[v]) for u, v in self.arcs))

    def induced_subdigraph(self, vertices: Iterable[int]) -> "Digraph":
        """Induced subdigraph, vertices renumbered in increasing order"""
        kept = sorted(set(vertices))
        index = {v: i for i, v in enumerate(kept)}
        return Digraph(
            len(kept),
            tuple((index[u], index[v]) for u, v in self.arcs if u in index and v in index)
        )

    def to_text(self) -> str:
        return format_digraph_text(self)


@dataclass(frozen=True)
class CycleWitness:
    """Directed cycle given by its vertex sequence"""
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def arcs(self) -> Tuple[Arc, ...]:
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    @property
    def vertex_mask(self) -> int:
        return sum(1 << v for v in self.vertices)

    def is_cycle_of(self, host: Digraph) -> bool:
        """True when the vertices are distinct and every consecutive pair is a host arc"""
        return (
            len(set(self.vertices)) == len(self.vertices) >= 2
            and all(host.has_arc(u, v) for u, v in self.arcs)
        )


# Text format

def format_digraph_text(d: Digraph) -> str:
    """Line 1 "n m", then one "u v" line per arc"""
    lines = [f"{d.order} {d.size}"]
    lines.extend(f"{u} {v}" for u, v in d.arcs)
    return "\n".join(lines) + "\n"


def parse_digraph_text(text: str) -> Digraph:
    """Parse the "n m" + arc lines format; duplicates and loops are parse errors"""
    lines = [line for line in text.split("\n") if line.strip()]
    if not lines:
        raise ParseError("empty digraph text")

    try:
        header = [int(token) for token in lines[0].split()]
    except ValueError:
        raise ParseError(f"malformed header line: {lines[0]!r}")
    if len(header) != 2:
        raise ParseError(f"header must be 'n m', got {lines[0]!r}")
    order, size = header
    if len(lines) - 1 != size:
        raise ParseError(f"header announces {size} arcs but {len(lines) - 1} arc lines follow")

    arcs: List[Arc] = []
    seen = set()
    for line in lines[1:]:
        try:
            u, v = (int(token) for token in line.split())
        except ValueError:
            raise ParseError(f"malformed arc line: {line!r}")
        if u == v:
            raise ParseError(f"loop arc {u} {v}")
        if (u, v) in seen:
            raise ParseError(f"duplicate arc {u} {v}")
        seen.add((u, v))
        arcs.append((u, v))

    try:
        return Digraph(order, tuple(arcs))
    except InvalidDigraphError as e:
        raise ParseError(str(e))


def parse_digraph_records(text: str) -> List[Digraph]:
    """Parse blank-line separated records as written by the enumerate command"""
    records = [block for block in text.split("\n\n") if block.strip()]
    return [parse_digraph_text(block) for block in records]


# Connectivity

def _reachable(neighbors: Sequence[Sequence[int]], start: int) -> List[bool]:
    seen = [False] * len(neighbors)
    seen[start] = True
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return seen


def is_strongly_connected(d: Digraph) -> bool:
    """Forward and backward reachability from vertex 0 cover every vertex"""
    return all(_reachable(d.out_neighbors, 0)) and all(_reachable(d.in_neighbors, 0))


def strongly_connected_components(d: Digraph) -> List[Tuple[int, ...]]:
    """Tarjan's algorithm; components sorted by their lowest vertex"""
    indices = count()
    index: Dict[int, int] = {}
    lowlink: Dict[int, int] = {}
    stack: List[int] = []
    on_stack = set()
    components: List[Tuple[int, ...]] = []

    def strongconnect(v: int):
        index[v] = lowlink[v] = next(indices)
        stack.append(v)
        on_stack.add(v)

        for w in d.out_neighbors[v]:
            if w not in index:
                strongconnect(w)
                lowlink[v] = min(lowlink[v], lowlink[w])
            elif w in on_stack:
                lowlink[v] = min(lowlink[v], index[w])

        if lowlink[v] == index[v]:
            component = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                component.append(w)
                if w == v:
                    break
            components.append(tuple(sorted(component)))

    for v in range(d.order):
        if v not in index:
            strongconnect(v)

    return sorted(components)


def bfs_distances(neighbors: Sequence[Sequence[int]], source: int) -> List[Optional[int]]:
    """Unweighted distances from source along the given adjacency"""
    dist: List[Optional[int]] = [None] * len(neighbors)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in neighbors[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def lexicographic_shortest_path(d: Digraph, source: int, target: int) -> Tuple[int, ...]:
    """Lexicographically smallest shortest directed path source -> target

    Walks forward choosing the lowest out-neighbour whose distance to the target
    is exactly one less.
    """
    to_target = bfs_distances(d.in_neighbors, target)
    if to_target[source] is None:
        raise InvalidDigraphError(f"no directed path {source} -> {target}")

    path = [source]
    while path[-1] != target:
        remaining = to_target[path[-1]] - 1
        path.append(min(w for w in d.out_neighbors[path[-1]] if to_target[w] == remaining))
    return tuple(path)


# Cycles

def shortest_directed_cycle(d: Digraph) -> CycleWitness:
    """A shortest directed cycle (girth witness)

    Ties go to the lowest starting vertex, then to the lexicographically
    smallest vertex list. The start is the lowest vertex of the returned cycle.
    """
    best_length: Optional[int] = None
    best_start = -1
    best_to_start: List[Optional[int]] = []

    for v in range(d.order):
        to_v = bfs_distances(d.in_neighbors, v)
        lengths = [to_v[w] + 1 for w in d.out_neighbors[v] if to_v[w] is not None]
        if lengths and (best_length is None or min(lengths) < best_length):
            best_length, best_start, best_to_start = min(lengths), v, to_v

    if best_length is None:
        raise AcyclicDigraphError("digraph has no directed cycle")

    # Any closed walk of girth length is a simple cycle, so greedy choice is safe
    cycle = [best_start]
    for step in range(1, best_length):
        remaining = best_length - step
        cycle.append(min(
            w for w in d.out_neighbors[cycle[-1]]
            if w != best_start and best_to_start[w] == remaining
        ))

    logger.debug(f"Shortest directed cycle {cycle} (girth {best_length})")
    return CycleWitness(tuple(cycle))


def enumerate_directed_cycles(d: Digraph) -> Iterator[CycleWitness]:
    """Every directed cycle exactly once, listed from its lowest vertex"""
    for start in range(d.order):
        path = [start]
        on_path = {start}

        def extend(u: int) -> Iterator[CycleWitness]:
            for w in d.out_neighbors[u]:
                if w == start:
                    yield CycleWitness(tuple(path))
                elif w > start and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from extend(w)
                    on_path.discard(w)
                    path.pop()

        yield from extend(start)


# Canonical form

def _refined_cells(order: int, outs: Sequence[Sequence[int]], ins: Sequence[Sequence[int]]) -> List[List[int]]:
    """Colour refinement seeded with (out-degree, in-degree)

    Colours are ranks of sorted signatures, so the ordered cell list is the
    same for isomorphic digraphs.
    """
    seeds = [(len(outs[v]), len(ins[v])) for v in range(order)]
    ranking = {seed: rank for rank, seed in enumerate(sorted(set(seeds)))}
    colors = [ranking[seed] for seed in seeds]

    while True:
        signatures = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in outs[v])),
                tuple(sorted(colors[w] for w in ins[v])),
            )
            for v in range(order)
        ]
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        refined = [ranking[sig] for sig in signatures]
        stable = len(ranking) == len(set(colors))
        colors = refined
        if stable:
            break

    cells: Dict[int, List[int]] = {}
    for v in range(order):
        cells.setdefault(colors[v], []).append(v)
    return [cells[color] for color in sorted(cells)]


def canonical_code(order: int, arcs: Sequence[Arc]) -> int:
    """Minimal arc bitmask (bit u*n+v) over all labelings that respect the refined cells"""
    outs: List[List[int]] = [[] for _ in range(order)]
    ins: List[List[int]] = [[] for _ in range(order)]
    for u, v in arcs:
        outs[u].append(v)
        ins[v].append(u)

    cells = _refined_cells(order, outs, ins)
    best: Optional[int] = None
    label = [0] * order
    for arrangement in product(*(permutations(cell) for cell in cells)):
        for position, v in enumerate(chain.from_iterable(arrangement)):
            label[v] = position
        code = 0
        for u, v in arcs:
            code |= 1 << (label[u] * order + label[v])
        if best is None or code < best:
            best = code
    return best if best is not None else 0


def canonical_form(d: Digraph) -> CanonicalForm:
    """Encoding shared by exactly the digraphs isomorphic to d"""
    if d.order > settings.CANONICAL_ORDER_CAP:
        raise CapExceededError(
            f"canonical_form supports order <= {settings.CANONICAL_ORDER_CAP}, got {d.order}"
        )
    return (d.order, canonical_code(d.order, d.arcs))


def are_isomorphic(first: Digraph, second: Digraph) -> bool:
    if first.order != second.order or first.size != second.size:
        return False
    return canonical_form(first) == canonical_form(second)
