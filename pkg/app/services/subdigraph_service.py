"""θ- and ∞-subdigraphs of strongly connected digraphs

find_theta_or_infty_subdigraph follows the shortest-cycle construction: a
shortest cycle C, a vertex u off C with an arc u -> v into C, and a shortest
path P from C to u that meets C only at its start w. C, P and uv form a
θ-digraph when w != v and an ∞-digraph when w == v.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from app.core.exceptions import NotStronglyConnectedError, PreconditionError
from app.core.logging import logger
from app.services.digraph_service import (
    Arc,
    Digraph,
    bfs_distances,
    enumerate_directed_cycles,
    is_strongly_connected,
    shortest_directed_cycle,
)
from app.services.family_service import (
    BicyclicParams,
    FamilyKind,
    InftyParams,
    ThetaParams,
    build_family,
)


@dataclass(frozen=True)
class SubdigraphWitness:
    """Family digraph embedded in a host: family vertex i lands on vertex_map[i]"""
    params: BicyclicParams
    vertex_map: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vertex_map) != self.params.order:
            raise PreconditionError(
                f"vertex map of length {len(self.vertex_map)} for a family of order {self.params.order}"
            )
        if len(set(self.vertex_map)) != len(self.vertex_map):
            raise PreconditionError("vertex map must be injective")

    @property
    def kind(self) -> FamilyKind:
        return self.params.kind

    @property
    def arcs(self) -> Tuple[Arc, ...]:
        """Images of the family arcs in the host"""
        family = build_family(self.params)
        return tuple(sorted((self.vertex_map[u], self.vertex_map[v]) for u, v in family.arcs))

    def is_subdigraph_of(self, host: Digraph) -> bool:
        return all(host.has_arc(u, v) for u, v in self.arcs)

    def is_proper(self, host: Digraph) -> bool:
        return self.params.order < host.order or len(self.arcs) < host.size

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "params": self.params.label,
            "vertex_map": list(self.vertex_map),
            "arcs": [list(arc) for arc in self.arcs],
        }


def _walk(d: Digraph, first: int, stop: int) -> List[int]:
    """Vertices met from first up to (excluding) stop along unique out-arcs"""
    interior = []
    current = first
    while current != stop:
        interior.append(current)
        current = d.out_neighbors[current][0]
    return interior


def embed_bicyclic(d: Digraph) -> Optional[SubdigraphWitness]:
    """Witness covering all of a bicyclic d, in the family's own vertex numbering"""
    n = d.order
    if d.size != n + 1 or not is_strongly_connected(d):
        return None

    splits = [v for v in range(n) if d.out_degree(v) == 2]
    merges = [v for v in range(n) if d.in_degree(v) == 2]
    if len(splits) != 1 or len(merges) != 1:
        return None
    split, merge = splits[0], merges[0]

    if split == merge:
        short, long = sorted((_walk(d, w, split) for w in d.out_neighbors[split]), key=lambda p: (len(p), p))
        params = InftyParams(len(short) + 1, len(long) + 1)
        return SubdigraphWitness(params, tuple([split] + short + long))

    first, second = sorted((_walk(d, w, merge) for w in d.out_neighbors[split]), key=lambda p: (len(p), p))
    back = _walk(d, d.out_neighbors[merge][0], split)
    params = ThetaParams(len(first), len(second), len(back))
    return SubdigraphWitness(params, tuple([split, merge] + first + second + back))


def find_theta_or_infty_subdigraph(d: Digraph) -> SubdigraphWitness:
    """θ- or ∞-subdigraph built from a shortest cycle, as in the extremal argument"""
    if not is_strongly_connected(d):
        raise NotStronglyConnectedError("subdigraph search needs a strongly connected digraph")
    if d.size <= d.order:
        raise PreconditionError("a directed cycle has no θ- or ∞-subdigraph")

    cycle = shortest_directed_cycle(d).vertices
    length = len(cycle)
    position = {v: i for i, v in enumerate(cycle)}

    # A chord of C would close a shorter cycle, so some vertex lies off C
    u = min(x for x in range(d.order) if x not in position and any(y in position for y in d.out_neighbors[x]))
    v = min(y for y in d.out_neighbors[u] if y in position)

    # Distances to u through vertices off C; C vertices are reached but never expanded
    off_cycle = [
        () if x in position else tuple(w for w in d.in_neighbors[x])
        for x in range(d.order)
    ]
    to_u = bfs_distances(off_cycle, u)
    t = min(to_u[w] for w in cycle if to_u[w] is not None)
    w = min(x for x in cycle if to_u[x] == t)

    path = [w]
    while path[-1] != u:
        remaining = t - len(path)
        path.append(min(x for x in d.out_neighbors[path[-1]] if x not in position and to_u[x] == remaining))
    path_interior = path[1:]  # ends with u

    if w == v:
        around = [cycle[(position[w] + i) % length] for i in range(1, length)]
        short, long = sorted((around, path_interior), key=lambda p: (len(p), p))
        params: BicyclicParams = InftyParams(len(short) + 1, len(long) + 1)
        witness = SubdigraphWitness(params, tuple([w] + short + long))
    else:
        gap = (position[v] - position[w]) % length
        along = [cycle[(position[w] + i) % length] for i in range(1, gap)]
        back = [cycle[(position[v] + i) % length] for i in range(1, length - gap)]
        first, second = sorted((along, path_interior), key=lambda p: (len(p), p))
        params = ThetaParams(len(first), len(second), len(back))
        witness = SubdigraphWitness(params, tuple([w, v] + first + second + back))

    logger.debug(f"Shortest-cycle construction found {params.label} with map {witness.vertex_map}")
    return witness


def bicyclic_subdigraphs(d: Digraph) -> List[SubdigraphWitness]:
    """Every θ- and ∞-subdigraph of d, each arc set once

    A bicyclic digraph is the union of its two cycles, so pairs of cycles whose
    union has one arc more than it has vertices are exactly the candidates.
    """
    cycles = list(enumerate_directed_cycles(d))
    seen = set()
    found: List[SubdigraphWitness] = []

    for i, first in enumerate(cycles):
        first_arcs = set(first.arcs)
        for second in cycles[i + 1:]:
            if not first.vertex_mask & second.vertex_mask:
                continue
            arcs = first_arcs | set(second.arcs)
            vertices = sorted(set(first.vertices) | set(second.vertices))
            if len(arcs) != len(vertices) + 1:
                continue
            key = frozenset(arcs)
            if key in seen:
                continue
            seen.add(key)

            index = {x: j for j, x in enumerate(vertices)}
            local = Digraph(len(vertices), tuple((index[a], index[b]) for a, b in arcs))
            embedded = embed_bicyclic(local)
            if embedded is None:
                continue
            found.append(SubdigraphWitness(
                embedded.params,
                tuple(vertices[j] for j in embedded.vertex_map),
            ))

    found.sort(key=lambda s: (s.params.order, s.params.label, s.arcs))
    return found
