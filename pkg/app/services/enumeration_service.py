"""
Exhaustive enumeration of strongly connected digraphs and ranking by spectral radius

Candidates are scanned as tuples of out-neighbour bitmasks with non-increasing
out-degrees (every digraph has such a labeling), filtered by in-degree
coverage and strong connectivity, then deduplicated by canonical code.
The scan is split on vertex 0's row and the per-partition code sets are
merged once at the end, so the output does not depend on scheduling.
"""
import os
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Any, Dict, Iterable, Iterator, List, Optional, Set, Tuple

from app.core.config import settings
from app.core.exceptions import CapExceededError, InvalidOrderError, NotStronglyConnectedError
from app.core.logging import logger
from app.services.digraph_service import (
    Digraph,
    canonical_code,
    canonical_form,
    is_strongly_connected,
    iter_bits,
)
from app.services.family_service import identify_family
from app.services.perron_service import (
    Comparison,
    Ordering,
    PerronEstimate,
    PerronService,
    get_perron_service,
)
from app.services.polynomial import Polynomial


FLOAT_SEPARATION = 1e-6


def _rows_by_degree(n: int) -> List[Dict[int, List[int]]]:
    """For each vertex, its possible out-neighbour masks grouped by popcount"""
    table: List[Dict[int, List[int]]] = []
    for v in range(n):
        others = [w for w in range(n) if w != v]
        groups: Dict[int, List[int]] = {}
        for subset in range(1 << (n - 1)):
            row = sum(1 << others[i] for i in iter_bits(subset))
            groups.setdefault(bin(subset).count("1"), []).append(row)
        table.append(groups)
    return table


def _strongly_connected_rows(n: int, rows: Tuple[int, ...]) -> bool:
    full = (1 << n) - 1
    columns = [0] * n
    for u, row in enumerate(rows):
        for v in iter_bits(row):
            columns[v] |= 1 << u

    for adjacency in (rows, columns):
        reached = frontier = 1
        while frontier:
            step = 0
            for v in iter_bits(frontier):
                step |= adjacency[v]
            frontier = step & ~reached
            reached |= step
        if reached != full:
            return False
    return True


def _scan_partition(n: int, m: Optional[int], first_row: int) -> Set[int]:
    """Canonical codes of the strongly connected digraphs whose vertex 0 row is first_row"""
    table = _rows_by_degree(n)
    full = (1 << n) - 1
    first_degree = bin(first_row).count("1")
    codes: Set[int] = set()
    rows = [first_row] + [0] * (n - 1)

    def extend(v: int, max_degree: int, used: int, covered: int):
        if v == n:
            if covered != full or (m is not None and used != m):
                return
            candidate = tuple(rows)
            if _strongly_connected_rows(n, candidate):
                arcs = [(u, w) for u, row in enumerate(candidate) for w in iter_bits(row)]
                codes.add(canonical_code(n, arcs))
            return

        remaining = n - v
        for degree in range(max_degree, 0, -1):
            if m is not None:
                budget = m - used - degree
                if budget < remaining - 1 or budget > (remaining - 1) * degree:
                    continue
            for row in table[v][degree]:
                rows[v] = row
                extend(v + 1, degree, used + degree, covered | row)

    extend(1, first_degree, first_degree, first_row)
    return codes


@dataclass(frozen=True)
class RankEntry:
    """One ranked digraph; comparison orders the previous entry against this one"""
    digraph: Digraph
    estimate: PerronEstimate
    charpoly: Polynomial
    label: Optional[str] = None
    comparison: Optional[Comparison] = None

    @property
    def tied_with_previous(self) -> bool:
        return self.comparison is not None and self.comparison.ordering == Ordering.EQUAL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "order": self.digraph.order,
            "arcs": [list(arc) for arc in self.digraph.arcs],
            "rho": self.estimate.to_dict(),
            "charpoly": self.charpoly.to_sparse(),
            "vs_previous": self.comparison.ordering.value if self.comparison else None,
        }


class EnumerationService:
    """Strongly connected digraph enumeration with a per-(n, m) cache"""

    def __init__(self, workers: Optional[int] = None, perron: Optional[PerronService] = None):
        self.workers = workers or settings.SPECTRA_THREADS or os.cpu_count() or 1
        self.perron = perron or get_perron_service()
        self._cache: Dict[Tuple[int, Optional[int]], Tuple[Tuple[int, int], ...]] = {}
        self._lock = threading.Lock()

    def _check_caps(self, n: int, m: Optional[int]):
        if n < 2:
            raise InvalidOrderError(f"enumeration needs n >= 2, got {n}")
        if n <= settings.ENUMERATION_ALL_ARCS_MAX_ORDER:
            return
        if m is not None and m <= n + 1 and n <= settings.ENUMERATION_FIXED_ARCS_MAX_ORDER:
            return
        raise CapExceededError(
            f"enumeration supports n <= {settings.ENUMERATION_ALL_ARCS_MAX_ORDER} for any arc count "
            f"and n <= {settings.ENUMERATION_FIXED_ARCS_MAX_ORDER} for m <= n+1, got n={n}, m={m}"
        )

    def _first_rows(self, n: int, m: Optional[int]) -> List[int]:
        top = n - 1 if m is None else min(n - 1, m - (n - 1))
        table = _rows_by_degree(n)
        return [row for degree in range(top, 0, -1) for row in table[0][degree]]

    def _codes(self, n: int, m: Optional[int]) -> Tuple[Tuple[int, int], ...]:
        with self._lock:
            if (n, m) not in self._cache:
                self._cache[(n, m)] = self._scan(n, m)
            return self._cache[(n, m)]

    def _scan(self, n: int, m: Optional[int]) -> Tuple[Tuple[int, int], ...]:
        codes: Set[int] = set()
        if m is None or n <= m <= n * (n - 1):
            partitions = self._first_rows(n, m)
            if self.workers > 1 and n >= 5 and len(partitions) > 1:
                with ProcessPoolExecutor(max_workers=self.workers) as pool:
                    for part in pool.map(_scan_partition, [n] * len(partitions), [m] * len(partitions), partitions):
                        codes |= part
            else:
                for first_row in partitions:
                    codes |= _scan_partition(n, m, first_row)

        ordered = tuple(sorted((bin(code).count("1"), code) for code in codes))
        logger.info(f"Enumerated {len(ordered)} strongly connected classes for n={n}, m={m if m is not None else 'all'}")
        return ordered

    def enumerate_strongly_connected(self, n: int, m: Optional[int] = None) -> Iterator[Digraph]:
        """One canonically labeled representative per isomorphism class, by (arcs, code)"""
        self._check_caps(n, m)
        codes = self._codes(n, m)
        return (Digraph.from_canonical((n, code)) for _, code in codes)

    def count(self, n: int, m: Optional[int] = None) -> int:
        self._check_caps(n, m)
        return len(self._codes(n, m))

    def rank_by_rho(
        self,
        ds: Iterable[Digraph],
        top_k: Optional[int] = None,
        descending: bool = False,
        cross_check: Optional[bool] = None,
    ) -> List[RankEntry]:
        """
        Sort digraphs by spectral radius

        Float estimates order pairs that are clearly apart; closer pairs go
        through certified_comparison. Adjacent pairs among the first top_k + 1
        entries (all of them when top_k is None) are then certified and the
        resulting comparison is stored on the later entry, so ties show up as
        Ordering.EQUAL.
        """
        perron = self.perron
        entries = []
        for d in ds:
            if not is_strongly_connected(d):
                raise NotStronglyConnectedError("rank_by_rho needs strongly connected digraphs")
            family = identify_family(d)
            entries.append(RankEntry(
                digraph=d,
                estimate=perron.rho(d, cross_check=cross_check),
                charpoly=perron.charpoly.characteristic_polynomial(d),
                label=family.label if family is not None else None,
            ))

        def compare(x: RankEntry, y: RankEntry) -> int:
            gap = x.estimate.value - y.estimate.value
            if abs(gap) > FLOAT_SEPARATION:
                result = 1 if gap > 0 else -1
            else:
                ordering = perron.certified_comparison(x.charpoly, y.charpoly).ordering
                result = {Ordering.LESS: -1, Ordering.EQUAL: 0, Ordering.GREATER: 1}[ordering]
            if descending:
                result = -result
            if result == 0:
                x_key, y_key = _tiebreak(x.digraph), _tiebreak(y.digraph)
                result = (x_key > y_key) - (x_key < y_key)
            return result

        entries.sort(key=cmp_to_key(compare))

        head = len(entries) if top_k is None else min(len(entries), top_k + 1)
        for i in range(1, head):
            previous = entries[i - 1]
            comparison = perron.certified_comparison(previous.charpoly, entries[i].charpoly)
            entries[i] = RankEntry(
                digraph=entries[i].digraph,
                estimate=entries[i].estimate,
                charpoly=entries[i].charpoly,
                label=entries[i].label,
                comparison=comparison,
            )

        logger.debug(f"Ranked {len(entries)} digraphs, certified head of {head}")
        return entries


def _tiebreak(d: Digraph) -> Tuple:
    code = canonical_form(d)[1] if d.order <= settings.CANONICAL_ORDER_CAP else d.arcs
    return (d.order, d.size, code)


# Global enumeration service instance
enumeration_service = None


def get_enumeration_service() -> EnumerationService:
    """Get or create global enumeration service instance"""
    global enumeration_service
    if enumeration_service is None:
        enumeration_service = EnumerationService()
    return enumeration_service
