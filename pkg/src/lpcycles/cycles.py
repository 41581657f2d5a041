"""Exact counts of triangles, simple cycles and closed-walk classes."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, InternalInconsistency, PreconditionError
from .graph import Graph
from .spectral import trace_power

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_WALK_VERTEX_LIMIT = 6
DEFAULT_WALK_LENGTH_LIMIT = 8


@dataclass
class CycleCounts:
    triangle_count: int
    by_length: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if any(c < 0 for c in self.by_length.values()) or self.triangle_count < 0:
            raise InternalInconsistency("negative cycle count")
        if 3 in self.by_length and self.by_length[3] != self.triangle_count:
            raise InternalInconsistency("triangle count disagrees with 3-cycle count")


def triangles_from_masks(masks) -> int:
    """Triangles counted from neighbour bitmasks; each is seen at its lowest vertex."""
    total = 0
    for u, mu in enumerate(masks):
        higher = mu >> (u + 1)
        v = u + 1
        while higher:
            if higher & 1:
                total += (mu & masks[v] & ~((1 << (v + 1)) - 1)).bit_count()
            higher >>= 1
            v += 1
    return total


def count_triangles(g: Graph) -> int:
    """T(G) from tr(A^3)/6, checked against a direct scan of vertex triples."""
    by_trace, rem = divmod(trace_power(g, 3), 6)
    direct = triangles_from_masks(g.masks)
    if rem or by_trace != direct:
        raise InternalInconsistency(
            f"tr(A^3) = {6 * by_trace + rem} but direct triangle count is {direct}"
        )
    return direct


def count_simple_cycles(g: Graph, k: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Number of undirected simple k-cycles.

    Each cycle is generated once: it starts at its smallest vertex ``s``, only
    visits vertices larger than ``s``, and is kept in the orientation whose
    second vertex is smaller than its last.
    """
    n = g.vertex_count
    if not 3 <= k <= n:
        raise PreconditionError(f"cycle length must satisfy 3 <= k <= {n}, got {k}")
    masks = g.masks
    count = 0
    expansions = 0

    def extend(s: int, first: int, last: int, visited: int, length: int) -> None:
        nonlocal count, expansions
        expansions += 1
        if expansions > budget:
            raise BudgetExceeded(f"simple-cycle search exceeded {budget} node expansions")
        if length == k:
            if masks[last] >> s & 1 and first < last:
                count += 1
            return
        candidates = masks[last] & ~visited & ~((1 << (s + 1)) - 1)
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            extend(s, first, v, visited | low, length + 1)
            candidates ^= low

    for s in range(n - k + 1):
        nbrs = masks[s] >> (s + 1) << (s + 1)
        while nbrs:
            low = nbrs & -nbrs
            v = low.bit_length() - 1
            extend(s, v, v, (1 << s) | low, 2)
            nbrs ^= low
    return count


def cycle_counts(g: Graph, k_max: int, budget: int = DEFAULT_NODE_BUDGET) -> CycleCounts:
    by_length = {k: count_simple_cycles(g, k, budget) for k in range(3, k_max + 1)}
    return CycleCounts(count_triangles(g), by_length)


def walk_cycle_gap(g: Graph, p: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """tr(A^p) - 2p * C_p(G): zero exactly when every closed p-walk is a simple cycle."""
    return trace_power(g, p) - 2 * p * count_simple_cycles(g, p, budget)


def _canonical_walk(walk: tuple[int, ...]) -> tuple[int, ...]:
    k = len(walk)
    rev = walk[::-1]
    return min(
        min(walk[i:] + walk[:i] for i in range(k)),
        min(rev[i:] + rev[:i] for i in range(k)),
    )


def rooted_closed_walks(g: Graph, k: int):
    """Yield every closed k-walk as the tuple (v0, ..., v_{k-1}); v_k = v0 is implied."""
    n = g.vertex_count
    masks = g.masks

    def grow(prefix):
        last = prefix[-1]
        if len(prefix) == k:
            if masks[last] >> prefix[0] & 1:
                yield tuple(prefix)
            return
        m = masks[last]
        while m:
            low = m & -m
            prefix.append(low.bit_length() - 1)
            yield from grow(prefix)
            prefix.pop()
            m ^= low

    for v in range(n):
        yield from grow([v])


def closed_walk_classes(
    g: Graph,
    k: int,
    vertex_limit: int = DEFAULT_WALK_VERTEX_LIMIT,
    length_limit: int = DEFAULT_WALK_LENGTH_LIMIT,
    budget: int = DEFAULT_NODE_BUDGET,
) -> int:
    """Closed k-walks modulo choice of starting point and direction of travel."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if g.vertex_count > vertex_limit or k > length_limit:
        raise BudgetExceeded(
            f"closed-walk enumeration limited to {vertex_limit} vertices and length "
            f"{length_limit} (got {g.vertex_count}, {k})"
        )
    classes = set()
    for i, walk in enumerate(rooted_closed_walks(g, k)):
        if i >= budget:
            raise BudgetExceeded(f"closed-walk enumeration exceeded {budget} walks")
        classes.add(_canonical_walk(walk))
    return len(classes)

