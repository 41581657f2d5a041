"""Exhaustive sweeps over small labeled graphs.

Each sweep is split into chunks of the enumeration stream
``(edge_count, start, stop)``.  Chunks are processed independently (in a
process pool when ``jobs > 1``) and merged in chunk order, so serial and
parallel runs produce identical reports.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from .bounds import cycle_bound_sharp, is_prime
from .cycles import (
    DEFAULT_NODE_BUDGET,
    closed_walk_classes,
    count_simple_cycles,
    triangles_from_masks,
    walk_cycle_gap,
)
from .errors import BudgetExceeded, EdgeCountTooLarge, NotOddPrime, PreconditionError
from .graph import complete, count_graphs, edge_masks, enumerate_graphs, from_edge_list
from .spectral import trace_power

CHUNK = 20_000
FULL_SWEEP_VERTICES = 6
TARGETED_SWEEP_VERTICES = 7
LARGE_SWEEP_VERTICES = 8


@dataclass
class VerificationReport:
    claim: str
    parameters: dict
    instances_checked: int = 0
    violations: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "verified" if not self.violations else "violated"

    def to_dict(self, meta: bool = True) -> dict:
        d = {
            "claim": self.claim,
            "status": self.status,
            "parameters": self.parameters,
            "instances_checked": self.instances_checked,
            "violations": self.violations,
            "witnesses": self.witnesses,
        }
        d.update(self.extra)
        if meta:
            d["wall_time"] = self.wall_time
        return d


def _vertex_budget(vertex_max: int, limit: int, allow_large: bool) -> None:
    cap = LARGE_SWEEP_VERTICES if allow_large else limit
    if vertex_max > cap:
        raise BudgetExceeded(
            f"vertex_max={vertex_max} exceeds the sweep budget of {cap}"
            + ("" if allow_large else " (pass allow_large to go up to 8)")
        )


def _chunks(vertex_max: int, edge_counts, chunk: int = CHUNK):
    for e in edge_counts:
        total = count_graphs(vertex_max, e)
        for start in range(0, total, chunk):
            yield e, start, min(start + chunk, total)


def _run(worker, tasks, jobs: int):
    tasks = list(tasks)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(t) for t in tasks]


def _masks_of(vertex_max: int, edges) -> list[int]:
    masks = [0] * vertex_max
    for u, v in edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _graph_record(vertex_max: int, edges) -> dict:
    return {"vertex_count": vertex_max, "edges": [list(e) for e in edges]}


# -- average triangles per edge, up to n(n-1)/2 edges -----------------------


def _thm2_chunk(task):
    n, vertex_max, e, start, stop = task
    checked = 0
    violations = []
    witnesses = []
    cap = (n - 2) * e
    for edges in islice(edge_masks(vertex_max, e), start, stop):
        checked += 1
        masks = _masks_of(vertex_max, edges)
        t3 = 3 * triangles_from_masks(masks)
        if t3 > cap:
            violations.append({**_graph_record(vertex_max, edges), "triangles": t3 // 3,
                               "reason": "3T/E exceeds n-2"})
        elif t3 == cap:
            g = from_edge_list(edges, vertex_max)
            if g.is_padded_complete(n):
                witnesses.append(_graph_record(vertex_max, edges))
            else:
                violations.append({**_graph_record(vertex_max, edges), "triangles": t3 // 3,
                                   "reason": "equality without K_n"})
    return checked, violations, witnesses


def verify_theorem2(
    n: int, vertex_max: int, jobs: int = 1, allow_large: bool = False
) -> VerificationReport:
    """Every graph with at most n(n-1)/2 edges has 3T/E <= n-2, equality only for K_n."""
    if n < 3:
        raise PreconditionError("n must be >= 3")
    e_max = n * (n - 1) // 2
    if vertex_max * (vertex_max - 1) // 2 < e_max:
        raise PreconditionError(
            f"{vertex_max} vertices cannot host the {e_max} edges of K_{n}"
        )
    _vertex_budget(vertex_max, TARGETED_SWEEP_VERTICES, allow_large)
    t0 = time.perf_counter()
    report = VerificationReport("theorem2", {"n": n, "vertex_max": vertex_max})
    tasks = [(n, vertex_max, *c) for c in _chunks(vertex_max, range(1, e_max + 1))]
    for checked, violations, witnesses in _run(_thm2_chunk, tasks, jobs):
        report.instances_checked += checked
        report.violations += violations
        report.witnesses += witnesses
    # sorted degree sequences; every witness is checked to be a padded K_n,
    # which that invariant identifies up to isomorphism
    report.extra["witness_types"] = len({
        tuple(sorted(from_edge_list(w["edges"], vertex_max).degrees())) for w in report.witnesses
    })
    report.extra["all_witnesses_complete"] = all(
        from_edge_list(w["edges"], vertex_max).is_padded_complete(n) for w in report.witnesses
    )
    report.wall_time = time.perf_counter() - t0
    return report


# -- triangle-maximal graphs for a given edge count ---------------------------


def _max_tri_chunk(task):
    vertex_max, e, start, stop = task
    best = -1
    found = []
    for edges in islice(edge_masks(vertex_max, e), start, stop):
        t = triangles_from_masks(_masks_of(vertex_max, edges))
        if t > best:
            best, found = t, [edges]
        elif t == best:
            found.append(edges)
    return best, found


def max_triangles_for_edges(E: int, vertex_max: int, jobs: int = 1, allow_large: bool = False):
    """Largest triangle count among labeled graphs with E edges on vertex_max vertices.

    Returns ``(max_T, witnesses)`` with every labeled graph attaining it, in
    enumeration order.  Graphs on fewer vertices appear padded with
    isolated vertices.
    """
    if E < 1:
        raise PreconditionError("E must be positive")
    slots = vertex_max * (vertex_max - 1) // 2
    if E > slots:
        raise EdgeCountTooLarge(f"{E} edges do not fit on {vertex_max} vertices")
    _vertex_budget(vertex_max, LARGE_SWEEP_VERTICES, allow_large)
    best = -1
    found = []
    for t, edges_list in _run(_max_tri_chunk, [(vertex_max, *c) for c in _chunks(vertex_max, [E])], jobs):
        if t > best:
            best, found = t, list(edges_list)
        elif t == best:
            found += edges_list
    return best, [from_edge_list(edges, vertex_max) for edges in found]


# -- trace identities tr A = 0, tr A^2 = 2E, tr A^3 = 6T ----------------------


def _trace_chunk(task):
    vertex_max, e, start, stop = task
    checked = 0
    violations = []
    for g in enumerate_graphs(vertex_max, e, start, stop):
        checked += 1
        t1, t2, t3 = (trace_power(g, k) for k in (1, 2, 3))
        tri = triangles_from_masks(g.masks)
        if t1 != 0 or t2 != 2 * g.edge_count or t3 != 6 * tri:
            violations.append({**_graph_record(vertex_max, g.edges),
                               "traces": [t1, t2, t3], "triangles": tri})
    return checked, violations


def verify_trace_identities(vertex_max: int, jobs: int = 1) -> VerificationReport:
    _vertex_budget(vertex_max, FULL_SWEEP_VERTICES, False)
    t0 = time.perf_counter()
    report = VerificationReport("trace_identities", {"vertex_max": vertex_max})
    slots = vertex_max * (vertex_max - 1) // 2
    for checked, violations in _run(
        _trace_chunk, [(vertex_max, *c) for c in _chunks(vertex_max, range(slots + 1))], jobs
    ):
        report.instances_checked += checked
        report.violations += violations
    report.wall_time = time.perf_counter() - t0
    return report


# -- closed-walk sandwich tr A^k / 2k <= classes <= tr A^k / 2 ----------------


def _eq5_chunk(task):
    vertex_max, k_max, e, start, stop = task
    checked = 0
    vacuous = 0
    violations = []
    for g in enumerate_graphs(vertex_max, e, start, stop):
        for k in range(1, k_max + 1):
            checked += 1
            tr = trace_power(g, k)
            if tr == 0:
                vacuous += 1
                continue
            c = closed_walk_classes(g, k)
            if not (tr <= 2 * k * c and 2 * c <= tr):
                violations.append({**_graph_record(vertex_max, g.edges), "k": k,
                                   "trace": tr, "classes": c})
    return checked, vacuous, violations


def verify_eq5(vertex_max: int, k_max: int, jobs: int = 1) -> VerificationReport:
    """Check tr A^k/(2k) <= #closed-walk classes <= tr A^k/2 on every graph and k <= k_max."""
    if vertex_max > FULL_SWEEP_VERTICES or k_max > 6:
        raise BudgetExceeded("verify_eq5 is limited to vertex_max <= 6 and k_max <= 6")
    if vertex_max < 1 or k_max < 1:
        raise PreconditionError("vertex_max and k_max must be positive")
    t0 = time.perf_counter()
    report = VerificationReport("eq5", {"vertex_max": vertex_max, "k_max": k_max})
    slots = vertex_max * (vertex_max - 1) // 2
    tasks = [(vertex_max, k_max, *c) for c in _chunks(vertex_max, range(slots + 1), 2000)]
    vacuous = 0
    for checked, vac, violations in _run(_eq5_chunk, tasks, jobs):
        report.instances_checked += checked
        vacuous += vac
        report.violations += violations
    report.extra["vacuous"] = vacuous
    report.wall_time = time.perf_counter() - t0
    return report


# -- equality case of the sharp p-cycle bound ---------------------------------


def verify_thm4_equality(
    n: int, p: int, budget: int = DEFAULT_NODE_BUDGET, allow_large: bool = False
) -> dict:
    """Compare C_p(K_n) with the sharp bound at E = n(n-1)/2.

    ``equal`` is decided with a 1e-9 relative tolerance; ``gap`` is
    tr(A^p) - 2p C_p on K_n, nonzero whenever closed p-walks that are not
    cycles exist (all p >= 5).
    """
    if p == 2 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    if not 3 <= p <= n:
        raise PreconditionError("need 3 <= p <= n")
    if n > 9 and not allow_large:
        raise BudgetExceeded("verify_thm4_equality is limited to n <= 9")
    g = complete(n)
    e = n * (n - 1) // 2
    exact = count_simple_cycles(g, p, budget)
    bound = cycle_bound_sharp(e, n, p)
    printed = cycle_bound_sharp(e, n, p, printed=True)
    return {
        "n": n,
        "p": p,
        "exact": exact,
        "bound": bound,
        "printed_bound": printed,
        "equal": abs(exact - bound) <= 1e-9 * max(1.0, bound),
        "gap": walk_cycle_gap(g, p, budget),
        "trace": trace_power(g, p),
    }
