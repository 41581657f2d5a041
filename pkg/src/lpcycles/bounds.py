"""Upper bounds on triangle and cycle counts in terms of the edge count.

Every bound comes from the same chain: tr A^k is a power sum of the
eigenvalues, the eigenvalues sum to zero and their squares sum to 2E, so the
power sum is at most (max of the normalised power sum) * (2E)^{k/2}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cycles import DEFAULT_NODE_BUDGET, count_simple_cycles, count_triangles
from .errors import NotOddPrime, NotPrime, OddExponent, PreconditionError, TooManyEdges
from .graph import Graph

SLACK = 1e-9


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    return all(k % d for d in range(2, math.isqrt(k) + 1))


def _check_edges(E: float, V: int) -> None:
    if E < 0:
        raise PreconditionError("edge count must be non-negative")
    if E > V * (V - 1) / 2:
        raise TooManyEdges(f"{E} edges exceed V(V-1)/2 = {V * (V - 1) // 2} for V={V}")


def triangle_bound_naive(E: float) -> float:
    if E < 0:
        raise PreconditionError("edge count must be non-negative")
    return math.sqrt(2) / 3 * E**1.5


def cycle_bound_naive(E: float, k: int, prime: bool = False) -> float:
    """C_k <= 2^{k/2-1} E^{k/2}; with ``prime`` the extra 1/k factor applies."""
    if E < 0:
        raise PreconditionError("edge count must be non-negative")
    if k < 3:
        raise PreconditionError("cycle length must be >= 3")
    value = 2 ** (k / 2 - 1) * E ** (k / 2)
    if prime:
        if not is_prime(k):
            raise NotPrime(f"{k} is not prime")
        value /= k
    return value


def M(n: int, k: int) -> float:
    """Maximum of sum(x_i^k) over unit vectors with zero sum, for odd k."""
    if n < 2 or k < 3:
        raise PreconditionError("M needs n >= 2 and k >= 3")
    return ((n - 1) ** (k - 1) - 1) / (n ** (k / 2) * (n - 1) ** (k / 2 - 1))


def S_even(n: int, p: int) -> float:
    """Maximum of sum(x_i^p) over unit vectors with zero sum, for even p."""
    if p % 2:
        raise OddExponent(f"S_even needs an even exponent, got {p}")
    if n < 2 or p < 4:
        raise PreconditionError("S_even needs n >= 2 and p >= 4")
    return ((n - 1) ** (p - 1) + 1) / (n ** (p / 2) * (n - 1) ** (p / 2 - 1))


def power_sum_max(n: int, p: int) -> float:
    return M(n, p) if p % 2 else S_even(n, p)


def triangle_bound_sharp(E: float, V: int) -> float:
    if V < 2:
        raise PreconditionError("V must be >= 2")
    _check_edges(E, V)
    return (V - 2) / math.sqrt(V * (V - 1)) * triangle_bound_naive(E)


def cycle_bound_sharp(E: float, V: int, p: int, printed: bool = False) -> float:
    """Sharp bound on the number of p-cycles for an odd prime p.

    The default multiplies M(V, p) into the prime-cycle bound.  With
    ``printed=True`` the constant is ((V-1)^{p-1} - 1) /
    (V^{(p+1)/2} (V-1)^{(p-1)/2-1}) instead, which is smaller by
    sqrt((V-1)/V); it undercuts T(K_4) at p=3 and is kept only for probing.
    """
    if p == 2 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    if V < 3:
        raise PreconditionError("V must be >= 3")
    _check_edges(E, V)
    if printed:
        const = ((V - 1) ** (p - 1) - 1) / (V ** ((p + 1) / 2) * (V - 1) ** ((p - 1) / 2 - 1))
    else:
        const = M(V, p)
    return const * cycle_bound_naive(E, p, prime=True)


@dataclass
class BoundRow:
    cycle_length: int
    exact_count: int
    naive_bound: float
    prime_bound: float | None
    sharp_bound: float | None
    tightness_ratio: float | None

    def check(self) -> None:
        for b in (self.naive_bound, self.prime_bound, self.sharp_bound):
            if b is not None and self.exact_count > b + SLACK:
                raise AssertionError(f"count {self.exact_count} exceeds bound {b} at k={self.cycle_length}")


@dataclass
class BoundReport:
    vertex_count: int
    edge_count: int
    rows: list[BoundRow] = field(default_factory=list)


def bound_report(g: Graph, k_max: int, budget: int = DEFAULT_NODE_BUDGET) -> BoundReport:
    """Exact cycle counts next to every applicable bound for k = 3..k_max.

    The prime and sharp columns are only filled for odd prime k; the ratio is
    taken against the sharp bound and is None where that column is empty.
    """
    V, E = g.vertex_count, g.edge_count
    if not 3 <= k_max <= V:
        raise PreconditionError(f"k_max must satisfy 3 <= k_max <= {V}")
    report = BoundReport(V, E)
    for k in range(3, k_max + 1):
        exact = count_triangles(g) if k == 3 else count_simple_cycles(g, k, budget)
        prime = cycle_bound_naive(E, k, prime=True) if is_prime(k) else None
        if k == 3:
            sharp = triangle_bound_sharp(E, V)
        elif is_prime(k):
            sharp = cycle_bound_sharp(E, V, k)
        else:
            sharp = None
        if sharp is None:
            ratio = None
        elif sharp > 0:
            ratio = exact / sharp
        else:
            ratio = 0.0
        row = BoundRow(k, exact, cycle_bound_naive(E, k), prime, sharp, ratio)
        row.check()
        report.rows.append(row)
    return report
