"""Elementary symmetric functions, power sums and Newton's identities.

Arithmetic is exact: inputs may be ints, ``Fraction``s or polynomials in the
symbols e3, e4 (``SymPolyInE``), and the same recurrence serves all three.
Under the normalisation sum(x) = 0, sum(x^2) = 1 we always have e1 = 0 and
e2 = -1/2, which leaves power sums in dimension 3 and 4 as polynomials in
e3 (and e4).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import IdentityMismatch, PreconditionError

E1 = Fraction(0)
E2 = Fraction(-1, 2)


class SymPolyInE:
    """Polynomial in e3, e4 with rational coefficients.

    ``coefficients`` maps exponent pairs (a, b) of e3^a e4^b to a Fraction;
    zero coefficients are never stored.
    """

    __slots__ = ("coefficients", "n", "k")

    def __init__(self, coefficients=None, n: int | None = None, k: int | None = None):
        self.coefficients = {m: Fraction(c) for m, c in (coefficients or {}).items() if c}
        self.n = n
        self.k = k

    @classmethod
    def constant(cls, c) -> "SymPolyInE":
        return cls({(0, 0): c})

    @classmethod
    def e3(cls) -> "SymPolyInE":
        return cls({(1, 0): 1})

    @classmethod
    def e4(cls) -> "SymPolyInE":
        return cls({(0, 1): 1})

    def _lift(self, other) -> "SymPolyInE":
        if isinstance(other, SymPolyInE):
            return other
        if isinstance(other, (int, Fraction)):
            return SymPolyInE.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coefficients)
        for m, c in other.coefficients.items():
            out[m] = out.get(m, 0) + c
        return SymPolyInE(out)

    __radd__ = __add__

    def __neg__(self):
        return SymPolyInE({m: -c for m, c in self.coefficients.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (a1, b1), c1 in self.coefficients.items():
            for (a2, b2), c2 in other.coefficients.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, 0) + c1 * c2
        return SymPolyInE(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def coefficient(self, e3_power: int = 0, e4_power: int = 0) -> Fraction:
        return self.coefficients.get((e3_power, e4_power), Fraction(0))

    def evaluate(self, e3: float, e4: float = 0.0) -> float:
        return sum(float(c) * e3**a * e4**b for (a, b), c in self.coefficients.items())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coefficients.values())

    def to_json(self) -> list:
        return [
            {"e3": a, "e4": b, "coefficient": str(c)}
            for (a, b), c in sorted(self.coefficients.items())
        ]

    def __repr__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for (a, b), c in sorted(self.coefficients.items()):
            sym = "*".join(
                s for s in (_power("e3", a), _power("e4", b)) if s
            )
            terms.append(f"{c}*{sym}" if sym else str(c))
        return " + ".join(terms)


def _power(name: str, a: int) -> str:
    return "" if a == 0 else name if a == 1 else f"{name}^{a}"


def elementary_from_roots(xs: Sequence) -> list:
    """[e_1, ..., e_n] of the given values, by multiplying out prod(x - x_i)."""
    if not xs:
        raise PreconditionError("need at least one value")
    e = [1] + [0] * len(xs)
    for j, x in enumerate(xs, 1):
        for k in range(j, 0, -1):
            e[k] = e[k] + x * e[k - 1]
    return e[1:]


def power_sums_from_elementary(es: Sequence, k_max: int) -> list:
    """[t_1, ..., t_{k_max}] from [e_1, ..., e_n] by Newton's identities.

    t_k = sum_{i=1}^{min(k-1, n)} (-1)^{i-1} e_i t_{k-i}, plus (-1)^{k-1} k e_k
    when k <= n.  e_i for i > n is zero, so only n terms ever enter.
    """
    if not es:
        raise PreconditionError("need at least one elementary symmetric value")
    if k_max < 1:
        raise PreconditionError("k_max must be >= 1")
    n = len(es)
    t = [n]  # t_0; only read by callers that index from 0
    for k in range(1, k_max + 1):
        acc = 0
        for i in range(1, min(k - 1, n) + 1):
            term = es[i - 1] * t[k - i]
            acc = acc + term if i % 2 else acc - term
        if k <= n:
            term = k * es[k - 1]
            acc = acc + term if k % 2 else acc - term
        t.append(acc)
    return t[1:]


def _normalised_power_sums(n: int, k_max: int) -> list[SymPolyInE]:
    es = [SymPolyInE.constant(E1), SymPolyInE.constant(E2), SymPolyInE.e3()]
    if n == 4:
        es.append(SymPolyInE.e4())
    elif n != 3:
        raise PreconditionError("only n = 3 and n = 4 are supported")
    ts = power_sums_from_elementary(es, k_max)
    for k, t in enumerate(ts, 1):
        t.n, t.k = n, k
    return ts


def t_in_e3_n3(k: int) -> SymPolyInE:
    """t_k in dimension 3 as a polynomial in e3 (e1 = 0, e2 = -1/2)."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    return _normalised_power_sums(3, k)[-1]


def t_in_e_n4(k: int) -> SymPolyInE:
    if k < 1:
        raise PreconditionError("k must be >= 1")
    return _normalised_power_sums(4, k)[-1]


def coefficient_positivity_check(k_max: int) -> bool:
    if k_max < 3:
        raise PreconditionError("k_max must be >= 3")
    return all(t.is_nonnegative() for t in _normalised_power_sums(3, k_max))


PRINTED_N4 = {
    3: SymPolyInE({(1, 0): 3}),
    4: SymPolyInE({(0, 0): Fraction(1, 2), (0, 1): -4}),
    6: SymPolyInE({(0, 0): Fraction(1, 4), (2, 0): 3, (0, 1): -3}),
}


def n4_identities() -> dict[int, SymPolyInE]:
    """t_3, t_4, t_6 in dimension 4, checked against the known closed forms."""
    ts = _normalised_power_sums(4, 6)
    out = {k: ts[k - 1] for k in (3, 4, 6)}
    bad = {k: (out[k], PRINTED_N4[k]) for k in out if out[k] != PRINTED_N4[k]}
    if bad:
        raise IdentityMismatch(
            "; ".join(f"t_{k}: engine {got!r} vs expected {want!r}" for k, (got, want) in bad.items())
        )
    return out


def e4_min_at_e3_max(n: int = 4) -> dict:
    """Compare the minimiser of e_n with the maximiser of e_3 over two-valued points.

    Critical points of e_n on the feasible set take two values, so it is
    enough to scan the splits n1 + n2 = n.  ``matches`` is true when the
    split maximising e3 also attains the minimum of e_n (the minimum is
    shared with the mirrored split when n is even).
    """
    rows = []
    for n1 in range(1, n):
        n2 = n - n1
        a1 = math.sqrt(n2 / (n1 * n))
        a2 = -math.sqrt(n1 / (n2 * n))
        es = elementary_from_roots([a1] * n1 + [a2] * n2)
        rows.append({"n1": n1, "n2": n2, "e3": es[2], "en": es[n - 1]})
    top = max(rows, key=lambda r: r["e3"])
    lowest = min(r["en"] for r in rows)
    return {
        "n": n,
        "splits": rows,
        "e3_argmax": [top["n1"], top["n2"]],
        "en_min": lowest,
        "matches": abs(top["en"] - lowest) <= 1e-12,
    }
