"""Maximising sum(x_i^p) over unit vectors whose coordinates sum to zero.

Closed forms, the family of two-valued stationary points, a projected
gradient explorer, and the threshold machinery that separates the generic
even-p case from the finitely many small (n, p) pairs that need separate
arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import M, power_sum_max
from .errors import NoConvergence, PreconditionError

SIGNED = "signed"
ABSOLUTE = "absolute"


@dataclass(frozen=True)
class PowerSumProblem:
    n: int
    p: float
    mode: str = SIGNED

    def __post_init__(self):
        if self.n < 2:
            raise PreconditionError("dimension must be >= 2")
        if self.mode not in (SIGNED, ABSOLUTE):
            raise PreconditionError(f"unknown mode {self.mode!r}")
        if self.p <= 2:
            raise PreconditionError("exponent must exceed 2")
        if self.mode == SIGNED and self.p != int(self.p):
            raise PreconditionError("signed mode needs an integer exponent")

    @property
    def sign_symmetric(self) -> bool:
        """Objective unchanged under x -> -x."""
        return self.mode == ABSOLUTE or int(self.p) % 2 == 0

    def objective(self, x: np.ndarray) -> np.ndarray:
        if self.mode == ABSOLUTE:
            return np.sum(np.abs(x) ** self.p, axis=-1)
        return np.sum(x ** int(self.p), axis=-1)

    def derivative(self, x: np.ndarray) -> np.ndarray:
        """Gradient of the objective divided by p (the Lagrange-normalised form)."""
        if self.mode == ABSOLUTE:
            return np.abs(x) ** (self.p - 1) * np.sign(x)
        return x ** (int(self.p) - 1)


@dataclass
class ExtremalSolution:
    point: tuple[float, ...]
    n1: int | None
    n2: int | None
    alpha1: float | None
    alpha2: float | None
    lambda1: float
    lambda2: float
    objective: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.point)


def _two_level(n: int, n1: int, p: int) -> ExtremalSolution:
    n2 = n - n1
    alpha1 = math.sqrt(n2 / (n1 * n))
    alpha2 = -math.sqrt(n1 / (n2 * n))
    # the line through (alpha1, alpha1^{p-1}) and (alpha2, alpha2^{p-1})
    lambda2 = (alpha1 ** (p - 1) - alpha2 ** (p - 1)) / (alpha1 - alpha2)
    lambda1 = alpha1 ** (p - 1) - lambda2 * alpha1
    point = (alpha1,) * n1 + (alpha2,) * n2
    objective = n1 * alpha1**p + n2 * alpha2**p
    return ExtremalSolution(point, n1, n2, alpha1, alpha2, lambda1, lambda2, objective)


def extremal_point(n: int, p: int) -> ExtremalSolution:
    """The maximiser: one coordinate sqrt((n-1)/n), the rest -1/sqrt(n(n-1))."""
    if n < 2 or p < 3:
        raise PreconditionError("extremal_point needs n >= 2 and p >= 3")
    sol = _two_level(n, 1, p)
    sol.diagnostics["closed_form"] = power_sum_max(n, p)
    return sol


def two_level_solutions(n: int, p: int) -> list[ExtremalSolution]:
    """Every feasible two-valued point, one per split n1 + n2 = n, best first."""
    if n < 2 or p < 3:
        raise PreconditionError("two_level_solutions needs n >= 2 and p >= 3")
    sols = [_two_level(n, n1, p) for n1 in range(1, n)]
    sols.sort(key=lambda s: (-s.objective, s.n1))
    return sols


def stationarity_residual(sol: ExtremalSolution, p: float, mode: str = SIGNED) -> float:
    """max_i |phi(x_i) - lambda1 - lambda2 x_i| for phi the normalised derivative."""
    problem = PowerSumProblem(len(sol.point), p, mode)
    x = np.asarray(sol.point)
    return float(np.max(np.abs(problem.derivative(x) - sol.lambda1 - sol.lambda2 * x)))


# -- numerical explorer -----------------------------------------------------


def _project_feasible(x: np.ndarray) -> np.ndarray:
    x = x - x.mean(axis=-1, keepdims=True)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def _tangent(problem: PowerSumProblem, x: np.ndarray) -> np.ndarray:
    g = problem.derivative(x)
    g = g - g.mean(axis=-1, keepdims=True)
    return g - np.sum(g * x, axis=-1, keepdims=True) * x


def canonicalize(point, sign_symmetric: bool = False) -> tuple[float, ...]:
    """Sort descending; for sign-symmetric objectives also pick the larger of x, -x."""
    a = tuple(sorted((float(v) for v in point), reverse=True))
    if sign_symmetric:
        b = tuple(sorted((-float(v) for v in point), reverse=True))
        a = max(a, b)
    return a


def _levels(point: tuple[float, ...], tol: float):
    """Group a descending point into (value, multiplicity) runs."""
    runs: list[list] = []
    for v in point:
        if runs and abs(runs[-1][0] - v) <= tol:
            runs[-1][1] += 1
        else:
            runs.append([v, 1])
    return runs


def numeric_maximize(
    problem: PowerSumProblem,
    seed: int = 0,
    iterations: int = 5000,
    tol: float = 1e-9,
    restarts: int = 32,
) -> ExtremalSolution:
    """Projected gradient ascent with step halving from ``restarts`` random starts.

    All restarts advance together as rows of one array.  Each step moves
    along the gradient projected onto the tangent space of the feasible set
    (zero sum, unit norm), maps back by centring and normalising, and halves
    the step until the Armijo condition holds.  A row is converged when its
    projected-gradient norm drops below ``tol``.
    """
    rng = np.random.default_rng(seed)
    x = _project_feasible(rng.standard_normal((restarts, problem.n)))
    f = problem.objective(x)
    step = np.full(restarts, 0.5)
    active = np.ones(restarts, dtype=bool)
    used = np.zeros(restarts, dtype=int)
    for _ in range(iterations):
        d = _tangent(problem, x)
        resid = np.linalg.norm(d, axis=1)
        active &= resid > tol
        if not active.any():
            break
        idx = np.flatnonzero(active)
        used[idx] += 1
        t = step[idx]
        dd = d[idx]
        sq = resid[idx] ** 2
        pending = np.ones(idx.size, dtype=bool)
        xi = x[idx].copy()
        fi = f[idx].copy()
        for _halving in range(60):
            cand = _project_feasible(x[idx] + t[:, None] * dd)
            fc = problem.objective(cand)
            ok = pending & (fc >= f[idx] + 1e-4 * t * sq)
            xi[ok] = cand[ok]
            fi[ok] = fc[ok]
            pending &= ~ok
            if not pending.any():
                break
            t = np.where(pending, t / 2, t)
        # rows that never satisfied Armijo are stuck at floating-point resolution
        stuck = pending
        x[idx] = xi
        f[idx] = fi
        step[idx] = np.minimum(np.where(stuck, t, t * 2), 4.0)
        active[idx[stuck]] = False
    d = _tangent(problem, x)
    resid = np.linalg.norm(d, axis=1)
    f = problem.objective(x)

    order = sorted(
        range(restarts),
        key=lambda i: (
            round(float(f[i]), 12),
            canonicalize(np.round(x[i], 12), problem.sign_symmetric),
        ),
        reverse=True,
    )
    best = order[0]
    if resid.min() > tol:
        raise NoConvergence(
            f"no restart reached projected-gradient residual {tol:g} "
            f"(best {resid.min():.3g}) in {iterations} iterations"
        )
    if resid[best] > tol:
        converged = [i for i in order if resid[i] <= tol]
        best = converged[0]

    point = canonicalize(x[best], problem.sign_symmetric)
    xb = np.asarray(point)
    phi = problem.derivative(xb)
    lambda1 = float(phi.sum() / problem.n)
    lambda2 = float(problem.objective(xb))
    runs = _levels(point, 1e-6)
    n1 = n2 = alpha1 = alpha2 = None
    if len(runs) == 2 and runs[0][0] > 0 > runs[1][0]:
        (alpha1, n1), (alpha2, n2) = runs
    sol = ExtremalSolution(point, n1, n2, alpha1, alpha2, lambda1, lambda2, lambda2)
    sol.diagnostics = {
        "seed": seed,
        "restarts": restarts,
        "iterations": iterations,
        "tol": tol,
        "residual": float(resid[best]),
        "restart_objectives": [float(v) for v in f],
        "restart_residuals": [float(v) for v in resid],
        "iterations_used": [int(v) for v in used],
        "distinct_levels": len(runs),
    }
    return sol


# -- threshold machinery ----------------------------------------------------


def h_function(p: float) -> float:
    return (1 + (p - 1) ** (-2 / (p - 2))) ** ((p - 2) / p)


def g_function(p: float) -> float:
    if p <= 2:
        raise PreconditionError("g(p) is defined for p > 2")
    return 1 / h_function(p)


@dataclass(frozen=True)
class ThresholdRecord:
    p: float
    g_value: float
    h_value: float
    n_threshold: int
    exceptional_n: tuple[int, ...]


def g_threshold(p: float) -> ThresholdRecord:
    """Smallest n with 1 - 1/n >= g(p), and the n >= 3 below it."""
    g = g_function(p)
    n = max(2, math.ceil(1 / (1 - g)) - 1)
    while 1 - 1 / n < g:
        n += 1
    while n > 2 and 1 - 1 / (n - 1) >= g:
        n -= 1
    return ThresholdRecord(p, g, h_function(p), n, tuple(range(3, n)))


def exceptional_set(p_max: int) -> set[tuple[int, int]]:
    """(n, p) pairs with even 4 <= p <= p_max that the threshold test leaves open."""
    if p_max < 4 or p_max % 2:
        raise PreconditionError("p_max must be an even integer >= 4")
    return {(n, p) for p in range(4, p_max + 1, 2) for n in g_threshold(p).exceptional_n}


def separation_check(n: int, p: int) -> dict:
    """The intermediate inequality behind the threshold test, evaluated directly.

    With S the even-p value at the extremal point (a lower bound for the
    maximum, hence for lambda2 and for x_1^{p-2}), the critical points
    z = (lambda2/(p-1))^{1/(p-2)} of x^{p-1} - lambda1 - lambda2 x lie beyond
    every non-leading coordinate once (S/(p-1))^{2/(p-2)} >= 1 - S^{2/(p-2)}.
    """
    s = power_sum_max(n, p)
    lead = s ** (1 / (p - 2))
    z = (s / (p - 1)) ** (1 / (p - 2))
    rest = math.sqrt(max(0.0, 1 - lead**2))
    return {
        "n": n,
        "p": p,
        "power_sum": s,
        "leading_lower": lead,
        "z_lower": z,
        "rest_upper": rest,
        "holds": z >= rest,
        "threshold_holds": 1 - 1 / n >= g_function(p),
    }


def p4_three_value_check(n: int) -> dict:
    """Can a p=4 maximiser with three distinct coordinate values exist in dimension n?

    Three values alpha > beta, gamma satisfy beta + gamma = -alpha, and some
    non-leading value repeats, so 1 >= alpha^2 + min(2 beta^2 + gamma^2).
    ``alpha_sq_upper`` uses the minimiser beta = -2a/3, gamma = -a/3, which
    gives 1/2.  The true minimiser is beta = -a/3, gamma = -2a/3 with minimum
    2a^2/3, giving the weaker 3/5, reported as ``alpha_sq_upper_exact``.
    The lower bound ((n-1)/n)^2 comes from alpha^2 >= maximum value.
    """
    if n < 3:
        raise PreconditionError("n must be >= 3")
    lower = ((n - 1) / n) ** 2
    upper = 0.5
    upper_exact = 3 / 5
    return {
        "n": n,
        "alpha_sq_upper": upper,
        "alpha_sq_lower": lower,
        "excluded": lower > upper,
        "alpha_sq_upper_exact": upper_exact,
        "excluded_exact": lower > upper_exact,
    }


def proof_route(n: int, p: int) -> str:
    """Which argument settles the maximiser for the integer pair (n, p)."""
    if n < 2 or p < 3:
        raise PreconditionError("need n >= 2 and p >= 3")
    if n == 2:
        return "two-dimensional"
    if p % 2:
        return "odd-exponent"
    if 1 - 1 / n >= g_function(p):
        return "threshold"
    if n == 3:
        return "newton-n3"
    if n == 4 and p in (4, 6):
        return "newton-n4"
    if p == 4:
        return "three-value-p4"
    return "uncovered"


def certify(n: int, p: int) -> dict:
    """Run the check attached to :func:`proof_route` for (n, p)."""
    from . import symfun

    route = proof_route(n, p)
    if route == "two-dimensional":
        detail = {"points": 1}
        holds = True
    elif route == "odd-exponent":
        sols = two_level_solutions(n, p)
        holds = sols[0].n2 == n - 1 and math.isclose(
            sols[0].objective, M(n, p), rel_tol=1e-12, abs_tol=1e-15
        )
        detail = {"best_split": [sols[0].n1, sols[0].n2]}
    elif route == "threshold":
        detail = separation_check(n, p)
        holds = detail["holds"]
    elif route == "newton-n3":
        holds = symfun.coefficient_positivity_check(p)
        detail = {"coefficients_nonnegative_to": p}
    elif route == "newton-n4":
        symfun.n4_identities()
        detail = symfun.e4_min_at_e3_max()
        holds = detail["matches"]
    elif route == "three-value-p4":
        detail = p4_three_value_check(n)
        holds = detail["excluded_exact"]
    else:
        detail = {}
        holds = False
    return {"n": n, "p": p, "route": route, "holds": bool(holds), "detail": detail}
