"""Solvers for the depth changes of occlusion groups, and rate control.

`brute_force` enumerates every admissible change vector (tensor algebra,
guarded by a search-space cap) and is the exactness oracle.  `dp_optimize`
is the forward dynamic program over the group's pixels in depth order: per
state it keeps the best cost-to-go, a backtracking pointer, and the mass
product along its own argmin path; that stored product weights the
distortion a transition adds.  With uniform masses the product does not
depend on the path and the program is exact; with non-uniform masses it
commits to per-state argmin prefixes, so results are re-evaluated with the
direct group cost and reported as `true_cost`.

Tie rules (all deterministic): brute force keeps the first minimum in
lexicographic enumeration order; the dynamic program prefers the lower
accumulated path rate, then the lower state; the independent per-pixel
solver prefers the change closest to the observed error, then the smaller
change.

`bisect_lambda` searches the Lagrange multiplier for a rate budget: since
the per-multiplier optima sweep the lower convex hull of achievable
(rate, distortion) points with nonincreasing rate, plain bisection over
the multiplier applies; the returned solution is the lowest-multiplier
probe whose rate fits the budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cost import PixelTables, group_cost, group_distortion, group_rate


class SearchSpaceError(ValueError):
    """Exhaustive enumeration refused: candidate-vector count above the cap."""


class InfeasibleBudgetError(ValueError):
    """Rate budget below the minimum achievable rate."""

    def __init__(self, budget: float, min_rate: float):
        self.budget = budget
        self.min_rate = min_rate
        super().__init__(
            f"rate budget {budget:g} bits is infeasible; "
            f"minimum achievable rate is {min_rate:g} bits"
        )


@dataclass
class GroupSolution:
    """A solved group: the change vector, the solver's own objective value,
    and the directly re-evaluated cost/rate/distortion."""

    changes: tuple[int, ...]
    recursion_cost: float
    true_cost: float
    rate: float
    distortion: float


def stage_cost(tables: PixelTables, dv: int, lam: float) -> float:
    """Per-stage cost P(dv) * dbar(dv) + lam * R(dv)."""
    i = tables.index(dv)
    return float(tables.p[i] * tables.d[i] + lam * tables.r[i])


def _solution(tables: Sequence[PixelTables], changes, recursion_cost: float,
              lam: float) -> GroupSolution:
    changes = tuple(int(c) for c in changes)
    return GroupSolution(
        changes=changes,
        recursion_cost=recursion_cost,
        true_cost=group_cost(tables, changes, lam),
        rate=group_rate(tables, changes),
        distortion=group_distortion(tables, changes),
    )


def dp_optimize(tables: Sequence[PixelTables], lam: float) -> GroupSolution:
    """Solve one group by the forward dynamic program.

    Requires the tables in the group's depth order (winner last).
    """
    if not tables:
        raise ValueError("empty group")
    if lam < 0:
        raise ValueError("lambda must be non-negative")

    t0 = tables[0]
    value = [float(t0.p[s] * t0.d[s] + lam * t0.r[s]) for s in range(len(t0.p))]
    path_rate = [float(t0.r[s]) for s in range(len(t0.p))]
    path_mass = [float(t0.p[s]) for s in range(len(t0.p))]
    back: list[list[int]] = []

    for k in range(1, len(tables)):
        t = tables[k]
        m = len(t.p)
        new_value = [0.0] * m
        new_rate = [0.0] * m
        new_mass = [0.0] * m
        pointers = [0] * m
        for s in range(m):
            dterm = float(t.p[s] * t.d[s])
            rterm = lam * float(t.r[s])
            best = None
            best_prev = 0
            for sp in range(len(value)):
                cand = (value[sp] + path_mass[sp] * dterm + rterm,
                        path_rate[sp] + float(t.r[s]))
                if best is None or cand < best:
                    best = cand
                    best_prev = sp
            new_value[s], new_rate[s] = best
            new_mass[s] = path_mass[best_prev] * float(t.p[s])
            pointers[s] = best_prev
        back.append(pointers)
        value, path_rate, path_mass = new_value, new_rate, new_mass

    final = min(range(len(value)), key=lambda s: (value[s], path_rate[s], s))
    states = [final]
    for pointers in reversed(back):
        states.append(pointers[states[-1]])
    states.reverse()
    changes = [t.pixel.candidates.lo + s for t, s in zip(tables, states)]
    return _solution(tables, changes, value[final], lam)


def brute_force(
    tables: Sequence[PixelTables], lam: float, cap: int = 10**6
) -> GroupSolution:
    """Exact minimizer of the group cost over every candidate vector.

    Refuses outright (no partial answer) when the vector count exceeds
    `cap`.  First minimum in lexicographic enumeration order wins ties.
    """
    if not tables:
        raise ValueError("empty group")
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    sizes = [len(t.p) for t in tables]
    total = math.prod(sizes)
    if total > cap:
        raise SearchSpaceError(
            f"{total} candidate vectors exceed the enumeration cap of {cap}"
        )

    cost = np.zeros(sizes, dtype=np.float64)
    prefix = np.ones((), dtype=np.float64)
    n = len(tables)
    for z, t in enumerate(tables):
        prefix = np.multiply.outer(prefix, t.p)  # mass product over stages <= z
        term = prefix * t.d
        shape = sizes[: z + 1] + [1] * (n - z - 1)
        cost += term.reshape(shape)
        cost += (lam * t.r).reshape([1] * z + [sizes[z]] + [1] * (n - z - 1))

    flat = int(np.argmin(cost))
    idx = np.unravel_index(flat, sizes)
    changes = [t.pixel.candidates.lo + int(i) for t, i in zip(tables, idx)]
    return _solution(tables, changes, float(cost.flat[flat]), lam)


def independent_optimize(tables: PixelTables, lam: float) -> tuple[int, float]:
    """Best change of a lone pixel: argmin of P*dbar + lam*R.

    Ties prefer the change closest to the observed error, then the smaller
    change.
    """
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    obj = tables.p * tables.d + lam * tables.r
    err = tables.pixel.error
    best = min(
        (float(obj[i]), abs(dv - err), dv)
        for i, dv in enumerate(tables.changes.tolist())
    )
    return best[2], best[0]


@dataclass
class Problem:
    """One frame's optimization inputs: occlusion groups (tables in depth
    order) plus the pixels that warp without collision."""

    groups: list[list[PixelTables]] = field(default_factory=list)
    singles: list[PixelTables] = field(default_factory=list)


@dataclass
class ProblemSolution:
    lam: float
    mode: str
    group_solutions: list[GroupSolution]
    single_changes: list[int]
    rate: float
    distortion: float

    @property
    def cost(self) -> float:
        return self.distortion + self.lam * self.rate


def solve_group(tables: Sequence[PixelTables], lam: float, mode: str) -> GroupSolution:
    """Dispatch one group to the requested solver."""
    if mode == "dp":
        return dp_optimize(tables, lam)
    if mode == "brute":
        return brute_force(tables, lam)
    if mode == "independent":
        changes = [independent_optimize(t, lam)[0] for t in tables]
        cost = group_cost(tables, changes, lam)
        return _solution(tables, changes, cost, lam)
    raise ValueError(f"unknown mode {mode!r} (expected dp, brute or independent)")


def solve_problem(problem: Problem, lam: float, mode: str = "dp") -> ProblemSolution:
    """Solve every group with `mode` and every lone pixel independently."""
    if mode not in ("dp", "brute", "independent"):
        raise ValueError(f"unknown mode {mode!r} (expected dp, brute or independent)")
    group_solutions = [solve_group(tables, lam, mode) for tables in problem.groups]
    single_changes = []
    rate = sum(s.rate for s in group_solutions)
    distortion = sum(s.distortion for s in group_solutions)
    for t in problem.singles:
        dv, _ = independent_optimize(t, lam)
        single_changes.append(dv)
        i = t.index(dv)
        rate += float(t.r[i])
        distortion += float(t.p[i] * t.d[i])
    return ProblemSolution(
        lam=lam,
        mode=mode,
        group_solutions=group_solutions,
        single_changes=single_changes,
        rate=float(rate),
        distortion=float(distortion),
    )


def min_rate(problem: Problem) -> float:
    """Smallest achievable total rate (rates are additive per pixel)."""
    total = 0.0
    for tables in problem.groups:
        total += sum(float(t.r.min()) for t in tables)
    total += sum(float(t.r.min()) for t in problem.singles)
    return total


@dataclass
class BisectionResult:
    lam: float
    solution: ProblemSolution
    trace: list[tuple[float, float]]  # (lambda, rate) probes in evaluation order


def bisect_lambda(
    problem: Problem,
    budget: float,
    tol: float = 1e-3,
    max_iter: int = 100,
    mode: str = "dp",
) -> BisectionResult:
    """Find the smallest probed multiplier whose solution fits the budget.

    Probes lambda = 0 first (unconstrained), grows an upper bracket by
    doubling, then bisects until the feasible rate is within `tol` bits of
    the budget, the bracket degenerates, or `max_iter` is spent.  Raises
    `InfeasibleBudgetError` (naming the minimum rate) when no solution can
    fit.
    """
    if budget < 0:
        raise ValueError("rate budget must be non-negative")
    floor = min_rate(problem)
    if budget < floor * (1 - 1e-12) - 1e-12:
        raise InfeasibleBudgetError(budget, floor)

    trace: list[tuple[float, float]] = []

    def probe(lam: float) -> ProblemSolution:
        solution = solve_problem(problem, lam, mode)
        trace.append((lam, solution.rate))
        return solution

    sol = probe(0.0)
    if sol.rate <= budget:
        return BisectionResult(0.0, sol, trace)

    lo = 0.0
    hi = 1.0
    sol_hi = probe(hi)
    doublings = 0
    while sol_hi.rate > budget and doublings < 60:
        lo = hi
        hi *= 2.0
        sol_hi = probe(hi)
        doublings += 1
    if sol_hi.rate > budget:
        raise InfeasibleBudgetError(budget, floor)

    best_lam, best = hi, sol_hi
    iterations = 0
    while (
        abs(best.rate - budget) > tol
        and iterations < max_iter
        and (hi - lo) > 1e-12 * max(1.0, hi)
    ):
        mid = 0.5 * (lo + hi)
        sol_mid = probe(mid)
        if sol_mid.rate <= budget:
            hi, best_lam, best = mid, mid, sol_mid
        else:
            lo = mid
        iterations += 1
    return BisectionResult(best_lam, best, trace)


def sweep_lambda(
    problem: Problem, lambdas: Sequence[float], mode: str = "dp"
) -> list[tuple[float, float, float]]:
    """Totals (lambda, rate, distortion) per multiplier, sorted by lambda."""
    rows = []
    for lam in sorted(lambdas):
        sol = solve_problem(problem, lam, mode)
        rows.append((float(lam), sol.rate, sol.distortion))
    return rows
