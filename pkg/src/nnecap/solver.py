"""Exact solvers: maximum independent set, maximal cliques, and the fractional
clique-cover LP in rational arithmetic."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from . import kernels
from .errors import BudgetExceeded, CapacityError, ParameterError
from .graph import ConfusionGraph

Rational = Fraction

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_CLIQUE_BUDGET = 10**6


@dataclass(frozen=True)
class MISResult:
    size: int
    witness: tuple[int, ...]
    nodes: int


def max_independent_set(g: ConfusionGraph, budget: int = DEFAULT_NODE_BUDGET,
                        backend=None, initial=()) -> MISResult:
    """Exact alpha(g) by branch and bound.

    ``initial`` is an optional independent set that seeds the incumbent.
    Raises ``BudgetExceeded`` (with the best set found) if the node budget runs out.
    """
    initial = sorted(set(initial))
    if any(not 0 <= v < g.vertex_count for v in initial) or not g.is_independent(initial):
        raise ParameterError("initial set is not an independent set of the graph")
    size, members, nodes, complete = kernels.max_independent_set_words(
        g.words, g.vertex_count, budget, backend=backend, initial=initial
    )
    if not complete:
        raise BudgetExceeded(
            f"node budget {budget} exhausted; best independent set so far has {size} vertices",
            best_size=size, witness=members, nodes=nodes,
        )
    return MISResult(size, tuple(members), nodes)


def maximal_cliques(g: ConfusionGraph, budget: int = DEFAULT_CLIQUE_BUDGET) -> list[tuple[int, ...]]:
    """Every inclusion-maximal clique once, as sorted tuples in lexicographic order.

    Bron-Kerbosch with Tomita pivoting on Python-int bitsets.
    """
    masks = g.masks
    out: list[tuple[int, ...]] = []

    def expand(R: list[int], P: int, X: int) -> None:
        if not P and not X:
            if len(out) >= budget:
                raise CapacityError(f"more than {budget} maximal cliques")
            out.append(tuple(sorted(R)))
            return
        PX = P | X
        pivot, best = -1, -1
        while PX:
            u = (PX & -PX).bit_length() - 1
            PX &= PX - 1
            c = (P & masks[u]).bit_count()
            if c > best:
                pivot, best = u, c
        cand = P & ~masks[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            bit = 1 << v
            R.append(v)
            expand(R, P & masks[v], X & masks[v])
            R.pop()
            P &= ~bit
            X |= bit

    if g.vertex_count:
        expand([], (1 << g.vertex_count) - 1, 0)
    out.sort()
    return out


@dataclass
class LpProblem:
    """min sum q(C) s.t. every vertex is covered with weight >= 1, q >= 0."""

    vertex_count: int
    cliques: list[tuple[int, ...]]
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.cliques = [tuple(sorted(c)) for c in self.cliques]
        self._index = {}
        for i, c in enumerate(self.cliques):
            self._index.setdefault(c, i)
        covered = set()
        for c in self.cliques:
            covered.update(c)
        missing = set(range(self.vertex_count)) - covered
        if missing:
            raise ParameterError(f"vertices {sorted(missing)[:5]} are in no clique")

    @classmethod
    def from_graph(cls, g: ConfusionGraph, cliques=None, budget: int = DEFAULT_CLIQUE_BUDGET):
        """Problem over ``cliques`` (default: the maximal cliques of ``g``), each checked."""
        if cliques is None:
            cliques = maximal_cliques(g, budget)
        for c in cliques:
            if not g.is_clique(c):
                raise ParameterError(f"{tuple(c)} is not a clique")
        return cls(g.vertex_count, list(cliques))

    def key(self, clique) -> tuple[int, ...]:
        k = tuple(sorted(clique))
        if k not in self._index:
            raise ParameterError(f"unknown clique {k}")
        return k

    def objective(self, assignment: Mapping) -> Fraction:
        return sum((Fraction(v) for v in assignment.values()), Fraction(0))


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    assignment: dict  # clique tuple -> Fraction, only nonzero entries
    vertex_weights: tuple[Fraction, ...]  # optimal packing (dual) certificate
    pivots: int


def verify_feasible(p: LpProblem, assignment: Mapping) -> bool:
    """Exact check of q >= 0 and per-vertex coverage >= 1."""
    cover = [Fraction(0)] * p.vertex_count
    for clique, w in assignment.items():
        k = p.key(clique)
        w = Fraction(w)
        if w < 0:
            return False
        for v in k:
            cover[v] += w
    return all(c >= 1 for c in cover)


def verify_packing(p: LpProblem, weights) -> bool:
    """Exact check that vertex weights are >= 0 and sum to <= 1 on every clique."""
    ws = [Fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        return False
    return all(sum((ws[v] for v in c), Fraction(0)) <= 1 for c in p.cliques)


def solve_clique_cover_lp(p: LpProblem, method: str = "auto") -> LpSolution:
    """Optimal fractional clique cover, exact.

    Both methods work on the packing dual
    ``max sum y_v  s.t.  sum_{v in C} y_v <= 1,  y >= 0``, whose slack basis is
    feasible from the start. ``"exact"`` runs Bland's rule in rational
    arithmetic. ``"auto"`` first runs a float simplex, rounds both solutions to
    rationals and accepts them only if they are exactly feasible with equal
    objectives (a duality certificate); otherwise it falls back to ``"exact"``.
    """
    if method not in ("auto", "exact"):
        raise ParameterError(f"unknown LP method {method!r}")
    if p.vertex_count == 0:
        return LpSolution(Fraction(0), {}, (), 0)
    if method == "auto":
        sol = _certified_float_lp(p)
        if sol is not None:
            return sol
    return _exact_simplex(p)


def _float_simplex(p: LpProblem):
    """Dense float tableau; Dantzig entering rule, Bland after degenerate stalls."""
    m, nv = len(p.cliques), p.vertex_count
    tab = np.zeros((m, nv + m + 1))
    for i, c in enumerate(p.cliques):
        tab[i, list(c)] = 1.0
        tab[i, nv + i] = 1.0
    tab[:, -1] = 1.0
    red = np.concatenate([np.ones(nv), np.zeros(m)])
    basis = np.arange(nv, nv + m)
    eps = 1e-9
    pivots, stall, limit = 0, 0, 50 * (m + nv) + 1000
    while pivots < limit:
        cand = np.flatnonzero(red > eps)
        if cand.size == 0:
            break
        enter = int(cand[0]) if stall > 20 else int(cand[np.argmax(red[cand])])
        col = tab[:, enter]
        rows = np.flatnonzero(col > eps)
        if rows.size == 0:  # pragma: no cover - packing LP is bounded
            return None
        ratios = tab[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + eps]
        leave = int(ties[np.argmin(basis[ties])])
        stall = stall + 1 if best <= eps else 0
        tab[leave] /= tab[leave, enter]
        f = tab[:, enter].copy()
        f[leave] = 0.0
        tab -= np.outer(f, tab[leave])
        red = red - red[enter] * tab[leave, :-1]
        basis[leave] = enter
        pivots += 1
    else:
        return None
    y = np.zeros(nv)
    inb = basis < nv
    y[basis[inb]] = tab[inb, -1]
    return y, -red[nv:], pivots


def _rationalize(xs, bound: int) -> list[Fraction]:
    return [Fraction(max(float(x), 0.0)).limit_denominator(bound) for x in xs]


def _certified_float_lp(p: LpProblem) -> LpSolution | None:
    found = _float_simplex(p)
    if found is None:
        return None
    yf, qf, pivots = found
    for bound in (10**2, 10**4, 10**6, 10**8):
        y = _rationalize(yf, bound)
        q = _rationalize(qf, bound)
        assignment = {}
        for c, w in zip(p.cliques, q):
            if w:
                assignment[c] = assignment.get(c, Fraction(0)) + w
        value = sum(y, Fraction(0))
        if (p.objective(assignment) == value and verify_packing(p, y)
                and verify_feasible(p, assignment)):
            return LpSolution(value, assignment, tuple(y), pivots)
    return None


def _exact_simplex(p: LpProblem) -> LpSolution:
    m, nv = len(p.cliques), p.vertex_count
    width = nv + m
    zero, one = Fraction(0), Fraction(1)
    rows = []
    for i, c in enumerate(p.cliques):
        row = [zero] * width
        for v in c:
            row[v] = one
        row[nv + i] = one
        rows.append(row)
    rhs = [one] * m
    basis = [nv + i for i in range(m)]
    # reduced profits c_j - z_j; maximize
    red = [one] * nv + [zero] * m
    value = zero
    pivots = 0
    while True:
        enter = next((j for j in range(width) if red[j] > 0), None)  # Bland
        if enter is None:
            break
        leave, best_ratio = None, None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leave])):
                    leave, best_ratio = i, ratio
        if leave is None:  # pragma: no cover - packing LP is bounded
            raise RuntimeError("packing LP unbounded")
        piv_row = rows[leave]
        a = piv_row[enter]
        if a != 1:
            piv_row = [x / a for x in piv_row]
            rows[leave] = piv_row
            rhs[leave] /= a
        nz = [j for j in range(width) if piv_row[j]]
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                r = rows[i]
                for j in nz:
                    r[j] -= f * piv_row[j]
                rhs[i] -= f * rhs[leave]
        f = red[enter]
        for j in nz:
            red[j] -= f * piv_row[j]
        value += f * rhs[leave]
        basis[leave] = enter
        pivots += 1

    y = [zero] * nv
    for i, b in enumerate(basis):
        if b < nv:
            y[b] = rhs[i]
    assignment = {}
    for i, c in enumerate(p.cliques):
        w = -red[nv + i]
        if w:
            assignment[c] = assignment.get(c, zero) + w
    if sum(y, zero) != value or p.objective(assignment) != value:
        raise ArithmeticError("simplex duality check failed")
    if not verify_feasible(p, assignment) or not verify_packing(p, y):
        raise ArithmeticError("simplex returned an infeasible certificate")
    return LpSolution(value, assignment, tuple(y), pivots)


def fractional_clique_cover_number(g: ConfusionGraph, budget: int = DEFAULT_CLIQUE_BUDGET) -> LpSolution:
    return solve_clique_cover_lp(LpProblem.from_graph(g, budget=budget))
