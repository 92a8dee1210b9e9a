"""Certified bracket on the Shannon capacity of NNE confusion graphs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Symbol
from .errors import BudgetExceeded, ParameterError
from .graph import ConfusionGraph, build_channel, graph_power, nne_graph
from .lee import lower_bound_set
from .solver import (DEFAULT_NODE_BUDGET, LpProblem, max_independent_set, solve_clique_cover_lp)


def _check(d: int, n: int, min_n: int = 1) -> None:
    if d < 1 or n < min_n:
        raise ParameterError(f"need d >= 1 and n >= {min_n}, got d={d}, n={n}")


def lower_bound_closed(d: int, n: int) -> int:
    """ceil(n^d / (2d+1))."""
    _check(d, n)
    return -(-(n**d) // (2 * d + 1))


def upper_bound_closed(d: int, n: int) -> Fraction:
    """Objective of the inner/outer adjacency-clique cover: (n-2)^d/(2d+1) + n^d - (n-2)^d."""
    _check(d, n, 2)
    inner = (n - 2) ** d
    return Fraction(inner, 2 * d + 1) + (n**d - inner)


def asymptotic_gap(d: int, n: int) -> Fraction:
    """upper_bound_closed / n^d - 1/(2d+1); shrinks like 1/n."""
    _check(d, n, 2)
    return upper_bound_closed(d, n) / n**d - Fraction(1, 2 * d + 1)


@dataclass(frozen=True)
class VertexClass:
    vertex: Symbol
    nu: int
    is_inner: bool


def classify_vertex(x: Symbol) -> VertexClass:
    nu = sum(1 for c in x if c in (0, x.n - 1))
    return VertexClass(x, nu, nu == 0)


def adjacency_clique(x: Symbol) -> list[Symbol]:
    """Closed L1 ball of radius 1 around ``x`` inside the box."""
    return build_channel(x.d, x.n).outputs(x)


def lemma5_cliques(g: ConfusionGraph) -> list[tuple[tuple[int, ...], Fraction]]:
    """Per-vertex adjacency cliques with weight 1/(2d+1) (inner) or 1 (outer)."""
    if g.d is None or g.power != 1:
        raise ParameterError("need the confusion graph of a NNE channel")
    d, n = g.d, g.n
    _check(d, n, 2)
    inner_w = Fraction(1, 2 * d + 1)
    out = []
    for i, lab in enumerate(g.labels):
        x = Symbol(lab, n)
        clique = tuple(sorted(g.index_of(y) for y in adjacency_clique(x)))
        out.append((clique, inner_w if classify_vertex(x).is_inner else Fraction(1)))
    return out


def lemma5_assignment(g: ConfusionGraph) -> dict[tuple[int, ...], Fraction]:
    """Feasible clique cover from adjacency cliques.

    Weights of vertices whose balls coincide as sets (only d = 1, n = 2) add up.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for clique, w in lemma5_cliques(g):
        out[clique] = out.get(clique, Fraction(0)) + w
    return out


def lemma5_problem(g: ConfusionGraph) -> LpProblem:
    """LP restricted to the adjacency cliques, each verified to be a clique of ``g``."""
    return LpProblem.from_graph(g, cliques=sorted({c for c, _ in lemma5_cliques(g)}))


def _fraction_json(x: Fraction | None):
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator}


@dataclass
class BoundReport:
    """Bracket on Theta(G_W) for the (d, n)-NNE channel.

    ``alpha_power`` holds ``(k, alpha(G^k))``; the k-th root is only ever
    compared through integer powers.
    """

    d: int
    n: int
    lower_closed: int
    upper_closed: Fraction
    lower_witness_size: int | None = None
    alpha_exact: int | None = None
    alpha_power: list[tuple[int, int]] = field(default_factory=list)
    lp_exact: Fraction | None = None
    partial: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def best_lower_log2(self) -> float:
        cands = [math.log2(self.lower_closed)]
        if self.lower_witness_size:
            cands.append(math.log2(self.lower_witness_size))
        if self.alpha_exact is not None:
            cands.append(math.log2(self.alpha_exact))
        cands.extend(math.log2(a) / k for k, a in self.alpha_power if a > 0)
        return max(cands)

    @property
    def capacity_lo(self) -> float:
        return self.best_lower_log2

    @property
    def capacity_hi(self) -> float:
        u = self.upper_closed
        if self.lp_exact is not None:
            u = min(u, self.lp_exact)
        return math.log2(u)

    def chain_violations(self) -> list[str]:
        """Exact checks lower <= alpha <= alpha* <= alpha' and alpha(G^k) <= alpha*^k."""
        bad = []
        lo, up = Fraction(self.lower_closed), self.upper_closed
        if self.lower_witness_size is not None and self.lower_witness_size < self.lower_closed:
            bad.append("witness smaller than closed lower bound")
        if self.alpha_exact is not None:
            if not lo <= self.alpha_exact:
                bad.append("lower_closed > alpha")
            if not self.alpha_exact <= up:
                bad.append("alpha > upper_closed")
        top = up
        if self.lp_exact is not None:
            top = self.lp_exact
            if not self.lp_exact <= up:
                bad.append("lp > upper_closed")
            if self.alpha_exact is not None and not self.alpha_exact <= self.lp_exact:
                bad.append("alpha > lp")
            if not lo <= self.lp_exact:
                bad.append("lower_closed > lp")
        for k, a in self.alpha_power:
            if not a <= top**k:
                bad.append(f"alpha(G^{k}) exceeds upper bound to the power {k}")
        return bad

    def chain_holds(self) -> bool:
        return not self.chain_violations()

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "lower_closed": self.lower_closed,
            "lower_witness_size": self.lower_witness_size,
            "alpha_exact": self.alpha_exact,
            "alpha_power": [[k, a] for k, a in self.alpha_power],
            "lp_exact": _fraction_json(self.lp_exact),
            "upper_closed": _fraction_json(self.upper_closed),
            "capacity_lo_bits": round(self.capacity_lo, 6),
            "capacity_hi_bits": round(self.capacity_hi, 6),
            "partial": self.partial,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "BoundReport":
        def frac(o):
            return None if o is None else Fraction(o["num"], o["den"])

        return cls(
            d=obj["d"], n=obj["n"], lower_closed=obj["lower_closed"],
            upper_closed=frac(obj["upper_closed"]),
            lower_witness_size=obj.get("lower_witness_size"),
            alpha_exact=obj.get("alpha_exact"),
            alpha_power=[tuple(x) for x in obj.get("alpha_power", [])],
            lp_exact=frac(obj.get("lp_exact")),
            partial=obj.get("partial", False),
            notes=list(obj.get("notes", [])),
        )

    CSV_COLUMNS = ("d", "n", "lower_closed", "alpha_exact", "lp_exact_num", "lp_exact_den",
                   "upper_num", "upper_den", "capacity_lo_bits", "capacity_hi_bits")

    def csv_row(self) -> list[str]:
        def opt(x):
            return "" if x is None else str(x)

        lp = self.lp_exact
        return [
            str(self.d), str(self.n), str(self.lower_closed), opt(self.alpha_exact),
            opt(lp.numerator if lp is not None else None),
            opt(lp.denominator if lp is not None else None),
            str(self.upper_closed.numerator), str(self.upper_closed.denominator),
            f"{self.capacity_lo:.6f}", f"{self.capacity_hi:.6f}",
        ]

    @classmethod
    def from_csv_row(cls, row: dict) -> "BoundReport":
        def opt_int(s):
            return None if s in ("", None) else int(s)

        lp = None
        if row.get("lp_exact_num"):
            lp = Fraction(int(row["lp_exact_num"]), int(row["lp_exact_den"]))
        return cls(
            d=int(row["d"]), n=int(row["n"]), lower_closed=int(row["lower_closed"]),
            upper_closed=Fraction(int(row["upper_num"]), int(row["upper_den"])),
            alpha_exact=opt_int(row.get("alpha_exact")), lp_exact=lp,
        )


def product_set(members, vertex_count: int, k: int) -> list[int]:
    """k-fold product of an independent set, as vertex indices of the strong power.

    Independent in G^k whenever ``members`` is independent in G.
    """
    out = [0]
    for _ in range(k):
        out = [i * vertex_count + v for i in out for v in members]
    return out if members else []


def capacity_bracket(d: int, n: int, *, exact_alpha: bool = True, exact_lp: bool = True,
                     powers=(), witness: bool = True, node_budget: int = DEFAULT_NODE_BUDGET,
                     backend=None) -> BoundReport:
    """Build a ``BoundReport``.

    ``powers`` lists extra exponents k >= 2 for which alpha(G^k) is computed.
    A budget overrun leaves the affected field at its best-known lower value (for
    alpha) or unset, and marks the report partial.
    """
    _check(d, n)
    if n == 1:
        return BoundReport(d, n, 1, Fraction(1), lower_witness_size=1, alpha_exact=1,
                           lp_exact=Fraction(1), notes=["single-level alphabet: Theta = 1"])
    report = BoundReport(d, n, lower_bound_closed(d, n), upper_bound_closed(d, n))
    if witness:
        ws = lower_bound_set(d, n)
        report.lower_witness_size = len(ws)
    needs_graph = exact_alpha or exact_lp or powers
    g = nne_graph(d, n, backend=backend) if needs_graph else None
    base = ()
    if needs_graph and witness:
        base = tuple(g.index_of(y) for y in ws.members_mapped)
    if exact_alpha:
        try:
            res = max_independent_set(g, node_budget, backend=backend, initial=base)
            report.alpha_exact, base = res.size, res.witness
        except BudgetExceeded as exc:
            report.partial = True
            base = tuple(exc.witness)
            report.notes.append(f"alpha: budget exhausted, alpha >= {exc.best_size}")
    if exact_lp:
        report.lp_exact = solve_clique_cover_lp(LpProblem.from_graph(g)).value
    for k in powers:
        if k < 2:
            continue
        gk = graph_power(g, k, backend=backend)
        try:
            res = max_independent_set(gk, node_budget, backend=backend,
                                      initial=product_set(base, g.vertex_count, k))
            report.alpha_power.append((k, res.size))
        except BudgetExceeded as exc:
            report.partial = True
            report.alpha_power.append((k, exc.best_size))
            report.notes.append(f"alpha(G^{k}) >= {exc.best_size} (budget exhausted)")
    return report
