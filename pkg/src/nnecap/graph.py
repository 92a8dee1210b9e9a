"""NNE channels, their confusion graphs, strong powers and DIMACS I/O."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from . import kernels
from .core import Symbol, l1_distance
from .errors import CapacityError, ParameterError

DEFAULT_VERTEX_CAP = 100_000


@dataclass(frozen=True)
class ChannelModel:
    """Support of the (d, n)-NNE channel: ``y`` is reachable from ``x`` iff L1(x, y) <= 1.

    Transition probabilities are never stored; zero-error analysis only needs
    the support.
    """

    d: int
    n: int

    def __post_init__(self):
        if self.d < 1 or self.n < 1:
            raise ParameterError(f"need d >= 1 and n >= 1, got d={self.d}, n={self.n}")

    def symbols(self) -> Iterator[Symbol]:
        for coords in itertools.product(range(self.n), repeat=self.d):
            yield Symbol(coords, self.n)

    def transition(self, x, y) -> bool:
        return l1_distance(x, y) <= 1

    def outputs(self, x) -> list[Symbol]:
        """Closed L1 ball of radius 1 around ``x``, clipped to the box, sorted."""
        x = tuple(x)
        out = [x]
        for i in range(self.d):
            for step in (-1, 1):
                c = x[i] + step
                if 0 <= c < self.n:
                    out.append(x[:i] + (c,) + x[i + 1:])
        return sorted(Symbol(y, self.n) for y in out)

    def coords(self) -> np.ndarray:
        return np.array(list(itertools.product(range(self.n), repeat=self.d)), dtype=np.int64).reshape(
            self.n**self.d, self.d
        )


def build_channel(d: int, n: int) -> ChannelModel:
    return ChannelModel(d, n)


@dataclass(frozen=True, eq=False)
class ConfusionGraph:
    """Undirected simple graph with bitset adjacency rows.

    ``labels[i]`` is the coordinate tuple of vertex ``i`` (a tuple of such
    tuples for strong powers). ``d`` and ``n`` are ``None`` for graphs that are
    not derived from a NNE channel.
    """

    words: np.ndarray
    labels: tuple
    d: int | None = None
    n: int | None = None
    power: int = 1

    def __post_init__(self):
        self.words.setflags(write=False)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @cached_property
    def masks(self) -> list[int]:
        """Adjacency rows as Python-int bitsets."""
        return [kernels.words_to_int(row) for row in self.words]

    @cached_property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    def adjacency_matrix(self) -> np.ndarray:
        return kernels.unpack_rows(self.words, self.vertex_count)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.masks[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        m = self.masks[i]
        return [j for j in range(self.vertex_count) if m >> j & 1]

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(i, j)`` with ``i < j``, lexicographically sorted."""
        out = []
        for i, m in enumerate(self.masks):
            m >>= i + 1
            j = i + 1
            while m:
                if m & 1:
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def is_independent(self, vertices) -> bool:
        vs = list(vertices)
        return all(not self.adjacent(a, b) for a, b in itertools.combinations(vs, 2))

    def is_clique(self, vertices) -> bool:
        vs = list(vertices)
        return all(self.adjacent(a, b) for a, b in itertools.combinations(vs, 2))

    def index_of(self, label) -> int:
        return self._label_index[_as_label(label)]

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_edges(cls, vertex_count: int, edges, labels=None) -> "ConfusionGraph":
        bits = np.zeros((vertex_count, vertex_count), dtype=bool)
        for i, j in edges:
            if i == j:
                raise ParameterError(f"self-loop at vertex {i}")
            if not (0 <= i < vertex_count and 0 <= j < vertex_count):
                raise ParameterError(f"edge ({i}, {j}) out of range")
            bits[i, j] = bits[j, i] = True
        if labels is None:
            labels = tuple(range(vertex_count))
        return cls(kernels.pack_rows(bits), tuple(labels))


def _as_label(label):
    if isinstance(label, Symbol):
        return label.coords
    if isinstance(label, tuple):
        return tuple(_as_label(x) if isinstance(x, (tuple, Symbol)) else x for x in label)
    return label


def confusion_graph_by_definition(channel: ChannelModel) -> ConfusionGraph:
    """Confusion graph straight from the definition: x ~ y iff they share a reachable output."""
    syms = list(channel.symbols())
    out_sets = [{y.index() for y in channel.outputs(x)} for x in syms]
    children: dict[int, list[int]] = {}
    for i, outs in enumerate(out_sets):
        for y in outs:
            children.setdefault(y, []).append(i)
    edges = set()
    for holders in children.values():
        for a, b in itertools.combinations(sorted(holders), 2):
            edges.add((a, b))
    g = ConfusionGraph.from_edges(len(syms), sorted(edges), [s.coords for s in syms])
    return ConfusionGraph(g.words, g.labels, channel.d, channel.n, 1)


def build_confusion_graph(channel: ChannelModel, vertex_cap: int = DEFAULT_VERTEX_CAP,
                          backend=None) -> ConfusionGraph:
    """Graph on ``[0, n-1]^d`` with edges between distinct symbols at L1 distance <= 2.

    Two symbols share a reachable output exactly when their L1 distance is at
    most 2, so the edge test is done on distances directly.
    """
    count = channel.n**channel.d
    if count > vertex_cap:
        raise CapacityError(f"{count} vertices exceeds the cap of {vertex_cap}")
    coords = channel.coords()
    words = kernels.l1_adjacency(coords, 2, backend=backend)
    labels = tuple(tuple(int(c) for c in row) for row in coords)
    return ConfusionGraph(words, labels, channel.d, channel.n, 1)


def nne_graph(d: int, n: int, **kw) -> ConfusionGraph:
    return build_confusion_graph(build_channel(d, n), **kw)


def strong_product(g: ConfusionGraph, h: ConfusionGraph, vertex_cap: int = DEFAULT_VERTEX_CAP,
                   backend=None) -> ConfusionGraph:
    """``g x h``; vertex ``(a, b)`` gets index ``a * |h| + b``."""
    count = g.vertex_count * h.vertex_count
    if count > vertex_cap:
        raise CapacityError(f"product has {count} vertices, cap is {vertex_cap}")
    words = kernels.strong_product_words(g.words, g.vertex_count, h.words, h.vertex_count,
                                         backend=backend)
    labels = tuple((a, b) for a in g.labels for b in h.labels)
    return ConfusionGraph(words, labels)


def graph_power(g: ConfusionGraph, k: int, vertex_cap: int = DEFAULT_VERTEX_CAP,
                backend=None) -> ConfusionGraph:
    """Left-associated k-fold strong product. Labels are flat k-tuples of base labels."""
    if k < 1:
        raise ParameterError(f"power must be positive, got {k}")
    if k == 1:
        return g
    if g.vertex_count**k > vertex_cap:
        raise CapacityError(f"power has {g.vertex_count ** k} vertices, cap is {vertex_cap}")
    acc = g
    for _ in range(k - 1):
        acc = strong_product(acc, g, vertex_cap=vertex_cap, backend=backend)
    labels = tuple(itertools.product(g.labels, repeat=k))
    return ConfusionGraph(acc.words, labels, g.d, g.n, g.power * k)


def export_dimacs(g: ConfusionGraph) -> str:
    lines = [f"p edge {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {i + 1} {j + 1}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> ConfusionGraph:
    """Parse a DIMACS ``edge`` file (comments ``c`` allowed, 1-based vertices)."""
    vertex_count = None
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParameterError(f"line {lineno}: bad problem line {raw!r}")
            vertex_count, declared = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if vertex_count is None:
                raise ParameterError(f"line {lineno}: edge before problem line")
            i, j = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((min(i, j), max(i, j)))
        else:
            raise ParameterError(f"line {lineno}: unknown line {raw!r}")
    if vertex_count is None:
        raise ParameterError("missing problem line")
    g = ConfusionGraph.from_edges(vertex_count, edges)
    if g.edge_count != declared:
        raise ParameterError(f"header declares {declared} edges, found {g.edge_count}")
    return g


def export_json(g: ConfusionGraph) -> dict:
    return {
        "d": g.d,
        "n": g.n,
        "power": g.power,
        "vertex_count": g.vertex_count,
        "edge_count": g.edge_count,
        "labels": [_jsonable(lab) for lab in g.labels],
        "adjacency": [g.neighbors(i) for i in range(g.vertex_count)],
    }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x
