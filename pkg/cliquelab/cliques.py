"""
Enumeration of the t-cliques C_t(G), per-vertex clique incidence and the
exact clique number.

Cliques are grown by ordered-vertex extension: a partial clique is only
extended by common neighbors larger than its current maximum vertex. With
roots visited in increasing order the cliques come out in lexicographic
order and every clique is produced exactly once.
"""
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .graph import Graph
from .log import logger
from .utils import get_num_workers, ordered_map

__all__ = [
    "BudgetExceededError",
    "CliqueSet",
    "DEFAULT_BUDGET",
    "clique_number",
    "count_cliques",
    "enumerate_cliques",
    "is_kr1_free",
    "iter_cliques",
    "maximum_clique",
]

DEFAULT_BUDGET = 10 ** 8  # node expansions allowed in the maximum clique search
PARALLEL_MIN_VERTICES = 64  # below this, enumeration runs on a single thread


class BudgetExceededError(RuntimeError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(
            "maximum clique search exceeded its budget of {} node expansions".format(budget)
        )


@dataclass
class CliqueSet:
    """The family C_t(G) of a graph

    Attributes:
        t (int): clique order
        n (int): number of vertices of the source graph
        cliques (list[tuple[int]]): strictly increasing vertex tuples, lexicographic order
        per_vertex_count (numpy.ndarray): entry i = number of t-cliques containing i
        graph (Graph): the source graph
    """

    t: int
    n: int
    cliques: List[Tuple[int, ...]]
    per_vertex_count: np.ndarray
    graph: Optional[Graph] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self._array = None

    @property
    def count(self):
        return len(self.cliques)

    @property
    def array(self):
        """Cliques as an int array of shape (count, t)"""
        if self._array is None:
            self._array = np.array(self.cliques, dtype=np.intp).reshape(self.count, self.t)
        return self._array

    @property
    def covered(self):
        """Sorted vertices that lie in at least one t-clique"""
        return np.flatnonzero(self.per_vertex_count)

    def subset(self, indices):
        """CliqueSet restricted to the cliques at the given positions"""
        cliques = [self.cliques[i] for i in sorted(set(indices))]
        return _build_clique_set(self.t, self.n, cliques, self.graph)

    def to_dict(self, include_cliques=True):
        out = {
            "t": self.t,
            "count": self.count,
            "per_vertex": [int(c) for c in self.per_vertex_count],
        }
        if include_cliques:
            out["cliques"] = [list(c) for c in self.cliques]
        return out


def _build_clique_set(t, n, cliques, graph=None):
    per_vertex = np.zeros(n, dtype=np.int64)
    for clique in cliques:
        for v in clique:
            per_vertex[v] += 1
    return CliqueSet(t=t, n=n, cliques=cliques, per_vertex_count=per_vertex, graph=graph)


def _forward_neighbors(g):
    return [frozenset(u for u in g.neighbors(v) if u > v) for v in range(g.n)]


def _extend(clique, candidates, forward, t):
    if len(clique) == t:
        yield tuple(clique)
        return
    needed = t - len(clique)
    for idx, u in enumerate(candidates):
        if len(candidates) - idx < needed:
            return
        # candidates stay sorted, so the output stays lexicographic
        nxt = [w for w in candidates[idx + 1:] if w in forward[u]]
        clique.append(u)
        yield from _extend(clique, nxt, forward, t)
        clique.pop()


def _iter_from_root(g, t, forward, root):
    candidates = sorted(forward[root])
    yield from _extend([root], candidates, forward, t)


def iter_cliques(g: Graph, t: int) -> Iterator[Tuple[int, ...]]:
    """Lazily yields the t-cliques of `g` in lexicographic order"""
    if t < 1:
        raise ValueError("clique order t must be >= 1, got %s" % t)
    if t > g.n:
        return
    forward = _forward_neighbors(g)
    for root in range(g.n):
        yield from _iter_from_root(g, t, forward, root)


def enumerate_cliques(g: Graph, t: int, workers=None) -> CliqueSet:
    """Lists C_t(G) with per-vertex incidence counts

    t = 1 gives the vertex set; t > n gives the empty family.

    Args:
        g (Graph): input graph
        t (int): clique order, >= 1
        workers (int): optional worker count for the per-root fan-out

    Returns:
        CliqueSet
    """
    if t < 1:
        raise ValueError("clique order t must be >= 1, got %s" % t)
    if t > g.n:
        return _build_clique_set(t, g.n, [], g)

    if workers is None:
        workers = get_num_workers()
    forward = _forward_neighbors(g)
    if workers > 1 and g.n >= PARALLEL_MIN_VERTICES:
        # per-root lists concatenated in root order are already lexicographic
        per_root = ordered_map(
            lambda root: list(_iter_from_root(g, t, forward, root)), range(g.n), workers
        )
        cliques = [c for chunk in per_root for c in chunk]
    else:
        cliques = [c for root in range(g.n) for c in _iter_from_root(g, t, forward, root)]
    logger.debug("Found %s %s-cliques in %s", len(cliques), t, g)
    return _build_clique_set(t, g.n, cliques, g)


def count_cliques(g: Graph, t: int) -> int:
    """|C_t(G)| without keeping the clique list"""
    return sum(1 for _ in iter_cliques(g, t))


def is_kr1_free(g: Graph, r: int) -> bool:
    """True iff g contains no clique on r + 1 vertices"""
    if r < 1:
        raise ValueError("r must be >= 1, got %s" % r)
    return next(iter_cliques(g, r + 1), None) is None


def _color_sort(candidates, adj):
    """Greedy coloring of the candidates; returns vertices ordered by color and their colors"""
    classes = []
    for v in candidates:
        for cls in classes:
            if not any(u in adj[v] for u in cls):
                cls.append(v)
                break
        else:
            classes.append([v])
    order, colors = [], []
    for color, cls in enumerate(classes, start=1):
        order.extend(cls)
        colors.extend([color] * len(cls))
    return order, colors


def maximum_clique(g: Graph, budget: int = DEFAULT_BUDGET) -> Tuple[int, ...]:
    """Finds one maximum clique by branch and bound with greedy-coloring bounds

    Args:
        g (Graph): input graph
        budget (int): node expansions allowed before giving up

    Returns:
        tuple[int]: sorted vertices of a maximum clique (empty when n = 0)

    Raises:
        BudgetExceededError: if the search needs more than `budget` expansions
    """
    if g.n == 0:
        return ()
    adj = [frozenset(g.neighbors(v)) for v in range(g.n)]
    best = [(0,)]
    expansions = [0]

    def expand(clique, candidates):
        order, colors = _color_sort(candidates, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + colors[i] <= len(best[0]):
                return
            expansions[0] += 1
            if expansions[0] > budget:
                raise BudgetExceededError(budget)
            v = order[i]
            clique.append(v)
            nxt = [u for u in order[:i] if u in adj[v]]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best[0]):
                best[0] = tuple(clique)
            clique.pop()

    by_degree = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    expand([], by_degree)
    logger.debug(
        "Maximum clique of size %s in %s after %s expansions", len(best[0]), g, expansions[0]
    )
    return tuple(sorted(best[0]))


def clique_number(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Exact clique number; 0 for the empty graph on no vertices"""
    return len(maximum_clique(g, budget=budget))
