"""
Simple undirected graphs and the deterministic generators for every graph
family the clique bounds are checked on.

Vertices are dense 0-based integers. Edges are stored once as sorted
pairs (u, v) with u < v, and each vertex keeps a sorted neighbor tuple.

Random graphs use numpy's PCG64 bit generator: for `erdos_renyi(n, p, seed)`
the pairs (u, v), u < v, are visited in lexicographic order and the pair
becomes an edge when `Generator(PCG64(seed)).random()` is below `p`.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

import networkx as nx
import numpy as np

from .log import logger

__all__ = [
    "Graph",
    "GraphSpec",
    "GraphParameterError",
    "FAMILIES",
    "generate",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "turan_graph",
    "multipartite_regular_graph",
    "unicyclic_girth3_graph",
    "erdos_renyi_graph",
    "petersen_graph",
]


class GraphParameterError(ValueError):
    pass


class Graph(object):
    """Immutable simple undirected graph on vertices 0..n-1

    Attributes:
        n (int): number of vertices
        edges (frozenset[tuple[int, int]]): unordered pairs, stored as (u, v) with u < v
        name (str): optional label
    """

    __slots__ = ("_n", "_edges", "_neighbors", "_name")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = (), name: Optional[str] = None):
        if n < 0:
            raise GraphParameterError("vertex count must be nonnegative, got %s" % n)
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphParameterError("self-loop at vertex %s" % u)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParameterError(
                    "edge ({}, {}) has an endpoint outside [0, {})".format(u, v, n)
                )
            normalized.add((u, v) if u < v else (v, u))

        neighbors = [[] for _ in range(n)]
        for u, v in normalized:
            neighbors[u].append(v)
            neighbors[v].append(u)
        self._n = n
        self._edges = frozenset(normalized)
        self._neighbors = tuple(tuple(sorted(nbrs)) for nbrs in neighbors)
        self._name = name

    @property
    def n(self):
        return self._n

    @property
    def edges(self):
        return self._edges

    @property
    def name(self):
        return self._name

    @property
    def edge_count(self):
        return len(self._edges)

    def neighbors(self, v):
        """Sorted tuple of the neighbors of `v`"""
        return self._neighbors[v]

    def degree(self, v):
        return len(self._neighbors[v])

    def has_edge(self, u, v):
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self._edges

    def edge_list(self):
        """Edges as a lexicographically sorted list of (u, v), u < v"""
        return sorted(self._edges)

    def adjacency_matrix(self, dtype=float):
        """Dense symmetric 0/1 adjacency matrix as a numpy array"""
        adj = np.zeros((self._n, self._n), dtype=dtype)
        for u, v in self._edges:
            adj[u, v] = 1
            adj[v, u] = 1
        return adj

    def relabel(self, perm):
        """Returns the graph with vertex v renamed to perm[v]"""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self._n)):
            raise GraphParameterError("relabeling must be a permutation of 0..n-1")
        return Graph(self._n, ((perm[u], perm[v]) for u, v in self._edges), name=self._name)

    def with_edge(self, u, v):
        """Returns a copy of the graph with the edge (u, v) added"""
        return Graph(self._n, itertools.chain(self._edges, [(u, v)]), name=self._name)

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_networkx(cls, nx_graph, name=None):
        """Builds a Graph from a networkx graph, relabeling nodes in sorted order"""
        nodes = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = ((index[u], index[v]) for u, v in nx_graph.edges())
        return cls(len(nodes), edges, name=name)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._n, self._edges) == (other._n, other._edges)

    def __hash__(self):
        return hash((self._n, self._edges))

    def __str__(self):
        return "{} {}: n={}, m={}".format(
            self.__class__.__name__, self._name or "", self._n, self.edge_count
        )

    def __repr__(self):
        return str(self)


def complete_graph(n):
    _check(n >= 0, "complete requires n >= 0")
    return Graph(n, itertools.combinations(range(n), 2), name="complete(%d)" % n)


def cycle_graph(n):
    _check(n >= 3, "cycle requires n >= 3")
    return Graph(n, ((v, (v + 1) % n) for v in range(n)), name="cycle(%d)" % n)


def path_graph(n):
    _check(n >= 1, "path requires n >= 1")
    return Graph(n, ((v, v + 1) for v in range(n - 1)), name="path(%d)" % n)


def _complete_multipartite(n, parts, name):
    # vertex v lives in part v % parts, so lower part indices get the larger parts
    edges = (
        (u, v) for u, v in itertools.combinations(range(n), 2) if u % parts != v % parts
    )
    return Graph(n, edges, name=name)


def turan_graph(n, r):
    """Turán graph T_r(n): complete r-partite, part sizes differ by at most 1"""
    _check(r >= 1, "turan requires r >= 1")
    _check(n >= r, "turan requires n >= r")
    return _complete_multipartite(n, r, "turan(%d,%d)" % (n, r))


def multipartite_regular_graph(omega, s):
    """Complete regular omega-partite graph with parts of exactly s vertices"""
    _check(omega >= 1, "multipartite_regular requires omega >= 1")
    _check(s >= 1, "multipartite_regular requires s >= 1")
    return _complete_multipartite(
        omega * s, omega, "multipartite_regular(%d,%d)" % (omega, s)
    )


def unicyclic_girth3_graph(n):
    """Triangle 0-1-2 with a path of n-3 extra vertices hanging off vertex 2"""
    _check(n >= 3, "unicyclic_girth3 requires n >= 3")
    edges = [(0, 1), (0, 2), (1, 2)]
    edges.extend((v - 1, v) for v in range(3, n))
    return Graph(n, edges, name="unicyclic_girth3(%d)" % n)


def erdos_renyi_graph(n, p, seed):
    """Seeded G(n, p); see the module docstring for the exact sampling order"""
    _check(n >= 0, "erdos_renyi requires n >= 0")
    if seed is None:
        raise GraphParameterError("erdos_renyi requires an explicit seed")
    p = Fraction(p).limit_denominator(10 ** 12) if isinstance(p, float) else Fraction(p)
    _check(0 <= p <= 1, "erdos_renyi requires 0 <= p <= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    threshold = float(p)
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if rng.random() < threshold
    ]
    return Graph(n, edges, name="erdos_renyi(%d,%s,%d)" % (n, p, seed))


def petersen_graph():
    return Graph.from_networkx(nx.petersen_graph(), name="petersen")


def _check(condition, message):
    if not condition:
        raise GraphParameterError(message)


FAMILIES = (
    "complete",
    "cycle",
    "path",
    "turan",
    "multipartite_regular",
    "unicyclic_girth3",
    "erdos_renyi",
    "petersen",
    "from_file",
)


@dataclass(frozen=True)
class GraphSpec:
    """Family name plus the integer parameters that pin down one graph

    `p` is kept as a Fraction so specs compare and hash exactly.
    """

    family: str
    n: Optional[int] = None
    r: Optional[int] = None
    omega: Optional[int] = None
    s: Optional[int] = None
    p: Optional[Fraction] = None
    seed: Optional[int] = None
    path: Optional[str] = None
    format: Optional[str] = None

    def validate(self):
        """Raises GraphParameterError naming the first violated constraint"""
        if self.family not in FAMILIES:
            raise GraphParameterError(
                "unknown family {!r}, choose from {}".format(self.family, ", ".join(FAMILIES))
            )
        required = {
            "complete": ("n",),
            "cycle": ("n",),
            "path": ("n",),
            "turan": ("n", "r"),
            "multipartite_regular": ("omega", "s"),
            "unicyclic_girth3": ("n",),
            "erdos_renyi": ("n", "p", "seed"),
            "petersen": (),
            "from_file": ("path",),
        }[self.family]
        for field in required:
            if getattr(self, field) is None:
                raise GraphParameterError(
                    "{} requires parameter {!r}".format(self.family, field)
                )


def generate(spec: GraphSpec) -> Graph:
    """Builds the graph described by `spec`

    Deterministic: equal specs (seed included) give identical edge sets.

    Raises:
        GraphParameterError: if a family constraint is violated
    """
    spec.validate()
    logger.debug("Generating graph from %s", spec)
    family = spec.family
    if family == "complete":
        return complete_graph(spec.n)
    elif family == "cycle":
        return cycle_graph(spec.n)
    elif family == "path":
        return path_graph(spec.n)
    elif family == "turan":
        return turan_graph(spec.n, spec.r)
    elif family == "multipartite_regular":
        return multipartite_regular_graph(spec.omega, spec.s)
    elif family == "unicyclic_girth3":
        return unicyclic_girth3_graph(spec.n)
    elif family == "erdos_renyi":
        return erdos_renyi_graph(spec.n, spec.p, spec.seed)
    elif family == "petersen":
        return petersen_graph()
    else:
        # Imported here: parsing depends on this module
        from .parsing import load_graph

        return load_graph(spec.path, spec.format)
