"""
Desk-scale probe of spectral stability: near-extremal K_{r+1}-free graphs
with large rho_t should be close to the Turan graph T_r(n) in edit distance.

The existential constants of the stability statement are not computed; the
sweep only records (rho_deficit, edit_density) pairs so the trend is visible.
"""
import itertools
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import spearmanr

from .bounds import sos_edge_lower_bound
from .cliques import enumerate_cliques
from .graph import Graph, turan_graph
from .log import logger
from .spectral import ConvergenceError, rho_power_iteration
from .utils import ordered_map

__all__ = [
    "EXACT_CUTOFF",
    "EditDistanceResult",
    "SWEEP_CSV_COLUMNS",
    "SweepConfig",
    "SweepRecord",
    "edit_distance_to_turan",
    "perturb_turan",
    "spearman_summary",
    "stability_sweep",
    "turan_part_sizes",
    "turan_rho",
    "write_gnuplot",
]

EXACT_CUTOFF = 13  # largest n handled by exhaustive partition search
LOCAL_RESTARTS = 32


@dataclass
class EditDistanceResult:
    """Edit distance from a graph to T_r(n)

    Attributes:
        distance (int): edges inside parts plus missing cross-part pairs
        partition (tuple[int]): part label of every vertex, Turán part sizes
        method (str): "exact" or "local_search"
        certified (bool): True iff the distance is the proven minimum
    """

    distance: int
    partition: Tuple[int, ...]
    method: str
    certified: bool

    def to_dict(self):
        return {
            "distance": self.distance,
            "partition": list(self.partition),
            "method": self.method,
            "certified": self.certified,
        }


def turan_part_sizes(n, r):
    """Part sizes of T_r(n), larger parts first"""
    q, extra = divmod(n, r)
    return [q + 1] * extra + [q] * (r - extra)


def turan_rho(n, r, t):
    """C(r-1, t-1) * (n / r)^(t-1): rho_t of T_r(n) when r divides n"""
    return comb(r - 1, t - 1) * (n / r) ** (t - 1)


def _cross_pairs(n, r):
    return comb(n, 2) - sum(comb(size, 2) for size in turan_part_sizes(n, r))


def _distance(within, n, r, m):
    # within-part edges are deleted; missing cross pairs = cross pairs - (m - within)
    return within + _cross_pairs(n, r) - (m - within)


def _exact_min_within(g, r):
    """Branch and bound over unordered partitions with Turán part sizes"""
    n = g.n
    adj_mask = [sum(1 << u for u in g.neighbors(v)) for v in range(n)]
    best = [math.inf, None]

    def inside(members):
        mask = sum(1 << v for v in members)
        return sum(bin(adj_mask[v] & mask).count("1") for v in members) // 2

    def search(unassigned, sizes, parts, within):
        if within >= best[0]:
            return
        if not unassigned:
            best[0], best[1] = within, list(parts)
            return
        # the smallest unassigned vertex opens the next part, so each
        # unordered partition is visited once
        v, rest = unassigned[0], unassigned[1:]
        for size in sorted(set(sizes), reverse=True):
            remaining_sizes = list(sizes)
            remaining_sizes.remove(size)
            for others in itertools.combinations(rest, size - 1):
                members = (v,) + others
                taken = set(others)
                parts.append(members)
                search(
                    [u for u in rest if u not in taken],
                    remaining_sizes,
                    parts,
                    within + inside(members),
                )
                parts.pop()

    search(list(range(n)), turan_part_sizes(n, r), [], 0)
    labels = [0] * n
    for label, members in enumerate(best[1]):
        for v in members:
            labels[v] = label
    return best[0], tuple(labels)


def _kernighan_lin(adj, labels, r, max_passes=50):
    """Improves a part assignment by Kernighan-Lin passes of vertex swaps

    Each pass swaps the best unlocked pair in different parts (gains may be
    negative), locks both, and finally keeps the best prefix of the pass.
    Returns the labels and their within-part edge count.
    """
    n = labels.size
    within = int(np.sum(adj[labels[:, None] == labels[None, :]])) // 2
    for _ in range(max_passes):
        counts = np.zeros((n, r), dtype=np.int64)
        for part in range(r):
            counts[:, part] = adj[:, labels == part].sum(axis=1)
        current = labels.copy()
        locked = np.zeros(n, dtype=bool)
        history = []
        cumulative = 0
        for _ in range(n // 2):
            own = counts[np.arange(n), current]
            into = counts[:, current]  # into[u, v] = neighbors of u in v's part
            delta = into - own[:, None] + into.T - own[None, :] - 2 * adj
            valid = (current[:, None] != current[None, :]) & ~locked[:, None] & ~locked[None, :]
            if not valid.any():
                break
            delta = np.where(valid, delta, np.iinfo(np.int64).max)
            u, v = np.unravel_index(int(np.argmin(delta)), delta.shape)
            cumulative += int(delta[u, v])
            a, b = current[u], current[v]
            counts[:, a] += adj[:, v] - adj[:, u]
            counts[:, b] += adj[:, u] - adj[:, v]
            current[u], current[v] = b, a
            locked[u] = locked[v] = True
            history.append((cumulative, current.copy()))
        if not history:
            break
        best_gain, best_labels = min(history, key=lambda item: item[0])
        if best_gain >= 0:
            break
        labels = best_labels
        within += best_gain
    return labels, within


def _greedy_labels(adj, r, sizes):
    """Each vertex joins the non-full part holding the fewest of its neighbors"""
    n = adj.shape[0]
    labels = np.full(n, -1, dtype=np.intp)
    fill = [0] * r
    for v in range(n):
        best = None
        for part in range(r):
            if fill[part] >= sizes[part]:
                continue
            score = int(adj[v, labels == part].sum())
            if best is None or score < best[0]:
                best = (score, part)
        labels[v] = best[1]
        fill[best[1]] += 1
    return labels


def _local_min_within(g, r, restarts, seed):
    adj = g.adjacency_matrix(dtype=np.int64)
    sizes = turan_part_sizes(g.n, r)
    base = np.repeat(np.arange(r), sizes)
    rng = np.random.Generator(np.random.PCG64(seed))
    starts = [_greedy_labels(adj, r, sizes)]
    starts.extend(rng.permutation(base) for _ in range(restarts - 1))
    runs = [_kernighan_lin(adj, start, r) for start in starts]
    labels, within = min(runs, key=lambda run: run[1])
    return within, tuple(int(label) for label in labels)


def edit_distance_to_turan(
    g: Graph, r: int, method=None, restarts=LOCAL_RESTARTS, seed=0
) -> EditDistanceResult:
    """Fewest edge additions plus deletions turning g into T_r(n)

    Parts are fixed to the Turán sizes. With Turán sizes the number of
    cross-part pairs is fixed, so the distance is 2 * within + cross - m
    and only the within-part edge count has to be minimized.

    Args:
        g (Graph): input graph
        r (int): number of parts, 1 <= r <= n
        method (str): "exact", "local_search", or None for exact when n <= EXACT_CUTOFF
        restarts (int): local search starts
        seed (int): seed of the local search starts

    Returns:
        EditDistanceResult
    """
    if r < 1 or r > g.n:
        raise ValueError("edit distance needs 1 <= r <= n, got r={}, n={}".format(r, g.n))
    if method is None:
        method = "exact" if g.n <= EXACT_CUTOFF else "local_search"
    if method == "exact":
        within, partition = _exact_min_within(g, r)
    elif method == "local_search":
        within, partition = _local_min_within(g, r, restarts, seed)
    else:
        raise ValueError("unknown edit distance method {!r}".format(method))
    distance = _distance(within, g.n, r, g.edge_count)
    logger.debug("Edit distance of %s to T_%s: %s (%s)", g, r, distance, method)
    return EditDistanceResult(
        distance=distance, partition=partition, method=method, certified=method == "exact"
    )


def perturb_turan(n, r, delete_fraction, seed) -> Graph:
    """T_r(n) with floor(delete_fraction * |E|) uniformly sampled edges removed"""
    if not 0 <= delete_fraction <= 1:
        raise ValueError("delete_fraction must lie in [0, 1], got %s" % delete_fraction)
    base = turan_graph(n, r)
    edges = base.edge_list()
    fraction = Fraction(delete_fraction).limit_denominator(10 ** 9)
    k = math.floor(fraction * len(edges))
    rng = np.random.Generator(np.random.PCG64(seed))
    removed = set(rng.choice(len(edges), size=k, replace=False).tolist())
    kept = [edge for idx, edge in enumerate(edges) if idx not in removed]
    return Graph(n, kept, name="perturb_turan(%d,%d,%s,%d)" % (n, r, delete_fraction, seed))


@dataclass
class SweepConfig:
    n: List[int]
    r: int
    t: int
    fractions: List[float]
    seeds: List[int]
    edit_method: Optional[str] = None

    def validate(self):
        if not self.r + 1 > self.t >= 2:
            raise ValueError(
                "sweep needs r + 1 > t >= 2, got r={}, t={}".format(self.r, self.t)
            )
        for n in self.n:
            if n < self.r:
                raise ValueError("sweep needs n >= r, got n={}, r={}".format(n, self.r))
        for fraction in self.fractions:
            if not 0 <= fraction <= 1:
                raise ValueError("fractions must lie in [0, 1], got %s" % fraction)

    @classmethod
    def from_json(cls, path):
        with open(path) as f:
            data = json.load(f)
        try:
            n = data["n"]
            config = cls(
                n=[n] if isinstance(n, int) else list(n),
                r=int(data["r"]),
                t=int(data["t"]),
                fractions=[float(x) for x in data["fractions"]],
                seeds=[int(x) for x in data["seeds"]],
                edit_method=data.get("edit_method"),
            )
        except KeyError as e:
            raise ValueError("sweep config {} is missing key {}".format(path, e))
        config.validate()
        return config


SWEEP_CSV_COLUMNS = (
    "n",
    "r",
    "t",
    "fraction",
    "seed",
    "rho_t",
    "rho_deficit",
    "edit_distance",
    "edit_density",
    "certified",
)


@dataclass
class SweepRecord:
    n: int
    r: int
    t: int
    fraction: float
    seed: int
    rho_t: float
    rho_deficit: float
    edit_distance: int
    edit_density: float
    certified: bool
    edge_count: int = 0
    implied_edges: float = 0.0
    converged: bool = True

    def to_dict(self):
        return asdict(self)


def _sweep_record(config, n, fraction, seed):
    g = perturb_turan(n, config.r, fraction, seed)
    cs = enumerate_cliques(g, config.t, workers=1)
    converged = True
    try:
        rho = rho_power_iteration(cs).rho
    except ConvergenceError as e:
        logger.warning("n=%s fraction=%s seed=%s: %s", n, fraction, seed, e)
        rho, converged = float("nan"), False
    scale = n ** (config.t - 1)
    edit = edit_distance_to_turan(g, config.r, method=config.edit_method, seed=seed)
    return SweepRecord(
        n=n,
        r=config.r,
        t=config.t,
        fraction=fraction,
        seed=seed,
        rho_t=rho,
        rho_deficit=(turan_rho(n, config.r, config.t) - rho) / scale,
        edit_distance=edit.distance,
        edit_density=edit.distance / n ** 2,
        certified=edit.certified,
        edge_count=g.edge_count,
        implied_edges=sos_edge_lower_bound(rho, config.r, config.t) if converged else float("nan"),
        converged=converged,
    )


def stability_sweep(config: SweepConfig, workers=None) -> List[SweepRecord]:
    """One record per (n, fraction, seed), ordered by that key

    A record whose solver fails to converge is flagged (converged=False)
    and the sweep continues.
    """
    config.validate()
    keys = sorted(itertools.product(config.n, config.fractions, config.seeds))
    logger.info("Running stability sweep over %s graphs", len(keys))
    return ordered_map(lambda key: _sweep_record(config, *key), keys, workers)


def spearman_summary(records: Sequence[SweepRecord]):
    """Spearman rank correlation between rho_deficit and edit_density

    Unconverged records are left out; with fewer than 3 usable records the
    correlation is None.
    """
    usable = [rec for rec in records if rec.converged]
    if len(usable) < 3:
        return {"spearman": None, "pvalue": None, "records": len(usable)}
    deficits = [rec.rho_deficit for rec in usable]
    densities = [rec.edit_density for rec in usable]
    result = spearmanr(deficits, densities)
    return {"spearman": float(result[0]), "pvalue": float(result[1]), "records": len(usable)}


def write_gnuplot(records, f):
    """Two whitespace-separated columns: rho_deficit edit_density"""
    f.write("# rho_deficit edit_density\n")
    for rec in records:
        f.write("%r %r\n" % (rec.rho_deficit, rec.edit_density))
