"""
The generalized graph Lagrangian

    mu_t(G) = max { sum_{K in C_t(G)} prod_{v in K} x_v : x on the standard simplex }

which equals C(omega, t) * omega^(-t) for t <= omega. Computed in closed
form, by weight shifting between nonadjacent vertices, and by multistart
projected gradient ascent on the simplex.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional

import numpy as np

from .cliques import DEFAULT_BUDGET, CliqueSet, clique_number, maximum_clique
from .graph import Graph
from .log import logger
from .spectral import (
    MIN_STEP,
    NormalizationError,
    WeightVector,
    _apply,
    _as_array,
    _clique_sum,
    apply_clique_tensor,
)
from .utils import ordered_map

__all__ = [
    "LagrangianResult",
    "clique_poly",
    "clique_poly_gradient",
    "default_restarts",
    "mu_closed_form",
    "mu_gradient",
    "mu_shift_local",
    "project_simplex",
]

MAX_DEFAULT_RESTARTS = 1024
GRADIENT_TOL = 1e-12
GRADIENT_MAX_ITER = 5000


@dataclass
class LagrangianResult:
    """Value and witness of one Lagrangian computation

    Attributes:
        mu (float): the value
        witness (WeightVector): simplex point attaining `mu`
        support_size (int): number of nonzero witness entries
        method (str): "closed_form", "gradient" or "shift_local"
        mu_exact (Fraction): exact value, closed form only
        history (list[float]): clique polynomial after each shift, shift_local only
    """

    mu: float
    witness: WeightVector
    support_size: int
    method: str
    mu_exact: Optional[Fraction] = None
    history: List[float] = field(default_factory=list)

    def to_dict(self):
        out = {
            "mu": float(self.mu),
            "support_size": int(self.support_size),
            "method": self.method,
            "witness": [float(v) for v in self.witness.values],
        }
        if self.mu_exact is not None:
            out["mu_exact"] = "{}/{}".format(self.mu_exact.numerator, self.mu_exact.denominator)
        return out


def _simplex_values(cs, x):
    if not isinstance(x, WeightVector) or x.normalization != "simplex":
        raise NormalizationError("expected a simplex weight vector")
    return _as_array(cs, x)


def clique_poly(cs: CliqueSet, x: WeightVector) -> float:
    """sum over t-cliques K of prod_{v in K} x_v at a simplex point x"""
    return _clique_sum(cs.array, _simplex_values(cs, x))


def clique_poly_gradient(cs: CliqueSet, x) -> np.ndarray:
    """Partial derivatives S_G(v, x) of the clique polynomial; x any nonnegative vector"""
    return apply_clique_tensor(cs, x)


def _result(cs, values, method, **kwargs):
    witness = WeightVector(values, "simplex")
    return LagrangianResult(
        mu=_clique_sum(cs.array, values),
        witness=witness,
        support_size=int(np.count_nonzero(values)),
        method=method,
        **kwargs
    )


def mu_closed_form(g: Graph, t: int, budget=DEFAULT_BUDGET) -> LagrangianResult:
    """mu_t = C(omega, t) * omega^(-t), witnessed by uniform weight on a maximum clique

    For t > omega the value is 0 and the witness is uniform on all vertices.

    Raises:
        BudgetExceededError: from the maximum clique search
    """
    if t < 1:
        raise ValueError("t must be >= 1, got %s" % t)
    clique = maximum_clique(g, budget=budget)
    omega = len(clique)
    values = np.zeros(g.n)
    if t <= omega:
        exact = Fraction(comb(omega, t), omega ** t)
        values[list(clique)] = 1.0 / omega
    else:
        exact = Fraction(0)
        if g.n:
            values[:] = 1.0 / g.n
    witness = WeightVector(values, "simplex")
    logger.debug("Closed-form mu_%s of %s: omega=%s, mu=%s", t, g, omega, exact)
    return LagrangianResult(
        mu=float(exact),
        witness=witness,
        support_size=int(np.count_nonzero(values)),
        method="closed_form",
        mu_exact=exact,
    )


def _first_nonadjacent_pair(graph, support):
    for a, i in enumerate(support):
        for j in support[a + 1:]:
            if not graph.has_edge(i, j):
                return i, j
    return None


def mu_shift_local(cs: CliqueSet, x0: WeightVector) -> LagrangianResult:
    """Weight shifting between nonadjacent vertices, then uniform on the support

    While the support holds a nonadjacent pair (i, j) (first in lexicographic
    order), all weight of the vertex with the smaller partial derivative
    moves to the other; on a tie the smaller index keeps the weight. Since
    no clique contains both i and j the polynomial changes by
    x_j * (S(i, x) - S(j, x)) >= 0. Once the support is a clique the weights
    are replaced by the uniform distribution on it, which can only increase
    the value by Maclaurin's inequality.

    The result is a lower bound on mu_t, not mu_t itself.
    """
    if cs.graph is None:
        raise ValueError("mu_shift_local needs a CliqueSet that carries its graph")
    x = _simplex_values(cs, x0).copy()
    if cs.n == 0:
        return _result(cs, x, "shift_local", history=[0.0])
    history = [_clique_sum(cs.array, x)]
    while True:
        support = [int(v) for v in np.flatnonzero(x > 0)]
        pair = _first_nonadjacent_pair(cs.graph, support)
        if pair is None:
            break
        i, j = pair
        grad = _apply(cs.array, x, cs.n)
        keep, drop = (i, j) if grad[i] >= grad[j] else (j, i)
        x[keep] += x[drop]
        x[drop] = 0.0
        history.append(_clique_sum(cs.array, x))
        logger.debug("Shifted weight of %s onto %s, value %r", drop, keep, history[-1])

    support = np.flatnonzero(x > 0)
    values = np.zeros(cs.n)
    values[support] = 1.0 / support.size
    history.append(_clique_sum(cs.array, values))
    return _result(cs, values, "shift_local", history=history)


def project_simplex(y):
    """Euclidean projection of y onto the standard simplex (sort-based)"""
    y = np.asarray(y, dtype=float)
    u = np.sort(y)[::-1]
    cumulative = np.cumsum(u) - 1.0
    ks = np.arange(1, y.size + 1)
    k = np.nonzero(u - cumulative / ks > 0)[0][-1]
    theta = cumulative[k] / (k + 1)
    return np.maximum(y - theta, 0.0)


def _ascend_simplex(cliques, x, n, tol, max_iter):
    """Projected ascent from x; stops once a unit projected step moves x by at most tol"""
    value = _clique_sum(cliques, x)
    for _ in range(max_iter):
        grad = _apply(cliques, x, n)
        if np.max(np.abs(project_simplex(x + grad) - x)) <= tol:
            return value, x
        step = 1.0
        accepted = None
        while step >= MIN_STEP:
            trial = project_simplex(x + step * grad)
            trial_value = _clique_sum(cliques, trial)
            if trial_value > value:
                accepted = (trial_value, trial)
                break
            step *= 0.5
        if accepted is None:
            return value, x
        value, x = accepted
    return value, x


def default_restarts(cs: CliqueSet) -> int:
    """4 * 2^omega starts, capped at MAX_DEFAULT_RESTARTS"""
    if cs.graph is None:
        return 8
    omega = clique_number(cs.graph)
    return min(MAX_DEFAULT_RESTARTS, 4 * 2 ** omega)


def mu_gradient(
    cs: CliqueSet, restarts=None, tol=GRADIENT_TOL, seed=0, max_iter=GRADIENT_MAX_ITER, workers=None
) -> LagrangianResult:
    """Multistart projected gradient ascent on the simplex

    Start 0 is the barycenter; the others are seeded Dirichlet(1) points.
    When `cs` carries its graph, one extra start per vertex is uniform on
    its closed neighbourhood.
    The step is halved from 1.0 until the polynomial increases. Global
    optimality is not certified.

    Args:
        cs (CliqueSet): t-cliques
        restarts (int): number of starts; None uses `default_restarts(cs)`
        tol (float): a run stops once a unit projected step moves x by at most tol
        seed (int): seed of the PCG64 generator for the random starts

    Returns:
        LagrangianResult
    """
    if cs.n == 0:
        return _result(cs, np.zeros(0), "gradient")
    if restarts is None:
        restarts = default_restarts(cs)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")

    rng = np.random.Generator(np.random.PCG64(seed))
    starts = [np.full(cs.n, 1.0 / cs.n)]
    starts.extend(rng.dirichlet(np.ones(cs.n)) for _ in range(restarts - 1))
    if cs.graph is not None:
        for v in range(cs.n):
            closed = [v] + sorted(cs.graph.neighbors(v))
            start = np.zeros(cs.n)
            start[closed] = 1.0 / len(closed)
            starts.append(start)
    cliques = cs.array
    runs = ordered_map(
        lambda start: _ascend_simplex(cliques, start, cs.n, tol, max_iter), starts, workers
    )
    best_value, best_x = max(runs, key=lambda run: run[0])
    logger.info("Lagrangian ascent: best of %s starts mu=%r", len(starts), best_value)
    # renormalize against roundoff from the projection
    best_x = best_x / np.sum(best_x)
    return _result(cs, best_x, "gradient")
