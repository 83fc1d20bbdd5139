"""
Spectral radius of the t-clique tensor.

The order-t clique tensor A(G) has entry 1/(t-1)! on every permutation of a
t-clique. It is never materialized: the (t-1)! orderings of a clique's tail
cancel that entry, so

    (A x^{t-1})_i = sum over t-cliques K containing i of prod_{v in K, v != i} x_v

and the Rayleigh functional over the nonnegative t-norm sphere is
t * sum_K prod_{v in K} x_v. Its maximum is rho_t(G).

Three solvers are provided: a shifted power iteration with a two-sided
ratio bracket, projected gradient ascent (certified from below only), and a
grid-refinement oracle for tiny graphs.
"""
import itertools
import math
from dataclasses import dataclass
from typing import List

import networkx as nx
import numpy as np

from .cliques import CliqueSet
from .log import logger
from .utils import ordered_map

__all__ = [
    "ConvergenceError",
    "DimensionError",
    "NormalizationError",
    "OracleSizeError",
    "SpectralResult",
    "WeightVector",
    "adjacency_spectral_radius",
    "apply_clique_tensor",
    "clique_components",
    "eigen_residual",
    "oracle_rho_bruteforce",
    "oracle_rho_witness",
    "rayleigh_value",
    "rho_gradient_ascent",
    "rho_power_iteration",
]

DEFAULT_SHIFT = 1.0
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10 ** 5
RESIDUAL_TOL = 1e-8
DEFAULT_RESTARTS = 8
GRADIENT_TOL = 1e-12
GRADIENT_MAX_ITER = 50000
MIN_STEP = 1e-20
ORACLE_MAX_VERTICES = 8
ORACLE_GRID = 8  # initial simplex grid resolution 1/ORACLE_GRID
ORACLE_DEPTH = 40  # number of step halvings after the initial grid
ORACLE_MAX_ROUNDS = 10 ** 5
NORM_TOL = 1e-12


class DimensionError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


class OracleSizeError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, lower, upper, iterations):
        self.lower = lower
        self.upper = upper
        self.iterations = iterations
        super().__init__(
            "power iteration did not converge after {} iterations, "
            "bracket [{!r}, {!r}]".format(iterations, lower, upper)
        )


class WeightVector(object):
    """Nonnegative vertex weights, normalized either in t-norm or on the simplex

    Attributes:
        values (numpy.ndarray): the weights
        normalization (str): "t_norm" or "simplex"
        t (int): the norm order for "t_norm" (None for "simplex")
    """

    def __init__(self, values, normalization, t=None):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1:
            raise DimensionError("weights must be a 1-d array")
        if np.any(values < 0):
            raise NormalizationError("weights must be nonnegative")
        if normalization == "t_norm":
            if t is None or t < 1:
                raise NormalizationError("t_norm needs an order t >= 1")
            total = np.sum(values ** t)
        elif normalization == "simplex":
            t = None
            total = np.sum(values)
        else:
            raise NormalizationError("unknown normalization {!r}".format(normalization))
        if values.size and abs(total - 1.0) > NORM_TOL:
            raise NormalizationError(
                "{} weights sum to {!r}, expected 1".format(normalization, total)
            )
        self.values = values
        self.normalization = normalization
        self.t = t

    @classmethod
    def t_normalized(cls, values, t):
        """Scales nonnegative `values` onto the t-norm sphere"""
        values = np.clip(np.asarray(values, dtype=float), 0.0, None)
        norm = np.sum(values ** t) ** (1.0 / t)
        if norm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(values / norm, "t_norm", t)

    @classmethod
    def simplex(cls, values):
        values = np.clip(np.asarray(values, dtype=float), 0.0, None)
        total = np.sum(values)
        if total == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(values / total, "simplex")

    @classmethod
    def uniform(cls, n, t=None):
        """Uniform weights: on the simplex if t is None, else on the t-norm sphere"""
        if n == 0:
            return cls(np.zeros(0), "simplex" if t is None else "t_norm", t)
        if t is None:
            return cls(np.full(n, 1.0 / n), "simplex")
        return cls(np.full(n, n ** (-1.0 / t)), "t_norm", t)

    @property
    def support(self):
        return np.flatnonzero(self.values > 0)

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return "WeightVector({}, {})".format(self.normalization, self.values.tolist())


@dataclass
class SpectralResult:
    rho: float
    lower: float
    upper: float
    eigvec: WeightVector
    iterations: int
    residual: float
    method: str
    converged: bool = True

    def to_dict(self):
        return {
            "rho": float(self.rho),
            "lower": float(self.lower),
            "upper": float(self.upper) if math.isfinite(self.upper) else None,
            "iterations": int(self.iterations),
            "residual": float(self.residual),
            "method": self.method,
            "eigvec": [float(v) for v in self.eigvec.values],
        }


def _as_array(cs, x):
    values = x.values if isinstance(x, WeightVector) else np.asarray(x, dtype=float)
    if values.shape != (cs.n,):
        raise DimensionError(
            "weight vector has shape {}, expected ({},)".format(values.shape, cs.n)
        )
    if np.any(values < 0):
        raise ValueError("weights must be nonnegative")
    return values


def _tail_products(clique_array, values):
    """Entry (k, j) = product of the weights of clique k except its j-th vertex"""
    weights = values[clique_array]
    t = clique_array.shape[1]
    out = np.empty_like(weights)
    for j in range(t):
        # left-to-right in vertex order, fixed for reproducibility
        prod = np.ones(weights.shape[0])
        for k in range(t):
            if k != j:
                prod = prod * weights[:, k]
        out[:, j] = prod
    return out


def _apply(clique_array, values, n):
    out = np.zeros(n)
    if clique_array.shape[0] == 0:
        return out
    tails = _tail_products(clique_array, values)
    for j in range(clique_array.shape[1]):
        # np.add.at accumulates in clique order, so the reduction order is fixed
        np.add.at(out, clique_array[:, j], tails[:, j])
    return out


def _clique_sum(clique_array, values):
    """sum over cliques of the product of their weights"""
    if clique_array.shape[0] == 0:
        return 0.0
    weights = values[clique_array]
    prod = np.ones(weights.shape[0])
    for k in range(clique_array.shape[1]):
        prod = prod * weights[:, k]
    return float(np.sum(prod))


def apply_clique_tensor(cs: CliqueSet, x) -> np.ndarray:
    """Evaluates (A(G) x^{t-1})_i for every vertex i

    Args:
        cs (CliqueSet): the t-cliques
        x (WeightVector or array): n nonnegative weights

    Returns:
        numpy.ndarray: length-n output
    """
    return _apply(cs.array, _as_array(cs, x), cs.n)


def rayleigh_value(cs: CliqueSet, x: WeightVector) -> float:
    """t * sum_K prod_{v in K} x_v for a t-norm normalized x: a lower bound on rho_t"""
    if not isinstance(x, WeightVector) or x.normalization != "t_norm" or x.t != cs.t:
        raise NormalizationError("rayleigh_value needs a t_norm({}) weight vector".format(cs.t))
    values = _as_array(cs, x)
    return cs.t * _clique_sum(cs.array, values)


def eigen_residual(cs: CliqueSet, rho, x) -> float:
    """max_i |rho * x_i^{t-1} - (A x^{t-1})_i|"""
    values = _as_array(cs, x)
    if cs.n == 0:
        return 0.0
    image = _apply(cs.array, values, cs.n)
    return float(np.max(np.abs(rho * values ** (cs.t - 1) - image)))


def clique_components(cs: CliqueSet) -> List[np.ndarray]:
    """Connected components of the hypergraph whose hyperedges are the t-cliques

    Vertices in no t-clique are left out. Components are sorted by their
    smallest vertex, vertices inside a component are sorted.
    """
    incidence = nx.Graph()
    incidence.add_nodes_from(int(v) for v in cs.covered)
    for clique in cs.cliques:
        incidence.add_edges_from(zip(clique[:-1], clique[1:]))
    components = [np.array(sorted(comp), dtype=np.intp) for comp in nx.connected_components(incidence)]
    components.sort(key=lambda comp: comp[0])
    return components


def _local_cliques(cs, component):
    local_index = np.full(cs.n, -1, dtype=np.intp)
    local_index[component] = np.arange(component.size)
    rows = np.flatnonzero(local_index[cs.array[:, 0]] >= 0)
    return local_index[cs.array[rows]]


def _power_iterate_component(cliques, size, t, shift, tol, max_iter):
    x = np.full(size, size ** (-1.0 / t))
    lower = upper = 0.0
    for iteration in range(1, max_iter + 1):
        x_pow = x ** (t - 1)
        y = _apply(cliques, x, size) + shift * x_pow
        ratios = y / x_pow
        lower = float(np.min(ratios)) - shift
        upper = float(np.max(ratios)) - shift
        if upper - lower <= tol * max(1.0, upper):
            return x, lower, upper, iteration
        x = y ** (1.0 / (t - 1))
        x /= np.sum(x ** t) ** (1.0 / t)
    raise ConvergenceError(lower, upper, max_iter)


def _empty_result(cs, method, upper=0.0):
    eigvec = WeightVector.uniform(cs.n, cs.t)
    return SpectralResult(
        rho=0.0, lower=0.0, upper=upper, eigvec=eigvec, iterations=0, residual=0.0, method=method
    )


def rho_power_iteration(
    cs: CliqueSet, shift=DEFAULT_SHIFT, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> SpectralResult:
    """Shifted power iteration for rho_t, run per clique component

    Each step maps x to y = A x^{t-1} + shift * x^{[t-1]}, brackets rho_t by
    the extreme ratios y_i / x_i^{t-1} minus the shift, and renormalizes
    x = y^{[1/(t-1)]} on the t-norm sphere. The overall radius is the
    maximum over components; a graph with no t-clique gets exactly 0.

    Args:
        cs (CliqueSet): t-cliques, t >= 2
        shift (float): positive shift sigma
        tol (float): relative bracket width to stop at
        max_iter (int): iterations allowed per component

    Returns:
        SpectralResult

    Raises:
        ConvergenceError: if a component's bracket is still wider than tol
    """
    if cs.t < 2:
        raise ValueError("power iteration needs t >= 2, got %s" % cs.t)
    if shift <= 0:
        raise ValueError("shift must be positive, got %s" % shift)
    if cs.count == 0:
        return _empty_result(cs, "power")

    components = clique_components(cs)
    logger.info("Power iteration over %s clique component(s), t=%s", len(components), cs.t)
    best = None
    total_iterations = 0
    lower = upper = 0.0
    for component in components:
        cliques = _local_cliques(cs, component)
        x, comp_lower, comp_upper, iterations = _power_iterate_component(
            cliques, component.size, cs.t, shift, tol, max_iter
        )
        total_iterations += iterations
        rho = cs.t * _clique_sum(cliques, x)
        rho = min(max(rho, comp_lower), comp_upper)
        logger.debug(
            "component of %s vertices: rho=%r in [%r, %r] after %s iterations",
            component.size, rho, comp_lower, comp_upper, iterations,
        )
        lower = max(lower, comp_lower)
        upper = max(upper, comp_upper)
        if best is None or rho > best[0]:
            best = (rho, component, x)

    rho, component, x = best
    values = np.zeros(cs.n)
    values[component] = x
    eigvec = WeightVector.t_normalized(values, cs.t)
    residual = eigen_residual(cs, rho, eigvec)
    if residual > RESIDUAL_TOL * max(1.0, rho):
        logger.warning("eigenpair residual %r exceeds tolerance for rho=%r", residual, rho)
    return SpectralResult(
        rho=rho,
        lower=lower,
        upper=upper,
        eigvec=eigvec,
        iterations=total_iterations,
        residual=residual,
        method="power",
    )


def _ascend(cliques, x, t, tol, max_iter):
    """Backtracking ascent from a positive x; returns (value, x, iterations)

    The constrained gradient t * (A x^{t-1} - value * x^{[t-1]}) is scaled
    by 1 / (t * value * x^{[t-2]}), so a unit step lands on
    A x^{t-1} / (value * x^{[t-2]}) and every step in (0, 1] keeps x
    positive. Runs until the constrained gradient is below
    tol * max(1, value) in max norm, or until no step raises the value.
    """
    size = x.size
    value = t * _clique_sum(cliques, x)
    for iteration in range(1, max_iter + 1):
        image = _apply(cliques, x, size)
        if np.max(np.abs(image - value * x ** (t - 1))) <= tol * max(1.0, value):
            return value, x, iteration
        scale = value * x ** (t - 2)
        direction = np.divide(image, scale, out=image / value, where=scale > 0) - x
        step = 1.0
        accepted = None
        while step >= MIN_STEP:
            trial = np.clip(x + step * direction, 0.0, None)
            norm = np.sum(trial ** t)
            if norm > 0:
                trial = trial / norm ** (1.0 / t)
                trial_value = t * _clique_sum(cliques, trial)
                if trial_value > value:
                    accepted = (trial_value, trial)
                    break
            step *= 0.5
        if accepted is None:
            return value, x, iteration
        value, x = accepted
    return value, x, max_iter


def rho_gradient_ascent(
    cs: CliqueSet,
    restarts=DEFAULT_RESTARTS,
    tol=GRADIENT_TOL,
    seed=0,
    max_iter=GRADIENT_MAX_ITER,
    workers=None,
) -> SpectralResult:
    """Multistart projected gradient ascent of the Rayleigh functional

    Steps along the rescaled constrained gradient, clamp negatives to 0 and
    rescale onto the t-norm sphere; the step is halved from 1.0 until the
    functional increases. Start 0 is uniform on the covered vertices, the
    others are seeded perturbations of it. Only certifies from below:
    `upper` is +inf.

    Args:
        cs (CliqueSet): t-cliques, t >= 2
        restarts (int): number of starts
        tol (float): eigen residual, relative to max(1, rho), at which a run stops
        seed (int): seed of the PCG64 generator for the perturbed starts

    Returns:
        SpectralResult
    """
    if cs.t < 2:
        raise ValueError("gradient ascent needs t >= 2, got %s" % cs.t)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if cs.count == 0:
        return _empty_result(cs, "gradient", upper=math.inf)

    t = cs.t
    covered = cs.covered
    cliques = _local_cliques(cs, covered)
    rng = np.random.Generator(np.random.PCG64(seed))
    uniform = np.full(covered.size, covered.size ** (-1.0 / t))
    starts = [uniform]
    for _ in range(restarts - 1):
        start = uniform * (1.0 + 0.5 * rng.uniform(-1.0, 1.0, covered.size))
        starts.append(start / np.sum(start ** t) ** (1.0 / t))

    runs = ordered_map(lambda start: _ascend(cliques, start, t, tol, max_iter), starts, workers)
    # max() keeps the first maximal run, so ties go to the lower restart index
    best_value, best_x, _ = max(runs, key=lambda run: run[0])
    iterations = sum(run[2] for run in runs)
    logger.info("Gradient ascent: best of %s restarts rho=%r", restarts, best_value)

    values = np.zeros(cs.n)
    values[covered] = best_x
    eigvec = WeightVector.t_normalized(values, t)
    rho = rayleigh_value(cs, eigvec)
    return SpectralResult(
        rho=rho,
        lower=rho,
        upper=math.inf,
        eigvec=eigvec,
        iterations=iterations,
        residual=eigen_residual(cs, rho, eigvec),
        method="gradient",
    )


def _simplex_grid(size, resolution):
    """All points of the simplex in `size` dims with coordinates k / resolution"""
    for bars in itertools.combinations(range(resolution + size - 1), size - 1):
        prev = -1
        point = []
        for bar in bars:
            point.append(bar - prev - 1)
            prev = bar
        point.append(resolution + size - 2 - prev)
        yield np.array(point, dtype=float) / resolution


def _subset_targets(size, t):
    """Uniform simplex points on every vertex subset of at most t elements"""
    targets = []
    for k in range(1, min(t, size) + 1):
        for subset in itertools.combinations(range(size), k):
            target = np.zeros(size)
            target[list(subset)] = 1.0 / k
            targets.append(target)
    return np.array(targets)


def oracle_rho_witness(cs: CliqueSet, grid_depth=ORACLE_DEPTH):
    """Grid-refinement maximization of the Rayleigh functional, for n <= 8

    With the substitution x_i = y_i^{1/t}, y on the simplex, the functional
    becomes t * sum_K prod_{v in K} y_v^{1/t}: a sum of geometric means,
    hence concave in y, though not differentiable where y has zeros. A
    full simplex grid of resolution 1/ORACLE_GRID picks the incumbent.
    Each refinement level re-grids the sub-simplex (1 - h) y + h w around
    it, w ranging over the uniform points of all vertex subsets of size
    <= t, and moves to the best point while that improves the value;
    otherwise h is halved. A subset target puts mass on every missing
    vertex of a clique at once. Stops after `grid_depth` halvings.
    Independent of the power and gradient solvers.

    Args:
        cs (CliqueSet): t-cliques
        grid_depth (int): number of step halvings after the initial grid

    Returns:
        (float, WeightVector): the value and the t-norm point attaining it

    Raises:
        OracleSizeError: if the graph has more than ORACLE_MAX_VERTICES vertices
    """
    if cs.n > ORACLE_MAX_VERTICES:
        raise OracleSizeError(
            "brute-force oracle is limited to n <= {}, got {}".format(ORACLE_MAX_VERTICES, cs.n)
        )
    if cs.count == 0:
        return 0.0, WeightVector.uniform(cs.n, cs.t)

    t = cs.t
    covered = cs.covered
    cliques = _local_cliques(cs, covered)

    def functional(points):
        # one row per simplex point
        return t * np.sum(np.prod(points[:, cliques] ** (1.0 / t), axis=2), axis=1)

    grid = np.array(list(_simplex_grid(covered.size, ORACLE_GRID)))
    values = functional(grid)
    k = int(np.argmax(values))
    best_y, best = grid[k], float(values[k])

    targets = _subset_targets(covered.size, t)
    step = 1.0 / ORACLE_GRID
    halvings = 0
    rounds = 0
    while halvings <= grid_depth and rounds < ORACLE_MAX_ROUNDS:
        rounds += 1
        trials = (1.0 - step) * best_y + step * targets
        values = functional(trials)
        k = int(np.argmax(values))
        if values[k] > best:
            best_y, best = trials[k], float(values[k])
        else:
            step /= 2.0
            halvings += 1
    logger.debug("Oracle: rho=%r after %s refinement rounds", best, rounds)

    values = np.zeros(cs.n)
    values[covered] = best_y ** (1.0 / t)
    return best, WeightVector.t_normalized(values, t)


def oracle_rho_bruteforce(cs: CliqueSet, grid_depth=ORACLE_DEPTH) -> float:
    """rho_t by grid refinement, for n <= 8; see `oracle_rho_witness`"""
    return oracle_rho_witness(cs, grid_depth)[0]


def adjacency_spectral_radius(g) -> float:
    """Largest adjacency eigenvalue from a dense symmetric eigen-solve"""
    if g.n == 0:
        return 0.0
    return float(np.max(np.linalg.eigvalsh(g.adjacency_matrix())))
