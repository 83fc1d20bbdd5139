"""
Spectral bounds on the clique number and clique counts.

    thm1:       rho_t <= (t / omega) * C(omega, t)^(1/t) * |C_t|^((t-1)/t)
    lemma2:     |C_t| <= (n / t) * rho_t
    Nikiforov:  2 |C_2| (omega - 1) / omega >= rho^2                   (t = 2)
    Erdos:      |C_t| <= (n / r)^t * C(r, t)          for K_{r+1}-free graphs
    Sos:        (|C_t| / C(r, t))^(1/t) <= (|C_s| / C(r, s))^(1/s)
                for K_{r+1}-free graphs and r >= t >= s >= 1
"""
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .cliques import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    clique_number,
    count_cliques,
    enumerate_cliques,
    is_kr1_free,
)
from .graph import Graph
from .log import logger
from .spectral import ConvergenceError, rho_gradient_ascent, rho_power_iteration

__all__ = [
    "BOUNDS_CSV_COLUMNS",
    "BoundsReport",
    "ErdosCheck",
    "InconsistentBoundError",
    "Lemma2Check",
    "NikiforovBound",
    "PreconditionError",
    "SosCheck",
    "bounds_report",
    "erdos_count_check",
    "lemma2_check",
    "nikiforov_omega_lower",
    "omega_lower_bound",
    "triangle_vs_edge_bound",
    "sos_check",
    "sos_edge_lower_bound",
    "thm1_rhs",
]

REL_TOL = 1e-8
SCAN_TOL = 1e-9
SOS_TOL = 1e-12


class InconsistentBoundError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _check_counts(t, clique_count):
    if t < 2:
        raise ValueError("t must be >= 2, got %s" % t)
    if clique_count < 0:
        raise ValueError("clique count must be nonnegative, got %s" % clique_count)


def thm1_rhs(omega, t, clique_count) -> float:
    """(t / omega) * C(omega, t)^(1/t) * |C_t|^((t-1)/t); 0 when omega < t or no cliques"""
    _check_counts(t, clique_count)
    if omega < 1:
        raise ValueError("omega must be >= 1, got %s" % omega)
    if omega < t or clique_count == 0:
        return 0.0
    return (t / omega) * comb(omega, t) ** (1.0 / t) * clique_count ** ((t - 1.0) / t)


def omega_lower_bound(rho_t, t, clique_count, n=None) -> int:
    """Smallest omega >= t with thm1_rhs(omega, t, |C_t|) >= rho_t

    The right-hand side is non-decreasing in omega, so an upward scan is
    valid. The scan stops at the largest omega with C(omega, t) <= |C_t|
    (and at n when given): no larger clique fits into the clique count.

    Returns:
        int: the bound, or t - 1 when rho_t = 0 (no t-clique certified)

    Raises:
        InconsistentBoundError: if no admissible omega satisfies the bound
    """
    _check_counts(t, clique_count)
    if rho_t < 0:
        raise ValueError("rho_t must be nonnegative, got %s" % rho_t)
    if rho_t == 0:
        return t - 1

    target = rho_t - SCAN_TOL * max(1.0, rho_t)
    omega = t
    while comb(omega, t) <= clique_count and (n is None or omega <= n):
        if thm1_rhs(omega, t, clique_count) >= target:
            return omega
        omega += 1
    raise InconsistentBoundError(
        "no omega satisfies rho_{}={!r} with {} cliques".format(t, rho_t, clique_count)
    )


@dataclass
class NikiforovBound:
    """omega >= 1 / (1 - rho^2 / (2 |C_2|))

    Attributes:
        feasible (bool): False when rho^2 >= 2 |C_2| (no finite omega works)
        exact (Fraction): the bound in exact arithmetic on the float inputs
        value (float): the bound as a float
        ceiling (int): the integer bound
    """

    feasible: bool
    exact: Optional[Fraction]
    value: float
    ceiling: Optional[int]


def nikiforov_omega_lower(rho_2, edge_count) -> NikiforovBound:
    """Clique-number lower bound from 2 |C_2| (omega - 1) / omega >= rho^2"""
    if rho_2 < 0:
        raise ValueError("rho must be nonnegative, got %s" % rho_2)
    if edge_count < 1:
        raise ValueError("edge count must be >= 1, got %s" % edge_count)
    ratio = Fraction(rho_2) ** 2 / (2 * edge_count)
    if ratio >= 1:
        return NikiforovBound(feasible=False, exact=None, value=math.inf, ceiling=None)
    exact = 1 / (1 - ratio)
    value = float(exact)
    return NikiforovBound(
        feasible=True, exact=exact, value=value, ceiling=math.ceil(value - SCAN_TOL)
    )


@dataclass
class Lemma2Check:
    holds: bool
    slack: float
    equality: bool


def lemma2_check(n, t, rho_t, clique_count) -> Lemma2Check:
    """|C_t| <= n * rho_t / t, with equality flagged within REL_TOL relative"""
    rhs = n * rho_t / t
    slack = rhs - clique_count
    return Lemma2Check(
        holds=clique_count <= rhs + REL_TOL * max(1.0, rhs),
        slack=slack,
        equality=abs(slack) <= REL_TOL * max(1.0, rhs),
    )


@dataclass
class ErdosCheck:
    holds: bool
    rhs: float
    equality: bool


def erdos_count_check(n, r, t, clique_count) -> ErdosCheck:
    """|C_t| <= (n / r)^t * C(r, t) for a K_{r+1}-free graph (caller certifies freeness)

    Both sides are rational, so the comparison is exact.
    """
    if r < 1 or t < 1:
        raise ValueError("r and t must be >= 1")
    rhs = Fraction(n, r) ** t * comb(r, t)
    return ErdosCheck(holds=clique_count <= rhs, rhs=float(rhs), equality=clique_count == rhs)


@dataclass
class SosCheck:
    holds: bool
    lhs: float
    rhs: float
    equality: bool


def _normalized_count(count, r, k):
    return (count / comb(r, k)) ** (1.0 / k)


def sos_check(g: Graph, r, t, s) -> SosCheck:
    """(|C_t| / C(r, t))^(1/t) <= (|C_s| / C(r, s))^(1/s) on a K_{r+1}-free graph

    Raises:
        PreconditionError: if not r >= t >= s >= 1, or g contains K_{r+1}
    """
    if not r >= t >= s >= 1:
        raise PreconditionError(
            "sos check needs r >= t >= s >= 1, got r={}, t={}, s={}".format(r, t, s)
        )
    if not is_kr1_free(g, r):
        raise PreconditionError("graph contains K_{}, not K_(r+1)-free for r={}".format(r + 1, r))
    lhs = _normalized_count(count_cliques(g, t), r, t)
    rhs = _normalized_count(count_cliques(g, s), r, s)
    tol = SOS_TOL * max(1.0, rhs)
    return SosCheck(holds=lhs <= rhs + tol, lhs=lhs, rhs=rhs, equality=abs(lhs - rhs) <= tol)


def sos_edge_lower_bound(rho_t, r, t) -> float:
    """Edge count forced by rho_t on a K_{r+1}-free graph

    The thm1 bound at omega <= r with the Sos inequality at s = 2 gives
    rho_t <= (t / r) * C(r, t) * (|C_2| / C(r, 2))^((t-1)/2), hence
    |C_2| >= C(r, 2) * (r * rho_t / (t * C(r, t)))^(2/(t-1)).
    """
    if not r >= t >= 2:
        raise ValueError("needs r >= t >= 2, got r={}, t={}".format(r, t))
    return comb(r, 2) * (r * rho_t / (t * comb(r, t))) ** (2.0 / (t - 1))


BOUNDS_CSV_COLUMNS = (
    "name",
    "n",
    "t",
    "rho_t",
    "clique_count_t",
    "omega_exact",
    "thm1_rhs",
    "thm1_holds",
    "omega_lower",
    "lemma2_rhs",
    "lemma2_equality",
    "nikiforov_omega_lower",
    "erdos_count_rhs",
    "sos_ok",
)


@dataclass
class BoundsReport:
    """All bound values for one graph and one clique order t

    Fields only defined in some settings are None otherwise: `omega_exact`,
    `thm1_rhs` and `thm1_holds` when the clique number was computed,
    `nikiforov_omega_lower` for t = 2, `erdos_count_rhs` given r on a
    K_{r+1}-free graph, `sos_ok` given r and s.
    """

    name: Optional[str]
    n: int
    t: int
    rho_t: float
    rho_method: str
    clique_count_t: int
    omega_lower: int
    lemma2_rhs: float
    lemma2_holds: bool
    lemma2_equality: bool
    constant_incidence: bool
    omega_exact: Optional[int] = None
    thm1_rhs: Optional[float] = None
    thm1_holds: Optional[bool] = None
    nikiforov_omega_lower: Optional[int] = None
    erdos_count_rhs: Optional[float] = None
    erdos_holds: Optional[bool] = None
    sos_ok: Optional[bool] = None

    def violations(self):
        """Names of the report invariants that fail (empty when all hold)"""
        failed = []
        if self.thm1_holds is False:
            failed.append("thm1")
        if not self.lemma2_holds:
            failed.append("lemma2")
        if self.omega_exact is not None and self.omega_lower > self.omega_exact:
            failed.append("omega_lower")
        if self.erdos_holds is False:
            failed.append("erdos")
        if self.sos_ok is False:
            failed.append("sos")
        return failed

    def to_dict(self):
        return asdict(self)


def bounds_report(
    g: Graph, t: int, compute_omega=True, r=None, s=None, budget=DEFAULT_BUDGET
) -> BoundsReport:
    """Runs the clique engine and the spectral solver and evaluates every bound

    Args:
        g (Graph): input graph
        t (int): clique order, >= 2
        compute_omega (bool): compute the exact clique number for the thm1 check
        r (int): optional r for the Erdos count and Sos checks, both skipped
            when g contains K_(r+1)
        s (int): optional s for the Sos check (needs r)
        budget (int): node budget of the maximum clique search

    Returns:
        BoundsReport
    """
    if t < 2:
        raise ValueError("bounds need t >= 2, got %s" % t)
    cs = enumerate_cliques(g, t)
    try:
        spectral = rho_power_iteration(cs)
    except ConvergenceError as e:
        logger.warning("%s; falling back to gradient ascent", e)
        spectral = rho_gradient_ascent(cs)
    rho = spectral.rho
    count = cs.count

    lemma2 = lemma2_check(g.n, t, rho, count)
    report = BoundsReport(
        name=g.name,
        n=g.n,
        t=t,
        rho_t=rho,
        rho_method=spectral.method,
        clique_count_t=count,
        omega_lower=omega_lower_bound(rho, t, count, n=g.n),
        lemma2_rhs=g.n * rho / t,
        lemma2_holds=lemma2.holds,
        lemma2_equality=lemma2.equality,
        constant_incidence=bool(len(set(cs.per_vertex_count.tolist())) <= 1),
    )

    if compute_omega:
        try:
            report.omega_exact = clique_number(g, budget=budget)
        except BudgetExceededError as e:
            logger.warning("%s; omitting the thm1 check", e)
    if report.omega_exact is not None and report.omega_exact >= 1:
        report.thm1_rhs = thm1_rhs(report.omega_exact, t, count)
        report.thm1_holds = rho <= report.thm1_rhs * (1 + REL_TOL) + REL_TOL

    if t == 2 and g.edge_count >= 1:
        bound = nikiforov_omega_lower(rho, g.edge_count)
        if bound.feasible:
            report.nikiforov_omega_lower = bound.ceiling

    if r is not None:
        if is_kr1_free(g, r):
            erdos = erdos_count_check(g.n, r, t, count)
            report.erdos_count_rhs = erdos.rhs
            report.erdos_holds = erdos.holds
            if s is not None:
                report.sos_ok = sos_check(g, r, t, s).holds
        else:
            logger.info("%s contains K_%s; skipping the Erdos and Sos checks", g, r + 1)

    failed = report.violations()
    if failed:
        logger.warning("Bounds report for %s violates %s", g, ", ".join(failed))
    return report


def triangle_vs_edge_bound(g: Graph, edge_rho=2.0):
    """Compares the t = 3 clique bound against Nikiforov's edge bound

    Any graph containing a triangle has adjacency spectral radius >= 2, so
    `edge_rho` defaults to that certificate.

    Returns:
        dict: omega_lower from rho_3, the Nikiforov bound, and whether the
            former is strictly larger
    """
    cs = enumerate_cliques(g, 3)
    rho_3 = rho_power_iteration(cs).rho
    clique_bound = omega_lower_bound(rho_3, 3, cs.count, n=g.n)
    nikiforov = nikiforov_omega_lower(edge_rho, g.edge_count)
    return {
        "rho_3": rho_3,
        "omega_lower_t3": clique_bound,
        "nikiforov_value": nikiforov.value,
        "nikiforov_ceiling": nikiforov.ceiling,
        "tighter": nikiforov.feasible and clique_bound > nikiforov.ceiling,
    }
