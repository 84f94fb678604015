"""Interval optimization over a box: efficiency on grids, subgradient
optimality conditions, and a scalarized descent heuristic.

A point is efficient when no feasible point has a strictly dominating
objective value.  Efficiency here is always decided relative to a grid
and reported with the grid step, so every claim is resolution-qualified.

The descent driver is a heuristic: it scalarizes subgradients through
the convex endpoint weights and runs a projected subgradient iteration.
The optimality conditions are the principled part; the driver only
produces candidate points for them to certify.
"""

from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    CandidateNotSubgradient,
    GhcalcError,
    NonConvexObjective,
    NonFiniteDerivative,
    NoSubgradientFound,
    OutOfDomain,
)
from .interval import Interval
from .ivector import IVector, WMapConfig, w_map
from .ivf import (
    Grid,
    Ivf,
    OneSidedDifferenceWarning,
    gh_gradient,
    is_convex_sampled,
)
from .subgrad import (
    SubgradientCandidate,
    _feasible_box_1d,
    _pairing_lo_hi,
    is_subgradient,
)


@dataclass(frozen=True)
class Iop:
    """Minimization of a convex interval objective over its domain box.

    Construction runs the sampled convexity check and refuses objectives
    that fail it; the certificate triple is included in the error.
    """

    objective: Ivf
    convexity_samples: int = 21

    def __post_init__(self):
        grid = self.objective.grid(self.convexity_samples)
        ok, witness = is_convex_sampled(self.objective, grid)
        if not ok:
            raise NonConvexObjective(
                f"objective failed the sampled convexity check at {witness}")

    @property
    def domain(self):
        return self.objective.domain


@dataclass(frozen=True)
class EfficiencyReport:
    """Grid points with objective values and per-point efficiency flags."""

    points: np.ndarray
    f_lo: np.ndarray
    f_hi: np.ndarray
    efficient: np.ndarray
    grid_step: Tuple[float, ...]

    def efficient_points(self) -> np.ndarray:
        return self.points[self.efficient]

    def is_flagged_near(self, x, radius: Optional[float] = None) -> bool:
        """Whether the grid point nearest to x is flagged efficient."""
        x = np.asarray(x, dtype=float).ravel()
        dist = np.linalg.norm(self.points - x[None, :], axis=1)
        k = int(np.argmin(dist))
        if radius is not None and dist[k] > radius:
            return False
        return bool(self.efficient[k])

    def to_csv(self) -> str:
        n = self.points.shape[1]
        out = io.StringIO()
        cols = [f"x{i + 1}" for i in range(n)]
        out.write(",".join(cols) + ",f_lo,f_hi,efficient\n")
        for row, lo, hi, eff in zip(self.points, self.f_lo, self.f_hi,
                                    self.efficient):
            xs = ",".join(f"{float(v)!r}" for v in row)
            out.write(f"{xs},{float(lo)!r},{float(hi)!r},{int(eff)}\n")
        return out.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_csv())


def efficient_on_grid(p: Iop, grid: Optional[Grid] = None) -> EfficiencyReport:
    """Flag each grid point no other grid point strictly dominates."""
    if grid is None:
        grid = p.objective.grid()
    pts = grid.points()
    lo, hi = p.objective.eval_many(pts)
    # strict dominance of value i over value j, as an N x N boolean matrix
    le_lo = lo[:, None] <= lo[None, :]
    le_hi = hi[:, None] <= hi[None, :]
    strict = le_lo & le_hi & ((lo[:, None] < lo[None, :]) | (hi[:, None] < hi[None, :]))
    efficient = ~strict.any(axis=0)
    return EfficiencyReport(pts, lo, hi, efficient, grid.step)


def optimality_zero_condition(p: Iop, x_bar, grid: Optional[Grid] = None) -> bool:
    """Sufficient condition: the zero vector is a subgradient at x_bar.

    When it holds, the grid point nearest x_bar is cross-checked against
    the efficiency report; the condition is sufficient but not necessary,
    so False verdicts say nothing about efficiency.
    """
    f = p.objective
    x = np.asarray(x_bar, dtype=float).ravel()
    if not f.contains(x):
        raise OutOfDomain(f"{x.tolist()} is outside the domain")
    cand = SubgradientCandidate(IVector.zero(f.arity), tuple(x))
    ok, _ = is_subgradient(f, cand, grid)
    if ok:
        report = efficient_on_grid(p, grid)
        if not report.is_flagged_near(x):
            raise GhcalcError(
                "zero-subgradient point was not flagged efficient; "
                "sufficiency violated at grid resolution")
    return ok


def optimality_nprec_condition(p: Iop, x_bar, cand: SubgradientCandidate,
                               grid: Optional[Grid] = None) -> bool:
    """Sufficient condition: (x - x_bar)^T (.) G never strictly precedes 0.

    The candidate must itself pass the subgradient test first.  When the
    condition holds the point is cross-checked as efficient.
    """
    f = p.objective
    x = np.asarray(x_bar, dtype=float).ravel()
    ok, witness = is_subgradient(f, cand, grid)
    if not ok:
        raise CandidateNotSubgradient(
            f"candidate fails the subgradient test, witness {witness}")
    pts = (grid or f.grid()).points()
    lhs_lo, lhs_hi = _pairing_lo_hi(pts - x[None, :], cand.g)
    precedes_zero = (lhs_lo <= 0.0) & (lhs_hi <= 0.0) & ((lhs_lo < 0.0) | (lhs_hi < 0.0))
    holds = not bool(precedes_zero.any())
    if holds:
        report = efficient_on_grid(p, grid)
        if not report.is_flagged_near(x):
            raise GhcalcError(
                "nonpreceding-product point was not flagged efficient; "
                "sufficiency violated at grid resolution")
    return holds


# --------------------------------------------------------------------------
# Scalarized descent
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    x: Tuple[float, ...]
    value: Interval
    scalarized: float
    step: float


@dataclass(frozen=True)
class DescentResult:
    x_best: Tuple[float, ...]
    value_best: Interval
    efficient: bool
    trace: Tuple[TraceRecord, ...]

    def trace_to_csv(self) -> str:
        n = len(self.trace[0].x)
        out = io.StringIO()
        cols = [f"x{i + 1}" for i in range(n)]
        out.write("iter," + ",".join(cols) + ",f_lo,f_hi,scalarized_value,step\n")
        for rec in self.trace:
            xs = ",".join(f"{v!r}" for v in rec.x)
            out.write(f"{rec.iteration},{xs},{rec.value.lo!r},{rec.value.hi!r},"
                      f"{rec.scalarized!r},{rec.step!r}\n")
        return out.getvalue()

    def write_trace_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(self.trace_to_csv())


def _default_schedule(k: int) -> float:
    return 0.1 / math.sqrt(k + 1)


def _subgradient_at(f: Ivf, x: np.ndarray, grid: Grid,
                    cfg: WMapConfig) -> IVector:
    """Gradient when it exists, else a kink subgradient.

    At a kink the feasible (g_lo, g_hi) box is derived analytically from
    the grid constraints and the feasible candidate closest to the zero
    vector is returned, so the iteration stalls exactly when the zero
    vector is itself a subgradient.
    """
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OneSidedDifferenceWarning)
            grad = gh_gradient(f, x)
        ok, _ = is_subgradient(f, SubgradientCandidate(grad, tuple(x)), grid)
        if ok:
            return grad
    except NonFiniteDerivative:
        pass
    if f.arity != 1:
        raise NoSubgradientFound(
            "no verified subgradient at a multivariate kink")
    x0 = float(x[0])
    p_lb, p_ub, q_lb, q_ub = _feasible_box_1d(f, x0, grid, tol=1e-10)
    if p_lb > p_ub or q_lb > q_ub or p_lb > q_ub:
        raise NoSubgradientFound(f"empty feasible region at {x0}")
    # feasible candidate closest to the zero vector: clip per endpoint,
    # fall back to the diagonal when the clipped pair is out of order
    p = min(max(0.0, p_lb), p_ub)
    q = min(max(0.0, q_lb), q_ub)
    if p > q:
        t = min(max(0.0, max(p_lb, q_lb)), min(p_ub, q_ub))
        p = q = t
    cand = SubgradientCandidate(IVector.of(Interval(p, q)), (x0,))
    ok, witness = is_subgradient(f, cand, grid, tol=2e-10)
    if not ok:
        raise NoSubgradientFound(
            f"kink candidate failed verification at {witness}")
    return cand.g


def scalarized_descent(p: Iop, x0, cfg: WMapConfig = WMapConfig(),
                       step_schedule=None, iters: int = 600,
                       grid: Optional[Grid] = None) -> DescentResult:
    """Projected subgradient iteration on the scalarized objective.

    Moves along the negated scalarization of a verified subgradient with
    the given step schedule (default 0.1/sqrt(k+1)), projecting onto the
    domain box.  Stops early when the scalarized subgradient vanishes.
    Returns the dominance-minimal trace iterate (scalarized value breaks
    ties among mutually incomparable candidates) plus its efficiency
    flag and the full trace.
    """
    f = p.objective
    if step_schedule is None:
        step_schedule = _default_schedule
    if grid is None:
        grid = f.grid()
    x = np.asarray(x0, dtype=float).ravel()
    if not f.contains(x):
        raise OutOfDomain(f"{x.tolist()} is outside the domain")
    lower = np.array([l for l, _ in f.domain])
    upper = np.array([u for _, u in f.domain])
    trace: List[TraceRecord] = []
    for k in range(iters):
        value = f.eval(x)
        scalar = cfg.w * value.lo + cfg.w_prime * value.hi
        g = _subgradient_at(f, x, grid, cfg)
        direction = np.array(w_map(g, cfg))
        step = step_schedule(k)
        trace.append(TraceRecord(k, tuple(float(v) for v in x), value,
                                 scalar, step))
        if float(np.max(np.abs(direction))) <= 1e-12:
            break
        x = np.clip(x - step * direction, lower, upper)
    best = _dominance_minimal(trace)
    report = efficient_on_grid(p, grid)
    flagged = report.is_flagged_near(best.x)
    return DescentResult(best.x, best.value, flagged, tuple(trace))


def _dominance_minimal(trace: Sequence[TraceRecord]) -> TraceRecord:
    # keep iterates whose value no other iterate strictly dominates,
    # then pick the smallest scalarized value for determinism
    lo = np.array([r.value.lo for r in trace])
    hi = np.array([r.value.hi for r in trace])
    dominated = np.zeros(len(trace), dtype=bool)
    for j in range(len(trace)):
        dominated[j] = bool(np.any(
            (lo <= lo[j]) & (hi <= hi[j]) & ((lo < lo[j]) | (hi < hi[j]))))
    candidates = [r for r, d in zip(trace, dominated) if not d]
    return min(candidates, key=lambda r: (r.scalarized, r.iteration))
