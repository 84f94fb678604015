"""Interval-valued functions on compact box domains.

Wraps an expression tree with an arity and a domain box, and provides the
numeric calculus used throughout: boundary extraction, gH-derivatives
(one-dimensional, partial, gradient, directional) and sampled diagnostics
for convexity, continuity and Lipschitz behaviour.

All derivative verdicts are numeric.  Boundary functions are differenced
separately and recombined as [min, max] of the two slopes; a function whose
boundary slopes disagree between the two sides of a point is reported as
non-differentiable rather than silently averaged.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import NoConvergence, NonFiniteDerivative, OutOfDomain
from .expr import Expr, eval_lo_hi, parse_expr
from .interval import Interval
from .ivector import IVector

_DOMAIN_TOL = 1e-9

# numeric differentiation defaults: relative initial step, two Richardson
# refinements; kink threshold is relative to the derivative scale
_FD_STEP_SCALE = 1e-4
_KINK_REL_TOL = 1e-4

# directional-derivative refinement schedule
_DIR_LAMBDA0 = 1e-2
_DIR_RATIO = 0.5
_DIR_TOL = 1e-7
_DIR_MAX_REFINES = 40


class OneSidedDifferenceWarning(UserWarning):
    """Derivative was taken at a domain boundary with a one-sided stencil."""


@dataclass(frozen=True)
class Grid:
    """Rectangular sampling of a box: per-axis bounds and sample counts."""

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    counts: Tuple[int, ...]

    def __post_init__(self):
        if not (len(self.lower) == len(self.upper) == len(self.counts)):
            raise ValueError("axis arrays must have equal lengths")
        if any(c < 2 for c in self.counts):
            raise ValueError("need at least 2 samples per axis")
        if any(l >= u for l, u in zip(self.lower, self.upper)):
            raise ValueError("each axis needs lower < upper")

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def step(self) -> Tuple[float, ...]:
        return tuple((u - l) / (c - 1)
                     for l, u, c in zip(self.lower, self.upper, self.counts))

    def axes(self) -> List[np.ndarray]:
        return [np.linspace(l, u, c)
                for l, u, c in zip(self.lower, self.upper, self.counts)]

    def points(self) -> np.ndarray:
        """All grid nodes as an (N, dim) array in row-major axis order."""
        axes = self.axes()
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    @classmethod
    def on_domain(cls, domain: Sequence[Tuple[float, float]],
                  counts_per_axis) -> "Grid":
        if isinstance(counts_per_axis, int):
            counts = tuple(counts_per_axis for _ in domain)
        else:
            counts = tuple(counts_per_axis)
        lower = tuple(float(l) for l, _ in domain)
        upper = tuple(float(u) for _, u in domain)
        return cls(lower, upper, counts)


@dataclass(frozen=True)
class Ivf:
    """Interval-valued function: arity, expression body, compact box domain."""

    arity: int
    body: Expr
    domain: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        domain = tuple((float(l), float(u)) for l, u in self.domain)
        if len(domain) != self.arity:
            raise ValueError("domain box must have one (lo, hi) pair per axis")
        if any(l > u for l, u in domain):
            raise ValueError("domain bounds must satisfy lo <= hi")
        if self.body.arity_floor() > self.arity:
            raise ValueError("expression references a variable beyond the arity")
        object.__setattr__(self, "domain", domain)

    @classmethod
    def from_text(cls, arity: int, text: str,
                  domain: Sequence[Tuple[float, float]]) -> "Ivf":
        return cls(arity, parse_expr(text), tuple(domain))

    def _as_points(self, x) -> np.ndarray:
        arr = np.atleast_2d(np.asarray(x, dtype=float))
        if arr.shape[1] != self.arity:
            raise ValueError(f"expected points of dimension {self.arity}")
        return arr

    def contains(self, x) -> bool:
        arr = self._as_points(x)
        for i, (l, u) in enumerate(self.domain):
            tol = _DOMAIN_TOL * (1.0 + abs(l) + abs(u))
            if np.any(arr[:, i] < l - tol) or np.any(arr[:, i] > u + tol):
                return False
        return True

    def eval_many(self, xs: np.ndarray,
                  check_domain: bool = True) -> Tuple[np.ndarray, np.ndarray]:
        xs = self._as_points(xs)
        if check_domain and not self.contains(xs):
            raise OutOfDomain("evaluation point outside the domain box")
        return eval_lo_hi(self.body, xs)

    def eval(self, x) -> Interval:
        lo, hi = self.eval_many(x)
        return Interval(float(lo[0]), float(hi[0]))

    def boundary(self, x) -> Tuple[float, float]:
        """Endpoints (f_lo, f_hi) of the interval value at x."""
        value = self.eval(x)
        return value.lo, value.hi

    def grid(self, counts_per_axis=201) -> Grid:
        return Grid.on_domain(self.domain, counts_per_axis)


# --------------------------------------------------------------------------
# gH-derivatives
# --------------------------------------------------------------------------


def _line_sampler(f: Ivf, x: np.ndarray, direction: np.ndarray) -> Callable:
    """Sampler t -> boundary values of f along x + t*direction."""
    def sample(ts: np.ndarray):
        pts = x[None, :] + np.asarray(ts, dtype=float)[:, None] * direction[None, :]
        return f.eval_many(pts)
    return sample


def _deriv_1d_from_sampler(sample, t: float, span: Tuple[float, float],
                           scale: float) -> Interval:
    """Differentiate both boundary functions of a 1-d sampler at t.

    Central differences with two Richardson refinements in the interior;
    second-order one-sided stencils (with a warning) at span boundaries.
    Raises when the two one-sided slopes disagree, which signals a kink.
    """
    h0 = _FD_STEP_SCALE * (1.0 + abs(t)) * max(scale, 1.0)
    lo_edge = t - h0 * 1.001 < span[0]
    hi_edge = t + h0 * 1.001 > span[1]
    if lo_edge and hi_edge:
        raise NonFiniteDerivative("domain too small for the difference stencil")
    if lo_edge or hi_edge:
        warnings.warn("one-sided difference used at a domain boundary",
                      OneSidedDifferenceWarning, stacklevel=3)
        sgn = 1.0 if lo_edge else -1.0
        d_los, d_his = [], []
        for h in (h0, h0 / 2.0):
            ts = np.array([t, t + sgn * h, t + 2.0 * sgn * h])
            lo, hi = sample(ts)
            d_los.append(sgn * (-3.0 * lo[0] + 4.0 * lo[1] - lo[2]) / (2.0 * h))
            d_his.append(sgn * (-3.0 * hi[0] + 4.0 * hi[1] - hi[2]) / (2.0 * h))
        d_lo = (4.0 * d_los[1] - d_los[0]) / 3.0
        d_hi = (4.0 * d_his[1] - d_his[0]) / 3.0
    else:
        offsets = np.array([-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0]) * h0
        lo, hi = sample(t + offsets)
        d_lo = _central_richardson(lo, h0)
        d_hi = _central_richardson(hi, h0)
        _check_no_kink(lo, h0, d_lo, "lower boundary")
        _check_no_kink(hi, h0, d_hi, "upper boundary")
    if not (math.isfinite(d_lo) and math.isfinite(d_hi)):
        raise NonFiniteDerivative("difference quotients diverged")
    return Interval(min(d_lo, d_hi), max(d_lo, d_hi))


def _central_richardson(vals: np.ndarray, h: float) -> float:
    # vals sampled at offsets (-h, -h/2, -h/4, 0, h/4, h/2, h)
    d_h = (vals[6] - vals[0]) / (2.0 * h)
    d_h2 = (vals[5] - vals[1]) / h
    d_h4 = (vals[4] - vals[2]) / (0.5 * h)
    r1 = (4.0 * d_h2 - d_h) / 3.0
    r2 = (4.0 * d_h4 - d_h2) / 3.0
    return (16.0 * r2 - r1) / 15.0


def _check_no_kink(vals: np.ndarray, h: float, deriv: float, label: str) -> None:
    # forward minus backward quotient extrapolated to step 0: nonzero limit
    # means the one-sided derivatives differ.
    center = vals[3]
    delta_h = ((vals[6] - center) / h) - ((center - vals[0]) / h)
    delta_h2 = ((vals[5] - center) / (0.5 * h)) - ((center - vals[1]) / (0.5 * h))
    jump = 2.0 * delta_h2 - delta_h
    if abs(jump) > _KINK_REL_TOL * (1.0 + abs(deriv)):
        raise NonFiniteDerivative(
            f"{label} has mismatched one-sided slopes (jump ~ {jump:.3g})"
        )


def gh_derivative_1d(f: Ivf, x: float) -> Interval:
    """gH-derivative of a one-variable function at x."""
    if f.arity != 1:
        raise ValueError("gh_derivative_1d needs a one-variable function")
    if not f.contains([x]):
        raise OutOfDomain(f"{x} is outside the domain")
    sample = _line_sampler(f, np.array([float(x)]), np.array([1.0]))
    return _deriv_1d_from_sampler(lambda ts: sample(ts - x),
                                  float(x), f.domain[0], 1.0)


def partial_gh_derivative(f: Ivf, x, i: int) -> Interval:
    """i-th partial gH-derivative (0-based axis index) at x."""
    x = np.asarray(x, dtype=float).ravel()
    if not f.contains(x):
        raise OutOfDomain(f"{x.tolist()} is outside the domain")
    direction = np.zeros(f.arity)
    direction[i] = 1.0
    sample = _line_sampler(f, x, direction)
    span = (f.domain[i][0] - x[i], f.domain[i][1] - x[i])
    return _deriv_1d_from_sampler(sample, 0.0, span, 1.0 + abs(x[i]))


def gh_gradient(f: Ivf, x) -> IVector:
    """Vector of partial gH-derivatives over all axes."""
    return IVector(tuple(partial_gh_derivative(f, x, i) for i in range(f.arity)))


def directional_gh_derivative(f: Ivf, x, h) -> Interval:
    """One-sided directional gH-derivative at x in direction h.

    Estimated with a geometric step refinement plus endpoint-wise linear
    extrapolation; stops when successive extrapolants differ by less than
    the tolerance in the interval norm.
    """
    x = np.asarray(x, dtype=float).ravel()
    h = np.asarray(h, dtype=float).ravel()
    if not f.contains(x):
        raise OutOfDomain(f"{x.tolist()} is outside the domain")
    lam_max = _max_feasible_step(f, x, h)
    if lam_max <= 1e-14:
        raise OutOfDomain("direction leaves the domain immediately")
    f0_lo, f0_hi = f.eval_many(x[None, :])
    lam = min(_DIR_LAMBDA0, 0.5 * lam_max)
    prev_quot = None
    prev_extrap = None
    for _ in range(_DIR_MAX_REFINES):
        lo, hi = f.eval_many(x[None, :] + lam * h[None, :])
        d_lo = lo[0] - f0_lo[0]
        d_hi = hi[0] - f0_hi[0]
        quot = (min(d_lo, d_hi) / lam, max(d_lo, d_hi) / lam)
        if prev_quot is not None:
            extrap = (2.0 * quot[0] - prev_quot[0], 2.0 * quot[1] - prev_quot[1])
            extrap = (min(extrap), max(extrap))
            if prev_extrap is not None:
                drift = max(abs(extrap[0] - prev_extrap[0]),
                            abs(extrap[1] - prev_extrap[1]))
                if drift < _DIR_TOL:
                    return Interval(extrap[0], extrap[1])
            prev_extrap = extrap
        prev_quot = quot
        lam *= _DIR_RATIO
    raise NoConvergence("directional derivative estimate did not settle")


def _max_feasible_step(f: Ivf, x: np.ndarray, h: np.ndarray) -> float:
    lam = math.inf
    for i in range(f.arity):
        if h[i] > 0:
            lam = min(lam, (f.domain[i][1] - x[i]) / h[i])
        elif h[i] < 0:
            lam = min(lam, (f.domain[i][0] - x[i]) / h[i])
    return lam if math.isfinite(lam) else 1.0


# --------------------------------------------------------------------------
# Sampled diagnostics
# --------------------------------------------------------------------------


def is_convex_sampled(f: Ivf, grid: Grid,
                      lambdas: Sequence[float] = (0.25, 0.5, 0.75),
                      tol: float = 1e-10):
    """Sampled convexity check of F(lam*x1 + lam'*x2) against the mixture.

    Returns (True, None) or (False, (x1, x2, lam)) with a violating triple.
    Sampled evidence only, not a proof.
    """
    pts = grid.points()
    lo, hi = f.eval_many(pts)
    n = pts.shape[0]
    ii, jj = np.triu_indices(n, k=1)
    for lam in lambdas:
        lam_p = 1.0 - lam
        mix = lam * pts[ii] + lam_p * pts[jj]
        mix_lo, mix_hi = f.eval_many(mix, check_domain=False)
        rhs_lo = lam * lo[ii] + lam_p * lo[jj]
        rhs_hi = lam * hi[ii] + lam_p * hi[jj]
        bad = (mix_lo > rhs_lo + tol) | (mix_hi > rhs_hi + tol)
        if bad.any():
            k = int(np.argmax(bad))
            return False, (pts[ii[k]].tolist(), pts[jj[k]].tolist(), lam)
    return True, None


def is_gh_continuous_at(f: Ivf, x, tol: float = 1e-6,
                        radii: Optional[Sequence[float]] = None,
                        n_directions: int = 16) -> bool:
    """Check that the gH-difference norm vanishes along shrinking radii."""
    x = np.asarray(x, dtype=float).ravel()
    if not f.contains(x):
        raise OutOfDomain(f"{x.tolist()} is outside the domain")
    if radii is None:
        radii = [0.1 * 0.5 ** k for k in range(22)]
    if f.arity == 1:
        dirs = np.array([[1.0], [-1.0]])
    else:
        rng = np.random.default_rng(0)
        raw = rng.normal(size=(n_directions, f.arity))
        dirs = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    f0_lo, f0_hi = f.eval_many(x[None, :])
    tail = []
    for r in radii:
        pts = x[None, :] + r * dirs
        keep = np.ones(pts.shape[0], dtype=bool)
        for i, (l, u) in enumerate(f.domain):
            keep &= (pts[:, i] >= l) & (pts[:, i] <= u)
        if not keep.any():
            continue
        lo, hi = f.eval_many(pts[keep])
        dev = np.maximum(np.abs(lo - f0_lo[0]), np.abs(hi - f0_hi[0]))
        tail.append(float(dev.max()))
    return len(tail) >= 2 and max(tail[-2:]) < tol


def lipschitz_estimate(f: Ivf, grid: Grid) -> float:
    """Max over grid pairs of the gH-difference norm over the point distance.

    A lower bound on the true Lipschitz constant.
    """
    pts = grid.points()
    lo, hi = f.eval_many(pts)
    n = pts.shape[0]
    ii, jj = np.triu_indices(n, k=1)
    num = np.maximum(np.abs(lo[ii] - lo[jj]), np.abs(hi[ii] - hi[jj]))
    den = np.linalg.norm(pts[ii] - pts[jj], axis=1)
    return float(np.max(num / den))
