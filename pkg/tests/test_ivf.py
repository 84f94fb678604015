import warnings

import numpy as np
import pytest

from ghcalc import Grid, Interval, Ivf, OneSidedDifferenceWarning
from ghcalc.errors import NonFiniteDerivative, OutOfDomain
from ghcalc.ivf import (
    directional_gh_derivative,
    gh_derivative_1d,
    gh_gradient,
    is_convex_sampled,
    is_gh_continuous_at,
    lipschitz_estimate,
    partial_gh_derivative,
)
from ghcalc.problems import (
    abs_slab_ivf,
    piecewise_vee_ivf,
    quartic_ivf,
    smooth_parabolic_ivf,
)


# ---------------------------------------------------------------------------
# Grid
# ---------------------------------------------------------------------------


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid((0.0,), (1.0,), (1,))
    with pytest.raises(ValueError):
        Grid((1.0,), (0.0,), (5,))
    with pytest.raises(ValueError):
        Grid((0.0, 0.0), (1.0,), (5, 5))


def test_grid_step_axes_points():
    g = Grid((0.0, -1.0), (1.0, 1.0), (3, 5))
    assert g.dim == 2
    assert g.step == (0.5, 0.5)
    axes = g.axes()
    assert np.allclose(axes[0], [0.0, 0.5, 1.0])
    pts = g.points()
    assert pts.shape == (15, 2)
    # row-major in axis order: the second coordinate varies fastest
    assert np.allclose(pts[0], [0.0, -1.0])
    assert np.allclose(pts[1], [0.0, -0.5])
    assert np.allclose(pts[5], [0.5, -1.0])


def test_grid_on_domain_scalar_count():
    g = Grid.on_domain(((0.0, 2.0), (-1.0, 1.0)), 11)
    assert g.counts == (11, 11)


# ---------------------------------------------------------------------------
# Ivf basics
# ---------------------------------------------------------------------------


def test_ivf_construction_checks():
    with pytest.raises(ValueError):
        Ivf.from_text(1, "x1 + x2", ((0.0, 1.0),))
    with pytest.raises(ValueError):
        Ivf.from_text(2, "x1", ((0.0, 1.0),))
    with pytest.raises(ValueError):
        Ivf.from_text(1, "x1", ((1.0, 0.0),))


def test_eval_known_values():
    q = quartic_ivf()
    assert q.eval((1.0,)) == Interval(2.0, 41.0)
    assert q.eval((2.0,)) == Interval(17.0, 44.0)
    p = smooth_parabolic_ivf()
    assert p.eval((0.0,)) == Interval(2.0, 6.0)
    assert p.eval((1.0,)) == Interval(1.0, 8.0)
    assert p.boundary((0.0,)) == (2.0, 6.0)


def test_eval_rejects_points_outside_domain():
    q = quartic_ivf()
    assert q.contains((2.5,))
    assert not q.contains((2.6,))
    with pytest.raises(OutOfDomain):
        q.eval((3.0,))
    with pytest.raises(ValueError):
        q.eval((1.0, 1.0))


def test_eval_many_is_vectorized():
    f = abs_slab_ivf()
    xs = np.linspace(-2.0, 2.0, 9)[:, None]
    lo, hi = f.eval_many(xs)
    assert np.allclose(lo, np.abs(xs[:, 0]))
    assert np.allclose(hi, 3.0 * np.abs(xs[:, 0]))


# ---------------------------------------------------------------------------
# Derivatives
# ---------------------------------------------------------------------------


def test_gh_derivative_quartic():
    d = gh_derivative_1d(quartic_ivf(), 1.0)
    assert abs(d.lo - 2.0) < 1e-6
    assert abs(d.hi - 4.0) < 1e-6


def test_gh_derivative_constant_is_zero():
    f = Ivf.from_text(1, "[1,2]", ((-1.0, 1.0),))
    d = gh_derivative_1d(f, 0.3)
    assert abs(d.lo) < 1e-9 and abs(d.hi) < 1e-9


def test_gh_derivative_detects_kinks():
    with pytest.raises(NonFiniteDerivative):
        gh_derivative_1d(abs_slab_ivf(), 0.0)
    with pytest.raises(NonFiniteDerivative):
        gh_derivative_1d(piecewise_vee_ivf(), 2.0)


def test_one_sided_stencil_warns_at_boundary():
    q = quartic_ivf()
    with pytest.warns(OneSidedDifferenceWarning):
        d = gh_derivative_1d(q, 0.0)
    assert abs(d.lo) < 1e-5 and abs(d.hi) < 1e-5


def test_partials_and_gradient_of_linear():
    f = Ivf.from_text(2, "[1,2]*x1 + [0,1]*x2", ((-1.0, 1.0), (-1.0, 1.0)))
    d1 = partial_gh_derivative(f, (0.5, 0.25), 0)
    d2 = partial_gh_derivative(f, (0.5, 0.25), 1)
    assert abs(d1.lo - 1.0) < 1e-9 and abs(d1.hi - 2.0) < 1e-9
    assert abs(d2.lo) < 1e-9 and abs(d2.hi - 1.0) < 1e-9
    grad = gh_gradient(f, (0.5, 0.25))
    assert len(grad) == 2 and grad[0] == d1 and grad[1] == d2


def test_directional_derivative_at_a_kink():
    f = abs_slab_ivf()
    for h in (1.0, -1.0):
        d = directional_gh_derivative(f, [0.0], [h])
        assert abs(d.lo - 1.0) < 1e-9 and abs(d.hi - 3.0) < 1e-9


def test_directional_derivative_matches_gradient_when_smooth():
    q = quartic_ivf()
    d = directional_gh_derivative(q, [1.0], [1.0])
    assert abs(d.lo - 2.0) < 1e-5 and abs(d.hi - 4.0) < 1e-5


def test_directional_derivative_needs_room():
    with pytest.raises(OutOfDomain):
        directional_gh_derivative(abs_slab_ivf(), [2.0], [1.0])


# ---------------------------------------------------------------------------
# Sampled diagnostics
# ---------------------------------------------------------------------------


def test_convexity_check_accepts_the_examples():
    for f in (quartic_ivf(), abs_slab_ivf(), piecewise_vee_ivf(),
              smooth_parabolic_ivf()):
        ok, witness = is_convex_sampled(f, f.grid(21))
        assert ok and witness is None


def test_convexity_check_rejects_a_concave_band():
    f = Ivf.from_text(1, "0 - pow2(x1) + [0,1]", ((-1.0, 1.0),))
    ok, witness = is_convex_sampled(f, f.grid(21))
    assert not ok
    x1, x2, lam = witness
    assert len(x1) == 1 and len(x2) == 1 and 0.0 < lam < 1.0


def test_gh_continuity_at_a_kink_and_across_a_jump():
    assert is_gh_continuous_at(abs_slab_ivf(), (0.0,))
    # jump of height 2 hidden in an unsampled sliver right of the origin
    step = Ivf.from_text(
        1, "piecewise{ x1 <= 0 => [0,1]; x1 >= 1e-21 => [2,3]; }",
        ((-1.0, 1.0),))
    assert not is_gh_continuous_at(step, (0.0,))


def test_lipschitz_estimate():
    f = Ivf.from_text(1, "[1,2]", ((-1.0, 1.0),))
    assert lipschitz_estimate(f, f.grid(11)) == 0.0
    slab = abs_slab_ivf()
    est = lipschitz_estimate(slab, slab.grid(41))
    assert 2.9 < est <= 3.0 + 1e-12
