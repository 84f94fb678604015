"""Canned example functions used across tests, scripts and the CLI.

Each builder returns an Ivf whose boundary functions have simple closed
forms, stated in the docstrings; tests check the evaluator against those
forms directly.
"""

from __future__ import annotations

from .ivf import Ivf

QUARTIC_TEXT = "[1,1]*pow4(x1) + [0,1]*(pow2(x1) - pow4(x1) + 34) + [1,6]"
QUARTIC_DOMAIN = ((0.0, 2.5),)

ABS_SLAB_TEXT = "abs(x1)*[1,3]"
ABS_SLAB_DOMAIN = ((-2.0, 2.0),)

PIECEWISE_VEE_TEXT = (
    "piecewise{"
    " x1 >= 1 and x1 <= 3 => [-2,5] ghsub [-1,0]*abs(x1 - 2);"
    " x1 <= 1 => [-2,3] + [1,2]*abs(x1 - 2);"
    " x1 >= 3 => [-2,3] + [1,2]*abs(x1 - 2);"
    " }"
)
PIECEWISE_VEE_DOMAIN = ((-2.0, 6.0),)

SMOOTH_PARABOLIC_TEXT = "[1,2]*pow2(x1) - [0,2]*(x1 + 1) + [4,6]"
SMOOTH_PARABOLIC_DOMAIN = ((-1.0, 2.0),)


def quartic_ivf() -> Ivf:
    """Boundary functions [x^4 + 1, x^2 + 40] on [0, 2.5].

    The middle interval coefficient multiplies x^2 - x^4 + 34, which is
    positive on the domain, so the endpoints stay in closed form.
    """
    return Ivf.from_text(1, QUARTIC_TEXT, QUARTIC_DOMAIN)


def abs_slab_ivf() -> Ivf:
    """Boundary functions [|x|, 3|x|] on [-2, 2]; kinked at the origin."""
    return Ivf.from_text(1, ABS_SLAB_TEXT, ABS_SLAB_DOMAIN)


def piecewise_vee_ivf() -> Ivf:
    """Boundary functions [|x - 2| - 2, max(5, 3 + 2|x - 2|)] on [-2, 6].

    Defined piecewise: a gH-difference flattens the upper boundary to 5
    on [1, 3] while the outer pieces grow linearly.  Both closed guards
    meet at x = 1 and x = 3 where the pieces agree ([-1, 5]).
    """
    return Ivf.from_text(1, PIECEWISE_VEE_TEXT, PIECEWISE_VEE_DOMAIN)


def smooth_parabolic_ivf() -> Ivf:
    """Boundary functions [x^2 - 2x + 2, 2x^2 + 6] on [-1, 2].

    x + 1 is nonnegative on the domain, so the subtracted term is
    [0, 2(x+1)] and the Moore difference lands exactly on the two
    parabolas.  Smooth on the whole domain; the derivative is
    [2x - 2, 4x] for x > -1.
    """
    return Ivf.from_text(1, SMOOTH_PARABOLIC_TEXT, SMOOTH_PARABOLIC_DOMAIN)
