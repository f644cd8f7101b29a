"""Namings of points in the convex hull of the truncated moment curve."""

from .core import (
    DEFAULT_TOL,
    MAX_N,
    Atom,
    Interval,
    MomentPoint,
    Naming,
    Parity,
    Tolerances,
    boundary_count,
    evaluate,
    index,
    is_proper,
    is_reducible,
    lift,
)
from .errors import *  # noqa: F401,F403
from .principal import MembershipVerdict, Verdict, membership, principal_from_moments
from .pvmat import PVMatrix, det_lu, det_recursive
from .reduction import (
    CanonicalNaming,
    canonicalize,
    caratheodory_linear_reduce,
    equivalent,
    reduce_to_principal,
    simplify_once,
)
from .transform import PolyCurve, name_on_curve, pull_point, push_naming

__version__ = "0.1.0"
