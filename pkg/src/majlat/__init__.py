"""Majorization lattice, l-infinity ball extremes and approximate majorization."""

from .core import (
    LorenzCurve,
    ProbVector,
    format_scalar,
    from_partial_sums,
    lorenz_curve,
    lorenz_eval,
    make_prob_vector,
    partial_sums,
    to_scalar,
    top,
    uniform,
)
from .lattice import (
    MajOrdering,
    VectorSet,
    Verdict,
    compare,
    infimum,
    join,
    majorizes,
    meet,
    supremum,
    upper_envelope,
)

__version__ = "0.1.0"
