"""Large-j structure of the limit densities.

Everything here is for the fixed symmetric setup alpha = gamma = 0 with the
endpoint state (q, 0, ..., 0, conj(q)), q = (1+i)/2.  As j grows the limit
density flattens between its pikes and turns concave down at the origin;
the operations below quantify that: the closed-form second derivative at
v = 0, the j beyond which it stays negative, the weight each channel puts
on its own pike (whose zeros wipe the interior pikes out), and the
rescaling to the fixed support (-1, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import LimitSpec, continuous_density, weight_matrix_direct, weight_scalar
from .errors import DegenerateSpecError, DomainError
from .halfint import HalfInt, walk_index
from .qudit import preset_qudit

__all__ = [
    "curvature_at_origin",
    "ConvexityReport",
    "critical_j",
    "pike_weight",
    "pike_weight_paths",
    "pike_zero_region",
    "pike_weight_scaled",
    "rescaled_density",
]


def curvature_at_origin(j, beta: float) -> float:
    """Second derivative of the limit density at v = 0, in closed form."""
    tj = walk_index(j)
    beta = float(beta)
    if not 0.0 < beta < math.pi:
        raise DomainError(f"curvature needs beta in (0, pi), got {beta!r}")
    a = math.cos(0.5 * beta)
    inv2 = 1.0 / (a * a)
    terms = [
        (2.0 + inv2 + (tm * tm - tj))
        * math.comb(tj, (tj + tm) // 2)
        * 2.0 ** (1 - tj)
        / tm**3
        for tm in range(2 - tj % 2, tj + 1, 2)
    ]
    return math.sqrt(1.0 - a * a) / (math.pi * a) * math.fsum(terms)


@dataclass(frozen=True)
class ConvexityReport:
    """Curvatures at the origin over a range of j at fixed beta.

    ``j_critical`` is the smallest tested j from which the curvature stays
    negative through the end of the tested range, or None if the last row
    is still nonnegative.
    """

    beta: float
    rows: tuple
    j_critical: HalfInt | None


def critical_j(beta: float, j_max) -> ConvexityReport:
    tmax = walk_index(j_max)
    rows = [(HalfInt(tj), curvature_at_origin(HalfInt(tj), beta)) for tj in range(1, tmax + 1)]
    jc = None
    for jv, d2 in reversed(rows):
        if d2 < 0.0:
            jc = jv
        else:
            break
    return ConvexityReport(float(beta), tuple(rows), jc)


def _pike_indices(j, m) -> tuple[int, int]:
    tj = walk_index(j)
    tm = HalfInt.parse(m).doubled
    if tm < 1 or tm > tj or (tj - tm) % 2 != 0:
        raise DomainError(f"channel m = {HalfInt(tm)} invalid for j = {HalfInt(tj)}")
    return tj, tm


def pike_weight(j, beta: float, m) -> float:
    """Channel weight at its own pike x = cos(beta/2).

    The alternating double sum defining it splits under a parity projector
    into two same-sign products, so this form has no cancellation and is
    safe out to hundreds of components:

        C(2j, j+m) 2^(-2j) [(1-c)^(j+m) (1+c)^(j-m) + (1+c)^(j+m) (1-c)^(j-m)]
    """
    tj, tm = _pike_indices(j, m)
    c = math.cos(0.5 * float(beta))
    p = (tj + tm) // 2
    q = (tj - tm) // 2
    bracket = (1.0 - c) ** p * (1.0 + c) ** q + (1.0 + c) ** p * (1.0 - c) ** q
    return math.comb(tj, p) * 2.0 ** (-tj) * bracket


def pike_weight_paths(j, beta: float, m) -> tuple[float, float]:
    """(closed form, weight-matrix quadratic form) for the pike weight.

    The second path builds the full hermitian matrix at x = cos(beta/2) and
    contracts it with the symmetric endpoint state; the gap between the two
    numbers is a live accuracy estimate for the matrix machinery.
    """
    tj, tm = _pike_indices(j, m)
    closed = pike_weight(j, beta, m)
    qudit = preset_qudit("paper-sym", HalfInt(tj))
    mat = weight_matrix_direct(
        HalfInt(tj), HalfInt(tm), math.cos(0.5 * float(beta)), beta, 0.0
    )
    return closed, weight_scalar(mat, qudit)


def pike_zero_region(j, beta: float, threshold: float = 1e-8) -> tuple[HalfInt, ...]:
    """Contiguous run of small channels whose pike weight is below threshold.

    Scans m upward from the smallest channel and stops at the first weight
    at or above threshold; an empty tuple means even the innermost pike
    survives.
    """
    tj = walk_index(j)
    run = []
    for tm in range(2 - tj % 2, tj + 1, 2):
        if abs(pike_weight(HalfInt(tj), beta, HalfInt(tm))) < threshold:
            run.append(HalfInt(tm))
        else:
            break
    return tuple(run)


def pike_weight_scaled(j, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Pike weights on the j-independent axis: (m / sigma, sigma * H(m))
    with sigma = sqrt(2) j.  On this scale the region where the weights are
    appreciably nonzero stops moving as j grows."""
    tj = walk_index(j)
    sigma = tj / math.sqrt(2.0)
    tms = np.arange(2 - tj % 2, tj + 1, 2)
    h = np.array([pike_weight(HalfInt(tj), beta, HalfInt(int(tm))) for tm in tms])
    return tms / (2.0 * sigma), sigma * h


def rescaled_density(spec: LimitSpec, u):
    """Continuous limit density of the rescaled pseudovelocity
    X_t / (2 j a t), supported in (-1, 1)."""
    a = spec.a
    if a == 0.0:
        raise DegenerateSpecError("support collapses at a = 0; nothing to rescale")
    s = spec.tj * a
    return s * continuous_density(spec, s * np.asarray(u, dtype=float))
