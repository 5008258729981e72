"""Constructive orbit experiments for weighted backward shifts.

The classical recipe for a vector with a dense orbit sums far-apart
forward-inverse copies of the targets; pushing the sum back to a target's
slot leaves the target plus cross terms killed by the weight products.
Here the schedule is an arithmetic ramp whose gap doubles until every
cross term fits the budget, checked a posteriori by direct iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import HorizonExhausted
from .shift_space import (
    SeqVector,
    WeightSequence,
    apply_backward,
    apply_forward_inverse,
    lp_norm_seq,
)


@dataclass
class HCApproxResult:
    gap: int
    schedule: tuple[int, ...]
    vector: SeqVector
    defects: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "gap": self.gap,
            "schedule": list(self.schedule),
            "vector": self.vector.to_dict(),
            "defects": list(self.defects),
        }


def construct_hc_approx(
    w: WeightSequence,
    targets: Sequence[SeqVector],
    *,
    eps: float = 1e-2,
    horizon: int = 64,
) -> HCApproxResult:
    """Vector x and steps m_1 < ... < m_J with the m_j-fold backward shift
    of x within eps of target j, all steps <= horizon.

    x sums the m_j-fold forward-inverse images of the targets over an
    arithmetic schedule with gap g; g doubles until every defect, computed
    by actually iterating the shift, is at most eps.  Raises
    HorizonExhausted when no gap fits the horizon.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    count = len(targets)
    if count == 0 or all(not y.entries for y in targets):
        # the zero vector already sits on every target, starting at step 0
        zero = SeqVector(w.side, {})
        return HCApproxResult(0, tuple(range(count)), zero, (0.0,) * count)
    gap = 1
    while gap * count <= horizon:
        schedule = tuple(gap * (j + 1) for j in range(count))
        x = SeqVector(w.side, {})
        for m, y in zip(schedule, targets):
            x = x.plus(apply_forward_inverse(w, y, m))
        defects = tuple(
            lp_norm_seq(apply_backward(w, x, m).plus(y.scaled(-1)), w.p)
            for m, y in zip(schedule, targets)
        )
        if all(d <= eps for d in defects):
            return HCApproxResult(gap, schedule, x, defects)
        gap *= 2
    raise HorizonExhausted(
        f"no gap with {count} targets fits within {horizon} steps at eps={eps}"
    )


@dataclass
class OrbitHit:
    target_index: int
    best_step: int
    best_distance: float
    hit: bool

    def to_dict(self) -> dict:
        return {
            "target_index": self.target_index,
            "best_step": self.best_step,
            "best_distance": self.best_distance,
            "hit": self.hit,
        }


@dataclass
class OrbitDensityReport:
    fraction: float
    hits: tuple[OrbitHit, ...]

    def to_dict(self) -> dict:
        return {
            "fraction": self.fraction,
            "hits": [h.to_dict() for h in self.hits],
        }


def orbit_density_report(
    w: WeightSequence,
    x: SeqVector,
    targets: Sequence[SeqVector],
    *,
    eps: float = 1e-2,
    horizon: int = 64,
) -> OrbitDensityReport:
    """How much of the target list the finite orbit of x visits.

    For each target the closest of x, Bx, ..., B^horizon x is recorded; a
    target is hit when the distance is at most eps.  The fraction of hits
    is a finite-orbit stand-in for orbit density.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    best: list[tuple[int, float]] = [(0, float("inf"))] * len(targets)
    current = x
    for t in range(horizon + 1):
        for idx, y in enumerate(targets):
            d = lp_norm_seq(current.plus(y.scaled(-1)), w.p)
            if d < best[idx][1]:
                best[idx] = (t, d)
        if t < horizon:
            current = apply_backward(w, current, 1)
    hits = tuple(
        OrbitHit(idx, step, dist, dist <= eps)
        for idx, (step, dist) in enumerate(best)
    )
    fraction = (
        sum(1 for h in hits if h.hit) / len(hits) if hits else 1.0
    )
    return OrbitDensityReport(fraction, hits)
