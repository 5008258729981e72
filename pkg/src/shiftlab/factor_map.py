"""Exact factor map from the cell model onto its weighted backward shift.

The image of a step function is a sequence whose k-th value is the mean of
the function over the wandering set pulled through k steps, scaled by the
p-th root of the level mass.  Every such value has the shape

    q * rho ** (1/p)

with q and rho rational, so we never extract the root: a value is stored as
the tag pair (q, rho) and two tagged values are compared by cross-powering,
which stays inside the rationals.  On these tagged sequences the derived
backward shift acts exactly, and the intertwining with the composition
operator can be checked with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lp_space import StepFunction, apply_Tf
from .measure_system import MeasureSystem
from .rationals import pow_maybe_exact
from .shift_space import BILATERAL, SeqVector, WeightSequence, derive_weights, lp_norm_seq


@dataclass
class ExactSeqVector:
    """Finitely supported sequence of tagged values q * rho**(1/p).

    Entries with q == 0 are dropped; rho is kept positive so the sign of a
    value is the sign of q.
    """

    p: Fraction
    side: str = BILATERAL
    entries: dict[int, tuple[Fraction, Fraction]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[int, tuple[Fraction, Fraction]] = {}
        for n, (q, rho) in self.entries.items():
            if rho <= 0:
                raise ValueError(f"entry {n}: tag rho must be positive, got {rho}")
            if q != 0:
                cleaned[n] = (q, rho)
        self.entries = cleaned

    def support(self) -> list[int]:
        return sorted(self.entries)

    @staticmethod
    def values_equal(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction], p: Fraction) -> bool:
        """Decide q1 * rho1**(1/p) == q2 * rho2**(1/p) without roots.

        Signs must agree; magnitudes are compared through the p-th power,
        cleared of denominators: with p = x/y the comparison becomes
        |q1|**x * rho1**y == |q2|**x * rho2**y.
        """
        (q1, rho1), (q2, rho2) = a, b
        if (q1 > 0) != (q2 > 0) or (q1 < 0) != (q2 < 0):
            return False
        x, y = p.numerator, p.denominator
        return abs(q1) ** x * rho1**y == abs(q2) ** x * rho2**y

    def equals(self, other: "ExactSeqVector") -> bool:
        if self.p != other.p or self.side != other.side:
            return False
        if set(self.entries) != set(other.entries):
            return False
        return all(
            self.values_equal(self.entries[n], other.entries[n], self.p)
            for n in self.entries
        )

    def collapse(self) -> SeqVector:
        """Float view, rooting each tag."""
        return SeqVector(
            self.side,
            {
                n: complex(float(q) * float(pow_maybe_exact(rho, 1 / self.p)))
                for n, (q, rho) in self.entries.items()
            },
        )


def project(system: MeasureSystem, phi: StepFunction) -> ExactSeqVector:
    """Factor map: level k contributes the tag

        q_k = (sum over cells of coefficient * cell mass at level 0) / mass of W
        rho_k = mass of level k.

    Coefficients must be rational; float data has no exact image.
    """
    for key, v in phi.coeffs.items():
        if not isinstance(v, (Fraction, int)):
            raise TypeError(f"coefficient at {key} is not rational; exact projection needs Fraction data")
    mu_w = system.mu_W(0)
    entries: dict[int, tuple[Fraction, Fraction]] = {}
    for k in phi.levels():
        q = sum(
            (Fraction(phi.value(k, i)) * system.mu_cell(0, i) for i in range(len(system.cells))),
            Fraction(0),
        ) / mu_w
        if q != 0:
            entries[k] = (q, system.mu_W(k))
    return ExactSeqVector(p=system.p, side=BILATERAL, entries=entries)


def tagged_backward(w: WeightSequence, x: ExactSeqVector, steps: int = 1) -> ExactSeqVector:
    """Weighted backward shift on tagged values: folding one weight into a
    value multiplies its rho tag by the weight's p-th power."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if w.side != x.side:
        raise ValueError(f"weight side {w.side} does not match vector side {x.side}")
    out: dict[int, tuple[Fraction, Fraction]] = {}
    for j, (q, rho) in x.entries.items():
        n = j - steps
        if w.side != BILATERAL and n < 0:
            continue
        factor = Fraction(1)
        for nu in range(n + 1, j + 1):
            factor *= w.wp_at(nu)
        out[n] = (q, rho * factor)
    return ExactSeqVector(p=x.p, side=x.side, entries=out)


def semiconjugacy_defect(
    system: MeasureSystem,
    phi: StepFunction,
    w: WeightSequence | None = None,
) -> Fraction | float:
    """Distance between projecting after the composition operator and
    shifting after projecting.

    Exactly zero (a Fraction) whenever the tagged sequences agree entry by
    entry, which the model guarantees; otherwise the float p-norm of the
    collapsed difference is returned.
    """
    if w is None:
        w = derive_weights(system)
    lhs = project(system, apply_Tf(phi))
    rhs = tagged_backward(w, project(system, phi))
    if lhs.equals(rhs):
        return Fraction(0)
    a, b = lhs.collapse(), rhs.collapse()
    diff = a.plus(b.scaled(-1.0))
    return lp_norm_seq(diff, system.p)
