"""Weighted backward shifts with exact weight bookkeeping.

Weights are stored through their p-th powers, which stay rational for every
sequence this package derives from a cell model (the power of the weight at
index k is the measure ratio of levels k-1 and k).  Roots are taken only at
the float boundary, or exactly when the power happens to be a perfect one.

A weight sequence holds an explicit block of powers on [lo, hi] plus an
optional periodic tail per side.  ``hi == lo - 1`` is allowed and means the
tails carry everything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, TailRuleMissing
from .measure_system import MeasureSystem
from .rationals import pow_maybe_exact

BILATERAL = "bilateral"
UNILATERAL = "unilateral"


@dataclass(frozen=True)
class WeightSequence:
    """Positive weight sequence, indexed over Z (bilateral) or n >= 1
    (unilateral), given through exact p-th powers."""

    p: Fraction
    side: str
    lo: int
    hi: int
    wp: dict[int, Fraction]
    left_tail: tuple[Fraction, ...] | None = None
    right_tail: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ConfigError(f"p: must be >= 1, got {self.p}")
        if self.side not in (BILATERAL, UNILATERAL):
            raise ConfigError(f"side: expected bilateral or unilateral, got {self.side!r}")
        if self.hi < self.lo - 1:
            raise ConfigError("weights: hi may not drop below lo - 1")
        if set(self.wp) != set(range(self.lo, self.hi + 1)):
            raise ConfigError("weights: explicit powers must cover [lo, hi] exactly")
        for k, v in self.wp.items():
            if v <= 0:
                raise ConfigError(f"weights: power at {k} must be positive, got {v}")
        for name, tail in (("left", self.left_tail), ("right", self.right_tail)):
            if tail is not None:
                if not tail:
                    raise ConfigError(f"weights: {name} tail must be nonempty")
                if any(v <= 0 for v in tail):
                    raise ConfigError(f"weights: {name} tail values must be positive")
        if self.side == UNILATERAL:
            if self.lo != 1:
                raise ConfigError("weights: a unilateral sequence starts at index 1")
            if self.left_tail is not None:
                raise ConfigError("weights: a unilateral sequence has no left tail")

    def wp_at(self, k: int) -> Fraction:
        """p-th power of the weight at index k."""
        if self.side == UNILATERAL and k < 1:
            raise ValueError(f"unilateral weights are indexed from 1, got {k}")
        if self.lo <= k <= self.hi:
            return self.wp[k]
        if k > self.hi:
            if self.right_tail is None:
                raise TailRuleMissing(f"weight index {k} lies beyond hi and no tail rule is set")
            return self.right_tail[(k - self.hi - 1) % len(self.right_tail)]
        if self.left_tail is None:
            raise TailRuleMissing(f"weight index {k} lies below lo and no tail rule is set")
        return self.left_tail[(self.lo - 1 - k) % len(self.left_tail)]

    def weight_at(self, k: int) -> Fraction | float:
        """The weight itself, exact when its p-th root is rational."""
        return pow_maybe_exact(self.wp_at(k), 1 / self.p)

    def has_tail_rules(self) -> bool:
        if self.side == UNILATERAL:
            return self.right_tail is not None
        return self.left_tail is not None and self.right_tail is not None

    def restrict_unilateral(self) -> "WeightSequence":
        """Forget everything at indices < 1 and reindex nothing."""
        if self.side == UNILATERAL:
            return self
        hi = max(self.hi, 0)
        return WeightSequence(
            p=self.p,
            side=UNILATERAL,
            lo=1,
            hi=hi,
            wp={k: self.wp_at(k) for k in range(1, hi + 1)},
            right_tail=self.right_tail,
        )


def derive_weights(system: MeasureSystem) -> WeightSequence:
    """Weight sequence of the backward shift the cell model factors onto.

    The p-th power at index k is the measure ratio of level k-1 to level k,
    so outside the window the powers are constant: the left tail ratio on
    the left and the reciprocal of the right tail ratio on the right.
    """
    system.validate_star()
    lo, hi = system.k_min + 1, system.k_max
    wp = {k: system.mu_W(k - 1) / system.mu_W(k) for k in range(lo, hi + 1)}
    left = right = None
    if system.has_tails:
        assert system.left_tail is not None and system.right_tail is not None
        left = (system.left_tail,)
        right = (1 / system.right_tail,)
    return WeightSequence(
        p=system.p, side=BILATERAL, lo=lo, hi=hi, wp=wp,
        left_tail=left, right_tail=right,
    )


def wp_product(w: WeightSequence, i: int, j: int) -> Fraction:
    """Exact product of weight powers over the inclusive block [i, j];
    empty blocks give 1."""
    out = Fraction(1)
    for k in range(i, j + 1):
        out *= w.wp_at(k)
    return out


def weight_product(w: WeightSequence, i: int, j: int) -> Fraction | float:
    """Product of the weights over [i, j], exact when the p-th root of the
    power product is rational."""
    return pow_maybe_exact(wp_product(w, i, j), 1 / w.p)


@dataclass
class SeqVector:
    """Finitely supported sequence vector with complex float entries.

    Exact zeros are dropped at construction so the support stays minimal.
    """

    side: str = BILATERAL
    entries: dict[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.side not in (BILATERAL, UNILATERAL):
            raise ConfigError(f"side: expected bilateral or unilateral, got {self.side!r}")
        cleaned: dict[int, complex] = {}
        for n, v in self.entries.items():
            z = complex(v)
            if z != 0:
                if self.side == UNILATERAL and n < 0:
                    raise ConfigError(f"entries: unilateral index {n} is negative")
                cleaned[n] = z
        self.entries = cleaned

    def value_at(self, n: int) -> complex:
        return self.entries.get(n, 0j)

    def support(self) -> list[int]:
        return sorted(self.entries)

    def plus(self, other: "SeqVector") -> "SeqVector":
        if other.side != self.side:
            raise ValueError("cannot add vectors of different sides")
        merged = dict(self.entries)
        for n, v in other.entries.items():
            merged[n] = merged.get(n, 0j) + v
        return SeqVector(self.side, merged)

    def scaled(self, a: complex) -> "SeqVector":
        return SeqVector(self.side, {n: a * v for n, v in self.entries.items()})

    @classmethod
    def from_dict(cls, doc: dict) -> "SeqVector":
        if not isinstance(doc, dict) or "entries" not in doc:
            raise ConfigError("vector: expected an object with entries")
        entries: dict[int, complex] = {}
        for item in doc["entries"]:
            if not isinstance(item, dict) or "n" not in item:
                raise ConfigError("vector: each entry needs an index n")
            n = item["n"]
            if not isinstance(n, int):
                raise ConfigError(f"vector: index {n!r} is not an integer")
            entries[n] = complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
        return cls(side=doc.get("side", BILATERAL), entries=entries)

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "entries": [
                {"n": n, "re": self.entries[n].real, "im": self.entries[n].imag}
                for n in self.support()
            ],
        }


def lp_norm_seq(x: SeqVector, p: Fraction | float) -> float:
    """Float p-norm of a finitely supported sequence."""
    pf = float(p)
    total = sum(abs(v) ** pf for v in x.entries.values())
    return total ** (1.0 / pf)


def _check_sides(w: WeightSequence, x: SeqVector) -> None:
    if w.side != x.side:
        raise ValueError(f"weight side {w.side} does not match vector side {x.side}")


def apply_backward(w: WeightSequence, x: SeqVector, steps: int = 1) -> SeqVector:
    """steps-fold weighted backward shift: the new value at n is the old
    value at n + steps times the weights at n+1 .. n+steps.  On the
    unilateral side, mass shifted past index 0 is discarded."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    _check_sides(w, x)
    out: dict[int, complex] = {}
    for j, v in x.entries.items():
        n = j - steps
        if w.side == UNILATERAL and n < 0:
            continue
        out[n] = v * float(weight_product(w, n + 1, j))
    return SeqVector(x.side, out)


def apply_forward_inverse(w: WeightSequence, x: SeqVector, steps: int = 1) -> SeqVector:
    """steps-fold right inverse of the backward shift: moves the value at n
    to n + steps, divided by the weights at n+1 .. n+steps."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    _check_sides(w, x)
    out: dict[int, complex] = {}
    for j, v in x.entries.items():
        n = j + steps
        out[n] = v / float(weight_product(w, j + 1, n))
    return SeqVector(x.side, out)
