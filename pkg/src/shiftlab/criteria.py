"""Decidable certificates for the dynamics of the model and its shift.

Every criterion here returns a report with one of three verdicts:

* ``Satisfied`` and ``Violated`` are exact: they are backed by rational
  arithmetic on the window data plus the geometric tail rules, and the
  witness field carries the numbers that decide the case.
* ``InconclusiveWindow`` means the finite window alone cannot decide; this
  is the only possible answer when a system carries no tail rules, because
  window data bounds the relevant suprema and infima from one side only.

The certificates:

``hypercyclicity_report``
    Level masses must vanish in both directions, which under geometric
    tails is exactly "both tail ratios < 1".  Any increasing step schedule
    then witnesses the decay required of the composition operator.

``shift_hypercyclicity_report``
    The same question asked of a weight sequence alone: products of weight
    powers over blocks sliding left must vanish and over blocks sliding
    right must blow up.  With periodic tails this reduces to the per-period
    products.  Kept deliberately independent of the measure route so the
    two can be played against each other.

``weak_mixing_consistency``
    For these shifts weak mixing of the direct sum comes with
    hypercyclicity, so the verdict is inherited; a Satisfied verdict is
    additionally cross-examined on random step functions, whose forward and
    inverse iterates must actually be seen to decay within the horizon.

``menet_unilateral``
    Boundedness of sup over n of inf over k of n-fold weight products,
    the unilateral spaceability test.  Periodic tails collapse it to a
    finite enumeration plus a per-period product sign.

``conditionmix_lhs``
    The supremum over n of the worst n-step level mass ratio.  Geometric
    tails make the supremum computable exactly; at most a window-sized
    stretch of n must be enumerated and the rest follows a closed form.

``cofinite_quotient_witness``
    Constructive spaceability evidence: a nonzero step function killed by
    finitely many given functionals, supported on levels where an n-step
    pullback does not expand, so the operator quotient is at most one.

``telescoping_bound_check``
    Exact verification of a lower bound for a deep backward mass ratio in
    terms of a per-block constant, on a stated block range.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import HypothesisViolated, InconsistentWitness, NoAdmissibleLevels
from .lp_space import StepFunction, apply_Tf, apply_Tf_inverse, gs_decay_check
from .measure_system import MeasureSystem
from .rationals import abs_pow, format_fraction, pow_maybe_exact
from .shift_space import UNILATERAL, WeightSequence, wp_product


class Verdict(str, Enum):
    SATISFIED = "Satisfied"
    VIOLATED = "Violated"
    INCONCLUSIVE = "InconclusiveWindow"


@dataclass
class CriterionReport:
    criterion: str
    verdict: Verdict
    witness: dict = field(default_factory=dict)
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "notes": self.notes,
        }


def _frac_or_float(v: Fraction | float) -> str | float:
    """Witness encoding: exact rationals as strings, floats as numbers."""
    return format_fraction(v) if isinstance(v, Fraction) else float(v)


# -- hypercyclicity ---------------------------------------------------------


def hypercyclicity_report(system: MeasureSystem) -> CriterionReport:
    """Decide whether level masses vanish along both directions.

    The composition operator admits dense orbits exactly when, for every
    anchor level j, the mass of level j - n dies and the mass of level
    j + n dies (so the ratio mass(j) / mass(j + n) blows up) along a common
    step schedule.  Under geometric tails both statements hold for every
    schedule when both tail ratios are < 1 and for no schedule otherwise.
    """
    system.validate_star()
    if not system.has_tails:
        return CriterionReport(
            criterion="hypercyclicity",
            verdict=Verdict.INCONCLUSIVE,
            witness={"window": [system.k_min, system.k_max]},
            notes="no tail rule: a finite window cannot decide mass decay at infinity",
        )
    assert system.left_tail is not None and system.right_tail is not None
    decay_left = system.left_tail < 1
    decay_right = system.right_tail < 1
    witness = {
        "left_ratio": format_fraction(system.left_tail),
        "right_ratio": format_fraction(system.right_tail),
        "decay_left": decay_left,
        "decay_right": decay_right,
    }
    if decay_left and decay_right:
        return CriterionReport(
            criterion="hypercyclicity",
            verdict=Verdict.SATISFIED,
            witness={**witness, "schedule": "every increasing sequence of steps"},
            notes="both tail ratios < 1, so masses vanish in both directions",
        )
    stuck = [side for side, ok in (("left", decay_left), ("right", decay_right)) if not ok]
    return CriterionReport(
        criterion="hypercyclicity",
        verdict=Verdict.VIOLATED,
        witness={**witness, "stuck_sides": stuck},
        notes="a tail ratio >= 1 keeps the corresponding masses bounded away from zero",
    )


def shift_hypercyclicity_report(w: WeightSequence) -> CriterionReport:
    """Decide dense orbits for the weighted backward shift from the weights
    alone.

    Bilateral case: products of weight powers over blocks reaching left
    must vanish and over blocks reaching right must diverge, which under
    periodic tails is decided by the per-period products.  Unilateral case:
    products from the origin must be unbounded above.
    """
    if not w.has_tail_rules():
        return CriterionReport(
            criterion="shift_hypercyclicity",
            verdict=Verdict.INCONCLUSIVE,
            witness={"explicit_range": [w.lo, w.hi]},
            notes="no tail rule: block products beyond the explicit range are unknown",
        )
    if w.side == UNILATERAL:
        assert w.right_tail is not None
        pi = Fraction(1)
        for v in w.right_tail:
            pi *= v
        witness = {"period_product_wp": format_fraction(pi)}
        if pi > 1:
            return CriterionReport(
                "shift_hypercyclicity", Verdict.SATISFIED, witness,
                "partial weight products are unbounded above",
            )
        return CriterionReport(
            "shift_hypercyclicity", Verdict.VIOLATED, witness,
            "partial weight products stay bounded",
        )
    assert w.left_tail is not None and w.right_tail is not None
    pi_left = Fraction(1)
    for v in w.left_tail:
        pi_left *= v
    pi_right = Fraction(1)
    for v in w.right_tail:
        pi_right *= v
    witness = {
        "left_period_product_wp": format_fraction(pi_left),
        "right_period_product_wp": format_fraction(pi_right),
    }
    if pi_left < 1 and pi_right > 1:
        return CriterionReport(
            "shift_hypercyclicity", Verdict.SATISFIED, witness,
            "left block products vanish and right block products diverge",
        )
    stuck = []
    if pi_left >= 1:
        stuck.append("left")
    if pi_right <= 1:
        stuck.append("right")
    return CriterionReport(
        "shift_hypercyclicity", Verdict.VIOLATED, {**witness, "stuck_sides": stuck},
        "a per-period product on the wrong side of 1 blocks orbit density",
    )


def weak_mixing_consistency(
    system: MeasureSystem,
    *,
    seed: int = 0,
    samples: int = 20,
    horizon: int = 64,
    tol: float = 1e-6,
) -> CriterionReport:
    """Weak mixing of the doubled operator, cross-checked by sampling.

    The verdict is the hypercyclicity verdict.  When it is Satisfied, the
    certificate is put on trial: random rational step functions are pushed
    forward and backward until both norms fall below ``tol``.  A sample
    that never decays within the horizon raises InconsistentWitness, which
    means the horizon is too small for the decay rate at hand, never that
    the certificate is wrong.
    """
    from .sampling import random_step_function

    base = hypercyclicity_report(system)
    if base.verdict is not Verdict.SATISFIED:
        return CriterionReport(
            criterion="weak_mixing",
            verdict=base.verdict,
            witness=dict(base.witness),
            notes="inherited: the doubled operator mixes weakly exactly when the operator itself has dense orbits",
        )
    rng = random.Random(seed)
    worst_n = 0
    for index in range(samples):
        phi = random_step_function(rng, system)
        if phi.is_zero():
            continue
        back = apply_Tf_inverse(apply_Tf(phi))
        if back.coeffs != phi.coeffs:
            raise InconsistentWitness(
                f"sample {index}: inverse composition did not undo the forward one"
            )
        first_n = None
        for n in range(1, horizon + 1):
            fwd, bwd = gs_decay_check(system, phi, n)
            if float(fwd) <= tol and float(bwd) <= tol:
                first_n = n
                break
        if first_n is None:
            raise InconsistentWitness(
                f"sample {index}: norms did not fall below {tol} within {horizon} steps; "
                "raise the horizon for this decay rate"
            )
        worst_n = max(worst_n, first_n)
    return CriterionReport(
        criterion="weak_mixing",
        verdict=Verdict.SATISFIED,
        witness={
            **base.witness,
            "samples": samples,
            "tolerance": tol,
            "worst_first_decay_step": worst_n,
        },
        notes="sampled forward and inverse iterates decayed below tolerance",
    )


# -- spaceability: unilateral weight product test ---------------------------


def menet_unilateral(
    w: WeightSequence,
    *,
    n_budget: int = 4096,
    k_budget: int = 4096,
) -> CriterionReport:
    """Boundedness of sup over n of inf over k >= 1 of the product of n
    consecutive weights starting after k.

    Bilateral input is restricted to indices >= 1 first.  Writing Pi for
    the product of one tail period: if Pi > 1 the inner infima grow
    geometrically and the supremum is infinite (Violated).  If Pi <= 1 the
    infimum is eventually periodic-monotone, so the supremum is attained
    within the first max(hi, 1) + L - 1 values of n and is computed
    exactly.  The witness also carries a certified uniform bound valid for
    every n: the larger of the supremum and the worst prefix product of one
    tail period.
    """
    w = w.restrict_unilateral()
    if w.right_tail is None:
        return CriterionReport(
            criterion="menet_unilateral",
            verdict=Verdict.INCONCLUSIVE,
            witness={"explicit_range": [w.lo, w.hi]},
            notes="no tail rule: products beyond the explicit range are unknown",
        )
    period = w.right_tail
    L = len(period)
    pi = Fraction(1)
    for v in period:
        pi *= v
    if pi > 1:
        return CriterionReport(
            criterion="menet_unilateral",
            verdict=Verdict.VIOLATED,
            witness={"period_product_wp": format_fraction(pi)},
            notes="tail period product > 1: the inner infima diverge, the supremum is infinite",
        )
    n_enum = max(w.hi, 1) + L - 1
    k_hi = w.hi + L
    if n_enum > n_budget or k_hi > k_budget:
        return CriterionReport(
            criterion="menet_unilateral",
            verdict=Verdict.INCONCLUSIVE,
            witness={"needed_n": n_enum, "needed_k": k_hi,
                     "n_budget": n_budget, "k_budget": k_budget},
            notes="enumeration exceeds the stated budget",
        )
    sup_pp = Fraction(0)
    arg_n = 0
    for n in range(1, n_enum + 1):
        q_n = min(wp_product(w, k + 1, k + n) for k in range(1, k_hi + 1))
        if q_n > sup_pp:
            sup_pp, arg_n = q_n, n
    prefix = Fraction(1)
    bound_pp = Fraction(1)
    for v in period[:-1]:
        prefix *= v
        bound_pp = max(bound_pp, prefix)
    bound_pp = max(bound_pp, sup_pp)
    inv_p = 1 / w.p
    return CriterionReport(
        criterion="menet_unilateral",
        verdict=Verdict.SATISFIED,
        witness={
            "period_product_wp": format_fraction(pi),
            "sup_inf_wp": format_fraction(sup_pp),
            "attained_at_n": arg_n,
            "bound_wp": format_fraction(bound_pp),
            "sup_inf": _frac_or_float(pow_maybe_exact(sup_pp, inv_p)),
            "bound": _frac_or_float(pow_maybe_exact(bound_pp, inv_p)),
        },
        notes="tail period product <= 1: the supremum of inner infima is finite and attained",
    )


# -- sup-inf mass ratio -----------------------------------------------------


def conditionmix_lhs(
    system: MeasureSystem,
    *,
    n_cap: int | None = None,
) -> CriterionReport:
    """Exact value of sup over n >= 1 of inf over all k of
    mass(level k) / mass(level k + n), and the verdict "<= 1".

    Let a be the left tail ratio and b the reciprocal of the right one;
    the infimum for fixed n is min(a**n, b**n, window-straddling ratios).
    When min(a, b) < 1 the infima die geometrically and the supremum is
    attained early: enumeration stops as soon as the remaining infima are
    provably below the best value seen.  When min(a, b) >= 1 the infima
    settle once n exceeds the window span S into one of three closed
    forms: constant (a = b = 1), monotone with a computable limit (exactly
    one of a, b equals 1), or divergent (both > 1, supremum infinite).
    """
    system.validate_star()
    if not system.has_tails:
        return CriterionReport(
            criterion="conditionmix",
            verdict=Verdict.INCONCLUSIVE,
            witness={"window": [system.k_min, system.k_max]},
            notes="no tail rule: window ratios bound the infima from above only, so neither verdict is certifiable",
        )
    assert system.left_tail is not None and system.right_tail is not None
    a = system.left_tail
    b = 1 / system.right_tail
    span = system.k_max - system.k_min

    def inf_for(n: int) -> Fraction:
        best = min(a**n, b**n)
        for k in range(system.k_min - n, system.k_max + 1):
            best = min(best, system.mu_W(k) / system.mu_W(k + n))
        return best

    witness: dict = {
        "left_step": format_fraction(a),
        "right_step": format_fraction(b),
    }
    small = min(a, b)
    if small < 1:
        best = Fraction(0)
        best_n = 0
        n = 1
        while True:
            if n_cap is not None and n > n_cap:
                return CriterionReport(
                    "conditionmix", Verdict.INCONCLUSIVE,
                    {**witness, "partial_best": format_fraction(best), "n_cap": n_cap},
                    "enumeration cap reached before the tail bound closed the supremum",
                )
            v = inf_for(n)
            if v > best:
                best, best_n = v, n
            if small ** (n + 1) <= best:
                break
            n += 1
        value, attained, arg = best, True, best_n
    else:
        best = Fraction(0)
        best_n = 0
        for n in range(1, span + 1):
            v = inf_for(n)
            if v > best:
                best, best_n = v, n
        if a == 1 and b == 1:
            settled = inf_for(span + 1)
            if settled >= best:
                value, attained, arg = settled, True, span + 1
            else:
                value, attained, arg = best, True, best_n
        elif a == 1 or b == 1:
            # the infimum is eventually nondecreasing toward a finite limit
            if a == 1:
                limit = min(
                    [Fraction(1)]
                    + [system.mu_W(system.k_min) / system.mu_W(j) for j in system.levels()]
                )
            else:
                limit = min(
                    [Fraction(1)]
                    + [system.mu_W(h) / system.mu_W(system.k_max) for h in system.levels()]
                )
            if best >= limit:
                value, attained, arg = best, True, best_n
            else:
                value, attained, arg = limit, False, -1
        else:
            return CriterionReport(
                "conditionmix", Verdict.VIOLATED,
                {**witness, "unbounded": True},
                "both step ratios exceed 1: every candidate ratio diverges with n, the supremum is infinite",
            )
    witness.update({
        "value": format_fraction(value),
        "attained": attained,
    })
    if attained:
        witness["attained_at_n"] = arg
    verdict = Verdict.SATISFIED if value <= 1 else Verdict.VIOLATED
    notes = (
        "supremum of worst-case mass ratios is <= 1"
        if verdict is Verdict.SATISFIED
        else "supremum of worst-case mass ratios exceeds 1"
    )
    return CriterionReport("conditionmix", verdict, witness, notes)


# -- constructive subspace witness ------------------------------------------


@dataclass
class CofiniteWitness:
    """Nonzero step function in the kernel of the given functionals,
    supported on levels whose n-step pullback does not expand."""

    shift: int
    levels: tuple[int, ...]
    coeffs: tuple[Fraction, ...]
    level_ratios: tuple[Fraction, ...]
    quotient_pp: Fraction | float
    pairings: tuple[Fraction, ...]

    def step_function(self, system: MeasureSystem) -> StepFunction:
        return StepFunction({
            (k, i): a
            for k, a in zip(self.levels, self.coeffs)
            for i in range(len(system.cells))
        })

    def to_dict(self) -> dict:
        return {
            "shift": self.shift,
            "levels": list(self.levels),
            "coeffs": [format_fraction(v) for v in self.coeffs],
            "level_ratios": [format_fraction(v) for v in self.level_ratios],
            "quotient_pp": _frac_or_float(self.quotient_pp),
            "pairings": [format_fraction(v) for v in self.pairings],
        }


def _admissible_levels(system: MeasureSystem, n: int, count: int) -> list[int]:
    """First ``count`` levels, scanning upward, whose n-step backward mass
    ratio is <= 1.

    With tails the scan band holds ``count`` levels of each deep zone, where
    the ratio is constant, plus the whole transition region; a short result
    therefore proves no admissible level exists anywhere.  Without tails
    only in-window pairs are checkable.
    """
    if system.has_tails:
        candidates = range(system.k_min - (n + count), system.k_max + (n + count) + 1)
    else:
        candidates = range(system.k_min + n, system.k_max + 1)
    found: list[int] = []
    for k in candidates:
        if system.mu_W(k - n) <= system.mu_W(k):
            found.append(k)
            if len(found) == count:
                return found
    raise NoAdmissibleLevels(
        f"fewer than {count} levels have a non-expanding {n}-step pullback"
    )


def _rational_kernel_vector(rows: list[list[Fraction]], width: int) -> list[Fraction]:
    """A nonzero rational solution of rows . x = 0; needs width > rank."""
    matrix = [row[:] for row in rows]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][col]
        matrix[r] = [v / lead for v in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [u - factor * v for u, v in zip(matrix[i], matrix[r])]
        pivots.append((r, col))
        r += 1
        if r == len(matrix):
            break
    pivot_cols = {col for _, col in pivots}
    free = next(col for col in range(width) if col not in pivot_cols)
    x = [Fraction(0)] * width
    x[free] = Fraction(1)
    for row, col in pivots:
        x[col] = -matrix[row][free]
    return x


def cofinite_quotient_witness(
    system: MeasureSystem,
    n: int,
    functionals: list[dict[int, Fraction]],
) -> CofiniteWitness:
    """Build a nonzero level-constant step function annihilated by the
    given functionals whose n-fold pullback does not grow in norm.

    A functional is a level-indexed rational density; its pairing with a
    level-constant function is the sum of density * coefficient * level
    mass.  m functionals leave a nontrivial kernel on any m + 1 levels, and
    picking only levels whose n-step backward mass ratio is <= 1 makes the
    norm quotient at most 1 regardless of the kernel vector.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = len(functionals)
    levels = _admissible_levels(system, n, m + 1)
    rows = [
        [psi.get(k, Fraction(0)) * system.mu_W(k) for k in levels]
        for psi in functionals
    ]
    coeffs = _rational_kernel_vector(rows, m + 1) if m else [Fraction(1)]
    ratios = [system.mu_W(k - n) / system.mu_W(k) for k in levels]
    num: Fraction | float = Fraction(0)
    den: Fraction | float = Fraction(0)
    for k, a, ratio in zip(levels, coeffs, ratios):
        weight = abs_pow(a, system.p) * system.mu_W(k)
        num += weight * ratio
        den += weight
    quotient = num / den
    pairings = tuple(
        sum((row[j] * coeffs[j] for j in range(m + 1)), Fraction(0)) for row in rows
    )
    return CofiniteWitness(
        shift=n,
        levels=tuple(levels),
        coeffs=tuple(coeffs),
        level_ratios=tuple(ratios),
        quotient_pp=quotient,
        pairings=pairings,
    )


# -- telescoping lower bound ------------------------------------------------


@dataclass
class TelescopingBound:
    """Outcome of the exact block-telescoping comparison."""

    holds: bool
    lhs: Fraction
    rhs: Fraction
    blocks: int
    remainder: int
    star_c: Fraction
    checked_range: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "lhs": format_fraction(self.lhs),
            "rhs": format_fraction(self.rhs),
            "blocks": self.blocks,
            "remainder": self.remainder,
            "star_c": format_fraction(self.star_c),
            "checked_range": list(self.checked_range),
        }


def telescoping_bound_check(
    system: MeasureSystem,
    j: int,
    n_k: int,
    n: int,
    cp: Fraction,
) -> TelescopingBound:
    """Verify mass(j - n_k) / mass(j) >= cp**(blocks + 1) / c**(n + remainder).

    cp is a p-th power constant > 1 assumed to lie strictly below every
    n-step ratio mass(k) / mass(k + n) for k in [j - max(n_k, n), j - n];
    the assumption is checked exactly and HypothesisViolated names the
    first offending level.  Writing n_k = blocks * n + remainder, the chain
    of block ratios and the one-step constant c give the stated bound.
    """
    if n < 1 or n_k < 1:
        raise ValueError("n and n_k must be >= 1")
    if cp < 1:
        raise ValueError("cp must be >= 1")
    c = system.validate_star()
    k_first, k_last = j - max(n_k, n), j - n
    for k in range(k_first, k_last + 1):
        ratio = system.mu_W(k) / system.mu_W(k + n)
        if ratio <= cp:
            raise HypothesisViolated(
                f"n-step ratio at level {k} is {ratio}, not above {cp}", level=k
            )
    blocks, remainder = divmod(n_k, n)
    lhs = system.mu_W(j - n_k) / system.mu_W(j)
    rhs = cp ** (blocks + 1) / c ** (n + remainder)
    return TelescopingBound(
        holds=lhs >= rhs,
        lhs=lhs,
        rhs=rhs,
        blocks=blocks,
        remainder=remainder,
        star_c=c,
        checked_range=(k_first, k_last),
    )
