import random
from fractions import Fraction

import pytest

from shiftlab import (
    BILATERAL,
    UNILATERAL,
    MeasureSystem,
    Verdict,
    WeightSequence,
    cofinite_quotient_witness,
    conditionmix_lhs,
    derive_weights,
    hypercyclicity_report,
    menet_unilateral,
    shift_hypercyclicity_report,
    telescoping_bound_check,
    weak_mixing_consistency,
)
from shiftlab.errors import HypothesisViolated, InconsistentWitness, NoAdmissibleLevels
from shiftlab.sampling import random_functional


def single_cell(masses: dict[int, Fraction], left, right, p="1") -> MeasureSystem:
    k_min, k_max = min(masses), max(masses)
    return MeasureSystem(
        p=Fraction(p), k_min=k_min, k_max=k_max, cells=("B1",),
        mu={k: (v,) for k, v in masses.items()},
        left_tail=None if left is None else Fraction(left),
        right_tail=None if right is None else Fraction(right),
    )


def geometric(base: Fraction, lo: int, hi: int) -> dict[int, Fraction]:
    return {k: base**k for k in range(lo, hi + 1)}


# -- hypercyclicity ---------------------------------------------------------


def test_hypercyclicity_satisfied_for_decaying_tails(dyadic):
    report = hypercyclicity_report(dyadic)
    assert report.verdict is Verdict.SATISFIED
    assert report.witness["decay_left"] and report.witness["decay_right"]


def test_hypercyclicity_violated_when_one_side_stalls():
    system = single_cell({0: Fraction(1)}, left=Fraction(1, 2), right=Fraction(2))
    report = hypercyclicity_report(system)
    assert report.verdict is Verdict.VIOLATED
    assert report.witness["stuck_sides"] == ["right"]


def test_hypercyclicity_inconclusive_without_tails():
    system = single_cell({0: Fraction(1)}, left=None, right=None)
    assert hypercyclicity_report(system).verdict is Verdict.INCONCLUSIVE


def test_shift_route_agrees_on_dyadic(dyadic):
    w = derive_weights(dyadic)
    report = shift_hypercyclicity_report(w)
    assert report.verdict is Verdict.SATISFIED
    assert report.witness["left_period_product_wp"] == "1/2"
    assert report.witness["right_period_product_wp"] == "2"


def test_shift_route_unilateral_cases():
    def uni(tail):
        return WeightSequence(p=Fraction(1), side=UNILATERAL, lo=1, hi=0, wp={},
                              right_tail=tail)
    assert shift_hypercyclicity_report(uni((Fraction(2),))).verdict is Verdict.SATISFIED
    assert shift_hypercyclicity_report(uni((Fraction(1),))).verdict is Verdict.VIOLATED
    no_tail = WeightSequence(p=Fraction(1), side=UNILATERAL, lo=1, hi=1,
                             wp={1: Fraction(2)})
    assert shift_hypercyclicity_report(no_tail).verdict is Verdict.INCONCLUSIVE


# -- weak mixing ------------------------------------------------------------


def test_weak_mixing_inherits_negative_verdict():
    system = single_cell({0: Fraction(1)}, left=Fraction(2), right=Fraction(1, 2))
    report = weak_mixing_consistency(system)
    assert report.verdict is Verdict.VIOLATED


def test_weak_mixing_consistency_on_dyadic(dyadic):
    report = weak_mixing_consistency(dyadic, seed=11, samples=8, horizon=64)
    assert report.verdict is Verdict.SATISFIED
    assert 0 < report.witness["worst_first_decay_step"] <= 64


def test_weak_mixing_raises_when_horizon_too_small(dyadic):
    with pytest.raises(InconsistentWitness):
        weak_mixing_consistency(dyadic, seed=11, samples=4, horizon=1)


# -- menet ------------------------------------------------------------------


def uni_tail(*values) -> WeightSequence:
    return WeightSequence(p=Fraction(1), side=UNILATERAL, lo=1, hi=0, wp={},
                          right_tail=tuple(Fraction(v) for v in values))


def test_menet_growing_weights_violate():
    report = menet_unilateral(uni_tail(2))
    assert report.verdict is Verdict.VIOLATED
    assert report.witness["period_product_wp"] == "2"


def test_menet_constant_one_bound_one():
    report = menet_unilateral(uni_tail(1))
    assert report.verdict is Verdict.SATISFIED
    assert Fraction(report.witness["sup_inf_wp"]) == 1
    assert Fraction(report.witness["bound_wp"]) == 1


def test_menet_alternating_bound_two():
    report = menet_unilateral(uni_tail(2, Fraction(1, 2)))
    assert report.verdict is Verdict.SATISFIED
    assert Fraction(report.witness["sup_inf_wp"]) == 1
    assert Fraction(report.witness["bound_wp"]) == 2


def test_menet_uses_explicit_block_before_tail():
    # one huge early weight cannot push the sup past the later infima
    w = WeightSequence(
        p=Fraction(1), side=UNILATERAL, lo=1, hi=1, wp={1: Fraction(64)},
        right_tail=(Fraction(1, 2),),
    )
    report = menet_unilateral(w)
    assert report.verdict is Verdict.SATISFIED
    assert Fraction(report.witness["sup_inf_wp"]) == Fraction(1, 2)


def test_menet_restricts_bilateral_input(dyadic):
    report = menet_unilateral(derive_weights(dyadic))
    assert report.verdict is Verdict.VIOLATED


def test_menet_budget_and_missing_tail():
    wide = WeightSequence(
        p=Fraction(1), side=UNILATERAL, lo=1, hi=20,
        wp={k: Fraction(1, 2) for k in range(1, 21)}, right_tail=(Fraction(1, 2),),
    )
    assert menet_unilateral(wide, n_budget=4).verdict is Verdict.INCONCLUSIVE
    bare = WeightSequence(p=Fraction(1), side=UNILATERAL, lo=1, hi=1,
                          wp={1: Fraction(2)})
    assert menet_unilateral(bare).verdict is Verdict.INCONCLUSIVE


# -- conditionmix -----------------------------------------------------------


def test_conditionmix_dyadic_value(dyadic):
    report = conditionmix_lhs(dyadic)
    assert report.verdict is Verdict.SATISFIED
    assert Fraction(report.witness["value"]) == Fraction(1, 2)
    assert report.witness["attained"]


def test_conditionmix_flat_system_reaches_one():
    system = single_cell({k: Fraction(1) for k in range(-2, 3)}, left=1, right=1)
    report = conditionmix_lhs(system)
    assert report.verdict is Verdict.SATISFIED
    assert Fraction(report.witness["value"]) == 1


def test_conditionmix_unbounded_when_masses_grow_both_ways():
    system = single_cell(geometric(Fraction(1, 2), -2, 2), left=2, right=Fraction(1, 2))
    report = conditionmix_lhs(system)
    assert report.verdict is Verdict.VIOLATED
    assert report.witness["unbounded"] is True


def test_conditionmix_one_sided_flat_limit():
    system = single_cell(
        {-1: Fraction(1), 0: Fraction(4), 1: Fraction(1)}, left=1, right=Fraction(1, 2)
    )
    report = conditionmix_lhs(system)
    assert report.verdict is Verdict.SATISFIED
    assert Fraction(report.witness["value"]) == Fraction(1, 4)
    assert report.witness["attained"]


def test_conditionmix_limit_not_attained_in_window():
    system = single_cell({0: Fraction(1)}, left=1, right=Fraction(1, 2))
    report = conditionmix_lhs(system)
    assert report.verdict is Verdict.SATISFIED
    assert Fraction(report.witness["value"]) == 1
    assert report.witness["attained"] is False


def test_conditionmix_finite_value_never_exceeds_one():
    # a deep-tail candidate ratio min(a, b)**n caps every infimum, so a
    # finite supremum is automatically <= 1; only divergence violates
    rng = random.Random(31)
    from shiftlab.sampling import random_system

    for _ in range(40):
        system = random_system(rng)
        report = conditionmix_lhs(system)
        if report.verdict is Verdict.VIOLATED:
            assert report.witness.get("unbounded") is True
        else:
            assert Fraction(report.witness["value"]) <= 1


def test_conditionmix_inconclusive_without_tails():
    system = single_cell({0: Fraction(1)}, left=None, right=None)
    assert conditionmix_lhs(system).verdict is Verdict.INCONCLUSIVE


def test_conditionmix_cap_reports_inconclusive(dyadic):
    report = conditionmix_lhs(dyadic, n_cap=0)
    assert report.verdict is Verdict.INCONCLUSIVE


# -- cofinite witness -------------------------------------------------------


def test_cofinite_witness_without_constraints(dyadic):
    witness = cofinite_quotient_witness(dyadic, 1, [])
    assert witness.levels == (-7,)
    assert witness.coeffs == (Fraction(1),)
    assert witness.quotient_pp == Fraction(1, 2)


def test_cofinite_witness_annihilates_functionals(dyadic):
    rng = random.Random(8)
    for m in (1, 2, 3):
        functionals = [
            random_functional(rng, range(-9 - m, -5)) for _ in range(m)
        ]
        witness = cofinite_quotient_witness(dyadic, 1, functionals)
        assert len(witness.levels) == m + 1
        assert any(a != 0 for a in witness.coeffs)
        assert all(v == 0 for v in witness.pairings)
        assert all(r <= 1 for r in witness.level_ratios)
        assert witness.quotient_pp <= 1
        # recompute the pairings independently
        for psi in functionals:
            total = sum(
                psi.get(k, Fraction(0)) * a * dyadic.mu_W(k)
                for k, a in zip(witness.levels, witness.coeffs)
            )
            assert total == 0


def test_cofinite_no_admissible_levels():
    system = single_cell(geometric(Fraction(1, 2), -2, 2), left=2, right=Fraction(1, 2))
    with pytest.raises(NoAdmissibleLevels):
        cofinite_quotient_witness(system, 1, [])


def test_cofinite_window_only_scan():
    masses = {k: Fraction(1, 2 ** abs(k)) for k in range(-5, 6)}
    system = single_cell(masses, left=None, right=None)
    witness = cofinite_quotient_witness(system, 1, [])
    assert witness.levels == (-4,)
    grow = single_cell({k: Fraction(2) ** (-k) for k in range(-2, 3)}, left=None, right=None)
    with pytest.raises(NoAdmissibleLevels):
        cofinite_quotient_witness(grow, 1, [])


def test_cofinite_levels_can_sit_beyond_the_window():
    # masses shrink through the window but regrow along the right tail, so
    # the first non-expanding level lies past the window edge
    system = single_cell(
        {-1: Fraction(4), 0: Fraction(2), 1: Fraction(1)}, left=2, right=2
    )
    witness = cofinite_quotient_witness(system, 1, [])
    assert witness.levels == (2,)
    assert witness.quotient_pp == Fraction(1, 2)


def test_cofinite_constant_system_quotient_is_one():
    flat = single_cell({k: Fraction(1) for k in (-1, 0, 1)}, left=1, right=1)
    for n in (1, 3):
        witness = cofinite_quotient_witness(flat, n, [])
        assert witness.quotient_pp == 1


def test_cofinite_rejects_bad_shift(dyadic):
    with pytest.raises(ValueError):
        cofinite_quotient_witness(dyadic, 0, [])


# -- telescoping ------------------------------------------------------------


def quartic_system() -> MeasureSystem:
    return single_cell(geometric(Fraction(1, 4), -5, 5), left=4, right=Fraction(1, 4))


def test_telescoping_frozen_example():
    result = telescoping_bound_check(quartic_system(), 0, 5, 1, Fraction(2))
    assert result.holds
    assert result.lhs == 1024
    assert result.rhs == 16
    assert (result.blocks, result.remainder) == (5, 0)
    assert result.star_c == 4


def test_telescoping_with_remainder():
    result = telescoping_bound_check(quartic_system(), 2, 7, 3, Fraction(3, 2))
    assert result.holds
    assert (result.blocks, result.remainder) == (2, 1)
    assert result.lhs == Fraction(4) ** 7


def test_telescoping_hypothesis_violation_names_level(dyadic):
    with pytest.raises(HypothesisViolated) as info:
        telescoping_bound_check(dyadic, 0, 5, 1, Fraction(2))
    assert info.value.level == -5


def test_telescoping_argument_validation(dyadic):
    with pytest.raises(ValueError):
        telescoping_bound_check(dyadic, 0, 0, 1, Fraction(2))
    with pytest.raises(ValueError):
        telescoping_bound_check(dyadic, 0, 1, 1, Fraction(1, 2))
