import random
from fractions import Fraction

import pytest

from shiftlab import (
    BILATERAL,
    ExactSeqVector,
    MeasureSystem,
    StepFunction,
    apply_Tf,
    derive_weights,
    project,
    semiconjugacy_defect,
    tagged_backward,
)
from shiftlab.rationals import abs_pow
from shiftlab.sampling import random_step_function, random_system


def test_projection_of_wandering_indicator(dyadic):
    image = project(dyadic, StepFunction.indicator_level(dyadic, 0))
    assert image.entries == {0: (Fraction(1), Fraction(1))}


def test_projection_averages_cells_over_the_wandering_set():
    system = MeasureSystem(
        p=Fraction(1), k_min=0, k_max=0, cells=("B1", "B2"),
        mu={0: (Fraction(1, 3), Fraction(2, 3))},
        left_tail=Fraction(1, 2), right_tail=Fraction(1, 2),
    )
    phi = StepFunction({(0, 0): Fraction(3), (0, 1): Fraction(-3)})
    image = project(system, phi)
    # 3 * 1/3 - 3 * 2/3 = -1
    assert image.entries == {0: (Fraction(-1), Fraction(1))}


def test_projection_requires_rational_coefficients(dyadic):
    with pytest.raises(TypeError):
        project(dyadic, StepFunction({(0, 0): 0.5}))


def test_tagged_values_equal_through_cross_powers():
    p = Fraction(2)
    a = (Fraction(2), Fraction(2))   # 2 * sqrt(2)
    b = (Fraction(1), Fraction(8))   # sqrt(8)
    assert ExactSeqVector.values_equal(a, b, p)
    assert not ExactSeqVector.values_equal(a, (Fraction(-1), Fraction(8)), p)
    assert not ExactSeqVector.values_equal(a, (Fraction(1), Fraction(9)), p)


def test_tagged_backward_matches_projected_composition(dyadic_p2):
    w = derive_weights(dyadic_p2)
    phi = StepFunction({(0, 0): Fraction(1), (2, 0): Fraction(-5, 3)})
    lhs = project(dyadic_p2, apply_Tf(phi))
    rhs = tagged_backward(w, project(dyadic_p2, phi))
    assert lhs.equals(rhs)


def test_collapse_roots_the_tags(dyadic_p2):
    image = project(dyadic_p2, StepFunction({(1, 0): Fraction(2)}))
    collapsed = image.collapse()
    assert collapsed.entries[1].real == pytest.approx(2 * (0.5 ** 0.5))


def test_defect_is_exactly_zero(dyadic_p2):
    phi = StepFunction({(-3, 0): Fraction(7, 2), (0, 0): Fraction(-1), (4, 0): Fraction(1, 9)})
    defect = semiconjugacy_defect(dyadic_p2, phi)
    assert isinstance(defect, Fraction)
    assert defect == 0


def test_defect_zero_over_random_systems():
    rng = random.Random(424242)
    for _ in range(30):
        system = random_system(rng)
        phi = random_step_function(rng, system)
        assert semiconjugacy_defect(system, phi) == 0


def test_defect_positive_for_wrong_weights(dyadic):
    # doubling every weight breaks the intertwining by a factor of 2
    w = derive_weights(dyadic)
    wrong = type(w)(
        p=w.p, side=w.side, lo=w.lo, hi=w.hi,
        wp={k: 2 * v for k, v in w.wp.items()},
        left_tail=tuple(2 * v for v in w.left_tail),
        right_tail=tuple(2 * v for v in w.right_tail),
    )
    phi = StepFunction.indicator_level(dyadic, 0)
    defect = semiconjugacy_defect(dyadic, phi, wrong)
    assert isinstance(defect, float)
    assert defect == pytest.approx(0.5)


def test_rho_must_be_positive():
    with pytest.raises(ValueError):
        ExactSeqVector(p=Fraction(2), entries={0: (Fraction(1), Fraction(0))})


def test_every_finite_sequence_lifts_to_a_step_function():
    # a single cell per level carries the whole mass, so the projection is
    # onto the finitely supported tagged sequences
    rng = random.Random(61)
    for _ in range(10):
        system = random_system(rng)
        target = {
            rng.randint(system.k_min - 2, system.k_max + 2):
                Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            for _ in range(rng.randint(1, 4))
        }
        target = {k: q for k, q in target.items() if q != 0}
        scale = system.mu_W(0) / system.mu_cell(0, 0)
        phi = StepFunction({(k, 0): q * scale for k, q in target.items()})
        want = ExactSeqVector(
            p=system.p, side=BILATERAL,
            entries={k: (q, system.mu_W(k)) for k, q in target.items()},
        )
        assert project(system, phi).equals(want)


def test_projection_energy_bounded_by_distortion():
    rng = random.Random(62)
    for _ in range(30):
        system = random_system(rng, p_pool=(Fraction(1), Fraction(2)))
        big_k = system.distortion_constant()
        phi = random_step_function(rng, system)
        image = project(system, phi)
        lhs = sum(
            (abs_pow(q, system.p) * rho for q, rho in image.entries.values()),
            Fraction(0),
        )
        rhs = sum(
            (abs_pow(v, system.p) * system.mu_cell(k, i)
             for (k, i), v in phi.coeffs.items()),
            Fraction(0),
        )
        assert lhs <= big_k * rhs
