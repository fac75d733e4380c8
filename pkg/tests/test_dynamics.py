"""Tests for word enumeration, composition sequences, and limit sets."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mobsemi.core import (
    BASEPOINT,
    INFINITY,
    BoundaryPoint,
    HalfPlanePoint,
    Moebius,
    chordal,
    compose_all,
    fixed_points,
    hyperbolic_dist,
    inverse,
    operator_distance,
    tr,
)
from mobsemi.dynamics import (
    CapExceededError,
    ConvergenceOutcome,
    EllipticWitness,
    NearIdentityWitness,
    Side,
    continued_fraction_check,
    enumerate_words,
    find_elliptic,
    find_identity_word,
    find_near_identity,
    hausdorff_distance,
    initial_state,
    oracle_refute,
    run_sequence,
    sample_limit_set,
    step,
)

_FINITE = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


@st.composite
def _moebius_maps(draw):
    a = draw(_FINITE)
    b = draw(_FINITE)
    c = draw(_FINITE)
    d = draw(_FINITE)
    if a * d - b * c < 0:
        a, b = b, a
        c, d = d, c
    assume(abs(a * d - b * c) > 1e-2)
    return Moebius(a, b, c, d)


def _letters_of(word: str, table_labels: tuple[str, ...]) -> list[int]:
    return [table_labels.index(ch) for ch in word]


# ---------------------------------------------------------------------------
# Word enumeration
# ---------------------------------------------------------------------------


def test_single_translation_words_all_parabolic():
    table = enumerate_words([Moebius.translation(1.0)], 5)
    assert [len(level) for level in table.levels] == [1, 1, 1, 1, 1]
    assert table.stored_total == 5
    for length in range(1, 6):
        value = table.value(length, 0)
        assert tr(value) == pytest.approx(2.0, abs=1e-12)
        assert value.b == pytest.approx(float(length), abs=1e-12)
    assert table.word_string(5, 0) == "FFFFF"


def test_commuting_dilations_dedup_counts():
    table = enumerate_words([Moebius.dilation(2.0), Moebius.dilation(0.5)], 4)
    assert [len(level) for level in table.levels] == [2, 3, 2, 2]
    assert table.stored_total == 9

    def _has(length: int, scale: float) -> bool:
        for i in range(len(table.levels[length - 1])):
            v = table.value(length, i)
            w = v.a / v.d
            if abs(v.b) < 1e-12 and abs(v.c) < 1e-12 and abs(w - scale) < 1e-9:
                return True
        return False

    assert _has(1, 2.0) and _has(1, 0.5)
    assert _has(2, 4.0) and _has(2, 1.0) and _has(2, 0.25)
    assert _has(3, 8.0) and _has(4, 16.0)


def test_identity_word_found_for_inverse_pair():
    table = enumerate_words([Moebius.dilation(2.0), Moebius.dilation(0.5)], 4)
    assert find_identity_word(table) == "FG"
    table2 = enumerate_words([Moebius.translation(1.0)], 6)
    assert find_identity_word(table2) is None


def test_parabolic_schottky_pair_has_no_elliptic_words():
    f = Moebius.translation(2.0)
    g = Moebius(1.0, 0.0, -2.0, 1.0)
    table = enumerate_words([f, g], 8)
    assert find_elliptic(table) is None
    assert oracle_refute([f, g], 8) is None


def test_elliptic_product_witness_short_word():
    f = Moebius.translation(1.0)
    g = Moebius(1.0, 0.0, -1.0, 1.0)
    witness = oracle_refute([f, g], 2)
    assert isinstance(witness, EllipticWitness)
    assert witness.word == "FG"
    assert tr(witness.value) == pytest.approx(1.0, abs=1e-12)
    assert witness.cls.is_elliptic


def test_mixed_contractions_produce_near_identity_word():
    gens = [Moebius.dilation(2.0), Moebius.affine(0.5, 1.0), Moebius.affine(1.0 / 3.0, 0.0)]
    witness = oracle_refute(gens, 13, eps_near=0.05)
    assert isinstance(witness, NearIdentityWitness)
    assert witness.distance <= 0.05
    # the best shallow word is (2^8/3^5)·z = fffffffffhhhhh at length 13
    assert witness.word == "FFFFFFFFHHHHH"
    revalue = compose_all(gens[j] for j in witness.letters)
    assert operator_distance(revalue, witness.value) <= 1e-9
    assert operator_distance(revalue, Moebius.identity()) == pytest.approx(
        witness.distance, abs=1e-12
    )


def test_one_sided_translations_never_refuted():
    gens = [Moebius.translation(2.0), Moebius.translation(3.0)]
    table = enumerate_words(gens, 10)
    assert [len(level) for level in table.levels] == [2] + [3] * 9
    assert oracle_refute(gens, 10) is None


def test_cap_exceeded_raises():
    gens = [Moebius.translation(1.0), Moebius.translation(math.pi)]
    # level sizes are 2, 3, 4, ... so the cumulative count passes 100 at length 13
    enumerate_words(gens, 12, cap=100)
    with pytest.raises(CapExceededError):
        enumerate_words(gens, 13, cap=100)


def test_dedup_grid_collapses_only_sub_grid_differences():
    near = enumerate_words([Moebius.translation(1.0), Moebius.translation(1.0 + 1e-12)], 1)
    assert near.stored_total == 1
    apart = enumerate_words([Moebius.translation(1.0), Moebius.translation(1.0 + 1e-6)], 1)
    assert apart.stored_total == 2


@given(st.lists(_moebius_maps(), min_size=1, max_size=2), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_witness_words_reevaluate_to_stored_matrices(gens, depth):
    table = enumerate_words(gens, depth)
    for length in range(1, len(table.levels) + 1):
        level = table.levels[length - 1]
        for i in range(len(level)):
            value = table.value(length, i)
            stored = np.array(level.matrices[i])
            again = np.array(value.entries())
            assert np.allclose(stored, again, rtol=1e-9, atol=1e-9)


# ---------------------------------------------------------------------------
# Composition sequences
# ---------------------------------------------------------------------------


def test_step_applies_one_letter():
    state = step(initial_state(), Moebius.translation(1.0))
    assert state.n == 1
    assert state.orbit.x == pytest.approx(1.0)
    assert state.orbit.y == pytest.approx(1.0)


def test_descending_geodesic_distance():
    state = initial_state()
    for _ in range(10):
        state = step(state, Moebius.dilation(0.5))
    assert state.orbit.y == pytest.approx(2.0**-10, rel=1e-12)
    assert hyperbolic_dist(BASEPOINT, state.orbit) == pytest.approx(
        10.0 * math.log(2.0), abs=1e-9
    )


@pytest.mark.parametrize("n", [5, 10, 15])
def test_contraction_block_word_approaches_translation(n):
    f = Moebius.dilation(2.0)
    g = Moebius.affine(0.5, 1.0)
    state = initial_state()
    for digit in [1] * n + [0] * n:
        state = step(state, [f, g][digit])
    bound = 2.0 ** (1 - n) + 1e-9
    assert chordal(state.orbit, HalfPlanePoint(2.0, 1.0)) <= bound
    assert operator_distance(state.product, Moebius.translation(2.0)) <= bound


@given(
    st.lists(_moebius_maps(), min_size=1, max_size=3),
    st.lists(st.integers(0, 2), min_size=1, max_size=6),
)
@settings(max_examples=40, deadline=None)
def test_step_chain_matches_direct_composition(gens, digits):
    digits = [d % len(gens) for d in digits]
    state = initial_state()
    for d in digits:
        state = step(state, gens[d])
    direct = compose_all(gens[d] for d in digits)
    assert np.allclose(state.product.entries(), direct.entries(), atol=1e-9, rtol=1e-9)


def test_parabolic_iteration_converges_to_infinity():
    report = run_sequence([Moebius.translation(1.0)], max_steps=20000)
    assert report.outcome is ConvergenceOutcome.IDEAL_CONVERGENCE
    assert report.steps_used < 20000
    assert chordal(report.limit, INFINITY) < 1e-3
    assert report.seed == 0


def test_continued_fraction_pair_random_streams_converge():
    gens = [Moebius(1.0, 1.0, 0.0, 1.0), Moebius(1.0, 0.0, 1.0, 1.0)]
    for seed in range(5):
        report = run_sequence(gens, seed=seed)
        assert report.outcome is ConvergenceOutcome.IDEAL_CONVERGENCE
        assert report.final_rho >= 10.0
        assert math.isfinite(report.final_rho)


def test_alternating_inverses_recur_without_escaping():
    gens = [Moebius.dilation(2.0), Moebius.dilation(0.5)]
    report = run_sequence(gens, digits=[0, 1] * 200)
    assert report.outcome is ConvergenceOutcome.NOT_ESCAPING
    assert report.recurrent
    assert report.limit is None
    assert report.seed is None


def test_block_stream_escapes_without_settling():
    gens = [Moebius.dilation(2.0), Moebius.dilation(0.5)]
    report = run_sequence(
        gens, digits=[0] * 20 + [1] * 35, rho_min=5.0, window=32
    )
    assert report.outcome is ConvergenceOutcome.ESCAPING_NO_LIMIT
    assert report.oscillation is not None and report.oscillation > 1e-2
    assert report.final_rho >= 5.0


def test_short_escape_is_undecided():
    report = run_sequence([Moebius.dilation(2.0)], digits=[0] * 25)
    assert report.outcome is ConvergenceOutcome.UNDECIDED
    assert report.final_rho == pytest.approx(25.0 * math.log(2.0), rel=1e-9)


def test_single_dilation_converges_to_infinity():
    report = run_sequence([Moebius.dilation(2.0)], max_steps=2000)
    assert report.outcome is ConvergenceOutcome.IDEAL_CONVERGENCE
    assert report.limit.is_infinity


def test_deep_hyperbolic_run_stays_finite():
    # with convergence detection disabled the product's entries would overflow
    # a determinant-one representation; the report must stay finite anyway
    gens = [Moebius.dilation(4.0), Moebius.affine(4.0, 1.0)]
    report = run_sequence(gens, seed=7, max_steps=10000, eps_conv=1e-300)
    assert math.isfinite(report.final_rho)
    assert report.final_rho > 50.0


# ---------------------------------------------------------------------------
# Limit sets
# ---------------------------------------------------------------------------


def test_single_dilation_limit_points():
    forward = sample_limit_set([Moebius.dilation(2.0)], Side.FORWARD, 5)
    assert len(forward.points) == 5
    assert all(p.is_infinity for p in forward.points)
    backward = sample_limit_set([Moebius.dilation(2.0)], "backward", 5)
    assert all(abs(p.value) < 1e-12 for p in backward.points)


def test_affine_pair_forward_sample_range():
    gens = [Moebius.dilation(2.0), Moebius.affine(0.5, 1.0)]
    forward = sample_limit_set(gens, Side.FORWARD, 8)
    finite = [p.value for p in forward.points if not p.is_infinity]
    assert any(p.is_infinity for p in forward.points)
    assert min(finite) >= 2.0 - 1e-9
    assert any(abs(v - 2.0) < 1e-9 for v in finite)
    assert any(abs(v - 3.0) < 1e-9 for v in finite)
    backward = sample_limit_set(gens, Side.BACKWARD, 8)
    finite_b = [p.value for p in backward.points if not p.is_infinity]
    assert max(finite_b) <= 1e-9
    assert any(abs(v) < 1e-12 for v in finite_b)


@given(_moebius_maps())
@settings(max_examples=50, deadline=None)
def test_depth_one_sample_is_the_attracting_fixed_point(f):
    assume(tr(f) > 2.0 + 1e-6)
    sample = sample_limit_set([f], Side.FORWARD, 1)
    assert len(sample.points) == 1
    attracting, _ = fixed_points(f)
    assert chordal(sample.points[0], attracting) <= 1e-8


def _schottky_interval_pair():
    f = Moebius.hyperbolic_map(
        BoundaryPoint.from_real(-1.5), BoundaryPoint.from_real(-2.5), 2.0
    )
    g = Moebius.hyperbolic_map(
        BoundaryPoint.from_real(1.5), BoundaryPoint.from_real(2.5), 2.0
    )
    return f, g


def test_schottky_semigroup_samples_are_separated():
    f, g = _schottky_interval_pair()
    forward = sample_limit_set([f, g], Side.FORWARD, 8)
    backward = sample_limit_set([f, g], Side.BACKWARD, 8)
    assert hausdorff_distance(forward, backward) >= 0.1


def test_schottky_group_samples_coincide():
    f, g = _schottky_interval_pair()
    alphabet = [f, inverse(f), g, inverse(g)]
    for depth in (6, 8):
        forward = sample_limit_set(alphabet, Side.FORWARD, depth)
        backward = sample_limit_set(alphabet, Side.BACKWARD, depth)
        assert hausdorff_distance(forward, backward) <= 1e-6


def test_random_sequence_limits_land_near_attractors():
    f, g = _schottky_interval_pair()
    targets = [BoundaryPoint.from_real(-1.5), BoundaryPoint.from_real(1.5)]
    for seed in range(10):
        report = run_sequence([f, g], seed=seed, max_steps=2000)
        assert report.outcome is ConvergenceOutcome.IDEAL_CONVERGENCE
        assert min(chordal(report.limit, t) for t in targets) < 0.5


def test_hausdorff_distance_simple_configurations():
    a = [BoundaryPoint.from_real(0.0), BoundaryPoint.from_real(1.0)]
    assert hausdorff_distance(a, a) == pytest.approx(0.0, abs=1e-15)
    b = [BoundaryPoint.from_real(0.0)]
    expected = chordal(BoundaryPoint.from_real(1.0), BoundaryPoint.from_real(0.0))
    assert hausdorff_distance(a, b) == pytest.approx(expected, rel=1e-12)


# ---------------------------------------------------------------------------
# Continued fractions
# ---------------------------------------------------------------------------


def test_continued_fraction_verdicts():
    verdict, witness = continued_fraction_check(1.0, 1.0)
    assert verdict and witness is None
    verdict, witness = continued_fraction_check(2.0, -2.0)
    assert verdict and witness is None
    verdict, witness = continued_fraction_check(1.0, -1.0)
    assert not verdict
    assert witness.word == "FG"
    assert tr(witness.value) == pytest.approx(1.0, abs=1e-12)
    assert witness.cls.is_elliptic
    verdict, witness = continued_fraction_check(0.5, 0.0)
    assert not verdict
    assert witness.word == "G"
    assert witness.cls.is_identity


@given(
    st.floats(-3.0, 3.0, allow_nan=False),
    st.floats(-3.0, 3.0, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_continued_fraction_verdict_formula(lam, mu):
    verdict, witness = continued_fraction_check(lam, mu)
    product = lam * mu
    assert verdict == (product > 0.0 or product <= -4.0)
    if not verdict:
        assert witness is not None
        if -4.0 < product < 0.0:
            assert tr(witness.value) == pytest.approx(abs(2.0 + product), abs=1e-9)
