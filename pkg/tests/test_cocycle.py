"""Tests for the multicone search and the counterexample tuple report."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobsemi.cocycle import (
    NO_MULTICONE_MESSAGE,
    InvalidSchottkyParamsError,
    Multicone,
    SchottkyParams,
    _expand_once,
    find_multicone,
    in_E_bounded,
    near_identity_bounded,
    schottky_group_pair,
    verify_multicone,
    yoccoz_counterexample,
)
from mobsemi.core import (
    INFINITY,
    Arc,
    ArcUnion,
    BoundaryPoint,
    Moebius,
    arc_contains_arc,
    classify,
    conjugate,
    inverse,
    tr,
)


def _random_loxodromic(seed: int) -> Moebius:
    rng = random.Random(seed)
    while True:
        a, b, c, d = (rng.uniform(-2.0, 2.0) for _ in range(4))
        if a * d - b * c > 0.05:
            frame = Moebius(a, b, c, d)
            break
    return conjugate(frame, Moebius.dilation(math.exp(rng.uniform(0.3, 2.5))))


# ---------------------------------------------------------------------------
# Multicone search
# ---------------------------------------------------------------------------


def test_single_hyperbolic_has_one_arc_around_infinity():
    gens = [Moebius.dilation(2.0)]
    cone = find_multicone(gens)
    assert cone is not None
    assert len(cone.X.components) == 1
    assert cone.X.contains(INFINITY)
    assert cone.margin > 0.0
    assert verify_multicone(gens, cone)


def test_schottky_semigroup_pair_admits_multicone():
    f, h = schottky_group_pair(SchottkyParams())
    cone = find_multicone([f, h])
    assert cone is not None
    assert cone.margin > 0.0
    assert verify_multicone([f, h], cone)
    # components cluster around the two attracting fixed points
    for comp in cone.X.components:
        mid = comp.midpoint().value
        assert min(abs(mid - 1.0), abs(mid - 3.0)) < 1.0


def test_group_tuple_admits_no_multicone():
    # The semigroup generated by (F, F⁻¹, H, H⁻¹) contains the identity, so
    # no open union of arcs can be strictly contracted by every generator.
    f, h = schottky_group_pair(SchottkyParams())
    assert find_multicone([f, inverse(f), h, inverse(h)]) is None


def test_identity_generator_blocks_strictness():
    assert find_multicone([Moebius.dilation(2.0), Moebius.identity()]) is None


def test_elliptic_generator_yields_no_seeds():
    assert find_multicone([Moebius.rotation(0.7)]) is None


def test_empty_alphabet_rejected():
    with pytest.raises(ValueError):
        find_multicone([])


def test_multicone_invariants_enforced():
    arc = Arc.from_reals(10.0, 20.0)
    with pytest.raises(ValueError):
        Multicone(X=ArcUnion((arc,)), margin=0.0)
    with pytest.raises(ValueError):
        Multicone(X=ArcUnion((arc,)), margin=-1.0)
    crowded = ArcUnion(
        tuple(Arc.from_reals(float(k), k + 0.4) for k in range(65))
    )
    with pytest.raises(ValueError):
        Multicone(X=crowded, margin=0.5)


def test_verify_rejects_foreign_tuple():
    gens = [Moebius.dilation(2.0)]
    cone = find_multicone(gens)
    assert cone is not None
    # z/2 repels infinity, pushing the cone's image outside itself
    assert not verify_multicone([Moebius.dilation(0.5)], cone)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_expansion_is_monotone(seed: int):
    gens = [_random_loxodromic(seed), _random_loxodromic(seed + 20_000)]
    x = ArcUnion((Arc.from_reals(-0.1, 0.1),))
    for _ in range(5):
        try:
            grown = _expand_once(gens, x)
        except ValueError:
            return  # circle covered or component cap hit; monotone until then
        for comp in x.components:
            assert any(
                arc_contains_arc(out, comp) for out in grown.components
            )
        x = grown


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), count=st.integers(1, 3))
def test_found_multicones_are_sound_and_exclude_elliptics(seed: int, count: int):
    gens = [_random_loxodromic(seed + 10_000 * k) for k in range(count)]
    cone = find_multicone(gens, 4, 60)
    if cone is None:
        return
    assert cone.margin > 0.0
    assert verify_multicone(gens, cone)
    # uniform hyperbolicity and the elliptic locus are disjoint
    assert in_E_bounded(gens, 6) is None


# ---------------------------------------------------------------------------
# Bounded locus membership
# ---------------------------------------------------------------------------


def test_elliptic_locus_examples():
    assert in_E_bounded([Moebius.rotation(0.7)], 1).word == "F"
    f = Moebius.translation(1.0)
    g = Moebius(1.0, 0.0, -1.0, 1.0)
    witness = in_E_bounded([f, g], 2)
    assert witness.word == "FG"
    assert witness.cls.is_elliptic


def test_free_group_tuple_has_no_elliptic_words():
    f, h = schottky_group_pair(SchottkyParams())
    assert in_E_bounded([f, inverse(f), h, inverse(h)], 8) is None


def test_near_identity_membership_evidence():
    # A generator close to (but not exactly) the inverse of the first makes
    # the length-two product nearly the identity.
    f = Moebius.dilation(4.0)
    g = Moebius(0.5 + 1e-6, 0.0, 0.0, 2.0)
    witness = near_identity_bounded([f, g], 2)
    assert witness is not None
    assert witness.word == "FG"
    assert witness.distance < 1e-3
    # the exact inverse gives an identity value, which is not reported here
    assert near_identity_bounded([f, inverse(f)], 2) is None


# ---------------------------------------------------------------------------
# Schottky parameter validation
# ---------------------------------------------------------------------------


def test_schottky_pair_construction():
    f, h = schottky_group_pair(SchottkyParams())
    cf, ch = classify(f), classify(h)
    assert cf.is_hyperbolic and ch.is_hyperbolic
    assert cf.attracting.value == pytest.approx(1.0, abs=1e-9)
    assert cf.repelling.value == pytest.approx(-1.0, abs=1e-9)
    assert ch.attracting.value == pytest.approx(3.0, abs=1e-9)
    assert ch.repelling.value == pytest.approx(-3.0, abs=1e-9)
    assert tr(f) == pytest.approx(16.0 + 1.0 / 16.0, abs=1e-9)


def test_schottky_params_rejected():
    with pytest.raises(InvalidSchottkyParamsError):
        schottky_group_pair(SchottkyParams(radius=1.2))  # intervals overlap
    with pytest.raises(InvalidSchottkyParamsError):
        schottky_group_pair(SchottkyParams(radius=0.0))
    with pytest.raises(InvalidSchottkyParamsError):
        schottky_group_pair(SchottkyParams(f_multiplier=0.5))
    with pytest.raises(InvalidSchottkyParamsError):
        schottky_group_pair(SchottkyParams(f_attracting=-1.0))
    with pytest.raises(InvalidSchottkyParamsError):
        # disjoint intervals but too little translation for ping-pong
        schottky_group_pair(SchottkyParams(f_multiplier=16.0, h_multiplier=16.0))
    with pytest.raises(InvalidSchottkyParamsError):
        schottky_group_pair(SchottkyParams(radius=math.inf))


# ---------------------------------------------------------------------------
# The counterexample report
# ---------------------------------------------------------------------------


def test_counterexample_report():
    tup, report = yoccoz_counterexample()
    assert len(tup) == 4
    assert tup[1] == inverse(tup[0])
    assert tup[3] == inverse(tup[2])
    assert report.elliptic_witness is None
    assert report.identity_word == "FG"
    assert report.unperturbed_quantity == pytest.approx(0.0, abs=1e-9)
    assert report.multicone_note == NO_MULTICONE_MESSAGE
    radii = [row.radius for row in report.rows]
    assert radii == sorted(radii, reverse=True)
    for row in report.rows:
        assert row.multicones_found == 0
        assert row.samples > 0
    assert report.rows[-1].radius == pytest.approx(1e-4)
    assert report.rows[-1].joergensen_max < 1.0


def test_counterexample_quantity_collapses_with_radius():
    _, report = yoccoz_counterexample()
    maxima = [row.joergensen_max for row in report.rows]
    assert all(b < a for a, b in zip(maxima, maxima[1:]))
    assert maxima[-1] < 1e-2


def test_counterexample_witness_avoids_limit_configuration():
    tup, report = yoccoz_counterexample()
    assert report.witness_word
    letters = report.witness_word
    value = None
    from mobsemi.core import compose_all

    mapping = dict(zip("FGHK", tup))
    value = compose_all(mapping[ch] for ch in letters)
    cls = classify(value)
    assert cls.is_hyperbolic
    if report.limit_points is not None:
        a, b = report.limit_points
        from mobsemi.core import chordal

        for end in (cls.attracting, cls.repelling):
            assert min(chordal(end, a), chordal(end, b)) > 0.01


def test_counterexample_deterministic():
    _, first = yoccoz_counterexample(seed=7)
    _, second = yoccoz_counterexample(seed=7)
    assert first.rows == second.rows
    assert first.witness_word == second.witness_word


def test_counterexample_rejects_bad_params():
    with pytest.raises(InvalidSchottkyParamsError):
        yoccoz_counterexample(SchottkyParams(radius=1.2))
