"""Tests for elementary-semigroup classification and interval confinement."""

from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mobsemi.core import (
    Arc,
    ArcUnion,
    BoundaryPoint,
    HalfPlanePoint,
    Moebius,
    apply_boundary,
    arc_contains_arc,
    arc_image,
    chordal,
    compose,
    inverse,
    maps_arc_strictly_within,
)
from mobsemi.dynamics import enumerate_words, find_near_identity, oracle_refute
from mobsemi.elementary import (
    AdditiveKind,
    AffineMap,
    ElementaryKind,
    EmptyInputError,
    MJKind,
    NonpositiveInputError,
    NotInvariantError,
    classify_additive,
    classify_elementary,
    classify_multiplicative,
    exceptional_check,
    invariant_interval_scan,
    semidiscrete_in_MJ,
)

HALF_LINE = Arc(BoundaryPoint.from_real(0.0), BoundaryPoint.infinity())


def _dil(a: float) -> Moebius:
    return Moebius.dilation(a)


def _aff(a: float, b: float) -> Moebius:
    return Moebius.affine(a, b)


def _rot(center_y: float, angle: float) -> Moebius:
    return Moebius.rotation_about(HalfPlanePoint(0.0, center_y), angle)


# ---------------------------------------------------------------------------
# Additive and multiplicative trichotomies.
# ---------------------------------------------------------------------------


def test_additive_one_sided() -> None:
    assert classify_additive([1.0, 2.0, 3.0]).kind is AdditiveKind.ONE_SIDED
    assert classify_additive([-0.5, -7.0]).kind is AdditiveKind.ONE_SIDED
    assert classify_additive([0.0, 0.0]).kind is AdditiveKind.ONE_SIDED


def test_additive_discrete_group_with_unit() -> None:
    verdict = classify_additive([2.0, -3.0])
    assert verdict.kind is AdditiveKind.DISCRETE_GROUP
    assert verdict.unit == pytest.approx(1.0)


def test_additive_dense_flags_undetermined() -> None:
    verdict = classify_additive([1.0, -math.sqrt(2.0)])
    assert verdict.kind is AdditiveKind.DENSE
    assert verdict.undetermined


def test_additive_empty_input() -> None:
    with pytest.raises(EmptyInputError):
        classify_additive([])


def test_multiplicative_examples() -> None:
    assert classify_multiplicative([2.0, 4.0]).kind is AdditiveKind.ONE_SIDED
    group = classify_multiplicative([2.0, 0.5])
    assert group.kind is AdditiveKind.DISCRETE_GROUP
    assert group.unit == pytest.approx(2.0)
    assert classify_multiplicative([2.0, 1.0 / 3.0]).kind is AdditiveKind.DENSE


def test_multiplicative_rejects_nonpositive() -> None:
    with pytest.raises(NonpositiveInputError):
        classify_multiplicative([2.0, -1.0])


@given(
    st.lists(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False), min_size=1, max_size=6),
    st.floats(min_value=0.01, max_value=100.0),
)
@settings(max_examples=150, deadline=None)
def test_additive_scale_invariance(offsets: list[float], scale: float) -> None:
    base = classify_additive(offsets)
    scaled = classify_additive([scale * b for b in offsets])
    assert base.kind is scaled.kind


def test_affine_map_view() -> None:
    view = AffineMap.from_moebius(_aff(2.0, 6.0))
    assert view.a == pytest.approx(2.0)
    assert view.b == pytest.approx(6.0)
    assert view.fixed_point == pytest.approx(-6.0)
    assert AffineMap(1.0, 5.0).fixed_point is None
    with pytest.raises(NotInvariantError):
        AffineMap.from_moebius(Moebius(0.0, -1.0, 1.0, 0.0))


# ---------------------------------------------------------------------------
# Elementary classification.
# ---------------------------------------------------------------------------


def test_finite_cyclic_rotation() -> None:
    verdict = classify_elementary([_rot(1.0, 2.0 * math.pi / 5.0)])
    assert verdict.kind is ElementaryKind.FINITE_CYCLIC_ELLIPTIC
    assert dict(verdict.details)["order"] == 5.0


def test_rotation_orders_combine_to_lcm() -> None:
    verdict = classify_elementary([_rot(1.0, 2.0 * math.pi / 4.0), _rot(1.0, 2.0 * math.pi / 6.0)])
    assert verdict.kind is ElementaryKind.FINITE_CYCLIC_ELLIPTIC
    assert dict(verdict.details)["order"] == 12.0


def test_irrational_rotation_not_semidiscrete() -> None:
    verdict = classify_elementary([_rot(1.0, math.pi * math.sqrt(2.0))])
    assert verdict.kind is ElementaryKind.NOT_SEMIDISCRETE
    assert verdict.undetermined


def test_contraction_chain_with_separated_fixed_points() -> None:
    verdict = classify_elementary([_dil(2.0), _aff(0.5, 1.0)])
    assert verdict.kind is ElementaryKind.CONTRACTION_CHAIN
    assert not verdict.inverted
    s = dict(verdict.details)["separator"]
    assert 0.0 < s < 2.0
    # Every generator maps [s, +∞] strictly inside itself.
    arc = Arc(BoundaryPoint.from_real(s), BoundaryPoint.infinity())
    for g in (_dil(2.0), _aff(0.5, 1.0)):
        assert maps_arc_strictly_within(g, arc)


def test_interleaved_fixed_points_refuted_by_oracle() -> None:
    gens = [_dil(2.0), _aff(0.5, 1.0), _dil(1.0 / 3.0)]
    verdict = classify_elementary(gens)
    assert verdict.kind is ElementaryKind.NOT_SEMIDISCRETE
    # 2⁸/3⁵ = 256/243 ≈ 1.0535, so the word F⁸H⁵ already sits close to the
    # identity; deeper words get arbitrarily close.
    evidence = find_near_identity(enumerate_words(gens, 13), eps_near=3e-2)
    assert evidence is not None
    assert evidence.distance < 3e-2


def test_exceptional_family_not_semidiscrete() -> None:
    verdict = classify_elementary([_dil(2.0), _dil(0.5), _aff(1.0, 1.0)])
    assert verdict.kind is ElementaryKind.NOT_SEMIDISCRETE
    assert "exceptional" in verdict.reason


def test_hyperbolic_group_pair() -> None:
    verdict = classify_elementary([_dil(2.0), _dil(0.5)])
    assert verdict.kind is ElementaryKind.HYPERBOLIC_GROUP_PAIR
    assert dict(verdict.details)["multiplier"] == pytest.approx(2.0)


def test_dense_dilations_not_semidiscrete() -> None:
    verdict = classify_elementary([_dil(2.0), _dil(1.0 / 3.0)])
    assert verdict.kind is ElementaryKind.NOT_SEMIDISCRETE
    assert verdict.undetermined


def test_translation_lattice() -> None:
    verdict = classify_elementary([_aff(1.0, 2.0), _aff(1.0, -3.0)])
    assert verdict.kind is ElementaryKind.TRANSLATION_MIXED
    assert dict(verdict.details)["translation_unit"] == pytest.approx(1.0)


def test_expanding_maps_over_translation_lattice() -> None:
    verdict = classify_elementary([_dil(2.0), _aff(1.0, 1.0), _aff(1.0, -1.0)])
    assert verdict.kind is ElementaryKind.TRANSLATION_MIXED
    assert not verdict.inverted


def test_left_translations_classify_through_the_inverse_family() -> None:
    verdict = classify_elementary([_dil(2.0), _aff(1.0, -1.0)])
    assert verdict.kind is ElementaryKind.CONTRACTION_CHAIN
    assert verdict.inverted
    direct = classify_elementary([_dil(0.5), _aff(1.0, 1.0)])
    assert direct.kind is ElementaryKind.CONTRACTION_CHAIN
    assert not direct.inverted


def test_half_turn_extension_is_a_group_pair() -> None:
    half_turn = Moebius(0.0, -1.0, 1.0, 0.0)
    verdict = classify_elementary([half_turn, _dil(4.0)])
    assert verdict.kind is ElementaryKind.HYPERBOLIC_GROUP_PAIR
    details = dict(verdict.details)
    assert details["half_turn"] == 1.0
    assert details["multiplier"] == pytest.approx(4.0)


def test_two_collinear_half_turns() -> None:
    verdict = classify_elementary([_rot(1.0, math.pi), _rot(2.0, math.pi)])
    assert verdict.kind is ElementaryKind.HYPERBOLIC_GROUP_PAIR
    assert dict(verdict.details)["multiplier"] == pytest.approx(4.0)


def test_not_elementary_families() -> None:
    assert classify_elementary([_aff(1.0, 1.0), Moebius(0.0, -1.0, 1.0, 0.0)]).kind \
        is ElementaryKind.NOT_ELEMENTARY
    assert classify_elementary([_rot(1.0, 2.0 * math.pi / 5.0), _dil(2.0)]).kind \
        is ElementaryKind.NOT_ELEMENTARY


def test_conjugator_normalizes_the_common_point() -> None:
    h0 = Moebius(1.0, -1.0, 1.0, 1.0)  # move the fixed configuration off ∞
    gens = [compose(h0, compose(g, inverse(h0))) for g in (_dil(2.0), _aff(0.5, 1.0))]
    verdict = classify_elementary(gens)
    assert verdict.kind is ElementaryKind.CONTRACTION_CHAIN
    assert verdict.conjugator is not None
    # The recorded conjugator sends every normalized generator to an affine map.
    for g in gens:
        view = AffineMap.from_moebius(
            compose(verdict.conjugator, compose(g, inverse(verdict.conjugator))),
            eps_pt=1e-7,
        )
        assert view.a > 0


@given(st.sampled_from([
    ("chain", (2.0, 0.0), (0.5, 1.0)),
    ("lattice", (1.0, 2.0), (1.0, -3.0)),
    ("pair", (2.0, 0.0), (0.5, 0.0)),
]))
@settings(max_examples=20, deadline=None)
def test_inverse_family_keeps_the_class(fixture) -> None:
    _, (a1, b1), (a2, b2) = fixture
    gens = [_aff(a1, b1), _aff(a2, b2)]
    forward = classify_elementary(gens)
    backward = classify_elementary([inverse(g) for g in gens])
    assert forward.kind is backward.kind


def test_identity_only_generating_set() -> None:
    verdict = classify_elementary([Moebius.identity()])
    assert verdict.kind is ElementaryKind.FINITE_CYCLIC_ELLIPTIC
    assert dict(verdict.details)["order"] == 1.0


# ---------------------------------------------------------------------------
# Invariant intervals and exceptional configurations.
# ---------------------------------------------------------------------------


def test_interval_scan_finds_half_line() -> None:
    arc = invariant_interval_scan([_dil(math.sqrt(2.0)), _dil(0.5), _aff(1.0, 1.0)])
    assert arc is not None
    assert chordal(arc.p, BoundaryPoint.from_real(0.0)) < 1e-9
    assert arc.q.is_infinity


def test_interval_scan_rejects_half_turn_pair() -> None:
    assert invariant_interval_scan([_dil(2.0), Moebius(0.0, -1.0, 1.0, 0.0)]) is None


def test_interval_scan_single_parabolic() -> None:
    arc = invariant_interval_scan([_aff(1.0, 1.0)])
    assert arc is not None
    assert arc_contains_arc(arc, arc_image(_aff(1.0, 1.0), arc))


def test_exceptional_recipe() -> None:
    assert exceptional_check([_dil(2.0), _dil(0.5), _aff(1.0, 1.0)])
    assert exceptional_check([_dil(2.0), _dil(0.5), _aff(3.0, 1.0)])
    assert not exceptional_check([_dil(2.0), _dil(3.0)])
    endpoint_free = Moebius(1.0, 1.0, 1.0, 2.0)  # (z+1)/(z+2) fixes neither 0 nor ∞
    assert not exceptional_check([_dil(2.0), _dil(0.5), endpoint_free])


def test_exceptional_accumulation_realized_by_words() -> None:
    # Conjugating z+1 by the dilation group drags it toward the identity:
    # the words (z/2)ⁿ (z+1) (2z)ⁿ = z + 2⁻ⁿ approach the identity
    # geometrically, witnessed at depth 2n+1.
    gens = [_dil(2.0), _dil(0.5), _aff(1.0, 1.0)]
    table = enumerate_words(gens, 13)
    witness = find_near_identity(table, eps_near=2e-2)
    assert witness is not None
    assert witness.distance < 2e-2


# ---------------------------------------------------------------------------
# Confined semigroups.
# ---------------------------------------------------------------------------


def test_mj_one_sided_with_certificate() -> None:
    verdict = semidiscrete_in_MJ([_dil(2.0), _dil(3.0), _aff(1.0, 1.0)], HALF_LINE)
    assert verdict.kind is MJKind.SDIF_PLUS_IDENTITY
    assert verdict.certificate is not None
    for g in (_dil(2.0), _dil(3.0), _aff(1.0, 1.0)):
        for comp in verdict.certificate.components:
            image = arc_image(g, comp)
            assert any(
                arc_contains_arc(other, image)
                for other in verdict.certificate.components
            )
        assert maps_arc_strictly_within(g, verdict.certificate.components[0])


def test_mj_one_sided_oracle_agreement() -> None:
    gens = [_dil(2.0), _dil(3.0), _aff(1.0, 1.0)]
    assert semidiscrete_in_MJ(gens, HALF_LINE).kind is MJKind.SDIF_PLUS_IDENTITY
    assert oracle_refute(gens, 12) is None


def test_mj_exceptional_family() -> None:
    verdict = semidiscrete_in_MJ([_dil(2.0), _dil(0.5), _aff(1.0, 1.0)], HALF_LINE)
    assert verdict.kind is MJKind.NOT_SEMIDISCRETE
    assert "exceptional" in verdict.reason
    scaled = semidiscrete_in_MJ(
        [_dil(math.sqrt(2.0)), _dil(0.5), _aff(1.0, 1.0)], HALF_LINE)
    assert scaled.kind is MJKind.NOT_SEMIDISCRETE


def test_mj_discrete_group_with_endpoint_free_companion() -> None:
    companion = Moebius(1.0, 1.0, 1.0, 2.0)
    verdict = semidiscrete_in_MJ([_dil(2.0), _dil(0.5), companion], HALF_LINE)
    assert verdict.kind is MJKind.SEMIDISCRETE


def test_mj_dense_dilations() -> None:
    verdict = semidiscrete_in_MJ([_dil(2.0), _dil(1.0 / 3.0)], HALF_LINE)
    assert verdict.kind is MJKind.DENSE_IN_M0
    assert verdict.undetermined


def test_mj_requires_invariance() -> None:
    with pytest.raises(NotInvariantError):
        semidiscrete_in_MJ([_aff(1.0, -1.0)], HALF_LINE)


def test_mj_certificate_in_a_conjugated_frame() -> None:
    q = Moebius(1.0, -1.0, 1.0, 1.0)
    gens = [compose(q, compose(g, inverse(q)))
            for g in (_dil(2.0), _dil(3.0), _aff(1.0, 1.0))]
    J = arc_image(q, HALF_LINE)
    verdict = semidiscrete_in_MJ(gens, J)
    assert verdict.kind is MJKind.SDIF_PLUS_IDENTITY
    assert verdict.certificate is not None
    for g in gens:
        assert maps_arc_strictly_within(g, verdict.certificate.components[0])


def test_mj_certificate_far_endpoint_is_exact() -> None:
    verdict = semidiscrete_in_MJ([_dil(2.0), _dil(3.0), _aff(1.0, 1.0)], HALF_LINE)
    assert verdict.certificate.components[0].q.is_infinity
