"""Deciding semidiscreteness and inverse-freeness for two generators.

A pair of non-elementary Möbius transformations generates a semidiscrete,
inverse-free semigroup exactly when a short list of trace conditions
holds: two parabolics need fg non-elliptic; a parabolic f and a
hyperbolic g need fⁿg non-elliptic for n up to 2·tr(g)/√(tr[f,g] − 2);
and two hyperbolics are either not *antiparallel* — some closed interval
bounded by the attracting fixed points is mapped properly into itself by
both maps, equivalently the fixed-point cross-ratio is below one — or the
pair reduces through the substitution (f, g) → (f, fg), reordered by
trace, until a terminal configuration is reached.  The reduction strictly
decreases tr(g) by more than tr(fg) − 2 per step (a consequence of the
reflection factorization below), so it terminates.

Each terminal configuration carries an explicit witness.  A refutation is
an elliptic word: any semigroup containing an elliptic of infinite order
is indiscrete, and one of finite order collapses the semigroup into the
group it generates.  A confirmation is a pair of interval systems in
Schottky position, built by factoring the terminal maps into reflections:
writing f = σ'σ_f and g = σ_g σ'' with the common perpendicular (or a
shared horocycle direction) as middle mirror pins down four intervals
A, B, C, D with pairwise disjoint interiors such that the terminal f maps
the complement of A onto B and the terminal g maps the complement of C
onto D.  A dumb checker re-verifies this with nothing beyond arc images
and containment tests, then rewinds the substitutions mechanically — the
certificate stores the terminal maps as words in the original letters.

When a generator is elliptic the semigroup is never inverse-free, but it
can still be semidiscrete: an elliptic f of finite order m with fⁿg
never elliptic for 0 < n < m generates a semidiscrete semigroup with
non-trivial group part, while a finite-order elliptic word reduces the
whole question to discreteness of the generated *group*, which is
screened with Jørgensen's inequality and otherwise reported rather than
decided.  The same inequality has a semigroup form: every non-elementary
semidiscrete pair satisfies |Tr(F)² − 4| + |Tr[F,G] − 2| ≥ 1 unless both
maps carry a common closed interval properly into itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple, Optional, Union

import numpy as np

from .core import (
    EPS_CLASS,
    IdentityInputError,
    EPS_POINT,
    EPS_STRICT,
    INFINITY,
    Arc,
    BoundaryPoint,
    MapKind,
    Moebius,
    MoebiusClass,
    NotApplicableError,
    SharedFixedPointError,
    apply_boundary,
    arc_contains_arc,
    arc_image,
    chordal,
    classify,
    commutator_trace,
    compose,
    compose_all,
    conjugate,
    inverse,
    is_identity,
    maps_arc_strictly_within,
    product_trace,
    tr,
)
from .dynamics import EllipticWitness, enumerate_words, find_elliptic
from .elementary import ElementaryVerdict, classify_elementary

MAX_PHI_STEPS = 10_000  # trace-reduction steps before giving up as Borderline
WORD_LENGTH_CAP = 1_000_000  # certificate words longer than this are not materialized
EPS_JORGENSEN = 1e-12  # slack on the unit threshold of the trace inequality
REFINEMENT_ROUNDS = 3  # dyadic midpoint rounds in the common-interval search
WITNESS_HUNT_DEPTH = 10  # word depth searched for an elliptic when screening fails


class CommutatorTraceNotAboveTwoError(ValueError):
    """tr[f,g] ≤ 2, so the power bound 2 tr(g)/√(tr[f,g] − 2) is undefined."""


class PairStatus(str, Enum):
    """Outcome of the two-generator classification."""

    SEMIDISCRETE_INVERSE_FREE = "SemidiscreteInverseFree"
    SEMIDISCRETE_GROUP_AND_FREE = "SemidiscreteGroupAndFree"
    REQUIRES_GROUP_DISCRETENESS = "RequiresGroupDiscreteness"
    NOT_SEMIDISCRETE = "NotSemidiscrete"
    ELEMENTARY = "Elementary"
    BORDERLINE = "Borderline"


class ElementaryPairType(str, Enum):
    """The three shapes of an elementary two-generator semigroup."""

    ELLIPTIC_PAIR = "EllipticPair"  # both elliptic: common center, or both order two
    HALF_TURN_INTERCHANGE = "HalfTurnInterchange"  # order two swapping the other's fixed points
    COMMON_FIXED_POINT = "CommonFixedPoint"  # parabolic/hyperbolic sharing a fixed point


@dataclass(frozen=True, slots=True)
class SchottkyCertificate:
    """Interval data a checker can re-verify by arc containment alone.

    ``kind`` is ``"PairedIntervals"`` — arcs a, b, c, d have pairwise
    disjoint interiors, the map named by ``f_word`` sends the complement
    of a's interior into b, and the map named by ``g_word`` sends the
    complement of c's interior into d — or ``"CommonContractedInterval"``,
    where both words carry the single arc ``interval`` properly into
    itself (the image is contained in the arc and is not the whole arc;
    endpoints may be fixed).  Words are over the letters F and G naming
    the original generators, leftmost letter applied last, so the terminal
    maps of the trace reduction are reconstructed mechanically.
    """

    kind: str
    f_word: str
    g_word: str
    a: Optional[Arc] = None
    b: Optional[Arc] = None
    c: Optional[Arc] = None
    d: Optional[Arc] = None
    interval: Optional[Arc] = None


PAIRED_INTERVALS = "PairedIntervals"
COMMON_CONTRACTED_INTERVAL = "CommonContractedInterval"


@dataclass(frozen=True, slots=True)
class TraceCertificate:
    """Arithmetic record of a terminal antiparallel hyperbolic pair.

    Asserts that the words evaluate to hyperbolic maps with tr(f) ≤ tr(g),
    disjoint axes with attracting points separating repelling ones
    (antiparallel position), fg non-elliptic, and tr[f,g] ≥ tr(g)² − 2 —
    together these force Schottky position even when the interval
    construction itself is too ill-conditioned to verify numerically.
    """

    f_word: str
    g_word: str
    tr_f: float
    tr_g: float
    tr_fg: float
    tr_commutator: float


Certificate = Union[SchottkyCertificate, TraceCertificate]


@dataclass(frozen=True, slots=True)
class PairVerdict:
    """Classification outcome for an ordered pair of generators.

    ``reduction_trace`` records (tr(fₙ), tr(gₙ), tr(fₙgₙ)) for each
    executed substitution step.  ``witness`` refutes semidiscreteness or
    inverse-freeness by exhibiting an elliptic word; ``certificate``
    confirms Schottky position.  ``undetermined`` flags verdicts that
    lean on a numerically unresolvable decision (e.g. whether a rotation
    angle is a rational multiple of π).
    """

    status: PairStatus
    certificate: Optional[Certificate] = None
    witness: Optional[EllipticWitness] = None
    reduction_trace: tuple[tuple[float, float, float], ...] = ()
    elementary_type: Optional[ElementaryPairType] = None
    elementary: Optional[ElementaryVerdict] = None
    joergensen_violated: Optional[bool] = None
    undetermined: bool = False
    reason: str = ""


class JoergensenReport(NamedTuple):
    """Semigroup trace inequality, with its interval escape clause."""

    satisfied: bool
    lhs: float
    has_common_contracted_interval: bool


# ---------------------------------------------------------------------------
# Word bookkeeping
# ---------------------------------------------------------------------------


def _word_value(word: str, f: Moebius, g: Moebius) -> Moebius:
    """Evaluate a word over {F, G}; leftmost letter is applied last."""
    return compose_all(f if ch == "F" else g for ch in word)


def _word_letters(word: str) -> tuple[int, ...]:
    return tuple(0 if ch == "F" else 1 for ch in word)


def _elliptic_witness(word: str, value: Moebius, cls: MoebiusClass) -> EllipticWitness:
    return EllipticWitness(
        word=word, letters=_word_letters(word), value=value, cls=cls
    )


# ---------------------------------------------------------------------------
# Elementary pairs and antiparallel position
# ---------------------------------------------------------------------------


def _fixed_point_set(cls: MoebiusClass) -> tuple[BoundaryPoint, ...]:
    if cls.kind is MapKind.PARABOLIC:
        assert cls.fixed is not None
        return (cls.fixed,)
    if cls.kind is MapKind.HYPERBOLIC:
        assert cls.attracting is not None and cls.repelling is not None
        return (cls.attracting, cls.repelling)
    return ()


def _share_boundary_fixed_point(
    cf: MoebiusClass, cg: MoebiusClass, eps_pt: float
) -> bool:
    return any(
        chordal(p, q) <= eps_pt
        for p in _fixed_point_set(cf)
        for q in _fixed_point_set(cg)
    )


def _is_half_turn(cls: MoebiusClass) -> bool:
    return cls.kind is MapKind.ELLIPTIC and cls.order == 2


def _interchanges(
    h: Moebius, p: BoundaryPoint, q: BoundaryPoint, eps_pt: float
) -> bool:
    return (
        chordal(apply_boundary(h, p), q) <= eps_pt
        and chordal(apply_boundary(h, q), p) <= eps_pt
    )


def elementary_check(
    f: Moebius, g: Moebius, *, eps_pt: float = EPS_POINT
) -> Optional[ElementaryPairType]:
    """Detect the elementary two-generator configurations.

    Returns the configuration type, or ``None`` when ⟨f, g⟩ is not
    elementary: (a) two elliptics sharing a rotation center, or both of
    order two; (b) an order-two elliptic and a non-elliptic whose fixed
    points it interchanges; (c) two non-elliptic maps with a common fixed
    point.  Every other pair of non-identity maps has a free, hence
    non-elementary, sub-semigroup somewhere in the generated group.
    """
    if is_identity(f) or is_identity(g):
        raise IdentityInputError("elementary_check requires non-identity maps")
    cf = classify(f)
    cg = classify(g)
    if cf.is_elliptic and cg.is_elliptic:
        if _is_half_turn(cf) and _is_half_turn(cg):
            return ElementaryPairType.ELLIPTIC_PAIR
        # Shared rotation center ⟺ the commutator is the identity.
        if is_identity(compose(compose(f, g), compose(inverse(f), inverse(g)))):
            return ElementaryPairType.ELLIPTIC_PAIR
        return None
    if cf.is_elliptic or cg.is_elliptic:
        rot, rot_cls = (f, cf) if cf.is_elliptic else (g, cg)
        other_cls = cg if cf.is_elliptic else cf
        if not _is_half_turn(rot_cls):
            return None
        pts = _fixed_point_set(other_cls)
        if len(pts) == 1:
            # A half-turn cannot fix a boundary point, so a parabolic's
            # fixed point is never preserved — only the two-point case
            # can be interchanged.
            return None
        if _interchanges(rot, pts[0], pts[1], eps_pt):
            return ElementaryPairType.HALF_TURN_INTERCHANGE
        return None
    if _share_boundary_fixed_point(cf, cg, eps_pt):
        return ElementaryPairType.COMMON_FIXED_POINT
    return None


def _attracting_or_fixed(cls: MoebiusClass) -> BoundaryPoint:
    if cls.kind is MapKind.PARABOLIC:
        assert cls.fixed is not None
        return cls.fixed
    assert cls.attracting is not None
    return cls.attracting


def _contracted_axis_arc(
    f: Moebius,
    g: Moebius,
    cf: MoebiusClass,
    cg: MoebiusClass,
    *,
    eps_pt: float = EPS_POINT,
) -> Optional[Arc]:
    """A closed arc bounded by the attracting points that both maps carry
    properly into itself, or ``None`` when the pair is antiparallel."""
    p = _attracting_or_fixed(cf)
    q = _attracting_or_fixed(cg)
    if chordal(p, q) <= eps_pt:
        raise SharedFixedPointError("attracting fixed points coincide")
    for arc in (Arc(p, q), Arc(q, p)):
        if maps_arc_strictly_within(f, arc, eps_pt) and maps_arc_strictly_within(
            g, arc, eps_pt
        ):
            return arc
    return None


def antiparallel(f: Moebius, g: Moebius) -> bool:
    """Whether neither interval bounded by the attracting fixed points is
    mapped properly into itself by both maps.

    For hyperbolic pairs this is equivalent to the repelling fixed points
    lying in distinct components of the complement of the attracting
    ones, i.e. to the fixed-point cross-ratio exceeding one.  Requires
    parabolic or hyperbolic inputs without a common fixed point.
    """
    cf = classify(f)
    cg = classify(g)
    for cls in (cf, cg):
        if cls.kind not in (MapKind.PARABOLIC, MapKind.HYPERBOLIC):
            raise NotApplicableError(
                "antiparallel position requires parabolic or hyperbolic maps"
            )
    if _share_boundary_fixed_point(cf, cg, EPS_POINT):
        raise SharedFixedPointError("maps share a fixed point")
    return _contracted_axis_arc(f, g, cf, cg) is None


# ---------------------------------------------------------------------------
# Arc utilities for certificates
# ---------------------------------------------------------------------------


def _neg_point(p: BoundaryPoint) -> BoundaryPoint:
    if p.is_infinity:
        return INFINITY
    return BoundaryPoint.from_real(-p.value)


def _neg_arc(arc: Arc) -> Arc:
    """Image of an arc under z ↦ −z (orientation-reversing on ℝ̂)."""
    return Arc(_neg_point(arc.q), _neg_point(arc.p))


def _invert_point(p: BoundaryPoint) -> BoundaryPoint:
    if p.is_infinity:
        return BoundaryPoint.from_real(0.0)
    if abs(p.value) <= EPS_POINT * EPS_POINT:
        return INFINITY
    return BoundaryPoint.from_real(1.0 / p.value)


def _invert_arc(arc: Arc) -> Arc:
    """Image of an arc under the reflection z ↦ 1/z̄ restricted to ℝ̂."""
    return Arc(_invert_point(arc.q), _invert_point(arc.p))


def _strictly_inside(pt: BoundaryPoint, arc: Arc, eps_pt: float) -> bool:
    return (
        arc.contains(pt, eps_pt)
        and chordal(pt, arc.p) > eps_pt
        and chordal(pt, arc.q) > eps_pt
    )


def _interiors_disjoint(x: Arc, y: Arc, eps_pt: float = EPS_POINT) -> bool:
    if _strictly_inside(y.p, x, eps_pt) or _strictly_inside(y.q, x, eps_pt):
        return False
    if _strictly_inside(x.p, y, eps_pt) or _strictly_inside(x.q, y, eps_pt):
        return False
    if chordal(x.p, y.p) <= eps_pt and chordal(x.q, y.q) <= eps_pt:
        return False  # the same arc twice
    return True


def verify_pair_certificate(
    f: Moebius, g: Moebius, certificate: Certificate
) -> bool:
    """Re-check a certificate from scratch against the original generators.

    Uses nothing beyond word evaluation, arc images, containment tests and
    traces, so a verified certificate is independent corroboration of the
    classification rather than a replay of it.
    """
    if isinstance(certificate, TraceCertificate):
        fv = _word_value(certificate.f_word, f, g)
        gv = _word_value(certificate.g_word, f, g)
        tf, tg = tr(fv), tr(gv)
        if tf <= 2.0 + EPS_CLASS or tg <= 2.0 + EPS_CLASS:
            return False
        if tf > tg + EPS_CLASS:
            return False
        try:
            if not antiparallel(fv, gv):
                return False
        except (SharedFixedPointError, NotApplicableError):
            return False
        if abs(product_trace(fv, gv)) < 2.0 - EPS_CLASS:
            return False
        if commutator_trace(fv, gv) < tg * tg - 2.0 - EPS_STRICT:
            return False
        recorded = (
            certificate.tr_f,
            certificate.tr_g,
            certificate.tr_fg,
            certificate.tr_commutator,
        )
        actual = (tf, tg, product_trace(fv, gv), commutator_trace(fv, gv))
        return all(
            math.isclose(r, a, rel_tol=1e-9, abs_tol=1e-9)
            for r, a in zip(recorded, actual)
        )
    if certificate.kind == COMMON_CONTRACTED_INTERVAL:
        if certificate.interval is None:
            return False
        fv = _word_value(certificate.f_word, f, g)
        gv = _word_value(certificate.g_word, f, g)
        return maps_arc_strictly_within(
            fv, certificate.interval, EPS_POINT
        ) and maps_arc_strictly_within(gv, certificate.interval, EPS_POINT)
    if certificate.kind == PAIRED_INTERVALS:
        arcs = (certificate.a, certificate.b, certificate.c, certificate.d)
        if any(arc is None for arc in arcs):
            return False
        a, b, c, d = arcs
        for i in range(4):
            for j in range(i + 1, 4):
                if not _interiors_disjoint(arcs[i], arcs[j]):
                    return False
        fv = _word_value(certificate.f_word, f, g)
        gv = _word_value(certificate.g_word, f, g)
        if not arc_contains_arc(b, arc_image(fv, Arc(a.q, a.p)), EPS_POINT):
            return False
        if not arc_contains_arc(d, arc_image(gv, Arc(c.q, c.p)), EPS_POINT):
            return False
        return True
    return False


# ---------------------------------------------------------------------------
# Normalized frames
# ---------------------------------------------------------------------------


def _send_to_zero_infinity(p: BoundaryPoint, q: BoundaryPoint) -> Moebius:
    """An orientation-preserving map with p ↦ 0 and q ↦ ∞."""
    if p.is_infinity:
        return Moebius(0.0, -1.0, 1.0, -q.value)
    if q.is_infinity:
        return Moebius(1.0, -p.value, 0.0, 1.0)
    if q.value > p.value:
        return Moebius(-1.0, p.value, 1.0, -q.value)
    return Moebius(1.0, -p.value, 1.0, -q.value)


def _parabolic_frame(
    par: Moebius, p_par: BoundaryPoint, p_other: BoundaryPoint
) -> tuple[Moebius, float]:
    """Conjugator h with h p_par = ∞, h p_other = 0 and h f h⁻¹ = z ± 2.

    Returns (h, s) where s = ±1 is the sign of the translation; the sign
    is intrinsic — orientation-preserving conjugacies cannot flip it — so
    mirror-image configurations are handled by negating certificate arcs.
    """
    h0 = _send_to_zero_infinity(p_other, p_par)
    t0 = conjugate(h0, par)
    tau = t0.b / t0.d  # canonical parabolic fixing ∞ is [[1, τ], [0, 1]]
    s = 1.0 if tau > 0 else -1.0
    h = compose(Moebius.dilation(2.0 / abs(tau)), h0)
    return h, s


def _translation_normalize(g_hat: Moebius) -> Moebius:
    """Translation t making the conjugated matrix balanced (a = d).

    A balanced matrix is exactly the condition for reflection · g to be an
    involution, i.e. for g to factor through the mirror at the vertical
    line over 0.
    """
    a, b, c, d = g_hat.entries()
    if abs(c) <= EPS_POINT * EPS_POINT:
        raise NotApplicableError("map fixes infinity; no balancing translation")
    return Moebius.translation((d - a) / (2.0 * c))


def _real_roots(a: float, b: float, c: float) -> tuple[BoundaryPoint, BoundaryPoint]:
    """Roots of a x² + b x + c on ℝ̂, with a vanishing leading coefficient
    contributing the point at infinity."""
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0.0:
        raise NotApplicableError("degenerate quadratic")
    if abs(a) <= 1e-14 * scale:
        if abs(b) <= 1e-14 * scale:
            raise NotApplicableError("degenerate quadratic")
        return (BoundaryPoint.from_real(-c / b), INFINITY)
    roots = np.roots([a, b, c])
    if np.max(np.abs(np.imag(roots))) > 1e-7 * max(1.0, np.max(np.abs(roots))):
        raise NotApplicableError("mirror line has no real endpoints")
    r = np.sort(np.real(roots))
    return (BoundaryPoint.from_real(float(r[0])), BoundaryPoint.from_real(float(r[1])))


# ---------------------------------------------------------------------------
# Certificate constructions at the terminal configurations
# ---------------------------------------------------------------------------


def _pull_back(h_inv: Moebius, arcs: tuple[Arc, ...]) -> tuple[Arc, ...]:
    return tuple(arc_image(h_inv, arc) for arc in arcs)


def _two_parabolic_certificate(
    f: Moebius,
    g: Moebius,
    wf: str,
    wg: str,
    cf: MoebiusClass,
    cg: MoebiusClass,
) -> Optional[SchottkyCertificate]:
    """Schottky intervals for an antiparallel parabolic pair.

    In the frame f = z + 2, g fixing 0, the second map factors as the
    mirror over 0 composed with the reflection in a half-circle with feet
    0 and a; fg is non-elliptic exactly when a ≤ 1, and then f maps the
    complement of [−∞, −1] to [1, ∞] while g maps the complement of
    [0, a] to [−a, 0].
    """
    assert cf.fixed is not None and cg.fixed is not None
    h, s = _parabolic_frame(f, cf.fixed, cg.fixed)
    gh = conjugate(h, g)
    a_, b_, c_, d_ = gh.entries()
    if abs(c_) <= EPS_POINT:
        return None
    foot = -(a_ + d_) / c_  # second fixed point of the mirror through 0
    t = s * foot
    if t <= 0.0:
        return None  # not in antiparallel position after all
    t = min(t, 1.0)  # tangency: fg parabolic puts the feet at distance 1
    one = BoundaryPoint.from_real(1.0)
    neg_one = BoundaryPoint.from_real(-1.0)
    zero = BoundaryPoint.from_real(0.0)
    arcs = (
        Arc(INFINITY, neg_one),
        Arc(one, INFINITY),
        Arc(zero, BoundaryPoint.from_real(t)),
        Arc(BoundaryPoint.from_real(-t), zero),
    )
    if s < 0:
        arcs = tuple(_neg_arc(arc) for arc in arcs)
    a, b, c, d = _pull_back(inverse(h), arcs)
    return SchottkyCertificate(
        kind=PAIRED_INTERVALS, f_word=wf, g_word=wg, a=a, b=b, c=c, d=d
    )


def _parabolic_hyperbolic_certificate(
    f: Moebius,
    g: Moebius,
    wf: str,
    wg: str,
    cf: MoebiusClass,
    cg: MoebiusClass,
) -> Optional[SchottkyCertificate]:
    """Schottky intervals for an antiparallel parabolic–hyperbolic pair.

    In the frame f = z + 2 with g balanced, g factors as the mirror over 0
    composed with the reflection in the half-circle with feet u < v (both
    positive by antiparallelness); fⁿg is elliptic exactly when u < n < v,
    so when no power is elliptic the feet lie in [n₀, n₀ + 1] for
    n₀ = ⌊u⌋ and f, fⁿ⁰g are in Schottky position.
    """
    assert cf.fixed is not None
    other = cg.attracting if cg.attracting is not None else cg.fixed
    assert other is not None
    h0, s = _parabolic_frame(f, cf.fixed, other)
    t_bal = _translation_normalize(conjugate(h0, g))
    h = compose(t_bal, h0)
    gh = conjugate(h, g)
    a_, b_, c_, d_ = gh.entries()
    u_pt, v_pt = _real_roots(c_, a_ + d_, b_)
    if u_pt.is_infinity or v_pt.is_infinity:
        return None
    u, v = u_pt.value, v_pt.value
    if s < 0:
        u, v = -v, -u  # mirror the frame to positive translation
    if u <= 0.0 or v <= u:
        return None
    n0 = math.floor(u + EPS_POINT)
    if v > n0 + 1.0 + EPS_POINT:
        return None  # an elliptic power was missed; no certificate
    v = min(v, float(n0 + 1))
    arcs = (
        Arc(INFINITY, BoundaryPoint.from_real(float(n0 - 1))),
        Arc(BoundaryPoint.from_real(float(n0 + 1)), INFINITY),
        Arc(BoundaryPoint.from_real(u), BoundaryPoint.from_real(v)),
        Arc(
            BoundaryPoint.from_real(2.0 * n0 - v),
            BoundaryPoint.from_real(2.0 * n0 - u),
        ),
    )
    if s < 0:
        arcs = tuple(_neg_arc(arc) for arc in arcs)
    a, b, c, d = _pull_back(inverse(h), arcs)
    return SchottkyCertificate(
        kind=PAIRED_INTERVALS,
        f_word=wf,
        g_word=wf * n0 + wg,
        a=a,
        b=b,
        c=c,
        d=d,
    )


def _hyperbolic_frame(
    f: Moebius, g: Moebius, cf: MoebiusClass, cg: MoebiusClass
) -> Optional[tuple[Moebius, float]]:
    """Conjugator h with h f h⁻¹ = λ²z (0 < λ < 1) and the common
    perpendicular of the axes moved to the unit half-circle."""
    assert cf.attracting is not None and cf.repelling is not None
    h1 = _send_to_zero_infinity(cf.attracting, cf.repelling)
    p = apply_boundary(h1, cg.attracting)  # type: ignore[arg-type]
    q = apply_boundary(h1, cg.repelling)  # type: ignore[arg-type]
    if p.is_infinity or q.is_infinity:
        return None
    prod = p.value * q.value
    if prod <= 0.0:
        return None  # axes cross or touch: no common perpendicular
    h = compose(Moebius.dilation(1.0 / math.sqrt(prod)), h1)
    fh = conjugate(h, f)
    lam_sq = abs(fh.a / fh.d) if abs(fh.d) > EPS_POINT else float("inf")
    if not (0.0 < lam_sq < 1.0):
        return None
    return h, math.sqrt(lam_sq)


def _two_hyperbolic_certificate(
    f: Moebius,
    g: Moebius,
    wf: str,
    wg: str,
    cf: MoebiusClass,
    cg: MoebiusClass,
) -> Optional[SchottkyCertificate]:
    """Schottky intervals for a terminal antiparallel hyperbolic pair.

    In the frame f = λ²z with the common perpendicular of the axes at the
    unit half-circle, the mirror feet of f sit at ±λ and those of g at
    u < v inside (−λ, λ)… after reflecting through the unit circle this
    reads: f maps the complement of [1/λ, −1/λ] to [−λ, λ] and g maps the
    complement of [u, v] to [1/v, 1/u], four arcs with disjoint interiors
    precisely when the axis of g clears the mirror feet of f — the
    terminal trace condition tr[f,g] ≥ tr(g)² − 2.
    """
    framed = _hyperbolic_frame(f, g, cf, cg)
    if framed is None:
        return None
    h, lam = framed
    gh = conjugate(h, g)
    a_, b_, c_, d_ = gh.entries()
    try:
        r1, r2 = _real_roots(a_, b_ - c_, -d_)
    except NotApplicableError:
        return None
    beta_hat = apply_boundary(h, cg.repelling)  # type: ignore[arg-type]
    c_arc = Arc(r1, r2)
    if not c_arc.contains(beta_hat, EPS_POINT):
        c_arc = Arc(r2, r1)
    b_arc = Arc(BoundaryPoint.from_real(-lam), BoundaryPoint.from_real(lam))
    a_arc = _invert_arc(b_arc)
    d_arc = _invert_arc(c_arc)
    a, b, c, d = _pull_back(inverse(h), (a_arc, b_arc, c_arc, d_arc))
    return SchottkyCertificate(
        kind=PAIRED_INTERVALS, f_word=wf, g_word=wg, a=a, b=b, c=c, d=d
    )


# ---------------------------------------------------------------------------
# Power bound for the parabolic–hyperbolic case
# ---------------------------------------------------------------------------


def acd_bound(f: Moebius, g: Moebius) -> int:
    """How many powers fⁿg must be checked for ellipticity.

    For parabolic f and hyperbolic g in antiparallel position the mirror
    feet u < v of g in the frame f = z + 2 satisfy u + v =
    2 tr(g)/√(tr[f,g] − 2) and fⁿg is elliptic exactly for u < n < v, so
    powers beyond ⌈u + v⌉ cannot be elliptic."""
    t_comm = commutator_trace(f, g)
    if t_comm <= 2.0:
        raise CommutatorTraceNotAboveTwoError(
            "commutator trace must exceed 2 for the power bound"
        )
    return math.ceil(2.0 * tr(g) / math.sqrt(t_comm - 2.0))


# ---------------------------------------------------------------------------
# The classification
# ---------------------------------------------------------------------------


def _borderline(reason: str, rows: tuple) -> PairVerdict:
    return PairVerdict(
        status=PairStatus.BORDERLINE, reduction_trace=rows, reason=reason
    )


def _sdif(
    certificate: Optional[Certificate],
    rows: tuple,
    f: Moebius,
    g: Moebius,
    reason: str = "",
) -> PairVerdict:
    if certificate is not None and not verify_pair_certificate(f, g, certificate):
        certificate = None
    if certificate is None:
        reason = (reason + " " if reason else "") + (
            "certificate construction failed numerical re-verification"
        )
    return PairVerdict(
        status=PairStatus.SEMIDISCRETE_INVERSE_FREE,
        certificate=certificate,
        reduction_trace=rows,
        reason=reason.strip(),
    )


def _not_semidiscrete(
    witness: EllipticWitness, rows: tuple, reason: str = ""
) -> PairVerdict:
    return PairVerdict(
        status=PairStatus.NOT_SEMIDISCRETE,
        witness=witness,
        reduction_trace=rows,
        reason=reason,
    )


def _classify_two_parabolics(
    f: Moebius,
    g: Moebius,
    wf: str,
    wg: str,
    cf: MoebiusClass,
    cg: MoebiusClass,
    f0: Moebius,
    g0: Moebius,
    rows: tuple,
) -> PairVerdict:
    fg = compose(f, g)
    cls_fg = classify(fg)
    if cls_fg.borderline:
        return _borderline("product of parabolics is borderline", rows)
    if cls_fg.is_elliptic:
        return _not_semidiscrete(
            _elliptic_witness(wf + wg, fg, cls_fg),
            rows,
            "product of the parabolic generators is elliptic",
        )
    common = _contracted_axis_arc(f, g, cf, cg)
    if common is not None:
        cert: Optional[Certificate] = SchottkyCertificate(
            kind=COMMON_CONTRACTED_INTERVAL,
            f_word=wf,
            g_word=wg,
            interval=common,
        )
    else:
        cert = _two_parabolic_certificate(f, g, wf, wg, cf, cg)
    return _sdif(cert, rows, f0, g0)


def _classify_parabolic_hyperbolic(
    f: Moebius,
    g: Moebius,
    wf: str,
    wg: str,
    cf: MoebiusClass,
    cg: MoebiusClass,
    f0: Moebius,
    g0: Moebius,
    rows: tuple,
) -> PairVerdict:
    common = _contracted_axis_arc(f, g, cf, cg)
    if common is not None:
        # Not antiparallel: no power of f times g can be elliptic.
        cert: Optional[Certificate] = SchottkyCertificate(
            kind=COMMON_CONTRACTED_INTERVAL,
            f_word=wf,
            g_word=wg,
            interval=common,
        )
        return _sdif(cert, rows, f0, g0)
    t_comm = commutator_trace(f, g)
    if t_comm <= 2.0 + EPS_CLASS:
        return _borderline("commutator trace is not above two", rows)
    bound = acd_bound(f, g)
    if bound * len(wf) + len(wg) > WORD_LENGTH_CAP:
        return _borderline("power bound exceeds the word-length cap", rows)
    m = g
    for n in range(1, bound + 1):
        m = compose(f, m)
        cls = classify(m)
        if cls.borderline:
            return _borderline("a power composition is borderline", rows)
        if cls.is_elliptic:
            return _not_semidiscrete(
                _elliptic_witness(wf * n + wg, m, cls),
                rows,
                "a parabolic power times the hyperbolic generator is elliptic",
            )
    cert = _parabolic_hyperbolic_certificate(f, g, wf, wg, cf, cg)
    return _sdif(cert, rows, f0, g0)


def _classify_ordered_pair(
    f: Moebius, g: Moebius, wf: str, wg: str, f0: Moebius, g0: Moebius
) -> PairVerdict:
    """Classification of a non-elementary, non-elliptic ordered pair by
    trace reduction.  f0, g0 are the original generators the certificate
    words refer to."""
    rows: tuple[tuple[float, float, float], ...] = ()
    for _ in range(MAX_PHI_STEPS):
        cf = classify(f)
        cg = classify(g)
        if cf.borderline or cg.borderline:
            return _borderline("a reduced generator is borderline", rows)
        if cf.is_elliptic or cg.is_elliptic or cf.is_identity or cg.is_identity:
            return _borderline("trace reduction left the hyperbolic regime", rows)
        if tr(f) > tr(g):
            f, g, wf, wg, cf, cg = g, f, wg, wf, cg, cf
        if cf.is_parabolic and cg.is_parabolic:
            return _classify_two_parabolics(f, g, wf, wg, cf, cg, f0, g0, rows)
        if cf.is_parabolic:
            return _classify_parabolic_hyperbolic(
                f, g, wf, wg, cf, cg, f0, g0, rows
            )
        # Both hyperbolic from here.
        try:
            common = _contracted_axis_arc(f, g, cf, cg)
        except SharedFixedPointError:
            return _borderline("reduced generators share a fixed point", rows)
        if common is not None:
            cert: Optional[Certificate] = SchottkyCertificate(
                kind=COMMON_CONTRACTED_INTERVAL,
                f_word=wf,
                g_word=wg,
                interval=common,
            )
            return _sdif(cert, rows, f0, g0)
        fg = compose(f, g)
        cls_fg = classify(fg)
        if cls_fg.borderline:
            return _borderline("a product along the reduction is borderline", rows)
        if cls_fg.is_elliptic:
            return _not_semidiscrete(
                _elliptic_witness(wf + wg, fg, cls_fg),
                rows,
                "product of the reduced generators is elliptic",
            )
        if cls_fg.is_identity:
            return _borderline("reduced generators are mutually inverse", rows)
        t_comm = commutator_trace(f, g)
        if t_comm >= tr(g) ** 2 - 2.0 - EPS_STRICT:
            cert = _two_hyperbolic_certificate(f, g, wf, wg, cf, cg)
            if cert is not None and not verify_pair_certificate(f0, g0, cert):
                cert = None
            if cert is None:
                cert = TraceCertificate(
                    f_word=wf,
                    g_word=wg,
                    tr_f=tr(f),
                    tr_g=tr(g),
                    tr_fg=product_trace(f, g),
                    tr_commutator=t_comm,
                )
            return _sdif(cert, rows, f0, g0)
        rows = rows + ((tr(f), tr(g), tr(fg)),)
        if len(wf) + len(wg) > WORD_LENGTH_CAP:
            return _borderline("reduction words exceed the length cap", rows)
        if tr(f) <= tr(fg):
            g, wg = fg, wf + wg
        else:
            f, g, wf, wg = fg, f, wf + wg, wf
    return _borderline("trace reduction did not terminate in the step cap", rows)


def classify_pair(f: Moebius, g: Moebius) -> PairVerdict:
    """Decide whether ⟨f, g⟩ is semidiscrete and inverse-free.

    Elementary pairs are reported as such; a pair with an elliptic
    generator is routed through :func:`classify_pair_semidiscrete` (it is
    never inverse-free but may still be semidiscrete).  Every
    ``SemidiscreteInverseFree`` verdict carries a certificate a dumb
    checker accepts, and every non-elementary ``NotSemidiscrete`` verdict
    carries an elliptic word as witness.
    """
    if is_identity(f) or is_identity(g):
        raise IdentityInputError("classification requires non-identity generators")
    el = elementary_check(f, g)
    if el is not None:
        return PairVerdict(
            status=PairStatus.ELEMENTARY,
            elementary_type=el,
            elementary=classify_elementary([f, g]),
        )
    cf = classify(f)
    cg = classify(g)
    if cf.borderline or cg.borderline:
        return _borderline("a generator is borderline parabolic", ())
    if cf.is_elliptic or cg.is_elliptic:
        return classify_pair_semidiscrete(f, g)
    if tr(f) <= tr(g):
        return _classify_ordered_pair(f, g, "F", "G", f, g)
    return _classify_ordered_pair(g, f, "G", "F", f, g)


# ---------------------------------------------------------------------------
# Semidiscreteness with elliptic generators
# ---------------------------------------------------------------------------


def _joergensen_lhs(f: Moebius, g: Moebius) -> float:
    return abs(tr(f) ** 2 - 4.0) + abs(commutator_trace(f, g) - 2.0)


def _hunt_elliptic_witness(
    f: Moebius, g: Moebius
) -> Optional[EllipticWitness]:
    table = enumerate_words([f, g], WITNESS_HUNT_DEPTH, labels=("F", "G"))
    return find_elliptic(table)


def _group_case(
    f: Moebius,
    g: Moebius,
    witness: Optional[EllipticWitness],
    reason: str,
) -> PairVerdict:
    """The semigroup collapses to the group it generates; report the
    discreteness question, screened by Jørgensen's inequality.

    f and g must be the original generators in their original order (the
    inequality is checked for both orderings — a discrete non-elementary
    group satisfies it for every ordered generating pair)."""
    elementary = elementary_check(f, g) is not None
    lhs = min(_joergensen_lhs(f, g), _joergensen_lhs(g, f))
    if not elementary and lhs < 1.0 - EPS_JORGENSEN:
        hunted = witness if witness is not None else _hunt_elliptic_witness(f, g)
        return PairVerdict(
            status=PairStatus.NOT_SEMIDISCRETE,
            witness=hunted,
            joergensen_violated=True,
            undetermined=hunted is None,
            reason=(
                "the generated group violates Jørgensen's inequality, so it is "
                "neither discrete nor elementary; " + reason
            ),
        )
    return PairVerdict(
        status=PairStatus.REQUIRES_GROUP_DISCRETENESS,
        witness=witness,
        joergensen_violated=False if not elementary else None,
        reason=reason,
    )


def classify_pair_semidiscrete(f: Moebius, g: Moebius) -> PairVerdict:
    """Decide semidiscreteness (dropping inverse-freeness) for a pair.

    With no elliptic generator this coincides with :func:`classify_pair`
    except that a finite-order elliptic word no longer refutes: it folds
    the semigroup into the group it generates, which is reported as
    ``RequiresGroupDiscreteness`` (Jørgensen's inequality screens out
    groups that cannot be discrete).  With an elliptic generator f of
    finite order m, the semigroup is semidiscrete with a free part iff no
    fⁿg with 0 < n < m is elliptic, and folds into a group as soon as
    some such power has finite order.
    """
    if is_identity(f) or is_identity(g):
        raise IdentityInputError("classification requires non-identity generators")
    f0, g0 = f, g
    cf = classify(f)
    cg = classify(g)
    if not cf.is_elliptic and not cg.is_elliptic:
        base = classify_pair(f, g)
        if base.status is not PairStatus.NOT_SEMIDISCRETE:
            return base
        w = base.witness
        if w is not None and (w.cls.is_identity or w.cls.order is not None):
            verdict = _group_case(
                f,
                g,
                w,
                "an elliptic word of finite order folds the semigroup into "
                "the group it generates",
            )
            return replace(verdict, reduction_trace=base.reduction_trace)
        if w is not None:
            return replace(
                base,
                undetermined=True,
                reason=(
                    "witness angle was not recognized as a rational multiple "
                    "of π; a finite order would fold the semigroup into a group"
                ),
            )
        return base
    if cg.is_elliptic and not cf.is_elliptic:
        f, g, cf, cg = g, f, cg, cf
        wf, wg = "G", "F"
    else:
        wf, wg = "F", "G"
    if cf.order is None:
        return PairVerdict(
            status=PairStatus.NOT_SEMIDISCRETE,
            witness=_elliptic_witness(wf, f, cf),
            undetermined=True,
            reason=(
                "elliptic generator's angle was not recognized as a rational "
                "multiple of π; its powers accumulate at the identity unless "
                "the order is finite"
            ),
        )
    if cg.is_elliptic:
        if cg.order is None:
            return PairVerdict(
                status=PairStatus.NOT_SEMIDISCRETE,
                witness=_elliptic_witness(wg, g, cg),
                undetermined=True,
                reason=(
                    "elliptic generator's angle was not recognized as a "
                    "rational multiple of π"
                ),
            )
        return _group_case(
            f0, g0, None, "both generators are elliptic of finite order"
        )
    m = int(cf.order)
    word_map = g
    for n in range(1, m):
        word_map = compose(f, word_map)
        cls = classify(word_map)
        if cls.is_identity:
            return _group_case(
                f0,
                g0,
                _elliptic_witness(wf * n + wg, word_map, cls),
                "a power of the elliptic generator inverts the other generator",
            )
        if cls.is_elliptic:
            witness = _elliptic_witness(wf * n + wg, word_map, cls)
            if cls.order is None:
                return PairVerdict(
                    status=PairStatus.NOT_SEMIDISCRETE,
                    witness=witness,
                    undetermined=True,
                    reason=(
                        "an elliptic composition's angle was not recognized "
                        "as a rational multiple of π"
                    ),
                )
            return _group_case(
                f0,
                g0,
                witness,
                "a rotation power times the other generator is elliptic of "
                "finite order",
            )
    return PairVerdict(
        status=PairStatus.SEMIDISCRETE_GROUP_AND_FREE,
        reason=(
            "no rotation power times the other generator is elliptic; the "
            "semigroup is semidiscrete with group part generated by the "
            "rotation"
        ),
    )


# ---------------------------------------------------------------------------
# The semigroup trace inequality
# ---------------------------------------------------------------------------


def _midpoint_refine(points: list[BoundaryPoint]) -> list[BoundaryPoint]:
    pts = sorted(points, key=lambda p: p.psi)
    out: list[BoundaryPoint] = []
    for i, p in enumerate(pts):
        q = pts[(i + 1) % len(pts)]
        out.append(p)
        out.append(Arc(p, q).midpoint())
    return out


def _common_contracted_interval(
    f: Moebius, g: Moebius
) -> Optional[Arc]:
    """Search for a closed interval both maps carry properly into itself.

    Candidate endpoints are the fixed points of both maps, thickened by a
    few rounds of circular midpoint refinement; an elliptic or identity
    map has no properly contracted interval at all, so the search is
    skipped."""
    points: list[BoundaryPoint] = []
    for m in (f, g):
        cls = classify(m)
        if cls.kind in (MapKind.ELLIPTIC, MapKind.IDENTITY):
            return None
        for p in _fixed_point_set(cls):
            if all(chordal(p, q) > EPS_POINT for q in points):
                points.append(p)
    if len(points) == 1:
        points.append(BoundaryPoint.from_angle(points[0].psi + math.pi))
    for _ in range(REFINEMENT_ROUNDS):
        points = _midpoint_refine(points)
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            if i == j:
                continue
            arc = Arc(p, q)
            if maps_arc_strictly_within(f, arc, EPS_POINT) and (
                maps_arc_strictly_within(g, arc, EPS_POINT)
            ):
                return arc
    return None


def joergensen_semigroup(f: Moebius, g: Moebius) -> JoergensenReport:
    """Evaluate the semigroup form of Jørgensen's inequality.

    Every non-elementary semidiscrete semigroup ⟨f, g⟩ either carries a
    closed interval properly into itself under both generators or
    satisfies |Tr(F)² − 4| + |Tr[F,G] − 2| ≥ 1 (both traces taken of
    unit-determinant lifts; the bound is attained by z + 1 and −1/z).
    ``satisfied`` reports whether either escape holds — a False on a
    non-elementary pair certifies the semigroup is not semidiscrete.
    """
    lhs = _joergensen_lhs(f, g)
    interval = _common_contracted_interval(f, g)
    return JoergensenReport(
        satisfied=lhs >= 1.0 - EPS_JORGENSEN or interval is not None,
        lhs=lhs,
        has_common_contracted_interval=interval is not None,
    )


# ---------------------------------------------------------------------------
# Reflection frames (exposed for geometric cross-checks)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ReflectionFactorization:
    """f = σ σ_f and g = σ_g σ through the common perpendicular σ.

    For an antiparallel hyperbolic pair the common perpendicular ℓ of the
    axes is the unique geodesic meeting both at right angles; reflecting
    in ℓ and in the half-circles ℓ_f, ℓ_g (feet stored as endpoint pairs
    in the original coordinates) factors the two maps with the middle
    mirror shared.  ``frame`` maps the configuration onto f = λ²z with ℓ
    the unit half-circle."""

    frame: Moebius
    multiplier_root: float  # λ: the feet of ℓ_f sit at ±λ in the frame
    common_perpendicular: tuple[BoundaryPoint, BoundaryPoint]
    f_mirror: tuple[BoundaryPoint, BoundaryPoint]
    g_mirror: tuple[BoundaryPoint, BoundaryPoint]


def reflection_factorization(f: Moebius, g: Moebius) -> ReflectionFactorization:
    """Factor an antiparallel hyperbolic pair through its common
    perpendicular; raises ``NotApplicableError`` when the axes meet."""
    cf = classify(f)
    cg = classify(g)
    if cf.kind is not MapKind.HYPERBOLIC or cg.kind is not MapKind.HYPERBOLIC:
        raise NotApplicableError("reflection factorization needs hyperbolic maps")
    if _share_boundary_fixed_point(cf, cg, EPS_POINT):
        raise SharedFixedPointError("maps share a fixed point")
    framed = _hyperbolic_frame(f, g, cf, cg)
    if framed is None:
        raise NotApplicableError("the axes meet: no common perpendicular")
    h, lam = framed
    gh = conjugate(h, g)
    a_, b_, c_, d_ = gh.entries()
    u_pt, v_pt = _real_roots(a_, b_ - c_, -d_)
    h_inv = inverse(h)
    back = lambda p: apply_boundary(h_inv, p)  # noqa: E731
    return ReflectionFactorization(
        frame=h,
        multiplier_root=lam,
        common_perpendicular=(
            back(BoundaryPoint.from_real(-1.0)),
            back(BoundaryPoint.from_real(1.0)),
        ),
        f_mirror=(
            back(BoundaryPoint.from_real(-lam)),
            back(BoundaryPoint.from_real(lam)),
        ),
        g_mirror=(back(u_pt), back(v_pt)),
    )


def geodesics_cross(
    first: tuple[BoundaryPoint, BoundaryPoint],
    second: tuple[BoundaryPoint, BoundaryPoint],
) -> bool:
    """Whether the geodesics with the given endpoint pairs cross in the
    open upper half-plane, i.e. the endpoint pairs interleave on ℝ̂."""
    a, b = first
    arc = Arc(a, b)
    inside = sum(1 for p in second if _strictly_inside(p, arc, EPS_POINT))
    return inside == 1
