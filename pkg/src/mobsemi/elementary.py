"""Classification of elementary semigroups of Möbius transformations.

A semigroup of Möbius transformations is *elementary* when it has a finite
orbit in the closed upper half-plane.  For a finitely generated semigroup
this forces one of three shapes on the generating set: a point of the
half-plane fixed by every generator (all generators elliptic about one
center), a boundary point fixed by every generator (all generators affine
after conjugating the point to ∞), or a two-point set of the boundary that
every generator fixes setwise (dilations fixing both points and order-two
half-turns that swap them).

Within those shapes, semidiscreteness — no sequence of distinct semigroup
elements converging uniformly to the identity — is decided by elementary
number theory.  Translations ``z + b_i`` generate a semidiscrete semigroup
exactly when the offsets are one-sided, or pairwise rational with mixed
signs (then the semigroup is a discrete group of translations); otherwise
the translations are dense in a one-parameter group.  Dilations reduce to
translations through the logarithm.  ``classify_additive`` and
``classify_multiplicative`` implement that trichotomy with continued-
fraction rational reconstruction, and ``classify_elementary`` combines it
with the fixed-point layout of the generators to sort a generating set into
the finitely many conjugacy classes of finitely generated elementary
semidiscrete semigroups: finite cyclic elliptic groups, discrete dilation
groups (possibly extended by a half-turn), dilation-and-translation-lattice
semigroups, and the inverse-free contraction/expansion chains whose
non-identity elements all map an interval ``[s, +∞]`` strictly inside
itself.  The chains require every repelling affine fixed point to sit
strictly left of every attracting one; when expanding and contracting
fixed points interleave, compositions creep back toward the identity and
the semigroup is not semidiscrete.

The remaining operations detect confinement and its failure modes for
semigroups that need not be elementary.  ``invariant_interval_scan``
searches for a closed interval mapped into itself by every generator.
``semidiscrete_in_MJ`` classifies a semigroup confined to such an interval
J by splitting the generators into those fixing J setwise (a dilation
semigroup along the axis of J) and the rest: one-sided dilation parts give
semidiscrete and inverse-free semigroups certified by an interval that
every non-identity generator maps strictly inside itself; dilation parts
forming a nontrivial discrete group give semidiscrete semigroups exactly
when no other generator fixes an endpoint of J (an endpoint-fixing
generator can be conjugated arbitrarily close to a dilation, which is the
*exceptional* failure); dense dilation parts are dense in the stabilizer
of J.  ``exceptional_check`` recognizes the exceptional configuration
directly from a generating set.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .core import (
    EPS_CLASS,
    EPS_POINT,
    QMAX,
    Arc,
    ArcUnion,
    BoundaryPoint,
    HalfPlanePoint,
    Moebius,
    NotApplicableError,
    apply_boundary,
    arc_contains_arc,
    arc_image,
    chordal,
    classify,
    compose,
    fixed_points,
    inverse,
    is_identity,
    map_to_zero_one_infinity,
)

RATIO_RTOL = 1e-9        # relative tolerance for rational-ratio reconstruction
EPS_MULT = 1e-9          # multipliers within this of 1 count as trivial
SCAN_LEVELS = 3          # dyadic refinement rounds in the interval scan


class EmptyInputError(ValueError):
    """An offset or factor list was empty."""


class NonpositiveInputError(ValueError):
    """A dilation factor was zero or negative."""


class NotInvariantError(ValueError):
    """A generator moved the supposedly invariant interval off itself."""


class AdditiveKind(str, Enum):
    ONE_SIDED = "OneSided"
    DISCRETE_GROUP = "DiscreteGroup"
    DENSE = "Dense"


class ElementaryKind(str, Enum):
    FINITE_CYCLIC_ELLIPTIC = "FiniteCyclicElliptic"
    HYPERBOLIC_GROUP_PAIR = "HyperbolicGroupPair"
    TRANSLATION_MIXED = "TranslationMixed"
    CONTRACTION_CHAIN = "ContractionChain"
    NOT_SEMIDISCRETE = "NotSemidiscrete"
    NOT_ELEMENTARY = "NotElementary"


class MJKind(str, Enum):
    SDIF_PLUS_IDENTITY = "SemidiscreteInverseFreePlusIdentity"
    SEMIDISCRETE = "Semidiscrete"
    NOT_SEMIDISCRETE = "NotSemidiscrete"
    DENSE_IN_M0 = "DenseInM0"


class AdditiveVerdict(NamedTuple):
    """Trichotomy for a translation semigroup ⟨z + b_1, …, z + b_k⟩.

    ``unit`` is the positive generator of the translation group in the
    DiscreteGroup case and None otherwise.  ``undetermined`` marks Dense
    verdicts issued because some ratio had no rational reconstruction
    within the denominator bound — a statement of failure to certify
    discreteness, not a density proof.
    """

    kind: AdditiveKind
    undetermined: bool = False
    unit: Optional[float] = None


class MJVerdict(NamedTuple):
    """Outcome of the confined-semigroup classification.

    ``certificate`` is present exactly in the inverse-free case when the
    contracted-interval construction succeeds: every non-identity
    generator maps the arc union strictly inside itself.
    """

    kind: MJKind
    certificate: Optional[ArcUnion] = None
    undetermined: bool = False
    reason: str = ""


@dataclass(frozen=True, slots=True)
class AffineMap:
    """View of a Möbius transformation fixing ∞ as z ↦ az + b, a > 0."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise NonpositiveInputError(f"dilation part must be positive, got {self.a!r}")

    @classmethod
    def from_moebius(cls, f: Moebius, eps_pt: float = EPS_POINT) -> "AffineMap":
        a, b, c, d = f.entries()
        if abs(c) > eps_pt * max(1.0, abs(a), abs(d)):
            raise NotInvariantError("map does not fix the point at infinity")
        return cls(a / d, b / d)

    @property
    def fixed_point(self) -> Optional[float]:
        """Finite fixed point b/(1−a), or None within εcls of a translation."""
        if abs(self.a - 1.0) <= EPS_CLASS:
            return None
        return self.b / (1.0 - self.a)

    def apply(self, t: float) -> float:
        return self.a * t + self.b


@dataclass(frozen=True, slots=True)
class ElementaryVerdict:
    """Classification of an elementary generating set.

    ``kind`` names the conjugacy class of the semigroup (or reports
    NotSemidiscrete / NotElementary).  ``inverted`` is set when the class
    description applies to the inverse semigroup rather than the semigroup
    itself.  ``details`` carries the class parameters as (name, value)
    pairs; ``conjugator`` is the explicit Möbius map used to normalize the
    common fixed configuration (∞ for a boundary point, {0, ∞} for a
    two-point set), so the normal form is conjugator∘g∘conjugator⁻¹.
    """

    kind: ElementaryKind
    inverted: bool = False
    details: tuple = ()
    conjugator: Optional[Moebius] = None
    undetermined: bool = False
    reason: str = ""


def _frac_gcd(x: Fraction, y: Fraction) -> Fraction:
    if x == 0:
        return abs(y)
    if y == 0:
        return abs(x)
    num = math.gcd(x.numerator * y.denominator, y.numerator * x.denominator)
    return Fraction(num, x.denominator * y.denominator)


def _reconstruct_ratio(r: float, qmax: int, rtol: float) -> Optional[Fraction]:
    """Best rational p/q, q ≤ qmax, within relative tolerance — else None."""
    fr = Fraction(r).limit_denominator(qmax)
    if abs(float(fr) - r) <= rtol * max(1.0, abs(r)):
        return fr
    return None


def classify_additive(
    offsets: Sequence[float],
    qmax: int = QMAX,
    rtol: float = RATIO_RTOL,
) -> AdditiveVerdict:
    """Classify the semigroup generated by the translations z ↦ z + b.

    One-sided offsets give an inverse-free (or trivial) semigroup that
    stays away from the identity.  Mixed-sign offsets whose pairwise
    ratios are all rational generate a discrete group of translations —
    the returned unit is its positive generator.  A mixed-sign family
    with an irrational ratio is dense in the translation group.
    """
    if len(offsets) == 0:
        raise EmptyInputError("need at least one translation offset")
    nonzero = [float(b) for b in offsets if b != 0.0]
    if not nonzero:
        return AdditiveVerdict(AdditiveKind.ONE_SIDED, unit=None)
    if all(b >= 0.0 for b in nonzero) or all(b <= 0.0 for b in nonzero):
        return AdditiveVerdict(AdditiveKind.ONE_SIDED, unit=None)
    base = max(nonzero, key=abs)
    lattice = Fraction(0)
    for b in nonzero:
        fr = _reconstruct_ratio(b / base, qmax, rtol)
        if fr is None:
            return AdditiveVerdict(AdditiveKind.DENSE, undetermined=True)
        lattice = _frac_gcd(lattice, fr)
    return AdditiveVerdict(AdditiveKind.DISCRETE_GROUP, unit=abs(float(lattice) * base))


def classify_multiplicative(
    factors: Sequence[float],
    qmax: int = QMAX,
    rtol: float = RATIO_RTOL,
) -> AdditiveVerdict:
    """Classify the semigroup generated by the dilations z ↦ az, a > 0.

    The logarithm conjugates dilations to translations isometrically, so
    the additive trichotomy applies to the logs of the factors.  In the
    DiscreteGroup case the unit is returned back on the multiplicative
    side: the group is generated by z ↦ λz with λ = exp(unit) > 1.
    """
    if len(factors) == 0:
        raise EmptyInputError("need at least one dilation factor")
    for a in factors:
        if not a > 0:
            raise NonpositiveInputError(f"dilation factor must be positive, got {a!r}")
    verdict = classify_additive([math.log(a) for a in factors], qmax=qmax, rtol=rtol)
    if verdict.kind is AdditiveKind.DISCRETE_GROUP:
        return verdict._replace(unit=math.exp(verdict.unit))
    return verdict


# ---------------------------------------------------------------------------
# Fixed-configuration detection.
# ---------------------------------------------------------------------------


def _points_close(p: BoundaryPoint, q: BoundaryPoint, eps: float = EPS_POINT) -> bool:
    return chordal(p, q) <= eps


def _boundary_fixed_set(f: Moebius) -> Optional[tuple]:
    """Boundary fixed points of f, or None when f is elliptic/identity."""
    cls = classify(f)
    if cls.is_elliptic or cls.is_identity:
        return None
    att, rep = fixed_points(f)
    if _points_close(att, rep):
        return (att,)
    return (att, rep)


def _common_boundary_point(gens: Sequence[Moebius]) -> Optional[BoundaryPoint]:
    """A boundary point fixed by every generator, preferring ∞."""
    candidates: Optional[list] = None
    for g in gens:
        fixed = _boundary_fixed_set(g)
        if fixed is None:
            return None
        if candidates is None:
            candidates = list(fixed)
        else:
            candidates = [p for p in candidates if any(_points_close(p, q) for q in fixed)]
        if not candidates:
            return None
    if candidates is None:
        return None
    for p in candidates:
        if p.is_infinity:
            return p
    return candidates[0]


def _elliptic_center(f: Moebius) -> HalfPlanePoint:
    """The fixed point in ℍ of an elliptic map, from the quadratic formula."""
    a, b, c, d = f.entries()
    t = a + d
    disc = 4.0 - t * t
    if disc < 0.0 or c == 0.0:
        raise NotApplicableError("map is not elliptic")
    return HalfPlanePoint((a - d) / (2.0 * c), math.sqrt(disc) / (2.0 * abs(c)))


def _centers_close(p: HalfPlanePoint, q: HalfPlanePoint) -> bool:
    scale = max(1.0, abs(p.x), p.y, abs(q.x), q.y)
    return math.hypot(p.x - q.x, p.y - q.y) <= 1e-8 * scale


def _to_infinity(p: BoundaryPoint) -> Moebius:
    """A Möbius map sending p to ∞ (the identity when p already is)."""
    if p.is_infinity:
        return Moebius.identity()
    return Moebius(0.0, -1.0, 1.0, -p.value)


def _affine_view(g: Moebius, h: Moebius) -> AffineMap:
    return AffineMap.from_moebius(compose(h, compose(g, inverse(h))), eps_pt=1e-7)


# ---------------------------------------------------------------------------
# The affine route: every generator fixes a common boundary point.
# ---------------------------------------------------------------------------


def _classify_affine(maps: Sequence[AffineMap]) -> ElementaryVerdict:
    """Sort a family of affine maps into the elementary semidiscrete classes.

    Expanding generators (a > 1) contribute repelling finite fixed points
    p = b/(1−a); contracting generators (a < 1) contribute attracting ones
    q = d/(1−c); translations contribute offsets.  The semigroup is an
    inverse-free chain exactly when every p lies strictly left of every q
    and the translations point right; it is a dilation-translation lattice
    when the translations form a discrete group and only expanding maps
    accompany them; interleaved or coincident fixed points force
    compositions back toward the identity.
    """
    expanding = [m for m in maps if m.a > 1.0 + EPS_MULT]
    contracting = [m for m in maps if m.a < 1.0 - EPS_MULT]
    offsets = [m.b for m in maps if abs(m.a - 1.0) <= EPS_MULT and m.b != 0.0]
    if not expanding and not contracting and not offsets:
        return ElementaryVerdict(ElementaryKind.FINITE_CYCLIC_ELLIPTIC,
                                 details=(("order", 1.0),),
                                 reason="all generators are the identity")

    p_pts = [m.fixed_point for m in expanding]
    q_pts = [m.fixed_point for m in contracting]

    def _span(values: Sequence[float]) -> float:
        return max(1.0, max((abs(v) for v in values), default=0.0))

    tol = 1e-9 * _span(p_pts + q_pts)

    if expanding and contracting:
        all_pts = p_pts + q_pts
        if max(all_pts) - min(all_pts) <= tol:
            return _classify_common_axis([m.a for m in expanding + contracting],
                                         bool(offsets), swappers=0)
        if max(p_pts) < min(q_pts) - tol:
            if all(t >= 0.0 for t in offsets):
                s = 0.5 * (max(p_pts) + min(q_pts))
                return ElementaryVerdict(
                    ElementaryKind.CONTRACTION_CHAIN,
                    details=(("separator", s),),
                    reason="repelling fixed points lie left of attracting ones",
                )
            return ElementaryVerdict(
                ElementaryKind.NOT_SEMIDISCRETE,
                reason="left-pointing translation against a contraction chain",
            )
        if max(q_pts) < min(p_pts) - tol:
            if all(t <= 0.0 for t in offsets):
                s = 0.5 * (max(q_pts) + min(p_pts))
                return ElementaryVerdict(
                    ElementaryKind.CONTRACTION_CHAIN,
                    inverted=True,
                    details=(("separator", s),),
                    reason="the inverse family is a contraction chain",
                )
            return ElementaryVerdict(
                ElementaryKind.NOT_SEMIDISCRETE,
                reason="right-pointing translation against an inverted chain",
            )
        return ElementaryVerdict(
            ElementaryKind.NOT_SEMIDISCRETE,
            reason="expanding and contracting fixed points interleave",
        )

    if expanding or contracting:
        direct = bool(expanding)
        pts = p_pts if direct else q_pts
        if not offsets:
            lo = max(pts) if direct else None
            hi = min(pts) if not direct else None
            return ElementaryVerdict(
                ElementaryKind.CONTRACTION_CHAIN,
                details=(("separator", _pick_separator(lo, hi)),),
                reason="one-sided dilation family",
            )
        additive = classify_additive(offsets)
        if additive.kind is AdditiveKind.ONE_SIDED:
            if all(t >= 0.0 for t in offsets):
                lo = max(pts) if direct else None
                hi = min(pts) if not direct else None
                return ElementaryVerdict(
                    ElementaryKind.CONTRACTION_CHAIN,
                    details=(("separator", _pick_separator(lo, hi)),),
                    reason="dilations with right-pointing translations",
                )
            # All offsets point left: the inverse family, whose dilations
            # keep the same fixed points, has right-pointing translations.
            lo = max(pts) if not direct else None
            hi = min(pts) if direct else None
            return ElementaryVerdict(
                ElementaryKind.CONTRACTION_CHAIN,
                inverted=True,
                details=(("separator", _pick_separator(lo, hi)),),
                reason="the inverse family is a contraction chain",
            )
        if additive.kind is AdditiveKind.DISCRETE_GROUP:
            if direct:
                return ElementaryVerdict(
                    ElementaryKind.TRANSLATION_MIXED,
                    details=(("translation_unit", additive.unit),),
                    reason="expanding maps over a discrete translation group",
                )
            return ElementaryVerdict(
                ElementaryKind.TRANSLATION_MIXED,
                inverted=True,
                details=(("translation_unit", additive.unit),),
                reason="the inverse family expands over a discrete translation group",
            )
        return ElementaryVerdict(
            ElementaryKind.NOT_SEMIDISCRETE,
            undetermined=additive.undetermined,
            reason="translation offsets are dense",
        )

    additive = classify_additive(offsets)
    if additive.kind is AdditiveKind.ONE_SIDED:
        inverted = all(t <= 0.0 for t in offsets)
        return ElementaryVerdict(
            ElementaryKind.CONTRACTION_CHAIN,
            inverted=inverted,
            details=(("separator", 0.0),),
            reason="one-sided translation family",
        )
    if additive.kind is AdditiveKind.DISCRETE_GROUP:
        return ElementaryVerdict(
            ElementaryKind.TRANSLATION_MIXED,
            details=(("translation_unit", additive.unit),),
            reason="discrete translation group",
        )
    return ElementaryVerdict(
        ElementaryKind.NOT_SEMIDISCRETE,
        undetermined=additive.undetermined,
        reason="translation offsets are dense",
    )


def _pick_separator(lo: Optional[float], hi: Optional[float]) -> float:
    """A point strictly right of lo and strictly left of hi."""
    if lo is not None and hi is not None:
        return 0.5 * (lo + hi)
    if lo is not None:
        return lo + 1.0
    if hi is not None:
        return hi - 1.0
    return 0.0


def _classify_common_axis(factors: Sequence[float], translations_present: bool,
                          swappers: int) -> ElementaryVerdict:
    """Generators all fix one axis: dilations, possibly with half-turns.

    The dilation parts generate a group as soon as both expanding and
    contracting factors (or a half-turn, which conjugates a dilation to
    its inverse) are present; discreteness is then a lattice condition on
    the logs.  Any translation fixing only one end of the axis makes the
    configuration exceptional, hence not semidiscrete.
    """
    mult = classify_multiplicative([a for a in factors if abs(math.log(a)) > EPS_MULT]
                                   or [1.0])
    if mult.kind is AdditiveKind.DENSE:
        return ElementaryVerdict(
            ElementaryKind.NOT_SEMIDISCRETE,
            undetermined=mult.undetermined,
            reason="dilation factors are dense",
        )
    if translations_present:
        return ElementaryVerdict(
            ElementaryKind.NOT_SEMIDISCRETE,
            reason="exceptional: translation fixing one end of the dilation axis",
        )
    if mult.kind is AdditiveKind.ONE_SIDED and not swappers:
        lo = 0.0 if all(a >= 1.0 for a in factors) else None
        hi = 0.0 if lo is None else None
        return ElementaryVerdict(
            ElementaryKind.CONTRACTION_CHAIN,
            inverted=hi is not None,
            details=(("separator", _pick_separator(lo, hi)),),
            reason="one-sided dilation family on a common axis",
        )
    unit = mult.unit if mult.kind is AdditiveKind.DISCRETE_GROUP else None
    if unit is None:
        # One-sided factors with a half-turn: the half-turn closes the
        # family into the group generated by the largest factor lattice.
        logs = [abs(math.log(a)) for a in factors if abs(math.log(a)) > EPS_MULT]
        sub = classify_additive(logs + [-logs[0]]) if logs else None
        if sub is None or sub.kind is not AdditiveKind.DISCRETE_GROUP:
            return ElementaryVerdict(
                ElementaryKind.NOT_SEMIDISCRETE,
                undetermined=bool(sub and sub.undetermined),
                reason="dilation factors are dense",
            )
        unit = math.exp(sub.unit)
    details = [("multiplier", unit)]
    if swappers:
        details.append(("half_turn", 1.0))
    return ElementaryVerdict(
        ElementaryKind.HYPERBOLIC_GROUP_PAIR,
        details=tuple(details),
        reason="discrete dilation group" + (" extended by a half-turn" if swappers else ""),
    )


# ---------------------------------------------------------------------------
# The two-point route: every generator fixes a boundary pair setwise.
# ---------------------------------------------------------------------------


def _common_two_set(gens: Sequence[Moebius]) -> Optional[tuple]:
    """A boundary pair {x, y} fixed setwise by every generator."""
    candidate: Optional[tuple] = None
    centers = []
    for g in gens:
        fixed = _boundary_fixed_set(g)
        if fixed is not None and len(fixed) == 2:
            candidate = fixed
            break
        if fixed is None:
            cls = classify(g)
            if cls.is_elliptic and cls.order == 2:
                centers.append(_elliptic_center(g))
    if candidate is None:
        if len(centers) < 2 or _centers_close(centers[0], centers[1]):
            return None
        candidate = _geodesic_endpoints(centers[0], centers[1])
    x, y = candidate
    for g in gens:
        gx, gy = apply_boundary(g, x), apply_boundary(g, y)
        fixes = _points_close(gx, x) and _points_close(gy, y)
        swaps = _points_close(gx, y) and _points_close(gy, x)
        if not (fixes or swaps):
            return None
    return candidate


def _geodesic_endpoints(p: HalfPlanePoint, q: HalfPlanePoint) -> tuple:
    """Ideal endpoints of the hyperbolic geodesic through two points of ℍ."""
    if abs(p.x - q.x) <= 1e-12 * max(1.0, abs(p.x), abs(q.x)):
        return (BoundaryPoint.from_real(p.x), BoundaryPoint.infinity())
    # Center c of the Euclidean semicircle satisfies |p − c|² = |q − c|².
    c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x))
    r = math.hypot(p.x - c, p.y)
    return (BoundaryPoint.from_real(c - r), BoundaryPoint.from_real(c + r))


def _classify_two_set(gens: Sequence[Moebius], x: BoundaryPoint,
                      y: BoundaryPoint) -> ElementaryVerdict:
    h = map_to_zero_one_infinity(x, Arc(x, y).midpoint(), y)
    factors = []
    swapper_parts = []
    for g in gens:
        a, b, c, d = compose(h, compose(g, inverse(h))).entries()
        scale = max(abs(a), abs(b), abs(c), abs(d))
        if abs(b) <= 1e-7 * scale and abs(c) <= 1e-7 * scale:
            factors.append((a / d))
        else:
            swapper_parts.append(-b / c)
    ratio_logs = [math.log(s / swapper_parts[0]) for s in swapper_parts[1:]]
    logs = [math.log(a) for a in factors] + ratio_logs
    logs = [t for t in logs if abs(t) > EPS_MULT]
    if not logs:
        return ElementaryVerdict(
            ElementaryKind.HYPERBOLIC_GROUP_PAIR,
            details=(("multiplier", 1.0), ("half_turn", 1.0)),
            conjugator=h,
            reason="half-turn about a single axis point",
        )
    group = classify_additive(logs + [-logs[0]])
    if group.kind is not AdditiveKind.DISCRETE_GROUP:
        return ElementaryVerdict(
            ElementaryKind.NOT_SEMIDISCRETE,
            conjugator=h,
            undetermined=group.undetermined,
            reason="dilation part of the half-turn extension is dense",
        )
    return ElementaryVerdict(
        ElementaryKind.HYPERBOLIC_GROUP_PAIR,
        details=(("multiplier", math.exp(group.unit)), ("half_turn", 1.0)),
        conjugator=h,
        reason="discrete dilation group extended by a half-turn",
    )


# ---------------------------------------------------------------------------
# Top-level elementary classification.
# ---------------------------------------------------------------------------


def classify_elementary(gens: Sequence[Moebius]) -> ElementaryVerdict:
    """Classify the semigroup generated by an elementary generating set.

    Detects a common fixed configuration — a center in ℍ shared by
    elliptic generators, a boundary point fixed by every generator, or a
    boundary pair fixed setwise — conjugates it to the normal position
    (i, ∞, or {0, ∞} respectively) and classifies the normalized family.
    Generating sets with no common configuration are reported
    NotElementary and belong to the nonelementary classifiers.
    """
    sieve = [g for g in gens if not is_identity(g)]
    if not sieve:
        return ElementaryVerdict(ElementaryKind.FINITE_CYCLIC_ELLIPTIC,
                                 details=(("order", 1.0),),
                                 reason="all generators are the identity")

    classes = [classify(g) for g in sieve]
    if all(cls.is_elliptic for cls in classes):
        centers = [_elliptic_center(g) for g in sieve]
        if all(_centers_close(centers[0], c) for c in centers[1:]):
            orders = [cls.order for cls in classes]
            if any(o is None for o in orders):
                return ElementaryVerdict(
                    ElementaryKind.NOT_SEMIDISCRETE,
                    undetermined=True,
                    reason="rotation of infinite or unrecognized order",
                )
            order = 1
            for o in orders:
                order = order * o // math.gcd(order, o)
            return ElementaryVerdict(
                ElementaryKind.FINITE_CYCLIC_ELLIPTIC,
                details=(("order", float(order)),),
                reason="rotations about a common center",
            )

    point = _common_boundary_point(sieve)
    if point is not None:
        h = _to_infinity(point)
        try:
            affine = [_affine_view(g, h) for g in sieve]
        except NotInvariantError:
            affine = None
        if affine is not None:
            verdict = _classify_affine(affine)
            return ElementaryVerdict(
                verdict.kind,
                inverted=verdict.inverted,
                details=verdict.details,
                conjugator=h,
                undetermined=verdict.undetermined,
                reason=verdict.reason,
            )

    pair = _common_two_set(sieve)
    if pair is not None:
        return _classify_two_set(sieve, pair[0], pair[1])

    return ElementaryVerdict(
        ElementaryKind.NOT_ELEMENTARY,
        reason="no common fixed point or invariant pair",
    )


# ---------------------------------------------------------------------------
# Invariant intervals, exceptional configurations, confined semigroups.
# ---------------------------------------------------------------------------


def _candidate_points(gens: Sequence[Moebius], levels: int) -> list:
    """Generator fixed points, refined by arc midpoints of adjacent gaps."""
    points = []
    for g in gens:
        fixed = _boundary_fixed_set(g)
        if fixed:
            for p in fixed:
                if not any(_points_close(p, q) for q in points):
                    points.append(p)
    if not points:
        points.append(BoundaryPoint.infinity())
    if len(points) == 1:
        points.append(BoundaryPoint.from_angle(points[0].psi + math.pi))
    for _ in range(levels):
        ordered = sorted(points, key=lambda p: p.psi)
        mids = []
        for i, p in enumerate(ordered):
            q = ordered[(i + 1) % len(ordered)]
            mids.append(Arc(p, q).midpoint())
        for m in mids:
            if not any(_points_close(m, q) for q in points):
                points.append(m)
    return points


def invariant_interval_scan(gens: Sequence[Moebius],
                            levels: int = SCAN_LEVELS) -> Optional[Arc]:
    """Search for a closed interval J with g(J) ⊆ J for every generator.

    Candidate endpoints are the boundary fixed points of the generators
    together with dyadic arc-midpoint refinements; candidate arcs between
    every ordered pair are tested by weak containment of the image arc.
    Returns the first invariant arc found, or None.
    """
    points = _candidate_points(gens, levels)
    order = sorted(range(len(points)), key=lambda i: points[i].psi)
    for i in order:
        for j in order:
            if i == j:
                continue
            arc = Arc(points[i], points[j])
            if all(arc_contains_arc(arc, arc_image(g, arc)) for g in gens):
                return arc
    return None


def _fixes_point(g: Moebius, p: BoundaryPoint) -> bool:
    return _points_close(apply_boundary(g, p), p)


def _fixes_arc_setwise(g: Moebius, J: Arc) -> bool:
    return _fixes_point(g, J.p) and _fixes_point(g, J.q)


def _multiplier_along(g: Moebius, h: Moebius) -> float:
    """Dilation factor of g in the frame h mapping its axis to (0, ∞)."""
    a, b, c, d = compose(h, compose(g, inverse(h))).entries()
    return a / d


def exceptional_check(gens: Sequence[Moebius]) -> bool:
    """Detect the exceptional configuration from a generating set.

    Looks for a unique collection of two or more hyperbolic generators
    sharing an axis whose dilation factors generate a discrete group; if
    every generator then preserves one of the two intervals J bounded by
    that axis, the semigroup is exceptional exactly when some generator
    fixes exactly one endpoint of J.  Exceptional semigroups are never
    semidiscrete: conjugating the endpoint-fixing generator by the group
    drags it arbitrarily close to a pure dilation.
    """
    axes = []
    for g in gens:
        if not classify(g).is_hyperbolic:
            continue
        att, rep = fixed_points(g)
        for axis in axes:
            x, y = axis["pair"]
            if (_points_close(att, x) and _points_close(rep, y)) or (
                    _points_close(att, y) and _points_close(rep, x)):
                axis["members"].append(g)
                break
        else:
            axes.append({"pair": (att, rep), "members": [g]})

    discrete_axes = []
    for axis in axes:
        if len(axis["members"]) < 2:
            continue
        x, y = axis["pair"]
        h = map_to_zero_one_infinity(x, Arc(x, y).midpoint(), y)
        factors = [_multiplier_along(g, h) for g in axis["members"]]
        if classify_multiplicative(factors).kind is AdditiveKind.DISCRETE_GROUP:
            discrete_axes.append(axis)
    if len(discrete_axes) != 1:
        return False

    x, y = discrete_axes[0]["pair"]
    for J in (Arc(x, y), Arc(y, x)):
        if not all(arc_contains_arc(J, arc_image(g, J)) for g in gens):
            continue
        for g in gens:
            if _fixes_point(g, J.p) != _fixes_point(g, J.q):
                return True
    return False


def _build_contracted_union(frame_gens: Sequence[Moebius], expanding: bool,
                            h: Moebius, J_near: BoundaryPoint,
                            J_far: BoundaryPoint) -> Optional[ArcUnion]:
    """An arc [p, ∞] (or [0, q]) strictly contracted by every frame map.

    In the frame where J = [0, ∞] and the setwise fixers are dilations,
    choose the cut inside the gap left by the images of the non-fixing
    generators; verification happens in the original coordinates.
    """
    J = Arc(BoundaryPoint.from_real(0.0), BoundaryPoint.infinity())
    bound: Optional[float] = None
    for g in frame_gens:
        if _fixes_arc_setwise(g, J):
            continue
        image = arc_image(g, J)
        endpoint = image.p if expanding else image.q
        if endpoint.is_infinity:
            return None
        t = endpoint.value
        if expanding and t <= 0.0:
            return None
        if not expanding and t < 0.0:
            return None
        bound = t if bound is None else (min(bound, t) if expanding else max(bound, t))
    hinv = inverse(h)
    if expanding:
        cut = 1.0 if bound is None else 0.5 * bound
        if cut <= 0.0:
            return None
        # The frame sends the far endpoint of J to ∞ exactly, so reuse it.
        pulled = Arc(apply_boundary(hinv, BoundaryPoint.from_real(cut)), J_far)
    else:
        cut = 1.0 if bound is None else 2.0 * bound + 1.0
        pulled = Arc(J_near, apply_boundary(hinv, BoundaryPoint.from_real(cut)))
    # Single-arc unions are already canonical; the angle round-trip in
    # from_arcs would trade the exact endpoint of J for tan(ψ/2) noise.
    return ArcUnion((pulled,))


def semidiscrete_in_MJ(gens: Sequence[Moebius], J: Arc) -> MJVerdict:
    """Classify a finitely generated semigroup confined to the interval J.

    The generators fixing J setwise are dilations along the axis of J;
    their factor family routes the verdict.  One-sided factors give a
    semidiscrete semigroup whose non-identity part is inverse free,
    certified (when the construction succeeds) by an interval every
    non-identity generator maps strictly inside itself.  Factors forming
    a nontrivial discrete group give a semidiscrete semigroup exactly when
    no other generator fixes an endpoint of J.  Dense factors make the
    semigroup accumulate on the whole stabilizer of J.
    """
    sieve = [g for g in gens if not is_identity(g)]
    for g in sieve:
        if not arc_contains_arc(J, arc_image(g, J)):
            raise NotInvariantError("a generator moves J off itself")

    h = map_to_zero_one_infinity(J.p, J.midpoint(), J.q)
    frame_gens = [compose(h, compose(g, inverse(h))) for g in sieve]
    fixers = [g for g in sieve if _fixes_arc_setwise(g, J)]
    others = [g for g in sieve if not _fixes_arc_setwise(g, J)]
    factors = [_multiplier_along(g, h) for g in fixers]
    factors = [a for a in factors if abs(math.log(a)) > EPS_MULT]

    if not factors:
        verdict = AdditiveVerdict(AdditiveKind.ONE_SIDED)
    else:
        verdict = classify_multiplicative(factors)

    if verdict.kind is AdditiveKind.ONE_SIDED:
        expanding = all(a >= 1.0 for a in factors)
        certificate = _build_contracted_union(frame_gens, expanding, h, J.p, J.q)
        if certificate is None and not factors:
            certificate = _build_contracted_union(frame_gens, False, h, J.p, J.q)
        if certificate is not None:
            union_ok = all(
                _union_strictly_contracted(g, certificate) for g in sieve)
            if not union_ok:
                certificate = None
        return MJVerdict(
            MJKind.SDIF_PLUS_IDENTITY,
            certificate=certificate,
            reason="setwise fixers are one-sided dilations",
        )
    if verdict.kind is AdditiveKind.DISCRETE_GROUP:
        for g in others:
            if _fixes_point(g, J.p) or _fixes_point(g, J.q):
                return MJVerdict(
                    MJKind.NOT_SEMIDISCRETE,
                    reason="exceptional: a generator outside the dilation "
                           "group fixes an endpoint of J",
                )
        return MJVerdict(
            MJKind.SEMIDISCRETE,
            reason="discrete dilation group with endpoint-free companions",
        )
    return MJVerdict(
        MJKind.DENSE_IN_M0,
        undetermined=verdict.undetermined,
        reason="dilation factors of the setwise fixers are dense",
    )


def _union_strictly_contracted(g: Moebius, X: ArcUnion) -> bool:
    """Every component arc maps strictly inside the union."""
    moved = False
    for arc in X.components:
        image = arc_image(g, arc)
        if not any(arc_contains_arc(comp, image) for comp in X.components):
            return False
        if not (_points_close(image.p, arc.p) and _points_close(image.q, arc.q)):
            moved = True
    return moved
