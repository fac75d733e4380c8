"""Real Moebius transformations, boundary geometry, and circular-arc machinery.

This module is the numerical substrate for the rest of the package: 2x2
matrix representatives of maps z -> (az+b)/(cz+d) with ad-bc > 0 acting on
the upper half-plane and on its ideal boundary (the extended real line,
treated as a circle), the trace trichotomy elliptic/parabolic/hyperbolic,
fixed points, chordal and hyperbolic metrics, cross ratios, commutator
traces, and closed counterclockwise boundary arcs with containment tests.

Conventions
-----------
* Matrices are normalized to determinant one and to a canonical PSL(2, R)
  sign: a + d >= 0, and when a + d = 0 the first nonzero entry of
  (a, b, c) is positive.  ``tr(f)`` is the nonnegative normalized trace.
* Boundary points are homogeneous pairs (x, y) with x**2 + y**2 = 1 and
  y >= 0; the pair (1, 0) is the point at infinity.  The circle coordinate
  ``psi = 2*atan2(x, y)`` lies in (-pi, pi] and increases with t = x/y, so
  counterclockwise arc traversal is traversal in increasing extended-real
  order, wrapping through infinity at psi = pi.
* The chordal metric between boundary points is 2*|x1*y2 - x2*y1|, which
  agrees with 2|s - t|/sqrt((1+s^2)(1+t^2)) at finite points and needs no
  special case at infinity.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

TWO_PI = 2.0 * math.pi

# Tolerances.  Each is the library-wide default; operations that depend on
# one accept an explicit override argument.
EPS_DET = 1e-12          # determinant renormalization slack
EPS_POINT = 1e-10        # boundary-point equality, chordal scale
EPS_CLASS = 1e-9         # trace trichotomy band around tr = 2
EPS_ID = 1e-10           # entrywise distance-to-identity threshold
EPS_STRICT = 1e-9        # strict arc containment margin, chordal scale
EPS_TRACE_EXACT = 1e-13  # inside this band a parabolic trace counts as exact
EPS_ORDER = 1e-9         # relative tolerance for rational angle recovery
QMAX = 1000              # denominator bound for rational angle recovery
KMAX = 64                # maximum number of ArcUnion components

OP_GRID_SIZE = 256       # boundary sample count for operator distance


class NotApplicableError(ValueError):
    """An operation was invoked on a map class it is not defined for."""


class SharedFixedPointError(ValueError):
    """Two maps share a fixed point where distinct fixed points are required."""


class IdentityInputError(ValueError):
    """The identity map was supplied where a nonidentity map is required."""


# ---------------------------------------------------------------------------
# Moebius transformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Moebius:
    """A real Moebius transformation z -> (az+b)/(cz+d), ad - bc > 0.

    The stored representative is normalized: determinant one, trace
    nonnegative, and at trace zero the first nonzero entry of (a, b, c)
    positive.  Instances are immutable values.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        a = float(self.a)
        b = float(self.b)
        c = float(self.c)
        d = float(self.d)
        det = a * d - b * c
        if not math.isfinite(det) or det <= 0.0:
            raise ValueError(f"matrix determinant must be positive, got {det!r}")
        if abs(det - 1.0) > EPS_DET:
            r = math.sqrt(det)
            a, b, c, d = a / r, b / r, c / r, d / r
        s = a + d
        if s < 0.0:
            a, b, c, d = -a, -b, -c, -d
        elif s == 0.0:
            for entry in (a, b, c):
                if entry != 0.0:
                    if entry < 0.0:
                        a, b, c, d = -a, -b, -c, -d
                    break
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, t: float) -> "Moebius":
        """The parabolic (or identity) map z -> z + t."""
        return cls(1.0, float(t), 0.0, 1.0)

    @classmethod
    def dilation(cls, k: float) -> "Moebius":
        """The map z -> k*z for k > 0, hyperbolic with axis (0, infinity)."""
        if k <= 0.0:
            raise ValueError("dilation factor must be positive")
        r = math.sqrt(k)
        return cls(r, 0.0, 0.0, 1.0 / r)

    @classmethod
    def affine(cls, a: float, b: float) -> "Moebius":
        """The map z -> a*z + b with a > 0."""
        if a <= 0.0:
            raise ValueError("affine dilation coefficient must be positive")
        return cls(a, b, 0.0, 1.0)

    @classmethod
    def rotation(cls, angle: float) -> "Moebius":
        """Elliptic rotation about i; ``angle`` is the full rotation angle.

        The representative is the half-angle rotation matrix, so the n-th
        power is the identity in PSL(2, R) exactly when n*angle is a
        multiple of 2*pi.
        """
        h = 0.5 * angle
        return cls(math.cos(h), math.sin(h), -math.sin(h), math.cos(h))

    @classmethod
    def rotation_about(cls, center: "HalfPlanePoint", angle: float) -> "Moebius":
        """Elliptic rotation by ``angle`` about an arbitrary point of H."""
        move = cls(center.y, center.x, 0.0, 1.0)  # sends i to center
        return compose(move, compose(cls.rotation(angle), inverse(move)))

    @classmethod
    def hyperbolic_map(
        cls,
        attracting: "BoundaryPoint",
        repelling: "BoundaryPoint",
        length: float,
    ) -> "Moebius":
        """Hyperbolic map with the given axis and translation length > 0."""
        if length <= 0.0:
            raise ValueError("translation length must be positive")
        if chordal(attracting, repelling) <= EPS_POINT:
            raise ValueError("attracting and repelling points must be distinct")
        # h sends repelling -> 0 and attracting -> infinity; then conjugate
        # the dilation e**length back.  Any such h works because dilations
        # commute with the rescalings that distinguish the choices of h.
        h = _map_pair_to_zero_infinity(repelling, attracting)
        return compose(inverse(h), compose(cls.dilation(math.exp(length)), h))

    # -- views -------------------------------------------------------------

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Moebius({self.a:.6g}, {self.b:.6g}, {self.c:.6g}, {self.d:.6g})"


def _map_pair_to_zero_infinity(u: "BoundaryPoint", v: "BoundaryPoint") -> Moebius:
    """A Moebius map sending u -> 0 and v -> infinity."""
    a, b = u.y, -u.x
    c, d = v.y, -v.x
    if a * d - b * c <= 0.0:
        a, b = -a, -b
    return Moebius(a, b, c, d)


def map_to_zero_one_infinity(
    u: "BoundaryPoint", v: "BoundaryPoint", w: "BoundaryPoint"
) -> Moebius:
    """The Moebius map sending (u, v, w) to (0, 1, infinity).

    The triple must be in counterclockwise order, otherwise the projective
    map carrying it to (0, 1, infinity) reverses orientation and is not a
    Moebius transformation of the upper half-plane; a ValueError is raised.
    """
    bvw = _bracket(v, w)
    bvu = _bracket(v, u)
    return Moebius(u.y * bvw, -u.x * bvw, w.y * bvu, -w.x * bvu)


# ---------------------------------------------------------------------------
# Boundary and half-plane points
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class BoundaryPoint:
    """A point of the ideal boundary in homogeneous coordinates.

    Normalized so x**2 + y**2 = 1 with y >= 0; (1, 0) is infinity and
    otherwise the point represents t = x/y.
    """

    x: float
    y: float

    def __post_init__(self) -> None:
        x = float(self.x)
        y = float(self.y)
        r = math.hypot(x, y)
        if not math.isfinite(r) or r == 0.0:
            raise ValueError("homogeneous coordinates must be a nonzero finite pair")
        x, y = x / r, y / r
        if y < 0.0 or (y == 0.0 and x < 0.0):
            x, y = -x, -y
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_real(cls, t: float) -> "BoundaryPoint":
        return cls(float(t), 1.0)

    @classmethod
    def infinity(cls) -> "BoundaryPoint":
        return cls(1.0, 0.0)

    @classmethod
    def from_angle(cls, psi: float) -> "BoundaryPoint":
        """The point with circle coordinate psi (any real; reduced mod 2*pi)."""
        h = 0.5 * psi
        return cls(math.sin(h), math.cos(h))

    @property
    def is_infinity(self) -> bool:
        return self.y == 0.0

    @property
    def value(self) -> float:
        """The extended-real value; math.inf for the point at infinity."""
        if self.y == 0.0:
            return math.inf
        return self.x / self.y

    @property
    def psi(self) -> float:
        """Circle coordinate 2*atan2(x, y) in (-pi, pi]; infinity sits at pi."""
        return 2.0 * math.atan2(self.x, self.y)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return "BoundaryPoint(inf)" if self.y == 0.0 else f"BoundaryPoint({self.value:.6g})"


INFINITY = BoundaryPoint.infinity()


@dataclass(frozen=True, slots=True)
class HalfPlanePoint:
    """A point x + iy of the open upper half-plane (y > 0 strictly)."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)) or self.y <= 0.0:
            raise ValueError("half-plane point needs finite x and y > 0")


BASEPOINT = HalfPlanePoint(0.0, 1.0)


def _bracket(u: BoundaryPoint, v: BoundaryPoint) -> float:
    """Homogeneous two-point bracket x_u*y_v - x_v*y_u (vanishes iff u = v)."""
    return u.x * v.y - v.x * u.y


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

class MapKind(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True, slots=True)
class MoebiusClass:
    """Result of the trace trichotomy, with per-class data.

    ``order`` is the elliptic rotation order, or None when the rotation
    angle is not recognizably a rational multiple of pi (infinite or
    undetermined order).  ``borderline`` marks parabolic verdicts whose
    trace sits inside the classification band but away from exactly 2, the
    explicitly indeterminate channel of the trichotomy.
    """

    kind: MapKind
    borderline: bool = False
    angle: Optional[float] = None
    order: Optional[int] = None
    fixed: Optional[BoundaryPoint] = None
    attracting: Optional[BoundaryPoint] = None
    repelling: Optional[BoundaryPoint] = None
    translation_length: Optional[float] = None

    @property
    def is_elliptic(self) -> bool:
        return self.kind is MapKind.ELLIPTIC

    @property
    def is_parabolic(self) -> bool:
        return self.kind is MapKind.PARABOLIC

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind is MapKind.HYPERBOLIC

    @property
    def is_identity(self) -> bool:
        return self.kind is MapKind.IDENTITY


def is_identity(f: Moebius, eps: float = EPS_ID) -> bool:
    """Entrywise test against the identity representative."""
    return (
        abs(f.a - 1.0) <= eps
        and abs(f.b) <= eps
        and abs(f.c) <= eps
        and abs(f.d - 1.0) <= eps
    )


def elliptic_order(
    angle: float, qmax: int = QMAX, eps_order: float = EPS_ORDER
) -> Optional[int]:
    """Rotation order from the half-angle, via rational reconstruction.

    The map has order q exactly when angle/pi = p/q in lowest terms; the
    reconstruction accepts the rational only within eps_order, otherwise
    the order is reported unknown (None).
    """
    frac = angle / math.pi
    approx = Fraction(frac).limit_denominator(qmax)
    if approx.numerator == 0:
        return None
    if abs(frac - float(approx)) <= eps_order:
        return approx.denominator
    return None


def classify(
    f: Moebius,
    eps_class: float = EPS_CLASS,
    eps_id: float = EPS_ID,
    qmax: int = QMAX,
    eps_order: float = EPS_ORDER,
) -> MoebiusClass:
    """Trace trichotomy with fixed-point data.

    Identity is detected first (entrywise within eps_id).  Elliptic maps
    report the rotation half-angle in (0, pi/2] (trace = 2*cos(angle)) and,
    when the angle is a recognized rational multiple of pi, the finite
    order.  Traces within eps_class of 2 classify as parabolic; the
    borderline flag stays clear only in the exact zone |tr - 2| <= EPS_TRACE_EXACT.
    """
    if is_identity(f, eps_id):
        return MoebiusClass(kind=MapKind.IDENTITY)
    s = f.a + f.d
    if s < 2.0 - eps_class:
        angle = math.acos(min(1.0, max(-1.0, 0.5 * s)))
        return MoebiusClass(
            kind=MapKind.ELLIPTIC,
            angle=angle,
            order=elliptic_order(angle, qmax=qmax, eps_order=eps_order),
        )
    if s > 2.0 + eps_class:
        alpha, beta = fixed_points(f)
        return MoebiusClass(
            kind=MapKind.HYPERBOLIC,
            attracting=alpha,
            repelling=beta,
            translation_length=2.0 * math.acosh(0.5 * s),
        )
    fixed = _parabolic_fixed_point(f)
    return MoebiusClass(
        kind=MapKind.PARABOLIC,
        borderline=abs(s - 2.0) > EPS_TRACE_EXACT,
        fixed=fixed,
        attracting=fixed,
        repelling=fixed,
    )


def tr(f: Moebius) -> float:
    """Normalized trace |a + d| (the representative already has a + d >= 0)."""
    return abs(f.a + f.d)


def signed_trace(f: Moebius) -> float:
    """Trace of the canonical representative (nonnegative by normalization)."""
    return f.a + f.d


def _eigenvector(f: Moebius, lam: float) -> BoundaryPoint:
    """The boundary point spanned by an eigenvector for eigenvalue lam.

    With μ the other eigenvalue (μ = 1/λ, determinant one), the image of
    M − μI lies in the λ-eigenspace, so either column works; taking columns
    of M − μI rather than kernel vectors of M − λI avoids the cancellation
    λ − a when the eigenvector is dominated by one huge entry.  Pick the
    numerically larger column.
    """
    mu = 1.0 / lam
    u1 = (f.a - mu, f.c)
    u2 = (f.b, f.d - mu)
    if u1[0] * u1[0] + u1[1] * u1[1] >= u2[0] * u2[0] + u2[1] * u2[1]:
        x, y = u1
    else:
        x, y = u2
    # A component at relative size below 1e-14 is cancellation residue; snap
    # it so fixed points that are exactly 0 or ∞ come out exact.
    if abs(y) <= 1e-14 * abs(x):
        y = 0.0
    elif abs(x) <= 1e-14 * abs(y):
        x = 0.0
    return BoundaryPoint(x, y)


def _parabolic_fixed_point(f: Moebius) -> BoundaryPoint:
    return _eigenvector(f, 1.0)


def fixed_points(
    f: Moebius, eps_class: float = EPS_CLASS, eps_id: float = EPS_ID
) -> tuple[BoundaryPoint, BoundaryPoint]:
    """Attracting and repelling boundary fixed points.

    For hyperbolic maps these are the eigenvector directions, attracting
    for the eigenvalue of larger magnitude; a parabolic map returns its
    unique fixed point twice.  Raises NotApplicableError for elliptic maps
    and the identity, which fix no boundary point (or all of them).
    """
    if is_identity(f, eps_id):
        raise NotApplicableError("identity has no distinguished fixed points")
    s = f.a + f.d
    if s < 2.0 - eps_class:
        raise NotApplicableError("elliptic maps have no boundary fixed points")
    if s <= 2.0 + eps_class:
        p = _parabolic_fixed_point(f)
        return p, p
    disc = math.sqrt(s * s - 4.0)
    lam_plus = 0.5 * (s + disc)
    lam_minus = 0.5 * (s - disc)
    return _eigenvector(f, lam_plus), _eigenvector(f, lam_minus)


# ---------------------------------------------------------------------------
# Group operations and actions
# ---------------------------------------------------------------------------

def compose(f: Moebius, g: Moebius) -> Moebius:
    """The composition z -> f(g(z)) (matrix product, renormalized)."""
    return Moebius(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
    )


def compose_all(maps: Iterable[Moebius]) -> Moebius:
    """Left-to-right composition of a word: compose_all([f, g, h]) = f.g.h."""
    out = Moebius.identity()
    for m in maps:
        out = compose(out, m)
    return out


def inverse(f: Moebius) -> Moebius:
    return Moebius(f.d, -f.b, -f.c, f.a)


def power(f: Moebius, n: int) -> Moebius:
    """The n-th power of f; negative n uses the inverse."""
    if n < 0:
        return power(inverse(f), -n)
    out = Moebius.identity()
    base = f
    while n:
        if n & 1:
            out = compose(out, base)
        base = compose(base, base)
        n >>= 1
    return out


def conjugate(h: Moebius, f: Moebius) -> Moebius:
    """The conjugate h f h^{-1}."""
    return compose(h, compose(f, inverse(h)))


def conjugate_by_negation(f: Moebius) -> Moebius:
    """Conjugation by the anticonformal reflection z -> -z.

    This is the fixed utility for reversing the orientation of the real
    line; the result is again a Moebius transformation with entries
    (a, -b, -c, d).
    """
    return Moebius(f.a, -f.b, -f.c, f.d)


def product_trace(f: Moebius, g: Moebius) -> float:
    """Signed trace of the product of the two canonical representatives.

    The sign is meaningful given the canonical lifts: a value in (-2, 2)
    means the composition fg is elliptic.
    """
    return f.a * g.a + f.b * g.c + f.c * g.b + f.d * g.d


def commutator_trace(f: Moebius, g: Moebius) -> float:
    """Signed trace of F G F^{-1} G^{-1}.

    Lift-independent (each representative appears an even number of times),
    so the sign carries information: the commutator is elliptic exactly
    when the value lies in (-2, 2).
    """
    fa, fb, fc, fd = f.entries()
    ga, gb, gc, gd = g.entries()
    # FG and its "inverse product" (F G)^{-1} adjusted... compute explicitly:
    m1 = (fa * ga + fb * gc, fa * gb + fb * gd, fc * ga + fd * gc, fc * gb + fd * gd)
    # F^{-1} G^{-1} without renormalization
    fi = (fd, -fb, -fc, fa)
    gi = (gd, -gb, -gc, ga)
    m2 = (
        fi[0] * gi[0] + fi[1] * gi[2],
        fi[0] * gi[1] + fi[1] * gi[3],
        fi[2] * gi[0] + fi[3] * gi[2],
        fi[2] * gi[1] + fi[3] * gi[3],
    )
    # trace of (FG) . (F^{-1} G^{-1}) ... note [F,G] = F G F^{-1} G^{-1}
    return m1[0] * m2[0] + m1[1] * m2[2] + m1[2] * m2[1] + m1[3] * m2[3]


def apply_boundary(f: Moebius, p: BoundaryPoint) -> BoundaryPoint:
    """Projective action on homogeneous boundary coordinates."""
    return BoundaryPoint(f.a * p.x + f.b * p.y, f.c * p.x + f.d * p.y)


def apply_halfplane(f: Moebius, w: HalfPlanePoint) -> HalfPlanePoint:
    """Action (az+b)/(cz+d) on z = x + iy; preserves y > 0."""
    cx_d = f.c * w.x + f.d
    cy = f.c * w.y
    denom = cx_d * cx_d + cy * cy
    ax_b = f.a * w.x + f.b
    ay = f.a * w.y
    x = (ax_b * cx_d + ay * cy) / denom
    y = w.y / denom  # (ad - bc) = 1 for the normalized representative
    return HalfPlanePoint(x, y)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def chordal(
    p: Union[BoundaryPoint, HalfPlanePoint],
    q: Union[BoundaryPoint, HalfPlanePoint],
) -> float:
    """Chordal distance, for two boundary points or two half-plane points.

    Boundary points use the homogeneous determinant form 2|x1*y2 - x2*y1|;
    half-plane points use 2|z - w|/sqrt((1 + |z|^2)(1 + |w|^2)).
    """
    if isinstance(p, BoundaryPoint) and isinstance(q, BoundaryPoint):
        return 2.0 * abs(p.x * q.y - q.x * p.y)
    if isinstance(p, HalfPlanePoint) and isinstance(q, HalfPlanePoint):
        dz = math.hypot(p.x - q.x, p.y - q.y)
        np_ = 1.0 + p.x * p.x + p.y * p.y
        nq = 1.0 + q.x * q.x + q.y * q.y
        return 2.0 * dz / math.sqrt(np_ * nq)
    raise TypeError("chordal distance needs two points of the same kind")


def hyperbolic_dist(u: HalfPlanePoint, v: HalfPlanePoint) -> float:
    """Distance in the metric |dz|/y on the upper half-plane."""
    dx = u.x - v.x
    dy = u.y - v.y
    cosh_rho = 1.0 + (dx * dx + dy * dy) / (2.0 * u.y * v.y)
    return math.acosh(max(1.0, cosh_rho))


def cross_ratio(f: Moebius, g: Moebius, eps_pt: float = EPS_POINT) -> float:
    """The cross ratio of the fixed-point quadruple of two hyperbolic maps.

    Computed as a ratio of homogeneous brackets so the point at infinity
    needs no special treatment.  The four fixed points must be pairwise
    distinct; coincidences within eps_pt raise SharedFixedPointError.
    """
    af, bf = fixed_points(f)
    ag, bg = fixed_points(g)
    pts = (af, bf, ag, bg)
    for i in range(4):
        for j in range(i + 1, 4):
            if chordal(pts[i], pts[j]) <= eps_pt:
                raise SharedFixedPointError(
                    "cross ratio needs four pairwise distinct fixed points"
                )
    num = _bracket(af, ag) * _bracket(bf, bg)
    den = _bracket(af, bg) * _bracket(bf, ag)
    if den == 0.0:
        return math.inf
    return num / den


# ---------------------------------------------------------------------------
# Arcs
# ---------------------------------------------------------------------------

def _ccw_delta(psi_from: float, psi_to: float) -> float:
    """Counterclockwise angle from psi_from to psi_to, in [0, 2*pi)."""
    return (psi_to - psi_from) % TWO_PI


@dataclass(frozen=True, slots=True)
class Arc:
    """The closed arc traversed counterclockwise from p to q.

    Never a singleton and never the whole circle: p and q must be distinct
    (beyond EPS_POINT in chordal distance).  The complement of the interior
    of Arc(p, q) is Arc(q, p).
    """

    p: BoundaryPoint
    q: BoundaryPoint

    def __post_init__(self) -> None:
        if chordal(self.p, self.q) <= EPS_POINT:
            raise ValueError("degenerate arc: endpoints coincide")

    @classmethod
    def from_reals(cls, s: float, t: float) -> "Arc":
        """Closed arc from s to t counterclockwise; math.inf is accepted."""
        return cls(_pt(s), _pt(t))

    @property
    def span(self) -> float:
        """Counterclockwise angular extent, in (0, 2*pi)."""
        return _ccw_delta(self.p.psi, self.q.psi)

    def contains(self, r: BoundaryPoint, eps_pt: float = EPS_POINT) -> bool:
        """Weak membership, with eps_pt slack at the endpoints."""
        if chordal(r, self.p) <= eps_pt or chordal(r, self.q) <= eps_pt:
            return True
        return _ccw_delta(self.p.psi, r.psi) <= self.span

    def midpoint(self) -> BoundaryPoint:
        return BoundaryPoint.from_angle(self.p.psi + 0.5 * self.span)

    def interpolate(self, u: float) -> BoundaryPoint:
        """The point a fraction u in [0, 1] along the arc from p."""
        return BoundaryPoint.from_angle(self.p.psi + u * self.span)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Arc({self.p!r} -> {self.q!r})"


def _pt(t: float) -> BoundaryPoint:
    return INFINITY if math.isinf(t) else BoundaryPoint.from_real(t)


def arc_image(f: Moebius, J: Arc) -> Arc:
    """The image arc; Moebius maps preserve circle orientation."""
    return Arc(apply_boundary(f, J.p), apply_boundary(f, J.q))


def arc_inside_gap(inner: Arc, outer: Arc) -> Optional[float]:
    """Chordal clearance of inner within the interior of outer, else None.

    Returns min(gap at the start endpoint, gap at the end endpoint) when
    inner sits inside outer without wrapping; None when containment fails.
    """
    beta = outer.span
    a1 = _ccw_delta(outer.p.psi, inner.p.psi)
    a2 = _ccw_delta(outer.p.psi, inner.q.psi)
    if not (a1 <= a2 <= beta):
        return None
    gap_start = 2.0 * abs(math.sin(0.5 * a1))
    gap_end = 2.0 * abs(math.sin(0.5 * (beta - a2)))
    return min(gap_start, gap_end)


def arc_strictly_inside(inner: Arc, outer: Arc, margin: float = EPS_STRICT) -> bool:
    """True iff inner lies in the interior of outer with chordal clearance
    at least ``margin`` at both endpoints."""
    gap = arc_inside_gap(inner, outer)
    return gap is not None and gap >= margin


def arc_contains_arc(outer: Arc, inner: Arc, eps_pt: float = EPS_POINT) -> bool:
    """Weak containment inner subset-of outer, with endpoint slack eps_pt."""
    beta = outer.span
    a1 = 0.0 if chordal(inner.p, outer.p) <= eps_pt else _ccw_delta(outer.p.psi, inner.p.psi)
    a2 = beta if chordal(inner.q, outer.q) <= eps_pt else _ccw_delta(outer.p.psi, inner.q.psi)
    return a1 <= a2 <= beta


def maps_arc_strictly_within(f: Moebius, J: Arc, eps_pt: float = EPS_POINT) -> bool:
    """True iff f(J) is a proper subset of J.

    Weak containment with eps_pt endpoint slack, plus the requirement that
    at least one endpoint genuinely moved (an endpoint may be fixed, as for
    a hyperbolic map attracting within an interval it preserves, but the
    image may not fill all of J).
    """
    img = arc_image(f, J)
    if not arc_contains_arc(J, img, eps_pt):
        return False
    return chordal(img.p, J.p) > eps_pt or chordal(img.q, J.q) > eps_pt


@dataclass(frozen=True, slots=True)
class ArcUnion:
    """A canonical finite union of pairwise disjoint arcs.

    Components are sorted by starting angle and merged when they overlap or
    abut, so equal point sets get equal representations.  Construct through
    ``ArcUnion.from_arcs``.
    """

    components: tuple[Arc, ...]

    @classmethod
    def from_arcs(
        cls,
        arcs: Sequence[Arc],
        merge_gap: float = 0.0,
        kmax: int = KMAX,
    ) -> "ArcUnion":
        """Canonical union; ``merge_gap`` (angle units) fuses near-touching arcs.

        Raises ValueError if the union covers the whole circle or needs more
        than kmax components.
        """
        if not arcs:
            raise ValueError("an arc union needs at least one arc")
        items = sorted((a.p.psi, a.span) for a in arcs)
        merged: list[tuple[float, float]] = []
        for start, span in items:
            if merged and start <= merged[-1][0] + merged[-1][1] + merge_gap:
                s0, sp0 = merged[-1]
                merged[-1] = (s0, max(sp0, start + span - s0))
            else:
                merged.append((start, span))
        # wrap-around: the last component may swallow leading ones
        while len(merged) > 1:
            s_last, sp_last = merged[-1]
            s_first, sp_first = merged[0]
            if s_last + sp_last + merge_gap >= s_first + TWO_PI:
                merged[-1] = (s_last, max(sp_last, s_first + TWO_PI + sp_first - s_last))
                merged.pop(0)
            else:
                break
        if any(sp >= TWO_PI - 1e-15 for _, sp in merged):
            raise ValueError("arc union covers the whole circle")
        if len(merged) > kmax:
            raise ValueError(f"arc union needs {len(merged)} components, cap is {kmax}")
        comps = tuple(
            Arc(BoundaryPoint.from_angle(s), BoundaryPoint.from_angle(s + sp))
            for s, sp in merged
        )
        return cls(comps)

    def contains(self, r: BoundaryPoint, eps_pt: float = EPS_POINT) -> bool:
        return any(comp.contains(r, eps_pt) for comp in self.components)

    def union(self, other: "ArcUnion", merge_gap: float = 0.0, kmax: int = KMAX) -> "ArcUnion":
        return ArcUnion.from_arcs(
            list(self.components) + list(other.components),
            merge_gap=merge_gap,
            kmax=kmax,
        )

    def apply(self, f: Moebius, merge_gap: float = 0.0, kmax: int = KMAX) -> "ArcUnion":
        return ArcUnion.from_arcs(
            [arc_image(f, comp) for comp in self.components],
            merge_gap=merge_gap,
            kmax=kmax,
        )

    def total_span(self) -> float:
        return sum(comp.span for comp in self.components)


def arcunion_inside_gap(inner: ArcUnion, outer: ArcUnion) -> Optional[float]:
    """Minimum chordal clearance of inner strictly inside outer, else None.

    Each component of inner, being connected, must land in the interior of
    a single component of outer; the result is the worst clearance over
    components.
    """
    worst = math.inf
    for comp in inner.components:
        best: Optional[float] = None
        for out in outer.components:
            gap = arc_inside_gap(comp, out)
            if gap is not None and (best is None or gap > best):
                best = gap
        if best is None or best <= 0.0:
            return None
        worst = min(worst, best)
    return worst


# ---------------------------------------------------------------------------
# Operator distance and boundary shadows
# ---------------------------------------------------------------------------

_OP_GRID: tuple[BoundaryPoint, ...] = tuple(
    BoundaryPoint.from_angle(-math.pi + TWO_PI * k / OP_GRID_SIZE)
    for k in range(OP_GRID_SIZE)
)


def operator_distance(f: Moebius, g: Moebius) -> float:
    """Half the maximum chordal displacement over a fixed boundary grid.

    The half-normalization makes the distance between two translations
    z + a and z + b approximately |a - b| for small |a - b|.  The grid
    maximum slightly underestimates the true supremum, so thresholds used
    as upper bounds remain safe.
    """
    worst = 0.0
    for p in _OP_GRID:
        d = chordal(apply_boundary(f, p), apply_boundary(g, p))
        if d > worst:
            worst = d
    return 0.5 * worst


def distance_to_identity(f: Moebius) -> float:
    """Operator distance of f from the identity."""
    worst = 0.0
    for p in _OP_GRID:
        d = chordal(apply_boundary(f, p), p)
        if d > worst:
            worst = d
    return 0.5 * worst


def boundary_shadow(w: HalfPlanePoint) -> BoundaryPoint:
    """The boundary point behind w as seen from the basepoint i.

    Maps w through the Cayley transform (z - i)/(z + i) to the unit disc
    and projects radially to the unit circle.  Meaningful when w is far
    from i; used to read off the ideal limit of an escaping orbit.
    """
    # (z - i)/(z + i) for z = x + iy
    den = w.x * w.x + (w.y + 1.0) * (w.y + 1.0)
    re = (w.x * w.x + w.y * w.y - 1.0) / den
    im = -2.0 * w.x / den
    phi = math.atan2(im, re) % TWO_PI
    h = 0.5 * phi
    return BoundaryPoint(-math.cos(h), math.sin(h))
