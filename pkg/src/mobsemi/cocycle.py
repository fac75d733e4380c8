"""Uniform hyperbolicity of SL(2,ℝ) tuples via invariant multicones.

An N-tuple (A_1, …, A_N) of SL(2,ℝ) matrices drives a linear cocycle over
the full shift on N symbols.  The cocycle is *uniformly hyperbolic* — every
symbol sequence carries a dominated splitting with uniform constants — if
and only if there is a nonempty open set X ⊂ ∂ℍ with finitely many
components whose closure is moved strictly inside itself by every generator:
closure(A_i(X)) ⊂ X for all i.  Such an X is called a *multicone* (its
preimage in ℝ² is a union of projective cones), and the locus 𝓗 of
uniformly hyperbolic tuples is exactly the set of tuples admitting one.
This is the boundary-dynamics form of the cone-field criterion of
Avila–Bochi–Yoccoz.

Membership in 𝓗 is certified here by ``find_multicone``: seed arcs around
the attracting fixed points of short hyperbolic words are grown under the
generator images until the union stabilizes, then the strict-containment
margin is measured.  The search is a semi-decision — a returned
:class:`Multicone` is a machine-checkable proof of membership (re-check it
with ``verify_multicone``), while ``None`` only means no multicone was found
at these parameters.

The complementary locus is probed by ``in_E_bounded``: the set 𝓔 of tuples
whose generated semigroup contains an elliptic element is open, and an
elliptic word value found at bounded depth certifies membership.  Both 𝓗
and 𝓔 are open and disjoint (a multicone forces every word value to be
hyperbolic), and by a theorem of Avila the closure of 𝓔 is precisely the
complement of 𝓗.  Yoccoz asked whether, dually, the closure of 𝓗 is the
complement of 𝓔.  For pairs (N = 2) this is true, but it fails for N = 4:
take a standard Schottky group-generating pair F, H and form the tuple
(F, F⁻¹, H, H⁻¹).  The semigroup it generates is the free group ⟨F, H⟩,
which contains no elliptic element, so the tuple avoids 𝓔.  Yet it cannot
be approximated by uniformly hyperbolic tuples: for any nearby tuple
(F_n, G_n, H_n, K_n) ∈ 𝓗 the product F_nG_n is a hyperbolic element of a
semigroup that is semidiscrete and inverse free, so Jørgensen's inequality
for semigroups applies against any antiparallel witness Q_n drawn from the
same semigroup,

    |tr(F_nG_n)² − 4| + |tr[F_nG_n, Q_n] − 2| ≥ 1,

while F_nG_n → F F⁻¹ = id drives the left-hand side to 0.
``yoccoz_counterexample`` builds the tuple from validated Schottky data and
reports the numerical collapse of that quantity along shrinking
perturbation radii, together with the failure of the multicone search at
every sampled perturbation.  The identity word F G witnesses membership in
the amended locus 𝓕 (semigroup contains an elliptic element *or* the
identity), the subject of the revised question.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .classify import antiparallel, geodesics_cross
from .core import (
    EPS_CLASS,
    KMAX,
    Arc,
    ArcUnion,
    BoundaryPoint,
    Moebius,
    NotApplicableError,
    SharedFixedPointError,
    arc_image,
    arc_inside_gap,
    chordal,
    classify,
    commutator_trace,
    compose,
    compose_all,
    conjugate,
    fixed_points,
    inverse,
    product_trace,
)
from .dynamics import (
    DEDUP_GRID,
    DEFAULT_CAP,
    CapExceededError,
    EllipticWitness,
    NearIdentityWitness,
    WordTable,
    enumerate_words,
    find_elliptic,
    find_identity_word,
    find_near_identity,
)

DELTA_SEED = 1e-3        # chordal radius of the seed arcs around attracting points
DEFAULT_L_SEED = 6       # word length whose attracting fixed points seed the cone
DEFAULT_MAX_ITERS = 200  # cap on invariance iterations before giving up
MERGE_GAP = 1e-9         # angular gap below which adjacent components fuse
SOUNDNESS_SLACK = 1e-12  # tolerance when re-verifying a recorded margin
WITNESS_DEPTH = 4        # word length searched for the antiparallel witness
WITNESS_CLEARANCE = 0.05  # chordal clearance of the witness axis from the limit points
PERTURBATION_RADII = (1e-2, 1e-3, 1e-4)  # entrywise radii of the perturbation grid
GRID_SAMPLES = 5         # perturbation directions sampled per radius

NO_MULTICONE_MESSAGE = "no multicone found at these parameters"


class InvalidSchottkyParamsError(ValueError):
    """Raised when Schottky data fails the paired-intervals validation."""


@dataclass(frozen=True, slots=True)
class Multicone:
    """A certified invariant multicone.

    ``X`` is the stabilized union of open arcs; ``margin`` is the worst
    chordal clearance of closure(A_i(X)) inside X over all generators and
    components.  A positive margin is exactly the strict-containment
    condition, so the instance is a proof of uniform hyperbolicity that
    any reader can re-verify with arc arithmetic alone.
    """

    X: ArcUnion
    margin: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.margin) and self.margin > 0.0):
            raise ValueError("multicone margin must be positive")
        if len(self.X.components) > KMAX:
            raise ValueError("multicone exceeds the component cap")


# ---------------------------------------------------------------------------
# Bounded membership tests
# ---------------------------------------------------------------------------


def in_E_bounded(
    alphabet: Sequence[Moebius],
    depth: int,
    *,
    eps_class: float = EPS_CLASS,
    cap: int = DEFAULT_CAP,
    dedup_grid: float = DEDUP_GRID,
    labels: Optional[Sequence[str]] = None,
    table: Optional[WordTable] = None,
) -> Optional[EllipticWitness]:
    """Bounded-depth test for membership in the elliptic locus.

    Returns the shortest word of length ≤ depth whose value is elliptic,
    which certifies that the tuple lies in the open set of tuples whose
    semigroup contains an elliptic element.  ``None`` is evidence, not
    proof, of non-membership.  Exact-identity and near-identity word
    values are deliberately not reported here — they witness the amended
    locus (elliptic *or* identity) and are surfaced separately by
    :func:`near_identity_bounded` and ``dynamics.find_identity_word``.
    """
    if table is None:
        table = enumerate_words(
            alphabet, depth, cap=cap, dedup_grid=dedup_grid, labels=labels
        )
    return find_elliptic(table, eps_class=eps_class)


def near_identity_bounded(
    alphabet: Sequence[Moebius],
    depth: int,
    *,
    eps_near: float = 1e-3,
    cap: int = DEFAULT_CAP,
    dedup_grid: float = DEDUP_GRID,
    labels: Optional[Sequence[str]] = None,
    table: Optional[WordTable] = None,
) -> Optional[NearIdentityWitness]:
    """Bounded-depth evidence that the identity lies in the semigroup closure.

    A non-identity word value within ``eps_near`` of the identity map in
    the chordal operator metric.  Together with an elliptic witness this
    covers the amended membership question for the locus of tuples whose
    semigroup contains an elliptic element or the identity.
    """
    if table is None:
        table = enumerate_words(
            alphabet, depth, cap=cap, dedup_grid=dedup_grid, labels=labels
        )
    return find_near_identity(table, eps_near=eps_near)


# ---------------------------------------------------------------------------
# Multicone search
# ---------------------------------------------------------------------------


def _union_key(x: ArcUnion) -> tuple[tuple[float, float], ...]:
    return tuple((comp.p.psi, comp.q.psi) for comp in x.components)


def _expand_once(
    gens: Sequence[Moebius],
    x: ArcUnion,
    merge_gap: float = MERGE_GAP,
    kmax: int = KMAX,
) -> ArcUnion:
    """One invariance step: the canonical union of X with all its images.

    Monotone by construction (the components of X are among the input
    arcs), so X ⊆ result as point sets.  Raises ValueError when the union
    covers the whole circle or needs more than kmax components.
    """
    arcs = list(x.components)
    for g in gens:
        arcs.extend(arc_image(g, comp) for comp in x.components)
    return ArcUnion.from_arcs(arcs, merge_gap=merge_gap, kmax=kmax)


def _invariance_gap(gens: Sequence[Moebius], x: ArcUnion) -> Optional[float]:
    """Worst chordal clearance of any generator image inside X, else None.

    Every image of every component must land in the interior of a single
    component with positive clearance at both endpoints; the minimum over
    all images is the certified margin.
    """
    worst = math.inf
    for g in gens:
        for comp in x.components:
            img = arc_image(g, comp)
            best: Optional[float] = None
            for out in x.components:
                gap = arc_inside_gap(img, out)
                if gap is not None and (best is None or gap > best):
                    best = gap
            if best is None or best <= 0.0:
                return None
            worst = min(worst, best)
    return worst


def _seed_arcs(
    alphabet: Sequence[Moebius],
    l_seed: int,
    delta_seed: float,
    cap: int,
) -> Optional[list[Arc]]:
    """Seed neighborhoods around attracting points of short hyperbolic words."""
    try:
        table = enumerate_words(alphabet, l_seed, cap=cap)
    except CapExceededError:
        return None
    half = 2.0 * math.asin(0.5 * delta_seed)  # angular radius of chordal radius δ
    seen: set[int] = set()
    arcs: list[Arc] = []
    for level in table.levels:
        for row in level.matrices:
            cls = classify(Moebius(*row))
            if not cls.is_hyperbolic:
                continue
            psi = cls.attracting.psi
            key = round(psi / half)
            if key in seen:
                continue
            seen.add(key)
            arcs.append(
                Arc(
                    BoundaryPoint.from_angle(psi - half),
                    BoundaryPoint.from_angle(psi + half),
                )
            )
    return arcs or None


def find_multicone(
    alphabet: Sequence[Moebius],
    l_seed: int = DEFAULT_L_SEED,
    max_iters: int = DEFAULT_MAX_ITERS,
    *,
    delta_seed: float = DELTA_SEED,
    merge_gap: float = MERGE_GAP,
    kmax: int = KMAX,
    cap: int = DEFAULT_CAP,
) -> Optional[Multicone]:
    """Search for an invariant multicone certifying uniform hyperbolicity.

    Seeds ``delta_seed``-neighborhoods of the attracting fixed points of
    all hyperbolic words up to length ``l_seed``, then repeatedly replaces
    X by the canonical union of X with its generator images.  The sequence
    is monotone, so it either stabilizes exactly — after which the strict
    containment closure(A_i(X)) ⊂ X is verified with a positive margin —
    or exhausts a resource (``max_iters`` iterations, ``kmax`` components,
    or the whole circle), in which case no multicone was found at these
    parameters.  ``None`` is never a proof of non-membership: the locus is
    open and the search is a semi-decision.
    """
    if not alphabet:
        raise ValueError("generator alphabet must be nonempty")
    gens = tuple(alphabet)
    arcs = _seed_arcs(gens, l_seed, delta_seed, cap)
    if arcs is None:
        return None
    try:
        x = ArcUnion.from_arcs(arcs, merge_gap=merge_gap, kmax=kmax)
    except ValueError:
        return None
    for _ in range(max_iters):
        try:
            grown = _expand_once(gens, x, merge_gap, kmax)
        except ValueError:
            return None
        if _union_key(grown) == _union_key(x):
            break
        x = grown
    else:
        return None
    margin = _invariance_gap(gens, x)
    if margin is None or margin <= 0.0:
        return None
    return Multicone(X=x, margin=margin)


def verify_multicone(
    alphabet: Sequence[Moebius],
    cone: Multicone,
    *,
    slack: float = SOUNDNESS_SLACK,
) -> bool:
    """Re-check a multicone against the tuple it claims to certify.

    Every generator image of every component must sit strictly inside some
    component with chordal clearance at least ``margin − slack``.
    """
    gap = _invariance_gap(tuple(alphabet), cone.X)
    return gap is not None and gap >= cone.margin - slack


# ---------------------------------------------------------------------------
# The counterexample tuple
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SchottkyParams:
    """Axis and interval data for a standard Schottky group-generating pair.

    F is hyperbolic with the given attracting/repelling fixed points and
    frame multiplier (the dilation coefficient on its axis), likewise H.
    The four closed intervals of half-width ``radius`` centered at the four
    fixed points must be pairwise disjoint, with F mapping the complement
    of the repelling interval's interior strictly into the attracting
    interval's interior, and likewise H — the classical ping-pong position.
    """

    f_attracting: float = 1.0
    f_repelling: float = -1.0
    h_attracting: float = 3.0
    h_repelling: float = -3.0
    f_multiplier: float = 256.0
    h_multiplier: float = 256.0
    radius: float = 0.5


@dataclass(frozen=True, slots=True)
class PerturbationRow:
    """Grid results at one perturbation radius.

    ``multicones_found`` counts sampled tuples where the multicone search
    succeeded (expected 0 near the counterexample tuple); the Jørgensen
    quantity is |tr(F_nG_n)² − 4| + |tr[F_nG_n, Q_n] − 2| for the
    near-identity product against the fixed witness word.
    """

    radius: float
    samples: int
    multicones_found: int
    joergensen_min: float
    joergensen_max: float


@dataclass(frozen=True, slots=True)
class YoccozReport:
    """Numerical exhibit that the tuple sits outside both 𝓔 and closure(𝓗)."""

    params: SchottkyParams
    depth: int
    elliptic_witness: Optional[EllipticWitness]
    identity_word: Optional[str]
    witness_word: str
    limit_points: Optional[tuple[BoundaryPoint, BoundaryPoint]]
    unperturbed_quantity: float
    rows: tuple[PerturbationRow, ...]
    multicone_note: str


def _hyperbolic_on_axis(attracting: float, repelling: float, multiplier: float) -> Moebius:
    if attracting > repelling:
        frame = Moebius(attracting, repelling, 1.0, 1.0)
        return conjugate(frame, Moebius.dilation(multiplier))
    frame = Moebius(repelling, attracting, 1.0, 1.0)
    return conjugate(frame, Moebius.dilation(1.0 / multiplier))


def schottky_group_pair(params: SchottkyParams) -> tuple[Moebius, Moebius]:
    """Build and validate the pair (F, H) from interval data.

    Raises InvalidSchottkyParamsError when the four paired intervals are
    not pairwise disjoint or a generator fails to map the complement of
    its repelling interval strictly into its attracting interval.
    """
    values = (
        params.f_attracting,
        params.f_repelling,
        params.h_attracting,
        params.h_repelling,
        params.f_multiplier,
        params.h_multiplier,
        params.radius,
    )
    if not all(math.isfinite(v) for v in values):
        raise InvalidSchottkyParamsError("Schottky parameters must be finite")
    if params.radius <= 0.0:
        raise InvalidSchottkyParamsError("interval radius must be positive")
    if params.f_multiplier <= 1.0 or params.h_multiplier <= 1.0:
        raise InvalidSchottkyParamsError("multipliers must exceed one")
    if (
        params.f_attracting == params.f_repelling
        or params.h_attracting == params.h_repelling
    ):
        raise InvalidSchottkyParamsError("fixed points must be distinct")

    f = _hyperbolic_on_axis(params.f_attracting, params.f_repelling, params.f_multiplier)
    h = _hyperbolic_on_axis(params.h_attracting, params.h_repelling, params.h_multiplier)
    rho = params.radius
    centers = (
        params.f_attracting,
        params.f_repelling,
        params.h_attracting,
        params.h_repelling,
    )
    intervals = [Arc.from_reals(c - rho, c + rho) for c in centers]
    for i in range(4):
        for j in range(i + 1, 4):
            x, y = intervals[i], intervals[j]
            if x.contains(y.p) or x.contains(y.q) or y.contains(x.p):
                raise InvalidSchottkyParamsError(
                    "paired intervals overlap; shrink the radius or spread the axes"
                )
    for gen, domain, target, name in (
        (f, intervals[1], intervals[0], "F"),
        (h, intervals[3], intervals[2], "H"),
    ):
        image = arc_image(gen, Arc(domain.q, domain.p))
        gap = arc_inside_gap(image, target)
        if gap is None or gap <= 0.0:
            raise InvalidSchottkyParamsError(
                f"{name} does not map the complement of its repelling interval "
                "strictly into its attracting interval; increase the multiplier"
            )
    return f, h


def _perturbed_tuple(
    alphabet: tuple[Moebius, ...], direction: np.ndarray, radius: float
) -> tuple[Moebius, ...]:
    """Entrywise perturbation of each generator, renormalized to det one."""
    out = []
    for gen, row in zip(alphabet, direction):
        a, b, c, d = gen.entries()
        out.append(
            Moebius(
                a + radius * row[0],
                b + radius * row[1],
                c + radius * row[2],
                d + radius * row[3],
            )
        )
    return tuple(out)


def _word_over(alphabet: Sequence[Moebius], letters: Sequence[int]) -> Moebius:
    return compose_all(alphabet[j] for j in letters)


def _choose_witness(
    table: WordTable,
    product: Optional[Moebius],
    witness_depth: int,
) -> tuple[str, tuple[int, ...], Moebius, Optional[tuple[BoundaryPoint, BoundaryPoint]]]:
    """The shortest word whose axis avoids the limit configuration.

    ``product`` is the near-identity product of the first two perturbed
    generators at the smallest sampled radius; its fixed points stand in
    for the limit points a, b of the hypothetical approximating sequence.
    The witness must be hyperbolic, keep its axis endpoints chordally clear
    of a and b, not cross the geodesic from a to b, and sit antiparallel to
    the product, so the semigroup trace inequality applies verbatim.
    Falls back to the third generator when no tabulated word qualifies.
    """
    fallback = ("H", (2,), table.alphabet[2], None)
    if product is None or not classify(product).is_hyperbolic:
        return fallback
    a, b = fixed_points(product)
    relaxations = (False, True)  # second pass drops the antiparallel demand
    for skip_antiparallel in relaxations:
        for length in range(1, min(witness_depth, table.depth) + 1):
            level = table.levels[length - 1]
            for index in range(len(level)):
                value = table.value(length, index)
                cls = classify(value)
                if not cls.is_hyperbolic:
                    continue
                ends = (cls.attracting, cls.repelling)
                clearance = min(chordal(e, p) for e in ends for p in (a, b))
                if clearance < WITNESS_CLEARANCE:
                    continue
                if geodesics_cross(ends, (a, b)):
                    continue
                if not skip_antiparallel:
                    try:
                        if not antiparallel(product, value):
                            continue
                    except (SharedFixedPointError, NotApplicableError):
                        continue
                return (
                    table.word_string(length, index),
                    table.word_letters(length, index),
                    value,
                    (a, b),
                )
    return fallback


def yoccoz_counterexample(
    params: SchottkyParams = SchottkyParams(),
    *,
    depth: int = 8,
    radii: Sequence[float] = PERTURBATION_RADII,
    samples: int = GRID_SAMPLES,
    seed: int = 0,
    l_seed: int = 4,
    max_iters: int = 80,
) -> tuple[tuple[Moebius, Moebius, Moebius, Moebius], YoccozReport]:
    """The tuple (F, F⁻¹, H, H⁻¹) and its numerical obstruction report.

    The tuple generates the free group ⟨F, H⟩ as a semigroup, so the
    bounded elliptic search comes back empty while the word F G evaluates
    to the identity exactly.  For every sampled perturbation direction the
    report records the failure of the multicone search at each radius and
    the Jørgensen quantity of the near-identity product F_nG_n against the
    fixed antiparallel witness word; the quantity starts at 0 for the
    unperturbed tuple and stays far below the threshold 1 as the radius
    shrinks — no uniformly hyperbolic sequence can converge to the tuple.
    """
    f, h = schottky_group_pair(params)
    alphabet = (f, inverse(f), h, inverse(h))
    table = enumerate_words(alphabet, depth)
    elliptic = find_elliptic(table)
    identity_word = find_identity_word(table)

    rng = np.random.default_rng(seed)
    directions = rng.uniform(-1.0, 1.0, size=(samples, len(alphabet), 4))
    radii_sorted = tuple(sorted(radii, reverse=True))

    product: Optional[Moebius] = None
    if radii_sorted:
        r_min = radii_sorted[-1]
        for s in range(samples):
            candidate = compose(
                *_perturbed_tuple(alphabet, directions[s], r_min)[:2]
            )
            if classify(candidate).is_hyperbolic:
                product = candidate
                break
    witness_word, witness_letters, witness_value, limit_points = _choose_witness(
        table, product, WITNESS_DEPTH
    )

    rows = []
    for radius in radii_sorted:
        found = 0
        q_min, q_max = math.inf, -math.inf
        for s in range(samples):
            perturbed = _perturbed_tuple(alphabet, directions[s], radius)
            if find_multicone(perturbed, l_seed, max_iters) is not None:
                found += 1
            near_identity = compose(perturbed[0], perturbed[1])
            witness_n = _word_over(perturbed, witness_letters)
            quantity = abs(product_trace(perturbed[0], perturbed[1]) ** 2 - 4.0) + abs(
                commutator_trace(near_identity, witness_n) - 2.0
            )
            q_min, q_max = min(q_min, quantity), max(q_max, quantity)
        rows.append(
            PerturbationRow(
                radius=radius,
                samples=samples,
                multicones_found=found,
                joergensen_min=q_min,
                joergensen_max=q_max,
            )
        )

    exact_product = compose(alphabet[0], alphabet[1])
    unperturbed = abs(product_trace(alphabet[0], alphabet[1]) ** 2 - 4.0) + abs(
        commutator_trace(exact_product, witness_value) - 2.0
    )
    note = (
        NO_MULTICONE_MESSAGE
        if all(row.multicones_found == 0 for row in rows)
        else "multicone found under perturbation; the tuple is not the "
        "expected counterexample configuration"
    )
    report = YoccozReport(
        params=params,
        depth=depth,
        elliptic_witness=elliptic,
        identity_word=identity_word,
        witness_word=witness_word,
        limit_points=limit_points,
        unperturbed_quantity=unperturbed,
        rows=tuple(rows),
        multicone_note=note,
    )
    return alphabet, report
