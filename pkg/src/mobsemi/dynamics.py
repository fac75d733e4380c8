"""Composition sequences, word enumeration, and limit-set sampling.

A finite set of Möbius maps generates a semigroup: the set of all values of
nonempty words over the generator alphabet.  This module provides the two
computational probes of that semigroup used throughout the package.

The first probe is *exhaustive*: ``enumerate_words`` tabulates every distinct
word value up to a given length, deduplicating values that agree entrywise on
a rounding grid (matrices are normalized to determinant one and canonical
sign first, so each map has a unique stored representative).  Scanning the
table for elliptic entries, or for non-identity entries close to the identity
in the chordal operator metric, gives *refutation evidence* against
semidiscreteness and inverse-freeness: a semigroup whose closure contains the
identity, or which contains an elliptic map of infinite order, is not
semidiscrete and inverse free.  ``oracle_refute`` packages that scan.  A
``None`` answer is never a proof — only evidence at bounded depth.

The second probe is *dynamical*: a composition sequence
``F_n = f_1 ∘ f_2 ∘ … ∘ f_n`` (each letter drawn from the alphabet) is run
on the base point i of the upper half-plane.  The sequence *converges
ideally* when the orbit ``F_n(i)`` leaves every compact set and its boundary
shadow stabilizes at a single boundary point.  ``run_sequence`` classifies a
finite run into ideal convergence, non-escape with recurrence, escape
without a stabilizing shadow, or undecided.  The thresholds are desk-scale
surrogates for asymptotic definitions and every report carries diagnostics.

Limit sets are sampled by collecting attracting fixed points of hyperbolic
word values (``sample_limit_set``): the forward limit set is the smallest
closed set containing the attracting fixed points of the semigroup's
hyperbolic elements, and the backward limit set is the forward limit set of
the inverse alphabet.

``continued_fraction_check`` decides ideal convergence for the
continued-fraction family ``f = z + λ``, ``g = z/(μz + 1)``: every
composition sequence over {f, g} converges ideally if and only if
λμ ∉ (−4, 0].  The product lift F·G has trace 2 + λμ, which is elliptic
exactly when λμ ∈ (−4, 0), and one generator degenerates to the identity at
λμ = 0; both failure modes are returned as explicit witnesses.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .core import (
    BASEPOINT,
    EPS_CLASS,
    EPS_ID,
    BoundaryPoint,
    HalfPlanePoint,
    Moebius,
    MoebiusClass,
    apply_halfplane,
    boundary_shadow,
    chordal,
    classify,
    compose,
    compose_all,
    distance_to_identity,
    hyperbolic_dist,
    inverse,
    is_identity,
)

DEDUP_GRID = 1e-8        # rounding grid for word-value deduplication
DEFAULT_CAP = 10_000_000  # hard cap on total stored word values
EPS_NEAR = 1e-3          # operator distance for "near identity" findings
EPS_CONV = 1e-6          # chordal oscillation threshold for ideal convergence
EPS_REC = 1e-6           # recurrence cell size in the half-plane
RHO_MIN = 10.0           # orbit must be this far (hyperbolically) to converge
WINDOW = 64              # shadow history length used for oscillation
OSC_MACRO = 1e-2         # oscillation this large counts as genuinely unsettled

_KEY_CLIP = 9.0e15       # dedup keys saturate here (int64-safe after round)
_LABELS = "FGHKLMNPQRSTUVWXYZ"
_IDENTITY_ROW = np.array([1.0, 0.0, 0.0, 1.0])


class CapExceededError(RuntimeError):
    """Raised when word enumeration would exceed the stored-value cap."""


@dataclass(frozen=True, slots=True)
class EllipticWitness:
    """A word whose value is elliptic (or the identity, at degenerate input).

    ``word`` is a human-readable string over the generator labels;
    ``letters`` gives the same word as alphabet indices (first-applied letter
    last, matching left-to-right composition order of the string).
    """

    word: str
    letters: tuple[int, ...]
    value: Moebius
    cls: MoebiusClass


@dataclass(frozen=True, slots=True)
class NearIdentityWitness:
    """A non-identity word value within ``distance`` of the identity map."""

    word: str
    letters: tuple[int, ...]
    value: Moebius
    distance: float


@dataclass(frozen=True, slots=True)
class WordLevel:
    """All word values first seen at one word length.

    ``matrices`` holds normalized rows (a, b, c, d); ``parents`` indexes the
    previous level's entry that this value extends (−1 at length one), and
    ``letters`` is the alphabet index of the last letter applied.
    """

    matrices: np.ndarray
    parents: np.ndarray
    letters: np.ndarray

    def __len__(self) -> int:
        return self.matrices.shape[0]


@dataclass(frozen=True, slots=True)
class WordTable:
    """Distinct semigroup word values, level by level.

    Level ℓ (1-based) stores the values first attained by a word of length
    exactly ℓ.  Because every value of a longer word is (value of its length
    ℓ prefix) composed with the remaining letters, extending only the fresh
    values of each level still enumerates the full value set: a value first
    seen at length k has all its one-letter extensions present by length
    k + 1.  Each entry retains one witness word via the parent/letter chain.
    """

    alphabet: tuple[Moebius, ...]
    labels: tuple[str, ...]
    levels: tuple[WordLevel, ...]
    depth: int
    dedup_grid: float

    @property
    def stored_total(self) -> int:
        return sum(len(lev) for lev in self.levels)

    def word_letters(self, length: int, index: int) -> tuple[int, ...]:
        """Alphabet indices of the witness word, first letter first."""
        if not 1 <= length <= len(self.levels):
            raise IndexError(f"no level of length {length}")
        rev = []
        i = index
        for lev in range(length - 1, -1, -1):
            level = self.levels[lev]
            rev.append(int(level.letters[i]))
            i = int(level.parents[i])
        return tuple(reversed(rev))

    def word_string(self, length: int, index: int) -> str:
        letters = self.word_letters(length, index)
        parts = [self.labels[j] for j in letters]
        if all(len(p) == 1 for p in parts):
            return "".join(parts)
        return ".".join(parts)

    def value(self, length: int, index: int) -> Moebius:
        """Re-evaluate the witness word exactly (left-to-right composition)."""
        letters = self.word_letters(length, index)
        return compose_all(self.alphabet[j] for j in letters)

    def level_matrices(self, length: int) -> np.ndarray:
        return self.levels[length - 1].matrices


def _compose_rows(front: np.ndarray, alph: np.ndarray) -> np.ndarray:
    """All products front[i] · alph[j], flattened with j varying fastest."""
    fa, fb = front[:, 0, None], front[:, 1, None]
    fc, fd = front[:, 2, None], front[:, 3, None]
    ga, gb = alph[None, :, 0], alph[None, :, 1]
    gc, gd = alph[None, :, 2], alph[None, :, 3]
    out = np.empty((front.shape[0], alph.shape[0], 4))
    out[..., 0] = fa * ga + fb * gc
    out[..., 1] = fa * gb + fb * gd
    out[..., 2] = fc * ga + fd * gc
    out[..., 3] = fc * gb + fd * gd
    return out.reshape(-1, 4)


def _renormalize_rows(mats: np.ndarray) -> None:
    """Divide rows by √det where the determinant has drifted measurably.

    Rows whose determinant falls outside (0.5, 2) are left untouched: with
    entries large enough for that to happen, the determinant itself is
    cancellation noise and rescaling would only corrupt the row.
    """
    det = mats[:, 0] * mats[:, 3] - mats[:, 1] * mats[:, 2]
    fix = (det > 0.5) & (det < 2.0) & (np.abs(det - 1.0) > 1e-13)
    if fix.any():
        mats[fix] /= np.sqrt(det[fix])[:, None]


def _canonical_sign_rows(mats: np.ndarray) -> np.ndarray:
    """Flip rows so the trace is nonnegative (first nonzero of a, b, c wins ties)."""
    s = mats[:, 0] + mats[:, 3]
    flip = s < 0
    zero = np.flatnonzero(s == 0)
    if zero.size:
        a, b, c = mats[zero, 0], mats[zero, 1], mats[zero, 2]
        flip[zero] = np.where(a != 0, a < 0, np.where(b != 0, b < 0, c < 0))
    return np.where(flip[:, None], -mats, mats)


def _dedup_keys(mats: np.ndarray, grid: float) -> np.ndarray:
    """Void-dtype keys: entries rounded to the grid, saturating at ±9e15."""
    q = np.round(mats / grid)
    q = np.nan_to_num(q, nan=0.0, posinf=_KEY_CLIP, neginf=-_KEY_CLIP)
    np.clip(q, -_KEY_CLIP, _KEY_CLIP, out=q)
    keys = np.ascontiguousarray(q.astype(np.int64))
    return keys.view(np.dtype((np.void, keys.dtype.itemsize * 4))).ravel()


def _member(sorted_key_arrays: list[np.ndarray], keys: np.ndarray) -> np.ndarray:
    """Mask of keys present in any of the sorted key arrays."""
    mask = np.zeros(keys.shape[0], dtype=bool)
    for s in sorted_key_arrays:
        if s.size == 0:
            continue
        pos = np.minimum(np.searchsorted(s, keys), s.size - 1)
        mask |= s[pos] == keys
    return mask


def _default_labels(count: int) -> tuple[str, ...]:
    if count <= len(_LABELS):
        return tuple(_LABELS[:count])
    return tuple(f"g{i}" for i in range(count))


def enumerate_words(
    generators: Sequence[Moebius],
    depth: int,
    *,
    cap: int = DEFAULT_CAP,
    dedup_grid: float = DEDUP_GRID,
    labels: Optional[Sequence[str]] = None,
) -> WordTable:
    """Tabulate all distinct word values of length 1..depth.

    Breadth-first over word length: each level's candidates are the previous
    level's fresh values extended by one letter on the right.  Candidates are
    deduplicated within the level and against all earlier levels using the
    rounding-grid keys, keeping the first witness in generation order.  The
    enumeration stops early if a level contributes no fresh value (then no
    deeper word can either).  Raises :class:`CapExceededError` when the
    cumulative stored count would exceed ``cap``.
    """
    if not generators:
        raise ValueError("generator alphabet must be nonempty")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    k = len(generators)
    if labels is None:
        labels = _default_labels(k)
    elif len(labels) != k:
        raise ValueError("labels must match the alphabet length")

    alph = np.array([g.entries() for g in generators], dtype=float)
    levels: list[WordLevel] = []
    seen: list[np.ndarray] = []
    total = 0

    cand = _canonical_sign_rows(alph.copy())
    parents = np.full(k, -1, dtype=np.int64)
    letters = np.arange(k, dtype=np.int16)

    for length in range(1, depth + 1):
        keys = _dedup_keys(cand, dedup_grid)
        _, first = np.unique(keys, return_index=True)
        keep = np.sort(first)
        cand, keys = cand[keep], keys[keep]
        parents, letters = parents[keep], letters[keep]
        fresh = ~_member(seen, keys)
        if not fresh.any():
            break
        cand, keys = cand[fresh], keys[fresh]
        parents, letters = parents[fresh], letters[fresh]
        if total + cand.shape[0] > cap:
            raise CapExceededError(
                f"word table would exceed {cap} stored values at length {length}"
            )
        levels.append(WordLevel(cand, parents, letters))
        seen.append(np.sort(keys))
        total += cand.shape[0]
        if length == depth:
            break
        front = cand
        cand = _compose_rows(front, alph)
        _renormalize_rows(cand)
        cand = _canonical_sign_rows(cand)
        parents = np.repeat(np.arange(front.shape[0], dtype=np.int64), k)
        letters = np.tile(np.arange(k, dtype=np.int16), front.shape[0])

    return WordTable(
        alphabet=tuple(generators),
        labels=tuple(labels),
        levels=tuple(levels),
        depth=depth,
        dedup_grid=dedup_grid,
    )


def find_elliptic(
    table: WordTable, *, eps_class: float = EPS_CLASS
) -> Optional[EllipticWitness]:
    """First table entry with |trace| < 2 − eps_class, shortest word first."""
    for length, level in enumerate(table.levels, start=1):
        s = level.matrices[:, 0] + level.matrices[:, 3]
        hits = np.flatnonzero(np.abs(s) < 2.0 - eps_class)
        if hits.size:
            i = int(hits[0])
            value = table.value(length, i)
            return EllipticWitness(
                word=table.word_string(length, i),
                letters=table.word_letters(length, i),
                value=value,
                cls=classify(value),
            )
    return None


def find_near_identity(
    table: WordTable,
    *,
    eps_near: float = EPS_NEAR,
    include_identity: bool = False,
) -> Optional[NearIdentityWitness]:
    """First entry within operator distance eps_near of the identity.

    Exact identity values are skipped unless ``include_identity`` is set
    (an identity *value* shows the semigroup is not inverse free, but is not
    by itself evidence of an identity accumulation).  Candidates are
    prefiltered entrywise: a normalized lift at operator distance ≤ ε from
    the identity has min(‖M − I‖∞, ‖M + I‖∞) ≤ 4ε for ε ≤ 0.1, because the
    images of 0, 1 and ∞ pin all four entries to that scale.
    """
    for length, level in enumerate(table.levels, start=1):
        m = level.matrices
        e1 = np.max(np.abs(m - _IDENTITY_ROW), axis=1)
        e2 = np.max(np.abs(m + _IDENTITY_ROW), axis=1)
        candidates = np.flatnonzero(np.minimum(e1, e2) <= 4.0 * eps_near)
        for i in candidates:
            value = Moebius(*m[int(i)])
            dist = distance_to_identity(value)
            if dist > eps_near:
                continue
            if is_identity(value, EPS_ID) and not include_identity:
                continue
            return NearIdentityWitness(
                word=table.word_string(length, int(i)),
                letters=table.word_letters(length, int(i)),
                value=table.value(length, int(i)),
                distance=dist,
            )
    return None


def find_identity_word(
    table: WordTable, *, eps_id: float = EPS_ID
) -> Optional[str]:
    """Shortest word evaluating to the identity map, if any."""
    for length, level in enumerate(table.levels, start=1):
        m = level.matrices
        e1 = np.max(np.abs(m - _IDENTITY_ROW), axis=1)
        e2 = np.max(np.abs(m + _IDENTITY_ROW), axis=1)
        hits = np.flatnonzero(np.minimum(e1, e2) <= eps_id)
        if hits.size:
            return table.word_string(length, int(hits[0]))
    return None


def oracle_refute(
    generators: Sequence[Moebius],
    depth: int,
    *,
    eps_near: float = EPS_NEAR,
    eps_class: float = EPS_CLASS,
    cap: int = DEFAULT_CAP,
    dedup_grid: float = DEDUP_GRID,
    table: Optional[WordTable] = None,
) -> Optional[Union[EllipticWitness, NearIdentityWitness]]:
    """Bounded-depth search for evidence against semidiscrete-and-inverse-free.

    Scans all word values up to ``depth`` for (a) elliptic entries, then
    (b) non-identity entries within operator distance ``eps_near`` of the
    identity, returning the first witness found.  ``None`` means the search
    found nothing — evidence, not proof.
    """
    if table is None:
        table = enumerate_words(generators, depth, cap=cap, dedup_grid=dedup_grid)
    witness = find_elliptic(table, eps_class=eps_class)
    if witness is not None:
        return witness
    return find_near_identity(table, eps_near=eps_near)


# ---------------------------------------------------------------------------
# Composition sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CompositionState:
    """Running left product F_n = f₁ ∘ … ∘ f_n with its orbit of i.

    ``history`` keeps the most recent orbit points (newest last), capped at
    the window length passed to :func:`step`.
    """

    n: int
    product: Moebius
    orbit: HalfPlanePoint
    history: tuple[HalfPlanePoint, ...]


def initial_state() -> CompositionState:
    return CompositionState(
        n=0, product=Moebius.identity(), orbit=BASEPOINT, history=(BASEPOINT,)
    )


def step(
    state: CompositionState, f: Moebius, *, window: int = WINDOW
) -> CompositionState:
    """Extend the left product by one letter: F_{n+1} = F_n ∘ f."""
    product = compose(state.product, f)
    orbit = apply_halfplane(product, BASEPOINT)
    history = (state.history + (orbit,))[-window:]
    return CompositionState(
        n=state.n + 1, product=product, orbit=orbit, history=history
    )


class ConvergenceOutcome(Enum):
    IDEAL_CONVERGENCE = "IdealConvergence"
    ESCAPING_NO_LIMIT = "EscapingNoLimit"
    NOT_ESCAPING = "NotEscaping"
    UNDECIDED = "Undecided"


@dataclass(frozen=True, slots=True)
class ConvergenceReport:
    """Outcome of one finite composition-sequence run.

    ``limit`` is set only for ideal convergence.  ``oscillation`` is the
    largest chordal distance from the latest boundary shadow to the shadows
    in the trailing window (None until the window fills while the orbit is
    hyperbolically far from the base point).
    """

    outcome: ConvergenceOutcome
    limit: Optional[BoundaryPoint]
    steps_used: int
    final_rho: float
    oscillation: Optional[float]
    recurrent: bool
    seed: Optional[int]


def _shadow_oscillation(shadows: Sequence[BoundaryPoint]) -> float:
    latest = shadows[-1]
    return max(chordal(s, latest) for s in shadows)


def run_sequence(
    generators: Sequence[Moebius],
    digits: Optional[Sequence[int]] = None,
    *,
    max_steps: int = 10_000,
    seed: int = 0,
    eps_conv: float = EPS_CONV,
    rho_min: float = RHO_MIN,
    eps_rec: float = EPS_REC,
    window: int = WINDOW,
) -> ConvergenceReport:
    """Run one composition sequence and classify its behaviour.

    ``digits`` may be an explicit list of alphabet indices; otherwise a
    reproducible stream is drawn from numpy's PCG64 generator seeded with
    ``seed`` (the seed is recorded in the report).  The run stops early once
    the boundary shadow of the orbit has oscillation ≤ ``eps_conv`` across
    the trailing window while the orbit is at hyperbolic distance at least
    ``rho_min`` from the base point: that is the desk-scale reading of ideal
    convergence.  A run that stays within ``rho_min`` for all of
    ``max_steps`` and revisits an ``eps_rec`` grid cell is NotEscaping; a
    run that escapes but whose shadow still swings at macroscopic scale is
    EscapingNoLimit; anything else is Undecided.
    """
    if not generators:
        raise ValueError("generator alphabet must be nonempty")
    k = len(generators)
    used_seed: Optional[int] = None
    if digits is None:
        used_seed = seed
        rng = np.random.Generator(np.random.PCG64(seed))
        digit_list = rng.integers(0, k, size=max_steps).tolist()
    else:
        digit_list = list(digits[:max_steps])
        for d in digit_list:
            if not 0 <= d < k:
                raise ValueError(f"digit {d} out of range for {k} generators")

    from collections import deque

    # The left product is kept as a raw matrix rescaled to unit max-entry:
    # the half-plane action is invariant under positive rescaling, while a
    # determinant-one representative overflows once ρ(i, Fₙ(i)) ≳ 1400.
    # The determinant is propagated separately (it is a product of the
    # generator determinants and the rescale factors); recomputing it from
    # the rescaled entries would cancel to noise once it falls below 1e-16.
    pa, pb, pc, pd = 1.0, 0.0, 0.0, 1.0
    det = 1.0
    gen_dets = [g.a * g.d - g.b * g.c for g in generators]
    shadows: deque[BoundaryPoint] = deque(maxlen=window)
    cells: set[tuple[int, int]] = set()
    recurrent = False
    rho = 0.0
    oscillation: Optional[float] = None
    steps = 0

    for d in digit_list:
        g = generators[d]
        pa, pb, pc, pd = (
            pa * g.a + pb * g.c,
            pa * g.b + pb * g.d,
            pc * g.a + pd * g.c,
            pc * g.b + pd * g.d,
        )
        scale = max(abs(pa), abs(pb), abs(pc), abs(pd))
        pa, pb, pc, pd = pa / scale, pb / scale, pc / scale, pd / scale
        det = det * gen_dets[d] / (scale * scale)
        den = pc * pc + pd * pd
        x = (pa * pc + pb * pd) / den if den > 0.0 else math.inf
        y = det / den if den > 0.0 else 0.0
        if not math.isfinite(x):
            x = math.copysign(1e140, x) if not math.isnan(x) else 0.0
        x = min(max(x, -1e140), 1e140)
        y = min(max(y, 5e-324), 1e140)
        orbit = HalfPlanePoint(x, y)
        steps += 1
        rho = hyperbolic_dist(BASEPOINT, orbit)
        if rho < rho_min:
            # Recurrence only matters for orbits that never escape, and
            # restricting the grid to the non-escaped regime keeps the cell
            # coordinates finite.
            cell = (round(orbit.x / eps_rec), round(orbit.y / eps_rec))
            if cell in cells:
                recurrent = True
            else:
                cells.add(cell)
        else:
            shadows.append(boundary_shadow(orbit))
            if len(shadows) == window and steps % 4 == 0:
                oscillation = _shadow_oscillation(shadows)
                if oscillation <= eps_conv:
                    return ConvergenceReport(
                        outcome=ConvergenceOutcome.IDEAL_CONVERGENCE,
                        limit=shadows[-1],
                        steps_used=steps,
                        final_rho=rho,
                        oscillation=oscillation,
                        recurrent=recurrent,
                        seed=used_seed,
                    )

    if len(shadows) == window:
        oscillation = _shadow_oscillation(shadows)
    if rho < rho_min:
        outcome = (
            ConvergenceOutcome.NOT_ESCAPING
            if recurrent
            else ConvergenceOutcome.UNDECIDED
        )
        limit = None
    elif oscillation is not None and oscillation <= eps_conv:
        outcome = ConvergenceOutcome.IDEAL_CONVERGENCE
        limit = shadows[-1]
    elif oscillation is not None and oscillation > OSC_MACRO:
        outcome = ConvergenceOutcome.ESCAPING_NO_LIMIT
        limit = None
    else:
        outcome = ConvergenceOutcome.UNDECIDED
        limit = None
    return ConvergenceReport(
        outcome=outcome,
        limit=limit,
        steps_used=steps,
        final_rho=rho,
        oscillation=oscillation,
        recurrent=recurrent,
        seed=used_seed,
    )


# ---------------------------------------------------------------------------
# Limit-set sampling
# ---------------------------------------------------------------------------


class Side(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True, slots=True)
class LimitSetSample:
    """Attracting fixed points of hyperbolic word values up to a depth.

    Forward samples use the generator alphabet itself; backward samples use
    the inverse alphabet, whose attracting fixed points are the repelling
    fixed points of the forward words.
    """

    points: tuple[BoundaryPoint, ...]
    side: Side
    depth: int

    def psi_values(self) -> np.ndarray:
        """Sorted circle angles of the sample points."""
        return np.sort(np.array([p.psi for p in self.points]))


def _attracting_from_rows(m: np.ndarray, eps_class: float) -> list[BoundaryPoint]:
    s = m[:, 0] + m[:, 3]
    hyp = np.flatnonzero(np.abs(s) > 2.0 + eps_class)
    if not hyp.size:
        return []
    rows = np.where((s[hyp] < 0)[:, None], -m[hyp], m[hyp])
    a, b, c, d = rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3]
    t = a + d
    lam = (t + np.sqrt(t * t - 4.0)) / 2.0
    # Columns of M − μI (μ = 1/λ) span the attracting eigenspace and avoid
    # the cancellation λ − a that corrupts kernel vectors of M − λI.
    mu = 1.0 / lam
    n1 = (a - mu) ** 2 + c * c
    n2 = b * b + (d - mu) ** 2
    use2 = n2 > n1
    x = np.where(use2, b, a - mu)
    y = np.where(use2, d - mu, c)
    # Snap cancellation residue so fixed points at exactly 0 or ∞ come out
    # exact (mirrors the eigenvector extraction in the core module).
    y = np.where(np.abs(y) <= 1e-14 * np.abs(x), 0.0, y)
    x = np.where(np.abs(x) <= 1e-14 * np.abs(y), 0.0, x)
    return [BoundaryPoint(float(xi), float(yi)) for xi, yi in zip(x, y)]


def sample_limit_set(
    generators: Sequence[Moebius],
    side: Union[Side, str],
    depth: int,
    *,
    eps_class: float = EPS_CLASS,
    cap: int = DEFAULT_CAP,
    dedup_grid: float = DEDUP_GRID,
) -> LimitSetSample:
    """Collect attracting fixed points of hyperbolic words up to ``depth``."""
    side = Side(side) if not isinstance(side, Side) else side
    alphabet = (
        list(generators)
        if side is Side.FORWARD
        else [inverse(g) for g in generators]
    )
    table = enumerate_words(alphabet, depth, cap=cap, dedup_grid=dedup_grid)
    points: list[BoundaryPoint] = []
    for length in range(1, len(table.levels) + 1):
        points.extend(_attracting_from_rows(table.level_matrices(length), eps_class))
    return LimitSetSample(points=tuple(points), side=side, depth=depth)


def _psi_array(sample: Union[LimitSetSample, Iterable[BoundaryPoint]]) -> np.ndarray:
    if isinstance(sample, LimitSetSample):
        return sample.psi_values()
    return np.sort(np.array([p.psi for p in sample]))


def _directed_hausdorff(psi_a: np.ndarray, psi_b: np.ndarray) -> float:
    pos = np.searchsorted(psi_b, psi_a)
    n = psi_b.size
    best = np.full(psi_a.shape, np.inf)
    for idx in (pos % n, (pos - 1) % n):
        delta = np.abs(psi_a - psi_b[idx])
        delta = np.minimum(delta, 2.0 * math.pi - delta)
        best = np.minimum(best, delta)
    return float(np.max(2.0 * np.abs(np.sin(best / 2.0))))


def hausdorff_distance(
    a: Union[LimitSetSample, Iterable[BoundaryPoint]],
    b: Union[LimitSetSample, Iterable[BoundaryPoint]],
) -> float:
    """Chordal Hausdorff distance between two boundary samples."""
    psi_a, psi_b = _psi_array(a), _psi_array(b)
    if psi_a.size == 0 or psi_b.size == 0:
        raise ValueError("Hausdorff distance needs nonempty samples")
    return max(_directed_hausdorff(psi_a, psi_b), _directed_hausdorff(psi_b, psi_a))


# ---------------------------------------------------------------------------
# Continued fractions
# ---------------------------------------------------------------------------


def continued_fraction_check(
    lam: float, mu: float
) -> tuple[bool, Optional[EllipticWitness]]:
    """Ideal-convergence test for the pair f = z + λ, g = z/(μz + 1).

    Every composition sequence over {f, g} converges ideally if and only if
    λμ ∉ (−4, 0].  When the product λμ lands in that interval the returned
    witness exhibits the failure: FG is elliptic for λμ ∈ (−4, 0) (its lift
    has trace 2 + λμ), and at λμ = 0 one generator is the identity map.
    """
    p = lam * mu
    if p > 0.0 or p <= -4.0:
        return True, None
    f = Moebius(1.0, lam, 0.0, 1.0)
    g = Moebius(1.0, 0.0, mu, 1.0)
    if p == 0.0:
        if lam == 0.0:
            witness = EllipticWitness("F", (0,), f, classify(f))
        else:
            witness = EllipticWitness("G", (1,), g, classify(g))
        return False, witness
    fg = compose(f, g)
    return False, EllipticWitness("FG", (0, 1), fg, classify(fg))
