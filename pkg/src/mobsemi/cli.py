"""Command-line front end for the Möbius-semigroup classifiers.

Subcommands expose the library's decision procedures on finitely
generated semigroups of orientation-preserving isometries of the
hyperbolic plane:

``classify-pair``
    Two-generator classification.  A nonelementary pair ⟨f, g⟩ is
    semidiscrete and inverse free exactly when the trace reduction
    terminates in Schottky position, certified by interval or trace
    data; an elliptic word value refutes it.  The report also notes the
    semigroup trace inequality |tr²(f) − 4| + |tr[f, g] − 2| ≥ 1.
``classify-elementary`` / ``classify-mj``
    Generating sets with a common fixed configuration, and semigroups
    confined to a closed boundary interval J (``--interval P Q``).
``simulate``
    Runs one seeded random composition sequence F_n = f_1 ∘ … ∘ f_n and
    reports whether the orbit of i escapes to the boundary and
    converges ideally to a single endpoint.
``limit-set``
    Samples attracting fixed points of hyperbolic word values (forward
    or backward alphabet) and writes JSON, a CSV column of boundary
    t-values, or a static SVG of the circle.
``cf-check``
    Continued-fraction pair f = z + λ, g = z/(μz + 1): every
    composition sequence converges ideally iff λμ ∉ (−4, 0]; on failure
    the elliptic (or identity) witness word is reported.
``uh-check``
    Uniform hyperbolicity of an SL(2, ℝ) tuple.  A re-verified
    multicone — a finite union of open arcs mapped strictly inside
    itself by every generator — certifies membership in 𝓗; an elliptic
    or exact-identity word value certifies non-membership (powers of
    such a value cannot grow); anything else is reported undecided,
    since the multicone search is a semi-decision.
``counterexample``
    The Schottky group tuple (F, F⁻¹, H, H⁻¹): free, so no elliptic
    word value, yet no multicone exists near it — perturbing the tuple
    makes the product of the first two letters nearly elliptic, and the
    Jørgensen quantity |tr²(F̃G̃) − 4| + |tr[F̃G̃, Q] − 2| against a fixed
    antiparallel witness Q collapses to 0 linearly in the radius.
``oracle``
    Bounded-depth word search for elliptic or near-identity values.
    ``oracle --verify PATH`` re-checks a previously emitted JSON report
    from its own certificate data, using nothing but word evaluation,
    arc containment and traces.

Configuration comes from a TOML file (``--config``), overridden by
flags; ``--tol-KEY VALUE`` overrides the named tolerance.  Every report
embeds the resolved configuration and seed.  Floating-point output uses
17 significant digits, which round-trips IEEE doubles exactly, so
identical configuration and seed produce byte-identical JSON and CSV.
Exit codes: 0 decisive, 1 input error, 2 borderline or undecided,
3 resource cap exceeded.
"""

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10: tomllib landed in 3.11
    import tomli as tomllib  # type: ignore[no-redef]

from .classify import (
    PairStatus,
    SchottkyCertificate,
    TraceCertificate,
    classify_pair,
    joergensen_semigroup,
    verify_pair_certificate,
)
from .cocycle import (
    DEFAULT_L_SEED,
    DELTA_SEED,
    MERGE_GAP,
    NO_MULTICONE_MESSAGE,
    Multicone,
    SchottkyParams,
    find_multicone,
    schottky_group_pair,
    verify_multicone,
    yoccoz_counterexample,
)
from .core import (
    EPS_CLASS,
    EPS_ID,
    INFINITY,
    Arc,
    ArcUnion,
    BoundaryPoint,
    Moebius,
    arcunion_inside_gap,
    classify,
    compose_all,
    distance_to_identity,
    inverse,
    is_identity,
)
from .dynamics import (
    DEDUP_GRID,
    DEFAULT_CAP,
    EPS_CONV,
    EPS_NEAR,
    EPS_REC,
    RHO_MIN,
    CapExceededError,
    ConvergenceOutcome,
    NearIdentityWitness,
    continued_fraction_check,
    enumerate_words,
    find_elliptic,
    find_identity_word,
    oracle_refute,
    run_sequence,
    sample_limit_set,
)
from .elementary import classify_elementary, semidiscrete_in_MJ

EXIT_DECISIVE = 0
EXIT_INPUT = 1
EXIT_UNDECIDED = 2
EXIT_RESOURCE = 3

FLOAT_FORMAT = "%.17g"  # 17 significant digits reproduce an IEEE double exactly
DEFAULT_DEPTH = 8            # word-table depth when neither flag nor config sets one
DEFAULT_MAX_STEPS = 10_000   # composition-sequence / iteration budget

# Auto-assigned generator names for --gen flags, matching the word-table
# labels, so witness words read the same in both interfaces.
GENERATOR_LABELS = "FGHKLMNPQRSTUVWXYZ"

_CONFIG_KEYS = frozenset(
    {"generators", "tolerances", "limits", "output", "params", "interval", "seed"}
)
_LIMIT_KEYS = frozenset({"depth", "max_steps", "cap"})
_OUTPUT_KEYS = frozenset({"format", "path"})
_FORMATS = ("json", "csv", "svg")


class ConfigError(ValueError):
    """Malformed configuration or command line; maps to exit code 1."""


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Resolved run parameters, echoed verbatim into every report.

    ``generators`` keeps the (name, map) pairs in input order; names are
    single characters because they double as word-table letters.  All
    tolerance overrides must be positive, and the seed — always present,
    defaulting to 0 — must fit in 64 bits.
    """

    generators: tuple[tuple[str, Moebius], ...] = ()
    tolerances: tuple[tuple[str, float], ...] = ()
    depth: int = DEFAULT_DEPTH
    max_steps: int = DEFAULT_MAX_STEPS
    cap: int = DEFAULT_CAP
    seed: int = 0
    fmt: str = "json"
    out: Optional[str] = None

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for name, _ in self.generators:
            if len(name) != 1 or name.isspace():
                raise ConfigError(
                    f"generator names must be single characters, got {name!r}"
                )
            if name in seen:
                raise ConfigError(f"duplicate generator name {name!r}")
            seen.add(name)
        for key, value in self.tolerances:
            if not (math.isfinite(value) and value > 0.0):
                raise ConfigError(
                    f"tolerance {key} must be positive and finite, got {value!r}"
                )
        if self.depth < 0:
            raise ConfigError(f"depth must be nonnegative, got {self.depth}")
        if self.max_steps < 1:
            raise ConfigError(f"max-steps must be positive, got {self.max_steps}")
        if self.cap < 1:
            raise ConfigError(f"cap must be positive, got {self.cap}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")
        if self.fmt not in _FORMATS:
            raise ConfigError(f"format must be one of {', '.join(_FORMATS)}")

    def tolerance(self, key: str, default: float) -> float:
        for name, value in self.tolerances:
            if name == key:
                return value
        return default

    def maps(self) -> list[Moebius]:
        return [m for _, m in self.generators]

    def labels(self) -> str:
        return "".join(name for name, _ in self.generators)


def _load_toml(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML in {path}: {exc}") from exc


def _tolerance_flags(extras: Sequence[str]) -> list[tuple[str, float]]:
    """Parse the dynamic ``--tol-KEY VALUE`` flags left over by argparse."""
    pairs: list[tuple[str, float]] = []
    i = 0
    while i < len(extras):
        token = extras[i]
        if not token.startswith("--tol-"):
            raise ConfigError(f"unrecognized argument: {token}")
        if "=" in token:
            name, _, raw = token.partition("=")
            i += 1
        else:
            name = token
            if i + 1 >= len(extras):
                raise ConfigError(f"{token} needs a value")
            raw = extras[i + 1]
            i += 2
        key = name[len("--tol-"):].replace("-", "_")
        if not key:
            raise ConfigError(f"empty tolerance name in {token!r}")
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"{name} expects a number, got {raw!r}") from None
        pairs.append((key, value))
    return pairs


def _matrix(name: str, row: Sequence) -> Moebius:
    ok = (
        isinstance(row, (list, tuple))
        and len(row) == 4
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in row)
    )
    if not ok:
        raise ConfigError(
            f"generator {name} must be four numbers [a, b, c, d], row-major"
        )
    try:
        return Moebius(float(row[0]), float(row[1]), float(row[2]), float(row[3]))
    except ValueError as exc:
        raise ConfigError(f"generator {name}: {exc}") from exc


def _generators_from(args: argparse.Namespace, data: dict) -> tuple:
    flag_rows = getattr(args, "gens", None)
    if flag_rows:
        if len(flag_rows) > len(GENERATOR_LABELS):
            raise ConfigError(f"at most {len(GENERATOR_LABELS)} generators supported")
        return tuple(
            (GENERATOR_LABELS[i], _matrix(f"--gen #{i + 1}", row))
            for i, row in enumerate(flag_rows)
        )
    table = data.get("generators", {})
    if not isinstance(table, dict):
        raise ConfigError("[generators] must be a table of name = [a, b, c, d]")
    return tuple((str(name), _matrix(str(name), row)) for name, row in table.items())


def _tolerances_from(data: dict, flags: Sequence[tuple[str, float]]) -> tuple:
    table = data.get("tolerances", {})
    if not isinstance(table, dict):
        raise ConfigError("[tolerances] must be a table of name = value")
    pairs: list[tuple[str, float]] = []
    for key, value in table.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"tolerance {key} must be a number, got {value!r}")
        pairs.append((str(key), float(value)))
    for key, value in flags:
        for j, (name, _) in enumerate(pairs):
            if name == key:
                pairs[j] = (key, value)
                break
        else:
            pairs.append((key, value))
    return tuple(pairs)


def _int_limit(limits: dict, key: str, default: int) -> int:
    value = limits.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"limit {key} must be an integer, got {value!r}")
    return value


def _resolve(
    args: argparse.Namespace,
    tol_flags: Sequence[tuple[str, float]],
    *,
    default_depth: int = DEFAULT_DEPTH,
    default_max_steps: int = DEFAULT_MAX_STEPS,
) -> tuple[RunConfig, dict]:
    data = _load_toml(args.config) if args.config else {}
    if not isinstance(data, dict):
        raise ConfigError("config root must be a TOML table")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    limits = data.get("limits", {})
    if not isinstance(limits, dict):
        raise ConfigError("[limits] must be a table")
    bad = set(limits) - _LIMIT_KEYS
    if bad:
        raise ConfigError(f"unknown limit keys: {', '.join(sorted(bad))}")
    output = data.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("[output] must be a table")
    bad = set(output) - _OUTPUT_KEYS
    if bad:
        raise ConfigError(f"unknown output keys: {', '.join(sorted(bad))}")

    seed = args.seed if args.seed is not None else data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    fmt = args.fmt if args.fmt is not None else output.get("format", "json")
    if not isinstance(fmt, str):
        raise ConfigError(f"output format must be a string, got {fmt!r}")
    out = args.out if args.out is not None else output.get("path")
    if out is not None and not isinstance(out, str):
        raise ConfigError(f"output path must be a string, got {out!r}")

    cfg = RunConfig(
        generators=_generators_from(args, data),
        tolerances=_tolerances_from(data, tol_flags),
        depth=(
            args.depth
            if args.depth is not None
            else _int_limit(limits, "depth", default_depth)
        ),
        max_steps=(
            args.max_steps
            if args.max_steps is not None
            else _int_limit(limits, "max_steps", default_max_steps)
        ),
        cap=_int_limit(limits, "cap", DEFAULT_CAP),
        seed=seed,
        fmt=fmt,
        out=out,
    )
    return cfg, data


def _interval_from(args: argparse.Namespace, data: dict) -> Arc:
    values = getattr(args, "interval", None)
    if values is None:
        raw = data.get("interval")
        if raw is None:
            raise ConfigError(
                "classify-mj needs --interval P Q (or interval = [p, q] in the config)"
            )
        ok = (
            isinstance(raw, list)
            and len(raw) == 2
            and all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw
            )
        )
        if not ok:
            raise ConfigError("interval must be a list of two numbers [p, q]")
        values = raw
    try:
        return Arc.from_reals(float(values[0]), float(values[1]))
    except ValueError as exc:
        raise ConfigError(f"bad interval: {exc}") from exc


def _params_from(data: dict) -> SchottkyParams:
    table = data.get("params", {})
    if not isinstance(table, dict):
        raise ConfigError("[params] must be a table")
    allowed = {f.name for f in dataclasses.fields(SchottkyParams)}
    bad = set(table) - allowed
    if bad:
        raise ConfigError(f"unknown params keys: {', '.join(sorted(bad))}")
    kwargs = {}
    for key, value in table.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"params.{key} must be a number, got {value!r}")
        kwargs[key] = float(value)
    return SchottkyParams(**kwargs)


# ---------------------------------------------------------------------------
# Deterministic emission
# ---------------------------------------------------------------------------


def _float_text(x: float) -> str:
    return FLOAT_FORMAT % x


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isfinite(value):
            return _float_text(value)
        return json.dumps(_float_text(value))  # "inf" / "-inf" / "nan" as strings
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _render_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{inner}{json.dumps(str(key))}: {_render_json(item, indent + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(not isinstance(item, (dict, list, tuple)) for item in value):
            return "[" + ", ".join(_json_scalar(item) for item in value) + "]"
        parts = [inner + _render_json(item, indent + 1) for item in value]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    return _json_scalar(value)


def _document(doc: dict) -> str:
    return _render_json(doc) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {cfg.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _require_json(cfg: RunConfig, command: str) -> None:
    if cfg.fmt != "json":
        raise ConfigError(f"{command} emits JSON only, got --format {cfg.fmt}")


# ---------------------------------------------------------------------------
# Serializers (library objects -> JSON-ready values)
# ---------------------------------------------------------------------------


def _matrix_json(m: Moebius) -> list:
    return [m.a, m.b, m.c, m.d]


def _point_value(p: Optional[BoundaryPoint]):
    return None if p is None else p.value


def _arc_json(arc: Optional[Arc]):
    return None if arc is None else {"p": arc.p.value, "q": arc.q.value}


def _arcs_json(union: Optional[ArcUnion]):
    return None if union is None else [_arc_json(c) for c in union.components]


def _class_json(cls) -> dict:
    return {
        "kind": cls.kind.value,
        "borderline": cls.borderline,
        "angle": cls.angle,
        "order": cls.order,
        "fixed": _point_value(cls.fixed),
        "attracting": _point_value(cls.attracting),
        "repelling": _point_value(cls.repelling),
        "translation_length": cls.translation_length,
    }


def _witness_json(witness) -> Optional[dict]:
    if witness is None:
        return None
    if isinstance(witness, NearIdentityWitness):
        return {
            "word": witness.word,
            "letters": list(witness.letters),
            "value": _matrix_json(witness.value),
            "distance": witness.distance,
        }
    return {
        "word": witness.word,
        "letters": list(witness.letters),
        "value": _matrix_json(witness.value),
        "class": _class_json(witness.cls),
    }


def _certificate_json(cert) -> Optional[dict]:
    if cert is None:
        return None
    if isinstance(cert, TraceCertificate):
        return {
            "kind": "TraceCertificate",
            "f_word": cert.f_word,
            "g_word": cert.g_word,
            "tr_f": cert.tr_f,
            "tr_g": cert.tr_g,
            "tr_fg": cert.tr_fg,
            "tr_commutator": cert.tr_commutator,
        }
    return {
        "kind": cert.kind,
        "f_word": cert.f_word,
        "g_word": cert.g_word,
        "a": _arc_json(cert.a),
        "b": _arc_json(cert.b),
        "c": _arc_json(cert.c),
        "d": _arc_json(cert.d),
        "interval": _arc_json(cert.interval),
    }


def _elementary_json(verdict) -> Optional[dict]:
    if verdict is None:
        return None
    return {
        "kind": verdict.kind.value,
        "inverted": verdict.inverted,
        "details": [[name, value] for name, value in verdict.details],
        "conjugator": (
            None if verdict.conjugator is None else _matrix_json(verdict.conjugator)
        ),
        "undetermined": verdict.undetermined,
        "reason": verdict.reason,
    }


def _config_json(cfg: RunConfig) -> dict:
    return {
        "generators": {name: _matrix_json(m) for name, m in cfg.generators},
        "tolerances": {key: value for key, value in cfg.tolerances},
        "limits": {"depth": cfg.depth, "max_steps": cfg.max_steps, "cap": cfg.cap},
        "seed": cfg.seed,
        "output": {"format": cfg.fmt, "path": cfg.out},
    }


def _report(kind: str, cfg: RunConfig, body: dict) -> dict:
    doc = {"kind": kind, "seed": cfg.seed, "config": _config_json(cfg)}
    doc.update(body)
    return doc


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _need_generators(cfg: RunConfig, low: int, high: Optional[int], command: str) -> None:
    n = len(cfg.generators)
    if high is not None and low == high and n != low:
        raise ConfigError(f"{command} expects exactly {low} generators, got {n}")
    if n < low:
        raise ConfigError(f"{command} expects at least {low} generators, got {n}")
    if high is not None and n > high:
        raise ConfigError(f"{command} expects at most {high} generators, got {n}")


def _cmd_classify_pair(args, tol_flags) -> int:
    cfg, _ = _resolve(args, tol_flags)
    _require_json(cfg, "classify-pair")
    _need_generators(cfg, 2, 2, "classify-pair")
    f, g = cfg.maps()
    verdict = classify_pair(f, g)
    try:
        jr = joergensen_semigroup(f, g)
        joergensen = {
            "satisfied": jr.satisfied,
            "lhs": jr.lhs,
            "has_common_contracted_interval": jr.has_common_contracted_interval,
        }
    except ValueError:
        joergensen = None
    body = {
        "status": verdict.status.value,
        "certificate": _certificate_json(verdict.certificate),
        "witness": _witness_json(verdict.witness),
        "reduction_trace": [list(row) for row in verdict.reduction_trace],
        "elementary_type": (
            None if verdict.elementary_type is None else verdict.elementary_type.value
        ),
        "elementary": _elementary_json(verdict.elementary),
        "joergensen_violated": verdict.joergensen_violated,
        "joergensen": joergensen,
        "undetermined": verdict.undetermined,
        "reason": verdict.reason,
    }
    _emit(cfg, _document(_report("pair-verdict", cfg, body)))
    if verdict.status is PairStatus.BORDERLINE or verdict.undetermined:
        return EXIT_UNDECIDED
    return EXIT_DECISIVE


def _cmd_classify_elementary(args, tol_flags) -> int:
    cfg, _ = _resolve(args, tol_flags)
    _require_json(cfg, "classify-elementary")
    _need_generators(cfg, 1, None, "classify-elementary")
    verdict = classify_elementary(cfg.maps())
    body = {"verdict": _elementary_json(verdict)}
    _emit(cfg, _document(_report("elementary-verdict", cfg, body)))
    return EXIT_UNDECIDED if verdict.undetermined else EXIT_DECISIVE


def _cmd_classify_mj(args, tol_flags) -> int:
    cfg, data = _resolve(args, tol_flags)
    _require_json(cfg, "classify-mj")
    _need_generators(cfg, 1, None, "classify-mj")
    J = _interval_from(args, data)
    verdict = semidiscrete_in_MJ(cfg.maps(), J)
    body = {
        "interval": {"p": J.p.value, "q": J.q.value},
        "verdict": {
            "kind": verdict.kind.value,
            "certificate": _arcs_json(verdict.certificate),
            "undetermined": verdict.undetermined,
            "reason": verdict.reason,
        },
    }
    _emit(cfg, _document(_report("mj-verdict", cfg, body)))
    return EXIT_UNDECIDED if verdict.undetermined else EXIT_DECISIVE


def _cmd_simulate(args, tol_flags) -> int:
    cfg, _ = _resolve(args, tol_flags)
    _require_json(cfg, "simulate")
    _need_generators(cfg, 1, None, "simulate")
    report = run_sequence(
        cfg.maps(),
        max_steps=cfg.max_steps,
        seed=cfg.seed,
        eps_conv=cfg.tolerance("eps_conv", EPS_CONV),
        rho_min=cfg.tolerance("rho_min", RHO_MIN),
        eps_rec=cfg.tolerance("eps_rec", EPS_REC),
    )
    body = {
        "outcome": report.outcome.value,
        "limit": _point_value(report.limit),
        "steps_used": report.steps_used,
        "final_rho": report.final_rho,
        "oscillation": report.oscillation,
        "recurrent": report.recurrent,
    }
    _emit(cfg, _document(_report("simulation", cfg, body)))
    if report.outcome is ConvergenceOutcome.UNDECIDED:
        return EXIT_UNDECIDED
    return EXIT_DECISIVE


def _svg_document(points: Sequence[BoundaryPoint]) -> str:
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="420" height="420"'
        ' viewBox="0 0 420 420">',
        '  <rect width="420" height="420" fill="#ffffff"/>',
        '  <circle cx="210" cy="210" r="190" fill="none" stroke="#999999"'
        ' stroke-width="1"/>',
    ]
    for p in points:
        x = 210.0 + 190.0 * math.sin(p.psi)
        y = 210.0 + 190.0 * math.cos(p.psi)
        lines.append(
            f'  <circle cx="{_float_text(x)}" cy="{_float_text(y)}" r="2"'
            ' fill="#16324f"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _cmd_limit_set(args, tol_flags) -> int:
    cfg, _ = _resolve(args, tol_flags)
    _need_generators(cfg, 1, None, "limit-set")
    sample = sample_limit_set(
        cfg.maps(),
        args.side,
        cfg.depth,
        eps_class=cfg.tolerance("eps_class", EPS_CLASS),
        cap=cfg.cap,
        dedup_grid=cfg.tolerance("dedup_grid", DEDUP_GRID),
    )
    points = sorted(sample.points, key=lambda p: p.psi)
    if cfg.fmt == "csv":
        _emit(cfg, "t\n" + "".join(_float_text(p.value) + "\n" for p in points))
    elif cfg.fmt == "svg":
        _emit(cfg, _svg_document(points))
    else:
        body = {
            "side": sample.side.value,
            "depth": sample.depth,
            "count": len(points),
            "points": [p.value for p in points],
        }
        _emit(cfg, _document(_report("limit-set", cfg, body)))
    return EXIT_DECISIVE


def _cmd_cf_check(args, tol_flags) -> int:
    lam, mu = args.lam, args.mu
    if not (math.isfinite(lam) and math.isfinite(mu)):
        raise ConfigError("lambda and mu must be finite")
    cfg, _ = _resolve(args, tol_flags)
    _require_json(cfg, "cf-check")
    f = Moebius(1.0, lam, 0.0, 1.0)
    g = Moebius(1.0, 0.0, mu, 1.0)
    cfg = dataclasses.replace(cfg, generators=(("F", f), ("G", g)))
    verdict, witness = continued_fraction_check(lam, mu)
    body = {
        "lam": lam,
        "mu": mu,
        "verdict": verdict,
        "witness": None if witness is None else witness.word,
        "witness_class": None if witness is None else _class_json(witness.cls),
    }
    _emit(cfg, _document(_report("cf-check", cfg, body)))
    return EXIT_DECISIVE


def _cmd_uh_check(args, tol_flags) -> int:
    cfg, _ = _resolve(args, tol_flags)
    _require_json(cfg, "uh-check")
    _need_generators(cfg, 1, None, "uh-check")
    maps = cfg.maps()
    body = {
        "depth": cfg.depth,
        "verdict": "Undecided",
        "multicone": None,
        "elliptic": None,
        "identity_word": None,
        "note": None,
    }
    cone = find_multicone(
        maps,
        DEFAULT_L_SEED,
        cfg.max_steps,
        delta_seed=cfg.tolerance("delta_seed", DELTA_SEED),
        merge_gap=cfg.tolerance("merge_gap", MERGE_GAP),
        cap=cfg.cap,
    )
    if cone is not None and verify_multicone(maps, cone):
        body["verdict"] = "UniformlyHyperbolic"
        body["multicone"] = {
            "components": _arcs_json(cone.X),
            "margin": cone.margin,
        }
        _emit(cfg, _document(_report("uh-check", cfg, body)))
        return EXIT_DECISIVE
    table = enumerate_words(
        maps,
        cfg.depth,
        cap=cfg.cap,
        dedup_grid=cfg.tolerance("dedup_grid", DEDUP_GRID),
        labels=cfg.labels(),
    )
    elliptic = find_elliptic(table, eps_class=cfg.tolerance("eps_class", EPS_CLASS))
    if elliptic is not None:
        body["verdict"] = "NotUniformlyHyperbolic"
        body["elliptic"] = _witness_json(elliptic)
        _emit(cfg, _document(_report("uh-check", cfg, body)))
        return EXIT_DECISIVE
    word = find_identity_word(table, eps_id=cfg.tolerance("eps_id", EPS_ID))
    if word is not None:
        body["verdict"] = "NotUniformlyHyperbolic"
        body["identity_word"] = word
        _emit(cfg, _document(_report("uh-check", cfg, body)))
        return EXIT_DECISIVE
    body["note"] = NO_MULTICONE_MESSAGE
    _emit(cfg, _document(_report("uh-check", cfg, body)))
    return EXIT_UNDECIDED


def _cmd_counterexample(args, tol_flags) -> int:
    cfg, data = _resolve(args, tol_flags)
    _require_json(cfg, "counterexample")
    params = _params_from(data)
    alphabet, report = yoccoz_counterexample(params, depth=cfg.depth, seed=cfg.seed)
    cfg = dataclasses.replace(
        cfg, generators=tuple(zip("FGHK", alphabet))
    )
    body = {
        "params": {
            field.name: getattr(report.params, field.name)
            for field in dataclasses.fields(report.params)
        },
        "depth": report.depth,
        "elliptic": _witness_json(report.elliptic_witness),
        "identity_word": report.identity_word,
        "witness_word": report.witness_word,
        "limit_points": (
            None
            if report.limit_points is None
            else [p.value for p in report.limit_points]
        ),
        "unperturbed_quantity": report.unperturbed_quantity,
        "rows": [
            {
                "radius": row.radius,
                "samples": row.samples,
                "multicones_found": row.multicones_found,
                "joergensen_min": row.joergensen_min,
                "joergensen_max": row.joergensen_max,
            }
            for row in report.rows
        ],
        "note": report.multicone_note,
    }
    _emit(cfg, _document(_report("counterexample", cfg, body)))
    return EXIT_DECISIVE


def _cmd_oracle(args, tol_flags) -> int:
    if args.verify is not None:
        return _verify_report(args.verify)
    cfg, _ = _resolve(args, tol_flags)
    _require_json(cfg, "oracle")
    _need_generators(cfg, 1, None, "oracle")
    maps = cfg.maps()
    eps_near = cfg.tolerance("eps_near", EPS_NEAR)
    eps_class = cfg.tolerance("eps_class", EPS_CLASS)
    table = enumerate_words(
        maps,
        cfg.depth,
        cap=cfg.cap,
        dedup_grid=cfg.tolerance("dedup_grid", DEDUP_GRID),
        labels=cfg.labels(),
    )
    witness = oracle_refute(
        maps, cfg.depth, eps_near=eps_near, eps_class=eps_class, table=table
    )
    if witness is None:
        witness_type = None
    elif isinstance(witness, NearIdentityWitness):
        witness_type = "near-identity"
    else:
        witness_type = "elliptic"
    body = {
        "depth": cfg.depth,
        "eps_near": eps_near,
        "eps_class": eps_class,
        "witness_type": witness_type,
        "witness": _witness_json(witness),
    }
    _emit(cfg, _document(_report("oracle", cfg, body)))
    return EXIT_DECISIVE


# ---------------------------------------------------------------------------
# Report re-verification (oracle --verify)
# ---------------------------------------------------------------------------


def _as_float(value, what: str = "value") -> float:
    if isinstance(value, bool):
        raise ConfigError(f"bad {what}: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        if value == "inf":
            return math.inf
        if value == "-inf":
            return -math.inf
        if value == "nan":
            return math.nan
    raise ConfigError(f"bad {what}: {value!r}")


def _point_from_token(value) -> BoundaryPoint:
    x = _as_float(value, "boundary point")
    return INFINITY if math.isinf(x) else BoundaryPoint.from_real(x)


def _arc_from_json(d) -> Optional[Arc]:
    if d is None:
        return None
    return Arc(_point_from_token(d["p"]), _point_from_token(d["q"]))


def _generators_from_report(doc: dict) -> list[tuple[str, Moebius]]:
    table = doc.get("config", {}).get("generators", {})
    if not isinstance(table, dict):
        raise ConfigError("report config has no generators table")
    named = []
    for name, row in table.items():
        entries = [_as_float(x, f"generator {name}") for x in row]
        named.append((str(name), Moebius(*entries)))
    return named


def _word_value_from(word: str, named: Sequence[tuple[str, Moebius]]) -> Moebius:
    label_map = {name: m for name, m in named}
    if word and all(ch in label_map for ch in word):
        return compose_all(label_map[ch] for ch in word)
    # Pair verdicts spell words over F and G even when the generators were
    # configured under other names: fall back to positional letters.
    if word and set(word) <= {"F", "G"} and len(named) >= 2:
        f, g = named[0][1], named[1][1]
        return compose_all(f if ch == "F" else g for ch in word)
    raise ConfigError(f"cannot interpret word {word!r} over the echoed generators")


def _run_check(checks: list, name: str, fn: Callable[[], bool]) -> None:
    try:
        ok = bool(fn())
        detail = ""
    except Exception as exc:  # tampered reports may throw anything
        ok = False
        detail = f"{type(exc).__name__}: {exc}"
    checks.append({"name": name, "ok": ok, "detail": detail})


def _certificate_from_json(d: dict):
    kind = d.get("kind")
    if kind == "TraceCertificate":
        return TraceCertificate(
            f_word=d["f_word"],
            g_word=d["g_word"],
            tr_f=_as_float(d["tr_f"]),
            tr_g=_as_float(d["tr_g"]),
            tr_fg=_as_float(d["tr_fg"]),
            tr_commutator=_as_float(d["tr_commutator"]),
        )
    return SchottkyCertificate(
        kind=kind,
        f_word=d["f_word"],
        g_word=d["g_word"],
        a=_arc_from_json(d.get("a")),
        b=_arc_from_json(d.get("b")),
        c=_arc_from_json(d.get("c")),
        d=_arc_from_json(d.get("d")),
        interval=_arc_from_json(d.get("interval")),
    )


def _echoed_tolerance(doc: dict, key: str, default: float) -> float:
    tols = doc.get("config", {}).get("tolerances", {})
    if isinstance(tols, dict) and key in tols:
        return _as_float(tols[key], f"tolerance {key}")
    return default


def _check_pair_verdict(doc: dict, checks: list) -> None:
    named = _generators_from_report(doc)
    if len(named) < 2:
        raise ConfigError("pair verdict echoes fewer than two generators")
    f, g = named[0][1], named[1][1]
    cert = doc.get("certificate")
    if cert is not None:
        _run_check(
            checks,
            "certificate",
            lambda: verify_pair_certificate(f, g, _certificate_from_json(cert)),
        )
    wit = doc.get("witness")
    if wit is not None:

        def recheck_witness() -> bool:
            value = _word_value_from(wit["word"], named)
            cls = classify(value)
            return cls.is_elliptic or cls.is_identity

        _run_check(checks, "witness", recheck_witness)
    jr = doc.get("joergensen")
    if jr is not None:

        def recheck_joergensen() -> bool:
            lhs = joergensen_semigroup(f, g).lhs
            return abs(lhs - _as_float(jr["lhs"])) <= 1e-12 * max(1.0, abs(lhs))

        _run_check(checks, "joergensen-lhs", recheck_joergensen)
    if cert is None and wit is None:
        checks.append({"name": "no-certificate-data", "ok": True, "detail": ""})


def _check_mj_verdict(doc: dict, checks: list) -> None:
    named = _generators_from_report(doc)
    cert = doc.get("verdict", {}).get("certificate")
    if cert is None:
        checks.append({"name": "no-certificate-data", "ok": True, "detail": ""})
        return

    def recheck_union() -> bool:
        union = ArcUnion(tuple(_arc_from_json(c) for c in cert))
        for _, m in named:
            if is_identity(m):
                continue
            gap = arcunion_inside_gap(union.apply(m), union)
            if gap is None or not gap > 0.0:
                return False
        return True

    _run_check(checks, "contracted-union", recheck_union)


def _check_cf_check(doc: dict, checks: list) -> None:
    lam = _as_float(doc["lam"], "lam")
    mu = _as_float(doc["mu"], "mu")
    product = lam * mu
    _run_check(
        checks,
        "interval-test",
        lambda: (product > 0.0 or product <= -4.0) == bool(doc["verdict"]),
    )
    word = doc.get("witness")
    if word is not None:
        named = _generators_from_report(doc)

        def recheck_witness() -> bool:
            cls = classify(_word_value_from(word, named))
            return cls.is_elliptic or cls.is_identity

        _run_check(checks, "witness", recheck_witness)


def _check_uh_check(doc: dict, checks: list) -> None:
    named = _generators_from_report(doc)
    maps = [m for _, m in named]
    mc = doc.get("multicone")
    if mc is not None:

        def recheck_cone() -> bool:
            arcs = tuple(_arc_from_json(c) for c in mc["components"])
            cone = Multicone(ArcUnion(arcs), _as_float(mc["margin"], "margin"))
            return verify_multicone(maps, cone)

        _run_check(checks, "multicone", recheck_cone)
    ell = doc.get("elliptic")
    if ell is not None:
        _run_check(
            checks,
            "elliptic",
            lambda: classify(_word_value_from(ell["word"], named)).is_elliptic,
        )
    word = doc.get("identity_word")
    if word is not None:
        eps_id = _echoed_tolerance(doc, "eps_id", EPS_ID)
        _run_check(
            checks,
            "identity-word",
            lambda: is_identity(_word_value_from(word, named), eps_id),
        )
    if mc is None and ell is None and word is None:
        checks.append({"name": "no-certificate-data", "ok": True, "detail": ""})


def _check_counterexample(doc: dict, checks: list) -> None:
    raw = doc.get("params", {})
    params = SchottkyParams(
        **{key: _as_float(value, f"params.{key}") for key, value in raw.items()}
    )
    F, H = schottky_group_pair(params)
    named = [("F", F), ("G", inverse(F)), ("H", H), ("K", inverse(H))]
    word = doc.get("identity_word")
    if word is not None:
        _run_check(
            checks,
            "identity-word",
            lambda: is_identity(_word_value_from(word, named)),
        )
    _run_check(
        checks,
        "witness-hyperbolic",
        lambda: classify(_word_value_from(doc["witness_word"], named)).is_hyperbolic,
    )

    def recheck_radii() -> bool:
        radii = [_as_float(row["radius"], "radius") for row in doc.get("rows", [])]
        return all(r > 0.0 for r in radii) and radii == sorted(radii, reverse=True)

    _run_check(checks, "radii-descending", recheck_radii)


def _check_oracle(doc: dict, checks: list) -> None:
    wit = doc.get("witness")
    if wit is None:
        checks.append({"name": "no-certificate-data", "ok": True, "detail": ""})
        return
    named = _generators_from_report(doc)
    witness_type = doc.get("witness_type")
    if witness_type == "near-identity":

        def recheck_near() -> bool:
            value = _word_value_from(wit["word"], named)
            eps_near = _as_float(doc.get("eps_near", EPS_NEAR), "eps_near")
            return distance_to_identity(value) <= eps_near + 1e-12

        _run_check(checks, "near-identity", recheck_near)
    else:

        def recheck_elliptic() -> bool:
            cls = classify(_word_value_from(wit["word"], named))
            return cls.is_elliptic or cls.is_identity

        _run_check(checks, "elliptic", recheck_elliptic)


_VACUOUS_KINDS = ("elementary-verdict", "simulation", "limit-set")

_CHECKERS: dict = {
    "pair-verdict": _check_pair_verdict,
    "mj-verdict": _check_mj_verdict,
    "cf-check": _check_cf_check,
    "uh-check": _check_uh_check,
    "counterexample": _check_counterexample,
    "oracle": _check_oracle,
}


def _verify_report(path: str) -> int:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read report {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ConfigError("report has no kind field")
    kind = doc["kind"]
    checks: list = []
    if kind in _CHECKERS:
        try:
            _CHECKERS[kind](doc, checks)
        except Exception as exc:  # malformed body: report it, don't crash
            checks.append(
                {
                    "name": "well-formed",
                    "ok": False,
                    "detail": f"{type(exc).__name__}: {exc}",
                }
            )
    elif kind in _VACUOUS_KINDS:
        checks.append({"name": "no-certificate-data", "ok": True, "detail": ""})
    else:
        raise ConfigError(f"cannot verify reports of kind {kind!r}")
    valid = all(entry["ok"] for entry in checks)
    failures = [entry for entry in checks if not entry["ok"]]
    out = {
        "kind": "verification",
        "target_kind": kind,
        "valid": valid,
        "checks": [{"name": c["name"], "ok": c["ok"]} for c in checks],
        "reason": failures[0]["detail"] if failures else "",
    }
    sys.stdout.write(_document(out))
    return EXIT_DECISIVE if valid else EXIT_UNDECIDED


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as exit code 1."""

    def error(self, message: str):  # noqa: D102 - argparse hook
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="mobsemi",
        description=(
            "Decide semidiscreteness and inverse-freeness of finitely "
            "generated semigroups of real Möbius transformations."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name: str, handler, help_text: str, *, gens: bool = True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="TOML configuration file")
        p.add_argument("--seed", type=int, metavar="N", help="64-bit RNG seed")
        p.add_argument("--depth", type=int, metavar="L", help="word-table depth")
        p.add_argument(
            "--max-steps", dest="max_steps", type=int, metavar="N",
            help="iteration budget",
        )
        p.add_argument("--out", metavar="PATH", help="write output to PATH")
        p.add_argument("--format", dest="fmt", choices=_FORMATS)
        if gens:
            p.add_argument(
                "--gen",
                dest="gens",
                nargs=4,
                type=float,
                action="append",
                metavar=("A", "B", "C", "D"),
                help="generator matrix, row-major; repeatable",
            )
        p.set_defaults(handler=handler)
        return p

    add("classify-pair", _cmd_classify_pair,
        "two-generator semidiscreteness / inverse-freeness")
    add("classify-elementary", _cmd_classify_elementary,
        "generating sets with a common fixed configuration")
    mj = add("classify-mj", _cmd_classify_mj,
             "semigroups confined to a boundary interval")
    mj.add_argument(
        "--interval", nargs=2, type=float, metavar=("P", "Q"),
        help="interval endpoints (arc from P counterclockwise to Q)",
    )
    add("simulate", _cmd_simulate, "seeded random composition sequence")
    ls = add("limit-set", _cmd_limit_set,
             "sample fixed points of hyperbolic word values")
    ls.add_argument(
        "--side", choices=("forward", "backward"), default="forward",
        help="forward (generators) or backward (inverses)",
    )
    cf = add("cf-check", _cmd_cf_check,
             "continued-fraction pair z + lambda, z/(mu z + 1)", gens=False)
    cf.add_argument("lam", type=float, help="translation length lambda")
    cf.add_argument("mu", type=float, help="lower-triangular parameter mu")
    add("uh-check", _cmd_uh_check, "uniform hyperbolicity of an SL(2,R) tuple")
    add("counterexample", _cmd_counterexample,
        "Schottky group tuple outside both the elliptic locus and "
        "the closure of the uniformly hyperbolic locus", gens=False)
    oracle = add("oracle", _cmd_oracle, "bounded-depth word search")
    oracle.add_argument(
        "--verify", metavar="PATH",
        help="re-check a previously emitted JSON report",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args, extras = parser.parse_known_args(argv)
        tol_flags = _tolerance_flags(extras)
        return int(args.handler(args, tol_flags))
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CapExceededError as exc:
        sys.stderr.write(f"resource cap exceeded: {exc}\n")
        return EXIT_RESOURCE
    except (ValueError, OverflowError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
