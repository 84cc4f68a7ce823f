"""Seeded experiments: genericity sampling, adversarial instances, exposed faces.

The genericity harness samples tilt vectors ``v`` from a documented reference
PRNG (SplitMix64), minimizes the tilted function exactly, and classifies each
trial as nondegenerate / degenerate / non-unique / unbounded.  The theory
says degenerate and non-unique tilts form a Lebesgue-null set, so sampled
rationals of generous bit-width should essentially never land on it — but
rationals are countable, so hits are *reported* (with the offending ``v``
verbatim), never silently impossible.

``construct_degenerate`` deliberately manufactures points of that null set;
``run_larman`` is the polytope face of the same story: a sampled direction
exposing two or more vertices lies on the shared boundary of two
full-dimensional vertex normal cones.

Per-trial PRNG streams are derived from (seed, trial index), so any execution
order — including concurrent — produces bit-identical reports.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DegeneratePolytopeError, InfeasibleDomainError, InternalError
from .functions import (
    DegenerateCritical,
    Minimizer,
    Nondegenerate,
    PolyhedralFunction,
    certify,
    minimize_perturbed,
    subdifferential,
)
from .geometry import VPolytope, _cone_is_subspace, exposed_face, prune
from .linalg import (
    ONE,
    Q,
    Rat,
    Vec,
    ZERO,
    dot,
    format_rational,
    rank,
    solve_linear,
    Inconsistent,
    vsub,
    zeros,
)
from .simplex import Infeasible, Unbounded, feasible_point

MASK64 = (1 << 64) - 1


class SplitMix64:
    """Reference 64-bit PRNG (SplitMix64): tiny, splittable, well documented."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return (z ^ (z >> 31)) & MASK64


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    bits: int = 64
    box_radius: Rat = ONE

    def __post_init__(self):
        if not (0 <= self.seed <= MASK64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.bits < 8:
            raise ValueError("bits must be at least 8")
        if not self.box_radius > 0:
            raise ValueError("box_radius must be positive")


def _stream_vector(stream: SplitMix64, cfg: SamplerConfig, dim: int) -> Vec:
    """One random vector: each coordinate is a signed bits-wide numerator over
    a positive bits-wide denominator, scaled into [-box_radius, box_radius]."""
    mask = (1 << cfg.bits) - 1
    half = 1 << (cfg.bits - 1)
    coords = []
    for _ in range(dim):
        num = (stream.next_u64() & mask) - half
        den = (stream.next_u64() & mask) + 1
        coords.append(Q(cfg.box_radius) * Q(num) / (Q(den) * half))
    return tuple(coords)


def sample_objective(cfg: SamplerConfig, trial_index: int, dim: int) -> Vec:
    """Deterministic tilt vector for (seed, trial_index); stream = seed XOR trial."""
    stream = SplitMix64(cfg.seed ^ trial_index)
    return _stream_vector(stream, cfg, dim)


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    v: Vec
    outcome: str  # nondegenerate | degenerate | non_unique | unbounded
    minimizer: Optional[Vec]
    min_witness_coeff: Optional[Rat]


@dataclass(frozen=True)
class ExperimentReport:
    trials: int
    unique_nondegenerate: int
    degenerate: int
    non_unique: int
    unbounded: int
    seed: int
    records: Tuple[TrialRecord, ...]


def _optimal_face_is_point(f: PolyhedralFunction, v: Vec, x_bar: Vec, value: Rat) -> bool:
    """Exact uniqueness of the minimizer of ``f - <v, .>``.

    The argmin set is the polyhedron {x : Ax <= b, <c_j - v, x> <= value - d_j};
    it collapses to the single point ``x_bar`` iff the cone of its constraint
    normals tight at ``x_bar`` is all of R^n, i.e. has full rank and is a
    linear subspace.
    """
    n = f.dim
    pieces = f.pieces if f.pieces else ((zeros(n), ZERO),)
    tight: List[Vec] = []
    for arow, b in zip(f.domain.A, f.domain.b):
        if dot(arow, x_bar) == b:
            tight.append(arow)
    for c, d in pieces:
        normal = vsub(c, v)
        if dot(normal, x_bar) == value - d:
            tight.append(normal)
    if not tight or rank(tight) < n:
        return False
    return _cone_is_subspace(tight, n)


def genericity_trial(f: PolyhedralFunction, cfg: SamplerConfig, trial_index: int) -> TrialRecord:
    """Sample, minimize, test uniqueness, certify — one classified trial."""
    v = sample_objective(cfg, trial_index, f.dim)
    res = minimize_perturbed(f, v)
    if isinstance(res, Infeasible):
        raise InfeasibleDomainError(res.farkas)
    if isinstance(res, Unbounded):
        return TrialRecord(trial_index, v, "unbounded", None, None)
    assert isinstance(res, Minimizer)
    if not _optimal_face_is_point(f, v, res.x, res.value):
        return TrialRecord(trial_index, v, "non_unique", res.x, None)
    cert = certify(f, v, res.x)
    if isinstance(cert, Nondegenerate):
        return TrialRecord(trial_index, v, "nondegenerate", res.x, min(cert.witness))
    if isinstance(cert, DegenerateCritical):
        return TrialRecord(trial_index, v, "degenerate", res.x, None)
    raise InternalError("tilt vector is not a subgradient at the computed minimizer")


def merge_trials(records: Iterable[TrialRecord], seed: int) -> ExperimentReport:
    """Order-independent reduction: sort by trial index, then tally."""
    ordered = tuple(sorted(records, key=lambda r: r.trial_index))
    counts = {"nondegenerate": 0, "degenerate": 0, "non_unique": 0, "unbounded": 0}
    for r in ordered:
        counts[r.outcome] += 1
    return ExperimentReport(
        trials=len(ordered),
        unique_nondegenerate=counts["nondegenerate"],
        degenerate=counts["degenerate"],
        non_unique=counts["non_unique"],
        unbounded=counts["unbounded"],
        seed=seed,
        records=ordered,
    )


def run_genericity(f: PolyhedralFunction, cfg: SamplerConfig, trials: int) -> ExperimentReport:
    return merge_trials(
        (genericity_trial(f, cfg, i) for i in range(trials)), cfg.seed
    )


CSV_FIELDS = ("trial_index", "v", "outcome", "minimizer", "min_witness_coeff")


def _join_vec(x: Optional[Vec]) -> str:
    if x is None:
        return ""
    return ";".join(format_rational(c) for c in x)


def report_to_csv(report: ExperimentReport) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in report.records:
        w.writerow(
            [
                r.trial_index,
                _join_vec(r.v),
                r.outcome,
                _join_vec(r.minimizer),
                "" if r.min_witness_coeff is None else format_rational(r.min_witness_coeff),
            ]
        )
    return out.getvalue()


# ---------------------------------------------------------------------------
# adversarial construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdversarialReport:
    pairs: Tuple[Tuple[Vec, Vec], ...]  # (v, x_bar) with v on rb of the subdifferential
    status: str


def _candidate_points(f: PolyhedralFunction) -> List[Vec]:
    """Domain points where the subdifferential can have a relative boundary:
    solutions of small subsets of the constraint/tie hyperplane arrangement
    (vertices, edge points, piece-tie points)."""
    n = f.dim
    planes: List[Tuple[Vec, Rat]] = []
    for arow, b in zip(f.domain.A, f.domain.b):
        planes.append((arow, b))
    for j in range(len(f.pieces)):
        for l in range(j + 1, len(f.pieces)):
            cj, dj = f.pieces[j]
            cl, dl = f.pieces[l]
            planes.append((vsub(cj, cl), dl - dj))
    seen = set()
    for size in range(0, n + 1):
        for subset in combinations(range(len(planes)), size):
            rows = [planes[i][0] for i in subset]
            rhs = [planes[i][1] for i in subset]
            sol = solve_linear(rows, rhs, ncols=n)
            if isinstance(sol, Inconsistent):
                continue
            x = sol.x
            if f.domain.violation_index(x) is None:
                seen.add(x)
    return sorted(seen)


def construct_degenerate(f: PolyhedralFunction) -> AdversarialReport:
    """Exhibit pairs (v, x_bar) with v on the relative boundary of the
    subdifferential at x_bar — the Lebesgue-null set the genericity theorem
    is about.  Every emitted pair is re-verified to certify DegenerateCritical.
    """
    fp = feasible_point(f.domain)
    if isinstance(fp, Infeasible):
        raise InfeasibleDomainError(fp.farkas)
    pairs: List[Tuple[Vec, Vec]] = []
    for x in _candidate_points(f):
        S = subdifferential(f, x)
        pruned, _, _ = prune(S)
        # An affine subdifferential (single pruned point + subspace cone) has
        # empty relative boundary: nothing to exhibit at this point.
        if len(pruned.points) == 1 and _cone_is_subspace(pruned.rays, f.dim):
            continue
        candidates = list(pruned.rays) + list(pruned.points)
        for v in candidates:
            if isinstance(certify(f, v, x), DegenerateCritical):
                pairs.append((v, x))
                break
    if pairs:
        return AdversarialReport(tuple(pairs), "ok")
    return AdversarialReport(
        (), "no candidate point has a subdifferential with nonempty relative boundary"
    )


# ---------------------------------------------------------------------------
# exposed-face sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LarmanTrial:
    label: str  # trial index, or F<k> for injected directions
    c: Vec
    face_indices: Tuple[int, ...]
    distinct_vertices: int


@dataclass(frozen=True)
class LarmanReport:
    trials: int
    singleton_faces: int
    multi_vertex_faces: int
    seed: int
    records: Tuple[LarmanTrial, ...]
    forced: Tuple[LarmanTrial, ...]


def _larman_trial(F: VPolytope, c: Vec, label: str) -> LarmanTrial:
    face = exposed_face(F, c)
    distinct = len({F.vertices[i] for i in face})
    return LarmanTrial(label, c, face, distinct)


def run_larman(
    F: VPolytope, cfg: SamplerConfig, trials: int, forced: Sequence[Vec] = ()
) -> LarmanReport:
    """Sample directions and count multi-vertex exposed faces.

    A direction exposing >= 2 distinct vertices maximizes <c, .> at both, so
    it lies in the normal cones of two distinct points — i.e. on the shared
    relative boundary of two full-dimensional vertex normal cones, the
    measure-zero set Larman's theorem bounds.  A direction exposing exactly
    one vertex is interior to that vertex's normal cone.  Zero directions are
    resampled from the same per-trial stream (c = 0 exposes everything and
    carries no information).

    ``forced`` directions are evaluated and reported separately; they never
    contribute to the sampled tallies.
    """
    distinct_vertices = set(F.vertices)
    if len(distinct_vertices) < 2:
        raise DegeneratePolytopeError("fewer than 2 distinct vertices")
    records = []
    multi = 0
    for i in range(trials):
        stream = SplitMix64(cfg.seed ^ i)
        c = _stream_vector(stream, cfg, F.dim)
        while all(x == 0 for x in c):
            c = _stream_vector(stream, cfg, F.dim)
        rec = _larman_trial(F, c, str(i))
        records.append(rec)
        if rec.distinct_vertices > 1:
            multi += 1
    forced_records = tuple(
        _larman_trial(F, tuple(Q(x) for x in c), f"F{k}") for k, c in enumerate(forced)
    )
    return LarmanReport(
        trials=trials,
        singleton_faces=trials - multi,
        multi_vertex_faces=multi,
        seed=cfg.seed,
        records=tuple(records),
        forced=forced_records,
    )


LARMAN_CSV_FIELDS = ("trial", "c", "outcome", "distinct_vertices", "face_indices")


def larman_to_csv(report: LarmanReport) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(LARMAN_CSV_FIELDS)
    for r in list(report.records) + list(report.forced):
        w.writerow(
            [
                r.label,
                _join_vec(r.c),
                "multi_vertex" if r.distinct_vertices > 1 else "singleton",
                r.distinct_vertices,
                ";".join(str(i) for i in r.face_indices),
            ]
        )
    return out.getvalue()
