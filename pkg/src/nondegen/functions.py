"""Polyhedral functions and the nondegeneracy certifier.

A :class:`PolyhedralFunction` is a max of affine pieces restricted to an
H-polyhedron (value +inf outside).  Its subdifferential at a point is the
finitely generated set

    conv{ gradients of active pieces } + cone{ normals of active constraints },

activity meaning exact rational equality — there are no tolerances anywhere.
:func:`certify` classifies a direction ``v`` against that set: strictly inside
its relative interior (nondegenerate), on the relative boundary (degenerate
critical), or outside (not critical).  :func:`strict_complementarity` exposes
the LP face of the same trichotomy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .errors import DimensionMismatchError, InternalError, NotOptimalError, OutsideDomainError
from .geometry import (
    Boundary,
    GeneratedSet,
    Interior,
    Outside,
    positive_combination,
    ri_membership,
)
from .linalg import Mat, ONE, Q, Rat, Vec, ZERO, dot, mat, vec, vsub, zeros
from .simplex import (
    HPolyhedron,
    Infeasible,
    LinearProgram,
    Optimal,
    Unbounded,
    solve_lp,
)

Piece = Tuple[Vec, Rat]  # (c, d) meaning <c, x> + d


@dataclass(frozen=True)
class PolyhedralFunction:
    """max_j (<c_j, x> + d_j) on ``domain``, +inf outside; no pieces means the
    zero function on the domain."""

    pieces: Tuple[Piece, ...]
    domain: HPolyhedron
    dim: int

    def __post_init__(self):
        if self.domain.dim != self.dim:
            raise DimensionMismatchError("domain dimension", self.dim, self.domain.dim)
        for j, (c, _) in enumerate(self.pieces):
            if len(c) != self.dim:
                raise DimensionMismatchError(f"piece {j} gradient dimension", self.dim, len(c))

    @classmethod
    def build(cls, pieces, constraint_rows, constraint_rhs, dim: int) -> "PolyhedralFunction":
        ps = tuple((vec(c), Q(d)) for c, d in pieces)
        domain = HPolyhedron(mat(constraint_rows), vec(constraint_rhs), dim)
        return cls(ps, domain, dim)

    @classmethod
    def indicator(cls, P: HPolyhedron) -> "PolyhedralFunction":
        return cls((), P, P.dim)

    @classmethod
    def max_affine(cls, pieces, dim: int) -> "PolyhedralFunction":
        return cls.build(pieces, [], [], dim)


def evaluate(f: PolyhedralFunction, x: Vec) -> Union[Rat, float]:
    """Exact value of ``f`` at ``x``; ``math.inf`` outside the domain."""
    if len(x) != f.dim:
        raise DimensionMismatchError("point dimension", f.dim, len(x))
    if f.domain.violation_index(x) is not None:
        return math.inf
    if not f.pieces:
        return ZERO
    return max(dot(c, x) + d for c, d in f.pieces)


def _active_structure(f: PolyhedralFunction, x: Vec):
    """(points, rays, active piece indices, active constraint indices) at ``x``.

    Raises when ``x`` is outside the domain (the subdifferential is empty
    there by convention, surfaced as an error, never as an empty set).
    """
    if len(x) != f.dim:
        raise DimensionMismatchError("point dimension", f.dim, len(x))
    bad = f.domain.violation_index(x)
    if bad is not None:
        raise OutsideDomainError(bad)
    if f.pieces:
        values = [dot(c, x) + d for c, d in f.pieces]
        top = max(values)
        active_pieces = tuple(j for j, val in enumerate(values) if val == top)
        points = tuple(f.pieces[j][0] for j in active_pieces)
    else:
        # The zero function contributes the single gradient 0 everywhere.
        active_pieces = (0,)
        points = (zeros(f.dim),)
    active_cons = f.domain.active_set(x)
    rays = tuple(f.domain.A[i] for i in active_cons)
    return points, rays, active_pieces, active_cons


def subdifferential(f: PolyhedralFunction, x: Vec) -> GeneratedSet:
    """The convex subdifferential at a domain point: convex hull of active
    piece gradients plus the cone of active constraint normals."""
    points, rays, _, _ = _active_structure(f, x)
    return GeneratedSet(points, rays, f.dim)


def perturbed(f: PolyhedralFunction, v: Vec) -> "PolyhedralFunction":
    """The tilted function ``x -> f(x) - <v, x>`` as a PolyhedralFunction."""
    if len(v) != f.dim:
        raise DimensionMismatchError("tilt dimension", f.dim, len(v))
    pieces = f.pieces if f.pieces else ((zeros(f.dim), ZERO),)
    tilted = tuple((tuple(a - b for a, b in zip(c, v)), d) for c, d in pieces)
    return PolyhedralFunction(tilted, f.domain, f.dim)


@dataclass(frozen=True)
class Minimizer:
    x: Vec
    value: Rat


MinimizeOutcome = Union[Minimizer, Unbounded, Infeasible]


def minimize_perturbed(f: PolyhedralFunction, v: Vec) -> MinimizeOutcome:
    """Minimize ``f(x) - <v, x>`` via the epigraph LP over ``(x, t)``:

        maximize <v, x> - t   s.t.   <c_j, x> - t <= -d_j,   A x <= b.

    Returns one exact minimizer (the deterministic solver's choice), an
    improving ray, or infeasibility (improper ``f``)."""
    if len(v) != f.dim:
        raise DimensionMismatchError("tilt dimension", f.dim, len(v))
    n = f.dim
    pieces = f.pieces if f.pieces else ((zeros(n), ZERO),)
    rows: List[List[Rat]] = []
    rhs: List[Rat] = []
    for c, d in pieces:
        rows.append(list(c) + [-ONE])
        rhs.append(-d)
    for arow, b in zip(f.domain.A, f.domain.b):
        rows.append(list(arow) + [ZERO])
        rhs.append(b)
    P = HPolyhedron(mat(rows), vec(rhs), n + 1)
    objective = vec(list(v) + [-ONE])
    res = solve_lp(LinearProgram(objective, P))
    if isinstance(res, Optimal):
        x = res.x[:n]
        t = res.x[n]
        if evaluate(f, x) != t:
            raise InternalError("epigraph variable not tight at the optimum")
        return Minimizer(x, t - dot(v, x))
    if isinstance(res, Unbounded):
        return Unbounded(res.x0[:n], res.ray[:n])
    return res


def canonical_minimizer(f: PolyhedralFunction, v: Vec) -> MinimizeOutcome:
    """Like :func:`minimize_perturbed`, but pivot-order independent: among all
    minimizers, return the lexicographically greatest one.

    The argmin set is itself a polyhedron ({x : Ax <= b, <c_j - v, x> <=
    value - d_j}); each coordinate is maximized over it in turn, fixing the
    result before moving to the next.  When the argmin set is unbounded in
    some coordinate direction, that coordinate is kept from the base solve
    (still deterministic, no longer canonical)."""
    res = minimize_perturbed(f, v)
    if not isinstance(res, Minimizer):
        return res
    n = f.dim
    pieces = f.pieces if f.pieces else ((zeros(n), ZERO),)
    rows: List[Vec] = list(f.domain.A)
    rhs: List[Rat] = list(f.domain.b)
    for c, d in pieces:
        rows.append(vsub(c, v))
        rhs.append(res.value - d)
    x = list(res.x)
    for d in range(n):
        e_d = tuple(ONE if j == d else ZERO for j in range(n))
        face = HPolyhedron(mat(rows), vec(rhs), n)
        step = solve_lp(LinearProgram(e_d, face))
        if isinstance(step, Optimal):
            x = list(step.x)
            x[d] = step.value
        elif not isinstance(step, Unbounded):
            raise InternalError("argmin polyhedron reported infeasible")
        rows.append(e_d)
        rhs.append(x[d])
        rows.append(tuple(-a for a in e_d))
        rhs.append(-x[d])
    x_star = tuple(x)
    if evaluate(f, x_star) - dot(v, x_star) != res.value:
        raise InternalError("lexicographic refinement left the argmin set")
    return Minimizer(x_star, res.value)


@dataclass(frozen=True)
class NotCritical:
    pass


@dataclass(frozen=True)
class DegenerateCritical:
    pass


@dataclass(frozen=True)
class Nondegenerate:
    """``v`` lies in the relative interior of the subdifferential.

    ``witness`` holds the strictly positive coefficients over the pruned
    generators; ``piece_weights`` and ``constraint_multipliers`` scatter them
    back over the full piece/constraint lists (zeros off the support) for
    display as a dual certificate.
    """

    witness: Vec
    piece_weights: Vec
    constraint_multipliers: Vec


CertificationResult = Union[NotCritical, DegenerateCritical, Nondegenerate]


def certify(f: PolyhedralFunction, v: Vec, x_bar: Vec) -> CertificationResult:
    """Trichotomy of ``v`` against the subdifferential at ``x_bar``."""
    if len(v) != f.dim:
        raise DimensionMismatchError("direction dimension", f.dim, len(v))
    points, rays, active_pieces, active_cons = _active_structure(f, x_bar)
    S = GeneratedSet(points, rays, f.dim)
    status = ri_membership(S, v)
    if isinstance(status, Outside):
        return NotCritical()
    if isinstance(status, Boundary):
        return DegenerateCritical()
    assert isinstance(status, Interior)
    n_pieces = len(f.pieces) if f.pieces else 1
    pw = [ZERO] * n_pieces
    for coeff, pos in zip(status.point_coeffs, status.point_index):
        pw[active_pieces[pos]] = coeff
    cm = [ZERO] * f.domain.m
    for coeff, pos in zip(status.ray_coeffs, status.ray_index):
        cm[active_cons[pos]] = coeff
    return Nondegenerate(status.witness, tuple(pw), tuple(cm))


@dataclass(frozen=True)
class Witness:
    """Dual-feasible multipliers, strictly positive exactly on the active set."""

    lam: Vec


def strict_complementarity(lp: LinearProgram, x_bar: Vec) -> Optional[Witness]:
    """A strictly complementary dual solution at the optimum ``x_bar`` of
    ``max <objective, x> over constraints``, or None when none exists.

    Existence is equivalent to ``certify(indicator, objective, x_bar)`` being
    Nondegenerate; the returned multipliers cover every constraint, strictly
    positive exactly on those active at ``x_bar``.
    """
    P = lp.constraints
    bad = P.violation_index(x_bar)
    if bad is not None:
        raise NotOptimalError(f"point violates constraint {bad}")
    res = solve_lp(lp)
    if isinstance(res, Unbounded):
        raise NotOptimalError("objective is unbounded above on the feasible set")
    if isinstance(res, Infeasible):
        raise InternalError("feasible point exists but the solver reports infeasible")
    gap = res.value - dot(lp.objective, x_bar)
    if gap != 0:
        raise NotOptimalError("point is suboptimal", gap=gap)
    active = P.active_set(x_bar)
    S = GeneratedSet(
        (zeros(P.dim),), tuple(P.A[i] for i in active), P.dim
    )
    combo = positive_combination(S, lp.objective)
    if combo is None:
        return None
    _, ray_coeffs = combo
    lam = [ZERO] * P.m
    for coeff, i in zip(ray_coeffs, active):
        lam[i] = coeff
    check = zeros(P.dim)
    for coeff, i in zip(ray_coeffs, active):
        check = tuple(a + coeff * b for a, b in zip(check, P.A[i]))
    if check != tuple(lp.objective):
        raise InternalError("strictly complementary witness is not dual feasible")
    return Witness(tuple(lam))
