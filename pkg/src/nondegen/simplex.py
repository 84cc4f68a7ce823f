"""Exact simplex over the rationals.

The public surface solves H-form programs

    maximize  <objective, x>   subject to   A x <= b,   x free,

returning one of three certified outcomes: an optimal point with dual
multipliers, an improving ray, or a Farkas certificate of infeasibility.
Every certificate is verified exactly before being returned, so a bug in the
pivoting can surface only as an :class:`InternalError`, never as a wrong
answer.

Pivoting uses Bland's rule (lowest eligible column enters; ties in the ratio
test break toward the lowest basic column), which guarantees termination and
makes every outcome a deterministic function of the input.

Internally everything reduces to a dense-tableau kernel for the standard form

    maximize  <c, t>   subject to   M t = rhs,   t >= 0,

which other modules use directly for membership and relative-interior
auxiliary programs (equalities and sign constraints are native there, keeping
those tableaus small).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatchError, InternalError
from .linalg import Mat, ONE, Q, Rat, Vec, ZERO, dot, mat, vec, zeros


@dataclass(frozen=True)
class HPolyhedron:
    """Intersection of finitely many half-spaces ``A x <= b`` in ``R^dim``."""

    A: Mat
    b: Vec
    dim: int

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise DimensionMismatchError("constraint count", len(self.A), len(self.b))
        for i, row in enumerate(self.A):
            if len(row) != self.dim:
                raise DimensionMismatchError(f"constraint {i} width", self.dim, len(row))

    @classmethod
    def from_rows(cls, rows, rhs, dim: Optional[int] = None) -> "HPolyhedron":
        A = mat(rows)
        b = vec(rhs)
        if dim is None:
            if not A:
                raise DimensionMismatchError("dim for empty constraint list", "an integer", None)
            dim = len(A[0])
        return cls(A, b, dim)

    @property
    def m(self) -> int:
        return len(self.A)

    def contains(self, x: Vec) -> bool:
        return self.violation_index(x) is None

    def violation_index(self, x: Vec) -> Optional[int]:
        """Index of the first violated constraint, or None if ``x`` is feasible."""
        if len(x) != self.dim:
            raise DimensionMismatchError("point dimension", self.dim, len(x))
        for i, (row, rhs) in enumerate(zip(self.A, self.b)):
            if dot(row, x) > rhs:
                return i
        return None

    def active_set(self, x: Vec) -> Tuple[int, ...]:
        """Indices of constraints satisfied with exact equality at ``x``."""
        if len(x) != self.dim:
            raise DimensionMismatchError("point dimension", self.dim, len(x))
        return tuple(i for i, (row, rhs) in enumerate(zip(self.A, self.b)) if dot(row, x) == rhs)


@dataclass(frozen=True)
class LinearProgram:
    objective: Vec
    constraints: HPolyhedron

    def __post_init__(self):
        if len(self.objective) != self.constraints.dim:
            raise DimensionMismatchError(
                "objective dimension", self.constraints.dim, len(self.objective)
            )


@dataclass(frozen=True)
class Optimal:
    x: Vec
    value: Rat
    duals: Vec
    active_set: FrozenSet[int]


@dataclass(frozen=True)
class Unbounded:
    """A feasible point and a ray ``d`` with ``A d <= 0`` and ``<c, d> > 0``."""

    x0: Vec
    ray: Vec


@dataclass(frozen=True)
class Infeasible:
    """Farkas certificate: ``farkas >= 0``, ``farkas^T A = 0``, ``farkas^T b < 0``."""

    farkas: Vec


@dataclass(frozen=True)
class Point:
    x: Vec


LpOutcome = Union[Optimal, Unbounded, Infeasible]


# ---------------------------------------------------------------------------
# standard-form kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelOptimal:
    t: Vec
    value: Rat
    duals: Vec  # one multiplier per equality row, for the rows as given


@dataclass(frozen=True)
class KernelUnbounded:
    t0: Vec
    ray: Vec


@dataclass(frozen=True)
class KernelInfeasible:
    """Certificate ``g`` with ``g^T M <= 0`` componentwise and ``g^T rhs > 0``."""

    farkas: Vec


KernelOutcome = Union[KernelOptimal, KernelUnbounded, KernelInfeasible]


def solve_standard_form(M: Sequence[Sequence], rhs: Sequence, obj: Sequence) -> KernelOutcome:
    """Maximize ``<obj, t>`` over ``M t = rhs, t >= 0`` with certified outcomes."""
    ncols = len(obj)
    nrows = len(M)
    if len(rhs) != nrows:
        raise DimensionMismatchError("rhs length", nrows, len(rhs))

    sigma = [1] * nrows  # row flips applied to make the working rhs nonnegative
    rows: List[List[Rat]] = []
    for i in range(nrows):
        src = M[i]
        if len(src) != ncols:
            raise DimensionMismatchError(f"row {i} width", ncols, len(src))
        r = Q(rhs[i])
        if r < 0:
            row = [-Q(a) for a in src]
            r = -r
            sigma[i] = -1
        else:
            row = [Q(a) for a in src]
        row.append(r)
        rows.append(row)

    row_ids = list(range(nrows))
    basis = [-1] * nrows

    # Adopt existing unit columns as the initial basis where possible.
    for j in range(ncols):
        hit = None
        usable = True
        for i in range(nrows):
            a = rows[i][j]
            if a != 0:
                if hit is None and a == 1:
                    hit = i
                else:
                    usable = False
                    break
        if usable and hit is not None and basis[hit] == -1:
            basis[hit] = j

    unit_col = [-1] * nrows  # a column that started as e_i, used to read duals
    for i in range(nrows):
        if basis[i] != -1:
            unit_col[i] = basis[i]

    need_art = [i for i in range(nrows) if basis[i] == -1]
    total_cols = ncols
    art_cols: List[int] = []
    if need_art:
        n_art = len(need_art)
        for row in rows:
            row[-1:-1] = [ZERO] * n_art
        for k, i in enumerate(need_art):
            col = ncols + k
            rows[i][col] = ONE
            basis[i] = col
            unit_col[i] = col
            art_cols.append(col)
        total_cols = ncols + n_art
    art_set = set(art_cols)
    enterable = [True] * total_cols

    def make_objrow(costs: List[Rat]) -> List[Rat]:
        objrow = list(costs) + [ZERO]
        for i, brow in enumerate(rows):
            f = objrow[basis[i]]
            if f != 0:
                objrow = [a - f * p for a, p in zip(objrow, brow)]
        return objrow

    def pivot(pr: int, pc: int) -> List[Rat]:
        prow = rows[pr]
        piv = prow[pc]
        if piv != 1:
            inv = ONE / piv
            rows[pr] = prow = [a * inv for a in prow]
        for i in range(len(rows)):
            if i != pr:
                f = rows[i][pc]
                if f != 0:
                    rows[i] = [a - f * p for a, p in zip(rows[i], prow)]
        basis[pr] = pc
        return prow

    def run(objrow: List[Rat]):
        """Bland-rule iteration; returns ('optimal', objrow) or ('unbounded', objrow, col)."""
        while True:
            pc = -1
            for j in range(total_cols):
                if enterable[j] and objrow[j] > 0:
                    pc = j
                    break
            if pc < 0:
                return ("optimal", objrow)
            best_key = None
            best_row = -1
            for i in range(len(rows)):
                a = rows[i][pc]
                if a > 0:
                    key = (rows[i][-1] / a, basis[i])
                    if best_key is None or key < best_key:
                        best_key = key
                        best_row = i
            if best_row < 0:
                return ("unbounded", objrow, pc)
            leaving = basis[best_row]
            prow = pivot(best_row, pc)
            f = objrow[pc]
            if f != 0:
                objrow[:] = [a - f * p for a, p in zip(objrow, prow)]
            if leaving in art_set:
                enterable[leaving] = False

    dropped_rows: List[int] = []

    if art_cols:
        phase1 = [ZERO] * total_cols
        for c in art_cols:
            phase1[c] = -ONE
        objrow = make_objrow(phase1)
        status = run(objrow)
        if status[0] != "optimal":
            raise InternalError("phase-1 objective is bounded above by zero")
        if -objrow[-1] != 0:
            # Infeasible: assemble the Farkas certificate from the row duals.
            g = []
            for pos in range(len(rows)):
                col = unit_col[pos]
                y = phase1[col] - objrow[col]
                g.append(Q(-sigma[row_ids[pos]]) * y)
            farkas = tuple(g)
            for j in range(ncols):
                s = ZERO
                for i in range(nrows):
                    s += farkas[i] * Q(M[i][j])
                if s > 0:
                    raise InternalError("farkas certificate fails g^T M <= 0")
            if sum(farkas[i] * Q(rhs[i]) for i in range(nrows)) <= 0:
                raise InternalError("farkas certificate fails g^T rhs > 0")
            return KernelInfeasible(farkas)
        # Feasible: drive artificial columns out of the basis, dropping any
        # row that has become identically zero (a redundant equality).
        to_drop = []
        for i in range(len(rows)):
            if basis[i] in art_set:
                pc = -1
                for j in range(ncols):
                    if rows[i][j] != 0:
                        pc = j
                        break
                if pc < 0:
                    if rows[i][-1] != 0:
                        raise InternalError("redundant row with nonzero rhs after phase 1")
                    to_drop.append(i)
                else:
                    pivot(i, pc)
        for i in reversed(to_drop):
            dropped_rows.append(row_ids[i])
            del rows[i], basis[i], unit_col[i], row_ids[i]
        for c in art_cols:
            enterable[c] = False

    costs2 = [Q(v) for v in obj] + [ZERO] * (total_cols - ncols)
    objrow = make_objrow(costs2)
    status = run(objrow)

    def current_point() -> Vec:
        t = [ZERO] * ncols
        for i, bcol in enumerate(basis):
            if bcol >= ncols:
                raise InternalError("artificial variable still basic after phase 1")
            t[bcol] = rows[i][-1]
        return tuple(t)

    if status[0] == "unbounded":
        pc = status[2]
        if pc >= ncols:
            raise InternalError("artificial column selected as unbounded direction")
        ray = [ZERO] * ncols
        ray[pc] = ONE
        for i, brow in enumerate(rows):
            ray[basis[i]] = -brow[pc]
        t0 = current_point()
        for i in range(nrows):
            if sum(Q(M[i][j]) * ray[j] for j in range(ncols)) != 0:
                raise InternalError("unbounded ray is not in the kernel of M")
        if any(r < 0 for r in ray):
            raise InternalError("unbounded ray has a negative component")
        if sum(Q(obj[j]) * ray[j] for j in range(ncols)) <= 0:
            raise InternalError("unbounded ray does not improve the objective")
        return KernelUnbounded(t0, tuple(ray))

    t = current_point()
    value = -objrow[-1]
    duals = [ZERO] * nrows
    for pos in range(len(rows)):
        col = unit_col[pos]
        y = costs2[col] - objrow[col]
        duals[row_ids[pos]] = Q(sigma[row_ids[pos]]) * y
    # Exact optimality verification: primal feasibility, value, reduced costs,
    # and strong duality.
    if any(v < 0 for v in t):
        raise InternalError("primal point has a negative coordinate")
    for i in range(nrows):
        if sum(Q(M[i][j]) * t[j] for j in range(ncols)) != Q(rhs[i]):
            raise InternalError("primal point violates an equality row")
    if sum(Q(obj[j]) * t[j] for j in range(ncols)) != value:
        raise InternalError("objective value mismatch")
    for j in range(ncols):
        rc = Q(obj[j]) - sum(duals[i] * Q(M[i][j]) for i in range(nrows))
        if rc > 0:
            raise InternalError("positive reduced cost at claimed optimum")
    if sum(duals[i] * Q(rhs[i]) for i in range(nrows)) != value:
        raise InternalError("strong duality violated")
    return KernelOptimal(t, value, tuple(duals))


# ---------------------------------------------------------------------------
# H-form wrappers
# ---------------------------------------------------------------------------


def _hform_to_standard(P: HPolyhedron, objective: Vec):
    """Split free variables and add slacks: columns are (u, w, s), x = u - w."""
    n, m = P.dim, P.m
    M = []
    for i in range(m):
        row = list(P.A[i]) + [-a for a in P.A[i]] + [ZERO] * m
        row[2 * n + i] = ONE
        M.append(row)
    obj = list(objective) + [-c for c in objective] + [ZERO] * m
    return M, list(P.b), obj


def solve_lp(lp: LinearProgram) -> LpOutcome:
    """Solve the H-form program; outcomes are verified exactly before return."""
    P = lp.constraints
    n, m = P.dim, P.m
    M, rhs, obj = _hform_to_standard(P, lp.objective)
    res = solve_standard_form(M, rhs, obj)
    if isinstance(res, KernelOptimal):
        x = tuple(res.t[k] - res.t[n + k] for k in range(n))
        value = res.value
        duals = res.duals
        if dot(lp.objective, x) != value:
            raise InternalError("lp value mismatch")
        if any(l < 0 for l in duals):
            raise InternalError("negative dual multiplier")
        for k in range(n):
            col = sum(duals[i] * P.A[i][k] for i in range(m)) if m else ZERO
            if col != lp.objective[k]:
                raise InternalError("dual feasibility A^T y = c violated")
        if m and sum(duals[i] * P.b[i] for i in range(m)) != value:
            raise InternalError("duality gap is nonzero")
        active = []
        for i in range(m):
            slack = P.b[i] - dot(P.A[i], x)
            if slack < 0:
                raise InternalError("optimal point infeasible")
            if slack == 0:
                active.append(i)
            elif duals[i] != 0:
                raise InternalError("complementary slackness violated")
        return Optimal(x, value, duals, frozenset(active))
    if isinstance(res, KernelUnbounded):
        x0 = tuple(res.t0[k] - res.t0[n + k] for k in range(n))
        d = tuple(res.ray[k] - res.ray[n + k] for k in range(n))
        if P.violation_index(x0) is not None:
            raise InternalError("unbounded base point infeasible")
        for i in range(m):
            if dot(P.A[i], d) > 0:
                raise InternalError("unbounded ray leaves the feasible set")
        if dot(lp.objective, d) <= 0:
            raise InternalError("unbounded ray does not improve the objective")
        return Unbounded(x0, d)
    farkas = tuple(-g for g in res.farkas)
    if any(f < 0 for f in farkas):
        raise InternalError("farkas multiplier negative")
    for k in range(n):
        if sum(farkas[i] * P.A[i][k] for i in range(m)) != 0:
            raise InternalError("farkas combination is not the zero functional")
    if sum(farkas[i] * P.b[i] for i in range(m)) >= 0:
        raise InternalError("farkas certificate has nonnegative rhs combination")
    return Infeasible(farkas)


def feasible_point(P: HPolyhedron) -> Union[Point, Infeasible]:
    """A feasible point of ``P`` (phase one only), or a Farkas certificate."""
    n = P.dim
    M, rhs, _ = _hform_to_standard(P, zeros(n))
    res = solve_standard_form(M, rhs, [ZERO] * (2 * n + P.m))
    if isinstance(res, KernelOptimal):
        x = tuple(res.t[k] - res.t[n + k] for k in range(n))
        if P.violation_index(x) is not None:
            raise InternalError("phase-1 point infeasible")
        return Point(x)
    if isinstance(res, KernelInfeasible):
        farkas = tuple(-g for g in res.farkas)
        return Infeasible(farkas)
    raise InternalError("feasibility program cannot be unbounded")
