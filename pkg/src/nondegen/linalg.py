"""Exact rational scalars, vectors, and matrices.

Every quantity in this package is an exact rational; no floats enter any
decision.  Scalars are built through :func:`Q`, which is ``gmpy2.mpq`` when
gmpy2 is installed (much faster) and ``fractions.Fraction`` otherwise.  Both
keep values in lowest terms with a positive denominator, so canonical form is
maintained by construction.  Vectors are plain tuples of scalars and matrices
are tuples of row tuples; all operations are pure functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from .errors import DimensionMismatchError, RationalParseError

try:  # gmpy2.mpq is a drop-in exact rational with C-speed arithmetic
    from gmpy2 import mpq as Q

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction
    HAVE_GMPY2 = False

# Nominal scalar type for annotations.  At runtime scalars may be gmpy2.mpq,
# which obeys the same arithmetic/comparison protocol as Fraction.
Rat = Fraction
Vec = Tuple[Rat, ...]
Mat = Tuple[Vec, ...]

ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)

_RATIONAL_TOKEN = re.compile(r"(-?\d+)(?:/(\d+))?")


def parse_rational(token: str) -> Rat:
    """Parse ``'n'`` or ``'n/d'`` with optional leading minus and ``d > 0``.

    Anything else (empty string, whitespace, decimals, signs on the
    denominator, zero denominator) raises :class:`RationalParseError`.
    """
    m = _RATIONAL_TOKEN.fullmatch(token)
    if m is None:
        raise RationalParseError(token)
    num = int(m.group(1))
    den = 1 if m.group(2) is None else int(m.group(2))
    if den == 0:
        raise RationalParseError(token, reason="denominator is zero")
    return Q(num, den)


def format_rational(x) -> str:
    """Render a rational as ``'n'`` or ``'n/d'`` (the parseable form)."""
    num, den = x.numerator, x.denominator
    return str(num) if den == 1 else f"{num}/{den}"


def vec(values: Iterable) -> Vec:
    return tuple(Q(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out:
        width = len(out[0])
        for i, row in enumerate(out):
            if len(row) != width:
                raise DimensionMismatchError(f"matrix row {i}", width, len(row))
    return out


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def dot(u: Vec, v: Vec) -> Rat:
    if len(u) != len(v):
        raise DimensionMismatchError("dot product", len(u), len(v))
    total = ZERO
    for a, b in zip(u, v):
        total += a * b
    return total


def vadd(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatchError("vector sum", len(u), len(v))
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatchError("vector difference", len(u), len(v))
    return tuple(a - b for a, b in zip(u, v))


def vscale(s, u: Vec) -> Vec:
    s = Q(s)
    return tuple(s * a for a in u)


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def mat_vec(A: Mat, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in A)


def transpose(A: Mat) -> Mat:
    if not A:
        return ()
    return tuple(zip(*A))


def rank(A: Iterable[Iterable]) -> int:
    """Rank via exact Gaussian elimination over the rationals."""
    rows = [list(map(Q, r)) for r in A]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        prow = rows[r]
        inv = ONE / prow[c]
        if inv != 1:
            rows[r] = prow = [a * inv for a in prow]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * p for a, p in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


@dataclass(frozen=True)
class UniqueSolution:
    x: Vec


@dataclass(frozen=True)
class Underdetermined:
    """A particular solution together with a basis of the homogeneous kernel."""

    x: Vec
    nullspace: Mat


@dataclass(frozen=True)
class Inconsistent:
    pass


SolveOutcome = Union[UniqueSolution, Underdetermined, Inconsistent]


def solve_linear(A: Iterable[Iterable], b: Iterable, ncols: Optional[int] = None) -> SolveOutcome:
    """Solve ``A x = b`` exactly, classifying the solution set.

    ``ncols`` is only needed when ``A`` has no rows (the variable count cannot
    be inferred).  For underdetermined systems the particular solution sets all
    free variables to zero and the nullspace basis has one vector per free
    column (that column set to one).
    """
    rows = [list(map(Q, r)) for r in A]
    rhs = [Q(v) for v in b]
    if len(rhs) != len(rows):
        raise DimensionMismatchError("right-hand side length", len(rows), len(rhs))
    if rows:
        n = len(rows[0])
        if ncols is not None and ncols != n:
            raise DimensionMismatchError("column count", ncols, n)
    else:
        if ncols is None:
            raise DimensionMismatchError("column count for empty matrix", "an integer", None)
        n = ncols
    aug = [row + [rv] for row, rv in zip(rows, rhs)]
    pivot_cols = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, len(aug)):
            if aug[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        prow = aug[r]
        inv = ONE / prow[c]
        if inv != 1:
            aug[r] = prow = [a * inv for a in prow]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * p for a, p in zip(aug[i], prow)]
        pivot_cols.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return Inconsistent()
    x = [ZERO] * n
    for idx, c in enumerate(pivot_cols):
        x[c] = aug[idx][n]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n) if c not in pivot_set]
    if not free_cols:
        return UniqueSolution(tuple(x))
    basis = []
    for fc in free_cols:
        v = [ZERO] * n
        v[fc] = ONE
        for idx, c in enumerate(pivot_cols):
            v[c] = -aug[idx][fc]
        # canonical sign: leading nonzero entry positive
        lead = next(a for a in v if a != 0)
        if lead < 0:
            v = [-a for a in v]
        basis.append(tuple(v))
    return Underdetermined(tuple(x), tuple(basis))
