"""Exact proximal maps, the Minty resolvent transport, and critical-point
enumeration for quadratically tilted polyhedral functions."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import feasible_points_of, qv, rand_polyfun, rand_rat, rand_vec, to_frac, vec_frac
from nondegen.errors import EnumerationBoundError, InfeasibleDomainError
from nondegen.functions import (
    DegenerateCritical,
    Nondegenerate,
    PolyhedralFunction,
    subdifferential,
)
from nondegen.gallery import abs_function, box_indicator
from nondegen.geometry import Boundary, Interior, member, ri_membership, translate
from nondegen.linalg import Q, dot, vscale, vsub, zeros
from nondegen.proximal import (
    LowerC2Instance,
    find_critical_points,
    minty_transport,
    prox,
)
from oracles import critical_points_1d, prox_1d

ABS_RHO_1 = LowerC2Instance(abs_function(), Q(1))


# ---------------------------------------------------------------------------
# prox
# ---------------------------------------------------------------------------


def test_prox_abs_soft_threshold():
    assert prox(abs_function(), qv(3)) == qv(2)


def test_prox_abs_collapses_small_inputs():
    assert prox(abs_function(), qv("1/2")) == qv(0)


def test_prox_of_indicator_is_projection():
    assert prox(box_indicator(2), qv(3, 0)) == qv(1, 0)


def test_prox_enumeration_bound():
    with pytest.raises(EnumerationBoundError) as info:
        prox(box_indicator(2), qv(0, 0), enum_bound=3)
    assert info.value.count == 4
    assert info.value.bound == 3
    assert "4" in str(info.value) and "3" in str(info.value)


def test_prox_enumeration_bound_from_environment(monkeypatch):
    monkeypatch.setenv("GENERIC_NONDEGEN_ENUM_BOUND", "3")
    with pytest.raises(EnumerationBoundError):
        prox(box_indicator(2), qv(0, 0))
    # an explicit argument overrides the environment
    assert prox(box_indicator(2), qv(0, 0), enum_bound=4) == qv(0, 0)


def test_prox_infeasible_domain():
    f = PolyhedralFunction.build([], [(1,), (-1,)], [-1, -1], 1)
    with pytest.raises(InfeasibleDomainError):
        prox(f, qv(0))


def test_rho_must_be_positive():
    with pytest.raises(ValueError, match="rho must be positive"):
        LowerC2Instance(abs_function(), Q(0))
    with pytest.raises(ValueError, match="rho must be positive"):
        LowerC2Instance(abs_function(), Q(-1))


# ---------------------------------------------------------------------------
# minty_transport
# ---------------------------------------------------------------------------


def test_transport_shifts_smooth_region():
    x, h = minty_transport(ABS_RHO_1, qv(3))
    assert (x, h) == (qv(2), qv(-1))
    # h must be a subgradient of g - (rho/2)|.|^2 at x, i.e. of dg(x) - rho x
    S = subdifferential(abs_function(), x)
    assert member(translate(S, vscale(Q(1), x)), h)


def test_transport_fixes_the_kink():
    assert minty_transport(ABS_RHO_1, qv(0)) == (qv(0), qv(0))


def test_transport_preserves_boundary_status():
    x, h = minty_transport(ABS_RHO_1, qv(1))
    assert (x, h) == (qv(0), qv(1))
    S = subdifferential(abs_function(), x)
    before = ri_membership(translate(S, vscale(Q(-1), x)), qv(1))
    after = ri_membership(translate(S, vscale(Q(1), x)), h)
    assert type(before) is type(after)


# ---------------------------------------------------------------------------
# find_critical_points
# ---------------------------------------------------------------------------


def test_critical_points_of_untilted_abs():
    res = find_critical_points(ABS_RHO_1, qv(0))
    assert [x for x, _ in res] == [qv(-1), qv(0), qv(1)]
    assert all(isinstance(c, Nondegenerate) for _, c in res)


def test_critical_points_on_the_bad_tilt():
    res = find_critical_points(ABS_RHO_1, qv(1))
    assert [x for x, _ in res] == [qv(-2), qv(0)]
    assert isinstance(res[0][1], Nondegenerate)
    assert isinstance(res[1][1], DegenerateCritical)


def test_critical_points_on_a_generic_tilt():
    res = find_critical_points(ABS_RHO_1, qv("1/2"))
    assert [x for x, _ in res] == [qv("-3/2"), qv(0), qv("1/2")]
    assert all(isinstance(c, Nondegenerate) for _, c in res)


def test_critical_point_enumeration_respects_bound():
    with pytest.raises(EnumerationBoundError):
        find_critical_points(LowerC2Instance(box_indicator(2), Q(1)), qv(0, 0), enum_bound=3)


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


def _sq_norm(v):
    return sum(a * a for a in v)


@given(st.integers(0, 100_000))
@settings(deadline=None, max_examples=50)
def test_prox_is_one_lipschitz(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 2)
    g = rand_polyfun(rng, dim)
    c1 = rand_vec(rng, dim)
    c2 = rand_vec(rng, dim)
    x1 = prox(g, c1)
    x2 = prox(g, c2)
    assert _sq_norm(vsub(x1, x2)) <= _sq_norm(vsub(c1, c2))


@given(st.integers(0, 100_000))
@settings(deadline=None, max_examples=50)
def test_prox_fixed_points_are_minimizers(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 2)
    g = rand_polyfun(rng, dim)
    for c in feasible_points_of(g, rng):
        fixed = prox(g, c) == tuple(c)
        has_zero_subgradient = member(subdifferential(g, c), zeros(dim))
        assert fixed == has_zero_subgradient


@given(st.integers(0, 100_000))
@settings(deadline=None, max_examples=50)
def test_prox_satisfies_first_order_optimality(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 2)
    g = rand_polyfun(rng, dim)
    c = rand_vec(rng, dim)
    x = prox(g, c)
    assert member(subdifferential(g, x), vsub(c, x))


@given(st.integers(0, 100_000))
@settings(deadline=None, max_examples=50)
def test_transport_lands_in_shifted_subdifferential(seed):
    rng = random.Random(seed)
    dim = rng.randint(1, 2)
    g = rand_polyfun(rng, dim)
    rho = Q(rng.randint(1, 3), rng.randint(1, 2))
    inst = LowerC2Instance(g, rho)
    c = rand_vec(rng, dim)
    x, h = minty_transport(inst, c)
    S = subdifferential(g, x)
    assert member(translate(S, vscale(rho, x)), h)
    before = ri_membership(translate(S, vscale(Q(-1), x)), c)
    after = ri_membership(translate(S, vscale(rho, x)), h)
    assert type(before) is type(after)


@given(st.integers(0, 100_000))
@settings(deadline=None, max_examples=50)
def test_univariate_prox_matches_breakpoint_oracle(seed):
    rng = random.Random(seed)
    g = rand_polyfun(rng, 1)
    c = rand_vec(rng, 1)
    pieces = [(to_frac(cf[0]), to_frac(d)) for cf, d in g.pieces]
    cons = [(to_frac(row[0]), to_frac(b)) for row, b in zip(g.domain.A, g.domain.b)]
    expected = prox_1d(pieces, cons, to_frac(c[0]))
    assert to_frac(prox(g, c)[0]) == expected


@given(st.integers(0, 100_000))
@settings(deadline=None, max_examples=50)
def test_univariate_critical_points_match_oracle(seed):
    rng = random.Random(seed)
    g = rand_polyfun(rng, 1)
    rho = Q(rng.randint(1, 3))
    v = rand_vec(rng, 1)
    pieces = [(to_frac(cf[0]), to_frac(d)) for cf, d in g.pieces]
    cons = [(to_frac(row[0]), to_frac(b)) for row, b in zip(g.domain.A, g.domain.b)]
    expected = critical_points_1d(pieces, cons, to_frac(rho), to_frac(v[0]))
    got = find_critical_points(LowerC2Instance(g, rho), v)
    assert [to_frac(x[0]) for x, _ in got] == [x for x, _ in expected]
    for (_, cert), (_, label) in zip(got, expected):
        if label == "nondegenerate":
            assert isinstance(cert, Nondegenerate)
        else:
            assert isinstance(cert, DegenerateCritical)


@given(st.integers(0, 100_000))
@settings(deadline=None, max_examples=40)
def test_critical_points_solve_the_inclusion(seed):
    """Every reported critical point satisfies v + rho*x in dg(x) exactly."""
    rng = random.Random(seed)
    dim = rng.randint(1, 2)
    g = rand_polyfun(rng, dim)
    rho = Q(rng.randint(1, 2))
    v = rand_vec(rng, dim)
    for x, cert in find_critical_points(LowerC2Instance(g, rho), v):
        w = tuple(vi + rho * xi for vi, xi in zip(v, x))
        assert member(subdifferential(g, x), w)
        status = ri_membership(subdifferential(g, x), w)
        if isinstance(cert, Nondegenerate):
            assert isinstance(status, Interior)
        else:
            assert isinstance(status, Boundary)
