from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skeleton_kit import errors, generators
from skeleton_kit.complex import (
    ambient_to_barycentric,
    barycentric_to_ambient,
    validate_complex,
    vertex_embedding,
)
from skeleton_kit.functions import derivative, divisor_to_simple_function


def test_single_vertex_dim_zero():
    cx = validate_complex([("v1", 1)], [("v1",)])
    assert cx.vertices == ("v1",)
    assert cx.spaces[frozenset({"v1"})].dim == 0


def test_two_vertex_curve_classes(edge_23):
    assert edge_23.class_of("1", ("1",)) == (F(-3, 2),)
    assert edge_23.class_of("2", ("1",)) == (F(1),)
    assert edge_23.dim(("1", "2")) == 0


def test_special_fiber_relation_violation():
    with pytest.raises(errors.SpecialFiberRelationViolated) as exc:
        validate_complex(
            [("1", 2), ("2", 3)],
            [("1",), ("2",), ("1", "2")],
            {("1",): {"dim": 1, "classes": {"1": [0], "2": [1]}, "test_curves": [[1]]}},
        )
    assert exc.value.face == frozenset({"1"})


def test_missing_singleton():
    with pytest.raises(errors.MissingSingleton):
        validate_complex([("a", 1), ("b", 1)], [("a",), ("a", "b")])


def test_not_subset_closed():
    with pytest.raises(errors.NotSubsetClosed):
        validate_complex([("a", 1), ("b", 1), ("c", 1)], [("a",), ("b",), ("c",), ("a", "b"), ("a", "b", "c")])


def test_non_adjacent_class_must_vanish():
    with pytest.raises(errors.NonAdjacentClassNonzero):
        validate_complex(
            [("a", 1), ("b", 1)],
            [("a",), ("b",)],
            {("a",): {"dim": 1, "classes": {"a": [-1], "b": [1]}}},
        )


def test_dimension_mismatch():
    with pytest.raises(errors.DimensionMismatch):
        validate_complex([("a", 1)], [("a",)], {("a",): {"dim": 2, "classes": {"a": [0]}}})


def _edge_with_dims(rho):
    # vertex a carries a 1-dim space where the class of b is 1, the edge a 1-dim space
    return validate_complex(
        [("a", 1), ("b", 1)],
        [("a",), ("b",), ("a", "b")],
        {
            ("a",): {"dim": 1, "classes": {"a": [-1], "b": [1]}},
            ("b",): {"dim": 1, "classes": {"a": [1], "b": [-1]}},
            ("a", "b"): {"dim": 1, "classes": {"a": [2], "b": [-2]}},
        },
        rho,
    )


def test_restriction_must_carry_classes():
    ok = _edge_with_dims({(("a",), ("a", "b")): [[-2]], (("b",), ("a", "b")): [[2]]})
    assert ok.restriction(("a",), ("a", "b")).rows == ((F(-2),),)
    with pytest.raises(errors.RestrictionIncoherent):
        _edge_with_dims({(("a",), ("a", "b")): [[2]], (("b",), ("a", "b")): [[2]]})


def test_missing_restriction_between_positive_dims():
    with pytest.raises(errors.RestrictionIncoherent):
        _edge_with_dims({(("a",), ("a", "b")): [[-2]]})


def test_composite_restrictions_are_cross_checked():
    rng = random.Random(7)
    for _ in range(50):
        model = generators.random_model(rng)
        cx = model.complex
        for (i, j), m in cx.restrictions.items():
            for k in cx.faces:
                if i < k < j:
                    assert cx.restriction(k, j) @ cx.restriction(i, k) == m


def test_vertex_embedding():
    cx = validate_complex([("a", 1), ("b", 2)], [("a",), ("b",)])
    assert vertex_embedding(cx, "a") == (1, 0)
    assert vertex_embedding(cx, "b") == (0, F(1, 2))
    with pytest.raises(errors.UnknownVertex):
        vertex_embedding(cx, "z")


def test_midpoint_embedding(edge_23):
    assert barycentric_to_ambient(edge_23, {"1": F(1, 2), "2": F(1, 2)}) == (F(1, 4), F(1, 6))
    assert ambient_to_barycentric(edge_23, (F(1, 4), F(1, 6))) == {"1": F(1, 2), "2": F(1, 2)}
    assert barycentric_to_ambient(edge_23, {"2": 1}) == (0, F(1, 3))


def test_barycentric_errors(edge_23):
    with pytest.raises(errors.NegativeCoordinate):
        barycentric_to_ambient(edge_23, {"1": F(3, 2), "2": F(-1, 2)})
    with pytest.raises(errors.NotOnFace):
        barycentric_to_ambient(edge_23, {"1": F(1, 2)})
    with pytest.raises(errors.NotOnFace):
        ambient_to_barycentric(edge_23, (F(1), F(1)))
    with pytest.raises(errors.NegativeCoordinate):
        ambient_to_barycentric(edge_23, (F(-1, 2), F(2, 3)))


@given(st.lists(st.integers(0, 20), min_size=2, max_size=2).filter(any))
def test_barycentric_round_trip(ws):
    cx = validate_complex([("1", 2), ("2", 3)], [("1",), ("2",), ("1", "2")])
    total = sum(ws)
    lam = {"1": F(ws[0], total), "2": F(ws[1], total)}
    x = barycentric_to_ambient(cx, lam)
    assert sum(cx.mult[v] * x[cx.index(v)] for v in cx.vertices) == 1
    assert ambient_to_barycentric(cx, x, ("1", "2")) == lam


def test_divisor_to_simple_function(edge_23):
    assert divisor_to_simple_function(edge_23, {"1": 1, "2": 0}).values == {"1": F(1, 2), "2": 0}
    assert divisor_to_simple_function(edge_23, {"1": 0, "2": 0}).values == {"1": 0, "2": 0}
    with pytest.raises(errors.UnknownVertex):
        divisor_to_simple_function(edge_23, {"1": 0})


@given(st.integers(0, 10_000))
def test_random_complex_invariants(seed):
    rng = random.Random(seed)
    cx = generators.random_complex(rng)
    # idempotent re-validation
    assert validate_complex(**cx.as_raw()) == cx
    for f in cx.faces:
        sp = cx.spaces[f]
        total = [F(0)] * sp.dim
        for v, c in sp.classes.items():
            assert (f | {v}) in set(cx.faces)
            for k in range(sp.dim):
                total[k] += cx.mult[v] * c[k]
        assert not any(total)
    # derivative of a divisor function reproduces the restricted class
    for j in cx.vertices:
        phi = divisor_to_simple_function(cx, {v: int(v == j) for v in cx.vertices})
        for f in cx.faces:
            assert derivative(cx, phi, f) == cx.class_of(j, f)


@given(st.integers(0, 10_000), st.lists(st.integers(-5, 5), min_size=12, max_size=12))
def test_divisor_map_linear_and_injective(seed, coeffs):
    cx = generators.random_complex(random.Random(seed))
    a = {v: coeffs[k] for k, v in enumerate(cx.vertices)}
    b = {v: coeffs[-1 - k] for k, v in enumerate(cx.vertices)}
    fa, fb = divisor_to_simple_function(cx, a), divisor_to_simple_function(cx, b)
    fab = divisor_to_simple_function(cx, {v: 2 * a[v] - b[v] for v in cx.vertices})
    assert fab == 2 * fa - fb
    assert (fa == fb) == (a == b)
