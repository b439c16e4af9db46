from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skeleton_kit import errors, generators
from skeleton_kit.functions import (
    SimpleFunction,
    classify_faces,
    derivative,
    evaluate,
    evaluate_ambient,
    is_on_subset,
)

A, B, AB = frozenset({"1"}), frozenset({"2"}), frozenset({"1", "2"})


def test_evaluate_at_vertex_and_midpoint(edge_11):
    phi = SimpleFunction.of({"1": 0, "2": 6})
    assert evaluate(edge_11, phi, {"2": 1}) == 6
    assert evaluate(edge_11, phi, {"1": F(1, 2), "2": F(1, 2)}) == 3


def test_evaluate_ambient_on_weighted_edge(edge_23):
    phi = SimpleFunction.of({"1": 0, "2": 1})
    assert evaluate_ambient(edge_23, phi, (F(1, 4), F(1, 6))) == F(1, 2)


def test_evaluate_off_face(edge_23):
    with pytest.raises(errors.NotOnFace):
        evaluate(edge_23, SimpleFunction.of({"1": 0, "2": 1}), {"1": F(1, 3), "2": F(1, 3)})


def test_derivative_hand_values(edge_11):
    assert derivative(edge_11, SimpleFunction.of({"1": 0, "2": 1}), ("1",)) == (1,)
    assert derivative(edge_11, SimpleFunction.of({"1": 1, "2": 0}), ("1",)) == (-1,)


def test_derivative_unknown_face(edge_11):
    with pytest.raises(errors.UnknownFace):
        derivative(edge_11, SimpleFunction.of({"1": 1, "2": 0}), ("1", "3"))


def test_classification_two_vertex(edge_11):
    cls = classify_faces(edge_11, SimpleFunction.of({"1": 0, "2": 1}))
    assert cls.entries[A] == (False, True, True)
    assert cls.entries[B] == (False, False, False)
    assert cls.entries[AB] == (True, True, True)
    assert not is_on_subset(cls, "convex", [A, B])
    assert is_on_subset(cls, "strictly_convex", [A])
    assert is_on_subset(cls, "linear", [])
    assert is_on_subset(cls, "linear", [AB])
    with pytest.raises(errors.UnknownFace):
        is_on_subset(cls, "linear", [frozenset({"9"})])
    with pytest.raises(ValueError):
        is_on_subset(cls, "concave", [A])


def test_constant_is_linear_everywhere(edge_23):
    cls = classify_faces(edge_23, SimpleFunction.constant(edge_23, 7))
    assert cls.lin_locus == frozenset(edge_23.faces)
    assert cls.conv_locus == frozenset(edge_23.faces)
    # the zero class is not ample on positive-dimensional spaces
    assert cls.sconv_locus == frozenset({AB})


def test_missing_value_rejected(edge_23):
    with pytest.raises(errors.ValidationError):
        classify_faces(edge_23, SimpleFunction.of({"1": 0}))


@given(st.integers(0, 10_000), st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5))
def test_derivative_is_linear(seed, a, b):
    rng = random.Random(seed)
    cx = generators.random_complex(rng)
    phi, psi = generators.random_function(rng, cx), generators.random_function(rng, cx)
    combo = a * phi + b * psi
    for f in cx.faces:
        lhs = derivative(cx, combo, f)
        rhs = tuple(a * x + b * y for x, y in zip(derivative(cx, phi, f), derivative(cx, psi, f)))
        assert lhs == rhs


@given(st.integers(0, 10_000))
def test_locus_inclusions(seed):
    rng = random.Random(seed)
    cx = generators.random_complex(rng)
    cls = classify_faces(cx, generators.random_function(rng, cx))
    assert cls.lin_locus <= cls.conv_locus
    for f in cls.sconv_locus:
        sp = cx.spaces[f]
        if sp.dim == 0 or sp.test_curves:
            assert f in cls.conv_locus
    assert classify_faces(cx, SimpleFunction.constant(cx, 3)).lin_locus == frozenset(cx.faces)
