"""Simple (face-wise affine) functions on a weighted complex.

A simple function is stored as its vertex values; affineness on each face
determines the rest.  The derivative along a face ``I`` is the class

    d_I phi = sum_i mult_i * phi(i) * c_(i,I)

and phi is linear / convex / strictly convex along the open face when that
class is trivial / nef / ample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import errors
from .complex import WeightedComplex, ambient_to_barycentric, check_weights
from .linalg import Vector, combine, to_fraction


@dataclass(frozen=True)
class SimpleFunction:
    values: Mapping

    @classmethod
    def of(cls, values: Mapping) -> SimpleFunction:
        return cls({v: to_fraction(x) for v, x in values.items()})

    @classmethod
    def constant(cls, complex_: WeightedComplex, c=0) -> SimpleFunction:
        c = to_fraction(c)
        return cls({v: c for v in complex_.vertices})

    def __getitem__(self, v) -> Fraction:
        return self.values[v]

    def __add__(self, other: SimpleFunction) -> SimpleFunction:
        return SimpleFunction({v: x + other.values[v] for v, x in self.values.items()})

    def __sub__(self, other: SimpleFunction) -> SimpleFunction:
        return SimpleFunction({v: x - other.values[v] for v, x in self.values.items()})

    def __rmul__(self, c) -> SimpleFunction:
        c = to_fraction(c)
        return SimpleFunction({v: c * x for v, x in self.values.items()})

    def __neg__(self) -> SimpleFunction:
        return SimpleFunction({v: -x for v, x in self.values.items()})


def check_function(complex_: WeightedComplex, phi: SimpleFunction) -> SimpleFunction:
    for v in phi.values:
        complex_.index(v)
    missing = [v for v in complex_.vertices if v not in phi.values]
    if missing:
        raise errors.ValidationError(f"simple function has no value at {missing[0]!r}")
    return phi


def divisor_to_simple_function(complex_: WeightedComplex, coefficients: Mapping) -> SimpleFunction:
    """The simple function of the vertical divisor ``sum a_i D_i``: ``phi(i) = a_i / mult_i``."""
    for v in coefficients:
        complex_.index(v)
    missing = [v for v in complex_.vertices if v not in coefficients]
    if missing:
        raise errors.UnknownVertex(missing[0])
    return SimpleFunction(
        {v: to_fraction(coefficients[v]) / complex_.mult[v] for v in complex_.vertices}
    )


def evaluate(complex_: WeightedComplex, phi: SimpleFunction, weights: Mapping) -> Fraction:
    """Value at the point with barycentric ``weights`` on a face."""
    lam = check_weights(complex_, weights)
    return sum((w * phi.values[v] for v, w in lam.items()), Fraction(0))


def evaluate_ambient(complex_: WeightedComplex, phi: SimpleFunction, point, face=None) -> Fraction:
    return evaluate(complex_, phi, ambient_to_barycentric(complex_, point, face))


def derivative_of_values(complex_: WeightedComplex, values: Mapping, face: Iterable) -> Vector:
    """``d_I`` of a (possibly local) function given by vertex values.

    Only vertices ``k`` with ``I | {k}`` a face can have a nonzero class on
    ``I``, so ``values`` needs to cover exactly those; a germ on the closed
    star of any vertex of ``I`` does.
    """
    f = complex_.face(face)
    sp = complex_.spaces[f]
    terms = []
    for k in complex_.face_star(f):
        c = sp.classes.get(k)
        if c is None:
            continue
        try:
            val = values[k]
        except KeyError:
            raise errors.StarSupportMismatch(f"no value at {k!r}, needed for the derivative along {sorted(f, key=str)}") from None
        terms.append((complex_.mult[k] * val, c))
    return combine(terms, sp.dim)


def derivative(complex_: WeightedComplex, phi: SimpleFunction, face: Iterable) -> Vector:
    return derivative_of_values(complex_, phi.values, face)


@dataclass(frozen=True)
class FaceClassification:
    """Per-face ``(is_linear, is_convex, is_strictly_convex)``."""

    entries: Mapping

    def _locus(self, slot: int) -> frozenset:
        return frozenset(f for f, t in self.entries.items() if t[slot])

    @property
    def lin_locus(self) -> frozenset:
        return self._locus(0)

    @property
    def conv_locus(self) -> frozenset:
        return self._locus(1)

    @property
    def sconv_locus(self) -> frozenset:
        return self._locus(2)

    def locus(self, kind: str) -> frozenset:
        return self._locus(KINDS.index(kind))


KINDS = ("linear", "convex", "strictly_convex")


def classify_class(complex_: WeightedComplex, face: Iterable, c: Vector) -> tuple[bool, bool, bool]:
    sp = complex_.space(face)
    return sp.is_trivial(c), sp.is_nef(c), sp.is_ample(c)


def classify_faces(complex_: WeightedComplex, phi: SimpleFunction) -> FaceClassification:
    check_function(complex_, phi)
    return FaceClassification(
        {f: classify_class(complex_, f, derivative(complex_, phi, f)) for f in complex_.faces}
    )


def is_on_subset(classification: FaceClassification, kind: str, faces: Iterable[Iterable]) -> bool:
    """True iff every face of ``faces`` lies in the requested locus."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    locus = classification.locus(kind)
    for f in faces:
        f = frozenset(f)
        if f not in classification.entries:
            raise errors.UnknownFace(f)
        if f not in locus:
            return False
    return True
