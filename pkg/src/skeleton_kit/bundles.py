"""Virtual line bundles presented by simple metrizations.

A metrization assigns to every vertex ``i`` a germ ``phi_i`` of a simple
function, stored as its values on the closed star of ``i``.  Germs at two
vertices of a common face must differ by a function that is linear along
that face; the bundle itself is the resulting torsor over linear functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import errors
from .complex import WeightedComplex
from .functions import SimpleFunction, check_function, classify_class, derivative_of_values
from .linalg import Vector, nullspace, to_fraction


@dataclass(frozen=True)
class Germ:
    base: object
    values: Mapping

    def __add__(self, other: Germ) -> Germ:
        return Germ(self.base, {v: x + other.values[v] for v, x in self.values.items()})

    def __sub__(self, other: Germ) -> Germ:
        return Germ(self.base, {v: x - other.values[v] for v, x in self.values.items()})


@dataclass(frozen=True)
class MetrizedBundle:
    """Germs indexed by vertex.  Use :func:`validate_metrization` to build one."""

    complex: WeightedComplex
    germs: Mapping

    def germ(self, v) -> Germ:
        return self.germs[v]


def make_germ(complex_: WeightedComplex, base, values: Mapping) -> Germ:
    star = complex_.star(base)
    vals = {}
    for v, x in values.items():
        complex_.index(v)
        vals[v] = to_fraction(x)
    if set(vals) != set(star):
        raise errors.StarSupportMismatch(
            f"germ at {base!r} must have values on exactly {list(star)}, got {sorted(vals, key=complex_.index)}"
        )
    return Germ(base, {v: vals[v] for v in star})


def validate_metrization(complex_: WeightedComplex, germs: Mapping) -> MetrizedBundle:
    """Build a bundle from per-vertex germs, checking compatibility on every face."""
    for v in germs:
        complex_.index(v)
    missing = [v for v in complex_.vertices if v not in germs]
    if missing:
        raise errors.StarSupportMismatch(f"no germ at vertex {missing[0]!r}")
    norm = {}
    for v in complex_.vertices:
        g = germs[v]
        values = g.values if isinstance(g, Germ) else g
        if isinstance(g, Germ) and g.base != v:
            raise errors.StarSupportMismatch(f"germ stored at {v!r} is based at {g.base!r}")
        norm[v] = make_germ(complex_, v, values)
    bundle = MetrizedBundle(complex_, norm)
    for f in complex_.faces:
        if len(f) < 2 or complex_.spaces[f].dim == 0:
            continue
        ordered = complex_.ordered(f)
        first = ordered[0]
        # compatibility is an equivalence, so comparing against one vertex suffices
        for other in ordered[1:]:
            if not _differ_linearly(complex_, norm[first], norm[other], f):
                raise errors.IncompatibleGerms(f, first, other)
    return bundle


def _differ_linearly(complex_: WeightedComplex, a: Germ, b: Germ, face) -> bool:
    common = complex_.face_star(face)
    diff = {k: a.values[k] - b.values[k] for k in common}
    return complex_.spaces[face].is_trivial(derivative_of_values(complex_, diff, face))


def trivial_bundle(complex_: WeightedComplex, phi: SimpleFunction) -> MetrizedBundle:
    """The bundle whose germs are all restrictions of one global function."""
    check_function(complex_, phi)
    return validate_metrization(
        complex_, {v: {k: phi.values[k] for k in complex_.star(v)} for v in complex_.vertices}
    )


def germ_derivative(bundle: MetrizedBundle, v, face: Iterable) -> Vector:
    """``d_I phi_v`` for a face ``I`` containing ``v``."""
    f = bundle.complex.face(face)
    if v not in f:
        raise errors.UnknownFace(f)
    return derivative_of_values(bundle.complex, bundle.germs[v].values, f)


def curvature(bundle: MetrizedBundle) -> dict:
    """The classes ``d_i phi_i`` in ``N^1(D_i)``, one per vertex."""
    return {v: germ_derivative(bundle, v, (v,)) for v in bundle.complex.vertices}


def compatibility_check(bundle: MetrizedBundle) -> bool:
    """Whether curvature classes agree after restriction to every common face.

    Holds for every validated bundle; a bundle assembled without validation
    may fail it.
    """
    cx = bundle.complex
    curv = curvature(bundle)
    for f in cx.faces:
        if len(f) < 2:
            continue
        restricted = {cx.restriction((v,), f) @ curv[v] for v in f}
        if len(restricted) != 1:
            return False
    return True


def is_kahler(bundle: MetrizedBundle) -> bool:
    """Every germ is strictly convex along every face containing its base."""
    cx = bundle.complex
    for v in cx.vertices:
        for f in cx.faces_containing((v,)):
            if not classify_class(cx, f, germ_derivative(bundle, v, f))[2]:
                return False
    return True


def linear_germ_basis(complex_: WeightedComplex, v) -> list[dict]:
    """Basis of germs at ``v`` that are linear along every face containing ``v``."""
    star = complex_.star(v)
    pos = {k: n for n, k in enumerate(star)}
    rows = []
    for f in complex_.faces_containing((v,)):
        sp = complex_.spaces[f]
        for comp in range(sp.dim):
            row = [0] * len(star)
            for k, c in sp.classes.items():
                row[pos[k]] += complex_.mult[k] * c[comp]
            rows.append(row)
    return [dict(zip(star, b)) for b in nullspace(rows, len(star))]


def check_linear_germ(complex_: WeightedComplex, v, psi: Mapping) -> Germ:
    g = make_germ(complex_, v, psi)
    for f in complex_.faces_containing((v,)):
        if not complex_.spaces[f].is_trivial(derivative_of_values(complex_, g.values, f)):
            raise errors.NotLinearGerm(f)
    return g


def twist(bundle: MetrizedBundle, v, psi: Mapping) -> MetrizedBundle:
    """Replace ``phi_v`` by ``phi_v + psi`` for a linear germ ``psi`` at ``v``."""
    g = check_linear_germ(bundle.complex, v, psi.values if isinstance(psi, Germ) else psi)
    germs = dict(bundle.germs)
    germs[v] = germs[v] + g
    return MetrizedBundle(bundle.complex, germs)


def equal_up_to_twist(a: MetrizedBundle, b: MetrizedBundle) -> bool:
    """Whether the two metrizations differ vertex-wise by linear germs."""
    if a.complex != b.complex:
        return False
    cx = a.complex
    for v in cx.vertices:
        diff = a.germs[v] - b.germs[v]
        for f in cx.faces_containing((v,)):
            if not cx.spaces[f].is_trivial(derivative_of_values(cx, diff.values, f)):
                return False
    return True
