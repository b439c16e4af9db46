"""Morphisms of weighted complexes and pullbacks along them.

A morphism ``X -> Y`` of SNC models is recorded combinatorially by

* ``matrix[i][j]``: the coefficient of ``D_i`` in ``f^* D_j`` (nonnegative
  integers, with ``sum_j mult'_j A[i][j] = mult_i``);
* ``face_images[I]``: the smallest target face ``J(I)`` whose stratum
  receives ``D_I``; it is forced to be the support of the rows of ``I``;
* ``class_pullbacks[I]``: the pullback ``N^1(D_J(I)) -> N^1(D_I)``.

The induced map of polytopes is the transpose of ``A`` in ambient
coordinates, affine on every face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import errors
from .bundles import MetrizedBundle, curvature, validate_metrization
from .complex import WeightedComplex, check_weights
from .functions import SimpleFunction, check_function, derivative
from .linalg import Matrix, Vector, combine, zeros


@dataclass(frozen=True)
class SkeletonMorphism:
    source: WeightedComplex
    target: WeightedComplex
    matrix: Mapping  # source vertex -> {target vertex: positive int}
    face_images: Mapping
    class_pullbacks: Mapping

    def entry(self, i, j) -> int:
        return self.matrix[i].get(j, 0)

    def dense_rows(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in self.target.vertices] for i in self.source.vertices]

    def image(self, face: Iterable) -> frozenset:
        return self.face_images[self.source.face(face)]

    def least_image_vertex(self, v):
        return self.target.ordered(self.image((v,)))[0]


def _read_matrix(source: WeightedComplex, target: WeightedComplex, matrix) -> dict:
    if isinstance(matrix, Mapping):
        rows = {}
        for i in matrix:
            source.index(i)
        for i in source.vertices:
            row = matrix.get(i, {})
            for j in row:
                target.index(j)
            rows[i] = dict(row)
    else:
        data = [list(r) for r in matrix]
        if len(data) != len(source.vertices) or any(len(r) != len(target.vertices) for r in data):
            raise errors.DimensionMismatch(
                f"pullback matrix must be {len(source.vertices)} x {len(target.vertices)}"
            )
        rows = {i: dict(zip(target.vertices, r)) for i, r in zip(source.vertices, data)}
    out = {}
    for i, row in rows.items():
        clean = {}
        for j in target.vertices:
            a = row.get(j, 0)
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise errors.ValidationError(
                    f"pullback matrix entry ({i!r}, {j!r}) must be a nonnegative integer, got {a!r}"
                )
            if a:
                clean[j] = a
        out[i] = clean
    return out


def validate_morphism(
    source: WeightedComplex,
    target: WeightedComplex,
    matrix,
    class_pullbacks: Mapping,
    face_images: Mapping | None = None,
) -> SkeletonMorphism:
    """Check the degree relation, face images, class coherence and naturality.

    ``matrix`` is either a dense ``|I_X| x |I_Y|`` nested list in vertex
    order or a mapping ``i -> {j: A[i][j]}``.  ``class_pullbacks`` maps each
    source face to a ``dim(I) x dim(J(I))`` matrix; faces whose source space
    or image space is zero-dimensional may be omitted.  ``face_images`` is
    optional; when given it must agree with the recomputed minimal images.
    """
    rows = _read_matrix(source, target, matrix)
    for i in source.vertices:
        got = sum(target.mult[j] * a for j, a in rows[i].items())
        if got != source.mult[i]:
            raise errors.DegreeRelationViolated(i, got, source.mult[i])

    images = {}
    for f in source.faces:
        img = frozenset(j for i in f for j in rows[i])
        if not target.has_face(img):
            raise errors.ImageNotAFace(f, img)
        images[f] = img
    for key, img in (face_images or {}).items():
        f = source.face(key)
        if frozenset(img) != images[f]:
            raise errors.ImageNotAFace(f, frozenset(img))

    betas = {}
    given = {source.face(k): v for k, v in class_pullbacks.items()}
    for f in source.faces:
        shape = (source.spaces[f].dim, target.spaces[images[f]].dim)
        raw = given.get(f)
        if raw is None:
            if shape[0] and shape[1]:
                raise errors.DimensionMismatch(f"no class pullback for face {sorted(f, key=str)}")
            betas[f] = Matrix.zero(*shape)
            continue
        m = raw if isinstance(raw, Matrix) else Matrix.from_rows(list(raw), shape[1])
        if m.shape != shape:
            raise errors.DimensionMismatch(
                f"class pullback on {sorted(f, key=str)} has shape {m.shape}, expected {shape}"
            )
        betas[f] = m

    for f in source.faces:
        sp, tsp = source.spaces[f], target.spaces[images[f]]
        for j in target.vertices:
            lhs = betas[f] @ tsp.class_of(j)
            rhs = combine(((Fraction(rows[i].get(j, 0)), sp.class_of(i)) for i in source.face_star(f)), sp.dim)
            if lhs != rhs:
                raise errors.ClassIncoherent(f, j)

    for (small, large), rho in source.restrictions.items():
        if len(large) != len(small) + 1:
            continue
        rho_t = target.restriction(images[small], images[large])
        if rho @ betas[small] != betas[large] @ rho_t:
            raise errors.NaturalityViolated(small, large)

    return SkeletonMorphism(source, target, rows, images, betas)


def identity_morphism(complex_: WeightedComplex) -> SkeletonMorphism:
    return validate_morphism(
        complex_,
        complex_,
        {v: {v: 1} for v in complex_.vertices},
        {f: Matrix.identity(complex_.spaces[f].dim) for f in complex_.faces},
    )


def compose(f: SkeletonMorphism, g: SkeletonMorphism) -> SkeletonMorphism:
    """``g o f`` for ``f: X -> Y`` and ``g: Y -> Z``; the result is revalidated."""
    if f.target != g.source:
        raise errors.ValidationError("morphisms are not composable")
    rows = {}
    for i in f.source.vertices:
        row: dict = {}
        for j, a in f.matrix[i].items():
            for k, b in g.matrix[j].items():
                row[k] = row.get(k, 0) + a * b
        rows[i] = row
    betas = {face: f.class_pullbacks[face] @ g.class_pullbacks[f.face_images[face]] for face in f.source.faces}
    return validate_morphism(f.source, g.target, rows, betas)


def map_point(morphism: SkeletonMorphism, weights: Mapping) -> dict:
    """Image of a source point given by barycentric weights.

    Returns barycentric weights on the image face ``J(I)`` of the face
    spanned by ``weights``' keys (zero entries included).
    """
    src, tgt = morphism.source, morphism.target
    lam = check_weights(src, weights)
    img = morphism.image(lam)
    out = {j: Fraction(0) for j in tgt.ordered(img)}
    for i, w in lam.items():
        for j, a in morphism.matrix[i].items():
            out[j] += tgt.mult[j] * a * w / src.mult[i]
    return out


def map_ambient(morphism: SkeletonMorphism, point) -> Vector:
    """``A^T x`` in ambient coordinates."""
    src, tgt = morphism.source, morphism.target
    out = list(zeros(len(tgt.vertices)))
    for i, x in zip(src.vertices, point, strict=True):
        for j, a in morphism.matrix[i].items():
            out[tgt.index(j)] += a * x
    return tuple(out)


def _pull_values(morphism: SkeletonMorphism, values: Mapping, vertices: Iterable) -> dict:
    src, tgt = morphism.source, morphism.target
    out = {}
    for i in vertices:
        total = Fraction(0)
        for j, a in morphism.matrix[i].items():
            try:
                total += tgt.mult[j] * a * values[j]
            except KeyError:
                raise errors.ImageGermUndefined(
                    f"target germ has no value at {j!r}, needed at source vertex {i!r}"
                ) from None
        out[i] = total / src.mult[i]
    return out


def pullback_function(morphism: SkeletonMorphism, phi: SimpleFunction) -> SimpleFunction:
    """``(S_f^* phi)(i) = sum_j mult'_j A[i][j] phi(j) / mult_i``."""
    check_function(morphism.target, phi)
    return SimpleFunction(_pull_values(morphism, phi.values, morphism.source.vertices))


def pullback_bundle(morphism: SkeletonMorphism, bundle: MetrizedBundle) -> MetrizedBundle:
    """Pull back germ-wise, using the target germ at the least vertex of ``J({i})``."""
    if bundle.complex != morphism.target:
        raise errors.ValidationError("bundle does not live on the morphism's target")
    src = morphism.source
    germs = {}
    for i in src.vertices:
        j0 = morphism.least_image_vertex(i)
        germs[i] = _pull_values(morphism, bundle.germs[j0].values, src.star(i))
    return validate_metrization(src, germs)


def pullback_curvature(morphism: SkeletonMorphism, curv: Mapping, choose=None) -> dict:
    """``beta_{i}`` applied to the target curvature restricted to ``J({i})``.

    ``choose(i, image_face)`` may pick which vertex of the image face supplies
    the class; by default the least one.  Any choice gives the same answer
    when the curvature comes from a bundle.
    """
    tgt = morphism.target
    out = {}
    for i in morphism.source.vertices:
        img = morphism.image((i,))
        j = choose(i, img) if choose is not None else tgt.ordered(img)[0]
        if j not in img:
            raise errors.ValidationError(f"chosen vertex {j!r} is not in the image face of {i!r}")
        restricted = tgt.restriction((j,), img) @ tuple(curv[j])
        out[i] = morphism.class_pullbacks[frozenset((i,))] @ restricted
    return out


def check_derivative_functoriality(morphism: SkeletonMorphism, phi: SimpleFunction) -> bool:
    """``beta_I(d_J(I) phi) == d_I(S_f^* phi)`` on every source face."""
    pulled = pullback_function(morphism, phi)
    for f in morphism.source.faces:
        lhs = morphism.class_pullbacks[f] @ derivative(morphism.target, phi, morphism.face_images[f])
        if lhs != derivative(morphism.source, pulled, f):
            return False
    return True


def check_curvature_functoriality(morphism: SkeletonMorphism, bundle: MetrizedBundle) -> bool:
    """Pullback of the curvature equals the curvature of the pullback."""
    return pullback_curvature(morphism, curvature(bundle)) == curvature(pullback_bundle(morphism, bundle))
