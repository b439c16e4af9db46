"""Weighted Clemens polytopes.

A :class:`WeightedComplex` is the dual intersection complex of an SNC
special fiber: one vertex per component ``D_i`` (with multiplicity
``mult_i``), one face per nonempty stratum ``D_I``.  Each face carries a
finite model of ``N^1(D_I)`` (a :class:`NumClassSpace`) holding the restricted
divisor classes ``c_(i,I) = [D_i]|_{D_I}`` and a list of test curves, and
every inclusion ``I < J`` of faces carries a restriction matrix.

Everything is exact: scalars are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from . import errors
from .linalg import Matrix, Vector, combine, dot, is_zero, to_fraction, vector, zeros

Face = frozenset


@dataclass(frozen=True)
class NumClassSpace:
    """``N^1(D_I)`` modelled as ``Q^dim``.

    ``classes`` maps a vertex ``i`` to ``c_(i,I)``; vertices with a zero class
    are simply absent.  Nef and ample are tested against ``test_curves``.
    """

    dim: int
    classes: Mapping = field(default_factory=dict)
    test_curves: tuple = ()

    @classmethod
    def build(cls, dim: int, classes: Mapping | None = None, test_curves: Iterable = ()) -> NumClassSpace:
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise errors.DimensionMismatch(f"class-space dimension must be a nonnegative integer, got {dim!r}")
        norm = {}
        for v, c in (classes or {}).items():
            vec = vector(c)
            if len(vec) != dim:
                raise errors.DimensionMismatch(f"class of {v!r} has length {len(vec)}, space has dim {dim}")
            if not is_zero(vec):
                norm[v] = vec
        curves = tuple(vector(t) for t in test_curves)
        for t in curves:
            if len(t) != dim:
                raise errors.DimensionMismatch(f"test curve of length {len(t)} in a space of dim {dim}")
        return cls(dim, norm, curves)

    def class_of(self, v) -> Vector:
        return self.classes.get(v, zeros(self.dim))

    def pairings(self, c: Vector) -> tuple:
        return tuple(dot(t, c) for t in self.test_curves)

    def is_trivial(self, c: Vector) -> bool:
        return is_zero(c)

    def is_nef(self, c: Vector) -> bool:
        return all(p >= 0 for p in self.pairings(c))

    def is_ample(self, c: Vector) -> bool:
        # a point carries an ample trivial bundle; in positive dimension the
        # zero class is never ample, even against an empty curve list
        if self.dim == 0:
            return True
        return not is_zero(c) and all(p > 0 for p in self.pairings(c))


def _face_key(index: Mapping, face: Iterable) -> tuple:
    ids = sorted(index[v] for v in face)
    return (len(ids), tuple(ids))


@dataclass(frozen=True)
class WeightedComplex:
    """A validated weighted complex.  Build it with :func:`validate_complex`."""

    vertices: tuple
    mult: Mapping
    faces: tuple
    spaces: Mapping
    restrictions: Mapping = field(repr=False)

    _index: dict = field(init=False, repr=False, compare=False)
    _face_set: frozenset = field(init=False, repr=False, compare=False)
    _face_star: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: k for k, v in enumerate(self.vertices)})
        object.__setattr__(self, "_face_set", frozenset(self.faces))
        object.__setattr__(self, "_face_star", {})

    # lookup helpers

    def index(self, v) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise errors.UnknownVertex(v) from None

    def has_vertex(self, v) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def has_face(self, face: Iterable) -> bool:
        return frozenset(face) in self._face_set

    def face(self, vertices: Iterable) -> Face:
        """Normalize ``vertices`` to a face of the complex or raise UnknownFace."""
        f = frozenset(vertices)
        if f not in self._face_set:
            raise errors.UnknownFace(f)
        return f

    def ordered(self, vertices: Iterable) -> tuple:
        return tuple(sorted(vertices, key=self.index))

    def face_sort_key(self, face: Iterable) -> tuple:
        return _face_key(self._index, face)

    def space(self, face: Iterable) -> NumClassSpace:
        return self.spaces[self.face(face)]

    def dim(self, face: Iterable) -> int:
        return self.space(face).dim

    def class_of(self, v, face: Iterable) -> Vector:
        return self.space(face).class_of(v)

    def restriction(self, smaller: Iterable, larger: Iterable) -> Matrix:
        i, j = self.face(smaller), self.face(larger)
        if i == j:
            return Matrix.identity(self.spaces[i].dim)
        if not i < j:
            raise errors.UnknownFace(i)
        return self.restrictions[(i, j)]

    def face_star(self, face: Iterable) -> tuple:
        """Vertices ``k`` (in order) such that ``face | {k}`` is a face.

        These are the only vertices whose class can be nonzero on ``face``.
        """
        f = self.face(face)
        cached = self._face_star.get(f)
        if cached is None:
            cached = tuple(k for k in self.vertices if (f | {k}) in self._face_set)
            self._face_star[f] = cached
        return cached

    def star(self, v) -> tuple:
        """Closed star of a vertex: ``v`` and every vertex sharing a face with it."""
        return self.face_star((v,))

    def faces_containing(self, face: Iterable) -> tuple:
        f = self.face(face)
        return tuple(g for g in self.faces if f <= g)

    def edges(self) -> tuple:
        return tuple(f for f in self.faces if len(f) == 2)

    def as_raw(self) -> dict:
        """Keyword arguments that rebuild this complex through :func:`validate_complex`."""
        covering = {
            (i, j): m for (i, j), m in self.restrictions.items() if len(j) == len(i) + 1
        }
        return {
            "vertices": [(v, self.mult[v]) for v in self.vertices],
            "faces": [self.ordered(f) for f in self.faces],
            "spaces": dict(self.spaces),
            "restrictions": covering,
        }


def _as_matrix(raw, shape: tuple, pair) -> Matrix:
    if isinstance(raw, Matrix):
        m = raw
    else:
        rows = list(raw)
        try:
            m = Matrix.from_rows(rows, shape[1])
        except ValueError as exc:
            raise errors.DimensionMismatch(f"restriction {pair}: {exc}") from None
    if m.shape != shape:
        raise errors.DimensionMismatch(f"restriction matrix has shape {m.shape}, expected {shape}")
    return m


def validate_complex(
    vertices,
    faces: Iterable[Iterable],
    spaces: Mapping | None = None,
    restrictions: Mapping | None = None,
) -> WeightedComplex:
    """Check every structural and numerical invariant and return the complex.

    ``vertices`` is an ordered mapping or sequence of ``(id, mult)`` pairs.
    ``faces`` must list every face, singletons included; nothing is inferred.
    ``spaces`` maps a face (any iterable of ids) to a :class:`NumClassSpace`
    or to a dict with keys ``dim``, ``classes``, ``test_curves``; a face with
    no entry gets a zero-dimensional space.  ``restrictions`` maps
    ``(smaller, larger)`` face pairs to matrices with ``dim(larger)`` rows.
    Pairs differing by one vertex are required unless one side has dimension
    zero; longer pairs are composed and, when supplied, cross-checked.
    """
    items = list(vertices.items()) if isinstance(vertices, Mapping) else [tuple(p) for p in vertices]
    verts = tuple(v for v, _ in items)
    if len(set(verts)) != len(verts):
        raise errors.ValidationError("duplicate vertex id")
    mult = {}
    for v, m in items:
        if not isinstance(v, Hashable):
            raise errors.ValidationError(f"vertex id {v!r} is not hashable")
        if not isinstance(m, int) or isinstance(m, bool) or m <= 0:
            raise errors.ValidationError(f"multiplicity of {v!r} must be a positive integer, got {m!r}")
        mult[v] = m
    index = {v: k for k, v in enumerate(verts)}

    face_set = set()
    for f in faces:
        fs = frozenset(f)
        if not fs:
            raise errors.ValidationError("empty face")
        for v in fs:
            if v not in index:
                raise errors.UnknownVertex(v)
        face_set.add(fs)
    for v in verts:
        if frozenset((v,)) not in face_set:
            raise errors.MissingSingleton(v)
    for f in face_set:
        if len(f) > 1:
            for v in f:
                sub = f - {v}
                if sub not in face_set:
                    raise errors.NotSubsetClosed(f, sub)
    ordered_faces = tuple(sorted(face_set, key=lambda f: _face_key(index, f)))

    norm_spaces = {}
    for key, sp in (spaces or {}).items():
        f = frozenset(key)
        if f not in face_set:
            raise errors.UnknownFace(f)
        if isinstance(sp, NumClassSpace):
            sp = NumClassSpace.build(sp.dim, sp.classes, sp.test_curves)
        else:
            sp = NumClassSpace.build(sp.get("dim", 0), sp.get("classes"), sp.get("test_curves", ()))
        for v in sp.classes:
            if v not in index:
                raise errors.UnknownVertex(v)
        norm_spaces[f] = sp
    for f in ordered_faces:
        norm_spaces.setdefault(f, NumClassSpace(0, {}, ()))
    norm_spaces = {f: norm_spaces[f] for f in ordered_faces}

    for f in ordered_faces:
        sp = norm_spaces[f]
        for v in sp.classes:
            if (f | {v}) not in face_set:
                raise errors.NonAdjacentClassNonzero(f, v)
        residual = combine(((Fraction(mult[v]), c) for v, c in sp.classes.items()), sp.dim)
        if not is_zero(residual):
            raise errors.SpecialFiberRelationViolated(f, residual)

    given = {}
    for (a, b), raw in (restrictions or {}).items():
        i, j = frozenset(a), frozenset(b)
        if i not in face_set:
            raise errors.UnknownFace(i)
        if j not in face_set:
            raise errors.UnknownFace(j)
        if not i < j:
            raise errors.RestrictionIncoherent((i, j), "source face is not a proper subface of the target")
        given[(i, j)] = _as_matrix(raw, (norm_spaces[j].dim, norm_spaces[i].dim), (sorted(i, key=str), sorted(j, key=str)))

    completed: dict = {}
    for j in ordered_faces:
        subs = [frozenset(s) for r in range(len(j) - 1, 0, -1) for s in combinations(sorted(j, key=index.get), r)]
        # larger subfaces first so every composition target is already known
        for i in subs:
            dj, di = norm_spaces[j].dim, norm_spaces[i].dim
            if len(j) - len(i) == 1:
                if (i, j) in given:
                    completed[(i, j)] = given[(i, j)]
                elif di == 0 or dj == 0:
                    completed[(i, j)] = Matrix.zero(dj, di)
                else:
                    raise errors.RestrictionIncoherent((i, j), "missing restriction matrix")
                continue
            candidates = []
            for v in sorted(j - i, key=index.get):
                k = i | {v}
                candidates.append(completed[(k, j)] @ completed[(i, k)])
            first = candidates[0]
            if any(c != first for c in candidates[1:]):
                raise errors.RestrictionIncoherent((i, j), "compositions through different intermediate faces disagree")
            if (i, j) in given and given[(i, j)] != first:
                raise errors.RestrictionIncoherent((i, j), "supplied matrix differs from the composite")
            completed[(i, j)] = first

    for (i, j), m in completed.items():
        if len(j) - len(i) != 1:
            continue
        si, sj = norm_spaces[i], norm_spaces[j]
        for v in set(si.classes) | set(sj.classes):
            if m @ si.class_of(v) != sj.class_of(v):
                raise errors.RestrictionIncoherent((i, j), f"does not carry the class of {v!r}")

    ordered_restr = dict(
        sorted(completed.items(), key=lambda kv: (_face_key(index, kv[0][1]), _face_key(index, kv[0][0])))
    )
    return WeightedComplex(verts, mult, ordered_faces, norm_spaces, ordered_restr)


def vertex_embedding(complex_: WeightedComplex, v) -> Vector:
    """Ambient coordinates of vertex ``v``: ``e_v / mult_v`` in ``Q^{I_X}``."""
    k = complex_.index(v)
    out = [Fraction(0)] * len(complex_.vertices)
    out[k] = Fraction(1, complex_.mult[v])
    return tuple(out)


def check_weights(complex_: WeightedComplex, weights: Mapping) -> dict:
    lam = {}
    for v, w in weights.items():
        complex_.index(v)
        w = to_fraction(w)
        if w < 0:
            raise errors.NegativeCoordinate(f"barycentric weight {w} at {v!r}")
        lam[v] = w
    if sum(lam.values(), Fraction(0)) != 1:
        raise errors.NotOnFace("barycentric weights do not sum to 1")
    if not complex_.has_face(lam):
        raise errors.NotOnFace(f"{sorted(lam, key=str)} is not a face")
    return lam


def barycentric_to_ambient(complex_: WeightedComplex, weights: Mapping) -> Vector:
    """Ambient point ``x`` with ``x_i = lambda_i / mult_i``.

    ``weights`` maps the vertices of a face to nonnegative weights summing
    to one; zero weights are allowed.
    """
    lam = check_weights(complex_, weights)
    out = [Fraction(0)] * len(complex_.vertices)
    for v, w in lam.items():
        out[complex_.index(v)] = w / complex_.mult[v]
    return tuple(out)


def ambient_to_barycentric(complex_: WeightedComplex, point, face: Iterable | None = None) -> dict:
    """Inverse of :func:`barycentric_to_ambient`.

    Returns weights over ``face`` if given (which must contain the support of
    the point), otherwise over the support itself.
    """
    x = vector(point)
    if len(x) != len(complex_.vertices):
        raise errors.DimensionMismatch(f"ambient point has {len(x)} coordinates, complex has {len(complex_.vertices)}")
    if any(c < 0 for c in x):
        raise errors.NegativeCoordinate("ambient point has a negative coordinate")
    support = {v for v, c in zip(complex_.vertices, x) if c != 0}
    target = complex_.face(face) if face is not None else support
    if not support <= target or not complex_.has_face(target):
        raise errors.NotOnFace("point does not lie on the requested face")
    lam = {v: complex_.mult[v] * x[complex_.index(v)] for v in complex_.ordered(target)}
    if sum(lam.values(), Fraction(0)) != 1:
        raise errors.NotOnFace("sum of mult_i * x_i is not 1")
    return lam
