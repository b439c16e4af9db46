"""Curve skeletons: the Cech complex of linear functions and the degree map.

For an SNC model of a curve the polytope is a connected simple graph.  With
a fixed vertex order, a virtual line bundle is a cocycle of affine
transition functions on the open edges, stored per edge ``j < k`` as the
endpoint values ``(phi_jk(j), phi_jk(k))``, and its degree is

    deg = sum_{j<k} mult_j * mult_k * (phi_jk(k) - phi_jk(j)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import errors
from .bundles import MetrizedBundle, curvature
from .complex import WeightedComplex, _face_key, validate_complex
from .linalg import nullspace, rank, to_fraction


@dataclass(frozen=True)
class CurveSkeleton:
    vertices: tuple  # the order defining j < k
    mult: Mapping
    edges: tuple  # (j, k) with j before k, sorted
    complex: WeightedComplex = field(repr=False, compare=False)
    neighbors: Mapping = field(repr=False, compare=False)

    def index(self, v) -> int:
        return self.complex.index(v)

    def degree_of_vertex(self, v) -> int:
        return len(self.neighbors[v])

    def neighbor_weight(self, v) -> int:
        return sum(self.mult[u] for u in self.neighbors[v])


def _connected(vertices: Sequence, adj: Mapping) -> bool:
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(vertices)


def build_skeleton(vertices, edges: Iterable[Sequence], order: Sequence | None = None) -> CurveSkeleton:
    """Validate a weighted graph and attach its curve-case class data.

    ``vertices`` is an ordered mapping (or sequence of pairs) ``id -> mult``;
    ``order`` overrides the vertex order.  Vertex spaces are one-dimensional
    with ``c_(j,{i}) = 1`` for each neighbour ``j`` and
    ``c_(i,{i}) = -(sum of neighbour multiplicities) / mult_i``; the test
    curve is the identity functional.  Edge spaces are zero-dimensional.
    """
    items = list(vertices.items()) if isinstance(vertices, Mapping) else [tuple(p) for p in vertices]
    if not items:
        raise errors.Empty("a curve skeleton needs at least one vertex")
    mult = dict(items)
    if len(mult) != len(items):
        raise errors.ValidationError("duplicate vertex id")
    if order is None:
        order = [v for v, _ in items]
    order = tuple(order)
    if len(set(order)) != len(order) or set(order) != set(mult):
        raise errors.NotAPermutation("vertex order must list every vertex exactly once")
    for v, m in mult.items():
        if not isinstance(m, int) or isinstance(m, bool) or m <= 0:
            raise errors.ValidationError(f"multiplicity of {v!r} must be a positive integer, got {m!r}")
    pos = {v: n for n, v in enumerate(order)}

    adj: dict = {v: [] for v in order}
    seen = set()
    oriented = []
    for e in edges:
        a, b = tuple(e)
        for v in (a, b):
            if v not in pos:
                raise errors.UnknownVertex(v)
        if a == b:
            raise errors.NotSimple(f"loop at {a!r}")
        key = frozenset((a, b))
        if key in seen:
            raise errors.NotSimple(f"repeated edge {a!r}-{b!r}")
        seen.add(key)
        adj[a].append(b)
        adj[b].append(a)
        oriented.append((a, b) if pos[a] < pos[b] else (b, a))
    if not _connected(order, adj):
        raise errors.Disconnected("the skeleton graph is not connected")
    oriented.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
    neighbors = {v: tuple(sorted(adj[v], key=pos.get)) for v in order}

    spaces = {}
    for v in order:
        classes = {u: [1] for u in neighbors[v]}
        classes[v] = [Fraction(-sum(mult[u] for u in neighbors[v]), mult[v])]
        spaces[(v,)] = {"dim": 1, "classes": classes, "test_curves": [[1]]}
    cx = validate_complex(
        [(v, mult[v]) for v in order],
        [(v,) for v in order] + [e for e in oriented],
        spaces,
    )
    return CurveSkeleton(order, {v: mult[v] for v in order}, tuple(oriented), cx, neighbors)


@dataclass(frozen=True)
class Cocycle:
    """Transition data: ``(j, k) -> (phi_jk(j), phi_jk(k))`` for every edge ``j < k``."""

    pairs: Mapping

    @classmethod
    def of(cls, pairs: Mapping) -> Cocycle:
        return cls({tuple(e): (to_fraction(p[0]), to_fraction(p[1])) for e, p in pairs.items()})

    def __add__(self, other: Cocycle) -> Cocycle:
        return Cocycle({e: (a + other.pairs[e][0], b + other.pairs[e][1]) for e, (a, b) in self.pairs.items()})

    def scale(self, c) -> Cocycle:
        c = to_fraction(c)
        return Cocycle({e: (c * a, c * b) for e, (a, b) in self.pairs.items()})


def zero_cocycle(skel: CurveSkeleton) -> Cocycle:
    return Cocycle({e: (Fraction(0), Fraction(0)) for e in skel.edges})


def check_cocycle(skel: CurveSkeleton, cocycle: Cocycle) -> Cocycle:
    if set(cocycle.pairs) != set(skel.edges):
        extra = set(cocycle.pairs) - set(skel.edges)
        raise errors.CocycleMismatch(
            "cocycle edges do not match the oriented skeleton edges"
            + (f" (unexpected {sorted(extra, key=str)[0]})" if extra else "")
        )
    return cocycle


def check_lin_germs(skel: CurveSkeleton, germs: Mapping) -> dict:
    """Normalize a Lin germ family, enforcing the vertex balancing condition.

    A germ at ``i`` gives values at ``i`` and its neighbours and must satisfy
    ``phi(i) * sum_j mult_j = sum_j mult_j * phi(j)`` over neighbours ``j``.
    """
    out = {}
    for v in skel.vertices:
        if v not in germs:
            raise errors.StarSupportMismatch(f"no germ at vertex {v!r}")
        vals = {u: to_fraction(x) for u, x in germs[v].items()}
        star = (v,) + skel.neighbors[v]
        if set(vals) != set(star):
            raise errors.StarSupportMismatch(f"germ at {v!r} must cover exactly {list(star)}")
        lhs = vals[v] * skel.neighbor_weight(v)
        rhs = sum((skel.mult[u] * vals[u] for u in skel.neighbors[v]), Fraction(0))
        if lhs != rhs:
            raise errors.NotLinearGerm(frozenset((v,)))
        out[v] = {u: vals[u] for u in star}
    for v in germs:
        skel.index(v)
    return out


def _edge_differences(skel: CurveSkeleton, germs: Mapping) -> Cocycle:
    return Cocycle(
        {(j, k): (germs[j][j] - germs[k][j], germs[j][k] - germs[k][k]) for j, k in skel.edges}
    )


def coboundary(skel: CurveSkeleton, germs: Mapping) -> Cocycle:
    """``d0({phi_i})_jk = phi_j - phi_k`` on the open edge ``j < k``."""
    return _edge_differences(skel, check_lin_germs(skel, germs))


def degree(skel: CurveSkeleton, cocycle: Cocycle) -> Fraction:
    check_cocycle(skel, cocycle)
    total = Fraction(0)
    for (j, k), (a, b) in cocycle.pairs.items():
        total += skel.mult[j] * skel.mult[k] * (b - a)
    return total


def bundle_degree(skel: CurveSkeleton, cocycle: Cocycle) -> Fraction:
    """Degree of the bundle represented by ``cocycle``.

    Coboundaries have degree zero, so this only depends on the class of
    ``cocycle`` in ``H^1``.
    """
    return degree(skel, cocycle)


def lin_germ_constraints(skel: CurveSkeleton, v) -> list[list[int]]:
    """The single balancing row on ``(phi(v), phi(neighbours)...)``; empty at an isolated vertex."""
    if not skel.neighbors[v]:
        return []
    return [[skel.neighbor_weight(v)] + [-skel.mult[u] for u in skel.neighbors[v]]]


def cochain_basis(skel: CurveSkeleton) -> list[tuple]:
    """A basis of ``prod_i H^0(Lin|U_i)`` as ``(vertex, germ values)`` pairs."""
    basis = []
    for v in skel.vertices:
        star = (v,) + skel.neighbors[v]
        for vec in nullspace(lin_germ_constraints(skel, v), len(star)):
            basis.append((v, dict(zip(star, vec))))
    return basis


def coboundary_matrix(skel: CurveSkeleton) -> list[list[Fraction]]:
    """Matrix of ``d0`` from :func:`cochain_basis` to the ``2 n_E`` edge coordinates."""
    cols = []
    edge_pos = {e: n for n, e in enumerate(skel.edges)}
    for v, vals in cochain_basis(skel):
        col = [Fraction(0)] * (2 * len(skel.edges))
        for u in skel.neighbors[v]:
            e = (v, u) if (v, u) in edge_pos else (u, v)
            sign = 1 if e[0] == v else -1
            n = edge_pos[e]
            col[2 * n] += sign * vals[e[0]]
            col[2 * n + 1] += sign * vals[e[1]]
        cols.append(col)
    return [list(r) for r in zip(*cols)] if cols and skel.edges else []


@dataclass(frozen=True)
class CechDimensions:
    h0: int  # dim ker d0
    h1: int  # dim coker d0
    rank: int
    cochains: int
    cocycles: int


def cech_dimensions(skel: CurveSkeleton) -> CechDimensions:
    n0 = len(cochain_basis(skel))
    n1 = 2 * len(skel.edges)
    r = rank(coboundary_matrix(skel), n0) if n1 else 0
    return CechDimensions(h0=n0 - r, h1=n1 - r, rank=r, cochains=n0, cocycles=n1)


def h1_dimension(skel: CurveSkeleton) -> int:
    return cech_dimensions(skel).h1


def _reordered(skel: CurveSkeleton, order: tuple) -> CurveSkeleton:
    """Same skeleton under a new vertex order, reusing the already validated class data."""
    pos = {v: n for n, v in enumerate(order)}
    edges = sorted(((a, b) if pos[a] < pos[b] else (b, a) for a, b in skel.edges), key=lambda e: (pos[e[0]], pos[e[1]]))
    cx = skel.complex
    faces = tuple(sorted(cx.faces, key=lambda f: _face_key(pos, f)))
    restrictions = dict(
        sorted(cx.restrictions.items(), key=lambda kv: (_face_key(pos, kv[0][1]), _face_key(pos, kv[0][0])))
    )
    new_cx = WeightedComplex(order, {v: skel.mult[v] for v in order}, faces, {f: cx.spaces[f] for f in faces}, restrictions)
    neighbors = {v: tuple(sorted(skel.neighbors[v], key=pos.get)) for v in order}
    return CurveSkeleton(order, dict(new_cx.mult), tuple(edges), new_cx, neighbors)


def reorder(skel: CurveSkeleton, cocycle: Cocycle, order: Sequence) -> tuple[CurveSkeleton, Cocycle]:
    """Re-express a cocycle for a new vertex order.

    An edge whose orientation flips carries ``phi_kj = -phi_jk``, read at the
    new (first, second) endpoints.
    """
    check_cocycle(skel, cocycle)
    order = tuple(order)
    if len(order) != len(skel.vertices) or set(order) != set(skel.vertices):
        raise errors.NotAPermutation("new order is not a permutation of the vertices")
    new = _reordered(skel, order)
    kept = set(new.edges)
    pairs = {}
    for (j, k), (a, b) in cocycle.pairs.items():
        if (j, k) in kept:
            pairs[(j, k)] = (a, b)
        else:
            pairs[(k, j)] = (-b, -a)
    return new, Cocycle(pairs)


def metrization_to_cocycle(skel: CurveSkeleton, bundle: MetrizedBundle) -> Cocycle:
    """Transition functions ``phi_j - phi_k`` of a metrization on the skeleton's complex."""
    if bundle.complex != skel.complex:
        raise errors.ValidationError("bundle does not live on this skeleton's complex")
    return _edge_differences(skel, {v: g.values for v, g in bundle.germs.items()})


def curvature_degree(skel: CurveSkeleton, bundle: MetrizedBundle) -> Fraction:
    """``sum_i mult_i * deg d_i phi_i``."""
    if bundle.complex != skel.complex:
        raise errors.ValidationError("bundle does not live on this skeleton's complex")
    curv = curvature(bundle)
    return sum((skel.mult[v] * curv[v][0] for v in skel.vertices), Fraction(0))


def lin_germ_space_dimension(skel: CurveSkeleton, v) -> int:
    """Dimension of ``H^0(Lin|U_v)`` computed by exact rank of the balancing constraint."""
    star_size = 1 + len(skel.neighbors[v])
    return star_size - rank(lin_germ_constraints(skel, v), star_size)
