"""Random valid instances for property tests and benchmarks.

General complexes come from a coordinate model: one global space ``Q^m``,
a coordinate subset ``S_I`` per face that shrinks as faces grow, and a random
invertible frame ``M_I`` per face.  A global vector ``C_k`` per vertex then
gives ``c_(k,I) = M_I * C_k|S_I`` and restrictions
``rho_(I->J) = M_J * proj * M_I^-1``, which satisfy every coherence condition
by construction.  Morphisms between two such models are found by solving the
linear conditions on the source vectors and a global class map ``B``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .bundles import MetrizedBundle, linear_germ_basis, validate_metrization
from .complex import WeightedComplex, validate_complex
from .curves import Cocycle, CurveSkeleton, build_skeleton
from .functions import SimpleFunction
from .linalg import Matrix, inverse, nullspace, rank
from .morphisms import SkeletonMorphism, validate_morphism


def small_rational(rng: random.Random, bound: int = 4, denominators=(1, 1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(denominators))


# curve skeletons


def random_skeleton(rng: random.Random, max_vertices: int = 12, max_mult: int = 5, min_vertices: int = 1) -> CurveSkeleton:
    n = rng.randint(min_vertices, max_vertices)
    names = [f"v{k}" for k in range(n)]
    edges = set()
    for k in range(1, n):
        edges.add((names[rng.randrange(k)], names[k]))
    extra = rng.randint(0, n)
    for _ in range(extra):
        a, b = rng.sample(names, 2) if n > 1 else (names[0], names[0])
        if a != b and (a, b) not in edges and (b, a) not in edges:
            edges.add((a, b))
    order = names[:]
    rng.shuffle(order)
    mult = {v: rng.randint(1, max_mult) for v in names}
    return build_skeleton([(v, mult[v]) for v in order], sorted(edges))


def random_lin_germs(rng: random.Random, skel: CurveSkeleton) -> dict:
    """Germs satisfying the balancing condition at every vertex."""
    out = {}
    for v in skel.vertices:
        vals = {u: small_rational(rng) for u in skel.neighbors[v]}
        if vals:
            w = skel.neighbor_weight(v)
            vals[v] = sum((skel.mult[u] * x for u, x in vals.items()), Fraction(0)) / w
        else:
            vals[v] = small_rational(rng)
        out[v] = vals
    return out


def random_cocycle(rng: random.Random, skel: CurveSkeleton) -> Cocycle:
    return Cocycle({e: (small_rational(rng), small_rational(rng)) for e in skel.edges})


def random_star_germs(rng: random.Random, skel: CurveSkeleton) -> dict:
    """Arbitrary star values; every such family is a metrization since edges carry no classes."""
    return {v: {u: small_rational(rng) for u in skel.complex.star(v)} for v in skel.vertices}


def random_skeleton_bundle(rng: random.Random, skel: CurveSkeleton) -> MetrizedBundle:
    return validate_metrization(skel.complex, random_star_germs(rng, skel))


def random_order(rng: random.Random, skel: CurveSkeleton) -> list:
    order = list(skel.vertices)
    rng.shuffle(order)
    return order


# coordinate models of general complexes


@dataclass(frozen=True)
class CoordModel:
    complex: WeightedComplex
    m: int
    select: Mapping  # face -> tuple of global coordinates, increasing
    frames: Mapping  # face -> invertible Matrix
    vectors: Mapping  # vertex -> global vector in Q^m


def _random_invertible(rng: random.Random, d: int) -> Matrix:
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        if rank(rows, d) == d:
            return Matrix.from_rows(rows, d)


def _random_faces(rng: random.Random, verts: list, max_facet: int) -> set:
    faces = {frozenset((v,)) for v in verts}
    for _ in range(rng.randint(0, 2 * len(verts))):
        k = rng.randint(2, min(max_facet, len(verts))) if len(verts) > 1 else 1
        facet = rng.sample(verts, k)
        for r in range(1, len(facet) + 1):
            for sub in combinations(facet, r):
                faces.add(frozenset(sub))
    return faces


def _ordered_faces(faces, index) -> list:
    return sorted(faces, key=lambda f: (len(f), sorted(index[v] for v in f)))


def _selections(rng: random.Random, faces: list, m: int, max_dim: int) -> dict:
    """Coordinates visible on each face, nested under restriction.

    Every coordinate lives on a random maximal face and is only visible on its
    subfaces, so all vertices of that face may carry it in their classes.
    """
    maximal = [f for f in faces if not any(f < g for g in faces)]
    wide = [f for f in maximal if len(f) > 1] or maximal
    home = [rng.choice(wide) for _ in range(m)]
    select = {}
    for f in faces:
        pool = {s for s in range(m) if f <= home[s]}
        if len(f) > 1:
            for v in f:
                pool &= set(select[f - {v}])
        pool = sorted(pool)
        k = rng.randint(0, min(max_dim, len(pool)))
        if len(f) == 1 and pool and rng.random() < 0.8:
            k = max(k, 1)
        select[f] = tuple(sorted(rng.sample(pool, k)))
    return select


def _face_data(rng, faces, select, frames, vectors, curves=True) -> tuple[dict, dict]:
    spaces, restr = {}, {}
    for f in faces:
        S, M = select[f], frames[f]
        classes = {v: M @ tuple(vec[s] for s in S) for v, vec in vectors.items()}
        tests = []
        if curves and S:
            tests = [[rng.randint(-1, 3) for _ in S] for _ in range(rng.randint(1, 2))]
        spaces[f] = {"dim": len(S), "classes": classes, "test_curves": tests}
    for f in faces:
        for v in f:
            if len(f) == 1:
                continue
            small = f - {v}
            restr[(small, f)] = restriction_in_model(select, frames, small, f)
    return spaces, restr


def restriction_in_model(select, frames, small, large) -> Matrix:
    S_i, S_j = select[small], select[large]
    pos = {s: k for k, s in enumerate(S_i)}
    proj = Matrix.from_rows([[int(pos[t] == k) for k in range(len(S_i))] for t in S_j], len(S_i))
    inv = inverse(frames[small]) if S_i else Matrix.zero(0, 0)
    return frames[large] @ proj @ inv


def _vertex_vectors(rng: random.Random, verts, mult, faces, select, m) -> dict:
    face_set = set(faces)
    vectors = {v: [Fraction(0)] * m for v in verts}
    for s in range(m):
        allowed = []
        for v in verts:
            ok = all((f | {v}) in face_set for f in faces if s in select[f])
            if ok:
                allowed.append(v)
        if len(allowed) < 2:
            continue
        rng.shuffle(allowed)
        last = allowed[-1]
        total = Fraction(0)
        for v in allowed[:-1]:
            x = Fraction(rng.randint(-3, 3)) if rng.random() < 0.8 else Fraction(0)
            vectors[v][s] = x
            total += mult[v] * x
        vectors[last][s] = -total / mult[last]
    return {v: tuple(vec) for v, vec in vectors.items()}


def random_model(
    rng: random.Random,
    max_vertices: int = 6,
    max_mult: int = 4,
    max_dim: int = 3,
    max_facet: int = 3,
    prefix: str = "x",
) -> CoordModel:
    n = rng.randint(1, max_vertices)
    verts = [f"{prefix}{k}" for k in range(n)]
    mult = {v: rng.randint(1, max_mult) for v in verts}
    index = {v: k for k, v in enumerate(verts)}
    faces = _ordered_faces(_random_faces(rng, verts, max_facet), index)
    m = rng.randint(1, 2 * max_dim + 1)
    select = _selections(rng, faces, m, max_dim)
    frames = {f: _random_invertible(rng, len(select[f])) if select[f] else Matrix.zero(0, 0) for f in faces}
    vectors = _vertex_vectors(rng, verts, mult, faces, select, m)
    spaces, restr = _face_data(rng, faces, select, frames, vectors)
    cx = validate_complex([(v, mult[v]) for v in verts], faces, spaces, restr)
    return CoordModel(cx, m, select, frames, vectors)


def random_complex(rng: random.Random, **kw) -> WeightedComplex:
    return random_model(rng, **kw).complex


# functions and bundles on general complexes


def random_function(rng: random.Random, cx: WeightedComplex) -> SimpleFunction:
    return SimpleFunction({v: small_rational(rng) for v in cx.vertices})


def compatible_germ_space(cx: WeightedComplex) -> tuple[list, list]:
    """Unknown layout ``(vertex, star vertex)`` and a basis of compatible germ families."""
    layout = [(v, u) for v in cx.vertices for u in cx.star(v)]
    pos = {k: n for n, k in enumerate(layout)}
    rows = []
    for f in cx.faces:
        sp = cx.spaces[f]
        if len(f) < 2 or sp.dim == 0:
            continue
        ordered = cx.ordered(f)
        for other in ordered[1:]:
            for comp in range(sp.dim):
                row = [Fraction(0)] * len(layout)
                for k, c in sp.classes.items():
                    coef = cx.mult[k] * c[comp]
                    row[pos[(ordered[0], k)]] += coef
                    row[pos[(other, k)]] -= coef
                rows.append(row)
    return layout, nullspace(rows, len(layout))


def random_bundle(rng: random.Random, cx: WeightedComplex, basis=None) -> MetrizedBundle:
    layout, vecs = basis if basis is not None else compatible_germ_space(cx)
    acc = [Fraction(0)] * len(layout)
    for vec in vecs:
        c = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))
        if c:
            for k, x in enumerate(vec):
                acc[k] += c * x
    germs: dict = {v: {} for v in cx.vertices}
    for (v, u), x in zip(layout, acc):
        germs[v][u] = x
    return validate_metrization(cx, germs)


def random_linear_germ(rng: random.Random, cx: WeightedComplex, v) -> dict:
    basis = linear_germ_basis(cx, v)
    out = {u: Fraction(0) for u in cx.star(v)}
    for b in basis:
        c = small_rational(rng)
        for u, x in b.items():
            out[u] += c * x
    return out


# morphisms


def _source_faces(rng, verts, rows, target: WeightedComplex, max_facet: int) -> set:
    def image(vs):
        return frozenset(j for i in vs for j in rows[i])

    faces = {frozenset((v,)) for v in verts}
    for _ in range(3 * len(verts)):
        if len(verts) < 2:
            break
        k = rng.randint(2, min(max_facet, len(verts)))
        facet = rng.sample(verts, k)
        if target.has_face(image(facet)):
            for r in range(1, k + 1):
                for sub in combinations(facet, r):
                    faces.add(frozenset(sub))
    return faces


def random_morphism(
    rng: random.Random,
    target_model: CoordModel,
    max_vertices: int = 8,
    max_dim: int = 3,
    max_facet: int = 3,
    prefix: str = "s",
) -> tuple[SkeletonMorphism, CoordModel]:
    """A validated morphism into ``target_model`` together with the source model."""
    tgt = target_model.complex
    n = rng.randint(1, max_vertices)
    verts = [f"{prefix}{k}" for k in range(n)]
    tfaces = list(tgt.faces)
    rows = {}
    for v in verts:
        face = rng.choice(tfaces)
        support = [j for j in tgt.ordered(face) if rng.random() < 0.7] or [tgt.ordered(face)[0]]
        rows[v] = {j: rng.randint(1, 2) for j in support}
    mult = {v: sum(tgt.mult[j] * a for j, a in rows[v].items()) for v in verts}
    index = {v: k for k, v in enumerate(verts)}
    faces = _ordered_faces(_source_faces(rng, verts, rows, tgt, max_facet), index)
    image = {f: frozenset(j for i in f for j in rows[i]) for f in faces}
    m = rng.randint(1, 2 * max_dim + 1)
    select = _selections(rng, faces, m, max_dim)
    frames = {f: _random_invertible(rng, len(select[f])) if select[f] else Matrix.zero(0, 0) for f in faces}

    # unknowns: C_i[s] for source vertices, then B[s][t]
    mt = target_model.m
    tsel = target_model.select
    ncols = n * m + m * mt

    def c_var(i, s):
        return index[i] * m + s

    def b_var(s, t):
        return n * m + s * mt + t

    eqs = []
    face_set = set(faces)
    for f in faces:
        for s in select[f]:
            for i in verts:
                if (f | {i}) not in face_set:
                    row = [0] * ncols
                    row[c_var(i, s)] = 1
                    eqs.append(row)
    for f in faces:
        J = image[f]
        for j in tgt.vertices:
            cj = [target_model.vectors[j][t] if t in tsel[J] else 0 for t in range(mt)]
            for s in select[f]:
                row = [Fraction(0)] * ncols
                for t in range(mt):
                    if cj[t]:
                        row[b_var(s, t)] += cj[t]
                for i in verts:
                    a = rows[i].get(j, 0)
                    if a:
                        row[c_var(i, s)] -= a
                eqs.append(row)
    for f in faces:
        for v in f:
            if len(f) == 1:
                continue
            small = f - {v}
            gone = set(tsel[image[small]]) - set(tsel[image[f]])
            for s in select[f]:
                for t in gone:
                    row = [0] * ncols
                    row[b_var(s, t)] = 1
                    eqs.append(row)
    basis = nullspace(eqs, ncols) if eqs else [
        tuple(Fraction(int(k == c)) for k in range(ncols)) for c in range(ncols)
    ]
    sol = [Fraction(0)] * ncols
    for vec in basis:
        c = Fraction(rng.randint(-2, 2))
        if c:
            for k, x in enumerate(vec):
                sol[k] += c * x
    vectors = {i: tuple(sol[c_var(i, s)] for s in range(m)) for i in verts}
    B = Matrix.from_rows([[sol[b_var(s, t)] for t in range(mt)] for s in range(m)], mt)

    spaces, restr = _face_data(rng, faces, select, frames, vectors)
    src = validate_complex([(v, mult[v]) for v in verts], faces, spaces, restr)
    betas = {}
    for f in faces:
        J = image[f]
        S, T = select[f], tsel[J]
        sel_s = Matrix.from_rows([[int(s == k) for k in range(m)] for s in S], m)
        sel_t = Matrix.from_rows([[int(t == k) for t in T] for k in range(mt)], len(T))
        tinv = inverse(target_model.frames[J]) if T else Matrix.zero(0, 0)
        betas[f] = frames[f] @ sel_s @ B @ sel_t @ tinv
    mor = validate_morphism(src, tgt, rows, betas)
    return mor, CoordModel(src, m, select, frames, vectors)
