"""Decomposition data of stable maps into an SNC special fiber.

A datum splits a stable map into pieces ``(i, j)``, ``j = 1..N_i``, each
mapping into component ``i``, with genus ``g_ij``, ``n_ij`` inherited marked
points and ``n_ij^{i'j'}`` nodes joining ``(i, j)`` to ``(i', j')``.  Nodes
never join two pieces over the same component.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from . import errors

THREADS_ENV = "SKELETON_KIT_THREADS"


def _nonneg(x, what) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise errors.ValidationError(f"{what} must be a nonnegative integer, got {x!r}")
    return x


@dataclass(frozen=True)
class DecompositionDatum:
    components: tuple
    N: tuple
    g: tuple  # g[c][j-1] for the c-th component
    n: tuple
    edges: Mapping  # ((i, j), (i', j')) with the first label earlier -> count > 0

    def vertices(self) -> list[tuple]:
        return [(i, j) for i, k in zip(self.components, self.N) for j in range(1, k + 1)]

    def _pos(self) -> dict:
        return {v: p for p, v in enumerate(self.vertices())}

    def genus(self, v) -> int:
        c = self.components.index(v[0])
        return self.g[c][v[1] - 1]

    def marks(self, v) -> int:
        c = self.components.index(v[0])
        return self.n[c][v[1] - 1]

    def edge_count(self, a, b) -> int:
        pos = self._pos()
        key = (a, b) if pos[a] < pos[b] else (b, a)
        return self.edges.get(key, 0)

    def cross_pairs(self) -> list[tuple]:
        verts = self.vertices()
        return [(a, b) for p, a in enumerate(verts) for b in verts[p + 1:] if a[0] != b[0]]

    def sort_key(self) -> tuple:
        return (
            self.N,
            self.g,
            self.n,
            tuple(self.edges.get(p, 0) for p in self.cross_pairs()),
        )


def make_datum(
    components: Sequence,
    N: Sequence[int],
    g: Sequence[Sequence[int]],
    n: Sequence[Sequence[int]],
    edges: Mapping | Iterable = (),
    bounds: Sequence[int] | None = None,
) -> DecompositionDatum:
    """Validate and normalize a decomposition datum.

    ``edges`` maps label pairs ``((i, j), (i', j'))`` to counts (or is an
    iterable of ``(a, b, count)``).  Both orientations may be given as long as
    they agree.
    """
    comps = tuple(components)
    if len(set(comps)) != len(comps):
        raise errors.ValidationError("duplicate component id")
    N = tuple(_nonneg(x, "N_i") for x in N)
    if len(N) != len(comps):
        raise errors.DimensionMismatch("N must have one entry per component")
    if bounds is not None:
        if len(bounds) != len(comps):
            raise errors.DimensionMismatch("bounds must have one entry per component")
        for i, k, b in zip(comps, N, bounds):
            if k > b:
                raise errors.ValidationError(f"N_{i} = {k} exceeds its bound {b}")
    gg, nn = [], []
    for name, table, out in (("g", g, gg), ("n", n, nn)):
        rows = list(table)
        if len(rows) != len(comps):
            raise errors.DimensionMismatch(f"{name} must have one row per component")
        for i, k, row in zip(comps, N, rows):
            row = tuple(_nonneg(x, f"{name}_{i}j") for x in row)
            if len(row) != k:
                raise errors.DimensionMismatch(f"{name} row of component {i} must have N_{i} = {k} entries")
            out.append(row)
    datum = DecompositionDatum(comps, N, tuple(gg), tuple(nn), {})
    pos = datum._pos()
    items = edges.items() if isinstance(edges, Mapping) else (((a, b), c) for a, b, c in edges)
    norm: dict = {}
    for (a, b), c in items:
        a, b = tuple(a), tuple(b)
        for v in (a, b):
            if v not in pos:
                raise errors.ValidationError(f"edge endpoint {v} is not a label of this datum")
        c = _nonneg(c, "edge count")
        if a[0] == b[0]:
            if c:
                raise errors.ValidationError(f"nodes between {a} and {b} join pieces over the same component")
            continue
        key = (a, b) if pos[a] < pos[b] else (b, a)
        if key in norm and norm[key] != c:
            raise errors.ValidationError(f"edge counts for {a} and {b} are not symmetric")
        norm[key] = c
    clean = {k: norm[k] for k in sorted(norm, key=lambda k: (pos[k[0]], pos[k[1]])) if norm[k]}
    return DecompositionDatum(comps, N, tuple(gg), tuple(nn), clean)


@dataclass(frozen=True)
class DecompGraph:
    vertices: tuple
    edges: tuple  # (a, b, multiplicity)

    def edge_total(self) -> int:
        return sum(m for _, _, m in self.edges)


def build_graph(datum: DecompositionDatum) -> DecompGraph:
    return DecompGraph(tuple(datum.vertices()), tuple((a, b, c) for (a, b), c in datum.edges.items()))


def _components(graph: DecompGraph) -> int:
    parent = {v: v for v in graph.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(parent)
    for a, b, m in graph.edges:
        if m and find(a) != find(b):
            parent[find(a)] = find(b)
            count -= 1
    return count


def is_connected(graph: DecompGraph) -> bool:
    return bool(graph.vertices) and _components(graph) == 1


def betti1(graph: DecompGraph) -> int:
    """``E - V + #components``."""
    return graph.edge_total() - len(graph.vertices) + _components(graph)


def is_type(datum: DecompositionDatum, g: int, n: int) -> bool:
    """Connected, ``b1 + sum g_ij = g`` and ``sum n_ij = n``.  The empty datum is never of any type."""
    graph = build_graph(datum)
    if not is_connected(graph):
        return False
    return (
        betti1(graph) + sum(map(sum, datum.g)) == g
        and sum(map(sum, datum.n)) == n
    )


@dataclass(frozen=True)
class MarkLabels:
    n_prime: Mapping  # (i, j) -> n'_ij
    labels: Mapping  # (i, j) -> tuple of labels
    gluing: tuple  # pairs of labels glued into a node


def derived_marks(datum: DecompositionDatum) -> MarkLabels:
    """Marked points after normalizing the nodes, with their labels.

    Piece ``(i, j)`` carries labels ``("mark", l)`` for its own marked points
    and ``("node", (i', j'), l)`` for ``l = 1..n_ij^{i'j'}``; the node label at
    ``(i, j)`` towards ``(i', j')`` is glued to the one at ``(i', j')``
    towards ``(i, j)`` with the same ``l``.
    """
    verts = datum.vertices()
    labels = {v: [("mark", l) for l in range(1, datum.marks(v) + 1)] for v in verts}
    gluing = []
    for (a, b), c in datum.edges.items():
        for l in range(1, c + 1):
            labels[a].append(("node", b, l))
            labels[b].append(("node", a, l))
            gluing.append(((a, ("node", b, l)), (b, ("node", a, l))))
    frozen = {v: tuple(sorted(ls, key=lambda x: (x[0] == "node", x[1:]))) for v, ls in labels.items()}
    return MarkLabels({v: len(frozen[v]) for v in verts}, frozen, tuple(gluing))


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _data_for_sizes(components: tuple, N: tuple, g: int, n: int) -> list[DecompositionDatum]:
    verts = [(i, j) for i, k in zip(components, N) for j in range(1, k + 1)]
    V = len(verts)
    if V == 0:
        return []
    pairs = [(a, b) for p, a in enumerate(verts) for b in verts[p + 1:] if a[0] != b[0]]
    shape = [k for k in N]
    out = []
    # connected => E >= V - 1, and b1 = E - V + 1 <= g
    for E in range(V - 1, V + g):
        for counts in _compositions(E, len(pairs)):
            edges = {p: c for p, c in zip(pairs, counts) if c}
            graph = DecompGraph(tuple(verts), tuple((a, b, c) for (a, b), c in edges.items()))
            if not is_connected(graph):
                continue
            rest = g - (E - V + 1)
            for gs in _compositions(rest, V):
                g_rows = _split(gs, shape)
                for ns in _compositions(n, V):
                    out.append(DecompositionDatum(components, N, g_rows, _split(ns, shape), edges))
    out.sort(key=DecompositionDatum.sort_key)
    return out


def _split(flat: tuple, shape: Sequence[int]) -> tuple:
    rows, k = [], 0
    for s in shape:
        rows.append(tuple(flat[k:k + s]))
        k += s
    return tuple(rows)


def _job(args):
    return _data_for_sizes(*args)


def worker_count(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise errors.ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def enumerate_data(
    components: Sequence,
    bounds: Sequence[int],
    g: int,
    n: int,
    workers: int | None = None,
) -> Iterator[DecompositionDatum]:
    """All data of type ``(g, n)`` with ``N_i <= bounds[i]``, in increasing :meth:`sort_key` order.

    The outer loop over ``(N_i)`` is lexicographic and may be spread over
    ``workers`` processes (default: ``$SKELETON_KIT_THREADS`` or 1); results
    are merged back in order.
    """
    comps = tuple(components)
    if len(bounds) != len(comps):
        raise errors.DimensionMismatch("bounds must have one entry per component")
    for b in bounds:
        _nonneg(b, "bound")
    _nonneg(g, "g")
    _nonneg(n, "n")
    jobs = [(comps, N, g, n) for N in product(*(range(b + 1) for b in bounds))]
    workers = worker_count(workers)
    if workers == 1 or len(jobs) < 2:
        for job in jobs:
            yield from _job(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_job, jobs):
            yield from chunk


def count(components: Sequence, bounds: Sequence[int], g: int, n: int, workers: int | None = None) -> int:
    return sum(1 for _ in enumerate_data(components, bounds, g, n, workers))


def relabel(datum: DecompositionDatum, perms: Sequence[Sequence[int]]) -> DecompositionDatum:
    """Apply ``perms[c]`` (new index of old piece ``j`` at position ``j-1``) within each component."""
    new_label = {}
    g_rows, n_rows = [], []
    for c, (i, k) in enumerate(zip(datum.components, datum.N)):
        p = perms[c]
        if sorted(p) != list(range(1, k + 1)):
            raise errors.NotAPermutation(f"relabeling of component {i} is not a permutation of 1..{k}")
        g_row, n_row = [0] * k, [0] * k
        for j in range(1, k + 1):
            new_label[(i, j)] = (i, p[j - 1])
            g_row[p[j - 1] - 1] = datum.g[c][j - 1]
            n_row[p[j - 1] - 1] = datum.n[c][j - 1]
        g_rows.append(tuple(g_row))
        n_rows.append(tuple(n_row))
    edges = {(new_label[a], new_label[b]): m for (a, b), m in datum.edges.items()}
    return make_datum(datum.components, datum.N, g_rows, n_rows, edges)


def canonicalize(datum: DecompositionDatum) -> DecompositionDatum:
    """Least representative under relabeling the pieces over each component."""
    choices = [[tuple(p) for p in permutations(range(1, k + 1))] for k in datum.N]
    best = None
    for perms in product(*choices):
        cand = relabel(datum, perms)
        if best is None or cand.sort_key() < best.sort_key():
            best = cand
    return best
