from __future__ import annotations

from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_data, cycle_rank, datum_key
from skeleton_kit import errors
from skeleton_kit.decomp import (
    DecompGraph,
    betti1,
    build_graph,
    canonicalize,
    count,
    derived_marks,
    enumerate_data,
    is_connected,
    is_type,
    make_datum,
    relabel,
)


def test_empty_datum_graph():
    d = make_datum((1, 2), (0, 0), [(), ()], [(), ()])
    g = build_graph(d)
    assert g.vertices == () and g.edges == ()
    assert not is_type(d, 0, 0)


def test_path_and_double_edge():
    path = make_datum((1, 2), (1, 1), [(0,), (0,)], [(0,), (0,)], {((1, 1), (2, 1)): 1})
    assert betti1(build_graph(path)) == 0
    assert is_type(path, 0, 0)
    double = make_datum((1, 2), (1, 1), [(0,), (0,)], [(0,), (0,)], {((2, 1), (1, 1)): 2})
    assert build_graph(double).edges == (((1, 1), (2, 1), 2),)
    assert betti1(build_graph(double)) == 1
    assert is_type(double, 1, 0) and not is_type(double, 0, 0)


def test_betti1_examples():
    tree = DecompGraph(("a", "b", "c"), (("a", "b", 1), ("b", "c", 1)))
    assert betti1(tree) == 0
    triangles = DecompGraph(
        tuple("abcdef"),
        (("a", "b", 1), ("b", "c", 1), ("a", "c", 1), ("d", "e", 1), ("e", "f", 1), ("d", "f", 1)),
    )
    assert betti1(triangles) == 2
    assert not is_connected(triangles)


def test_is_type_examples():
    single = make_datum((1,), (1,), [(3,)], [(2,)])
    assert is_type(single, 3, 2)
    apart = make_datum((1, 2), (1, 1), [(0,), (0,)], [(0,), (0,)])
    assert not is_type(apart, 0, 0)
    joined = make_datum((1, 2), (1, 1), [(0,), (0,)], [(1,), (2,)], {((1, 1), (2, 1)): 1})
    assert is_type(joined, 0, 3)


def test_validation_errors():
    with pytest.raises(errors.ValidationError):
        make_datum((1,), (2,), [(0, 0)], [(0, 0)], {((1, 1), (1, 2)): 1})
    with pytest.raises(errors.ValidationError):
        make_datum((1, 2), (1, 1), [(0,), (0,)], [(0,), (0,)], [((1, 1), (2, 1), 1), ((2, 1), (1, 1), 2)])
    with pytest.raises(errors.ValidationError):
        make_datum((1,), (3,), [(0, 0, 0)], [(0, 0, 0)], bounds=(2,))
    with pytest.raises(errors.DimensionMismatch):
        make_datum((1,), (2,), [(0,)], [(0, 0)])
    with pytest.raises(errors.ValidationError):
        make_datum((1,), (1,), [(-1,)], [(0,)])
    with pytest.raises(errors.ValidationError):
        make_datum((1, 2), (1, 1), [(0,), (0,)], [(0,), (0,)], {((1, 1), (3, 1)): 1})


def test_derived_marks():
    plain = make_datum((1,), (1,), [(0,)], [(2,)])
    assert derived_marks(plain).n_prime == {(1, 1): 2}
    path = make_datum((1, 2), (1, 1), [(0,), (0,)], [(0,), (0,)], {((1, 1), (2, 1)): 1})
    assert derived_marks(path).n_prime == {(1, 1): 1, (2, 1): 1}
    double = make_datum((1, 2), (1, 1), [(0,), (0,)], [(0,), (0,)], {((1, 1), (2, 1)): 2})
    marks = derived_marks(double)
    assert marks.n_prime == {(1, 1): 2, (2, 1): 2}
    assert len(marks.gluing) == 2
    assert marks.labels[(1, 1)] == (("node", (2, 1), 1), ("node", (2, 1), 2))
    assert marks.gluing[0] == (((1, 1), ("node", (2, 1), 1)), ((2, 1), ("node", (1, 1), 1)))


@pytest.mark.parametrize(
    "components, bounds, g, n, expected",
    [((1,), (1,), 0, 3, 1), ((1, 2), (1, 1), 0, 0, 3), ((1,), (2,), 1, 0, 1)],
)
def test_pinned_counts(components, bounds, g, n, expected):
    assert count(components, bounds, g, n) == expected


def test_pinned_contents():
    data = list(enumerate_data((1, 2), (1, 1), 0, 0))
    assert [(d.N, dict(d.edges)) for d in data] == [
        ((0, 1), {}),
        ((1, 0), {}),
        ((1, 1), {((1, 1), (2, 1)): 1}),
    ]
    (only,) = enumerate_data((1,), (2,), 1, 0)
    assert only.N == (1,) and only.g == ((1,),)


SMALL = [
    (comps, bounds, g, n)
    for k in (1, 2, 3, 4)
    for comps in [tuple(range(1, k + 1))]
    for bounds in product(range(3), repeat=k)
    if sum(bounds) <= 4 and (k < 3 or max(bounds) <= 1 or sum(bounds) <= 3)
    for g in (0, 1, 2)
    for n in (0, 1, 2, 3)
]


@pytest.mark.parametrize("components, bounds, g, n", SMALL)
def test_enumeration_matches_oracle(components, bounds, g, n):
    data = list(enumerate_data(components, bounds, g, n))
    keys = [datum_key(d) for d in data]
    assert len(set(keys)) == len(keys)
    assert set(keys) == brute_force_data(components, bounds, g, n)
    sort_keys = [d.sort_key() for d in data]
    assert all(a < b for a, b in zip(sort_keys, sort_keys[1:]))
    for d in data:
        assert is_type(d, g, n)
        V = sum(d.N)
        assert all(k <= b for k, b in zip(d.N, bounds))
        assert build_graph(d).edge_total() <= g + V - 1


def test_parallel_enumeration_preserves_order():
    serial = list(enumerate_data((1, 2), (2, 2), 1, 1, workers=1))
    parallel = list(enumerate_data((1, 2), (2, 2), 1, 1, workers=3))
    assert serial == parallel


def test_threads_env(monkeypatch):
    monkeypatch.setenv("SKELETON_KIT_THREADS", "2")
    assert count((1, 2), (1, 2), 0, 1) == count((1, 2), (1, 2), 0, 1, workers=1)
    monkeypatch.setenv("SKELETON_KIT_THREADS", "many")
    with pytest.raises(errors.ValidationError):
        count((1,), (1,), 0, 0)


@st.composite
def data(draw):
    k = draw(st.integers(1, 3))
    comps = tuple(range(1, k + 1))
    N = tuple(draw(st.integers(0, 2)) for _ in comps)
    gs = [tuple(draw(st.integers(0, 2)) for _ in range(c)) for c in N]
    ns = [tuple(draw(st.integers(0, 2)) for _ in range(c)) for c in N]
    verts = [(i, j) for i, c in zip(comps, N) for j in range(1, c + 1)]
    edges = {}
    for x, a in enumerate(verts):
        for b in verts[x + 1:]:
            if a[0] != b[0]:
                edges[(a, b)] = draw(st.integers(0, 2))
    return make_datum(comps, N, gs, ns, edges)


@given(data())
def test_betti1_matches_spanning_forest(d):
    assert betti1(build_graph(d)) == cycle_rank(d.vertices(), dict(d.edges))


@given(data(), st.randoms())
def test_canonicalize(d, rnd):
    c = canonicalize(d)
    assert canonicalize(c) == c
    perms = []
    for k in d.N:
        p = list(range(1, k + 1))
        rnd.shuffle(p)
        perms.append(p)
    shuffled = relabel(d, perms)
    assert canonicalize(shuffled) == c
    assert c.sort_key() <= d.sort_key()
    assert betti1(build_graph(c)) == betti1(build_graph(d))


def test_canonical_orders_by_genus_first():
    d = make_datum((1, 2), (2, 1), [(1, 0), (0,)], [(0, 0), (0,)], {((1, 1), (2, 1)): 1, ((1, 2), (2, 1)): 1})
    c = canonicalize(d)
    assert c.g == ((0, 1), (0,))
    assert canonicalize(relabel(d, [(2, 1), (1,)])) == c


def test_relabel_rejects_non_permutation():
    d = make_datum((1,), (2,), [(0, 0)], [(0, 0)])
    with pytest.raises(errors.NotAPermutation):
        relabel(d, [(1, 1)])


def test_canonical_enumeration_counts_classes():
    labelled = list(enumerate_data((1, 2), (2, 1), 0, 0))
    classes = {canonicalize(d).sort_key() for d in labelled}
    brute = set()
    for d in labelled:
        brute.add(min(relabel(d, (p, tuple(range(1, d.N[1] + 1)))).sort_key() for p in permutations(range(1, d.N[0] + 1))))
    assert classes == brute
