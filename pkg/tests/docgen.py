"""Random documents of every kind."""

from __future__ import annotations

import random

from skeleton_kit import generators
from skeleton_kit.bundles import curvature
from skeleton_kit.decomp import enumerate_data
from skeleton_kit.docformat import Bounds, Document


def random_document(rng: random.Random) -> Document:
    kind = rng.choice(["complex", "function", "bundle", "morphism", "skeleton", "cocycle", "germ_family", "curvature", "datum", "bounds"])
    if kind in ("skeleton", "cocycle", "germ_family"):
        skel = generators.random_skeleton(rng, max_vertices=6)
        value = {
            "skeleton": skel,
            "cocycle": generators.random_cocycle(rng, skel),
            "germ_family": generators.random_lin_germs(rng, skel),
        }[kind]
        return Document(kind, value)
    if kind == "datum":
        data = list(enumerate_data((1, 2), (2, 1), rng.randint(0, 2), rng.randint(0, 2)))
        return Document(kind, rng.choice(data))
    if kind == "bounds":
        k = rng.randint(1, 4)
        return Document(kind, Bounds(tuple(range(k)), tuple(rng.randint(0, 3) for _ in range(k))))
    model = generators.random_model(rng, max_vertices=5)
    cx = model.complex
    if kind == "complex":
        return Document(kind, cx)
    if kind == "function":
        return Document(kind, generators.random_function(rng, cx))
    if kind == "curvature":
        return Document(kind, curvature(generators.random_bundle(rng, cx)))
    if kind == "bundle":
        return Document(kind, generators.random_bundle(rng, cx))
    mor, _ = generators.random_morphism(rng, model, max_vertices=5)
    return Document(kind, mor)
