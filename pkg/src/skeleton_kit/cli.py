"""Command-line interface.

Exit status: 0 on success, 1 when an input fails to parse or validate, 2 on
usage errors (bad flags, unreadable files).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bundles, curves, decomp, docformat, errors, functions, morphisms
from .docformat import Document, load, rat, serialize


class UsageError(Exception):
    pass


def _load(path, kind):
    try:
        return load(path, kind).value
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _face(cx, f) -> str:
    return "{" + ",".join(cx.ordered(f)) + "}"


def _components(raw: str) -> tuple:
    if "," not in raw:
        try:
            k = int(raw)
        except ValueError:
            raise UsageError(f"--components must be a count or a comma list, got {raw!r}") from None
        if k < 0:
            raise UsageError("--components must be nonnegative")
        return tuple(range(1, k + 1))
    return _int_list(raw, "--components")


def _int_list(raw: str, flag: str) -> tuple:
    try:
        vals = tuple(int(x) for x in raw.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"{flag} must be a comma-separated list of integers, got {raw!r}") from None
    if any(v < 0 for v in vals):
        raise UsageError(f"{flag} entries must be nonnegative")
    return vals


# subcommands


def cmd_validate(args, out):
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    docformat.parse(text)
    out.write("OK\n")


def cmd_classify(args, out):
    cx = _load(args.complex, "complex")
    phi = functions.check_function(cx, _load(args.function, "function"))
    cls = functions.classify_faces(cx, phi)
    for f in cx.faces:
        flags = dict(zip(functions.KINDS, cls.entries[f]))
        out.write(_face(cx, f) + " " + " ".join(f"{k}={_bool(v)}" for k, v in flags.items()) + "\n")


def cmd_curvature(args, out):
    b = _load(args.bundle, "bundle")
    out.write(serialize(Document("curvature", bundles.curvature(b))))


def cmd_kahler(args, out):
    out.write(_bool(bundles.is_kahler(_load(args.bundle, "bundle"))) + "\n")


def cmd_pullback(args, out):
    m = _load(args.morphism, "morphism")
    if args.what == "function":
        doc = Document("function", morphisms.pullback_function(m, _load(args.input, "function")))
    elif args.what == "bundle":
        doc = Document("bundle", morphisms.pullback_bundle(m, _load(args.input, "bundle")))
    else:
        curv = _load(args.input, "curvature")
        for v in m.target.vertices:
            if v not in curv:
                raise errors.ValidationError(f"curvature has no class at {v!r}")
            if len(curv[v]) != m.target.spaces[frozenset((v,))].dim:
                raise errors.DimensionMismatch(f"curvature class at {v!r} has the wrong length")
        doc = Document("curvature", morphisms.pullback_curvature(m, curv))
    out.write(serialize(doc))


def cmd_functoriality(args, out):
    m = _load(args.morphism, "morphism")
    if (args.function is None) == (args.bundle is None):
        raise UsageError("give exactly one of --function or --bundle")
    if args.function is not None:
        ok = morphisms.check_derivative_functoriality(m, _load(args.function, "function"))
    else:
        ok = morphisms.check_curvature_functoriality(m, _load(args.bundle, "bundle"))
    out.write(_bool(ok) + "\n")


def cmd_degree(args, out):
    skel = _load(args.skeleton, "skeleton")
    out.write(rat(curves.degree(skel, _load(args.cocycle, "cocycle"))) + "\n")


def cmd_h1(args, out):
    dims = curves.cech_dimensions(_load(args.skeleton, "skeleton"))
    out.write(f"{dims.h1}\n")


def cmd_reorder(args, out):
    skel = _load(args.skeleton, "skeleton")
    coc = _load(args.cocycle, "cocycle")
    order = [x for x in args.order.split(",") if x]
    before = curves.degree(skel, coc)
    new, moved = curves.reorder(skel, coc, order)
    after = curves.degree(new, moved)
    out.write(f"{rat(before)} {rat(after)} {_bool(before == after)}\n")


def cmd_metrization_degree(args, out):
    skel = _load(args.skeleton, "skeleton")
    germs = _load(args.germs, "germ_family")
    b = bundles.validate_metrization(skel.complex, germs)
    cd = curves.curvature_degree(skel, b)
    bd = curves.bundle_degree(skel, curves.metrization_to_cocycle(skel, b))
    out.write(f"{rat(cd)} {rat(bd)} {_bool(cd == bd)}\n")


def _enum_args(args):
    if args.bounds_doc is not None:
        b = _load(args.bounds_doc, "bounds")
        comps, bounds = b.components, b.bounds
    else:
        if args.components is None or args.bounds is None:
            raise UsageError("give --components and --bounds, or --bounds-doc")
        comps, bounds = _components(args.components), _int_list(args.bounds, "--bounds")
    if len(comps) != len(bounds):
        raise UsageError("--bounds needs one entry per component")
    if args.g < 0 or args.n < 0:
        raise UsageError("--g and --n must be nonnegative")
    return comps, bounds


def _stream(args):
    comps, bounds = _enum_args(args)
    data = decomp.enumerate_data(comps, bounds, args.g, args.n, args.threads)
    if getattr(args, "canonical", False):
        seen = set()
        for d in data:
            c = decomp.canonicalize(d)
            key = c.sort_key()
            if key not in seen:
                seen.add(key)
                yield c
    else:
        yield from data


def cmd_enum(args, out):
    if args.count:
        out.write(f"{sum(1 for _ in _stream(args))}\n")
        return
    for d in _stream(args):
        out.write(docformat.record(d) + "\n")


def cmd_count(args, out):
    out.write(f"{sum(1 for _ in _stream(args))}\n")


def cmd_canonical(args, out):
    out.write(serialize(Document("datum", decomp.canonicalize(_load(args.datum, "datum")))))


def cmd_render(args, out):
    if (args.skeleton is None) == (args.datum is None):
        raise UsageError("give exactly one of --skeleton or --datum")
    if args.datum is not None:
        out.write(docformat.render_datum_dot(_load(args.datum, "datum")))
        return
    skel = _load(args.skeleton, "skeleton")
    coc = None
    if args.cocycle is not None:
        coc = curves.check_cocycle(skel, _load(args.cocycle, "cocycle"))
    out.write(docformat.render_skeleton_dot(skel, coc))


def cmd_schema(args, out):
    out.write(json.dumps(docformat.SCHEMA, sort_keys=True, indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skeleton-kit", description="Exact combinatorics of weighted skeletons.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate one document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="linear/convex/strictly convex loci of a simple function")
    s.add_argument("--complex", required=True)
    s.add_argument("--function", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("curvature", help="curvature classes of a metrized bundle")
    s.add_argument("--bundle", required=True)
    s.set_defaults(func=cmd_curvature)

    s = sub.add_parser("kahler-check", help="whether every germ is strictly convex")
    s.add_argument("--bundle", required=True)
    s.set_defaults(func=cmd_kahler)

    s = sub.add_parser("pullback", help="pull back a function, bundle or curvature along a morphism")
    s.add_argument("what", choices=("function", "bundle", "curvature"))
    s.add_argument("--morphism", required=True)
    s.add_argument("--input", required=True, help="document of the selected kind on the target")
    s.set_defaults(func=cmd_pullback)

    s = sub.add_parser("check-functoriality", help="derivative or curvature functoriality along a morphism")
    s.add_argument("--morphism", required=True)
    s.add_argument("--function")
    s.add_argument("--bundle")
    s.set_defaults(func=cmd_functoriality)

    s = sub.add_parser("degree", help="degree of a cocycle on a curve skeleton")
    s.add_argument("--skeleton", required=True)
    s.add_argument("--cocycle", required=True)
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("h1", help="dimension of the first Cech cohomology of linear functions")
    s.add_argument("--skeleton", required=True)
    s.set_defaults(func=cmd_h1)

    s = sub.add_parser("reorder-check", help="degree before and after changing the vertex order")
    s.add_argument("--skeleton", required=True)
    s.add_argument("--cocycle", required=True)
    s.add_argument("--order", required=True, help="comma-separated vertex ids")
    s.set_defaults(func=cmd_reorder)

    s = sub.add_parser("metrization-degree", help="curvature degree and cocycle degree of a metrization")
    s.add_argument("--skeleton", required=True)
    s.add_argument("--germs", required=True, help="germ_family document with one germ per vertex star")
    s.set_defaults(func=cmd_metrization_degree)

    for name, func, help_ in (
        ("enum-decomp", cmd_enum, "stream decomposition data of type (g, n)"),
        ("count-decomp", cmd_count, "count decomposition data of type (g, n)"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--components", help="number of components (ids 1..k) or a comma list of ids")
        s.add_argument("--bounds", help="comma-separated bounds N_i^0")
        s.add_argument("--bounds-doc", help="bounds document instead of --components/--bounds")
        s.add_argument("--g", type=int, required=True)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--canonical", action="store_true", help="one representative per relabeling class")
        s.add_argument("--threads", type=int, default=None, help="worker processes (default $SKELETON_KIT_THREADS or 1)")
        if name == "enum-decomp":
            s.add_argument("--count", action="store_true", help="print only the number of data")
        s.set_defaults(func=func)

    s = sub.add_parser("canonical-decomp", help="canonical relabeling of a decomposition datum")
    s.add_argument("--datum", required=True)
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("render", help="DOT rendering of a skeleton or a decomposition graph")
    s.add_argument("--skeleton")
    s.add_argument("--cocycle")
    s.add_argument("--datum")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("schema", help="print the JSON Schema of the document format")
    s.set_defaults(func=cmd_schema)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except UsageError as exc:
        err.write(f"skeleton-kit: {exc}\n")
        return 2
    except errors.SkeletonKitError as exc:
        err.write(f"skeleton-kit: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
