"""Command line: generate corpora, build and verify covers, sweep scales, export drawings.

Exit codes: 0 success, 2 argument error, 3 certification or verification
failure, 4 the annulus parameter ladder was exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import documents as docs
from .covers import certify
from .errors import ArgumentError, CertificationError, ConstructionError, LadderExhausted
from .hyperbolic import (DEFAULT_BOX, TOLERANCE, UpperHalfSpaceSample, hadamard_trace,
                         sample_upper_half_space)
from .planar import gen_grid, gen_random_planar, planar_nagata_trace
from .render import to_dot, to_svg
from .tiling import gen_hyperbolic_tiling

EXIT_OK, EXIT_ARGS, EXIT_CERT, EXIT_LADDER = 0, 2, 3, 4

log = logging.getLogger("nagata_covers")


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _positive(value: str) -> float:
    x = float(value)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return x


# -- commands ----------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.family == "grid":
        doc = docs.graph_to_dict(gen_grid(args.rows, args.cols))
    elif args.family == "tiling":
        doc = docs.graph_to_dict(gen_hyperbolic_tiling(args.p, args.q, args.depth))
    elif args.family == "random":
        doc = docs.graph_to_dict(gen_random_planar(args.n, args.seed))
        doc["seed"] = args.seed
    else:
        box = DEFAULT_BOX if args.box is None else tuple(zip(args.box[0::2], args.box[1::2]))
        doc = docs.sample_to_dict(sample_upper_half_space(args.n, box, args.seed))
    _emit(docs.dumps(doc), args.output)
    return EXIT_OK


def build_cover(space_obj, s: float, base_point: int = 0) -> dict:
    """Run the pipeline matching the input and return its cover document."""
    if isinstance(space_obj, UpperHalfSpaceSample):
        trace = hadamard_trace(space_obj, s)
        cert = certify(space_obj, trace.cover, s)
        if not (cert.is_cover and cert.color_count <= 4 and cert.disjoint_at(s, TOLERANCE)):
            raise CertificationError(f"hadamard cover failed certification: {cert}")
        measured = {
            "pipeline": "hadamard",
            "seed": space_obj.seed,
            "diameter_constant": cert.max_diameter / s,
            "bound_constant": trace.bound,
            "provider_constant": trace.c,
            "lipschitz_constant": space_obj.lipschitz_constant(space_obj.busemann_function().values),
        }
        return docs.cover_to_dict(trace.cover, s, cert, measured, model="upper-half-space")
    result = planar_nagata_trace(space_obj, base_point, s)
    cert = result.certificate
    measured = {
        "pipeline": "planar",
        "base_point": base_point,
        "K": result.K,
        "failed_K": result.failed_K,
        "diameter_constant": cert.max_diameter / s,
        "bound_constant": result.bound,
        "lipschitz_constant": space_obj.space.lipschitz_constant(
            space_obj.space.distance_to_set([base_point])),
        "annulus_count": len(result.annuli),
        "annulus_max_multiplicity": max((a.certificate.multiplicity for a in result.annuli), default=0),
        "annulus_diameter_constant": max((a.diameter_constant for a in result.annuli), default=0.0),
    }
    return docs.cover_to_dict(result.cover, s, cert, measured)


def _metric_space(space_obj):
    return space_obj if isinstance(space_obj, UpperHalfSpaceSample) else space_obj.space


def cmd_cover(args) -> int:
    space_obj = docs.load_space_document(args.input)
    _emit(docs.dumps(build_cover(space_obj, args.s, args.base_point)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    space_obj = docs.load_space_document(args.space)
    cover_doc = docs.read_document(args.cover)
    cover, s, claimed = docs.cover_from_dict(cover_doc)
    fresh = certify(_metric_space(space_obj), cover, s)
    fresh_doc = fresh.to_dict()
    _emit(docs.dumps(fresh_doc), args.output)
    if claimed is None:
        print("cover document carries no certificate", file=sys.stderr)
        return EXIT_CERT
    stored = cover_doc["certificate"]
    differing = sorted(k for k in set(fresh_doc) | set(stored)
                       if docs.dumps({k: fresh_doc.get(k)}) != docs.dumps({k: stored.get(k)}))
    if differing:
        print("certificate mismatch in: " + ", ".join(differing), file=sys.stderr)
        return EXIT_CERT
    return EXIT_OK


def cmd_sweep(args) -> int:
    space_obj = docs.load_space_document(args.input)
    rows = ["s\tcolors\tdiam_over_s\tmultiplicity"]
    for s in args.scales:
        doc = build_cover(space_obj, s, args.base_point)
        cert = doc["certificate"]
        used = sum(1 for cls in doc["classes"] if cls["sets"])
        rows.append(f"{s:g}\t{used}\t{cert['max_diameter'] / s:.6g}\t{cert['multiplicity']}")
    _emit("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def cmd_export(args) -> int:
    space_obj = docs.load_space_document(args.input)
    cover = docs.cover_from_dict(docs.read_document(args.cover))[0] if args.cover else None
    if isinstance(space_obj, UpperHalfSpaceSample):
        coords, edges, n, name = space_obj.coords[:, :2], (), len(space_obj), "sample"
    else:
        coords, edges = space_obj.embedding, space_obj.graph.edges
        n, name = space_obj.vertex_count, space_obj.name or "G"
    if args.format == "svg":
        if coords is None:
            raise ArgumentError("SVG export needs an embedding: missing field 'coords'")
        text = to_svg(coords, edges, cover)
    else:
        text = to_dot(n, edges, coords, cover, name=name)
    _emit(text, args.output)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nagata-covers", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph or sample document")
    fam = gen.add_subparsers(dest="family", required=True)
    g = fam.add_parser("grid")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g = fam.add_parser("tiling")
    g.add_argument("--p", type=int, default=7)
    g.add_argument("--q", type=int, default=3)
    g.add_argument("--depth", type=int, required=True)
    g = fam.add_parser("random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g = fam.add_parser("h3")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--box", type=float, nargs=6, metavar=("X1LO", "X1HI", "X2LO", "X2HI", "HLO", "HHI"))
    for p in fam.choices.values():
        p.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    c = sub.add_parser("cover", help="build and certify a cover")
    c.add_argument("input")
    c.add_argument("-s", type=_positive, required=True)
    c.add_argument("--base-point", type=int, default=0)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_cover)

    v = sub.add_parser("verify", help="recompute a cover's certificate and compare")
    v.add_argument("--space", required=True)
    v.add_argument("cover")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", help="run the pipeline across scales")
    w.add_argument("input")
    w.add_argument("--scales", type=_positive, nargs="+", default=[1.0, 2.0, 4.0, 8.0])
    w.add_argument("--base-point", type=int, default=0)
    w.add_argument("-o", "--output")
    w.set_defaults(func=cmd_sweep)

    e = sub.add_parser("export", help="draw a graph (and cover) as SVG or DOT")
    e.add_argument("format", choices=("svg", "dot"))
    e.add_argument("input")
    e.add_argument("--cover")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ArgumentError, ConstructionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except LadderExhausted as exc:
        print(f"annulus ladder exhausted: {exc}", file=sys.stderr)
        return EXIT_LADDER
