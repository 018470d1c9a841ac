"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 degenerate input,
3 not realisable, 4 closure violation, 5 degenerate normals.  A sweep
exits 0 only when every invariant passes (1 otherwise).
"""

import argparse
import json
import math
import sys

import numpy as np

from .errors import (
    ClosureViolation,
    DegenerateNormals,
    DegenerateTetrahedron,
    NotRealizable,
    TetraError,
)
from .heron import (
    ReversibleParams,
    build_reversible,
    isosceles_volume_sq,
    realizability,
    reversible_params_from_edges,
    reversible_volume_sq,
    reversible_volume_sq_factored,
)
from .minkowski import CLOSURE_REPAIR_TOL, CLOSURE_TOL, reconstruct
from .sweeps import SWEEPS, run_sweep
from .tetra import (
    DEFAULT_TOL,
    EDGE_NAMES,
    EdgeLengths,
    FacetData,
    Tetrahedron,
    cayley_menger_volume_sq,
    classify,
    classify_edges,
    edge_lengths,
    facet_data,
    tetrahedron_from_edges,
    volume_from_vertices,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_NOT_REALIZABLE = 3
EXIT_CLOSURE = 4
EXIT_NORMALS = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _numbers(text, count=None, what="values"):
    try:
        vals = [float(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"could not parse {what} from {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} {what}, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what} must be finite")
    return vals


# --- input schema -----------------------------------------------------------

def parse_document(obj):
    """Turn one JSON input object into ``(kind, value)``.

    ``kind`` is one of ``vertices``, ``edges``, ``reversible``, ``facets``.
    """
    if not isinstance(obj, dict):
        raise UsageError("input must be a JSON object")
    try:
        if "vertices" in obj:
            v = np.array(obj["vertices"], dtype=float)
            if v.shape != (4, 3):
                raise UsageError("'vertices' must be four [x, y, z] triples")
            return "vertices", v
        if "edges" in obj:
            return "edges", EdgeLengths.from_mapping(obj["edges"])
        if "reversible" in obj:
            r = obj["reversible"]
            return "reversible", ReversibleParams(*(float(r[k]) for k in "abcd"))
        if "facets" in obj:
            facets = obj["facets"]
            if len(facets) != 4:
                raise UsageError("'facets' must list four facets")
            normals = [f["normal"] for f in facets]
            areas = [f["area"] for f in facets]
            return "facets", FacetData(np.array(normals, float), np.array(areas, float))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed input: {exc}") from None
    raise UsageError("input needs one of 'vertices', 'edges', 'reversible', 'facets'")


def load_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    return parse_document(obj)


def vertices_document(T):
    return {"vertices": T.vertices.tolist()}


def facets_document(D):
    return {
        "facets": [
            {"normal": n.tolist(), "area": float(a)} for n, a in zip(D.normals, D.areas)
        ]
    }


def _inline_source(args):
    given = [
        (name, getattr(args, name, None))
        for name in ("vertices", "edges", "reversible", "isosceles", "input")
        if getattr(args, name, None) is not None
    ]
    if len(given) != 1:
        raise UsageError(
            "give exactly one of --vertices, --edges, --reversible, --isosceles, --input"
        )
    name, text = given[0]
    if name == "input":
        return load_document(text)
    if name == "vertices":
        return "vertices", np.array(_numbers(text, 12, "vertex coordinates")).reshape(4, 3)
    if name == "edges":
        return "edges", EdgeLengths.from_array(_numbers(text, 6, "edge lengths"))
    if name == "reversible":
        return "reversible", ReversibleParams(*_numbers(text, 4, "reversible parameters"))
    a, b, c = _numbers(text, 3, "isosceles parameters")
    return "isosceles", ReversibleParams(a, b, c, c)


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


def _tol(args):
    return DEFAULT_TOL if args.tol is None else args.tol


def _tol_scale(args):
    return 1.0 if args.tol is None else args.tol / DEFAULT_TOL


def _pairing_str(pairing):
    return "{" + ", ".join(f"(f{i},f{j})" for i, j in pairing) + "}"


# --- subcommands ------------------------------------------------------------

def cmd_classify(args):
    kind, value = _inline_source(args)
    tol = _tol(args)
    if kind == "edges":
        cls = classify_edges(value, tol)
    elif kind == "vertices":
        cls = classify(Tetrahedron(value), tol)
    elif kind in ("reversible", "isosceles"):
        cls = classify(build_reversible(value), tol)
    else:
        raise UsageError("classify takes vertices, edges or reversible parameters")
    payload = {
        "verdict": cls.verdict.value,
        "pairings": [[list(p) for p in pairing] for pairing in cls.pairings],
        "congruence_residuals": {_pairing_str(k): v for k, v in cls.congruence_residuals.items()},
        "area_residuals": {_pairing_str(k): v for k, v in cls.area_residuals.items()},
        "tolerance": tol,
    }
    lines = [f"verdict: {cls.verdict.value}"]
    if cls.pairings:
        lines.append("congruent pairings: " + "; ".join(_pairing_str(p) for p in cls.pairings))
    else:
        lines.append("congruent pairings: none")
    for pairing, res in cls.congruence_residuals.items():
        lines.append(
            f"  {_pairing_str(pairing)}: congruence residual {res:.3e}, "
            f"area residual {cls.area_residuals[pairing]:.3e}"
        )
    _emit(args, payload, lines)
    return EXIT_OK


def _method(v2):
    return {"V": math.sqrt(v2) if v2 > 0 else 0.0, "V2": v2}


def cmd_volume(args):
    kind, value = _inline_source(args)
    methods = {}
    extra = {}
    lines = []
    if kind == "facets":
        raise UsageError("volume takes vertices, edges or reversible parameters")

    params = value if kind in ("reversible", "isosceles") else None
    if kind == "edges":
        params = reversible_params_from_edges(value, _tol(args))
    elif kind == "vertices":
        params = reversible_params_from_edges(edge_lengths(Tetrahedron.allow_degenerate(value)), _tol(args))

    if params is not None:
        verdict = realizability(params)
        closed = float(reversible_volume_sq(params))
        factored = float(reversible_volume_sq_factored(params))
        if kind == "isosceles":
            closed_iso = float(isosceles_volume_sq(params.a, params.b, params.c))
            methods["closed_form_isosceles"] = _method(closed_iso)
        methods["closed_form"] = _method(closed)
        extra["reversible"] = dict(zip("abcd", params.as_tuple()))
        extra["factors"] = {"parallelogram": verdict.factor2, "trapezoid": verdict.factor1}
        extra["degeneracy"] = verdict.degeneracy_kind.value
        extra["factored_form_V2"] = factored
        lines.append(f"reversible parameters (a, b, c, d) = {params.as_tuple()}")
        lines.append(
            f"  product form:            (c^2 d^2 - (a^2-b^2)^2)(a^2+b^2-(c^2+d^2)/2)/72 = {closed!r}"
        )
        lines.append(
            f"  difference-of-squares:   (cd+a^2-b^2)(cd-a^2+b^2)(a^2+b^2-(c^2+d^2)/2)/72 = {factored!r}"
        )
        lines.append(f"  degeneracy: {verdict.degeneracy_kind.value}")
        if not verdict.realizable and kind != "vertices":
            _emit(args, {"methods": methods, **extra, "realizable": False}, lines + ["not realizable"])
            return EXIT_NOT_REALIZABLE

    if kind == "vertices":
        T = Tetrahedron.allow_degenerate(value)
    elif params is not None:
        T = build_reversible(params, allow_degenerate=True)
    else:
        T = tetrahedron_from_edges(value, allow_degenerate=True)
    methods["vertex_determinant"] = _method(volume_from_vertices(T) ** 2)
    if kind == "edges":
        L = value
    elif kind == "vertices" or params is None:
        L = edge_lengths(T)
    else:
        L = params.edge_lengths()
    methods["cayley_menger"] = _method(float(cayley_menger_volume_sq(L)))

    names = sorted(methods)
    residuals = {}
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            x, y = methods[p]["V2"], methods[q]["V2"]
            scale = max(abs(x), abs(y))
            residuals[f"{p}~{q}"] = abs(x - y) / scale if scale > 0 else 0.0
    payload = {"methods": methods, "residuals": residuals, "realizable": True, **extra}
    for name in names:
        lines.append(f"{name:>22}: V = {methods[name]['V']!r}  V^2 = {methods[name]['V2']!r}")
    for key, res in residuals.items():
        lines.append(f"  relative V^2 discrepancy {key}: {res:.3e}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_reconstruct(args):
    path = args.facets or args.input
    if path is None:
        raise UsageError("reconstruct needs --facets FILE")
    kind, D = load_document(path)
    if kind == "vertices":
        D = facet_data(Tetrahedron(D))
    elif kind != "facets":
        raise UsageError("reconstruct needs facet data")
    scale = _tol_scale(args)
    report = reconstruct(D, CLOSURE_TOL * scale, CLOSURE_REPAIR_TOL * scale)
    T = report.tetrahedron
    payload = {
        **vertices_document(T),
        "volume": volume_from_vertices(T),
        "input_closure_residual": report.input_closure_residual,
        "roundtrip_normal_error": report.roundtrip_normal_error,
        "roundtrip_area_error": report.roundtrip_area_error,
        "repaired": report.repaired,
        "facet_order": list(report.facet_order),
    }
    lines = ["vertices:"] + [f"  v{i} = {list(v)}" for i, v in enumerate(T.vertices.tolist())]
    lines += [
        f"volume: {payload['volume']!r}",
        f"input closure residual: {report.input_closure_residual:.3e}"
        + (" (areas repaired)" if report.repaired else ""),
        f"round-trip normal error: {report.roundtrip_normal_error:.3e} rad",
        f"round-trip area error: {report.roundtrip_area_error:.3e}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_build(args):
    kind, value = _inline_source(args)
    if kind in ("reversible", "isosceles"):
        T = build_reversible(value)
    elif kind == "edges":
        T = tetrahedron_from_edges(value)
    elif kind == "vertices":
        T = Tetrahedron(value)
    else:
        T = reconstruct(value).tetrahedron
    payload = vertices_document(T)
    lines = [f"v{i} = {list(v)}" for i, v in enumerate(T.vertices.tolist())]
    lines.append(f"volume = {volume_from_vertices(T)!r}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_sweep(args):
    if args.name not in SWEEPS:
        raise UsageError(f"unknown sweep {args.name!r}; choose from {', '.join(sorted(SWEEPS))}")
    report = run_sweep(args.name, args.samples, args.seed)
    if args.json:
        print(report.to_json(timing=args.timing))
    else:
        print("\n".join(report.summary_lines()))
    return EXIT_OK if report.passed else 1


# --- parser -----------------------------------------------------------------

def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("sample count must be at least 1")
    return n


def build_parser():
    parser = _Parser(prog="tetrasym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(p, sources=("vertices", "edges", "reversible", "isosceles")):
        src = p.add_argument_group("input")
        if "vertices" in sources:
            src.add_argument("--vertices", help="12 numbers: x,y,z for v0..v3")
        if "edges" in sources:
            src.add_argument("--edges", help="six lengths " + ",".join(EDGE_NAMES))
        if "reversible" in sources:
            src.add_argument("--reversible", help="a,b,c,d of a reversible tetrahedron")
        if "isosceles" in sources:
            src.add_argument("--isosceles", help="a,b,c of an isosceles tetrahedron")
        src.add_argument("--input", help="JSON input file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--tol", type=_positive_float, help=f"tolerance (default {DEFAULT_TOL:g})")

    p = sub.add_parser("classify", help="symmetry class of a tetrahedron")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("volume", help="volume from every applicable method")
    common(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("reconstruct", help="tetrahedron from facet normals and areas")
    common(p, sources=())
    p.add_argument("--facets", help="JSON facet-data file")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("build", help="vertex coordinates as JSON")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("sweep", help="run a seeded invariant sweep")
    p.add_argument("name", help="one of: " + ", ".join(sorted(SWEEPS)))
    p.add_argument("-n", "--samples", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON")
    p.add_argument("--tol", type=_positive_float, help="ignored; sweep bounds are fixed")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tetrasym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateTetrahedron as exc:
        print(f"tetrasym: degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NotRealizable as exc:
        print(f"tetrasym: not realizable: {exc}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except ClosureViolation as exc:
        print(f"tetrasym: closure violation: {exc}", file=sys.stderr)
        return EXIT_CLOSURE
    except DegenerateNormals as exc:
        print(f"tetrasym: degenerate normals: {exc}", file=sys.stderr)
        return EXIT_NORMALS
    except (TetraError, ValueError) as exc:
        print(f"tetrasym: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
