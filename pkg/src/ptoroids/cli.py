"""Command-line front end: generate, inspect, triangulate, verify, certify, bound, congraph.

Exit codes: 0 success, 1 usage error, 2 negative result, 3 budget exceeded.
Reports hold only exact values (rationals as "p/q") and no timings, so two
runs on the same inputs print identical bytes.  Wall time goes to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import constructions as cons
from .congraph import (
    Decomposition,
    DecompositionError,
    MVerdict,
    branch_nodes,
    build_graph,
    check_m_division,
    fixture_names,
    is_planar,
    is_single_cycle,
    load_fixture,
    validate_decomposition,
)
from .engine import (
    DEFAULT_BUDGET,
    InvalidWitness,
    SearchStatus,
    Triangulation,
    certify_minimal,
    dumps,
    is_valid_triangulation,
    lower_bound,
    search,
)
from .geometry import format_rat
from .surface import (
    AbstractMesh,
    MeshError,
    ParseError,
    edge_graph_is_complete,
    enclosed_volume6,
    is_embedded,
    parse_off,
    validate,
    write_off,
)

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE, EXIT_BUDGET = 0, 1, 2, 3

FAMILIES = (
    "pyramid",
    "bipyramid",
    "schoenhardt",
    "csaszar",
    "toroid-p9",
    "chain",
    "chain+attach",
    "chain-shared-tet",
    "cycle-closure",
)


class UsageError(Exception):
    pass


class UnknownFamily(UsageError):
    pass


class BadParams(UsageError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for negative results here
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# -- helpers ------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def _load_mesh(path: str, inputs: dict):
    text = _read(path)
    inputs[path] = _digest(text)
    mesh = parse_off(text)
    return mesh if mesh.label else mesh.relabel(Path(path).stem)


def _load_json(path: str, inputs: dict) -> dict:
    text = _read(path)
    inputs[path] = _digest(text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not JSON ({exc.msg}, line {exc.lineno})") from None


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _emit(report: dict, args) -> None:
    report = _plain(report)
    text = dumps(report, sort_keys=True)
    if args.out and args.command != "generate":
        Path(args.out).write_text(text)
    if args.json:
        sys.stdout.write(text)
    else:
        for key, value in _flatten(report):
            print(f"{key}: {value}")


def _flatten(d: dict, prefix: str = ""):
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict) and v:
            yield from _flatten(v, f"{prefix}{k}.")
        elif isinstance(v, list) and len(v) > 12:
            yield f"{prefix}{k}", f"[{len(v)} items]"
        else:
            yield f"{prefix}{k}", json.dumps(v) if isinstance(v, (list, type(None), bool)) else v


def _surface_dict(mesh) -> dict:
    rep = validate(mesh).to_dict()
    rep["label"] = mesh.label
    rep["edge_graph_complete"] = edge_graph_is_complete(mesh)
    if mesh.coords is not None:
        emb = is_embedded(mesh)
        rep["embedded"] = bool(emb)
        if not emb:
            rep["intersecting_faces"] = [list(f) for f in emb.faces]
        rep["volume6"] = format_rat(enclosed_volume6(mesh))
    return rep


def _safe_name(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9+._-]+", "_", label)


# -- generate -----------------------------------------------------------------


def _need(args, name: str, lo: int) -> int:
    v = getattr(args, name)
    if v is None:
        raise BadParams(f"family {args.family} needs --{name}")
    if v < lo:
        raise BadParams(f"--{name} must be at least {lo}")
    return v


def _twist(text: Optional[str]):
    if text is None:
        return (Fraction(24, 25), Fraction(7, 25))
    try:
        c, s = (Fraction(t) for t in text.split(","))
    except ValueError:
        raise BadParams(f"--twist wants 'c,s' with rationals, got {text!r}") from None
    return c, s


def _build(args) -> cons.ConstructionOutput:
    fam = args.family
    if fam == "pyramid":
        return cons.pyramid(_need(args, "n", 4), planar_base=not args.space)
    if fam == "bipyramid":
        return cons.bipyramid(_need(args, "n", 5))
    if fam == "schoenhardt":
        return cons.schoenhardt(_twist(args.twist))
    if fam == "csaszar":
        return cons.csaszar()
    if fam == "toroid-p9":
        return cons.toroid_p9()
    if fam == "chain":
        return cons.chain_csaszar(_need(args, "p", 1))
    if fam == "chain+attach":
        out = cons.chain_csaszar(_need(args, "p", 1))
        if not args.k:
            raise BadParams("family chain+attach needs at least one --k")
        for k in args.k:
            if k < 4:
                raise BadParams("--k must be at least 4")
            out = cons.attach_simple(out, k)
        return out
    if fam == "chain-shared-tet":
        return cons.chain_csaszar_shared_tet(_need(args, "p", 2))
    if fam == "cycle-closure":
        return cons.cycle_closure(_need(args, "p", 3))
    raise UnknownFamily(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")


def cmd_generate(args) -> tuple[dict, int]:
    if args.family not in FAMILIES:
        raise UnknownFamily(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    try:
        out = _build(args)
    except cons.ConstructionError as exc:
        return {"family": args.family, "error": type(exc).__name__, "detail": str(exc)}, EXIT_NEGATIVE
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    stem = _safe_name(out.mesh.label)
    files = {}

    def put(suffix: str, text: str):
        path = outdir / f"{stem}{suffix}"
        path.write_text(text)
        files[suffix.lstrip(".")] = str(path)

    put(".off", write_off(out.mesh))
    if out.witness is not None:
        put(".tets.json", out.witness.to_json())
    if out.decomposition is not None:
        put(".decomp.json", out.decomposition.to_json())
    graph = out.extras.get("connection_graph")
    if graph is not None:
        put(".graph.json", graph.to_json())
    report = {
        "family": args.family,
        "label": out.mesh.label,
        "n": out.n,
        "claimed_genus": out.claimed_genus,
        "claimed_tmin": out.claimed_tmin,
        "witness_size": None if out.witness is None else len(out.witness),
        "abstract": out.mesh.coords is None,
        "files": files,
    }
    return report, EXIT_OK


# -- mesh commands ------------------------------------------------------------


def cmd_inspect(args) -> tuple[dict, int]:
    inputs: dict = {}
    mesh = _load_mesh(args.mesh, inputs)
    report: dict = {"inputs": inputs}
    try:
        report["surface"] = _surface_dict(mesh)
    except MeshError as exc:
        report["error"] = type(exc).__name__
        report["detail"] = str(exc)
        return report, EXIT_NEGATIVE
    return report, EXIT_OK


def _geometric_mesh(args, inputs):
    mesh = _load_mesh(args.mesh, inputs)
    if mesh.coords is None:
        raise AbstractMesh(f"{args.mesh} has no coordinates")
    return mesh


def cmd_triangulate(args) -> tuple[dict, int]:
    inputs: dict = {}
    mesh = _geometric_mesh(args, inputs)
    validate(mesh)
    res = search(mesh, args.mode, args.budget)
    report = {"inputs": inputs, "mode": args.mode, "budget": args.budget, "n": mesh.n_vertices}
    report["search"] = res.to_dict()
    if args.witness and res.witness is not None:
        Path(args.witness).write_text(Triangulation(mesh.label, res.witness.tets).to_json())
    code = {
        SearchStatus.FOUND: EXIT_OK,
        SearchStatus.EXHAUSTED: EXIT_OK,
        SearchStatus.NOT_TRIANGULABLE: EXIT_NEGATIVE,
        SearchStatus.BUDGET_EXCEEDED: EXIT_BUDGET,
    }[res.status]
    return report, code


def _load_tets(args, inputs) -> Triangulation:
    data = _load_json(args.tets, inputs)
    try:
        return Triangulation.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.tets}: not a triangulation file ({exc})") from None


def cmd_verify(args) -> tuple[dict, int]:
    inputs: dict = {}
    mesh = _geometric_mesh(args, inputs)
    tri = _load_tets(args, inputs)
    v = is_valid_triangulation(mesh, tri.tets)
    report = {
        "inputs": inputs,
        "valid": v.valid,
        "condition": v.condition,
        "detail": v.detail,
        "size": len(tri),
    }
    return report, EXIT_OK if v else EXIT_NEGATIVE


def cmd_certify(args) -> tuple[dict, int]:
    inputs: dict = {}
    mesh = _geometric_mesh(args, inputs)
    tri = _load_tets(args, inputs)
    try:
        cert = certify_minimal(mesh, tri)
    except InvalidWitness as exc:
        return {"inputs": inputs, "verdict": "invalid-witness", "detail": str(exc)}, EXIT_NEGATIVE
    return {"inputs": inputs, **cert.to_dict()}, EXIT_OK


def cmd_bound(args) -> tuple[dict, int]:
    try:
        b = lower_bound(args.n, args.p)
    except ValueError as exc:
        raise BadParams(str(exc)) from None
    return {"n": args.n, "p": args.p, "bound": b}, EXIT_OK


# -- connection graphs --------------------------------------------------------


def _graph_stats(g) -> dict:
    return {
        "nodes": g.n_nodes,
        "edges": len(g.edges),
        "components": g.components,
        "connected": g.connected,
        "cycle_rank": g.cycle_rank,
        "single_cycle": is_single_cycle(g),
        "planar": is_planar(g),
        "branch_nodes": branch_nodes(g),
        "degrees": g.degrees(),
    }


def cmd_congraph(args) -> tuple[dict, int]:
    inputs: dict = {}
    if args.fixture:
        if args.fixture not in fixture_names():
            raise BadParams(f"unknown fixture {args.fixture!r}; choose from {', '.join(fixture_names())}")
        g, meta = load_fixture(args.fixture)
        report = {"fixture": args.fixture, "graph": _graph_stats(g)}
        report["expected_cycle_rank"] = meta.get("expected_cycle_rank")
        return report, EXIT_OK
    if not args.decomposition:
        raise UsageError("congraph needs a decomposition file or --fixture")
    data = _load_json(args.decomposition, inputs)
    try:
        d = Decomposition.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.decomposition}: not a decomposition file ({exc})") from None
    report: dict = {"inputs": inputs}
    mesh = None
    if args.mesh:
        mesh = _geometric_mesh(args, inputs)
        try:
            dr = validate_decomposition(mesh, d, check_sharing=args.check_sharing)
        except DecompositionError as exc:
            report["error"] = type(exc).__name__
            report["detail"] = str(exc)
            return report, EXIT_NEGATIVE
        report["decomposition"] = {
            "pieces": dr.n_pieces,
            "volume6": dr.volume6,
            "contact_faces": [list(f) for f in dr.contact_faces],
            "sharing_rule": dr.sharing_rule,
        }
    elif args.check_m:
        raise UsageError("--check-m needs --mesh")
    g = build_graph(d, mesh)
    report["graph"] = _graph_stats(g)
    code = EXIT_OK
    if args.check_m:
        m = check_m_division(mesh, d, args.budget)
        report["m_division"] = m.to_dict()
        code = {
            MVerdict.M_DIVISION: EXIT_OK,
            MVerdict.NOT_M_DIVISION: EXIT_NEGATIVE,
            MVerdict.UNDECIDED: EXIT_BUDGET,
        }[m.verdict]
    return report, code


# -- entry point --------------------------------------------------------------


def _globals(defaults: bool) -> argparse.ArgumentParser:
    # shared so the flags work before or after the command name
    g = argparse.ArgumentParser(add_help=False)
    dflt = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    g.add_argument("--out", default=dflt(None), help="output directory (generate) or report path")
    g.add_argument("--budget", type=int, default=dflt(DEFAULT_BUDGET), help="search node limit")
    g.add_argument("--json", action="store_true", default=dflt(False), help="print the report as JSON")
    g.add_argument("--seed", type=int, default=dflt(0), help="recorded in reports; constructions ignore it")
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ptoroids", description=__doc__.splitlines()[0], parents=[_globals(True)])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)
    common = [_globals(False)]

    p = sub.add_parser("generate", parents=common, help="build a polyhedron family")
    p.add_argument("family", help=" | ".join(FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int, action="append", help="attached pyramid size, repeatable")
    p.add_argument("--space", action="store_true", help="pyramid with a non-planar base")
    p.add_argument("--twist", help="Schönhardt rotation as 'c,s'")

    p = sub.add_parser("inspect", parents=common, help="surface statistics of a mesh")
    p.add_argument("mesh")

    p = sub.add_parser("triangulate", parents=common, help="search for 3-triangulations")
    p.add_argument("mesh")
    p.add_argument("--mode", choices=("any", "exhaustive"), default="any")
    p.add_argument("--witness", help="write the smallest triangulation found here")

    for name, text in (("verify", "check a triangulation"), ("certify", "certify a triangulation minimal")):
        p = sub.add_parser(name, parents=common, help=text)
        p.add_argument("mesh")
        p.add_argument("tets")

    p = sub.add_parser("bound", parents=common, help="lower bound n + 3(p-1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("congraph", parents=common, help="connection graph of a convex decomposition")
    p.add_argument("decomposition", nargs="?")
    p.add_argument("--mesh", help="mesh to validate the decomposition against")
    p.add_argument("--check-m", action="store_true", help="decide whether it is an m-division")
    p.add_argument("--check-sharing", action="store_true", help="also test the non-neighbour sharing rule")
    p.add_argument("--fixture", help="a shipped graph fixture instead of a file")
    return parser


COMMANDS = {
    "generate": cmd_generate,
    "inspect": cmd_inspect,
    "triangulate": cmd_triangulate,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "bound": cmd_bound,
    "congraph": cmd_congraph,
}


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        report, code = COMMANDS[args.command](args)
    except (UsageError, ParseError, AbstractMesh) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MeshError as exc:
        report, code = {"error": type(exc).__name__, "detail": str(exc)}, EXIT_NEGATIVE
    report = {"command": args.command, "argv": list(argv), "seed": args.seed, **report}
    _emit(report, args)
    print(f"wall time {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
