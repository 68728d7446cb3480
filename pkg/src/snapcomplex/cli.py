"""Command-line front end: build, inspect, verify and export complexes.

Six subcommands mirror the library surface:

* ``build``     construct a complex and serialize it,
* ``facets``    list or count the facets,
* ``verify``    run named invariant suites; JSON report on stdout,
* ``strata``    stratification queries (``--list``/``--intersect``/``--nerve``),
* ``collapse``  produce and optionally validate collapse sequences,
* ``export``    JSON dump, DOT face poset, or SVG picture.

Exit codes: 0 success, 1 failed check, 2 usage or parse error,
3 resource cap exceeded.  Identical inputs produce byte-identical
output; every listing is explicitly sorted.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Callable, Sequence

from .chromatic import phi_iso
from .collapse import (
    collapse_all,
    collapse_to_relative_boundary,
    relative_boundary_remainder,
    validate_collapse,
)
from .complexes import (
    Complex,
    build,
    check_purity,
    cone_split,
    facets,
    verify_ghost_composition,
)
from .counters import RoundCounter
from .errors import ComplexTooLargeError, VerificationError
from .schedules import enumerate_schedules, to_facet, views
from .strata import intersect_pair, nerve, verify_diagrams, verify_strata_calculus
from .topology import (
    boundary,
    classify_interior,
    euler,
    homology_z2,
    is_sphere_like,
    strong_connectivity,
)
from .witness import WitnessStructure

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3

# Fixed default so repeated CI runs agree; currently every check is
# exhaustive, the seed is recorded in reports for forward compatibility.
DEFAULT_SEED = 0x5EED

CHECK_ORDER = (
    "purity",
    "pseudomanifold",
    "boundary",
    "strong-connectivity",
    "euler",
    "homology",
    "strata-intersections",
    "diagrams",
    "gg",
    "cone",
    "phi",
    "schedule-bijection",
)


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _parse_counter(text: str) -> RoundCounter:
    try:
        return RoundCounter.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


class UsageError(Exception):
    """Bad arguments discovered after argparse; maps to exit code 2."""


def _parse_procs(token: str) -> frozenset[int]:
    inner = token.strip().lstrip("{").rstrip("}").strip()
    if not inner:
        return frozenset()
    try:
        return frozenset(int(part) for part in inner.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot read process set {token!r}") from exc


# ---------------------------------------------------------------------------
# verify checks
# ---------------------------------------------------------------------------


def _check_purity(k: Complex) -> dict:
    check_purity(k)
    return {"status": "ok", "dimension": k.dim}


def _check_pseudomanifold(k: Complex) -> dict:
    report = boundary(k)
    return {"status": "ok", "ridges": report.ridge_count}


def _check_boundary(k: Complex) -> dict:
    report = boundary(k)
    status = "ok" if report.ghost_rule_holds else "failed"
    return {
        "status": status,
        "boundary_ridges": len(report.boundary_ridges),
        "boundary_simplices": len(report.simplices),
    }


def _check_strong_connectivity(k: Complex) -> dict:
    connected = strong_connectivity(k)
    return {"status": "ok" if connected else "failed", "facets": len(k.facets)}


def _check_euler(k: Complex) -> dict:
    value = euler(k)
    return {"status": "ok" if value == 1 else "failed", "euler": value}


def _check_homology(k: Complex) -> dict:
    betti = homology_z2(k)
    contractible = all(b == 0 for b in betti.values())
    detail: dict = {
        "status": "ok" if contractible else "failed",
        "reduced_betti": {str(d): b for d, b in sorted(betti.items())},
    }
    rim = boundary(k).simplices
    if rim:
        sphere_dim = len(k.counter.support) - 2
        rim_betti = homology_z2(rim)
        detail["boundary_reduced_betti"] = {
            str(d): b for d, b in sorted(rim_betti.items())
        }
        if not is_sphere_like(rim_betti, sphere_dim):
            detail["status"] = "failed"
    return detail


def _check_strata_intersections(k: Complex) -> dict:
    counts = verify_strata_calculus(k)
    return {"status": "ok", **counts}


def _check_diagrams(k: Complex) -> dict:
    reports = verify_diagrams(k)
    return {
        "status": "ok",
        "parameter_sets": len(reports),
        "instances": sum(r.instances_checked for r in reports),
    }


def _check_gg(k: Complex) -> dict:
    return {"status": "ok", "instances": verify_ghost_composition(k)}


def _check_cone(k: Complex) -> dict:
    passive = sorted(k.counter.passive)
    if not passive:
        return {"status": "skipped", "reason": "no passive process"}
    certificates = []
    for p in passive:
        certificates.append(cone_split(k.counter, p).certify())
    return {"status": "ok", "certificates": certificates}


def _check_phi(k: Complex) -> dict:
    counter = k.counter
    support = sorted(counter.support)
    if support != list(range(len(support))) or any(
        counter[p] != 1 for p in support
    ):
        return {"status": "skipped", "reason": "counter is not all-ones on 0..n"}
    report = phi_iso(len(support) - 1)
    return {
        "status": "ok" if report.ok else "failed",
        "subdivision_simplices": report.simplices,
        "f_vector": list(report.f_vector),
    }


def _check_schedule_bijection(k: Complex) -> dict:
    counter = k.counter
    mapped: dict[WitnessStructure, int] = {}
    seen_views: set[WitnessStructure] = set()
    count = 0
    for schedule in enumerate_schedules(counter):
        facet = to_facet(schedule, counter)
        mapped[facet] = mapped.get(facet, 0) + 1
        seen_views.update(views(schedule, counter).values())
        count += 1
    vertex_set = {s for s in k.simplices if s.dim == 0}
    injective = all(n == 1 for n in mapped.values())
    onto = set(mapped) == k.facets
    covered = seen_views == vertex_set
    status = "ok" if injective and onto and covered else "failed"
    return {
        "status": status,
        "schedules": count,
        "facets": len(k.facets),
        "vertices": len(vertex_set),
        "views": len(seen_views),
    }


_CHECKS: dict[str, Callable[[Complex], dict]] = {
    "purity": _check_purity,
    "pseudomanifold": _check_pseudomanifold,
    "boundary": _check_boundary,
    "strong-connectivity": _check_strong_connectivity,
    "euler": _check_euler,
    "homology": _check_homology,
    "strata-intersections": _check_strata_intersections,
    "diagrams": _check_diagrams,
    "gg": _check_gg,
    "cone": _check_cone,
    "phi": _check_phi,
    "schedule-bijection": _check_schedule_bijection,
}


def _cmd_verify(args: argparse.Namespace) -> int:
    counter = _parse_counter(args.counter)
    wanted = [name.strip() for name in args.checks.split(",") if name.strip()]
    unknown = [name for name in wanted if name not in _CHECKS]
    if unknown:
        raise UsageError(
            f"unknown checks {unknown}; available: {', '.join(CHECK_ORDER)}"
        )
    k = build(counter, max_simplices=args.max_simplices)
    results: dict[str, dict] = {}
    for name in CHECK_ORDER:
        if name not in wanted:
            continue
        try:
            results[name] = _CHECKS[name](k)
        except VerificationError as exc:
            results[name] = {"status": "failed", "error": str(exc)}
    ok = all(r["status"] in ("ok", "skipped") for r in results.values())
    report = {
        "counter": counter.to_json_obj(),
        "seed": args.seed,
        "checks": results,
        "ok": ok,
    }
    _emit(_dump(report), args.out)
    return EXIT_OK if ok else EXIT_FAILURE


# ---------------------------------------------------------------------------
# remaining subcommands
# ---------------------------------------------------------------------------


def _cmd_build(args: argparse.Namespace) -> int:
    counter = _parse_counter(args.counter)
    k = build(counter, max_simplices=args.max_simplices)
    _emit(_dump(k.to_json_obj(include_simplices=True)), args.out)
    return EXIT_OK


def _cmd_facets(args: argparse.Namespace) -> int:
    counter = _parse_counter(args.counter)
    all_facets = facets(counter)
    if args.count:
        _emit(f"{len(all_facets)}\n", args.out)
        return EXIT_OK
    payload = {
        "counter": counter.to_json_obj(),
        "count": len(all_facets),
        "facets": sorted(f.encode() for f in all_facets),
    }
    _emit(_dump(payload), args.out)
    return EXIT_OK


def _cmd_strata(args: argparse.Namespace) -> int:
    counter = _parse_counter(args.counter)
    if args.intersect is not None:
        first, second = (_parse_procs(token) for token in args.intersect)
        stray = (first | second) - counter.active
        if stray:
            raise UsageError(f"processes {sorted(stray)} are not active in the counter")
        ref = intersect_pair(first, (), second, ())
        _emit(f"{ref}\n", args.out)
        return EXIT_OK
    k = build(counter, max_simplices=args.max_simplices)
    if args.nerve:
        _emit(_dump(nerve(k).to_json_obj()), args.out)
        return EXIT_OK
    groups: dict[str, dict] = {}
    for sigma in sorted(k.simplices):
        ref = classify_interior(sigma)
        if ref is None:
            entry = groups.setdefault("passive simplex", {"name": "passive simplex"})
        else:
            entry = groups.setdefault(str(ref), {"name": str(ref), **ref.to_json_obj()})
        entry["count"] = entry.get("count", 0) + 1
    payload = {
        "counter": counter.to_json_obj(),
        "strata": [groups[name] for name in sorted(groups)],
    }
    _emit(_dump(payload), args.out)
    return EXIT_OK


def _cmd_collapse(args: argparse.Namespace) -> int:
    counter = _parse_counter(args.counter)
    if args.full and args.pivot is not None:
        raise UsageError("--pivot applies to the relative-boundary collapse only")
    k = build(counter, max_simplices=args.max_simplices)
    if args.full:
        sequence = collapse_all(k)
        expected = frozenset()
    else:
        pivot = args.pivot if args.pivot is not None else min(counter.support)
        if pivot not in counter.support:
            raise UsageError(f"pivot {pivot} is outside the support")
        sequence = collapse_to_relative_boundary(k, pivot)
        expected = relative_boundary_remainder(k, pivot)
    payload = sequence.to_json_obj()
    if args.validate:
        report = validate_collapse(k, sequence, expected_remainder=expected)
        payload["validation"] = report.to_json_obj()
        if not report.ok:
            _emit(_dump(payload), args.out)
            return EXIT_FAILURE
    _emit(_dump(payload), args.out)
    return EXIT_OK


def _hasse_dot(k: Complex) -> str:
    lines = ["digraph face_poset {", "  rankdir=BT;", '  node [shape=box, fontname="monospace"];']
    ordered = sorted(k.simplices, key=lambda s: (s.dim, s.encode()))
    for sigma in ordered:
        name = sigma.encode().replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  "{name}" [label="dim {sigma.dim}: {name}"];')
    for sigma in ordered:
        child = sigma.encode().replace("\\", "\\\\").replace('"', '\\"')
        covers = sorted(
            tau.encode() for tau in k.faces(sigma) if tau.dim == sigma.dim - 1
        )
        for tau in covers:
            parent = tau.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  "{parent}" -> "{child}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


_PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b")


def _vertex_positions(k: Complex) -> dict[WitnessStructure, tuple[float, float]]:
    """Plane coordinates: boundary pinned on a circle, interior relaxed."""
    vertex_list = sorted(s for s in k.simplices if s.dim == 0)
    if len(vertex_list) == 1:
        return {vertex_list[0]: (300.0, 300.0)}
    edges = [s for s in k.simplices if s.dim == 1]
    neighbors: dict[WitnessStructure, set[WitnessStructure]] = {
        v: set() for v in vertex_list
    }
    for edge in edges:
        u, v = sorted(k.vertices(edge))
        neighbors[u].add(v)
        neighbors[v].add(u)

    if k.dim == 1:
        # A path: walk it end to end and spread it on a horizontal line.
        ends = sorted(v for v in vertex_list if len(neighbors[v]) == 1)
        walk = [ends[0]]
        while len(walk) < len(vertex_list):
            options = neighbors[walk[-1]] - set(walk)
            walk.append(min(options))
        step = 520.0 / max(len(walk) - 1, 1)
        return {v: (40.0 + i * step, 300.0) for i, v in enumerate(walk)}

    rim_edges = boundary(k).boundary_ridges
    rim_neighbors: dict[WitnessStructure, set[WitnessStructure]] = {}
    for edge in rim_edges:
        u, v = sorted(k.vertices(edge))
        rim_neighbors.setdefault(u, set()).add(v)
        rim_neighbors.setdefault(v, set()).add(u)
    start = min(rim_neighbors)
    cycle = [start, min(rim_neighbors[start])]
    while True:
        options = rim_neighbors[cycle[-1]] - {cycle[-2]}
        nxt = min(options)
        if nxt == start:
            break
        cycle.append(nxt)
    positions: dict[WitnessStructure, tuple[float, float]] = {}
    for i, v in enumerate(cycle):
        angle = 2.0 * math.pi * i / len(cycle) - math.pi / 2.0
        positions[v] = (300.0 + 250.0 * math.cos(angle), 300.0 + 250.0 * math.sin(angle))
    interior = [v for v in vertex_list if v not in positions]
    for v in interior:
        positions[v] = (300.0, 300.0)
    for _ in range(120):
        for v in interior:
            around = neighbors[v]
            positions[v] = (
                sum(positions[u][0] for u in around) / len(around),
                sum(positions[u][1] for u in around) / len(around),
            )
    return positions


def _svg(k: Complex) -> str:
    if len(k.counter.support) > 3:
        raise UsageError("svg export is limited to counters with support size <= 3")
    positions = _vertex_positions(k)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600" '
        'viewBox="0 0 600 600">',
        '  <rect width="600" height="600" fill="white"/>',
    ]

    def fmt(value: float) -> str:
        return f"{value:.2f}"

    for facet in sorted(s for s in k.simplices if s.dim == 2):
        points = " ".join(
            f"{fmt(positions[v][0])},{fmt(positions[v][1])}"
            for v in sorted(k.vertices(facet))
        )
        parts.append(f'  <polygon points="{points}" fill="#eef0f7" stroke="none"/>')
    for edge in sorted(s for s in k.simplices if s.dim == 1):
        u, v = sorted(k.vertices(edge))
        parts.append(
            f'  <line x1="{fmt(positions[u][0])}" y1="{fmt(positions[u][1])}" '
            f'x2="{fmt(positions[v][0])}" y2="{fmt(positions[v][1])}" '
            'stroke="#444444" stroke-width="1.5"/>'
        )
    for vertex in sorted(positions):
        x, y = positions[vertex]
        color = _PALETTE[next(iter(vertex.active_set)) % len(_PALETTE)]
        title = vertex.encode().replace("&", "&amp;").replace("<", "&lt;")
        parts.append(
            f'  <circle cx="{fmt(x)}" cy="{fmt(y)}" r="6" fill="{color}">'
            f"<title>{title}</title></circle>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_export(args: argparse.Namespace) -> int:
    counter = _parse_counter(args.counter)
    k = build(counter, max_simplices=args.max_simplices)
    if args.format == "json":
        _emit(_dump(k.to_json_obj(include_simplices=True)), args.out)
    elif args.format == "dot":
        _emit(_hasse_dot(k), args.out)
    else:
        _emit(_svg(k), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snapcomplex",
        description="Immediate snapshot complexes: build, verify, collapse, export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "-r",
            "--counter",
            required=True,
            help="round counter, e.g. '2,1,1' or '1,x,1' (x = absent)",
        )
        p.add_argument(
            "--max-simplices",
            type=int,
            default=None,
            help="override the stored-simplex cap (env SNAPCOMPLEX_MAX_SIMPLICES)",
        )
        p.add_argument("--out", default=None, help="write output to a file")

    p_build = sub.add_parser("build", help="construct and serialize a complex")
    common(p_build)
    p_build.set_defaults(func=_cmd_build)

    p_facets = sub.add_parser("facets", help="list or count the facets")
    common(p_facets)
    p_facets.add_argument("--count", action="store_true", help="print the count only")
    p_facets.set_defaults(func=_cmd_facets)

    p_verify = sub.add_parser("verify", help="run named invariant suites")
    common(p_verify)
    p_verify.add_argument(
        "--checks",
        required=True,
        help="comma-separated list drawn from: " + ",".join(CHECK_ORDER),
    )
    p_verify.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed recorded for sampled checks (all current checks are exhaustive)",
    )
    p_verify.set_defaults(func=_cmd_verify)

    p_strata = sub.add_parser("strata", help="stratification queries")
    common(p_strata)
    mode = p_strata.add_mutually_exclusive_group(required=True)
    mode.add_argument("--list", action="store_true", help="canonical strata with counts")
    mode.add_argument(
        "--intersect",
        nargs=2,
        metavar=("S", "T"),
        help="closed form of the intersection of two covering strata, e.g. {0} {1}",
    )
    mode.add_argument("--nerve", action="store_true", help="nerve of the covering")
    p_strata.set_defaults(func=_cmd_strata)

    p_collapse = sub.add_parser("collapse", help="collapse sequences")
    common(p_collapse)
    p_collapse.add_argument("--pivot", type=int, default=None, help="pivot process")
    p_collapse.add_argument(
        "--full", action="store_true", help="collapse everything, not just past the boundary"
    )
    p_collapse.add_argument(
        "--validate", action="store_true", help="replay and check every step"
    )
    p_collapse.set_defaults(func=_cmd_collapse)

    p_export = sub.add_parser("export", help="serialize in other formats")
    common(p_export)
    p_export.add_argument(
        "--format", required=True, choices=("json", "dot", "svg"), help="output format"
    )
    p_export.set_defaults(func=_cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComplexTooLargeError as exc:
        print(
            _dump({"error": "simplex cap exceeded", "limit": exc.limit}).rstrip(),
            file=sys.stderr,
        )
        return EXIT_TOO_LARGE
    except VerificationError as exc:
        print(_dump({"error": str(exc)}).rstrip(), file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
