"""Command-line interface: ``npcx check|build|measure ...``.

Reports are JSON on standard output (``--human`` for plain text).  Exit
codes: 0 success or pass, 1 check failed, 2 input error, 3 budget exceeded,
obstruction or inconclusive.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import errors, io
from .builders import (KLBuildParams, bourdon_ball, davis_moussong_ball, holonomy, kl_build,
                       named_graph, sl2_tree_ball, sl3_vertex_link)
from .builders.graphs import Graph
from .cog import (CovolumeDatum, PolygonOfGroups, check_npc, covolume, develop_ball,
                  right_angled_chamber_complex)
from .complex import (EUCLIDEAN, HYPERBOLIC, LinkGraph, PolygonalComplex, as_angle, graph_link,
                      link)
from .cubical import (check_cat0_cubical, compute_hyperplanes, halfspace_partition,
                      hyperplanes_to_dot)
from .curvature import (check_bridged, check_flag, check_generalized_mgon, check_gromov,
                        check_systolic, graph_girth, weighted_girth)
from .groups import Inconclusive, parse_presentation, parse_word, todd_coxeter
from .isomorphism import are_isomorphic, link_isomorphism

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class Result:
    def __init__(self, code: int, report: dict, lines: list[str] | None = None):
        self.code = code
        self.report = report
        self.lines = lines or []


def _verdict(passed: bool) -> int:
    return EXIT_OK if passed else EXIT_FAIL


def _write_dot(args, text: str):
    if args.dot:
        Path(args.dot).write_text(text, encoding="utf-8")


def complex_to_dot(X: PolygonalComplex, name: str = "complex") -> str:
    lines = [f"graph {name} {{"]
    for v in X.vertices:
        shape = "box" if v in X.boundary_vertices else "ellipse"
        lines.append(f"  v{v} [shape={shape}];")
    for e, (u, v) in X.edges.items():
        lines.append(f'  v{u} -- v{v} [label="e{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- check -------------------------------------------------------------------


def cmd_check(args) -> Result:
    what = args.what
    if what == "link-condition":
        obj = io.load(args.input)
        if isinstance(obj, PolygonOfGroups):
            verdict = check_npc(obj)
            rep = verdict.report()
            _write_dot(args, verdict.curvature.vertices[0].link.to_dot("local_development"))
            return Result(_verdict(verdict.passed), rep, [
                f"local developments: {'pass' if verdict.passed else 'fail'}",
                f"conclusion: {verdict.conclusion}"])
        if not isinstance(obj, PolygonalComplex):
            raise errors.InvalidInput("link-condition needs a .cplx or .pog file")
        verdict = check_gromov(obj, include_boundary=args.include_boundary)
        if args.dot and verdict.vertices:
            bad = verdict.failures()
            target = (bad or list(verdict.vertices))[0]
            _write_dot(args, target.link.to_dot(f"link_{target.vertex}"))
        lines = [f"vertex {v.vertex}: {'pass' if v.passed else 'FAIL'} "
                 f"(girth {'infinite' if v.girth.infinite else str(v.girth.minimum) + 'π'})"
                 for v in verdict.vertices]
        lines.append(("" if verdict.passed else "not ") + verdict.claim)
        return Result(_verdict(verdict.passed), verdict.report(), lines)
    if what in ("flag", "systolic"):
        S = io.load(args.input, "simplicial_complex")
        if what == "flag":
            rep = check_flag(S)
            out = {"pass": rep.flag, "witness": list(rep.witness) if rep.witness else []}
            line = "flag" if rep.flag else f"not flag: empty triangle {list(rep.witness)}"
            return Result(_verdict(rep.flag), out, [line])
        verdict = check_systolic(S)
        lines = [f"vertex {v}: {'pass' if p else 'FAIL'}" + (f" witness {list(w)}" if w else "")
                 for v, p, w in verdict.vertices]
        return Result(_verdict(verdict.passed), verdict.report(), lines)
    if what in ("bridged", "mgon"):
        G = io.load(args.input, "graph")
        if what == "bridged":
            rep = check_bridged(G.nodes, G.edges)
            out = {"pass": rep.bridged, "witness": list(rep.witness) if rep.witness else []}
            return Result(_verdict(rep.bridged), out,
                          ["bridged" if rep.bridged else f"isometric cycle {list(rep.witness)}"])
        rep = check_generalized_mgon(G.nodes, G.edges, args.m)
        out = {"pass": rep.passed, "diameter": rep.diameter, "girth": rep.girth, "m": rep.m}
        return Result(_verdict(rep.passed), out, [
            f"diameter {rep.diameter}, girth {rep.girth}: "
            + ("" if rep.passed else "not ") + f"a generalized {rep.m}-gon"])
    if what == "cat0-cubical":
        C = io.load(args.input, "cube_complex")
        verdict = check_cat0_cubical(C)
        hyperplanes = compute_hyperplanes(C)
        hrep = []
        for i, h in enumerate(hyperplanes):
            part = halfspace_partition(C, h)
            entry = {"index": i, "edges": list(h.edges), "separating": part.separating,
                     "self_intersecting": h.self_intersecting}
            if part.separating:
                entry["sizes"] = list(part.sizes())
            else:
                entry["components"] = part.components
            hrep.append(entry)
        rep = verdict.report()
        rep["hyperplanes"] = hrep
        _write_dot(args, hyperplanes_to_dot(C, hyperplanes))
        lines = [("" if verdict.passed else "not ") + "locally CAT(0) (all links flag)"]
        lines += [f"hyperplane {h['index']}: edges {h['edges']}, "
                  + (f"halfspaces {h['sizes']}" if h["separating"] else "does not separate")
                  for h in hrep]
        return Result(_verdict(verdict.passed), rep, lines)
    raise errors.InvalidInput(f"unknown check {what!r}")  # pragma: no cover - argparse


# -- build -------------------------------------------------------------------


def _load_link(spec: str) -> Graph:
    path = Path(spec)
    if path.suffix == ".graph" or path.exists():
        return io.load(path, "graph")
    return named_graph(spec)


def _angle(text):
    return None if text is None else Fraction(text)


def cmd_build(args) -> Result:
    what = args.what
    annotations = None
    if what == "kl":
        params = KLBuildParams(args.k, _load_link(args.link), args.radius, args.holonomy,
                               args.geometry, _angle(args.angle))
        X = kl_build(params)
    elif what == "davis-moussong":
        X = davis_moussong_ball(args.k, _load_link(args.link), args.radius)
    elif what == "bourdon":
        X = bourdon_ball(args.p, args.q, args.radius)
    elif what == "develop":
        obj = io.load(args.input)
        if isinstance(obj, tuple):  # Coxeter matrix with group orders
            W, q = obj
            if args.q is not None:
                q = args.q
            if q is None:
                raise errors.InvalidInput("group orders are required: add \"q\" or use --q")
            chamber = right_angled_chamber_complex(W, q)
            if W.rank == 1:
                X = chamber.star_development()
                annotations = {"chamber_vertices": len(chamber.vertices)}
            else:
                obj = chamber.to_polygon_of_groups()
        if isinstance(obj, PolygonOfGroups):
            dev = develop_ball(obj, args.radius)
            X, annotations = dev.complex, dev.annotations()
        elif not isinstance(obj, tuple):
            raise errors.InvalidInput("develop needs a .pog or .cox file")
    elif what == "sl2-tree":
        ball = sl2_tree_ball(args.prime, args.radius)
        X, annotations = ball.complex, ball.annotations()
    elif what == "sl3-link":
        L = sl3_vertex_link(args.prime)
        classes = {str(i): n.to_json() for i, n in enumerate(L.nodes)}
        doc = io.graph_to_json(L, {"classes": classes})
        if args.output:
            io.save(args.output, doc)
        _write_dot(args, L.to_dot("sl3_link"))
        summary = {"nodes": len(L.nodes), "arcs": len(L.arcs)}
        return Result(EXIT_OK, {"build": what, "summary": summary, "output": args.output},
                      [f"{summary['nodes']} nodes, {summary['arcs']} arcs"])
    else:  # pragma: no cover - argparse
        raise errors.InvalidInput(f"unknown builder {what!r}")
    if args.output:
        io.save(args.output, io.complex_to_json(X, annotations))
    _write_dot(args, complex_to_dot(X))
    summary = X.summary()
    return Result(EXIT_OK, {"build": what, "summary": summary, "output": args.output}, [
        f"{summary['vertices']} vertices, {summary['edges']} edges, {summary['faces']} faces, "
        f"{summary['boundary_vertices']} boundary vertices"])


# -- measure -----------------------------------------------------------------


def cmd_measure(args) -> Result:
    what = args.what
    if what == "covolume":
        if args.orders:
            datum = CovolumeDatum(tuple((f"v{i}", int(x))
                                        for i, x in enumerate(args.orders.split(","))))
        else:
            if not args.inputs:
                raise errors.InvalidInput("covolume needs a .pog file or --orders")
            P = io.load(args.inputs[0], "polygon_of_groups")
            datum = P.covolume_datum()
        value = covolume(datum)
        return Result(EXIT_OK, {"covolume": str(value)}, [str(value)])
    if what == "girth":
        path = args.inputs[0]
        obj = io.load(path)
        if isinstance(obj, PolygonalComplex):
            if args.vertex is None:
                raise errors.InvalidInput("girth of a complex needs --vertex")
            L = link(obj, args.vertex)
        elif isinstance(obj, Graph):
            doc = io.read_json(path)
            weights = doc.get("weights")
            if weights is None:
                g = graph_girth(obj.neighbours())
                return Result(EXIT_OK, {"girth": g}, [str(g) if g else "infinite"])
            L = graph_link(obj.nodes, obj.edges)
            L = LinkGraph(L.nodes, tuple(type(a)(a.ends, as_angle(w), a.label)
                                         for a, w in zip(L.arcs, weights)))
        else:
            raise errors.InvalidInput("girth needs a .cplx or .graph file")
        rep = weighted_girth(L)
        total = None if rep.infinite else str(rep.minimum)
        return Result(EXIT_OK, {"girth": total, "witness": [L.arcs[j].label for j in
                                                             rep.witness]},
                      [f"{total}π" if total else "infinite"])
    if what == "holonomy":
        X = io.load(args.inputs[0], "polygonal_complex")
        rep = holonomy(X, args.face, args.base_step)
        return Result(EXIT_OK, rep.report(), [rep.classification])
    if what == "isomorphic":
        if len(args.inputs) != 2:
            raise errors.InvalidInput("isomorphic needs two files")
        a, b = (io.load(p) for p in args.inputs)
        if isinstance(a, PolygonalComplex) and isinstance(b, PolygonalComplex):
            iso = are_isomorphic(a, b)
            found = None if iso is None else {"vertices": iso.vertices, "edges": iso.edges,
                                              "faces": iso.faces}
        elif isinstance(a, Graph) and isinstance(b, Graph):
            found = link_isomorphism(graph_link(a.nodes, a.edges), graph_link(b.nodes, b.edges))
        else:
            raise errors.InvalidInput("isomorphic needs two .cplx or two .graph files")
        if found is None:
            return Result(EXIT_FAIL, {"isomorphic": False, "bijection": None}, ["none"])
        if "vertices" not in found:
            found = {"vertices": found}
        clean = {kind: {str(k): v for k, v in sorted(m.items())} for kind, m in found.items()}
        return Result(EXIT_OK, {"isomorphic": True, "bijection": clean},
                      [f"{kind}: {m}" for kind, m in clean.items()])
    if what == "index":
        P = parse_presentation(args.inputs[0])
        H = [parse_word(w, P.generators) for w in (args.subgroup or [])]
        res = todd_coxeter(P, H, args.budget)
        if isinstance(res, Inconclusive):
            return Result(EXIT_INCONCLUSIVE, {"index": None, "inconclusive": True,
                                              "budget": res.budget},
                          [f"inconclusive within {res.budget} cosets"])
        return Result(EXIT_OK, {"index": res.index}, [str(res.index)])
    raise errors.InvalidInput(f"unknown measurement {what!r}")  # pragma: no cover


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="plain-text report")
    common.add_argument("--dot", metavar="FILE", help="also write a DOT rendering")

    parser = argparse.ArgumentParser(prog="npcx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="run a curvature check")
    check.add_argument("what", choices=["link-condition", "flag", "systolic", "bridged", "mgon",
                                        "cat0-cubical"])
    check.add_argument("input")
    check.add_argument("--m", type=int, default=3, help="m for the generalized m-gon check")
    check.add_argument("--include-boundary", action="store_true",
                       help="also test vertices marked as boundary")
    check.set_defaults(run=cmd_check)

    build = sub.add_parser("build", parents=[common], help="construct a complex")
    build.add_argument("what", choices=["kl", "davis-moussong", "sl2-tree", "sl3-link",
                                        "bourdon", "develop"])
    build.add_argument("input", nargs="?", help=".pog or .cox file for develop")
    build.add_argument("--k", type=int)
    build.add_argument("--link", default="K4", help="named graph or .graph file")
    build.add_argument("--holonomy", default="trivial", help="trivial, nontrivial or seed:<n>")
    build.add_argument("--radius", type=int, default=1)
    build.add_argument("--geometry", choices=[EUCLIDEAN, HYPERBOLIC], default=EUCLIDEAN)
    build.add_argument("--angle", help="corner angle in units of pi, e.g. 1/2")
    build.add_argument("--prime", type=int, default=2)
    build.add_argument("--p", type=int, default=5)
    build.add_argument("--q", type=int)
    build.add_argument("-o", "--output")
    build.set_defaults(run=cmd_build)

    measure = sub.add_parser("measure", parents=[common], help="compute an invariant")
    measure.add_argument("what", choices=["covolume", "girth", "holonomy", "isomorphic", "index"])
    measure.add_argument("inputs", nargs="*")
    measure.add_argument("--face", type=int, default=0)
    measure.add_argument("--base-step", type=int, default=0)
    measure.add_argument("--vertex", type=int)
    measure.add_argument("--orders", help="comma-separated stabiliser orders")
    measure.add_argument("--subgroup", action="append", help="subgroup generator word")
    measure.add_argument("--budget", type=int, default=10**5)
    measure.set_defaults(run=cmd_measure)
    return parser


def _check_build_options(args):
    if args.command != "build":
        return
    if args.what in ("kl", "davis-moussong") and args.k is None:
        raise errors.InvalidInput(f"build {args.what} needs --k")
    if args.what == "bourdon" and args.q is None:
        raise errors.InvalidInput("build bourdon needs --q")
    if args.what == "develop" and not args.input:
        raise errors.InvalidInput("build develop needs an input file")


def run(argv=None) -> Result:
    args = build_parser().parse_args(argv)
    try:
        _check_build_options(args)
        return args.run(args)
    except (errors.BudgetError, errors.LocalObstruction, errors.NotNonpositivelyCurved,
            errors.BoundaryCell, errors.AmbiguousPairing) as exc:
        return Result(EXIT_INCONCLUSIVE, {"error": type(exc).__name__, "message": str(exc)},
                      [f"{type(exc).__name__}: {exc}"])
    except (errors.NPCError, KeyError, TypeError, ValueError) as exc:
        return Result(EXIT_INPUT, {"error": type(exc).__name__, "message": str(exc)},
                      [f"{type(exc).__name__}: {exc}"])


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else argv
    result = run(args)
    if "--human" in args:
        sys.stdout.write("\n".join(result.lines) + "\n")
    else:
        sys.stdout.write(io.dumps(result.report))
    return result.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
