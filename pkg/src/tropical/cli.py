"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 usage or parse error, 3 budget
exceeded.  JSON is always sorted and free of timestamps so identical inputs
give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from .geometry.polygons import BudgetExceeded, LatticePolygon
from .geometry.subdivision import newton_polytope, regular_subdivision
from .polynomial import ParseError, TropicalPolynomial, evaluate, factor_univariate, format_polynomial, parse, roots_univariate
from .semiring import TropicalError

OUT_ENV = "TROPICAL_OUT"


class _Usage(Exception):
    pass


def _read(text: str) -> str:
    """Inline text, ``@path`` or the path of an existing file."""
    if text.startswith("@"):
        return Path(text[1:]).read_text()
    if len(text) < 256 and os.path.isfile(text):
        return Path(text).read_text()
    return text


def _poly(text: str, n_vars: int | None = None) -> TropicalPolynomial:
    return parse(_read(text).strip(), n_vars)


def _fmt(x) -> str:
    return str(x)


def _point(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise _Usage(f"cannot read point {text!r}; expected comma-separated rationals")


def _outdir(args) -> Path:
    d = Path(args.out or os.environ.get(OUT_ENV) or ".")
    d.mkdir(parents=True, exist_ok=True)
    return d


def _write(args, stem: str, obj=None, svg: str | None = None) -> list[Path]:
    out = _outdir(args)
    written = []
    if obj is not None and args.format in ("json", "both"):
        p = out / f"{stem}.json"
        p.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
        written.append(p)
    if svg is not None and args.format in ("svg", "both"):
        p = out / f"{stem}.svg"
        p.write_text(svg)
        written.append(p)
    return written


def _random_polynomial(degree: int, seed: int) -> TropicalPolynomial:
    rng = random.Random(seed)
    terms = {(i, j): Fraction(rng.randint(-20, 20)) for i in range(degree + 1) for j in range(degree + 1 - i)}
    return TropicalPolynomial(terms, 2)


# ------------------------------------------------------------------ commands

def cmd_eval(args) -> int:
    p = _poly(args.polynomial)
    value, arg = evaluate(p, _point(args.at))
    print(f"{_fmt(value)} (argmax: {len(arg)} term{'s' if len(arg) != 1 else ''})")
    return 0


def cmd_roots(args) -> int:
    p = _poly(args.polynomial, 1)
    print(" ".join(str(r) for r in roots_univariate(p)))
    return 0


def cmd_factor(args) -> int:
    p = _poly(args.polynomial, 1)
    c, roots = factor_univariate(p)
    print("; ".join([f"c={c}"] + [f"root {r.location}^{r.multiplicity}" for r in roots]))
    return 0


def _curve_input(args) -> TropicalPolynomial:
    if args.random is not None:
        return _random_polynomial(args.random, args.seed)
    if args.polynomial is None:
        raise _Usage("give a polynomial or --random DEGREE")
    return _poly(args.polynomial, 2)


def cmd_curve(args) -> int:
    from .hypersurface import build_curve, check_balancing, is_smooth
    from .render import render_curve

    p = _curve_input(args)
    C = build_curve(p)
    obj = C.to_json_obj()
    obj["polynomial"] = format_polynomial(p)
    obj["smooth"] = is_smooth(C)
    obj["balanced"] = check_balancing(C).balanced
    _write(args, "curve", obj, render_curve(C))
    n = C.counts()
    print(f"vertices {n['vertices']}, edges {n['edges']}, rays {n['rays']}; smooth {obj['smooth']}; balanced {obj['balanced']}")
    return 0


def cmd_surface(args) -> int:
    from .hypersurface import build_surface, is_smooth

    C = build_surface(_poly(args.polynomial, 3))
    obj = C.to_json_obj()
    obj["smooth"] = is_smooth(C)
    _write(args, "surface", obj)
    n = C.counts()
    print(
        f"vertices {n['vertices']}, edges {n['edges']}, rays {n['rays']}, "
        f"bounded 2-cells {n['bounded_cells']}, unbounded 2-cells {n['unbounded_cells']}; smooth {obj['smooth']}"
    )
    return 0


def cmd_subdivide(args) -> int:
    sub = regular_subdivision(newton_polytope(_poly(args.polynomial)))
    _write(args, "subdivision", sub.to_json_obj())
    for cell, vol in zip(sub.cells, sub.normalized_volumes()):
        pts = " ".join("(" + ",".join(str(x) for x in sub.points[i]) + ")" for i in cell)
        print(f"{pts}  volume {vol}")
    return 0


def cmd_intersect(args) -> int:
    from .hypersurface import build_curve
    from .intersection import detect_tangencies, stable_intersection
    from .render import render_intersection

    f, g = _poly(args.first, 2), _poly(args.second, 2)
    pts = stable_intersection(f, g)
    comps = detect_tangencies(f, g)
    obj = {
        "points": [
            {"location": [str(x) for x in p.location], "multiplicity": p.multiplicity, "transversal": p.transversal} for p in pts
        ],
        "total_multiplicity": sum(p.multiplicity for p in pts),
        "components": [c.to_json_obj() for c in comps],
    }
    _write(args, "intersection", obj, render_intersection(build_curve(f), build_curve(g), pts))
    for p in pts:
        print(f"({p.location[0]},{p.location[1]}) mult {p.multiplicity}")
    print(f"total {obj['total_multiplicity']}; tangencies {sum(c.tangent for c in comps)}")
    return 0


def cmd_skeleton(args) -> int:
    from .hypersurface import build_curve
    from .render import render_graph
    from .skeleton import MetricGraph, skeletonize

    if args.graph:
        G = MetricGraph.from_json_obj(json.loads(_read(args.graph)))
    else:
        G = skeletonize(build_curve(_curve_input(args)))
    obj = G.to_json_obj()
    obj["genus"] = G.genus() if G.n else 0
    obj["bridges"] = G.bridges()
    obj["sprawling"] = G.is_sprawling()
    _write(args, "skeleton", obj, render_graph(G))
    for u, v, length in G.edges:
        print(f"{u}-{v} length {length}")
    print(f"genus {obj['genus']}")
    return 0


def cmd_census(args) -> int:
    from .census import troplanar_census

    rec = troplanar_census(args.genus, budget=args.budget, workers=args.workers)
    _write(args, f"census_g{args.genus}", rec.to_json_obj())
    print(rec.table())
    return 0 if rec.complete else 3


def _polygon(text: str) -> LatticePolygon:
    try:
        pts = [tuple(int(x) for x in tok.split(",")) for tok in text.split()]
    except ValueError:
        raise _Usage(f"cannot read polygon {text!r}; expected points like '0,0 4,0 0,4'")
    return LatticePolygon(pts)


def cmd_triangulations(args) -> int:
    from .geometry.regularity import triangulation_witness
    from .geometry.triangulations import triangulation_orbits

    if args.degree is not None:
        P = LatticePolygon([(0, 0), (args.degree, 0), (0, args.degree)])
    elif args.polygon:
        P = _polygon(args.polygon)
    else:
        raise _Usage("give --polygon or --degree")
    points, orbits = triangulation_orbits(P, up_to_symmetry=True, budget=args.budget)
    nonregular = [o for o in orbits if not triangulation_witness(points, o.representative).regular]
    obj = {
        "points": [list(p) for p in points],
        "orbits": len(orbits),
        "total": sum(o.size for o in orbits),
        "nonregular": [{"triangles": [list(t) for t in o.representative], "orbit_size": o.size} for o in nonregular],
    }
    _write(args, "triangulations", obj)
    print(f"triangulations {obj['total']} ({obj['orbits']} up to symmetry); non-regular {len(nonregular)} up to symmetry")
    return 0


def cmd_spacecurve(args) -> int:
    from .intersection import space_curve

    S = space_curve(_poly(args.first, 3), _poly(args.second, 3))
    _write(args, "spacecurve", S.to_json_obj())
    n = S.counts()
    print(f"vertices {n['vertices']}, edges {n['edges']}, rays {n['rays']}, genus {n['genus']}; smooth {S.smooth}")
    for v in S.complex.vertices:
        print("vertex (" + ",".join(str(x) for x in v) + ")")
    return 0


def cmd_tropicalize(args) -> int:
    from .tropicalize import check_witness, parse_series, parse_valued_polynomial, tropicalize_poly

    polys = [parse_valued_polynomial(_read(t).strip()) for t in args.polynomials]
    n = max(f.n_vars for f in polys)
    if any(f.n_vars != n for f in polys):
        names = ["x"] if n == 1 else ["x", "y"] if n == 2 else ["x", "y", "z"]
        polys = [parse_valued_polynomial(_read(t).strip(), names) for t in args.polynomials]
    trops = [tropicalize_poly(f, args.prime) for f in polys]
    for t in trops:
        print(format_polynomial(t))
    obj = {"tropical": [t.to_json_obj() for t in trops]}
    code = 0
    if args.witness:
        sol = [parse_series(s) for s in args.witness.split(";")]
        res = check_witness(polys, sol)
        obj["witness"] = {"status": res.status.value, "image": [str(x) for x in res.image], "on_tropical": res.on_tropical}
        print(f"witness {res.status.value}; image (" + ",".join(str(x) for x in res.image) + f"); on tropical variety {res.on_tropical}")
        code = 0 if res else 1
    _write(args, "tropicalize", obj)
    return code


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "svg", "both"), default="both")
    common.add_argument("--out", help=f"output directory (default ${OUT_ENV} or the current directory)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--budget", type=float, default=None, help="wall-clock budget in seconds")

    ap = argparse.ArgumentParser(prog="tropical", description="Exact tropical geometry toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a tropical polynomial")
    s.add_argument("polynomial")
    s.add_argument("--at", required=True, help="comma-separated coordinates")
    s.set_defaults(func=cmd_eval)

    for name, func, hlp in (("roots", cmd_roots, "roots of a univariate polynomial"), ("factor", cmd_factor, "factor a univariate polynomial")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("polynomial")
        s.set_defaults(func=func)

    for name, func, hlp in (("curve", cmd_curve, "plane tropical curve"), ("skeleton", cmd_skeleton, "skeleton metric graph")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("polynomial", nargs="?")
        s.add_argument("--random", type=int, metavar="DEGREE", help="use a random polynomial of this degree (see --seed)")
        if name == "skeleton":
            s.add_argument("--graph", help="metric graph JSON instead of a polynomial")
        s.set_defaults(func=func)

    s = sub.add_parser("surface", parents=[common], help="tropical surface in R^3")
    s.add_argument("polynomial")
    s.set_defaults(func=cmd_surface)

    s = sub.add_parser("subdivide", parents=[common], help="induced subdivision of the Newton polytope")
    s.add_argument("polynomial")
    s.set_defaults(func=cmd_subdivide)

    for name, func, hlp in (("intersect", cmd_intersect, "stable intersection of two plane curves"), ("spacecurve", cmd_spacecurve, "intersection of two surfaces")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("first")
        s.add_argument("second")
        s.set_defaults(func=func)

    s = sub.add_parser("census", parents=[common], help="troplanar graphs of a given genus")
    s.add_argument("--genus", type=int, required=True)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("triangulations", parents=[common], help="unimodular triangulations of a lattice polygon")
    s.add_argument("--polygon", help="vertices like '0,0 4,0 0,4'")
    s.add_argument("--degree", type=int, help="use the triangle of this degree")
    s.set_defaults(func=cmd_triangulations)

    s = sub.add_parser("tropicalize", parents=[common], help="tropicalize classical polynomials over Puiseux series")
    s.add_argument("polynomials", nargs="+")
    s.add_argument("--prime", type=int, help="use the p-adic valuation on rational coefficients")
    s.add_argument("--witness", help="semicolon-separated series, checked as a common zero")
    s.set_defaults(func=cmd_tropicalize)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except (ParseError, _Usage) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except TropicalError as e:
        from .tropicalize import SeriesParseError

        print(f"error: {e}", file=sys.stderr)
        return 2 if isinstance(e, SeriesParseError) else 1
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
