"""Command line front end.

Every command prints JSON (one object per line for multi-result commands)
with exact numbers as strings.  Exit status: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import linalg as la
from .cones import Cone, contains, fundamental_exceptional_chamber, subdivide, wall_meets_cone
from .corpus import list_cases, run_case
from .domains import (
    ball,
    choose_x0,
    default_reference,
    dirichlet_domain,
    rank2_boundary_rays,
    rank2_isometry_generator,
)
from .exactlat import (
    dual_class,
    divisibility,
    is_isometry,
    orthogonal_complement,
    pair,
    signature,
)
from .folding import folded_weyl_order
from .hunt import HuntQuery, cone_bound, enum_negative
from .io import dumps, load_lattice, parse_matrix, parse_vector
from .roots import chamber_walk, is_integral_reflection, reflect, reflection, weyl_factorize
from .zariski import zariski_decompose

EXIT_DOMAIN = 1


def _v(v):
    return [la.fmt(x) for x in v]


def _m(m):
    return [[la.fmt(x) for x in r] for r in m]


def _roots(L, text):
    """Root list: names separated by commas, or literal vectors separated by ';'."""
    if not text:
        return [], None
    sep = ";" if ";" in text else ","
    tokens = [t.strip() for t in text.split(sep) if t.strip()]
    vecs = [parse_vector(L, t) for t in tokens]
    names = tokens if all(L.name_of(v) == t for t, v in zip(tokens, vecs)) else None
    return vecs, names


def _load_cone(L, path):
    data = json.loads(Path(path).read_text())
    return Cone.from_json(L, data)


# -- commands --------------------------------------------------------------------


def cmd_pair(a):
    L = load_lattice(a.lattice)
    return {"pair": la.fmt(pair(L, parse_vector(L, a.u), parse_vector(L, a.v)))}


def cmd_signature(a):
    plus, minus = signature(load_lattice(a.lattice))
    return {"plus": plus, "minus": minus}


def cmd_dual(a):
    L = load_lattice(a.lattice)
    v = parse_vector(L, a.vector)
    return {"dual": _v(dual_class(L, v, to_functional=a.to_functional))}


def cmd_divisibility(a):
    L = load_lattice(a.lattice)
    return {"divisibility": divisibility(L, parse_vector(L, a.vector))}


def cmd_complement(a):
    L = load_lattice(a.lattice)
    S = [parse_vector(L, t) for t in a.vectors]
    sub = orthogonal_complement(L, S)
    return {"rank": sub.rank, "basis": [_v(b) for b in sub.basis], "gram": _m(sub.gram)}


def cmd_reflect(a):
    L = load_lattice(a.lattice)
    e = parse_vector(L, a.root)
    out = {"matrix": _m(reflection(L, e))}
    if a.vector:
        out["image"] = _v(reflect(L, e, parse_vector(L, a.vector)))
    return out


def cmd_integral(a):
    L = load_lattice(a.lattice)
    return {"integral": is_integral_reflection(L, parse_vector(L, a.root))}


def cmd_walk(a):
    L = load_lattice(a.lattice)
    roots, names = _roots(L, a.roots)
    word, rep = chamber_walk(L, roots, parse_vector(L, a.alpha), parse_vector(L, a.h), names=names)
    return {"word": word.labels(), "rep": _v(rep), "length": len(word)}


def cmd_factorize(a):
    L = load_lattice(a.lattice)
    roots, names = _roots(L, a.roots)
    g = parse_matrix(L, a.g)
    w, b = weyl_factorize(L, roots, g, parse_vector(L, a.h), names=names)
    return {"w": w.labels(), "w_matrix": _m(w.matrix(L)), "b": _m(b)}


def cmd_fold(a):
    order = folded_weyl_order(a.type, a.tau, allow_large=a.allow_large, method=a.method)
    return {"type": a.type, "tau": a.tau, "order": order}


def cmd_fe(a):
    L = load_lattice(a.lattice)
    roots, _ = _roots(L, a.roots)
    cone = fundamental_exceptional_chamber(L, roots, parse_vector(L, a.h))
    out = {"cone": cone.to_json()}
    if a.point:
        out["point"] = contains(cone, parse_vector(L, a.point))
    return out


def cmd_subdivide(a):
    L = load_lattice(a.lattice)
    cone = _load_cone(L, a.cone)
    walls, _ = _roots(L, a.walls)
    cells = subdivide(cone, walls)
    return [
        {"signs": list(c.signs), "witness": _v(c.witness), "cone": c.cone.to_json()} for c in cells
    ]


def cmd_zariski(a):
    L = load_lattice(a.lattice)
    roots, names = _roots(L, a.roots)
    D = parse_vector(L, a.cls)
    dec = zariski_decompose(L, D, roots)
    labels = names or [json.dumps(_v(e)) for e in roots]
    return {
        "P": _v(dec.P),
        "N_coeffs": {labels[i]: la.fmt(dec.coeffs[i]) for i in range(len(roots))},
        "support": [labels[i] for i in dec.support],
        "qP": la.fmt(pair(L, dec.P, dec.P)),
        "qD": la.fmt(pair(L, D, D)),
    }


def cmd_hunt(a):
    L = load_lattice(a.lattice)
    h = parse_vector(L, a.h)
    cone = _load_cone(L, a.cone) if a.cone else None
    if a.M == "auto":
        if cone is None:
            raise ValueError("--M auto needs --cone")
        M = cone_bound(L, cone, h, la.frac(a.B), la.frac(a.widen))
    else:
        M = la.frac(a.M)
    found = enum_negative(HuntQuery(L, h, la.frac(a.B), M))
    if cone is not None:
        found = [c for c in found if wall_meets_cone(L, c.coords, cone)]
    return [c.to_json() for c in found]


def cmd_domain(a):
    L = load_lattice(a.lattice)
    if a.gens == "auto":
        gens = [rank2_isometry_generator(L, a.bound)]
    else:
        gens = [parse_matrix(L, t) for t in a.gens.split(",")]
    gb = ball(L, gens, a.radius)
    if a.x0:
        x0 = parse_vector(L, a.x0)
    else:
        x0 = choose_x0(L, gb, default_reference(L), seed=a.seed)
    return dirichlet_domain(L, x0, gb).to_json()


def cmd_rank2(a):
    L = load_lattice(a.lattice)
    rays = rank2_boundary_rays(L)
    out = rays.to_json()
    if not rays.rational:
        g = rank2_isometry_generator(L, a.bound)
        out["generator"] = _m(g)
        out["generator_is_isometry"] = is_isometry(L, g)
    return out


def cmd_corpus(a):
    if a.action == "list":
        return {"cases": list_cases()}
    names = list_cases() if a.name in (None, "all") else [a.name]
    reports = []
    for n in names:
        try:
            reports.append(run_case(n))
        except KeyError as exc:
            raise ValueError(str(exc)) from exc
    return reports


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conelat", description=__doc__.splitlines()[0])
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    def lat(sp):
        sp.add_argument("--lattice", required=True, help="lattice JSON file")

    sp = cmd("pair", cmd_pair, "pairing of two vectors")
    lat(sp)
    sp.add_argument("u")
    sp.add_argument("v")

    lat(cmd("signature", cmd_signature, "signature of the Gram matrix"))

    sp = cmd("dual", cmd_dual, "class representing a functional (or the reverse)")
    lat(sp)
    sp.add_argument("vector")
    sp.add_argument("--to-functional", action="store_true", help="return G v instead of G^-1 v")

    sp = cmd("divisibility", cmd_divisibility, "gcd of pairings with the lattice")
    lat(sp)
    sp.add_argument("vector")

    sp = cmd("complement", cmd_complement, "saturated orthogonal complement")
    lat(sp)
    sp.add_argument("vectors", nargs="*")

    sp = cmd("reflect", cmd_reflect, "reflection matrix in a root")
    lat(sp)
    sp.add_argument("--root", required=True)
    sp.add_argument("--vector")

    sp = cmd("integral", cmd_integral, "is the reflection in a root integral")
    lat(sp)
    sp.add_argument("--root", required=True)

    sp = cmd("walk", cmd_walk, "reflect a positive class into the fundamental chamber")
    lat(sp)
    sp.add_argument("--h", required=True, help="reference positive vector")
    sp.add_argument("--roots", required=True, help="root names joined by commas, or literal vectors joined by ';'")
    sp.add_argument("--alpha", required=True)

    sp = cmd("factorize", cmd_factorize, "split an isometry as Weyl word times chamber symmetry")
    lat(sp)
    sp.add_argument("--h", required=True)
    sp.add_argument("--roots", required=True)
    sp.add_argument("--g", required=True, help="isometry name or JSON matrix")

    sp = cmd("fold", cmd_fold, "order of the tau-fixed subgroup of an ADE Weyl group")
    sp.add_argument("--type", required=True, help="A1..A8, D4..D8, E6, E7, E8")
    sp.add_argument("--tau", default="identity", help="identity, flip, triality or a permutation")
    sp.add_argument("--allow-large", action="store_true", help="permit groups above 10^6 elements")
    sp.add_argument("--method", default="auto", choices=["auto", "permutation", "orbit"])

    sp = cmd("fe", cmd_fe, "fundamental exceptional chamber")
    lat(sp)
    sp.add_argument("--h", required=True)
    sp.add_argument("--roots", default="")
    sp.add_argument("--point", help="classify this point")

    sp = cmd("subdivide", cmd_subdivide, "cut a cone by walls")
    lat(sp)
    sp.add_argument("--cone", required=True, help="cone JSON file")
    sp.add_argument("--walls", default="")

    sp = cmd("zariski", cmd_zariski, "Zariski decomposition against roots")
    lat(sp)
    sp.add_argument("--roots", required=True)
    sp.add_argument("--class", dest="cls", required=True)

    sp = cmd("hunt", cmd_hunt, "enumerate primitive negative classes")
    lat(sp)
    sp.add_argument("--h", required=True)
    sp.add_argument("--B", required=True, help="square bound (rational)")
    sp.add_argument("--M", default="auto", help="height bound (rational) or 'auto'")
    sp.add_argument("--cone", help="cone JSON file; keeps walls meeting it")
    sp.add_argument("--widen", default="1", help="safety factor for --M auto")

    sp = cmd("domain", cmd_domain, "Dirichlet domain of a finitely generated group")
    lat(sp)
    sp.add_argument("--x0", help="base point (default: random small point)")
    sp.add_argument("--gens", required=True, help="isometry names, or 'auto' in rank 2")
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--bound", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)

    sp = cmd("rank2", cmd_rank2, "boundary rays of a hyperbolic plane")
    lat(sp)
    sp.add_argument("--bound", type=int, default=50)

    sp = cmd("corpus", cmd_corpus, "worked-example corpus")
    sp.add_argument("action", choices=["list", "run"])
    sp.add_argument("name", nargs="?")
    return p


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return pad + "  ".join(str(x) for x in obj)
        return "\n".join(_pretty(x, indent) for x in obj)
    return f"{pad}{obj}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (ValueError, ZeroDivisionError, KeyError, OSError) as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    failed = False
    if args.command == "corpus" and args.action == "run":
        failed = not all(r["ok"] for r in result)
    if args.pretty:
        print(_pretty(result))
    elif isinstance(result, list):
        for item in result:
            print(dumps(item))
    else:
        print(dumps(result))
    return EXIT_DOMAIN if failed else 0


if __name__ == "__main__":
    sys.exit(main())
