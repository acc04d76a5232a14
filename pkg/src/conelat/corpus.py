"""Worked-example corpus with golden outputs.

Each case is a JSON file holding the input data, a list of numeric claims
that must hold, and the golden result of the case's runner.  The corpus
directory can be overridden with ``CONELAT_CORPUS``.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from . import linalg as la
from .domains import (
    ball,
    dirichlet_domain,
    random_positive_samples,
    rank2_boundary_rays,
    rank2_isometry_generator,
    tiles,
)
from .exactlat import divisibility, is_primitive, orthogonal_complement, pair, signature
from .folding import folded_weyl_order
from .io import dumps, lattice_from_dict
from .roots import is_integral_reflection, reflect
from .zariski import zariski_decompose

ENV_VAR = "CONELAT_CORPUS"


def corpus_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path(__file__).with_name("corpus")


def list_cases() -> list[str]:
    return sorted(p.stem for p in corpus_dir().glob("*.json"))


def load_case(name: str) -> dict:
    path = corpus_dir() / f"{name}.json"
    if not path.exists():
        raise KeyError(f"no corpus case named {name!r}")
    return json.loads(path.read_text())


def _q(L, v):
    return la.fmt(pair(L, v, v))


def _run_elliptic(case):
    L = lattice_from_dict(case["lattice"])
    s, f, e = (L.vector(k) for k in "sfe")
    alpha = L.vector("alpha")
    dec = zariski_decompose(L, alpha, [s, e])
    plus, minus = signature(L)
    return {
        "f.s": la.fmt(pair(L, f, s)),
        "e.s": la.fmt(pair(L, e, s)),
        "e.f": la.fmt(pair(L, e, f)),
        "q(s)": _q(L, s),
        "q(e)": _q(L, e),
        "q(f)": _q(L, f),
        "q(alpha)": _q(L, alpha),
        "alpha primitive": is_primitive(alpha),
        "signature": [plus, minus],
        "divisibility": {k: divisibility(L, L.vector(k)) for k in ("s", "f", "e", "alpha")},
        "zariski(alpha; s, e)": {
            "P": [la.fmt(x) for x in dec.P],
            "N_coeffs": {"s": la.fmt(dec.coeffs[0]), "e": la.fmt(dec.coeffs[1])},
            "qP": _q(L, dec.P),
        },
    }


def _run_quartic(case):
    L = lattice_from_dict(case["lattice"])
    c1, c2 = L.vector("C1"), L.vector("C2")
    d2 = la.add(c2, la.scale(Fraction(1, 2), c1))
    two_d2 = la.scale(2, d2)
    comp = orthogonal_complement(L, [c1])
    plus, minus = signature(L)
    return {
        "D2": [la.fmt(x) for x in d2],
        "D2.C1": la.fmt(pair(L, d2, c1)),
        "q(D2)": _q(L, d2),
        "q(2D2)": _q(L, two_d2),
        "2D2 primitive": is_primitive(two_d2),
        "signature": [plus, minus],
        "rank C1^perp": comp.rank,
        "gram C1^perp": [[la.fmt(x) for x in r] for r in comp.gram],
    }


def _run_witness(case):
    L = lattice_from_dict(case["lattice"])
    e, a = L.vector("e"), L.vector("alpha")
    img = reflect(L, e, a)
    shift = la.sub(img, a)
    return {
        "integral reflection": is_integral_reflection(L, e),
        "q(e)": _q(L, e),
        "divisibility(e)": divisibility(L, e),
        "R_e(alpha)": [la.fmt(x) for x in img],
        "R_e(alpha) - alpha in units of e": la.fmt(shift[0] / e[0]),
        "denominator": max(x.denominator for x in img),
    }


def _run_folded(case):
    return {
        f"{t}/{tau}": folded_weyl_order(t, tau) for t, tau in case["table"]
    }


def _run_pell(case):
    L = lattice_from_dict(case["lattice"])
    rays = rank2_boundary_rays(L)
    bound = case["search_bound"]
    g = rank2_isometry_generator(L, bound)
    x0 = L.vector("x0")
    gb = ball(L, [g], case["radius"])
    dom = dirichlet_domain(L, x0, gb)
    samples = random_positive_samples(L, x0, case["samples"], seed=case["seed"])
    rep = tiles(dom, ball(L, [g], case["tile_radius"]), samples)
    return {
        "rays": rays.to_json(),
        "generator": [[la.fmt(x) for x in r] for r in g],
        "generator trace": la.fmt(g[0][0] + g[1][1]),
        "active halfspaces": len(dom.active),
        "stabilized": dom.stabilized,
        "domain": dom.to_json(),
        "tiling": rep.to_json(),
    }


RUNNERS = {
    "elliptic": _run_elliptic,
    "quartic": _run_quartic,
    "witness": _run_witness,
    "folded": _run_folded,
    "pell": _run_pell,
}


def _lookup(results, path: str):
    cur = results
    for part in path.split("::"):
        cur = cur[part]
    return cur


def compute(case: dict) -> dict:
    return RUNNERS[case["kind"]](case)


def run_case(name: str) -> dict:
    """Run a case, check its claims and compare with the golden output."""
    case = load_case(name)
    results = compute(case)
    claims = []
    for c in case.get("claims", []):
        actual = _lookup(results, c["key"])
        claims.append({"key": c["key"], "expected": c["value"], "actual": actual, "ok": actual == c["value"]})
    golden = case.get("golden")
    golden_ok = golden is not None and dumps(golden) == dumps(results)
    return {
        "case": name,
        "description": case.get("description", ""),
        "claims": claims,
        "golden_match": golden_ok,
        "ok": golden_ok and all(c["ok"] for c in claims),
        "results": results,
    }


def freeze(name: str) -> None:
    """Recompute and store the golden output of a case (maintenance helper)."""
    path = corpus_dir() / f"{name}.json"
    case = json.loads(path.read_text())
    case["golden"] = compute(case)
    path.write_text(json.dumps(case, indent=2, sort_keys=True) + "\n")
