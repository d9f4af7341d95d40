"""Command-line entry point: ``alab <module> <verb> [flags]``.

Every command prints one JSON report (see :mod:`alab.report`) to stdout, or
to ``--out``.  Exit codes: 0 success or pass, 1 fail verdict, 2 usage or
input error.  ``cones classify --all`` is the one CSV emitter.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction
from importlib import resources
from typing import Any

import numpy as np

from . import bttree, checks, coarse, cones, cutproject, places, rootsys
from .report import CONFIG_SCHEMA, decimal12, dumps, irrational_vec, jsonable, make_report


class UsageError(Exception):
    pass


class Outcome:
    """What a handler returns: payload plus optional verdict and witness."""

    def __init__(self, payload: Any, verdict: str | None = None, witness: Any = None,
                 text: str | None = None):
        self.payload, self.verdict, self.witness, self.text = payload, verdict, witness, text


def _pf(ok: bool) -> str:
    return "pass" if ok else "fail"


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _load_json(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)


# -- places --------------------------------------------------------------------

def cmd_places_product_formula(a):
    q = places.as_rational(a.q)
    val = places.product_formula(q)
    return Outcome({"input": places.fmt_rational(q), "place": "all",
                    "places": [str(s) for s in places.relevant_places(q)],
                    "value": places.fmt_rational(val)})


def cmd_places_abs(a):
    q = places.as_rational(a.q)
    pl = places.Place.parse(a.at)
    return Outcome({"input": places.fmt_rational(q), "place": str(pl),
                    "value": places.fmt_rational(places.normalized_abs(q, pl))})


def cmd_places_valuation(a):
    q = places.as_rational(a.q)
    return Outcome({"input": places.fmt_rational(q), "place": str(a.p),
                    "value": str(places.valuation(q, a.p))})


def cmd_places_window(a):
    q = places.as_rational(a.q)
    S = _ints(a.s)
    c = places.as_rational(a.c)
    ok = places.s_integer_window_test(q, S, c)
    return Outcome({"input": places.fmt_rational(q), "place": "S=" + ",".join(map(str, S)),
                    "c": places.fmt_rational(c), "value": ok})


# -- rootsys ---------------------------------------------------------------------

def cmd_rootsys_list(a):
    return Outcome({"types": rootsys.supported_labels()})


def cmd_rootsys_dump(a):
    return Outcome(rootsys.to_json(rootsys.build_root_system(a.type)))


def cmd_rootsys_normalize(a):
    rs = rootsys.build_root_system(a.type)
    W = rootsys.normalized_weights(rs)
    return Outcome({"type": rs.label, "normalized_weights": [irrational_vec(W[:, i]) for i in range(rs.rank)]})


def cmd_rootsys_check(a):
    labels = rootsys.supported_labels() if a.all else [a.type]
    rows, bad = {}, {}
    for lab in labels:
        rs = rootsys.build_root_system(lab)
        orth = rootsys.orthogonality_check(rs)
        signs = rootsys.coeff_matrices(rs).sign_pattern_ok()
        rows[rs.label] = {"orthogonality": orth.ok, "sign_pattern": signs}
        if not (orth.ok and signs):
            bad[rs.label] = [[i, j, str(v)] for i, j, v in orth.violations]
    return Outcome({"types": rows}, _pf(not bad), bad or None)


# -- cones -----------------------------------------------------------------------

def _classification_json(cl) -> dict:
    return {"type": cl.label, "is_linear": cl.is_linear, "v": irrational_vec(cl.v),
            "vA": irrational_vec(cl.vA)}


def cmd_cones_classify(a):
    if a.all:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["type", "is_linear", "v", "v.A"])
        for lab in rootsys.supported_labels():
            cl = cones.linear_type_classification(lab)
            w.writerow([cl.label, str(cl.is_linear).lower(),
                        " ".join(decimal12(x) for x in cl.v), " ".join(decimal12(x) for x in cl.vA)])
        return Outcome(None, text=buf.getvalue())
    if not a.type:
        raise UsageError("cones classify: need --type or --all")
    return Outcome(_classification_json(cones.linear_type_classification(a.type)))


def cmd_cones_rescale(a):
    rep = cones.rescale_report(a.type, _floats(a.ts))
    payload = {"type": rep.label, "scalings": irrational_vec(rep.scalings),
               "checks": {str(t): ok for t, ok in rep.checks.items()},
               "unit_scaling_check": rep.unit_scaling_check}
    return Outcome(payload, _pf(rep.verified), None if rep.verified else payload["checks"])


def _forms_and_scalings(a):
    forms = cones.root_system_forms(a.type)
    s = np.ones(len(forms)) if a.unit else cones.rescale_constants(forms)
    return forms, s


def cmd_cones_nested(a):
    forms, s = _forms_and_scalings(a)
    ok = cones.nested_normal_set_check(forms, s, a.s, a.t)
    return Outcome({"type": a.type, "s": a.s, "t": a.t, "unit": a.unit, "nested": ok}, _pf(ok),
                   None if ok else {"s": a.s, "t": a.t})


def cmd_cones_tip(a):
    forms, s = _forms_and_scalings(a)
    x = _floats(a.point)
    fam = cones.GeneralizedConeFamily(forms, s)
    ns = fam.normal_set(a.level)
    cone = cones.tip_normal_cone(forms)
    return Outcome({"type": a.type, "level": a.level, "point": x,
                    "tip": irrational_vec(ns.tip),
                    "in_normal_set": ns.contains(x), "in_cone": cone.contains(x),
                    "in_cone_interior": cone.contains_interior(x)})


# -- cutproject ------------------------------------------------------------------

def _scheme_cfg(a) -> tuple[cutproject.CutProjectScheme, dict]:
    cfg = _load_json(a.config)
    if "schema" in cfg and cfg["schema"] != CONFIG_SCHEMA:
        raise UsageError(f"config schema must be {CONFIG_SCHEMA!r}")
    if a.depth is not None:
        cfg["height"] = a.depth
    return cutproject.scheme_from_config(cfg), cfg


def parse_element(scheme, text: str):
    """``a,b`` for Z[sqrt2] (a + b sqrt2), a rational for Z[1/p], ``a,b;c,d`` for SL2."""
    if isinstance(scheme, cutproject.ZSqrt2Scheme):
        p, q = text.split(",")
        return cutproject.QSqrt2(Fraction(p), Fraction(q))
    if isinstance(scheme, cutproject.ZOneOverPScheme):
        return Fraction(text)
    return bttree.parse_matrix(text, scheme.p)


def cmd_cutproject_enumerate(a):
    scheme, cfg = _scheme_cfg(a)
    lam = cutproject.enumerate_model_set(scheme, int(cfg.get("height", 5)))
    return Outcome({"config": scheme.config(), "height": lam.height, "size": len(lam),
                    "inverse_closed": lam.is_inverse_closed(), "points": lam.to_json()})


def cmd_cutproject_certify(a):
    scheme, cfg = _scheme_cfg(a)
    lam = cutproject.enumerate_model_set(scheme, int(cfg.get("height", 5)))
    cert = cutproject.approximate_group_certificate(lam, cfg.get("ext_height"))
    bad = cert.verify()
    payload = {"config": scheme.config(), "height": lam.height, "ext_height": cert.ext_height,
               **cert.to_json()}
    return Outcome(payload, _pf(not bad), [[scheme.to_json(x) for x in b] for b in bad[:3]] or None)


def cmd_cutproject_descent(a):
    scheme, cfg = _scheme_cfg(a)
    d = cfg.get("descent", {})
    probe = cutproject.scheme_from_config({**cfg, "window": d.get("radius", 2)})
    sample_h = int(d.get("sample_height", 3))
    lattice = sorted(scheme.enumerate_lattice(sample_h), key=scheme.key)
    I = [scheme.star_image(g) for g in lattice if probe.in_window(scheme.star_image(g))]
    rng = random.Random(a.seed)
    pis = [rng.sample(lattice, rng.randint(1, 3)) for _ in range(int(d.get("pi_samples", 100)))]
    cover_h = int(d.get("cover_height", max(int(cfg.get("height", 10)), sample_h)))
    cert = cutproject.descent_sets(scheme, I, I, pis, height=cover_h)
    wit = [[v[0], scheme.to_json(v[1])] for v in cert.violations[:3]] or None
    return Outcome({"config": scheme.config(), "I_size": len(I), **cert.to_json()}, _pf(cert.ok), wit)


def cmd_cutproject_star(a):
    scheme, _ = _scheme_cfg(a)
    g = parse_element(scheme, a.element)
    h = cutproject.star_map(scheme, g)
    return Outcome({"config": scheme.config(), "element": scheme.to_json(g),
                    "star": jsonable(h.to_json() if hasattr(h, "to_json") else h),
                    "in_model_set": scheme.in_model_set(g)})


def cmd_cutproject_commensurable(a):
    small, cfg = _scheme_cfg(a)
    big = cutproject.scheme_from_config({**cfg, "window": a.big_window})
    rep = cutproject.commensurability_check(small, big, int(cfg.get("height", 5)))
    payload = {"small": small.config(), "big": big.config(), "sizes": [rep.small, rep.big],
               "F": [small.to_json(f) for f in rep.F]}
    return Outcome(payload, _pf(rep.ok), [small.to_json(g) for g in rep.unmatched[:3]] or None)


# -- coarse ----------------------------------------------------------------------

def load_space(path: str) -> coarse.FiniteMetricSpace:
    """A JSON list of coordinates, or {"points": [...]}, or {"matrix": [[...]]}."""
    data = _load_json(path)
    if isinstance(data, dict) and "matrix" in data:
        M = np.asarray(data["matrix"], dtype=float)
        return coarse.FiniteMetricSpace(list(range(len(M))), matrix=M)
    if isinstance(data, dict):
        data = data.get("points")
    if not isinstance(data, list):
        raise UsageError("points file must hold a list of coordinates")
    return coarse.FiniteMetricSpace.euclidean(data)


def cmd_coarse_vr(a):
    X = load_space(a.input)
    cx = coarse.vr_complex(X, a.r, a.max_dim)
    return Outcome({"scale": a.r, "counts": list(cx.counts()),
                    "components": coarse.n_components(X, a.r),
                    "h1_rank": coarse.h1_rank(cx) if a.max_dim == 2 else None})


def cmd_coarse_probe(a):
    X = load_space(a.input)
    sched = _floats(a.schedule) if a.schedule else coarse.geometric_schedule(a.r0, a.k)
    return Outcome(coarse.probe_vr_filtration(X, sched).to_json(), "inconclusive")


def cmd_coarse_map(a):
    X = load_space(a.input)
    m = coarse.component_map(X, a.r, a.s)
    return Outcome({"r": a.r, "s": a.s, "mapping": {str(k): v for k, v in sorted(m.mapping.items())},
                    "verdict": m.verdict})


def cmd_coarse_product(a):
    A, B = load_space(a.input), load_space(a.input_b)
    P = coarse.product_space(A, B)
    ca, cb, cp = (coarse.n_components(X, a.r) for X in (A, B, P))
    return Outcome({"scale": a.r, "components": {"A": ca, "B": cb, "AxB": cp}}, _pf(cp == ca * cb))


def cmd_coarse_cayley(a):
    stages = [_ints(s) for s in a.stages.split(";")]
    try:
        d = coarse.weighted_cayley_distance(stages, a.start, a.target, a.budget)
    except coarse.BudgetExceeded as e:
        return Outcome({"distance": None, "lower_bound": e.lower_bound}, "inconclusive")
    return Outcome({"distance": d})


def cmd_coarse_interleave(a):
    data = _load_json(a.input)
    X = coarse.FiniteMetricSpace.euclidean(data["points"]) if "points" in data else None
    rep = coarse.filtration_equivalence_probe(data["filtration_a"], data["filtration_b"], X, a.r)
    payload = {"interleaved": rep.interleaved, "a_into_b": rep.a_into_b, "b_into_a": rep.b_into_a,
               "shift": rep.shift, "verdicts_a": rep.verdicts_a, "verdicts_b": rep.verdicts_b}
    return Outcome(payload, _pf(rep.interleaved and rep.verdicts_match))


# -- bttree ----------------------------------------------------------------------

def _vertex(text: str) -> bttree.TreeVertex:
    m, a = text.split(",")
    return bttree.TreeVertex(int(m), Fraction(a))


def _depth(a) -> int:
    return bttree.DEFAULT_DEPTH if a.depth is None else a.depth


def cmd_bttree_busemann(a):
    g = bttree.parse_matrix(a.g, a.p)
    depth = _depth(a)
    rng = random.Random(a.seed)
    cand = [x for x in bttree.ball(depth, a.p)
            if bttree.vertex_distance(bttree.BASE, bttree.act(g, x, a.p, depth=None), a.p) <= depth]
    sample = rng.sample(cand, min(a.samples, len(cand)))
    rep = bttree.horofunction_transform_check(g, a.p, sample)
    return Outcome(rep.to_json(), rep.verdict, rep.to_json()["witness"])


def cmd_bttree_beta(a):
    x = _vertex(a.vertex)
    val = bttree.busemann(bttree.INFINITY, x, a.T, a.p) if a.T else bttree.busemann_auto(bttree.INFINITY, x, a.p)
    return Outcome({"vertex": x.to_json(), "beta": val})


def cmd_bttree_act(a):
    g = bttree.parse_matrix(a.g, a.p)
    return Outcome({"g": [places.fmt_rational(e) for e in g],
                    "result": bttree.act(g, _vertex(a.vertex), a.p, depth=_depth(a)).to_json()})


def cmd_bttree_distance(a):
    return Outcome({"distance": bttree.vertex_distance(_vertex(a.v), _vertex(a.w), a.p)})


def cmd_bttree_neighbors(a):
    return Outcome({"neighbors": [v.to_json() for v in bttree.neighbors(_vertex(a.vertex), a.p)]})


def cmd_bttree_ball(a):
    vs = bttree.ball(a.radius, a.p)
    return Outcome({"radius": a.radius, "size": len(vs), "vertices": [v.to_json() for v in vs]})


def cmd_bttree_horofunction(a):
    gs = [bttree.parse_matrix(t, a.p) for t in a.g]
    vals = bttree.horofunction_sample(gs, a.p)
    return Outcome({"values": [[[places.fmt_rational(e) for e in g], places.fmt_rational(v)]
                               for g, v in vals.items()]})


# -- suite -----------------------------------------------------------------------

def builtin_acceptance_config() -> dict:
    text = resources.files("alab").joinpath("data/acceptance.json").read_text()
    return json.loads(text)


def run_suite(cfg: dict, seed: int | None = None) -> tuple[dict, str, Any]:
    """Run the named checks in order; compare ``expect`` fields with payloads."""
    if not isinstance(cfg, dict) or cfg.get("schema") != CONFIG_SCHEMA:
        raise UsageError(f"suite config must be an object with schema {CONFIG_SCHEMA!r}")
    entries = cfg.get("checks", [])
    if not isinstance(entries, list):
        raise UsageError("'checks' must be a list")
    base_seed = cfg.get("seed", 0) if seed is None else seed
    results, failures = [], []
    for ent in entries:
        name = ent.get("check")
        if name not in checks.CHECKS:
            raise UsageError(f"unknown check {name!r}")
        res = checks.run_check(name, ent.get("params"), int(ent.get("seed", base_seed)))
        label = ent.get("name", name)
        mism = {}
        payload = jsonable(res.payload)
        for key, want in (ent.get("expect") or {}).items():
            got = payload.get(key, "<missing>")
            if got != want:
                mism[key] = {"expected": want, "got": got}
        passed = res.passed and not mism
        results.append({"name": label, "check": name, "verdict": _pf(passed),
                        "seconds": round(res.seconds, 3), "payload": payload})
        if not passed:
            failures.append({"name": label, "witness": jsonable(res.witness), "expect_mismatch": mism or None})
    n_pass = sum(r["verdict"] == "pass" for r in results)
    summary = {"total": len(results), "passed": n_pass, "failed": len(results) - n_pass, "results": results}
    return summary, _pf(not failures), failures or None


def cmd_suite(a):
    cfg = builtin_acceptance_config() if a.config == "builtin:acceptance" else _load_json(a.config)
    summary, verdict, wit = run_suite(cfg, a.seed if a.seed_given else None)
    return Outcome(summary, verdict, wit)


# -- parser ----------------------------------------------------------------------

def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--out", default=d, help="write the report here instead of stdout")
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0,
                        help="seed for sampled verifications")
    parser.add_argument("--depth", "--height", dest="depth", type=int, default=d,
                        help="tree depth or truncation height")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alab", description=__doc__.splitlines()[0], allow_abbrev=False)
    _globals(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    _globals(common, suppress=True)
    mods = ap.add_subparsers(dest="module", metavar="module", required=True)

    def verbs(name, help_):
        p = mods.add_parser(name, help=help_, allow_abbrev=False)
        return p.add_subparsers(dest="verb", metavar="verb", required=True)

    def leaf(sub, name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common], allow_abbrev=False)
        p.set_defaults(func=fn)
        return p

    v = verbs("places", "rationals at the places of Q")
    p = leaf(v, "product-formula", cmd_places_product_formula, "product of |q|_s over all places")
    p.add_argument("q")
    p = leaf(v, "abs", cmd_places_abs, "normalized absolute value at one place")
    p.add_argument("q")
    p.add_argument("--at", required=True, help="prime or 'inf'")
    p = leaf(v, "valuation", cmd_places_valuation, "p-adic valuation")
    p.add_argument("q")
    p.add_argument("--p", type=int, required=True)
    p = leaf(v, "window", cmd_places_window, "S-integer window membership")
    p.add_argument("q")
    p.add_argument("--s", required=True, help="comma-separated primes")
    p.add_argument("--c", default="1")

    v = verbs("rootsys", "root data in the Bourbaki normalization")
    leaf(v, "list", cmd_rootsys_list, "supported types")
    p = leaf(v, "dump", cmd_rootsys_dump, "simple roots, weights, Cartan, c and n")
    p.add_argument("--type", required=True)
    p = leaf(v, "normalize", cmd_rootsys_normalize, "unit-length fundamental weights")
    p.add_argument("--type", required=True)
    p = leaf(v, "check", cmd_rootsys_check, "orthogonality and sign pattern")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--type")
    g.add_argument("--all", action="store_true")

    v = verbs("cones", "normal cones and the linear-type classification")
    p = leaf(v, "classify", cmd_cones_classify, "solve v.W = 1 and test v.A >= 0")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--type")
    g.add_argument("--all", action="store_true", help="CSV table for every supported type")
    p = leaf(v, "rescale", cmd_cones_rescale, "rescaling constants and their verification")
    p.add_argument("--type", required=True)
    p.add_argument("--ts", default="0.1,1,10")
    for name, fn, help_ in (("nested", cmd_cones_nested, "nested normal set check for s < t"),
                            ("tip", cmd_cones_tip, "membership in the tip normal set")):
        p = leaf(v, name, fn, help_)
        p.add_argument("--type", required=True)
        p.add_argument("--unit", action="store_true", help="use unit scalings")
        if name == "nested":
            p.add_argument("--s", type=float, default=0.0)
            p.add_argument("--t", type=float, default=1.0)
        else:
            p.add_argument("--point", required=True, help="comma-separated coordinates")
            p.add_argument("--level", type=float, default=1.0)

    v = verbs("cutproject", "cut-and-project model sets")
    for name, fn, help_ in (("enumerate", cmd_cutproject_enumerate, "truncated model set"),
                            ("certify", cmd_cutproject_certify, "approximate-group certificate"),
                            ("descent", cmd_cutproject_descent, "finite E, F covering the descent targets"),
                            ("star", cmd_cutproject_star, "star map of one element"),
                            ("commensurable", cmd_cutproject_commensurable, "compare two windows")):
        p = leaf(v, name, fn, help_)
        p.add_argument("config", help="JSON scheme config")
        if name == "star":
            p.add_argument("--element", required=True)
        if name == "commensurable":
            p.add_argument("--big-window", required=True)

    v = verbs("coarse", "Vietoris-Rips probes")
    p = leaf(v, "vr", cmd_coarse_vr, "complex at one scale")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--max-dim", type=int, default=2, choices=(0, 1, 2))
    p = leaf(v, "probe", cmd_coarse_probe, "filtration probe over a schedule")
    p.add_argument("--input", required=True)
    p.add_argument("--schedule", help="comma-separated scales")
    p.add_argument("--r0", type=float, default=1.0)
    p.add_argument("--k", type=int, default=5)
    p = leaf(v, "map", cmd_coarse_map, "component map between two scales")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p = leaf(v, "product", cmd_coarse_product, "components of a max-metric product")
    p.add_argument("--input", required=True)
    p.add_argument("--input-b", required=True)
    p.add_argument("--r", type=float, required=True)
    p = leaf(v, "cayley", cmd_coarse_cayley, "weighted word length in Z")
    p.add_argument("--stages", required=True, help="e.g. '1,-1;5,-5'")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--budget", type=float, default=100)
    p = leaf(v, "interleave", cmd_coarse_interleave, "compare two filtrations")
    p.add_argument("--input", required=True, help="JSON with filtration_a, filtration_b, points")
    p.add_argument("--r", type=float, default=0.0)

    v = verbs("bttree", "the Bruhat-Tits tree of SL2(Q_p)")
    p = leaf(v, "busemann", cmd_bttree_busemann, "horofunction transformation check")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--g", default="p,0;0,1/p")
    p.add_argument("--samples", type=int, default=60)
    p = leaf(v, "beta", cmd_bttree_beta, "Busemann value towards inf")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--vertex", required=True, help="'m,a'")
    p.add_argument("--T", type=int, help="truncation (default: past the bound)")
    p = leaf(v, "act", cmd_bttree_act, "g.v")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--g", required=True)
    p.add_argument("--vertex", default="0,0")
    p = leaf(v, "distance", cmd_bttree_distance, "tree distance")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p = leaf(v, "neighbors", cmd_bttree_neighbors, "the p+1 neighbors")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--vertex", default="0,0")
    p = leaf(v, "ball", cmd_bttree_ball, "vertices within a radius of o")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--radius", type=int, default=2)
    p = leaf(v, "horofunction", cmd_bttree_horofunction, "p^beta(g.o) for several g")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--g", action="append", required=True)

    p = mods.add_parser("suite", help="run named checks from a config", parents=[common],
                        allow_abbrev=False)
    p.add_argument("config", help="path, or 'builtin:acceptance'")
    p.set_defaults(func=cmd_suite)
    return ap


EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def run(argv: list[str] | None = None) -> tuple[int, dict | None]:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return (EXIT_USAGE if e.code else EXIT_OK), None
    a.seed_given = "--seed" in argv or any(x.startswith("--seed=") for x in argv)
    t0 = time.perf_counter()
    try:
        out = a.func(a)
    except (UsageError, ValueError, KeyError, TypeError, ZeroDivisionError, OSError,
            json.JSONDecodeError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"alab {a.module}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE, None
    dt = time.perf_counter() - t0
    if out.text is not None:
        text, rep = out.text, None
    else:
        rep = make_report(["alab"] + argv, out.payload, out.verdict, out.witness, dt)
        text = dumps(rep)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (EXIT_FAIL if out.verdict == "fail" else EXIT_OK), rep


def main(argv: list[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
