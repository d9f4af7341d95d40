"""Named, seeded verification checks.

Each check takes a parameter dict and a seed and returns a
:class:`CheckResult`.  The ``criterion-*`` checks are the package's
acceptance suite; ``alab suite`` runs any list of them from a config file.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import bttree, coarse, cones, cutproject, places, rootsys
from .cutproject import QSqrt2
from .report import irrational_vec

SQRT2 = math.sqrt(2.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    payload: dict = field(default_factory=dict)
    witness: Any = None
    seconds: float = 0.0
    limit: float | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "seconds": round(self.seconds, 3),
                "limit": self.limit, "payload": self.payload, "witness": self.witness}


CHECKS: dict[str, Callable[[dict, int], tuple[bool, dict, Any]]] = {}
LIMITS: dict[str, float] = {}


def _check(name: str, limit: float | None = None):
    def deco(fn):
        CHECKS[name] = fn
        if limit is not None:
            LIMITS[name] = limit
        return fn
    return deco


def run_check(name: str, params: dict | None = None, seed: int = 0) -> CheckResult:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    t0 = time.perf_counter()
    passed, payload, witness = CHECKS[name](dict(params or {}), seed)
    dt = time.perf_counter() - t0
    return CheckResult(name, bool(passed), payload, witness, dt, LIMITS.get(name))


# -- generic single-operation checks ------------------------------------------

@_check("classify")
def _classify(params, seed):
    cl = cones.linear_type_classification(params.get("type", "D4"))
    payload = {"type": cl.label, "is_linear": cl.is_linear, "v": irrational_vec(cl.v),
               "vA": irrational_vec(cl.vA),
               "vA_signs": [int(np.sign(x)) if abs(x) > cones.CLASSIFY_TOL else 0 for x in cl.vA]}
    return True, payload, None


@_check("rescale")
def _rescale(params, seed):
    rep = cones.rescale_report(params.get("type", "D4"), params.get("ts", (0.1, 1.0, 10.0)))
    payload = {"type": rep.label, "verified": rep.verified,
               "checks": {str(t): ok for t, ok in rep.checks.items()}}
    return rep.verified, payload, None if rep.verified else payload["checks"]


@_check("product-formula")
def _product_formula(params, seed):
    q = places.as_rational(str(params.get("q", "3/2")))
    val = places.product_formula(q)
    return val == 1, {"input": places.fmt_rational(q), "value": places.fmt_rational(val)}, None


# -- acceptance criteria -------------------------------------------------------

CLASSIFICATION_EXPECTED = {
    **{f"A{r}": True for r in range(1, 6)},
    "B2": True, "B3": True, "B4": True, "C3": True, "C4": True, "F4": True, "G2": True,
    "D4": False, "D5": False, "E6": False, "E7": False, "E8": False,
}


@_check("criterion-1", limit=1.0)
def _c1(params, seed):
    tol = 1e-9
    cl = cones.linear_type_classification("D4")
    v_ref = np.array([1.0, SQRT2 - 1, 2 - SQRT2, 0.0])
    vA_ref = np.array([2 - SQRT2, 2 * SQRT2 - 3, 2 - SQRT2, 2 - SQRT2])
    dv = float(np.max(np.abs(cl.v - v_ref)))
    dvA = float(np.max(np.abs(cl.vA - vA_ref)))
    rs = rootsys.build_root_system("D4")
    vp = (Fraction(1), Fraction(0), Fraction(1), Fraction(0))
    vpA = [rootsys.dot(vp, a) for a in rs.simple_roots]
    ok_vp = vpA == [1, -1, 1, 1]
    passed = dv <= tol and dvA <= tol and cl.vA[1] < 0 and not cl.is_linear and ok_vp
    payload = {"v": irrational_vec(cl.v), "vA": irrational_vec(cl.vA), "max_err_v": dv,
               "max_err_vA": dvA, "v_prime_A": [str(x) for x in vpA], "is_linear": cl.is_linear}
    return passed, payload, None if passed else payload


@_check("criterion-2", limit=5.0)
def _c2(params, seed):
    got = {lab: cones.linear_type_classification(lab).is_linear for lab in CLASSIFICATION_EXPECTED}
    bad = {k: v for k, v in got.items() if v != CLASSIFICATION_EXPECTED[k]}
    return not bad, {"classification": got}, bad or None


@_check("criterion-3", limit=10.0)
def _c3(params, seed):
    ts = tuple(params.get("ts", (0.1, 1.0, 10.0)))
    res, bad = {}, {}
    for lab in CLASSIFICATION_EXPECTED:
        rep = cones.rescale_report(lab, ts)
        res[lab] = rep.verified
        if not rep.verified:
            bad[lab] = {str(t): ok for t, ok in rep.checks.items()}
    return not bad, {"verified": res, "ts": list(ts)}, bad or None


@_check("criterion-4", limit=5.0)
def _c4(params, seed):
    res, bad = {}, {}
    for lab in rootsys.supported_labels():
        rs = rootsys.build_root_system(lab)
        signs = rootsys.coeff_matrices(rs).sign_pattern_ok()
        orth = rootsys.orthogonality_check(rs)
        res[lab] = signs and orth.ok
        if not res[lab]:
            bad[lab] = {"signs": signs, "orthogonality": [list(map(str, v)) for v in orth.violations]}
    return not bad, {"types": len(res), "ok": res}, bad or None


@_check("criterion-5", limit=5.0)
def _c5(params, seed):
    n = int(params.get("n", 1000))
    bound = int(params.get("bound", 10 ** 12))
    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        num = 0
        while num == 0:
            num = rng.randint(-bound, bound)
        q = Fraction(num, rng.randint(1, bound))
        if places.product_formula(q) != 1:
            bad.append(places.fmt_rational(q))
    return not bad, {"samples": n, "bound": bound, "failures": len(bad)}, bad[:5] or None


def sl2z_oracle(n: int) -> set[tuple]:
    """SL2(Z) matrices with all entries in [-n, n], by brute force over (a, b, c)."""
    out = set()
    for a in range(-n, n + 1):
        for b in range(-n, n + 1):
            for c in range(-n, n + 1):
                if a == 0:
                    if b * c == -1:
                        out.update((0, b, c, d) for d in range(-n, n + 1))
                    continue
                num = 1 + b * c
                if num % a == 0 and abs(num // a) <= n:
                    out.add((a, b, c, num // a))
    return out


@_check("criterion-6", limit=30.0)
def _c6(params, seed):
    primes = params.get("primes", [2, 3, 5])
    heights = params.get("heights", [1, 2, 3, 5, 10, 20])
    part_a, bad = {}, []
    oracle = {n: sl2z_oracle(n) for n in heights}
    for p in primes:
        scheme = cutproject.SL2Scheme(p, "p", 1)
        for n in heights:
            got = {tuple(int(x) if x.denominator == 1 else x for x in map(Fraction, g))
                   for g in cutproject.enumerate_model_set(scheme, n).points}
            part_a[f"p={p},n={n}"] = len(got)
            if got != oracle[n]:
                bad.append({"p": p, "n": n, "extra": sorted(got - oracle[n])[:3],
                            "missing": sorted(oracle[n] - got)[:3]})
    h = int(params.get("zsqrt2_height", 10))
    zs = cutproject.ZSqrt2Scheme(1)
    lam = cutproject.enumerate_model_set(zs, h)
    cert = cutproject.approximate_group_certificate(lam)
    taus = [abs(float(zs.star_image(f))) for f in cert.F]
    part_b = {"size": len(lam), "contains_identity": zs.identity in lam,
              "inverse_closed": lam.is_inverse_closed(), "F": [f.to_json() for f in cert.F],
              "max_abs_tau": max(taus), "verify_failures": len(cert.verify()),
              "skipped": cert.n_skipped}
    ok_b = (part_b["contains_identity"] and part_b["inverse_closed"] and part_b["max_abs_tau"] <= 2 + 1e-9
            and part_b["verify_failures"] == 0 and cert.n_skipped == 0)
    if not ok_b:
        bad.append({"zsqrt2": part_b})
    return not bad, {"sl2_counts": part_a, "zsqrt2": part_b}, bad or None


@_check("criterion-7", limit=30.0)
def _c7(params, seed):
    p = int(params.get("p", 5))
    scales = params.get("scales", [1, 5, 25])
    ns = params.get("heights", [1, 2, 3, 4, 5, 6])
    scheme = cutproject.ZOneOverPScheme(p, 1)
    counts = {r: [] for r in scales}
    sizes = []
    for n in ns:
        pts = cutproject.enumerate_model_set(scheme, n).points
        sizes.append(len(pts))
        space = coarse.FiniteMetricSpace(pts, dist=scheme.dist_G)
        for r in scales:
            counts[r].append(coarse.n_components(space, r))
    bad = []
    for r in scales:
        for i in range(1, len(ns)):
            if counts[r][i] <= counts[r][i - 1]:
                bad.append({"r": r, "n": ns[i], "prev": counts[r][i - 1], "count": counts[r][i]})
                break
    payload = {"sizes": sizes, "components": {str(r): c for r, c in counts.items()}}
    return not bad, payload, bad or None


def _unipotent(x) -> cutproject.Mat:
    return cutproject.mat(1, Fraction(x), 0, 1)


def _admissible(g, cand, p, depth):
    out = []
    for x in cand:
        try:
            bttree.act(g, x, p, depth=depth)
        except bttree.TreeError:
            continue
        out.append(x)
    return out


@_check("criterion-8", limit=30.0)
def _c8(params, seed):
    p = int(params.get("p", 2))
    depth = int(params.get("depth", 8))
    n_samples = int(params.get("samples", 60))
    rng = random.Random(seed)
    cand = bttree.ball(depth, p)
    D1 = cutproject.mat(p, 0, 0, Fraction(1, p))
    D2 = cutproject.mat(p * p, 0, 0, Fraction(1, p * p))
    units = [_unipotent(x) for x in ("1", "1/2", "3/4", "5", "-7/8")]
    named = {"diag(p,1/p)": D1, "diag(p^2,1/p^2)": D2}
    named.update({f"u({cutproject.places.fmt_rational(u[1])})": u for u in units})
    shift_of: dict = {}
    bad = []
    sample_sizes = {}

    def shift(g, min_samples=50):
        if g in shift_of:
            return shift_of[g]
        adm = _admissible(g, cand, p, depth)
        xs = rng.sample(adm, min(n_samples, len(adm)))
        rep = bttree.horofunction_transform_check(g, p, xs)
        sample_sizes[g] = len(xs)
        if len(xs) < min_samples:
            bad.append({"g": [str(e) for e in g], "too_few_samples": len(xs)})
        if not rep.consistent and rep.log_chi != 0:
            bad.append({"g": [str(e) for e in g], "witness": rep.to_json()["witness"]})
        shift_of[g] = rep.shifts[0] if rep.shifts and len(set(rep.shifts)) == 1 else None
        return shift_of[g]

    shifts = {}
    for name, g in named.items():
        s = shift(g)
        shifts[name] = s
        if s is None:
            bad.append({"g": name, "inconsistent": True})
    for u in units:
        if shift(u) != 0:
            bad.append({"g": [str(e) for e in u], "unipotent_shift": shift(u)})
    if shifts["diag(p^2,1/p^2)"] != 2 * (shifts["diag(p,1/p)"] or 0) or shifts["diag(p,1/p)"] in (0, None):
        bad.append({"doubling": [shifts["diag(p,1/p)"], shifts["diag(p^2,1/p^2)"]]})
    gens = list(named.values())
    cocycle = 0
    for g in gens:
        for h in gens:
            gh = cutproject.mat_mul(g, h)
            # products may translate far, leaving fewer admissible vertices
            sg, sh, sgh = shift(g), shift(h), shift(gh, min_samples=10)
            cocycle += 1
            if None in (sg, sh, sgh) or sgh != sg + sh:
                bad.append({"cocycle": [[str(e) for e in g], [str(e) for e in h]],
                            "shifts": [sg, sh, sgh]})
    payload = {"p": p, "depth": depth, "shifts": shifts, "cocycle_pairs": cocycle,
               "min_samples": min(sample_sizes[g] for g in named.values())}
    return not bad, payload, bad[:5] or None


def _h_points(scheme, radius, height):
    return [scheme.star_image(g) for g in scheme.enumerate_lattice(height)
            if abs(scheme.star_image(g)) <= radius]


@_check("criterion-9", limit=60.0)
def _c9(params, seed):
    s = cutproject.ZSqrt2Scheme(1)
    radius = Fraction(params.get("radius", 2))
    I = _h_points(s, radius, int(params.get("sample_height", 3)))
    K = list(I)
    rng = random.Random(seed)
    n_pi = int(params.get("pi_samples", 100))
    pis = []
    for _ in range(n_pi):
        size = rng.randint(1, 3)
        pis.append([QSqrt2(Fraction(rng.randint(-32, 32), 8), Fraction(rng.randint(-16, 16), 8))
                    for _ in range(size)])
    cert = cutproject.descent_sets(s, I, K, pis, height=int(params.get("height", 10)))
    payload = {"I_size": len(I), "E": [e.to_json() for e in cert.E], "F": [f.to_json() for f in cert.F],
               "verified_on": cert.verified_on, "targets_checked": cert.targets_checked,
               "violations": len(cert.violations)}
    passed = cert.ok and cert.verified_on == n_pi and cert.targets_checked > 0
    wit = None if cert.ok else [[v[0], str(v[1])] for v in cert.violations[:3]]
    return passed, payload, wit


def two_cluster_space(rng: np.random.Generator, n: int, sep: float, spread: float,
                      dim: int = 2) -> coarse.FiniteMetricSpace:
    centers = np.zeros((2, dim))
    centers[1, 0] = sep
    pts = np.concatenate([c + spread * rng.standard_normal((n, dim)) for c in centers])
    return coarse.FiniteMetricSpace.euclidean(pts)


def _pi0_projection(lab_prod, lab_factor, n_b: int, axis: int) -> dict | None:
    """Component map pi0(A x B) -> pi0(factor) induced by the projection."""
    out: dict = {}
    for idx, c in enumerate(lab_prod.tolist()):
        src = idx // n_b if axis == 0 else idx % n_b
        t = int(lab_factor[src])
        if out.setdefault(c, t) != t:
            return None
    return out


@_check("criterion-10", limit=10.0)
def _c10(params, seed):
    rng = np.random.default_rng(seed)
    A = two_cluster_space(rng, int(params.get("n_a", 15)), 10.0, 0.6)
    B = two_cluster_space(rng, int(params.get("n_b", 12)), 6.0, 0.4)
    AB = coarse.product_space(A, B)
    sched = coarse.geometric_schedule(float(params.get("r0", 0.25)), int(params.get("k", 8)))
    nb = len(B)
    rows, bad = [], []
    prev = None
    for r in sched:
        la, lb, lab = (coarse.component_labels(X, r) for X in (A, B, AB))
        ca, cb, cab = int(la.max()) + 1, int(lb.max()) + 1, int(lab.max()) + 1
        rows.append([r, ca, cb, cab])
        if cab != ca * cb:
            bad.append({"r": r, "A": ca, "B": cb, "AxB": cab})
        pa, pb = _pi0_projection(lab, la, nb, 0), _pi0_projection(lab, lb, nb, 1)
        if pa is None or pb is None:
            bad.append({"r": r, "projection": "not well defined"})
            continue
        if len({(pa[c], pb[c]) for c in pa}) != cab:
            bad.append({"r": r, "projection": "pi0(AxB) -> pi0(A) x pi0(B) not injective"})
        if prev is not None:
            r0, la0, lb0, lab0, pa0, pb0 = prev
            mab = coarse._map_from_labels(r0, r, lab0, lab).mapping
            ma = coarse._map_from_labels(r0, r, la0, la).mapping
            mb = coarse._map_from_labels(r0, r, lb0, lb).mapping
            for c in pa0:
                if ma[pa0[c]] != pa[mab[c]] or mb[pb0[c]] != pb[mab[c]]:
                    bad.append({"r": [r0, r], "component": c, "commute": False})
                    break
        prev = (r, la, lb, lab, pa, pb)
    return not bad, {"rows(r,A,B,AxB)": rows}, bad or None


@_check("criterion-11", limit=60.0)
def _c11(params, seed):
    n_inst = int(params.get("instances", 100))
    rng = np.random.default_rng(seed)
    prng = random.Random(seed)
    fails = {"monotonicity": [], "composition": [], "h0": [], "busemann": []}
    for k in range(n_inst):
        m = int(rng.integers(6, 20))
        X = coarse.FiniteMetricSpace.euclidean(rng.uniform(0, 4, size=(m, 2)))
        r, s, t = np.sort(rng.uniform(0, 3, size=3))
        cr, cs = coarse.vr_complex(X, r), coarse.vr_complex(X, s)
        er, es = set(map(tuple, cr.edges.tolist())), set(map(tuple, cs.edges.tolist()))
        tr, ts_ = set(map(tuple, cr.triangles.tolist())), set(map(tuple, cs.triangles.tolist()))
        if not (er <= es and tr <= ts_ and coarse.n_components(X, r) >= coarse.n_components(X, s)):
            fails["monotonicity"].append(k)
        f, g = coarse.component_map(X, r, s), coarse.component_map(X, s, t)
        if f.compose(g).mapping != coarse.component_map(X, r, t).mapping:
            fails["composition"].append(k)
        if coarse.h0_rank(coarse.vr_complex(X, r, 1)) != coarse.n_components(X, r):
            fails["h0"].append(k)
    for k in range(n_inst):
        p = prng.choice([2, 3, 5])
        x = bttree.random_vertex(prng, p, 6)
        end = prng.choice([bttree.INFINITY, bttree.End(cutproject.mat(0, -1, 1, 0), "0")])
        T = bttree.stabilization_bound(end, x, p) + 1
        vals = {bttree.busemann(end, x, T + j, p) for j in range(3)}
        if len(vals) != 1:
            fails["busemann"].append(k)
    passed = not any(fails.values())
    payload = {"instances": n_inst, "failures": {k: len(v) for k, v in fails.items()}}
    return passed, payload, {k: v[:5] for k, v in fails.items() if v} or None


ACCEPTANCE = [f"criterion-{i}" for i in range(1, 12)]
