"""Cut-and-project schemes, truncated model sets and their certificates.

Three built-in schemes, all with exact arithmetic:

``zsqrt2``
    Z[sqrt2] inside R x R through (x, Galois conjugate of x).
``z-one-over-p``
    additive Z[1/p] inside Q_p x R; the model set lives in Q_p and the
    window is an interval at the real place.
``sl2``
    SL2(Z[1/p]) inside SL2(R) x SL2(Q_p); either factor can play the
    internal space, with an entry-size window.

Each scheme enumerates its lattice by an integer height so that every
truncation is finite and comes out in canonical (sorted-key) order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Any, Callable, Iterable, Sequence

from . import places


class CutProjectError(ValueError):
    pass


class StarMapError(CutProjectError):
    pass


class DescentError(CutProjectError):
    pass


@total_ordering
class QSqrt2:
    """Exact element p + q*sqrt(2) of Q(sqrt 2), ordered as a real number."""

    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        self.p = Fraction(p)
        self.q = Fraction(q)

    @classmethod
    def coerce(cls, x) -> "QSqrt2":
        return x if isinstance(x, QSqrt2) else cls(x, 0)

    def __add__(self, o):
        o = QSqrt2.coerce(o)
        return QSqrt2(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.p, -self.q)

    def __sub__(self, o):
        return self + (-QSqrt2.coerce(o))

    def __rsub__(self, o):
        return QSqrt2.coerce(o) - self

    def __mul__(self, o):
        o = QSqrt2.coerce(o)
        return QSqrt2(self.p * o.p + 2 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def conj(self) -> "QSqrt2":
        return QSqrt2(self.p, -self.q)

    def sign(self) -> int:
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0 or sp == sq:
            return sp or sq
        if sp == 0:
            return sq
        # opposite signs: compare p^2 with 2 q^2
        return sp if self.p * self.p > 2 * self.q * self.q else sq

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QSqrt2(o)
        if not isinstance(o, QSqrt2):
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __lt__(self, o):
        return (self - QSqrt2.coerce(o)).sign() < 0

    def __hash__(self):
        return hash((self.p, self.q))

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(2)

    def is_integral(self) -> bool:
        return self.p.denominator == 1 and self.q.denominator == 1

    def __repr__(self):
        return f"QSqrt2({places.fmt_rational(self.p)}, {places.fmt_rational(self.q)})"

    def to_json(self):
        return [places.fmt_rational(self.p), places.fmt_rational(self.q)]


class CutProjectScheme:
    """Interface shared by the built-in schemes.

    G-side and H-side elements are plain values; group laws, the star map and
    the window predicate are methods.  ``key`` gives canonical coordinates
    (used for ordering and hashing); ``height`` is the truncation parameter.
    """

    name = "abstract"
    abelian = False

    identity: Any
    h_identity: Any

    def mul(self, a, b): raise NotImplementedError
    def inv(self, a): raise NotImplementedError
    def h_mul(self, a, b): raise NotImplementedError
    def h_inv(self, a): raise NotImplementedError
    def in_lattice(self, g) -> bool: raise NotImplementedError
    def star_image(self, g): raise NotImplementedError
    def star_inverse(self, h): raise NotImplementedError
    def in_window(self, h) -> bool: raise NotImplementedError
    def height(self, g) -> int: raise NotImplementedError
    def enumerate_lattice(self, n: int) -> list: raise NotImplementedError
    def key(self, g) -> tuple: raise NotImplementedError
    def dist_G(self, a, b) -> float: raise NotImplementedError
    def dist_H(self, a, b) -> float: raise NotImplementedError
    def to_json(self, g): raise NotImplementedError

    def star(self, g):
        if not self.in_lattice(g):
            raise StarMapError(f"{g!r} is not in the lattice")
        return self.star_image(g)

    def in_model_set(self, g) -> bool:
        return self.in_lattice(g) and self.in_window(self.star_image(g))

    def config(self) -> dict:
        return {"scheme": self.name}


class ZSqrt2Scheme(CutProjectScheme):
    name = "zsqrt2"
    abelian = True

    def __init__(self, c: Fraction | int | str = 1):
        self.c = Fraction(c)
        if self.c <= 0:
            raise CutProjectError("window radius must be positive")
        self.identity = QSqrt2(0, 0)
        self.h_identity = QSqrt2(0, 0)

    def mul(self, a, b): return a + b
    def inv(self, a): return -a
    h_mul = mul
    h_inv = inv

    def in_lattice(self, g) -> bool:
        return QSqrt2.coerce(g).is_integral()

    def star_image(self, g):
        return QSqrt2.coerce(g).conj()

    def star_inverse(self, h):
        h = QSqrt2.coerce(h)
        return h.conj() if h.is_integral() else None

    def in_window(self, h) -> bool:
        return abs(QSqrt2.coerce(h)) <= self.c

    def height(self, g) -> int:
        g = QSqrt2.coerce(g)
        return int(max(abs(g.p), abs(g.q)))

    def enumerate_lattice(self, n: int) -> list:
        return [QSqrt2(a, b) for a in range(-n, n + 1) for b in range(-n, n + 1)]

    def key(self, g):
        return (g.p, g.q)

    def dist_G(self, a, b):
        return abs(float(a - b))

    def dist_H(self, a, b):
        return abs(float(a - b))

    def to_json(self, g):
        return g.to_json()

    def config(self):
        return {"scheme": self.name, "window": places.fmt_rational(self.c)}


def _zp_parts(q: Fraction, p: int) -> tuple[int, int]:
    """(m, k) with q = m / p^k, k >= 0 minimal."""
    k = 0
    d = q.denominator
    while d % p == 0:
        d //= p
        k += 1
    if d != 1:
        raise StarMapError(f"{q} is not in Z[1/{p}]")
    return q.numerator, k


def _zp_height(q: Fraction, p: int) -> int:
    m, k = _zp_parts(q, p)
    return max(abs(m), k)


def _zp_elements(n: int, p: int) -> list[Fraction]:
    return [Fraction(m, p ** k) for k in range(n + 1) for m in range(-n, n + 1)
            if k == 0 or m % p]


class ZOneOverPScheme(CutProjectScheme):
    """Additive Z[1/p] with G = Q_p and the real place as internal space."""

    name = "z-one-over-p"
    abelian = True

    def __init__(self, p: int, c: Fraction | int | str = 1):
        places.Place(p)
        self.p = p
        self.c = Fraction(c)
        if self.c <= 0:
            raise CutProjectError("window radius must be positive")
        self.identity = Fraction(0)
        self.h_identity = Fraction(0)

    def mul(self, a, b): return a + b
    def inv(self, a): return -a
    h_mul = mul
    h_inv = inv

    def in_lattice(self, g) -> bool:
        d = Fraction(g).denominator
        while d % self.p == 0:
            d //= self.p
        return d == 1

    def star_image(self, g):
        return Fraction(g)

    def star_inverse(self, h):
        return Fraction(h) if self.in_lattice(h) else None

    def in_window(self, h) -> bool:
        return abs(Fraction(h)) <= self.c

    def height(self, g) -> int:
        return _zp_height(Fraction(g), self.p)

    def enumerate_lattice(self, n: int) -> list:
        return _zp_elements(n, self.p)

    def key(self, g):
        m, k = _zp_parts(Fraction(g), self.p)
        return (k, m)

    def dist_G(self, a, b):
        if a == b:
            return 0.0
        return float(places.normalized_abs(Fraction(a) - Fraction(b), self.p))

    def dist_H(self, a, b):
        return abs(float(Fraction(a) - Fraction(b)))

    def to_json(self, g):
        return places.fmt_rational(Fraction(g))

    def config(self):
        return {"scheme": self.name, "p": self.p, "window": places.fmt_rational(self.c)}


Mat = tuple[Fraction, Fraction, Fraction, Fraction]  # (a, b, c, d) = [[a, b], [c, d]]


def mat_mul(x: Mat, y: Mat) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_inv_sl2(x: Mat) -> Mat:
    a, b, c, d = x
    return (d, -b, -c, a)


def mat(*entries) -> Mat:
    if len(entries) == 1:
        entries = tuple(entries[0])
    return tuple(Fraction(e) for e in entries)


SL2_IDENTITY: Mat = mat(1, 0, 0, 1)


def _sl2_height_entry(beta: int, x: int, p: int) -> int:
    # element beta * p^x with p not dividing beta
    if x >= 0:
        return abs(beta) * p ** x
    return max(abs(beta), -x)


def enumerate_sl2_zp(n: int, p: int) -> list[Mat]:
    """All of SL2(Z[1/p]) with every entry of height <= n.

    For a, d fixed the product bc = ad - 1 is known; its p-free part has
    to factor into the p-free parts of b and c (each at most n in size), and
    the p-power splits between them.  That turns a cubic search into a
    quadratic one over (a, d) plus a divisor walk.
    """
    E = [(m, k) for k in range(n + 1) for m in range(-n, n + 1) if k == 0 or m % p]
    nn = n * n
    divs = {u: [d for d in range(1, min(u, n) + 1)
                if u % d == 0 and u // d <= n and d % p and (u // d) % p]
            for u in range(1, nn + 1)}
    out: list[Mat] = []

    def frac(beta, x):
        return Fraction(beta * p ** x) if x >= 0 else Fraction(beta, p ** (-x))

    entries = [Fraction(m, p ** k) for m, k in E]
    for (m1, k1), a in zip(E, entries):
        if m1 == 0:
            # -bc = 1: b = s p^x, c = -s p^-x
            for x in range(-n, n + 1):
                if _sl2_height_entry(1, x, p) > n or _sl2_height_entry(1, -x, p) > n:
                    continue
                for s in (1, -1):
                    b, c = frac(s, x), frac(-s, -x)
                    out.extend((a, b, c, d) for d in entries)
            continue
        for (m2, k2), d in zip(E, entries):
            K = k1 + k2
            num = m1 * m2 - p ** K  # ad - 1 = num / p^K
            if num == 0:
                out.extend((a, b, Fraction(0), d) for b in entries)
                out.extend((a, Fraction(0), c, d) for c in entries if c != 0)
                continue
            u, e = abs(num), -K
            while u % p == 0:
                u //= p
                e += 1
            if u > nn:
                continue
            sgn = 1 if num > 0 else -1
            for b0 in divs[u]:
                c0 = u // b0
                for sb in (1, -1):
                    beta, gamma = sb * b0, sgn * sb * c0
                    for x in range(-n, n + 1):
                        if _sl2_height_entry(beta, x, p) > n:
                            continue
                        y = e - x
                        if _sl2_height_entry(gamma, y, p) > n:
                            continue
                        out.append((a, frac(beta, x), frac(gamma, y), d))
    return out


class SL2Scheme(CutProjectScheme):
    """SL2(Z[1/p]) in SL2(R) x SL2(Q_p).

    ``window_side="p"``: internal space SL2(Q_p), window = matrices whose
    entries have |x|_p <= c (c = 1 gives SL2(Z_p)); the model set lives in
    SL2(R).  ``window_side="real"``: internal space SL2(R), window = max
    |entry| <= c; the model set lives in SL2(Q_p).
    """

    name = "sl2"

    def __init__(self, p: int, window_side: str = "p", c: Fraction | int | str = 1):
        places.Place(p)
        if window_side not in ("p", "real"):
            raise CutProjectError("window_side must be 'p' or 'real'")
        self.p = p
        self.window_side = window_side
        self.c = Fraction(c)
        if self.c <= 0:
            raise CutProjectError("window radius must be positive")
        if window_side == "real" and self.c < 1:
            raise CutProjectError("real window must contain the identity (c >= 1)")
        self.identity = SL2_IDENTITY
        self.h_identity = SL2_IDENTITY

    def mul(self, a, b): return mat_mul(a, b)
    def inv(self, a): return mat_inv_sl2(a)
    h_mul = mul
    h_inv = inv

    def in_lattice(self, g) -> bool:
        if len(g) != 4 or g[0] * g[3] - g[1] * g[2] != 1:
            return False
        try:
            for x in g:
                _zp_parts(Fraction(x), self.p)
        except StarMapError:
            return False
        return True

    def star_image(self, g):
        return tuple(g)

    def star_inverse(self, h):
        return tuple(h) if self.in_lattice(h) else None

    def _entry_ok(self, x: Fraction) -> bool:
        if self.window_side == "real":
            return abs(x) <= self.c
        if x == 0:
            return True
        if self.c == 1:
            return x.denominator % self.p != 0
        return places.normalized_abs(x, self.p) <= self.c

    def in_window(self, h) -> bool:
        if h[0] * h[3] - h[1] * h[2] != 1:
            return False
        return all(self._entry_ok(Fraction(x)) for x in h)

    def height(self, g) -> int:
        return max(_zp_height(Fraction(x), self.p) for x in g)

    def enumerate_lattice(self, n: int) -> list:
        return enumerate_sl2_zp(n, self.p)

    def key(self, g):
        return tuple(g)

    def dist_G(self, a, b):
        if self.window_side == "p":
            return hyperbolic_distance(a, b)
        from .bttree import vertex_distance, act, BASE
        return float(vertex_distance(act(a, BASE, self.p, depth=None),
                                     act(b, BASE, self.p, depth=None), self.p))

    def dist_H(self, a, b):
        if self.window_side == "real":
            return hyperbolic_distance(a, b)
        from .bttree import vertex_distance, act, BASE
        return float(vertex_distance(act(a, BASE, self.p, depth=None),
                                     act(b, BASE, self.p, depth=None), self.p))

    def to_json(self, g):
        return [[places.fmt_rational(g[0]), places.fmt_rational(g[1])],
                [places.fmt_rational(g[2]), places.fmt_rational(g[3])]]

    def config(self):
        return {"scheme": self.name, "p": self.p, "window_side": self.window_side,
                "window": places.fmt_rational(self.c)}


def hyperbolic_distance(g: Mat, h: Mat) -> float:
    """Distance between g.i and h.i in the upper half plane (left-invariant)."""
    def orbit(m):
        a, b, c, d = (float(x) for x in m)
        den = c * c + d * d
        return complex((a * c + b * d) / den, 1.0 / den)
    z, w = orbit(g), orbit(h)
    arg = 1 + abs(z - w) ** 2 / (2 * z.imag * w.imag)
    return math.acosh(max(arg, 1.0))


def scheme_from_config(cfg: dict) -> CutProjectScheme:
    name = cfg.get("scheme")
    window = cfg.get("window", 1)
    if name == "zsqrt2":
        return ZSqrt2Scheme(window)
    if name == "z-one-over-p":
        return ZOneOverPScheme(int(cfg["p"]), window)
    if name == "sl2":
        return SL2Scheme(int(cfg["p"]), cfg.get("window_side", "p"), window)
    raise CutProjectError(f"unknown scheme {name!r}")


def star_map(scheme: CutProjectScheme, g):
    return scheme.star(g)


@dataclass
class ModelSetTruncation:
    scheme: CutProjectScheme
    height: int
    points: list

    def __post_init__(self):
        self._keys = {self.scheme.key(g) for g in self.points}

    def __contains__(self, g) -> bool:
        return self.scheme.key(g) in self._keys

    def __len__(self):
        return len(self.points)

    def is_inverse_closed(self) -> bool:
        return all(self.scheme.inv(g) in self for g in self.points)

    def to_json(self) -> list:
        return [self.scheme.to_json(g) for g in self.points]


def enumerate_model_set(scheme: CutProjectScheme, n: int) -> ModelSetTruncation:
    """Lattice points of height <= n whose star image lies in the window.

    The identity is always included, even where its height exceeds n (the
    SL2 identity has height 1), so that every truncation is unital.
    """
    if n < 0:
        raise CutProjectError("height must be nonnegative")
    pts = [g for g in scheme.enumerate_lattice(n) if scheme.in_window(scheme.star_image(g))]
    if not any(g == scheme.identity for g in pts):
        pts.append(scheme.identity)
    pts.sort(key=scheme.key)
    return ModelSetTruncation(scheme, n, pts)


def _greedy_cover(universe: list, candidates: list, covers: Callable[[Any, Any], bool],
                  sort_key: Callable, prefer=None) -> tuple[list, dict]:
    """Greedy set cover; ties broken by ``prefer`` first, then ``sort_key``.

    Returns the chosen candidates and, for each universe index, the chosen
    candidate that covers it.  Uncoverable elements are left out of the map.
    """
    cover_sets = []
    for cand in candidates:
        cover_sets.append({i for i, x in enumerate(universe) if covers(x, cand)})
    remaining = set().union(*cover_sets) if cover_sets else set()
    chosen, assign = [], {}
    order = sorted(range(len(candidates)),
                   key=lambda j: (0 if prefer is not None and candidates[j] == prefer else 1,
                                  sort_key(candidates[j])))
    while remaining:
        best = max(order, key=lambda j: len(cover_sets[j] & remaining))
        # max() keeps the first maximal element, which respects ``order``
        gained = cover_sets[best] & remaining
        chosen.append(candidates[best])
        for i in gained:
            assign[i] = candidates[best]
        remaining -= gained
    return chosen, assign


@dataclass
class ApproximateGroupCertificate:
    scheme: CutProjectScheme
    height: int
    ext_height: int
    F: list
    witnesses: list  # (product, lambda, f) with product == lambda * f
    n_products: int
    n_skipped: int

    @property
    def coverage(self) -> float:
        seen = self.n_products - self.n_skipped
        return seen / self.n_products if self.n_products else 1.0

    def verify(self) -> list:
        """Re-multiply every witness; return those that fail."""
        s = self.scheme
        bad = []
        for prod, lam, f in self.witnesses:
            ok = (s.mul(lam, f) == prod and s.in_model_set(lam)
                  and s.height(lam) <= self.ext_height
                  and any(f == x for x in self.F))
            if not ok:
                bad.append((prod, lam, f))
        return bad

    def to_json(self) -> dict:
        s = self.scheme
        return {
            "F": [s.to_json(f) for f in self.F],
            "size": len(self.F),
            "products": self.n_products,
            "skipped": self.n_skipped,
            "coverage": self.coverage,
        }


def approximate_group_certificate(lam: ModelSetTruncation, ext_height: int | None = None
                                  ) -> ApproximateGroupCertificate:
    """Finite F with every observed product l1*l2 equal to some l*f.

    Here l ranges over the model set truncated at ``ext_height`` (default
    twice the truncation height) and f over F.  Candidates for F are the
    identity and the observed products themselves, chosen greedily.
    """
    s = lam.scheme
    if not lam.points:
        raise CutProjectError("empty truncation")
    ext = 2 * max(lam.height, 1) if ext_height is None else ext_height
    products: dict = {}
    n_products = n_skipped = 0
    for a in lam.points:
        for b in lam.points:
            n_products += 1
            pr = s.mul(a, b)
            if s.height(pr) > ext:
                n_skipped += 1
                continue
            products.setdefault(s.key(pr), pr)
    universe = [products[k] for k in sorted(products)]

    def covers(prod, f):
        x = s.mul(prod, s.inv(f))
        return s.height(x) <= ext and s.in_model_set(x)

    ident_ok = [covers(x, s.identity) for x in universe]
    if all(ident_ok):
        F = [s.identity]
        witnesses = [(x, x, s.identity) for x in universe]
    else:
        cands = [s.identity] + universe
        F, assign = _greedy_cover(universe, cands, covers, s.key, prefer=s.identity)
        witnesses = [(x, s.mul(x, s.inv(assign[i])), assign[i]) for i, x in enumerate(universe)]
    return ApproximateGroupCertificate(s, lam.height, ext, F, witnesses, n_products, n_skipped)


@dataclass
class DescentCertificate:
    scheme: CutProjectScheme
    I: list
    K: list
    E: list
    F: list
    verified_on: int = 0
    violations: list = field(default_factory=list)
    targets_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        s = self.scheme
        return {
            "E": [s.to_json(e) for e in self.E],
            "F": [s.to_json(f) for f in self.F],
            "verified_on": self.verified_on,
            "targets_checked": self.targets_checked,
            "violations": len(self.violations),
        }


def descent_targets(scheme: CutProjectScheme, I: Sequence, K: Sequence, Pi: Sequence) -> list:
    """pi_G(Gamma (Pi x K) intersected with G x I), exactly, for finite I, K, Pi.

    A point (g, h) = (gamma, tau(gamma)) (pi, k) has h in I iff
    tau(gamma) = i k^-1 for some i, and gamma is recovered by the inverse
    star map whenever i k^-1 lies in Gamma_H.
    """
    out = {}
    for i in I:
        for k in K:
            gamma = scheme.star_inverse(scheme.h_mul(i, scheme.h_inv(k)))
            if gamma is None:
                continue
            for pi in Pi:
                g = scheme.mul(gamma, pi)
                out.setdefault(scheme.key(g), g)
    return [out[k] for k in sorted(out)]


def _in_lambda_F_pi(s: CutProjectScheme, g, F, Pi) -> bool:
    return any(s.in_model_set(s.mul(s.mul(g, s.inv(pi)), s.inv(f))) for pi in Pi for f in F)


def _in_E_lambda_pi(s: CutProjectScheme, g, E, Pi) -> bool:
    return any(s.in_model_set(s.mul(s.inv(e), s.mul(g, s.inv(pi)))) for pi in Pi for e in E)


def descent_sets(scheme: CutProjectScheme, I: Sequence, K: Sequence,
                 pi_samples: Iterable[Sequence], height: int = 10) -> DescentCertificate:
    """Finite E, F with  Lambda F Pi  and  E Lambda Pi  containing every target.

    F covers the finite set I K^-1 by right window translates W tau(f) and E
    by left translates tau(e) W, both greedily over lattice points of height
    <= ``height``; the containment is then checked on each sample Pi.
    """
    s = scheme
    IK = {}
    for i in I:
        for k in K:
            x = s.h_mul(i, s.h_inv(k))
            IK.setdefault(x, x)
    universe = list(IK.values())
    cands = sorted(s.enumerate_lattice(height), key=s.key)
    stars = {s.key(c): s.star_image(c) for c in cands}

    def covers_right(x, f):
        return s.in_window(s.h_mul(x, s.h_inv(stars[s.key(f)])))

    def covers_left(x, e):
        return s.in_window(s.h_mul(s.h_inv(stars[s.key(e)]), x))

    F, fa = _greedy_cover(universe, cands, covers_right, s.key, prefer=s.identity)
    E, ea = _greedy_cover(universe, cands, covers_left, s.key, prefer=s.identity)
    if len(fa) < len(universe) or len(ea) < len(universe):
        raise DescentError("lattice sample too sparse to cover I K^-1; increase height bound")
    if not universe:
        F = E = [s.identity]
    cert = DescentCertificate(s, list(I), list(K), E, F)
    for Pi in pi_samples:
        Pi = list(Pi)
        cert.verified_on += 1
        for g in descent_targets(s, I, K, Pi):
            cert.targets_checked += 1
            if not _in_lambda_F_pi(s, g, F, Pi):
                cert.violations.append(("LambdaFPi", g, Pi))
            if not _in_E_lambda_pi(s, g, E, Pi):
                cert.violations.append(("ELambdaPi", g, Pi))
    return cert


@dataclass
class CommensurabilityReport:
    F: list
    small: int
    big: int
    unmatched: list

    @property
    def ok(self) -> bool:
        return not self.unmatched


def commensurability_check(small: CutProjectScheme, big: CutProjectScheme, height: int,
                           cover_height: int | None = None) -> CommensurabilityReport:
    """Check  Lambda_small <= Lambda_big <= Lambda_small F  inside a truncation.

    F comes from the descent recipe with I = star image of the big truncation,
    K = {e}, Pi = {e}.
    """
    lam_s = enumerate_model_set(small, height)
    lam_b = enumerate_model_set(big, height)
    unmatched = [g for g in lam_s.points if g not in lam_b]
    I = [big.star_image(g) for g in lam_b.points]
    cert = descent_sets(small, I, [small.h_identity], [[small.identity]],
                        height=cover_height if cover_height is not None else height)
    for g in lam_b.points:
        if not any(small.in_model_set(small.mul(g, small.inv(f))) for f in cert.F):
            unmatched.append(g)
    return CommensurabilityReport(cert.F, len(lam_s), len(lam_b), unmatched)


def max_gap(values: Iterable[float], lo: float, hi: float) -> float:
    """Largest gap between consecutive values in [lo, hi] (including the ends)."""
    v = sorted(x for x in values if lo <= x <= hi)
    pts = [lo] + v + [hi]
    return max(b - a for a, b in zip(pts, pts[1:]))
