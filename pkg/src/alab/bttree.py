"""The Bruhat-Tits tree of SL2(Q_p), with exact rational arithmetic.

A vertex is a homothety class of Z_p-lattices in Q_p^2.  Every class has a
unique representative spanned by the columns of

    [[p^m, a],
     [0,   1]]

with ``a`` a p-adic number taken modulo p^m Z_p.  Since everything we act
with has rational entries, ``a`` can always be chosen in Z[1/p], namely
``A / p^j`` with ``j = max(0, -v_p(a))`` and ``0 <= A < p^(m+j)``; a = 0 when
v_p(a) >= m.  The base vertex o is (0, 0), the standard lattice Z_p^2.

The end ``inf`` is the class of the line Q_p e1, fixed by the upper
triangular Borel; the ray from o towards it is diag(p^-t, 1).o = (-t, 0).
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cutproject import Mat, mat, mat_mul
from .places import fmt_rational, valuation

DEFAULT_DEPTH = 8


class TreeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TreeVertex:
    m: int
    a: Fraction = Fraction(0)

    def to_json(self):
        return [self.m, fmt_rational(self.a)]

    def __str__(self):
        return f"({self.m}, {fmt_rational(self.a)})"


BASE = TreeVertex(0, Fraction(0))


def _v(x: Fraction, p: int) -> float:
    return math.inf if x == 0 else valuation(x, p)


def _reduce_mod(a: Fraction, m: int, p: int) -> Fraction:
    """Canonical Z[1/p] representative of a + p^m Z_p."""
    if a == 0 or _v(a, p) >= m:
        return Fraction(0)
    num, den = a.numerator, a.denominator
    j = 0
    while den % p == 0:
        den //= p
        j += 1
    mod = p ** (m + j)
    A = (num * pow(den, -1, mod)) % mod
    return Fraction(A, p ** j)


def canonical_form(M: Sequence[Fraction], p: int) -> TreeVertex:
    """Vertex of the lattice spanned by the columns of the 2x2 matrix M."""
    x, y, z, w = (Fraction(e) for e in M)
    if x * w - y * z == 0:
        raise TreeError("singular matrix does not span a lattice")
    # put the column whose second entry has least valuation second
    if w == 0 or (z != 0 and _v(z, p) < _v(w, p)):
        x, y, z, w = y, x, w, z
    t = z / w  # in Z_p
    x1 = x - t * y
    # divide the lattice by w:  columns (x1/w, 0) and (y/w, 1)
    m = valuation(x1 / w, p)
    return TreeVertex(m, _reduce_mod(y / w, m, p))


def vertex_matrix(v: TreeVertex, p: int) -> Mat:
    return mat(Fraction(p) ** v.m, v.a, 0, 1)


def _inv2(M: Mat) -> Mat:
    a, b, c, d = M
    det = a * d - b * c
    return (d / det, -b / det, -c / det, a / det)


def vertex_distance(v: TreeVertex, w: TreeVertex, p: int) -> int:
    """Tree distance from the elementary divisors of M_v^-1 M_w."""
    X = mat_mul(_inv2(vertex_matrix(v, p)), vertex_matrix(w, p))
    det = X[0] * X[3] - X[1] * X[2]
    return int(valuation(det, p) - 2 * min(_v(e, p) for e in X))


def act(g: Sequence, v: TreeVertex, p: int, depth: int | None = DEFAULT_DEPTH) -> TreeVertex:
    """g.v for a 2x2 rational matrix g.

    ``depth`` bounds the distance of the result from the base vertex; pass
    ``None`` to disable the bound.
    """
    g = mat(g)
    if g[0] * g[3] - g[1] * g[2] == 0:
        raise TreeError("g is singular")
    out = canonical_form(mat_mul(g, vertex_matrix(v, p)), p)
    if depth is not None and vertex_distance(BASE, out, p) > depth:
        raise TreeError(f"result lies beyond depth {depth}; increase depth")
    return out


def neighbors(v: TreeVertex, p: int) -> list[TreeVertex]:
    """The p + 1 index-p sublattice classes of v."""
    M = vertex_matrix(v, p)
    subs = [mat(p, i, 0, 1) for i in range(p)] + [mat(1, 0, 0, p)]
    return sorted({canonical_form(mat_mul(M, S), p) for S in subs})


def ball(radius: int, p: int, center: TreeVertex = BASE) -> list[TreeVertex]:
    seen = {center: 0}
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if seen[v] == radius:
            continue
        for w in neighbors(v, p):
            if w not in seen:
                seen[w] = seen[v] + 1
                queue.append(w)
    return sorted(seen)


def random_vertex(rng: random.Random, p: int, radius: int) -> TreeVertex:
    """Endpoint of a random walk of random length <= radius from o."""
    v = BASE
    for _ in range(rng.randint(0, radius)):
        v = rng.choice(neighbors(v, p))
    return v


@dataclass(frozen=True)
class End:
    """The end g.inf; ``g`` defaults to the identity (the end inf itself)."""

    g: Mat = mat(1, 0, 0, 1)
    label: str = "inf"

    def ray(self, t: int, p: int) -> TreeVertex:
        return act(self.g, TreeVertex(-t, Fraction(0)), p, depth=None)

    def base(self, p: int) -> TreeVertex:
        return self.ray(0, p)


INFINITY = End()


def stabilization_bound(end: End, x: TreeVertex, p: int) -> int:
    return vertex_distance(end.base(p), x, p) + 2


def busemann(end: End, x: TreeVertex, T: int, p: int) -> int:
    """d(rho(T), rho(0)) - d(rho(T), x) along the ray rho towards ``end``.

    Increases towards the end.  On a tree this is constant once T passes
    the projection of x onto the ray, which the stabilization bound ensures.
    """
    bound = stabilization_bound(end, x, p)
    if T <= bound:
        raise TreeError(f"truncation T={T} too small; need T > {bound}")
    rT = end.ray(T, p)
    return vertex_distance(rT, end.base(p), p) - vertex_distance(rT, x, p)


def busemann_auto(end: End, x: TreeVertex, p: int) -> int:
    return busemann(end, x, stabilization_bound(end, x, p) + 1, p)


def is_upper_borel(g: Mat) -> bool:
    return g[2] == 0 and g[0] * g[3] - g[1] * g[2] == 1


def root_character_log(g: Mat, p: int) -> int:
    """log_p |chi(g)|_p for chi(diag(a, 1/a) u) = a^2."""
    return -2 * valuation(g[0], p)


@dataclass
class TransformReport:
    g: Mat
    shifts: list[int]
    log_chi: int
    constant: Fraction | None
    consistent: bool
    witness: tuple | None

    @property
    def shift(self) -> int | None:
        return self.shifts[0] if self.consistent and self.shifts else None

    @property
    def verdict(self) -> str:
        return "pass" if self.consistent else "fail"

    def to_json(self) -> dict:
        return {
            "g": [fmt_rational(e) for e in self.g],
            "samples": len(self.shifts),
            "shifts": sorted(set(self.shifts)),
            "log_p_chi": self.log_chi,
            "constant": None if self.constant is None else fmt_rational(self.constant),
            "verdict": self.verdict,
            "witness": None if self.witness is None else [str(self.witness[0]), self.witness[1]],
        }


def horofunction_transform_check(g: Sequence, p: int, sample: Iterable[TreeVertex],
                                 end: End = INFINITY) -> TransformReport:
    """Compare beta(g.x) - beta(x) with log_p |chi(g)|_p over the sample.

    Passes when the shift is the same for every sample point and is a
    single multiple ``c`` of log_p|chi(g)|_p (shift 0 when |chi(g)|_p = 1).
    """
    g = mat(g)
    if not is_upper_borel(g):
        raise TreeError("g must be upper triangular with determinant 1")
    lc = root_character_log(g, p)
    shifts = []
    witness = None
    for x in sample:
        s = busemann_auto(end, act(g, x, p, depth=None), p) - busemann_auto(end, x, p)
        if shifts and s != shifts[0] and witness is None:
            witness = (x, s)
        shifts.append(s)
    consistent = witness is None
    constant = None
    if consistent and shifts:
        if lc == 0:
            consistent = shifts[0] == 0
            if not consistent:
                witness = (BASE, shifts[0])
        else:
            constant = Fraction(shifts[0], lc)
    return TransformReport(g, shifts, lc, constant, consistent, witness)


def horofunction_sample(gs: Iterable[Sequence], p: int, end: End = INFINITY) -> dict:
    """g -> p^beta(g.o), the horofunction value at the conjugate of the base stabilizer."""
    out = {}
    for g in gs:
        g = mat(g)
        out[g] = Fraction(p) ** busemann_auto(end, act(g, BASE, p, depth=None), p)
    return out


def parse_matrix(text: str, p: int) -> Mat:
    """Parse ``"a,b;c,d"``; the token ``p`` stands for the prime."""
    rows = [r.split(",") for r in text.replace(" ", "").split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise TreeError(f"cannot parse matrix {text!r}")

    def entry(tok: str) -> Fraction:
        tok = tok.replace("p", str(p))
        if "/" in tok:
            num, den = tok.split("/")
            return Fraction(int(num)) / Fraction(int(den))
        return Fraction(int(tok))

    return tuple(entry(t) for r in rows for t in r)
