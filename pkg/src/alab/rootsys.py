"""Root data of the irreducible reduced root systems (Bourbaki coordinates).

All coordinates of simple roots and fundamental weights are rational in the
Bourbaki realizations, so the data are stored exactly as Fractions.  Only the
unit-normalized weights need square roots; those come back as float arrays.

Conventions:
    * matrices are "columns = vectors": ``rs.A[:, i]`` is the simple root
      alpha_{i+1}, ``rs.W[:, i]`` the fundamental weight omega_{i+1};
    * ``cartan[i][j] = <alpha_i, alpha_j^vee>`` with
      ``alpha^vee = 2 alpha / <alpha, alpha>``;
    * ``alpha_i = sum_j c[i][j] omega_j`` and ``omega_j = sum_i n[j][i] alpha_i``,
      so ``c`` is the Cartan matrix and ``n`` its inverse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]

SUPPORTED_RANKS = {
    "A": range(1, 9),
    "B": range(2, 9),
    "C": range(2, 9),
    "D": range(4, 9),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}

_HALF = Fraction(1, 2)


class RootSystemError(ValueError):
    pass


def parse_label(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(label))
    if not m:
        raise RootSystemError(f"unknown root system label {label!r}")
    family, rank = m.group(1).upper(), int(m.group(2))
    if rank not in SUPPORTED_RANKS[family]:
        raise RootSystemError(f"unsupported root system {family}{rank}")
    return family, rank


def supported_labels() -> list[str]:
    return [f"{fam}{r}" for fam, ranks in SUPPORTED_RANKS.items() for r in ranks]


def _unit(dim: int, *terms: tuple[Fraction | int, int]) -> Vector:
    v = [Fraction(0)] * dim
    for coeff, i in terms:
        v[i - 1] += Fraction(coeff)
    return tuple(v)


def _bourbaki_simple_roots(family: str, r: int) -> tuple[int, list[Vector]]:
    if family == "A":
        dim = r + 1
        return dim, [_unit(dim, (1, i), (-1, i + 1)) for i in range(1, r + 1)]
    if family in "BCD":
        dim = r
        roots = [_unit(dim, (1, i), (-1, i + 1)) for i in range(1, r)]
        last = {"B": _unit(dim, (1, r)),
                "C": _unit(dim, (2, r)),
                "D": _unit(dim, (1, r - 1), (1, r))}[family]
        return dim, roots + [last]
    if family == "E":
        dim = 8
        a1 = tuple([_HALF] + [-_HALF] * 6 + [_HALF])
        a2 = _unit(dim, (1, 1), (1, 2))
        rest = [_unit(dim, (-1, k - 2), (1, k - 1)) for k in range(3, r + 1)]
        return dim, [a1, a2] + rest
    if family == "F":
        dim = 4
        return dim, [_unit(dim, (1, 2), (-1, 3)),
                     _unit(dim, (1, 3), (-1, 4)),
                     _unit(dim, (1, 4)),
                     (_HALF, -_HALF, -_HALF, -_HALF)]
    if family == "G":
        dim = 3
        return dim, [_unit(dim, (1, 1), (-1, 2)), _unit(dim, (-2, 1), (1, 2), (1, 3))]
    raise RootSystemError(f"unknown family {family}")


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def exact_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise RootSystemError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class RootSystemData:
    label: str
    family: str
    rank: int
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    fund_weights: tuple[Vector, ...]

    @property
    def A(self) -> np.ndarray:
        return np.array([[float(x) for x in v] for v in self.simple_roots]).T

    @property
    def W(self) -> np.ndarray:
        return np.array([[float(x) for x in v] for v in self.fund_weights]).T

    def coroot(self, i: int) -> Vector:
        a = self.simple_roots[i]
        s = 2 / dot(a, a)
        return tuple(s * x for x in a)

    @property
    def cartan(self) -> Matrix:
        return _cartan(self.simple_roots)

    def inner_product(self, u, v) -> Fraction:
        return dot(u, v)


def _cartan(roots: Sequence[Vector]) -> Matrix:
    return tuple(
        tuple(2 * dot(ai, aj) / dot(aj, aj) for aj in roots) for ai in roots
    )


def build_root_system(label: str) -> RootSystemData:
    family, r = parse_label(label)
    dim, roots = _bourbaki_simple_roots(family, r)
    cinv = exact_inverse(_cartan(roots))
    # omega_i = sum_k (C^-1)_{ik} alpha_k, which lies in the span of the roots
    weights = tuple(
        tuple(sum((cinv[i][k] * roots[k][d] for k in range(r)), Fraction(0)) for d in range(dim))
        for i in range(r)
    )
    return RootSystemData(f"{family}{r}", family, r, dim, tuple(roots), weights)


def normalized_weights(rs: RootSystemData) -> np.ndarray:
    """Fundamental weights rescaled to unit Euclidean length, as columns."""
    W = rs.W
    return W / np.linalg.norm(W, axis=0)


@dataclass(frozen=True)
class CoeffMatrices:
    c: Matrix  # alpha_i = sum_j c[i][j] chi_j
    n: Matrix  # chi_j = sum_i n[j][i] alpha_i

    @property
    def c_float(self) -> np.ndarray:
        return np.array(self.c, dtype=float)

    @property
    def n_float(self) -> np.ndarray:
        return np.array(self.n, dtype=float)

    def sign_pattern_ok(self) -> bool:
        """n_ii > 0 and n_ji >= 0 for all i, j."""
        r = len(self.n)
        return all(self.n[i][i] > 0 for i in range(r)) and all(
            x >= 0 for row in self.n for x in row
        )


def coeff_matrices(rs: RootSystemData) -> CoeffMatrices:
    # <alpha_i, alpha_j^vee> expresses alpha_i in the omega basis; the
    # inverse expresses each omega_j in the root basis.
    c = rs.cartan
    n = exact_inverse(c)
    return CoeffMatrices(c=c, n=tuple(tuple(row) for row in n))


@dataclass(frozen=True)
class OrthogonalityReport:
    label: str
    pairings: Matrix  # pairings[i][j] = <alpha_i, omega_j>
    violations: tuple[tuple[int, int, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def orthogonality_check(rs: RootSystemData) -> OrthogonalityReport:
    """Pair every simple root with every fundamental weight.

    Off-diagonal pairings must vanish and diagonal ones must be positive;
    anything else is listed in ``violations`` (never raised).
    """
    pairings = tuple(
        tuple(dot(a, w) for w in rs.fund_weights) for a in rs.simple_roots
    )
    bad = []
    for i, row in enumerate(pairings):
        for j, val in enumerate(row):
            if (i == j and not val > 0) or (i != j and val != 0):
                bad.append((i, j, val))
    return OrthogonalityReport(rs.label, pairings, tuple(bad))


def to_json(rs: RootSystemData) -> dict:
    from .places import fmt_rational

    def mat(vs):
        return [[fmt_rational(x) for x in v] for v in vs]

    cm = coeff_matrices(rs)
    return {
        "label": rs.label,
        "rank": rs.rank,
        "ambient_dim": rs.ambient_dim,
        "simple_roots": mat(rs.simple_roots),
        "fund_weights": mat(rs.fund_weights),
        "cartan": mat(rs.cartan),
        "c": mat(cm.c),
        "n": mat(cm.n),
    }
