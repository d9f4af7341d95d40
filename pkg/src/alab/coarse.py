"""Finite metric spaces, Vietoris-Rips complexes and coarse-connectivity probes.

Everything is finite and exact up to the distance oracle: complexes are
enumerated up to dimension 2, components come from union-find and H_1 is
computed over GF(2).  A probe over finitely many scales is evidence about the
coarse invariant, never a proof of it; verdict strings say as much.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from . import kernels


class BudgetExceeded(RuntimeError):
    def __init__(self, lower_bound):
        super().__init__(f"budget exceeded (distance > {lower_bound})")
        self.lower_bound = lower_bound


class FiniteMetricSpace:
    """Indexed points plus a symmetric distance oracle.

    The full distance matrix is computed once, on first use.  Pass
    ``matrix=`` to skip the oracle entirely.
    """

    def __init__(self, points: Sequence[Any], dist: Callable[[Any, Any], float] | None = None,
                 matrix: np.ndarray | None = None):
        self.points = list(points)
        self.dist = dist
        self._D = None if matrix is None else np.asarray(matrix, dtype=float)
        if dist is None and matrix is None:
            raise ValueError("need a distance oracle or a matrix")

    def __len__(self):
        return len(self.points)

    @classmethod
    def euclidean(cls, coords) -> "FiniteMetricSpace":
        X = np.asarray(coords, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        D = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(-1))
        return cls([tuple(x) for x in X.tolist()], matrix=D)

    @property
    def D(self) -> np.ndarray:
        if self._D is None:
            n = len(self.points)
            D = np.zeros((n, n))
            for i in range(n):
                for j in range(i + 1, n):
                    D[i, j] = D[j, i] = float(self.dist(self.points[i], self.points[j]))
            self._D = D
        return self._D

    def d(self, i: int, j: int) -> float:
        return float(self.D[i, j])

    def diameter(self) -> float:
        return float(self.D.max()) if len(self) else 0.0

    def subspace(self, idx: Iterable[int]) -> "FiniteMetricSpace":
        idx = list(idx)
        return FiniteMetricSpace([self.points[i] for i in idx], matrix=self.D[np.ix_(idx, idx)])

    def check_axioms(self, samples: int = 200, seed: int = 0, tol: float = 1e-9) -> list[tuple]:
        """Sampled check of the metric axioms; returns offending index triples."""
        D = self.D
        n = len(self)
        bad = []
        if np.any(np.abs(np.diag(D)) > tol) or np.any(np.abs(D - D.T) > tol) or np.any(D < -tol):
            bad.append(("basic",))
        if n == 0:
            return bad
        rng = np.random.default_rng(seed)
        for i, j, k in rng.integers(0, n, size=(samples, 3)):
            if D[i, k] > D[i, j] + D[j, k] + tol:
                bad.append((int(i), int(j), int(k)))
        return bad


@dataclass
class VRComplex:
    scale: float
    n_vertices: int
    edges: np.ndarray       # (m, 2), i < j, lexicographic
    triangles: np.ndarray   # (t, 3), i < j < k, lexicographic
    max_dim: int

    def simplices(self, dim: int) -> list[tuple[int, ...]]:
        if dim == 0:
            return [(i,) for i in range(self.n_vertices)]
        if dim == 1:
            return [tuple(e) for e in self.edges.tolist()]
        if dim == 2:
            return [tuple(t) for t in self.triangles.tolist()]
        return []

    def counts(self) -> tuple[int, ...]:
        c = (self.n_vertices, len(self.edges), len(self.triangles))
        return c[: self.max_dim + 1]


def _adjacency(space: FiniteMetricSpace, r: float) -> np.ndarray:
    D = space.D
    # absorb float noise in distances that are meant to equal r exactly
    adj = D <= r + 1e-12 * max(1.0, abs(r))
    np.fill_diagonal(adj, False)
    return adj


def vr_complex(space: FiniteMetricSpace, r: float, max_dim: int = 2) -> VRComplex:
    if r < 0:
        raise ValueError("scale must be nonnegative")
    if max_dim not in (0, 1, 2):
        raise ValueError("max_dim must be 0, 1 or 2")
    n = len(space)
    empty_e = np.zeros((0, 2), dtype=np.int64)
    empty_t = np.zeros((0, 3), dtype=np.int64)
    if max_dim == 0 or n == 0:
        return VRComplex(r, n, empty_e, empty_t, max_dim)
    adj = _adjacency(space, r)
    ei, ej = np.nonzero(np.triu(adj, 1))
    edges = np.column_stack([ei, ej]).astype(np.int64)
    tris = kernels.triangles(adj) if max_dim == 2 else empty_t
    return VRComplex(r, n, edges, tris, max_dim)


def component_labels(space: FiniteMetricSpace, r: float) -> np.ndarray:
    n = len(space)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    ei, ej = np.nonzero(np.triu(_adjacency(space, r), 1))
    return kernels.component_labels(n, ei, ej)


def n_components(space: FiniteMetricSpace, r: float) -> int:
    labels = component_labels(space, r)
    return int(labels.max()) + 1 if len(labels) else 0


@dataclass
class ComponentMap:
    r: float
    s: float
    labels_r: np.ndarray
    labels_s: np.ndarray
    mapping: dict[int, int]

    @property
    def n_source(self) -> int:
        return len(self.mapping)

    @property
    def n_target(self) -> int:
        return int(self.labels_s.max()) + 1 if len(self.labels_s) else 0

    @property
    def image(self) -> set[int]:
        return set(self.mapping.values())

    @property
    def is_trivial(self) -> bool:
        return len(self.image) <= 1

    @property
    def is_injective(self) -> bool:
        return len(self.image) == len(self.mapping)

    @property
    def verdict(self) -> str:
        if self.is_trivial and self.is_injective:
            return "trivial+injective"
        if self.is_trivial:
            return "trivial"
        if self.is_injective:
            return "injective"
        return "neither"

    def compose(self, other: "ComponentMap") -> "ComponentMap":
        """``other o self`` for maps r -> s -> t."""
        if other.r != self.s:
            raise ValueError("maps do not compose")
        return ComponentMap(self.r, other.s, self.labels_r, other.labels_s,
                            {a: other.mapping[b] for a, b in self.mapping.items()})


def _map_from_labels(r, s, lr, ls) -> ComponentMap:
    mapping: dict[int, int] = {}
    for a, b in zip(lr.tolist(), ls.tolist()):
        prev = mapping.setdefault(a, b)
        if prev != b:
            raise AssertionError("inclusion does not induce a map on components")
    return ComponentMap(r, s, lr, ls, mapping)


def component_map(space: FiniteMetricSpace, r: float, s: float) -> ComponentMap:
    """Map pi_0(VR_r) -> pi_0(VR_s) induced by inclusion (r <= s)."""
    if r > s:
        raise ValueError("need r <= s")
    return _map_from_labels(r, s, component_labels(space, r), component_labels(space, s))


def boundary_columns(cx: VRComplex, dim: int) -> tuple[list[list[int]], int]:
    """Columns of the GF(2) boundary matrix d_dim as lists of row indices."""
    if dim == 1:
        return [list(e) for e in cx.edges.tolist()], cx.n_vertices
    if dim == 2:
        index = {tuple(e): k for k, e in enumerate(cx.edges.tolist())}
        cols = [[index[(i, j)], index[(i, k)], index[(j, k)]] for i, j, k in cx.triangles.tolist()]
        return cols, len(cx.edges)
    raise ValueError("dim must be 1 or 2")


def boundary_rank(cx: VRComplex, dim: int) -> int:
    cols, nrows = boundary_columns(cx, dim)
    return kernels.f2_rank(cols, nrows)


def h0_rank(cx: VRComplex) -> int:
    if cx.max_dim == 0:
        return cx.n_vertices
    return cx.n_vertices - boundary_rank(cx, 1)


def h1_rank(cx: VRComplex) -> int:
    """dim H_1(cx; F_2) = (#edges - rank d1) - rank d2."""
    if cx.max_dim < 2:
        raise ValueError("H_1 needs the 2-skeleton")
    return len(cx.edges) - boundary_rank(cx, 1) - boundary_rank(cx, 2)


def product_space(A: FiniteMetricSpace, B: FiniteMetricSpace) -> FiniteMetricSpace:
    """A x B with the max metric; point (i, j) sits at index i*|B| + j."""
    DA, DB = A.D, B.D
    D = np.maximum(DA[:, None, :, None], DB[None, :, None, :]).reshape(len(A) * len(B), -1)
    pts = [(a, b) for a in A.points for b in B.points]
    return FiniteMetricSpace(pts, matrix=D)


def weighted_cayley_distance(stages: Sequence[Iterable[Hashable]], g, h, budget: float,
                             op: Callable[[Any, Any], Any] = lambda x, y: x + y) -> float:
    """Shortest weighted word length from g to h.

    ``stages[l-1]`` lists generators of S_l; generator sets are accumulated,
    and a step by an element first appearing in stage l costs l.  Uniform-cost
    search never expands past ``budget``.
    """
    cost: dict[Any, int] = {}
    for level, gens in enumerate(stages, start=1):
        for s in gens:
            cost.setdefault(s, level)
    steps = sorted(cost.items(), key=lambda kv: (kv[1], repr(kv[0])))
    if g == h:
        return 0
    best = {g: 0}
    heap = [(0, 0, g)]
    tie = itertools.count(1)
    while heap:
        d, _, x = heapq.heappop(heap)
        if d > best.get(x, float("inf")):
            continue
        if x == h:
            return d
        for s, c in steps:
            nd = d + c
            if nd > budget:
                continue
            y = op(x, s)
            if nd < best.get(y, float("inf")):
                best[y] = nd
                heapq.heappush(heap, (nd, next(tie), y))
    raise BudgetExceeded(budget)


def geometric_schedule(r0: float, k: int) -> list[float]:
    return [r0 * 2 ** i for i in range(k)]


@dataclass
class FiltrationProbe:
    schedule: list[float]
    components: list[int]
    h1_ranks: list[int | None]
    maps: list[ComponentMap]
    verdict: str
    trivial_after: list[int | None] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "scale": self.schedule,
            "components": self.components,
            "h1_rank": self.h1_ranks,
            "map_verdicts": [m.verdict for m in self.maps],
            "trivial_after": self.trivial_after,
            "verdict": self.verdict,
        }


def probe_vr_filtration(space: FiniteMetricSpace, schedule: Sequence[float],
                        with_h1: bool = True) -> FiltrationProbe:
    """Component counts, H_1 ranks and consecutive component maps along a schedule.

    ``trivial_after[i]`` is the first index j >= i with pi_0(VR_i) -> pi_0(VR_j)
    constant.  The verdict is ``"trivial up to scale R"`` if every stage dies by
    scale R, else ``"persistent obstruction"`` (inconclusive about larger scales).
    """
    sched = sorted(float(r) for r in schedule)
    labels = [component_labels(space, r) for r in sched]
    comps = [int(lab.max()) + 1 if len(lab) else 0 for lab in labels]
    h1 = [h1_rank(vr_complex(space, r, 2)) if with_h1 else None for r in sched]
    maps = [_map_from_labels(sched[i], sched[i + 1], labels[i], labels[i + 1])
            for i in range(len(sched) - 1)]
    trivial_after: list[int | None] = []
    for i in range(len(sched)):
        j = next((j for j in range(i, len(sched)) if _map_from_labels(
            sched[i], sched[j], labels[i], labels[j]).is_trivial), None)
        trivial_after.append(j)
    if sched and all(j is not None for j in trivial_after):
        verdict = f"trivial up to scale {sched[max(trivial_after)]:g}"
    else:
        verdict = "persistent obstruction"
    return FiltrationProbe(sched, comps, h1, maps, verdict, trivial_after)


@dataclass
class InterleavingReport:
    interleaved: bool
    a_into_b: list[int | None]
    b_into_a: list[int | None]
    shift: int | None
    verdicts_a: list[bool]
    verdicts_b: list[bool]

    @property
    def verdicts_match(self) -> bool:
        return all(self.verdicts_a) == all(self.verdicts_b)


def _essentially_trivial(space: FiniteMetricSpace, filt: Sequence[Sequence[int]], r: float) -> list[bool]:
    """For each stage i: does pi_0 of stage i die in some later stage (at VR scale r)?"""
    out = []
    labs = []
    for stage in filt:
        sub = space.subspace(sorted(stage))
        labs.append(dict(zip(sorted(stage), component_labels(sub, r).tolist())))
    for i in range(len(filt)):
        ok = False
        for j in range(i, len(filt)):
            if not set(filt[i]) <= set(filt[j]):
                continue
            if len({labs[j][x] for x in filt[i]}) <= 1:
                ok = True
                break
        out.append(ok)
    return out


def filtration_equivalence_probe(filtration_a: Sequence[Iterable[int]],
                                 filtration_b: Sequence[Iterable[int]],
                                 space: FiniteMetricSpace | None = None,
                                 r: float = 0.0) -> InterleavingReport:
    """Mutual cofinality of two ascending filtrations by subsets of one point list.

    When ``space`` is given, also reports for each stage whether its
    components become connected at a later stage of the same filtration
    (VR scale ``r``); for interleaved filtrations the two overall verdicts
    should agree.
    """
    A = [frozenset(s) for s in filtration_a]
    B = [frozenset(s) for s in filtration_b]

    def first_cover(X, Y):
        return [next((j for j, y in enumerate(Y) if x <= y), None) for x in X]

    ab, ba = first_cover(A, B), first_cover(B, A)
    inter = all(j is not None for j in ab) and all(j is not None for j in ba)
    shift = None
    if inter:
        shift = max([j - i for i, j in enumerate(ab)] + [j - i for i, j in enumerate(ba)] + [0])
    va = vb = []
    if space is not None and inter:
        va = _essentially_trivial(space, [sorted(s) for s in A], r)
        vb = _essentially_trivial(space, [sorted(s) for s in B], r)
    return InterleavingReport(inter, ab, ba, shift, va, vb)
