"""Normal cones of tips of generalized cones cut out by affine forms.

A family of affine forms b_1..b_d with linearly independent linear parts
w_1..w_d and positive scalings s_i defines the generalized cones

    Y_t = {x : s_i * b_i(x) <= t for all i}.

The tip F_t of Y_t is the affine subspace where every s_i b_i equals t, and
its normal cone is the nonnegative span of the w_i.  Normal sets are kept
implicit as ``tip point + cone``; nothing is vertex-enumerated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog, nnls

from . import rootsys

INTERIOR_MARGIN = 1e-9
CLASSIFY_TOL = 1e-9


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class AffineForm:
    linear_part: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        lp = np.asarray(self.linear_part, dtype=float)
        if lp.ndim != 1 or not np.any(lp):
            raise ConeError("affine form must have a nonzero linear part")
        object.__setattr__(self, "linear_part", lp)

    def __call__(self, x) -> float:
        return float(self.linear_part @ np.asarray(x, dtype=float) + self.offset)


def forms_from_columns(M: np.ndarray, offsets: Sequence[float] | None = None) -> list[AffineForm]:
    M = np.asarray(M, dtype=float)
    offsets = [0.0] * M.shape[1] if offsets is None else offsets
    return [AffineForm(M[:, i], float(o)) for i, o in enumerate(offsets)]


def _linear_parts(forms: Sequence[AffineForm]) -> np.ndarray:
    if not forms:
        raise ConeError("degenerate tip: no forms")
    dims = {f.linear_part.shape[0] for f in forms}
    if len(dims) != 1:
        raise ConeError("forms live in different ambient spaces")
    M = np.column_stack([f.linear_part for f in forms])
    if np.linalg.matrix_rank(M) < M.shape[1]:
        raise ConeError("degenerate tip: linear parts are linearly dependent")
    return M


@dataclass(frozen=True)
class NormalCone:
    """Nonnegative span of ``generators`` (the columns)."""

    generators: np.ndarray

    @property
    def dim(self) -> int:
        return self.generators.shape[0]

    def coefficients(self, x) -> tuple[np.ndarray, float]:
        """Nonnegative least-squares coefficients and residual norm."""
        return nnls(self.generators, np.asarray(x, dtype=float))

    def contains(self, x, tol: float = 1e-9) -> bool:
        _, resid = self.coefficients(x)
        return resid <= tol * max(1.0, float(np.linalg.norm(x)))

    def contains_interior(self, x, margin: float = INTERIOR_MARGIN) -> bool:
        """Relative-interior membership: exact-span coefficients all > margin."""
        x = np.asarray(x, dtype=float)
        lam, *_ = np.linalg.lstsq(self.generators, x, rcond=None)
        if np.linalg.norm(self.generators @ lam - x) > 1e-9 * max(1.0, np.linalg.norm(x)):
            return False
        return bool(np.all(lam > margin))


@dataclass(frozen=True)
class NormalSet:
    """``tip + cone``: the normal set of the tip, with the tip given by one point.

    The tip itself is ``tip + (span of generators)^perp``; that part is
    handled by only ever looking at components inside the span.
    """

    tip: np.ndarray
    cone: NormalCone

    def contains(self, x, tol: float = 1e-9) -> bool:
        y = np.asarray(x, dtype=float) - self.tip
        G = self.cone.generators
        # drop the component along the tip directions
        proj = G @ np.linalg.lstsq(G, y, rcond=None)[0]
        return self.cone.contains(proj, tol)


def tip_normal_cone(forms: Sequence[AffineForm]) -> NormalCone:
    return NormalCone(_linear_parts(forms))


@dataclass
class GeneralizedConeFamily:
    forms: list[AffineForm]
    scalings: np.ndarray = field(default=None)

    def __post_init__(self):
        self._M = _linear_parts(self.forms)
        if self.scalings is None:
            self.scalings = np.ones(len(self.forms))
        self.scalings = np.asarray(self.scalings, dtype=float)
        if self.scalings.shape != (len(self.forms),) or np.any(self.scalings <= 0):
            raise ConeError("scalings must be positive, one per form")
        self._offsets = np.array([f.offset for f in self.forms])

    def values(self, x) -> np.ndarray:
        return self.scalings * (self._M.T @ np.asarray(x, dtype=float) + self._offsets)

    def contains(self, x, t: float) -> bool:
        return bool(np.all(self.values(x) <= t + 1e-12))

    def tip_point(self, t: float) -> np.ndarray:
        """Minimum-norm point of the tip {s_i b_i(x) = t for all i}."""
        rhs = t / self.scalings - self._offsets
        x, *_ = np.linalg.lstsq(self._M.T, rhs, rcond=None)
        return x

    def normal_set(self, t: float) -> NormalSet:
        return NormalSet(self.tip_point(t), NormalCone(self._M))

    def dual_basis(self) -> np.ndarray:
        """Columns d_i in the span with <d_i, w_j> = delta_ij."""
        M = self._M
        return M @ np.linalg.inv(M.T @ M)


def nested_normal_set_check(forms: Sequence[AffineForm], scalings, s: float, t: float,
                            margin: float = INTERIOR_MARGIN) -> bool:
    """Is the normal set of the tip of Y_t inside the interior of the one of Y_s?

    The interior of ``N_s = x_s + cone`` is ``{y : <y - x_s, d_i> > 0}`` with
    d_i the dual basis of the linear parts.  The t-side normal set is
    ``x_t + cone``, so it suffices to test ``x_t`` and ``x_t + w_j`` for every
    generator w_j.
    """
    if not s < t:
        raise ConeError("need s < t")
    fam = GeneralizedConeFamily(list(forms), scalings)
    xs, xt = fam.tip_point(s), fam.tip_point(t)
    D = fam.dual_basis()
    pts = [xt] + [xt + fam._M[:, j] for j in range(fam._M.shape[1])]
    return all(bool(np.all(D.T @ (p - xs) > margin)) for p in pts)


def _interior_point(M: np.ndarray) -> np.ndarray:
    """A point v in the open cone spanned by the columns of M with <w_i, v> > 0."""
    norms = np.linalg.norm(M, axis=0)
    v = (M / norms).sum(axis=1)
    if np.all(M.T @ v > INTERIOR_MARGIN):
        return v
    # max-min LP: v = M lam, maximize m with lam >= m, G lam >= m, sum(lam) = 1
    d = M.shape[1]
    G = M.T @ M
    c = np.zeros(d + 1)
    c[-1] = -1.0
    A_ub = np.vstack([
        np.hstack([-np.eye(d), np.ones((d, 1))]),
        np.hstack([-G, np.ones((d, 1))]),
    ])
    b_ub = np.zeros(2 * d)
    A_eq = np.hstack([np.ones((1, d)), np.zeros((1, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0],
                  bounds=[(None, None)] * (d + 1), method="highs")
    if not res.success or res.x[-1] <= INTERIOR_MARGIN:
        raise ConeError("empty interior")
    return M @ res.x[:d]


def rescale_constants(forms: Sequence[AffineForm]) -> np.ndarray:
    """Scalings s_i = 1/b_i(v) for an interior point v of the level-0 normal set.

    With the origin moved into the common zero level of the forms, the tip of
    the rescaled family at level 1 is v itself, which then sits inside the
    interior of the level-0 normal set; the statement for all t > 0 follows by
    homogeneity.
    """
    M = _linear_parts(forms)
    v = _interior_point(M)
    vals = M.T @ v
    if np.any(vals <= INTERIOR_MARGIN):
        raise ConeError("empty interior")
    return 1.0 / vals


@dataclass(frozen=True)
class Classification:
    label: str
    is_linear: bool
    v: np.ndarray
    vA: np.ndarray


def classify_weights(W: np.ndarray, A: np.ndarray, label: str = "") -> Classification:
    """Solve v.W = (1..1) inside the span of W and test v.A >= 0."""
    r = W.shape[1]
    v, *_ = np.linalg.lstsq(W.T, np.ones(r), rcond=None)
    vA = v @ A
    return Classification(label, bool(np.all(vA >= -CLASSIFY_TOL)), v, vA)


def linear_type_classification(label: str) -> Classification:
    rs = rootsys.build_root_system(label)
    return classify_weights(rootsys.normalized_weights(rs), rs.A, rs.label)


def root_system_forms(label: str, normalized: bool = True) -> list[AffineForm]:
    """Linear forms <w_i, .> for the (normalized) fundamental weights."""
    rs = rootsys.build_root_system(label)
    W = rootsys.normalized_weights(rs) if normalized else rs.W
    return forms_from_columns(W)


@dataclass(frozen=True)
class RescaleReport:
    label: str
    scalings: np.ndarray
    checks: dict  # t -> bool
    unit_scaling_check: bool

    @property
    def verified(self) -> bool:
        return all(self.checks.values())


def rescale_report(label: str, ts: Sequence[float] = (0.1, 1.0, 10.0)) -> RescaleReport:
    forms = root_system_forms(label)
    s = rescale_constants(forms)
    checks = {float(t): nested_normal_set_check(forms, s, 0.0, t) for t in ts}
    unit = nested_normal_set_check(forms, np.ones(len(forms)), 0.0, 1.0)
    return RescaleReport(rootsys.build_root_system(label).label, s, checks, unit)
