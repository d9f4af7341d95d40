from fractions import Fraction

import numpy as np
import pytest
import sympy
from sympy.liealgebras.cartan_matrix import CartanMatrix

from alab import rootsys
from alab.rootsys import (RootSystemError, build_root_system, coeff_matrices, dot,
                          normalized_weights, orthogonality_check, supported_labels)

F = Fraction
LABELS = supported_labels()


def test_supported_labels_cover_all_families():
    assert {"A1", "A8", "B2", "C3", "D4", "D8", "E6", "E7", "E8", "F4", "G2"} <= set(LABELS)


@pytest.mark.parametrize("bad", ["D3", "E9", "X4", "A0", "G3", ""])
def test_rejects_unsupported(bad):
    with pytest.raises(RootSystemError):
        build_root_system(bad)


# sympy has no tables for these two
HAND_CARTAN = {"A1": [[2]], "C2": [[2, -1], [-2, 2]]}


@pytest.mark.parametrize("label", LABELS)
def test_cartan_matches_sympy_table(label):
    rs = build_root_system(label)
    table = sympy.Matrix(HAND_CARTAN[label]) if label in HAND_CARTAN else CartanMatrix(label)
    assert sympy.Matrix(rs.cartan) == table


@pytest.mark.parametrize("label", LABELS)
def test_weights_dual_to_coroots(label):
    rs = build_root_system(label)
    for i, w in enumerate(rs.fund_weights):
        for j in range(rs.rank):
            assert dot(w, rs.coroot(j)) == (1 if i == j else 0)


def test_d4_weights():
    rs = build_root_system("D4")
    expected = [(1, 0, 0, 0), (1, 1, 0, 0), (F(1, 2), F(1, 2), F(1, 2), F(-1, 2)),
                (F(1, 2), F(1, 2), F(1, 2), F(1, 2))]
    assert [tuple(w) for w in rs.fund_weights] == [tuple(map(F, e)) for e in expected]


def test_a2_and_a1():
    a2 = build_root_system("A2")
    assert a2.cartan == ((2, -1), (-1, 2))
    assert coeff_matrices(a2).n == ((F(2, 3), F(1, 3)), (F(1, 3), F(2, 3)))
    assert orthogonality_check(a2).pairings[0][0] == 1
    a1 = build_root_system("A1")
    (alpha,), (omega,) = a1.simple_roots, a1.fund_weights
    assert dot(alpha, alpha) == 2
    assert tuple(2 * x for x in omega) == alpha
    cm = coeff_matrices(a1)
    assert cm.c == ((2,),) and cm.n == ((F(1, 2),),)
    assert orthogonality_check(a1).pairings == ((1,),)


def test_d4_normalization():
    W = normalized_weights(build_root_system("D4"))
    assert np.allclose(W[:, 1], np.array([1, 1, 0, 0]) / np.sqrt(2), atol=1e-12)
    raw = build_root_system("D4").W
    for j in (0, 2, 3):
        assert np.allclose(W[:, j], raw[:, j], atol=1e-12)


@pytest.mark.parametrize("label", LABELS)
def test_lemma_sign_pattern_and_orthogonality(label):
    rs = build_root_system(label)
    cm = coeff_matrices(rs)
    r = rs.rank
    assert all(cm.n[i][i] > 0 for i in range(r))
    assert all(cm.n[j][i] >= 0 for i in range(r) for j in range(r))
    rep = orthogonality_check(rs)
    assert rep.ok
    assert all(rep.pairings[i][j] == 0 for i in range(r) for j in range(r) if i != j)
    assert all(rep.pairings[i][i] > 0 for i in range(r))


@pytest.mark.parametrize("label", LABELS)
def test_c_times_weights_gives_roots(label):
    rs = build_root_system(label)
    cm = coeff_matrices(rs)
    recon = cm.c_float @ rs.W.T
    assert np.allclose(recon, rs.A.T, atol=1e-12)
    # and exactly
    for i, root in enumerate(rs.simple_roots):
        lin = [sum(cm.c[i][j] * rs.fund_weights[j][d] for j in range(rs.rank)) for d in range(rs.ambient_dim)]
        assert tuple(lin) == root


@pytest.mark.parametrize("label", LABELS)
def test_normalized_unit_length(label):
    W = normalized_weights(build_root_system(label))
    assert np.allclose(np.linalg.norm(W, axis=0), 1.0, atol=1e-12)


def test_orthogonality_reports_violations():
    rs = build_root_system("A2")
    broken = rootsys.RootSystemData(rs.label, rs.family, rs.rank, rs.ambient_dim, rs.simple_roots,
                                    (rs.fund_weights[0], rs.fund_weights[0]))
    rep = orthogonality_check(broken)
    assert not rep.ok and rep.violations


def test_to_json_shape():
    d = rootsys.to_json(build_root_system("D4"))
    assert set(d) >= {"simple_roots", "fund_weights", "cartan", "c", "n"}
    assert d["fund_weights"][2] == ["1/2", "1/2", "1/2", "-1/2"]
