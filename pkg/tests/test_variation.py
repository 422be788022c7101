from __future__ import annotations

import numpy as np
import pytest

from rankhull.codes import hull_dim, make_code, random_code_with_hull
from rankhull.errors import InadmissibleTargetError, NoConstructionError
from rankhull.field import make_tower
from rankhull.linalg import Matrix, identity, lift, rank
from rankhull.variation import Z2, Z3, admissible_targets, build_Y, make_lcd, make_lcd_h1, reduce_hull

from conftest import f4
from oracles import enumerated_hull_dim


def _det_mod_p(a: np.ndarray, p: int) -> int:
    return int(round(np.linalg.det(a.astype(float)))) % p


@pytest.mark.parametrize(
    "q,s,expected",
    [
        (2, 2, [[1, 0], [1, 1]]),
        (2, 3, [[1, 0, 0], [1, 1, 0], [0, 1, 1]]),
        (3, 4, [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 1, 1]]),
        (5, 2, [[2, 0], [0, 2]]),
        (7, 1, [[2]]),
    ],
)
def test_build_Y_frozen(q, s, expected):
    mid = make_tower(q, 1, 1).mid
    assert build_Y(mid, s).tolist() == expected


def test_build_Y_q4_uses_generator():
    mid = make_tower(2, 2, 1).mid
    assert build_Y(mid, 2).tolist() == [[2, 0], [0, 2]]


@pytest.mark.parametrize("q", [2, 3, 5, 7])
@pytest.mark.parametrize("s", range(1, 13))
def test_YYT_minus_I_invertible(q, s):
    if q in (2, 3) and s == 1:
        return
    mid = make_tower(q, 1, 1).mid
    y = np.array(build_Y(mid, s).tolist())
    assert _det_mod_p(y @ y.T - np.eye(s, dtype=int), q) != 0


@pytest.mark.parametrize("q", [2, 3])
def test_no_1x1_block_for_small_q(q):
    mid = make_tower(q, 1, 1).mid
    # every unit y of F_2 or F_3 has y^2 = 1
    assert all(y * y % q == 1 for y in range(1, q))
    with pytest.raises(NoConstructionError):
        build_Y(mid, 1)


def test_block_constants():
    assert Z2 == ((1, 0), (1, 1)) and len(Z3) == 3


@pytest.mark.parametrize(
    "q,h,targets",
    [(2, 3, [0, 1, 3]), (3, 2, [0, 2]), (3, 1, [1]), (4, 3, [0, 1, 2, 3]), (5, 1, [0, 1]), (2, 0, [0])],
)
def test_admissible_targets(q, h, targets):
    assert admissible_targets(q, h) == targets


def test_worked_reduction(example_hull2):
    res = reduce_hull(example_hull2, 0)
    t = example_hull2.tower
    assert res.plan.Y.tolist() == [list(r) for r in Z2]
    assert res.plan.M.tolist() == [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert res.generator.tolist() == f4([["1", "0", "w", "w2"], ["1", "1", "w2", "w"]])
    gram = res.generator @ res.generator.T
    assert gram == lift(Matrix(t.mid, [[0, 1], [1, 1]]), t)
    assert hull_dim(res.code) == 0
    assert enumerated_hull_dim(t.top, res.code.gen.data) == 0


def test_minus_one_is_inadmissible_for_small_q(example_hull2):
    with pytest.raises(InadmissibleTargetError, match="0..0"):
        reduce_hull(example_hull2, 1)
    with pytest.raises(InadmissibleTargetError):
        reduce_hull(example_hull2, 3)


def test_identity_when_target_is_current(example_hull1):
    res = reduce_hull(example_hull1, 1)
    assert res.code == example_hull1
    assert res.witness.matrix == identity(example_hull1.tower.mid, 4)


def test_large_q_reduces_by_one():
    t = make_tower(5, 1, 3)
    rng = np.random.default_rng(2)
    code = random_code_with_hull(t, 6, 3, 2, rng)
    res = reduce_hull(code, 1)
    assert hull_dim(res.code) == 1
    assert res.plan.Y.tolist() == [[2]]
    assert res.plan.q_regime == "large"
    assert res.code.composed_witness() == res.witness.matrix


@pytest.mark.parametrize("params,n,k", [((2, 1, 2), 6, 3), ((3, 1, 2), 6, 3), ((2, 2, 1), 6, 3), ((5, 1, 1), 6, 3)])
def test_every_admissible_target(params, n, k):
    t = make_tower(*params)
    rng = np.random.default_rng(9)
    for h in range(1, 4):
        code = random_code_with_hull(t, n, k, h, rng)
        if code is None:
            continue
        for ell in admissible_targets(t.q, h):
            res = reduce_hull(code, ell)
            assert hull_dim(res.code) == ell
            assert enumerated_hull_dim(t.top, res.code.gen.data) == ell
            assert make_code(t, code.gen @ lift(res.witness.matrix, t)) == res.code


def test_worked_lcd_h1(example_hull1):
    res = make_lcd_h1(example_hull1)
    cert = res.certificate
    assert cert.v.tolist() == [[1, 0, 0]]
    assert cert.fv == 3
    assert cert.Q.tolist() == f4([["w2", "0", "1"], ["0", "1", "0"], ["1", "0", "w"]])
    assert res.generator.tolist() == f4([["1", "w2", "0", "w2"], ["0", "w", "0", "1"]])
    assert hull_dim(res.code) == 0


def test_lcd_h1_when_first_diagonal_of_Q_vanishes(t4):
    code = make_code(t4, [[1, 0, 0, 3], [0, 1, 3, 3]])
    res = make_lcd_h1(code)
    assert res.certificate.Q[0, 0] == 0
    assert res.certificate.v.tolist() == [[0, 1, 0]]
    assert hull_dim(res.code) == 0
    assert enumerated_hull_dim(t4.top, res.code.gen.data) == 0


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lcd_h1_sign_flip_over_f3(m):
    # <(1, 1, 1)> is self-orthogonal over F_3; f(e_1) = 1 + 2 = 0, so v = -e_1
    t = make_tower(3, 1, m)
    code = make_code(t, [[1, 1, 1]])
    assert hull_dim(code) == 1
    res = make_lcd_h1(code)
    assert res.certificate.v.tolist() == [[2, 0]]
    assert res.certificate.fv == 2
    assert res.code.gen.tolist() == [[1, 0, 1]]
    assert hull_dim(res.code) == 0


def test_lcd_h1_argument_checks(example_hull2):
    with pytest.raises(ValueError, match="hull dimension 1"):
        make_lcd_h1(example_hull2)
    with pytest.raises(ValueError, match="q in"):
        make_lcd_h1(make_code(make_tower(5, 1, 1), [[1, 2]]))


@pytest.mark.parametrize("params,n,k", [((2, 1, 2), 5, 2), ((3, 1, 3), 3, 2), ((3, 1, 1), 6, 3), ((2, 1, 1), 7, 3)])
def test_make_lcd_always_lcd(params, n, k):
    t = make_tower(*params)
    rng = np.random.default_rng(4)
    for h in range(0, min(k, n - k) + 1):
        for _ in range(3):
            code = random_code_with_hull(t, n, k, h, rng)
            if code is None:
                continue
            res = make_lcd(code)
            assert hull_dim(res.code) == 0
            assert rank(res.generator @ res.generator.T) == k
            if h == 1:
                assert res.certificate is not None
