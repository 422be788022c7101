from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankhull.codes import (
    EquivalenceWitness,
    apply_witness,
    codewords,
    dual,
    hull,
    hull_dim,
    is_lcd,
    make_code,
    permutation_matrix,
    random_code,
    random_code_with_hull,
    random_gl,
    rank_weight,
    rank_weight_distribution,
    standardize_hull,
    witt_index,
)
from rankhull.errors import NotInSubfieldError, SingularMatrixError
from rankhull.field import make_tower
from rankhull.linalg import Matrix, identity, lift, rank

from conftest import f4
from oracles import brute_rank_weight, enumerated_hull_dim

SMALL = [(2, 1, 2, 4, 2), (2, 1, 2, 5, 2), (3, 1, 2, 4, 2), (2, 1, 3, 4, 2), (2, 2, 1, 5, 2), (3, 1, 1, 6, 3)]


def test_worked_example_hull_dims(example_hull2, example_hull1):
    assert hull_dim(example_hull2) == 2
    assert hull_dim(example_hull1) == 1
    assert enumerated_hull_dim(example_hull2.tower.top, example_hull2.gen.data) == 2
    assert enumerated_hull_dim(example_hull1.tower.top, example_hull1.gen.data) == 1


def test_self_dual_example(example_hull2):
    assert dual(example_hull2) == example_hull2
    assert hull(example_hull2) == example_hull2.rowspace


def test_generator_is_canonical(t4):
    a = make_code(t4, f4([["1", "w", "0"], ["0", "1", "1"]]))
    b = make_code(t4, f4([["1", "w2", "1"], ["0", "w", "w"]]))
    assert a == b
    assert a.gen.tolist() == [[1, 0, 2], [0, 1, 1]]


def test_zero_generator_rejected(t4):
    with pytest.raises(ValueError):
        make_code(t4, [[0, 0, 0]])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_dual_involution_and_hull_oracle(params, seed):
    rng = np.random.default_rng(seed)
    code = random_code(make_tower(*params[:3]), params[3], params[4], rng)
    d = dual(code)
    assert d.k == code.n - code.k
    assert dual(d) == code
    assert (code.gen @ d.gen.T).is_zero()
    h = hull_dim(code)
    assert h == hull(code).dim == hull_dim(d)
    assert is_lcd(code) == (h == 0)


@pytest.mark.parametrize("params", SMALL)
def test_hull_dim_matches_enumeration(params):
    rng = np.random.default_rng(sum(params))
    tower = make_tower(*params[:3])
    n, k = params[3:]
    for h in range(0, min(k, n - k) + 1):
        code = random_code_with_hull(tower, n, k, h, rng)
        if code is None:
            continue
        assert hull_dim(code) == h
        assert enumerated_hull_dim(tower.top, code.gen.data) == h


def test_rank_weight_examples(t4):
    assert rank_weight([1, 2, 0, 3], t4) == 2
    assert rank_weight([1, 1, 0, 1], t4) == 1
    assert rank_weight([0, 0, 0, 0], t4) == 0
    t = make_tower(2, 1, 3)
    assert rank_weight([1, 2, 4], t) == 3


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)]), st.data())
def test_rank_weight_matches_span_size(params, data):
    t = make_tower(*params)
    v = data.draw(st.lists(st.integers(0, t.top.order - 1), min_size=1, max_size=4))
    assert rank_weight(v, t) == brute_rank_weight(t, v)


def test_weight_distribution_totals(example_hull1):
    dist = rank_weight_distribution(example_hull1)
    assert dist.sum() == 16
    assert dist[0] == 1
    words = codewords(example_hull1)
    assert len({tuple(w) for w in words}) == 16


def test_permutation_matrix_moves_columns(t4):
    g = Matrix(t4.top, [[1, 2, 3]])
    p = permutation_matrix(t4.mid, (2, 0, 1))
    assert (g @ lift(p, t4)).tolist() == [[3, 1, 2]]


def test_witness_roundtrip(example_hull1):
    rng = np.random.default_rng(3)
    mid = example_hull1.tower.mid
    m = random_gl(mid, 4, rng)
    w = EquivalenceWitness(m, "a", "b")
    moved = apply_witness(example_hull1, w)
    back = apply_witness(moved, w.inverse())
    assert back == example_hull1
    assert len(back.witness_chain) == 2
    assert back.composed_witness() == identity(mid, 4)
    assert w.compose(w.inverse()).matrix == identity(mid, 4)


def test_witness_must_be_over_base_field(example_hull1):
    with pytest.raises(NotInSubfieldError):
        apply_witness(example_hull1, Matrix(example_hull1.tower.top, np.eye(4, dtype=int) * 2))
    with pytest.raises(SingularMatrixError):
        apply_witness(example_hull1, Matrix(example_hull1.tower.mid, np.zeros((4, 4), dtype=int)))


def test_rank_isometry_preserves_weights(example_hull1):
    rng = np.random.default_rng(11)
    base = rank_weight_distribution(example_hull1)
    for _ in range(5):
        m = random_gl(example_hull1.tower.mid, 4, rng)
        assert np.array_equal(rank_weight_distribution(apply_witness(example_hull1, m)), base)


def test_standard_form_of_worked_examples(example_hull2, example_hull1):
    f2 = standardize_hull(example_hull2)
    assert f2.h == 2 and f2.perm == (0, 1, 2, 3)
    assert f2.A.tolist() == [[2, 3], [3, 2]]
    assert f2.B.rows == 0
    f1 = standardize_hull(example_hull1)
    assert f1.h == 1
    assert f1.A.tolist() == f4([["w", "0", "w2"]])
    assert f1.B.tolist() == f4([["w", "0", "1"]])
    assert rank(f1.B @ f1.B.T) == 1


def test_standard_form_needs_column_permutation(t4):
    # hull spanned by (0, 1, w, w2); its first pivot is column 1
    code = make_code(t4, f4([["0", "1", "w", "w2"], ["1", "0", "0", "0"]]))
    form = standardize_hull(code)
    assert form.h == 1
    assert form.perm[0] == 1
    assert sorted(form.perm) == [0, 1, 2, 3]
    assert form.std_gen[0, 0] == 1
    form.check()


@pytest.mark.parametrize(
    "order,n,expected",
    [(3, 6, 2), (3, 4, 2), (5, 6, 3), (4, 5, 2), (2, 6, 3), (9, 6, 3), (7, 2, 0), (3, 5, 2)],
)
def test_witt_index(order, n, expected):
    assert witt_index(order, n) == expected


def test_no_ternary_self_dual_code_of_length_6():
    # exhaustive: count isotropic vectors orthogonal to an isotropic pair; a third
    # independent one exists iff the count exceeds the 8 nonzero vectors of the pair's span
    from itertools import product

    iso = np.array([v for v in product(range(3), repeat=6) if any(v) and sum(x * x for x in v) % 3 == 0])
    gram = (iso @ iso.T) % 3 == 0
    best = 1
    for a in range(len(iso)):
        orth = np.flatnonzero(gram[a])
        indep = orth[np.any((iso[orth] != iso[a]) & (iso[orth] != (2 * iso[a]) % 3), axis=1)]
        if indep.size:
            best = max(best, 2)
            counts = gram[np.ix_(indep, orth)].sum(axis=1)
            if (counts > 8).any():
                best = 3
                break
    assert best == witt_index(3, 6) == 2
    assert random_code_with_hull(make_tower(3, 1, 1), 6, 3, 3, np.random.default_rng(0)) is None


def test_standardize_rejects_lcd(t4):
    with pytest.raises(ValueError):
        standardize_hull(make_code(t4, [[1, 0, 0]]))


@pytest.mark.parametrize("params", SMALL)
def test_standard_form_identities_random(params):
    rng = np.random.default_rng(5)
    tower = make_tower(*params[:3])
    n, k = params[3:]
    for h in range(1, min(k, n - k) + 1):
        code = random_code_with_hull(tower, n, k, h, rng)
        if code is None:
            continue
        form = standardize_hull(code)
        form.check()
        assert form.A.shape == (h, n - h) and form.B.shape == (k - h, n - h)
