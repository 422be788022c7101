from __future__ import annotations

import numpy as np
import pytest

from rankhull.associated import (
    MatrixCode,
    associate,
    dual_basis,
    expand,
    extended_block_hull_chain,
    find_self_dual_basis,
    make_basis,
    matrix_dual,
    matrix_hull,
    power_basis,
    random_basis,
    reduce_hull_matrix,
    rho_flatten,
    rho_unflatten,
    self_dual_exists,
    trace_product,
)
from rankhull.codes import dual, hull_dim, random_code_with_hull
from rankhull.errors import SearchBudgetError, SelfDualBasisError
from rankhull.field import make_tower
from rankhull.linalg import Matrix, identity
from rankhull.variation import admissible_targets

from conftest import f4

SELF_DUAL_TOWERS = [(2, 1, 2), (2, 1, 3), (2, 2, 2), (2, 3, 2), (3, 1, 3), (5, 1, 3)]


def test_f4_conjugate_pair_is_self_dual(t4):
    b = make_basis(t4, [2, 3])
    assert b.self_dual
    assert not power_basis(t4).self_dual


def test_power_basis_gram_and_dual_f4(t4):
    pb = power_basis(t4)
    assert pb.gammas == (1, 2)
    assert pb.gram.tolist() == [[0, 1], [1, 1]]
    assert dual_basis(pb).gammas == (3, 1)


def test_dependent_elements_rejected(t4):
    with pytest.raises(ValueError):
        make_basis(t4, [1, 1])
    with pytest.raises(ValueError):
        make_basis(t4, [1])


@pytest.mark.parametrize("params", [(3, 1, 2), (5, 1, 2), (3, 2, 2), (7, 1, 4)])
def test_no_self_dual_basis_for_odd_q_even_m(params):
    t = make_tower(*params)
    assert not self_dual_exists(t)
    with pytest.raises(SelfDualBasisError):
        find_self_dual_basis(t)


@pytest.mark.parametrize("params", SELF_DUAL_TOWERS)
def test_self_dual_search(params):
    t = make_tower(*params)
    b = find_self_dual_basis(t, seed=1)
    assert b.self_dual
    g = np.array(b.gammas)
    tr = t.trace(t.top.mul(g[:, None], g[None, :]))
    assert np.array_equal(tr, np.eye(t.m, dtype=np.int64))
    assert find_self_dual_basis(t, seed=1) == b


def test_search_budget_exhausted():
    t = make_tower(5, 1, 3)
    with pytest.raises(SearchBudgetError):
        find_self_dual_basis(t, seed=0, budget=1, batch=1)


@pytest.mark.parametrize("params", [(2, 1, 3), (3, 1, 2), (5, 1, 2), (2, 2, 3)])
def test_dual_basis_of_random_basis(params):
    t = make_tower(*params)
    b = random_basis(t, np.random.default_rng(0))
    d = dual_basis(b)
    cross = t.trace(t.top.mul(np.array(b.gammas)[:, None], np.array(d.gammas)[None, :]))
    assert np.array_equal(cross, np.eye(t.m, dtype=np.int64))
    assert dual_basis(d) == b


def test_expand_f4(t4):
    b = make_basis(t4, [2, 3])
    x = expand(f4([["1", "w", "w2", "0"]]), b)
    assert x.tolist() == [[1, 1], [1, 0], [0, 1], [0, 0]]


def test_rho_roundtrip(t4):
    x = Matrix(t4.mid, [[1, 0], [1, 1], [0, 1]])
    v = rho_flatten(x)
    assert v.tolist() == [[1, 0, 1, 1, 0, 1]]
    assert rho_unflatten(v, 3, 2) == x
    with pytest.raises(ValueError):
        rho_unflatten(v, 2, 2)


def test_trace_product(t4):
    i2 = identity(t4.mid, 2)
    assert trace_product(i2, i2) == 0
    t5 = make_tower(5, 1, 1)
    a = Matrix(t5.mid, [[1, 2], [3, 4]])
    assert trace_product(a, a) == (1 + 4 + 9 + 16) % 5


def test_associate_dimension_and_hull(t4):
    b = make_basis(t4, [2, 3])
    rng = np.random.default_rng(1)
    for h in range(0, 3):
        code = random_code_with_hull(t4, 5, 2, h, rng)
        mc = associate(code, b)
        assert mc.dim == 2 * code.k
        assert matrix_dual(mc).dim == 2 * 5 - mc.dim
        assert matrix_hull(mc).dim == 2 * hull_dim(code)


def test_matrix_code_from_matrices(t4):
    mats = [Matrix(t4.mid, [[1, 0], [0, 1]]), Matrix(t4.mid, [[0, 1], [1, 0]]), Matrix(t4.mid, [[1, 1], [1, 1]])]
    mc = MatrixCode.from_matrices(t4, 2, 2, mats)
    assert mc.dim == 2
    assert len(mc.matrices()) == 2
    hull = matrix_hull(mc)
    assert hull.dim == 2  # both generators are self-orthogonal and mutually orthogonal over F_2


@pytest.mark.parametrize("params", SELF_DUAL_TOWERS)
def test_hull_chain_holds(params):
    t = make_tower(*params)
    basis = find_self_dual_basis(t)
    rng = np.random.default_rng(3)
    for n, k in [(4, 2), (5, 2), (3, 1)]:
        for h in range(0, min(k, n - k) + 1):
            code = random_code_with_hull(t, n, k, h, rng)
            if code is None:
                continue
            rep = extended_block_hull_chain(code, basis)
            assert rep.ok, rep.steps
            assert rep.dims["final_dim"] == t.m * h
            assert rep.counterexample is None


def test_association_of_dual_uses_dual_basis(t4):
    rng = np.random.default_rng(8)
    b = random_basis(t4, rng)
    code = random_code_with_hull(t4, 4, 2, 1, rng)
    lhs = associate(dual(code), dual_basis(b))
    assert lhs == matrix_dual(associate(code, b))


def test_hull_chain_requires_self_dual_basis(t4, example_hull1):
    with pytest.raises(ValueError):
        extended_block_hull_chain(example_hull1, power_basis(t4))


@pytest.mark.parametrize("params", [(2, 1, 2), (2, 2, 2), (3, 1, 3)])
def test_reduce_hull_matrix(params):
    t = make_tower(*params)
    basis = find_self_dual_basis(t)
    rng = np.random.default_rng(4)
    code = random_code_with_hull(t, 6, 3, 2, rng)
    for ell in admissible_targets(t.q, 2):
        mc, res = reduce_hull_matrix(code, basis, ell)
        assert matrix_hull(mc).dim == t.m * ell
        assert hull_dim(res.code) == ell


def test_reduce_hull_matrix_h1_small_q(t4, example_hull1):
    mc, res = reduce_hull_matrix(example_hull1, make_basis(t4, [2, 3]), 0)
    assert res.certificate is not None
    assert matrix_hull(mc).dim == 0
