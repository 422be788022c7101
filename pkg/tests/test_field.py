from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankhull.field import FieldTower, make_tower

from oracles import cubic_without_root

TOWERS = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (2, 2, 2), (5, 1, 3), (2, 3, 2), (3, 2, 2)]


def test_f4_modulus(t4):
    assert t4.top_modulus == (1, 1, 1)
    assert t4.q == 2 and t4.top.order == 4


def test_trivial_tower():
    t = make_tower(2, 1, 1)
    assert t.top_modulus == (1, 1)
    assert t.top.order == 2


def test_cubic_over_f3_matches_root_search():
    assert make_tower(3, 1, 3).top_modulus == cubic_without_root(3)


@pytest.mark.parametrize("p,e,m", [(4, 1, 1), (1, 1, 1), (2, 0, 1), (2, 1, 0)])
def test_bad_tower_arguments(p, e, m):
    with pytest.raises(ValueError):
        make_tower(p, e, m)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldTower(2, 1, 2, (1, 1), (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over F_2


def test_f4_products(t4):
    top = t4.top
    w, w2 = 2, 3
    assert top.mul(w, w) == w2
    assert top.mul(w2, w2) == w
    assert top.mul(w, w2) == 1
    for x in range(4):
        assert top.mul(x, 1) == x


def test_division_by_zero(t4):
    with pytest.raises(ZeroDivisionError):
        t4.top.div(1, 0)


@pytest.mark.parametrize("params", TOWERS)
def test_table_path_matches_polynomial_path(params):
    t = make_tower(*params)
    for field in (t.mid, t.top):
        els = field.elements()
        a, b = np.meshgrid(els, els)
        fast = field.mul(a, b)
        slow = np.vectorize(field.mul_poly)(a, b)
        assert np.array_equal(fast, slow)


@pytest.mark.parametrize("params", TOWERS)
def test_every_nonzero_element_invertible(params):
    top = make_tower(*params).top
    x = top.elements()[1:]
    assert (top.mul(x, top.div(1, x)) == 1).all()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TOWERS), st.data())
def test_field_laws(params, data):
    t = make_tower(*params)
    field = data.draw(st.sampled_from([t.mid, t.top]))
    el = st.integers(0, field.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert field.add(a, b) == field.add(b, a)
    assert field.mul(a, b) == field.mul(b, a)
    assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
    assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
    assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
    assert field.sub(field.add(a, b), b) == a


def test_frobenius_f4(t4):
    assert t4.frobenius(2, 1) == 3
    assert t4.frobenius(2, 0) == 2
    assert t4.frobenius(0, 1) == 0


@pytest.mark.parametrize("params", TOWERS)
def test_frobenius_fixes_base_and_has_order_m(params):
    t = make_tower(*params)
    base = np.arange(t.q)
    assert np.array_equal(t.frobenius(base, 1), base)
    allx = t.top.elements()
    assert np.array_equal(t.frobenius(allx, t.m), allx)


def test_frobenius_is_exponentiation():
    t = make_tower(3, 1, 2)
    for x in range(t.top.order):
        acc = 1
        for _ in range(t.q):
            acc = t.top.mul_poly(acc, x)
        assert t.frobenius(x, 1) == acc


def test_trace_f4(t4):
    assert t4.trace(0) == 0
    assert t4.trace(2) == 1  # w + w^2 = 1
    assert t4.trace(1) == 0  # 1 + 1


@pytest.mark.parametrize("params", TOWERS)
def test_trace_linear(params):
    t = make_tower(*params)
    rng = np.random.default_rng(7)
    top, mid = t.top, t.mid
    x, y = rng.integers(0, top.order, 50), rng.integers(0, top.order, 50)
    a, b = rng.integers(0, t.q, 50), rng.integers(0, t.q, 50)
    lhs = t.trace(top.add(top.mul(a, x), top.mul(b, y)))
    rhs = mid.add(mid.mul(a, t.trace(x)), mid.mul(b, t.trace(y)))
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("params", TOWERS + [(2, 1, 10), (2, 2, 5), (3, 1, 7), (7, 1, 4)])
def test_trace_surjective(params):
    t = make_tower(*params)
    assert t.top.order <= 2**12
    assert set(np.unique(t.trace(t.top.elements())).tolist()) == set(range(t.q))


def test_coords_roundtrip():
    t = make_tower(2, 2, 3)
    x = t.top.elements()
    c = t.coords(x)
    assert c.shape == (64, 3)
    assert np.array_equal(t.from_coords(c), x)


def test_mid_embeds_as_identity():
    t = make_tower(3, 2, 2)
    for a, b in itertools.product(range(t.q), repeat=2):
        assert t.top.mul(a, b) == t.mid.mul(a, b)
        assert t.top.add(a, b) == t.mid.add(a, b)
