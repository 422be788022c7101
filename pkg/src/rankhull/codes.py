"""Vector rank-metric codes over F_{q^m}/F_q, their duals and hulls."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from rankhull.errors import SingularMatrixError
from rankhull.field import FieldTower
from rankhull.linalg import (
    Matrix,
    RowSpace,
    batch_matmul,
    batch_rank,
    complete_basis,
    identity,
    intersect,
    inverse,
    kernel,
    lift,
    project_check,
    rank,
    vstack,
)

__all__ = [
    "CROSS_CHECK",
    "EquivalenceWitness",
    "HullForm",
    "RankMetricCode",
    "apply_witness",
    "code_id",
    "dual",
    "hull",
    "hull_dim",
    "is_lcd",
    "make_code",
    "permutation_matrix",
    "random_code",
    "random_code_with_hull",
    "witt_index",
    "random_gl",
    "rank_weight",
    "rank_weight_distribution",
    "standardize_hull",
]

# Recompute every hull dimension through the intersection route as well.
CROSS_CHECK = os.environ.get("RANKHULL_CROSS_CHECK", "") not in ("", "0")


@dataclass(frozen=True, eq=False)
class RankMetricCode:
    """An [n, k] code over F_{q^m}; ``gen`` is the RREF generator.

    ``witness_chain`` lists the F_q matrices applied since the code was first
    built, so ``original.gen @ prod(chain)`` spans this code.
    """

    tower: FieldTower
    gen: Matrix
    witness_chain: tuple[Matrix, ...] = dc_field(default=())

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    @property
    def rowspace(self) -> RowSpace:
        return RowSpace(self.gen, _pivots(self.gen))

    def composed_witness(self) -> Matrix:
        acc = identity(self.tower.mid, self.n)
        for w in self.witness_chain:
            acc = acc @ w
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankMetricCode):
            return NotImplemented
        return self.tower == other.tower and self.gen == other.gen

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RankMetricCode([{self.n},{self.k}] over {self.tower}, gen={self.gen.tolist()})"


def _pivots(gen: Matrix) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in gen.data]


def make_code(tower: FieldTower, gen, witness_chain: Sequence[Matrix] = (), allow_zero: bool = False) -> RankMetricCode:
    if not isinstance(gen, Matrix):
        gen = Matrix(tower.top, gen)
    gen = lift(gen, tower)
    space = RowSpace.span(gen)
    if space.dim == 0 and not allow_zero:
        raise ValueError("generator matrix is zero")
    return RankMetricCode(tower, space.basis, tuple(witness_chain))


def code_id(code: RankMetricCode) -> str:
    t = code.tower
    h = hashlib.sha1(repr((t.p, t.e, t.m, t.mid_modulus, t.top_modulus, code.gen.shape, code.gen.tolist())).encode())
    return h.hexdigest()[:12]


def dual(code: RankMetricCode) -> RankMetricCode:
    space = kernel(code.gen) if code.k else RowSpace.span(identity(code.tower.top, code.n))
    return RankMetricCode(code.tower, space.basis)


def hull(code: RankMetricCode) -> RowSpace:
    """``C ∩ C^⊥`` by subspace intersection."""
    return intersect(code.rowspace, dual(code).rowspace)


def hull_dim(code: RankMetricCode) -> int:
    """``k - rank(G G^T)``."""
    h = code.k - rank(code.gen @ code.gen.T)
    if CROSS_CHECK:
        oracle = hull(code).dim
        if oracle != h:
            raise AssertionError(f"hull dimension formula gives {h}, intersection gives {oracle}")
    return h


def is_lcd(code: RankMetricCode) -> bool:
    return hull_dim(code) == 0


def rank_weight(v, tower: FieldTower) -> int:
    """F_q-dimension of the span of the coordinates of ``v``."""
    data = v.data.reshape(-1) if isinstance(v, Matrix) else np.asarray(v, dtype=np.int64).reshape(-1)
    return rank(Matrix(tower.mid, tower.coords(data)))


def codewords(code: RankMetricCode) -> np.ndarray:
    """All q^{mk} codewords as rows (for desk-scale enumeration)."""
    top = code.tower.top
    if code.k == 0:
        return np.zeros((1, code.n), dtype=np.int64)
    grid = np.indices((top.order,) * code.k).reshape(code.k, -1).T
    return batch_matmul(top, grid, code.gen.data)


def rank_weight_distribution(code: RankMetricCode) -> np.ndarray:
    """``dist[w]`` = number of codewords of rank weight ``w``."""
    words = codewords(code)
    tower = code.tower
    ranks = batch_rank(tower.mid, tower.coords(words))
    return np.bincount(ranks, minlength=min(code.n, tower.m) + 1)


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """``target = source @ matrix`` (row spaces), with ``matrix`` in GL_n(F_q)."""

    matrix: Matrix
    source: str = ""
    target: str = ""

    def compose(self, then: EquivalenceWitness) -> EquivalenceWitness:
        return EquivalenceWitness(self.matrix @ then.matrix, self.source, then.target)

    def inverse(self) -> EquivalenceWitness:
        return EquivalenceWitness(inverse(self.matrix), self.target, self.source)

    def is_invertible(self) -> bool:
        return rank(self.matrix) == self.matrix.rows


def apply_witness(code: RankMetricCode, witness) -> RankMetricCode:
    """Code generated by ``G @ M`` for ``M`` in GL_n(F_q)."""
    m = witness.matrix if isinstance(witness, EquivalenceWitness) else witness
    tower = code.tower
    m = project_check(m, tower)
    if m.shape != (code.n, code.n):
        raise ValueError(f"witness of shape {m.shape} does not act on length {code.n}")
    r = rank(m)
    if r < code.n:
        raise SingularMatrixError(r, code.n)
    new = make_code(tower, code.gen @ lift(m, tower), allow_zero=True)
    return RankMetricCode(tower, new.gen, code.witness_chain + (m,))


def permutation_matrix(field, order: Sequence[int]) -> Matrix:
    """``P`` with ``(G @ P)[:, j] == G[:, order[j]]``."""
    n = len(order)
    out = np.zeros((n, n), dtype=np.int64)
    for j, src in enumerate(order):
        out[src, j] = 1
    return Matrix(field, out)


@dataclass(frozen=True, eq=False)
class HullForm:
    """Generator ``[[I_h, A], [0, B]]`` of a column-permuted copy of ``code``.

    The first h rows span the hull of the permuted code.
    """

    code: RankMetricCode
    h: int
    perm: tuple[int, ...]
    perm_matrix: Matrix
    std_gen: Matrix
    A: Matrix
    B: Matrix

    def check(self) -> None:
        top = self.code.tower.top
        h, k = self.h, self.code.k
        permuted = make_code(self.code.tower, self.code.gen @ lift(self.perm_matrix, self.code.tower))
        if make_code(self.code.tower, self.std_gen) != permuted:
            raise AssertionError("standard generator does not span the permuted code")
        if not (self.A @ self.A.T + identity(top, h)).is_zero():
            raise AssertionError("A A^T + I != 0")
        if not (self.A @ self.B.T).is_zero():
            raise AssertionError("A B^T != 0")
        if rank(self.B @ self.B.T) != k - h:
            raise AssertionError("rank(B B^T) != k - h")


def standardize_hull(code: RankMetricCode) -> HullForm:
    tower = code.tower
    hs = hull(code)
    h = hs.dim
    if h == 0:
        raise ValueError("code is LCD; there is no hull to standardize")
    n, k = code.n, code.k
    lead = list(hs.pivots)
    order = tuple(lead + [c for c in range(n) if c not in set(lead)])
    p = permutation_matrix(tower.mid, order)
    pl = lift(p, tower)
    sub = RowSpace.span(hs.basis @ pl)
    full = RowSpace.span(code.gen @ pl)
    g0 = complete_basis(sub, full)
    top = tower.top
    data = np.array(g0.data)
    head = data[:h]
    for r in range(h, k):
        coef = data[r, :h]
        if coef.any():
            data[r] = top.sub(data[r], top.sum(top.mul(coef[:, None], head), axis=0))
    std = Matrix(top, data)
    form = HullForm(code, h, order, p, std, std[:h, h:], std[h:, h:])
    form.check()
    return form


def random_gl(field, n: int, rng: np.random.Generator) -> Matrix:
    while True:
        m = Matrix(field, rng.integers(0, field.order, (n, n)))
        if rank(m) == n:
            return m


def random_code(tower: FieldTower, n: int, k: int, rng: np.random.Generator) -> RankMetricCode:
    top = tower.top
    while True:
        g = Matrix(top, rng.integers(0, top.order, (k, n)))
        if rank(g) == k:
            return make_code(tower, g)


def _random_vector_in(space: RowSpace, rng: np.random.Generator) -> Matrix:
    top = space.field
    c = Matrix(top, rng.integers(0, top.order, (1, space.dim)))
    return c @ space.basis


def witt_index(order: int, n: int) -> int:
    """Largest dimension of a self-orthogonal subspace of F^n (F of the given order, dot product)."""
    if order % 2 == 0:
        return n // 2
    if n % 2:
        return (n - 1) // 2
    # -1 is a square iff order = 1 mod 4; otherwise a hyperbolic split needs n = 0 mod 4
    return n // 2 if order % 4 == 1 or n % 4 == 0 else n // 2 - 1


def random_code_with_hull(
    tower: FieldTower, n: int, k: int, h: int, rng: np.random.Generator, attempts: int = 2000
) -> RankMetricCode | None:
    """Random [n, k] code with hull dimension exactly ``h``, or ``None`` if sampling gives up.

    Builds an isotropic h-space H, then adds k - h vectors from H^⊥ whose Gram matrix is invertible.
    """
    top = tower.top
    if h > min(k, n - k, witt_index(top.order, n)):
        return None
    for _ in range(attempts):
        rows: list[Matrix] = []
        ok = True
        for _ in range(h):
            cur = vstack(rows) if rows else Matrix(top, np.zeros((0, n), dtype=np.int64))
            perp = kernel(cur) if rows else RowSpace.span(identity(top, n))
            found = None
            for _ in range(4 * top.order + 20):
                v = _random_vector_in(perp, rng)
                if (v @ v.T).is_zero() and rank(vstack([cur, v])) > cur.rows:
                    found = v
                    break
            if found is None:
                ok = False
                break
            rows.append(found)
        if not ok:
            continue
        hmat = vstack(rows) if rows else Matrix(top, np.zeros((0, n), dtype=np.int64))
        perp = kernel(hmat) if rows else RowSpace.span(identity(top, n))
        extra = Matrix(top, rng.integers(0, top.order, (k - h, perp.dim))) @ perp.basis
        g = vstack([hmat, extra])
        if rank(g) != k:
            continue
        code = make_code(tower, g)
        if hull_dim(code) == h:
            return code
    return None
