"""Matrix codes and extended block codes attached to a vector rank-metric code.

A basis ``gammas`` of F_{q^m}/F_q turns a vector ``alpha`` of length n into
the n x m matrix of its coordinates. A matrix code is kept as the generator of
its row-major flattening, so the trace-product dual is an ordinary kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from rankhull.codes import RankMetricCode, dual, hull, hull_dim, make_code
from rankhull.errors import SearchBudgetError, SelfDualBasisError
from rankhull.field import FieldTower
from rankhull.linalg import (
    Matrix,
    RowSpace,
    batch_matmul,
    identity,
    intersect,
    inverse,
    kernel,
    lift,
    rank,
)
from rankhull.variation import ReductionResult, make_lcd_h1, reduce_hull

__all__ = [
    "ChainReport",
    "ExtensionBasis",
    "MatrixCode",
    "associate",
    "dual_basis",
    "expand",
    "extended_block_hull_chain",
    "find_self_dual_basis",
    "make_basis",
    "matrix_dual",
    "matrix_hull",
    "power_basis",
    "random_basis",
    "reduce_hull_matrix",
    "rho_flatten",
    "rho_unflatten",
    "self_dual_exists",
    "trace_product",
]


@dataclass(frozen=True, eq=False)
class ExtensionBasis:
    tower: FieldTower
    gammas: tuple[int, ...]
    gram: Matrix

    @property
    def self_dual(self) -> bool:
        return self.gram == identity(self.tower.mid, self.tower.m)

    @property
    def coords(self) -> Matrix:
        """Row j holds the power-basis coordinates of gamma_j."""
        return Matrix(self.tower.mid, self.tower.coords(np.array(self.gammas, dtype=np.int64)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtensionBasis):
            return NotImplemented
        return self.tower == other.tower and self.gammas == other.gammas

    __hash__ = None  # type: ignore[assignment]


def _gram(tower: FieldTower, gammas: Sequence[int]) -> Matrix:
    g = np.array(gammas, dtype=np.int64)
    return Matrix(tower.mid, tower.trace(tower.top.mul(g[:, None], g[None, :])))


def make_basis(tower: FieldTower, gammas: Sequence[int]) -> ExtensionBasis:
    gammas = tuple(int(g) for g in gammas)
    if len(gammas) != tower.m:
        raise ValueError(f"a basis of F_{{q^m}}/F_q needs {tower.m} elements, got {len(gammas)}")
    if rank(Matrix(tower.mid, tower.coords(np.array(gammas)))) != tower.m:
        raise ValueError("elements are linearly dependent over F_q")
    return ExtensionBasis(tower, gammas, _gram(tower, gammas))


def power_basis(tower: FieldTower) -> ExtensionBasis:
    return make_basis(tower, [tower.q**j for j in range(tower.m)])


def _change_basis(tower: FieldTower, t: Matrix, base: ExtensionBasis) -> tuple[int, ...]:
    """Elements sum_l t[j, l] * base_l."""
    vals = batch_matmul(tower.top, t.data, np.array(base.gammas, dtype=np.int64)[:, None])
    return tuple(int(x) for x in vals[:, 0])


def random_basis(tower: FieldTower, rng: np.random.Generator) -> ExtensionBasis:
    mid = tower.mid
    while True:
        t = Matrix(mid, rng.integers(0, mid.order, (tower.m, tower.m)))
        if rank(t) == tower.m:
            return make_basis(tower, _change_basis(tower, t, power_basis(tower)))


def dual_basis(basis: ExtensionBasis) -> ExtensionBasis:
    """The basis ``gamma'`` with ``Trace(gamma_i gamma'_j) = delta_ij``."""
    tower = basis.tower
    try:
        ginv = inverse(basis.gram)
    except ValueError as exc:  # pragma: no cover - the trace form is nondegenerate
        raise ArithmeticError("Gram matrix of a basis is singular; field arithmetic is broken") from exc
    out = make_basis(tower, _change_basis(tower, ginv, basis))
    cross = tower.trace(tower.top.mul(np.array(basis.gammas)[:, None], np.array(out.gammas)[None, :]))
    if not np.array_equal(cross, np.eye(tower.m, dtype=np.int64)):
        raise ArithmeticError("computed dual basis fails the trace duality check")
    return out


def self_dual_exists(tower: FieldTower) -> bool:
    q, m = tower.q, tower.m
    return q % 2 == 0 or (q % 2 == 1 and m % 2 == 1)


def find_self_dual_basis(
    tower: FieldTower, seed: int = 0, budget: int = 1 << 22, batch: int = 4096
) -> ExtensionBasis:
    """Seeded random search over change-of-basis matrices T with ``T G0 T^T = I``.

    G0 is the Gram matrix of the power basis; any T satisfying the identity is
    automatically invertible.
    """
    if not self_dual_exists(tower):
        raise SelfDualBasisError(
            f"no self-dual basis of F_{{{tower.q}^{tower.m}}} over F_{tower.q}: "
            "one exists only when q is even or q and m are both odd"
        )
    mid, m = tower.mid, tower.m
    g0 = power_basis(tower).gram.data
    eye = np.eye(m, dtype=np.int64)
    rng = np.random.default_rng(seed)
    tried = 0
    while tried < budget:
        size = min(batch, budget - tried)
        t = rng.integers(0, mid.order, (size, m, m))
        gram = batch_matmul(mid, batch_matmul(mid, t, g0), np.swapaxes(t, 1, 2))
        hit = np.flatnonzero((gram == eye).all(axis=(1, 2)))
        tried += size
        if hit.size:
            basis = make_basis(tower, _change_basis(tower, Matrix(mid, t[hit[0]]), power_basis(tower)))
            if not basis.self_dual:  # pragma: no cover
                raise ArithmeticError("search accepted a basis whose Gram matrix is not the identity")
            return basis
    raise SearchBudgetError(f"no self-dual basis found in {budget} samples (seed {seed})")


def expand(alpha, basis: ExtensionBasis) -> Matrix:
    """n x m matrix ``X`` over F_q with ``alpha_i = sum_j X[i, j] gamma_j``."""
    tower = basis.tower
    a = alpha.data.reshape(-1) if isinstance(alpha, Matrix) else np.asarray(alpha, dtype=np.int64).reshape(-1)
    coords = Matrix(tower.mid, tower.coords(a).reshape(a.size, tower.m))
    x = coords @ inverse(basis.coords)
    back = lift(x, tower) @ Matrix(tower.top, np.array(basis.gammas, dtype=np.int64)[:, None])
    if not np.array_equal(back.data[:, 0], a):
        raise ArithmeticError("expansion does not reconstruct the vector")
    return x


def rho_flatten(x: Matrix) -> Matrix:
    """Row-major concatenation of the rows of ``x`` as a 1 x (n m) matrix."""
    return Matrix(x.field, x.data.reshape(1, -1))


def rho_unflatten(v: Matrix, n: int, m: int) -> Matrix:
    if v.data.size != n * m:
        raise ValueError(f"vector of length {v.data.size} cannot be reshaped to {n} x {m}")
    return Matrix(v.field, v.data.reshape(n, m))


def trace_product(x: Matrix, y: Matrix) -> int:
    """``Tr(X Y^T)``, checked against the dot product of the flattenings."""
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {y.shape}")
    field = x.field
    prod = x @ y.T
    tr = int(field.sum(np.diagonal(prod.data), axis=0)) if prod.rows else 0
    dot = (rho_flatten(x) @ rho_flatten(y).T)[0, 0]
    if tr != dot:
        raise ArithmeticError("trace product disagrees with the flattened dot product")
    return tr


@dataclass(frozen=True, eq=False)
class MatrixCode:
    """F_q-linear code of n x m matrices, stored via its flattening's RREF generator."""

    tower: FieldTower
    n: int
    m: int
    gen_rho: Matrix = dc_field(repr=False)

    @classmethod
    def from_rho(cls, tower: FieldTower, n: int, m: int, rows: Matrix) -> MatrixCode:
        if rows.cols != n * m:
            raise ValueError(f"flattened generator must have {n * m} columns, got {rows.cols}")
        return cls(tower, n, m, RowSpace.span(rows).basis)

    @classmethod
    def from_matrices(cls, tower: FieldTower, n: int, m: int, mats: Sequence[Matrix]) -> MatrixCode:
        rows = np.array([x.data.reshape(-1) for x in mats], dtype=np.int64).reshape(len(mats), n * m)
        return cls.from_rho(tower, n, m, Matrix(tower.mid, rows))

    @property
    def dim(self) -> int:
        return self.gen_rho.rows

    @property
    def space(self) -> RowSpace:
        return RowSpace.span(self.gen_rho)

    def matrices(self) -> list[Matrix]:
        return [rho_unflatten(self.gen_rho[i], self.n, self.m) for i in range(self.dim)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixCode):
            return NotImplemented
        return (self.tower, self.n, self.m) == (other.tower, other.n, other.m) and self.gen_rho == other.gen_rho

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MatrixCode([{self.n}x{self.m}, {self.dim}])"


def associate(code: RankMetricCode, basis: ExtensionBasis) -> MatrixCode:
    """Matrix code ``{expand(c) : c in code}``, spanned by the expansions of ``gamma_j * g_i``."""
    tower = basis.tower
    if code.tower != tower:
        raise ValueError("code and basis live in different towers")
    n, m, k = code.n, tower.m, code.k
    if k == 0:
        return MatrixCode(tower, n, m, Matrix(tower.mid, np.zeros((0, n * m), dtype=np.int64)))
    g = np.array(basis.gammas, dtype=np.int64)
    scaled = tower.top.mul(code.gen.data[:, None, :], g[None, :, None]).reshape(k * m, n)
    coords = Matrix(tower.mid, tower.coords(scaled).reshape(k * m * n, m))
    flat = (coords @ inverse(basis.coords)).data.reshape(k * m, n * m)
    out = MatrixCode.from_rho(tower, n, m, Matrix(tower.mid, flat))
    if out.dim != m * k:
        raise AssertionError(f"associated code has F_q-dimension {out.dim}, expected {m * k}")
    return out


def matrix_dual(code: MatrixCode) -> MatrixCode:
    return MatrixCode(code.tower, code.n, code.m, kernel(code.gen_rho).basis)


def matrix_hull(code: MatrixCode) -> MatrixCode:
    h = intersect(code.space, matrix_dual(code).space)
    return MatrixCode(code.tower, code.n, code.m, h.basis)


def reduce_hull_matrix(code: RankMetricCode, basis: ExtensionBasis, ell: int) -> tuple[MatrixCode, ReductionResult]:
    """Associated matrix code of an equivalent vector code with hull dimension ``ell``.

    Over F_2 and F_3 a one-dimensional hull is removed with :func:`make_lcd_h1`.
    """
    if not basis.self_dual:
        raise ValueError("hull transfer needs a self-dual basis")
    h = hull_dim(code)
    if code.tower.q in (2, 3) and h == 1 and ell == 0:
        result = make_lcd_h1(code)
    else:
        result = reduce_hull(code, ell)
    out = associate(result.code, basis)
    got = matrix_hull(out).dim
    if got != code.tower.m * ell:
        raise AssertionError(f"matrix hull has dimension {got}, expected {code.tower.m * ell}")
    return out, result


def _vec_columns(n: int, m: int) -> np.ndarray:
    """Column order turning row-major flattenings into column-major ones."""
    return np.arange(n * m).reshape(n, m).T.reshape(-1)


def _dual_by_trace(code: MatrixCode) -> RowSpace:
    """Dual via trace products against the unit matrices E_ab, without flattening."""
    tower, n, m = code.tower, code.n, code.m
    mid = tower.mid
    mats = code.matrices()
    functionals = np.zeros((code.dim, n * m), dtype=np.int64)
    for a in range(n):
        for b in range(m):
            unit = np.zeros((n, m), dtype=np.int64)
            unit[a, b] = 1
            e = Matrix(mid, unit)
            for i, x in enumerate(mats):
                prod = (x @ e.T).data
                functionals[i, a * m + b] = int(mid.sum(np.diagonal(prod), axis=0)) if n else 0
    return kernel(Matrix(mid, functionals)) if code.dim else RowSpace.span(identity(mid, n * m))


@dataclass
class ChainReport:
    steps: list[dict] = dc_field(default_factory=list)
    dims: dict[str, int] = dc_field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return all(s["passed"] for s in self.steps)

    def record(self, name: str, passed: bool, **dims: int) -> None:
        self.steps.append({"step": name, "passed": bool(passed), **dims})
        self.dims.update(dims)


def extended_block_hull_chain(code: RankMetricCode, basis: ExtensionBasis) -> ChainReport:
    """Check, on one code, each link from the block-code hull down to the vector hull.

    Links: block dual equals the trace-product dual; the associated dual is the
    association of the dual code under the dual basis; flattening commutes with
    intersection; association commutes with taking the hull; and the final
    dimension is m times the vector hull dimension.
    """
    if not basis.self_dual:
        raise ValueError("hull chain needs a self-dual basis")
    tower = basis.tower
    n, m = code.n, tower.m
    rep = ChainReport()

    d = associate(code, basis)
    d_perp_block = RowSpace.span(kernel(d.gen_rho).basis) if d.dim else RowSpace.span(identity(tower.mid, n * m))
    d_perp_trace = _dual_by_trace(d)
    rep.record("block dual equals flattened trace dual", d_perp_block == d_perp_trace, dual_dim=d_perp_block.dim)

    dual_code = dual(code)
    d_of_dual = associate(dual_code, dual_basis(basis)) if dual_code.k else None
    lhs = d_of_dual.space if d_of_dual else RowSpace.zero(tower.mid, n * m)
    rep.record("association of the dual code is the dual", lhs == d_perp_block, assoc_dual_dim=lhs.dim)

    row_major = intersect(d.space, lhs)
    order = _vec_columns(n, m)
    inv_order = np.argsort(order)
    col_u = RowSpace.span(Matrix(tower.mid, d.gen_rho.data[:, order]))
    col_v = RowSpace.span(Matrix(tower.mid, lhs.basis.data[:, order]))
    col_meet = intersect(col_u, col_v)
    back = RowSpace.span(Matrix(tower.mid, col_meet.basis.data[:, inv_order]))
    rep.record("flattening commutes with intersection", back == row_major, block_hull_dim=row_major.dim)

    h = hull(code)
    assoc_h = associate(make_code(tower, h.basis, allow_zero=True), basis) if h.dim else None
    assoc_space = assoc_h.space if assoc_h else RowSpace.zero(tower.mid, n * m)
    mh = matrix_hull(d).space
    rep.record("association commutes with the hull", assoc_space == mh == row_major, matrix_hull_dim=mh.dim)

    vec_h = hull_dim(code)
    rep.record("hull dimension scales by m", row_major.dim == m * vec_h, vector_hull_dim=vec_h, final_dim=row_major.dim)

    if not rep.ok:
        from rankhull.serialize import code_to_json

        rep.counterexample = {"code": code_to_json(code), "basis": list(basis.gammas)}
    return rep
