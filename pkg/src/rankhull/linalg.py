"""Dense exact linear algebra over one level of a :class:`FieldTower`."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from rankhull.errors import ContainmentError, NotInSubfieldError, SingularMatrixError
from rankhull.field import FieldTower, FiniteField

__all__ = [
    "Matrix",
    "RowSpace",
    "batch_matmul",
    "batch_rank",
    "block_diag",
    "complete_basis",
    "det",
    "embed",
    "hstack",
    "identity",
    "intersect",
    "inverse",
    "kernel",
    "lift",
    "project_check",
    "rank",
    "rref",
    "vstack",
    "zeros",
]


def batch_matmul(field: FiniteField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over ``field`` on the last two axes, broadcasting the rest."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    prod = field.mul(a[..., :, :, None], b[..., None, :, :])
    return np.asarray(field.sum(prod, axis=-2), dtype=np.int64).reshape(
        np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
    )


class Matrix:
    """Immutable matrix with entries in one field level."""

    __slots__ = ("field", "data")

    def __init__(self, field: FiniteField, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be two-dimensional, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.order):
            raise ValueError(f"entries must lie in [0, {field.order})")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def level(self) -> str:
        return self.field.level

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self.data.T)

    def _check(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field is not self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.field, batch_matmul(self.field, self.data, other.data))

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.field, self.field.sub(self.data, other.data))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.field.neg(self.data))

    def scale(self, c: int) -> Matrix:
        return Matrix(self.field, self.field.mul(self.data, c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field is other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, key):
        if isinstance(key, tuple):
            r, c = key
            if isinstance(r, int) and isinstance(c, int):
                return int(self.data[r, c])
            r = slice(r, r + 1 if r != -1 else None) if isinstance(r, int) else r
            c = slice(c, c + 1 if c != -1 else None) if isinstance(c, int) else c
            return Matrix(self.field, self.data[r, c])
        if isinstance(key, int):
            return Matrix(self.field, self.data[key : key + 1 if key != -1 else None])
        return Matrix(self.field, self.data[key])

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __repr__(self) -> str:
        return f"Matrix({self.level}, {self.tolist()})"


def identity(field: FiniteField, n: int) -> Matrix:
    return Matrix(field, np.eye(n, dtype=np.int64))


def zeros(field: FiniteField, rows: int, cols: int) -> Matrix:
    return Matrix(field, np.zeros((rows, cols), dtype=np.int64))


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    return Matrix(blocks[0].field, np.hstack([b.data for b in blocks]))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    return Matrix(blocks[0].field, np.vstack([b.data for b in blocks]))


def _eliminate(field: FiniteField, a: np.ndarray, ncols: int) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan on the first ``ncols`` columns, first nonzero entry as pivot."""
    a = np.array(a, dtype=np.int64)
    nrows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = field.mul(a[r], field.inv(int(a[r, c])))
        col = a[:, c].copy()
        col[r] = 0
        hit = col != 0
        if hit.any():
            a[hit] = field.sub(a[hit], field.mul(col[hit, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], Matrix]:
    """Reduced row-echelon form ``R``, pivot columns and an invertible ``T`` with ``T @ m == R``."""
    aug = np.hstack([m.data, np.eye(m.rows, dtype=np.int64)])
    out, pivots = _eliminate(m.field, aug, m.cols)
    return Matrix(m.field, out[:, : m.cols]), pivots, Matrix(m.field, out[:, m.cols :])


def _rref_basis(m: Matrix) -> tuple[Matrix, list[int]]:
    out, pivots = _eliminate(m.field, m.data, m.cols)
    return Matrix(m.field, out[: len(pivots)]), pivots


def rank(m: Matrix) -> int:
    return len(_eliminate(m.field, m.data, m.cols)[1])


def det(m: Matrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    field = m.field
    a = np.array(m.data, dtype=np.int64)
    n = a.shape[0]
    acc = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            acc = field.neg(acc)
        acc = field.mul(acc, int(a[c, c]))
        below = a[c + 1 :, c]
        if below.any():
            factor = field.div(below, int(a[c, c]))
            a[c + 1 :] = field.sub(a[c + 1 :], field.mul(factor[:, None], a[c][None, :]))
    return int(acc)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError(f"inverse of non-square matrix {m.shape}")
    r, pivots, t = rref(m)
    if len(pivots) < m.rows:
        raise SingularMatrixError(len(pivots), m.rows)
    return t


def batch_rank(field: FiniteField, stack: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices of shape ``(N, r, c)``."""
    a = np.array(stack, dtype=np.int64)
    n, nrows, ncols = a.shape
    rk = np.zeros(n, dtype=np.int64)
    idx = np.arange(n)
    rowpos = np.arange(nrows)
    for c in range(ncols):
        live = rk < nrows
        cand = (a[:, :, c] != 0) & (rowpos[None, :] >= rk[:, None]) & live[:, None]
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = idx[has]
        r = rk[has]
        piv = cand[has].argmax(axis=1)
        top, other = a[b, r].copy(), a[b, piv].copy()
        a[b, r], a[b, piv] = other, top
        a[b, r] = field.mul(a[b, r], field.inv(a[b, r, c])[:, None])
        col = a[b, :, c].copy()
        col[np.arange(b.size), r] = 0
        sub = field.mul(col[:, :, None], a[b, r][:, None, :])
        a[b] = field.sub(a[b], sub)
        rk[has] += 1
    return rk


class RowSpace:
    """Subspace of ``field**ambient`` stored by its RREF basis."""

    __slots__ = ("basis", "pivots")

    def __init__(self, basis: Matrix, pivots: Sequence[int]):
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, m: Matrix) -> RowSpace:
        basis, pivots = _rref_basis(m)
        return cls(basis, pivots)

    @classmethod
    def zero(cls, field: FiniteField, ambient: int) -> RowSpace:
        return cls(zeros(field, 0, ambient), ())

    @property
    def field(self) -> FiniteField:
        return self.basis.field

    @property
    def ambient(self) -> int:
        return self.basis.cols

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, RowSpace):
            return NotImplemented
        return self.basis == other.basis

    __hash__ = None  # type: ignore[assignment]

    def contains(self, vectors: Matrix) -> bool:
        if vectors.cols != self.ambient:
            raise ValueError("ambient mismatch")
        return rank(vstack([self.basis, vectors])) == self.dim

    def __le__(self, other: RowSpace) -> bool:
        return other.contains(self.basis)

    def __add__(self, other: RowSpace) -> RowSpace:
        _check_ambient(self, other)
        return RowSpace.span(vstack([self.basis, other.basis]))

    def __repr__(self) -> str:
        return f"RowSpace(dim={self.dim}, ambient={self.ambient}, basis={self.basis.tolist()})"


def _check_ambient(u: RowSpace, v: RowSpace) -> None:
    if u.ambient != v.ambient or u.field is not v.field:
        raise ValueError(f"ambient mismatch: {u.ambient} over {u.field} vs {v.ambient} over {v.field}")


def kernel(m: Matrix) -> RowSpace:
    """Right null space ``{x : m @ x.T == 0}``."""
    field = m.field
    red, pivots = _eliminate(field, m.data, m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    vecs = np.zeros((len(free), m.cols), dtype=np.int64)
    for t, f in enumerate(free):
        vecs[t, f] = 1
        for i, pc in enumerate(pivots):
            vecs[t, pc] = field.neg(int(red[i, f]))
    return RowSpace.span(Matrix(field, vecs))


def intersect(u: RowSpace, v: RowSpace) -> RowSpace:
    """``u ∩ v`` from the kernel of the stacked system ``x u = y v``."""
    _check_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return RowSpace.zero(u.field, u.ambient)
    stacked = vstack([u.basis, -v.basis])
    coeffs = kernel(stacked.T).basis
    return RowSpace.span(coeffs[:, : u.dim] @ u.basis)


def complete_basis(sub: RowSpace, full: RowSpace) -> Matrix:
    """Basis of ``full`` whose leading rows are ``sub``'s basis, extended greedily from ``full``'s RREF rows."""
    _check_ambient(sub, full)
    if not full.contains(sub.basis):
        raise ContainmentError("subspace is not contained in the ambient space")
    acc = sub.basis
    for i in range(full.dim):
        trial = vstack([acc, full.basis[i]])
        if rank(trial) > acc.rows:
            acc = trial
    return acc


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ValueError("block_diag needs at least one block")
    field = blocks[0].field
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for b in blocks:
        if b.field is not field:
            raise ValueError("blocks live in different fields")
        out[i : i + b.rows, j : j + b.cols] = b.data
        i += b.rows
        j += b.cols
    return Matrix(field, out)


def embed(m: Matrix, at: tuple[int, int], into: tuple[int, int]) -> Matrix:
    r0, c0 = at
    if r0 < 0 or c0 < 0 or r0 + m.rows > into[0] or c0 + m.cols > into[1]:
        raise ValueError(f"{m.shape} block at {at} does not fit in {into}")
    out = np.zeros(into, dtype=np.int64)
    out[r0 : r0 + m.rows, c0 : c0 + m.cols] = m.data
    return Matrix(m.field, out)


def lift(m: Matrix, tower: FieldTower) -> Matrix:
    """Inclusion of a matrix over F_q into F_{q^m} (identity on the integer encoding)."""
    if m.field is tower.top:
        return m
    if m.field is not tower.mid:
        raise ValueError("matrix does not belong to this tower")
    return Matrix(tower.top, m.data)


def project_check(m: Matrix, tower: FieldTower) -> Matrix:
    """Inverse of :func:`lift`; every entry must lie in F_q."""
    if m.field is tower.mid:
        return m
    if m.field is not tower.top:
        raise ValueError("matrix does not belong to this tower")
    bad = np.argwhere(m.data >= tower.q)
    if bad.size:
        i, j = bad[0]
        raise NotInSubfieldError(f"entry ({i}, {j}) = {m.data[i, j]} is not in F_{tower.q}")
    return Matrix(tower.mid, m.data)


def from_rows(field: FiniteField, rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
    rows = [list(r) for r in rows]
    if not rows:
        return zeros(field, 0, ncols or 0)
    return Matrix(field, rows)
