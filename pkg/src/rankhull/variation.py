"""Equivalence transformations that shrink the hull of a rank-metric code.

``reduce_hull`` lowers the hull dimension from h to any admissible target by
right-multiplying a standardized generator ``[[I_h, A], [0, B]]`` with
``diag(Y, I_ell, I_{n-h})`` where ``Y Y^T - I`` is invertible. Over F_2 and
F_3 that block trick cannot remove a single hull dimension, so the h = 1 case
is handled by ``make_lcd_h1`` with a shear ``[[1, v], [0, I]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rankhull.codes import (
    EquivalenceWitness,
    HullForm,
    RankMetricCode,
    apply_witness,
    code_id,
    hull_dim,
    make_code,
    standardize_hull,
)
from rankhull.errors import InadmissibleTargetError, NoConstructionError
from rankhull.field import FieldTower, FiniteField
from rankhull.linalg import (
    Matrix,
    block_diag,
    hstack,
    identity,
    inverse,
    lift,
    rank,
    vstack,
    zeros,
)

__all__ = [
    "LcdH1Certificate",
    "ReductionPlan",
    "ReductionResult",
    "Z2",
    "Z3",
    "admissible_targets",
    "build_Y",
    "make_lcd",
    "make_lcd_h1",
    "reduce_hull",
]

Z2 = ((1, 0), (1, 1))
Z3 = ((1, 0, 0), (1, 1, 0), (0, 1, 1))


def _small(q: int) -> bool:
    return q in (2, 3)


def admissible_targets(q: int, h: int) -> list[int]:
    """Hull dimensions reachable from h by ``reduce_hull`` (h itself included)."""
    if h == 0:
        return [0]
    top = h - 2 if _small(q) else h - 1
    return list(range(0, top + 1)) + [h]


def build_Y(mid: FiniteField, s: int) -> Matrix:
    """s x s matrix over F_q with ``Y Y^T - I_s`` invertible.

    For q in {2, 3}: Z2 blocks, plus one trailing Z3 block when s is odd.
    For q > 3: ``a * I_s`` with ``a`` the smallest element having ``a != 0`` and ``a**2 != 1``.
    """
    q = mid.order
    if s < 1:
        raise ValueError("size must be positive")
    if _small(q):
        if s == 1:
            raise NoConstructionError(f"no 1x1 block over F_{q} has Y Y^T - 1 invertible")
        twos, threes = (s // 2, 0) if s % 2 == 0 else ((s - 3) // 2, 1)
        blocks = [Matrix(mid, Z2)] * twos + [Matrix(mid, Z3)] * threes
        y = block_diag(blocks)
    else:
        a = next(x for x in range(2, q) if mid.mul(x, x) != 1)
        y = identity(mid, s).scale(a)
    if rank(y @ y.T - identity(mid, s)) != s:
        raise AssertionError("Y Y^T - I is singular")
    return y


@dataclass(frozen=True, eq=False)
class ReductionPlan:
    q_regime: str
    h: int
    ell: int
    Y: Matrix
    X: Matrix
    M: Matrix


@dataclass(frozen=True, eq=False)
class LcdH1Certificate:
    v: Matrix
    theta: int
    fv: int
    Q: Matrix
    S: Matrix
    P: Matrix

    def check(self, form: HullForm) -> None:
        top = form.code.tower.top
        if self.fv == 0:
            raise AssertionError("f(v) vanishes")
        if self.Q != self.Q.T:
            raise AssertionError("Q is not symmetric")
        vt = Matrix(top, self.v.data)
        b = form.B
        alt = self.theta
        if b.rows:
            alt = top.sub(self.theta, (vt @ b.T @ inverse(self.S) @ b @ vt.T)[0, 0])
        if alt != self.fv:
            raise AssertionError("f(v) disagrees with theta - v B^T S^-1 B v^T")
        aqa = (form.A @ self.Q @ form.A.T)[0, 0]
        if aqa != (form.A @ form.A.T)[0, 0]:
            raise AssertionError("A Q A^T != A A^T")


@dataclass(frozen=True, eq=False)
class ReductionResult:
    """Outcome of a hull transformation.

    ``generator`` is the transformed standard generator (``std_gen @ M``)
    before canonicalization; ``code`` spans the same space.
    ``witness`` maps ``source`` onto ``code``.
    """

    source: RankMetricCode
    code: RankMetricCode
    witness: EquivalenceWitness
    generator: Matrix
    form: HullForm | None = None
    plan: ReductionPlan | None = None
    certificate: LcdH1Certificate | None = None


def _identity_result(code: RankMetricCode) -> ReductionResult:
    w = EquivalenceWitness(identity(code.tower.mid, code.n), code_id(code), code_id(code))
    return ReductionResult(code, apply_witness(code, w), w, code.gen)


def _finish(code: RankMetricCode, form: HullForm, m: Matrix) -> tuple[RankMetricCode, EquivalenceWitness, Matrix]:
    tower = code.tower
    total = form.perm_matrix @ m
    out = apply_witness(code, total)
    raw = form.std_gen @ lift(m, tower)
    if make_code(tower, raw) != out:
        raise AssertionError("witness does not reproduce the transformed generator")
    return out, EquivalenceWitness(total, code_id(code), code_id(out)), raw


def reduce_hull(code: RankMetricCode, ell: int) -> ReductionResult:
    tower = code.tower
    q = tower.q
    h = hull_dim(code)
    if ell == h:
        return _identity_result(code)
    if ell > h or ell < 0:
        raise InadmissibleTargetError(f"target {ell} is outside 0..{h}; hulls are only reduced")
    if ell not in admissible_targets(q, h):
        raise InadmissibleTargetError(
            f"over F_{q} the block construction reaches hull dimensions 0..{h - 2} from {h}; "
            f"target {ell} would need Y of size 1, which does not exist"
        )
    form = standardize_hull(code)
    mid = tower.mid
    s = h - ell
    y = build_Y(mid, s)
    x = block_diag([y, identity(mid, ell)]) if ell else y
    m = block_diag([x, identity(mid, code.n - h)]) if code.n > h else x
    plan = ReductionPlan("small" if _small(q) else "large", h, ell, y, x, m)
    out, witness, raw = _finish(code, form, m)

    top = tower.top
    gram = raw @ raw.T
    k = code.k
    expect = block_diag(
        [lift(y @ y.T - identity(mid, s), tower), zeros(top, ell, ell), form.B @ form.B.T]
    )
    if gram != expect:
        raise AssertionError("G' G'^T does not have the expected block shape")
    if rank(gram) != k - ell:
        raise AssertionError(f"rank(G' G'^T) = {rank(gram)} != {k - ell}")
    if hull_dim(out) != ell:
        raise AssertionError(f"reduced hull has dimension {hull_dim(out)}, expected {ell}")
    return ReductionResult(code, out, witness, raw, form, plan)


def _f_value(top: FiniteField, v: Matrix, q_mat: Matrix, a: Matrix) -> int:
    vt = Matrix(top, v.data)
    quad = (vt @ q_mat @ vt.T)[0, 0]
    lin = (vt @ a.T)[0, 0]
    return top.add(quad, top.scale_int(lin, 2))


def make_lcd_h1(code: RankMetricCode) -> ReductionResult:
    """LCD equivalent of a code with one-dimensional hull over F_2 or F_3."""
    tower = code.tower
    q = tower.q
    if not _small(q):
        raise ValueError(f"make_lcd_h1 applies to q in {{2, 3}}, got q = {q}")
    h = hull_dim(code)
    if h != 1:
        raise ValueError(f"make_lcd_h1 needs hull dimension 1, got {h}")
    form = standardize_hull(code)
    top, mid = tower.top, tower.mid
    n, k = code.n, code.k
    a, b = form.A, form.B
    s = b @ b.T
    p = b.T @ inverse(s) @ b if k > 1 else zeros(top, n - 1, n - 1)
    q_mat = identity(top, n - 1) - p

    v = None
    if q == 2:
        diag = np.diagonal(q_mat.data)
        i = int(np.flatnonzero(diag)[0])
        v = np.zeros((1, n - 1), dtype=np.int64)
        v[0, i] = 1
    else:
        i = int(np.flatnonzero(a.data[0])[0])
        v = np.zeros((1, n - 1), dtype=np.int64)
        v[0, i] = 1
        if _f_value(top, Matrix(mid, v), q_mat, a) == 0:
            v[0, i] = mid.neg(1)
    v = Matrix(mid, v)
    fv = _f_value(top, v, q_mat, a)
    vt = Matrix(top, v.data)
    theta = top.add((vt @ vt.T)[0, 0], top.scale_int((vt @ a.T)[0, 0], 2))
    cert = LcdH1Certificate(v, int(theta), int(fv), q_mat, s, p)
    cert.check(form)

    m = vstack([hstack([identity(mid, 1), v]), hstack([zeros(mid, n - 1, 1), identity(mid, n - 1)])])
    out, witness, raw = _finish(code, form, m)
    gram = raw @ raw.T
    # rank of the k x k Gram matrix is k here, not n
    if rank(gram) != k:
        raise AssertionError(f"rank(G' G'^T) = {rank(gram)} != {k}")
    if hull_dim(out) != 0:
        raise AssertionError("transformed code is not LCD")
    return ReductionResult(code, out, witness, raw, form, None, cert)


def make_lcd(code: RankMetricCode) -> ReductionResult:
    h = hull_dim(code)
    if h == 0:
        return _identity_result(code)
    if _small(code.tower.q) and h == 1:
        return make_lcd_h1(code)
    return reduce_hull(code, 0)
