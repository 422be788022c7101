"""JSON interchange for elements, matrices, codes, bases and reports.

Elements are arrays of base-p digits, innermost level first: a mid element is
``[d_0, ..., d_{e-1}]`` and a top element is ``m`` such arrays.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from rankhull.associated import ExtensionBasis, MatrixCode, make_basis
from rankhull.codes import RankMetricCode, hull, hull_dim, make_code
from rankhull.errors import FormatError
from rankhull.field import FieldTower, make_tower
from rankhull.linalg import Matrix, rank

__all__ = [
    "basis_to_json",
    "code_from_json",
    "code_to_json",
    "element_from_json",
    "element_to_json",
    "matrix_code_to_json",
    "matrix_code_from_json",
    "matrix_from_json",
    "matrix_to_json",
    "reduction_report",
    "tower_from_json",
    "tower_to_json",
]


def _mid_digits(tower: FieldTower, x: int) -> list[int]:
    return [(int(x) // tower.p**i) % tower.p for i in range(tower.e)]


def element_to_json(tower: FieldTower, level: str, x: int):
    if level == "mid":
        return _mid_digits(tower, x)
    return [_mid_digits(tower, c) for c in tower.coords(int(x)).tolist()]


def _mid_from_digits(tower: FieldTower, digits, where: str) -> int:
    if not isinstance(digits, list) or len(digits) != tower.e:
        raise FormatError(where, f"expected a list of {tower.e} base-{tower.p} digits, got {digits!r}")
    out = 0
    for i, d in enumerate(digits):
        if not isinstance(d, int) or not 0 <= d < tower.p:
            raise FormatError(where, f"digit {d!r} is not in [0, {tower.p})")
        out += d * tower.p**i
    return out


def element_from_json(tower: FieldTower, level: str, obj, where: str = "element") -> int:
    if level == "mid":
        return _mid_from_digits(tower, obj, where)
    if not isinstance(obj, list) or len(obj) != tower.m:
        raise FormatError(where, f"expected {tower.m} coordinate arrays, got {obj!r}")
    coeffs = [_mid_from_digits(tower, c, f"{where}[{j}]") for j, c in enumerate(obj)]
    return sum(c * tower.q**j for j, c in enumerate(coeffs))


def matrix_to_json(tower: FieldTower, mat: Matrix) -> dict[str, Any]:
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "level": mat.level,
        "entries": [[element_to_json(tower, mat.level, x) for x in row] for row in mat.tolist()],
    }


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(where, "expected a JSON object")
    if key not in obj:
        raise FormatError(f"{where}.{key}", "missing")
    return obj[key]


def _int(obj: dict, key: str, where: str, minimum: int = 0) -> int:
    val = _require(obj, key, where)
    if not isinstance(val, int) or isinstance(val, bool) or val < minimum:
        raise FormatError(f"{where}.{key}", f"expected an integer >= {minimum}, got {val!r}")
    return val


def matrix_from_json(tower: FieldTower, obj: dict, where: str = "matrix") -> Matrix:
    rows = _int(obj, "rows", where)
    cols = _int(obj, "cols", where)
    level = _require(obj, "level", where)
    if level not in ("mid", "top"):
        raise FormatError(f"{where}.level", f"expected 'mid' or 'top', got {level!r}")
    entries = _require(obj, "entries", where)
    if not isinstance(entries, list) or len(entries) != rows:
        raise FormatError(f"{where}.entries", f"expected {rows} rows")
    data = np.zeros((rows, cols), dtype=np.int64)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise FormatError(f"{where}.entries[{i}]", f"expected {cols} entries")
        for j, x in enumerate(row):
            data[i, j] = element_from_json(tower, level, x, f"{where}.entries[{i}][{j}]")
    return Matrix(tower.field(level), data)


def tower_to_json(tower: FieldTower) -> dict[str, Any]:
    return {
        "p": tower.p,
        "e": tower.e,
        "m": tower.m,
        "mid_modulus": list(tower.mid_modulus),
        "top_modulus": [_mid_digits(tower, c) for c in tower.top_modulus],
    }


def tower_from_json(obj: dict, where: str = "code") -> FieldTower:
    p = _int(obj, "p", where, 2)
    e = _int(obj, "e", where, 1)
    m = _int(obj, "m", where, 1)
    try:
        tower = make_tower(p, e, m)
    except ValueError as exc:
        raise FormatError(f"{where}.p", str(exc)) from exc
    if "mid_modulus" in obj or "top_modulus" in obj:
        try:
            mid = tuple(obj.get("mid_modulus", tower.mid_modulus))
            top = tuple(
                _mid_from_digits(tower, c, f"{where}.top_modulus") if isinstance(c, list) else c
                for c in obj.get("top_modulus", tower.top_modulus)
            )
            tower = FieldTower(p, e, m, mid, top)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"{where}.top_modulus", str(exc)) from exc
    return tower


def code_to_json(code: RankMetricCode) -> dict[str, Any]:
    t = code.tower
    out = {
        "p": t.p,
        "e": t.e,
        "m": t.m,
        "n": code.n,
        "k": code.k,
        "generator": matrix_to_json(t, code.gen),
        "witness_chain": [matrix_to_json(t, w) for w in code.witness_chain],
    }
    if t != make_tower(t.p, t.e, t.m):
        mod = tower_to_json(t)
        out["mid_modulus"], out["top_modulus"] = mod["mid_modulus"], mod["top_modulus"]
    return out


def code_from_json(obj: dict, where: str = "code") -> RankMetricCode:
    tower = tower_from_json(obj, where)
    n = _int(obj, "n", where, 1)
    gen = matrix_from_json(tower, _require(obj, "generator", where), f"{where}.generator")
    if gen.cols != n:
        raise FormatError(f"{where}.generator", f"has {gen.cols} columns but n = {n}")
    if gen.level != "top":
        raise FormatError(f"{where}.generator.level", "generator must live at the top level")
    chain = []
    for i, w in enumerate(obj.get("witness_chain", [])):
        mat = matrix_from_json(tower, w, f"{where}.witness_chain[{i}]")
        if mat.shape != (n, n) or mat.level != "mid":
            raise FormatError(f"{where}.witness_chain[{i}]", "witness must be an n x n matrix over F_q")
        chain.append(mat)
    try:
        code = make_code(tower, gen, chain)
    except ValueError as exc:
        raise FormatError(f"{where}.generator", str(exc)) from exc
    if "k" in obj and obj["k"] != code.k:
        raise FormatError(f"{where}.k", f"declared {obj['k']} but the generator has rank {code.k}")
    return code


def basis_to_json(basis: ExtensionBasis) -> dict[str, Any]:
    t = basis.tower
    return {
        "gammas": [element_to_json(t, "top", g) for g in basis.gammas],
        "gram": matrix_to_json(t, basis.gram),
        "self_dual": basis.self_dual,
    }


def basis_from_json(tower: FieldTower, obj: dict, where: str = "basis") -> ExtensionBasis:
    gammas = _require(obj, "gammas", where)
    if not isinstance(gammas, list):
        raise FormatError(f"{where}.gammas", "expected a list")
    vals = [element_from_json(tower, "top", g, f"{where}.gammas[{i}]") for i, g in enumerate(gammas)]
    try:
        return make_basis(tower, vals)
    except ValueError as exc:
        raise FormatError(f"{where}.gammas", str(exc)) from exc


def matrix_code_to_json(code: MatrixCode) -> dict[str, Any]:
    return {
        "n": code.n,
        "m": code.m,
        "q_spec": tower_to_json(code.tower),
        "gen_rho": matrix_to_json(code.tower, code.gen_rho),
    }


def matrix_code_from_json(obj: dict, where: str = "matrix_code") -> MatrixCode:
    tower = tower_from_json(_require(obj, "q_spec", where), f"{where}.q_spec")
    n = _int(obj, "n", where, 1)
    m = _int(obj, "m", where, 1)
    gen = matrix_from_json(tower, _require(obj, "gen_rho", where), f"{where}.gen_rho")
    if gen.level != "mid":
        raise FormatError(f"{where}.gen_rho.level", "matrix codes live over F_q")
    return MatrixCode.from_rho(tower, n, m, gen)


def reduction_report(result, ell: int | None) -> dict[str, Any]:
    """Report for a ``ReductionResult`` from the hull-variation module."""
    tower = result.code.tower
    cert = result.certificate
    cert_json = None
    if cert is not None:
        cert_json = {
            "v": matrix_to_json(tower, cert.v),
            "theta": element_to_json(tower, "top", cert.theta),
            "f_v": element_to_json(tower, "top", cert.fv),
            "Q": matrix_to_json(tower, cert.Q),
            "S": matrix_to_json(tower, cert.S),
            "P": matrix_to_json(tower, cert.P),
        }
    w = result.witness.matrix
    out = result.code
    reproduced = make_code(tower, result.source.gen @ Matrix(tower.top, w.data)) == out
    return {
        "input": code_to_json(result.source),
        "ell": ell,
        "output": code_to_json(out),
        "witness": matrix_to_json(tower, w),
        "certificate": cert_json,
        "checks": {
            "hull_dim_formula": hull_dim(out),
            "hull_dim_oracle": hull(out).dim,
            "witness_invertible": rank(w) == w.rows,
            "witness_reproduces_output": reproduced,
        },
    }
