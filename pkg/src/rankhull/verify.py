"""Seeded randomized sweeps over the invariants of every module.

Each trial draws its own generator from ``default_rng([seed, trial])`` so a
failing record can be replayed in isolation from its seed and index.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Sequence

import numpy as np

from rankhull import __version__
from rankhull.associated import (
    associate,
    dual_basis,
    extended_block_hull_chain,
    find_self_dual_basis,
    matrix_dual,
    matrix_hull,
    random_basis,
    reduce_hull_matrix,
    self_dual_exists,
)
from rankhull.codes import (
    RankMetricCode,
    apply_witness,
    codewords,
    dual,
    hull,
    hull_dim,
    is_lcd,
    make_code,
    random_code,
    random_code_with_hull,
    random_gl,
    rank_weight_distribution,
    standardize_hull,
    witt_index,
)
from rankhull.field import make_tower
from rankhull.linalg import Matrix, batch_matmul, batch_rank, identity, lift, rank
from rankhull.serialize import code_to_json
from rankhull.variation import admissible_targets, build_Y, make_lcd, make_lcd_h1, reduce_hull

__all__ = [
    "DEFAULT_GRID",
    "SUITES",
    "RunConfig",
    "explore_h_minus_1",
    "run_verify",
]

PRNG = "numpy.random.default_rng (PCG64), seeded with [seed, trial]"

DEFAULT_GRID: list[tuple[int, int, int, int, int]] = [
    (2, 1, 2, 4, 2),
    (2, 1, 2, 6, 3),
    (2, 1, 3, 5, 2),
    (2, 1, 2, 7, 3),
    (3, 1, 2, 4, 2),
    (3, 1, 2, 6, 3),
    (3, 1, 3, 5, 2),
    (2, 2, 2, 6, 3),
    (2, 2, 1, 7, 3),
    (5, 1, 2, 6, 3),
    (5, 1, 3, 7, 3),
    (5, 1, 1, 7, 2),
]

ENUMERATION_LIMIT = 1 << 14


@dataclass
class RunConfig:
    seed: int = 0
    trials: int = 24
    grid: list[tuple[int, int, int, int, int]] = dc_field(default_factory=lambda: list(DEFAULT_GRID))
    checks: list[str] = dc_field(default_factory=lambda: list(SUITES))
    out: str | None = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.grid:
            raise ValueError("grid must not be empty")
        self.grid = [tuple(int(x) for x in g) for g in self.grid]
        for g in self.grid:
            if len(g) != 5:
                raise ValueError(f"grid entry {g} must be (p, e, m, n, k)")
            p, e, m, n, k = g
            if not 1 <= k <= n:
                raise ValueError(f"grid entry {g} needs 1 <= k <= n")
            make_tower(p, e, m)
        unknown = [c for c in self.checks if c not in SUITES]
        if unknown:
            raise ValueError(f"unknown check suites: {unknown}; known: {sorted(SUITES)}")


def draw_code(params: Sequence[int], rng: np.random.Generator) -> RankMetricCode:
    """Random code whose hull dimension is drawn uniformly from the feasible range."""
    p, e, m, n, k = params
    tower = make_tower(p, e, m)
    h = int(rng.integers(0, min(k, n - k, witt_index(tower.top.order, n)) + 1))
    code = random_code_with_hull(tower, n, k, h, rng, attempts=50)
    return code if code is not None else random_code(tower, n, k, rng)


def _enumerated_hull(code: RankMetricCode) -> int | None:
    tower = code.tower
    if tower.top.order ** code.k > ENUMERATION_LIMIT:
        return None
    words = codewords(code)
    inner = batch_matmul(tower.top, words, code.gen.data.T)
    count = int((inner == 0).all(axis=1).sum())
    h, size = 0, 1
    while size < count:
        size *= tower.top.order
        h += 1
    if size != count:
        raise AssertionError(f"{count} self-orthogonal codewords is not a power of q^m")
    return h


def _check(cond: bool, what: str, failures: list[str]) -> None:
    if not cond:
        failures.append(what)


def suite_hull_oracle(code, rng, failures):
    h = hull_dim(code)
    _check(hull(code).dim == h, "formula and intersection hull dimensions differ", failures)
    enum = _enumerated_hull(code)
    _check(enum is None or enum == h, "enumerated hull dimension differs", failures)
    return {"hull_dim": h, "oracle": hull(code).dim, "enumerated": enum}


def suite_duality(code, rng, failures):
    d = dual(code)
    _check(d.k + code.k == code.n, "dim C + dim C^perp != n", failures)
    _check(dual(d) == code, "double dual differs from the code", failures)
    _check((code.gen @ d.gen.T).is_zero(), "dual rows not orthogonal to the code", failures)
    perm = np.arange(code.n)
    rng.shuffle(perm)
    pm = np.zeros((code.n, code.n), dtype=np.int64)
    pm[perm, np.arange(code.n)] = 1
    permuted = apply_witness(code, Matrix(code.tower.mid, pm))
    _check(hull_dim(permuted) == hull_dim(code), "hull dimension changed under a column permutation", failures)
    return {"dual_k": d.k}


def _witness_reproduces(source: RankMetricCode, target: RankMetricCode, w: Matrix) -> bool:
    return rank(w) == w.rows and make_code(source.tower, source.gen @ lift(w, source.tower)) == target


def suite_reduce(code, rng, failures):
    h = hull_dim(code)
    out = {"h": h, "targets": {}}
    if h:
        form = standardize_hull(code)
        try:
            form.check()
        except AssertionError as exc:
            failures.append(f"standard form: {exc}")
    for ell in admissible_targets(code.tower.q, h):
        res = reduce_hull(code, ell)
        got = hull_dim(res.code)
        oracle = hull(res.code).dim
        enum = _enumerated_hull(res.code)
        _check(got == ell, f"reduce_hull(ell={ell}) gave hull {got}", failures)
        _check(oracle == ell, f"reduce_hull(ell={ell}) oracle gave {oracle}", failures)
        _check(enum is None or enum == ell, f"reduce_hull(ell={ell}) enumeration gave {enum}", failures)
        _check(_witness_reproduces(code, res.code, res.witness.matrix), f"witness for ell={ell} invalid", failures)
        _check(res.code.composed_witness() == res.witness.matrix, "witness chain does not compose", failures)
        out["targets"][ell] = {"formula": got, "oracle": oracle, "enumerated": enum}
    return out


def suite_lcd(code, rng, failures):
    h = hull_dim(code)
    res = make_lcd(code)
    _check(is_lcd(res.code), "make_lcd output is not LCD", failures)
    _check(hull(res.code).dim == 0, "make_lcd output has a nonzero intersection hull", failures)
    _check(_witness_reproduces(code, res.code, res.witness.matrix), "make_lcd witness invalid", failures)
    rec = {"h": h, "route": "identity" if h == 0 else ("h1" if res.certificate else "reduce")}
    if code.tower.q in (2, 3) and h == 1:
        cert = make_lcd_h1(code).certificate
        _check(cert.fv != 0, "certificate has f(v) = 0", failures)
        _check(cert.Q == cert.Q.T, "certificate Q not symmetric", failures)
        rec["f_v"] = cert.fv
    return rec


def suite_isometry(code, rng, failures, samples: int = 10):
    tower = code.tower
    if tower.top.order ** code.k > 1 << 12:
        return {"skipped": "code too large to enumerate"}
    base = rank_weight_distribution(code)
    for _ in range(samples):
        w = random_gl(tower.mid, code.n, rng)
        other = rank_weight_distribution(apply_witness(code, w))
        if not np.array_equal(base, other):
            failures.append(f"rank weight distribution changed under {w.tolist()}")
            break
    return {"distribution": base.tolist()}


def suite_transfer(code, rng, failures):
    tower = code.tower
    basis = random_basis(tower, rng)
    lhs = associate(dual(code), dual_basis(basis))
    rhs = matrix_dual(associate(code, basis))
    _check(lhs == rhs, "associated dual under dual basis differs from matrix dual", failures)
    if not self_dual_exists(tower):
        return {"self_dual": False}
    sd = find_self_dual_basis(tower)
    chain = extended_block_hull_chain(code, sd)
    for step in chain.steps:
        _check(step["passed"], f"hull chain step failed: {step['step']}", failures)
    h = hull_dim(code)
    _check(matrix_hull(associate(code, sd)).dim == tower.m * h, "matrix hull is not m times the hull", failures)
    reduced = {}
    for ell in admissible_targets(tower.q, h) + ([0] if tower.q in (2, 3) and h == 1 else []):
        mc, _ = reduce_hull_matrix(code, sd, ell)
        reduced[ell] = matrix_hull(mc).dim
        _check(reduced[ell] == tower.m * ell, f"matrix hull after reduction to {ell} is {reduced[ell]}", failures)
    return {"self_dual": True, "chain": chain.steps, "matrix_hull_after": reduced}


SUITES: dict[str, Callable] = {
    "hull_oracle": suite_hull_oracle,
    "duality": suite_duality,
    "reduce": suite_reduce,
    "lcd": suite_lcd,
    "isometry": suite_isometry,
    "transfer": suite_transfer,
}


def _block_sweep(grid) -> dict[str, Any]:
    failures = []
    seen = sorted({(p, e) for p, e, *_ in grid})
    for p, e in seen:
        mid = make_tower(p, e, 1).mid
        start = 2 if mid.order in (2, 3) else 1
        for s in range(start, 13):
            y = build_Y(mid, s)
            if rank(y @ y.T - identity(mid, s)) != s:
                failures.append({"q": mid.order, "s": s})
    return {"fields": [p**e for p, e in seen], "failures": failures}


def run_verify(config: RunConfig) -> dict[str, Any]:
    records = []
    summary = {name: {"passed": 0, "failed": 0} for name in config.checks}
    for trial in range(config.trials):
        params = config.grid[trial % len(config.grid)]
        rng = np.random.default_rng([config.seed, trial])
        code = draw_code(params, rng)
        rec: dict[str, Any] = {"trial": trial, "params": list(params), "n": code.n, "k": code.k, "suites": {}}
        failed_any = False
        for name in config.checks:
            failures: list[str] = []
            try:
                detail = SUITES[name](code, np.random.default_rng([config.seed, trial, len(name)]), failures)
            except Exception as exc:  # report content, not a crash
                detail = {}
                failures.append(f"{type(exc).__name__}: {exc}")
            ok = not failures
            summary[name]["passed" if ok else "failed"] += 1
            rec["suites"][name] = {"passed": ok, "failures": failures, "detail": _jsonable(detail)}
            failed_any |= not ok
        if failed_any:
            rec["reproduction"] = {"seed": config.seed, "trial": trial, "code": code_to_json(code)}
        records.append(rec)
    blocks = _block_sweep(config.grid)
    records.sort(key=lambda r: r["trial"])
    failed = sum(s["failed"] for s in summary.values()) + len(blocks["failures"])
    return {
        "command": "verify",
        "version": __version__,
        "seed": config.seed,
        "prng": PRNG,
        "config": {"trials": config.trials, "grid": [list(g) for g in config.grid], "checks": config.checks},
        "block_sweep": blocks,
        "records": records,
        "summary": summary,
        "failed": failed,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _matrices(q: int, n: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    digits = (idx[:, None] // q ** np.arange(n * n, dtype=np.int64)[None, :]) % q
    return digits.reshape(-1, n, n)


def explore_h_minus_1(
    p: int, e: int, m: int, n: int, k: int, budget: int, seed: int = 0, samples: int = 3, chunk: int = 1 << 14
) -> dict[str, Any]:
    """Search GL_n(F_q) for equivalent codes with hull dimension h - 1 when q in {2, 3}.

    Matrices are enumerated in a fixed order; ``budget`` caps the number of
    invertible matrices examined per code. The output is data only.
    """
    tower = make_tower(p, e, m)
    q = tower.q
    if q not in (2, 3):
        raise ValueError(f"the h - 1 question only concerns q in {{2, 3}}, got q = {q}")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    rng = np.random.default_rng([seed, n, k])
    max_h = min(k, n - k, witt_index(tower.top.order, n))
    report: dict[str, Any] = {
        "command": "explore",
        "version": __version__,
        "seed": seed,
        "prng": PRNG,
        "params": [p, e, m, n, k],
        "budget": budget,
        "gl_order": _gl_order(q, n),
        "max_possible_hull": max_h,
        "codes": [],
    }
    if max_h < 2:
        report["note"] = f"no [{n},{k}] code over F_{tower.top.order} has hull dimension >= 2"
        report["summary"] = {"codes": 0, "found": 0, "not_found": 0, "inconclusive": 0}
        return report
    top, mid = tower.top, tower.mid
    for _ in range(samples):
        h = int(rng.integers(2, max_h + 1))
        code = random_code_with_hull(tower, n, k, h, rng)
        if code is None:
            continue
        dims: dict[int, int] = {}
        examined = 0
        total = q ** (n * n)
        pos = 0
        while pos < total and examined < budget:
            mats = _matrices(q, n, pos, min(total, pos + chunk))
            pos += mats.shape[0]
            mats = mats[batch_rank(mid, mats) == n]
            mats = mats[: budget - examined]
            examined += mats.shape[0]
            if not mats.shape[0]:
                continue
            gens = batch_matmul(top, code.gen.data[None], mats)
            grams = batch_matmul(top, gens, np.swapaxes(gens, 1, 2))
            hs = k - batch_rank(top, grams)
            for val, cnt in zip(*np.unique(hs, return_counts=True)):
                dims[int(val)] = dims.get(int(val), 0) + int(cnt)
        complete = pos >= total
        found = dims.get(h - 1, 0) > 0
        status = "found" if found else ("not_found" if complete else "inconclusive")
        report["codes"].append(
            {
                "code": code_to_json(code),
                "h": h,
                "examined": examined,
                "complete": complete,
                "hull_dims": {str(d): c for d, c in sorted(dims.items())},
                "status": status,
            }
        )
    statuses = [c["status"] for c in report["codes"]]
    report["summary"] = {
        "codes": len(statuses),
        "found": statuses.count("found"),
        "not_found": statuses.count("not_found"),
        "inconclusive": statuses.count("inconclusive"),
    }
    return report


def _gl_order(q: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out
