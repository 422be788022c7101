"""Replay the two F_4/F_2 worked examples against stored golden values."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from rankhull.codes import hull_dim, make_code, standardize_hull
from rankhull.field import make_tower
from rankhull.linalg import Matrix, det, inverse
from rankhull.variation import build_Y, make_lcd_h1, reduce_hull

GOLDEN_FILES = {
    "hull_reduction_f4": "golden_hull_reduction_f4.json",
    "lcd_h1_f4": "golden_lcd_h1_f4.json",
}


def load_golden(name: str) -> dict[str, Any]:
    text = resources.files("rankhull.data").joinpath(GOLDEN_FILES[name]).read_text()
    return json.loads(text)


class _Diff:
    def __init__(self, example: str, golden: dict[str, Any]):
        self.example = example
        self.golden = golden
        self.symbols = golden["symbols"]
        self.names = {v: k for k, v in self.symbols.items()}
        self.mismatches: list[dict[str, Any]] = []
        self.compared: list[str] = []

    def _sym(self, x: int) -> str:
        return self.names.get(int(x), str(x))

    def matrix(self, key: str, got: Matrix) -> None:
        self.compared.append(key)
        want = self.golden[key]
        got_rows = got.tolist()
        if len(want) != len(got_rows) or any(len(a) != len(b) for a, b in zip(want, got_rows)):
            self.mismatches.append(
                {"example": self.example, "matrix": key, "cell": None, "expected": want,
                 "got": [[self._sym(x) for x in r] for r in got_rows]}
            )
            return
        for i, (wr, gr) in enumerate(zip(want, got_rows)):
            for j, (w, g) in enumerate(zip(wr, gr)):
                if self.symbols[w] != g:
                    self.mismatches.append(
                        {"example": self.example, "matrix": key, "cell": [i, j], "expected": w, "got": self._sym(g)}
                    )

    def scalar(self, key: str, got) -> None:
        self.compared.append(key)
        want = self.golden[key]
        ok = (self.symbols[want] == got) if isinstance(want, str) else (want == got)
        if not ok:
            shown = self._sym(got) if isinstance(want, str) else got
            self.mismatches.append({"example": self.example, "matrix": key, "cell": None, "expected": want, "got": shown})

    def result(self) -> dict[str, Any]:
        return {
            "example": self.example,
            "title": self.golden["title"],
            "compared": self.compared,
            "passed": not self.mismatches,
            "mismatches": self.mismatches,
        }


def _to_matrix(field, golden: dict[str, Any], key: str) -> Matrix:
    return Matrix(field, [[golden["symbols"][x] for x in row] for row in golden[key]])


def replay_hull_reduction(golden: dict[str, Any]) -> dict[str, Any]:
    t = golden["tower"]
    tower = make_tower(t["p"], t["e"], t["m"])
    d = _Diff("hull_reduction_f4", golden)
    g = _to_matrix(tower.top, golden, "G")
    code = make_code(tower, g)
    d.matrix("G", code.gen)
    form = standardize_hull(code)
    d.matrix("A", form.A)
    d.matrix("AAT", form.A @ form.A.T)
    d.scalar("hull_dim", hull_dim(code))
    y = build_Y(tower.mid, form.h)
    d.matrix("Y", y)
    d.matrix("YYT_minus_I", y @ y.T - Matrix(tower.mid, [[1, 0], [0, 1]]))
    res = reduce_hull(code, 0)
    d.matrix("M", res.witness.matrix)
    d.matrix("G_prime", res.generator)
    d.matrix("G_prime_G_prime_T", res.generator @ res.generator.T)
    d.scalar("hull_dim_after", hull_dim(res.code))
    return d.result()


def replay_lcd_h1(golden: dict[str, Any]) -> dict[str, Any]:
    t = golden["tower"]
    tower = make_tower(t["p"], t["e"], t["m"])
    d = _Diff("lcd_h1_f4", golden)
    g = _to_matrix(tower.top, golden, "G")
    code = make_code(tower, g)
    form = standardize_hull(code)
    d.matrix("G", form.std_gen)
    d.matrix("A", form.A)
    d.matrix("B", form.B)
    d.matrix("GGT", form.std_gen @ form.std_gen.T)
    d.scalar("hull_dim", hull_dim(code))
    res = make_lcd_h1(code)
    cert = res.certificate
    d.matrix("S", cert.S)
    d.matrix("S_inv", inverse(cert.S))
    d.matrix("P", cert.P)
    d.matrix("Q", cert.Q)
    d.matrix("v", cert.v)
    d.scalar("f_v", cert.fv)
    d.matrix("M", res.witness.matrix)
    d.matrix("G_prime", res.generator)
    gram = res.generator @ res.generator.T
    d.matrix("G_prime_G_prime_T", gram)
    d.scalar("det_G_prime_G_prime_T", det(gram))
    d.scalar("hull_dim_after", hull_dim(res.code))
    return d.result()


def run_demo(goldens: dict[str, dict[str, Any]] | None = None) -> dict[str, Any]:
    goldens = goldens or {name: load_golden(name) for name in GOLDEN_FILES}
    results = [
        replay_hull_reduction(goldens["hull_reduction_f4"]),
        replay_lcd_h1(goldens["lcd_h1_f4"]),
    ]
    passed = sum(r["passed"] for r in results)
    return {"command": "demo", "examples": results, "summary": {"passed": passed, "failed": len(results) - passed}}
