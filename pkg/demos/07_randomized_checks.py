"""
Seeded randomized checks
========================

The same suites are available as ``rankhull verify``.
"""

# %%
from rankhull.verify import RunConfig, explore_h_minus_1, run_verify

report = run_verify(RunConfig(seed=0, trials=12))
for name, s in report["summary"].items():
    print(f"{name:12s} passed {s['passed']:3d} failed {s['failed']:3d}")

# %%
# Exhaustive look at whether GL_n(F_2) can lower a hull by exactly one.
x = explore_h_minus_1(2, 1, 2, 4, 2, budget=20_000, samples=1)
print(x["summary"], x["codes"][0]["hull_dims"] if x["codes"] else None)
