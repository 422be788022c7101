"""
Shrinking the hull with an explicit equivalence
===============================================

reduce_hull returns the new code together with an invertible matrix W over
F_q such that the new code is spanned by G W.
"""

# %%
import numpy as np

from rankhull import make_tower
from rankhull.codes import hull_dim, make_code, random_code_with_hull
from rankhull.linalg import lift
from rankhull.variation import admissible_targets, reduce_hull

t4 = make_tower(2, 1, 2)
code = make_code(t4, [[1, 0, 2, 3], [0, 1, 3, 2]])
res = reduce_hull(code, 0)
print("Y =", res.plan.Y.tolist())
print("witness =", res.witness.matrix.tolist())
print("G' =", res.generator.tolist(), "hull", hull_dim(res.code))

# %%
# Over F_2 and F_3 the block construction cannot drop the hull by exactly one.
print("targets from h = 3 over F_2:", admissible_targets(2, 3))
print("targets from h = 3 over F_5:", admissible_targets(5, 3))

# %%
tower = make_tower(5, 1, 2)
c = random_code_with_hull(tower, 7, 3, 3, np.random.default_rng(3))
for ell in admissible_targets(tower.q, 3):
    r = reduce_hull(c, ell)
    same = make_code(tower, c.gen @ lift(r.witness.matrix, tower)) == r.code
    print(f"ell={ell}: hull {hull_dim(r.code)}, witness reproduces output: {same}")
