"""
Matrix codes from a self-dual basis
===================================
"""

# %%
import numpy as np

from rankhull import make_tower
from rankhull.associated import (
    associate,
    extended_block_hull_chain,
    find_self_dual_basis,
    matrix_hull,
    reduce_hull_matrix,
)
from rankhull.codes import hull_dim, random_code_with_hull

tower = make_tower(2, 1, 3)
basis = find_self_dual_basis(tower, seed=0)
print("self-dual basis:", basis.gammas, "Gram:", basis.gram.tolist())

# %%
code = random_code_with_hull(tower, 5, 2, 2, np.random.default_rng(0))
mc = associate(code, basis)
print("vector hull", hull_dim(code), "| matrix code dim", mc.dim, "| matrix hull", matrix_hull(mc).dim)

# %%
# Each link between the flattened block code and the vector hull, checked on this code.
for step in extended_block_hull_chain(code, basis).steps:
    print(("ok  " if step["passed"] else "FAIL"), step["step"])

# %%
mc0, res = reduce_hull_matrix(code, basis, 0)
print("after reduction: matrix hull", matrix_hull(mc0).dim)
