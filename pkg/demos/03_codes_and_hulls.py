"""
Rank-metric codes, duals and hulls
==================================
"""

# %%
import numpy as np

from rankhull import make_tower
from rankhull.codes import dual, hull, hull_dim, make_code, rank_weight_distribution

# F_4 = F_2[w]/(w^2 + w + 1), encoded 0, 1, w = 2, w^2 = 3
t4 = make_tower(2, 1, 2)
code = make_code(t4, [[1, 0, 2, 3], [0, 1, 3, 2]])
print("generator (reduced row echelon form):", code.gen.tolist())

# %%
# The hull dimension from the Gram matrix and from an explicit intersection.
print("k - rank(G G^T) =", hull_dim(code), "| dim(C ∩ C^perp) =", hull(code).dim)
print("self-dual:", dual(code) == code)

# %%
# Rank weight counts the F_2-dimension spanned by the coordinates of a codeword.
print("codewords per rank weight:", rank_weight_distribution(code).tolist())

# %%
# A random code drawn with a prescribed hull.
from rankhull.codes import random_code_with_hull

c = random_code_with_hull(make_tower(3, 1, 2), 6, 3, 2, np.random.default_rng(0))
print("[6,3] code over F_9 with hull", hull_dim(c))
