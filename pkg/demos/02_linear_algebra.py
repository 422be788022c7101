"""
Exact linear algebra over a finite field
========================================
"""

# %%
import numpy as np

from rankhull import make_tower
from rankhull.linalg import Matrix, RowSpace, intersect, inverse, kernel, rank, rref

f = make_tower(3, 1, 2).top  # F_9
rng = np.random.default_rng(1)
m = Matrix(f, rng.integers(0, 9, (3, 5)))
r, pivots, t = rref(m)
print("rank", rank(m), "pivots", pivots)
print("T @ M == R:", t @ m == r)

# %%
# Right null space and a check that it is annihilated.
k = kernel(m)
print("kernel dim", k.dim, "M K^T zero:", (m @ k.basis.T).is_zero())

# %%
# Intersections obey dim(U + V) + dim(U ∩ V) = dim U + dim V.
u = RowSpace.span(Matrix(f, rng.integers(0, 9, (3, 5))))
v = RowSpace.span(Matrix(f, rng.integers(0, 9, (3, 5))))
w = intersect(u, v)
print("dims:", u.dim, v.dim, (u + v).dim, w.dim)

# %%
a = Matrix(f, [[1, 2], [3, 4]])
print("A^-1 A:", (inverse(a) @ a).tolist())
