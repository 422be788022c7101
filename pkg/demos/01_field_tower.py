"""
Arithmetic in a tower of finite fields
======================================

A tower F_p < F_q < F_{q^m} is described by three integers. Elements are
plain ints whose base-p digits are polynomial coordinates.
"""

# %%
import numpy as np

from rankhull import make_tower

tower = make_tower(2, 1, 3)  # F_2 < F_2 < F_8
top = tower.top
print(tower, "top modulus (constant term first):", tower.top_modulus)

# %%
# Every operation broadcasts over numpy arrays.
x = top.elements()
print("x * x^-1 == 1 for all nonzero x:", bool((top.mul(x[1:], top.div(1, x[1:])) == 1).all()))

# %%
# Frobenius raises to the q-th power; applying it m times is the identity.
print("frobenius^m fixes everything:", np.array_equal(tower.frobenius(x, tower.m), x))

# %%
# The trace lands in F_q and every value of F_q is hit equally often.
values, counts = np.unique(tower.trace(x), return_counts=True)
print("trace values:", dict(zip(values.tolist(), counts.tolist())))

# %%
# Coordinates over F_q, one column per power of the generator.
print("coords of 5:", tower.coords(5).tolist())
