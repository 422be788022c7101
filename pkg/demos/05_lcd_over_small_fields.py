"""
Removing a one-dimensional hull over F_2 and F_3
================================================
"""

# %%
from rankhull import make_tower
from rankhull.codes import hull_dim, make_code
from rankhull.variation import make_lcd, make_lcd_h1

t4 = make_tower(2, 1, 2)
code = make_code(t4, [[1, 2, 0, 3], [0, 2, 0, 1]])
res = make_lcd_h1(code)
cert = res.certificate
print("hull before:", hull_dim(code))
print("Q =", cert.Q.tolist())
print("v =", cert.v.tolist(), "f(v) =", cert.fv)
print("G' =", res.generator.tolist(), "hull after:", hull_dim(res.code))

# %%
# Over F_3 the unit vector can give f(e_i) = 0; the sign is flipped then.
t27 = make_tower(3, 1, 3)
res = make_lcd_h1(make_code(t27, [[1, 1, 1]]))
print("v =", res.certificate.v.tolist(), "output", res.code.gen.tolist())

# %%
# make_lcd picks the right construction for any hull dimension.
big = make_code(t4, [[1, 0, 2, 3, 0, 0], [0, 1, 3, 2, 0, 0], [0, 0, 0, 0, 1, 1]])
print("hull", hull_dim(big), "->", hull_dim(make_lcd(big).code))
