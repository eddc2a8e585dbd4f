#!/usr/bin/env python3
"""Tour of the finite-field tower.

One ambient field F_{p^(e*n)} holds the whole subfield lattice, so norms,
traces, Frobenius and discrete logs never cross a coercion boundary.
"""

from gammalab import build_field

# F_64 over F_2: the degree-6 ambient field contains F_2, F_4, F_8, F_64.
f = build_field(2, 1, 6)
print(f"ambient field: {f} with {f.order} elements, q = {f.q}")
for d in (1, 2, 3, 6):
    print(f"  subfield of degree {d}: {len(f.subfield_elements(d))} elements")

# The generator has full multiplicative order, and dlog inverts it.
g = f.gen
orders = {f.gen_power(j) for j in range(f.order - 1)}
assert len(orders) == f.order - 1
xi = f.gen_power(23)
assert f.dlog(xi) == 23
print(f"generator index {g}; dlog(gen^23) = {f.dlog(xi)}")

# Norm and trace down the tower land where they should.
f34 = build_field(3, 1, 4)
xi = f34.gen_power(7)
n_val = f34.norm(xi, 4, 1)
t_val = f34.trace(xi, 4, 2)
assert f34.in_subfield(n_val, 1) and f34.in_subfield(t_val, 2)
print(f"\nin F_81 over F_3: N(gen^7) -> index {n_val} (in F_3), "
      f"Tr to F_9 -> index {t_val}")

# Norm is multiplicative, trace is additive; a spot check.
a, b = f34.gen_power(5), f34.gen_power(11)
assert f34.norm(f34.mul(a, b), 4, 1) == f34.mul(f34.norm(a, 4, 1), f34.norm(b, 4, 1))
assert f34.trace(f34.add(a, b), 4, 1) == f34.add(f34.trace(a, 4, 1), f34.trace(b, 4, 1))

# An element is a square exactly when its norm is a square downstairs.
squares_top = {f34.mul(x, x) for x in range(1, f34.order)}
squares_base = {f34.mul(x, x) for x in f34.subfield_units(1)}
for x in range(1, f34.order):
    assert (x in squares_top) == (f34.norm(x, 4, 1) in squares_base)
print("square <-> norm-square equivalence holds across F_81 / F_3")
