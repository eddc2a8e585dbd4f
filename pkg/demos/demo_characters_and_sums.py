#!/usr/bin/env python3
"""Characters and the exponential sums built from them.

Additive characters come from the absolute trace, multiplicative characters
from an exponent against the canonical generator.  Gauss sums have modulus
sqrt(q), Kloosterman sums degenerate to -1 or q-1 at the boundary, and the
normalized Fourier transform inverts cleanly.
"""

import numpy as np

from gammalab import (
    AddChar,
    CFun,
    MultChar,
    build_field,
    fourier,
    gauss_sum,
    is_regular,
    kloosterman,
    regular_exponents,
)

f = build_field(5, 1, 2)
psi = AddChar(f)
print("q = 5: Gauss sums of the nontrivial characters")
for k in range(1, f.q - 1):
    gval = gauss_sum(MultChar(f, 1, k), psi)
    print(f"  chi = gen^{k}-indexed: G = {gval:.6f}, |G| = {abs(gval):.6f}")
    assert abs(abs(gval) - f.q ** 0.5) < 1e-10

print("\nKloosterman boundary values")
print(f"  K(1, 0) = {kloosterman(1, 0, psi):.1f}  (expected -1)")
print(f"  K(0, 0) = {kloosterman(0, 0, psi):.1f}  (expected q-1 = 4)")

# Regular characters of F_{q^n}^x fall into Galois orbits of size exactly n.
f = build_field(3, 1, 2)
ks = regular_exponents(f, 2)
print(f"\nq = 3, n = 2: regular exponents {ks} ({len(ks)} of them, "
      f"{len(ks) // 2} orbits)")
assert all(is_regular(MultChar(f, 2, k), 2) for k in ks)

# Fourier inversion on F_q^m with the q^{-m/2} normalization.
rng = np.random.default_rng(11)
phi = CFun(f, 2, rng.normal(size=9) + 1j * rng.normal(size=9))
back = fourier(fourier(phi, psi := AddChar(f)), psi.inverted())
assert np.allclose(back.values, phi.values)
twice = fourier(fourier(phi, psi), psi)
flipped = [phi(tuple(f.neg(c) for c in phi.point_at(i))) for i in range(9)]
assert np.allclose(twice.values, flipped)
print("Fourier inversion and the argument flip both verified on F_3^2")
