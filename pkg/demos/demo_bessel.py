#!/usr/bin/env python3
"""The Bessel function of a cuspidal representation.

Values live on antidiagonal scalar-block tori; everything else reduces there
through the Bruhat decomposition or vanishes.  The printed GL_3 and GL_4
character-sum formulas reproduce the same numbers by a completely different
route.
"""

import tempfile
from pathlib import Path

from gammalab import (
    AddChar,
    CuspidalRep,
    bessel_build,
    bessel_closed_form_gl3,
    bessel_closed_form_gl4,
    build_field,
    export_bessel_csv,
)
from gammalab import matgrp as mg

# GL_3(F_2), one regular character.
f = build_field(2, 1, 3)
rep = CuspidalRep(f, 1)
psi = AddChar(f)
table = bessel_build(rep, psi)
print(f"Bessel table for {rep}: {len(table.entries)} torus entries")
print(f"  B(I_3) = {table.value((3,), (1,)):.6f}  (normalization)")

# Support: a matrix whose monomial Bruhat part is not block-antidiagonal
# evaluates to zero.
g = ((1, 0, 0), (1, 1, 0), (0, 1, 1))
dec = mg.bruhat(f, g)
print(f"  lower-unipotent example: monomial part parses to "
      f"{mg.parse_antidiag(mg.mat_mul(f, dec.w, dec.d))}, B = {table.eval(g)}")

# The printed GL_3 character-sum formula agrees entry by entry.
for l1 in f.subfield_units(1):
    for l2 in f.subfield_units(1):
        built = table.value((1, 2), (l1, l2))
        printed = bessel_closed_form_gl3(rep, psi, l1, l2)
        print(f"  B(antidiag({l1} I_1, {l2} I_2)): averaging {built:.6f}  "
              f"character sum {printed:.6f}")
        assert abs(built - printed) < 1e-10

# GL_4(F_3): the w6-cell closed form vs the averaging construction.
f = build_field(3, 1, 4)
rep = CuspidalRep(f, 1)
psi = AddChar(f)
table = bessel_build(rep, psi)
print(f"\nGL_4(F_3), theta exponent 1: w6-cell values")
for mu in f.subfield_units(1):
    for nu in f.subfield_units(1):
        tw6 = mg.antidiag_elem(f, (2, 2), (mu, nu))
        built = table.eval(tw6)
        printed = bessel_closed_form_gl4(rep, psi, mu, nu)
        assert abs(built - printed) < 1e-10
        print(f"  (mu, nu) = ({mu}, {nu}): {built:.6f}")

# Tables export as CSV with a schema header.
out = Path(tempfile.mkdtemp()) / "bessel_gl4_f3.csv"
export_bessel_csv(table, out)
print(f"\nexported {sum(1 for _ in open(out))} lines to {out}")
