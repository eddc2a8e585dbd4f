import itertools
import random

import pytest

from gammalab.errors import Singular
from gammalab.ffield import build_field
from gammalab import matgrp as mg


def naive_charpoly(ctx, a):
    """det(tI - A) by Laplace expansion over F_q[t]; test oracle."""
    n = len(a)
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                entries[i][j] = [ctx.neg(a[i][j]), 1]
            else:
                entries[i][j] = [ctx.neg(a[i][j])] if a[i][j] else []

    def padd(x, y):
        out = [0] * max(len(x), len(y))
        for i, c in enumerate(x):
            out[i] = c
        for i, c in enumerate(y):
            out[i] = ctx.add(out[i], c)
        while out and out[-1] == 0:
            out.pop()
        return out

    def det(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total = []
        r = rows[0]
        for idx, c in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = mg.poly_mul(ctx, entries[r][c], minor)
            if idx % 2:
                term = [ctx.neg(x) for x in term]
            total = padd(total, term)
        return total

    return det(list(range(n)), list(range(n)))


def test_matrix_basics():
    f = build_field(3, 1, 2)
    g = ((1, 2), (0, 1))
    h = mg.mat_inv(f, g)
    assert mg.mat_mul(f, g, h) == mg.identity(2)
    with pytest.raises(Singular):
        mg.mat_inv(f, ((1, 2), (2, 1)))  # det = 1-4 = 0 mod 3


def test_bruhat_identity_and_antidiag():
    f = build_field(2, 1, 2)
    dec = mg.bruhat(f, mg.identity(2))
    assert dec == (mg.identity(2), mg.identity(2), mg.identity(2), mg.identity(2))
    w = ((0, 1), (1, 0))
    dec = mg.bruhat(f, w)
    assert mg.mat_mul(f, dec.w, dec.d) == w and dec.d == mg.identity(2)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3)])
def test_bruhat_roundtrip_exhaustive(p, m):
    f = build_field(p, 1, max(m, 2))
    for g in mg.all_gl(f, m):
        dec = mg.bruhat(f, g)
        assert mg.mat_chain(f, dec.u1, dec.w, dec.d, dec.u2) == g
        # u1, u2 upper unipotent
        for u in (dec.u1, dec.u2):
            for i in range(m):
                assert u[i][i] == 1
                for j in range(i):
                    assert u[i][j] == 0


def test_bruhat_uniqueness_exhaustive():
    # (w, d) agrees with a brute-force search over all u1, u2
    f = build_field(3, 1, 2)
    uni = mg.all_unipotent(f, 2)
    for g in mg.all_gl(f, 2):
        dec = mg.bruhat(f, g)
        monomials = set()
        for u1 in uni:
            iu1 = mg.mat_inv(f, u1)
            left = mg.mat_mul(f, iu1, g)
            for u2 in uni:
                cand = mg.mat_mul(f, left, mg.mat_inv(f, u2))
                nonzero = sum(1 for row in cand for x in row if x)
                if nonzero == 2:
                    monomials.add(cand)
        assert monomials == {mg.mat_mul(f, dec.w, dec.d)}


def test_coset_reps_counts():
    f3 = build_field(3, 1, 2)
    f2 = build_field(2, 1, 2)
    assert len(mg.coset_reps(f3, 1, "N\\G")) == 2
    assert len(mg.coset_reps(f2, 2, "N\\G")) == 3  # 6 / 2
    assert len(mg.coset_reps(f3, 2, "N\\G")) == 16  # 48 / 3
    assert len(mg.coset_reps(f2, 3, "B\\M")) == 8   # q^3
    # canonical map is constant on cosets and injective across them
    uni = mg.all_unipotent(f3, 2)
    seen = {}
    for g in mg.all_gl(f3, 2):
        c = mg.canonical_unipotent_coset(f3, g)
        coset = frozenset(mg.mat_mul(f3, u, g) for u in uni)
        if c in seen:
            assert seen[c] == coset
        else:
            seen[c] = coset
        assert c in coset
    assert len(seen) == 16


def test_sigma_perm():
    assert mg.sigma_perm(2) == mg.identity(2)
    s4 = mg.sigma_perm(4)
    # columns 1,2,3,4 -> rows 1,3,2,4 (the 2<->3 swap)
    assert s4 == mg.perm_matrix([0, 2, 1, 3])
    s5 = mg.sigma_perm(5)
    assert s5[4][4] == 1
    assert s5 == mg.perm_matrix([0, 2, 1, 3, 4])


def test_antidiag_elem_and_parse():
    f = build_field(3, 1, 4)
    lam = 2
    # a single block is the block itself: antidiag(lam I_2) = lam I_2
    m1 = mg.antidiag_elem(f, (1,), (lam,), block_scale=2)
    assert m1 == ((lam, 0), (0, lam))
    m2 = mg.antidiag_elem(f, (1, 1), (1, 2), block_scale=2)
    assert len(m2) == 4 and m2[0][2] == 1 and m2[2][0] == 2
    m3 = mg.antidiag_elem(f, (1,), (2,), block_scale=2, tail_one=True)
    assert m3 == ((0, 2, 0), (0, 0, 2), (1, 0, 0))
    for m in (m1, m2, m3):
        parsed = mg.parse_antidiag(m)
        assert parsed is not None
    assert mg.parse_antidiag(m2) == ((2, 2), (1, 2))
    assert mg.parse_antidiag(mg.identity(3)) == ((3,), (1,))
    assert mg.parse_antidiag(((0, 1, 0), (1, 0, 0), (0, 0, 1))) is None


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_charpoly_matches_naive_exhaustive(p, n):
    f = build_field(p, 1, max(n, 2))
    elems = f.subfield_elements(1)
    rows = list(itertools.product(elems, repeat=n))
    rng = random.Random(3)
    mats = [tuple(rng.choice(rows) for _ in range(n)) for _ in range(200)]
    for a in mats:
        assert mg.charpoly(f, a) == naive_charpoly(f, a)


def test_charpoly_random_larger():
    rng = random.Random(5)
    for (p, n) in ((2, 4), (2, 5), (3, 4)):
        f = build_field(p, 1, n)
        for _ in range(25):
            a = mg.random_invertible(f, n, rng)
            assert mg.charpoly(f, a) == naive_charpoly(f, a)


def test_class_type_examples():
    f = build_field(2, 1, 4)
    n = 4
    ct = mg.class_type(f, mg.identity(n))
    assert ct.primary and ct.d == 1 and ct.c == n and ct.alpha == 1 and ct.k == n
    # regular unipotent: single Jordan block
    ru = tuple(tuple(1 if j in (i, i + 1) else 0 for j in range(n)) for i in range(n))
    ct = mg.class_type(f, ru)
    assert ct.primary and ct.d == 1 and ct.c == n and ct.k == 1
    # companion matrix of an irreducible quartic has d = n, c = 1, k = 1
    # x^4 + x + 1 is irreducible over F_2
    comp = ((0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0))
    ct = mg.class_type(f, comp)
    assert ct.primary and ct.d == 4 and ct.c == 1 and ct.k == 1
    assert mg.poly_eval(f, mg.charpoly(f, comp), ct.alpha) == 0
    # two distinct eigenvalues in the base field: not primary
    f3 = build_field(3, 1, 2)
    ct = mg.class_type(f3, ((1, 0), (0, 2)))
    assert not ct.primary


def test_class_type_conjugation_invariant():
    f = build_field(3, 1, 3)
    rng = random.Random(9)
    for _ in range(50):
        g = mg.random_invertible(f, 3, rng)
        h = mg.random_invertible(f, 3, rng)
        conj = mg.mat_chain(f, h, g, mg.mat_inv(f, h))
        assert mg.class_type(f, g) == mg.class_type(f, conj)


def _binom2(x):
    return x * (x - 1) // 2


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_orbit_size_lemma(p, m):
    # N-orbit of the coset N wd and the constrained-X count both equal
    # q^(C(m,2) - sum C(m_i,2))
    f = build_field(p, 1, 2)
    q = f.q
    units = f.subfield_units(1)
    for comp in mg.compositions(m):
        for lams in itertools.product(units, repeat=len(comp)):
            wd = mg.antidiag_elem(f, comp, lams)
            expect = q ** (_binom2(m) - sum(_binom2(mi) for mi in comp))
            orbit = {mg.canonical_unipotent_coset(f, mg.mat_mul(f, wd, u))
                     for u in mg.all_unipotent(f, m)}
            assert len(orbit) == expect
            # permutation of wd as a function on column indices
            tau = [next(i for i in range(m) if wd[i][j]) for j in range(m)]
            tau_inv = [0] * m
            for j, i in enumerate(tau):
                tau_inv[i] = j
            count = 0
            for x in mg.lower_nilpotent_reps(f, m):
                ok = all(x[i][j] == 0
                         for i in range(m) for j in range(i)
                         if tau_inv[j] < tau_inv[i])
                count += ok
            assert count == expect


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_support_lemma_shape(p, m):
    # sigma * u(X) * diag(g, g) * sigma^{-1} = antidiag(...) * v with v upper
    # unipotent with zero superdiagonal, for admissible (g = wdu, X)
    f = build_field(p, 1, 2)
    units = f.subfield_units(1)
    sig = mg.sigma_perm(2 * m)
    sig_inv = mg.mat_inv(f, sig)
    for comp in mg.compositions(m):
        for lams in itertools.product(units, repeat=len(comp)):
            wd = mg.antidiag_elem(f, comp, lams)
            tau = [next(i for i in range(m) if wd[i][j]) for j in range(m)]
            tau_inv = [0] * m
            for j, i in enumerate(tau):
                tau_inv[i] = j
            target = mg.antidiag_elem(f, comp, lams, block_scale=2)
            for u in mg.all_unipotent(f, m):
                g = mg.mat_mul(f, wd, u)
                for x in mg.lower_nilpotent_reps(f, m):
                    if not all(x[i][j] == 0
                               for i in range(m) for j in range(i)
                               if tau_inv[j] < tau_inv[i]):
                        continue
                    z = mg.mat_chain(f, sig, mg.shalika_u(m, x),
                                     mg.shalika_diag(g), sig_inv)
                    v = mg.mat_mul(f, mg.mat_inv(f, target), z)
                    for i in range(2 * m):
                        assert v[i][i] == 1
                        for j in range(i):
                            assert v[i][j] == 0
                        if i + 1 < 2 * m:
                            assert v[i][i + 1] == 0


def test_gl_order():
    assert mg.gl_order(2, 2) == 6
    assert mg.gl_order(3, 2) == 48
    assert mg.gl_order(2, 3) == 168
    assert mg.gl_order(2, 4) == 20160
    assert len(mg.all_gl(build_field(3, 1, 2), 2)) == 48
