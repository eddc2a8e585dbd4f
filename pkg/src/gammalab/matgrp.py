"""Matrix machinery over the base field F_q.

Matrices are tuples of row tuples of field-element indices, all entries in
the degree-1 subfield of the ambient context.  Everything here is pure:
Bruhat decomposition, canonical coset systems for N\\G and B\\M, the
interleaving shuffles, antidiagonal block elements, and conjugacy-class
typing (primary or not) used by the character formula.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from functools import lru_cache

from .errors import Singular, ZeroScalar
from .ffield import FieldCtx

Mat = tuple  # tuple of row tuples

BruhatDecomp = namedtuple("BruhatDecomp", "u1 w d u2")
ClassType = namedtuple("ClassType", "primary d c alpha k")


# -- basic matrix arithmetic --------------------------------------------------

def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero(n: int, m: int = None) -> Mat:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def mat_mul(ctx: FieldCtx, a: Mat, b: Mat) -> Mat:
    add, mul = ctx.add, ctx.mul
    bt = tuple(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = add(s, mul(x, y))
            orow.append(s)
        out.append(tuple(orow))
    return tuple(out)


def mat_chain(ctx: FieldCtx, *ms: Mat) -> Mat:
    out = ms[0]
    for m in ms[1:]:
        out = mat_mul(ctx, out, m)
    return out


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def scalar_mul(ctx: FieldCtx, lam: int, a: Mat) -> Mat:
    return tuple(tuple(ctx.mul(lam, x) for x in row) for row in a)


def mat_trace(ctx: FieldCtx, a: Mat) -> int:
    t = 0
    for i in range(len(a)):
        t = ctx.add(t, a[i][i])
    return t


def superdiag_sum(ctx: FieldCtx, u: Mat) -> int:
    s = 0
    for i in range(len(u) - 1):
        s = ctx.add(s, u[i][i + 1])
    return s


def mat_inv(ctx: FieldCtx, a: Mat) -> Mat:
    n = len(a)
    work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise Singular("matrix is not invertible")
        work[col], work[piv] = work[piv], work[col]
        ipiv = inv(work[col][col])
        work[col] = [mul(ipiv, x) for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = neg(work[r][col])
                work[r] = [add(x, mul(f, y)) for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def rank(ctx: FieldCtx, a: Mat) -> int:
    rows = [list(r) for r in a]
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    r = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        ipiv = inv(rows[r][col])
        rows[r] = [mul(ipiv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = neg(rows[i][col])
                rows[i] = [add(x, mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def is_invertible(ctx: FieldCtx, a: Mat) -> bool:
    return rank(ctx, a) == len(a)


def mat_vec(ctx: FieldCtx, a: Mat, v) -> tuple:
    add, mul = ctx.add, ctx.mul
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return tuple(out)


def vec_mat(ctx: FieldCtx, v, a: Mat) -> tuple:
    return mat_vec(ctx, transpose(a), v)


# -- block assembly -----------------------------------------------------------

def from_blocks(rows_of_blocks) -> Mat:
    out = []
    for brow in rows_of_blocks:
        height = len(brow[0])
        for i in range(height):
            out.append(tuple(itertools.chain(*(blk[i] for blk in brow))))
    return tuple(out)


def embed_block(n: int, block: Mat, at: int) -> Mat:
    """Identity of size n with `block` pasted at diagonal offset `at`."""
    m = len(block)
    rows = [list(r) for r in identity(n)]
    for i in range(m):
        for j in range(m):
            rows[at + i][at + j] = block[i][j]
    return tuple(tuple(r) for r in rows)


def shalika_u(m: int, x: Mat) -> Mat:
    """[[I, X], [0, I]] of size 2m."""
    return from_blocks([[identity(m), x], [zero(m), identity(m)]])


def shalika_diag(g: Mat) -> Mat:
    m = len(g)
    return from_blocks([[g, zero(m)], [zero(m), g]])


def odd_u(m: int, x: Mat) -> Mat:
    """[[I, X, 0], [0, I, 0], [0, 0, 1]] of size 2m+1."""
    return from_blocks([
        [identity(m), x, zero(m, 1)],
        [zero(m), identity(m), zero(m, 1)],
        [zero(1, m), zero(1, m), identity(1)],
    ])


def odd_diag(g: Mat) -> Mat:
    m = len(g)
    return from_blocks([
        [g, zero(m), zero(m, 1)],
        [zero(m), g, zero(m, 1)],
        [zero(1, m), zero(1, m), identity(1)],
    ])


def odd_lower(m: int, z) -> Mat:
    """[[I, 0, 0], [0, I, 0], [0, Z, 1]] with Z a row vector of length m."""
    rows = [list(r) for r in identity(2 * m + 1)]
    for j in range(m):
        rows[2 * m][m + j] = z[j]
    return tuple(tuple(r) for r in rows)


def odd_upper_right(m: int, y) -> Mat:
    """[[I, 0, Y], [0, I, 0], [0, 0, 1]] with Y a column vector of length m."""
    rows = [list(r) for r in identity(2 * m + 1)]
    for i in range(m):
        rows[i][2 * m] = y[i]
    return tuple(tuple(r) for r in rows)


# -- shuffles and antidiagonal elements --------------------------------------

def perm_matrix(perm) -> Mat:
    """Column permutation matrix: column j is the standard vector e_perm(j)."""
    n = len(perm)
    return tuple(tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n))


def sigma_perm(n: int) -> Mat:
    """The interleaving shuffle: columns 1..m go to 1,3,..,2m-1 and columns
    m+1..2m go to 2,4,..,2m; for odd n the last column is fixed."""
    if n < 2:
        raise ZeroScalar("shuffle needs n >= 2")
    m = n // 2
    perm = [0] * n
    for j in range(m):
        perm[j] = 2 * j
        perm[m + j] = 2 * j + 1
    if n % 2:
        perm[2 * m] = 2 * m
    return perm_matrix(perm)


def antidiag_elem(ctx: FieldCtx, weights, scalars, block_scale: int = 1,
                  tail_one: bool = False) -> Mat:
    """antidiag(lam_1 I_{t*m_1}, ..., lam_r I_{t*m_r} [, I_1])."""
    if any(s == 0 for s in scalars):
        raise ZeroScalar("antidiagonal scalars must be nonzero")
    sizes = [block_scale * m for m in weights]
    lams = list(scalars)
    if tail_one:
        sizes.append(1)
        lams.append(1)
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    row_off = 0
    col_hi = n
    for size, lam in zip(sizes, lams):
        col_off = col_hi - size
        for i in range(size):
            rows[row_off + i][col_off + i] = lam
        row_off += size
        col_hi = col_off
    return tuple(tuple(r) for r in rows)


def parse_antidiag(m: Mat):
    """If m = antidiag(lam_1 I_{n_1}, ..., lam_r I_{n_r}) return
    (composition, scalars); otherwise None.  m must be monomial."""
    n = len(m)
    comp, scalars = [], []
    row = 0
    col_hi = n
    while row < n:
        j = next((c for c in range(n) if m[row][c]), None)
        if j is None or j >= col_hi:
            return None
        size = col_hi - j
        lam = m[row][j]
        if row + size > n:
            return None
        for t in range(size):
            r = row + t
            expected = j + t
            nz = [c for c in range(n) if m[r][c]]
            if nz != [expected] or m[r][expected] != lam:
                return None
        comp.append(size)
        scalars.append(lam)
        col_hi = j
        row += size
    if col_hi != 0:
        return None
    return tuple(comp), tuple(scalars)


def compositions(m: int):
    """All ordered compositions of m, in a fixed deterministic order."""
    if m == 0:
        return [()]
    out = []
    for first in range(1, m + 1):
        for rest in compositions(m - first):
            out.append((first,) + rest)
    return out


# -- Bruhat decomposition ------------------------------------------------------

def bruhat(ctx: FieldCtx, g: Mat) -> BruhatDecomp:
    """g = u1 * (w d) * u2 with u1, u2 upper unipotent, w a permutation
    matrix and d diagonal; (w, d) is unique."""
    n = len(g)
    work = [list(r) for r in g]
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    lacc = [list(r) for r in identity(n)]
    racc = [list(r) for r in identity(n)]
    for j in range(n):
        piv = next((i for i in range(n - 1, -1, -1) if work[i][j]), None)
        if piv is None:
            raise Singular("matrix is not invertible")
        ip = inv(work[piv][j])
        # clear the column above the pivot with lower-row additions
        for r in range(piv):
            if work[r][j]:
                f = neg(mul(work[r][j], ip))
                work[r] = [add(x, mul(f, y)) for x, y in zip(work[r], work[piv])]
                lacc[r] = [add(x, mul(f, y)) for x, y in zip(lacc[r], lacc[piv])]
        # clear the pivot row to the right with earlier-column additions
        for c in range(j + 1, n):
            if work[piv][c]:
                f = neg(mul(work[piv][c], ip))
                for i in range(n):
                    work[i][c] = add(work[i][c], mul(f, work[i][j]))
                    racc[i][c] = add(racc[i][c], mul(f, racc[i][j]))
    monomial = tuple(tuple(r) for r in work)
    perm = [0] * n
    dvals = [0] * n
    for j in range(n):
        i = next(i for i in range(n) if monomial[i][j])
        perm[j] = i
        dvals[j] = monomial[i][j]
    w = perm_matrix(perm)
    d = tuple(tuple(dvals[j] if i == j else 0 for j in range(n)) for i in range(n))
    u1 = mat_inv(ctx, tuple(tuple(r) for r in lacc))
    u2 = mat_inv(ctx, tuple(tuple(r) for r in racc))
    return BruhatDecomp(u1, w, d, u2)


def monomial_of(decomp: BruhatDecomp, ctx: FieldCtx) -> Mat:
    return mat_mul(ctx, decomp.w, decomp.d)


# -- coset systems -------------------------------------------------------------

def canonical_unipotent_coset(ctx: FieldCtx, g: Mat) -> Mat:
    """The canonical representative of N g (N = upper unipotent): each row is
    reduced modulo the row space of the rows below it."""
    n = len(g)
    rows = [list(r) for r in g]
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    for i in range(n - 2, -1, -1):
        # row-echelon basis of the rows below i
        basis = [list(r) for r in rows[i + 1:]]
        pivots = []
        rr = 0
        for col in range(n):
            piv = next((t for t in range(rr, len(basis)) if basis[t][col]), None)
            if piv is None:
                continue
            basis[rr], basis[piv] = basis[piv], basis[rr]
            ip = inv(basis[rr][col])
            basis[rr] = [mul(ip, x) for x in basis[rr]]
            for t in range(len(basis)):
                if t != rr and basis[t][col]:
                    f = neg(basis[t][col])
                    basis[t] = [add(x, mul(f, y)) for x, y in zip(basis[t], basis[rr])]
            pivots.append((col, rr))
            rr += 1
        for col, t in pivots:
            if rows[i][col]:
                f = neg(rows[i][col])
                rows[i] = [add(x, mul(f, y)) for x, y in zip(rows[i], basis[t])]
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def all_gl(ctx: FieldCtx, m: int) -> tuple:
    """Every invertible m x m matrix over F_q, in a deterministic order."""
    elems = ctx.subfield_elements(1)
    rows = list(itertools.product(elems, repeat=m))
    out = []
    for mat in itertools.product(rows, repeat=m):
        if is_invertible(ctx, mat):
            out.append(mat)
    return tuple(out)


@lru_cache(maxsize=None)
def all_unipotent(ctx: FieldCtx, m: int) -> tuple:
    """The group N_m of upper unipotent matrices."""
    elems = ctx.subfield_elements(1)
    positions = [(i, j) for i in range(m) for j in range(i + 1, m)]
    out = []
    for vals in itertools.product(elems, repeat=len(positions)):
        rows = [list(r) for r in identity(m)]
        for (i, j), v in zip(positions, vals):
            rows[i][j] = v
        out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


@lru_cache(maxsize=None)
def lower_nilpotent_reps(ctx: FieldCtx, m: int) -> tuple:
    """Strictly lower triangular matrices: the coset system B\\M."""
    elems = ctx.subfield_elements(1)
    positions = [(i, j) for i in range(m) for j in range(i)]
    out = []
    for vals in itertools.product(elems, repeat=len(positions)):
        rows = [list(r) for r in zero(m)]
        for (i, j), v in zip(positions, vals):
            rows[i][j] = v
        out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


@lru_cache(maxsize=None)
def unipotent_coset_reps(ctx: FieldCtx, m: int) -> tuple:
    """Canonical representatives for N\\GL_m(F_q)."""
    if m == 1:
        return tuple(((x,),) for x in ctx.subfield_units(1))
    reps = {canonical_unipotent_coset(ctx, g) for g in all_gl(ctx, m)}
    return tuple(sorted(reps))


def coset_reps(ctx: FieldCtx, m: int, kind: str) -> tuple:
    if kind == "N\\G":
        return unipotent_coset_reps(ctx, m)
    if kind == "B\\M":
        return lower_nilpotent_reps(ctx, m)
    raise ValueError(f"unknown coset system {kind!r}")


@lru_cache(maxsize=None)
def mirabolic_coset_reps(ctx: FieldCtx, m: int) -> tuple:
    """Canonical representatives for N\\P_m, P_m the mirabolic subgroup."""
    if m == 1:
        return (identity(1),)
    e_last = tuple(1 if j == m - 1 else 0 for j in range(m))
    reps = {canonical_unipotent_coset(ctx, g) for g in all_gl(ctx, m)
            if g[m - 1] == e_last}
    return tuple(sorted(reps))


def gl_order(q: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


# -- characteristic polynomial and conjugacy typing ----------------------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(ctx, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    add, mul = ctx.add, ctx.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _poly_trim(out)


def poly_mod(ctx, a, f):
    a = list(a)
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    df = len(f) - 1
    ilead = inv(f[-1])
    while len(a) - 1 >= df and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = mul(a[-1], ilead)
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = add(a[shift + i], neg(mul(c, fi)))
        a = _poly_trim(a)
    return a


def poly_gcd(ctx, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_mod(ctx, a, b)
    if a:
        il = ctx.inv(a[-1])
        a = [ctx.mul(il, x) for x in a]
    return a


def poly_pow_x(ctx, exp, f):
    result = [1]
    base = poly_mod(ctx, [0, 1], f)
    while exp:
        if exp & 1:
            result = poly_mod(ctx, poly_mul(ctx, result, base), f)
        base = poly_mod(ctx, poly_mul(ctx, base, base), f)
        exp >>= 1
    return result


def poly_eval(ctx, f, x):
    acc = 0
    for c in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def charpoly(ctx: FieldCtx, a: Mat) -> list:
    """Monic characteristic polynomial, ascending coefficients, computed by
    Hessenberg reduction (a similarity, so exact over F_q)."""
    n = len(a)
    h = [list(r) for r in a]
    add, mul, inv, neg = ctx.add, ctx.mul, ctx.inv, ctx.neg
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for i in range(n):
                h[i][j + 1], h[i][piv] = h[i][piv], h[i][j + 1]
        ip = inv(h[j + 1][j])
        for r in range(j + 2, n):
            if h[r][j]:
                f = mul(h[r][j], ip)
                nf = neg(f)
                h[r] = [add(x, mul(nf, y)) for x, y in zip(h[r], h[j + 1])]
                for i in range(n):
                    h[i][j + 1] = add(h[i][j + 1], mul(f, h[i][r]))
    # charpoly of an upper Hessenberg matrix by the leading-minor recurrence
    polys = [[1]]
    for k in range(1, n + 1):
        tk = poly_mul(ctx, [ctx.neg(h[k - 1][k - 1]), 1], polys[k - 1])
        term = list(tk) + [0] * (k + 1 - len(tk))
        sub = 1
        for i in range(k - 1, 0, -1):
            sub = mul(sub, h[i][i - 1])
            if sub == 0:
                break
            coeff = mul(h[i - 1][k - 1], sub)
            if coeff:
                pi = polys[i - 1]
                nc = neg(coeff)
                for t, c in enumerate(pi):
                    term[t] = add(term[t], mul(nc, c))
        polys.append(_poly_trim(term))
    return polys[n]


def class_type(ctx: FieldCtx, g: Mat) -> ClassType:
    """Primary-type data of an invertible matrix: if charpoly = f^c with f
    irreducible of degree d, report (d, c, alpha = deterministic root of f,
    k = dim ker f(g) / d); otherwise primary=False."""
    n = len(g)
    if not is_invertible(ctx, g):
        raise Singular("class_type of a singular matrix")
    c = charpoly(ctx, g)
    q = ctx.q
    f = None
    d0 = None
    for d in range(1, n + 1):
        xq = poly_pow_x(ctx, q ** d, c)
        # gcd(c, x^{q^d} - x)
        diff = list(xq) + [0, 0]
        diff[1] = ctx.sub(diff[1], 1)
        gg = poly_gcd(ctx, c, _poly_trim(diff))
        if len(gg) - 1 == 0:
            continue
        d0 = d
        f = gg
        break
    if f is None or len(f) - 1 != d0 or n % d0:
        return ClassType(False, None, None, None, None)
    mult = n // d0
    power = [1]
    for _ in range(mult):
        power = poly_mul(ctx, power, f)
    if power != c:
        return ClassType(False, None, None, None, None)
    roots = [xi for xi in ctx.subfield_units(d0) if poly_eval(ctx, f, xi) == 0]
    alpha = min(roots, key=ctx.dlog)
    # k from the kernel of f(g)
    fg = zero(n)
    acc = identity(n)
    fg = scalar_mul(ctx, f[0], acc)
    for coef in f[1:]:
        acc = mat_mul(ctx, acc, g)
        if coef:
            term = scalar_mul(ctx, coef, acc)
            fg = tuple(tuple(ctx.add(x, y) for x, y in zip(r1, r2))
                       for r1, r2 in zip(fg, term))
    kdim = n - rank(ctx, fg)
    if kdim % d0:
        raise Singular("kernel dimension incompatible with factor degree")
    return ClassType(True, d0, mult, alpha, kdim // d0)


def random_invertible(ctx: FieldCtx, m: int, rng) -> Mat:
    elems = ctx.subfield_elements(1)
    while True:
        g = tuple(tuple(rng.choice(elems) for _ in range(m)) for _ in range(m))
        if is_invertible(ctx, g):
            return g


def random_unipotent(ctx: FieldCtx, m: int, rng) -> Mat:
    elems = ctx.subfield_elements(1)
    rows = [list(r) for r in identity(m)]
    for i in range(m):
        for j in range(i + 1, m):
            rows[i][j] = rng.choice(elems)
    return tuple(tuple(r) for r in rows)
