"""Jacquet-Shalika sums and the exterior square gamma factor.

The finite-field analog of the exterior-square integral pairs a Whittaker
function W with a function phi on F_q^m (n = 2m or 2m+1) through shuffled
Shalika-type coset sums.  The gamma factor is the constant of the functional
equation dual_js = gamma * js; it is computed here by three mutually
independent routes (functional-equation ratio, Bessel torus sums, and
closed-form character sums for n = 2, 3, 4) plus the S0/S1 split, together
with the Shalika-vector detection and the appendix multiplicity bounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .bessel import BesselTable
from .charkit import CFun, fourier, gauss_sum, restriction_is_trivial
from .cuspchar import CuspidalRep
from .errors import (
    DimensionMismatch,
    DimensionBoundViolated,
    MalformedShalikaElement,
    NonConstantRatio,
    OracleFailed,
    PreconditionViolated,
    ShalikaVectorPresent,
    UnsupportedN,
)
from .ffield import FieldCtx
from . import matgrp as mg

DEFAULT_SEED = 1729
#: exhaustive functional-equation sweeps whenever |GL_n| * q^m is below this
EXHAUSTIVE_PAIR_CAP = 3000


class WhittakerFun:
    """A finite linear combination of right translates of the Bessel
    function: W(g) = sum_i scale_i * B(g h_i).  Translates span the
    Whittaker model, so functional-equation checks over this family are
    checks over the full model."""

    def __init__(self, table: BesselTable, terms):
        self.table = table
        self.terms = tuple(terms)

    @classmethod
    def translate(cls, table: BesselTable, h: mg.Mat, scale: complex = 1.0):
        return cls(table, [(scale, h)])

    def __call__(self, g: mg.Mat) -> complex:
        ctx = self.table.ctx
        return sum(scale * self.table.eval(mg.mat_mul(ctx, g, h))
                   for scale, h in self.terms)

    def right_translated(self, s: mg.Mat) -> "WhittakerFun":
        """pi(s)W, i.e. g -> W(g s)."""
        ctx = self.table.ctx
        return WhittakerFun(self.table,
                            [(scale, mg.mat_mul(ctx, s, h)) for scale, h in self.terms])


@dataclass
class GammaResult:
    value: complex
    route: str
    diagnostics: dict = field(default_factory=dict)


# -- precomputed summation frames (representation independent) ----------------

@lru_cache(maxsize=None)
def _even_frame(ctx: FieldCtx, m: int) -> tuple:
    """(sigma u(X) diag(g,g), -tr X, eps*g, e_1*g^{-T}) over the coset grid."""
    sig = mg.sigma_perm(2 * m)
    out = []
    for g in mg.unipotent_coset_reps(ctx, m):
        eps_g = g[m - 1]
        ginv = mg.mat_inv(ctx, g)
        e1_ginv_t = tuple(row[0] for row in ginv)  # first column of g^{-1}
        dg = mg.shalika_diag(g)
        for x in mg.lower_nilpotent_reps(ctx, m):
            prod = mg.mat_chain(ctx, sig, mg.shalika_u(m, x), dg)
            out.append((prod, ctx.neg(mg.mat_trace(ctx, x)), eps_g, e1_ginv_t))
    return tuple(out)


@lru_cache(maxsize=None)
def _odd_frame(ctx: FieldCtx, m: int) -> tuple:
    """(js product, dual product, -tr X, Z) over the coset grid and Z."""
    n = 2 * m + 1
    sig = mg.sigma_perm(n)
    front = mg.antidiag_elem(ctx, (1, 2 * m), (1, 1))
    probe = CFun(ctx, m)
    zpoints = probe.points()
    out = []
    for g in mg.unipotent_coset_reps(ctx, m):
        dg = mg.odd_diag(g)
        for x in mg.lower_nilpotent_reps(ctx, m):
            base = mg.mat_chain(ctx, sig, mg.odd_u(m, x), dg)
            dbase = mg.mat_mul(ctx, front, base)
            ntr = ctx.neg(mg.mat_trace(ctx, x))
            for z in zpoints:
                prod = mg.mat_mul(ctx, base, mg.odd_lower(m, z))
                dprod = mg.mat_mul(ctx, dbase, mg.odd_upper_right(m, z))
                out.append((prod, dprod, ntr, z))
    return tuple(out)


def double_dual_flip(ctx: FieldCtx, n: int) -> mg.Mat:
    """The block flip entering the dual's definition.  Even: antidiag(I, I).
    Odd: the same with -I_m blocks and a fixed last coordinate (the sign is
    forced by double duality; it is invisible over F_2)."""
    m = n // 2
    if n % 2 == 0:
        return mg.from_blocks([[mg.zero(m), mg.identity(m)],
                               [mg.identity(m), mg.zero(m)]])
    neg = mg.scalar_mul(ctx, ctx.neg(1), mg.identity(m))
    return mg.from_blocks([
        [mg.zero(m), neg, mg.zero(m, 1)],
        [neg, mg.zero(m), mg.zero(m, 1)],
        [mg.zero(1, m), mg.zero(1, m), mg.identity(1)],
    ])


def definitional_dual(table: BesselTable, tilde_table: BesselTable, w,
                      phi: CFun) -> complex:
    """The dual sum computed from its definition: JS of the contragredient
    data on the flipped, transposed-inverse translate of W against the
    Fourier transform of phi.  Agrees with dual_js (double duality)."""
    ctx = table.ctx
    n = table.n
    wn = mg.antidiag_elem(ctx, (1,) * n, (1,) * n)
    flip = double_dual_flip(ctx, n)

    def w_contra(g):
        arg = mg.mat_mul(ctx, g, flip)
        return w(mg.mat_mul(ctx, wn, mg.transpose(mg.mat_inv(ctx, arg))))

    return js(tilde_table, w_contra, fourier(phi, table.psi))


def _norm_const(ctx: FieldCtx, n: int) -> int:
    m = n // 2
    c = mg.gl_order(ctx.q, m)
    if n % 2:
        c *= ctx.q ** m
    return c


def _support_signature(ctx: FieldCtx, g: mg.Mat):
    """(table key, additive-character argument) of the Bessel evaluation at
    g, or None off the support; representation independent."""
    dec = mg.bruhat(ctx, g)
    parsed = mg.parse_antidiag(mg.mat_mul(ctx, dec.w, dec.d))
    if parsed is None:
        return None
    s = ctx.add(mg.superdiag_sum(ctx, dec.u1), mg.superdiag_sum(ctx, dec.u2))
    return parsed, s


@lru_cache(maxsize=64)
def _fe_pool(ctx: FieldCtx, n: int, seed: int, trials: int) -> tuple:
    """Support signatures of the sum frames against `trials` seeded random
    translates; shared by every representation at (q, n)."""
    rng = random.Random(f"fe:{seed}:{ctx.q}:{n}")
    m = n // 2
    odd = n % 2 == 1
    probe = CFun(ctx, m)
    idx = probe.index_of
    pool = []
    for _ in range(trials):
        h = mg.random_invertible(ctx, n, rng)
        rows = []
        if odd:
            for prod, dprod, ntr, z in _odd_frame(ctx, m):
                sj = _support_signature(ctx, mg.mat_mul(ctx, prod, h))
                sd = _support_signature(ctx, mg.mat_mul(ctx, dprod, h))
                zi = idx(z)
                if sj is not None:
                    rows.append((sj[0], ctx.add(sj[1], ntr), zi, False))
                if sd is not None:
                    rows.append((sd[0], ctx.add(sd[1], ntr), zi, True))
        else:
            for prod, ntr, eps_g, e1_ginv_t in _even_frame(ctx, m):
                sig = _support_signature(ctx, mg.mat_mul(ctx, prod, h))
                if sig is not None:
                    rows.append((sig[0], ctx.add(sig[1], ntr),
                                 idx(eps_g), idx(e1_ginv_t)))
        pool.append(tuple(rows))
    return tuple(pool)


def _pool_profiles(table: BesselTable, pool):
    """For each pooled translate, the vectors js(W, delta_x) and
    dual_js(W, delta_x) over all points x."""
    from .charkit import _pairing_matrix
    ctx = table.ctx
    n, m, odd = _split(table)
    psi = table.psi
    entries = table.entries
    norm = _norm_const(ctx, n)
    size = ctx.q ** m
    K = _pairing_matrix(ctx, m, psi.inverse)
    fscale = ctx.q ** (-m / 2.0) / norm
    out = []
    for rows in pool:
        s_js = [0j] * size
        s_dual = [0j] * size
        if odd:
            for key, s, zi, is_dual in rows:
                val = psi(s) * entries[key]
                if is_dual:
                    s_dual[zi] += val
                else:
                    s_js[zi] += val
        else:
            for key, s, i_eps, i_e1 in rows:
                val = psi(s) * entries[key]
                s_js[i_eps] += val
                s_dual[i_e1] += val
        js_vec = [v / norm for v in s_js]
        dual_vec = [fscale * sum(s_dual[z] * K[x][z] for z in range(size))
                    for x in range(size)]
        out.append((js_vec, dual_vec))
    return out


@lru_cache(maxsize=64)
def _js_one_pool(ctx: FieldCtx, n: int, seed: int, samples: int) -> tuple:
    """Support signatures for js(translate, 1) over seeded random translates."""
    rng = random.Random(f"one:{seed}:{ctx.q}:{n}")
    m = n // 2
    pool = []
    for _ in range(samples):
        h = mg.random_invertible(ctx, n, rng)
        rows = []
        for prod, ntr, _eps, _e1 in _even_frame(ctx, m):
            sig = _support_signature(ctx, mg.mat_mul(ctx, prod, h))
            if sig is not None:
                rows.append((sig[0], ctx.add(sig[1], ntr)))
        pool.append(tuple(rows))
    return tuple(pool)


def _split(table: BesselTable):
    n = table.n
    if n < 2:
        raise UnsupportedN("need n >= 2")
    return n, n // 2, n % 2 == 1


def js(table: BesselTable, w, phi: CFun) -> complex:
    """The Jacquet-Shalika sum JS(W, phi); parity dispatched on n."""
    ctx = table.ctx
    n, m, odd = _split(table)
    if phi.m != m:
        raise DimensionMismatch(f"phi lives on F_q^{phi.m}, need m = {m}")
    psi = table.psi
    total = 0j
    if odd:
        for prod, _dprod, ntr, z in _odd_frame(ctx, m):
            fz = phi(z)
            if fz:
                total += w(prod) * psi(ntr) * fz
    else:
        for prod, ntr, eps_g, _e1 in _even_frame(ctx, m):
            fz = phi(eps_g)
            if fz:
                total += w(prod) * psi(ntr) * fz
    return total / _norm_const(ctx, n)


def dual_js(table: BesselTable, w, phi: CFun) -> complex:
    """The dual sum via the direct formulas (Fourier transform of phi on the
    flipped argument)."""
    ctx = table.ctx
    n, m, odd = _split(table)
    if phi.m != m:
        raise DimensionMismatch(f"phi lives on F_q^{phi.m}, need m = {m}")
    psi = table.psi
    phat = fourier(phi, psi)
    total = 0j
    if odd:
        for _prod, dprod, ntr, z in _odd_frame(ctx, m):
            fz = phat(z)
            if fz:
                total += w(dprod) * psi(ntr) * fz
    else:
        for prod, ntr, _eps, e1_ginv_t in _even_frame(ctx, m):
            fz = phat(e1_ginv_t)
            if fz:
                total += w(prod) * psi(ntr) * fz
    return total / _norm_const(ctx, n)


def js_profiles(table: BesselTable, w):
    """js(W, delta_x) and dual_js(W, delta_x) for every point x at once;
    used by the exhaustive functional-equation sweeps."""
    ctx = table.ctx
    n, m, odd = _split(table)
    psi = table.psi
    probe = CFun(ctx, m)
    idx = probe.index_of
    size = probe.size
    s_js = [0j] * size
    s_dual = [0j] * size
    if odd:
        for prod, dprod, ntr, z in _odd_frame(ctx, m):
            pv = psi(ntr)
            i = idx(z)
            s_js[i] += w(prod) * pv
            s_dual[i] += w(dprod) * pv
    else:
        for prod, ntr, eps_g, e1_ginv_t in _even_frame(ctx, m):
            val = w(prod) * psi(ntr)
            s_js[idx(eps_g)] += val
            s_dual[idx(e1_ginv_t)] += val
    norm = _norm_const(ctx, n)
    js_vec = [v / norm for v in s_js]
    # dual_js(W, delta_x) = sum_z S_dual[z] * fourier(delta_x)(z)
    from .charkit import _pairing_matrix
    K = _pairing_matrix(ctx, m, psi.inverse)
    scale = ctx.q ** (-m / 2.0) / norm
    dual_vec = [scale * sum(s_dual[zi] * K[xi][zi] for zi in range(size))
                for xi in range(size)]
    return js_vec, dual_vec


# -- Shalika subgroup actions -------------------------------------------------

def _parse_even_shalika(ctx: FieldCtx, s: mg.Mat, m: int):
    g = tuple(row[:m] for row in s[:m])
    x = tuple(row[m:] for row in s[:m])
    g2 = tuple(row[m:] for row in s[m:])
    low = tuple(row[:m] for row in s[m:])
    if g != g2 or any(any(v for v in row) for row in low) \
            or not mg.is_invertible(ctx, g):
        raise MalformedShalikaElement("expected [[g, X], [0, g]]")
    return g, x


def _parse_odd_shalika(ctx: FieldCtx, s: mg.Mat, m: int):
    g = tuple(row[:m] for row in s[:m])
    x = tuple(row[m:2 * m] for row in s[:m])
    y = tuple(row[2 * m] for row in s[:m])
    g2 = tuple(row[m:2 * m] for row in s[m:2 * m])
    z = tuple(s[2 * m][m:2 * m])
    ok = (g == g2 and mg.is_invertible(ctx, g)
          and all(not v for row in s[m:2 * m] for v in row[:m])
          and all(not row[2 * m] for row in s[m:2 * m])
          and all(not v for v in s[2 * m][:m])
          and s[2 * m][2 * m] == 1)
    if not ok:
        raise MalformedShalikaElement("expected [[g, X, Y], [0, g, 0], [0, Z, 1]]")
    return g, x, y, z


def shalika_psi(table: BesselTable, s: mg.Mat) -> complex:
    """Psi(s) = psi(tr(X g^{-1})) on the even Shalika subgroup."""
    ctx = table.ctx
    n, m, odd = _split(table)
    if odd:
        g, x, _y, z = _parse_odd_shalika(ctx, s, m)
        if any(z):
            raise MalformedShalikaElement("Psi needs the mirabolic part (Z = 0)")
    else:
        g, x = _parse_even_shalika(ctx, s, m)
    arg = mg.mat_trace(ctx, mg.mat_mul(ctx, x, mg.mat_inv(ctx, g)))
    return table.psi(arg)


def shalika_action(table: BesselTable, s: mg.Mat, phi: CFun) -> CFun:
    """The action rho(s) of the Shalika subgroup on functions on F_q^m."""
    ctx = table.ctx
    n, m, odd = _split(table)
    psi = table.psi
    out = CFun(ctx, m)
    if not odd:
        g, _x = _parse_even_shalika(ctx, s, m)
        for i in range(out.size):
            y = out.point_at(i)
            out.values[i] = phi(mg.vec_mat(ctx, y, g))
        return out
    g, x, y, z = _parse_odd_shalika(ctx, s, m)
    ginv = mg.mat_inv(ctx, g)
    zg = mg.vec_mat(ctx, z, ginv)
    # tr((X - Y Z g^{-1}) g^{-1}) = tr(X g^{-1}) - (Z g^{-1}) . Y
    tr_a = mg.mat_trace(ctx, mg.mat_mul(ctx, x, ginv))
    dot = 0
    for zc, yc in zip(zg, y):
        dot = ctx.add(dot, ctx.mul(zc, yc))
    front = psi(ctx.neg(ctx.sub(tr_a, dot)))
    for i in range(out.size):
        pt = out.point_at(i)
        mod = 0
        for pc, yc in zip(pt, y):
            mod = ctx.add(mod, ctx.mul(pc, yc))
        shifted = tuple(ctx.add(pc, zc) for pc, zc in zip(pt, zg))
        out.values[i] = front * psi(mod) * phi(mg.vec_mat(ctx, shifted, g))
    return out


# -- canonical test vectors ----------------------------------------------------

def canonical_pair(table: BesselTable):
    """The (W, phi) with JS(W, phi) = 1: the sigma^{-1}-translate of the
    Bessel function at full normalizing scale, against a delta function."""
    ctx = table.ctx
    n, m, odd = _split(table)
    sig_inv = mg.mat_inv(ctx, mg.sigma_perm(n))
    w = WhittakerFun.translate(table, sig_inv, scale=float(_norm_const(ctx, n)))
    if odd:
        phi = CFun.delta(ctx, m, (0,) * m)
    else:
        eps = (0,) * (m - 1) + (1,)
        phi = CFun.delta(ctx, m, eps)
    return w, phi


def _delta_points(table: BesselTable):
    ctx = table.ctx
    m = table.n // 2
    probe = CFun(ctx, m)
    return [probe.point_at(i) for i in range(probe.size)]


def functional_equation_scan(table: BesselTable, trials: int = 100,
                             seed: int = DEFAULT_SEED):
    """gamma from the canonical pair plus a constancy verification of
    dual_js = gamma * js over random or exhaustive (W, phi) pairs.

    Returns (gamma, max_residual, pairs_checked)."""
    ctx = table.ctx
    n, m, odd = _split(table)
    w0, phi0 = canonical_pair(table)
    base = js(table, w0, phi0)
    if abs(base - 1.0) > 1e-8:
        raise OracleFailed("canonical_js", f"JS(W0, phi0) = {base}")
    gamma = dual_js(table, w0, phi0)
    points = _delta_points(table)
    total_pairs = mg.gl_order(ctx.q, n) * len(points)
    worst = 0.0
    checked = 0
    if total_pairs <= EXHAUSTIVE_PAIR_CAP:
        for h in mg.all_gl(ctx, n):
            w = WhittakerFun.translate(table, h)
            js_vec, dual_vec = js_profiles(table, w)
            for a, b in zip(js_vec, dual_vec):
                worst = max(worst, abs(b - gamma * a))
                checked += 1
    else:
        pool = _fe_pool(ctx, n, seed, trials)
        for js_vec, dual_vec in _pool_profiles(table, pool):
            for a, b in zip(js_vec, dual_vec):
                worst = max(worst, abs(b - gamma * a))
                checked += 1
    if worst > 1e-8:
        raise NonConstantRatio(f"functional equation residual {worst}")
    return gamma, worst, checked


# -- the three gamma routes ----------------------------------------------------

def _require_no_shalika(table: BesselTable):
    n, m, odd = _split(table)
    if not odd and restriction_is_trivial(table.rep.theta, m):
        raise ShalikaVectorPresent(
            "theta restricted to the half-level is trivial: use the level-zero"
            " modified functional equation")


def gamma_ratio(table: BesselTable, trials: int = 100,
                seed: int = DEFAULT_SEED) -> GammaResult:
    """Route 1: the functional-equation ratio on the canonical pair, with a
    constancy certificate over further pairs."""
    _require_no_shalika(table)
    gamma, worst, checked = functional_equation_scan(table, trials, seed)
    _unitarity_guard(gamma, "ratio")
    return GammaResult(gamma, "ratio",
                       {"max_residual": worst, "pairs_checked": checked})


def gamma_torus(table: BesselTable) -> GammaResult:
    """Route 2: the Bessel sum over antidiagonal block tori."""
    _require_no_shalika(table)
    ctx = table.ctx
    n, m, odd = _split(table)
    q = ctx.q
    units = ctx.subfield_units(1)
    total = 0j
    for comp in mg.compositions(m):
        weight = q ** (-sum(2 * (mi * (mi - 1) // 2) for mi in comp))

        def lam_loop(i, acc):
            nonlocal total
            if i == len(comp):
                t = mg.antidiag_elem(ctx, comp, tuple(acc), block_scale=2,
                                     tail_one=odd)
                val = table.eval(mg.mat_inv(ctx, t))
                if not odd and comp[-1] == 1:
                    val *= table.psi(acc[-1])
                total += weight * val
                return
            for lam in units:
                acc.append(lam)
                lam_loop(i + 1, acc)
                acc.pop()

        lam_loop(0, [])
    exp2 = 2 * (m * (m - 1) // 2)
    front = q ** (m / 2.0 + exp2) if odd else q ** (-m / 2.0 + exp2)
    gamma = front * total
    _unitarity_guard(gamma, "torus")
    return GammaResult(gamma, "torus", {})


def gamma_closed(table: BesselTable) -> GammaResult:
    """Route 3: the printed character-sum forms for n = 2, 3, 4."""
    ctx = table.ctx
    rep = table.rep
    psi = table.psi
    n = table.n
    q = ctx.q
    if n == 2:
        if rep.central_char.is_trivial():
            raise PreconditionViolated("n = 2 closed form needs a non-trivial"
                                       " central character")
        gamma = q ** -0.5 * gauss_sum(rep.central_char, psi)
    elif n == 3:
        total = 0j
        for xi in ctx.subfield_units(3):
            xi2 = ctx.mul(xi, xi)
            arg = ctx.neg(ctx.mul(ctx.trace(xi2, 3, 1),
                                  ctx.inv(ctx.norm(xi, 3, 1))))
            total += psi(arg) * rep.theta(xi2)
        gamma = q ** -1.5 * total
    elif n == 4:
        if restriction_is_trivial(rep.theta, 2):
            raise PreconditionViolated("n = 4 closed form needs theta"
                                       " non-trivial on the quadratic subfield")
        from .charkit import kloosterman
        t0 = q * q - 1 if rep.central_char.is_trivial() else 0
        g_sum = gauss_sum(rep.central_char, psi)
        # sum_b psi(-b + c/b) = K_psi(1, -c) with c = (a1 + a3 lam)/lam^2
        # at lam = +-N(xi), so the kernel is Tr(1/xi^2) +- Tr(xi^2)/N(xi)
        s_plus = 0j
        s_minus = 0j
        for xi in ctx.subfield_units(4):
            xi2 = ctx.mul(xi, xi)
            nx = ctx.norm(xi, 4, 1)
            base = ctx.trace(ctx.inv(xi2), 4, 1)
            wing = ctx.mul(ctx.trace(xi2, 4, 1), ctx.inv(nx))
            tv = rep.theta(xi2)
            s_plus += tv * kloosterman(1, ctx.add(base, wing), psi)
            s_minus += tv * kloosterman(1, ctx.sub(base, wing), psi)
        gamma = t0 / q ** 2 - 0.5 * q ** -3 * g_sum * (s_plus + s_minus)
    else:
        raise UnsupportedN(f"no closed form for n = {n}")
    _unitarity_guard(gamma, "closed_form")
    return GammaResult(gamma, "closed_form", {})


def _unitarity_guard(gamma: complex, route: str):
    if abs(abs(gamma) - 1.0) > 1e-6:
        raise OracleFailed("unitarity", f"|gamma| = {abs(gamma)} on route {route}")


def s0_s1_decomposition(table: BesselTable):
    """The S0/S1 split of the even torus sum: S0 collects compositions whose
    first block exceeds 1, S1 the Gauss-sum companion; reassembly recovers
    gamma."""
    _require_no_shalika(table)
    ctx = table.ctx
    n, m, odd = _split(table)
    if odd:
        raise PreconditionViolated("S0/S1 split applies to even n")
    q = ctx.q
    units = ctx.subfield_units(1)
    s0 = 0j
    for comp in mg.compositions(m):
        if comp[0] <= 1:
            continue
        weight = q ** (-sum(2 * (mi * (mi - 1) // 2) for mi in comp))

        def loop0(i, acc):
            nonlocal s0
            if i == len(comp):
                t = mg.antidiag_elem(ctx, comp, tuple(acc), block_scale=2)
                s0 += weight * table.eval(t)
                return
            for lam in units:
                acc.append(lam)
                loop0(i + 1, acc)
                acc.pop()

        loop0(0, [])
    s1 = 0j
    for comp in mg.compositions(m - 1):
        weight = q ** (-sum(2 * (mi * (mi - 1) // 2) for mi in comp))

        def loop1(i, acc):
            nonlocal s1
            if i == len(comp):
                t = mg.antidiag_elem(ctx, (1,) + comp, (1,) + tuple(acc),
                                     block_scale=2)
                s1 += weight * table.eval(t)
                return
            for lam in units:
                acc.append(lam)
                loop1(i + 1, acc)
                acc.pop()

        if comp:
            loop1(0, [])
        else:
            t = mg.antidiag_elem(ctx, (1,), (1,), block_scale=2)
            s1 += weight * table.eval(t)
    gsum = gauss_sum(table.rep.central_char, table.psi)
    exp2 = 2 * (m * (m - 1) // 2)
    gamma = q ** (-m / 2.0 + exp2) * (s0 + s1 * gsum)
    return s0, s1, gamma


# -- Shalika vectors -------------------------------------------------------------

def shalika_witness(table: BesselTable) -> WhittakerFun:
    """The candidate Shalika Whittaker function built from mirabolic cosets."""
    ctx = table.ctx
    n, m, odd = _split(table)
    if odd:
        raise PreconditionViolated("Shalika vectors live at even n")
    sig_inv = mg.mat_inv(ctx, mg.sigma_perm(n))
    psi = table.psi
    terms = []
    for g in mg.mirabolic_coset_reps(ctx, m):
        dg = mg.shalika_diag(g)
        for x in mg.lower_nilpotent_reps(ctx, m):
            h = mg.mat_chain(ctx, mg.shalika_u(m, x), dg, sig_inv)
            terms.append((psi(ctx.neg(mg.mat_trace(ctx, x))), h))
    return WhittakerFun(table, terms)


def shalika_detect(table: BesselTable, samples: int = 1000,
                   seed: int = DEFAULT_SEED):
    """Divisibility criterion (q^m - 1) | k, cross-checked against the
    JS(., 1)-nonvanishing search.  Returns (flag, report)."""
    ctx = table.ctx
    n, m, odd = _split(table)
    if odd:
        raise PreconditionViolated("Shalika vectors live at even n")
    flag = restriction_is_trivial(table.rep.theta, m)
    one = CFun.constant(ctx, m, 1.0)
    report = {"criterion": flag}
    if flag:
        w = shalika_witness(table)
        val = js(table, w, one)
        at_sigma = w(mg.sigma_perm(n))
        report["witness_js"] = val
        report["witness_at_sigma"] = at_sigma
        if abs(val - at_sigma) > 1e-8 or abs(val) < 1e-8:
            raise OracleFailed("shalika_witness", f"JS(W,1) = {val}, "
                                                  f"W(sigma) = {at_sigma}")
    else:
        worst = 0.0
        norm = _norm_const(ctx, n)
        if mg.gl_order(ctx.q, n) <= 1000:
            for h in mg.all_gl(ctx, n):
                val = js(table, WhittakerFun.translate(table, h), one)
                worst = max(worst, abs(val))
        else:
            psi = table.psi
            entries = table.entries
            for rows in _js_one_pool(ctx, n, seed, samples):
                val = sum(psi(s) * entries[key] for key, s in rows) / norm
                worst = max(worst, abs(val))
        report["max_js_one"] = worst
        if worst > 1e-8:
            raise OracleFailed("shalika_zero_search",
                               f"JS(W,1) = {worst} without the criterion")
    return flag, report


def broken_equation_witness(table: BesselTable):
    """In the Shalika case: a pair with js = 1 but dual_js = 0 (the
    functional equation cannot hold)."""
    ctx = table.ctx
    n, m, _ = _split(table)
    w = shalika_witness(table)
    one = CFun.constant(ctx, m, 1.0)
    return js(table, w, one), dual_js(table, w, one)


# -- appendix multiplicity bounds -------------------------------------------------

def homdim_check(rep: CuspidalRep, tol: float = 1e-6) -> int:
    """dim Hom_H(pi, 1) = |H|^{-1} sum_{h in H} chi(h) for the appendix
    subgroup H of matching parity; must come out 0 or 1."""
    ctx = rep.ctx
    n = rep.n
    m = n // 2
    total = 0j
    count = 0
    if n % 2 == 0:
        gl = mg.all_gl(ctx, m)
        e_last = tuple(1 if j == m - 1 else 0 for j in range(m))
        mira = [g for g in gl if g[m - 1] == e_last] if m > 1 else [mg.identity(1)]
        for g1 in gl:
            for g2 in mira:
                h = mg.from_blocks([[g1, mg.zero(m)], [mg.zero(m), g2]])
                total += rep.character(h)
                count += 1
    else:
        elems = ctx.subfield_elements(1)
        gl = mg.all_gl(ctx, m)
        import itertools as it
        for g1 in gl:
            for g2 in gl:
                for u in it.product(elems, repeat=m):
                    rows = [list(r) for r in mg.identity(n)]
                    for i in range(m):
                        for j in range(m):
                            rows[i][j] = g1[i][j]
                            rows[m + i][m + j] = g2[i][j]
                        rows[i][2 * m] = u[i]
                    total += rep.character(tuple(tuple(r) for r in rows))
                    count += 1
    value = total / count
    nearest = round(value.real)
    if abs(value - nearest) > tol or nearest not in (0, 1):
        raise DimensionBoundViolated(f"dim Hom = {value}")
    return int(nearest)
