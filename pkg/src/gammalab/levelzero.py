"""Level-zero local factors as rational functions in X = q^(-s).

The p-adic side enters only through finite-sum identities: lifted
Jacquet-Shalika values are either constants or pick up an L-factor
correction governed by js(W, 1), and the local L, epsilon, gamma attached
to a cuspidal representation and a unit c = omega(uniformizer) are exact
elements of C(X).  RatQS is the value domain: a Laurent-capable rational
function with complex coefficients, compared by cross-multiplication.
"""

from __future__ import annotations

import numpy as np

from .bessel import BesselTable
from .charkit import CFun, fourier, restriction_is_trivial
from .errors import NonConstantRatio, OracleFailed, PreconditionViolated
from . import exjs
from . import matgrp as mg

COEFF_TOL = 1e-9


def _trim(arr):
    a = np.asarray(arr, dtype=complex).ravel()
    nz = np.nonzero(np.abs(a) > 1e-13)[0]
    if len(nz) == 0:
        return np.zeros(0, dtype=complex), 0
    lead = nz[0]
    return a[lead:nz[-1] + 1].copy(), int(lead)


class RatQS:
    """X^x_shift * num(X) / den(X) with num, den ordinary polynomials
    (ascending coefficients, nonzero constant terms after normalization)."""

    def __init__(self, num, den=(1.0,), x_shift: int = 0):
        n, a = _trim(num)
        d, b = _trim(den)
        if len(d) == 0:
            raise ZeroDivisionError("RatQS with zero denominator")
        if len(n) == 0:
            self.num = np.zeros(0, dtype=complex)
            self.den = np.ones(1, dtype=complex)
            self.x_shift = 0
            return
        scale = d[0]
        self.num = n / scale
        self.den = d / scale
        self.x_shift = x_shift + a - b

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, z) -> "RatQS":
        return cls([z])

    @classmethod
    def one(cls) -> "RatQS":
        return cls([1.0])

    @classmethod
    def zero(cls) -> "RatQS":
        return cls([])

    @classmethod
    def x_power(cls, k: int) -> "RatQS":
        return cls([1.0], [1.0], k)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return len(self.num) == 0

    def is_constant(self) -> bool:
        return self.is_zero() or (self.x_shift == 0 and len(self.num) == 1
                                  and len(self.den) == 1)

    def constant_value(self) -> complex:
        if self.is_zero():
            return 0j
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return complex(self.num[0] / self.den[0])

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RatQS") -> "RatQS":
        if self.is_zero():
            return RatQS(other.num, other.den, other.x_shift)
        if other.is_zero():
            return RatQS(self.num, self.den, self.x_shift)
        s = min(self.x_shift, other.x_shift)
        p1 = np.convolve(self.num, other.den)
        p2 = np.convolve(other.num, self.den)
        p1 = np.concatenate([np.zeros(self.x_shift - s, dtype=complex), p1])
        p2 = np.concatenate([np.zeros(other.x_shift - s, dtype=complex), p2])
        size = max(len(p1), len(p2))
        p1 = np.pad(p1, (0, size - len(p1)))
        p2 = np.pad(p2, (0, size - len(p2)))
        return RatQS(p1 + p2, np.convolve(self.den, other.den), s)

    def __neg__(self) -> "RatQS":
        return RatQS(-self.num, self.den, self.x_shift)

    def __sub__(self, other: "RatQS") -> "RatQS":
        return self + (-other)

    def __mul__(self, other: "RatQS") -> "RatQS":
        if self.is_zero() or other.is_zero():
            return RatQS.zero()
        return RatQS(np.convolve(self.num, other.num),
                     np.convolve(self.den, other.den),
                     self.x_shift + other.x_shift)

    def __truediv__(self, other: "RatQS") -> "RatQS":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        if self.is_zero():
            return RatQS.zero()
        return RatQS(np.convolve(self.num, other.den),
                     np.convolve(self.den, other.num),
                     self.x_shift - other.x_shift)

    def inverse(self) -> "RatQS":
        return RatQS.one() / self

    # -- comparison -------------------------------------------------------------

    def residual(self, other: "RatQS") -> float:
        """Max coefficient deviation of the cross-multiplied equality,
        normalized by the largest coefficient involved."""
        if self.is_zero() and other.is_zero():
            return 0.0
        s = min(self.x_shift, other.x_shift)
        p1 = np.concatenate([np.zeros(self.x_shift - s, dtype=complex),
                             np.convolve(self.num, other.den)]) \
            if not self.is_zero() else np.zeros(1, dtype=complex)
        p2 = np.concatenate([np.zeros(other.x_shift - s, dtype=complex),
                             np.convolve(other.num, self.den)]) \
            if not other.is_zero() else np.zeros(1, dtype=complex)
        size = max(len(p1), len(p2))
        p1 = np.pad(p1, (0, size - len(p1)))
        p2 = np.pad(p2, (0, size - len(p2)))
        scale = max(np.abs(p1).max(), np.abs(p2).max())
        if scale == 0:
            return 0.0
        return float(np.abs(p1 - p2).max() / scale)

    def equals(self, other: "RatQS", tol: float = COEFF_TOL) -> bool:
        return self.residual(other) <= tol

    def __eq__(self, other):
        return isinstance(other, RatQS) and self.equals(other)

    # -- evaluation and reduction ----------------------------------------------

    def evaluate(self, x: complex) -> complex:
        num = np.polyval(self.num[::-1], x) if len(self.num) else 0j
        den = np.polyval(self.den[::-1], x)
        return (x ** self.x_shift) * num / den

    def simplified(self) -> "RatQS":
        """Cancel shared num/den roots by deflation (display convenience;
        equality never relies on this)."""
        if self.is_zero():
            return RatQS.zero()

        def deflate(coeffs, r):
            desc = list(coeffs[::-1])
            out = [desc[0]]
            for c in desc[1:-1]:
                out.append(c + r * out[-1])
            return np.array(out[::-1], dtype=complex)

        num, den = self.num.copy(), self.den.copy()
        changed = True
        while changed and len(num) > 1 and len(den) > 1:
            changed = False
            for r in np.roots(den[::-1]):
                if abs(np.polyval(num[::-1], r)) < 1e-8 * max(1.0, np.abs(num).max()):
                    num = deflate(num, r)
                    den = deflate(den, r)
                    changed = True
                    break
        return RatQS(num, den, self.x_shift)

    # -- serialization ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "num": [[float(c.real), float(c.imag)] for c in self.num],
            "den": [[float(c.real), float(c.imag)] for c in self.den],
            "x_shift": self.x_shift,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RatQS":
        num = [complex(re, im) for re, im in data["num"]]
        den = [complex(re, im) for re, im in data["den"]]
        return cls(num, den, data["x_shift"])

    def __repr__(self):
        def fmt(arr):
            terms = []
            for i, c in enumerate(arr):
                if abs(c) < 1e-13:
                    continue
                terms.append(f"({c:.6g})*X^{i}")
            return " + ".join(terms) if terms else "0"
        shift = f"X^{self.x_shift} * " if self.x_shift else ""
        return f"RatQS({shift}[{fmt(self.num)}] / [{fmt(self.den)}])"


def l_factor(c: complex, m: int) -> RatQS:
    """L(ms, omega) = 1 / (1 - c X^m); the empty factor 1 when c = 0
    (ramified twist)."""
    if m < 1:
        raise PreconditionViolated("m must be >= 1")
    if c == 0:
        return RatQS.one()
    den = np.zeros(m + 1, dtype=complex)
    den[0] = 1.0
    den[m] = -c
    return RatQS([1.0], den)


class LevelZeroCtx:
    """A cuspidal representation of the residue field together with the unit
    c = omega(uniformizer) parameterizing the compatible central characters
    of its level-zero lift."""

    def __init__(self, table: BesselTable, c: complex = 1.0):
        if abs(abs(c) - 1.0) > 1e-9:
            raise PreconditionViolated("c must lie on the unit circle")
        self.table = table
        self.rep = table.rep
        self.c = complex(c)
        self.n = table.n
        self.m = self.n // 2
        self.q = table.ctx.q

    def has_shalika_vector(self) -> bool:
        return self.n % 2 == 0 and restriction_is_trivial(self.rep.theta, self.m)

    def _dual_l(self) -> RatQS:
        """L(m(1-s), omega^{-1}) = 1 / (1 - c^{-1} q^{-m} X^{-m})."""
        return (RatQS.one()
                - RatQS.const(self.q ** -self.m / self.c) * RatQS.x_power(-self.m)
                ).inverse()


def lifted_js(ctx: LevelZeroCtx, w, phi: CFun) -> RatQS:
    """The lifted Jacquet-Shalika value: a constant for odd n, and for even
    n the finite sum plus the L-factor correction weighted by js(W, 1)."""
    table = ctx.table
    base = exjs.js(table, w, phi)
    if ctx.n % 2:
        return RatQS.const(base)
    one = CFun.constant(table.ctx, ctx.m, 1.0)
    j1 = exjs.js(table, w, one)
    corr = (RatQS.x_power(ctx.m) * RatQS.const(ctx.c * phi.at_zero() * j1)
            * l_factor(ctx.c, ctx.m))
    return RatQS.const(base) + corr


def lifted_dual_js(ctx: LevelZeroCtx, w, phi: CFun) -> RatQS:
    table = ctx.table
    base = exjs.dual_js(table, w, phi)
    if ctx.n % 2:
        return RatQS.const(base)
    one = CFun.constant(table.ctx, ctx.m, 1.0)
    j1 = exjs.js(table, w, one)
    phat0 = fourier(phi, table.psi).at_zero()
    corr = (RatQS.x_power(-ctx.m)
            * RatQS.const(ctx.q ** -ctx.m / ctx.c * phat0 * j1)
            * ctx._dual_l())
    return RatQS.const(base) + corr


def local_L_eps(ctx: LevelZeroCtx):
    """(L, epsilon) of the level-zero lift: trivial L and a constant epsilon
    without a Shalika vector; otherwise L = 1/(1 - c X^m) and epsilon the
    Laurent monomial q^{-m/2} c^{-1} X^{-m}."""
    if not ctx.has_shalika_vector():
        gamma0 = exjs.gamma_torus(ctx.table).value
        return RatQS.one(), RatQS.const(gamma0)
    L = l_factor(ctx.c, ctx.m)
    eps = RatQS.const(ctx.q ** (-ctx.m / 2.0) / ctx.c) * RatQS.x_power(-ctx.m)
    return L, eps


def local_gamma(ctx: LevelZeroCtx) -> RatQS:
    """gamma = epsilon * L(m(1-s), dual) / L(ms); cross-checked against the
    ratio of lifted sums on the canonical pair."""
    L, eps = local_L_eps(ctx)
    dual_L = ctx._dual_l() if ctx.has_shalika_vector() else RatQS.one()
    gamma = eps * dual_L / L
    w0, phi0 = exjs.canonical_pair(ctx.table)
    num = lifted_dual_js(ctx, w0, phi0)
    denom = lifted_js(ctx, w0, phi0)
    ratio = num / denom
    if not gamma.equals(ratio, 1e-7):
        raise OracleFailed("local_gamma",
                           f"theorem value {gamma} vs lifted ratio {ratio}")
    return gamma


def modified_fe_check(table: BesselTable, trials: int = 100,
                      seed: int = exjs.DEFAULT_SEED):
    """The modified functional equation at the trivial-twist normalization:
    one rational function gamma~ covers every (W, phi) pair.  Returns
    (gamma~, max cross-multiplied residual)."""
    if table.n % 2:
        raise PreconditionViolated("modified functional equation is for even n")
    ctx = table.ctx
    m = table.n // 2
    q = ctx.q
    L_s = l_factor(1.0, m)
    L_dual = (RatQS.one()
              - RatQS.const(q ** -m) * RatQS.x_power(-m)).inverse()
    one = CFun.constant(ctx, m, 1.0)

    def lhs_rhs(w, phi):
        j1 = exjs.js(table, w, one)
        lhs = (RatQS.const(exjs.dual_js(table, w, phi))
               + RatQS.x_power(-m) * RatQS.const(q ** -m)
               * RatQS.const(fourier(phi, table.psi).at_zero() * j1) * L_dual)
        rhs = (RatQS.const(exjs.js(table, w, phi))
               + RatQS.x_power(m) * RatQS.const(phi.at_zero() * j1) * L_s)
        return lhs, rhs

    w0, phi0 = exjs.canonical_pair(table)
    lhs0, rhs0 = lhs_rhs(w0, phi0)
    gamma_t = lhs0 / rhs0
    points = exjs._delta_points(table)
    total_pairs = mg.gl_order(q, table.n) * len(points)
    worst = 0.0
    import random as _random
    if total_pairs <= exjs.EXHAUSTIVE_PAIR_CAP:
        cases = [(h, pt) for h in mg.all_gl(ctx, table.n) for pt in points]
    else:
        rng = _random.Random(seed)
        cases = [(mg.random_invertible(ctx, table.n, rng),
                  points[rng.randrange(len(points))]) for _ in range(trials)]
    for h, pt in cases:
        w = exjs.WhittakerFun.translate(table, h)
        phi = CFun.delta(ctx, m, pt)
        lhs, rhs = lhs_rhs(w, phi)
        worst = max(worst, lhs.residual(gamma_t * rhs))
    if worst > 1e-8:
        raise NonConstantRatio(f"modified functional equation residual {worst}")
    return gamma_t, worst


def shalika_functional_value(ctx: LevelZeroCtx, w) -> complex:
    """The twisted Shalika period of the lifted Whittaker function: its
    common value at every admissible s is js(W, 1)."""
    if ctx.n % 2:
        raise PreconditionViolated("Shalika periods live at even n")
    one = CFun.constant(ctx.table.ctx, ctx.m, 1.0)
    return exjs.js(ctx.table, w, one)


def l_factor_from_shalika_functionals(ctx: LevelZeroCtx) -> RatQS:
    """Reconstruct L as the product of (1 - alpha X)^{-1} over the m-th
    roots alpha of c at which the twisted Shalika period is nonzero.
    Nonvanishing is decided by evaluating the period on the mirabolic-coset
    witness function."""
    if ctx.n % 2:
        return RatQS.one()
    witness = exjs.shalika_witness(ctx.table)
    if abs(shalika_functional_value(ctx, witness)) <= 1e-9:
        return RatQS.one()
    import cmath
    base = cmath.exp(1j * cmath.phase(ctx.c) / ctx.m) * (abs(ctx.c) ** (1.0 / ctx.m))
    out = RatQS.one()
    for j in range(ctx.m):
        alpha = base * cmath.exp(2j * cmath.pi * j / ctx.m)
        out = out * RatQS([1.0], [1.0, -alpha])
    return out
