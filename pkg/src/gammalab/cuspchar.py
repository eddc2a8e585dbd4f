"""Irreducible cuspidal characters of GL_n(F_q).

A regular character theta of F_{q^n}^x determines an irreducible cuspidal
representation; its character is evaluated through the classical formula on
primary conjugacy classes (charpoly = f^c with f irreducible):

    chi(g) = (-1)^(n-1) * prod_{i=1}^{k-1} (1 - q^(d i)) * sum_{i<d} theta(alpha^(q^i))

with d = deg f, alpha a root of f and k the number of f-blocks; chi vanishes
off primary classes.  The formula is never trusted blindly: verify_irreducible
checks the norm <chi, chi> = 1, the degree, and unitarity on every
representation before gamma factors are computed from it.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .charkit import MultChar, is_regular
from .errors import NotRegular, OracleFailed
from .ffield import FieldCtx
from . import matgrp as mg


@lru_cache(maxsize=None)
def _class_data(ctx: FieldCtx, g: mg.Mat):
    """Conjugacy data needed by the character: None if not primary, else
    (d, k, alpha)."""
    ct = mg.class_type(ctx, g)
    if not ct.primary:
        return None
    return (ct.d, ct.k, ct.alpha)


def partitions(c: int):
    """Partitions of c as descending tuples, deterministic order."""
    if c == 0:
        return [()]
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, maxpart), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(c, c, [])
    return out


def centralizer_order(lam: tuple, t: int) -> int:
    """Order of the centralizer of a primary element of Jordan type `lam`
    over a field with t elements (t = q^d)."""
    conj = []
    i = 1
    while True:
        cnt = sum(1 for part in lam if part >= i)
        if cnt == 0:
            break
        conj.append(cnt)
        i += 1
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    exponent = sum(x * x for x in conj) - sum(m * (m + 1) // 2 for m in mult.values())
    out = t ** exponent
    for m in mult.values():
        for j in range(1, m + 1):
            out *= t ** j - 1
    return out


@lru_cache(maxsize=None)
def primary_class_inventory(ctx: FieldCtx, n: int) -> tuple:
    """All primary conjugacy classes of GL_n(F_q): entries
    (d, alpha, k, class_size) with one alpha per Galois orbit of degree d."""
    q = ctx.q
    out = []
    for d in range(1, n + 1):
        if n % d:
            continue
        c = n // d
        # degree-d elements of the subfield tower, one per Frobenius orbit
        seen = set()
        alphas = []
        for xi in ctx.subfield_units(d):
            if xi in seen:
                continue
            orbit = set()
            acc = xi
            for _ in range(d):
                orbit.add(acc)
                acc = ctx.pow(acc, q)
            if len(orbit) == d:
                alphas.append(min(orbit, key=ctx.dlog))
            seen |= orbit
        order = mg.gl_order(q, n)
        for alpha in alphas:
            for lam in partitions(c):
                size = order // centralizer_order(lam, q ** d)
                out.append((d, alpha, len(lam), size, lam))
    return tuple(out)


class CuspidalRep:
    """The pair (n, theta) with theta a regular character of F_{q^n}^x."""

    def __init__(self, ctx: FieldCtx, exponent: int):
        self.ctx = ctx
        self.n = ctx.n
        self.q = ctx.q
        self.theta = MultChar(ctx, self.n, exponent)
        if not is_regular(self.theta, self.n):
            raise NotRegular(f"exponent {exponent} is not regular for n={self.n}")
        self.exponent = self.theta.exponent
        self.central_char = MultChar(ctx, 1, self.exponent)
        self._class_cache = {}

    def contragredient(self) -> "CuspidalRep":
        return CuspidalRep(self.ctx, -self.exponent)

    def dimension(self) -> int:
        out = 1
        for i in range(1, self.n):
            out *= self.q ** i - 1
        return out

    def galois_orbit(self) -> tuple:
        return self.theta.galois_orbit()

    # -- character evaluation ------------------------------------------------

    def char_of_class(self, data) -> complex:
        """Character on the primary class (d, k, alpha); 0 for None."""
        if data is None:
            return 0j
        if data not in self._class_cache:
            d, k, alpha = data
            coef = 1
            for i in range(1, k):
                coef *= 1 - self.q ** (d * i)
            if self.n % 2 == 0:
                coef = -coef
            ssum = 0j
            acc = alpha
            for _ in range(d):
                ssum += self.theta(acc)
                acc = self.ctx.pow(acc, self.q)
            self._class_cache[data] = coef * ssum
        return self._class_cache[data]

    def character(self, g: mg.Mat) -> complex:
        return self.char_of_class(_class_data(self.ctx, g))

    def __repr__(self):
        return f"CuspidalRep(q={self.q}, n={self.n}, k={self.exponent})"


def cuspidal_character(rep: CuspidalRep, g: mg.Mat) -> complex:
    return rep.character(g)


def inner_product_with_self(rep: CuspidalRep) -> float:
    """<chi, chi> over GL_n(F_q), summed over primary classes with their
    class sizes (the character vanishes elsewhere)."""
    total = 0.0
    for d, alpha, k, size, _lam in primary_class_inventory(rep.ctx, rep.n):
        v = rep.char_of_class((d, k, alpha))
        total += size * (v.real * v.real + v.imag * v.imag)
    return total / mg.gl_order(rep.q, rep.n)


def verify_irreducible(rep: CuspidalRep, samples: int = 40, seed: int = 1729,
                       tol: float = 1e-6) -> dict:
    """Certify the character formula for this representation.

    Checks: (a) <chi, chi> = 1; (b) chi(1) equals the cuspidal dimension;
    (c) chi(g^{-1}) = conj(chi(g)); (d) chi is a class function.  Raises
    OracleFailed naming the first failing check.
    """
    report = {}
    ip = inner_product_with_self(rep)
    report["inner_product"] = ip
    if abs(ip - 1.0) > tol:
        raise OracleFailed("inner_product", f"<chi,chi> = {ip}")
    degree = rep.character(mg.identity(rep.n))
    report["degree"] = degree
    if abs(degree - rep.dimension()) > tol or abs(degree.imag) > tol:
        raise OracleFailed("degree", f"chi(1) = {degree} != {rep.dimension()}")
    rng = random.Random(seed)
    worst_inv = 0.0
    worst_conj = 0.0
    for _ in range(samples):
        g = mg.random_invertible(rep.ctx, rep.n, rng)
        h = mg.random_invertible(rep.ctx, rep.n, rng)
        worst_inv = max(worst_inv,
                        abs(rep.character(mg.mat_inv(rep.ctx, g))
                            - rep.character(g).conjugate()))
        conj = mg.mat_chain(rep.ctx, h, g, mg.mat_inv(rep.ctx, h))
        worst_conj = max(worst_conj, abs(rep.character(conj) - rep.character(g)))
    report["max_inverse_residual"] = worst_inv
    report["max_conjugation_residual"] = worst_conj
    if worst_inv > tol:
        raise OracleFailed("inverse_conjugate", f"residual {worst_inv}")
    if worst_conj > tol:
        raise OracleFailed("class_function", f"residual {worst_conj}")
    report["ok"] = True
    return report
