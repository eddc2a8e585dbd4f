"""Finite-field tower arithmetic.

One ambient field F_{p^(e*n)} is realized once; every subfield the rest of
the package needs (the base field F_q with q = p^e, and F_{q^d} for d | n)
lives inside it.  Elements are dense integer indices encoding coefficient
vectors over F_p in a fixed polynomial basis, so embedding between levels of
the tower is the identity on indices and there is never a coercion step.

The defining modulus is chosen deterministically (smallest coefficient
encoding among monic irreducibles whose root generates the multiplicative
group), so all derived data -- generators, discrete logs, character values --
are reproducible bit for bit.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DivideByZero, NotInSubfield, NotPrime, TooLarge, ZeroHasNoLog

ORDER_CAP = 2 ** 24
_TABLE_MAX = 4096  # full add/mul tables below this order


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _prime_factors(m: int) -> list:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# -- polynomial helpers over F_p (coefficient lists, ascending) --------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _ptrim(a)
    return a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_x(exp: int, f, p):
    """x^exp mod f by square and multiply."""
    result = [1]
    base = _pmod([0, 1], f, p)
    while exp:
        if exp & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        exp >>= 1
    return result


def _irreducible(f, p) -> bool:
    d = len(f) - 1
    xq = _ppow_x(p ** d, f, p)
    if _ptrim(list(xq)) != [0, 1]:
        return False
    for r in _prime_factors(d):
        g = _ppow_x(p ** (d // r), f, p)
        g = list(g) + [0, 0]
        g[1] = (g[1] - 1) % p
        if len(_pgcd(f, _ptrim(g), p)) - 1 != 0:
            return False
    return True


class FieldCtx:
    """A realized field F_{p^(e*n)} together with its subfield lattice.

    q = p^e is the base-field size; degrees d | n index the tower levels
    F_{q^d}.  `gen` generates the full multiplicative group; `dlog` is a
    precomputed table inverse to j -> gen^j.
    """

    def __init__(self, p: int, e: int, n: int):
        if not _is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if e < 1 or n < 1:
            raise TooLarge("degrees must be >= 1")
        if p ** (e * n) > ORDER_CAP:
            raise TooLarge(f"p^(e*n) = {p ** (e * n)} exceeds cap {ORDER_CAP}")
        self.p = p
        self.e = e
        self.n = n
        self.deg = e * n
        self.order = p ** self.deg
        self.q = p ** e
        self.modulus, self.gen = self._select_modulus()
        self._build_tables()

    # -- construction ---------------------------------------------------

    def _select_modulus(self):
        p, D, P = self.p, self.deg, self.order
        if D == 1:
            for low in range(p):
                root = (-low) % p
                if root and self._order_mod_p(root) == p - 1:
                    return (low, 1), root
            # p == 2: the unit element generates the trivial group
            return (1, 1), 1
        for low in range(P):
            coeffs = []
            v = low
            for _ in range(D):
                coeffs.append(v % p)
                v //= p
            f = coeffs + [1]
            if not _irreducible(f, p):
                continue
            if self._x_is_primitive(f):
                return tuple(f), p  # gen = class of x, index p
        raise TooLarge("no primitive irreducible modulus found")  # pragma: no cover

    def _order_mod_p(self, a: int) -> int:
        o, v = 1, a % self.p
        while v != 1:
            v = (v * a) % self.p
            o += 1
        return o

    def _x_is_primitive(self, f) -> bool:
        m = self.order - 1
        for r in _prime_factors(m):
            if _ptrim(list(_ppow_x(m // r, f, self.p))) == [1]:
                return False
        return True

    def _build_tables(self):
        p, D, P = self.p, self.deg, self.order
        # index <-> coefficient vector: digits of the index base p, ascending
        self._dlog = [-1] * P
        self._exp = [1] * max(P - 1, 1)
        g = self.gen
        acc = 1
        for j in range(P - 1):
            self._exp[j] = acc
            if self._dlog[acc] == -1:
                self._dlog[acc] = j
            acc = self._mul_raw(acc, g)
        if acc != 1:
            raise TooLarge("generator does not have full order")  # pragma: no cover
        self._small = P <= _TABLE_MAX
        if self._small:
            self._add_t = [[self._add_raw(a, b) for b in range(P)] for a in range(P)]
            self._mul_t = [[self._mul_raw(a, b) for b in range(P)] for a in range(P)]
        self._subfield_cache = {}

    # -- raw index arithmetic --------------------------------------------

    def _add_raw(self, a: int, b: int) -> int:
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _mul_raw(self, a: int, b: int) -> int:
        p = self.p
        if a == 0 or b == 0:
            return 0
        av = []
        while a:
            av.append(a % p)
            a //= p
        bv = []
        while b:
            bv.append(b % p)
            b //= p
        prod = _pmod(_pmul(av, bv, p), list(self.modulus), p)
        out, mult = 0, 1
        for c in prod:
            out += c * mult
            mult *= p
        return out

    # -- public operations ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._small:
            return self._add_t[a][b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        p = self.p
        out, mult = 0, 1
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._small:
            return self._mul_t[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivideByZero("0 has no inverse")
        m = self.order - 1
        return self._exp[(m - self._dlog[a]) % m] if m else 1

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivideByZero("0 has no inverse")
            return 0 if k else 1
        m = self.order - 1
        if m == 0:
            return 1
        return self._exp[(self._dlog[a] * k) % m]

    def frobenius(self, a: int) -> int:
        """a -> a^q, the generator of Gal over the base field."""
        return self.pow(a, self.q)

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroHasNoLog("dlog(0) undefined")
        return self._dlog[a]

    def gen_power(self, j: int) -> int:
        m = self.order - 1
        return self._exp[j % m] if m else 1

    # -- the subfield lattice ----------------------------------------------

    def subfield_order(self, d: int) -> int:
        return self.q ** d

    def in_subfield(self, a: int, d: int) -> bool:
        """Membership in F_{q^d}, recognized via a^(q^d) = a."""
        if a == 0:
            return True
        step = (self.order - 1) // (self.q ** d - 1)
        if (self.order - 1) % (self.q ** d - 1):
            return False
        return self._dlog[a] % step == 0

    def subfield_elements(self, d: int) -> tuple:
        """All elements of F_{q^d}, ascending by index (0 first)."""
        if d not in self._subfield_cache:
            if self.n % d:
                raise NotInSubfield(f"degree {d} does not divide {self.n}")
            step = (self.order - 1) // (self.q ** d - 1)
            elems = sorted(
                [0] + [self._exp[j] for j in range(0, self.order - 1, step)]
            )
            self._subfield_cache[d] = tuple(elems)
        return self._subfield_cache[d]

    def subfield_gen(self, d: int) -> int:
        """Canonical generator of F_{q^d}^x: gen^((order-1)/(q^d-1))."""
        return self.gen_power((self.order - 1) // (self.q ** d - 1))

    def subfield_dlog(self, a: int, d: int) -> int:
        """Exponent j with subfield_gen(d)^j = a, for a in F_{q^d}^x."""
        if a == 0:
            raise ZeroHasNoLog("dlog(0) undefined")
        step = (self.order - 1) // (self.q ** d - 1)
        j = self._dlog[a]
        if j % step:
            raise NotInSubfield(f"element {a} not in subfield of degree {d}")
        return j // step

    def subfield_units(self, d: int) -> tuple:
        return tuple(x for x in self.subfield_elements(d) if x)

    def embed(self, a: int, d_from: int, d_to: int) -> int:
        """Inclusion F_{q^d_from} -> F_{q^d_to}; identity on indices."""
        if d_to % d_from:
            raise NotInSubfield(f"{d_from} does not divide {d_to}")
        if not self.in_subfield(a, d_from):
            raise NotInSubfield(f"element {a} not in subfield of degree {d_from}")
        return a

    def norm(self, xi: int, d_from: int, d_to: int) -> int:
        """N_{F_{q^d_from}/F_{q^d_to}}(xi), a product over Galois conjugates."""
        self._check_tower(xi, d_from, d_to)
        out = 1
        acc = xi
        for _ in range(d_from // d_to):
            out = self.mul(out, acc)
            acc = self.pow(acc, self.q ** d_to)
        return out

    def trace(self, xi: int, d_from: int, d_to: int) -> int:
        """Tr_{F_{q^d_from}/F_{q^d_to}}(xi), a sum over Galois conjugates."""
        self._check_tower(xi, d_from, d_to)
        out = 0
        acc = xi
        for _ in range(d_from // d_to):
            out = self.add(out, acc)
            acc = self.pow(acc, self.q ** d_to)
        return out

    def _check_tower(self, xi, d_from, d_to):
        if d_from % d_to or self.n % d_from:
            raise NotInSubfield(f"need d_to | d_from | n, got {d_to}, {d_from}, {self.n}")
        if not self.in_subfield(xi, d_from):
            raise NotInSubfield(f"element {xi} not in subfield of degree {d_from}")

    # -- misc ---------------------------------------------------------------

    def lift_prime(self, a: int) -> int:
        """Integer in [0, p) representing an element of the prime field."""
        if a >= self.p:
            raise NotInSubfield(f"element {a} not in the prime field")
        return a

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, n={self.n})"


@lru_cache(maxsize=None)
def build_field(p: int, e: int, n: int) -> FieldCtx:
    """Construct (and cache) the ambient field F_{p^(e*n)} with q = p^e."""
    return FieldCtx(p, e, n)
