"""Exact arithmetic foundations: rationals, prime fields and their extensions.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Finite fields are described by an immutable :class:`FieldCtx`;
elements are :class:`FqElem` values in the polynomial basis of the context's
modulus.  Every element also has an integer *code* ``sum(c_i * l**i)`` used by
the vectorised kernels in :class:`VecField`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional

import numpy as np

from .errors import BadReduction, CompositeModulus, UnsupportedField

Rational = Fraction

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --- dense polynomials over F_p as lists of ints, low degree first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Ben-Or style test: gcd(f, x^(p^i) - x) == 1 for i <= deg/2."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    h = [0, 1]
    for _ in range(n // 2):
        h = _ppowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


# --- fields ----------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    characteristic: int
    degree: int = 1
    modulus: Optional[tuple[int, ...]] = None  # monic, low degree first

    @property
    def order(self) -> int:
        return self.characteristic ** self.degree

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"GF({self.characteristic})"
        return f"GF({self.characteristic}^{self.degree})"

    def __call__(self, value) -> "FqElem":
        return self.coerce(value)

    def coerce(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.ctx != self:
                raise TypeError(f"element of {value.ctx} used in {self}")
            return value
        if isinstance(value, Fraction):
            return reduce_rational(value, self)
        if isinstance(value, int):
            return FqElem(self, (value % self.characteristic,) + (0,) * (self.degree - 1))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def element(self, code: int) -> "FqElem":
        p = self.characteristic
        coords = []
        for _ in range(self.degree):
            code, r = divmod(code, p)
            coords.append(r)
        return FqElem(self, tuple(coords))

    def elements(self) -> Iterator["FqElem"]:
        for code in range(self.order):
            yield self.element(code)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, (0,) * self.degree)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, (1,) + (0,) * (self.degree - 1))

    @property
    def generator(self) -> "FqElem":
        """The class of x in F_l[x]/(modulus) (the residue 1 for prime fields)."""
        if self.degree == 1:
            return self.one
        return FqElem(self, (0, 1) + (0,) * (self.degree - 2))


class FqElem:
    """Immutable element of a finite field, stored as polynomial-basis residues."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords: tuple[int, ...]):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FqElem is immutable")

    @property
    def code(self) -> int:
        p = self.ctx.characteristic
        c = 0
        for r in reversed(self.coords):
            c = c * p + r
        return c

    def _other(self, other) -> Optional["FqElem"]:
        if isinstance(other, FqElem):
            if other.ctx != self.ctx:
                raise TypeError(f"mixing {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.coerce(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        p = self.ctx.characteristic
        return FqElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.characteristic
        return FqElem(self.ctx, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        p = ctx.characteristic
        if ctx.degree == 1:
            return FqElem(ctx, (self.coords[0] * o.coords[0] % p,))
        prod = _pmod(_pmul(list(self.coords), list(o.coords), p), list(ctx.modulus), p)
        return FqElem(ctx, tuple(prod) + (0,) * (ctx.degree - len(prod)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in finite field")
        ctx = self.ctx
        if ctx.degree == 1:
            return FqElem(ctx, (pow(self.coords[0], -1, ctx.characteristic),))
        return self ** (ctx.order - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.ctx == other.ctx and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.ctx.coerce(other)
            except BadReduction:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.coords))

    def __int__(self):
        if self.ctx.degree != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.coords[0]

    def __repr__(self):
        if self.ctx.degree == 1:
            return str(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return "+".join(reversed(terms)) or "0"

    __str__ = __repr__


@lru_cache(maxsize=None)
def make_prime_field(l: int) -> FieldCtx:
    if l < 2 or not is_prime(l):
        raise CompositeModulus(f"{l} is not prime")
    return FieldCtx(l, 1, None)


@lru_cache(maxsize=None)
def make_ext_field(l: int, k: int) -> FieldCtx:
    """F_{l^k} with the first monic irreducible modulus in code order.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are scanned in increasing
    order of the integer sum(c_i * l**i), so x^3 + x + 1 precedes
    x^3 + x^2 + 1 over F_2.
    """
    if l < 2 or not is_prime(l):
        raise CompositeModulus(f"{l} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if k == 1:
        return make_prime_field(l)
    for code in range(l ** k):
        coeffs = []
        c = code
        for _ in range(k):
            c, r = divmod(c, l)
            coeffs.append(r)
        f = coeffs + [1]
        if is_irreducible_mod_p(f, l):
            return FieldCtx(l, k, tuple(f))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def reduce_rational(r, ctx: FieldCtx) -> FqElem:
    r = Fraction(r)
    p = ctx.characteristic
    if r.denominator % p == 0:
        raise BadReduction(f"{p} divides the denominator of {r}")
    v = r.numerator * pow(r.denominator, -1, p) % p
    return FqElem(ctx, (v,) + (0,) * (ctx.degree - 1))


def quadratic_character(a: FqElem) -> int:
    ctx = a.ctx
    if ctx.degree != 1 or ctx.characteristic == 2:
        raise UnsupportedField("quadratic character needs an odd prime field")
    p = ctx.characteristic
    v = pow(a.coords[0], (p - 1) // 2, p)
    return -1 if v == p - 1 else v


def sqrt_mod_p(a: int, p: int) -> Optional[int]:
    """Least nonnegative square root of a mod p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


# --- vectorised arithmetic on element codes --------------------------------

class VecField:
    """Numpy kernels over element codes of one field.

    Prime fields use plain modular arithmetic.  Extension fields use Zech-style
    log/antilog tables for products and digit-wise addition, so memory stays
    linear in the field order.
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.p = ctx.characteristic
        self.q = ctx.order
        self.prime = ctx.degree == 1
        if not self.prime:
            self._build_tables()

    def _build_tables(self):
        q, p, k = self.q, self.p, self.ctx.degree
        ctx = self.ctx
        pw = [p ** i for i in range(k)]
        self._pw = np.array(pw, dtype=np.int64)
        order = q - 1
        for g0 in range(2, q):
            g_elem = ctx.element(g0)
            powers = [1]
            cur = g_elem
            while not cur == ctx.one:
                powers.append(cur.code)
                cur = cur * g_elem
            if len(powers) == order:
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise AssertionError("no primitive element")
        exp = np.array(powers, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        self._exp = np.concatenate([exp, exp])
        self._log = log

    def asarray(self, codes) -> np.ndarray:
        return np.asarray(codes, dtype=np.int64)

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._pw:
            out += ((a // w + b // w) % self.p) * w
        return out

    def neg(self, a):
        if self.prime:
            return (-a) % self.p
        out = np.zeros(np.shape(a), dtype=np.int64)
        for w in self._pw:
            out += ((-(a // w)) % self.p) * w
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        la, lb = self._log[a], self._log[b]
        out = self._exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def power(self, a, e: int):
        if e == 0:
            return np.ones(np.shape(a), dtype=np.int64)
        if self.prime:
            out = np.ones(np.shape(a), dtype=np.int64)
            base = a % self.p
            while e:
                if e & 1:
                    out = out * base % self.p
                base = base * base % self.p
                e >>= 1
            return out
        la = self._log[a]
        out = self._exp[(la * e) % (self.q - 1)]
        return np.where(la < 0, 0, out)

    def inv(self, a):
        if self.prime:
            return self.power(a, self.p - 2)
        la = self._log[a]
        return np.where(la < 0, 0, self._exp[(-la) % (self.q - 1)])

    def is_square(self, a):
        """Boolean mask of nonzero squares."""
        if self.prime:
            return (a != 0) & (self.power(a, (self.p - 1) // 2) == 1)
        la = self._log[a]
        return (la >= 0) & (la % 2 == 0)

    def elem_codes(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)


@lru_cache(maxsize=32)
def vec_field(ctx: FieldCtx) -> VecField:
    return VecField(ctx)


def all_residue_tuples(ctx: FieldCtx, n: int) -> Iterator[tuple[FqElem, ...]]:
    elems = list(ctx.elements())
    return product(elems, repeat=n)
