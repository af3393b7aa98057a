"""Polynomial algebra over exact coefficient domains.

:class:`MPoly` is a sparse multivariate polynomial (exponent tuple -> nonzero
coefficient).  :class:`UPoly` is a dense univariate polynomial, low degree
first.  Coefficients may be ``int``, :class:`~fractions.Fraction` or
:class:`~modcurves.exactnum.FqElem`; the only requirement is ring arithmetic
and comparison with ``0``.

The text format is a sum of terms such as ``-3*x1^2*x8 + 1/2*x2``.  The parser
also accepts parentheses, ``**`` and implicit multiplication (``6y^5``), so
data transcribed from typeset formulas parses directly; the printer emits the
canonical expanded form, graded-lexicographic, highest degree first.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import reduce as _fold
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    BadReduction,
    DegenerateInput,
    DegreeTooSmall,
    ParseError,
    PointNotOnVariety,
    ZeroPolynomial,
)
from .exactnum import FieldCtx, FqElem, VecField, reduce_rational, vec_field


def _is_zero(c) -> bool:
    return c == 0


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MPoly:
    """Immutable sparse multivariate polynomial."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms=None):
        variables = tuple(variables)
        clean = {}
        n = len(variables)
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ArityMismatch(f"exponent {exps} does not match {variables}")
            if not _is_zero(c):
                clean[exps] = c
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # --- construction --------------------------------------------------
    @classmethod
    def const(cls, c, variables: Sequence[str]) -> "MPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MPoly":
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if sum(exps) != 1:
            raise ArityMismatch(f"{name!r} not among {variables}")
        return cls(variables, {exps: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["MPoly"]:
        return [cls.var(v, variables) for v in variables]

    @classmethod
    def parse(cls, text: str, variables: Optional[Sequence[str]] = None) -> "MPoly":
        return parse_poly(text, variables)

    # --- basic queries -------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ArityMismatch(f"{var!r} not among {self.variables}") from None

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def coefficients(self) -> list:
        return [c for _, c in self.sorted_terms()]

    # --- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> Optional["MPoly"]:
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise ArityMismatch(f"{other.variables} vs {self.variables}")
            return other
        if isinstance(other, (int, Fraction, FqElem)):
            return MPoly.const(other, self.variables)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_constant() and o.terms:
            c = o.constant_value()
            return MPoly(self.variables, {e: v * c for e, v in self.terms.items()})
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                terms[e] = terms[e] + v if e in terms else v
        return MPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "MPoly":
        return MPoly(self.variables, {e: v * c for e, v in self.terms.items()})

    def divexact(self, other: "MPoly") -> "MPoly":
        """Exact quotient; raises ArithmeticError when other does not divide self."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = o.leading_term()
        quot: dict = {}
        rem = self
        while rem.terms:
            e, c = rem.leading_term()
            if any(a < b for a, b in zip(e, lead_e)):
                raise ArithmeticError("inexact polynomial division")
            te = tuple(a - b for a, b in zip(e, lead_e))
            tc = _div(c, lead_c)
            quot[te] = tc
            rem = rem - MPoly(self.variables, {te: tc}) * o
        return MPoly(self.variables, quot)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction, FqElem)):
            if _is_zero(other):
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.variables, frozenset(self.terms.items()))))
        return self._hash

    # --- calculus and substitution -------------------------------------
    def diff(self, var: str) -> "MPoly":
        i = self._index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return MPoly(self.variables, terms)

    def __call__(self, *point):
        return poly_eval(self, point)

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    def reduce(self, ctx: FieldCtx) -> "MPoly":
        """Coefficients mapped into ctx; BadReduction on bad denominators."""
        return self.map_coeffs(lambda c: ctx.coerce(c))

    def with_variables(self, variables: Sequence[str]) -> "MPoly":
        """Re-express in a new variable list that contains every used variable."""
        variables = tuple(variables)
        idx = []
        for i, v in enumerate(self.variables):
            if v in variables:
                idx.append(variables.index(v))
            else:
                if any(e[i] for e in self.terms):
                    raise ArityMismatch(f"variable {v!r} is used but not in {variables}")
                idx.append(None)
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in enumerate(e):
                if idx[i] is not None:
                    ne[idx[i]] += k
            terms[tuple(ne)] = c
        return MPoly(variables, terms)

    def rename(self, mapping: dict[str, str]) -> "MPoly":
        return MPoly(tuple(mapping.get(v, v) for v in self.variables), self.terms)

    def subs(self, values: dict[str, object]) -> "MPoly":
        """Substitute constants or MPolys (over the same variables) for variables."""
        out = MPoly(self.variables)
        for e, c in self.terms.items():
            term = MPoly.const(c, self.variables)
            rest = list(e)
            for v, val in values.items():
                i = self._index(v)
                if e[i]:
                    rest[i] = 0
                    term = term * (val ** e[i])
            term = term * MPoly(self.variables, {tuple(rest): 1})
            out = out + term
        return out

    def coeffs_in(self, var: str) -> dict[int, "MPoly"]:
        """View as a polynomial in var with coefficients in the other variables."""
        i = self._index(var)
        others = self.variables[:i] + self.variables[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MPoly(others, t) for k, t in buckets.items()}

    def to_upoly(self, var: Optional[str] = None) -> "UPoly":
        if self.nvars != 1 and var is None:
            used = [v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms)]
            if len(used) > 1:
                raise ArityMismatch(f"not univariate: uses {used}")
            var = used[0] if used else self.variables[0]
        var = var or self.variables[0]
        i = self._index(var)
        for e in self.terms:
            if any(k for j, k in enumerate(e) if j != i):
                raise ArityMismatch(f"not univariate in {var}")
        deg = self.degree_in(var)
        coeffs = [0] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return UPoly(coeffs, var)

    # --- printing ------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({format_poly(self)!r}, vars={self.variables})"


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return a / b


def poly_eval(f: MPoly, point: Sequence):
    if len(point) != f.nvars:
        raise ArityMismatch(f"point of length {len(point)} for {f.nvars} variables")
    total = 0
    pows: list[dict] = [dict() for _ in point]
    for e, c in f.terms.items():
        v = c
        for i, k in enumerate(e):
            if k:
                cache = pows[i]
                if k not in cache:
                    cache[k] = point[i] ** k
                v = v * cache[k]
        total = total + v
    return total


# --- text format ---------------------------------------------------------

def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(f: MPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(f.variables, e) if k
        )
        neg = False
        if isinstance(c, (int, Fraction)) and c < 0:
            neg, c = True, -c
        cs = _fmt_coeff(c)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


class _Parser:
    def __init__(self, tokens, variables):
        self.toks = tokens
        self.i = 0
        self.vars = variables

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def expr(self) -> MPoly:
        acc = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def _starts_atom(self):
        kind, val = self.peek()
        return kind in ("num", "id") or (kind == "op" and val == "(")

    def term(self) -> MPoly:
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.unary()
            elif kind == "op" and val == "/":
                self.take()
                den = self.unary()
                if not den.is_constant() or den.is_zero():
                    raise ParseError("division only by nonzero constants")
                acc = acc.scale(Fraction(1) / Fraction(den.constant_value()))
            elif self._starts_atom():
                acc = acc * self.power()
            else:
                return acc

    def unary(self) -> MPoly:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2 = self.take()
            if k2 == "op" and v2 == "(":
                k2, v2 = self.take()
                self.expect(")")
            if k2 != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** int(v2)
        return base

    def atom(self) -> MPoly:
        kind, val = self.take()
        if kind == "num":
            return MPoly.const(Fraction(int(val)), self.vars)
        if kind == "id":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}; expected one of {self.vars}")
            return MPoly.var(val, self.vars)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, variables: Optional[Sequence[str]] = None) -> MPoly:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    if variables is None:
        names = sorted({v for k, v in tokens if k == "id"}, key=_natural_key)
        variables = tuple(names)
    p = _Parser(tokens, tuple(variables))
    out = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input near token {p.i}: {tokens[p.i][1]!r}")
    return out


# --- univariate polynomials ----------------------------------------------

class UPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable, var: str = "x"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "UPoly":
        return parse_poly(text, (var,)).to_upoly(var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _one(self):
        c = self.lc
        if isinstance(c, FqElem):
            return c.ctx.one
        return Fraction(1) if isinstance(c, Fraction) else 1

    def _like(self, coeffs) -> "UPoly":
        return UPoly(coeffs, self.var)

    def __add__(self, other):
        o = other if isinstance(other, UPoly) else self._like([other])
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return self._like([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        o = other if isinstance(other, UPoly) else self._like([other])
        return self + (-o)

    def __rsub__(self, other):
        return self._like([other]) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self._like([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._like([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self._like([self._one() if self.coeffs else 1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FqElem)):
            return self.coeffs == self._like([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return self._like([]), self
        quot = [0] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            c = rem[k + other.degree]
            if _is_zero(c):
                continue
            t = _div(c, lc)
            quot[k] = t
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - t * oc
        return self._like(quot), self._like(rem[: other.degree])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return self._like([_div(c, lc) for c in self.coeffs])

    def deriv(self) -> "UPoly":
        return self._like([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduce(self, ctx: FieldCtx) -> "UPoly":
        return self._like([ctx.coerce(c) for c in self.coeffs])

    def to_mpoly(self) -> MPoly:
        return MPoly((self.var,), {(i,): c for i, c in enumerate(self.coeffs)})

    def __str__(self):
        return format_poly(self.to_mpoly())

    def __repr__(self):
        return f"UPoly({str(self)!r})"


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over a field."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _powmod(base: UPoly, e: int, mod: UPoly) -> UPoly:
    result = UPoly([base._one() if base.coeffs else mod._one()], base.var)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _characteristic(f: UPoly) -> tuple[int, Optional[FieldCtx]]:
    for c in f.coeffs:
        if isinstance(c, FqElem):
            return c.ctx.characteristic, c.ctx
    return 0, None


def _pth_root(f: UPoly, ctx: FieldCtx) -> UPoly:
    """g with g(x)^p = f(x), given f' = 0 in characteristic p."""
    p = ctx.characteristic
    e = p ** (ctx.degree - 1)  # c^(1/p) = c^(p^(k-1)) in F_{p^k}
    return f._like([f.coeffs[i] ** e for i in range(0, len(f.coeffs), p)])


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Monic pairwise coprime squarefree factors with their multiplicities.

    Musser's algorithm with the p-th root recursion needed in positive
    characteristic.
    """
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of 0")
    f = f.monic()
    if f.degree < 1:
        return []
    p, ctx = _characteristic(f)
    out: dict[UPoly, int] = {}

    def add(g, m):
        if g.degree >= 1:
            out[g] = out.get(g, 0) + m

    df = f.deriv()
    if df.is_zero():
        for g, m in squarefree_decomposition(_pth_root(f, ctx)):
            add(g, m * p)
        return sorted(out.items(), key=lambda t: (t[1], t[0].degree))
    c = upoly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree >= 1:
        y = upoly_gcd(w, c)
        z = w // y
        add(z.monic(), i)
        i += 1
        w = y
        c = c // y
    if c.degree >= 1:
        for g, m in squarefree_decomposition(_pth_root(c.monic(), ctx)):
            add(g, m * p)
    return sorted(out.items(), key=lambda t: (t[1], t[0].degree))


def _sign_of_lc(f: UPoly) -> int:
    lc = f.lc
    if isinstance(lc, (int, Fraction)) and lc < 0:
        return -1
    return 1


def squarefree_part(f: UPoly) -> UPoly:
    """Product of the distinct irreducible factors, monic up to the sign of lc(f)."""
    parts = squarefree_decomposition(f)
    one = f._like([f.monic().lc])
    g = _fold(lambda a, b: a * b, (g for g, _ in parts), one)
    return g * _sign_of_lc(f) if _sign_of_lc(f) < 0 else g


def odd_multiplicity_part(f: UPoly) -> UPoly:
    """Product of the irreducible factors of odd multiplicity."""
    parts = squarefree_decomposition(f)
    one = f._like([f.monic().lc])
    g = _fold(lambda a, b: a * b, (g for g, m in parts if m % 2), one)
    return g * _sign_of_lc(f) if _sign_of_lc(f) < 0 else g


# Field order at which root finding switches from scanning to gcd splitting.
SCAN_LIMIT = 10 ** 6


def roots_in_field(f: UPoly, ctx: FieldCtx, scan_limit: int = SCAN_LIMIT) -> list[FqElem]:
    """All roots of f in ctx, repeated by multiplicity, ordered by element code."""
    if f.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    fr = f.reduce(ctx)
    if fr.is_zero():
        raise ZeroPolynomial(f"{f} vanishes identically over {ctx}")
    if fr.degree < 1:
        return []
    if ctx.order <= scan_limit:
        simple = _roots_by_scan(fr, ctx)
    else:
        simple = _roots_by_splitting(fr, ctx)
    out = []
    for r in sorted(simple, key=lambda e: e.code):
        lin = fr._like([-r, ctx.one])
        g = fr
        while True:
            q, rem = g.divmod(lin)
            if not rem.is_zero():
                break
            out.append(r)
            g = q
    return out


def _roots_by_scan(f: UPoly, ctx: FieldCtx) -> list[FqElem]:
    vf = vec_field(ctx)
    xs = vf.elem_codes()
    acc = np.zeros_like(xs)
    for c in reversed(f.coeffs):
        acc = vf.add(vf.mul(acc, xs), np.int64(c.code))
    return [ctx.element(int(c)) for c in xs[acc == 0]]


def _roots_by_splitting(f: UPoly, ctx: FieldCtx) -> list[FqElem]:
    x = f._like([ctx.zero, ctx.one])
    g = upoly_gcd(f, _powmod(x, ctx.order, f) - x)
    rng = random.Random(0x5EED)
    out: list[FqElem] = []
    stack = [g]
    while stack:
        h = stack.pop()
        if h.degree == 0:
            continue
        if h.degree == 1:
            out.append(-h.monic().coeffs[0])
            continue
        while True:
            shifted = h._like([ctx.element(rng.randrange(ctx.order)),
                               ctx.element(rng.randrange(1, ctx.order))])
            if ctx.characteristic == 2:
                # absolute trace map splits in characteristic 2
                t = shifted % h
                acc = t
                for _ in range(ctx.degree - 1):
                    t = (t * t) % h
                    acc = acc + t
                cand = acc
            else:
                cand = _powmod(shifted, (ctx.order - 1) // 2, h) - h._like([ctx.one])
            d = upoly_gcd(h, cand)
            if 0 < d.degree < h.degree:
                stack.extend([d, h // d])
                break
    return out


# --- homogenisation -------------------------------------------------------

def homogenize(f: MPoly, new_var: str, degree: Optional[int] = None) -> MPoly:
    d = f.total_degree() if degree is None else degree
    if d < f.total_degree():
        raise DegreeTooSmall(f"degree {d} below total degree {f.total_degree()}")
    variables = f.variables + (new_var,)
    return MPoly(variables, {e + (d - sum(e),): c for e, c in f.terms.items()})


def dehomogenize(f: MPoly, var: str, value=1) -> MPoly:
    i = f._index(var)
    rest = f.variables[:i] + f.variables[i + 1:]
    terms: dict = {}
    for e, c in f.terms.items():
        ne = e[:i] + e[i + 1:]
        v = c * value ** e[i]
        terms[ne] = terms[ne] + v if ne in terms else v
    return MPoly(rest, terms)


# --- linear algebra --------------------------------------------------------

def bareiss_determinant(matrix: list[list]) -> object:
    """Fraction-free determinant over an integral domain with exact division.

    Entries may be ints or MPolys.
    """
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0 * m[0][0] if isinstance(m[0][0], MPoly) else 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _exact(num, prev)
            m[i][k] = 0
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _exact(num, den):
    if isinstance(den, int) and den == 1:
        return num
    if isinstance(num, MPoly):
        return num.divexact(den if isinstance(den, MPoly) else MPoly.const(den, num.variables))
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        assert r == 0, "Bareiss division must be exact"
        return q
    return num / den


def integer_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * pv - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def field_rank(rows: list[list]) -> int:
    """Rank over a field (FqElem or Fraction entries) by Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if not _is_zero(m[r][col])), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col] if not isinstance(m[rank][col], int) else Fraction(1, m[rank][col])
        for r in range(rank + 1, nrows):
            if not _is_zero(m[r][col]):
                t = m[r][col] * inv
                for c in range(col, ncols):
                    m[r][c] = m[r][c] - t * m[rank][c]
        rank += 1
        if rank == nrows:
            break
    return rank


# --- resultants -----------------------------------------------------------

def sylvester_matrix(f: MPoly, g: MPoly, var: str) -> list[list[MPoly]]:
    cf, cg = f.coeffs_in(var), g.coeffs_in(var)
    m, n = f.degree_in(var), g.degree_in(var)
    if m < 1 or n < 1:
        raise DegenerateInput(f"both polynomials must involve {var!r}")
    others = next(iter(cf.values())).variables
    zero = MPoly(others)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + (m - k)] = cf.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + (n - k)] = cg.get(k, zero)
        rows.append(row)
    return rows


def resultant_wrt(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Sylvester determinant eliminating var; rows of f come first."""
    if f.variables != g.variables:
        raise ArityMismatch("resultant operands must share variables")
    rows = sylvester_matrix(f, g, var)
    det = bareiss_determinant(rows)
    if not isinstance(det, MPoly):
        others = rows[0][0].variables
        det = MPoly.const(det, others)
    return det


# --- Jacobian ----------------------------------------------------------------

def jacobian_matrix(system: Sequence[MPoly]) -> list[list[MPoly]]:
    return [[f.diff(v) for v in f.variables] for f in system]


def jacobian_rank(system: Sequence[MPoly], point: Sequence, ctx: Optional[FieldCtx] = None,
                  jacobian: Optional[list[list[MPoly]]] = None) -> int:
    """Rank of the matrix of partial derivatives at point.

    With ctx the computation happens over that finite field (the point's
    coordinates are coerced into it); without ctx it is exact over Q.
    """
    if not system:
        return 0
    n = system[0].nvars
    if len(point) != n:
        raise ArityMismatch(f"point of length {len(point)} for {n} variables")
    if ctx is not None:
        pt = [ctx.coerce(c) for c in point]
        polys = [f.reduce(ctx) for f in system]
    else:
        pt = [Fraction(c) for c in point]
        polys = list(system)
    for f in polys:
        if not _is_zero(poly_eval(f, pt)):
            raise PointNotOnVariety(f"{tuple(point)} does not satisfy {f}")
    jac = jacobian if jacobian is not None else jacobian_matrix(system)
    if ctx is not None:
        rows = [[poly_eval(d.reduce(ctx), pt) for d in row] for row in jac]
        return field_rank(rows)
    rows = [[Fraction(poly_eval(d, pt)) for d in row] for row in jac]
    int_rows = []
    for row in rows:
        den = 1
        for c in row:
            den = den * c.denominator // _gcd(den, c.denominator)
        int_rows.append([int(c * den) for c in row])
    return integer_rank(int_rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# --- vectorised evaluation over finite fields ----------------------------

class VecPoly:
    """A polynomial reduced into a finite field, evaluable on code arrays."""

    def __init__(self, f: MPoly, ctx: FieldCtx):
        self.ctx = ctx
        self.nvars = f.nvars
        terms = [(e, ctx.coerce(c).code) for e, c in f.sorted_terms()]
        self.terms = [(e, c) for e, c in terms if c]

    def __call__(self, vf: VecField, columns: Sequence[np.ndarray], pow_cache=None) -> np.ndarray:
        if pow_cache is None:
            pow_cache = {}
        shape = np.shape(columns[0]) if columns else ()
        acc = np.zeros(shape, dtype=np.int64)
        for e, c in self.terms:
            term = np.full(shape, c, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in pow_cache:
                        pow_cache[key] = vf.power(columns[i], k)
                    term = vf.mul(term, pow_cache[key])
            acc = vf.add(acc, term)
        return acc
