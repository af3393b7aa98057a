"""Truncated q-series with exponents in (1/24)Z and tracked precision.

A :class:`QSeries` stores integer exponents measured in units of
``1/den`` (``den`` is 1 or 24) together with an absolute precision bound:
the series is known modulo ``q^(precision/den)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DomainMismatch,
    NonSquareLeadingCoefficient,
    NotInvertible,
    OddValuation,
    ParseError,
)
from .exactnum import FqElem, sqrt_mod_p

DENOMINATORS = (1, 24)
# precision used for exact constants; large enough never to be the minimum
_EXACT = 10 ** 18


def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = int(n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r if r * r == n else None


def _domain(c) -> tuple:
    if isinstance(c, FqElem):
        return ("F", c.ctx)
    return ("Q",)


class QSeries:
    __slots__ = ("terms", "precision", "den")

    def __init__(self, terms: dict[int, object], precision: int, den: int = 1):
        if den not in DENOMINATORS:
            raise ValueError(f"exponent denominator must be one of {DENOMINATORS}")
        clean = {}
        for e, c in terms.items():
            if e >= precision:
                continue
            if c != 0:
                clean[int(e)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "precision", int(precision))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # --- construction ----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Sequence, precision: Optional[int] = None,
                    start: int = 0, den: int = 1) -> "QSeries":
        """coeffs[i] is the coefficient of q^((start + i)/den)."""
        if precision is None:
            precision = start + len(coeffs)
        return cls({start + i: c for i, c in enumerate(coeffs)}, precision, den)

    @classmethod
    def monomial(cls, c, exponent: int, precision: int, den: int = 1) -> "QSeries":
        return cls({exponent: c}, precision, den)

    @classmethod
    def parse(cls, text: str) -> "QSeries":
        return parse_series(text)

    # --- queries -----------------------------------------------------------
    def valuation(self) -> Optional[int]:
        """Smallest exponent present (in units of 1/den), None for O(.) only."""
        return min(self.terms) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: int):
        return self.terms.get(e, 0)

    def leading(self):
        v = self.valuation()
        return None if v is None else self.terms[v]

    def coeff_list(self, start: int, stop: int) -> list:
        return [self.terms.get(e, 0) for e in range(start, stop)]

    def domain(self) -> tuple:
        for c in self.terms.values():
            return _domain(c)
        return ("Q",)

    def rescale(self, den: int) -> "QSeries":
        """Same series with exponents expressed in units of 1/den."""
        if den == self.den:
            return self
        if den % self.den:
            raise ValueError(f"cannot express 1/{self.den} exponents in units of 1/{den}")
        k = den // self.den
        return QSeries({e * k: c for e, c in self.terms.items()}, self.precision * k, den)

    def normalized(self) -> "QSeries":
        """Drop to denominator 1 when every exponent and the precision allow it."""
        if self.den == 1:
            return self
        if self.precision % self.den == 0 and all(e % self.den == 0 for e in self.terms):
            k = self.den
            return QSeries({e // k: c for e, c in self.terms.items()}, self.precision // k, 1)
        return self

    def truncate(self, precision: int) -> "QSeries":
        return QSeries(self.terms, min(precision, self.precision), self.den)

    def map_coeffs(self, fn) -> "QSeries":
        return QSeries({e: fn(c) for e, c in self.terms.items()}, self.precision, self.den)

    # --- arithmetic ----------------------------------------------------------
    def _align(self, other) -> tuple["QSeries", "QSeries"]:
        if not isinstance(other, QSeries):
            other = QSeries({0: other}, _EXACT, 1)
        a, b = self, other
        da, db = a.domain(), b.domain()
        if a.terms and b.terms and da != db:
            raise DomainMismatch(f"{da} vs {db}")
        den = max(a.den, b.den)
        return a.rescale(den), b.rescale(den)

    def __add__(self, other):
        a, b = self._align(other)
        prec = min(a.precision, b.precision)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return QSeries(terms, prec, a.den)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.terms.items()}, self.precision, self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QSeries) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries({e: c * other for e, c in self.terms.items()}, self.precision, self.den)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, QSeries):
            return self * (1 / Fraction(other) if isinstance(other, int) else 1 / other)
        return series_mul(self, series_inv(other))

    def __pow__(self, n: int):
        if n < 0:
            return series_inv(self) ** (-n)
        if n == 0:
            v = self.valuation() or 0
            return QSeries({0: _one_like(self)}, self.precision - v, self.den)
        result = QSeries({0: _one_like(self)}, _EXACT, self.den)
        base = self
        while n:
            if n & 1:
                result = series_mul(result, base)
            n >>= 1
            if n:
                base = series_mul(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms and a.precision == b.precision

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.precision, self.den))

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"QSeries({format_series(self)!r})"


def _one_like(s: QSeries):
    for c in s.terms.values():
        if isinstance(c, FqElem):
            return c.ctx.one
        return Fraction(1)
    return Fraction(1)


def series_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Product; precision min(prec_a + val_b, prec_b + val_a)."""
    a, b = a._align(b)
    va, vb = a.valuation(), b.valuation()
    if va is None and vb is None:
        prec = min(a.precision, b.precision)
    elif va is None:
        prec = a.precision + vb
    elif vb is None:
        prec = b.precision + va
    else:
        prec = min(a.precision + vb, b.precision + va)
    integral = all(_integral(c) for c in a.terms.values()) and \
        all(_integral(c) for c in b.terms.values())
    if integral:
        # plain ints are several times faster than Fraction arithmetic
        items_a = [(e, int(c)) for e, c in a.terms.items()]
        items_b = sorted((e, int(c)) for e, c in b.terms.items())
    else:
        items_a = list(a.terms.items())
        items_b = sorted(b.terms.items())
    terms: dict = {}
    for e1, c1 in items_a:
        for e2, c2 in items_b:
            e = e1 + e2
            if e >= prec:
                break
            v = c1 * c2
            terms[e] = terms[e] + v if e in terms else v
    if integral:
        terms = {e: Fraction(c) for e, c in terms.items()}
    return QSeries(terms, prec, a.den)


def _integral(c) -> bool:
    return isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)


def series_inv(a: QSeries) -> QSeries:
    """Inverse; absolute precision becomes prec - 2*valuation."""
    v = a.valuation()
    if v is None:
        raise NotInvertible("series is zero to its precision")
    lead = a.terms[v]
    inv_lead = 1 / lead if isinstance(lead, FqElem) else Fraction(1) / lead
    rel = a.precision - v
    u = [a.terms.get(v + i, 0) for i in range(rel)]
    out = [0] * rel
    out[0] = inv_lead
    for n in range(1, rel):
        acc = 0
        for i in range(1, n + 1):
            if u[i] != 0:
                acc = acc + u[i] * out[n - i]
        out[n] = -acc * inv_lead
    return QSeries({-v + i: c for i, c in enumerate(out)}, rel - v, a.den)


def _canonical_sqrt(c):
    if isinstance(c, FqElem):
        ctx = c.ctx
        if ctx.degree != 1:
            for cand in ctx.elements():
                if cand * cand == c:
                    return cand
            return None
        r = sqrt_mod_p(c.coords[0], ctx.characteristic)
        return None if r is None else ctx.coerce(r)
    c = Fraction(c)
    if c <= 0:
        return None
    n, d = _isqrt_exact(c.numerator), _isqrt_exact(c.denominator)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def series_sqrt(a: QSeries) -> QSeries:
    """Square root with the canonical leading coefficient.

    Precision: prec - valuation/2.
    """
    v = a.valuation()
    if v is None:
        raise NotInvertible("square root of a series that is zero to its precision")
    if v % 2:
        raise OddValuation(f"valuation {v}/{a.den} is odd")
    lead = a.terms[v]
    s0 = _canonical_sqrt(lead)
    if s0 is None:
        raise NonSquareLeadingCoefficient(f"{lead} has no canonical square root")
    rel = a.precision - v
    u = [a.terms.get(v + i, 0) for i in range(rel)]
    s = [0] * rel
    s[0] = s0
    two_s0 = s0 + s0
    if two_s0 == 0:
        raise NonSquareLeadingCoefficient("square roots need 2 to be invertible")
    for n in range(1, rel):
        acc = u[n]
        for i in range(1, n):
            if s[i] != 0 and s[n - i] != 0:
                acc = acc - s[i] * s[n - i]
        s[n] = acc / two_s0 if isinstance(two_s0, FqElem) else Fraction(acc) / two_s0
    half = v // 2
    return QSeries({half + i: c for i, c in enumerate(s)}, half + rel, a.den)


def euler_product(precision: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) modulo q^precision, by direct expansion."""
    coeffs = [0] * precision
    if precision == 0:
        return coeffs
    coeffs[0] = 1
    for n in range(1, precision):
        # multiply in place by (1 - q^n)
        for k in range(precision - 1, n - 1, -1):
            coeffs[k] -= coeffs[k - n]
    return coeffs


def eta_quotient(spec: Iterable[tuple[int, int]], precision: int, scale=1) -> QSeries:
    """scale * prod eta(N_i tau)^(r_i), known to relative precision ``precision``.

    The result has exponent denominator 24 (normalised to 1 when possible),
    leading exponent sum(r_i N_i)/24, and absolute precision
    ``leading exponent + precision`` in whole powers of q.
    """
    spec = [(int(n), int(r)) for n, r in spec]
    if precision <= 0:
        raise ValueError("precision must be positive")
    if any(n < 1 for n, _ in spec):
        raise ValueError("eta scales must be positive")
    base = euler_product(precision)
    prod = QSeries.from_coeffs([Fraction(scale)], precision)
    for n, r in spec:
        if r == 0:
            continue
        factor = QSeries({k * n: Fraction(c) for k, c in enumerate(base) if k * n < precision and c},
                         precision)
        prod = series_mul(prod, factor ** r if r > 0 else series_inv(factor) ** (-r))
    lead24 = sum(n * r for n, r in spec)
    shifted = QSeries({e * 24 + lead24: c for e, c in prod.terms.items()},
                      prod.precision * 24 + lead24, 24)
    return shifted.normalized()


# --- text format ---------------------------------------------------------

def _fmt_exp(e: int, den: int) -> str:
    f = Fraction(e, den)
    if f.denominator == 1:
        return f"q^{f.numerator}" if f.numerator != 1 else "q"
    return f"q^({f.numerator}/{f.denominator})"


def format_series(s: QSeries) -> str:
    """``c*q^(a/24) + ... + O(q^(m/24))``; integral exponents are printed plainly."""
    parts = []
    for e in sorted(s.terms):
        c = s.terms[e]
        neg = False
        if isinstance(c, (int, Fraction)) and c < 0:
            neg, c = True, -c
        cs = str(c)
        if e == 0:
            body = cs
        else:
            mono = _fmt_exp(e, s.den)
            body = mono if cs == "1" else f"{cs}*{mono}"
        sep = ("-" if neg else "") if not parts else (" - " if neg else " + ")
        parts.append(sep + body)
    tail = f"O({_fmt_exp(s.precision, s.den)})" if s.precision != 0 else "O(1)"
    if parts:
        return "".join(parts) + " + " + tail
    return tail


def _parse_exponent(tok: str) -> Fraction:
    # tok is what follows "q": "", "^5", "^-1", "^(1/24)", "^(-23/24)"
    if not tok:
        return Fraction(1)
    if not tok.startswith("^"):
        raise ParseError(f"bad exponent {tok!r}")
    body = tok[1:]
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        return Fraction(body)
    except ValueError:
        raise ParseError(f"bad exponent {tok!r}") from None


def _split_terms(body: str) -> list[str]:
    terms, cur, depth = [], "", 0
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and not cur.endswith("^"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    return terms


def parse_series(text: str) -> QSeries:
    src = text.replace(" ", "")
    pieces = _split_terms(src)
    if not pieces or not pieces[-1].lstrip("+").startswith("O("):
        raise ParseError("series must end with an O(q^...) term")
    tail = pieces[-1].lstrip("+")[2:-1]
    if tail == "1":
        prec = Fraction(0)
    elif tail.startswith("q"):
        prec = _parse_exponent(tail[1:])
    else:
        raise ParseError(f"bad precision term {pieces[-1]!r}")
    raw_terms: list[tuple[Fraction, Fraction]] = []
    for tok in pieces[:-1]:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        if "q" in tok:
            coef_s, _, exp_s = tok.partition("q")
            coef_s = coef_s.rstrip("*")
            exp = _parse_exponent(exp_s)
        else:
            coef_s, exp = tok, Fraction(0)
        try:
            coef = Fraction(coef_s) if coef_s else Fraction(1)
        except ValueError:
            raise ParseError(f"bad coefficient {coef_s!r}") from None
        raw_terms.append((sign * coef, exp))
    exps = [e for _, e in raw_terms] + [prec]
    if any(24 % e.denominator for e in exps):
        raise ParseError("exponent denominators must divide 24")
    den = 1 if all(e.denominator == 1 for e in exps) else 24
    terms: dict[int, Fraction] = {}
    for c, e in raw_terms:
        k = int(e * den)
        terms[k] = terms.get(k, 0) + c
    return QSeries(terms, int(prec * den), den)


# --- orders at cusps --------------------------------------------------------

def eta_cusp_orders(spec: Iterable[tuple[int, int]], level: int) -> dict[int, Fraction]:
    """Order of prod eta(N_i tau)^(r_i) at the cusps of X0(level) with denominator d.

    Ligozat's formula; the value is in the local parameter at the cusp, so it
    is an integer when the quotient is a function on X0(level).
    """
    spec = [(int(n), int(r)) for n, r in spec]
    if any(level % n for n, _ in spec):
        raise ValueError(f"every eta scale must divide {level}")
    out = {}
    for d in range(1, level + 1):
        if level % d:
            continue
        s = sum(Fraction(math.gcd(d, n) ** 2 * r, n) for n, r in spec)
        out[d] = Fraction(level, 24) * s / (math.gcd(d, level // d) * d)
    return out


def eta_pole_degree(spec: Iterable[tuple[int, int]], level: int) -> int:
    """Total pole order on X0(level); cusps with denominator d number phi(gcd(d, level/d))."""
    total = Fraction(0)
    for d, v in eta_cusp_orders(spec, level).items():
        if v < 0:
            total += -v * _euler_phi(math.gcd(d, level // d))
    if total.denominator != 1:
        raise ValueError("not a function on X0(level): fractional cusp orders")
    return int(total)


def _euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out
