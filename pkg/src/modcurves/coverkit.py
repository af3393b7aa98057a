"""Double covers t^2 = q of a plane curve, and the checks around them.

Covers the ramification locus (via resultants), building the cover from a
function with y-power denominators, CM square-class checks at special points,
elliptic point counts, and pointwise verification of a desingularization lift
from a canonical model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    BadReduction,
    CompositeModulus,
    DegenerateInput,
    NotCleared,
    OddClearingExponent,
    UndefinedValue,
)
from .exactnum import FieldCtx, is_prime, make_prime_field, vec_field
from .ffgeom import Model, PointSet, _reduce_all, cover_model, enumerate_points
from .polyalg import (
    MPoly,
    UPoly,
    _powmod,
    odd_multiplicity_part,
    resultant_wrt,
    roots_in_field,
    upoly_gcd,
)

RatFunc = tuple[MPoly, MPoly]


# --- ramification ---------------------------------------------------------------

@dataclass
class RamificationReport:
    resultant: UPoly
    simple_part: UPoly
    orbit_degrees: dict[int, list[int]]
    selected: Optional[UPoly]


def factor_degrees_mod_p(f: UPoly, p: int) -> Optional[list[int]]:
    """Degrees of the irreducible factors of f mod p, or None if f mod p is not squarefree."""
    ctx = make_prime_field(p)
    try:
        g = f.reduce(ctx)
    except BadReduction:
        return None
    if g.degree != f.degree or g.degree < 1:
        return None
    g = g.monic()
    if upoly_gcd(g, g.deriv()).degree > 0:
        return None
    x = UPoly([ctx.zero, ctx.one], g.var)
    degrees = []
    h = x
    d = 0
    while g.degree > 0:
        d += 1
        if 2 * d > g.degree:
            degrees.append(g.degree)
            break
        h = _powmod(h, p, g)
        common = upoly_gcd(g, h - x)
        if common.degree > 0:
            degrees.extend([d] * (common.degree // d))
            g = g // common
            h = h % g
    return sorted(degrees)


def ramification_locus(curve: MPoly, j_num: MPoly, j_den: MPoly, shift=1728, *,
                       eliminate: str = "x", sample_primes: Sequence[int] = (5, 7, 11, 17, 19, 23),
                       expected_degree: int = 6) -> RamificationReport:
    """Resultant of the curve and j_num - shift * j_den, eliminating one variable.

    The odd-multiplicity part of the resultant holds the images of the points
    where j - shift vanishes to odd order.
    """
    g = j_num - j_den * Fraction(shift)
    if j_den.is_zero() or (j_den.degree_in(eliminate) > 0
                           and resultant_wrt(curve, j_den, eliminate).is_zero()):
        raise DegenerateInput("the denominator vanishes identically on the curve")
    res = resultant_wrt(curve, g, eliminate)
    if res.is_zero():
        raise DegenerateInput("curve and j - shift share a component")
    ures = res.to_upoly()
    simple = odd_multiplicity_part(ures)
    degrees: dict[int, list[int]] = {}
    for p in sample_primes:
        if simple.degree < 1:
            break
        pattern = factor_degrees_mod_p(simple, p)
        if pattern is not None:
            degrees[p] = pattern
        if len(degrees) >= 3:
            break
    selected = simple if simple.degree == expected_degree else None
    return RamificationReport(ures, simple, degrees, selected)


# --- building covers -------------------------------------------------------------

@dataclass
class CoverModel:
    base: Model
    q: MPoly
    cover: Model
    kernel_checks: list[tuple[tuple[Fraction, Fraction], int]] = field(default_factory=list)


def clear_denominator(f: Union[MPoly, RatFunc], clearing_exponent: int, var: str = "y") -> MPoly:
    """f * var^clearing_exponent as a polynomial."""
    if clearing_exponent % 2:
        raise OddClearingExponent(f"clearing exponent {clearing_exponent} is odd")
    num, den = f if isinstance(f, tuple) else (f, MPoly.const(1, f.variables))
    cleared = num * MPoly.var(var, num.variables) ** clearing_exponent
    try:
        return cleared.divexact(den)
    except ArithmeticError:
        raise NotCleared(f"{var}^{clearing_exponent} does not clear the denominator {den}") from None


def build_double_cover(base: Model, f: Union[MPoly, RatFunc], clearing_exponent: int,
                       var: str = "y", t: str = "t",
                       kernel_checks: Sequence[tuple[tuple, int]] = ()) -> CoverModel:
    """Cover t^2 = q with q = f * y^e; an even e only changes f by a square."""
    q = clear_denominator(f, clearing_exponent, var).with_variables(base.variables)
    cover = cover_model(base, q, t)
    checks = [((Fraction(a), Fraction(b)), d) for (a, b), d in kernel_checks]
    return CoverModel(base, q, cover, checks)


# --- square classes ----------------------------------------------------------------

def squarefree_kernel_int(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise UndefinedValue("zero has no square class")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1 if p == 2 else 2
    # what remains has at most two prime factors, all above the cube root
    r = math.isqrt(n)
    if r * r != n:
        out *= n
    return sign * out


def squarefree_kernel(v) -> int:
    v = Fraction(v)
    return squarefree_kernel_int(v.numerator * v.denominator)


def evaluate_rational(q: Union[MPoly, RatFunc], point: Sequence) -> Fraction:
    pt = [Fraction(c) for c in point]
    if isinstance(q, tuple):
        den = Fraction(q[1](*pt))
        if den == 0:
            raise UndefinedValue(f"denominator vanishes at {tuple(point)}")
        return Fraction(q[0](*pt)) / den
    return Fraction(q(*pt))


def cm_kernel_check(q: Union[MPoly, RatFunc], point: Sequence, expected_discriminant: int) -> bool:
    """Does sqrt(q(point)) generate Q(sqrt(expected_discriminant))?"""
    v = evaluate_rational(q, point)
    if v == 0:
        raise UndefinedValue(f"q vanishes at {tuple(point)}")
    return squarefree_kernel(v) == squarefree_kernel_int(expected_discriminant)


# --- ramification fibres over finite fields ------------------------------------------

@dataclass
class OddVanishingReport:
    prime: int
    degree: int
    roots: list[int]
    fibers: dict[int, list[tuple[int, bool]]]  # root code -> [(y code, q vanishes)]
    misses: list[int]

    @property
    def matched(self) -> bool:
        return bool(self.roots) and not self.misses


def odd_vanishing_check(cover: CoverModel, sextic: UPoly, ctx: FieldCtx,
                        x: str = "x", y: str = "y") -> OddVanishingReport:
    """Each root x0 of the sextic must lift to a base point (x0, y0) with q = 0."""
    red = sextic.reduce(ctx)
    if red.degree != sextic.degree:
        raise BadReduction(f"leading coefficient vanishes modulo {ctx.characteristic}")
    if upoly_gcd(red, red.deriv()).degree > 0:
        # colliding roots: the fibre over a double root need not be rational
        raise BadReduction(f"the sextic is not squarefree modulo {ctx.characteristic}")
    roots = sorted({r.code for r in roots_in_field(red, ctx)})
    base_eq = cover.base.equations[0]
    fibers: dict[int, list[tuple[int, bool]]] = {}
    misses = []
    qr = cover.q.reduce(ctx)
    for code in roots:
        x0 = ctx.element(code)
        fy = base_eq.reduce(ctx).subs({x: x0}).to_upoly(y)
        ys = sorted({r.code for r in roots_in_field(fy, ctx)}) if not fy.is_zero() else \
            [e.code for e in ctx.elements()]
        fib = []
        for yc in ys:
            val = qr.subs({x: x0, y: ctx.element(yc)}).constant_value()
            fib.append((yc, val == 0))
        fibers[code] = fib
        if not any(v for _, v in fib):
            misses.append(code)
    return OddVanishingReport(ctx.characteristic, ctx.degree, roots, fibers, misses)


# --- elliptic points -----------------------------------------------------------------

@dataclass(frozen=True)
class EllipticCounts:
    p: int
    r: int
    e2_split: int
    e3_split: int
    e2_plus: int
    e3_plus: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.e2_split, self.e3_split, self.e2_plus, self.e3_plus)


def elliptic_point_counts(p: int, r: int) -> EllipticCounts:
    """Elliptic points of order 2 and 3 on the split Cartan curve of level p^r and its plus quotient."""
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    if r < 1:
        raise ValueError("r must be positive")
    e2 = 2 if p % 4 == 1 else 0
    e3 = 2 if p % 3 == 1 else 0
    if p == 2:
        e2p = 2 ** (r - 1)
    elif p % 4 == 1:
        e2p = 1 + p ** (r - 1) * (p - 1) // 2
    else:
        e2p = p ** (r - 1) * (p + 1) // 2
    e3p = 1 if p % 3 == 1 else 0
    return EllipticCounts(p, r, e2, e3, e2p, e3p)


# --- desingularization -------------------------------------------------------------

@dataclass
class LiftReport:
    checked: int
    skipped: int
    base_violations: list[tuple[int, ...]] = field(default_factory=list)
    cover_violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.base_violations and not self.cover_violations


def verify_desingularization(canonical: Model, pi: Sequence[MPoly], s_num: MPoly, s_den: MPoly,
                             singular: CoverModel, ctx: FieldCtx,
                             points: Optional[PointSet] = None) -> LiftReport:
    """Check x = X/Z, y = Y/Z, t = s (Y/Z)^2 lands on the singular model."""
    if len(pi) != 3:
        raise DegenerateInput("the projection must have three components X, Y, Z")
    pts = points if points is not None else enumerate_points(canonical, ctx)
    if not len(pts):
        return LiftReport(0, 0)
    vf = vec_field(ctx)
    cols = pts.columns()
    cache: dict = {}
    X, Y, Z, sn, sd = [f(vf, cols, cache) for f in _reduce_all(list(pi) + [s_num, s_den], ctx)]
    defined = (Z != 0) & (sd != 0)
    zi = vf.inv(Z)
    x = vf.mul(X, zi)
    y = vf.mul(Y, zi)
    t = vf.mul(vf.mul(sn, vf.inv(sd)), vf.mul(y, y))
    base_eq = _reduce_all([singular.base.equations[0]], ctx)[0]
    q = _reduce_all([singular.q], ctx)[0]
    base_ok = base_eq(vf, [x, y]) == 0
    cover_ok = vf.mul(t, t) == q(vf, [x, y])
    idx_base = np.nonzero(defined & ~base_ok)[0]
    idx_cover = np.nonzero(defined & ~cover_ok)[0]
    return LiftReport(int(defined.sum()), int((~defined).sum()),
                      [pts.points[i] for i in idx_base], [pts.points[i] for i in idx_cover])
