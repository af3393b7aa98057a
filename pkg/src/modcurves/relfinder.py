"""Polynomial relations among truncated q-series.

The core loop: evaluate every monomial of a fixed degree in the given series,
read off the coefficient matrix (one row per power of q, one column per
monomial), and return an integer basis of its right nullspace.  A relation
found this way is only a congruence modulo q^(m+1); it is certified as an
identity when ``m`` exceeds the pole-order bound ``d(2g - 2)`` (or a
caller-supplied bound).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    DependentInput,
    EmptyBasis,
    NoRelationFound,
    PrecisionTooLow,
)
from .exactnum import is_prime
from .polyalg import MPoly
from .qseries import QSeries, series_mul

LOVASZ_DELTA = Fraction(99, 100)


# --- guard -------------------------------------------------------------------

@dataclass(frozen=True)
class PrecisionGuard:
    genus: Optional[int]
    degree: int
    required: int  # vanishing must be checked through q^m with m >= required
    available: int  # last exponent m through which coefficients are known

    @classmethod
    def for_forms(cls, genus: int, degree: int, available: int) -> "PrecisionGuard":
        return cls(genus, degree, degree * (2 * genus - 2) + 1, available)

    @classmethod
    def with_bound(cls, bound: int, degree: int, available: int,
                   genus: Optional[int] = None) -> "PrecisionGuard":
        """Certify once coefficients through q^m with m > bound agree."""
        return cls(genus, degree, bound + 1, available)

    @property
    def certified(self) -> bool:
        return self.available >= self.required


def last_known_exponent(s: QSeries) -> int:
    """Largest integer e such that the coefficient of q^e is known."""
    return -((-s.precision) // s.den) - 1


# --- monomials ------------------------------------------------------------------

def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given total degree, graded-lex descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree, -1, -1):
        out.extend(monomials(nvars, d))
    return out


def evaluate_monomials(series: Sequence[QSeries], exps: Sequence[tuple[int, ...]]) -> list[QSeries]:
    """Series value of each monomial, sharing partial products."""
    cache: dict[tuple[int, ...], QSeries] = {}
    n = len(series)
    one = QSeries({0: Fraction(1)}, 10 ** 18, series[0].den if series else 1)

    def value(e: tuple[int, ...]) -> QSeries:
        if e in cache:
            return cache[e]
        if sum(e) == 0:
            return one
        i = max(k for k in range(n) if e[k])
        prev = e[:i] + (e[i] - 1,) + e[i + 1:]
        v = series_mul(value(prev), series[i])
        cache[e] = v
        return v

    return [value(e) for e in exps]


def _coefficient_matrix(columns: Sequence[QSeries], last: int) -> list[list[int]]:
    """Integer matrix of coefficients q^lo .. q^last (rows) per column series."""
    den = max(c.den for c in columns)
    cols = [c.rescale(den) for c in columns]
    vals = [c.valuation() for c in cols if c.valuation() is not None]
    lo = min(vals) if vals else 0
    hi = (last + 1) * den
    rows = []
    for e in range(lo, hi):
        row = [c.terms.get(e, 0) for c in cols]
        if any(row):
            rows.append(row)
    # clear denominators row by row
    out = []
    for row in rows:
        l = 1
        for c in row:
            if isinstance(c, Fraction):
                l = l * c.denominator // math.gcd(l, c.denominator)
        out.append([int(c * l) for c in row])
    return out


# --- exact nullspace ----------------------------------------------------------

def _primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for c in v:
        g = math.gcd(g, c)
    if g == 0:
        return list(v)
    v = [c // g for c in v]
    lead = next(c for c in v if c)
    return [-c for c in v] if lead < 0 else v


def bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][col]
        for i in range(r + 1, nrows):
            a = m[i][col]
            row_i, row_r = m[i], m[r]
            for j in range(col + 1, ncols):
                row_i[j] = (row_i[j] * pv - a * row_r[j]) // prev
            row_i[col] = 0
        # rows above the pivot row keep their scale; only later rows are updated
        prev = pv
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace_exact(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of {v : M v = 0} via Bareiss echelon form."""
    if not rows:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    ech, pivots = bareiss_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((ech[r][j] * x[j] for j in range(pc + 1, ncols) if x[j]), Fraction(0))
            x[pc] = -s / ech[r][pc]
        l = 1
        for c in x:
            l = l * c.denominator // math.gcd(l, c.denominator)
        basis.append(_primitive([int(c * l) for c in x]))
    return basis


# --- modular nullspace for large systems -------------------------------------

def _primes_below(start: int, count: int) -> list[int]:
    out, n = [], start
    while len(out) < count:
        n -= 1
        if is_prime(n):
            out.append(n)
    return out


def rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = mat.copy() % p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, col]), -1, p)
        m[r] = (m[r] * inv) % p
        colv = m[:, col].copy()
        colv[r] = 0
        nzr = np.nonzero(colv)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - (colv[nzr, None] * m[r][None, :]) % p) % p
        pivots.append(col)
        r += 1
    return m[:r], pivots


def _rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """Fraction n/d with |n|, d <= sqrt(m/2) and n = a d (mod m)."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def nullspace_modular(rows: list[list[int]], ncols: int, max_primes: int = 64) -> list[list[int]]:
    """Integer nullspace by CRT over word-size primes, verified exactly over Z."""
    primes = _primes_below(2 ** 31, max_primes)
    residues: list[np.ndarray] = []
    modulus = 1
    pivots_ref = None
    free: list[int] = []
    used = []
    for p in primes:
        mat = np.array([[c % p for c in row] for row in rows], dtype=np.int64).reshape(len(rows), ncols)
        red, pivots = rref_mod_p(mat, p)
        if pivots_ref is None or len(pivots) > len(pivots_ref) or \
                (len(pivots) == len(pivots_ref) and pivots < pivots_ref):
            # a larger rank or earlier pivots means previous primes were unlucky
            pivots_ref = pivots
            residues, modulus, used = [], 1, []
            free = [c for c in range(ncols) if c not in pivots]
        if pivots != pivots_ref:
            continue
        vecs = np.zeros((len(free), ncols), dtype=np.int64)
        for k, f in enumerate(free):
            vecs[k, f] = 1
            for r, pc in enumerate(pivots):
                vecs[k, pc] = (-red[r, f]) % p
        residues.append(vecs)
        used.append(p)
        modulus *= p
        if not free:
            return []
        candidate = _crt_reconstruct(residues, used, modulus)
        if candidate is None:
            continue
        if all(_is_null(rows, v) for v in candidate):
            return candidate
    raise ArithmeticError("modular nullspace did not stabilise; raise max_primes")


def linear_combination(target: MPoly, generators: Sequence[MPoly],
                       max_primes: int = 16) -> Optional[list[Fraction]]:
    """Rationals c with sum c_i g_i == target exactly, or None if target is outside the span.

    Solved modulo word-size primes and lifted by CRT, so a returned vector is
    checked as an exact polynomial identity.  None means the target column was
    independent modulo a 31-bit prime, which over Q can only be wrong when that
    prime divides a minor of the generator matrix.
    """
    if not generators:
        return None if not target.is_zero() else []
    index: dict[tuple[int, ...], int] = {}
    for f in list(generators) + [target]:
        for e in f.terms:
            index.setdefault(e, len(index))
    scales = []
    cols = []
    for f in list(generators) + [target]:
        l = 1
        for c in f.terms.values():
            l = l * Fraction(c).denominator // math.gcd(l, Fraction(c).denominator)
        scales.append(l)
        cols.append({index[e]: int(Fraction(c) * l) for e, c in f.terms.items()})
    ngen = len(generators)
    residues: list[np.ndarray] = []
    used: list[int] = []
    modulus = 1
    pivots_ref = None
    for p in _primes_below(2 ** 31, max_primes):
        mat = np.zeros((len(index), ngen + 1), dtype=np.int64)
        for j, col in enumerate(cols):
            for i, c in col.items():
                mat[i, j] = c % p
        red, pivots = rref_mod_p(mat, p)
        if ngen in pivots:
            return None
        if pivots_ref is None or len(pivots) > len(pivots_ref) or \
                (len(pivots) == len(pivots_ref) and pivots < pivots_ref):
            pivots_ref, residues, used, modulus = pivots, [], [], 1
        if pivots != pivots_ref:
            continue
        sol = np.zeros((1, ngen), dtype=np.int64)
        for r, pc in enumerate(pivots):
            sol[0, pc] = red[r, ngen]
        residues.append(sol)
        used.append(p)
        modulus *= p
        lifted = _crt_fractions(residues, used, modulus)
        if lifted is None:
            continue
        # undo the per-column scaling: target * s_t = sum c_i * g_i * s_i
        coeffs = [c * scales[i] / scales[ngen] for i, c in enumerate(lifted)]
        total = MPoly.const(0, target.variables)
        for c, g in zip(coeffs, generators):
            if c:
                total = total + g.scale(c)
        if total == target:
            return coeffs
    raise ArithmeticError("modular solve did not stabilise; raise max_primes")


def _crt_fractions(residues, primes, modulus) -> Optional[list[Fraction]]:
    out = []
    for j in range(residues[0].shape[1]):
        x = 0
        for res, p in zip(residues, primes):
            mp = modulus // p
            x = (x + int(res[0, j]) * mp * pow(mp, -1, p)) % modulus
        fr = _rational_reconstruct(x, modulus)
        if fr is None:
            return None
        out.append(fr)
    return out


def _crt_reconstruct(residues, primes, modulus) -> Optional[list[list[int]]]:
    k, n = residues[0].shape
    out = []
    for i in range(k):
        vec = []
        for j in range(n):
            x = 0
            for res, p in zip(residues, primes):
                mp = modulus // p
                x = (x + int(res[i, j]) * mp * pow(mp, -1, p)) % modulus
            fr = _rational_reconstruct(x, modulus)
            if fr is None:
                return None
            vec.append(fr)
        l = 1
        for c in vec:
            l = l * c.denominator // math.gcd(l, c.denominator)
        out.append(_primitive([int(c * l) for c in vec]))
    return out


def _is_null(rows, v) -> bool:
    return all(sum(a * b for a, b in zip(row, v) if b) == 0 for row in rows)


def rational_nullspace(rows: list[list[int]], ncols: int, method: str = "auto") -> list[list[int]]:
    if method == "auto":
        method = "modular" if ncols > 60 else "bareiss"
    if method == "bareiss":
        return nullspace_exact(rows, ncols)
    if method == "modular":
        return nullspace_modular(rows, ncols)
    raise ValueError(f"unknown nullspace method {method!r}")


# --- LLL -------------------------------------------------------------------------

def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _gram_schmidt(b: list[list[int]]):
    n = len(b)
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    B: list[Fraction] = []
    for i in range(n):
        v = [Fraction(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = _dot(b[i], bstar[j]) / B[j] if B[j] else Fraction(0)
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        B.append(_dot(v, v))
    return bstar, mu, B


def gram_determinant(vectors: Sequence[Sequence[int]]) -> int:
    from .polyalg import bareiss_determinant
    gram = [[_dot(a, b) for b in vectors] for a in vectors]
    return int(bareiss_determinant(gram))


def _round(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def _lll_core(b: list[list[int]], delta: Fraction) -> list[list[int]]:
    n = len(b)
    _, mu, B = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for l in range(j):
                    mu[k][l] -= q * mu[j][l]
                mu[k][j] -= q
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            _, mu, B = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def is_lll_reduced(vectors: Sequence[Sequence[int]], delta: Fraction = LOVASZ_DELTA) -> bool:
    """Size reduction |mu_ij| <= 1/2 and the Lovasz condition, checked exactly."""
    b = [list(v) for v in vectors]
    _, mu, B = _gram_schmidt(b)
    for i in range(len(b)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, len(b)):
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            return False
    return True


def _canonical_sign(v: list[int]) -> list[int]:
    lead = next((c for c in v if c), 0)
    return [-c for c in v] if lead < 0 else v


def lll_reduce(vectors: Sequence[Sequence[int]], delta: Fraction = LOVASZ_DELTA) -> list[list[int]]:
    """LLL-reduced basis of the lattice spanned by independent integer vectors.

    The output is sorted by (squared norm, lex) and each vector has a positive
    first nonzero entry, as long as that order keeps the basis reduced;
    otherwise the reduced order is kept.
    """
    b = [[int(c) for c in v] for v in vectors]
    if not b:
        return []
    if len({len(v) for v in b}) != 1:
        raise ArityMismatch("vectors must share a dimension")
    if gram_determinant(b) == 0:
        raise DependentInput("input vectors are linearly dependent")
    b = [_canonical_sign(v) for v in _lll_core(b, delta)]
    for _ in range(8):
        ordered = sorted(b, key=lambda v: (_dot(v, v), v))
        if is_lll_reduced(ordered, delta):
            return ordered
        b = [_canonical_sign(v) for v in _lll_core(ordered, delta)]
    return b


# --- relation finding ------------------------------------------------------------

@dataclass
class RelationBasis:
    degree: int
    monomials: list[tuple[int, ...]]
    vectors: list[list[int]]
    guard: PrecisionGuard
    variables: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.guard.certified

    def polynomials(self, variables: Optional[Sequence[str]] = None) -> list[MPoly]:
        names = tuple(variables) if variables else self.variables
        return [MPoly(names, {e: Fraction(c) for e, c in zip(self.monomials, v) if c})
                for v in self.vectors]


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def _norm_lex_key(v):
    return (_dot(v, v), [-c for c in v])


def find_relations(basis: Sequence[QSeries], d: int, g_curve: Optional[int] = None, *,
                   bound: Optional[int] = None, require_certified: bool = False,
                   monomial_list: Optional[Sequence[tuple[int, ...]]] = None,
                   reduce: bool = True, method: str = "auto",
                   variables: Optional[Sequence[str]] = None) -> RelationBasis:
    """Integer relations of degree d among the series.

    ``g_curve`` selects the pole-order bound d(2g-2); ``bound`` overrides it.
    ``monomial_list`` replaces the degree-d monomials (e.g. a bidegree box).
    """
    if not basis:
        raise ArityMismatch("empty series list")
    if g_curve is None and bound is None:
        raise ValueError("need a genus or an explicit bound for the precision guard")
    exps = list(monomial_list) if monomial_list is not None else monomials(len(basis), d)
    cols = evaluate_monomials(basis, exps)
    available = min(last_known_exponent(c) for c in cols)
    if bound is not None:
        guard = PrecisionGuard.with_bound(bound, d, available, g_curve)
    else:
        guard = PrecisionGuard.for_forms(g_curve, d, available)
    if require_certified and not guard.certified:
        raise PrecisionTooLow(
            f"coefficients known through q^{available}, need q^{guard.required}")
    rows = _coefficient_matrix(cols, available)
    null = rational_nullspace(rows, len(exps), method)
    if not null:
        raise EmptyBasis(f"no relation of degree {d} among {len(basis)} series")
    if reduce and len(null) > 1:
        null = lll_reduce(null)
    null = sorted((_primitive(v) for v in null), key=_norm_lex_key)
    names = tuple(variables) if variables else default_names(len(basis))
    return RelationBasis(d, exps, null, guard, names)


@dataclass(frozen=True)
class RelationCheck:
    certified: bool
    vanishing_order: int
    identically_zero: bool
    available: int
    required: int


def substitute(F: MPoly, basis: Sequence[QSeries]) -> QSeries:
    if F.nvars != len(basis):
        raise ArityMismatch(f"{F.nvars} variables but {len(basis)} series")
    exps = [e for e, _ in F.sorted_terms()]
    vals = evaluate_monomials(basis, exps)
    total = None
    for (e, c), v in zip(F.sorted_terms(), vals):
        term = v * c
        total = term if total is None else total + term
    return total if total is not None else QSeries({}, 10 ** 18)


def verify_relation(F: MPoly, basis: Sequence[QSeries], g_curve: Optional[int] = None,
                    bound: Optional[int] = None) -> RelationCheck:
    val = substitute(F, basis)
    available = last_known_exponent(val)
    d = F.total_degree()
    if bound is not None:
        guard = PrecisionGuard.with_bound(bound, d, available, g_curve)
    else:
        guard = PrecisionGuard.for_forms(g_curve if g_curve is not None else 0, d, available)
    v = val.valuation()
    if v is None:
        return RelationCheck(guard.certified, available + 1, True, available, guard.required)
    order = math.floor(Fraction(v, val.den))
    return RelationCheck(False, order, False, available, guard.required)


# --- rational functions ----------------------------------------------------------

def recognize_rational_function(target: QSeries, generators: Sequence[QSeries], max_degree: int,
                                g_curve: int = 8, bound: Optional[int] = None,
                                variables: Optional[Sequence[str]] = None) -> tuple[MPoly, MPoly]:
    """p, q of degree <= max_degree with p(h) = target * q(h) to the known precision.

    Tries degrees 0..max_degree and returns the first solution with q(h)
    nonzero, normalised so q's leading graded-lex coefficient is 1.
    """
    n = len(generators)
    names = tuple(variables) if variables else default_names(n)
    for e in range(max_degree + 1):
        exps = monomials_upto(n, e)
        hv = evaluate_monomials(generators, exps)
        cols = hv + [series_mul(target, h) * -1 for h in hv]
        available = min(last_known_exponent(c) for c in cols)
        need = bound if bound is not None else max_degree * (2 * g_curve - 2)
        if available <= need:
            raise PrecisionTooLow(f"coefficients known through q^{available}, need more than q^{need}")
        rows = _coefficient_matrix(cols, available)
        null = rational_nullspace(rows, len(cols))
        k = len(exps)
        for v in sorted(null, key=_norm_lex_key):
            qpart = v[k:]
            qser = None
            for c, h in zip(qpart, hv):
                if c:
                    qser = h * c if qser is None else qser + h * c
            if qser is None or qser.is_zero():
                continue
            lead = next(c for c in qpart if c)
            p = MPoly(names, {ex: Fraction(c, lead) for ex, c in zip(exps, v[:k]) if c})
            q = MPoly(names, {ex: Fraction(c, lead) for ex, c in zip(exps, qpart) if c})
            return p, q
    raise NoRelationFound(f"no rational expression of degree <= {max_degree}")
