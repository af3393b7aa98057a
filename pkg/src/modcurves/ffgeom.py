"""Point enumeration and related geometry over finite fields.

Enumeration is brute force over normalized representatives, vectorized with
numpy over element codes and filtered one equation at a time.  Everything
downstream (smoothness, zeta numerators, map checks) works on the resulting
point lists.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .errors import (
    ArityMismatch,
    BadReduction,
    DegenerateInput,
    Exhausted,
    InconsistentCounts,
    TooManyCandidates,
)
from .exactnum import FieldCtx, FqElem, make_ext_field, make_prime_field, vec_field
from .polyalg import MPoly, VecPoly, field_rank, jacobian_matrix
from .relfinder import linear_combination, monomials, rref_mod_p

CANDIDATE_LIMIT = 10 ** 8
CHUNK = 1 << 18


# --- models ------------------------------------------------------------------

@dataclass(frozen=True)
class Model:
    name: str
    ambient: str  # "projective" or "affine"
    n: int  # ambient dimension: P^n has n+1 coordinates, A^n has n
    equations: tuple[MPoly, ...]
    variables: tuple[str, ...]
    genus: Optional[int] = None
    bad_primes_hint: tuple[int, ...] = ()

    def __post_init__(self):
        if self.ambient not in ("projective", "affine"):
            raise ValueError(f"unknown ambient {self.ambient!r}")
        if len(self.variables) != self.ncoords:
            raise ArityMismatch(f"{self.ambient} space of dimension {self.n} needs "
                                f"{self.ncoords} variables, got {len(self.variables)}")
        for f in self.equations:
            if f.variables != tuple(self.variables):
                raise ArityMismatch(f"equation over {f.variables}, model over {self.variables}")
            if self.ambient == "projective" and not f.is_homogeneous():
                raise DegenerateInput(f"projective equation is not homogeneous: {f}")

    @classmethod
    def build(cls, name: str, ambient: str, equations: Sequence[Union[str, MPoly]],
              variables: Sequence[str], genus: Optional[int] = None,
              bad_primes_hint: Sequence[int] = ()) -> "Model":
        variables = tuple(variables)
        eqs = tuple(e if isinstance(e, MPoly) else MPoly.parse(e, variables) for e in equations)
        n = len(variables) - 1 if ambient == "projective" else len(variables)
        return cls(name, ambient, n, eqs, variables, genus, tuple(bad_primes_hint))

    @property
    def ncoords(self) -> int:
        return self.n + 1 if self.ambient == "projective" else self.n

    @property
    def projective(self) -> bool:
        return self.ambient == "projective"

    def candidate_count(self, q: int) -> int:
        if self.projective:
            return (q ** (self.n + 1) - 1) // (q - 1)
        return q ** self.n


@dataclass(frozen=True)
class PointSet:
    ctx: FieldCtx
    points: tuple[tuple[int, ...], ...]  # element codes, normalized

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt):
        return tuple(pt) in set(self.points)

    def elements(self) -> list[tuple[FqElem, ...]]:
        return [tuple(self.ctx.element(c) for c in p) for p in self.points]

    def columns(self) -> list[np.ndarray]:
        arr = np.array(self.points, dtype=np.int64).reshape(len(self.points), -1)
        return [arr[:, i] for i in range(arr.shape[1])]


def field_for(l: int, k: int = 1) -> FieldCtx:
    return make_prime_field(l) if k == 1 else make_ext_field(l, k)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("MODCURVES_THREADS", "1")))
    except ValueError:
        return 1


# --- enumeration -----------------------------------------------------------------

def _reduce_all(polys: Sequence[MPoly], ctx: FieldCtx) -> list[VecPoly]:
    try:
        return [VecPoly(f, ctx) for f in polys]
    except BadReduction as exc:
        raise BadReduction(f"model does not reduce modulo {ctx.characteristic}: {exc}") from None


def _chunks(model: Model, q: int) -> Iterator[tuple[int, int, int]]:
    """(lead position, start index, stop index) covering all candidates in order."""
    if model.projective:
        for lead in range(model.n + 1):
            total = q ** (model.n - lead)
            for start in range(0, total, CHUNK):
                yield lead, start, min(total, start + CHUNK)
    else:
        total = q ** model.n
        for start in range(0, total, CHUNK):
            yield -1, start, min(total, start + CHUNK)


def _chunk_columns(model: Model, q: int, lead: int, start: int, stop: int) -> list[np.ndarray]:
    idx = np.arange(start, stop, dtype=np.int64)
    size = idx.size
    if lead < 0:
        free, prefix = model.n, []
    else:
        free = model.n - lead
        prefix = [np.zeros(size, dtype=np.int64)] * lead + [np.ones(size, dtype=np.int64)]
    cols = []
    for j in range(free):
        cols.append((idx // q ** (free - 1 - j)) % q)
    return prefix + cols


def _filter_chunk(model, vf, eqs, chunk) -> np.ndarray:
    lead, start, stop = chunk
    cols = _chunk_columns(model, vf.q, lead, start, stop)
    for f in eqs:
        if cols[0].size == 0:
            break
        keep = f(vf, cols) == 0
        cols = [c[keep] for c in cols]
    if not cols:
        return np.zeros((0, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def _run_chunks(model: Model, ctx: FieldCtx, force: bool, threads: Optional[int]):
    q = ctx.order
    if model.candidate_count(q) > CANDIDATE_LIMIT and not force:
        raise TooManyCandidates(
            f"{model.candidate_count(q)} candidates over GF({q}); pass force=True to proceed")
    vf = vec_field(ctx)
    eqs = _reduce_all(model.equations, ctx)
    chunks = list(_chunks(model, q))
    threads = threads or default_threads()
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            yield from pool.map(lambda c: _filter_chunk(model, vf, eqs, c), chunks)
    else:
        for c in chunks:
            yield _filter_chunk(model, vf, eqs, c)


def enumerate_points(model: Model, ctx: FieldCtx, force: bool = False,
                     threads: Optional[int] = None) -> PointSet:
    """All points of the model over ctx, in leading-1-position then lex order."""
    pts: list[tuple[int, ...]] = []
    for block in _run_chunks(model, ctx, force, threads):
        pts.extend(tuple(int(c) for c in row) for row in block)
    return PointSet(ctx, tuple(pts))


def count_points(model: Model, l: int, k: int = 1, force: bool = False,
                 threads: Optional[int] = None) -> int:
    ctx = field_for(l, k)
    return sum(block.shape[0] for block in _run_chunks(model, ctx, force, threads))


def normalize_point(pt: Sequence, ctx: FieldCtx, projective: bool = True) -> tuple[int, ...]:
    """Codes of a point given by rationals, ints or field elements."""
    els = [ctx.coerce(c) for c in pt]
    if projective:
        lead = next((e for e in els if not e.is_zero()), None)
        if lead is None:
            raise DegenerateInput("the zero vector is not a projective point")
        inv = lead.inverse()
        els = [e * inv for e in els]
    return tuple(e.code for e in els)


def weil_bound_ok(count: int, q: int, genus: int) -> bool:
    """|N - (q + 1)| <= 2 g sqrt(q), decided in integers."""
    d = count - (q + 1)
    return d * d <= 4 * genus * genus * q


# --- smoothness ----------------------------------------------------------------

@dataclass
class SmoothnessReport:
    smooth: bool
    expected_rank: int
    checked: int
    witnesses: list[tuple[int, ...]] = field(default_factory=list)


def jacobian_ranks(model: Model, points: PointSet) -> list[int]:
    ctx = points.ctx
    if not len(points):
        return []
    vf = vec_field(ctx)
    jac = [_reduce_all(row, ctx) for row in jacobian_matrix(model.equations)]
    cols = points.columns()
    cache: dict = {}
    vals = [[d(vf, cols, cache) for d in row] for row in jac]
    ranks = []
    for i in range(len(points)):
        mat = [[ctx.element(int(v[i])) for v in row] for row in vals]
        ranks.append(field_rank(mat))
    return ranks


def smoothness_check(model: Model, ctx: FieldCtx, points: Optional[PointSet] = None) -> SmoothnessReport:
    """Curve smoothness: Jacobian rank equals ambient dimension - 1 at every point."""
    pts = points if points is not None else enumerate_points(model, ctx)
    expected = model.n - 1
    ranks = jacobian_ranks(model, pts)
    bad = [p for p, r in zip(pts.points, ranks) if r != expected]
    return SmoothnessReport(not bad, expected, len(pts), bad)


# --- zeta functions -------------------------------------------------------------

@dataclass(frozen=True)
class ZetaData:
    l: int
    genus: int
    counts: tuple[int, ...]
    numerator: tuple[int, ...]  # coefficients of P(T), constant term first

    @property
    def jacobian_order(self) -> int:
        return sum(self.numerator)

    def evaluate(self, t) -> Fraction:
        return sum((Fraction(c) * Fraction(t) ** i for i, c in enumerate(self.numerator)), Fraction(0))

    def functional_equation_holds(self) -> bool:
        g, l, c = self.genus, self.l, self.numerator
        return len(c) == 2 * g + 1 and all(c[2 * g - j] == l ** (g - j) * c[j] for j in range(g + 1))

    def power_sums(self, upto: int) -> list[int]:
        """s_k = sum of alpha_i^k for k = 1..upto, from Newton's identities."""
        c = list(self.numerator) + [0] * max(0, upto + 1 - len(self.numerator))
        s = []
        for k in range(1, upto + 1):
            val = -k * c[k] - sum(s[i - 1] * c[k - i] for i in range(1, k))
            s.append(val)
        return s

    def count_over(self, k: int) -> int:
        return self.l ** k + 1 - self.power_sums(k)[k - 1]

    def jacobian_order_over(self, k: int) -> int:
        """#Jac(F_{l^k}) = prod (1 - alpha_i^k)."""
        sums = self.power_sums(2 * self.genus * k)
        ks = [sums[k * j - 1] for j in range(1, 2 * self.genus + 1)]
        c = [1]
        for n in range(1, 2 * self.genus + 1):
            tot = sum(ks[i - 1] * c[n - i] for i in range(1, n + 1))
            c.append(-tot // n)
        return sum(c)


def zeta_from_counts(l: int, g: int, counts: Sequence[int]) -> ZetaData:
    """P(T) from N_1..N_g via Newton's identities and the functional equation."""
    counts = tuple(int(n) for n in counts)
    if len(counts) < g:
        raise InconsistentCounts(f"need {g} counts, got {len(counts)}")
    counts = counts[:g]
    s = []
    for k, n in enumerate(counts, start=1):
        a = l ** k + 1 - n
        if a * a > 4 * g * g * l ** k:
            raise InconsistentCounts(f"N_{k} = {n} violates the Weil bound over GF({l}^{k})")
        s.append(a)
    c = [1]
    for k in range(1, g + 1):
        tot = sum(s[i - 1] * c[k - i] for i in range(1, k + 1))
        if tot % k:
            raise InconsistentCounts(f"Newton identity gives a non-integral coefficient at T^{k}")
        c.append(-tot // k)
    full = c + [0] * g
    for j in range(g):
        full[2 * g - j] = l ** (g - j) * c[j]
    for j, cj in enumerate(full):
        if cj * cj > math.comb(2 * g, j) ** 2 * l ** j:
            raise InconsistentCounts(f"coefficient of T^{j} exceeds the Weil coefficient bound")
    z = ZetaData(l, g, counts, tuple(full))
    if z.jacobian_order < 1:
        raise InconsistentCounts("P(1) must be positive")
    return z


@dataclass
class ParityAttempt:
    prime: int
    status: str  # "odd", "even", "bad", "excluded"
    order: Optional[int] = None
    counts: tuple[int, ...] = ()
    zeta: Optional[ZetaData] = None


@dataclass
class ParityResult:
    prime: int
    order: int
    zeta: ZetaData
    attempts: list[ParityAttempt]


def probe_prime(model: Model, l: int, excluded: Sequence[int] = (2,)) -> ParityAttempt:
    if l in excluded or any(l == p for p in model.bad_primes_hint):
        return ParityAttempt(l, "excluded")
    g = model.genus
    if g is None:
        raise DegenerateInput("model genus is required for zeta computations")
    counts = []
    for k in range(1, g + 1):
        ctx = field_for(l, k)
        pts = enumerate_points(model, ctx)
        if not smoothness_check(model, ctx, pts).smooth:
            return ParityAttempt(l, "bad")
        counts.append(len(pts))
    z = zeta_from_counts(l, g, counts)
    order = z.jacobian_order
    return ParityAttempt(l, "odd" if order % 2 else "even", order, tuple(counts), z)


def jacobian_parity_probe(model: Model, primes: Sequence[int],
                          excluded: Sequence[int] = (2, 13)) -> ParityResult:
    """First prime with #Jac(F_l) odd; the Jacobian then has no rational 2-torsion."""
    attempts = []
    for l in primes:
        att = probe_prime(model, l, excluded)
        attempts.append(att)
        if att.status == "odd":
            return ParityResult(l, att.order, att.zeta, attempts)
    raise Exhausted(f"no prime in {list(primes)} gives an odd Jacobian order")


# --- maps ------------------------------------------------------------------------

Ratio = tuple[MPoly, MPoly]


@dataclass
class MapReport:
    checked: int
    skipped: int
    violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _map_images(mapping, ctx: FieldCtx, cols) -> tuple[list[np.ndarray], np.ndarray]:
    """Image coordinate arrays and a mask of points where the map is defined."""
    vf = vec_field(ctx)
    cache: dict = {}
    size = cols[0].size
    defined = np.ones(size, dtype=bool)
    images = []
    for comp in mapping:
        if isinstance(comp, tuple):
            num, den = _reduce_all(comp, ctx)
            dv = den(vf, cols, cache)
            defined &= dv != 0
            images.append(vf.mul(num(vf, cols, cache), vf.inv(dv)))
        else:
            images.append(_reduce_all([comp], ctx)[0](vf, cols, cache))
    return images, defined


def verify_map_on_points(source: Model, mapping: Sequence[Union[MPoly, Ratio]], target: Model,
                         ctx: FieldCtx, points: Optional[PointSet] = None) -> MapReport:
    """Evaluate target equations at the image of every source point."""
    if len(mapping) != target.ncoords:
        raise ArityMismatch(f"map has {len(mapping)} components, target needs {target.ncoords}")
    for comp in mapping:
        for f in (comp if isinstance(comp, tuple) else (comp,)):
            if f.nvars != source.ncoords:
                raise ArityMismatch("map components must be polynomials in the source coordinates")
    pts = points if points is not None else enumerate_points(source, ctx)
    if not len(pts):
        return MapReport(0, 0)
    cols = pts.columns()
    images, defined = _map_images(mapping, ctx, cols)
    if target.projective:
        defined &= np.any(np.stack(images) != 0, axis=0)
    vf = vec_field(ctx)
    ok = np.ones(cols[0].size, dtype=bool)
    for f in _reduce_all(target.equations, ctx):
        ok &= f(vf, images) == 0
    bad = [pts.points[i] for i in np.nonzero(defined & ~ok)[0]]
    return MapReport(int(defined.sum()), int((~defined).sum()), bad)


@dataclass
class CoverageReport:
    target_points: int
    uncovered: list[tuple[int, ...]]
    base_points: int

    @property
    def ok(self) -> bool:
        # each uncovered target point needs its own base point of the linear map
        return len(self.uncovered) <= self.base_points


def fibre_coverage(source: Model, mapping: Sequence[MPoly], target: Model, ctx: FieldCtx,
                   points: Optional[PointSet] = None) -> CoverageReport:
    """Do the prime-field points of target all have preimages over ctx?

    For a finite map of degree at most [ctx : F_l], every fibre over an F_l-point
    is nonempty over ctx, unless it sits at a base point of the linear map.
    """
    if not (source.projective and target.projective):
        raise DegenerateInput("fibre coverage needs projective models")
    if len(mapping) != target.ncoords:
        raise ArityMismatch(f"map has {len(mapping)} components, target needs {target.ncoords}")
    pts = points if points is not None else enumerate_points(source, ctx)
    prime = field_for(ctx.characteristic)
    wanted = set(enumerate_points(target, prime).points)  # prime-field codes embed as themselves
    images: set = set()
    base = 0
    if len(pts):
        img, _ = _map_images(mapping, ctx, pts.columns())
        stacked = np.stack(img, axis=1)
        for row in stacked:
            if not row.any():
                base += 1
                continue
            images.add(normalize_point([ctx.element(int(c)) for c in row], ctx))
    return CoverageReport(len(wanted), sorted(wanted - images), base)


HILBERT_PRIME = 2147483629


def ideal_dimension(equations: Sequence[MPoly], degree: int, prime: int = HILBERT_PRIME) -> int:
    """Dimension mod prime of the degree-m part of the ideal of homogeneous equations.

    The rank mod p never exceeds the rank over Q, so a value above the expected
    one is a proof that the equations are wrong.
    """
    if not equations:
        return 0
    variables = equations[0].variables
    index: dict[tuple[int, ...], int] = {}
    rows = []
    for f in equations:
        extra = degree - f.total_degree()
        if extra < 0:
            continue
        for e in monomials(len(variables), extra):
            g = f * MPoly(variables, {e: 1})
            rows.append(g)
            for k in g.terms:
                index.setdefault(k, len(index))
    if not rows:
        return 0
    mat = np.zeros((len(rows), len(index)), dtype=np.int64)
    for i, g in enumerate(rows):
        for k, c in g.terms.items():
            c = Fraction(c)
            mat[i, index[k]] = c.numerator * pow(c.denominator, -1, prime) % prime
    return len(rref_mod_p(mat, prime)[1])


@dataclass
class HilbertReport:
    degree: int
    expected: int
    found: int

    @property
    def ok(self) -> bool:
        return self.found == self.expected


def canonical_hilbert_check(model: Model, degree: int = 3) -> HilbertReport:
    """Compare dim I_m with the canonical-curve value C(m+g-1, g-1) - (2m-1)(g-1)."""
    g = model.genus
    if g is None or not model.projective or model.ncoords != g:
        raise DegenerateInput("needs a canonical model: genus g in P^(g-1)")
    if degree < 2:
        raise ValueError("the canonical Hilbert function is used from degree 2 on")
    expected = math.comb(degree + g - 1, g - 1) - (2 * degree - 1) * (g - 1)
    return HilbertReport(degree, expected, ideal_dimension(list(model.equations), degree))


@dataclass
class MembershipReport:
    degree: int
    generators: int
    member: bool


def pullback_membership(source: Model, mapping: Sequence[MPoly], target: Model) -> MembershipReport:
    """Is each target equation composed with the map in the degree-D part of the source ideal?

    Exact over Q when it succeeds (the combination is checked as a polynomial
    identity); this sees mutations that merely delete points.
    """
    if len(mapping) != target.ncoords:
        raise ArityMismatch(f"map has {len(mapping)} components, target needs {target.ncoords}")
    if not source.projective:
        raise DegenerateInput("pullback membership needs a projective source")
    member = True
    degree = 0
    count = 0
    for eq in target.equations:
        pulled = eq(*mapping)
        if not isinstance(pulled, MPoly):
            pulled = MPoly.const(pulled, source.variables)
        if pulled.is_zero():
            continue
        degree = pulled.total_degree()
        gens = []
        for f in source.equations:
            extra = degree - f.total_degree()
            if extra < 0:
                continue
            for e in monomials(source.ncoords, extra):
                gens.append(f * MPoly(source.variables, {e: 1}))
        count += len(gens)
        member &= linear_combination(pulled, gens) is not None
    return MembershipReport(degree, count, member)


# --- double covers ---------------------------------------------------------------

def double_cover_count(base: Model, q: MPoly, ctx: FieldCtx,
                       points: Optional[PointSet] = None) -> int:
    """Affine points of t^2 = q over the base: sum of 1 + chi(q(P)), chi(0) counted as 0."""
    if base.projective:
        raise DegenerateInput("double_cover_count works on an affine chart")
    if ctx.characteristic == 2:
        raise DegenerateInput("double covers t^2 = q need odd characteristic")
    pts = points if points is not None else enumerate_points(base, ctx)
    if not len(pts):
        return 0
    vf = vec_field(ctx)
    vals = _reduce_all([q.with_variables(base.variables)], ctx)[0](vf, pts.columns())
    squares = vf.is_square(vals)
    return int(np.sum(np.where(vals == 0, 1, np.where(squares, 2, 0))))


def cover_model(base: Model, q: MPoly, t: str = "t", name: Optional[str] = None) -> Model:
    """The affine model base ∪ {t^2 - q} in one more variable."""
    if base.projective:
        raise DegenerateInput("the cover is built over an affine chart")
    variables = tuple(base.variables) + (t,)
    eqs = [f.with_variables(variables) for f in base.equations]
    tv = MPoly.var(t, variables)
    eqs.append(tv * tv - q.with_variables(variables))
    return Model(name or f"{base.name}_cover", "affine", len(variables), tuple(eqs), variables,
                 None, base.bad_primes_hint)


def affine_chart(model: Model, var: str, name: Optional[str] = None) -> Model:
    """Dehomogenize a projective model at var = 1."""
    if not model.projective:
        raise DegenerateInput("already affine")
    rest = tuple(v for v in model.variables if v != var)
    eqs = tuple(f.subs({var: 1}).with_variables(rest) for f in model.equations)
    return Model(name or f"{model.name}_{var}1", "affine", len(rest), eqs, rest,
                 model.genus, model.bad_primes_hint)
