import random
from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from modcurves.errors import DependentInput, EmptyBasis, NoRelationFound, PrecisionTooLow
from modcurves.polyalg import MPoly
from modcurves.qseries import QSeries, series_inv
from modcurves.relfinder import (
    LOVASZ_DELTA, PrecisionGuard, find_relations, gram_determinant, is_lll_reduced,
    linear_combination, lll_reduce, nullspace_exact, nullspace_modular,
    recognize_rational_function, substitute, verify_relation,
)

PREC = 40


def poly_series(coeffs, prec=PREC):
    return QSeries.from_coeffs(coeffs, precision=prec)


def t_power(k, prec=PREC):
    return QSeries.monomial(Fraction(1), k, prec)


def random_series(rng, prec=PREC):
    return QSeries.from_coeffs([Fraction(rng.randint(-9, 9)) for _ in range(prec)])


def solve_exact(rows, rhs):
    """x with x * rows = rhs over Q, or None (Gauss-Jordan on the transpose)."""
    n = len(rows)
    m = len(rhs)
    aug = [[Fraction(rows[i][j]) for i in range(n)] + [Fraction(rhs[j])] for j in range(m)]
    piv_cols, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        aug[r] = [a / aug[r][c] for a in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                t = aug[i][c]
                aug[i] = [a - t * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(all(a == 0 for a in row[:n]) and row[n] != 0 for row in aug):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


def det(m):
    m = [[Fraction(c) for c in row] for row in m]
    n, d = len(m), Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            t = m[i][c] / m[c][c]
            m[i] = [a - t * b for a, b in zip(m[i], m[c])]
    return d


def test_veronese_relation():
    rb = find_relations([t_power(0), t_power(1), t_power(2)], 2, g_curve=2)
    assert rb.certified
    (F,) = rb.polynomials()
    expected = MPoly.parse("x1*x3 - x2^2", ("x1", "x2", "x3"))
    assert F == expected or F == -expected
    check = verify_relation(F, [t_power(0), t_power(1), t_power(2)], g_curve=2)
    assert check.certified and check.identically_zero


def test_circle_relation():
    den = series_inv(poly_series([1, 0, 1]))
    a = poly_series([1, 0, -1]) * den
    b = poly_series([0, 2]) * den
    one = t_power(0, a.precision)
    rb = find_relations([a, b, one], 2, g_curve=2)
    (F,) = rb.polynomials()
    expected = MPoly.parse("x1^2 + x2^2 - x3^2", ("x1", "x2", "x3"))
    assert F == expected or F == -expected
    assert substitute(F, [a, b, one]).is_zero()


def test_generic_series_have_no_linear_relation():
    rng = random.Random(1)
    with pytest.raises(EmptyBasis):
        find_relations([random_series(rng) for _ in range(4)], 1, g_curve=2)


def test_precision_guard_rejects_low_precision():
    # genus 8, degree 2 needs coefficients through q^29
    basis = [t_power(0, 29), t_power(1, 29), t_power(2, 29)]
    rb = find_relations(basis, 2, g_curve=8)
    assert not rb.certified
    with pytest.raises(PrecisionTooLow):
        find_relations(basis, 2, g_curve=8, require_certified=True)
    basis = [t_power(0, 30), t_power(1, 30), t_power(2, 30)]
    assert find_relations(basis, 2, g_curve=8).certified


def test_verify_relation_nonzero():
    F = MPoly.parse("x1 - x2", ("x1", "x2"))
    check = verify_relation(F, [t_power(0), t_power(1)], g_curve=2)
    assert not check.identically_zero and not check.certified
    assert check.vanishing_order == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_planted_relations_are_found(seed, extra):
    rng = random.Random(seed)
    h = [random_series(rng) for _ in range(2)]
    # third series planted as a quadratic combination of the first two
    c = [rng.randint(-3, 3) for _ in range(3)]
    planted = h[0] * h[0] * c[0] + h[0] * h[1] * c[1] + h[1] * h[1] * c[2] + t_power(0) * extra
    series = [t_power(0), h[0], h[1], planted]
    rb = find_relations(series, 2, bound=5)
    names = ("x1", "x2", "x3", "x4")
    G = MPoly.parse(f"{c[0]}*x2^2 + {c[1]}*x2*x3 + {c[2]}*x3^2 + {extra}*x1^2 - x1*x4", names)
    vec = [G.terms.get(e, 0) for e in rb.monomials]
    assert solve_exact(rb.vectors, vec) is not None
    for F in rb.polynomials():
        assert substitute(F, series).is_zero()
    for v in rb.vectors:
        g = 0
        for x in v:
            g = gcd(g, x)
        assert g == 1


def test_lll_identity_and_orthogonal():
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert sorted(map(tuple, lll_reduce(eye))) == sorted(map(tuple, eye))
    orth = [[3, 0, 0], [0, 0, 2], [0, 5, 0]]
    out = lll_reduce(orth)
    assert sorted(tuple(abs(c) for c in v) for v in out) == sorted(map(tuple, orth))
    with pytest.raises(DependentInput):
        lll_reduce([[1, 2], [2, 4]])


def shortest_norm_oracle(basis, box=2):
    best = None
    for coeffs in product(range(-box, box + 1), repeat=len(basis)):
        if any(coeffs):
            v = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(len(basis[0]))]
            n = sum(x * x for x in v)
            best = n if best is None else min(best, n)
    return best


@pytest.mark.parametrize("seed", range(5))
def test_lll_finds_planted_short_vector(seed):
    rng = random.Random(seed)
    short = [1, 0, -1, 1, 0]
    base = [short] + [[rng.randint(-60, 60) for _ in range(5)] for _ in range(4)]
    assert det(base) != 0
    # disguise with a random unimodular transform
    mixed = [row[:] for row in base]
    for _ in range(12):
        i, j = rng.sample(range(5), 2)
        k = rng.randint(-3, 3)
        mixed[i] = [a + k * b for a, b in zip(mixed[i], mixed[j])]
    out = lll_reduce(mixed)
    oracle = shortest_norm_oracle(base)
    assert min(sum(x * x for x in v) for v in out) == oracle == 3


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=4, max_size=4), min_size=3, max_size=4))
def test_lll_preserves_lattice(rows):
    try:
        out = lll_reduce(rows)
    except DependentInput:
        return
    assert is_lll_reduced(out, LOVASZ_DELTA)
    assert gram_determinant(out) == gram_determinant(rows)
    # change of basis from input to output is integral and unimodular
    T = [solve_exact(rows, v) for v in out]
    assert all(x is not None and x.denominator == 1 for row in T for x in row)
    assert abs(det(T)) == 1


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(1, 5))
def test_guard_monotone(bound, avail, extra, degree):
    g1 = PrecisionGuard.with_bound(bound, degree, avail)
    g2 = PrecisionGuard.with_bound(bound, degree, avail + extra)
    assert not g1.certified or g2.certified
    f1 = PrecisionGuard.for_forms(8, degree, avail)
    f2 = PrecisionGuard.for_forms(8, degree, avail + extra)
    assert not f1.certified or f2.certified
    assert f1.certified == (avail > 14 * degree)


def test_recognize_ratio():
    rng = random.Random(7)
    h1 = random_series(rng)
    h2 = t_power(0) + random_series(rng) * t_power(1)
    target = h1 * series_inv(h2)
    p, q = recognize_rational_function(target, [h1, h2], 1, bound=10)
    names = ("x1", "x2")
    assert p == MPoly.parse("x1", names) and q == MPoly.parse("x2", names)


def test_recognize_polynomial():
    rng = random.Random(8)
    h1, h2 = random_series(rng), random_series(rng)
    target = h1 * h1 + h2
    p, q = recognize_rational_function(target, [h1, h2], 2, bound=20)
    names = ("x1", "x2")
    assert p == MPoly.parse("x1^2 + x2", names) and q == MPoly.parse("1", names)
    lhs = substitute(p, [h1, h2])
    assert (lhs - target * substitute(q, [h1, h2])).is_zero()


def test_recognize_failures():
    rng = random.Random(9)
    h = [random_series(rng) for _ in range(2)]
    with pytest.raises(NoRelationFound):
        recognize_rational_function(random_series(rng), h, 1, bound=10)
    with pytest.raises(PrecisionTooLow):
        recognize_rational_function(random_series(rng), h, 3, g_curve=8)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(3, 8), st.integers(4, 12))
def test_modular_nullspace_agrees_with_exact(seed, nrows, ncols):
    rng = random.Random(seed)
    rows = [[rng.randint(-40, 40) for _ in range(ncols)] for _ in range(nrows)]
    a = nullspace_exact(rows, ncols)
    b = nullspace_modular(rows, ncols)
    assert len(a) == len(b)
    for v in b:
        assert all(sum(r[i] * v[i] for i in range(ncols)) == 0 for r in rows)
        if a:
            assert solve_exact(a, v) is not None


def test_linear_combination():
    names = ("x", "y")
    gens = [MPoly.parse(t, names) for t in ("x^2 - y", "x*y + 3", "y^2")]
    target = gens[0] * Fraction(2) - gens[1] * Fraction(3, 2) + gens[2] * 7
    coeffs = linear_combination(target, gens)
    assert coeffs == [Fraction(2), Fraction(-3, 2), Fraction(7)]
    assert linear_combination(MPoly.parse("x", names), gens) is None
