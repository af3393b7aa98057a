from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modcurves import paperdata
from modcurves.coverkit import (
    build_double_cover, clear_denominator, cm_kernel_check, elliptic_point_counts,
    factor_degrees_mod_p, odd_vanishing_check, ramification_locus, squarefree_kernel,
    squarefree_kernel_int, verify_desingularization,
)
from modcurves.errors import (
    BadReduction, CompositeModulus, DegenerateInput, NotCleared, OddClearingExponent, UndefinedValue,
)
from modcurves.ffgeom import double_cover_count, enumerate_points, field_for
from modcurves.polyalg import MPoly, UPoly, squarefree_part

XY = ("x", "y")


def P(text):
    return MPoly.parse(text, XY)


def kernel_oracle(n):
    """Signed squarefree part by plain trial division."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    return sign * out * n


def test_ramification_toy_example():
    rep = ramification_locus(P("y - x"), P("x^2"), P("1"), 0)
    assert rep.resultant == UPoly([0, 0, 1], "y")
    assert rep.simple_part.degree == 0


def test_ramification_shared_component():
    with pytest.raises(DegenerateInput):
        ramification_locus(P("y - x"), P("x^2 - x*y + 5"), P("1"), 5)
    with pytest.raises(DegenerateInput):
        ramification_locus(P("y - x"), P("x"), P("y - x"), 0)


@pytest.mark.parametrize("case", ["split", "nonsplit"])
def test_ramification_recovers_stored_sextic(case):
    base = paperdata.affine_quartic()
    q = paperdata.load(f"q_{case}")
    sextic = paperdata.load(f"sextic_{case}")
    rep = ramification_locus(base, q, MPoly.const(1, XY), 0, eliminate="y")
    assert rep.simple_part.monic() == sextic.monic()
    # the simple part divides the squarefree part of the resultant
    _, rem = squarefree_part(rep.resultant).divmod(rep.simple_part)
    assert rem.is_zero()
    assert factor_degrees_mod_p(sextic, 5) == [6]


def test_factor_degrees_oracle():
    f = UPoly.parse("(x^2 + 1)*(x - 3)*(x^3 + x + 1)")
    assert factor_degrees_mod_p(f, 7) == [1, 2, 3]
    assert factor_degrees_mod_p(UPoly.parse("(x - 1)^2"), 7) is None


def test_build_double_cover_from_f():
    base = paperdata.affine_base_model()
    for case in ("split", "nonsplit"):
        cover = build_double_cover(base, paperdata.load(f"f_{case}"), 4)
        assert cover.q == paperdata.load(f"q_{case}")
        assert cover.cover.equations[0] == base.equations[0].with_variables(cover.cover.variables)
        t = cover.cover.variables[-1]
        tv = MPoly.var(t, cover.cover.variables)
        assert cover.cover.equations[1] == tv * tv - cover.q.with_variables(cover.cover.variables)
    f = P("x^2 + y")
    assert clear_denominator(f, 0) == f


def test_clear_denominator_errors():
    with pytest.raises(OddClearingExponent):
        clear_denominator(P("x"), 3)
    with pytest.raises(NotCleared):
        clear_denominator((P("x"), P("y^6")), 4)
    with pytest.raises(NotCleared):
        clear_denominator((P("x"), P("x + y")), 4)


@pytest.mark.parametrize("case,l", [("split", 3), ("split", 5), ("nonsplit", 5), ("nonsplit", 7)])
def test_cover_count_ties_to_enumeration(case, l):
    base = paperdata.affine_base_model()
    cover = build_double_cover(base, paperdata.load(f"f_{case}"), 4)
    ctx = field_for(l)
    assert double_cover_count(base, cover.q, ctx) == len(enumerate_points(cover.cover, ctx))


def test_cm_examples():
    qs, qns = paperdata.load("q_split"), paperdata.load("q_nonsplit")
    assert cm_kernel_check(qs, (0, 0), -3)
    assert cm_kernel_check(qs, (0, Fraction(3, 2)), -3)
    assert cm_kernel_check(qns, (-1, 0), -7)
    assert cm_kernel_check(qns, (0, Fraction(3, 2)), -163)
    assert not cm_kernel_check(qns, (0, Fraction(3, 2)), -7)
    with pytest.raises(UndefinedValue):
        cm_kernel_check(P("x"), (0, 1), -3)
    with pytest.raises(UndefinedValue):
        cm_kernel_check((P("1"), P("y")), (0, 0), -3)


@settings(deadline=None)
@given(st.integers(-10 ** 7, 10 ** 7).filter(bool))
def test_kernel_matches_trial_division(n):
    assert squarefree_kernel_int(n) == kernel_oracle(n)


@settings(deadline=None)
@given(st.integers(-1000, 1000).filter(bool), st.integers(1, 1000),
       st.fractions(min_value=-10 ** 4, max_value=10 ** 4, max_denominator=10 ** 4).filter(bool))
def test_kernel_invariant_under_squares(num, den, r):
    v = Fraction(num, den)
    assert squarefree_kernel(v * r * r) == squarefree_kernel(v)
    q = MPoly.const(v * r * r, XY)
    assert cm_kernel_check(q, (0, 0), squarefree_kernel(v))


def test_elliptic_examples():
    assert elliptic_point_counts(13, 1).as_tuple() == (2, 2, 7, 1)
    assert elliptic_point_counts(3, 1).as_tuple() == (0, 0, 2, 0)
    assert elliptic_point_counts(2, 3).e2_plus == 4
    with pytest.raises(CompositeModulus):
        elliptic_point_counts(15, 1)


@given(st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 61, 73, 97]), st.integers(1, 4))
def test_elliptic_branches(p, r):
    c = elliptic_point_counts(p, r)
    assert min(c.as_tuple()) >= 0
    assert c.e2_split in (0, 2) and c.e3_split in (0, 2)
    if p % 12 == 1:
        assert c.e2_plus >= 1 and c.e3_plus == 1


@pytest.mark.parametrize("case,ext", [("split", (7, 2)), ("nonsplit", (7, 2)), ("nonsplit", (7, 1))])
def test_odd_vanishing_matches(case, ext):
    cover = build_double_cover(paperdata.affine_base_model(), paperdata.load(f"f_{case}"), 4)
    rep = odd_vanishing_check(cover, paperdata.load(f"sextic_{case}"), field_for(*ext))
    assert rep.roots and rep.matched


def test_odd_vanishing_mutation_and_bad_reduction():
    base = paperdata.affine_base_model()
    sextic = paperdata.load("sextic_nonsplit")
    wrong = build_double_cover(base, paperdata.load("q_nonsplit") + 1, 0)
    rep = odd_vanishing_check(wrong, sextic, field_for(7, 2))
    assert not rep.matched
    cover = build_double_cover(base, paperdata.load("f_split"), 4)
    with pytest.raises(BadReduction):
        odd_vanishing_check(cover, paperdata.load("sextic_split"), field_for(3))


@pytest.mark.parametrize("case", ["split", "nonsplit"])
def test_desingularization_lift(case):
    model = paperdata.load(f"{case}_model")
    pi = paperdata.load(f"pi_{case}")
    s_num, s_den = paperdata.load(f"s_{case}")
    cover = build_double_cover(paperdata.affine_base_model(), paperdata.load(f"f_{case}"), 4)
    for l, k in ((5, 1), (3, 2)):
        rep = verify_desingularization(model, pi, s_num, s_den, cover, field_for(l, k))
        assert rep.ok and rep.checked > 0
        flipped = verify_desingularization(model, pi, -s_num, s_den, cover, field_for(l, k))
        assert flipped.ok and flipped.checked == rep.checked


def test_desingularization_detects_wrong_s():
    model = paperdata.load("split_model")
    pi = paperdata.load("pi_split")
    s_num, s_den = paperdata.load("s_split")
    cover = build_double_cover(paperdata.affine_base_model(), paperdata.load("f_split"), 4)
    rep = verify_desingularization(model, pi, s_num + s_den, s_den, cover, field_for(3, 2))
    assert rep.checked > 0 and not rep.ok
