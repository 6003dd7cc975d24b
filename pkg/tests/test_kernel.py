import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from psikit.errors import ResourceLimit
from psikit.kernel import (GF, INFINITE, QQ, ZZ, Field, NotField, Poly, Zero, classify_artinian_quotient,
                           eliminate, groebner, limits, min_poly, normal_form, parse_poly, quotient_basis,
                           saturate, univ_factor)
from psikit.kernel.domains import is_prime, prime_factors

XY = ["x", "y"]


def P(text, names=XY, dom=QQ):
    return parse_poly(text, names, dom)


def basis_strs(gb, names=XY):
    return sorted(g.to_str(names) for g in gb.basis)


def test_domains():
    assert QQ.convert(Fraction(6, 4)) == Fraction(3, 2)
    assert GF(7).convert(-1) == 6
    assert [p for p in range(30) if is_prime(p)] == list(sympy.primerange(30))
    assert prime_factors(360) == [2, 3, 5]
    with pytest.raises(ValueError):
        GF(6)


# groebner ---------------------------------------------------------------

def test_groebner_principal():
    assert basis_strs(groebner([P("x")])) == ["x"]


def test_groebner_gcd_against_sympy():
    gb = groebner([P("x^2 - 1"), P("x - 1")])
    x = sympy.symbols("x")
    assert sympy.gcd(x**2 - 1, x - 1) == x - 1
    assert basis_strs(gb) == ["x - 1"]


def test_groebner_over_integers_finds_x():
    gb = groebner([P("2*x", dom=ZZ), P("3*x", dom=ZZ)])
    assert gb.contains(P("x", dom=ZZ))
    assert basis_strs(gb) == ["x"]


def test_groebner_strong_integer_basis():
    # (2, x^2 + 1) and the integer generator
    gb = groebner([P("x^2 + 1", dom=ZZ), P("2", dom=ZZ)])
    assert gb.integer_generator() == 2
    assert not gb.contains(P("x + 1", dom=ZZ))
    assert gb.contains(P("(x + 1)^2", dom=ZZ))


def test_resource_limit():
    with limits(max_degree=3):
        with pytest.raises(ResourceLimit):
            groebner([P("x^5 - y"), P("y^4 - x")])


def test_normal_form():
    gb = groebner([P("x - 1")])
    assert normal_form(P("x^2 - 1"), gb).is_zero()
    assert normal_form(P("x + 1"), gb) == P("2")
    gz = groebner([P("2*x", dom=ZZ)])
    assert normal_form(P("x", dom=ZZ), gz) == P("x", dom=ZZ)


def test_eliminate():
    assert eliminate([P("x - y")], [1]) == []
    out = eliminate([P("x^2 - 2"), P("y - x")], [1])
    assert [g.to_str(XY) for g in out] == ["y^2 - 2"]
    assert [g.to_str(XY) for g in eliminate([P("x*y - 1"), P("x")], [1])] == ["1"]


def test_saturate():
    assert [g.to_str(XY) for g in saturate([P("x*y")], P("x"))] == ["y"]
    assert [g.to_str(XY) for g in saturate([P("x^2")], P("x"))] == ["1"]
    out = saturate([P("3*y", dom=ZZ)], P("3", dom=ZZ))
    assert [g.to_str(XY) for g in out] == ["y"]


def test_quotient_basis():
    b = quotient_basis(groebner([P("x^2 + 1", ["x"])]))
    assert len(b) == 2
    assert len(quotient_basis(groebner([P("x - 5", ["x"])]))) == 1
    assert quotient_basis(groebner([P("x*y")])) is INFINITE


def test_min_poly():
    t = ["t"]
    assert min_poly(P("x", ["x"]), [P("x^2 + 1", ["x"])]).to_str(t) == "t^2 + 1"
    assert min_poly(P("x + 1", ["x"]), [P("x^2", ["x"])]).to_str(t) == "t^2 - 2*t + 1"
    assert min_poly(P("1", ["x"]), [P("x^3 - 2", ["x"])]).to_str(t) == "t - 1"


def test_univ_factor_examples():
    x = ["x"]
    _, facs = univ_factor(P("x^2 + 1", x, GF(5)), GF(5))
    assert {f for f, _ in facs} == {P("x + 2", x, GF(5)), P("x + 3", x, GF(5))}
    _, facs = univ_factor(P("x^2 + 1", x), QQ)
    assert [(f.to_str(x), m) for f, m in facs] == [("x^2 + 1", 1)]
    _, facs = univ_factor(P("x^2 - 1", x), QQ)
    assert sorted(f.to_str(x) for f, _ in facs) == ["x + 1", "x - 1"]


def test_classify_examples():
    x = ["x"]
    assert isinstance(classify_artinian_quotient([P("x^2 + 1", x)]), Field)
    assert classify_artinian_quotient([P("x^2 + 1", x)]).dim == 2
    r = classify_artinian_quotient([P("x^2 - 1", x)])
    assert isinstance(r, NotField) and r.witness.kind == "idempotent"
    r = classify_artinian_quotient([P("x^2", x)])
    assert r.witness.kind == "nilpotent" and r.witness.element == P("x", x)
    r = classify_artinian_quotient([P("x^2 + 1", x, GF(5))])
    assert isinstance(r, NotField)
    a, b = r.witness.zero_divisors
    gb = groebner([P("x^2 + 1", x, GF(5))])
    assert gb.reduce(a * b).is_zero() and not gb.reduce(a).is_zero()
    assert isinstance(classify_artinian_quotient([P("1", x)]), Zero)


def test_classify_tiny_field_fallback():
    # F2[x, y]/(x^2 + x, y^2 + y) is F2^4; F2[x]/(x^2 + x + 1) is F4
    r = classify_artinian_quotient([P("x^2 + x", dom=GF(2)), P("y^2 + y", dom=GF(2))], random.Random(1))
    assert isinstance(r, NotField)
    f4 = classify_artinian_quotient([P("x^2 + x + 1", dom=GF(2)), P("y - x", dom=GF(2))], random.Random(1))
    assert isinstance(f4, Field) and f4.dim == 2


# properties -------------------------------------------------------------

coef = st.integers(-3, 3)
mono = st.tuples(st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(mono, coef, min_size=1, max_size=3).map(lambda d: Poly(d, 2, QQ))
gen_lists = st.lists(polys, min_size=1, max_size=3)


def to_sympy(f: Poly):
    x, y = sympy.symbols("x y")
    return sum(sympy.Rational(c.numerator, c.denominator) * x**e[0] * y**e[1] for e, c in f.terms.items())


@settings(max_examples=40, deadline=None)
@given(gen_lists)
def test_groebner_matches_sympy(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    ours = groebner(gens)
    x, y = sympy.symbols("x y")
    ref = sympy.groebner([to_sympy(g) for g in gens], x, y, order="grevlex", domain="QQ")
    # both are reduced and monic, hence identical
    assert {sympy.expand(to_sympy(g)) for g in ours.basis} == {sympy.expand(e) for e in ref.exprs}


@settings(max_examples=40, deadline=None)
@given(gen_lists, polys, polys)
def test_membership_and_idempotence(gens, a, b):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = groebner(gens)
    combo = gens[0] * a + gens[-1] * b
    assert normal_form(combo, gb).is_zero()
    assert groebner(gb.basis).basis == gb.basis


@settings(max_examples=25, deadline=None)
@given(gen_lists, polys)
def test_saturation_fixpoint(gens, f):
    gens = [g for g in gens if not g.is_zero()]
    if not gens or f.is_zero():
        return
    once = saturate(gens, f)
    twice = saturate(once, f)
    g1, g2 = groebner(once), groebner(twice)
    assert all(g2.contains(g) for g in g1.basis) and all(g1.contains(g) for g in g2.basis)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=7), st.sampled_from([2, 3, 5, 7, 0]))
def test_factor_product(cs, p):
    dom = QQ if p == 0 else GF(p)
    f = Poly({(i,): c for i, c in enumerate(cs)}, 1, dom)
    if f.total_degree() < 1:
        return
    lc, facs = univ_factor(f, dom)
    prod = Poly.const(lc, 1, dom)
    for g, m in facs:
        prod = prod * g ** m
        _, again = univ_factor(g, dom)
        assert len(again) == 1 and again[0][1] == 1
    assert prod == f
    if p == 0:
        x = sympy.symbols("x")
        ref = sympy.factor_list(sum(c * x**i for i, c in enumerate(cs)))
        assert sum(m for _, m in ref[1]) == sum(m for _, m in facs)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=5), st.sampled_from([3, 5, 7, 0]))
def test_classification_certificates(cs, p):
    dom = QQ if p == 0 else GF(p)
    cs[-1] = 1
    f = Poly({(i,): c for i, c in enumerate(cs)}, 1, dom)
    gb = groebner([f])
    r = classify_artinian_quotient(gb, random.Random(0))
    rng = random.Random(1)
    from psikit.kernel.zerodim import QuotientAlgebra
    alg = QuotientAlgebra(gb)
    if isinstance(r, Field):
        for _ in range(32):
            a = alg.from_coords([dom.convert(rng.randint(-9, 9)) for _ in range(alg.dim)])
            if alg.is_zero(a):
                continue
            inv = alg.inverse(a)
            assert inv is not None and alg.mul(a, inv) == alg.nf(Poly.one(1, dom))
    else:
        w = r.witness
        if w.kind == "nilpotent":
            assert alg.is_zero(alg.power(w.element, w.exponent)) and not alg.is_zero(w.element)
        else:
            e = alg.nf(w.element)
            assert alg.mul(e, e) == e and not alg.is_zero(e) and e != alg.nf(Poly.one(1, dom))
