import pytest
from hypothesis import given, settings, strategies as st

from psikit.errors import (DuplicateName, ImageNotContained, MalformedRelation, RelationNotPreserved)
from psikit.finring import build_finite
from psikit.kernel import QQ
from psikit.psi import verify_prime
from psikit.rings import (base_ring, compose, contract_ideal, ideal, identity, idealization, localize,
                          localize_construction, make_algebra, make_module, make_morphism,
                          polynomial_extension, prime, product_construction, quotient_construction,
                          structure_map, tensor_over)

ZZ_ = base_ring("ZZ")
QQ_ = base_ring("QQ")


def zi():
    return make_algebra("ZZ", ["i"], ["i^2 + 1"])


def same_ideal(A, gens1, gens2):
    return ideal(A, *gens1).same_ideal(ideal(A, *gens2))


def test_make_algebra():
    A = make_algebra("ZZ", ["x"], ["x^2 - 17"])
    assert str(A) == "ZZ[x] / (x^2 - 17)"
    B = make_algebra("ZZ", ["w"], ["w^2 - w - 4"])
    assert B.contains("w^2 - w - 4") and not B.is_zero
    Q = make_algebra("QQ")
    assert Q.is_base() and str(Q) == "QQ"
    assert make_algebra("ZZ", ["x"], ["1"]).is_zero
    with pytest.raises(DuplicateName):
        make_algebra("ZZ", ["x", "x"], [])
    with pytest.raises(MalformedRelation):
        make_algebra("ZZ", ["x"], ["x +* 2"])


def test_make_morphism():
    A = make_algebra("ZZ", ["x"], ["x^2 - 17"])
    B = make_algebra("ZZ", ["w"], ["w^2 - w - 4"])
    u = make_morphism(A, B, ["2*w - 1"])
    # (2w - 1)^2 - 17 = 4(w^2 - w - 4)
    assert u.apply("x^2 - 17").is_zero()
    assert structure_map(zi()).source.is_base()
    D = make_algebra("ZZ", ["x"], ["x^2"])
    with pytest.raises(RelationNotPreserved):
        make_morphism(D, ZZ_, ["1"])


def test_compose():
    u = structure_map(zi())
    assert compose(identity(u.source), u) == u
    Qi = make_algebra("QQ", ["i"], ["i^2 + 1"])
    w = compose(make_morphism(ZZ_, QQ_, []), structure_map(Qi))
    assert w.source == ZZ_ and w.target == Qi
    X = make_algebra("QQ", ["x"])
    Y = make_algebra("QQ", ["y"])
    Z = make_algebra("QQ", ["z"])
    c = compose(make_morphism(X, Y, ["y^2"]), make_morphism(Y, Z, ["z + 1"]))
    assert c.images[0] == Z.poly("(z + 1)^2")


def test_quotient_construction():
    u = structure_map(zi())
    q = quotient_construction(u, ideal(u.source, 5), ideal(u.target, 5))
    assert build_finite(q.source).size == 5 and build_finite(q.target).size == 25
    same = quotient_construction(u, ideal(u.source), ideal(u.target))
    assert same.source.gb.basis == u.source.gb.basis and same.target.gb.basis == u.target.gb.basis
    with pytest.raises(ImageNotContained):
        quotient_construction(identity(ZZ_), ideal(ZZ_, 2), ideal(ZZ_, 3))


def test_localize():
    h = localize(ZZ_, 2)
    T = h.target
    assert T.nvars == 1 and T.contains(f"2*{T.gens[0]} - 1")
    one = localize(ZZ_, 1)
    assert one.target.contains(f"{one.target.gens[0]} - 1")
    u = structure_map(zi())
    lu = localize_construction(u, 5)
    y = lu.source.gens[-1]
    assert lu.apply(f"5*{y}").is_zero() is False
    assert lu.target.contains(lu.target.poly(5) * lu.apply(y) - 1)


def test_tensor():
    u = structure_map(zi())
    t = tensor_over(u, u)
    assert t.algebra.nvars == 2 and len(t.diagonal_kernel) == 1
    q = make_morphism(ZZ_, QQ_, [])
    tq = tensor_over(q, u)
    assert tq.algebra.base == QQ and tq.algebra.nvars == 1
    assert tensor_over(identity(ZZ_), identity(ZZ_)).diagonal_kernel == ()


def test_tensor_symmetric():
    u = structure_map(zi())
    v = structure_map(make_algebra("ZZ", ["s"], ["s^2 - 2"]))
    a, b = tensor_over(u, v).algebra, tensor_over(v, u).algebra
    assert sorted(a.gens) == sorted(b.gens)
    swapped = [b.poly(r.to_str(a.gens)) for r in a.relations]
    assert same_ideal(b, swapped, b.relations)


def test_product():
    h = localize(ZZ_, 2)
    q = make_morphism(ZZ_, base_ring("Fp(2)"), [])
    P = product_construction(h.target, q.target, h, q)
    assert compose(P.diagonal, P.proj_left).apply(3) == h.apply(3)
    assert compose(P.diagonal, P.proj_right).apply(3) == compose(P.diagonal, P.proj_right).target.poly(1)
    F2 = base_ring("Fp(2)")
    P2 = product_construction(F2, F2)
    R = build_finite(P2.algebra)
    assert R.size == 4 and sum(1 for e in range(4) if R.mul[e, e] == e) == 4
    Z = make_algebra("ZZ", [], ["1"])
    PB = product_construction(zi(), Z)
    assert build_finite(quotient_construction(
        identity(PB.algebra), ideal(PB.algebra), ideal(PB.algebra, 3)).target).size == 9


def test_idealization():
    M = make_module(ZZ_, ["m"], ["3*m"])
    D = idealization(M).target
    assert same_ideal(D, D.relations, ["3*m", "m^2"])
    assert idealization(make_module(ZZ_, [], [])).target == ZZ_
    dual = idealization(make_module(QQ_, ["m"], [])).target
    assert dual.contains("m^2") and not dual.contains("m")


def test_polynomial_extension():
    u = polynomial_extension(structure_map(zi()))
    assert str(u.source) == "ZZ[X]" and u.target.contains("i^2 + 1")
    idx = polynomial_extension(identity(zi()))
    assert idx.source == idx.target
    v = polynomial_extension(structure_map(make_algebra("QQ", ["i"], ["i^2 + 1"])))
    assert str(v.source) == "QQ[X]"


def test_contract_ideal():
    u = structure_map(zi())
    assert str(contract_ideal(u, ideal(u.target, "2 + i"))) == "(5)"
    assert contract_ideal(u, ideal(u.target, "1 + i")).same_ideal(ideal(ZZ_, 2))
    assert contract_ideal(u, ideal(u.target)).same_ideal(ideal(ZZ_))


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 40), st.integers(-3, 3))
def test_contraction_of_prime_is_prime(p, a):
    from psikit.kernel.domains import is_prime
    if not is_prime(p):
        return
    u = structure_map(zi())
    # primes of ZZ[i] over p: any prime containing p and a factor of i^2 + 1 mod p
    Q = prime(u.target, p, f"i - ({a})") if (a * a + 1) % p == 0 else prime(u.target, p)
    try:
        verify_prime(u.target, Q)
    except Exception:
        return
    c = contract_ideal(u, Q)
    assert c.is_proper() and c.same_ideal(ideal(ZZ_, p))


@settings(max_examples=20, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_compose_stays_valid(a, b):
    X = make_algebra("ZZ", ["x"], ["x^2 + 1"])
    Y = make_algebra("ZZ", ["y"], ["y^2 + 1"])
    Z = make_algebra("ZZ", ["z"], ["z^2 + 1"])
    u = make_morphism(X, Y, ["-y"] if a % 2 else ["y"])
    v = make_morphism(Y, Z, [f"z^{1 + 2 * (b % 2)}"])
    w = compose(u, v)
    assert make_morphism(w.source, w.target, list(w.images)) == w


def test_idealization_square_zero():
    A = make_algebra("ZZ", ["t"])
    M = make_module(A, ["m", "n"], ["t*m - 2*n"])
    D = idealization(M).target
    for g in ("m", "n", "m*n"):
        assert D.contains(f"({g})^2")
