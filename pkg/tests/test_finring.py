import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psikit.errors import NotARing, TooLarge
from psikit.finring import (a_primes_finite, bruteforce_status, build_finite, contract, enumerate_ideals,
                            fiber_psi_finite, finite_morphism, ideal_generated, is_prime_ideal_finite,
                            prime_ideals, random_instance, random_map_from, ring_from_tables)
from psikit.rings import contract_ideal, ideal, identity, make_algebra, make_morphism, quotient_construction

F2xF2 = make_algebra("ZZ", ["x"], [2, "x^2 + x"])
F4 = make_algebra("ZZ", ["x"], [2, "x^2 + x + 1"])
Z4 = make_algebra("ZZ", [], [4])
Z2 = make_algebra("ZZ", [], [2])


def naive_a_primes(u):
    """Oracle straight from the A-prime condition, looping over every a and b."""
    B = u.target
    out = []
    for I in enumerate_ideals(B):
        if len(I) == B.size:
            continue
        ok = all(not (B.mul[u.phi[a], b] in I) or u.phi[a] in I or b in I
                 for a in range(u.source.size) for b in range(B.size))
        if ok:
            out.append(I)
    return sorted(out, key=sorted)


def naive_is_prime(R, I):
    return len(I) < R.size and all(R.mul[a, b] not in I or a in I or b in I
                                   for a in range(R.size) for b in range(R.size))


def test_build_finite():
    R = build_finite(F2xF2)
    assert R.size == 4 and R.characteristic == 2
    assert sum(1 for e in range(4) if R.mul[e, e] == e) == 4
    assert build_finite(Z4).size == 4 and build_finite(Z4).characteristic == 4
    K = build_finite(F4)
    assert K.size == 4 and all(any(K.mul[a, b] == K.one for b in range(4)) for a in range(4) if a != K.zero)
    with pytest.raises(TooLarge):
        build_finite(make_algebra("ZZ", ["x", "y"], [7, "x^3", "y^3"]), bound=100)


def test_ring_from_tables():
    add = np.array([[(a + b) % 3 for b in range(3)] for a in range(3)])
    mul = np.array([[(a * b) % 3 for b in range(3)] for a in range(3)])
    assert ring_from_tables(add, mul).size == 3
    bad = mul.copy()
    bad[1, 2] = 0
    with pytest.raises(NotARing):
        ring_from_tables(add, bad)


def test_enumerate_ideals():
    assert len(enumerate_ideals(build_finite(F2xF2))) == 4
    assert len(enumerate_ideals(build_finite(F4))) == 2
    R = build_finite(Z4)
    two = R.element(2)
    assert sorted(len(I) for I in enumerate_ideals(R)) == [1, 2, 4]
    assert ideal_generated(R, [two]) in enumerate_ideals(R)


def test_prime_ideals():
    R = build_finite(F2xF2)
    assert not is_prime_ideal_finite(R, frozenset([R.zero]))
    Z = build_finite(Z4)
    assert is_prime_ideal_finite(Z, ideal_generated(Z, [Z.element(2)]))
    K = build_finite(F4)
    assert is_prime_ideal_finite(K, frozenset([K.zero]))


def test_a_primes():
    diag = finite_morphism(make_morphism(Z2, F2xF2, []))
    aps = a_primes_finite(diag)
    assert frozenset([diag.target.zero]) in aps
    assert sorted(aps, key=sorted) == naive_a_primes(diag)
    idf4 = finite_morphism(identity(F4))
    assert a_primes_finite(idf4) == prime_ideals(idf4.target) == [frozenset([idf4.target.zero])]
    idz4 = finite_morphism(identity(Z4))
    assert [len(I) for I in a_primes_finite(idz4)] == [2]


def test_bruteforce_status():
    st_ = bruteforce_status(finite_morphism(make_morphism(Z2, F2xF2, [])))
    assert not st_.psi
    st_ = bruteforce_status(finite_morphism(make_morphism(Z2, F4, [])))
    assert st_.psi and not st_.strong
    surj = finite_morphism(make_morphism(make_algebra("ZZ", ["x"], [4, "x^2"]), Z2, ["0"]))
    assert surj.is_surjective() and bruteforce_status(surj).psi


def test_random_instances():
    assert random_instance(1).phi.tolist() == random_instance(1).phi.tolist()
    nontrivial = 0
    for s in range(100):
        f = random_instance(s)
        nontrivial += not f.is_surjective() and not f.is_identity()
    assert nontrivial >= 30
    for s in range(10):
        f = random_instance(s, bound=2)
        assert f.source.size == f.target.size == 2


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_definition_properties(seed):
    f = random_instance(seed, bound=32)
    B = f.target
    primes = prime_ideals(B)
    aps = a_primes_finite(f)
    # primes are A-prime
    assert all(P in aps for P in primes)
    assert sorted(aps, key=sorted) == naive_a_primes(f)
    assert all(naive_is_prime(B, P) for P in primes)
    st_ = bruteforce_status(f)
    assert st_.psi == fiber_psi_finite(f)
    if st_.psi:
        images = [contract(f, Q) for Q in primes]
        assert len(images) == len(set(images))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_composition_closure(seed):
    f = random_instance(seed, bound=32)
    if f.origin is None:
        return
    rng = random.Random(seed)
    try:
        g = finite_morphism(random_map_from(rng, f.origin.target, 32), 32)
    except (TooLarge, ValueError):
        return
    from psikit.finring import FiniteMorphism
    gf = FiniteMorphism(f.source, g.target, g.phi[f.phi])
    a, b, c = bruteforce_status(f), bruteforce_status(g), bruteforce_status(gf)
    assert not (a.psi and b.psi) or c.psi
    assert not c.psi or b.psi
    assert not (a.strong and b.strong) or c.strong
    assert not c.strong or b.strong


@pytest.mark.parametrize("d", [5, 17, -3, -7, 13, 25])
def test_common_ideal_reduction_at_finite_scale(d):
    A = make_algebra("ZZ", ["x"], [4, f"x^2 - ({d})"])
    B = make_algebra("ZZ", ["w"], [4, f"w^2 - w - ({(d - 1) // 4})"])
    u = make_morphism(A, B, ["2*w - 1"])
    J = ideal(B, 2)
    red = finite_morphism(quotient_construction(u, contract_ideal(u, J), J))
    assert bruteforce_status(finite_morphism(u)) == bruteforce_status(red)
    assert bruteforce_status(red).psi == (d % 8 == 5)


def test_exhaustive_pairs_small():
    # every pair of elements of F2 x F2 that multiplies to zero
    R = build_finite(F2xF2)
    zero_pairs = [(a, b) for a, b in itertools.product(range(4), repeat=2) if R.mul[a, b] == R.zero]
    assert len(zero_pairs) == 9
