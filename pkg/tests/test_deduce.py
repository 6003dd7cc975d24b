import pytest
from hypothesis import given, settings, strategies as st

from psikit.deduce import (CITATIONS, Atom, Compose, Diagonal, Fact, Idealize, Localize, PolyExt, ProofTrace,
                           Quotient, SpectraSet, Step, attach_fact, certify, explain, realize)
from psikit.errors import IllTypedExpression, InvalidTrace, MeaninglessFact
from psikit.finring import bruteforce_status, finite_morphism, random_instance
from psikit.psi import decide_psi, decide_strong
from psikit.rings import (base_ring, localize, make_algebra, make_module, make_morphism, product_construction,
                          structure_map)

Z = base_ring("ZZ")
Q = base_ring("QQ")


def gauss():
    return structure_map(make_algebra("ZZ", ["i"], ["i^2 + 1"]))


def half_and_f2():
    return localize(Z, 2), make_morphism(Z, base_ring("Fp(2)"), [])


def rules(c):
    return [s.rule for s in c.trace.steps]


def test_compose_fraction_then_field():
    e = Compose(Atom("f", make_morphism(Z, Q, [])),
                Atom("k", structure_map(make_algebra("QQ", ["i"], ["i^2 + 1"]))))
    c = certify(e, "psi")
    assert c.status == "Proved" and rules(c)[-1] == "R3"
    assert "R1" in rules(c)
    assert c.trace.steps[-1].citation.startswith("Theorem 8")


def test_finite_not_surjective_refutes_strong():
    c = certify(Atom("u", gauss(), (Fact("Finite"),)), "not-strong")
    assert c.status == "Proved" and rules(c)[-1] == "R11" and c.conditional
    assert c.trace.steps[-1].citation == "Corollary 300"


def test_polyext_of_known_strong():
    h, q = half_and_f2()
    w = product_construction(h.target, q.target, h, q).diagonal
    c = certify(PolyExt(Atom("w", w, (Fact("KnownStrong"),))), "psi")
    assert c.status == "Proved" and rules(c) == ["Fact", "R6"]


def test_diagonal_with_spectra_facts():
    h, q = half_and_f2()
    e = Diagonal(Atom("h", h, (Fact("SpectraImage", SpectraSet("cofinite", frozenset({2}))),)),
                 Atom("q", q, (Fact("SpectraImage", SpectraSet("only", frozenset({2}))),)))
    c = certify(e, "strong")
    assert c.status == "Proved" and rules(c)[-1] == "R9"
    cites = c.trace.citations()
    assert "Proposition 9 (iv)" in cites and "Proposition 14" in cites
    assert certify(e, "psi").status == "Proved"


def test_idealization_refuted():
    c = certify(Idealize("M", make_module(Z, ["m"], ["3*m"])), "strong")
    assert c.status == "Refuted" and "R10" in rules(c)
    c0 = certify(Idealize("N", make_module(Z, ["m"], ["m"])), "strong")
    assert c0.status == "Proved"


def test_quotient_preserves_psi():
    h, _ = half_and_f2()
    c = certify(Quotient(Atom("h", h), ("3",), ("3",)), "psi")
    assert c.status == "Proved" and rules(c)[-1] == "R5"


def test_epi_refuted_from_tensor_square():
    c = certify(Atom("u", gauss()), "epi")
    assert c.status == "Refuted"


def test_inconclusive_never_fabricates():
    h, _ = half_and_f2()
    c = certify(Localize(Atom("h", h), "3"), "strong")
    assert c.status in ("Inconclusive", "Proved")
    if c.status == "Inconclusive":
        assert c.trace is None


def test_ill_typed():
    h, _ = half_and_f2()
    with pytest.raises(IllTypedExpression):
        certify(Compose(Atom("u", gauss()), Atom("h", h)), "psi")


def test_attach_fact():
    a = attach_fact(Atom("u", gauss()), Fact("Finite"))
    assert a.facts[-1].user
    f = finite_morphism(make_morphism(make_algebra("ZZ", [], [4]), make_algebra("ZZ", [], [2]), []))
    b = attach_fact(Atom("f", f), Fact("Surjective"))
    assert b.facts[-1].provenance.startswith("computed")
    with pytest.raises(MeaninglessFact):
        attach_fact(Atom("f", f), Fact("NotSurjective"))
    h, _ = half_and_f2()
    assert attach_fact(Atom("h", h), Fact("FractionMap")).facts[-1].tag == "FractionMap"
    with pytest.raises(MeaninglessFact):
        attach_fact(Atom("h", h), Fact("Bogus"))


def test_explain():
    one = ProofTrace("PSI(u)", (Step("R1", "Proposition 9 (iii)", (), "PSI(u)"),))
    assert explain(one) == "step 1: [R1] PSI(u) by Proposition 9 (iii) from steps []"
    two = ProofTrace("PSI(vu)", (Step("R1", "Proposition 9 (iv)", (), "PSI(u)"),
                                 Step("R3", "Theorem 8 (i)", (0,), "PSI(vu)")))
    lines = explain(two).splitlines()
    assert len(lines) == 2 and lines[1].endswith("from steps [1]")
    with pytest.raises(InvalidTrace):
        explain(ProofTrace("PSI(u)", ()))
    with pytest.raises(InvalidTrace):
        explain(ProofTrace("PSI(u)", (Step("R3", "Theorem 8 (i)", (1,), "PSI(u)"),)))


def test_traces_are_deterministic():
    h, q = half_and_f2()
    e = Diagonal(Atom("h", h), Atom("q", q))
    assert explain(certify(e, "strong").trace) == explain(certify(e, "strong").trace)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 5_000))
def test_soundness_on_finite_atoms(seed):
    f = random_instance(seed, bound=32)
    st_ = bruteforce_status(f)
    a = Atom("f", f)
    for goal, truth in (("psi", st_.psi), ("strong", st_.strong)):
        c = certify(a, goal)
        assert c.status == ("Proved" if truth else "Refuted")
    if certify(a, "strong").status == "Proved":
        assert certify(a, "psi").status == "Proved"


checked_pairs = []


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 5_000))
def test_soundness_on_compositions(seed):
    import random

    from psikit.errors import TooLarge
    from psikit.finring import FiniteMorphism, random_map_from
    f = random_instance(seed, bound=16)
    if f.origin is None:
        return
    try:
        g = finite_morphism(random_map_from(random.Random(seed), f.origin.target, 16), 16)
    except (TooLarge, ValueError):
        return
    checked_pairs.append(seed)
    e = Compose(Atom("f", f), Atom("g", g))
    truth = bruteforce_status(FiniteMorphism(f.source, g.target, g.phi[f.phi]))
    for goal, val in (("psi", truth.psi), ("strong", truth.strong)):
        c = certify(e, goal)
        assert c.status != ("Refuted" if val else "Proved")


def test_composition_pairs_were_exercised():
    assert checked_pairs


def test_citations_belong_to_table():
    h, q = half_and_f2()
    c = certify(Diagonal(Atom("h", h), Atom("q", q)), "strong")
    for s in c.trace.steps:
        if s.rule != "Fact":
            assert s.citation.startswith(CITATIONS[s.rule])


def test_realize_symbolic_agrees_with_deciders():
    h, q = half_and_f2()
    w = realize(Diagonal(Atom("h", h), Atom("q", q)))
    assert decide_strong(w).status == "Yes" and decide_psi(w).status == "Yes"
