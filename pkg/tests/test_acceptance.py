"""Acceptance criteria 1-9.

Each test prints one ``criterion N: PASS|FAIL ...`` line straight to the terminal
and then asserts.  Running this file as a script prints all nine lines.
"""
from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

from psikit.cli import oracle_fuzz, sweep_rows
from psikit.deduce import Atom, Diagonal, Fact, certify
from psikit.dsl import Session, parse_script
from psikit.errors import PsikitError
from psikit.finring import contract, prime_ideals, random_instance, bruteforce_status
from psikit.psi import (common_ideal_reduce, decide_psi, decide_strong, fiber_ring, is_epimorphism,
                        psi_at, quadratic_instance, spectral_preimage, strong_at)
from psikit.rings import (base_ring, ideal, localize, make_algebra, make_morphism, polynomial_extension,
                          prime, product_construction, structure_map)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

# pinned limits
SWEEP_SECONDS = 10.0
FUZZ_SECONDS = 60.0
FUZZ_SEED, FUZZ_COUNT, FUZZ_BOUND = 7, 200, 256


def _line(n: int, ok: bool, detail: str, capsys=None) -> None:
    text = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    if capsys is None:
        print(text)
    else:
        with capsys.disabled():
            print("\n" + text)


def _gaussian():
    Zi = make_algebra("ZZ", ["i"], ["i^2 + 1"])
    Qi = make_algebra("QQ", ["i"], ["i^2 + 1"])
    return structure_map(Zi), structure_map(Qi, base_ring("ZZ").base)


def _half_times_f2():
    Z = base_ring("ZZ")
    h = localize(Z, 2)
    q = make_morphism(Z, base_ring("Fp(2)"), [])
    return h, q, product_construction(h.target, q.target, h, q).diagonal


@pytest.fixture(scope="module")
def fuzz_run():
    t = time.perf_counter()
    summary = oracle_fuzz(FUZZ_SEED, FUZZ_COUNT, FUZZ_BOUND)
    return summary, time.perf_counter() - t


def test_criterion_1_quadratic_sweep(capsys):
    t = time.perf_counter()
    rows = sweep_rows(-50, 50)
    elapsed = time.perf_counter() - t
    wrong = [(d, v) for d, r, v in rows if v != ("Yes" if r == 5 else "No")]
    engines = {quadratic_instance_engine(d) for d in (-3, 5, 17, -7)}
    ok = not wrong and rows and elapsed < SWEEP_SECONDS and engines == {"finite"}
    _line(1, ok, f"{len(rows)} values of d, {len(wrong)} mismatches, {elapsed:.2f}s "
                 f"(limit {SWEEP_SECONDS}s), engines {sorted(engines)}", capsys)
    assert ok


def quadratic_instance_engine(d: int) -> str:
    from psikit.psi import quadratic_order_psi
    v = quadratic_order_psi(d)
    assert v.status in ("Yes", "No")
    return v.engine


def test_criterion_2_counterexample_pair(capsys):
    zi, qi = _gaussian()
    v_q, v_z = decide_psi(qi), decide_psi(zi)
    v_7 = decide_psi(quadratic_instance(-7).morphism)
    ok = (v_q.status == "Yes" and v_z.status == "No" and str(v_z.witness) == "(5)"
          and str(v_z.report.verdict).startswith("NotField") and v_z.report.dim == 2
          and v_7.status == "No")
    _line(2, ok, f"QQ[i]: {v_q.status}; ZZ[i]: {v_z.status} at {v_z.witness} "
                 f"({v_z.report.verdict}, dim {v_z.report.dim}); d=-7: {v_7.status}", capsys)
    assert ok


def test_criterion_3_reduced_obstruction(capsys):
    u = quadratic_instance(17).morphism
    f = common_ideal_reduce(u, ideal(u.target, 2)).finite()
    T = f.target
    idem = sum(1 for e in range(T.size) if T.mul[e, e] == e)
    rep = fiber_ring(u, prime(u.source, 2, "x + 1"))
    ok = (f.source.size, T.size, idem) == (2, 4, 4) and rep.dim == 2 and "idempotent" in str(rep.verdict) \
        and rep.residue.characteristic == 2
    _line(3, ok, f"sizes {f.source.size} -> {T.size}, {idem} idempotents, "
                 f"fiber {rep.verdict} dim {rep.dim} over F{rep.residue.characteristic}", capsys)
    assert ok


def test_criterion_4_strong_diagonal(capsys):
    h, q, w = _half_times_f2()
    st, ep = decide_strong(w), is_epimorphism(w)
    c = certify(Diagonal(Atom("h", h), Atom("q", q)), "strong")
    cites = {s.citation for s in c.trace.steps} if c.trace else set()
    needed = {"Proposition 9 (iv)", "Proposition 14", "Proposition 170"}
    hit = {n for n in needed if any(x.startswith(n) for x in cites)}
    ok = st.status == "Yes" and ep.status == "yes" and c.status == "Proved" and hit == needed
    _line(4, ok, f"decide_strong {st.status}, epi {ep.status}, certify {c.status}, "
                 f"citations {sorted(cites)}", capsys)
    assert ok


def test_criterion_5_polynomial_extension(capsys):
    Qi = make_algebra("QQ", ["i"], ["i^2 + 1"])
    v = structure_map(Qi)
    vs = decide_strong(v)
    V = polynomial_extension(v)
    rep = fiber_ring(V, prime(V.source, "X^2 + 1"))
    first = (vs.status == "No" and vs.report.dim == 2 and str(vs.witness) == "(0)"
             and str(rep.verdict) == "NotField(idempotent)" and rep.dim == 2)

    _, _, w = _half_times_f2()
    W = polynomial_extension(w)
    checked, skipped, bad = [], [], []
    for gens in [(), (2,), (3,), ("X",), ("X^2 + 1",)]:
        P = prime(W.source, *gens)
        try:
            ok_at, _ = psi_at(W, P)
        except PsikitError:
            skipped.append(str(P))
            continue
        (checked if ok_at else bad).append(str(P))
    second = decide_strong(w).status == "Yes" and checked and not bad
    ok = bool(first and second)
    _line(5, ok, f"QQ->QQ[i] strong {vs.status}; fiber at (X^2 + 1) {rep.verdict} dim {rep.dim}; "
                 f"psi_at yes at {checked}, unsupported {skipped}, failing {bad}", capsys)
    assert ok


def test_criterion_6_fuzz_oracle(capsys, fuzz_run):
    summary, elapsed = fuzz_run
    bad = sum(b for _, b in summary.checks.values())
    keys = {"definition vs fiber", "composition closure (PSI)", "composition closure (strong)",
            "diagonal criterion (PSI)", "diagonal criterion (strong)"}
    ok = bad == 0 and keys <= set(summary.checks) and elapsed < FUZZ_SECONDS
    _line(6, ok, f"{FUZZ_COUNT} instances, {bad} discrepancies, {elapsed:.1f}s (limit {FUZZ_SECONDS}s)",
          capsys)
    assert ok


def test_criterion_7_spectral_injectivity(capsys, fuzz_run):
    summary, _ = fuzz_run
    # recompute independently of the fuzz bookkeeping
    psi_count, clashes = 0, 0
    for i in range(FUZZ_COUNT):
        f = random_instance(FUZZ_SEED * 1_000_003 + i, FUZZ_BOUND)
        if not bruteforce_status(f).psi:
            continue
        psi_count += 1
        images = [contract(f, Q) for Q in prime_ideals(f.target)]
        clashes += len(images) != len(set(images))
    Z = base_ring("ZZ")
    h = localize(Z, 2)
    pre3, pre2 = spectral_preimage(h, prime(Z, 3)), spectral_preimage(h, prime(Z, 2))
    ok = (clashes == 0 and psi_count > 0 and summary.checks["spectral injectivity"][1] == 0
          and str(pre3) == "(3)" and str(pre2) == "NoPrimeOver")
    _line(7, ok, f"{psi_count} PSI instances, {clashes} non-injective; preimage (3) -> {pre3}, "
                 f"(2) -> {pre2}", capsys)
    assert ok


def test_criterion_8_refutation_rule(capsys):
    zi, _ = _gaussian()
    c = certify(Atom("u", zi, (Fact("Finite", None),)), "not-strong")
    rules = [s.rule for s in c.trace.steps] if c.trace else []
    notes = " ".join(s.citation for s in c.trace.steps) if c.trace else ""
    ok_at, _ = strong_at(zi, prime(zi.source))
    ok = c.status == "Proved" and "R11" in rules and "F2" in notes and ok_at is False
    _line(8, ok, f"certify {c.status} via {rules}; strong_at (0) = {'yes' if ok_at else 'no'}", capsys)
    assert ok


def corpus_audit():
    """Yield ``(file, atom, property, decided, certified)`` for every decidable atom."""
    goals = (("PSI", decide_psi, "psi", "not-psi"), ("Strong", decide_strong, "strong", "not-strong"))
    for path in sorted(CORPUS.glob("*.psi")):
        script = parse_script(path.read_text())
        s = Session()
        for st in script.statements:
            if st[0] in ("ring", "module", "map", "mapexpr", "prime", "ideal", "fact", "expr"):
                s.declare(st)
        for name, m in s.maps.items():
            atom = Atom(name, m, tuple(s.facts.get(name, ())))
            for prop, fn, pos, neg in goals:
                try:
                    v = fn(m)
                except PsikitError:
                    continue
                if v.status not in ("Yes", "No"):
                    continue
                c_pos, c_neg = certify(atom, pos).status, certify(atom, neg).status
                yield path.name, name, prop, v.status, (c_pos, c_neg)


def test_criterion_9_corpus_audit(capsys):
    rows = list(corpus_audit())
    expect = {"Yes": ("Proved", "Refuted"), "No": ("Refuted", "Proved")}
    bad = [r for r in rows if r[4] != expect[r[3]]]
    ok = len(rows) > 0 and not bad
    _line(9, ok, f"{len(rows)} decidable atom/property pairs, {len(bad)} disagreements "
                 f"across {len(list(CORPUS.glob('*.psi')))} corpus files", capsys)
    assert ok, bad


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
