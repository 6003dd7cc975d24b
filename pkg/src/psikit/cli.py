"""Command-line driver: ``psikit check | sweep-quadratic | fuzz | certify``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field


from .dsl import EXIT_OK, EXIT_SCRIPT, Report, parse_script, run
from .errors import DslSyntaxError, InvalidD, PsikitError, TooLarge, UnknownName


# ---------------------------------------------------------------------------
# quadratic sweep

def sweep_rows(lo: int, hi: int, parallel: bool = False) -> list[tuple[int, int, str]]:
    """``(d, d mod 8, verdict)`` for every valid d in ``[lo, hi]``."""
    from .psi import quadratic_instance, quadratic_order_psi

    insts = []
    for d in range(lo, hi + 1):
        try:
            insts.append(quadratic_instance(d))
        except InvalidD:
            continue
    if parallel:
        with ThreadPoolExecutor() as pool:
            verdicts = list(pool.map(quadratic_order_psi, insts))
    else:
        verdicts = [quadratic_order_psi(i) for i in insts]
    return [(i.d, i.d % 8, v.status) for i, v in zip(insts, verdicts)]


# ---------------------------------------------------------------------------
# fuzzing oracle

@dataclass
class FuzzSummary:
    seed: int
    count: int
    bound: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def bump(self, key: str, ok: bool, detail: str = ""):
        done, bad = self.checks.get(key, (0, 0))
        self.checks[key] = (done + 1, bad + (not ok))
        if not ok:
            self.failures.append(f"{key}: {detail}")

    def text(self) -> str:
        lines = [f"fuzz seed={self.seed} count={self.count} size-bound={self.bound}"]
        for key in sorted(self.checks):
            done, bad = self.checks[key]
            lines.append(f"{key}: checked {done}, discrepancies {bad}")
        lines.extend("counterexample " + f for f in self.failures)
        return "\n".join(lines)


def _compose_finite(f, g):
    from .finring import FiniteMorphism
    return FiniteMorphism(f.source, g.target, g.phi[f.phi])


def _images(f) -> set:
    from .finring import contract, prime_ideals
    return {contract(f, Q) for Q in prime_ideals(f.target)}


def oracle_fuzz(seed: int, count: int, bound: int = 256) -> FuzzSummary:
    """Generate finite instances and cross-check the brute-force and fiber-based deciders,
    composition closure, spectral injectivity and the diagonal criterion."""
    from .finring import (bruteforce_status, contract, fiber_psi_finite, finite_morphism, prime_ideals,
                          random_instance, random_map_from)
    from .psi import decide_psi, decide_strong
    from .rings import product_construction

    S = FuzzSummary(seed, count, bound)
    for i in range(count):
        inst_seed = seed * 1_000_003 + i
        f = random_instance(inst_seed, bound)
        u = f.origin
        desc = u.describe() if u is not None else f"seed {inst_seed}"
        st = bruteforce_status(f)
        S.bump("definition vs fiber", st.psi == fiber_psi_finite(f), desc)
        if u is not None:
            try:
                sym_psi = decide_psi(u).status == "Yes"
                sym_strong = decide_strong(u).status == "Yes"
                S.bump("symbolic vs brute force", (sym_psi, sym_strong) == (st.psi, st.strong), desc)
            except PsikitError:
                pass
        if st.psi:
            primes = prime_ideals(f.target)
            images = [contract(f, Q) for Q in primes]
            S.bump("spectral injectivity", len(set(images)) == len(images), desc)
        if u is None:
            continue
        rng = random.Random(inst_seed)
        try:
            g = finite_morphism(random_map_from(rng, u.target, bound), bound)
        except (TooLarge, ValueError):
            g = None
        if g is not None and g.source.size == f.target.size:
            sg = bruteforce_status(g)
            sgf = bruteforce_status(_compose_finite(f, g))
            pair = f"{desc} then {g.origin.describe()}"
            S.bump("composition closure (PSI)",
                   (not (st.psi and sg.psi) or sgf.psi) and (not sgf.psi or sg.psi), pair)
            S.bump("composition closure (strong)",
                   (not (st.strong and sg.strong) or sgf.strong) and (not sgf.strong or sg.strong), pair)
        try:
            v = random_map_from(rng, u.source, bound)
            fv = finite_morphism(v, bound)
            P = product_construction(u.target, v.target, u, v)
            fw = finite_morphism(P.diagonal, bound)
        except (TooLarge, ValueError, PsikitError):
            continue
        sv, sw = bruteforce_status(fv), bruteforce_status(fw)
        disjoint = not (_images(f) & _images(fv))
        diag = f"diagonal of {desc} and {v.describe()}"
        S.bump("diagonal criterion (PSI)", sw.psi == (st.psi and sv.psi and disjoint), diag)
        S.bump("diagonal criterion (strong)", sw.strong == (st.strong and sv.strong and disjoint), diag)
    return S


# ---------------------------------------------------------------------------
# entry point

def _emit(reports, as_json: bool, out=None) -> int:
    out = out or sys.stdout
    code = EXIT_OK
    for r in reports:
        if as_json:
            print(json.dumps(r.as_json(), sort_keys=True), file=out)
        else:
            print(r.as_text(), file=out)
            print(file=out)
        code = max(code, r.code)
    return code


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_script(fh.read())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="psikit", description="PSI-morphism checks for presented ring maps")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", help="run every command in a script")
    c.add_argument("file")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--bound", type=int, default=1000, help="prime search bound")
    c.add_argument("--parallel", action="store_true")
    c.add_argument("--json", action="store_true")

    s = sub.add_parser("sweep-quadratic", help="quadratic orders ZZ[sqrt d] in ZZ[(1+sqrt d)/2]")
    s.add_argument("--from", dest="lo", type=int, required=True)
    s.add_argument("--to", dest="hi", type=int, required=True)
    s.add_argument("--parallel", action="store_true")

    f = sub.add_parser("fuzz", help="cross-check deciders on random finite rings")
    f.add_argument("--seed", type=int, required=True)
    f.add_argument("--count", type=int, default=100)
    f.add_argument("--size-bound", type=int, default=256)

    k = sub.add_parser("certify", help="derive a verdict for the expressions of a script")
    k.add_argument("file")
    k.add_argument("--goal", choices=["psi", "strong", "epi", "not-psi", "not-strong"], required=True)
    k.add_argument("--expr", help="certify only this expression")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--bound", type=int, default=1000)
    k.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "sweep-quadratic":
            if args.lo > args.hi:
                print("error: --from must not exceed --to", file=sys.stderr)
                return EXIT_SCRIPT
            print("d,residue_mod_8,verdict")
            for d, r, v in sweep_rows(args.lo, args.hi, args.parallel):
                print(f"{d},{r},{v}")
            return EXIT_OK
        if args.cmd == "fuzz":
            if args.count < 1:
                print("error: --count must be at least 1", file=sys.stderr)
                return EXIT_SCRIPT
            summary = oracle_fuzz(args.seed, args.count, args.size_bound)
            print(summary.text())
            return EXIT_OK if not summary.failures else 4
        script = _load(args.file)
    except (DslSyntaxError, UnknownName) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCRIPT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCRIPT
    if args.cmd == "check":
        reports = run(script, args.seed, args.bound, args.parallel)
        return _emit(reports, args.json)
    targets = [st[1] for st in script.statements if st[0] == "expr"]
    if args.expr:
        targets = [args.expr]
    elif not targets:
        targets = [st[1] for st in script.statements if st[0] in ("map", "mapexpr")]
    from .dsl import Script
    extra = tuple(("certify", args.goal, t) for t in targets)
    decls = tuple(st for st in script.statements if st[0] not in ("check", "fiber", "certify", "sweep", "fuzz"))
    reports = run(Script(decls + extra), args.seed, args.bound, select={"certify"})
    return _emit(reports, args.json)


if __name__ == "__main__":
    sys.exit(main())
