"""A line-oriented script language for rings, morphisms and checks.

One statement per line; ``#`` starts a comment. The parser produces a tuple
AST that :func:`render` turns back into text, so parse/render/parse is stable.

    ring A = ZZ[x] / (x^2 - 17)
    ring B = ZZ[w] / (w^2 - w - 4)
    map u : A -> B { x -> 2*w - 1 }
    prime P in A = (2, x + 1)
    fiber u P
    check psi u
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass

from .errors import (DslSyntaxError, InfiniteDimension, PsikitError, ResourceLimit, TooLarge, UnknownName,
                     UnsupportedFiber, UnsupportedSource)

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>->|\*\*|[=\[\](){},:/+\-*^<>]))")

BASES = ("ZZ", "QQ")
FACT_WORDS = ("finite", "finite-type", "surjective", "not-surjective", "fraction", "epi", "primes-extended",
              "psi", "strong", "not-psi", "not-strong", "spectra", "residue-trivial", "minimal", "compositum")
CHECKS = ("psi", "strong", "epi", "aprime", "mb", "preimage", "psi-at", "strong-at")
GOAL_WORDS = ("psi", "strong", "epi", "not-psi", "not-strong")
EXPR_OPS = {"compose": "ee", "quotient": "eii", "localize": "ep?", "basechange": "ee", "polyext": "e",
            "diagonal": "ee", "idealize": "m", "reduce": "ei", "tensor": "ee", "compositum": "eee",
            "structure": "r", "identity": "r", "fraction": "rp"}


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int
    end: int


def tokenize(line: str, lineno: int) -> list[Tok]:
    out, pos = [], 0
    text = line.split("#", 1)[0]
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = len(text) - len(text[pos:].lstrip()) + 1
            raise DslSyntaxError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Tok(kind, m.group(kind), lineno, start + 1, m.end()))
        pos = m.end()
    return out


@dataclass(frozen=True)
class Script:
    statements: tuple

    def __len__(self):
        return len(self.statements)


class _Line:
    def __init__(self, toks, lineno, length):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.length = length

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def err(self, msg, tok=None):
        tok = tok or self.peek()
        col = tok.col if tok else self.length + 1
        raise DslSyntaxError(msg, self.lineno, col)

    def take(self, text=None, kind=None):
        t = self.peek()
        if t is None:
            self.err(f"expected {text or kind}, found end of line")
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            self.err(f"expected {text or kind}, found {t.text!r}")
        self.i += 1
        return t

    def at(self, text):
        t = self.peek()
        return t is not None and t.text == text

    def done(self):
        return self.i >= len(self.toks)

    def word(self):
        """A name, possibly hyphenated when the pieces touch (``not-psi``)."""
        t = self.take(kind="name")
        w, end = t.text, t.end
        while (self.peek() is not None and self.peek().text == "-" and self.peek().col - 1 == end
               and self.peek(1) is not None and self.peek(1).kind == "name" and self.peek(1).col - 1 == self.peek().end):
            self.i += 1
            nxt = self.take(kind="name")
            w += "-" + nxt.text
            end = nxt.end
        return w, t

    def integer(self):
        neg = False
        if self.at("-"):
            self.i += 1
            neg = True
        t = self.take(kind="int")
        return -int(t.text) if neg else int(t.text)

    def poly_until(self, stops):
        """Raw polynomial text up to a top-level stop symbol."""
        depth, parts, first = 0, [], self.peek()
        opens = []
        while True:
            t = self.peek()
            if t is None:
                if opens:
                    self.err("unclosed parenthesis", opens[-1])
                break
            if depth == 0 and t.text in stops:
                break
            if t.text == "(":
                depth += 1
                opens.append(t)
            elif t.text == ")":
                depth -= 1
                opens.pop()
            parts.append(t)
            self.i += 1
        if not parts:
            self.err("expected a polynomial", first)
        text = ""
        for k, t in enumerate(parts):
            binary = k and t.text in "+-" and (parts[k - 1].kind != "sym" or parts[k - 1].text == ")")
            text += f" {t.text} " if binary else t.text
        return text

    def poly_tuple(self):
        open_tok = self.take("(")
        items = []
        if self.at(")"):
            self.i += 1
            return ()
        while True:
            if self.peek() is None:
                self.err("unclosed parenthesis", open_tok)
            items.append(self.poly_until({",", ")"}))
            if self.peek() is None:
                self.err("unclosed parenthesis", open_tok)
            if self.at(")"):
                self.i += 1
                return tuple(items)
            self.take(",")

    def ring_ref(self):
        w, t = self.word()
        if w == "Fp":
            self.take("(")
            p = self.take(kind="int").text
            self.take(")")
            return f"Fp({p})", t
        return w, t


class _Parser:
    def __init__(self):
        self.rings: set = set()
        self.modules: set = set()
        self.maps: set = set()
        self.primes: set = set()
        self.ideals: set = set()
        self.exprs: set = set()

    def declare(self, L, table, name, tok):
        everything = self.rings | self.modules | self.maps | self.primes | self.ideals | self.exprs
        if name in everything or name in BASES or name == "Fp":
            raise DslSyntaxError(f"name {name!r} already declared", L.lineno, tok.col)
        table.add(name)

    def need(self, table, name, tok):
        if name not in table:
            raise UnknownName(name, tok.line, tok.col)

    def ring_name(self, L):
        name, tok = L.ring_ref()
        if name in BASES or name.startswith("Fp("):
            return name
        self.need(self.rings, name, tok)
        return name

    def statement(self, L):
        kw, tok = L.word()
        fn = getattr(self, "st_" + kw.replace("-", "_"), None)
        if fn is None:
            L.err(f"unknown statement {kw!r}", tok)
        st = fn(L)
        if not L.done():
            L.err(f"unexpected {L.peek().text!r}")
        return st

    def st_ring(self, L):
        name, tok = L.word()
        L.take("=")
        base, btok = L.ring_ref()
        if base in ("target", "source") and L.at("("):
            L.take("(")
            m, mt = L.word()
            self.need(self.maps, m, mt)
            L.take(")")
            self.declare(L, self.rings, name, tok)
            return ("ring", name, (base, m))
        if not (base in BASES or base.startswith("Fp(")):
            L.err(f"unknown base ring {base!r}", btok)
        gens = ()
        if L.at("["):
            L.take("[")
            names = [L.take(kind="name").text]
            while L.at(","):
                L.take(",")
                names.append(L.take(kind="name").text)
            L.take("]")
            gens = tuple(names)
        rels = ()
        if L.at("/"):
            L.take("/")
            rels = L.poly_tuple()
        self.declare(L, self.rings, name, tok)
        return ("ring", name, ("pres", base, gens, rels))

    def st_module(self, L):
        name, tok = L.word()
        L.take("over")
        ring = self.ring_name(L)
        L.take("=")
        L.take("<")
        gens = [L.take(kind="name").text]
        while L.at(","):
            L.take(",")
            gens.append(L.take(kind="name").text)
        L.take(">")
        rels = ()
        if L.at("/"):
            L.take("/")
            rels = L.poly_tuple()
        self.declare(L, self.modules, name, tok)
        return ("module", name, ring, tuple(gens), rels)

    def st_map(self, L):
        name, tok = L.word()
        if L.at("="):
            L.take("=")
            e = self.expr(L)
            self.declare(L, self.maps, name, tok)
            return ("mapexpr", name, e)
        L.take(":")
        src = self.ring_name(L)
        L.take("->")
        tgt = self.ring_name(L)
        assigns = []
        if L.at("{"):
            L.take("{")
            while not L.at("}"):
                if L.peek() is None:
                    L.err("expected '}'")
                g = L.take(kind="name").text
                L.take("->")
                assigns.append((g, L.poly_until({",", "}"})))
                if L.at(","):
                    L.take(",")
            L.take("}")
        self.declare(L, self.maps, name, tok)
        return ("map", name, src, tgt, tuple(assigns))

    def _ideal_decl(self, L, table, kind):
        name, tok = L.word()
        L.take("in")
        ring = self.ring_name(L)
        L.take("=")
        gens = L.poly_tuple()
        self.declare(L, table, name, tok)
        return (kind, name, ring, gens)

    def st_prime(self, L):
        return self._ideal_decl(L, self.primes, "prime")

    def st_ideal(self, L):
        return self._ideal_decl(L, self.ideals, "ideal")

    def st_fact(self, L):
        m, mt = L.word()
        self.need(self.maps, m, mt)
        tag, tt = L.word()
        if tag not in FACT_WORDS:
            L.err(f"unknown fact {tag!r}", tt)
        arg = None
        if tag == "spectra":
            kind = "only"
            if L.peek() is not None and L.peek().kind == "name":
                w, wt = L.word()
                if w != "all-but":
                    L.err("expected 'all-but' or '{'", wt)
                kind = "cofinite"
            L.take("{")
            primes = []
            while not L.at("}"):
                primes.append(L.integer())
                if L.at(","):
                    L.take(",")
            L.take("}")
            arg = (kind, tuple(primes))
        elif tag == "residue-trivial":
            w, wt = L.word()
            if w != "all":
                L.err("expected 'all'", wt)
            arg = "all"
        elif tag == "minimal":
            gens = L.poly_tuple()
            w, wt = L.word()
            if w not in ("finite", "infinite"):
                L.err("expected 'finite' or 'infinite'", wt)
            arg = (gens, w == "finite")
        return ("fact", m, tag, arg)

    def st_expr(self, L):
        name, tok = L.word()
        L.take("=")
        e = self.expr(L)
        self.declare(L, self.exprs, name, tok)
        return ("expr", name, e)

    def expr(self, L):
        w, t = L.word()
        if not L.at("("):
            if w in self.exprs:
                return ("ref", w)
            self.need(self.maps, w, t)
            return ("atom", w)
        if w not in EXPR_OPS:
            L.err(f"unknown construction {w!r}", t)
        L.take("(")
        args = []
        for k, spec in enumerate(EXPR_OPS[w]):
            if spec == "?":
                if L.at(","):
                    L.take(",")
                    args.append(L.poly_until({")"}))
                else:
                    args.append(None)
                continue
            if k:
                L.take(",")
            if spec == "e":
                args.append(self.expr(L))
            elif spec == "i":
                args.append(L.poly_tuple())
            elif spec == "p":
                args.append(L.poly_until({",", ")"}))
            elif spec == "m":
                n, nt = L.word()
                self.need(self.modules, n, nt)
                args.append(n)
            elif spec == "r":
                args.append(self.ring_name(L))
        L.take(")")
        return (w, *args)

    def st_check(self, L):
        kind, kt = L.word()
        if kind not in CHECKS:
            L.err(f"unknown check {kind!r}", kt)
        m, mt = L.word()
        self.need(self.maps, m, mt)
        args = (m,)
        if kind in ("aprime",):
            n, nt = L.word()
            self.need(self.ideals | self.primes, n, nt)
            args += (n,)
        elif kind in ("mb", "preimage", "psi-at", "strong-at"):
            n, nt = L.word()
            self.need(self.primes, n, nt)
            args += (n,)
        return ("check", kind, args)

    def st_fiber(self, L):
        m, mt = L.word()
        self.need(self.maps, m, mt)
        p, pt = L.word()
        self.need(self.primes, p, pt)
        return ("fiber", m, p)

    def st_certify(self, L):
        goal, gt = L.word()
        if goal not in GOAL_WORDS:
            L.err(f"unknown goal {goal!r}", gt)
        e, et = L.word()
        if e not in self.exprs and e not in self.maps:
            raise UnknownName(e, et.line, et.col)
        return ("certify", goal, e)

    def st_sweep(self, L):
        L.take("quadratic")
        a = L.integer()
        b = L.integer()
        return ("sweep", a, b)

    def st_fuzz(self, L):
        return ("fuzz", L.integer(), L.integer(), L.integer())


def parse_script(text: str) -> Script:
    P = _Parser()
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = tokenize(line, lineno)
        if not toks:
            continue
        out.append(P.statement(_Line(toks, lineno, len(line.split("#", 1)[0].rstrip()))))
    return Script(tuple(out))


# ---------------------------------------------------------------------------
# rendering

def _tuple(items) -> str:
    return "(" + ", ".join(items) + ")"


def render_expr(e) -> str:
    if e[0] in ("atom", "ref"):
        return e[1]
    op, args = e[0], e[1:]
    parts = []
    for spec, a in zip(EXPR_OPS[op], args):
        if spec == "?":
            if a is not None:
                parts.append(a)
        elif spec == "e":
            parts.append(render_expr(a))
        elif spec == "i":
            parts.append(_tuple(a))
        else:
            parts.append(a)
    return f"{op}({', '.join(parts)})"


def render_statement(st) -> str:
    kind = st[0]
    if kind == "ring":
        spec = st[2]
        if spec[0] in ("target", "source"):
            return f"ring {st[1]} = {spec[0]}({spec[1]})"
        _, base, gens, rels = spec
        s = f"ring {st[1]} = {base}"
        if gens:
            s += "[" + ", ".join(gens) + "]"
        if rels:
            s += " / " + _tuple(rels)
        return s
    if kind == "module":
        s = f"module {st[1]} over {st[2]} = <{', '.join(st[3])}>"
        return s + (" / " + _tuple(st[4]) if st[4] else "")
    if kind == "map":
        s = f"map {st[1]} : {st[2]} -> {st[3]}"
        if st[4]:
            s += " { " + ", ".join(f"{g} -> {p}" for g, p in st[4]) + " }"
        return s
    if kind == "mapexpr":
        return f"map {st[1]} = {render_expr(st[2])}"
    if kind in ("prime", "ideal"):
        return f"{kind} {st[1]} in {st[2]} = {_tuple(st[3])}"
    if kind == "fact":
        s = f"fact {st[1]} {st[2]}"
        arg = st[3]
        if st[2] == "spectra":
            s += (" all-but" if arg[0] == "cofinite" else "") + " {" + ", ".join(map(str, arg[1])) + "}"
        elif st[2] == "residue-trivial":
            s += " all"
        elif st[2] == "minimal":
            s += f" {_tuple(arg[0])} {'finite' if arg[1] else 'infinite'}"
        return s
    if kind == "expr":
        return f"expr {st[1]} = {render_expr(st[2])}"
    if kind == "check":
        return f"check {st[1]} {' '.join(st[2])}"
    if kind == "fiber":
        return f"fiber {st[1]} {st[2]}"
    if kind == "certify":
        return f"certify {st[1]} {st[2]}"
    if kind == "sweep":
        return f"sweep quadratic {st[1]} {st[2]}"
    if kind == "fuzz":
        return f"fuzz {st[1]} {st[2]} {st[3]}"
    raise ValueError(f"unknown statement {kind!r}")


def render(script: Script) -> str:
    return "".join(render_statement(st) + "\n" for st in script.statements)


# ---------------------------------------------------------------------------
# execution

EXIT_OK, EXIT_SCRIPT, EXIT_UNSUPPORTED, EXIT_LIMIT = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    verdict: str
    witness: str | None = None
    trace: str | None = None
    millis: int = 0
    engine: str = "symbolic"
    code: int = EXIT_OK

    def as_json(self) -> dict:
        return {"command": self.command, "verdict": self.verdict, "witness": self.witness,
                "trace": self.trace, "millis": self.millis, "engine": self.engine}

    def as_text(self) -> str:
        lines = [f"> {self.command}", f"verdict: {self.verdict}"]
        if self.witness:
            lines.append(f"witness: {self.witness}")
        if self.trace:
            lines.append("trace:")
            lines.extend("  " + t for t in self.trace.splitlines())
        lines.append(f"engine: {self.engine}")
        lines.append(f"millis: {self.millis}")
        return "\n".join(lines)


def error_code(exc: Exception) -> int:
    if isinstance(exc, (UnsupportedFiber, UnsupportedSource)):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (ResourceLimit, TooLarge, InfiniteDimension)):
        return EXIT_LIMIT
    if isinstance(exc, PsikitError):
        return EXIT_UNSUPPORTED
    raise exc


_FACT_TAG = {"finite": "Finite", "finite-type": "FiniteType", "surjective": "Surjective",
             "not-surjective": "NotSurjective", "fraction": "FractionMap", "epi": "Epimorphism",
             "primes-extended": "AllPrimesExtended", "psi": "KnownPSI", "strong": "KnownStrong",
             "not-psi": "KnownNotPSI", "not-strong": "KnownNotStrong", "spectra": "SpectraImage",
             "residue-trivial": "ResidueTrivialAt", "minimal": "MinimalExtension", "compositum": "Compositum"}


class Session:
    """Evaluates statements in order, keeping declared objects by name."""

    def __init__(self, seed: int = 0, bound: int = 1000, parallel: bool = False):
        self.seed = seed
        self.bound = bound
        self.parallel = parallel
        self.rings: dict = {}
        self.modules: dict = {}
        self.maps: dict = {}
        self.exprs: dict = {}
        self.facts: dict = {}
        self.ideals: dict = {}
        self.computed_facts: dict = {}

    # declarations -------------------------------------------------------
    def ring(self, name):
        from .rings import base_ring
        if name in BASES or name.startswith("Fp("):
            return base_ring(name)
        return self.rings[name]

    def declare(self, st):
        from . import rings as R
        kind = st[0]
        if kind == "ring":
            spec = st[2]
            if spec[0] in ("target", "source"):
                m = self.maps[spec[1]]
                self.rings[st[1]] = m.target if spec[0] == "target" else m.source
            else:
                self.rings[st[1]] = R.make_algebra(spec[1], spec[2], spec[3])
        elif kind == "module":
            self.modules[st[1]] = R.make_module(self.ring(st[2]), st[3], st[4])
        elif kind == "map":
            A, B = self.ring(st[2]), self.ring(st[3])
            self.maps[st[1]] = R.make_morphism(A, B, dict(st[4]) if A.gens else [])
        elif kind == "mapexpr":
            from .deduce import realize
            self.maps[st[1]] = realize(self.to_expr(st[2]))
        elif kind in ("prime", "ideal"):
            A = self.ring(st[2])
            self.ideals[st[1]] = (R.prime if kind == "prime" else R.ideal)(A, *st[3])
        elif kind == "fact":
            from .deduce import Fact, SpectraSet
            arg = st[3]
            if st[2] == "spectra":
                arg = SpectraSet(arg[0], frozenset(arg[1]))
            self.facts.setdefault(st[1], []).append(Fact(_FACT_TAG[st[2]], arg))
        elif kind == "expr":
            self.exprs[st[1]] = st[2]

    def to_expr(self, e):
        from . import deduce as D
        from .rings import identity, localize, structure_map

        op = e[0]
        if op == "atom":
            return D.Atom(e[1], self.maps[e[1]], tuple(self.facts.get(e[1], ())))
        if op == "ref":
            return self.to_expr(self.exprs[e[1]])
        if op == "structure":
            return D.Atom(f"structure({e[1]})", structure_map(self.ring(e[1])))
        if op == "identity":
            return D.Atom(f"identity({e[1]})", identity(self.ring(e[1])),
                          (D.Fact("Surjective", None, "computed(construction)"),))
        if op == "fraction":
            return D.Atom(f"fraction({e[1]}, {e[2]})", localize(self.ring(e[1]), e[2]),
                          (D.Fact("FractionMap", None, "computed(construction)"),))
        sub = lambda x: self.to_expr(x)
        if op == "compose":
            return D.Compose(sub(e[1]), sub(e[2]))
        if op == "quotient":
            return D.Quotient(sub(e[1]), e[2], e[3])
        if op == "localize":
            return D.Localize(sub(e[1]), e[2], e[3])
        if op == "basechange":
            return D.BaseChange(sub(e[1]), sub(e[2]))
        if op == "polyext":
            return D.PolyExt(sub(e[1]))
        if op == "diagonal":
            return D.Diagonal(sub(e[1]), sub(e[2]))
        if op == "idealize":
            return D.Idealize(e[1], self.modules[e[1]])
        if op == "reduce":
            return D.CommonIdealReduce(sub(e[1]), e[2])
        if op == "tensor":
            return D.Tensor(sub(e[1]), sub(e[2]))
        if op == "compositum":
            third = sub(e[3])
            return D.Compositum(sub(e[1]), sub(e[2]), third)
        raise ValueError(op)

    # commands -------------------------------------------------------------
    def command(self, st) -> Report:
        from . import psi as S

        kind = st[0]
        text = render_statement(st)
        if kind == "fiber":
            rep = S.fiber_ring(self.maps[st[1]], self.ideals[st[2]])
            dim = "Infinite" if rep.dim is S.INFINITE else rep.dim
            return Report(text, str(rep.verdict), _witness_text(rep.verdict, rep.presentation),
                          f"{rep.presentation} over {rep.field_name()}, dim {dim}")
        if kind == "check":
            return self.check(text, st[1], st[2])
        if kind == "certify":
            from .deduce import certify, explain
            name = st[2]
            e = self.to_expr(("ref", name) if name in self.exprs else ("atom", name))
            c = certify(e, st[1], self.bound)
            return Report(text, str(c), None, explain(c.trace) if c.trace else None, engine="deduction")
        if kind == "sweep":
            from .cli import sweep_rows
            rows = sweep_rows(st[1], st[2], self.parallel)
            body = "\n".join(f"{d},{r},{v}" for d, r, v in rows)
            return Report(text, f"{sum(v == 'Yes' for *_, v in rows)} of {len(rows)} Yes", None,
                          "d,residue_mod_8,verdict\n" + body, engine="finite")
        if kind == "fuzz":
            from .cli import oracle_fuzz
            summary = oracle_fuzz(st[1], st[2], st[3])
            verdict = "0 discrepancies" if not summary.failures else f"{len(summary.failures)} discrepancies"
            return Report(text, verdict, None, summary.text(), engine="finite")
        raise ValueError(kind)

    def check(self, text, kind, args) -> Report:
        from . import psi as S

        u = self.maps[args[0]]
        if kind in ("psi", "strong"):
            fn = S.decide_psi if kind == "psi" else S.decide_strong
            v = fn(u, self.bound, parallel=self.parallel)
            wit = None
            if v.status == "No":
                wit = f"prime {v.witness}; {v.report.describe()}"
            elif v.status == "Unknown":
                wit = f"searched primes up to {v.searched_bound}"
            return Report(text, v.status, wit, v.note or None, engine=v.engine)
        if kind == "epi":
            r = S.is_epimorphism(u)
            return Report(text, r.status, r.witness and f"{r.witness} is nonzero in the tensor square")
        if kind in ("psi-at", "strong-at"):
            ok, rep = (S.psi_at if kind == "psi-at" else S.strong_at)(u, self.ideals[args[1]])
            return Report(text, "yes" if ok else "no", None if ok else rep.describe())
        if kind == "aprime":
            r = S.is_A_prime(u, self.ideals[args[1]])
            wit = None
            if not r.is_a_prime:
                wit = r.note + (f": {u.target.fmt(r.witness)}" if r.witness is not None else "")
            return Report(text, "yes" if r else "no", wit, f"contraction {r.contraction}")
        if kind == "mb":
            return Report(text, S.mb_maximal_check(u, self.ideals[args[1]]))
        if kind == "preimage":
            r = S.spectral_preimage(u, self.ideals[args[1]])
            return Report(text, str(r))
        raise ValueError(kind)


def _witness_text(verdict, presentation) -> str | None:
    w = getattr(verdict, "witness", None)
    if w is None:
        return None
    s = f"{w.kind} {presentation.fmt(w.element)}"
    if w.exponent:
        s += f" (power {w.exponent} vanishes)"
    if w.zero_divisors:
        a, b = w.zero_divisors
        s += f"; ({presentation.fmt(a)}) * ({presentation.fmt(b)}) = 0"
    return s


def run(script: Script, seed: int = 0, bound: int = 1000, parallel: bool = False,
        select=None) -> list[Report]:
    """Execute declarations and commands in order; ``select`` filters command kinds."""
    sess = Session(seed, bound, parallel)
    reports = []
    for st in script.statements:
        text = render_statement(st)
        if st[0] in ("ring", "module", "map", "mapexpr", "prime", "ideal", "fact", "expr"):
            try:
                sess.declare(st)
            except PsikitError as exc:
                reports.append(Report(text, "error", str(exc), code=EXIT_SCRIPT))
                break
            continue
        if select is not None and st[0] not in select:
            continue
        t0 = time.perf_counter()
        try:
            rep = sess.command(st)
        except PsikitError as exc:
            rep = Report(text, "error", f"{type(exc).__name__}: {exc}", code=error_code(exc))
        rep.millis = int((time.perf_counter() - t0) * 1000)
        reports.append(rep)
    return reports
