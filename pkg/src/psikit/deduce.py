"""Forward-chaining certifier for PSI, strong PSI and epimorphism claims.

Expressions are trees of morphism constructors over atoms. Facts attached to
atoms (user-asserted or computed) and decisions made on atoms feed a fixed
rule table; every derived statement records the rule, its citation and the
steps it used, so a verdict comes with a replayable trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllTypedExpression, InvalidTrace, MeaninglessFact, PsikitError
from .kernel import Poly, RationalField, groebner
from .kernel.domains import prime_factors
from .rings import (FpAlgebra, IntegerRing, ModulePresentation, RingMorphism, compose, idealization,
                    ideal, is_finite_morphism, localize_construction, polynomial_extension,
                    product_construction, quotient_construction, tensor_over)

CITATIONS = {
    "R1": "Proposition 9",
    "R2": "Proposition 14",
    "R3": "Theorem 8",
    "R4": "Theorem 12",
    "R5": "Corollary 10",
    "R6": "Theorem 16",
    "R7": "Theorem 13",
    "R8": "Proposition 17",
    "R9": "Proposition 170",
    "R10": "Proposition 22",
    "R11": "Corollary 300",
    "R12": "Theorem 301",
    "R13": "Corollary 19",
    "R14": "Proposition 23",
    "Decide": "Theorem 2",
}

FACT_TAGS = {
    "Surjective", "NotSurjective", "Epimorphism", "FractionMap", "AllPrimesExtended", "Finite",
    "FiniteType", "MinimalExtension", "SpectraImage", "ResidueTrivialAt", "KnownPSI", "KnownStrong",
    "KnownNotPSI", "KnownNotStrong", "Compositum",
}

GOALS = {"psi": "PSI", "strong": "Strong", "epi": "Epi", "not-psi": "NotPSI", "not-strong": "NotStrong"}


# ---------------------------------------------------------------------------
# facts and spectra

@dataclass(frozen=True)
class SpectraSet:
    """A set of primes of ZZ (0 stands for the zero ideal): exactly ``primes`` when
    ``kind == "only"``, everything except ``primes`` when ``kind == "cofinite"``."""

    kind: str
    primes: frozenset

    def disjoint(self, other: "SpectraSet") -> bool:
        if self.kind == "only" and other.kind == "only":
            return not (self.primes & other.primes)
        if self.kind == "only":
            return self.primes <= other.primes
        if other.kind == "only":
            return other.primes <= self.primes
        return False

    def __str__(self):
        body = ", ".join("(0)" if p == 0 else f"({p})" for p in sorted(self.primes))
        return "{" + body + "}" if self.kind == "only" else "all but {" + body + "}"


@dataclass(frozen=True)
class Fact:
    tag: str
    arg: object = None
    provenance: str = "user-asserted"

    @property
    def user(self) -> bool:
        return self.provenance == "user-asserted"

    def __str__(self):
        return self.tag if self.arg is None else f"{self.tag}[{self.arg}]"


# ---------------------------------------------------------------------------
# expressions

class MorphismExpr:
    def children(self) -> tuple:
        return ()

    @property
    def label(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Atom(MorphismExpr):
    name: str
    morphism: object
    facts: tuple = ()

    @property
    def label(self):
        return self.name


@dataclass(frozen=True, eq=False)
class Compose(MorphismExpr):
    first: MorphismExpr
    second: MorphismExpr

    def children(self):
        return (self.first, self.second)

    @property
    def label(self):
        return f"compose({self.first.label}, {self.second.label})"


@dataclass(frozen=True, eq=False)
class Quotient(MorphismExpr):
    inner: MorphismExpr
    I: tuple
    J: tuple

    def children(self):
        return (self.inner,)

    @property
    def label(self):
        return f"quotient({self.inner.label}, ({', '.join(self.I)}), ({', '.join(self.J)}))"


@dataclass(frozen=True, eq=False)
class Localize(MorphismExpr):
    inner: MorphismExpr
    s: str
    t: str | None = None

    def children(self):
        return (self.inner,)

    @property
    def label(self):
        extra = f", {self.t}" if self.t is not None else ""
        return f"localize({self.inner.label}, {self.s}{extra})"


@dataclass(frozen=True, eq=False)
class BaseChange(MorphismExpr):
    inner: MorphismExpr
    along: MorphismExpr

    def children(self):
        return (self.inner, self.along)

    @property
    def label(self):
        return f"basechange({self.inner.label}, {self.along.label})"


@dataclass(frozen=True, eq=False)
class PolyExt(MorphismExpr):
    inner: MorphismExpr

    def children(self):
        return (self.inner,)

    @property
    def label(self):
        return f"polyext({self.inner.label})"


@dataclass(frozen=True, eq=False)
class Diagonal(MorphismExpr):
    left: MorphismExpr
    right: MorphismExpr

    def children(self):
        return (self.left, self.right)

    @property
    def label(self):
        return f"diagonal({self.left.label}, {self.right.label})"


@dataclass(frozen=True, eq=False)
class Idealize(MorphismExpr):
    name: str
    module: ModulePresentation

    @property
    def label(self):
        return f"idealize({self.name})"


@dataclass(frozen=True, eq=False)
class CommonIdealReduce(MorphismExpr):
    inner: MorphismExpr
    I: tuple

    def children(self):
        return (self.inner,)

    @property
    def label(self):
        return f"reduce({self.inner.label}, ({', '.join(self.I)}))"


@dataclass(frozen=True, eq=False)
class Tensor(MorphismExpr):
    left: MorphismExpr
    right: MorphismExpr

    def children(self):
        return (self.left, self.right)

    @property
    def label(self):
        return f"tensor({self.left.label}, {self.right.label})"


@dataclass(frozen=True, eq=False)
class Compositum(MorphismExpr):
    first: MorphismExpr
    second: MorphismExpr
    result: Atom

    def children(self):
        return (self.first, self.second, self.result)

    @property
    def label(self):
        return f"compositum({self.first.label}, {self.second.label}, {self.result.label})"


def _meaningful(atom: Atom, fact: Fact):
    if fact.tag not in FACT_TAGS:
        raise MeaninglessFact(f"unknown fact tag {fact.tag!r}")
    if fact.tag == "SpectraImage" and not isinstance(fact.arg, SpectraSet):
        raise MeaninglessFact("SpectraImage needs a set of primes")
    if fact.tag == "MinimalExtension" and not (isinstance(fact.arg, tuple) and len(fact.arg) == 2):
        raise MeaninglessFact("MinimalExtension needs (crucial ideal generators, finite flag)")
    if fact.tag == "ResidueTrivialAt" and fact.arg is None:
        raise MeaninglessFact("ResidueTrivialAt needs a prime or 'all'")


def attach_fact(e: Atom, fact: Fact) -> Atom:
    """A copy of the atom with ``fact`` recorded. Surjectivity claims on finite morphisms
    are checked by exhaustion and recorded as computed."""
    if not isinstance(e, Atom):
        raise MeaninglessFact("facts attach to atoms only")
    _meaningful(e, fact)
    from .finring import FiniteMorphism

    if isinstance(e.morphism, FiniteMorphism) and fact.tag in ("Surjective", "NotSurjective"):
        surj = e.morphism.is_surjective()
        if surj != (fact.tag == "Surjective"):
            raise MeaninglessFact(f"{fact.tag} contradicts exhaustive check")
        fact = Fact(fact.tag, fact.arg, "computed(exhaustive surjectivity)")
    return Atom(e.name, e.morphism, e.facts + (fact,))


# ---------------------------------------------------------------------------
# realization

def realize(e: MorphismExpr) -> RingMorphism:
    """The presented morphism an expression denotes (raises IllTypedExpression)."""
    try:
        return _realize(e)
    except IllTypedExpression:
        raise
    except PsikitError as exc:
        raise IllTypedExpression(f"{e.label}: {exc}") from exc


def _realize(e):
    if isinstance(e, Atom):
        if not isinstance(e.morphism, RingMorphism):
            raise IllTypedExpression(f"{e.label} is not a presented morphism")
        return e.morphism
    if isinstance(e, Compose):
        u, v = _realize(e.first), _realize(e.second)
        if u.target != v.source:
            raise IllTypedExpression(f"{e.label}: target of {e.first.label} is not the source of {e.second.label}")
        return compose(u, v)
    if isinstance(e, Quotient):
        u = _realize(e.inner)
        return quotient_construction(u, ideal(u.source, *e.I), ideal(u.target, *e.J))
    if isinstance(e, Localize):
        u = _realize(e.inner)
        return localize_construction(u, e.s, e.t)
    if isinstance(e, BaseChange):
        u, v = _realize(e.inner), _realize(e.along)
        if u.source != v.source:
            raise IllTypedExpression(f"{e.label}: base change needs a common source")
        return tensor_over(u, v).right
    if isinstance(e, PolyExt):
        return polynomial_extension(_realize(e.inner))
    if isinstance(e, Diagonal):
        u, v = _realize(e.left), _realize(e.right)
        if u.source != v.source:
            raise IllTypedExpression(f"{e.label}: diagonal needs a shared source")
        return product_construction(u.target, v.target, u, v).diagonal
    if isinstance(e, Idealize):
        return idealization(e.module)
    if isinstance(e, CommonIdealReduce):
        from .psi import common_ideal_reduce
        u = _realize(e.inner)
        return common_ideal_reduce(u, ideal(u.target, *e.I)).morphism
    if isinstance(e, Tensor):
        u, v = _realize(e.left), _realize(e.right)
        if u.source != v.source:
            raise IllTypedExpression(f"{e.label}: tensor product needs a shared source")
        return compose(u, tensor_over(u, v).left)
    if isinstance(e, Compositum):
        return _realize(e.result)
    raise IllTypedExpression(f"unknown expression node {type(e).__name__}")


def check_types(e: MorphismExpr):
    """Static checks that do not need the morphisms to be realized."""
    for c in e.children():
        check_types(c)
    if isinstance(e, Compose):
        a, b = _endpoints(e.first), _endpoints(e.second)
        if a and b and a[1] is not None and b[0] is not None and not _same(a[1], b[0]):
            raise IllTypedExpression(f"{e.label}: {e.first.label} and {e.second.label} are not composable")
    if isinstance(e, (Diagonal, Tensor, BaseChange)):
        a, b = e.children()[:2]
        a, b = _endpoints(a), _endpoints(b)
        if a and b and a[0] is not None and b[0] is not None and not _same(a[0], b[0]):
            raise IllTypedExpression(f"{e.label}: the two maps do not share a source")
    if isinstance(e, Compositum):
        a, b = _endpoints(e.first), _endpoints(e.second)
        if a and b and not _same(a[1], b[0]):
            raise IllTypedExpression(f"{e.label}: the first two maps are not composable")


def _same(x, y) -> bool:
    if x is y:
        return True
    if isinstance(x, FpAlgebra):
        return x == y
    # finite rings built from one presentation are the same ring
    px, py = getattr(x, "presentation", None), getattr(y, "presentation", None)
    return px is not None and px == py


def _endpoints(e):
    if isinstance(e, Atom):
        m = e.morphism
        return (m.source, m.target)
    if isinstance(e, Compose):
        a, b = _endpoints(e.first), _endpoints(e.second)
        return (a[0] if a else None, b[1] if b else None)
    return None


# ---------------------------------------------------------------------------
# traces

@dataclass(frozen=True)
class Step:
    rule: str
    citation: str
    premises: tuple
    conclusion: str
    conditional: bool = False


@dataclass(frozen=True)
class ProofTrace:
    goal: str
    steps: tuple

    def validate(self):
        if not self.steps:
            raise InvalidTrace("trace has no steps")
        for i, s in enumerate(self.steps):
            if any(p < 0 or p >= i for p in s.premises):
                raise InvalidTrace(f"step {i + 1} refers to a later or missing step")
            if s.rule not in ("Fact",) and not s.citation.startswith(CITATIONS.get(s.rule, "\0")):
                raise InvalidTrace(f"step {i + 1} cites {s.citation!r} outside the rule table")

    def citations(self) -> list[str]:
        return [s.citation for s in self.steps]


def explain(trace: ProofTrace) -> str:
    """One line per step: ``step N: [Rule] conclusion by citation from steps [..]``."""
    trace.validate()
    lines = []
    for i, s in enumerate(trace.steps, 1):
        prem = ", ".join(str(p + 1) for p in s.premises)
        tag = " (conditional)" if s.conditional and s.rule == "Fact" else ""
        lines.append(f"step {i}: [{s.rule}] {s.conclusion} by {s.citation}{tag} from steps [{prem}]")
    return "\n".join(lines)


@dataclass(frozen=True)
class Certificate:
    status: str
    goal: str
    trace: ProofTrace | None = None
    conditional: bool = False

    def __str__(self):
        extra = " (conditional on user-asserted facts)" if self.conditional else ""
        return f"{self.status}{extra}"


# ---------------------------------------------------------------------------
# the engine

_FACT_PROP = {"Epimorphism": "Epi", "KnownPSI": "PSI", "KnownStrong": "Strong", "KnownNotPSI": "NotPSI",
              "KnownNotStrong": "NotStrong"}
_NEG = {"PSI": "NotPSI", "Strong": "NotStrong", "Epi": "NotEpi", "NotPSI": "PSI", "NotStrong": "Strong"}
MAX_FACTS = 1000


class _Store:
    def __init__(self):
        self.steps: list[Step] = []
        self.index: dict = {}
        self.data: dict = {}

    def get(self, node, prop):
        return self.index.get((node.label, prop))

    def add(self, node, prop, rule, citation, premises=(), data=None, user=False, note="") -> bool:
        key = (node.label, prop)
        if key in self.index:
            return False
        if len(self.steps) >= MAX_FACTS:
            return False
        cond = user or any(self.steps[p].conditional for p in premises)
        text = f"{prop}({node.label})"
        if data is not None:
            text += f" = {data}"
        if note:
            text += f" [{note}]"
        self.index[key] = len(self.steps)
        self.data[key] = data
        self.steps.append(Step(rule, citation, tuple(premises), text, cond))
        return True


def _nodes(e: MorphismExpr) -> list:
    out, seen = [], set()

    def walk(n):
        for c in n.children():
            walk(c)
        if id(n) not in seen:
            seen.add(id(n))
            out.append(n)

    walk(e)
    return out


def _rule_pass(S: _Store, n) -> bool:
    new = False
    g = S.get

    def fire(node, prop, rule, part, prem):
        nonlocal new
        cite = CITATIONS[rule] + (f" {part}" if part else "")
        new |= S.add(node, prop, rule, cite, prem)

    for tag, part in (("AllPrimesExtended", "(i)"), ("Epi", "(ii)"), ("Surjective", "(iii)"), ("FractionMap", "(iv)")):
        if g(n, tag) is not None:
            fire(n, "PSI", "R1", part, [g(n, tag)])
    for tag, part in (("Surjective", "(iii)"), ("FractionMap", "(iv)")):
        if g(n, tag) is not None:
            fire(n, "Epi", "R1", part, [g(n, tag)])
    if g(n, "Epi") is not None:
        fire(n, "Strong", "R2", "", [g(n, "Epi")])
    if g(n, "Strong") is not None:
        fire(n, "PSI", "R7", "(i)=>(ii)", [g(n, "Strong")])
    if g(n, "NotPSI") is not None:
        fire(n, "NotStrong", "R7", "(i)=>(ii)", [g(n, "NotPSI")])
    if g(n, "PSI") is not None and g(n, "ResidueTrivialAt") is not None and S.data[(n.label, "ResidueTrivialAt")] == "all":
        fire(n, "Strong", "R7", "(ii)=>(i)", [g(n, "PSI"), g(n, "ResidueTrivialAt")])
    if g(n, "Finite") is not None and g(n, "NotSurjective") is not None:
        fire(n, "NotStrong", "R11", "", [g(n, "Finite"), g(n, "NotSurjective")])
    if g(n, "FiniteType") is not None and g(n, "Strong") is not None:
        fire(n, "Epi", "R12", "", [g(n, "FiniteType"), g(n, "Strong")])
    if g(n, "MinimalExtension") is not None:
        crucial, finite = S.data[(n.label, "MinimalExtension")]
        k = g(n, "MinimalExtension")
        if not finite:
            fire(n, "PSI", "R14", "", [k])
        else:
            verdict = _crucial_maximal(n, crucial)
            if verdict is True:
                fire(n, "PSI", "R14", "", [k])
            elif verdict is False:
                fire(n, "NotPSI", "R14", "", [k])

    if isinstance(n, Compose):
        u, v = n.first, n.second
        for P, N, rule in (("PSI", "NotPSI", "R3"), ("Strong", "NotStrong", "R4")):
            if g(u, P) is not None and g(v, P) is not None:
                fire(n, P, rule, "(i)", [g(u, P), g(v, P)])
            if g(n, P) is not None:
                fire(v, P, rule, "(ii)", [g(n, P)])
            if g(v, N) is not None:
                fire(n, N, rule, "(ii)", [g(v, N)])
            if g(n, N) is not None and g(u, P) is not None:
                fire(v, N, rule, "(i)", [g(n, N), g(u, P)])
    elif isinstance(n, (Quotient, Localize)):
        part = "(i)" if isinstance(n, Quotient) else "(ii)"
        if g(n.inner, "PSI") is not None:
            fire(n, "PSI", "R5", part, [g(n.inner, "PSI")])
    elif isinstance(n, BaseChange):
        if g(n.inner, "Strong") is not None:
            fire(n, "Strong", "R6", "(i)=>(ii)", [g(n.inner, "Strong")])
    elif isinstance(n, PolyExt):
        i = n.inner
        if g(i, "Strong") is not None:
            fire(n, "PSI", "R6", "(i)=>(iv)", [g(i, "Strong")])
        if g(n, "PSI") is not None:
            fire(i, "Strong", "R6", "(iv)=>(i)", [g(n, "PSI")])
        if g(i, "NotStrong") is not None:
            fire(n, "NotPSI", "R6", "(iv)=>(i)", [g(i, "NotStrong")])
        if g(n, "NotPSI") is not None:
            fire(i, "NotStrong", "R6", "(i)=>(iv)", [g(n, "NotPSI")])
    elif isinstance(n, Diagonal):
        l, r = n.left, n.right
        sl, sr = g(l, "SpectraImage"), g(r, "SpectraImage")
        if sl is not None and sr is not None:
            if S.data[(l.label, "SpectraImage")].disjoint(S.data[(r.label, "SpectraImage")]):
                fire(n, "DisjointImages", "R9", "", [sl, sr])
        d = g(n, "DisjointImages")
        for P in ("PSI", "Strong", "Epi"):
            if d is not None and g(l, P) is not None and g(r, P) is not None:
                fire(n, P, "R9", "", [g(l, P), g(r, P), d])
            if g(n, P) is not None:
                fire(l, P, "R9", "", [g(n, P)])
                fire(r, P, "R9", "", [g(n, P)])
        for N in ("NotPSI", "NotStrong"):
            for side in (l, r):
                if g(side, N) is not None:
                    fire(n, N, "R9", "", [g(side, N)])
    elif isinstance(n, Idealize):
        if g(n, "ModuleZero") is not None:
            fire(n, "Strong", "R10", "", [g(n, "ModuleZero")])
        if g(n, "ModuleNonzero") is not None:
            fire(n, "NotStrong", "R10", "", [g(n, "ModuleNonzero")])
    elif isinstance(n, CommonIdealReduce):
        for P in ("PSI", "Strong", "NotPSI", "NotStrong"):
            if g(n, P) is not None:
                fire(n.inner, P, "R8", "", [g(n, P)])
            if g(n.inner, P) is not None:
                fire(n, P, "R8", "", [g(n.inner, P)])
    elif isinstance(n, Tensor):
        if g(n.left, "Strong") is not None and g(n.right, "Strong") is not None:
            fire(n, "Strong", "R13", "", [g(n.left, "Strong"), g(n.right, "Strong")])
    elif isinstance(n, Compositum):
        c = g(n.result, "Compositum")
        if c is not None and g(n.first, "Strong") is not None and g(n.second, "Strong") is not None:
            prem = [g(n.first, "Strong"), g(n.second, "Strong"), c]
            new |= S.add(n.result, "Strong", "R13", "Corollary 20", prem)
            new |= S.add(n, "Strong", "R13", "Corollary 20", prem)
    return new


def _crucial_maximal(n, crucial):
    from .psi import residue
    try:
        u = realize(n)
        return residue(u.target, ideal(u.target, *crucial)).maximal
    except PsikitError:
        return None


def _fixpoint(S: _Store, nodes) -> None:
    changed = True
    while changed and len(S.steps) < MAX_FACTS:
        changed = False
        for n in nodes:
            changed |= _rule_pass(S, n)


# ---------------------------------------------------------------------------
# computed facts

def is_surjective(u: RingMorphism) -> bool:
    """Every target generator lies in the image (graph ideal, block elimination)."""
    from .kernel import block_order
    from .rings import graph_ideal

    B = u.target
    if B.is_zero:
        return True
    if isinstance(u.source.base, IntegerRing) and B.base.is_field and B.base.characteristic == 0:
        return False
    dom, gens, ny, nx = graph_ideal(u)
    n = ny + nx
    gb = groebner(gens, block_order(range(ny), n), nvars=n, domain=dom)
    for i in range(ny):
        r = gb.reduce(Poly.var(i, n, dom))
        if any(r_i for r_i in (e[:ny] for e in r.terms) if any(r_i)):
            return False
    return True


def spectra_image(u: RingMorphism) -> SpectraSet | None:
    """Image of Spec B in Spec ZZ for a morphism out of ZZ."""
    from .kernel import PrimeField, RationalField
    from .psi import fiber_ring
    from .rings import prime

    A, B = u.source, u.target
    if not (A.is_base() and isinstance(A.base, IntegerRing)):
        return None
    if B.is_zero:
        return SpectraSet("only", frozenset())
    if isinstance(B.base, RationalField):
        return SpectraSet("only", frozenset({0}))
    if isinstance(B.base, PrimeField):
        return SpectraSet("only", frozenset({B.base.p}))
    n = B.gb.integer_generator()
    if n:
        return SpectraSet("only", frozenset(p for p in prime_factors(n)
                                            if not fiber_ring(u, prime(A, p)).presentation.is_zero))
    cand = set()
    for _, lc in B.gb.leading_terms():
        cand.update(prime_factors(abs(int(lc))))
    missing = frozenset(p for p in cand if fiber_ring(u, prime(A, p)).presentation.is_zero)
    return SpectraSet("cofinite", missing)


def module_is_zero(M: ModulePresentation) -> bool:
    """M = 0 iff its zeroth Fitting ideal (maximal minors of the relation matrix) is the unit ideal."""
    from itertools import combinations

    A = M.over
    n = len(M.generators)
    if n == 0 or A.is_zero:
        return True
    rows = list(M.relations)
    if len(rows) < n:
        return False

    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = A.zero()
        for j in range(len(mat)):
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            term = mat[0][j] * det(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    minors = [det([list(rows[i]) for i in idx]) for idx in combinations(range(len(rows)), n)]
    return groebner(list(A.relations) + minors, nvars=A.nvars, domain=A.base).is_unit()


def _non_surjective_evidence(u: RingMorphism) -> str:
    from .psi import fiber_ring
    from .rings import prime

    A = u.source
    if A.is_base() and isinstance(A.base, IntegerRing):
        for p in (2, 3, 5, 0):
            try:
                r = fiber_ring(u, prime(A, p) if p else prime(A))
            except PsikitError:
                continue
            if not isinstance(r.dim, int) or r.dim > 1:
                return f"computed(fiber_ring at {r.prime}: dimension {r.dim} over {r.field_name()})"
    return "computed(elimination)"


def is_fraction_map(u: RingMorphism) -> bool:
    """Recognizes ``A -> A[y]/(s*y - 1)`` as produced by ``localize`` and ``ZZ -> QQ``."""
    A, B = u.source, u.target
    if A.is_base() and B.is_base():
        return isinstance(A.base, IntegerRing) and isinstance(B.base, RationalField)
    n = A.nvars
    if A.base != B.base or B.gens[:n] != A.gens or B.nvars != n + 1 or len(B.relations) != len(A.relations) + 1:
        return False
    if any(u.images[k] != B.var(g) for k, g in enumerate(A.gens)):
        return False
    pos = list(range(n))
    if tuple(B.relations[:-1]) != tuple(r.reindex(n + 1, pos) for r in A.relations):
        return False
    last = B.relations[-1]
    # every term of last + 1 is linear in y, so last = y*s - 1
    return (last.terms.get((0,) * (n + 1)) == -1
            and all(m[n] == 1 for m, c in last.terms.items() if m != (0,) * (n + 1)))


def _computed_facts(S: _Store, nodes) -> None:
    from .finring import FiniteMorphism

    for n in nodes:
        if isinstance(n, Idealize):
            zero = module_is_zero(n.module)
            S.add(n, "ModuleZero" if zero else "ModuleNonzero", "Fact", "computed(Fitting ideal)")
            continue
        if not isinstance(n, Atom):
            continue
        m = n.morphism
        if isinstance(m, FiniteMorphism):
            S.add(n, "Surjective" if m.is_surjective() else "NotSurjective", "Fact",
                  "computed(exhaustive surjectivity)")
            S.add(n, "Finite", "Fact", "computed(finite rings)")
            S.add(n, "FiniteType", "Fact", "computed(finite rings)")
            continue
        try:
            if is_fraction_map(m):
                S.add(n, "FractionMap", "Fact", "computed(presentation A[y]/(s*y - 1))")
            if is_finite_morphism(m):
                S.add(n, "Finite", "Fact", "computed(is_finite_morphism)")
            if not (isinstance(m.source.base, IntegerRing) and m.target.base.is_field
                    and m.target.base.characteristic == 0):
                S.add(n, "FiniteType", "Fact", "computed(finite presentation)")
            if is_surjective(m):
                S.add(n, "Surjective", "Fact", "computed(elimination)")
            else:
                S.add(n, "NotSurjective", "Fact", _non_surjective_evidence(m))
            img = spectra_image(m)
            if img is not None:
                S.add(n, "SpectraImage", "Fact", "computed(fiber_ring)", data=img)
        except PsikitError:
            continue


def _decisions(S: _Store, nodes, bound: int) -> None:
    from .finring import FiniteMorphism, bruteforce_status
    from .psi import decide_psi, decide_strong, is_epimorphism

    for n in nodes:
        if not isinstance(n, Atom):
            continue
        m = n.morphism
        if isinstance(m, FiniteMorphism):
            st = bruteforce_status(m)
            S.add(n, "PSI" if st.psi else "NotPSI", "Decide", "Theorem 2 (exhaustive)")
            S.add(n, "Strong" if st.strong else "NotStrong", "Decide", "Theorem 2 (exhaustive)")
            continue
        for fn, P in ((decide_psi, "PSI"), (decide_strong, "Strong")):
            try:
                v = fn(m, bound)
            except PsikitError:
                continue
            if v.status == "Yes":
                S.add(n, P, "Decide", "Theorem 2 (fiber classification)")
            elif v.status == "No":
                S.add(n, "Not" + P, "Decide", "Theorem 2 (fiber classification)",
                      note=f"witness {v.witness}: {v.report.verdict}, dim {v.report.dim}")
        try:
            e = is_epimorphism(m)
        except PsikitError:
            continue
        if e.status == "yes":
            S.add(n, "Epi", "Decide", "Theorem 2 (tensor square)")
        elif e.status == "no":
            S.add(n, "NotEpi", "Decide", "Theorem 2 (tensor square)", note=f"witness {e.witness}")


def _load_facts(S: _Store, nodes) -> None:
    for n in nodes:
        if isinstance(n, Atom):
            for f in n.facts:
                S.add(n, _FACT_PROP.get(f.tag, f.tag), "Fact", f.provenance, data=f.arg, user=f.user)


def _extract(S: _Store, goal: str, idx: int) -> ProofTrace:
    need = set()
    stack = [idx]
    while stack:
        k = stack.pop()
        if k in need:
            continue
        need.add(k)
        stack.extend(S.steps[k].premises)
    order = sorted(need)
    renum = {k: i for i, k in enumerate(order)}
    steps = tuple(Step(s.rule, s.citation, tuple(renum[p] for p in s.premises), s.conclusion, s.conditional)
                  for s in (S.steps[k] for k in order))
    return ProofTrace(goal, steps)


def certify(e: MorphismExpr, goal: str, bound: int = 1000) -> Certificate:
    """Try to prove ``goal`` (psi, strong, epi, not-psi, not-strong) for ``e``."""
    if goal not in GOALS:
        raise ValueError(f"unknown goal {goal!r}")
    check_types(e)
    prop = GOALS[goal]
    S = _Store()
    nodes = _nodes(e)
    _load_facts(S, nodes)
    for phase in (None, _computed_facts, _decisions):
        if phase is _decisions:
            phase(S, nodes, bound)
        elif phase is not None:
            phase(S, nodes)
        _fixpoint(S, nodes)
        for target, status in ((prop, "Proved"), (_NEG.get(prop), "Refuted")):
            k = S.get(e, target) if target else None
            if k is not None:
                tr = _extract(S, goal, k)
                return Certificate(status, goal, tr, any(s.conditional for s in tr.steps))
    return Certificate("Inconclusive", goal)
