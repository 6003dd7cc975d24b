"""Fiber rings and the PSI / strong PSI decision procedures.

The fiber of ``u: A -> B`` at a prime ``P`` of ``A`` is ``k(P) (x)_A B``. In
every supported case it equals ``(B / PB) (x)_Z F`` with ``F`` the prime field
of the residue characteristic: for maximal ``P`` because ``A/P`` is already a
field, and for characteristic-zero ``P`` over a ZZ-algebra because ``k(P)`` is
``(A/P) (x) QQ``. The fiber is then a finitely presented ``F``-algebra, which
:func:`classify_artinian_quotient` decides.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (ImproperIdeal, InfiniteDimension, InvalidD, NotCommonIdeal, NotFiniteQuotient, NotPrime,
                     NotPsiAtPrime, ResourceLimit, UnsupportedFiber, UnsupportedSource)
from .kernel import (GF, INFINITE, QQ, ZZ, Domain, Field, IntegerRing, NotField, Poly, PrimeField,
                     QuotientAlgebra, RationalField, Zero, classify_artinian_quotient, groebner, quotient_basis)
from .kernel.domains import is_prime, prime_factors, primes_up_to
from .rings import (FpAlgebra, IdealSpec, PrimeSpec, RingMorphism, contract_ideal, ideal, make_algebra,
                    make_morphism, monic_finite_over_base, prime, saturate_integers, tensor_over)


# ---------------------------------------------------------------------------
# residue fields

@dataclass(frozen=True)
class Residue:
    """Residue data of a prime: characteristic, prime field and degree of k(P) over it."""

    characteristic: int
    field: Domain
    degree: int
    maximal: bool


def _to_field(f: Poly, F: Domain) -> Poly:
    if isinstance(F, PrimeField) and isinstance(f.domain, RationalField):
        return f.clear_denominators().change_domain(F)
    return Poly(f.terms, f.nvars, f.domain).change_domain(F)


def _zero_dim_field(gens, nvars: int, F: Domain, what: str) -> int:
    gb = groebner([_to_field(g, F) for g in gens], nvars=nvars, domain=F)
    if gb.is_unit():
        raise ImproperIdeal(f"{what} is the unit ideal")
    if quotient_basis(gb) is INFINITE:
        raise UnsupportedFiber(f"{what} has a residue field that is not finite over its prime field")
    verdict = classify_artinian_quotient(gb)
    if not isinstance(verdict, Field):
        raise NotPrime(f"{what} is not prime: {verdict}")
    return verdict.dim


def residue(A: FpAlgebra, P: IdealSpec) -> Residue:
    """Verify that ``P`` is a prime in a supported class and describe its residue field."""
    gens = list(A.relations) + list(P.generators)
    n = A.nvars
    if isinstance(A.base, IntegerRing):
        gb = groebner(gens, nvars=n, domain=ZZ)
        m = gb.integer_generator()
        if m == 1:
            raise ImproperIdeal(f"{P} is the unit ideal")
        if m:
            if not is_prime(m):
                raise NotPrime(f"{P} contains {m}, which is not prime")
            F = GF(m)
            return Residue(m, F, _zero_dim_field(gens, n, F, str(P)), True)
        if n:
            sat = saturate_integers(gens, n)
            if not all(gb.contains(g) for g in sat):
                raise NotPrime(f"{P} is not saturated with respect to nonzero integers")
            return Residue(0, QQ, _zero_dim_field(gens, n, QQ, str(P)), False)
        return Residue(0, QQ, 1, False)
    F = A.base
    return Residue(F.characteristic, F, _zero_dim_field(gens, n, F, str(P)), True)


def verify_prime(A: FpAlgebra, P) -> PrimeSpec:
    P = P if isinstance(P, IdealSpec) else ideal(A, *P)
    residue(A, P)
    return PrimeSpec(A, P.generators, "yes")


# ---------------------------------------------------------------------------
# fibers

@dataclass(frozen=True)
class FiberReport:
    prime: PrimeSpec
    presentation: FpAlgebra
    verdict: object
    dim: object
    residue: Residue

    @property
    def is_field_or_zero(self) -> bool:
        return isinstance(self.verdict, (Zero, Field))

    @property
    def is_trivial(self) -> bool:
        """Zero, or a field of dimension one over k(P)."""
        return isinstance(self.verdict, Zero) or (isinstance(self.verdict, Field) and self.dim == 1)

    def field_name(self) -> str:
        F = self.residue.field
        k = "QQ" if isinstance(F, RationalField) else f"F{F.p}"
        if self.residue.degree > 1:
            k += f"^({self.residue.degree})"
        return k

    def describe(self) -> str:
        dim = "Infinite" if self.dim is INFINITE else self.dim
        return (f"fiber at {self.prime}: {self.presentation} ; verdict {self.verdict} ; "
                f"dim {dim} over k(P)")

    def __str__(self):
        return self.describe()


def fiber_presentation(u: RingMorphism, P: IdealSpec, res: Residue) -> FpAlgebra:
    B = u.target
    F = res.field
    tb = B.base
    zero_ring = FpAlgebra(F, B.gens, (Poly.one(B.nvars, F),))
    if isinstance(tb, RationalField) and res.characteristic:
        return zero_ring
    if isinstance(tb, PrimeField) and tb.p != res.characteristic:
        return zero_ring
    rels = [_to_field(r, F) for r in B.relations]
    rels += [_to_field(u.apply(g), F) for g in P.generators]
    return FpAlgebra(F, B.gens, tuple(r for r in rels if r))


def fiber_ring(u: RingMorphism, P, rng=None) -> FiberReport:
    """Build and classify the fiber ``k(P) (x)_A B``."""
    A = u.source
    P = P if isinstance(P, IdealSpec) else ideal(A, *P)
    res = residue(A, P)
    fib = fiber_presentation(u, P, res)
    gb = fib.gb
    verdict = classify_artinian_quotient(gb, rng=rng)
    if isinstance(verdict, Zero):
        dim = 0
    else:
        basis = quotient_basis(gb)
        dim = INFINITE if basis is INFINITE else len(basis) // res.degree
    return FiberReport(PrimeSpec(A, P.generators, "yes"), fib, verdict, dim, res)


def psi_at(u: RingMorphism, P) -> tuple[bool, FiberReport]:
    rep = fiber_ring(u, P)
    return rep.is_field_or_zero, rep


def strong_at(u: RingMorphism, P) -> tuple[bool, FiberReport]:
    rep = fiber_ring(u, P)
    return rep.is_trivial, rep


# ---------------------------------------------------------------------------
# A-primes, spectral preimages, extended maximal ideals

@dataclass(frozen=True)
class APrimeResult:
    is_a_prime: bool
    contraction: IdealSpec
    witness: Poly | None = None
    note: str = ""

    def __bool__(self):
        return self.is_a_prime


def _int_saturation(B: FpAlgebra, gens) -> list[Poly]:
    if not isinstance(B.base, IntegerRing):
        return list(gens)
    return saturate_integers(list(B.relations) + list(gens), B.nvars)


def is_A_prime(u: RingMorphism, I) -> APrimeResult:
    """Whether ``I`` is A-prime: its contraction ``P`` is prime and ``I`` is closed under
    division by elements of ``u(A - P)``."""
    B = u.target
    I = I if isinstance(I, IdealSpec) else ideal(B, *I)
    if not I.is_proper():
        raise ImproperIdeal(f"{I} is the unit ideal of the target")
    P = contract_ideal(u, I)
    try:
        res = residue(u.source, P)
    except NotPrime as exc:
        return APrimeResult(False, P, None, f"contraction {P} is not prime ({exc})")
    if res.maximal or not isinstance(B.base, IntegerRing):
        return APrimeResult(True, P)
    sat = _int_saturation(B, I.generators)
    for g in sat:
        if not I.contains(g):
            return APrimeResult(False, P, B.poly(g), "an integer multiple lies in the ideal")
    return APrimeResult(True, P)


class NoPrimeOver:
    """Marker: the fiber is zero, so no prime of the target lies over the given prime."""

    def __repr__(self):
        return "NoPrimeOver"

    def __str__(self):
        return "NoPrimeOver"


NO_PRIME_OVER = NoPrimeOver()


def spectral_preimage(u: RingMorphism, P):
    """The unique prime of the target over ``P`` (kernel of ``B -> k(P) (x) B``),
    or ``NO_PRIME_OVER`` when the fiber is zero."""
    ok, rep = psi_at(u, P)
    if not ok:
        raise NotPsiAtPrime(rep.describe())
    if isinstance(rep.verdict, Zero):
        return NO_PRIME_OVER
    B = u.target
    gens = [u.apply(g) for g in rep.prime.generators]
    gens = [g for g in gens if g]
    if rep.residue.characteristic == 0 and isinstance(B.base, IntegerRing):
        gens = [g for g in _int_saturation(B, gens) if not B.contains(g)]
    return IdealSpec(B, tuple(B.poly(g) for g in gens))


def mb_maximal_check(u: RingMorphism, M) -> str:
    """``Maximal`` if MB is maximal, ``Unit`` if MB = B, ``Neither`` otherwise (a refutation of PSI at M)."""
    rep = fiber_ring(u, M)
    if not rep.residue.maximal:
        raise UnsupportedFiber(f"{rep.prime} is not maximal")
    if isinstance(rep.verdict, Zero):
        return "Unit"
    return "Maximal" if isinstance(rep.verdict, Field) else "Neither"


# ---------------------------------------------------------------------------
# epimorphisms

@dataclass(frozen=True)
class EpiResult:
    status: str
    witness: str | None = None


def is_epimorphism(u: RingMorphism) -> EpiResult:
    """Test whether ``B (x)_A B -> B`` is injective via the kernel generators ``y(x)1 - 1(x)y``."""
    try:
        T = tensor_over(u, u)
        for k in T.diagonal_kernel:
            r = T.algebra.reduce(k)
            if r:
                return EpiResult("no", T.algebra.fmt(k))
    except ResourceLimit:
        return EpiResult("unknown")
    return EpiResult("yes")


# ---------------------------------------------------------------------------
# global decisions

@dataclass(frozen=True)
class PsiVerdict:
    status: str
    witness: PrimeSpec | None = None
    report: FiberReport | None = None
    searched_bound: int | None = None
    engine: str = "symbolic"
    note: str = ""

    def __str__(self):
        if self.status == "No":
            return f"No (witness {self.witness})"
        if self.status == "Unknown":
            return f"Unknown (primes up to {self.searched_bound} pass)"
        return "Yes"


def _yes(engine="symbolic", note=""):
    return PsiVerdict("Yes", engine=engine, note=note)


def _no(rep: FiberReport, engine="symbolic", note=""):
    return PsiVerdict("No", rep.prime, rep, engine=engine, note=note)


def _rational_part(B: FpAlgebra) -> FpAlgebra:
    return FpAlgebra(QQ, B.gens, tuple(_to_field(r, QQ) for r in B.relations))


def _trace_discriminant(alg: QuotientAlgebra) -> Fraction:
    from sympy import Matrix, Rational

    basis = [alg.from_coords([1 if i == j else 0 for i in range(alg.dim)]) for j in range(alg.dim)]

    def trace(a):
        total = Fraction(0)
        for j, b in enumerate(basis):
            total += Fraction(alg.coords(alg.mul(a, b))[j])
        return total

    T = [[trace(alg.mul(a, b)) for b in basis] for a in basis]
    det = Matrix([[Rational(x.numerator, x.denominator) for x in row] for row in T]).det()
    return Fraction(int(det.p), int(det.q))


def critical_primes(B: FpAlgebra) -> list[int]:
    """Primes where the fibers of ``ZZ -> B`` may differ from the generic fiber:
    divisors of non-unit leading coefficients of the strong basis and of the
    trace-form discriminant of ``B (x) QQ``."""
    out = set()
    for _, lc in B.gb.leading_terms():
        out.update(prime_factors(abs(int(lc))))
    Q = _rational_part(B)
    if not Q.is_zero and quotient_basis(Q.gb) is not INFINITE:
        alg = QuotientAlgebra(Q.gb)
        if alg.dim > 1:
            d = _trace_discriminant(alg)
            if d:
                out.update(prime_factors(abs(d.numerator)))
                out.update(prime_factors(d.denominator))
    return sorted(out)


def _map_fibers(u: RingMorphism, primes, parallel: bool):
    A = u.source

    def one(p):
        return fiber_ring(u, prime(A, p) if p else prime(A))

    if parallel and len(primes) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(one, primes))
    return [one(p) for p in primes]


def _decide_over_integers(u: RingMorphism, bound: int, strong: bool, parallel: bool) -> PsiVerdict:
    A, B = u.source, u.target
    ok = (lambda r: r.is_trivial) if strong else (lambda r: r.is_field_or_zero)
    if isinstance(B.base, RationalField):
        r0 = fiber_ring(u, prime(A))
        return _yes(note="every nonzero prime becomes a unit") if ok(r0) else _no(r0)
    if isinstance(B.base, PrimeField):
        r = fiber_ring(u, prime(A, B.base.p))
        return _yes(note="only one characteristic occurs") if ok(r) else _no(r)
    r0 = fiber_ring(u, prime(A))
    if not ok(r0):
        return _no(r0)
    n = B.gb.integer_generator()
    if n:
        reps = _map_fibers(u, prime_factors(n), parallel)
        bad = [r for r in reps if not ok(r)]
        return _no(bad[0]) if bad else _yes(note=f"B is torsion, killed by {n}")
    crit = critical_primes(B)
    crit_reps = _map_fibers(u, crit, parallel)
    crit_bad = [r for r in crit_reps if not ok(r)]
    generic_dim = r0.dim
    if generic_dim <= 1:
        if crit_bad:
            return _no(crit_bad[0])
        return _yes(note=f"generic fiber has dimension {generic_dim}; critical primes {crit} checked")
    # generic fiber is a field of degree >= 2: search split primes
    candidates = [p for p in primes_up_to(bound) if p not in crit]
    step = 64
    for k in range(0, len(candidates), step):
        reps = _map_fibers(u, candidates[k:k + step], parallel)
        bad = [r for r in reps if not ok(r)]
        if bad:
            return _no(bad[0], note="smallest failing prime outside the critical set")
    if crit_bad:
        return _no(crit_bad[0])
    return PsiVerdict("Unknown", searched_bound=bound)


def _single_prime(u: RingMorphism, strong: bool) -> PsiVerdict:
    r = fiber_ring(u, prime(u.source))
    ok = r.is_trivial if strong else r.is_field_or_zero
    return _yes(note="the source is a field") if ok else _no(r)


def finite_prime_ideals(A: FpAlgebra) -> list[PrimeSpec]:
    """All primes of a finite ring, as generator lists in A's presentation."""
    from .finring import build_finite, ideal_generated, prime_ideals

    R = build_finite(A)
    out = []
    for Q in prime_ideals(R):
        gens, cur = [], ideal_generated(R, [])
        for e in sorted(Q):
            if e not in cur:
                gens.append(e)
                cur = ideal_generated(R, gens)
        out.append(PrimeSpec(A, tuple(A.poly(R.show(e)) for e in gens), "yes"))
    return out


def _primes_of_field_algebra(A: FpAlgebra) -> list[PrimeSpec] | None:
    """Primes of a zero-dimensional algebra over a field: a field gives (0), a univariate
    quotient gives one prime per irreducible factor."""
    from .kernel import univ_factor

    if quotient_basis(A.gb) is INFINITE:
        return None
    if isinstance(classify_artinian_quotient(A.gb), Field):
        return [PrimeSpec(A, (), "yes")]
    if A.nvars == 1 and A.gb.basis:
        f = A.gb.basis[0]
        _, facs = univ_factor(f, A.base)
        return [PrimeSpec(A, (g,), "yes") for g, _ in facs]
    return None


def _decide_over_primes(u: RingMorphism, primes, strong: bool, engine: str) -> PsiVerdict:
    for P in primes:
        r = fiber_ring(u, P)
        if not (r.is_trivial if strong else r.is_field_or_zero):
            return _no(r, engine=engine)
    return _yes(engine=engine, note=f"{len(primes)} primes checked")


def decide(u: RingMorphism, bound: int = 1000, *, strong: bool = False, common_ideal=None,
           parallel: bool = False) -> PsiVerdict:
    A, B = u.source, u.target
    if B.is_zero:
        return _yes(note="target is the zero ring")
    if common_ideal is not None:
        return _decide_reduced(u, common_ideal_reduce(u, common_ideal), strong)
    if A.is_base():
        if isinstance(A.base, IntegerRing):
            return _decide_over_integers(u, bound, strong, parallel)
        return _single_prime(u, strong)
    if A.is_zero:
        return _yes(note="source is the zero ring")
    if isinstance(A.base, RationalField):
        primes = _primes_of_field_algebra(A)
        if primes is None:
            raise UnsupportedSource("source spectrum is not enumerable")
        return _decide_over_primes(u, primes, strong, "symbolic")
    if isinstance(A.base, IntegerRing) and isinstance(B.base, RationalField):
        # fibers over primes of positive characteristic vanish
        primes = _primes_of_field_algebra(_rational_part(A))
        if primes is not None:
            lifted = [PrimeSpec(A, tuple(saturate_integers(
                [g.clear_denominators() for g in P.generators] + list(A.relations), A.nvars)), "yes")
                for P in primes]
            return _decide_over_primes(u, lifted, strong, "symbolic")
    try:
        primes = finite_prime_ideals(A)
    except NotFiniteQuotient:
        primes = None
    if primes is not None:
        return _decide_over_primes(u, primes, strong, "finite")
    I = conductor_ideal(u)
    if I is None:
        raise UnsupportedSource("no finite spectrum and no common ideal found")
    return _decide_reduced(u, common_ideal_reduce(u, I), strong)


def decide_psi(u: RingMorphism, bound: int = 1000, **kw) -> PsiVerdict:
    return decide(u, bound, strong=False, **kw)


def decide_strong(u: RingMorphism, bound: int = 1000, **kw) -> PsiVerdict:
    return decide(u, bound, strong=True, **kw)


# ---------------------------------------------------------------------------
# common-ideal reduction

def _free_z_basis(R: FpAlgebra):
    if not isinstance(R.base, IntegerRing):
        return None
    mods = monic_finite_over_base(R)
    if mods is None or any(r for _, r in mods):
        return None
    return [m for m, _ in mods]


def _coords(R: FpAlgebra, basis, f: Poly) -> list[int]:
    r = R.reduce(f)
    return [int(r.terms.get(m, 0)) for m in basis]


def _image_lattice(u: RingMorphism):
    """Coordinates of u(basis of A) in a ZZ-basis of B, or None when A, B are not free of finite rank."""
    A, B = u.source, u.target
    ba, bb = _free_z_basis(A), _free_z_basis(B)
    if ba is None or bb is None or len(ba) != len(bb):
        return None
    rows = [_coords(B, bb, u.apply(Poly({m: 1}, A.nvars, ZZ))) for m in ba]
    return rows, bb


def conductor_ideal(u: RingMorphism) -> IdealSpec | None:
    """``n*B`` where ``n`` is the exponent of ``B / u(A)``; an ideal of B contained in u(A)."""
    from sympy import Matrix
    from sympy.matrices.normalforms import invariant_factors
    from sympy import ZZ as SZZ

    lat = _image_lattice(u)
    if lat is None:
        return None
    rows, _ = lat
    M = Matrix(rows)
    if M.det() == 0:
        return None
    n = int(abs(invariant_factors(M, domain=SZZ)[-1]))
    return ideal(u.target, n)


def _in_lattice(rows, v) -> bool:
    from sympy import Matrix

    sol = Matrix(rows).T.solve(Matrix(v))
    return all(x.is_integer for x in sol)


@dataclass(frozen=True)
class ReducedInstance:
    morphism: RingMorphism
    common_ideal: IdealSpec
    contracted: IdealSpec

    def finite(self):
        from .finring import finite_morphism
        return finite_morphism(self.morphism)


def common_ideal_reduce(u: RingMorphism, I) -> ReducedInstance:
    """``A / u^{-1}(I) -> B / I`` for an ideal ``I`` of B lying inside ``u(A)``."""
    from .finring import build_finite
    from .rings import quotient_construction

    B = u.target
    I = I if isinstance(I, IdealSpec) else ideal(B, *I)
    if not I.is_proper():
        raise NotCommonIdeal("the unit ideal is not a common ideal")
    lat = _image_lattice(u)
    if lat is None:
        raise NotCommonIdeal("source and target are not free ZZ-modules of equal finite rank")
    rows, bb = lat
    from sympy import Matrix
    if Matrix(rows).det() == 0:
        raise NotCommonIdeal("the morphism is not injective")
    for g in I.generators:
        for m in bb:
            v = _coords(B, bb, g * Poly({m: 1}, B.nvars, B.base))
            if not _in_lattice(rows, v):
                raise NotCommonIdeal(f"{B.fmt(B.reduce(g * Poly({m: 1}, B.nvars, B.base)))} lies in I but not in u(A)")
    J = contract_ideal(u, I)
    red = quotient_construction(u, J, I)
    build_finite(red.source)
    build_finite(red.target)
    return ReducedInstance(red, I, J)


def _decide_reduced(u: RingMorphism, red: ReducedInstance, strong: bool) -> PsiVerdict:
    from .finring import bruteforce_status

    st = bruteforce_status(red.finite())
    ok = st.strong if strong else st.psi
    if ok:
        return _yes(engine="finite", note=f"reduced modulo common ideal {red.common_ideal}")
    for P in finite_prime_ideals(red.morphism.source):
        gens = tuple(red.contracted.generators) + tuple(P.generators)
        Pl = PrimeSpec(u.source, tuple(u.source.poly(g) for g in gens), "yes")
        r = fiber_ring(u, Pl)
        if not (r.is_trivial if strong else r.is_field_or_zero):
            return _no(r, engine="finite", note=f"reduced modulo common ideal {red.common_ideal}")
    raise ResourceLimit("reduced instance fails but no failing fiber was located")


# ---------------------------------------------------------------------------
# quadratic orders

@dataclass(frozen=True)
class QuadraticInstance:
    d: int
    squarefree: bool

    @property
    def morphism(self) -> RingMorphism:
        A = make_algebra("ZZ", ["x"], [f"x^2 - ({self.d})"])
        B = make_algebra("ZZ", ["w"], [f"w^2 - w - ({(self.d - 1) // 4})"])
        return make_morphism(A, B, ["2*w - 1"])


def quadratic_instance(d: int) -> QuadraticInstance:
    if d % 4 != 1:
        raise InvalidD(f"{d} is not 1 modulo 4")
    if d >= 0 and int(d ** 0.5 + 0.5) ** 2 == d:
        raise InvalidD(f"{d} is a perfect square")
    sf = all(d % (p * p) for p in range(2, int(abs(d) ** 0.5) + 1))
    return QuadraticInstance(d, sf)


def quadratic_order_psi(inst) -> PsiVerdict:
    """Decide PSI for ``ZZ[sqrt d] -> ZZ[(1 + sqrt d)/2]`` through the common ideal ``2B``."""
    inst = inst if isinstance(inst, QuadraticInstance) else quadratic_instance(inst)
    u = inst.morphism
    return _decide_reduced(u, common_ideal_reduce(u, ideal(u.target, 2)), False)
