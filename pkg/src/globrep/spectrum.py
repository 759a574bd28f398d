"""Prime Serre ideals and their Zariski topology.

Essentially finite families: ideals are determined by their supports, so the
lattice of ideals is the power set of the classes and the primes are the
group primes ``P_G`` (support = everything but ``G``).

N-indexed families: supports are finite or cofinite subsets of N. The points
are ``P_n`` and ``P_inf`` (finite support); closed sets are computed from
named objects by descriptor arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactla import kron
from .family import GroupFamily, build_family, check_n_stable
from .rep import (OutRep, Rep, chi, concentrated, dsum, e_rep, is_isomorphic, n_indexing, support,
                  tensor, zero_rep)
from .serre import IdealSpec, gamma_certificate, member
from .support import SupportDescriptor
from .symbolic import Named

INFINITY = "inf"


@dataclass(frozen=True, order=True)
class PrimePoint:
    """``P_G`` for a class label or level index, or ``P_inf`` when ``label == INFINITY``."""

    label: object

    @property
    def is_infinity(self) -> bool:
        return self.label == INFINITY

    def __str__(self):
        return "P_inf" if self.is_infinity else f"P_{self.label}"


# --- essentially finite families ---------------------------------------------------------


def group_prime(family: GroupFamily, G: str) -> IdealSpec:
    family._check(G)
    return IdealSpec.from_support(family, [H for H in family.classes if H != G], name=f"P_{G}")


def prime_decision(family: GroupFamily, S: Iterable[str]) -> tuple[bool, tuple | None]:
    """Whether the ideal with support ``S`` is prime, with a witness pair when not.

    Supports of objects are exactly the subsets of the classes (direct sums
    of chi's realize each one), so primality means: ``S`` is proper and
    ``A & B <= S`` forces ``A <= S`` or ``B <= S``. That holds iff the
    complement of ``S`` is a single class; otherwise two distinct classes
    outside ``S`` give the witness ``(S + {a}, S + {b})``, and for ``S`` the
    whole family the unit is the witness to non-properness.
    """
    S = frozenset(S)
    rest = [G for G in family.classes if G not in S]
    if not rest:
        return False, ("improper",)
    if len(rest) == 1:
        return True, None
    a, b = rest[0], rest[1]
    return False, (S | {a}, S | {b})


def primes_by_brute_force(family: GroupFamily) -> list[frozenset]:
    """Prime supports found by checking every pair of supports (small families only)."""
    cls = family.classes
    subsets = [frozenset(c) for r in range(len(cls) + 1) for c in itertools.combinations(cls, r)]
    full = frozenset(cls)
    out = []
    for S in subsets:
        if S == full:
            continue
        if all(A <= S or B <= S for A in subsets for B in subsets if A & B <= S):
            out.append(S)
    return out


@dataclass
class SerreLattice:
    family: GroupFamily
    ideals: list[IdealSpec]

    def by_support(self, S: Iterable[str]) -> IdealSpec:
        S = frozenset(S)
        for I in self.ideals:
            if I.support.points == S:
                return I
        raise KeyError(S)

    def meet(self, I: IdealSpec, J: IdealSpec) -> IdealSpec:
        return self.by_support(I.support.points & J.support.points)

    def join(self, I: IdealSpec, J: IdealSpec) -> IdealSpec:
        return self.by_support(I.support.points | J.support.points)

    def zero(self) -> IdealSpec:
        return self.by_support(())

    def primes(self) -> list[IdealSpec]:
        return [I for I in self.ideals if prime_decision(self.family, I.support.points)[0]]

    def round_trip_ok(self) -> bool:
        """ideal -> union of generator supports -> ideal is the identity, and distinct ideals have distinct supports."""
        seen = set()
        for I in self.ideals:
            S = frozenset()
            for g in I.generators:
                S |= support(g).points
            if self.by_support(S) is not I:
                return False
            seen.add(S)
        return len(seen) == len(self.ideals) == 2 ** len(self.family)


def enumerate_serre_ideals(family: GroupFamily, guard: int = 20) -> SerreLattice:
    n = len(family)
    if n > guard:
        raise ValueError(f"{n} classes exceed the enumeration guard {guard}")
    chis = {G: chi(family, G) for G in family.classes}
    ideals = []
    for r in range(n + 1):
        for S in itertools.combinations(family.classes, r):
            name = "{" + ", ".join(S) + "}"
            ideals.append(IdealSpec.generated(family, [chis[G] for G in S], name=name))
    return SerreLattice(family, ideals)


def zariski_closed_finite(family: GroupFamily, objects: Sequence[Rep]) -> frozenset[str]:
    """Classes ``G`` with ``P_G`` disjoint from the objects, i.e. in every support."""
    out = set(family.classes)
    for X in objects:
        out &= support(X).points
    return frozenset(out)


@dataclass
class FiniteSpectrum:
    family: GroupFamily
    points: list[PrimePoint]
    discrete: bool
    injective: bool
    realized_closed_sets: int
    specialization: str = "trivial"

    def describe(self) -> str:
        n = len(self.points)
        kind = "discrete" if self.discrete else "not discrete"
        return f"{n} point{'s' if n != 1 else ''}, {kind}"

    def to_json(self) -> dict:
        return {"kind": "essentially_finite", "family": self.family.spec,
                "points": [str(p) for p in self.points], "discrete": self.discrete,
                "injective": self.injective, "realized_closed_sets": self.realized_closed_sets,
                "specialization": self.specialization, "summary": self.describe()}


def spc(family: GroupFamily, guard: int = 12) -> FiniteSpectrum:
    """Spectrum of an essentially finite family; each subset is realized as some Z(S)."""
    lattice_primes = enumerate_serre_ideals(family, guard).primes()
    points = []
    for I in lattice_primes:
        (G,) = [H for H in family.classes if H not in I.support.points]
        if I != group_prime(family, G):
            raise AssertionError(f"prime {I} is not a group prime")
        points.append(PrimePoint(G))
    injective = len({p.label for p in points}) == len(points)
    chis = {G: chi(family, G) for G in family.classes}
    realized = 0
    for r in range(len(family) + 1):
        for T in itertools.combinations(family.classes, r):
            objs = [dsum(*[chis[G] for G in T])] if T else [zero_rep(family)]
            if zariski_closed_finite(family, objs) == frozenset(T):
                realized += 1
    discrete = realized == 2 ** len(family)
    return FiniteSpectrum(family, points, discrete, injective, realized)


# --- N-indexed families: the symbolic layer ---------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """A set of points of the N-indexed spectrum: finite/cofinite group part plus maybe ``P_inf``."""

    group: SupportDescriptor
    infinity: bool = False

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.group | other.group, self.infinity or other.infinity)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.group & other.group, self.infinity and other.infinity)

    def __contains__(self, p: PrimePoint) -> bool:
        return self.infinity if p.is_infinity else p.label in self.group

    def __str__(self):
        g = str(self.group)
        return g + (" + {inf}" if self.infinity else "")


ClosedSet = PointSet


@dataclass(frozen=True)
class WitnessTerm:
    """A (possibly infinite) family of named objects, known through two facts.

    ``meet`` is the intersection of the members' supports and ``all_cofinite``
    says no member has finite support. That is all a Zariski closed set needs.
    """

    meet: SupportDescriptor
    all_cofinite: bool
    label: str

    @classmethod
    def of(cls, X: Named) -> "WitnessTerm":
        d = X.descriptor()
        return cls(d, d.cofinite, str(X))

    @classmethod
    def gammas(cls, J: SupportDescriptor) -> "WitnessTerm":
        """``{gamma_i : i in J}`` for nonempty ``J``."""
        if J.is_empty():
            raise ValueError("empty family of gammas")
        return cls(J.complement(), True, f"gamma_i for i in {J}")

    def plus(self, other: "WitnessTerm") -> "WitnessTerm":
        """All pairwise direct sums ``a + b``."""
        return WitnessTerm(self.meet | other.meet, self.all_cofinite or other.all_cofinite,
                           f"({self.label}) + ({other.label})")


def _terms(S) -> list[WitnessTerm]:
    return [t if isinstance(t, WitnessTerm) else WitnessTerm.of(t) for t in S]


def zariski_closed(S) -> PointSet:
    """``Z(S)``: ``P_n`` survives iff ``n`` is in every support; ``P_inf`` iff no support is finite."""
    group = SupportDescriptor.cofinite_excluding()
    inf = True
    for t in _terms(S):
        group = group & t.meet
        inf = inf and t.all_cofinite
    return PointSet(group, inf)


def union_witness(S1, S2) -> list[WitnessTerm]:
    """A witness for ``Z(S1) | Z(S2)``: pairwise direct sums."""
    return [a.plus(b) for a in _terms(S1) for b in _terms(S2)]


def reference_is_closed(T: PointSet) -> bool:
    """Closed sets of the one-point compactification of N."""
    return (T.group.is_finite and not T.infinity) or T.infinity


def _named_with_support(S: SupportDescriptor) -> Named:
    if S.is_finite:
        pts = sorted(S.points)
        if not pts:
            return Named.zero()
        out = Named.chi(pts[0])
        for i in pts[1:]:
            out = out + Named.chi(i)
        return out
    ex = sorted(S.excluded)
    if not ex:
        return Named.unit()
    out = Named.gamma(ex[0])
    for i in ex[1:]:
        out = out @ Named.gamma(i)
    return out


@dataclass
class NStableSpectrum:
    kind: str
    p: int
    window_report: dict = field(default_factory=dict)
    specialization: str = "trivial"

    def points(self, top: int) -> list[PrimePoint]:
        return [PrimePoint(n) for n in range(top + 1)] + [PrimePoint(INFINITY)]

    def witness(self, T: PointSet):
        """Objects ``S`` with ``Z(S) == T``, or ``None`` when no such ``S`` exists.

        Every support is finite or cofinite, so if some member of ``S`` has
        finite support then ``Z(S)`` is a finite set without ``P_inf``, and
        otherwise ``P_inf`` lies in ``Z(S)``. Hence a cofinite group part
        without ``P_inf`` is never of the form ``Z(S)``.
        """
        if not T.infinity:
            if T.group.cofinite:
                return None
            return [_named_with_support(T.group)]
        if T.group.cofinite:
            return [_named_with_support(T.group)]
        return [WitnessTerm.gammas(T.group.complement())]

    def is_closed(self, T: PointSet) -> bool:
        S = self.witness(T)
        if S is None:
            return False
        if zariski_closed(S) != T:
            raise AssertionError(f"witness for {T} realizes {zariski_closed(S)}")
        return True

    def describe(self) -> str:
        return "N* (one-point compactification)"

    def to_json(self) -> dict:
        return {"kind": "n_stable", "family_kind": self.kind, "p": self.p,
                "points": "P_n for n in N, and P_inf", "summary": self.describe(),
                "closed_sets": "finite sets of P_n, or any set containing P_inf",
                "specialization": self.specialization, "window": self.window_report}


N_STABLE_KINDS = ("cyclic_p", "elementary_abelian")


def builtin_truncation(kind: str, p: int, top: int) -> GroupFamily:
    if kind == "cyclic_p":
        return build_family({"kind": kind, "p": p, "max_exponent": top})
    if kind == "elementary_abelian":
        return build_family({"kind": kind, "p": p, "max_rank": top})
    raise ValueError(f"{kind!r} is not a builtin N-indexed family")


def spc_n_stable(kind: str, p: int = 2, window: int = 2) -> NStableSpectrum:
    """The N-indexed spectrum; checks the chain condition on a small truncation."""
    if kind not in N_STABLE_KINDS:
        raise ValueError(f"{kind!r} is not a builtin N-indexed family")
    fam = builtin_truncation(kind, p, window)
    rep = check_n_stable(fam)
    if not rep.total_order:
        raise AssertionError(f"truncation is not a chain: {rep.failures}")
    return NStableSpectrum(kind, p, {"levels": rep.indexing, "chain": True})


def representable_point_sets(top: int, max_exceptional: int = 2, extra: Iterable[frozenset] = ()) -> list[PointSet]:
    """Point sets whose exceptional index set lies in ``0..top`` and has at most the given size."""
    sets = [frozenset(c) for r in range(max_exceptional + 1)
            for c in itertools.combinations(range(top + 1), r)]
    sets += [frozenset(e) for e in extra]
    out = []
    for E in sets:
        for cof in (False, True):
            g = SupportDescriptor(E, cof)
            out += [PointSet(g, False), PointSet(g, True)]
    return out


# --- primes among descriptor-presented ideals --------------------------------------------------


@dataclass(frozen=True)
class DescribedIdeal:
    """Objects whose support lies in ``U`` (or, with ``finite_tail``, leaves ``U`` finitely often)."""

    U: SupportDescriptor
    finite_tail: bool = False

    def contains(self, X) -> bool:
        d = X.descriptor() if isinstance(X, Named) else X
        if self.finite_tail:
            return (d & self.U.complement()).is_finite
        return d <= self.U

    @property
    def proper(self) -> bool:
        return not self.contains(Named.unit())

    def same_ideal(self, other: "DescribedIdeal") -> bool:
        return self.canonical() == other.canonical()

    def canonical(self) -> "DescribedIdeal":
        if self.finite_tail:
            if self.U.is_finite:
                return P_INFINITY
            return DescribedIdeal(SupportDescriptor.cofinite_excluding(), False)
        return self


P_INFINITY = DescribedIdeal(SupportDescriptor.finite(), True)


def p_n(n: int) -> DescribedIdeal:
    return DescribedIdeal(SupportDescriptor.cofinite_excluding([n]))


@dataclass
class PrimeVerdict:
    prime: bool
    name: str | None = None
    witness: tuple[Named, Named] | None = None


def decide_prime(I: DescribedIdeal) -> PrimeVerdict:
    """Exact decision, with a named-object witness pair for non-primes.

    The witness ``(X, Y)`` satisfies ``X (x) Y in I`` with ``X, Y`` outside
    ``I``, checked by descriptor arithmetic before it is returned.
    """
    I = I.canonical()
    if not I.proper:
        return PrimeVerdict(False, "whole category")
    if I == P_INFINITY:
        return PrimeVerdict(True, "P_inf")
    U = I.U
    if U.cofinite and len(U.excluded) == 1:
        (i,) = U.excluded
        return PrimeVerdict(True, f"P_{i}")
    if U.cofinite:
        c1, c2 = sorted(U.excluded)[:2]
    else:
        gen = (n for n in itertools.count() if n not in U.points)
        c1, c2 = next(gen), next(gen)
    X = _named_with_support(U | SupportDescriptor.finite([c1]))
    Y = _named_with_support(U | SupportDescriptor.finite([c2]))
    if not (I.contains(X @ Y) and not I.contains(X) and not I.contains(Y)):
        raise AssertionError(f"bad witness for {I}")
    return PrimeVerdict(False, None, (X, Y))


def replay_uniqueness(I: DescribedIdeal) -> int | None:
    """For a prime ``I`` other than ``P_inf``, rerun the argument that ``I = P_i``; returns ``i``.

    Returns ``None`` when ``I`` is ``P_inf``. Raises when a step of the
    argument fails, which would contradict the classification.
    """
    I = I.canonical()
    if I == P_INFINITY:
        return None
    if not decide_prime(I).prime:
        raise ValueError("replay needs a prime ideal")
    U = I.U
    if U.is_finite:
        # I sits inside P_inf; gamma_i (x) chi_i = 0 is in I and gamma_i is not,
        # so every chi_i would have to be in I
        bad = next(i for i in itertools.count() if not I.contains(Named.chi(i)))
        raise AssertionError(f"chi_{bad} escapes a prime inside P_inf")
    E = sorted(U.excluded)
    X = _named_with_support(U)
    if not I.contains(X) or not E:
        raise AssertionError("cofinite witness missing from the ideal")
    # X has the support of the tensor of gamma_i over E, so that tensor is in I;
    # primality puts one factor in I
    hits = [i for i in E if I.contains(Named.gamma(i))]
    if not hits:
        raise AssertionError("no gamma factor lies in the prime")
    i = hits[0]
    if not p_n(i).U <= U:
        raise AssertionError("P_i is not contained in the prime")
    if not I.same_ideal(p_n(i)):
        raise AssertionError(f"maximality of P_{i} fails")
    return i


def described_ideals(universe: int, max_exceptional: int) -> list[DescribedIdeal]:
    out = []
    for r in range(max_exceptional + 1):
        for E in itertools.combinations(range(universe), r):
            for cof in (False, True):
                for tail in (False, True):
                    out.append(DescribedIdeal(SupportDescriptor(frozenset(E), cof), tail))
    return out


# --- P_inf -----------------------------------------------------------------------------------------


@dataclass
class PInfinityReport:
    primality_pairs: int
    primality_ok: bool
    certificates: dict[str, bool]
    excluded: list[str]
    annihilators: dict[int, bool]

    @property
    def ok(self) -> bool:
        return (self.primality_ok and all(self.certificates.values())
                and all(self.annihilators.values()))


def verify_p_infinity(catalog: Sequence[Named], kind: str = "cyclic_p", p: int = 2) -> PInfinityReport:
    top = max((X.max_index() for X in catalog), default=0)
    fam = builtin_truncation(kind, p, top + 1)
    idx = n_indexing(fam)
    pairs = 0
    ok = True
    for X, Y in itertools.product(catalog, repeat=2):
        pairs += 1
        if (X @ Y).descriptor().is_finite and not (X.descriptor().is_finite or Y.descriptor().is_finite):
            ok = False
    certs, excluded = {}, []
    for X in catalog:
        d = X.descriptor()
        if d.is_finite:
            cert = gamma_certificate(X.realize(fam, idx), idx)
            certs[str(X)] = not cert.verify() and all(idx.index(G) in d.points for G, _ in cert.pieces())
        else:
            excluded.append(str(X))
    ann = {}
    for i in range(top + 1):
        Z = tensor(Named.gamma(i).realize(fam, idx), Named.chi(i).realize(fam, idx))
        ann[i] = Z.is_zero() and not P_INFINITY.contains(Named.gamma(i))
    return PInfinityReport(pairs, ok, certs, excluded, ann)


# --- quotients by group primes ----------------------------------------------------------------------


def dual(V: OutRep) -> OutRep:
    return OutRep(V.family, V.group_class, V.dim, {s: m.inverse().T for s, m in V.action.items()})


def outrep_tensor(V: OutRep, W: OutRep) -> OutRep:
    return OutRep(V.family, V.group_class, V.dim * W.dim,
                  {s: kron(V.action[s], W.action[s]) for s in V.action})


def outrep_isomorphic(V: OutRep, W: OutRep) -> bool:
    fam, G = V.family, V.group_class
    return V.dim == W.dim and is_isomorphic(concentrated(fam, G, V), concentrated(fam, G, W)) is not None


@dataclass
class QuotientReport:
    group_class: str
    e_evaluates_to_regular: bool
    primes_above: list[str]
    maximal: bool
    kills_prime: bool
    evaluated_spectrum_points: int
    note: str = "verified at the level of spectra; the quotient category is not identified further"

    @property
    def ok(self) -> bool:
        return (self.e_evaluates_to_regular and self.maximal and self.kills_prime
                and self.evaluated_spectrum_points == 1)


def quotient_by_group_prime(family: GroupFamily, G: str, catalog: Sequence[Rep] | None = None) -> QuotientReport:
    """Evaluation at ``G`` as the quotient by ``P_G``, checked at the computable level."""
    family._check(G)
    reg = OutRep.regular(family, G)
    e_ok = outrep_isomorphic(OutRep.from_rep(e_rep(family, G), G), reg)
    rest = frozenset(H for H in family.classes if H != G)
    above = []
    for r in range(len(rest), len(family) + 1):
        for S in itertools.combinations(family.classes, r):
            S = frozenset(S)
            if rest <= S and prime_decision(family, S)[0]:
                above.append("{" + ", ".join(sorted(S)) + "}")
    if catalog is None:
        catalog = [chi(family, H) for H in family.classes] + [e_rep(family, H) for H in family.classes]
    PG = group_prime(family, G)
    kills = all(X.dims[G] == 0 for X in catalog if member(X, PG))
    # in Out(G)-representations every nonzero V generates everything, since
    # V (x) V* contains the trivial representation; so {0} is the only prime
    reps = [OutRep.trivial(family, G), reg] + [OutRep.from_rep(X, G) for X in catalog if X.dims[G]]
    gen_all = all(_has_invariants(outrep_tensor(V, dual(V))) for V in reps)
    return QuotientReport(G, e_ok, above, len(above) == 1, kills, 1 if gen_all else 0)


def _has_invariants(V: OutRep) -> bool:
    return V.invariants().dim > 0
