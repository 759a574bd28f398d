"""Serre tensor ideals: membership, filtration certificates and a closure oracle.

Over an essentially finite family an object lies in the Serre tensor ideal
generated by a set ``S`` exactly when its support is contained in the union
of the supports of ``S``. :func:`decompose_chi` and :func:`gamma_certificate`
produce explicit chains of short exact sequences that witness this.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactla import Subspace
from .family import GroupFamily, up_closure
from .io import matrix_to_json
from .rep import (BudgetExceeded, OutRep, Rep, RepError, RepMorphism, ShortExactSequence, chi,
                  cokernel, find_epi, find_mono, is_isomorphic, n_indexing,
                  quotient, subobject, support, tensor)
from .support import SupportDescriptor
from .symbolic import Named


# --- ideals ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IdealSpec:
    """A Serre tensor ideal presented by generators; membership is decided by support."""

    family: GroupFamily
    generators: tuple = ()
    support: SupportDescriptor = SupportDescriptor.finite()
    name: str = ""

    @classmethod
    def generated(cls, family: GroupFamily, generators: Iterable[Rep], name: str = "") -> "IdealSpec":
        gens = tuple(generators)
        supp = SupportDescriptor.finite()
        for g in gens:
            if g.family != family:
                raise RepError("generator lives over a different family")
            supp = supp | support(g)
        return cls(family, gens, supp, name)

    @classmethod
    def from_support(cls, family: GroupFamily, classes: Iterable[str], name: str = "") -> "IdealSpec":
        """The ideal generated by ``chi_{G,k}`` for the given classes."""
        classes = sorted(set(classes), key=family.classes.index)
        return cls.generated(family, [chi(family, G) for G in classes], name)

    def classes(self) -> frozenset:
        return self.support.points

    def __eq__(self, other):
        return isinstance(other, IdealSpec) and self.family == other.family and self.support == other.support

    def __hash__(self):
        return hash((self.family, self.support))

    def __repr__(self):
        return f"IdealSpec({self.name or sorted(self.support.points)})"


def member(X: Rep, ideal: IdealSpec) -> bool:
    if X.family != ideal.family:
        raise RepError("object and ideal live over different families")
    return support(X) <= ideal.support


def certified_member(X: Rep, ideal: IdealSpec) -> tuple[bool, "FiltrationCertificate | None"]:
    """Membership plus, when it holds, a verified chi-filtration of ``X``."""
    if not member(X, ideal):
        return False, None
    return True, decompose_chi(X)


# --- certificates ---------------------------------------------------------------------


@dataclass
class FiltrationStep:
    """One short exact sequence of a filtration.

    ``kind == "sub"``: the concentrated piece is the left term and the chain
    continues with the right term. ``kind == "quotient"``: the piece is the
    right term and the chain continues with the left term.
    """

    kind: str
    level: str
    ses: ShortExactSequence
    witness: RepMorphism | None

    @property
    def current(self) -> Rep:
        return self.ses.middle

    @property
    def piece(self) -> Rep:
        return self.ses.sub if self.kind == "sub" else self.ses.quotient

    @property
    def rest(self) -> Rep:
        return self.ses.quotient if self.kind == "sub" else self.ses.sub


@dataclass
class FiltrationCertificate:
    target: Rep
    steps: list[FiltrationStep] = field(default_factory=list)

    def pieces(self) -> list[tuple[str, int]]:
        return [(s.level, s.piece.dims[s.level]) for s in self.steps]

    def verify(self) -> list[str]:
        """Re-check the chain from scratch; returns the problems found."""
        problems = []
        cur = self.target
        for n, st in enumerate(self.steps):
            if st.current != cur:
                problems.append(f"step {n} does not continue the chain")
            problems += [f"step {n}: {v}" for v in st.ses.violations()]
            P = st.piece
            if any(d for G, d in P.dims.items() if G != st.level):
                problems.append(f"step {n}: piece is not concentrated at {st.level}")
            ref = chi(P.family, st.level, OutRep.from_rep(P, st.level)) if P.dims[st.level] else None
            if ref is not None:
                w = st.witness
                if w is None or w.source != P or w.target != ref or not w.is_iso() or w.naturality_violations():
                    problems.append(f"step {n}: missing or invalid isomorphism to chi")
            cur = st.rest
        if not cur.is_zero():
            problems.append("chain does not end at 0")
        return problems

    def to_json(self) -> dict:
        steps = []
        for st in self.steps:
            P = st.piece
            steps.append({
                "kind": st.kind,
                "level": st.level,
                "dims": {"sub": st.ses.sub.dims, "middle": st.ses.middle.dims,
                         "quotient": st.ses.quotient.dims},
                "mono": {G: matrix_to_json(m) for G, m in st.ses.mono.components.items()},
                "epi": {G: matrix_to_json(m) for G, m in st.ses.epi.components.items()},
                "piece_dim": P.dims[st.level],
                "exact": st.ses.is_exact(),
            })
        return {"target_dims": self.target.dims, "steps": steps,
                "verified": not self.verify()}


def _chi_witness(P: Rep, G: str) -> RepMorphism:
    ref = chi(P.family, G, OutRep.from_rep(P, G))
    w = is_isomorphic(P, ref)
    if w is None:
        raise AssertionError(f"concentrated piece at {G} is not isomorphic to chi")
    return w


def decompose_chi(X: Rep) -> FiltrationCertificate:
    """Strip concentrated subobjects, largest classes first, down to 0."""
    fam = X.family
    cert = FiltrationCertificate(X)
    W = X
    for G in fam.descending():
        if not W.dims[G]:
            continue
        subs = {H: (Subspace.full(W.dims[H]) if H == G else Subspace.zero(W.dims[H]))
                for H in fam.classes}
        S, mono = subobject(W, subs)
        C, epi = cokernel(mono, check=False)
        ses = ShortExactSequence(mono, epi)
        bad = ses.violations()
        if bad:
            raise AssertionError(f"internal exactness failure at {G}: {bad[0]}")
        cert.steps.append(FiltrationStep("sub", G, ses, _chi_witness(S, G)))
        W = C
    if not W.is_zero():
        raise AssertionError("filtration did not terminate at 0")
    return cert


def gamma_filtration(X: Rep, m: int, indexing: Sequence[str] | None = None) -> ShortExactSequence:
    """``Gamma_m X >-> X ->> chi_{m, X(m)}`` for ``X`` vanishing below level ``m``."""
    fam = X.family
    idx = list(indexing) if indexing is not None else n_indexing(fam)
    low = [G for G in idx[:m] if X.dims[G]]
    if low:
        raise RepError(f"object is nonzero below level {m} (at {low[0]})")
    level = {G: n for n, G in enumerate(idx)}
    subs = {G: (Subspace.full(X.dims[G]) if level[G] > m else Subspace.zero(X.dims[G]))
            for G in fam.classes}
    S, mono = subobject(X, subs)
    Q, epi = quotient(X, subs)
    ses = ShortExactSequence(mono, epi)
    bad = ses.violations()
    if bad:
        raise AssertionError(f"internal exactness failure: {bad[0]}")
    return ses


def gamma_certificate(X: Rep, indexing: Sequence[str] | None = None) -> FiltrationCertificate:
    """Peel off the bottom level repeatedly; the pieces are the chi's of Serre<chi_i>."""
    idx = list(indexing) if indexing is not None else n_indexing(X.family)
    cert = FiltrationCertificate(X)
    W = X
    for m, G in enumerate(idx):
        if W.is_zero():
            break
        if not W.dims[G]:
            continue
        ses = gamma_filtration(W, m, idx)
        cert.steps.append(FiltrationStep("quotient", G, ses, _chi_witness(ses.quotient, G)))
        W = ses.sub
    return cert


# --- Serre+ -----------------------------------------------------------------------------


def serre_plus_support(Y: Rep, n: int) -> frozenset:
    """Support of the ideal generated by ``Y`` and ``e_G`` for ``G`` above ``supp Y`` with ``|G| > n``."""
    fam = Y.family
    sY = support(Y).points
    big = [G for G in up_closure(fam, sY) if fam.order(G) > n]
    return frozenset(sY) | up_closure(fam, big)


def serre_plus_member(X: Rep, Y: Rep, n: int) -> bool:
    if X.family != Y.family:
        raise RepError("objects live over different families")
    return support(X).points <= serre_plus_support(Y, n)


# --- symbolic layer -----------------------------------------------------------------------


def _descriptor(obj) -> SupportDescriptor:
    if isinstance(obj, SupportDescriptor):
        d = obj
    elif isinstance(obj, Named):
        d = obj.descriptor()
    else:
        raise TypeError(f"expected a named object or support descriptor, got {type(obj).__name__}")
    if any(not isinstance(n, int) or isinstance(n, bool) or n < 0 for n in d.points):
        raise ValueError(f"descriptor {d} is not over the natural numbers")
    return d


def symbolic_member(X, Y) -> bool:
    """Whether ``X`` lies in ``Serre<Y>`` over an N-indexed family, by descriptor inclusion."""
    if isinstance(Y, Named) and not Y.torsion_free_attested:
        raise ValueError("generator is not known to be eventually torsion-free")
    return _descriptor(X) <= _descriptor(Y)


# --- brute-force closure oracle --------------------------------------------------------------


@dataclass
class ClosureResult:
    reached: list[int]
    reasons: dict[int, str]
    lower_bound: bool

    def __contains__(self, i):
        return i in self.reasons


def _fits_under(A: Rep, B: Rep) -> bool:
    return all(A.dims[G] <= B.dims[G] for G in A.family.classes)


def brute_force_closure(generators: Sequence[Rep], catalog: Sequence[Rep],
                        tensor_pool: Sequence[Rep] | None = None, budget: int = 2000,
                        seed: int = 0) -> ClosureResult:
    """Catalog members reachable from the generators by verified ideal operations.

    A member is reached when it embeds into or is a quotient of a reached
    object or of its tensor with a pool member, or when it is an extension of
    two reached catalog members. Every step is checked exactly; ``budget``
    bounds the number of hom-space searches, and running out marks the result
    as a lower bound.
    """
    pool = list(catalog) if tensor_pool is None else list(tensor_pool)
    sources: list[Rep] = [g for g in generators]
    reasons: dict[int, str] = {}
    order: list[int] = []
    spent = 0
    rng = random.Random(seed)

    def spend():
        nonlocal spent
        spent += 1
        if spent > budget:
            raise BudgetExceeded

    try:
        changed = True
        while changed:
            changed = False
            ambient = list(sources)
            for R in sources:
                ambient += [tensor(R, T) for T in pool]
            for i, C in enumerate(catalog):
                if i in reasons:
                    continue
                why = None
                if C.is_zero():
                    why = "zero object"
                for k, A in enumerate(ambient):
                    if why or not _fits_under(C, A):
                        continue
                    spend()
                    if find_mono(C, A, seed=rng.randrange(1 << 30)) is not None:
                        why = f"subobject of ambient #{k}"
                        break
                    spend()
                    if find_epi(A, C, seed=rng.randrange(1 << 30)) is not None:
                        why = f"quotient of ambient #{k}"
                if not why:
                    reached = [catalog[j] for j in order] + list(generators)
                    for A, B in itertools.product(reached, repeat=2):
                        if any(A.dims[G] + B.dims[G] != C.dims[G] for G in C.family.classes):
                            continue
                        spend()
                        m = find_mono(A, C, seed=rng.randrange(1 << 30))
                        if m is None:
                            continue
                        Q, _ = cokernel(m, check=False)
                        if is_isomorphic(Q, B) is not None:
                            why = "extension of reached objects"
                            break
                if why:
                    reasons[i] = why
                    order.append(i)
                    sources.append(C)
                    changed = True
    except BudgetExceeded:
        return ClosureResult(order, reasons, True)
    return ClosureResult(order, reasons, False)
