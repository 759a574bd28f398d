"""Global representations over an essentially finite family.

A :class:`Rep` assigns a finite-dimensional rational vector space ``X(G)`` to
every class and a matrix ``X(a): X(G) -> X(H)`` to every surjection class
``a: H -> G`` (contravariance: ``X(a o b) = X(b) @ X(a)``). Transitions whose
matrix would be empty are not stored.
"""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .exactla import (Matrix, Subspace, direct_sum, hstack, image_basis, kernel_basis, kron,
                      quotient_map, quotient_section)
from .family import GroupFamily, check_n_stable
from .support import SupportDescriptor


class RepError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class _LazyTransitions(Mapping):
    """Transitions computed on first access; used for large representables."""

    def __init__(self, keys: Iterable[str], make: Callable[[str], Matrix]):
        self._keys = tuple(keys)
        self._keyset = frozenset(self._keys)
        self._make = make
        self._cache: dict[str, Matrix] = {}

    def __getitem__(self, k):
        if k not in self._keyset:
            raise KeyError(k)
        m = self._cache.get(k)
        if m is None:
            m = self._cache[k] = self._make(k)
        return m

    def __iter__(self):
        return iter(self._keys)

    def __len__(self):
        return len(self._keys)


@dataclass(frozen=True, eq=False)
class Rep:
    family: GroupFamily
    dims: Mapping[str, int]
    transitions: Mapping[str, Matrix]

    def __post_init__(self):
        dims = {c: int(self.dims.get(c, 0)) for c in self.family.classes}
        extra = set(self.dims) - set(dims)
        if extra:
            raise RepError(f"dims given for unknown classes {sorted(extra)}")
        if any(d < 0 for d in dims.values()):
            raise RepError("negative dimension")
        object.__setattr__(self, "dims", dims)
        if not isinstance(self.transitions, _LazyTransitions):
            object.__setattr__(self, "transitions", dict(self.transitions))

    def dim(self, G: str) -> int:
        return self.dims[G]

    def map(self, a: str) -> Matrix:
        """``X(a)`` for ``a: H -> G``, a ``dim X(H) x dim X(G)`` matrix."""
        m = self.transitions.get(a)
        if m is None:
            H, G = self.family.source(a), self.family.target(a)
            r, c = self.dims[H], self.dims[G]
            if r and c:
                raise RepError(f"missing transition for {a}")
            return Matrix.zeros(r, c)
        return m

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other):
        if not isinstance(other, Rep) or self.family != other.family or self.dims != other.dims:
            return False
        keys = set(self.transitions) | set(other.transitions)
        return all(self.map(a) == other.map(a) for a in keys)

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.dims.items()))))

    def __repr__(self):
        d = ", ".join(f"{c}:{n}" for c, n in self.dims.items())
        return f"Rep({d})"


def _nonempty_homs(family: GroupFamily, dims: Mapping[str, int]) -> Iterator[str]:
    for H in family.classes:
        if not dims[H]:
            continue
        for G in family.classes:
            if dims[G] and family.has_epi(H, G):
                yield from family.homs(H, G)


def make_rep(family: GroupFamily, dims: Mapping[str, int], fn: Callable[[str], Matrix]) -> Rep:
    dims = {c: int(dims.get(c, 0)) for c in family.classes}
    return Rep(family, dims, {a: fn(a) for a in _nonempty_homs(family, dims)})


def validate(X: Rep) -> list[str]:
    """All violated functor laws of ``X`` (empty list means valid)."""
    fam = X.family
    v = []
    for a, m in X.transitions.items():
        H, G = fam.source(a), fam.target(a)
        if m.shape != (X.dims[H], X.dims[G]):
            v.append(f"transition {a} has shape {m.shape}, expected {(X.dims[H], X.dims[G])}")
    if v:
        return v
    for G in fam.classes:
        if X.dims[G] and not X.map(fam.identity(G)).is_identity():
            v.append(f"X({fam.identity(G)}) is not the identity")
    for K in fam.classes:
        if not X.dims[K]:
            continue
        for H in fam.classes:
            if not fam.has_epi(K, H):
                continue
            for G in fam.classes:
                if not X.dims[G] or not fam.has_epi(H, G):
                    continue
                for a in fam.homs(H, G):
                    Xa = X.map(a)
                    for b in fam.homs(K, H):
                        if X.map(fam.compose(a, b)) != X.map(b) @ Xa:
                            v.append(f"functoriality fails on ({a}, {b})")
    return v


# --- morphisms -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RepMorphism:
    source: Rep
    target: Rep
    components: Mapping[str, Matrix]

    def __post_init__(self):
        if self.source.family != self.target.family:
            raise RepError("morphism between reps over different families")
        comps = {}
        for G in self.source.family.classes:
            m = self.components.get(G)
            shape = (self.target.dims[G], self.source.dims[G])
            if m is None:
                m = Matrix.zeros(*shape)
            elif m.shape != shape:
                raise RepError(f"component at {G} has shape {m.shape}, expected {shape}")
            comps[G] = m
        object.__setattr__(self, "components", comps)

    @property
    def family(self) -> GroupFamily:
        return self.source.family

    def __getitem__(self, G: str) -> Matrix:
        return self.components[G]

    def naturality_violations(self) -> list[str]:
        fam, X, Y = self.family, self.source, self.target
        out = []
        for H in fam.classes:
            for G in fam.classes:
                if not fam.has_epi(H, G) or not (Y.dims[H] and X.dims[G]):
                    continue
                for a in fam.homs(H, G):
                    if Y.map(a) @ self.components[G] != self.components[H] @ X.map(a):
                        out.append(f"naturality fails at {a}")
        return out

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        """``self o other``."""
        return RepMorphism(other.source, self.target,
                           {G: self.components[G] @ other.components[G] for G in self.family.classes})

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {G: self.components[G] + other.components[G] for G in self.family.classes})

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {G: m.scale(c) for G, m in self.components.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def is_mono(self) -> bool:
        return all(m.is_injective() for m in self.components.values())

    def is_epi(self) -> bool:
        return all(m.is_surjective() for m in self.components.values())

    def is_iso(self) -> bool:
        return all(m.is_invertible() for m in self.components.values())

    def __eq__(self, other):
        return (isinstance(other, RepMorphism) and self.source == other.source
                and self.target == other.target and dict(self.components) == dict(other.components))

    __hash__ = None


def identity(X: Rep) -> RepMorphism:
    return RepMorphism(X, X, {G: Matrix.identity(n) for G, n in X.dims.items()})


def zero_morphism(X: Rep, Y: Rep) -> RepMorphism:
    return RepMorphism(X, Y, {})


def linear_combination(basis: Sequence[RepMorphism], coeffs: Sequence) -> RepMorphism:
    X, Y = basis[0].source, basis[0].target
    comps = {}
    for G in X.family.classes:
        acc = Matrix.zeros(Y.dims[G], X.dims[G])
        for f, c in zip(basis, coeffs):
            if c:
                acc = acc + f.components[G].scale(c)
        comps[G] = acc
    return RepMorphism(X, Y, comps)


@dataclass(frozen=True, eq=False)
class ShortExactSequence:
    """``mono: A >-> B`` followed by ``epi: B ->> C``."""

    mono: RepMorphism
    epi: RepMorphism

    @property
    def sub(self) -> Rep:
        return self.mono.source

    @property
    def middle(self) -> Rep:
        return self.mono.target

    @property
    def quotient(self) -> Rep:
        return self.epi.target

    def violations(self) -> list[str]:
        v = []
        if self.mono.target != self.epi.source:
            return ["middle terms differ"]
        v += self.mono.naturality_violations() + self.epi.naturality_violations()
        for G in self.middle.family.classes:
            m, e = self.mono[G], self.epi[G]
            if not m.is_injective():
                v.append(f"left map not injective at {G}")
            if not e.is_surjective():
                v.append(f"right map not surjective at {G}")
            if not (e @ m).is_zero():
                v.append(f"composite nonzero at {G}")
            if m.rank() + e.rank() != self.middle.dims[G]:
                v.append(f"not exact in the middle at {G}")
        return v

    def is_exact(self) -> bool:
        return not self.violations()


# --- constructions -------------------------------------------------------------


def unit(family: GroupFamily) -> Rep:
    """The constant functor with value k."""
    one = Matrix.identity(1)
    return make_rep(family, {c: 1 for c in family.classes}, lambda a: one)


def zero_rep(family: GroupFamily) -> Rep:
    return Rep(family, {}, {})


def _same_family(*Xs: Rep):
    fam = Xs[0].family
    for X in Xs[1:]:
        if X.family != fam:
            raise RepError("objects live over different families")
    return fam


def tensor(X: Rep, Y: Rep) -> Rep:
    fam = _same_family(X, Y)
    dims = {c: X.dims[c] * Y.dims[c] for c in fam.classes}
    return make_rep(fam, dims, lambda a: kron(X.map(a), Y.map(a)))


def dsum(*Xs: Rep) -> Rep:
    fam = _same_family(*Xs)
    dims = {c: sum(X.dims[c] for X in Xs) for c in fam.classes}
    return make_rep(fam, dims, lambda a: direct_sum(*(X.map(a) for X in Xs)))


def tensor_morphisms(f: RepMorphism, g: RepMorphism) -> RepMorphism:
    return RepMorphism(tensor(f.source, g.source), tensor(f.target, g.target),
                       {G: kron(f[G], g[G]) for G in f.family.classes})


def dsum_morphisms(*fs: RepMorphism) -> RepMorphism:
    return RepMorphism(dsum(*(f.source for f in fs)), dsum(*(f.target for f in fs)),
                       {G: direct_sum(*(f[G] for f in fs)) for G in fs[0].family.classes})


def change_basis(X: Rep, P: Mapping[str, Matrix]) -> tuple[Rep, RepMorphism]:
    """Transport ``X`` along invertible matrices ``P[G]``; returns the new rep and ``X -> new``."""
    fam = X.family
    Pinv = {G: P[G].inverse() for G in fam.classes}
    Y = make_rep(fam, X.dims, lambda a: P[fam.source(a)] @ X.map(a) @ Pinv[fam.target(a)])
    return Y, RepMorphism(X, Y, dict(P))


def subobject(X: Rep, subspaces: Mapping[str, Subspace]) -> tuple[Rep, RepMorphism]:
    """The subfunctor with the given values (they must be closed under transitions)."""
    fam = X.family
    dims = {G: subspaces[G].dim for G in fam.classes}
    incl = {G: subspaces[G].basis_matrix() for G in fam.classes}

    def tr(a):
        H, G = fam.source(a), fam.target(a)
        try:
            return subspaces[H].coordinate_matrix(X.map(a) @ incl[G])
        except ValueError:
            raise RepError(f"subspaces are not closed under {a}") from None

    S = make_rep(fam, dims, tr)
    return S, RepMorphism(S, X, incl)


def quotient(X: Rep, subspaces: Mapping[str, Subspace]) -> tuple[Rep, RepMorphism]:
    """``X`` modulo a subfunctor given by its values."""
    fam = X.family
    q = {G: quotient_map(X.dims[G], subspaces[G]) for G in fam.classes}
    s = {G: quotient_section(X.dims[G], subspaces[G]) for G in fam.classes}
    dims = {G: q[G].rows for G in fam.classes}
    Q = make_rep(fam, dims, lambda a: q[fam.source(a)] @ X.map(a) @ s[fam.target(a)])
    return Q, RepMorphism(X, Q, q)


def _require_natural(f: RepMorphism):
    bad = f.naturality_violations()
    if bad:
        raise RepError(f"not a natural transformation: {bad[0]}")


def kernel(f: RepMorphism, check: bool = True) -> tuple[Rep, RepMorphism]:
    if check:
        _require_natural(f)
    return subobject(f.source, {G: kernel_basis(m) for G, m in f.components.items()})


def cokernel(f: RepMorphism, check: bool = True) -> tuple[Rep, RepMorphism]:
    if check:
        _require_natural(f)
    return quotient(f.target, {G: image_basis(m) for G, m in f.components.items()})


def image(f: RepMorphism, check: bool = True) -> tuple[Rep, RepMorphism, RepMorphism]:
    """Epi-mono factorization ``f = mono o epi``; returns ``(Im f, epi, mono)``."""
    if check:
        _require_natural(f)
    subs = {G: image_basis(m) for G, m in f.components.items()}
    I, mono = subobject(f.target, subs)
    epi = RepMorphism(f.source, I, {G: subs[G].coordinate_matrix(f[G]) for G in subs})
    return I, epi, mono


# --- Out(G)-representations ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class OutRep:
    """A right action of ``Out(G) = homs(G, G)``: ``action[s o t] == action[t] @ action[s]``.

    This is the convention under which ``X(G)`` of any rep is an ``OutRep`` via
    ``s -> X(s)``.
    """

    family: GroupFamily
    group_class: str
    dim: int
    action: Mapping[str, Matrix]

    def __post_init__(self):
        object.__setattr__(self, "action", dict(self.action))

    def violations(self) -> list[str]:
        fam, G = self.family, self.group_class
        out = fam.out(G)
        v = []
        if set(self.action) != set(out):
            return [f"action must be given on exactly homs({G},{G})"]
        for s in out:
            if self.action[s].shape != (self.dim, self.dim):
                v.append(f"action of {s} has wrong shape")
        if v:
            return v
        if not self.action[fam.identity(G)].is_identity():
            v.append("identity does not act trivially")
        for s in out:
            for t in out:
                if self.action[fam.compose(s, t)] != self.action[t] @ self.action[s]:
                    v.append(f"action fails on ({s}, {t})")
        return v

    @classmethod
    def trivial(cls, family: GroupFamily, G: str) -> "OutRep":
        return cls(family, G, 1, {s: Matrix.identity(1) for s in family.out(G)})

    @classmethod
    def regular(cls, family: GroupFamily, G: str) -> "OutRep":
        out = list(family.out(G))
        pos = {s: i for i, s in enumerate(out)}
        n = len(out)
        act = {}
        for s in out:
            cols = []
            for x in out:
                c = [0] * n
                c[pos[family.compose(x, s)]] = 1
                cols.append(c)
            act[s] = Matrix.from_columns(cols, n)
        return cls(family, G, n, act)

    @classmethod
    def from_rep(cls, X: Rep, G: str) -> "OutRep":
        return cls(X.family, G, X.dims[G], {s: X.map(s) for s in X.family.out(G)})

    def invariants(self) -> Subspace:
        return image_basis(averaging_idempotent(self))


def averaging_idempotent(V: OutRep) -> Matrix:
    n = len(V.action)
    acc = Matrix.zeros(V.dim, V.dim)
    for m in V.action.values():
        acc = acc + m
    return acc.scale(Fraction(1, n))


# --- projectives e_{G,V} and concentrated objects ----------------------------------


@dataclass
class _EData:
    rep: Rep
    homs: dict[str, tuple[str, ...]]
    bases: dict[str, Subspace]
    V: OutRep


def _check_outrep(V: OutRep, family: GroupFamily, G: str):
    if V.family != family or V.group_class != G:
        raise RepError("OutRep lives at a different class or family")
    bad = V.violations()
    if bad:
        raise RepError(f"invalid Out({G})-representation: {bad[0]}")


def _coinvariant_basis(family: GroupFamily, G: str, V: OutRep, H: str, homs: tuple[str, ...]) -> Subspace:
    h = len(homs)
    if not h or not V.dim:
        return Subspace.zero(V.dim * h)
    pos = {f: j for j, f in enumerate(homs)}
    out = family.out(G)
    if V.dim == 1 and all(m.is_identity() for m in V.action.values()):
        # trivial V: the image of the idempotent is spanned by orbit sums
        seen, vecs = set(), []
        for f in homs:
            if f in seen:
                continue
            orbit = {family.compose(s, f) for s in out}
            seen |= orbit
            vecs.append([int(g in orbit) for g in homs])
        return Subspace.span(h, vecs)
    acc = Matrix.zeros(V.dim * h, V.dim * h)
    for s in out:
        sinv = family.inverse(s)
        cols = []
        for f in homs:
            c = [0] * h
            c[pos[family.compose(sinv, f)]] = 1
            cols.append(c)
        acc = acc + kron(V.action[s], Matrix.from_columns(cols, h))
    return image_basis(acc.scale(Fraction(1, len(out))))


def _precompose_matrix(family, homs_H, homs_K, g):
    """Permutation-like matrix ``k[Hom(H,G)] -> k[Hom(K,G)]``, ``f -> f o g``."""
    pos = {f: j for j, f in enumerate(homs_K)}
    cols = []
    for f in homs_H:
        c = [0] * len(homs_K)
        c[pos[family.compose(f, g)]] = 1
        cols.append(c)
    return Matrix.from_columns(cols, len(homs_K))


def _e_data(family: GroupFamily, G: str, V: OutRep, only: Iterable[str] | None = None) -> _EData:
    _check_outrep(V, family, G)
    classes = list(family.classes if only is None else only)
    homs = {H: (family.homs(H, G) if family.has_epi(H, G) else ()) for H in family.classes}
    bases = {H: _coinvariant_basis(family, G, V, H, homs[H]) if H in classes
             else Subspace.zero(V.dim * len(homs[H])) for H in family.classes}
    dims = {H: bases[H].dim for H in family.classes}

    def tr(g):
        # basis vectors of V (x) k[Hom(H,G)] pushed along f -> f o g, index v*h + j
        K, H = family.source(g), family.target(g)
        hH, hK = len(homs[H]), len(homs[K])
        posK = {f: j for j, f in enumerate(homs[K])}
        perm = [posK[family.compose(f, g)] for f in homs[H]]
        cols = []
        for b in bases[H].basis:
            v = [0] * (V.dim * hK)
            for i, x in enumerate(b):
                if x:
                    vi, j = divmod(i, hH)
                    v[vi * hK + perm[j]] += x
            cols.append(bases[K].coordinates(v))
        return Matrix.from_columns(cols, bases[K].dim)

    return _EData(make_rep(family, dims, tr), homs, bases, V)


def e_rep(family: GroupFamily, G: str, V: OutRep | None = None) -> Rep:
    """``e_{G,V}``: the coinvariants of ``V (x) k[Hom(-, G)]`` under ``Out(G)``.

    Computed as the image of the averaging idempotent (characteristic 0).
    ``V`` defaults to the regular representation, giving ``e_G``.
    """
    if V is None:
        V = OutRep.regular(family, G)
    return _e_data(family, G, V).rep


def representable(family: GroupFamily, G: str) -> Rep:
    """``k[Hom(-, G)]`` with precomposition, built directly (isomorphic to ``e_G``)."""
    homs = {H: (family.homs(H, G) if family.has_epi(H, G) else ()) for H in family.classes}
    dims = {H: len(homs[H]) for H in family.classes}
    keys = list(_nonempty_homs(family, dims))

    def tr(g):
        K, H = family.source(g), family.target(g)
        return _precompose_matrix(family, homs[H], homs[K], g)

    return Rep(family, dims, _LazyTransitions(keys, tr))


def chi_rep(family: GroupFamily, G: str, V: OutRep | None = None,
            with_epi: bool = True) -> tuple[Rep, RepMorphism | None]:
    """``chi_{G,V}`` (concentrated at G with value ``e_{G,V}(G)``) and the epi from ``e_{G,V}``."""
    if V is None:
        V = OutRep.trivial(family, G)
    data = _e_data(family, G, V, only=None if with_epi else [G])
    e = data.rep
    d = e.dims[G]
    chi = make_rep(family, {G: d}, lambda a: e.map(a))
    if not with_epi:
        return chi, None
    return chi, RepMorphism(e, chi, {G: Matrix.identity(d)})


def chi(family: GroupFamily, G: str, V: OutRep | None = None) -> Rep:
    return chi_rep(family, G, V, with_epi=False)[0]


def concentrated(family: GroupFamily, G: str, V: OutRep) -> Rep:
    """The object with value ``V`` at ``G`` and zero elsewhere, in ``V``'s own basis."""
    _check_outrep(V, family, G)
    return make_rep(family, {G: V.dim}, lambda a: V.action[a])


def n_indexing(family: GroupFamily) -> list[str]:
    rep = check_n_stable(family)
    if not rep.total_order:
        raise RepError(f"family is not a chain under surjections: {rep.failures[0]}")
    return rep.indexing


_GAMMA_CACHE: dict[tuple, Rep] = {}


def gamma_rep(family: GroupFamily, i: int, indexing: Sequence[str] | None = None) -> Rep:
    """k at every level except ``i``; identity maps on each side of ``i``, zero across.

    Validated results are memoized per (family, i, indexing) since the
    functor check is quadratic in the endomorphisms of the top level.
    """
    idx = list(indexing) if indexing is not None else n_indexing(family)
    key = (family, i, tuple(idx))
    if key in _GAMMA_CACHE:
        return _GAMMA_CACHE[key]
    if not 0 <= i < len(idx):
        raise RepError(f"index {i} outside the truncation 0..{len(idx) - 1}")
    level = {c: n for n, c in enumerate(idx)}
    one, zero = Matrix.identity(1), Matrix.zeros(1, 1)

    def tr(a):
        s, t = level[family.source(a)], level[family.target(a)]
        return one if (s < i) == (t < i) else zero

    X = make_rep(family, {c: int(n != i) for n, c in enumerate(idx)}, tr)
    bad = validate(X)
    if bad:
        raise RepError(f"gamma_{i} is not a functor on this family: {bad[0]}")
    _GAMMA_CACHE[key] = X
    return X


def support(X: Rep) -> SupportDescriptor:
    return SupportDescriptor.finite(G for G, n in X.dims.items() if n)


def subrep_generated(X: Rep, elements: Iterable[tuple[str, Sequence]]) -> tuple[Rep, RepMorphism]:
    """Smallest subfunctor containing the given ``(class, vector)`` elements."""
    fam = X.family
    vecs: dict[str, list] = {H: [] for H in fam.classes}
    for G, v in elements:
        if len(v) != X.dims[G]:
            raise RepError(f"vector of length {len(v)} at {G}, expected {X.dims[G]}")
        for H in fam.classes:
            if X.dims[H] and fam.has_epi(H, G):
                for a in fam.homs(H, G):
                    vecs[H].append(X.map(a).apply(v))
    return subobject(X, {H: Subspace.span(X.dims[H], vecs[H]) for H in fam.classes})


# --- hom spaces ----------------------------------------------------------------


def hom_space(X: Rep, Y: Rep, budget: int | None = None) -> list[RepMorphism]:
    """A basis of the natural transformations ``X -> Y``."""
    fam = _same_family(X, Y)
    off, n = {}, 0
    for G in fam.classes:
        off[G] = n
        n += X.dims[G] * Y.dims[G]
    if n == 0:
        return []
    rows = []
    for H in fam.classes:
        yH, xH = Y.dims[H], X.dims[H]
        if not yH:
            continue
        for G in fam.classes:
            xG, yG = X.dims[G], Y.dims[G]
            if not xG or not fam.has_epi(H, G):
                continue
            for a in fam.homs(H, G):
                if H == G and a == fam.identity(G):
                    continue
                Ya, Xa = Y.map(a), X.map(a)
                for r in range(yH):
                    for c in range(xG):
                        row = {}
                        for k in range(yG):
                            y = Ya.data[r][k]
                            if y:
                                idx = off[G] + k * xG + c
                                row[idx] = row.get(idx, 0) + y
                        for k in range(xH):
                            x = Xa.data[k][c]
                            if x:
                                idx = off[H] + r * xH + k
                                row[idx] = row.get(idx, 0) - x
                        if any(row.values()):
                            rows.append(row)
        if budget is not None and len(rows) * n > budget:
            raise BudgetExceeded(f"hom_space system exceeds budget ({len(rows)} x {n})")
    dense = Matrix(len(rows), n, tuple(tuple(r.get(j, 0) for j in range(n)) for r in rows))
    K = kernel_basis(dense)
    out = []
    for v in K.basis:
        comps = {}
        for G in fam.classes:
            xG, yG = X.dims[G], Y.dims[G]
            o = off[G]
            comps[G] = Matrix(yG, xG, tuple(tuple(v[o + r * xG: o + (r + 1) * xG]) for r in range(yG)))
        out.append(RepMorphism(X, Y, comps))
    return out


def is_isomorphic(X: Rep, Y: Rep, tries: int = 4, seed: int = 0) -> RepMorphism | None:
    """A verified isomorphism ``X -> Y`` or ``None``.

    A random combination of a hom-space basis is invertible whenever any
    element is, except on a proper algebraic subset; with coefficients drawn
    from a range of size 2e6 a false ``None`` is vanishingly unlikely.
    """
    _same_family(X, Y)
    if X.dims != Y.dims:
        return None
    if X.is_zero():
        return zero_morphism(X, Y)
    basis = hom_space(X, Y)
    if not basis:
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        f = linear_combination(basis, [rng.randint(-10 ** 6, 10 ** 6) for _ in basis])
        if f.is_iso():
            return f
    return None


def find_mono(X: Rep, Y: Rep, tries: int = 3, seed: int = 0) -> RepMorphism | None:
    if any(X.dims[G] > Y.dims[G] for G in X.family.classes):
        return None
    if X.is_zero():
        return zero_morphism(X, Y)
    basis = hom_space(X, Y)
    if not basis:
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        f = linear_combination(basis, [rng.randint(-10 ** 6, 10 ** 6) for _ in basis])
        if f.is_mono():
            return f
    return None


def find_epi(X: Rep, Y: Rep, tries: int = 3, seed: int = 0) -> RepMorphism | None:
    if any(X.dims[G] < Y.dims[G] for G in X.family.classes):
        return None
    if Y.is_zero():
        return zero_morphism(X, Y)
    basis = hom_space(X, Y)
    if not basis:
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        f = linear_combination(basis, [rng.randint(-10 ** 6, 10 ** 6) for _ in basis])
        if f.is_epi():
            return f
    return None


# --- finite generation ---------------------------------------------------------------


def epi_from_projectives(X: Rep) -> RepMorphism:
    """The counit ``(+)_G e_{G, X(G)} -> X``; always an epimorphism."""
    fam = X.family
    pieces, blocks = [], []
    for G in fam.classes:
        if not X.dims[G]:
            continue
        data = _e_data(fam, G, OutRep.from_rep(X, G))
        comps = {}
        for H in fam.classes:
            homs = data.homs[H]
            d = X.dims[G]
            if not homs or not X.dims[H]:
                comps[H] = Matrix.zeros(X.dims[H], data.rep.dims[H])
                continue
            # column (a, j) of Phi is X(f_j) applied to the a-th basis vector of X(G)
            cols = []
            mats = [X.map(f) for f in homs]
            for a in range(d):
                for M in mats:
                    cols.append(M.column(a))
            Phi = Matrix.from_columns(cols, X.dims[H])
            comps[H] = Phi @ data.bases[H].basis_matrix()
        pieces.append(data.rep)
        blocks.append(comps)
    if not pieces:
        return zero_morphism(zero_rep(fam), X)
    P = dsum(*pieces)
    comps = {H: hstack(*(b[H] for b in blocks)) for H in fam.classes}
    return RepMorphism(P, X, comps)


@dataclass
class TorsionFreeReport:
    r: int
    window_top: int
    at_window_edge: bool
    note: str = "certified only within the truncation window"


def check_eventually_torsion_free(X: Rep, indexing: Sequence[str] | None = None) -> TorsionFreeReport:
    """Smallest ``r`` with every transition out of a level ``n > r`` injective."""
    fam = X.family
    idx = list(indexing) if indexing is not None else n_indexing(fam)
    worst = -1
    for n, G in enumerate(idx):
        if not X.dims[G]:
            continue
        for H in idx:
            if fam.has_epi(H, G) and any(not X.map(a).is_injective() for a in fam.homs(H, G)):
                worst = max(worst, n)
                break
    r = max(worst, 0)
    return TorsionFreeReport(r, len(idx) - 1, worst == len(idx) - 1)
