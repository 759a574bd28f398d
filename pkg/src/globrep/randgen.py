"""Seeded random objects for property tests and the check suites."""

from __future__ import annotations

import random

from .exactla import Matrix, Subspace, direct_sum, image_basis, kernel_basis
from .family import (GroupFamily, abelian_p, check_n_stable, cyclic_p, down_closure, elementary_abelian,
                     inclusion, up_closure)
from .rep import (OutRep, Rep, RepMorphism, averaging_idempotent, change_basis, chi, cokernel, dsum,
                  e_rep, gamma_rep, hom_space, image, kernel, linear_combination, representable, tensor,
                  unit, zero_rep)


def small_families() -> list[GroupFamily]:
    """Families with at most four classes used throughout the randomized checks."""
    return [cyclic_p(2, 1), cyclic_p(2, 2), cyclic_p(3, 2), cyclic_p(2, 3),
            elementary_abelian(2, 2), elementary_abelian(3, 1), abelian_p(2, 4)]


def chain_families() -> list[GroupFamily]:
    return [cyclic_p(2, 2), cyclic_p(3, 2), cyclic_p(2, 3), elementary_abelian(2, 2)]


def random_invertible(n: int, rng: random.Random, bound: int = 2) -> Matrix:
    while True:
        M = Matrix.from_rows([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)], n)
        if M.is_invertible():
            return M


def _outrep_sources(family: GroupFamily, G: str, max_dim: int) -> list[OutRep]:
    out = [OutRep.trivial(family, G)]
    if len(family.out(G)) <= max_dim:
        out.append(OutRep.regular(family, G))
    for K in family.classes:
        if K != G and family.has_epi(G, K) and 1 < len(family.homs(G, K)) <= max_dim:
            out.append(OutRep.from_rep(representable(family, K), G))
    return out


def _restrict_outrep(V: OutRep, W: Subspace) -> OutRep:
    B = W.basis_matrix()
    return OutRep(V.family, V.group_class, W.dim, {s: W.coordinate_matrix(m @ B) for s, m in V.action.items()})


def random_outrep(family: GroupFamily, G: str, rng: random.Random, max_dim: int = 3) -> OutRep:
    """A nonzero Out(G)-representation of dimension at most ``max_dim``.

    Drawn from trivial, regular and permutation representations, optionally cut
    down to the invariants or their complement, summed and conjugated.
    """
    srcs = _outrep_sources(family, G, max_dim)
    V = rng.choice(srcs)
    if V.dim > 1 and rng.random() < 0.5:
        E = averaging_idempotent(V)
        part = image_basis(E) if rng.random() < 0.5 else kernel_basis(E)
        if part.dim:
            V = _restrict_outrep(V, part)
    if V.dim < max_dim and rng.random() < 0.3:
        W = rng.choice([s for s in srcs if s.dim <= max_dim - V.dim] or [OutRep.trivial(family, G)])
        if V.dim + W.dim <= max_dim:
            V = OutRep(family, G, V.dim + W.dim,
                       {s: direct_sum(V.action[s], W.action[s]) for s in V.action})
    P = random_invertible(V.dim, rng)
    Pi = P.inverse()
    return OutRep(family, G, V.dim, {s: P @ m @ Pi for s, m in V.action.items()})


def _blocks(family: GroupFamily, rng: random.Random) -> list[Rep]:
    G = rng.choice(family.classes)
    out = [unit(family), chi(family, G), e_rep(family, G, OutRep.trivial(family, G)),
           chi(family, G, random_outrep(family, G, rng)), e_rep(family, G, random_outrep(family, G, rng))]
    if len(family.out(G)) <= 3:
        out.append(representable(family, G))
    rep = check_n_stable(family)
    if rep.total_order and len(family) > 1:
        out.append(gamma_rep(family, rng.randrange(len(family)), rep.indexing))
    return out


def random_morphism(X: Rep, Y: Rep, rng: random.Random, bound: int = 3) -> RepMorphism:
    basis = hom_space(X, Y)
    if not basis:
        return RepMorphism(X, Y, {})
    return linear_combination(basis, [rng.randint(-bound, bound) for _ in basis])


def _fits(X: Rep, max_dim: int) -> bool:
    return all(d <= max_dim for d in X.dims.values())


def random_rep(family: GroupFamily, rng: random.Random, max_dim: int = 3, basis_change: bool = True) -> Rep:
    """A valid Rep with pointwise dimensions at most ``max_dim``.

    Built from units, chi's, e's and gammas by sums, tensors, kernels,
    cokernels and images of random morphisms, then transported along a
    random change of basis.
    """
    for _ in range(200):
        blocks = [b for b in _blocks(family, rng) if _fits(b, max_dim)]
        X = rng.choice(blocks)
        op = rng.random()
        if op < 0.25:
            Y = rng.choice(blocks)
            Z = dsum(X, Y)
            if _fits(Z, max_dim):
                X = Z
        elif op < 0.4:
            Y = rng.choice(blocks)
            X = tensor(X, Y)
        elif op < 0.8:
            Y = rng.choice(blocks)
            f = random_morphism(X, Y, rng)
            pick = rng.randrange(3)
            if pick == 0:
                X = kernel(f, check=False)[0]
            elif pick == 1:
                X = cokernel(f, check=False)[0]
            else:
                X = image(f, check=False)[0]
        if not _fits(X, max_dim) or (X.is_zero() and rng.random() < 0.8):
            continue
        if basis_change:
            X, _ = change_basis(X, {G: random_invertible(n, rng) for G, n in X.dims.items()})
        return X
    return zero_rep(family)


def random_mono(family: GroupFamily, rng: random.Random, max_dim: int = 3) -> RepMorphism:
    """A monomorphism: the kernel or image inclusion of a random morphism."""
    X = random_rep(family, rng, max_dim)
    Y = random_rep(family, rng, max_dim)
    f = random_morphism(X, Y, rng)
    if rng.random() < 0.5:
        return kernel(f, check=False)[1]
    return image(f, check=False)[2]


def random_inclusion_pair(family: GroupFamily, rng: random.Random, closed: str):
    """A nonempty up-closed (``closed='up'``) or down-closed subfamily inclusion."""
    seeds = rng.sample(list(family.classes), rng.randint(1, len(family)))
    cls = up_closure(family, seeds) if closed == "up" else down_closure(family, seeds)
    return inclusion(family, cls)
