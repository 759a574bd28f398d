import dataclasses
import random

import pytest
from hypothesis import given, strategies as st

from globrep.family import abelian_p, check_n_stable, cyclic_p, up_closure
from globrep.randgen import random_outrep, random_rep, small_families
from globrep.rep import RepError, chi, dsum, e_rep, support, tensor, unit, zero_rep
from globrep.serre import (IdealSpec, brute_force_closure, certified_member, decompose_chi, gamma_certificate,
                           gamma_filtration, member, serre_plus_member, serre_plus_support)

seeds = st.integers(0, 10 ** 6)
families = st.sampled_from(small_families())


def test_member_examples(c2_2):
    assert member(chi(c2_2, "C2"), IdealSpec.generated(c2_2, [e_rep(c2_2, "C2")]))
    assert not member(unit(c2_2), IdealSpec.generated(c2_2, [chi(c2_2, "1")]))
    assert member(zero_rep(c2_2), IdealSpec.generated(c2_2, []))
    with pytest.raises(RepError):
        member(unit(cyclic_p(2, 1)), IdealSpec.generated(c2_2, []))


def test_certified_member(c2_2):
    ok, cert = certified_member(chi(c2_2, "C2"), IdealSpec.generated(c2_2, [e_rep(c2_2, "C2")]))
    assert ok and cert.verify() == []
    assert certified_member(unit(c2_2), IdealSpec.generated(c2_2, [chi(c2_2, "C2")])) == (False, None)


def test_decompose_examples(c2_2):
    fam = cyclic_p(2, 1)
    assert decompose_chi(unit(fam)).pieces() == [("C2", 1), ("1", 1)]
    assert decompose_chi(chi(c2_2, "C2")).pieces() == [("C2", 1)]
    assert decompose_chi(e_rep(c2_2, "C2")).pieces() == [("C4", 1), ("C2", 1)]


@given(families, seeds)
def test_decompose_random(fam, seed):
    X = random_rep(fam, random.Random(seed))
    cert = decompose_chi(X)
    assert cert.verify() == []
    assert sorted(cert.pieces()) == sorted((G, X.dims[G]) for G in support(X).points)
    assert cert.to_json()["verified"]


def test_tampered_certificate_is_rejected(c2_2):
    cert = decompose_chi(e_rep(c2_2, "C2"))
    cert.steps[0] = dataclasses.replace(cert.steps[0], witness=None)
    assert any("isomorphism" in p for p in cert.verify())
    cert = decompose_chi(e_rep(c2_2, "C2"))
    cert.steps.pop()
    assert "chain does not end at 0" in cert.verify()


def test_gamma_filtration_examples():
    fam = cyclic_p(2, 4)
    idx = check_n_stable(fam).indexing
    ses = gamma_filtration(chi(fam, idx[2]), 2, idx)
    assert ses.sub.is_zero() and ses.is_exact()
    X = dsum(chi(fam, idx[1]), chi(fam, idx[2]), chi(fam, idx[3]))
    assert [G for G, _ in gamma_certificate(X, idx).pieces()] == idx[1:4]
    E = e_rep(fam, idx[2])
    ses = gamma_filtration(E, 2, idx)
    assert ses.quotient.dims[idx[2]] == E.dims[idx[2]]
    with pytest.raises(RepError):
        gamma_filtration(unit(fam), 1, idx)


@given(families, seeds)
def test_e_and_chi_generate_same_ideal_for_any_outrep(fam, seed):
    rng = random.Random(seed)
    G = rng.choice(fam.classes)
    V = random_outrep(fam, G, rng)
    eV, e = e_rep(fam, G, V), e_rep(fam, G)
    assert member(eV, IdealSpec.generated(fam, [e])) and member(e, IdealSpec.generated(fam, [eV]))
    cV, c = chi(fam, G, V), chi(fam, G)
    assert member(cV, IdealSpec.generated(fam, [c])) and member(c, IdealSpec.generated(fam, [cV]))


def test_serre_plus_examples(c2_2):
    Y = chi(c2_2, "C2")
    assert serre_plus_support(Y, 4) == {"C2"}
    assert serre_plus_support(Y, 0) == {"C2", "C4"}
    assert serre_plus_member(chi(c2_2, "C4"), Y, 2)
    assert not serre_plus_member(chi(c2_2, "C4"), Y, 4)
    U = chi(c2_2, "1")
    for X in (unit(c2_2), e_rep(c2_2, "C4")):
        assert serre_plus_member(X, U, 0)


@given(families, seeds)
def test_serre_plus_monotone_and_reduces_to_member(fam, seed):
    rng = random.Random(seed)
    Y = random_rep(fam, rng)
    X = random_rep(fam, rng)
    top = max(fam.order(G) for G in fam.classes)
    for n in range(top + 1):
        assert serre_plus_support(Y, n + 1) <= serre_plus_support(Y, n)
    assert serre_plus_member(X, Y, top) == member(X, IdealSpec.generated(fam, [Y]))
    assert serre_plus_member(tensor(X, Y), Y, rng.randrange(top + 1))


def test_closure_examples(c2_2):
    chis = [chi(c2_2, G) for G in c2_2.classes]
    for G in c2_2.classes:
        cl = brute_force_closure([e_rep(c2_2, G)], chis)
        reached = {c2_2.classes[i] for i in cl.reached}
        assert reached == up_closure(c2_2, [G])
        assert not cl.lower_bound
    cl = brute_force_closure([zero_rep(c2_2)], chis + [zero_rep(c2_2)])
    assert cl.reached == [3]
    cl = brute_force_closure([unit(c2_2)], chis)
    assert sorted(cl.reached) == [0, 1, 2]


def test_closure_budget_is_flagged(c2_2):
    chis = [chi(c2_2, G) for G in c2_2.classes]
    cl = brute_force_closure([unit(c2_2)], chis, budget=1)
    assert cl.lower_bound


@pytest.mark.parametrize("fam", [cyclic_p(3, 2), abelian_p(2, 4)], ids=str)
def test_closure_never_contradicts_member(fam):
    rng = random.Random(7)
    catalog = [chi(fam, G) for G in fam.classes] + [e_rep(fam, G) for G in fam.classes]
    for _ in range(3):
        g = random_rep(fam, rng)
        cl = brute_force_closure([g], catalog, seed=rng.randrange(1000))
        ideal = IdealSpec.generated(fam, [g])
        assert all(member(catalog[i], ideal) for i in cl.reached)
