import itertools

import pytest
from hypothesis import given, strategies as st

from globrep.family import abelian_p, cyclic_p, elementary_abelian
from globrep.rep import chi, unit
from globrep.spectrum import (P_INFINITY, DescribedIdeal, PointSet, WitnessTerm, decide_prime,
                              enumerate_serre_ideals, group_prime, p_n, prime_decision, primes_by_brute_force,
                              quotient_by_group_prime, reference_is_closed, replay_uniqueness, spc,
                              spc_n_stable, union_witness, verify_p_infinity, zariski_closed,
                              zariski_closed_finite)
from globrep.support import SupportDescriptor
from globrep.symbolic import Named, basic_catalog

descs = st.builds(SupportDescriptor, st.frozensets(st.integers(0, 7), max_size=4), st.booleans())


def test_lattice_sizes():
    assert len(enumerate_serre_ideals(cyclic_p(2, 1)).ideals) == 4
    L = enumerate_serre_ideals(cyclic_p(2, 2))
    assert len(L.ideals) == 8 and L.round_trip_ok()
    a, b = L.by_support({"1"}), L.by_support({"C2"})
    assert L.join(a, b).support.points == {"1", "C2"}
    assert L.meet(a, b).support.is_empty()
    with pytest.raises(ValueError):
        enumerate_serre_ideals(abelian_p(2, 8), guard=3)


@pytest.mark.parametrize("fam", [cyclic_p(2, 2), elementary_abelian(2, 2), abelian_p(2, 4), cyclic_p(3, 1)],
                         ids=str)
def test_primes_are_group_primes(fam):
    L = enumerate_serre_ideals(fam)
    brute = sorted(map(sorted, primes_by_brute_force(fam)))
    assert brute == sorted(sorted(I.support.points) for I in L.primes())
    assert set(L.primes()) == {group_prime(fam, G) for G in fam.classes}
    for r in range(len(fam) + 1):
        for S in itertools.combinations(fam.classes, r):
            prime, witness = prime_decision(fam, S)
            assert prime == (sorted(S) in brute)
            if witness and witness != ("improper",):
                A, B = witness
                assert (A & B) <= set(S) and not A <= set(S) and not B <= set(S)


def test_spectrum_examples():
    assert spc(cyclic_p(2, 2)).describe() == "3 points, discrete"
    assert spc(elementary_abelian(2, 2)).describe() == "3 points, discrete"
    assert spc(cyclic_p(2, 0)).describe() == "1 point, discrete"


def test_finite_closed_sets(c2_2):
    assert zariski_closed_finite(c2_2, [unit(c2_2)]) == set(c2_2.classes)
    assert zariski_closed_finite(c2_2, []) == set(c2_2.classes)
    assert zariski_closed_finite(c2_2, [chi(c2_2, "1"), chi(c2_2, "C2")]) == frozenset()


def test_n_stable_closed_set_examples():
    assert zariski_closed([]) == PointSet(SupportDescriptor.cofinite_excluding(), True)
    assert zariski_closed([Named.unit()]) == PointSet(SupportDescriptor.cofinite_excluding(), True)
    assert zariski_closed([Named.chi(3)]) == PointSet(SupportDescriptor.finite({3}), False)
    assert zariski_closed([Named.chi(1), Named.chi(2)]) == PointSet(SupportDescriptor.finite(), False)
    assert zariski_closed([Named.gamma(2)]) == PointSet(SupportDescriptor.cofinite_excluding({2}), True)
    assert zariski_closed([Named.gamma(1) @ Named.gamma(4)]) == \
        PointSet(SupportDescriptor.cofinite_excluding({1, 4}), True)


def test_n_stable_spectrum_description():
    for kind in ("cyclic_p", "elementary_abelian"):
        assert spc_n_stable(kind).describe() == "N* (one-point compactification)"
    with pytest.raises(ValueError):
        spc_n_stable("abelian_p")


@given(descs, st.booleans(), descs, st.booleans())
def test_closed_sets_are_stable_under_union_and_intersection(g1, i1, g2, i2):
    sp = spc_n_stable("cyclic_p")
    T1, T2 = PointSet(g1, i1), PointSet(g2, i2)
    assert sp.is_closed(T1) == reference_is_closed(T1)
    if reference_is_closed(T1) and reference_is_closed(T2):
        S1, S2 = sp.witness(T1), sp.witness(T2)
        assert zariski_closed(union_witness(S1, S2)) == T1 | T2
        assert zariski_closed(list(S1) + list(S2)) == T1 & T2


def test_gamma_family_witness():
    J = SupportDescriptor.cofinite_excluding({0, 1})
    t = WitnessTerm.gammas(J)
    assert zariski_closed([t]) == PointSet(SupportDescriptor.finite({0, 1}), True)
    with pytest.raises(ValueError):
        WitnessTerm.gammas(SupportDescriptor.finite())


def brute_prime(I: DescribedIdeal, window: int = 6) -> bool:
    """Primality against every descriptor with exceptional set inside a window."""
    cat = [SupportDescriptor(frozenset(E), c) for r in range(window + 1)
           for E in itertools.combinations(range(window), r) for c in (False, True)]
    if not I.proper:
        return False
    return all(I.contains(a) or I.contains(b) for a in cat for b in cat if I.contains(a & b))


@given(st.frozensets(st.integers(0, 4), max_size=3), st.booleans(), st.booleans())
def test_prime_decisions_match_brute_force(E, cof, tail):
    I = DescribedIdeal(SupportDescriptor(E, cof), tail)
    v = decide_prime(I)
    assert v.prime == brute_prime(I)
    if v.prime:
        n = replay_uniqueness(I)
        assert (n is None) == (I.canonical() == P_INFINITY)
        if n is not None:
            assert I.same_ideal(p_n(n))
    elif v.witness:
        X, Y = v.witness
        assert I.contains(X @ Y) and not I.contains(X) and not I.contains(Y)


def test_p_infinity_report():
    rep = verify_p_infinity(basic_catalog(3))
    assert rep.ok
    assert all(k.startswith(("gamma", "unit", "e_")) for k in rep.excluded)


def test_group_prime_quotients(c2_2):
    for G in c2_2.classes:
        assert quotient_by_group_prime(c2_2, G).ok
    with pytest.raises(KeyError):
        group_prime(c2_2, "C8")
