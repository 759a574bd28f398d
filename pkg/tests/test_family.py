import itertools

import pytest
from hypothesis import given, strategies as st

from globrep.family import (AbelianGroup, FamilyError, abelian_p, build_family, check_family, check_n_stable,
                            custom, cyclic_p, down_closure, elementary_abelian, enumerate_surjections,
                            inclusion, is_widely_closed, parse_group_label, truncate, up_closure)


def brute_surjection_count(H: AbelianGroup, G: AbelianGroup) -> int:
    """Count surjective homomorphisms by choosing generator images and closing up."""
    g = G.invariant_factors
    elems = list(itertools.product(*(range(n) for n in g)))

    def add(x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, g))

    def mult(k, x):
        return tuple((k * a) % n for a, n in zip(x, g))

    zero = tuple(0 for _ in g)
    count = 0
    for imgs in itertools.product(elems, repeat=len(H.invariant_factors)):
        if any(mult(h, x) != zero for h, x in zip(H.invariant_factors, imgs)):
            continue
        span = {zero}
        frontier = [zero]
        while frontier:
            x = frontier.pop()
            for y in imgs:
                z = add(x, y)
                if z not in span:
                    span.add(z)
                    frontier.append(z)
        count += len(span) == len(elems)
    return count


def test_surjection_examples():
    C2, C4 = AbelianGroup((2,)), AbelianGroup((4,))
    F22 = AbelianGroup((2, 2))
    assert len(enumerate_surjections(C2, C2)) == 1
    assert len(enumerate_surjections(C4, C2)) == 1
    assert len(enumerate_surjections(F22, C2)) == 3
    assert enumerate_surjections(C2, C4) == []


@pytest.mark.parametrize("fam", [abelian_p(2, 8), abelian_p(3, 9), elementary_abelian(2, 3), cyclic_p(5, 2)],
                         ids=str)
def test_hom_counts_match_brute_force(fam):
    for H in fam.classes:
        for G in fam.classes:
            expected = brute_surjection_count(parse_group_label(H), parse_group_label(G))
            assert len(fam.homs(H, G)) == expected, (H, G)


def test_builtin_examples(c2_2, e2_2):
    assert c2_2.classes == ("1", "C2", "C4") or list(c2_2.classes) == ["1", "C2", "C4"]
    assert len(c2_2.homs("C4", "C2")) == 1
    assert len(c2_2.out("C4")) == 2
    assert len(e2_2) == 3
    assert len(e2_2.out("C2xC2")) == 6
    assert list(cyclic_p(3, 0).classes) == ["1"]


@pytest.mark.parametrize("fam", [cyclic_p(2, 3), elementary_abelian(2, 2), abelian_p(2, 4), elementary_abelian(3, 2)],
                         ids=str)
def test_category_laws_hold(fam):
    r = check_family(fam)
    assert r.ok and not r.associativity_skipped and r.triples_checked > 0


def test_out_is_automorphism_count():
    # |GL_2(F_3)| = 48
    assert len(elementary_abelian(3, 2).out("C3xC3")) == 48
    # units mod 8
    assert len(cyclic_p(2, 3).out("C8")) == 4


def _tiny_table():
    return {
        "objects": [{"label": "1", "order": 1}, {"label": "A", "order": 2}],
        "homs": [{"label": "i1", "source": "1", "target": "1"},
                 {"label": "iA", "source": "A", "target": "A"},
                 {"label": "p", "source": "A", "target": "1"}],
        "compose": [["i1", "i1", "i1"], ["iA", "iA", "iA"], ["p", "iA", "p"], ["i1", "p", "p"]],
        "identity": {"1": "i1", "A": "iA"},
    }


def test_custom_table_round_trip():
    fam = custom(_tiny_table())
    assert fam.homs("A", "1") == ("p",)
    assert check_family(fam).ok


def test_broken_composition_names_the_triple():
    t = _tiny_table()
    t["compose"] = [c for c in t["compose"] if c[:2] != ["p", "iA"]]
    with pytest.raises(FamilyError, match=r"\(p, iA\)"):
        custom(t)


def test_up_closure_examples():
    fam = cyclic_p(2, 3)
    assert up_closure(fam, ["C4"]) == {"C4", "C8"}
    assert up_closure(fam, []) == frozenset()
    assert up_closure(fam, fam.classes) == set(fam.classes)
    with pytest.raises(Exception):
        up_closure(fam, ["C3"])


@given(st.sets(st.sampled_from(list(abelian_p(2, 8).classes))))
def test_closures_are_closure_operators(S):
    fam = abelian_p(2, 8)
    for close in (up_closure, down_closure):
        c = close(fam, S)
        assert set(S) <= c
        assert close(fam, c) == c
    for T in [set(S) | {"C2"}]:
        assert up_closure(fam, S) <= up_closure(fam, T)


def test_truncate_examples():
    fam = cyclic_p(2, 3)
    low, inc_low = truncate(fam, le=4)
    high, inc_high = truncate(fam, gt=2)
    assert list(low.classes) == ["1", "C2", "C4"] and inc_low.is_down_closed
    assert list(high.classes) == ["C4", "C8"] and inc_high.is_up_closed
    assert set(low.classes) | set(high.classes) == set(fam.classes)
    top, inc_top = truncate(fam, classes=["C8"])
    assert inc_top.is_up_closed and up_closure(fam, ["C8"]) == {"C8"}


@given(st.integers(0, 20))
def test_truncations_partition_with_complementary_flags(n):
    fam = abelian_p(2, 8)
    low, il = truncate(fam, le=n)
    high, ih = truncate(fam, gt=n)
    assert set(low.classes).isdisjoint(high.classes)
    assert set(low.classes) | set(high.classes) == set(fam.classes)
    assert il.is_down_closed and ih.is_up_closed
    assert il.check_functorial() and ih.check_functorial()


def test_n_stable_examples():
    assert check_n_stable(cyclic_p(2, 3)).indexing == ["1", "C2", "C4", "C8"]
    r = check_n_stable(elementary_abelian(2, 2))
    assert r.total_order and r.indexing == ["1", "C2", "C2xC2"]
    assert not check_n_stable(abelian_p(2, 8)).total_order


def test_widely_closed():
    fam = abelian_p(2, 16)
    assert is_widely_closed(["1", "C2", "C4"], fam)
    assert is_widely_closed(down_closure(fam, ["C4xC2"]), fam)
    assert is_widely_closed(["C2xC2"], elementary_abelian(2, 3))


def test_build_family_rejects_bad_input():
    with pytest.raises(ValueError):
        build_family({"kind": "cyclic_p", "p": 4, "max_exponent": 2})
    with pytest.raises(ValueError):
        build_family({"kind": "nonsense"})


def test_inclusion_rejects_unknown_class():
    with pytest.raises(Exception):
        inclusion(cyclic_p(2, 2), ["C8"])
