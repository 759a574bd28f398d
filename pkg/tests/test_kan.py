import random

import pytest
from hypothesis import given, strategies as st

from globrep.family import abelian_p, cyclic_p, inclusion, truncate
from globrep.kan import (adjunction_check, comma_diagram, glue_ses, left_counit, left_kan, left_unit,
                         oplax_comparison, restrict, right_counit, right_kan, right_unit)
from globrep.randgen import random_inclusion_pair, random_rep, small_families
from globrep.rep import chi, e_rep, hom_space, is_isomorphic, support, tensor, unit, validate, zero_rep

seeds = st.integers(0, 10 ** 6)
families = st.sampled_from(small_families())


def test_left_kan_of_unit_on_lower_part(c2_2):
    inc = truncate(c2_2, le=2)[1]
    L = left_kan(inc, unit(inc.sub))
    assert validate(L) == []
    assert is_isomorphic(L, unit(c2_2)) is not None


@given(families, seeds, st.sampled_from(["up", "down"]))
def test_left_kan_of_representable_is_representable(fam, seed, side):
    rng = random.Random(seed)
    inc = random_inclusion_pair(fam, rng, side)
    G = rng.choice(inc.sub.classes)
    assert is_isomorphic(left_kan(inc, e_rep(inc.sub, G), "general"), e_rep(fam, G)) is not None


@given(families, seeds, st.sampled_from(["up", "down"]))
def test_right_kan_dims_from_the_adjunction(fam, seed, side):
    rng = random.Random(seed)
    inc = random_inclusion_pair(fam, rng, side)
    X = random_rep(inc.sub, rng)
    R = right_kan(inc, X, "general")
    L = left_kan(inc, X, "general")
    assert validate(R) == [] and validate(L) == []
    for G in fam.classes:
        assert R.dims[G] == len(hom_space(restrict(inc, e_rep(fam, G)), X))
    Y = random_rep(fam, rng)
    assert len(hom_space(L, Y)) == len(hom_space(X, restrict(inc, Y)))


@given(families, seeds, st.sampled_from(["up", "down"]))
def test_units_counits_and_triangles(fam, seed, side):
    rng = random.Random(seed)
    inc = random_inclusion_pair(fam, rng, side)
    X = random_rep(inc.sub, rng)
    Y = random_rep(fam, rng)
    rep = adjunction_check(inc, X, Y)
    assert rep.ok, rep
    for f in (left_unit(inc, X), left_counit(inc, Y), right_unit(inc, Y), right_counit(inc, X)):
        assert f.naturality_violations() == []
    # restriction after extension along a full inclusion gives X back
    assert left_unit(inc, X).is_iso() and right_counit(inc, X).is_iso()


@given(families, seeds)
def test_extension_by_zero_agrees_with_general(fam, seed):
    rng = random.Random(seed)
    up = random_inclusion_pair(fam, rng, "up")
    X = random_rep(up.sub, rng)
    assert is_isomorphic(left_kan(up, X, "zero"), left_kan(up, X, "general")) is not None
    down = random_inclusion_pair(fam, rng, "down")
    Z = random_rep(down.sub, rng)
    assert is_isomorphic(right_kan(down, Z, "zero"), right_kan(down, Z, "general")) is not None


def test_zero_fast_path_refuses_wrong_side(c2_2):
    inc = truncate(c2_2, le=2)[1]
    with pytest.raises(Exception):
        left_kan(inc, unit(inc.sub), "zero")


def test_adjunction_with_zero(c2_2):
    inc = truncate(c2_2, le=2)[1]
    rep = adjunction_check(inc, unit(inc.sub), zero_rep(c2_2))
    assert rep.left_dims == (0, 0) and rep.ok


def test_gluing_example(c2_2):
    down = truncate(c2_2, le=2)[1]
    up = truncate(c2_2, gt=2)[1]
    ses = glue_ses(down, up, unit(c2_2))
    assert ses.is_exact()
    assert ses.sub.dims == {"1": 0, "C2": 0, "C4": 1}
    assert ses.quotient.dims == {"1": 1, "C2": 1, "C4": 0}
    top = glue_ses(down, up, chi(c2_2, "C4"))
    assert top.mono.is_iso()
    low = glue_ses(down, up, chi(c2_2, "C2"))
    assert low.epi.is_iso()


@pytest.mark.parametrize("fam", [cyclic_p(2, 3), abelian_p(2, 4)], ids=str)
def test_gluing_for_every_threshold(fam):
    rng = random.Random(3)
    for t in sorted({fam.order(G) for G in fam.classes}):
        down, up = truncate(fam, le=t)[1], truncate(fam, gt=t)[1]
        for _ in range(3):
            assert glue_ses(down, up, random_rep(fam, rng)).is_exact()


def test_gluing_rejects_non_partitions(c2_2):
    with pytest.raises(Exception):
        glue_ses(truncate(c2_2, le=2)[1], truncate(c2_2, gt=1)[1], unit(c2_2))


@given(families, seeds)
def test_oplax_comparison_support(fam, seed):
    rng = random.Random(seed)
    inc = random_inclusion_pair(fam, rng, "down")
    X, Y = random_rep(inc.sub, rng), random_rep(inc.sub, rng)
    op = oplax_comparison(inc, X, Y)
    assert op.h.naturality_violations() == []
    outside = set(fam.classes) - set(inc.sub.classes)
    assert support(op.kernel).points <= outside and support(op.cokernel).points <= outside
    lhs = support(left_kan(inc, tensor(X, Y))).points
    assert lhs <= support(left_kan(inc, X)).points | outside


def test_oplax_along_identity_is_invertible(c2_2):
    full = inclusion(c2_2, c2_2.classes)
    X = e_rep(c2_2, "C2")
    assert oplax_comparison(full, X, X).h.is_iso()


def test_comma_diagram_commutes(c2_2):
    inc = truncate(c2_2, le=2)[1]
    for side in ("left", "right"):
        for H in c2_2.classes:
            assert comma_diagram(inc, H, side).check(c2_2)
    D = comma_diagram(inc, "C4", "left")
    assert {G for G, _ in D.nodes} == {"1", "C2"}
