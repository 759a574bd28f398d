import pytest
from hypothesis import given, strategies as st

from globrep.family import check_n_stable, cyclic_p, elementary_abelian
from globrep.rep import RepError, support
from globrep.serre import symbolic_member
from globrep.support import SupportDescriptor
from globrep.symbolic import Named, basic_catalog, parse_named

TOP = 5
FAM = cyclic_p(2, TOP)
IDX = check_n_stable(FAM).indexing

atoms = st.one_of(
    st.just(Named.zero()), st.just(Named.unit()),
    st.builds(Named.chi, st.integers(0, TOP)),
    st.builds(Named.gamma, st.integers(0, TOP)),
    st.builds(Named.e, st.integers(0, 3)),
)
named = st.recursive(atoms, lambda inner: st.one_of(
    st.builds(lambda a, b: a @ b, inner, inner),
    st.builds(lambda a, b: a + b, inner, inner)), max_leaves=4)


@given(named)
def test_descriptor_matches_realized_support(X):
    R = X.realize(FAM, IDX)
    levels = {IDX.index(G) for G in support(R).points}
    assert levels == set(X.descriptor().truncate(TOP))


@given(named)
def test_parse_round_trip(X):
    assert parse_named(str(X)) == X


def test_parse_errors():
    for bad in ["chi", "tensor(chi_1", "gamma_1 gamma_2", "foo_3", ""]:
        with pytest.raises(ValueError):
            parse_named(bad)


def test_symbolic_member_examples():
    assert symbolic_member(Named.chi(1), Named.gamma(2))
    assert not symbolic_member(Named.gamma(1), Named.chi(2))
    S = [0, 2, 5]
    g = Named.gamma(S[0])
    for i in S[1:]:
        g = g @ Named.gamma(i)
    X = SupportDescriptor.cofinite_excluding(S)
    assert symbolic_member(g, X) and symbolic_member(X, g)
    with pytest.raises(ValueError):
        symbolic_member(SupportDescriptor.finite({"C2"}), Named.unit())


def test_realize_needs_enough_levels():
    with pytest.raises(RepError):
        Named.chi(9).realize(FAM, IDX)


def test_basic_catalog_contents():
    cat = basic_catalog(2)
    assert len(cat) == 2 + 3 * 3
    assert Named.e(0).descriptor() == SupportDescriptor.cofinite_excluding()


def test_realize_on_elementary_abelian():
    fam = elementary_abelian(2, 2)
    idx = check_n_stable(fam).indexing
    R = (Named.gamma(0) @ Named.e(1)).realize(fam, idx)
    assert {idx.index(G) for G in support(R).points} == {1, 2}
