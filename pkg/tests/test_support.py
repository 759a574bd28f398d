import pytest
from hypothesis import given, strategies as st

from globrep.support import SupportDescriptor

UNIVERSE = range(12)
descriptors = st.builds(SupportDescriptor, st.frozensets(st.integers(0, 9), max_size=5), st.booleans())


def model(d):
    """Membership restricted to a window large enough to separate descriptors."""
    return {n for n in UNIVERSE if n in d}


@given(descriptors, descriptors)
def test_union_and_intersection_match_the_set_model(a, b):
    assert model(a | b) == model(a) | model(b)
    assert model(a & b) == model(a) & model(b)
    assert (a | b).cofinite == (a.cofinite or b.cofinite)
    assert (a & b).cofinite == (a.cofinite and b.cofinite)


@given(descriptors, descriptors)
def test_inclusion_matches_the_set_model(a, b):
    assert (a <= b) == (model(a) <= model(b) and (not a.cofinite or b.cofinite))


@given(descriptors)
def test_complement_is_an_involution(a):
    assert a.complement().complement() == a
    assert model(a.complement()) == set(UNIVERSE) - model(a)


def test_finite_complement_in_a_universe():
    d = SupportDescriptor.finite({"C2"})
    assert d.complement(["1", "C2", "C4"]).points == {"1", "C4"}
    with pytest.raises(ValueError):
        SupportDescriptor.cofinite_excluding({1}).complement(["a"])


def test_truncate_and_excluded():
    d = SupportDescriptor.cofinite_excluding({1, 3})
    assert d.truncate(4) == {0, 2, 4}
    assert d.excluded == {1, 3}
    with pytest.raises(ValueError):
        SupportDescriptor.finite({1}).excluded
    with pytest.raises(ValueError):
        SupportDescriptor.cofinite_excluding({-1})
    assert SupportDescriptor.finite().is_empty()
