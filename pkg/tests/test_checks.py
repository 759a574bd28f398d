import pytest

from globrep import checks


@pytest.mark.parametrize("suite", checks.EXTRA, ids=lambda f: f.__name__)
def test_extra_suites_pass(suite):
    results = suite()
    assert results
    for r in results:
        assert r.passed, r.line()
        assert r.line().startswith("PASS")
