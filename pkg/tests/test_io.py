import json
import random
import pytest
from hypothesis import given, strategies as st

from globrep.exactla import Matrix
from globrep.family import cyclic_p
from globrep.io import (InputError, decode_scalar, dumps, encode_scalar, family_from_json, family_to_json,
                        load_json, matrix_from_json, matrix_to_json, rep_from_json, rep_to_json)
from globrep.randgen import random_rep, small_families
from globrep.rep import RepError, unit

fractions = st.fractions(max_denominator=50)


@given(fractions)
def test_scalar_round_trip(x):
    assert decode_scalar(encode_scalar(x)) == x


def test_bad_scalars():
    for s in ["1/0", "abc", "", "1/2/3"]:
        with pytest.raises(InputError):
            decode_scalar(s)


@given(st.lists(st.lists(fractions, min_size=2, max_size=2), max_size=3))
def test_matrix_round_trip(rows):
    M = Matrix.from_rows(rows, 2)
    assert matrix_from_json(json.loads(dumps(matrix_to_json(M)))) == M


@given(st.sampled_from(small_families()), st.integers(0, 10 ** 6))
def test_rep_round_trip_is_bit_exact(fam, seed):
    X = random_rep(fam, random.Random(seed))
    text = dumps(rep_to_json(X))
    Y = rep_from_json(json.loads(text))
    assert Y == X
    assert dumps(rep_to_json(Y)) == text


def test_family_round_trip():
    fam = cyclic_p(2, 3)
    assert family_from_json(family_to_json(fam)) == fam


def test_rep_file_errors(tmp_path):
    fam = cyclic_p(2, 1)
    d = rep_to_json(unit(fam))
    d["transitions"] = {k: v for k, v in list(d["transitions"].items())[1:]}
    with pytest.raises(InputError):
        rep_from_json(d)
    d = rep_to_json(unit(fam))
    d["dims"]["C9"] = 1
    with pytest.raises(InputError):
        rep_from_json(d)
    d = rep_to_json(unit(cyclic_p(2, 2)))
    key = next(k for k in d["transitions"] if k.startswith("C4>C2"))
    d["transitions"][key]["entries"] = [["0"]]
    with pytest.raises(RepError):
        rep_from_json(d)
    p = tmp_path / "bad.json"
    p.write_text('{"a": 1,,}')
    with pytest.raises(InputError, match="line 1"):
        load_json(p)
