import pytest

from modtorelli import codec
from modtorelli.bcj import BooleanPoly, poincare_sigma
from modtorelli.exactmat import IntMatrix
from modtorelli.forms import Sym2Elem, WedgeVector3
from modtorelli.symplectic import trefoil_word


def test_matrix_roundtrip_big_entries():
    M = IntMatrix([[10**40, -3], [7, 0]])
    obj = codec.encode_matrix(M)
    assert obj["entries"][0] == str(10**40)
    assert codec.decode_matrix(obj) == M


def test_matrix_accepts_nested_and_ints():
    assert codec.decode_matrix({"rows": 2, "cols": 2, "entries": [[1, 2], ["3", 4]]}) == IntMatrix([[1, 2], [3, 4]])


@pytest.mark.parametrize(
    "obj",
    [
        {"rows": 2, "cols": 2, "entries": ["1", "2", "3"]},
        {"rows": 1, "cols": 1, "entries": ["x"]},
        {"rows": 1, "cols": 1},
        [1, 2],
        {"rows": 1, "cols": 1, "entries": [True]},
    ],
)
def test_matrix_rejects_bad_input(obj):
    with pytest.raises(codec.DecodeError):
        codec.decode_matrix(obj)


def test_twist_word_roundtrip():
    w = trefoil_word()
    assert codec.decode_twist_word(codec.encode_twist_word(w)) == w
    named = {"genus": 2, "word": [{"curve": "b1 - b2", "power": 1}]}
    assert codec.decode_twist_word(named).letters[0][0].coeffs == (0, 0, 1, -1)


def test_boolean_roundtrip():
    s = poincare_sigma()
    obj = codec.encode_boolean(s)
    assert obj["monomials"][0] == []
    assert codec.decode_boolean(obj) == s
    assert codec.decode_boolean({"genus": 1, "monomials": [["A1"], ["A1"]]}) == BooleanPoly.zero(1)


def test_wedge_and_sym2_roundtrip():
    xi = WedgeVector3.monomial(3, 5, ["a1", "a2", "b2"], 2) + WedgeVector3.monomial(3, 5, ["b3", "a1", "a2"])
    obj = codec.encode_wedge(xi)
    assert obj["terms"][0] == {"mono": ["a1", "a2", "b2"], "coeff": 2}
    assert codec.decode_wedge(obj) == xi
    s = Sym2Elem.gen(3, 5, ("a1", "b1"), ("a2", "b2"), 3)
    assert codec.decode_sym2(codec.encode_sym2(s)) == s


def test_dumps_is_deterministic():
    assert codec.dumps({"b": 1, "a": [2]}) == '{"a": [2], "b": 1}'
