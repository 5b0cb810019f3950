from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modrep.corpus import CORPUS, group_file_text, named_group
from modrep.errors import GroupParseError, InputError
from modrep.exact import CycNumber, zeta
from modrep.exact.cyclotomic import euler_phi
from modrep.io import emit, parse, parse_group_text, parse_polynomial, parse_rep_text, to_jsonable


@pytest.mark.parametrize("name", [n for n in CORPUS if n != "trivial"])
def test_corpus_files_parse_back(name):
    spec = parse_group_text(group_file_text(name))
    G = spec.build()
    assert G.order == named_group(name).order
    assert spec.name == name


def test_parse_details():
    spec = parse_group_text("# comment\n  domain 4\nname V4\ngen (1 2)(3 4)\ngen (1,3)(2,4)  # trailing\n\n")
    assert spec.degree == 4 and spec.name == "V4"
    assert spec.generators == [[1, 0, 3, 2], [2, 3, 0, 1]]
    assert parse_group_text("domain 1\n").build().order == 1
    assert parse_group_text("domain 3\ngen ()\n").generators == [[0, 1, 2]]


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("gen (1 2)\n", 1, 1),  # no domain line at all
        ("domain 3\ngen (1 4)\n", 2, 8),
        ("domain 3\ngen (1 2\n", 2, 9),
        ("domain 3\ngen (1 1)\n", 2, 8),
        ("domain x\n", 1, 8),
        ("domain 3\nfoo (1 2)\n", 2, 1),
        ("domain 3\ngen 1 2\n", 2, 5),
        ("domain 3\ngen (1 2))\n", 2, 10),
        ("domain 3\ngen (1 [2)\n", 2, 8),
    ],
)
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(GroupParseError) as info:
        parse_group_text(text)
    assert (info.value.line, info.value.column) == (line, col)


@given(st.text(alphabet="domaingen()0123456789 \n#,xyz", max_size=60))
def test_parser_is_total(text):
    try:
        spec = parse_group_text(text)
    except GroupParseError as exc:
        assert exc.line is not None and exc.line >= 1 and exc.column >= 1
    else:
        for g in spec.generators:
            assert sorted(g) == list(range(spec.degree))


def test_rep_files():
    F, mats = parse_rep_text('{"p": 2, "e": 2, "generators": [[[[1, 0], [0, 1]], [[0, 0], [1, 0]]]]}', 2)
    assert F.q == 4 and mats[0].tolist() == [[1, 2], [0, 1]]
    F, mats = parse_rep_text('{"generators": [[[1, 1], [0, 1]]]}', 3)
    assert F.q == 3 and mats[0].tolist() == [[1, 1], [0, 1]]
    with pytest.raises(InputError):
        parse_rep_text('{"p": 3, "generators": []}', 2)
    with pytest.raises(InputError):
        parse_rep_text('{"generators": [[[1, 1]]]}', 2)
    with pytest.raises(InputError):
        parse_rep_text("{not json", 2)
    with pytest.raises(InputError):
        parse_rep_text('{"e": 2, "generators": [[[[1, 5]]]]}', 2)


@st.composite
def cyc_values(draw):
    M = draw(st.sampled_from([1, 3, 4, 8, 12]))
    coeffs = draw(st.lists(st.fractions(max_denominator=6, min_value=-9, max_value=9), min_size=euler_phi(M), max_size=euler_phi(M)))
    return CycNumber.from_coefficients(M, coeffs)


documents = st.recursive(
    st.one_of(st.integers(-10**20, 10**20), st.text(max_size=8), st.booleans(), st.none(), cyc_values()),
    lambda children: st.one_of(st.lists(children, max_size=4), st.dictionaries(st.text(max_size=5), children, max_size=4)),
    max_leaves=20,
)


@given(documents)
def test_emit_parse_roundtrip(doc):
    text = emit({"payload": doc})
    back = parse(text)
    assert emit(back) == text
    assert back["payload"] == doc
    assert not _floats(json.loads(text))


def _floats(x) -> bool:
    if isinstance(x, float):
        return True
    if isinstance(x, list):
        return any(_floats(y) for y in x)
    if isinstance(x, dict):
        return any(_floats(y) for y in x.values())
    return False


def test_cyclotomic_encoding():
    d = to_jsonable(zeta(8) + Fraction(1, 3))
    assert d == {"conductor": 8, "coefficients": ["1/3", 1, 0, 0]}
    assert to_jsonable(zeta(12, 3)) == {"conductor": 4, "coefficients": [0, 1]}  # minimal conductor
    assert parse(json.dumps({"x": d}))["x"] == zeta(8) + Fraction(1, 3)
    with pytest.raises(TypeError):
        emit({"x": 0.5})


def test_polynomials():
    assert parse_polynomial("t^3 + 2*t^2 - 4") == [-4, 0, 2, 1]
    assert parse_polynomial("t") == [0, 1]
    assert parse_polynomial("-t^2+3t") == [0, 3, -1]
    with pytest.raises(InputError):
        parse_polynomial("t^^2")
    with pytest.raises(InputError):
        parse_polynomial("")
