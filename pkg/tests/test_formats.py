from collections import Counter

import pytest

from quiverhom import FIXTURES, GF3
from quiverhom import repmod as rm
from quiverhom.formats import (ParseError, parse_algebra, parse_module, parse_module_literal,
                               serialize_algebra, serialize_module)

from conftest import ALL_FIXTURES, load

FIXTURE_FILES = sorted(p.stem for p in FIXTURES.glob("*.alg"))


def path_multiset(a):
    return Counter(a.quiver.path_str(p) for p in a.basis)


@pytest.mark.parametrize("name", FIXTURE_FILES)
def test_round_trip(name):
    a = load(name)
    b = parse_algebra(serialize_algebra(a))
    assert str(b.field) == str(a.field)
    assert b.quiver.vertices == a.quiver.vertices
    assert path_multiset(b) == path_multiset(a)
    assert serialize_algebra(b) == serialize_algebra(a)


def test_every_test_fixture_ships():
    assert set(ALL_FIXTURES) <= set(FIXTURE_FILES)
    assert {f"zero-relation-A{n}" for n in range(2, 9)} <= set(FIXTURE_FILES)


def test_verbatim_coefficients_parse():
    a = load("gf3-12vertex")
    assert a.n == 12 and a.dim == 48 and str(a.field) == "GF(3)"


def test_default_field_and_comments():
    a = parse_algebra("# comment only\nvertices 1 2\narrow x : 1 -> 2   # trailing\n")
    assert a.field == GF3 and a.dim == 3


def test_nakayama_shorthand():
    a = parse_algebra("field Q\nnakayama cyclic 3,3,3,4\n")
    assert a.kupisch.entries == (3, 3, 3, 4) and a.dim == 13


@pytest.mark.parametrize("text, line", [
    ("vertices 1 2\narrow x : 1 -> 3\n", 2),
    ("vertices 1\nfrobnicate\n", 2),
    ("field GF(4)\nvertices 1\n", 1),
    ("vertices 1 2\narrow x 1 2\n", 2),
    ("vertices 1 2\narrow x : 1 -> 2\nrelation x*y\n", 3),
    ("vertices 1 2\narrow x : 1 -> 2\n\nrelation x -\n", 4),
    ("nakayama linear 2,3,1\n", 1),
    ("arrow x : 1 -> 2\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_named_module_expressions():
    a = load("kupisch-221")
    assert rm.is_isomorphic(parse_module(a, "P(1)"), rm.projective(a, 0))
    assert rm.is_isomorphic(parse_module(a, "I(3)"), rm.injective(a, 2))
    assert rm.is_isomorphic(parse_module(a, "S(2)"), rm.simple(a, 1))
    assert parse_module(a, "A").dim == a.dim == parse_module(a, "DA").dim
    s = parse_module(a, "P(1) + S(2) + S(2)")
    assert s.dims == (1, 3, 0)
    assert parse_module(a, "stableA").dim >= 0 and parse_module(a, "costableA").dim >= 0
    with pytest.raises(ValueError):
        parse_module(a, "Q(1)")
    with pytest.raises(KeyError):
        parse_module(a, "P(9)")


@pytest.mark.parametrize("name", ["kupisch-221", "auslander-six-vertex", "gorenstein", "gf3-12vertex"])
def test_module_literal_round_trip(name):
    a = load(name)
    for m in [rm.regular(a), rm.dual_regular(a), rm.simple(a, 0)]:
        back = parse_module_literal(a, serialize_module(m))
        assert back.dims == m.dims
        assert all(a.field.equal(x, y) for x, y in zip(back.mats, m.mats))


def test_module_literal_by_hand():
    a = load("kupisch-221")
    m = parse_module(a, "module { 1: 1, 2: 1 ; arrow " + a.arrows[0].name + ": [[1]] }")
    assert rm.is_isomorphic(m, rm.projective(a, 0))
