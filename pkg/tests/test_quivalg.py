import random
from collections import Counter

import pytest

from quiverhom import repmod as rm
from quiverhom.exactlin import GF3, QQ
from quiverhom.formats import parse_algebra
from quiverhom.kupisch import enumerate_kupisch
from quiverhom.quivalg import (InvalidKupisch, KupischSeries, NotAdmissible, Quiver, Relation,
                               _paths_by_length, build_algebra, nakayama_from_kupisch, semisimple,
                               zero_relation_linear)

from conftest import ALL_FIXTURES, load


def words(a):
    return Counter((p.source, tuple(a.arrows[x].name for x in p.word)) for p in a.basis)


def reversed_words(a):
    out = Counter()
    q = a.quiver
    for p in a.basis:
        tgt = q.target(p)
        out[(tgt, tuple(a.arrows[x].name for x in reversed(p.word)))] += 1
    return out


@pytest.mark.parametrize("n", range(2, 9))
def test_zero_relation_dimension(n):
    a = zero_relation_linear(n, GF3)
    assert a.dim == 2 * n - 1
    # oracle: enumerate every path and keep those of length <= 1
    assert sum(1 for layer in _paths_by_length(a.quiver, 3)[:2] for _ in layer) == 2 * n - 1


def test_one_vertex_algebra():
    a = semisimple(GF3)
    assert a.dim == 1 and a.nilpotency == 1
    assert a.hom_between_projectives_dim(0, 0) == 1
    assert words(a.opposite()) == words(a)


def test_gf3_example_builds():
    a = load("gf3-12vertex")
    assert a.n == 12 and len(a.arrows) == 18
    for r in a.relations:
        assert a.relation_element(r) == {}


def test_nakayama_dimensions():
    assert nakayama_from_kupisch(KupischSeries((2, 2, 1), "linear"), GF3).dim == 5
    assert nakayama_from_kupisch(KupischSeries((1,), "linear"), GF3).dim == 1
    assert nakayama_from_kupisch(KupischSeries((2, 3, 3, 3, 3, 2, 2, 1), "linear"), GF3).dim == 19


@pytest.mark.parametrize("entries", [(2, 3, 1), (1, 2), (3, 1)])
def test_invalid_linear_kupisch(entries):
    with pytest.raises(InvalidKupisch):
        KupischSeries(entries, "linear")


def test_invalid_cyclic_kupisch():
    with pytest.raises(InvalidKupisch):
        KupischSeries((4, 2), "cyclic")
    with pytest.raises(InvalidKupisch):
        KupischSeries((1, 2), "cyclic")


@pytest.mark.parametrize("kind,n", [("linear", 5), ("linear", 6), ("cyclic", 3), ("cyclic", 4)])
def test_kupisch_reproduced(kind, n):
    for k in enumerate_kupisch(kind, n, 2 * n):
        a = nakayama_from_kupisch(k, GF3)
        assert [sum(a.projective_dims(i)) for i in range(n)] == list(k.entries)


def test_not_admissible():
    q = Quiver.build(["1"], [("x", "1", "1")])
    with pytest.raises(NotAdmissible):
        build_algebra(q, [], QQ, length_cap=6)


def test_relation_must_be_parallel():
    q = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "2")])
    with pytest.raises(ValueError):
        Relation(((1, q.path(["a", "b"])), (1, q.path(["c"])))).check(q, QQ)


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_algebra_invariants(name):
    a = load(name)
    rng = random.Random(name)
    f = a.field
    # trivial paths are basis elements and their sum is the identity
    one = {a.trivial(i): f.one() for i in range(a.n)}
    for b in range(a.dim):
        x = {b: f.one()}
        assert a.mul(one, x) == x and a.mul(x, one) == x
    for _ in range(200):
        x, y, z = ({rng.randrange(a.dim): f.one()} for _ in range(3))
        assert a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z))
    for r in a.relations:
        assert a.relation_element(r) == {}
    # J^L = 0 and J^(L-1) != 0
    layers = _paths_by_length(a.quiver, a.nilpotency)
    assert all(a.element(p) == {} for p in layers[a.nilpotency])
    if not a.is_semisimple():
        assert any(a.element(p) for p in layers[a.nilpotency - 1])
    assert a.dim == sum(sum(a.projective_dims(i)) for i in range(a.n))


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_opposite(name):
    a = load(name)
    op = a.opposite()
    assert op.dim == a.dim
    assert words(op) == reversed_words(a)
    assert words(op.opposite()) == words(a)
    for r in op.relations:
        assert op.relation_element(r) == {}


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_hom_between_projectives_matches_hom_basis(name):
    a = load(name)
    ps = [rm.projective(a, i) for i in range(a.n)]
    for i in range(a.n):
        for j in range(a.n):
            assert a.hom_between_projectives_dim(i, j) == len(rm.hom_basis_intertwiner(ps[i], ps[j]))


def test_hom_between_projectives_examples():
    a = zero_relation_linear(2, GF3)
    assert a.hom_between_projectives_dim(0, 1) == 0
    assert a.hom_between_projectives_dim(1, 0) == 1


def test_opposite_a3_reverses_arrows():
    a = zero_relation_linear(3, GF3)
    op = a.opposite()
    assert [(x.source, x.target) for x in op.arrows] == [(x.target, x.source) for x in a.arrows]


def test_parse_general_relations_reduce():
    a = parse_algebra("field Q\nvertices 1 2 3 4\narrow a : 1 -> 2\narrow b : 1 -> 3\n"
                      "arrow c : 2 -> 4\narrow d : 3 -> 4\nrelation a*c - 2*b*d\n")
    assert a.dim == 4 + 4 + 1
    assert a.element(a.quiver.path(["a", "c"])) == {b: 2 * c for b, c in a.element(a.quiver.path(["b", "d"])).items()}
