import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quiverhom.exactlin import (GF2, GF3, QQ, Field, Matrix, SubspaceData, intersect_and_quotient,
                                kernel_basis, rref, solve)


def mats(p, max_rows=4, max_cols=4):
    lo, hi = (0, p - 1) if p else (-3, 3)
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def field_of(p):
    return Field(p) if p else QQ


def brute_kernel_size(rows, p):
    """Number of vectors v in GF(p)^cols with m v = 0, by enumeration."""
    cols = len(rows[0])
    count = 0
    for v in itertools.product(range(p), repeat=cols):
        if all(sum(r[j] * v[j] for j in range(cols)) % p == 0 for r in rows):
            count += 1
    return count


def cofactor_det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    return sum((-1) ** j * Fraction(m[0][j]) * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(n))


def minor_rank(rows):
    r, c = len(rows), len(rows[0])
    for k in range(min(r, c), 0, -1):
        for ri in itertools.combinations(range(r), k):
            for ci in itertools.combinations(range(c), k):
                if cofactor_det([[rows[i][j] for j in ci] for i in ri]) != 0:
                    return k
    return 0


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(4)


def test_parse_fields():
    assert Field.parse("GF(3)") == GF3
    assert Field.parse("Q") == QQ
    with pytest.raises(ValueError):
        Field.parse("R")


def test_rref_identity_and_zero():
    r, piv = rref(Matrix.identity(GF3, 2))
    assert r == Matrix.identity(GF3, 2) and piv == [0, 1]
    z = Matrix.zero(QQ, 2, 3)
    r, piv = rref(z)
    assert r == z and piv == []


def test_gf3_rank_of_singular_example():
    m = Matrix.from_rows(GF3, [[1, 2], [2, 1]])
    # independent check: the cofactor determinant 1 - 4 = -3 vanishes mod 3
    assert cofactor_det([[1, 2], [2, 1]]) % 3 == 0
    assert m.rank() == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(GF3, 3)) == []
    assert len(kernel_basis(Matrix.zero(GF2, 3, 3))) == 3
    (v,) = kernel_basis(Matrix.from_rows(QQ, [[1, 1]]))
    a, b = v.entries()
    assert a == -b and a != 0


def test_solve_absent():
    m = Matrix.from_rows(QQ, [[1, 0], [0, 0]])
    assert solve(m, Matrix.from_rows(QQ, [[0], [1]])) is None


def test_subspace_examples():
    e1, e2 = [1, 0], [0, 1]
    assert intersect_and_quotient([e1, e2], [e1, e2], QQ).complement.shape[0] == 0
    assert intersect_and_quotient([], [e1, e2], QQ).complement.shape[0] == 2
    d = intersect_and_quotient([e1], [e1, e2], QQ)
    assert d.complement.shape[0] == 1
    assert d.contains([3, 0]) and not d.contains([0, 1])


def test_fractions_lowest_terms():
    x = QQ.scalar(Fraction(6, -4))
    assert x == Fraction(-3, 2) and x.denominator > 0
    assert QQ.scalar("-6/4") == x


@given(mats(3))
def test_rank_matches_kernel_enumeration_gf3(rows):
    m = GF3.array(rows)
    k = brute_kernel_size(rows, 3)
    assert 3 ** (len(rows[0]) - GF3.rank(m)) == k


@given(mats(2))
def test_rank_matches_kernel_enumeration_gf2(rows):
    assert 2 ** (len(rows[0]) - GF2.rank(GF2.array(rows))) == brute_kernel_size(rows, 2)


@given(mats(None, 3, 3))
def test_rank_matches_minors_over_q(rows):
    assert QQ.rank(QQ.array(rows)) == minor_rank(rows)


@pytest.mark.parametrize("p", [2, 3, 5, None])
@given(data=st.data())
def test_rank_nullity_and_rref_idempotent(p, data):
    f = field_of(p)
    m = Matrix(f, f.array(data.draw(mats(p, 5, 5))))
    ker = kernel_basis(m)
    assert m.rank() + len(ker) == m.cols
    for v in ker:
        assert (m @ v) == Matrix.zero(f, m.rows, 1)
    if ker:
        assert Matrix(f, np.hstack([v.data for v in ker])).rank() == len(ker)
    r, piv = rref(m)
    assert rref(r)[0] == r
    assert piv == sorted(set(piv)) and len(piv) == m.rank()


@pytest.mark.parametrize("p", [3, 7, None])
@given(data=st.data())
def test_solve_consistent_with_rank(p, data):
    f = field_of(p)
    rows = data.draw(mats(p, 4, 4))
    b = data.draw(st.lists(st.integers(-3, 3), min_size=len(rows), max_size=len(rows)))
    m = Matrix(f, f.array(rows))
    bm = Matrix(f, f.array([[x] for x in b]))
    x = solve(m, bm)
    aug = Matrix(f, np.hstack([m.data, bm.data]))
    if x is None:
        assert aug.rank() > m.rank()
    else:
        assert m @ x == bm


@pytest.mark.parametrize("p", [5, None])
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_scalar_field_axioms(p, xs):
    f = field_of(p)
    a, b, c = (f.scalar(x) for x in xs)
    add = lambda x, y: f.reduce(np.array([x + y], dtype=object))[0] if p else x + y
    mul = lambda x, y: f.reduce(np.array([x * y], dtype=object))[0] if p else x * y
    assert add(a, add(b, c)) == add(add(a, b), c)
    assert mul(a, mul(b, c)) == mul(mul(a, b), c)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, f.scalar(-a)) == 0
    if a != 0:
        assert mul(a, f.inv(a)) == 1


@given(mats(3, 4, 4))
def test_inverse_and_det(rows):
    if len(rows) != len(rows[0]):
        return
    m = GF3.array(rows)
    d = GF3.det(m)
    assert (d != 0) == GF3.is_invertible(m)
    assert d == cofactor_det(rows) % 3
    if d:
        assert GF3.equal(GF3.matmul(m, GF3.inverse(m)), GF3.eye(len(rows)))


@given(mats(3, 4, 4))
def test_charpoly_cayley_hamilton(rows):
    if len(rows) != len(rows[0]):
        return
    m = GF3.array(rows)
    coeffs = GF3.charpoly(m)
    acc = GF3.zeros(len(rows), len(rows))
    for c in coeffs:
        acc = GF3.add(GF3.matmul(acc, m), GF3.scale(c, GF3.eye(len(rows))))
    assert GF3.is_zero(acc)


def test_subspace_coordinates_roundtrip():
    d = intersect_and_quotient([[1, 1, 0], [0, 1, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]], QQ)
    assert isinstance(d, SubspaceData)
    coords = d.coordinates([1, 2, 1])
    assert coords is not None
    recon = QQ.matmul(QQ.array([list(coords)]), d.basis)
    assert list(recon[0]) == [1, 2, 1]
    assert d.coordinates([1, 0, 0]) is None
    assert d.complement.shape[0] == 1
