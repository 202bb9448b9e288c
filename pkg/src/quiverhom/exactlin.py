"""Exact dense linear algebra over prime fields GF(p) and the rationals.

Arrays are plain numpy arrays. Over GF(p) the entries are integers reduced
into ``[0, p)`` (``int64`` for small p, Python ints otherwise); over Q they
are ``fractions.Fraction`` objects in an ``object`` array.  All routines are
pure: inputs are never modified.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

# int64 is safe while every partial sum of products stays below 2**63.
_INT64_PRIME_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """A prime field GF(p) or the rationals (``p is None``)."""

    __slots__ = ("p", "_dtype")

    def __init__(self, p: Optional[int] = None):
        if p is not None:
            p = int(p)
            if not is_prime(p):
                raise ValueError(f"GF({p}): {p} is not prime")
        self.p = p
        if p is None or p >= _INT64_PRIME_LIMIT:
            self._dtype = object
        else:
            self._dtype = np.int64

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().replace(" ", "")
        if t in ("Q", "QQ", "Rationals"):
            return cls.rationals()
        up = t.upper()
        if up.startswith("GF(") and up.endswith(")"):
            return cls.gf(int(t[3:-1]))
        raise ValueError(f"unknown field {text!r}; expected GF(p) or Q")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> Optional[int]:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    __str__ = __repr__

    # -- scalars ---------------------------------------------------------

    def scalar(self, x):
        """Coerce an int, Fraction or ``'a/b'`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), self.p - 2, self.p)

    def elements(self):
        """All field elements (finite fields only)."""
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    def random_element(self, rng, small: int = 3):
        if self.p is None:
            return Fraction(int(rng.randint(-small, small)))
        return int(rng.randrange(self.p))

    # -- arrays ------------------------------------------------------------

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            a = np.empty((rows, cols), dtype=object)
            a.fill(Fraction(0))
            return a
        if self._dtype is object:
            a = np.empty((rows, cols), dtype=object)
            a.fill(0)
            return a
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.one()
        return a

    def array(self, rows) -> np.ndarray:
        """Build a 2-d field array from nested lists (or an existing array)."""
        if isinstance(rows, np.ndarray):
            if rows.ndim != 2:
                raise ValueError("expected a 2-d array")
            src = rows
            out = self.zeros(*src.shape)
            if self.p is not None and self._dtype is not object and src.dtype != object:
                return np.mod(src.astype(np.int64), self.p)
            for idx, x in np.ndenumerate(src):
                out[idx] = self.scalar(x)
            return out
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        out = self.zeros(len(rows), ncols)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                out[i, j] = self.scalar(x)
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is None:
            return a
        return np.mod(a, self.p)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, c, a):
        return self.reduce(a * c)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.p is None:
            return np.dot(a, b)
        return np.mod(np.dot(a, b), self.p)

    def is_zero(self, a: np.ndarray) -> bool:
        return a.size == 0 or not np.any(a != 0)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and (a.size == 0 or bool(np.all(a == b)))

    # -- elimination -------------------------------------------------------

    def rref(self, a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form and pivot columns (no zero rows dropped)."""
        m = a.copy()
        rows, cols = m.shape
        pivots: List[int] = []
        r = 0
        p = self.p
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(m[r:, c] != 0)
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                m[[r, k]] = m[[k, r]]
            piv = m[r, c]
            if p is None:
                if piv != 1:
                    m[r, c:] = m[r, c:] / piv
            else:
                if piv != 1:
                    m[r, c:] = np.mod(m[r, c:] * pow(int(piv), p - 2, p), p)
            colv = m[:, c].copy()
            colv[r] = 0
            hit = np.flatnonzero(colv != 0)
            if hit.size:
                upd = m[hit, c:] - np.outer(colv[hit], m[r, c:])
                m[hit, c:] = upd if p is None else np.mod(upd, p)
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def row_basis(self, a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """RREF basis of the row space (nonzero rows only) plus pivots."""
        if a.shape[0] == 0:
            return self.zeros(0, a.shape[1]), []
        r, piv = self.rref(a)
        return r[: len(piv)].copy(), piv

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Rows v with ``a @ v == 0``, returned as an RREF basis."""
        rows, cols = a.shape
        if rows == 0:
            return self.eye(cols)
        r, piv = self.rref(a)
        free = [j for j in range(cols) if j not in set(piv)]
        out = self.zeros(len(free), cols)
        for t, j in enumerate(free):
            out[t, j] = self.one()
            for i, pc in enumerate(piv):
                if r[i, j] != 0:
                    out[t, pc] = self.neg(np.array([r[i, j]], dtype=r.dtype))[0]
        if len(free) > 1:
            out, _ = self.row_basis(out)
        return out

    def left_nullspace(self, a: np.ndarray) -> np.ndarray:
        """Rows x with ``x @ a == 0``."""
        return self.nullspace(a.T.copy())

    def solve(self, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """Some x with ``a @ x == b`` (b may have several columns), or None."""
        rows, cols = a.shape
        if b.ndim == 1:
            b = b.reshape(-1, 1)
            flat = True
        else:
            flat = False
        k = b.shape[1]
        aug = self.zeros(rows, cols + k)
        aug[:, :cols] = a
        aug[:, cols:] = b
        r, piv = self.rref(aug)
        if piv and piv[-1] >= cols:
            return None
        x = self.zeros(cols, k)
        for i, pc in enumerate(piv):
            x[pc] = r[i, cols:]
        return x[:, 0] if flat else x

    def solve_left(self, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """Some x with ``x @ a == b``, or None."""
        x = self.solve(a.T.copy(), b.T.copy())
        return None if x is None else x.T.copy()

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n, m = a.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(a, self.eye(n))
        if x is None:
            raise ZeroDivisionError("singular matrix")
        return x

    def is_invertible(self, a: np.ndarray) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    def det(self, a: np.ndarray):
        """Determinant by elimination."""
        n = a.shape[0]
        m = a.copy()
        det = self.one()
        for c in range(n):
            nz = np.flatnonzero(m[c:, c] != 0)
            if nz.size == 0:
                return self.zero()
            k = c + int(nz[0])
            if k != c:
                m[[c, k]] = m[[k, c]]
                det = -det
            piv = m[c, c]
            det = det * piv
            inv = self.inv(piv)
            for i in range(c + 1, n):
                if m[i, c] != 0:
                    f = m[i, c] * inv
                    m[i, c:] = m[i, c:] - f * m[c, c:]
                    if self.p is not None:
                        m[i, c:] = np.mod(m[i, c:], self.p)
        if self.p is not None:
            det = int(det) % self.p
        return det

    def charpoly(self, a: np.ndarray) -> list:
        """Coefficients of det(xI - a), highest degree first.

        Division-free (Berkowitz), so it works in every characteristic.
        """
        n = a.shape[0]
        if n == 0:
            return [self.one()]
        poly = [self.one(), self.neg(np.array([a[0, 0]], dtype=a.dtype))[0]]
        for k in range(1, n):
            r = a[k, :k].reshape(1, k)
            s = a[:k, k].reshape(k, 1)
            sub = a[:k, :k]
            # Toeplitz column: 1, -a_kk, -r s, -r M s, ...
            col = [self.one(), self._neg_scalar(a[k, k])]
            v = s
            for _ in range(k):
                val = self.matmul(r, v)[0, 0]
                col.append(self._neg_scalar(val))
                v = self.matmul(sub, v)
            new = []
            for i in range(k + 2):
                acc = self.zero()
                for j in range(min(i, len(poly) - 1) + 1):
                    if i - j < len(col):
                        acc = acc + col[i - j] * poly[j]
                new.append(self._norm(acc))
            poly = new
        return poly

    def _neg_scalar(self, x):
        return Fraction(-x) if self.p is None else (-int(x)) % self.p

    def _norm(self, x):
        return x if self.p is None else int(x) % self.p

    def roots(self, coeffs: list, limit: int = 4096) -> list:
        """Roots in the field of a polynomial (highest degree first).

        GF(p) is searched exhaustively when p <= limit; Q uses the rational
        root theorem.  Returns [] when the search does not apply.
        """
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        if len(coeffs) <= 1:
            return []

        def ev(x):
            acc = self.zero()
            for c in coeffs:
                acc = acc * x + c
                if self.p is not None:
                    acc %= self.p
            return acc

        if self.p is not None:
            if self.p > limit:
                return []
            return [x for x in range(self.p) if ev(x) == 0]
        return _rational_roots([Fraction(c) for c in coeffs], limit)


def _rational_roots(coeffs: List[Fraction], limit: int) -> List[Fraction]:
    from math import gcd

    out = []
    # strip zero roots
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
        out.append(Fraction(0))
    if len(coeffs) <= 1:
        return sorted(set(out))
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead, const = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        ds = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                ds.append(d)
                ds.append(n // d)
            d += 1
            if len(ds) > limit:
                return None
        return sorted(set(ds))

    dp, dq = divisors(const), divisors(lead)
    if dp is None or dq is None or len(dp) * len(dq) > limit:
        return sorted(set(out))
    for a in dp:
        for b in dq:
            for x in (Fraction(a, b), Fraction(-a, b)):
                acc = Fraction(0)
                for c in ints:
                    acc = acc * x + c
                if acc == 0:
                    out.append(x)
    return sorted(set(out))


GF2 = Field(2)
GF3 = Field(3)
QQ = Field(None)


# ---------------------------------------------------------------------------
# Matrix value type and the module-level operations built on it.


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    data: np.ndarray = dc_field(repr=False)

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        return cls(field, field.array(rows))

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, field.eye(n))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def entries(self) -> list:
        return [self.data[i, j] for i in range(self.rows) for j in range(self.cols)]

    def tolist(self) -> list:
        return [[self.data[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_field(self, other)
        return Matrix(self.field, self.field.sub(self.data, other.data))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and self.field.equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(map(str, self.entries()))))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy())

    def rank(self) -> int:
        return self.field.rank(self.data)


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    r, piv = m.field.rref(m.data)
    return Matrix(m.field, r), piv


def kernel_basis(m: Matrix) -> List[Matrix]:
    """Column vectors spanning {v : m v = 0}."""
    ns = m.field.nullspace(m.data)
    return [Matrix(m.field, ns[i].reshape(-1, 1).copy()) for i in range(ns.shape[0])]


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    _same_field(m, b)
    x = m.field.solve(m.data, b.data)
    return None if x is None else Matrix(m.field, x)


@dataclass(frozen=True)
class SubspaceData:
    """Result of :func:`intersect_and_quotient`.

    ``basis`` is an RREF basis (rows) of the subspace span, ``ambient`` an
    RREF basis of the ambient span and ``complement`` rows that, together
    with ``basis``, form a basis of the ambient span.
    """

    field: Field
    basis: np.ndarray
    pivots: Tuple[int, ...]
    ambient: np.ndarray
    complement: np.ndarray

    def contains(self, v: Sequence) -> bool:
        v = self.field.array([list(v)])
        if self.basis.shape[0] == 0:
            return self.field.is_zero(v)
        return self.field.rank(np.vstack([self.basis, v])) == self.basis.shape[0]

    def coordinates(self, v: Sequence) -> Optional[np.ndarray]:
        """Coordinates of v in ``basis``, or None when v is outside."""
        v = self.field.array([list(v)])
        if not self.contains(v[0]):
            return None
        return v[0, list(self.pivots)].copy()


def intersect_and_quotient(subspace_gens, ambient_gens, field: Optional[Field] = None) -> SubspaceData:
    """Basis data for span(subspace_gens) inside span(ambient_gens).

    The subspace must lie in the ambient span; the complement is chosen from
    the ambient RREF rows whose pivots are not pivots of the subspace.
    """
    sub = _as_rows(subspace_gens, field)
    amb = _as_rows(ambient_gens, field)
    fld = field or _infer_field(subspace_gens, ambient_gens)
    ncols = amb.shape[1] if amb.size or amb.shape[1] else sub.shape[1]
    sb, spiv = fld.row_basis(sub) if sub.shape[0] else (fld.zeros(0, ncols), [])
    ab, _ = fld.row_basis(amb) if amb.shape[0] else (fld.zeros(0, ncols), [])
    if sb.shape[0]:
        joint = np.vstack([ab, sb]) if ab.shape[0] else sb
        if fld.rank(joint) != ab.shape[0]:
            raise ValueError("subspace is not contained in the ambient span")
    comp = []
    current = sb
    for i in range(ab.shape[0]):
        cand = ab[i : i + 1]
        trial = np.vstack([current, cand]) if current.shape[0] else cand
        if fld.rank(trial) > current.shape[0]:
            comp.append(cand[0])
            current = trial
    compl = np.array(comp, dtype=ab.dtype).reshape(len(comp), ncols) if comp else fld.zeros(0, ncols)
    return SubspaceData(fld, sb, tuple(spiv), ab, compl)


def _infer_field(*gens) -> Field:
    for g in gens:
        if isinstance(g, Matrix):
            return g.field
        for v in g:
            if isinstance(v, Matrix):
                return v.field
    raise ValueError("cannot infer the field; pass field=")


def _as_rows(gens, field: Optional[Field]) -> np.ndarray:
    if isinstance(gens, Matrix):
        return gens.data
    fld = field or _infer_field(gens)
    rows = []
    for v in gens:
        if isinstance(v, Matrix):
            rows.append(list(v.data.reshape(-1)))
        else:
            rows.append(list(v))
    if not rows:
        return fld.zeros(0, 0)
    return fld.array(rows)
