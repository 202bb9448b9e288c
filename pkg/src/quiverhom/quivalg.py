"""Bound quiver algebras KQ/I with a normal-form path basis.

Paths compose left to right: ``p*q`` traverses p first, then q.  A path is
stored as ``Path(source, word)`` where ``word`` is a tuple of arrow indices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .exactlin import Field

DEFAULT_LENGTH_CAP = 64


class NotAdmissible(ValueError):
    def __init__(self, length_cap: int):
        super().__init__(f"paths of length {length_cap} survive; ideal is not admissible at this cap")
        self.length_cap = length_cap


class InvalidKupisch(ValueError):
    pass


class Arrow(NamedTuple):
    name: str
    source: int
    target: int


class Path(NamedTuple):
    source: int
    word: Tuple[int, ...]

    def __len__(self):  # length of the path, not of the tuple
        return len(self.word)


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow labels must be unique")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise ValueError(f"arrow {a.name} has an invalid endpoint")

    @classmethod
    def build(cls, vertices: Sequence[str], arrows: Iterable[Tuple[str, str, str]]) -> "Quiver":
        """Convenience constructor from labels: arrows are (name, src, tgt)."""
        vertices = tuple(str(v) for v in vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        arr = []
        for name, s, t in arrows:
            if str(s) not in pos or str(t) not in pos:
                raise ValueError(f"arrow {name}: unknown vertex")
            arr.append(Arrow(str(name), pos[str(s)], pos[str(t)]))
        return cls(vertices, tuple(arr))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label) -> int:
        label = str(label)
        if label in self.vertices:
            return self.vertices.index(label)
        raise KeyError(f"unknown vertex {label!r}")

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise KeyError(f"unknown arrow {name!r}")

    def target(self, path: Path) -> int:
        return self.arrows[path.word[-1]].target if path.word else path.source

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n == 0:
            return True
        adj = [set() for _ in range(n)]
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == n

    def path(self, names: Sequence[str], source: Optional[int] = None) -> Path:
        """Path from arrow names in traversal order; checks composability."""
        word = tuple(self.arrow_index(n) for n in names)
        if not word:
            if source is None:
                raise ValueError("a trivial path needs a source vertex")
            return Path(source, ())
        for x, y in zip(word, word[1:]):
            if self.arrows[x].target != self.arrows[y].source:
                raise ValueError(f"arrows {self.arrows[x].name}, {self.arrows[y].name} do not compose")
        return Path(self.arrows[word[0]].source, word)

    def path_str(self, p: Path) -> str:
        if not p.word:
            return f"e_{self.vertices[p.source]}"
        return "*".join(self.arrows[i].name for i in p.word)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Relation:
    terms: Tuple[Tuple[object, Path], ...]

    def check(self, quiver: Quiver, field: Field) -> "Relation":
        if not self.terms:
            raise ValueError("empty relation")
        ends = {(p.source, quiver.target(p)) for _, p in self.terms}
        if len(ends) != 1:
            raise ValueError("relation terms are not parallel")
        if any(len(p) < 2 for _, p in self.terms):
            raise ValueError("relation terms must have length >= 2")
        merged: Dict[Path, object] = {}
        for c, p in self.terms:
            merged[p] = field.scalar(c) + merged.get(p, field.zero())
            if field.p is not None:
                merged[p] %= field.p
        terms = tuple((c, p) for p, c in merged.items() if c != 0)
        if not terms:
            raise ValueError("relation has no nonzero coefficient")
        return Relation(terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1


@dataclass(frozen=True)
class KupischSeries:
    entries: Tuple[int, ...]
    kind: str  # "linear" or "cyclic"

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(c) for c in self.entries))
        if self.kind not in ("linear", "cyclic"):
            raise InvalidKupisch(f"kind must be linear or cyclic, got {self.kind!r}")
        self.validate()

    @property
    def n(self) -> int:
        return len(self.entries)

    def validate(self):
        c, n = self.entries, len(self.entries)
        if n == 0:
            raise InvalidKupisch("empty Kupisch series")
        if self.kind == "linear":
            if c[-1] != 1:
                raise InvalidKupisch(f"linear series must end in 1 (c_{n} = {c[-1]})")
            for i in range(n - 1):
                if c[i] < 2:
                    raise InvalidKupisch(f"c_{i + 1} = {c[i]} < 2")
                if c[i + 1] < c[i] - 1:
                    raise InvalidKupisch(f"c_{i + 2} = {c[i + 1]} < c_{i + 1} - 1 = {c[i] - 1}")
        else:
            for i in range(n):
                if c[i] < 2:
                    raise InvalidKupisch(f"c_{i + 1} = {c[i]} < 2")
                j = (i + 1) % n
                if c[j] < c[i] - 1:
                    raise InvalidKupisch(f"c_{j + 1} = {c[j]} < c_{i + 1} - 1 = {c[i] - 1}")

    def __str__(self):
        return f"{self.kind}[{','.join(map(str, self.entries))}]"


class BoundQuiverAlgebra:
    """A finite-dimensional algebra KQ/I.

    ``basis`` lists normal-form paths; the trivial paths come first in vertex
    order.  Products and arrow actions are computed from a reduction rule and
    memoised; the object is otherwise immutable.
    """

    def __init__(self, quiver: Quiver, field: Field, relations: Sequence[Relation],
                 basis: List[Path], nilpotency: int, *, forbidden=None, nf=None,
                 kupisch: Optional[KupischSeries] = None):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(relations)
        self.basis = list(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.nilpotency = nilpotency
        self.kupisch = kupisch
        self._forbidden = forbidden
        self._nf = nf
        self._op: Optional[BoundQuiverAlgebra] = None
        n = quiver.vertex_count
        self.targets = [quiver.target(p) for p in self.basis]
        self.paths_between: List[List[List[int]]] = [[[] for _ in range(n)] for _ in range(n)]
        for i, p in enumerate(self.basis):
            self.paths_between[p.source][self.targets[i]].append(i)
        self._arrow_memo: Dict[Tuple[int, int], Dict[int, object]] = {}
        self.warnings: List[str] = []
        if not quiver.is_connected():
            msg = "quiver is not connected"
            self.warnings.append(msg)
            warnings.warn(msg)

    # -- basic data ---------------------------------------------------------

    @property
    def n(self) -> int:
        return self.quiver.vertex_count

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def arrows(self) -> Tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def is_monomial(self) -> bool:
        return self._forbidden is not None

    def vertex_index(self, v) -> int:
        """Vertex by label, falling back to a 1-based position."""
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if 0 <= v < self.n:
                return int(v)
            raise KeyError(f"vertex index {v} out of range")
        s = str(v)
        if s in self.quiver.vertices:
            return self.quiver.vertices.index(s)
        if s.isdigit() and 1 <= int(s) <= self.n:
            return int(s) - 1
        raise KeyError(f"unknown vertex {v!r}")

    def trivial(self, i: int) -> int:
        return self.index[Path(i, ())]

    def path_str(self, b: int) -> str:
        return self.quiver.path_str(self.basis[b])

    def projective_dims(self, i: int) -> List[int]:
        """Dimension vector of e_iA."""
        return [len(self.paths_between[i][j]) for j in range(self.n)]

    def hom_between_projectives_dim(self, i: int, j: int) -> int:
        """dim Hom_A(e_iA, e_jA) = dim e_jAe_i = #basis paths from j to i."""
        return len(self.paths_between[j][i])

    def cartan(self) -> np.ndarray:
        """Matrix C with C[i, j] = dim e_iAe_j."""
        return np.array([[len(self.paths_between[i][j]) for j in range(self.n)] for i in range(self.n)])

    def is_semisimple(self) -> bool:
        return self.dim == self.n

    # -- reduction and multiplication -------------------------------------

    def reduce_word(self, source: int, word: Tuple[int, ...]) -> Dict[int, object]:
        """Normal-form coordinates of an arbitrary (composable) path."""
        if len(word) >= self.nilpotency:
            return {}
        if self._forbidden is not None:
            for k in range(len(word)):
                for m in range(k + 2, len(word) + 1):
                    if word[k:m] in self._forbidden:
                        return {}
            return {self.index[Path(source, word)]: self.field.one()}
        return dict(self._nf.get(Path(source, word), {}))

    def right_arrow(self, b: int, a: int) -> Dict[int, object]:
        """Coordinates of basis[b] * arrow a (empty when not composable)."""
        key = (b, a)
        hit = self._arrow_memo.get(key)
        if hit is not None:
            return hit
        p = self.basis[b]
        arr = self.arrows[a]
        if self.targets[b] != arr.source:
            res: Dict[int, object] = {}
        else:
            res = self.reduce_word(p.source, p.word + (a,))
        self._arrow_memo[key] = res
        return res

    def mul_basis(self, b1: int, b2: int) -> Dict[int, object]:
        p, q = self.basis[b1], self.basis[b2]
        if self.targets[b1] != q.source:
            return {}
        if not p.word:
            return {b2: self.field.one()}
        if not q.word:
            return {b1: self.field.one()}
        return self.reduce_word(p.source, p.word + q.word)

    def mul(self, x: Dict[int, object], y: Dict[int, object]) -> Dict[int, object]:
        """Product of sparse elements {basis index: coefficient}."""
        out: Dict[int, object] = {}
        f = self.field
        for b1, c1 in x.items():
            for b2, c2 in y.items():
                for b, c in self.mul_basis(b1, b2).items():
                    out[b] = out.get(b, f.zero()) + c1 * c2 * c
        if f.p is not None:
            out = {b: c % f.p for b, c in out.items()}
        return {b: c for b, c in out.items() if c != 0}

    def element(self, path: Path) -> Dict[int, object]:
        return self.reduce_word(path.source, path.word)

    def relation_element(self, r: Relation) -> Dict[int, object]:
        out: Dict[int, object] = {}
        f = self.field
        for c, p in r.terms:
            for b, v in self.element(p).items():
                out[b] = out.get(b, f.zero()) + c * v
        if f.p is not None:
            out = {b: c % f.p for b, c in out.items()}
        return {b: c for b, c in out.items() if c != 0}

    # -- opposite -----------------------------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        """A^op on the reversed quiver; basis index b is the reversed path b."""
        if self._op is not None:
            return self._op
        q = self.quiver.opposite()
        rev = [Path(self.targets[i], tuple(reversed(p.word))) for i, p in enumerate(self.basis)]
        rels = []
        for r in self.relations:
            rels.append(Relation(tuple((c, Path(self.quiver.target(p), tuple(reversed(p.word))))
                                       for c, p in r.terms)))
        if self._forbidden is not None:
            forb = frozenset(tuple(reversed(w)) for w in self._forbidden)
            op = BoundQuiverAlgebra(q, self.field, rels, rev, self.nilpotency, forbidden=forb)
        else:
            nf = {}
            for p, vec in self._nf.items():
                t = self.quiver.target(p)
                nf[Path(t, tuple(reversed(p.word)))] = vec
            op = BoundQuiverAlgebra(q, self.field, rels, rev, self.nilpotency, nf=nf)
        op._op = self
        self._op = op
        return op

    def __repr__(self):
        tag = f" {self.kupisch}" if self.kupisch is not None else ""
        return f"<BoundQuiverAlgebra{tag} over {self.field}: {self.n} vertices, dim {self.dim}>"


# ---------------------------------------------------------------------------
# construction


def _paths_by_length(quiver: Quiver, max_len: int) -> List[List[Path]]:
    out = [[Path(v, ()) for v in range(quiver.vertex_count)]]
    by_source: Dict[int, List[int]] = {}
    for i, a in enumerate(quiver.arrows):
        by_source.setdefault(a.source, []).append(i)
    for _ in range(max_len):
        nxt = []
        for p in out[-1]:
            t = quiver.target(p)
            for a in by_source.get(t, []):
                nxt.append(Path(p.source, p.word + (a,)))
        out.append(nxt)
    return out


def build_algebra(quiver: Quiver, rels: Sequence[Relation], field: Field,
                  length_cap: int = DEFAULT_LENGTH_CAP) -> BoundQuiverAlgebra:
    rels = [r.check(quiver, field) for r in rels]
    if all(r.is_monomial for r in rels):
        return _build_monomial(quiver, rels, field, length_cap)
    return _build_general(quiver, rels, field, length_cap)


def _build_monomial(quiver, rels, field, length_cap):
    forbidden = frozenset(r.terms[0][1].word for r in rels)
    by_source: Dict[int, List[int]] = {}
    for i, a in enumerate(quiver.arrows):
        by_source.setdefault(a.source, []).append(i)
    layer = [Path(v, ()) for v in range(quiver.vertex_count)]
    basis = list(layer)
    d = 0
    while layer:
        d += 1
        if d >= length_cap:
            raise NotAdmissible(length_cap)
        nxt = []
        for p in layer:
            for a in by_source.get(quiver.target(p), []):
                w = p.word + (a,)
                if any(w[k:] in forbidden for k in range(len(w) - 1)):
                    continue
                nxt.append(Path(p.source, w))
        basis.extend(nxt)
        layer = nxt
    layer_sorted = sorted(basis, key=lambda p: (len(p), p.source, p.word))
    return BoundQuiverAlgebra(quiver, field, rels, layer_sorted, d, forbidden=forbidden)


def _truncated_ideal(quiver, rels, field, paths, D):
    """Rows spanning (I + J^{D+1}) / J^{D+1} in the basis of paths of length <= D."""
    cols: List[Path] = [p for ell in range(D, -1, -1) for p in paths[ell]]
    pos = {p: i for i, p in enumerate(cols)}
    ends_at: Dict[int, List[Path]] = {}
    starts_at: Dict[int, List[Path]] = {}
    for ell in range(D + 1):
        for p in paths[ell]:
            ends_at.setdefault(quiver.target(p), []).append(p)
            starts_at.setdefault(p.source, []).append(p)
    rows = []
    for r in rels:
        s = r.terms[0][1].source
        t = quiver.target(r.terms[0][1])
        rmin = min(len(p) for _, p in r.terms)
        for pre in ends_at.get(s, []):
            if len(pre) + rmin > D:
                continue
            for post in starts_at.get(t, []):
                if len(pre) + rmin + len(post) > D:
                    continue
                row = field.zeros(1, len(cols))[0]
                for c, p in r.terms:
                    w = pre.word + p.word + post.word
                    if len(w) <= D:
                        row[pos[Path(pre.source, w)]] = field.scalar(c)
                rows.append(row)
    if rows:
        mat = np.array(rows, dtype=rows[0].dtype).reshape(len(rows), len(cols))
    else:
        mat = field.zeros(0, len(cols))
    return cols, mat


def _build_general(quiver, rels, field, length_cap):
    prev = None
    for D in range(1, length_cap + 1):
        paths = _paths_by_length(quiver, D)
        cols, mat = _truncated_ideal(quiver, rels, field, paths, D)
        top = [i for i, p in enumerate(cols) if len(p) == D]
        if mat.shape[0]:
            red, piv = field.row_basis(mat)
        else:
            red, piv = mat, []
        if not top:
            dead = True
        else:
            extra = field.zeros(len(top), len(cols))
            for k, i in enumerate(top):
                extra[k, i] = field.one()
            stack = np.vstack([red, extra]) if red.shape[0] else extra
            dead = field.rank(stack) == len(piv)
        if dead:
            if prev is None:
                prev = _truncated_ideal(quiver, rels, field, _paths_by_length(quiver, D - 1), D - 1)
                pc, pm = prev
                prev = (pc,) + (field.row_basis(pm) if pm.shape[0] else (pm, []))
            pcols, pred, ppiv = prev
            return _from_rref(quiver, rels, field, pcols, pred, ppiv, D)
        if D == length_cap:
            raise NotAdmissible(length_cap)
        prev = (cols, red, piv)
    raise NotAdmissible(length_cap)


def _from_rref(quiver, rels, field, cols, red, piv, L):
    pivset = set(piv)
    basis = sorted((p for i, p in enumerate(cols) if i not in pivset),
                   key=lambda p: (len(p), p.source, p.word))
    idx = {p: i for i, p in enumerate(basis)}
    nf: Dict[Path, Dict[int, object]] = {p: {idx[p]: field.one()} for p in basis}
    for row_i, c in enumerate(piv):
        row = red[row_i]
        vec = {}
        for j in np.flatnonzero(row != 0):
            if j == c:
                continue
            v = row[j]
            vec[idx[cols[j]]] = (-v) % field.p if field.p is not None else -v
        nf[cols[c]] = vec
    return BoundQuiverAlgebra(quiver, field, rels, basis, L, nf=nf)


def path_algebra_from_labels(vertices, arrows, relations, field: Field,
                             length_cap: int = DEFAULT_LENGTH_CAP) -> BoundQuiverAlgebra:
    """Build from labels; relations are lists of (coef, [arrow names])."""
    q = Quiver.build(vertices, arrows)
    rels = []
    for terms in relations:
        rels.append(Relation(tuple((c, q.path(names)) for c, names in terms)))
    return build_algebra(q, rels, field, length_cap)


def nakayama_from_kupisch(k: KupischSeries, field: Field) -> BoundQuiverAlgebra:
    c, n = k.entries, k.n
    verts = [str(i + 1) for i in range(n)]
    if k.kind == "linear":
        arrows = [Arrow(f"a{i + 1}", i, i + 1) for i in range(n - 1)]
    else:
        arrows = [Arrow(f"a{i + 1}", i, (i + 1) % n) for i in range(n)]
    q = Quiver(tuple(verts), tuple(arrows))
    rels = []
    for i in range(n):
        if k.kind == "linear" and i + c[i] > n - 1:
            continue  # the path of length c_i from i does not exist
        nxt = c[(i + 1) % n] if k.kind == "cyclic" or i + 1 < n else 0
        if nxt < c[i]:
            continue  # implied by the relation starting at i+1
        word = tuple((i + t) % n for t in range(c[i]))
        rels.append(Relation(((1, Path(i, word)),)))
    alg = _build_monomial(q, [r.check(q, field) for r in rels], field, max(c) + 2)
    alg.kupisch = k
    return alg


def zero_relation_linear(n: int, field: Field) -> BoundQuiverAlgebra:
    """Linear A_n with every composite of two consecutive arrows zero."""
    if n == 1:
        return nakayama_from_kupisch(KupischSeries((1,), "linear"), field)
    return nakayama_from_kupisch(KupischSeries(tuple([2] * (n - 1) + [1]), "linear"), field)


def semisimple(field: Field, n: int = 1) -> BoundQuiverAlgebra:
    q = Quiver(tuple(str(i + 1) for i in range(n)), ())
    return build_algebra(q, [], field)
