"""Right modules over bound quiver algebras, as quiver representations.

A module M stores ``dims[v] = dim M e_v`` and, for each arrow a: s -> t, a
matrix ``mats[a]`` of shape dims[s] x dims[t]; elements are row vectors and
m.a = m @ mats[a].  A ModuleMap f: M -> N stores per-vertex matrices with the
same row convention, so composition "f then g" is ``f_v @ g_v``.

Hom spaces are solved from a minimal projective presentation of the source,
which keeps every linear system small.  ``hom_basis_intertwiner`` solves the
raw intertwining equations instead and exists as an independent check.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactlin import Field
from .quivalg import BoundQuiverAlgebra


class AlgebraMismatch(ValueError):
    pass


class DecompositionInconclusive(RuntimeError):
    def __init__(self, msg, seed=None):
        super().__init__(f"{msg} (seed={seed})")
        self.seed = seed


class IsoInconclusive(RuntimeError):
    def __init__(self, msg, seed=None):
        super().__init__(f"{msg} (seed={seed})")
        self.seed = seed


ISO_BUDGET = 64
ISO_EXHAUSTIVE_LIMIT = 4096
SPLIT_BUDGET = 64


class QuiverModule:
    __slots__ = ("alg", "dims", "mats", "_words", "_pres", "_label")

    def __init__(self, alg: BoundQuiverAlgebra, dims: Sequence[int], mats: Sequence[np.ndarray],
                 label: Optional[str] = None):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != alg.n:
            raise ValueError("dimension vector has the wrong length")
        if len(mats) != len(alg.arrows):
            raise ValueError("need one matrix per arrow")
        fixed = []
        for a, mat in zip(alg.arrows, mats):
            shape = (self.dims[a.source], self.dims[a.target])
            if mat is None:
                mat = alg.field.zeros(*shape)
            if tuple(mat.shape) != shape:
                raise ValueError(f"arrow {a.name}: expected shape {shape}, got {mat.shape}")
            fixed.append(mat)
        self.mats = tuple(fixed)
        self._words: Dict = {}
        self._pres = None
        self._label = label

    @property
    def field(self) -> Field:
        return self.alg.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> Tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        lab = f" {self._label}" if self._label else ""
        return f"<QuiverModule{lab} dims={list(self.dims)}>"

    def __eq__(self, other):
        if not isinstance(other, QuiverModule) or other.alg is not self.alg or other.dims != self.dims:
            return False
        return all(self.field.equal(x, y) for x, y in zip(self.mats, other.mats))

    def __hash__(self):
        return hash((id(self.alg), self.dims))

    def word_matrix(self, source: int, word: Tuple[int, ...]) -> np.ndarray:
        """Action of a path (not necessarily in normal form)."""
        key = (source, word)
        hit = self._words.get(key)
        if hit is not None:
            return hit
        if not word:
            res = self.field.eye(self.dims[source])
        else:
            res = self.field.matmul(self.word_matrix(source, word[:-1]), self.mats[word[-1]])
        self._words[key] = res
        return res

    def basis_matrix(self, b: int) -> np.ndarray:
        p = self.alg.basis[b]
        return self.word_matrix(p.source, p.word)

    def element_matrix(self, source: int, target: int, elem: Dict[int, object]) -> np.ndarray:
        f = self.field
        out = f.zeros(self.dims[source], self.dims[target])
        for b, c in elem.items():
            out = out + self.basis_matrix(b) * c
        return f.reduce(out)

    def satisfies_relations(self) -> bool:
        f = self.field
        q = self.alg.quiver
        for r in self.alg.relations:
            p0 = r.terms[0][1]
            s, t = p0.source, q.target(p0)
            acc = f.zeros(self.dims[s], self.dims[t])
            for c, p in r.terms:
                acc = acc + self.word_matrix(s, p.word) * f.scalar(c)
            if not f.is_zero(f.reduce(acc)):
                return False
        return True

    def presentation(self) -> "Presentation":
        if self._pres is None:
            self._pres = _presentation(self)
        return self._pres

    def total_matrix(self, arrow: int) -> np.ndarray:
        return self.mats[arrow]


@dataclass(eq=False)
class ModuleMap:
    source: QuiverModule
    target: QuiverModule
    mats: Tuple[np.ndarray, ...]

    @property
    def field(self):
        return self.source.field

    def is_homomorphism(self) -> bool:
        f = self.field
        for a, arr in enumerate(self.source.alg.arrows):
            lhs = f.matmul(self.source.mats[a], self.mats[arr.target])
            rhs = f.matmul(self.mats[arr.source], self.target.mats[a])
            if not f.equal(lhs, rhs):
                return False
        return True

    def then(self, g: "ModuleMap") -> "ModuleMap":
        """The composite g o self."""
        f = self.field
        return ModuleMap(self.source, g.target,
                         tuple(f.matmul(x, y) for x, y in zip(self.mats, g.mats)))

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        f = self.field
        return ModuleMap(self.source, self.target, tuple(f.add(x, y) for x, y in zip(self.mats, other.mats)))

    def scaled(self, c) -> "ModuleMap":
        f = self.field
        c = f.scalar(c)
        return ModuleMap(self.source, self.target, tuple(f.scale(c, x) for x in self.mats))

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for x in self.mats)

    def is_isomorphism(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(self.field.is_invertible(x) for x in self.mats)

    def rank_vector(self) -> Tuple[int, ...]:
        return tuple(self.field.rank(x) for x in self.mats)


def _combine(maps: Sequence[ModuleMap], coeffs) -> ModuleMap:
    f = maps[0].field
    mats = []
    for v in range(len(maps[0].mats)):
        acc = f.zeros(*maps[0].mats[v].shape)
        for m, c in zip(maps, coeffs):
            if c != 0:
                acc = acc + m.mats[v] * c
        mats.append(f.reduce(acc))
    return ModuleMap(maps[0].source, maps[0].target, tuple(mats))


def identity_map(m: QuiverModule) -> ModuleMap:
    return ModuleMap(m, m, tuple(m.field.eye(d) for d in m.dims))


def zero_map(m: QuiverModule, n: QuiverModule) -> ModuleMap:
    return ModuleMap(m, n, tuple(m.field.zeros(a, b) for a, b in zip(m.dims, n.dims)))


def _check_same(m: QuiverModule, n: QuiverModule):
    if m.alg is not n.alg:
        raise AlgebraMismatch("modules live over different algebras")


# ---------------------------------------------------------------------------
# constructors


def zero_module(alg: BoundQuiverAlgebra) -> QuiverModule:
    return QuiverModule(alg, [0] * alg.n, [None] * len(alg.arrows), label="0")


def _projective_blocks(alg: BoundQuiverAlgebra, i: int):
    cache = alg.__dict__.setdefault("_proj_blocks", {})
    if i in cache:
        return cache[i]
    f = alg.field
    paths = [alg.paths_between[i][v] for v in range(alg.n)]
    pos = [{b: k for k, b in enumerate(paths[v])} for v in range(alg.n)]
    mats = []
    for a, arr in enumerate(alg.arrows):
        mat = f.zeros(len(paths[arr.source]), len(paths[arr.target]))
        for r, b in enumerate(paths[arr.source]):
            for b2, c in alg.right_arrow(b, a).items():
                mat[r, pos[arr.target][b2]] = c
        mats.append(mat)
    cache[i] = (paths, mats)
    return cache[i]


class ProjSum(QuiverModule):
    """The direct sum of e_{tops[k]}A; basis at v is (k, path tops[k] -> v)."""

    __slots__ = ("tops", "layout")

    def __init__(self, alg: BoundQuiverAlgebra, tops: Sequence[int], label: Optional[str] = None):
        tops = list(tops)
        f = alg.field
        blocks = [_projective_blocks(alg, i) for i in tops]
        dims = [sum(len(bl[0][v]) for bl in blocks) for v in range(alg.n)]
        mats = []
        for a, arr in enumerate(alg.arrows):
            mat = f.zeros(dims[arr.source], dims[arr.target])
            r = c = 0
            for bl in blocks:
                sub = bl[1][a]
                mat[r:r + sub.shape[0], c:c + sub.shape[1]] = sub
                r += sub.shape[0]
                c += sub.shape[1]
            mats.append(mat)
        super().__init__(alg, dims, mats, label=label)
        self.tops = tops
        self.layout = [[(k, b) for k, bl in enumerate(blocks) for b in bl[0][v]] for v in range(alg.n)]

    def offset(self, k: int, v: int) -> int:
        return sum(len(self.alg.paths_between[self.tops[j]][v]) for j in range(k))


def projective(alg: BoundQuiverAlgebra, i) -> QuiverModule:
    i = alg.vertex_index(i)
    return ProjSum(alg, [i], label=f"P({alg.quiver.vertices[i]})")


def regular(alg: BoundQuiverAlgebra) -> QuiverModule:
    return ProjSum(alg, list(range(alg.n)), label="A")


def simple(alg: BoundQuiverAlgebra, i) -> QuiverModule:
    i = alg.vertex_index(i)
    dims = [1 if v == i else 0 for v in range(alg.n)]
    return QuiverModule(alg, dims, [None] * len(alg.arrows), label=f"S({alg.quiver.vertices[i]})")


def dual(m: QuiverModule) -> QuiverModule:
    """D(M) = Hom_K(M, K) as a right module over the opposite algebra."""
    op = m.alg.opposite()
    return QuiverModule(op, m.dims, [x.T.copy() for x in m.mats],
                        label=f"D({m._label})" if m._label else None)


def dual_map(f: ModuleMap) -> ModuleMap:
    """D(f): D(N) -> D(M)."""
    return ModuleMap(dual(f.target), dual(f.source), tuple(x.T.copy() for x in f.mats))


def injective(alg: BoundQuiverAlgebra, i) -> QuiverModule:
    i = alg.vertex_index(i)
    m = dual(projective(alg.opposite(), i))
    m._label = f"I({alg.quiver.vertices[i]})"
    return m


def dual_regular(alg: BoundQuiverAlgebra) -> QuiverModule:
    m = dual(regular(alg.opposite()))
    m._label = "DA"
    return m


def direct_sum(mods: Sequence[QuiverModule]) -> QuiverModule:
    mods = list(mods)
    alg = mods[0].alg
    for m in mods:
        _check_same(mods[0], m)
    f = alg.field
    dims = [sum(m.dims[v] for m in mods) for v in range(alg.n)]
    mats = []
    for a, arr in enumerate(alg.arrows):
        mat = f.zeros(dims[arr.source], dims[arr.target])
        r = c = 0
        for m in mods:
            sub = m.mats[a]
            mat[r:r + sub.shape[0], c:c + sub.shape[1]] = sub
            r += sub.shape[0]
            c += sub.shape[1]
        mats.append(mat)
    return QuiverModule(alg, dims, mats)


def module_from_matrices(alg: BoundQuiverAlgebra, dims, arrow_rows: Dict[str, list]) -> QuiverModule:
    """Module literal: arrow matrices given as nested row lists by arrow name."""
    f = alg.field
    mats = []
    for a in alg.arrows:
        shape = (int(dims[a.source]), int(dims[a.target]))
        if a.name in arrow_rows:
            rows = arrow_rows[a.name]
            mat = f.array(rows) if rows and rows[0] != [] else f.zeros(*shape)
            if shape[0] == 0 or shape[1] == 0:
                mat = f.zeros(*shape)
        else:
            mat = f.zeros(*shape)
        mats.append(mat)
    m = QuiverModule(alg, dims, mats)
    if not m.satisfies_relations():
        raise ValueError("module literal does not satisfy the relations")
    return m


# ---------------------------------------------------------------------------
# sub- and quotient modules


def _basis(f: Field, rows: np.ndarray, ncols: int):
    if rows.shape[0] == 0:
        return f.zeros(0, ncols), []
    return f.row_basis(rows)


def submodule(m: QuiverModule, bases: Sequence[np.ndarray]) -> Tuple[QuiverModule, ModuleMap]:
    """Submodule with the given per-vertex RREF bases (rows), plus inclusion."""
    f = m.field
    bs, pivs = [], []
    for v, b in enumerate(bases):
        bb, pv = _basis(f, b, m.dims[v])
        bs.append(bb)
        pivs.append(pv)
    mats = []
    for a, arr in enumerate(m.alg.arrows):
        img = f.matmul(bs[arr.source], m.mats[a])
        mats.append(img[:, pivs[arr.target]].copy() if img.shape[0] else f.zeros(0, bs[arr.target].shape[0]))
    sub = QuiverModule(m.alg, [b.shape[0] for b in bs], mats)
    return sub, ModuleMap(sub, m, tuple(bs))


def quotient(m: QuiverModule, bases: Sequence[np.ndarray]) -> Tuple[QuiverModule, ModuleMap]:
    """M / U for U with the given per-vertex bases, plus the projection."""
    f = m.field
    projs, keeps = [], []
    for v, b in enumerate(bases):
        d = m.dims[v]
        bb, piv = _basis(f, b, d)
        keep = [j for j in range(d) if j not in set(piv)]
        pr = f.zeros(d, len(keep))
        for t, j in enumerate(keep):
            pr[j, t] = f.one()
        for r, pc in enumerate(piv):
            pr[pc, :] = f.neg(bb[r, keep]) if keep else pr[pc, :]
        projs.append(pr)
        keeps.append(keep)
    mats = []
    for a, arr in enumerate(m.alg.arrows):
        rows = m.mats[a][keeps[arr.source], :]
        mats.append(f.matmul(rows, projs[arr.target]))
    q = QuiverModule(m.alg, [len(k) for k in keeps], mats)
    return q, ModuleMap(m, q, tuple(projs))


def generated_bases(m: QuiverModule, gens: Sequence[Tuple[int, np.ndarray]]) -> List[np.ndarray]:
    """Per-vertex bases of the submodule generated by (vertex, vector) pairs."""
    f = m.field
    alg = m.alg
    spans = [f.zeros(0, d) for d in m.dims]
    for v, vec in gens:
        vec = np.asarray(vec).reshape(1, -1)
        for b in range(alg.dim):
            p = alg.basis[b]
            if p.source != v:
                continue
            t = alg.targets[b]
            img = f.matmul(vec, m.word_matrix(v, p.word))
            if not f.is_zero(img):
                spans[t] = np.vstack([spans[t], img]) if spans[t].shape[0] else img
    return [(_basis(f, s, m.dims[v])[0]) for v, s in enumerate(spans)]


def generated_submodule(m: QuiverModule, gens) -> Tuple[QuiverModule, ModuleMap]:
    return submodule(m, generated_bases(m, gens))


def kernel(f_: ModuleMap) -> Tuple[QuiverModule, ModuleMap]:
    fl = f_.field
    return submodule(f_.source, [fl.left_nullspace(x) if x.shape[0] else fl.zeros(0, 0) for x in f_.mats])


def image(f_: ModuleMap) -> Tuple[QuiverModule, ModuleMap]:
    return submodule(f_.target, [x for x in f_.mats])


def image_with_factorization(f_: ModuleMap):
    """(im f, inclusion, the corestriction M -> im f)."""
    im, inc = image(f_)
    fl = f_.field
    mats = []
    for v, x in enumerate(f_.mats):
        basis = inc.mats[v]
        if basis.shape[0] == 0:
            mats.append(fl.zeros(x.shape[0], 0))
            continue
        piv = fl.rref(basis)[1]
        mats.append(x[:, piv].copy())
    return im, inc, ModuleMap(f_.source, im, tuple(mats))


def cokernel(f_: ModuleMap) -> Tuple[QuiverModule, ModuleMap]:
    return quotient(f_.target, list(f_.mats))


def radical_bases(m: QuiverModule) -> List[np.ndarray]:
    f = m.field
    rows: List[List[np.ndarray]] = [[] for _ in range(m.alg.n)]
    for a, arr in enumerate(m.alg.arrows):
        if m.mats[a].shape[0]:
            rows[arr.target].append(m.mats[a])
    out = []
    for v in range(m.alg.n):
        if rows[v]:
            out.append(_basis(f, np.vstack(rows[v]), m.dims[v])[0])
        else:
            out.append(f.zeros(0, m.dims[v]))
    return out


def socle_bases(m: QuiverModule) -> List[np.ndarray]:
    f = m.field
    cols: List[List[np.ndarray]] = [[] for _ in range(m.alg.n)]
    for a, arr in enumerate(m.alg.arrows):
        cols[arr.source].append(m.mats[a])
    out = []
    for v in range(m.alg.n):
        d = m.dims[v]
        if d == 0:
            out.append(f.zeros(0, 0))
        elif cols[v]:
            out.append(f.left_nullspace(np.hstack(cols[v])))
        else:
            out.append(f.eye(d))
    return out


def radical(m: QuiverModule):
    return submodule(m, radical_bases(m))


def socle(m: QuiverModule):
    return submodule(m, socle_bases(m))


def top(m: QuiverModule):
    return quotient(m, radical_bases(m))


def top_vector(m: QuiverModule) -> Tuple[int, ...]:
    return tuple(m.dims[v] - b.shape[0] for v, b in enumerate(radical_bases(m)))


def socle_vector(m: QuiverModule) -> Tuple[int, ...]:
    return tuple(b.shape[0] for b in socle_bases(m))


# ---------------------------------------------------------------------------
# presentations, covers, Hom


@dataclass(eq=False)
class Presentation:
    """Minimal presentation P1 -> P0 -> M -> 0.

    ``gens[k]`` is the image in M of the top of the k-th summand of P0;
    ``rels[l]`` is the image in P0 (coordinates at vertex rel_tops[l]) of
    the top of the l-th summand of P1.
    """

    module: QuiverModule
    P0: ProjSum
    gens: List[np.ndarray]
    pi: ModuleMap
    section: List[np.ndarray]
    syz: QuiverModule
    syz_incl: ModuleMap
    rel_tops: List[int]
    rels: List[np.ndarray]


def _top_generators(m: QuiverModule) -> Tuple[List[int], List[np.ndarray]]:
    f = m.field
    tops, gens = [], []
    for v, rb in enumerate(radical_bases(m)):
        d = m.dims[v]
        piv = set(f.rref(rb)[1]) if rb.shape[0] else set()
        for j in range(d):
            if j not in piv:
                vec = f.zeros(1, d)[0]
                vec[j] = f.one()
                tops.append(v)
                gens.append(vec)
    return tops, gens


def _eval_from_projsum(P: ProjSum, gens: Sequence[np.ndarray], n: QuiverModule) -> List[np.ndarray]:
    """Per-vertex matrices of the map P -> N sending top k to gens[k]."""
    f = n.field
    alg = n.alg
    out = []
    for v in range(alg.n):
        rows = []
        for k, b in P.layout[v]:
            g = np.asarray(gens[k]).reshape(1, -1)
            rows.append(f.matmul(g, n.basis_matrix(b)))
        out.append(np.vstack(rows) if rows else f.zeros(0, n.dims[v]))
    return out


def _presentation(m: QuiverModule) -> Presentation:
    f = m.field
    tops, gens = _top_generators(m)
    P0 = ProjSum(m.alg, tops)
    pim = _eval_from_projsum(P0, gens, m)
    pi = ModuleMap(P0, m, tuple(pim))
    section = []
    for v in range(m.alg.n):
        if m.dims[v] == 0:
            section.append(f.zeros(0, P0.dims[v]))
            continue
        s = f.solve_left(pim[v], f.eye(m.dims[v]))
        if s is None:
            raise AssertionError("cover is not surjective")
        section.append(s)
    syz, incl = kernel(pi)
    rtops, rgens = _top_generators(syz)
    rels = [f.matmul(g.reshape(1, -1), incl.mats[v])[0] for v, g in zip(rtops, rgens)]
    return Presentation(m, P0, gens, pi, section, syz, incl, rtops, rels)


def projective_cover(m: QuiverModule) -> Tuple[QuiverModule, ModuleMap]:
    p = m.presentation()
    return p.P0, p.pi


def syzygy(m: QuiverModule) -> QuiverModule:
    return m.presentation().syz


def injective_hull(m: QuiverModule) -> Tuple[QuiverModule, ModuleMap]:
    dm = dual(m)
    P, pi = projective_cover(dm)
    I = dual(P)
    # D(pi): D(DM) = M -> D(P); D(DM) has exactly M's matrices
    j = ModuleMap(m, I, tuple(x.T.copy() for x in pi.mats))
    return I, j


def cosyzygy(m: QuiverModule) -> QuiverModule:
    return dual(syzygy(dual(m)))


def top_tops(m: QuiverModule) -> List[int]:
    return m.presentation().P0.tops


def hom_system(m: QuiverModule, n: QuiverModule):
    """Matrix Phi with Hom(M, N) = {y : y Phi = 0}, y = (y_k in N_{tops[k]})."""
    _check_same(m, n)
    f = m.field
    pres = m.presentation()
    tops = pres.P0.tops
    offs = np.cumsum([0] + [n.dims[t] for t in tops]).tolist()
    cols = []
    for v, r in zip(pres.rel_tops, pres.rels):
        block = f.zeros(offs[-1], n.dims[v])
        for pos in np.flatnonzero(r != 0):
            k, b = pres.P0.layout[v][pos]
            block[offs[k]:offs[k + 1]] = block[offs[k]:offs[k + 1]] + n.basis_matrix(b) * r[pos]
        cols.append(f.reduce(block))
    if cols:
        phi = np.hstack(cols)
    else:
        phi = f.zeros(offs[-1], 0)
    return phi, offs


def hom_dim(m: QuiverModule, n: QuiverModule) -> int:
    phi, offs = hom_system(m, n)
    if phi.shape[0] == 0:
        return 0
    return phi.shape[0] - m.field.rank(phi) if phi.shape[1] else phi.shape[0]


def hom_basis(m: QuiverModule, n: QuiverModule) -> List[ModuleMap]:
    f = m.field
    phi, offs = hom_system(m, n)
    if phi.shape[0] == 0:
        return []
    ys = f.left_nullspace(phi) if phi.shape[1] else f.eye(phi.shape[0])
    pres = m.presentation()
    maps = []
    for y in ys:
        gens = [y[offs[k]:offs[k + 1]] for k in range(len(offs) - 1)]
        ev = _eval_from_projsum(pres.P0, gens, n)
        mats = tuple(f.matmul(pres.section[v], ev[v]) for v in range(m.alg.n))
        maps.append(ModuleMap(m, n, mats))
    return maps


def hom_basis_intertwiner(m: QuiverModule, n: QuiverModule) -> List[ModuleMap]:
    """Hom(M, N) from the raw equations rho^M_a f_t = f_s rho^N_a."""
    _check_same(m, n)
    f = m.field
    alg = m.alg
    offs = np.cumsum([0] + [m.dims[v] * n.dims[v] for v in range(alg.n)]).tolist()
    blocks = []
    for a, arr in enumerate(alg.arrows):
        s, t = arr.source, arr.target
        rows = m.dims[s] * n.dims[t]
        if rows == 0:
            continue
        eq = f.zeros(rows, offs[-1])
        if m.dims[t] * n.dims[t]:
            eq[:, offs[t]:offs[t + 1]] = np.kron(m.mats[a], f.eye(n.dims[t]))
        if m.dims[s] * n.dims[s]:
            eq[:, offs[s]:offs[s + 1]] = eq[:, offs[s]:offs[s + 1]] - np.kron(f.eye(m.dims[s]), n.mats[a].T.copy())
        blocks.append(f.reduce(eq))
    if offs[-1] == 0:
        return []
    system = np.vstack(blocks) if blocks else f.zeros(0, offs[-1])
    ns = f.nullspace(system)
    maps = []
    for x in ns:
        mats = tuple(x[offs[v]:offs[v + 1]].reshape(m.dims[v], n.dims[v]).copy() for v in range(alg.n))
        maps.append(ModuleMap(m, n, mats))
    return maps


def end_basis(m: QuiverModule) -> List[ModuleMap]:
    return hom_basis(m, m)


def trace_bases(m: QuiverModule, n: QuiverModule) -> List[np.ndarray]:
    f = n.field
    rows: List[List[np.ndarray]] = [[] for _ in range(n.alg.n)]
    for h in hom_basis(m, n):
        for v, x in enumerate(h.mats):
            if x.shape[0] and not f.is_zero(x):
                rows[v].append(x)
    return [(_basis(f, np.vstack(r), n.dims[v])[0] if r else f.zeros(0, n.dims[v])) for v, r in enumerate(rows)]


def trace(m: QuiverModule, n: QuiverModule) -> Tuple[QuiverModule, ModuleMap]:
    """tr_M N: the sum of the images of all maps M -> N."""
    return submodule(n, trace_bases(m, n))


def trace_of_projectives(n: QuiverModule, vertices: Sequence[int]) -> List[np.ndarray]:
    """Bases of tr_{eA} N for e = sum of e_v (v in vertices): N e A."""
    f = n.field
    gens = []
    for v in vertices:
        for j in range(n.dims[v]):
            vec = f.zeros(1, n.dims[v])[0]
            vec[j] = f.one()
            gens.append((v, vec))
    return generated_bases(n, gens)


def is_projective(m: QuiverModule) -> bool:
    return m.presentation().P0.dim == m.dim


def is_injective(m: QuiverModule) -> bool:
    return is_projective(dual(m))


def is_projective_injective(m: QuiverModule) -> bool:
    return is_projective(m) and is_injective(m)


def projective_injective_vertices(alg: BoundQuiverAlgebra) -> List[int]:
    """Vertices i with e_iA injective."""
    cache = alg.__dict__.setdefault("_pi_vertices", None)
    if cache is None:
        cache = [i for i in range(alg.n) if is_injective(projective(alg, i))]
        alg.__dict__["_pi_vertices"] = cache
    return cache


# ---------------------------------------------------------------------------
# transpose, Nakayama functors


def _dual_presentation_map(m: QuiverModule) -> ModuleMap:
    """Hom(P0, A) -> Hom(P1, A) as a map of right A^op-modules."""
    pres = m.presentation()
    alg = m.alg
    op = alg.opposite()
    f = alg.field
    src = ProjSum(op, pres.P0.tops)
    tgt = ProjSum(op, pres.rel_tops)
    gens = []
    for k, i in enumerate(pres.P0.tops):
        g = f.zeros(1, tgt.dims[i])[0]
        for l, (u, r) in enumerate(zip(pres.rel_tops, pres.rels)):
            base = tgt.offset(l, i)
            local = {b: t for t, b in enumerate(op.paths_between[u][i])}
            for pos in np.flatnonzero(r != 0):
                kk, b = pres.P0.layout[u][pos]
                if kk == k:
                    g[base + local[b]] = r[pos]
        gens.append(g)
    return ModuleMap(src, tgt, tuple(_eval_from_projsum(src, gens, tgt)))


def transpose(m: QuiverModule) -> QuiverModule:
    """Tr M over A^op."""
    return cokernel(_dual_presentation_map(m))[0]


def star(m: QuiverModule) -> QuiverModule:
    """Hom_A(M, A) as a right A^op-module."""
    return kernel(_dual_presentation_map(m))[0]


def nakayama(m: QuiverModule) -> QuiverModule:
    return dual(star(m))


def nakayama_inverse(m: QuiverModule) -> QuiverModule:
    return star(dual(m))


# ---------------------------------------------------------------------------
# isomorphism and decomposition


def _certificate(m: QuiverModule):
    return (m.dims, top_vector(m), socle_vector(m))


def iso_obstruction(m: QuiverModule, n: QuiverModule) -> Optional[str]:
    """A computable reason why M and N are not isomorphic, if one is found."""
    _check_same(m, n)
    if m.dims != n.dims:
        return "dimension vectors differ"
    if top_vector(m) != top_vector(n):
        return "tops differ"
    if socle_vector(m) != socle_vector(n):
        return "socles differ"
    a, b = hom_dim(m, n), hom_dim(n, m)
    e = hom_dim(m, m)
    if a != b or a != e:
        return "dim Hom asymmetry"
    return None


def _random_coeffs(f: Field, rng: random.Random, k: int):
    if f.p is None:
        return [f.scalar(rng.randint(-3, 3)) for _ in range(k)]
    return [rng.randrange(f.p) for _ in range(k)]


def is_isomorphic(m: QuiverModule, n: QuiverModule, seed: int = 0) -> bool:
    try:
        return find_isomorphism(m, n, seed) is not None
    except IsoInconclusive:
        # many summands make a random map rarely invertible; compare the
        # indecomposable summands instead, whose End rings are local
        parts_m = indecomposable_summands(m, seed)
        if len(parts_m) == 1:
            raise
        parts_n = indecomposable_summands(n, seed)
        if len(parts_m) != len(parts_n):
            return False
        rest = list(parts_n)
        for x in parts_m:
            for k, y in enumerate(rest):
                if x.dims == y.dims and is_isomorphic(x, y, seed):
                    del rest[k]
                    break
            else:
                return False
        return True


def find_isomorphism(m: QuiverModule, n: QuiverModule, seed: int = 0) -> Optional[ModuleMap]:
    if iso_obstruction(m, n) is not None:
        return None
    if m.dim == 0:
        return zero_map(m, n)
    basis = hom_basis(m, n)
    f = m.field
    k = len(basis)
    for h in basis:
        if h.is_isomorphism():
            return h
    if f.p is not None and f.p ** k <= ISO_EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(f.p), repeat=k):
            h = _combine(basis, coeffs)
            if h.is_isomorphism():
                return h
        return None
    rng = random.Random(seed)
    for _ in range(ISO_BUDGET):
        h = _combine(basis, _random_coeffs(f, rng, k))
        if h.is_isomorphism():
            return h
    raise IsoInconclusive("no isomorphism found but all certificates agree", seed)


def _kernel_of_power(m: QuiverModule, phi: ModuleMap) -> List[np.ndarray]:
    f = m.field
    out = []
    for v, x in enumerate(phi.mats):
        d = m.dims[v]
        if d == 0:
            out.append(f.zeros(0, 0))
            continue
        p = x
        e = 1
        while e < d:
            p = f.matmul(p, p)
            e *= 2
        out.append(f.left_nullspace(p))
    return out


def _image_of_power(m: QuiverModule, phi: ModuleMap) -> List[np.ndarray]:
    f = m.field
    out = []
    for v, x in enumerate(phi.mats):
        d = m.dims[v]
        if d == 0:
            out.append(f.zeros(0, 0))
            continue
        p = x
        e = 1
        while e < d:
            p = f.matmul(p, p)
            e *= 2
        out.append(p)
    return out


def _eigenvalues(phi: ModuleMap) -> list:
    f = phi.field
    vals = set()
    for x in phi.mats:
        if x.shape[0] == 0:
            continue
        if f.p is not None and f.p <= 64:
            for lam in range(f.p):
                if f.rank(f.sub(x, f.eye(x.shape[0]) * lam)) < x.shape[0]:
                    vals.add(lam)
        else:
            vals.update(f.roots(f.charpoly(x)))
    return sorted(vals, key=lambda v: (abs(v), v))


def _shift(phi: ModuleMap, lam) -> ModuleMap:
    f = phi.field
    return ModuleMap(phi.source, phi.target,
                     tuple(f.sub(x, f.eye(x.shape[0]) * lam) for x in phi.mats))


def _fitting_split(m: QuiverModule, phi: ModuleMap):
    """Split M = ker phi^N + im phi^N when both are nonzero."""
    ker = _kernel_of_power(m, phi)
    kd = sum(b.shape[0] for b in ker)
    if 0 < kd < m.dim:
        im = _image_of_power(m, phi)
        return submodule(m, ker)[0], submodule(m, im)[0]
    return None


def _is_nilpotent(phi: ModuleMap) -> bool:
    return all(b.shape[0] == d for b, d in zip(_kernel_of_power(phi.source, phi), phi.source.dims))


def _try_split(m: QuiverModule, phi: ModuleMap):
    for lam in _eigenvalues(phi):
        res = _fitting_split(m, _shift(phi, lam))
        if res is not None:
            return res
    return None


def _flat(phi: ModuleMap) -> np.ndarray:
    parts = [x.reshape(-1) for x in phi.mats]
    return np.concatenate(parts) if parts else np.zeros(0)


def _local_certificate(m: QuiverModule, basis: List[ModuleMap]) -> bool:
    """True when End(M) = K.1 + N for a nilpotent ideal N (so M is indecomposable)."""
    f = m.field
    nil = []
    for phi in basis:
        eig = _eigenvalues(phi)
        if len(eig) != 1:
            return False
        shifted = _shift(phi, eig[0])
        if not _is_nilpotent(shifted):
            return False
        if not shifted.is_zero():
            nil.append(shifted)
    if not nil:
        return True
    span = f.row_basis(f.array(np.array([_flat(x) for x in nil])))[0] if nil else None
    if span.shape[0] != len(basis) - 1:
        return False

    def in_span(space, vec):
        return f.rank(np.vstack([space, vec.reshape(1, -1)])) == space.shape[0]

    # N must be closed under products and its powers must reach zero
    power = nil
    for _ in range(m.dim + 1):
        prods = []
        for x in power:
            for y in nil:
                z = x.then(y)
                if not z.is_zero():
                    if not in_span(span, _flat(z)):
                        return False
                    prods.append(z)
        if not prods:
            return True
        pb = f.row_basis(f.array(np.array([_flat(z) for z in prods])))[0]
        power = [_unflat(m, row) for row in pb]
    return False


def _unflat(m: QuiverModule, row: np.ndarray) -> ModuleMap:
    mats = []
    o = 0
    for d in m.dims:
        mats.append(row[o:o + d * d].reshape(d, d).copy())
        o += d * d
    return ModuleMap(m, m, tuple(mats))


def split_once(m: QuiverModule, rng: random.Random, seed=None):
    """Either (X, Y) with M = X + Y nontrivially, or None if M is indecomposable."""
    if m.dim <= 1:
        return None
    basis = end_basis(m)
    if len(basis) == 1:
        return None
    for phi in basis:
        res = _try_split(m, phi)
        if res is not None:
            return res
    if _local_certificate(m, basis):
        return None
    f = m.field
    for _ in range(SPLIT_BUDGET):
        phi = _combine(basis, _random_coeffs(f, rng, len(basis)))
        res = _try_split(m, phi)
        if res is not None:
            return res
    raise DecompositionInconclusive("could not split or certify indecomposability", seed)


def indecomposable_summands(m: QuiverModule, seed: int = 0) -> List[QuiverModule]:
    rng = random.Random(seed)
    todo = [m]
    out = []
    while todo:
        x = todo.pop()
        if x.dim == 0:
            continue
        res = split_once(x, rng, seed)
        if res is None:
            out.append(x)
        else:
            todo.extend(res)
    out.sort(key=lambda x: (x.dim, x.dims))
    return out


def is_indecomposable(m: QuiverModule, seed: int = 0) -> bool:
    if m.dim == 0:
        return False
    return split_once(m, random.Random(seed), seed) is None


def decompose(m: QuiverModule, seed: int = 0) -> List[Tuple[QuiverModule, int]]:
    """Indecomposable summands up to isomorphism with multiplicities."""
    groups: List[List] = []
    for x in indecomposable_summands(m, seed):
        for g in groups:
            if g[0].dims == x.dims and is_isomorphic(g[0], x, seed):
                g[1] += 1
                break
        else:
            groups.append([x, 1])
    return [(g[0], g[1]) for g in groups]


def is_simple(m: QuiverModule) -> bool:
    return m.dim == 1


# ---------------------------------------------------------------------------
# Gen / Cogen


def gen_membership(x: QuiverModule, m: QuiverModule) -> bool:
    return sum(b.shape[0] for b in trace_bases(m, x)) == x.dim


def cogen_membership(x: QuiverModule, m: QuiverModule) -> bool:
    f = x.field
    maps = hom_basis(x, m)
    for v in range(x.alg.n):
        d = x.dims[v]
        if d == 0:
            continue
        cols = [h.mats[v] for h in maps if h.mats[v].shape[1]]
        if not cols:
            return False
        if f.rank(np.hstack(cols)) < d:
            return False
    return True
