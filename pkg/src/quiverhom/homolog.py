"""Resolutions and homological dimensions.

Every dimension function takes a cap.  A value is reported as finite only
when it is smaller than the cap; otherwise the result is ``at_least(cap)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import List, Optional

import numpy as np

from . import repmod as rm
from .quivalg import BoundQuiverAlgebra
from .repmod import QuiverModule, ModuleMap

DEFAULT_CAP = 33


@total_ordering
@dataclass(frozen=True)
class ExtendedNat:
    value: int
    finite: bool = True

    @classmethod
    def of(cls, k: int) -> "ExtendedNat":
        return cls(int(k), True)

    @classmethod
    def at_least(cls, cap: int) -> "ExtendedNat":
        if cap <= 0:
            raise ValueError("cap must be positive")
        return cls(int(cap), False)

    @property
    def is_finite(self) -> bool:
        return self.finite

    def _key(self):
        # at_least(c) sits just above every finite k < c
        return (self.value, 0 if self.finite else 1)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.finite and self.value == other
        if isinstance(other, ExtendedNat):
            return self.value == other.value and self.finite == other.finite
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = ExtendedNat.of(other)
        return self._key() < other._key()

    def __hash__(self):
        return hash((self.value, self.finite))

    def __int__(self):
        if not self.finite:
            raise ValueError(f"{self} has no finite value")
        return self.value

    def leq(self, k: int) -> bool:
        """Decide self <= k; an at_least value is only decidable when cap > k."""
        if self.finite:
            return self.value <= k
        if self.value > k:
            return False
        raise ValueError(f"cannot decide {self} <= {k}; raise the cap")

    def to_json(self):
        return self.value if self.finite else {"at_least": self.value}

    @classmethod
    def from_json(cls, obj) -> "ExtendedNat":
        if isinstance(obj, dict):
            return cls.at_least(obj["at_least"])
        return cls.of(obj)

    def __str__(self):
        return str(self.value) if self.finite else f">={self.value}"

    __repr__ = __str__


finite = ExtendedNat.of
at_least = ExtendedNat.at_least


@dataclass(eq=False)
class ResolutionChain:
    """Terms T_0, T_1, ... with maps d_k: T_k -> T_{k-1} (projective) or
    d_k: T_{k-1} -> T_k (injective); ``maps[k-1]`` is d_k."""

    terms: List[QuiverModule]
    maps: List[ModuleMap]
    kind: str
    complete: bool

    def __len__(self):
        return len(self.terms)


def syzygy_power(m: QuiverModule, k: int) -> QuiverModule:
    for _ in range(k):
        if m.dim == 0:
            break
        m = rm.syzygy(m)
    return m


def cosyzygy_power(m: QuiverModule, k: int) -> QuiverModule:
    if k == 0:
        return m
    return rm.dual(syzygy_power(rm.dual(m), k))


def min_projective_resolution(m: QuiverModule, cap: int = DEFAULT_CAP) -> ResolutionChain:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    terms, maps = [], []
    cur = m
    prev_incl: Optional[ModuleMap] = None
    complete = False
    for k in range(cap):
        if cur.dim == 0:
            complete = True
            break
        pres = cur.presentation()
        terms.append(pres.P0)
        if prev_incl is not None:
            maps.append(pres.pi.then(prev_incl))
        prev_incl = pres.syz_incl
        cur = pres.syz
    else:
        complete = cur.dim == 0
    return ResolutionChain(terms, maps, "projective", complete)


def min_injective_coresolution(m: QuiverModule, cap: int = DEFAULT_CAP) -> ResolutionChain:
    pr = min_projective_resolution(rm.dual(m), cap)
    terms = [rm.dual(t) for t in pr.terms]
    maps = [rm.dual_map(f) for f in pr.maps]
    return ResolutionChain(terms, maps, "injective", pr.complete)


def pdim(m: QuiverModule, cap: int = DEFAULT_CAP) -> ExtendedNat:
    cur = m
    for k in range(cap):
        nxt = rm.syzygy(cur) if cur.dim else cur
        if nxt.dim == 0:
            return finite(k)
        cur = nxt
    return at_least(cap)


def idim(m: QuiverModule, cap: int = DEFAULT_CAP) -> ExtendedNat:
    return pdim(rm.dual(m), cap)


def _injective_projective_vertices(alg: BoundQuiverAlgebra) -> List[int]:
    """Vertices j with I(j) projective (equivalently Ae_j injective)."""
    return rm.projective_injective_vertices(alg.opposite())


def domdim(m: QuiverModule, cap: int = DEFAULT_CAP) -> ExtendedNat:
    good = set(_injective_projective_vertices(m.alg))
    cur = m
    for k in range(cap):
        if cur.dim == 0:
            return at_least(cap)
        soc = rm.socle_vector(cur)
        if any(d and v not in good for v, d in enumerate(soc)):
            return finite(k)
        cur = rm.cosyzygy(cur)
    return at_least(cap)


def codomdim(m: QuiverModule, cap: int = DEFAULT_CAP) -> ExtendedNat:
    return domdim(rm.dual(m), cap)


def gldim(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> ExtendedNat:
    best = finite(0)
    for i in range(a.n):
        p = pdim(rm.simple(a, i), cap)
        if not p.finite:
            return at_least(cap)
        best = max(best, p)
    return best


def algebra_domdim(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> ExtendedNat:
    vals = [domdim(rm.projective(a, i), cap) for i in range(a.n)]
    return min(vals) if vals else at_least(cap)


def algebra_codomdim(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> ExtendedNat:
    return algebra_domdim(a.opposite(), cap)


def _hom_rank(m: QuiverModule, n: QuiverModule) -> int:
    phi, _ = rm.hom_system(m, n)
    if phi.shape[0] == 0 or phi.shape[1] == 0:
        return 0
    return m.field.rank(phi)


def ext_dim(m: QuiverModule, n: QuiverModule, k: int) -> int:
    """dim Ext^k(M, N) as homology of Hom(P_*, N) at degree k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return rm.hom_dim(m, n)
    prev = syzygy_power(m, k - 1)
    cur = rm.syzygy(prev) if prev.dim else prev
    if cur.dim == 0:
        return 0
    return rm.hom_dim(cur, n) - _hom_rank(prev, n)


def ext_dim_by_coresolution(m: QuiverModule, n: QuiverModule, k: int) -> int:
    """Independent route: dimension shifting in the second argument."""
    if k == 0:
        return rm.hom_dim(m, n)
    x = cosyzygy_power(n, k - 1)
    hull, _ = rm.injective_hull(x)
    return rm.hom_dim(m, rm.cosyzygy(x)) - rm.hom_dim(m, hull) + rm.hom_dim(m, x)


def ext_vanishing_range(m: QuiverModule, n: QuiverModule, lo: int, hi: int) -> bool:
    return all(ext_dim(m, n, i) == 0 for i in range(lo, hi + 1))


def max_nonvanishing_ext(m: QuiverModule, n: QuiverModule, cap: int = DEFAULT_CAP) -> Optional[int]:
    """max{k <= cap : Ext^k(M, N) != 0}, or None when all vanish."""
    best = None
    prev = None
    cur = m
    for k in range(cap + 1):
        if cur.dim == 0:
            break
        if k == 0:
            d = rm.hom_dim(cur, n)
        else:
            d = rm.hom_dim(cur, n) - _hom_rank(prev, n)
        if d:
            best = k
        prev, cur = cur, rm.syzygy(cur)
    return best


def min_nonvanishing_ext_from(m: QuiverModule, n: QuiverModule, cap: int = DEFAULT_CAP) -> ExtendedNat:
    """min{k : Ext^k(M, N) != 0} with the cap convention."""
    prev = None
    cur = m
    for k in range(cap):
        if cur.dim == 0:
            return at_least(cap)
        d = rm.hom_dim(cur, n) if k == 0 else rm.hom_dim(cur, n) - _hom_rank(prev, n)
        if d:
            return finite(k)
        prev, cur = cur, rm.syzygy(cur)
    return at_least(cap)


# ---------------------------------------------------------------------------
# translates


def tau(m: QuiverModule) -> QuiverModule:
    """D Tr M.  A minimal presentation already discards projective summands."""
    return rm.dual(rm.transpose(m))


def tau_inverse(m: QuiverModule) -> QuiverModule:
    return rm.transpose(rm.dual(m))


def tau_n(m: QuiverModule, n: int) -> QuiverModule:
    if n < 1:
        raise ValueError("n must be >= 1")
    return tau(syzygy_power(m, n - 1))


def tau_n_inverse(m: QuiverModule, n: int) -> QuiverModule:
    if n < 1:
        raise ValueError("n must be >= 1")
    return tau_inverse(cosyzygy_power(m, n - 1))


# ---------------------------------------------------------------------------
# stable and costable modules


def left_injective_vertices(a: BoundQuiverAlgebra) -> List[int]:
    """Vertices f with Ae_f injective as a left module."""
    return _injective_projective_vertices(a)


def right_injective_vertices(a: BoundQuiverAlgebra) -> List[int]:
    """Vertices e with e_eA injective."""
    return rm.projective_injective_vertices(a)


def is_faithful(m: QuiverModule) -> bool:
    """The structure map A -> End_K(M) is injective."""
    a = m.alg
    f = a.field
    groups = {}
    for b in range(a.dim):
        key = (a.basis[b].source, a.targets[b])
        groups.setdefault(key, []).append(b)
    for (s, t), bs in groups.items():
        if m.dims[s] * m.dims[t] == 0:
            return False
        rows = np.array([m.basis_matrix(b).reshape(-1) for b in bs])
        if f.rank(f.array(rows)) < len(bs):
            return False
    return True


def _check_faithful(a: BoundQuiverAlgebra, vertices: List[int], side: str):
    if not vertices:
        return
    alg = a if side == "right" else a.opposite()
    mod = rm.direct_sum([rm.projective(alg, v) for v in vertices])
    if not is_faithful(mod):
        raise AssertionError(f"projective-injective {side} module is not faithful although domdim >= 1")


def stable_module(a: BoundQuiverAlgebra, check: bool = True) -> QuiverModule:
    f_vertices = left_injective_vertices(a)
    if check and algebra_domdim(a.opposite(), 2) >= 1:
        _check_faithful(a, f_vertices, "left")
    reg = rm.regular(a)
    q = rm.quotient(reg, rm.trace_of_projectives(reg, f_vertices))[0]
    q._label = "stableA"
    return q


def costable_module(a: BoundQuiverAlgebra, check: bool = True) -> QuiverModule:
    e_vertices = right_injective_vertices(a)
    if check and algebra_domdim(a, 2) >= 1:
        _check_faithful(a, e_vertices, "right")
    reg = rm.regular(a)
    q = rm.quotient(reg, rm.trace_of_projectives(reg, e_vertices))[0]
    q._label = "costableA"
    return q


# ---------------------------------------------------------------------------
# idempotent quotients


def idempotent_quotient(a: BoundQuiverAlgebra, vertices) -> QuiverModule:
    """A/AxA as a right module, x = sum of e_v over ``vertices``."""
    reg = rm.regular(a)
    return rm.quotient(reg, rm.trace_of_projectives(reg, list(vertices)))[0]


def hom_from_idempotent_quotient_vanishes(m: QuiverModule, vertices) -> bool:
    return rm.hom_dim(idempotent_quotient(m.alg, vertices), m) == 0


def injective_hull_in_add_dual(m: QuiverModule, vertices) -> bool:
    """I(M) in add D(Ax): every indecomposable summand of the hull is some I(v), v in x."""
    hull, _ = rm.injective_hull(m)
    allowed = set(vertices)
    return all(c == 0 or v in allowed for v, c in enumerate(rm.socle_vector(hull)))
