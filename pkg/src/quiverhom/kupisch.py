"""Combinatorics of Nakayama algebras straight from the Kupisch series.

Vertices are 0-based here.  The interval ``(i, l)`` is the uniserial module
P(i)/rad^l P(i) with composition factors S_i, S_{i+1}, ..., S_{i+l-1}
(indices mod n for cyclic series).  Nothing in this module does linear
algebra, which is what makes it usable as an oracle for repmod/homolog and
as the cheap first pass of the scan.
"""

from __future__ import annotations

from typing import Iterator, List, Optional, Tuple

from .quivalg import KupischSeries

Interval = Tuple[int, int]


class NakayamaModel:
    def __init__(self, k: KupischSeries):
        self.k = k
        self.n = k.n
        self.c = k.entries
        self.cyclic = k.kind == "cyclic"
        n, c = self.n, self.c
        # d[j] = length of the injective hull I(j): longest interval with socle j
        d = [0] * n
        for i in range(n):
            for ell in range(1, c[i] + 1):
                j = (i + ell - 1) % n
                if ell > d[j]:
                    d[j] = ell
        self.d = tuple(d)

    def vertex(self, i: int) -> int:
        return i % self.n if self.cyclic else i

    # -- intervals ----------------------------------------------------------

    def intervals(self) -> List[Interval]:
        return [(i, ell) for i in range(self.n) for ell in range(1, self.c[i] + 1)]

    def socle(self, m: Interval) -> int:
        return self.vertex(m[0] + m[1] - 1)

    def composition_factors(self, m: Interval) -> List[int]:
        return [self.vertex(m[0] + t) for t in range(m[1])]

    def dim_vector(self, m: Interval) -> List[int]:
        v = [0] * self.n
        for j in self.composition_factors(m):
            v[j] += 1
        return v

    def projective(self, i: int) -> Interval:
        return (i, self.c[i])

    def injective(self, j: int) -> Interval:
        return (self.vertex(j - self.d[j] + 1), self.d[j])

    def is_projective(self, m: Interval) -> bool:
        return m[1] == self.c[m[0]]

    def is_injective(self, m: Interval) -> bool:
        return m[1] == self.d[self.socle(m)]

    def projective_is_injective(self, i: int) -> bool:
        return self.is_injective(self.projective(i))

    def injective_is_projective(self, j: int) -> bool:
        return self.is_projective(self.injective(j))

    def syzygy(self, m: Interval) -> Optional[Interval]:
        i, ell = m
        if ell == self.c[i]:
            return None
        return (self.vertex(i + ell), self.c[i] - ell)

    def cosyzygy(self, m: Interval) -> Optional[Interval]:
        j = self.socle(m)
        if m[1] == self.d[j]:
            return None
        return (self.vertex(j - self.d[j] + 1), self.d[j] - m[1])

    def tau(self, m: Interval) -> Optional[Interval]:
        if self.is_projective(m):
            return None
        return (self.vertex(m[0] + 1), m[1])

    # -- dimensions (None means "not reached within cap") -----------------

    def pdim(self, m: Interval, cap: int = 64) -> Optional[int]:
        k = 0
        cur = m
        seen = set()
        while k < cap:
            nxt = self.syzygy(cur)
            if nxt is None:
                return k
            if nxt in seen:
                return None  # syzygies cycle, so the dimension is infinite
            seen.add(nxt)
            cur = nxt
            k += 1
        return None

    def idim(self, m: Interval, cap: int = 64) -> Optional[int]:
        k = 0
        cur = m
        while k < cap:
            nxt = self.cosyzygy(cur)
            if nxt is None:
                return k
            cur = nxt
            k += 1
        return None

    def domdim(self, m: Interval, cap: int = 64) -> Optional[int]:
        """Initial projective-injective terms in the injective coresolution."""
        k = 0
        cur = m
        while k < cap:
            if cur is None:
                return None  # the coresolution is all projective-injective
            if not self.injective_is_projective(self.socle(cur)):
                return k
            cur = self.cosyzygy(cur)
            k += 1
        return None

    def codomdim(self, m: Interval, cap: int = 64) -> Optional[int]:
        k = 0
        cur = m
        while k < cap:
            if cur is None:
                return None
            if not self.projective_is_injective(cur[0]):
                return k
            cur = self.syzygy(cur)
            k += 1
        return None

    def gldim(self, cap: int = 64) -> Optional[int]:
        best = 0
        # simples with long syzygy chains first, so infinite cases fail fast
        for i in sorted(range(self.n), key=lambda i: -self.c[i]):
            p = self.pdim((i, 1), cap)
            if p is None:
                return None
            best = max(best, p)
        return best

    def algebra_domdim(self, cap: int = 64) -> Optional[int]:
        vals = [self.domdim(self.projective(i), cap) for i in range(self.n)]
        finite = [v for v in vals if v is not None]
        if not finite:
            return None
        return min(finite)

    def higher_auslander(self, cap: int = 64) -> Tuple[bool, Optional[int]]:
        g = self.gldim(cap)
        if g is None:
            return False, None
        if g == 0:
            return True, 0
        dd = self.algebra_domdim(cap)
        return (dd == g and g >= 2), g

    # -- QF-1 -------------------------------------------------------------

    def socle_vertices(self) -> set:
        return {self.socle(self.projective(i)) for i in range(self.n)}

    def qf1_criterion(self, radical_only: bool = False) -> bool:
        """Composition factors of each non-injective P(i) lie in soc A.

        With ``radical_only`` the top of P(i) is not inspected.  That weaker
        form wrongly accepts e.g. the cyclic series [2,3].
        """
        soc = self.socle_vertices()
        start = 1 if radical_only else 0
        for i in range(self.n):
            if self.projective_is_injective(i):
                continue
            for t in range(start, self.c[i]):
                if self.vertex(i + t) not in soc:
                    return False
        return True

    def morita(self, cap: int = 64) -> bool:
        dd = self.algebra_domdim(cap)
        if dd is not None and dd < 2:
            return False
        for m in self.intervals():
            if self.injective_is_projective(self.socle(m)):
                continue
            if self.projective_is_injective(m[0]):
                continue
            return False
        return True


def enumerate_kupisch(kind: str, n: int, max_entry: Optional[int] = None) -> Iterator[KupischSeries]:
    """All valid series with n entries, each <= max_entry, in lexicographic order."""
    if n <= 0:
        return
    if max_entry is None:
        max_entry = 2 * n
    if kind == "linear":
        yield from _linear(n, max_entry)
    elif kind == "cyclic":
        yield from _cyclic(n, max_entry)
    elif kind == "both":
        yield from _linear(n, max_entry)
        yield from _cyclic(n, max_entry)
    else:
        raise ValueError(f"unknown kind {kind!r}")


def _sequences(n, first_hi, hi_at):
    """Iterative DFS over c_0..c_{n-1} with c_0 in [2, first_hi] and
    c_{i+1} in [max(2, c_i - 1), hi_at(i + 1, c_0)]."""
    if n == 0:
        return
    out = [0] * n
    stack = [(0, first_hi, 2)]
    while stack:
        i, hi, c = stack.pop()
        if c > hi:
            continue
        stack.append((i, hi, c + 1))
        out[i] = c
        if i == n - 1:
            yield tuple(out)
        else:
            stack.append((i + 1, hi_at(i + 1, out[0]), max(2, c - 1)))


def _linear(n, max_entry):
    if n == 1:
        if max_entry >= 1:
            yield KupischSeries((1,), "linear")
        return
    m = n - 1
    for seq in _sequences(m, min(max_entry, n), lambda i, c0: min(max_entry, n - i)):
        if seq[-1] <= 2:
            yield KupischSeries(seq + (1,), "linear")


def _cyclic(n, max_entry):
    # entries drop by at most one per step and c_{n-1} <= c_0 + 1 closes the
    # cycle, so c_i <= c_0 + n - i
    for seq in _sequences(n, max_entry, lambda i, c0: min(max_entry, c0 + n - i)):
        if seq[0] >= seq[-1] - 1:
            yield KupischSeries(seq, "cyclic")


def canonical_rotation(k: KupischSeries) -> KupischSeries:
    """Lexicographically least rotation; rotations give isomorphic algebras."""
    if k.kind == "linear":
        return k
    c = k.entries
    best = min(tuple(c[i:] + c[:i]) for i in range(len(c)))
    return KupischSeries(best, "cyclic")
