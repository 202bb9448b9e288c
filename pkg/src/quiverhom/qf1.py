"""QF-1 decision procedures for higher Auslander algebras."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import homolog as hl
from . import repmod as rm
from .homolog import DEFAULT_CAP, ExtendedNat, at_least, finite
from .kupisch import NakayamaModel
from .quivalg import BoundQuiverAlgebra, KupischSeries
from .repmod import QuiverModule


class NotHigherAuslander(ValueError):
    def __init__(self, gl: ExtendedNat, dd: ExtendedNat):
        super().__init__(f"not a higher Auslander algebra: gldim={gl}, domdim={dd}")
        self.gldim = gl
        self.domdim = dd


class NotNakayama(ValueError):
    pass


class FamilyNotExhaustive(UserWarning):
    pass


class Condition1Mismatch(AssertionError):
    pass


def is_higher_auslander(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> Tuple[bool, ExtendedNat]:
    g = hl.gldim(a, cap)
    if g == 0:
        return True, g
    if not g.finite:
        return False, g
    dd = hl.algebra_domdim(a, cap)
    return (dd.finite and dd == g and g.value >= 2), g


@dataclass
class Condition1:
    pdim_tau_g_DA: ExtendedNat
    idim_stable: ExtendedNat
    holds: bool


@dataclass
class Condition2:
    holds: bool
    witness: Optional[Tuple[int, int]]  # (vertex e, vertex f) with fAe != 0


@dataclass
class Qf1Verdict:
    is_qf1: bool
    gldim: ExtendedNat
    domdim: ExtendedNat
    condition1: Condition1
    condition2: Condition2
    higher_auslander: bool = True
    timings_ms: Dict[str, float] = dc_field(default_factory=dict)
    vertex_labels: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        w = self.condition2.witness
        lab = (lambda v: self.vertex_labels[v]) if self.vertex_labels else (lambda v: str(v + 1))
        return {
            "gldim": self.gldim.to_json(),
            "domdim": self.domdim.to_json(),
            "higher_auslander": self.higher_auslander,
            "qf1": self.is_qf1,
            "condition1": {
                "pdim_tau_g_DA": self.condition1.pdim_tau_g_DA.to_json(),
                "idim_stable": self.condition1.idim_stable.to_json(),
                "holds": self.condition1.holds,
            },
            "condition2": {
                "holds": self.condition2.holds,
                "witness_e": lab(w[0]) if w else None,
                "witness_f": lab(w[1]) if w else None,
            },
            "timings_ms": {k: round(v, 3) for k, v in self.timings_ms.items()},
        }


def condition2(a: BoundQuiverAlgebra) -> Condition2:
    """fAe = 0 for all e with Ae non-injective and f with fA non-injective."""
    left_ok = set(hl.left_injective_vertices(a))
    right_ok = set(hl.right_injective_vertices(a))
    for e in range(a.n):
        if e in left_ok:
            continue
        for f in range(a.n):
            if f in right_ok:
                continue
            if a.hom_between_projectives_dim(e, f):
                return Condition2(False, (e, f))
    return Condition2(True, None)


def qf1_theoremC(a: BoundQuiverAlgebra, cap: int = DEFAULT_CAP) -> Qf1Verdict:
    t0 = time.perf_counter()
    timings = {}
    ha, g = is_higher_auslander(a, cap)
    dd = hl.algebra_domdim(a, cap) if not a.is_semisimple() else at_least(cap)
    timings["dimensions"] = (time.perf_counter() - t0) * 1e3
    # gldim = domdim = 1 (e.g. A_2) is outside the definition but the test
    # still applies; the verdict then records higher_auslander = False
    if not ha and not (g == 1 and dd == 1):
        raise NotHigherAuslander(g, dd)
    t1 = time.perf_counter()
    if g == 0:
        c1 = Condition1(finite(0), finite(0), True)
    else:
        gv = g.value
        tg = hl.tau_n(rm.dual_regular(a), gv)
        p = hl.pdim(tg, cap)
        i = hl.idim(hl.stable_module(a), cap)
        h1, h2 = p.leq(gv - 1), i.leq(gv - 1)
        if h1 != h2:
            raise Condition1Mismatch(f"pdim tau_g(DA) = {p} but idim stable = {i} (g = {gv})")
        c1 = Condition1(p, i, h1)
    timings["condition1"] = (time.perf_counter() - t1) * 1e3
    t2 = time.perf_counter()
    c2 = condition2(a)
    timings["condition2"] = (time.perf_counter() - t2) * 1e3
    timings["total"] = (time.perf_counter() - t0) * 1e3
    return Qf1Verdict(c1.holds and c2.holds, g, dd, c1, c2, ha, timings, a.quiver.vertices)


# ---------------------------------------------------------------------------
# Morita criterion over module families


@dataclass(eq=False)
class IndecFamily:
    algebra: BoundQuiverAlgebra
    modules: List[QuiverModule]
    provenance: str  # "nakayama-intervals" or "user-supplied"
    labels: List[str] = dc_field(default_factory=list)

    @property
    def exhaustive(self) -> bool:
        return self.provenance == "nakayama-intervals"


def nakayama_order(a: BoundQuiverAlgebra) -> Optional[List[int]]:
    """Vertices ordered along the arrows if the quiver is A_n or cyclic, else None."""
    n = a.n
    out_arrows = [[] for _ in range(n)]
    in_arrows = [[] for _ in range(n)]
    for arr in a.arrows:
        out_arrows[arr.source].append(arr.target)
        in_arrows[arr.target].append(arr.source)
    if any(len(x) > 1 for x in out_arrows) or any(len(x) > 1 for x in in_arrows):
        return None
    starts = [v for v in range(n) if not in_arrows[v]]
    if len(starts) > 1:
        return None
    v = starts[0] if starts else 0
    order = [v]
    while out_arrows[v] and out_arrows[v][0] != order[0]:
        v = out_arrows[v][0]
        order.append(v)
    return order if len(order) == n else None


def kupisch_of(a: BoundQuiverAlgebra) -> KupischSeries:
    if a.kupisch is not None:
        return a.kupisch
    order = nakayama_order(a)
    if order is None:
        raise NotNakayama("quiver is neither linear A_n nor cyclic")
    kind = "linear" if len(a.arrows) == a.n - 1 else "cyclic"
    return KupischSeries(tuple(sum(a.projective_dims(v)) for v in order), kind)


def radical_power_bases(m: QuiverModule, ell: int):
    f = m.field
    cur = [f.eye(d) for d in m.dims]
    for _ in range(ell):
        rows = [[] for _ in range(m.alg.n)]
        for a, arr in enumerate(m.alg.arrows):
            if cur[arr.source].shape[0]:
                img = f.matmul(cur[arr.source], m.mats[a])
                rows[arr.target].append(img)
        cur = [rm._basis(f, np.vstack(r), m.dims[v])[0] if r else f.zeros(0, m.dims[v])
               for v, r in enumerate(rows)]
    return cur


def interval_module(a: BoundQuiverAlgebra, i: int, ell: int) -> QuiverModule:
    p = rm.projective(a, i)
    m = rm.quotient(p, radical_power_bases(p, ell))[0]
    m._label = f"M({a.quiver.vertices[i]},{ell})"
    return m


def enumerate_nakayama_indecomposables(a: BoundQuiverAlgebra) -> IndecFamily:
    if nakayama_order(a) is None:
        raise NotNakayama("quiver is neither linear A_n nor cyclic")
    mods, labels = [], []
    for i in range(a.n):
        c = sum(a.projective_dims(i))
        for ell in range(1, c + 1):
            m = interval_module(a, i, ell)
            mods.append(m)
            labels.append(m._label)
    return IndecFamily(a, mods, "nakayama-intervals", labels)


def _has_positive_dom_or_codom(m: QuiverModule) -> bool:
    return hl.domdim(m, 1) >= 1 or hl.codomdim(m, 1) >= 1


def morita_witness(a: BoundQuiverAlgebra, fam: IndecFamily) -> Optional[int]:
    """Index of a family member with domdim = codomdim = 0, if any."""
    for k, m in enumerate(fam.modules):
        if not _has_positive_dom_or_codom(m):
            return k
    return None


def morita_bruteforce(a: BoundQuiverAlgebra, fam: IndecFamily, cap: int = DEFAULT_CAP) -> bool:
    if not fam.exhaustive:
        warnings.warn("family is not known to be exhaustive; a True result is relative to the family",
                      FamilyNotExhaustive)
    dd = hl.algebra_domdim(a, max(cap, 2))
    if dd < 1:
        raise ValueError(f"Morita criterion needs domdim >= 1, got {dd}")
    if dd < 2:
        return False
    return morita_witness(a, fam) is None


# ---------------------------------------------------------------------------
# auxiliary predicates


def nakayama_qf1_criterion(a: BoundQuiverAlgebra) -> bool:
    return NakayamaModel(kupisch_of(a)).qf1_criterion()


def g_quasi_tilted_check(a: BoundQuiverAlgebra, fam: IndecFamily, cap: int = DEFAULT_CAP) -> bool:
    g = hl.gldim(a, cap)
    if not g.finite:
        return False
    bound = 2 * g.value - 1
    for m in fam.modules:
        p, i = hl.pdim(m, cap), hl.idim(m, cap)
        if not (p.finite and i.finite) or p.value + i.value > bound:
            return False
    return True


def prop311_condition(a: BoundQuiverAlgebra, fam: IndecFamily, cap: int = DEFAULT_CAP) -> bool:
    ha, g = is_higher_auslander(a, cap)
    if not ha:
        raise NotHigherAuslander(g, hl.algebra_domdim(a, cap))
    if g == 0:
        return True
    gv = g.value
    if not hl.pdim(hl.tau_n(rm.dual_regular(a), gv), cap).leq(gv - 1):
        return False
    e_vertices = hl.right_injective_vertices(a)
    for x in fam.modules:
        if hl.codomdim(x, 1) >= 1:
            continue
        tr = rm.submodule(x, rm.trace_of_projectives(x, e_vertices))[0]
        if hl.domdim(tr, 1) < 1:
            return False
    return True


def prop45_simple_ext_check(a: BoundQuiverAlgebra) -> bool:
    simples = [rm.simple(a, i) for i in range(a.n)]
    ms = [s for s in simples if hl.codomdim(s, 1) == 0]
    ns = [s for s in simples if hl.domdim(s, 1) == 0]
    return all(hl.ext_dim(m, n, 1) == 0 for m in ms for n in ns)


def shen_finite_type_check(a: BoundQuiverAlgebra, fam: IndecFamily, cap: int = DEFAULT_CAP) -> dict:
    ha, g = is_higher_auslander(a, cap)
    if not ha:
        raise NotHigherAuslander(g, hl.algebra_domdim(a, cap))
    pd_g = {k for k, m in enumerate(fam.modules) if hl.pdim(m, cap) == g}
    dd_0 = {k for k, m in enumerate(fam.modules) if hl.domdim(m, cap) == 0}
    id_g = {k for k, m in enumerate(fam.modules) if hl.idim(m, cap) == g}
    cd_0 = {k for k, m in enumerate(fam.modules) if hl.codomdim(m, cap) == 0}
    return {
        "pdim_g": len(pd_g), "domdim_0": len(dd_0),
        "idim_g": len(id_g), "codomdim_0": len(cd_0),
        "holds": pd_g == dd_0 and id_g == cd_0,
    }


def theoremA_verify(a: BoundQuiverAlgebra, m: QuiverModule, cap: int = DEFAULT_CAP) -> dict:
    """Compare domdim/pdim from resolutions with their Ext descriptions."""
    report: dict = {}
    st = hl.stable_module(a)
    cs = hl.costable_module(a)
    if not rm.is_projective_injective(m):
        dd = hl.domdim(m, cap)
        via_ext = hl.min_nonvanishing_ext_from(st, m, cap)
        report["domdim"] = dd.to_json()
        report["domdim_via_ext"] = via_ext.to_json()
        report["domdim_ok"] = dd == via_ext
    pd = hl.pdim(m, cap)
    if pd.finite:
        top = hl.max_nonvanishing_ext(m, cs, cap)
        report["pdim"] = pd.value
        report["pdim_via_ext"] = top
        # an empty supremum (projective-injective M) is read as 0
        report["pdim_ok"] = (top if top is not None else 0) == pd.value
    ha, g = is_higher_auslander(a, cap)
    if ha and g.value > 0 and not rm.is_projective_injective(m):
        gv = g.value
        pairs = [(hl.ext_dim(st, m, n), hl.ext_dim(m, cs, gv - n)) for n in range(gv + 1)]
        report["duality"] = pairs
        report["duality_ok"] = all(x == y for x, y in pairs)
    report["ok"] = all(v for k, v in report.items() if k.endswith("_ok"))
    return report
