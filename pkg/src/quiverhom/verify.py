"""Executable checks of the worked examples shipped as fixtures.

Each check returns a list of ``(label, expected, got)`` triples; a check
passes when every triple matches and it finishes within its time budget.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List, Tuple

from . import FIXTURES
from . import homolog as hl
from . import qf1
from . import repmod as rm
from .formats import load_algebra
from .homolog import DEFAULT_CAP, at_least
from .scan import ScanConfig, conjecture_scan

Triple = Tuple[str, object, object]


def _fx(name):
    return load_algebra(FIXTURES / f"{name}.alg")


def _simple_summands(m):
    return [(x, mult) for x, mult in rm.decompose(m) if rm.is_simple(x)]


def check_kupisch_3334(cap=DEFAULT_CAP) -> List[Triple]:
    a = _fx("kupisch-3334")
    v = qf1.qf1_theoremC(a, cap)
    return [("gldim", 5, v.gldim), ("domdim", 5, v.domdim),
            ("pdim tau_5(DA)", 3, v.condition1.pdim_tau_g_DA), ("qf1", False, v.is_qf1)]


def check_kupisch_23333221(cap=DEFAULT_CAP) -> List[Triple]:
    a = _fx("kupisch-23333221")
    v = qf1.qf1_theoremC(a, cap)
    fam = qf1.enumerate_nakayama_indecomposables(a)
    return [("gldim", 4, v.gldim), ("domdim", 4, v.domdim), ("qf1", True, v.is_qf1),
            ("intervals", 19, len(fam.modules)), ("morita", True, qf1.morita_bruteforce(a, fam, cap)),
            ("Ext^3(DA, A) != 0", True, hl.ext_dim(rm.dual_regular(a), rm.regular(a), 3) > 0)]


def check_kupisch_5555576(cap=DEFAULT_CAP) -> List[Triple]:
    a = _fx("kupisch-5555576")
    ha, g = qf1.is_higher_auslander(a, cap)
    out: List[Triple] = [("higher Auslander", True, ha), ("g", 5, g)]
    for label, mod, vertex in [("tau_5(DA)", hl.tau_n(rm.dual_regular(a), 5), 6),
                               ("costable", hl.costable_module(a), 0)]:
        simples = _simple_summands(mod)
        out.append((f"{label}: simple summands", 1, sum(k for _, k in simples)))
        out.append((f"{label}: simple is S({vertex + 1})", True,
                    len(simples) == 1 and rm.is_isomorphic(simples[0][0], rm.simple(a, vertex))))
    return out


def check_zero_relation(cap=DEFAULT_CAP) -> List[Triple]:
    out: List[Triple] = []
    for n in range(2, 9):
        a = _fx(f"zero-relation-A{n}")
        v = qf1.qf1_theoremC(a, cap)
        g = n - 1
        t = hl.tau_n(rm.dual_regular(a), g)
        both = rm.direct_sum([rm.regular(a), rm.dual_regular(a)])
        vanish = all(hl.ext_dim(both, both, i) == 0 for i in range(1, g))
        out += [(f"A{n} gldim", g, v.gldim), (f"A{n} domdim", g, v.domdim), (f"A{n} qf1", True, v.is_qf1),
                (f"A{n} tau_g(DA) = P({n})", True, rm.is_isomorphic(t, rm.projective(a, n - 1))),
                (f"A{n} Ext^1..{g - 1}(A+DA, A+DA) = 0", True, vanish)]
    return out


def check_gorenstein(cap=DEFAULT_CAP) -> List[Triple]:
    a = _fx("gorenstein")
    p2 = rm.projective(a, 1)
    cs = hl.costable_module(a)
    soc = rm.socle(p2)[0]
    return [("domdim", 1, hl.algebra_domdim(a, cap)),
            ("costable = e2A", True, rm.is_isomorphic(cs, p2)),
            ("pdim soc e2A", at_least(cap), hl.pdim(soc, cap)),
            ("max n with Ext^n(soc e2A, costable) != 0", 0, hl.max_nonvanishing_ext(soc, cs, cap))]


def check_gf3_12vertex(cap=DEFAULT_CAP) -> List[Triple]:
    a = _fx("gf3-12vertex")
    v = qf1.qf1_theoremC(a, cap)
    return [("gldim", 3, v.gldim), ("domdim", 3, v.domdim), ("qf1", True, v.is_qf1),
            ("no condition-2 witness", None, v.condition2.witness)]


def check_gldim_two_auslander(cap=DEFAULT_CAP) -> List[Triple]:
    out: List[Triple] = []
    for name in ["semisimple", "kupisch-221", "auslander-six-vertex"]:
        v = qf1.qf1_theoremC(_fx(name), cap)
        out += [(f"{name} gldim <= 2", True, v.gldim.leq(2)), (f"{name} qf1", True, v.is_qf1)]
    for name in ["auslander-A3-linear", "auslander-kx2"]:
        v = qf1.qf1_theoremC(_fx(name), cap)
        out.append((f"{name} qf1", False, v.is_qf1))
    kx2 = _fx("auslander-kx2")
    out.append(("auslander-kx2 morita", False,
                qf1.morita_bruteforce(kx2, qf1.enumerate_nakayama_indecomposables(kx2), cap)))
    return out


def check_scan(cap=DEFAULT_CAP, quick=False) -> List[Triple]:
    bound = 5 if quick else None
    even = conjecture_scan(ScanConfig(parity="even", max_simples=bound, cap=cap))
    odd = conjecture_scan(ScanConfig(parity="all", max_simples=bound, cap=cap))
    return [("even-g counterexamples", 0, len(even.counterexamples)),
            ("all-g counterexamples", 0, len(odd.counterexamples)),
            ("[3,3,3,4] is an odd-g violation", True,
             any(str(k) == "cyclic[3,3,3,4]" for k, _ in odd.odd_g_violations))]


@dataclass
class Check:
    name: str
    run: Callable[..., List[Triple]]
    budget_s: float


CHECKS = [
    Check("kupisch [3,3,3,4]", check_kupisch_3334, 1.0),
    Check("kupisch [2,3,3,3,3,2,2,1]", check_kupisch_23333221, 2.0),
    Check("kupisch [5,5,5,5,5,7,6]", check_kupisch_5555576, 5.0),
    Check("zero-relation A_2..A_8", check_zero_relation, 10.0),
    Check("gorenstein 2-vertex", check_gorenstein, 1.0),
    Check("GF(3) 12-vertex", check_gf3_12vertex, 60.0),
    Check("Auslander algebras of gldim <= 2", check_gldim_two_auslander, 10.0),
    Check("Nakayama conjecture scan", check_scan, 600.0),
]


@dataclass
class Outcome:
    name: str
    passed: bool
    seconds: float
    failures: List[Triple]
    error: str = ""


def run_checks(cap=DEFAULT_CAP, quick=False, names=None) -> List[Outcome]:
    out = []
    for chk in CHECKS:
        if names and chk.name not in names:
            continue
        t0 = time.perf_counter()
        kwargs = {"quick": quick} if chk.run is check_scan else {}
        try:
            triples = chk.run(cap, **kwargs)
            err = ""
        except Exception as exc:  # reported in the table, not swallowed
            triples, err = [], f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        bad = [t for t in triples if t[1] != t[2]]
        ok = not err and not bad and dt < chk.budget_s
        out.append(Outcome(chk.name, ok, dt, bad, err))
    return out
