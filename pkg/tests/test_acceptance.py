"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion
printed in the terminal summary."""

import os
import random
import time
from contextlib import contextmanager

import pytest

from quiverhom import homolog as hl
from quiverhom import qf1
from quiverhom import repmod as rm
from quiverhom import verify
from quiverhom.homolog import at_least
from quiverhom.kupisch import NakayamaModel
from quiverhom.scan import ScanConfig, conjecture_scan

from conftest import ACCEPTANCE_LINES, ALL_FIXTURES, HA_FIXTURES, NAKAYAMA_FIXTURES, load, random_quotient

CAP = 33
CASES = 200
WORKERS = min(8, os.cpu_count() or 1)
_scans = {}


@contextmanager
def criterion(number, title, budget_s=None, details=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        if ok and budget_s is not None and dt >= budget_s:
            ok = False
            title += f" (over budget {budget_s:g}s)"
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}  [{dt:.2f}s]")
        ACCEPTANCE_LINES.extend(f"      {d}" for d in details or [])
    if budget_s is not None:
        assert dt < budget_s, f"criterion {number} took {dt:.1f}s, budget {budget_s}s"


def _table(triples):
    bad = [t for t in triples if t[1] != t[2]]
    assert not bad, bad


def test_criterion_1_kupisch_3334():
    with criterion(1, "cyclic [3,3,3,4]: gldim 5 = domdim, pdim tau_5(DA) = 3, not QF-1", 1.0):
        _table(verify.check_kupisch_3334(CAP))


def test_criterion_2_kupisch_23333221():
    with criterion(2, "linear [2,3,3,3,3,2,2,1]: gldim 4 = domdim, QF-1, Morita over 19 intervals, "
                      "Ext^3(DA, A) != 0", 2.0):
        _table(verify.check_kupisch_23333221(CAP))


def test_criterion_3_kupisch_5555576():
    with criterion(3, "cyclic [5,5,5,5,5,7,6]: g = 5, simple summands S(7) of tau_5(DA) and S(1) of costable",
                   5.0):
        _table(verify.check_kupisch_5555576(CAP))


def test_criterion_4_zero_relation():
    with criterion(4, "zero-relation A_2..A_8: gldim = domdim = n-1, QF-1, tau_{n-1}(DA) = P(n), "
                      "Ext vanishing on A+DA", 10.0):
        _table(verify.check_zero_relation(CAP))


def test_criterion_5_gorenstein():
    with criterion(5, "Gorenstein example: domdim 1, costable = e2A, pdim soc e2A >= 33, "
                      "max nonvanishing Ext = 0", 1.0):
        triples = verify.check_gorenstein(CAP)
        _table(triples)
        assert ("pdim soc e2A", at_least(33), at_least(33)) in triples


def test_criterion_6_gf3_12vertex():
    with criterion(6, "GF(3) 12-vertex algebra: gldim 3 = domdim, QF-1, no condition-2 witness", 60.0):
        _table(verify.check_gf3_12vertex(CAP))


def test_criterion_7_gldim_two_auslander():
    with criterion(7, "gldim <= 2 Auslander algebras: A_1, [2,2,1], six-vertex C QF-1; "
                      "linear A_3 and K[x]/(x^2) not", 10.0):
        _table(verify.check_gldim_two_auslander(CAP))


def _scan(parity):
    if parity not in _scans:
        _scans[parity] = conjecture_scan(ScanConfig(parity=parity, workers=WORKERS, cap=CAP))
    return _scans[parity]


def test_criterion_8_desk_scan():
    details = []
    with criterion(8, f"desk scan (linear <= 10, cyclic <= 9, {WORKERS} worker(s)): no even-g "
                      "counterexample, [3,3,3,4] an odd-g violation", 600.0, details):
        even = _scan("even")
        assert even.algebras_scanned > 0 and even.conjecture_instances > 0
        assert even.counterexamples == []
        everything = _scan("all")
        assert everything.counterexamples == []
        assert "cyclic[3,3,3,4]" in {str(k) for k, _ in everything.odd_g_violations}
        details.append(
            f"even: {even.algebras_scanned} series, {even.higher_auslander_found} higher Auslander, "
            f"{even.conjecture_instances} conjecture instances, {len(even.instances)} oracle checks, "
            f"{even.wall_time:.1f}s; all: {len(everything.instances)} oracle checks, "
            f"{len(everything.odd_g_violations)} odd-g violations, {everything.wall_time:.1f}s")


# -- criterion 9: the property suites in compact form ------------------------


def _random_cases():
    rng = random.Random(20240)
    for _ in range(CASES):
        name = rng.choice(ALL_FIXTURES)
        a = load(name)
        yield name, a, random_quotient(a, rng), rng


def _yoneda_and_duality():
    for _, a, m, rng in _random_cases():
        for i in range(a.n):
            assert rm.hom_dim(rm.projective(a, i), m) == m.dims[i]
            assert rm.hom_dim(m, rm.injective(a, i)) == m.dims[i]
        n = random_quotient(a, rng)
        assert rm.is_isomorphic(rm.dual(rm.dual(m)), m)
        assert rm.hom_dim(m, n) == rm.hom_dim(rm.dual(n), rm.dual(m))


def _nakayama_on_projectives():
    for name in ALL_FIXTURES:
        a = load(name)
        for i in range(a.n):
            assert rm.is_isomorphic(rm.nakayama(rm.projective(a, i)), rm.injective(a, i)), (name, i)


def _ext_formulas():
    for _, a, m, _ in _random_cases():
        if hl.algebra_domdim(a, 2) < 1 or m.dim == 0:
            continue
        rep = qf1.theoremA_verify(a, m, CAP)
        assert rep["ok"], rep


def _intervals(a):
    model = NakayamaModel(qf1.kupisch_of(a))
    return [qf1.interval_module(a, *iv) for iv in model.intervals()]


def _duality_and_sums():
    for name in ["kupisch-3334", "kupisch-23333221", "kupisch-5555576"] + [
            f"zero-relation-A{n}" for n in range(2, 9)]:
        a = load(name)
        g = hl.gldim(a).value
        st, cs = hl.stable_module(a), hl.costable_module(a)
        for m in _intervals(a):
            if rm.is_projective_injective(m):
                continue
            for n in range(g + 1):
                assert hl.ext_dim(st, m, n) == hl.ext_dim(m, cs, g - n), (name, n)
            assert hl.pdim(m).value + hl.domdim(m).value == g
            assert hl.idim(m).value + hl.codomdim(m).value == g


def _strict_inequalities():
    for name in NAKAYAMA_FIXTURES:
        a = load(name)
        for m in _intervals(a):
            if not rm.is_injective(m):
                assert hl.idim(m, CAP) > hl.domdim(hl.tau_inverse(m), CAP)
            if not rm.is_projective(m):
                assert hl.pdim(m, CAP) > hl.codomdim(hl.tau(m), CAP)


def _left_right_symmetry():
    for name in HA_FIXTURES:
        a = load(name)
        assert qf1.qf1_theoremC(a, CAP).is_qf1 == qf1.qf1_theoremC(a.opposite(), CAP).is_qf1, name


def _criterion_on_scan():
    instances = _scan("all").instances
    assert instances
    for inst in instances:
        assert inst.nakayama_criterion == inst.verdict.is_qf1 == inst.morita, inst.series


PROPERTIES = [
    ("Yoneda dimensions and D involution", _yoneda_and_duality),
    ("nu P(i) = I(i)", _nakayama_on_projectives),
    ("domdim/pdim Ext formulas vs resolutions", _ext_formulas),
    ("Ext duality and sum formulas on intervals", _duality_and_sums),
    ("strict inequalities for tau and tau^-1", _strict_inequalities),
    ("left-right symmetry of QF-1", _left_right_symmetry),
    ("Nakayama criterion = finite test on scanned algebras", _criterion_on_scan),
]


@pytest.mark.parametrize("label, check", PROPERTIES, ids=[p[0] for p in PROPERTIES])
def test_criterion_9_properties(label, check):
    with criterion(9, label):
        check()
