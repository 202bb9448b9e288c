import itertools
import json

import pytest

from quiverhom.kupisch import NakayamaModel, canonical_rotation
from quiverhom.quivalg import InvalidKupisch, KupischSeries
from quiverhom.scan import (CHUNK, ScanConfig, ScanReport, conjecture_scan, enumerate_kupisch, series_seed,
                            shen_census)


def brute_force(kind, n, max_entry):
    out = []
    for seq in itertools.product(range(1, max_entry + 1), repeat=n):
        try:
            out.append(KupischSeries(seq, kind))
        except InvalidKupisch:
            pass
    return out


@pytest.mark.parametrize("kind, n, max_entry", [(k, n, e) for k in ("linear", "cyclic")
                                                for n in range(1, 6) for e in (3, 5)])
def test_enumeration_matches_brute_force(kind, n, max_entry):
    got = list(enumerate_kupisch(kind, n, max_entry))
    assert got == brute_force(kind, n, max_entry)
    assert [k.entries for k in got] == sorted(k.entries for k in got)


def test_enumeration_examples():
    assert [k.entries for k in enumerate_kupisch("linear", 1, 5)] == [(1,)]
    three = [k.entries for k in enumerate_kupisch("linear", 3, 3)]
    assert three == [(2, 2, 1), (3, 2, 1)]
    assert (2, 3, 1) not in three
    assert KupischSeries((3, 3, 3, 4), "cyclic") in list(enumerate_kupisch("cyclic", 4, 8))


def test_canonical_rotation():
    k = KupischSeries((4, 3, 3, 3), "cyclic")
    assert canonical_rotation(k) == canonical_rotation(KupischSeries((3, 3, 3, 4), "cyclic"))


def test_config_validation_and_defaults():
    cfg = ScanConfig()
    assert cfg.simples_bound("linear") == 10 and cfg.simples_bound("cyclic") == 9
    assert cfg.entry_bound("cyclic") == 18
    assert ScanConfig(full=True).simples_bound("linear") == 14
    assert ScanConfig(max_simples=4, max_kupisch_entry=6).entry_bound("linear") == 6
    for bad in [dict(kind="both-ways"), dict(parity="odd"), dict(workers=0), dict(cap=0), dict(max_simples=-1)]:
        with pytest.raises(ValueError):
            ScanConfig(**bad)


def test_empty_scan():
    rep = conjecture_scan(ScanConfig(max_simples=0))
    assert rep.algebras_scanned == 0 and rep.higher_auslander_found == 0
    assert rep.counterexamples == [] and rep.odd_g_violations == []


def test_linear_even_scan_has_no_counterexamples():
    rep = conjecture_scan(ScanConfig(kind="linear", max_simples=6))
    assert rep.counterexamples == []
    assert rep.algebras_scanned == sum(len(list(enumerate_kupisch("linear", n, 12))) for n in range(1, 7))
    assert all(inst.g % 2 == 0 for inst in rep.instances)


def test_cyclic_all_parity_finds_3334():
    rep = conjecture_scan(ScanConfig(kind="cyclic", max_simples=4, parity="all"))
    names = [str(k) for k, _ in rep.odd_g_violations]
    assert "cyclic[3,3,3,4]" in names
    assert rep.counterexamples == []
    for k, v in rep.odd_g_violations:
        assert v.gldim.value % 2 == 1 and v.condition1.holds and not v.is_qf1


def test_report_invariants():
    rep = conjecture_scan(ScanConfig(max_simples=5, parity="all"))
    hyp = [i for i in rep.instances if i.hypothesis]
    assert rep.conjecture_instances == sum(1 for i in hyp if i.g % 2 == 0)
    flagged = {str(k) for k, _ in rep.counterexamples + rep.odd_g_violations}
    assert flagged == {str(i.series) for i in hyp if not i.verdict.is_qf1}
    for inst in rep.instances:
        assert inst.morita == inst.nakayama_criterion == inst.verdict.is_qf1
    assert [i.index for i in rep.instances] == sorted(i.index for i in rep.instances)


def test_determinism_across_worker_counts():
    cfg1 = ScanConfig(max_simples=6, parity="all", spot_check_every=50)
    cfg2 = ScanConfig(max_simples=6, parity="all", spot_check_every=50, workers=2)
    r1, r2 = conjecture_scan(cfg1), conjecture_scan(cfg2)
    j1, j2 = r1.to_json(timings=False), r2.to_json(timings=False)
    j1["config"].pop("workers"), j2["config"].pop("workers")
    assert j1 == j2
    assert conjecture_scan(cfg1).to_json(timings=False) == r1.to_json(timings=False)
    assert r1.spot_checks > 0


def test_report_json_serializes():
    rep = conjecture_scan(ScanConfig(kind="cyclic", max_simples=4, parity="all"))
    j = json.loads(json.dumps(rep.to_json()))
    for key in ["algebras_scanned", "higher_auslander_found", "conjecture_instances", "counterexamples",
                "odd_g_violations", "wall_time", "config"]:
        assert key in j
    assert j["config"]["max_kupisch_entry"] == {"cyclic": 8}
    assert isinstance(rep, ScanReport) and CHUNK > 0


def test_series_seed_is_stable():
    k = KupischSeries((3, 3, 3, 4), "cyclic")
    assert series_seed(0, k) == series_seed(0, k) != series_seed(1, k)


def test_full_bounds_warn(monkeypatch):
    import quiverhom.scan as scan

    monkeypatch.setattr(scan, "_map_chunks", lambda cfg: iter(()))
    with pytest.warns(RuntimeWarning):
        conjecture_scan(ScanConfig(full=True))


def test_census():
    rows = shen_census(ScanConfig(max_simples=5, parity="all"))
    assert rows and all(r["holds"] and r["pdim_g"] == r["domdim_0"] for r in rows)
    assert {r["series"] for r in rows} >= {"cyclic[3,3,3,4]", "linear[2,2,1]"}
    for r in rows:
        k = KupischSeries(tuple(int(x) for x in r["series"].split("[")[1][:-1].split(",")),
                          r["series"].split("[")[0])
        assert r["intervals"] == len(NakayamaModel(k).intervals())
