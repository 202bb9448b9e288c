"""Exhaustive scans over Nakayama algebras.

The Kupisch stream is filtered combinatorially (``NakayamaModel``); every
higher Auslander survivor is then rebuilt as a bound quiver algebra and put
through the QF-1 test, the Morita oracle over its interval modules and the
Nakayama criterion.  Any disagreement between these is a bug and aborts.
"""

from __future__ import annotations

import hashlib
import json
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Optional, Tuple

from . import homolog as hl
from . import qf1
from . import repmod as rm
from .exactlin import Field, GF3
from .homolog import DEFAULT_CAP
from .kupisch import NakayamaModel, enumerate_kupisch
from .quivalg import KupischSeries, nakayama_from_kupisch

__all__ = ["ScanConfig", "ScanReport", "OracleDisagreement", "enumerate_kupisch",
           "conjecture_scan", "shen_census", "series_seed"]

DESK_BOUNDS = {"linear": 10, "cyclic": 9}
FULL_BOUNDS = {"linear": 14, "cyclic": 12}
CHUNK = 2000


class OracleDisagreement(AssertionError):
    def __init__(self, series: KupischSeries, detail: dict):
        self.series = series
        self.detail = detail
        super().__init__(f"oracle disagreement on {series}: {json.dumps(detail, sort_keys=True)}")


@dataclass(frozen=True)
class ScanConfig:
    kind: str = "both"
    max_simples: Optional[int] = None  # None: desk (or full) bound per kind
    max_kupisch_entry: Optional[int] = None  # None: twice the simples bound
    parity: str = "even"
    workers: int = 1
    field: Field = GF3
    seed: int = 0
    cap: int = DEFAULT_CAP
    full: bool = False
    spot_check_every: int = 5000  # ~1 in this many rejected series is rechecked

    def __post_init__(self):
        if self.kind not in ("linear", "cyclic", "both"):
            raise ValueError(f"kind must be linear, cyclic or both, got {self.kind!r}")
        if self.parity not in ("even", "all"):
            raise ValueError(f"parity must be even or all, got {self.parity!r}")
        if self.max_simples is not None and self.max_simples < 0:
            raise ValueError("max_simples must be >= 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")

    def kinds(self) -> List[str]:
        return ["linear", "cyclic"] if self.kind == "both" else [self.kind]

    def simples_bound(self, kind: str) -> int:
        if self.max_simples is not None:
            return self.max_simples
        return (FULL_BOUNDS if self.full else DESK_BOUNDS)[kind]

    def entry_bound(self, kind: str) -> int:
        if self.max_kupisch_entry is not None:
            return self.max_kupisch_entry
        return 2 * self.simples_bound(kind)

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "parity": self.parity, "workers": self.workers,
            "field": str(self.field), "seed": self.seed, "cap": self.cap, "full": self.full,
            "max_simples": {k: self.simples_bound(k) for k in self.kinds()},
            "max_kupisch_entry": {k: self.entry_bound(k) for k in self.kinds()},
        }


@dataclass
class Instance:
    index: int
    series: KupischSeries
    verdict: qf1.Qf1Verdict
    morita: bool
    nakayama_criterion: bool

    @property
    def g(self) -> int:
        return self.verdict.gldim.value

    @property
    def hypothesis(self) -> bool:
        return self.verdict.condition1.holds


@dataclass
class ScanReport:
    config: ScanConfig
    algebras_scanned: int = 0
    higher_auslander_found: int = 0
    conjecture_instances: int = 0
    counterexamples: List[Tuple[KupischSeries, qf1.Qf1Verdict]] = dc_field(default_factory=list)
    odd_g_violations: List[Tuple[KupischSeries, qf1.Qf1Verdict]] = dc_field(default_factory=list)
    wall_time: float = 0.0
    instances: List[Instance] = dc_field(default_factory=list)
    spot_checks: int = 0

    def to_json(self, timings: bool = True) -> dict:
        def pair(k, v):
            j = v.to_json()
            if not timings:
                j.pop("timings_ms")
            return {"series": str(k), "verdict": j}

        out = {
            "config": self.config.to_json(),
            "algebras_scanned": self.algebras_scanned,
            "higher_auslander_found": self.higher_auslander_found,
            "conjecture_instances": self.conjecture_instances,
            "counterexamples": [pair(k, v) for k, v in self.counterexamples],
            "odd_g_violations": [pair(k, v) for k, v in self.odd_g_violations],
            "oracle_checks": len(self.instances),
            "spot_checks": self.spot_checks,
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def series_seed(seed: int, series: KupischSeries) -> int:
    h = hashlib.sha256(f"{seed}:{series}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def _stream(cfg: ScanConfig) -> Iterator[Tuple[str, Tuple[int, ...]]]:
    for kind in cfg.kinds():
        for n in range(1, cfg.simples_bound(kind) + 1):
            for k in enumerate_kupisch(kind, n, cfg.entry_bound(kind)):
                yield kind, k.entries


def _chunks(cfg: ScanConfig):
    buf, start = [], 0
    for idx, item in enumerate(_stream(cfg)):
        if not buf:
            start = idx
        buf.append(item)
        if len(buf) == CHUNK:
            yield start, buf
            buf = []
    if buf:
        yield start, buf


def _wanted(g: int, parity: str) -> bool:
    return parity == "all" or g % 2 == 0


def _spot_check(k: KupischSeries, model: NakayamaModel, fld: Field, cap: int):
    """Compare the combinatorial gldim/domdim with the linear algebra."""
    a = nakayama_from_kupisch(k, fld)
    g_lin = hl.gldim(a, cap)
    g_comb = model.gldim(cap)
    detail = {"check": "prefilter", "gldim_linear": g_lin.to_json(), "gldim_model": g_comb}
    if (g_comb is None) != (not g_lin.finite) or (g_comb is not None and g_comb != g_lin.value):
        raise OracleDisagreement(k, detail)
    if g_comb is not None and g_comb > 0:
        d_lin = hl.algebra_domdim(a, cap)
        d_comb = model.algebra_domdim(cap)
        if (d_comb is None) != (not d_lin.finite) or (d_comb is not None and d_comb != d_lin.value):
            detail.update(domdim_linear=d_lin.to_json(), domdim_model=d_comb)
            raise OracleDisagreement(k, detail)


def _examine(index: int, k: KupischSeries, fld: Field, cap: int) -> Instance:
    a = nakayama_from_kupisch(k, fld)
    try:
        verdict = qf1.qf1_theoremC(a, cap)
    except qf1.NotHigherAuslander as exc:
        raise OracleDisagreement(k, {"check": "prefilter", "gldim": exc.gldim.to_json(),
                                     "domdim": exc.domdim.to_json()}) from None
    except qf1.Condition1Mismatch as exc:
        raise OracleDisagreement(k, {"check": "condition1", "error": str(exc)}) from None
    morita = qf1.morita_bruteforce(a, qf1.enumerate_nakayama_indecomposables(a), cap)
    crit = NakayamaModel(k).qf1_criterion()
    if not verdict.is_qf1 == morita == crit:
        raise OracleDisagreement(k, {"check": "qf1", "theoremC": verdict.to_json(),
                                     "morita": morita, "nakayama_criterion": crit})
    return Instance(index, k, verdict, morita, crit)


def _run_chunk(args):
    start, items, field_name, cap, parity, seed, spot_every = args
    fld = Field.parse(field_name)
    found, instances, spots = 0, [], 0
    for off, (kind, entries) in enumerate(items):
        k = KupischSeries(entries, kind)
        model = NakayamaModel(k)
        ha, g = model.higher_auslander(cap)
        if ha:
            found += 1
            if _wanted(g, parity):
                instances.append(_examine(start + off, k, fld, cap))
        elif spot_every and series_seed(seed, k) % spot_every == 0:
            _spot_check(k, model, fld, cap)
            spots += 1
    return start, len(items), found, instances, spots


def _map_chunks(cfg: ScanConfig):
    jobs = ((s, items, str(cfg.field), cfg.cap, cfg.parity, cfg.seed, cfg.spot_check_every)
            for s, items in _chunks(cfg))
    if cfg.workers == 1:
        yield from map(_run_chunk, jobs)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        yield from pool.map(_run_chunk, jobs)


def _revalidate(k: KupischSeries, v: qf1.Qf1Verdict, cfg: ScanConfig):
    a = nakayama_from_kupisch(k, cfg.field)
    ha, g = qf1.is_higher_auslander(a, cfg.cap)
    gv = v.gldim.value
    ok = ha and g == v.gldim
    if ok and gv > 0:
        ok = hl.pdim(hl.tau_n(rm.dual_regular(a), gv), cfg.cap).leq(gv - 1)
    if not ok:
        raise OracleDisagreement(k, {"check": "revalidation", "verdict": v.to_json()})


def conjecture_scan(cfg: ScanConfig) -> ScanReport:
    if cfg.full:
        warnings.warn("full bounds (linear <= 14, cyclic <= 12) can take many hours", RuntimeWarning)
    t0 = time.perf_counter()
    rep = ScanReport(cfg)
    # pool.map returns in submission order, so the fold below is by index
    for _, count, found, instances, spots in _map_chunks(cfg):
        rep.algebras_scanned += count
        rep.higher_auslander_found += found
        rep.spot_checks += spots
        rep.instances.extend(instances)
    for inst in rep.instances:
        if not inst.hypothesis:
            continue
        even = inst.g % 2 == 0
        if even:
            rep.conjecture_instances += 1
        if not inst.verdict.is_qf1:
            _revalidate(inst.series, inst.verdict, cfg)
            (rep.counterexamples if even else rep.odd_g_violations).append((inst.series, inst.verdict))
    rep.wall_time = time.perf_counter() - t0
    return rep


def _census_row(k: KupischSeries, fld: Field, cap: int) -> dict:
    a = nakayama_from_kupisch(k, fld)
    fam = qf1.enumerate_nakayama_indecomposables(a)
    res = qf1.shen_finite_type_check(a, fam, cap)
    model = NakayamaModel(k)
    _, g = model.higher_auslander(cap)
    ivs = model.intervals()
    comb_pd = sum(1 for m in ivs if model.pdim(m, cap) == g)
    comb_dd = sum(1 for m in ivs if model.domdim(m, cap) == 0)
    row = {"series": str(k), "g": g, "intervals": len(ivs), "pdim_g": res["pdim_g"],
           "domdim_0": res["domdim_0"], "idim_g": res["idim_g"], "codomdim_0": res["codomdim_0"],
           "holds": res["holds"]}
    if (comb_pd, comb_dd) != (res["pdim_g"], res["domdim_0"]) or not res["holds"]:
        raise OracleDisagreement(k, {"check": "census", "row": row,
                                     "model_pdim_g": comb_pd, "model_domdim_0": comb_dd})
    return row


def shen_census(cfg: ScanConfig) -> List[Dict]:
    """For every higher Auslander series: modules of projective dimension g
    against modules of dominant dimension zero, counted over intervals."""
    rows = []
    for kind, entries in _stream(cfg):
        k = KupischSeries(entries, kind)
        ha, g = NakayamaModel(k).higher_auslander(cfg.cap)
        if ha and g > 0 and _wanted(g, cfg.parity):
            rows.append(_census_row(k, cfg.field, cfg.cap))
    return rows
