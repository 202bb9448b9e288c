"""Command-line interface: ``quiverhom <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

from . import homolog as hl
from . import qf1
from . import repmod as rm
from .exactlin import Field
from .formats import ParseError, load_algebra, parse_module, serialize_module
from .homolog import DEFAULT_CAP

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_NOT_HA, EXIT_INCONCLUSIVE, EXIT_ORACLE = 0, 1, 2, 3, 4, 5


def default_cap() -> int:
    raw = os.environ.get("QUIVERHOM_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise SystemExit(f"error: QUIVERHOM_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise SystemExit("error: QUIVERHOM_CAP must be >= 1")
    return cap


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _emit(obj, as_json: bool, lines=None):
    if as_json or lines is None:
        print(json.dumps(obj, indent=2))
    else:
        width = max(len(k) for k, _ in lines)
        for k, v in lines:
            print(f"{k:<{width}}  {v}")


def _module(a, expr):
    try:
        return parse_module(a, expr)
    except (ValueError, KeyError, IndexError) as exc:
        raise ParseError(1, f"module expression {expr!r}: {exc}") from None


def cmd_analyze(ns):
    a = load_algebra(ns.file)
    ha, g = qf1.is_higher_auslander(a, ns.cap)
    dd = hl.algebra_domdim(a, ns.cap)
    obj = {"dim": a.dim, "vertices": a.n, "arrows": len(a.arrows), "field": str(a.field),
           "gldim": g.to_json(), "domdim": dd.to_json(), "higher_auslander": ha}
    _emit(obj, ns.json, [(k, v if not isinstance(v, dict) else f">={v['at_least']}") for k, v in obj.items()])
    return EXIT_OK


def cmd_qf1(ns):
    a = load_algebra(ns.file)
    v = qf1.qf1_theoremC(a, ns.cap)
    print(json.dumps(v.to_json(), indent=2))
    return EXIT_OK


def cmd_resolve(ns):
    a = load_algebra(ns.file)
    m = _module(a, ns.module)
    if ns.injective:
        chain = hl.min_injective_coresolution(m, ns.cap)
        vecs = [rm.socle_vector(t) for t in chain.terms]
        size = hl.idim(m, ns.cap)
    else:
        chain = hl.min_projective_resolution(m, ns.cap)
        vecs = [rm.top_vector(t) for t in chain.terms]
        size = hl.pdim(m, ns.cap)
    kind = "injective" if ns.injective else "projective"
    terms = [{"degree": k, "dim_vector": list(t.dims), "summands": v} for k, (t, v) in enumerate(zip(chain.terms, vecs))]
    obj = {"module": list(m.dims), "kind": kind, "complete": chain.complete,
           "idim" if ns.injective else "pdim": size.to_json(), "terms": terms}
    letter = "I" if ns.injective else "P"
    lines = [("module", m.dims), ("idim" if ns.injective else "pdim", size)]
    for t in terms:
        summ = " + ".join(f"{c}*{letter}({a.quiver.vertices[i]})" if c > 1 else f"{letter}({a.quiver.vertices[i]})"
                          for i, c in enumerate(t["summands"]) if c) or "0"
        lines.append((f"term {t['degree']}", summ))
    _emit(obj, ns.json, lines)
    return EXIT_OK


def cmd_ext(ns):
    a = load_algebra(ns.file)
    m, n = _module(a, ns.m), _module(a, ns.n)
    lo, hi = (ns.degree, ns.degree) if ns.degree is not None else (ns.lo, ns.hi)
    dims = {k: hl.ext_dim(m, n, k) for k in range(lo, hi + 1)}
    _emit({"ext": {str(k): d for k, d in dims.items()}}, ns.json, [(f"Ext^{k}", d) for k, d in dims.items()])
    return EXIT_OK


def cmd_tau(ns):
    a = load_algebra(ns.file)
    m = _module(a, ns.module)
    t = hl.tau_n_inverse(m, ns.n) if ns.inverse else hl.tau_n(m, ns.n)
    obj = {"dim_vector": list(t.dims), "module": serialize_module(t)}
    lines = [("dim_vector", t.dims), ("module", obj["module"])]
    if ns.decompose:
        parts = rm.decompose(t, ns.seed)
        obj["summands"] = [{"dim_vector": list(x.dims), "multiplicity": k, "module": serialize_module(x)}
                           for x, k in parts]
        for x, k in parts:
            lines.append((f"summand x{k}", x.dims))
    _emit(obj, ns.json, lines)
    return EXIT_OK


def cmd_scan(ns):
    from .scan import ScanConfig, conjecture_scan

    cfg = ScanConfig(kind=ns.kind, max_simples=ns.max_simples, max_kupisch_entry=ns.max_entry,
                     parity=ns.parity, workers=ns.workers, field=Field.parse(ns.field), seed=ns.seed,
                     cap=ns.cap, full=ns.full)
    if ns.full:
        print("warning: --full uses linear <= 14 and cyclic <= 12; expect a very long run", file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rep = conjecture_scan(cfg)
    obj = rep.to_json()
    if ns.out:
        with open(ns.out, "w") as fh:
            json.dump(obj, fh, indent=2)
    lines = [("algebras_scanned", rep.algebras_scanned), ("higher_auslander_found", rep.higher_auslander_found),
             ("conjecture_instances", rep.conjecture_instances), ("oracle_checks", len(rep.instances)),
             ("counterexamples", ", ".join(str(k) for k, _ in rep.counterexamples) or "none"),
             ("odd_g_violations", ", ".join(str(k) for k, _ in rep.odd_g_violations) or "none"),
             ("wall_time_s", f"{rep.wall_time:.1f}")]
    _emit(obj, ns.json, lines)
    return EXIT_FAIL if rep.counterexamples else EXIT_OK


def cmd_verify(ns):
    from .verify import run_checks

    outcomes = run_checks(ns.cap, quick=ns.quick)
    width = max(len(o.name) for o in outcomes)
    for o in outcomes:
        status = "PASS" if o.passed else "FAIL"
        print(f"{status}  {o.name:<{width}}  {o.seconds:8.2f}s")
        if o.error:
            print(f"      {o.error}")
        for label, want, got in o.failures:
            print(f"      {label}: expected {want}, got {got}")
    ok = all(o.passed for o in outcomes)
    print(f"{sum(o.passed for o in outcomes)}/{len(outcomes)} checks passed")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    cap = default_cap()
    p = argparse.ArgumentParser(prog="quiverhom", description="Homological invariants and QF-1 tests "
                                "for bound quiver algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algebra=True):
        if algebra:
            sp.add_argument("file", help="algebra description file")
        sp.add_argument("--cap", type=_positive, default=cap, help=f"dimension cap (default {cap})")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("analyze", help="dimension, gldim, domdim, higher Auslander flag")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("qf1", help="QF-1 test for a higher Auslander algebra (JSON verdict)")
    common(sp)
    sp.set_defaults(func=cmd_qf1)

    sp = sub.add_parser("resolve", help="minimal projective resolution or injective coresolution")
    common(sp)
    sp.add_argument("module", help="module expression, e.g. S(1), DA, stableA, 'P(1) + S(2)'")
    sp.add_argument("--injective", action="store_true", help="injective coresolution instead")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("ext", help="dimensions of Ext^k(M, N)")
    common(sp)
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("--degree", type=int, default=None)
    sp.add_argument("--lo", type=int, default=0)
    sp.add_argument("--hi", type=int, default=3)
    sp.set_defaults(func=cmd_ext)

    sp = sub.add_parser("tau", help="higher Auslander-Reiten translate tau_n or its inverse")
    common(sp)
    sp.add_argument("module")
    sp.add_argument("--n", type=_positive, default=1)
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--decompose", action="store_true", help="also list indecomposable summands")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_tau)

    sp = sub.add_parser("scan", help="scan Nakayama algebras for counterexamples to the even-g conjecture")
    common(sp, algebra=False)
    sp.add_argument("--kind", choices=["linear", "cyclic", "both"], default="both")
    sp.add_argument("--max-simples", type=int, default=None)
    sp.add_argument("--max-entry", type=int, default=None)
    sp.add_argument("--parity", choices=["even", "all"], default="even")
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--field", default="GF(3)")
    sp.add_argument("--full", action="store_true", help="linear <= 14 and cyclic <= 12 simples")
    sp.add_argument("--out", default=None, help="write the JSON report here")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("verify-paper", help="run every fixture check and print a pass/fail table")
    sp.add_argument("--cap", type=_positive, default=cap)
    sp.add_argument("--quick", action="store_true", help="small scan bounds instead of desk scale")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except ParseError as exc:
        print(f"error: {getattr(ns, 'file', '')}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except qf1.NotHigherAuslander as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_HA
    except (rm.IsoInconclusive, rm.DecompositionInconclusive) as exc:
        print(f"error: {exc}; rerun with --seed {exc.seed} to replay", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except AssertionError as exc:
        from .scan import OracleDisagreement

        if isinstance(exc, OracleDisagreement):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ORACLE
        raise


if __name__ == "__main__":
    sys.exit(main())
