"""Exact homological algebra for bound quiver algebras and a QF-1 test for
higher Auslander algebras."""

from pathlib import Path as _FsPath

from .exactlin import Field, GF2, GF3, QQ, Matrix
from .quivalg import (BoundQuiverAlgebra, InvalidKupisch, KupischSeries, NotAdmissible, Quiver,
                      build_algebra, nakayama_from_kupisch, path_algebra_from_labels,
                      zero_relation_linear)
from .repmod import (DecompositionInconclusive, IsoInconclusive, ModuleMap, QuiverModule,
                     decompose, dual, injective, is_isomorphic, projective, regular, simple)
from .homolog import (ExtendedNat, at_least, codomdim, domdim, ext_dim, finite, gldim, idim,
                      pdim, tau, tau_n)
from .qf1 import NotHigherAuslander, Qf1Verdict, is_higher_auslander, qf1_theoremC
from .formats import ParseError, load_algebra, parse_algebra, parse_module, serialize_algebra

__all__ = [
    "Field", "GF2", "GF3", "QQ", "Matrix",
    "BoundQuiverAlgebra", "InvalidKupisch", "KupischSeries", "NotAdmissible", "Quiver", "build_algebra",
    "nakayama_from_kupisch", "path_algebra_from_labels", "zero_relation_linear",
    "DecompositionInconclusive", "IsoInconclusive", "ModuleMap", "QuiverModule", "decompose", "dual",
    "injective", "is_isomorphic", "projective", "regular", "simple",
    "ExtendedNat", "at_least", "codomdim", "domdim", "ext_dim", "finite", "gldim", "idim", "pdim", "tau",
    "tau_n", "NotHigherAuslander", "Qf1Verdict", "is_higher_auslander", "qf1_theoremC",
    "ParseError", "load_algebra", "parse_algebra", "parse_module", "serialize_algebra",
    "FIXTURES", "fixture",
]

FIXTURES = _FsPath(__file__).resolve().parent / "fixtures"


def fixture(name: str) -> BoundQuiverAlgebra:
    """Load a shipped fixture by stem, e.g. ``fixture("kupisch-3334")``."""
    return load_algebra(FIXTURES / f"{name}.alg")


__version__ = "0.1.0"
