"""Text formats: algebra descriptions and module expressions."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path as FsPath
from typing import List, Optional, Tuple

from .exactlin import Field, GF3
from .quivalg import (Arrow, BoundQuiverAlgebra, KupischSeries, Quiver, Relation,
                      build_algebra, nakayama_from_kupisch)

DEFAULT_FIELD = GF3

_NUM = re.compile(r"^\d+(/\d+)?$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _split_terms(expr: str, lineno: int) -> List[Tuple[str, str]]:
    expr = expr.replace(" ", "").replace("\t", "")
    if not expr:
        raise ParseError(lineno, "empty relation")
    terms = []
    sign = "+"
    cur = ""
    for ch in expr:
        if ch in "+-":
            if cur:
                terms.append((sign, cur))
                cur = ""
                sign = ch
            else:
                sign = "-" if (sign == "-") != (ch == "-") else "+"
        else:
            cur += ch
    if not cur:
        raise ParseError(lineno, "dangling sign")
    terms.append((sign, cur))
    return terms


def _parse_relation(expr: str, quiver: Quiver, lineno: int) -> Relation:
    terms = []
    for sign, t in _split_terms(expr, lineno):
        factors = t.split("*")
        coef = Fraction(1)
        names = []
        for fac in factors:
            if not fac:
                raise ParseError(lineno, f"empty factor in {t!r}")
            if _NUM.match(fac):
                coef *= Fraction(fac)
            else:
                names.append(fac)
        if sign == "-":
            coef = -coef
        try:
            path = quiver.path(names)
        except (KeyError, ValueError) as exc:
            raise ParseError(lineno, str(exc)) from None
        terms.append((coef, path))
    return Relation(tuple(terms))


def parse_algebra(text: str, length_cap: int = 64) -> BoundQuiverAlgebra:
    field: Optional[Field] = None
    vertices: Optional[List[str]] = None
    arrows: List[Tuple[str, str, str, int]] = []
    rel_lines: List[Tuple[str, int]] = []
    nakayama = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, _, rest = line.partition(" ")
        rest = rest.strip()
        if kw == "field":
            try:
                field = Field.parse(rest)
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif kw == "vertices":
            vertices = rest.split()
            if not vertices:
                raise ParseError(lineno, "no vertices given")
        elif kw == "arrow":
            m = re.match(r"^(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)$", rest)
            if not m:
                raise ParseError(lineno, "expected 'arrow <name> : <src> -> <tgt>'")
            name = m.group(1)
            if not _IDENT.match(name):
                raise ParseError(lineno, f"bad arrow name {name!r}")
            arrows.append((name, m.group(2), m.group(3), lineno))
        elif kw == "relation":
            rel_lines.append((rest, lineno))
        elif kw == "nakayama":
            m = re.match(r"^(linear|cyclic)\s+([\d,\s]+)$", rest)
            if not m:
                raise ParseError(lineno, "expected 'nakayama linear|cyclic c1,c2,...'")
            entries = tuple(int(x) for x in re.split(r"[,\s]+", m.group(2).strip()) if x)
            try:
                nakayama = KupischSeries(entries, m.group(1))
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        else:
            raise ParseError(lineno, f"unknown keyword {kw!r}")
    field = field or DEFAULT_FIELD
    if nakayama is not None:
        if vertices or arrows or rel_lines:
            raise ParseError(1, "a nakayama line cannot be combined with an explicit quiver")
        return nakayama_from_kupisch(nakayama, field)
    if vertices is None:
        raise ParseError(1, "missing 'vertices' line")
    pos = {v: i for i, v in enumerate(vertices)}
    arr = []
    for name, s, t, lineno in arrows:
        if s not in pos or t not in pos:
            raise ParseError(lineno, f"arrow {name}: unknown vertex")
        arr.append(Arrow(name, pos[s], pos[t]))
    try:
        quiver = Quiver(tuple(vertices), tuple(arr))
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None
    rels = []
    for expr, lineno in rel_lines:
        rel = _parse_relation(expr, quiver, lineno)
        try:
            rels.append(rel.check(quiver, field))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    return build_algebra(quiver, rels, field, length_cap)


def load_algebra(path, length_cap: int = 64) -> BoundQuiverAlgebra:
    return parse_algebra(FsPath(path).read_text(), length_cap)


def _fmt_coef(c) -> str:
    return str(c)


def serialize_algebra(a: BoundQuiverAlgebra) -> str:
    lines = [f"field {a.field}"]
    if a.kupisch is not None:
        lines.append(f"nakayama {a.kupisch.kind} {','.join(map(str, a.kupisch.entries))}")
        return "\n".join(lines) + "\n"
    q = a.quiver
    lines.append("vertices " + " ".join(q.vertices))
    for arr in q.arrows:
        lines.append(f"arrow {arr.name} : {q.vertices[arr.source]} -> {q.vertices[arr.target]}")
    for r in a.relations:
        parts = []
        for c, p in r.terms:
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {_fmt_coef(abs(c))}*{q.path_str(p)}")
        body = " ".join(parts)
        body = body[2:] if body.startswith("+ ") else "-" + body[2:]
        lines.append(f"relation {body}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# module expressions


def _split_top_level(expr: str, sep: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for ch in expr:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def _parse_matrix(text: str, field: Field):
    quoted = re.sub(r"-?\d+(?:/\d+)?", lambda m: '"' + m.group() + '"', text)
    try:
        rows = json.loads(quoted)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad matrix {text!r}: {exc}") from None
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValueError(f"matrix must be a list of rows: {text!r}")
    return rows


def parse_module_literal(a: BoundQuiverAlgebra, text: str):
    from . import repmod as rm

    m = re.match(r"^\s*module\s*\{(.*)\}\s*$", text, re.S)
    if not m:
        raise ValueError("expected 'module { ... }'")
    parts = [p.strip() for p in _split_top_level(m.group(1), ";") if p.strip()]
    dims = [0] * a.n
    arrows = {}
    for k, part in enumerate(parts):
        if part.startswith("arrow"):
            mm = re.match(r"^arrow\s+(\S+?)\s*:\s*(.*)$", part, re.S)
            if not mm:
                raise ValueError(f"bad arrow entry {part!r}")
            name = mm.group(1)
            a.quiver.arrow_index(name)
            arrows[name] = _parse_matrix(mm.group(2), a.field)
        else:
            for item in _split_top_level(part, ","):
                item = item.strip()
                if not item:
                    continue
                v, _, d = item.partition(":")
                dims[a.vertex_index(v.strip())] = int(d)
    return rm.module_from_matrices(a, dims, arrows)


def parse_module(a: BoundQuiverAlgebra, expr: str):
    """Named modules (P(i), I(i), S(i), DA, A, stableA, costableA),
    module literals, and direct sums written with '+'."""
    from . import homolog as hl
    from . import repmod as rm

    expr = expr.strip()
    summands = [s.strip() for s in _split_top_level(expr, "+")]
    if len(summands) > 1:
        return rm.direct_sum([parse_module(a, s) for s in summands])
    if expr.startswith("module"):
        return parse_module_literal(a, expr)
    m = re.match(r"^([PIS])\((.+)\)$", expr)
    if m:
        ctor = {"P": rm.projective, "I": rm.injective, "S": rm.simple}[m.group(1)]
        return ctor(a, a.vertex_index(m.group(2).strip()))
    named = {
        "A": rm.regular,
        "DA": rm.dual_regular,
        "stableA": hl.stable_module,
        "costableA": hl.costable_module,
    }
    if expr in named:
        return named[expr](a)
    raise ValueError(f"cannot parse module expression {expr!r}")


def format_matrix(mat) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in mat.tolist()) + "]"


def serialize_module(m) -> str:
    q = m.alg.quiver
    dims = ", ".join(f"{q.vertices[v]}: {d}" for v, d in enumerate(m.dims))
    parts = [dims]
    for a, arr in enumerate(q.arrows):
        mat = m.mats[a]
        if mat.size and any(x != 0 for x in mat.reshape(-1)):
            parts.append(f"arrow {arr.name}: {format_matrix(mat)}")
    return "module { " + " ; ".join(parts) + " }"
