"""Line-oriented text formats for algebras, modules and complexes.

Algebra file::

    [field]
    QQ                      # or GF(32003)
    [vertices]
    1 2 3
    [arrows]
    a: 1 -> 2
    b: 2 -> 3
    [relations]
    b*a                     # signed sums of paths, composition order

Module descriptors (used in module files, complex files and on the command line):

* ``simple v``, ``projective v``, ``injective v`` (also ``S3``, ``P3``, ``I3``)
* thin modules by radical layers: ``4&6/5`` has top 4 + 6 and socle 5; arrows
  from one layer to the next act by 1, all others by 0
* direct sums with ``+``

A module file holds either one descriptor or explicit data::

    [dims]
    0 1 1
    [maps]
    b: 1            # rows separated by ';', entries by spaces

Object expressions: ``6/5[1]``, ``4&6/5->*3/4`` (the starred term sits in
degree 0; each map is the unique nonzero homomorphism up to scalar).
"""
from __future__ import annotations

import re
from fractions import Fraction
import numpy as np

from .derivedcat import Complex, DObject, projectivize, shift
from .exactlin import QQ, Field, GF, fmt_scalar
from .modcat import (ModuleMorphism, Representation, direct_sum, hom_basis, injective,
                     is_isomorphic, radical_spans, simple, subrep)
from .quiveralg import AlgebraError, BoundQuiverAlgebra, Path, Quiver

__all__ = [
    "FormatError", "parse_algebra_file", "parse_module", "parse_module_file",
    "parse_object", "parse_complex_file", "serialize_module", "describe_module",
    "describe_object", "serialize_algebra",
]


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        loc = "" if line is None else f"line {line}" + ("" if col is None else f", column {col}") + ": "
        super().__init__(loc + msg)
        self.line = line
        self.col = col


def _sections(text: str) -> list[tuple[str, list[tuple[int, str]]]]:
    out: list[tuple[str, list[tuple[int, str]]]] = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            out.append((m.group(1).lower(), []))
        elif not out:
            out.append(("", [(no, line)]))
        else:
            out[-1][1].append((no, line))
    return out


def parse_field(s: str, line: int | None = None) -> Field:
    s = s.strip()
    if s.upper() in ("QQ", "Q", "RATIONALS"):
        return QQ
    m = re.fullmatch(r"(?:GF|F)\(?\s*(\d+)\s*\)?", s, re.I)
    if m:
        try:
            return GF(int(m.group(1)))
        except ValueError as e:
            raise FormatError(str(e), line) from None
    raise FormatError(f"unknown field {s!r}", line)


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(?:(?<=\d)\s+|(?<=\d)\*)?([A-Za-z_][\w']*(?:\s*\*\s*[A-Za-z_][\w']*)*)\s*")


def _parse_relation(s: str, q: Quiver, line: int) -> list[tuple[object, Path]]:
    terms, pos = [], 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise FormatError(f"cannot parse relation near {s[pos:]!r}", line, pos + 1)
        if terms and not m.group(1):
            raise FormatError("relation terms must be joined by + or -", line, pos + 1)
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        names = [n.strip() for n in m.group(3).split("*")]
        for n in names:
            if n not in q.arrow_index:
                raise FormatError(f"unknown arrow id {n!r}", line, s.find(n, pos) + 1)
        try:
            terms.append((sign * coeff, q.path(names)))
        except AlgebraError as e:
            raise FormatError(str(e), line, pos + 1) from None
        pos = m.end()
    if not terms:
        raise FormatError("empty relation", line)
    return terms


def parse_algebra_file(text: str, name: str = "", field: Field | None = None) -> BoundQuiverAlgebra:
    """Build an algebra from its file text; ``field`` overrides the [field] section."""
    secs = dict()
    for nm, lines in _sections(text):
        secs.setdefault(nm, []).extend(lines)
    unknown = set(secs) - {"field", "vertices", "arrows", "relations", "name"}
    if unknown:
        raise FormatError(f"unknown section(s): {', '.join(sorted(unknown))}")
    if field is None:
        field = parse_field(secs["field"][0][1], secs["field"][0][0]) if secs.get("field") else QQ
    if not secs.get("vertices"):
        raise FormatError("missing [vertices] section")
    verts = [v for _, line in secs["vertices"] for v in line.replace(",", " ").split()]
    arrows = []
    for no, line in secs.get("arrows", []):
        m = re.fullmatch(r"([A-Za-z_][\w']*)\s*:\s*(\S+)\s*->\s*(\S+)", line)
        if not m:
            raise FormatError("arrow lines look like 'a: 1 -> 2'", no, 1)
        for k in (2, 3):
            if m.group(k) not in verts:
                raise FormatError(f"unknown vertex {m.group(k)!r}", no, m.start(k) + 1)
        arrows.append((m.group(1), m.group(2), m.group(3)))
    try:
        q = Quiver(verts, arrows)
    except AlgebraError as e:
        raise FormatError(str(e)) from None
    rels = [_parse_relation(line, q, no) for no, line in secs.get("relations", [])]
    if secs.get("name"):
        name = secs["name"][0][1]
    try:
        return BoundQuiverAlgebra(q, rels, field, name=name)
    except AlgebraError as e:
        raise FormatError(str(e)) from None


def serialize_algebra(alg: BoundQuiverAlgebra) -> str:
    q = alg.quiver
    lines = ["[name]", alg.name] if alg.name else []
    lines += ["[field]", alg.field.name, "[vertices]", " ".join(q.vertices), "[arrows]"]
    lines += [f"{a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}" for a in q.arrows]
    lines.append("[relations]")
    for rel in alg.relations:
        parts = []
        for c, p in rel:
            c = Fraction(c) if alg.field.p is None else Fraction(int(c))
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coeff = "" if mag == 1 else fmt_scalar(mag) + " "
            parts.append(f"{sign} {coeff}{q.path_name(p)}")
        s = " ".join(parts)
        lines.append(s[2:] if s.startswith("+ ") else s)
    return "\n".join(lines) + "\n"


# modules

def thin_module(alg: BoundQuiverAlgebra, layers: list[list[int]]) -> Representation:
    F = alg.field
    level = {}
    for t, layer in enumerate(layers):
        for v in layer:
            if v in level:
                raise FormatError(f"vertex {alg.label(v)} appears twice in a thin descriptor")
            level[v] = t
    dims = [1 if v in level else 0 for v in range(alg.n)]
    maps = []
    for a in alg.quiver.arrows:
        m = F.zeros(dims[a.target], dims[a.source])
        if a.source in level and a.target in level and level[a.target] == level[a.source] + 1:
            m[0, 0] = 1
        maps.append(m)
    return Representation(alg, dims, maps)


def _vertex(alg: BoundQuiverAlgebra, tok: str) -> int:
    try:
        return alg.vertex(tok)
    except AlgebraError:
        raise FormatError(f"unknown vertex {tok!r}") from None


def parse_module(desc: str, alg: BoundQuiverAlgebra,
                 named: dict[str, Representation] | None = None) -> Representation:
    """Parse a module descriptor (see module docstring)."""
    from .modcat import ProjModule
    parts = [p.strip() for p in desc.split("+")]
    mods = []
    for part in parts:
        if not part:
            raise FormatError(f"empty summand in {desc!r}")
        m = re.fullmatch(r"(simple|projective|injective)\s*(\S+)", part)
        if m:
            v = _vertex(alg, m.group(2))
            kind = m.group(1)
        else:
            m = re.fullmatch(r"([SPI])\(?([^()\s/&]+)\)?", part)
            kind = {"S": "simple", "P": "projective", "I": "injective"}[m.group(1)] if m else ""
            v = _vertex(alg, m.group(2)) if m and m.group(2) in alg.quiver.index else -1
            if v < 0:
                kind = ""
        if named and part in named:
            mods.append(named[part])
        elif kind == "simple":
            mods.append(simple(alg, v))
        elif kind == "projective":
            mods.append(ProjModule(alg, (v,)))
        elif kind == "injective":
            mods.append(injective(alg, v))
        else:
            layers = [[_vertex(alg, t.strip()) for t in layer.split("&")] for layer in part.split("/")]
            mods.append(thin_module(alg, layers))
    if len(mods) == 1:
        return mods[0]
    return direct_sum(mods)[0]


def _parse_matrix(s: str, F: Field, shape: tuple[int, int], line: int) -> np.ndarray:
    rows = [r.replace(",", " ").split() for r in s.strip().strip("[]").split(";")]
    rows = [r for r in rows if r]
    try:
        vals = [[Fraction(x) for x in r] for r in rows]
    except ValueError:
        raise FormatError(f"bad matrix entry in {s!r}", line) from None
    if shape[0] * shape[1] == 0 and not vals:
        return F.zeros(*shape)
    if len(vals) != shape[0] or any(len(r) != shape[1] for r in vals):
        raise FormatError(f"matrix has shape {len(vals)}x{len(vals[0]) if vals else 0}, expected "
                          f"{shape[0]}x{shape[1]}", line)
    return F.array(vals, shape)


def parse_module_file(text: str, alg: BoundQuiverAlgebra,
                      named: dict[str, Representation] | None = None) -> Representation:
    secs = _sections(text)
    if len(secs) == 1 and secs[0][0] == "":
        lines = secs[0][1]
        return parse_module(" + ".join(l for _, l in lines), alg, named)
    d = {nm: lines for nm, lines in secs}
    if "dims" not in d:
        raise FormatError("module file needs a descriptor or a [dims] section")
    no, dl = d["dims"][0]
    try:
        dims = [int(x) for x in dl.replace(",", " ").split()]
    except ValueError:
        raise FormatError("dimension vector must be integers", no) from None
    if len(dims) != alg.n:
        raise FormatError(f"dimension vector has {len(dims)} entries, algebra has {alg.n} vertices", no)
    F = alg.field
    maps = [F.zeros(dims[a.target], dims[a.source]) for a in alg.quiver.arrows]
    for no, line in d.get("maps", []):
        m = re.fullmatch(r"([A-Za-z_][\w']*)\s*:\s*(.*)", line)
        if not m or m.group(1) not in alg.quiver.arrow_index:
            raise FormatError(f"unknown arrow in {line!r}", no, 1)
        b = alg.quiver.arrow_index[m.group(1)]
        a = alg.quiver.arrows[b]
        maps[b] = _parse_matrix(m.group(2), F, (dims[a.target], dims[a.source]), no)
    try:
        return Representation(alg, dims, maps)
    except AlgebraError as e:
        raise FormatError(str(e)) from None


def _fmt_matrix(m: np.ndarray) -> str:
    return "; ".join(" ".join(fmt_scalar(x) for x in row) for row in m)


def serialize_module(M: Representation) -> str:
    alg = M.alg
    lines = ["[dims]", " ".join(str(d) for d in M.dims), "[maps]"]
    for b, a in enumerate(alg.quiver.arrows):
        if M.maps[b].size and not alg.field.is_zero(M.maps[b]):
            lines.append(f"{a.name}: {_fmt_matrix(M.maps[b])}")
    return "\n".join(lines) + "\n"


def radical_layers(M: Representation) -> list[list[int]] | None:
    """Vertices of each radical layer of a thin module, or None."""
    if any(d > 1 for d in M.dims):
        return None
    layers, cur = [], M
    while not cur.is_zero():
        R, _ = subrep(cur, radical_spans(cur))
        layers.append([v for v in range(M.alg.n) if cur.dims[v] - R.dims[v] > 0])
        cur = R
    return layers


def describe_module(M: Representation) -> str:
    if M.is_zero():
        return "0"
    layers = radical_layers(M)
    alg = M.alg
    if layers is not None:
        cand = thin_module(alg, layers)
        if is_isomorphic(cand, M):
            return "/".join("&".join(alg.label(v) for v in sorted(layer)) for layer in layers)
    # direct sums of thin modules are common; otherwise fall back to the dimension vector
    return "dim(" + ",".join(str(d) for d in M.dims) + ")"


def describe_object(x: DObject) -> str:
    from .derivedcat import cohomology
    hd = x.cohomology_dims()
    if not hd:
        return "0"
    if len(hd) == 1:
        (d, _), = hd.items()
        s = describe_module(cohomology(x, d))
        return s if d == 0 else f"{s}[{-d}]"
    return " ".join(f"H^{d}={describe_module(cohomology(x, d))}" for d in sorted(hd))


# objects

def _split_terms(expr: str) -> list[str]:
    return [t.strip() for t in re.split(r"->|→", expr)]


def parse_object(expr: str, alg: BoundQuiverAlgebra,
                 named: dict[str, Representation] | None = None) -> DObject:
    """``M``, ``M[k]`` or a chain ``A->*B->C`` with unique nonzero maps."""
    expr = expr.strip()
    outer = 0
    m = re.fullmatch(r"\((.*)\)\s*\[\s*(-?\d+)\s*\]", expr)
    if m:
        expr, outer = m.group(1), int(m.group(2))
    terms = _split_terms(expr)
    if len(terms) == 1:
        m = re.fullmatch(r"(.*?)\s*\[\s*(-?\d+)\s*\]", terms[0])
        k = 0
        body = terms[0]
        if m:
            body, k = m.group(1), int(m.group(2))
        M = parse_module(body.lstrip("*•").strip(), alg, named)
        x = projectivize(Complex(alg, {0: M}), label=expr)
        return shift(x, k + outer)
    marked = [i for i, t in enumerate(terms) if t.startswith("*") or t.startswith("•")]
    if len(marked) != 1:
        raise FormatError(f"mark exactly one degree-0 term with '*' in {expr!r}")
    z = marked[0]
    mods = [parse_module(t.lstrip("*•").strip(), alg, named) for t in terms]
    degs = [i - z for i in range(len(mods))]
    diffs = {}
    for i in range(len(mods) - 1):
        hb = hom_basis(mods[i], mods[i + 1])
        if len(hb) != 1:
            raise FormatError(f"Hom({terms[i]}, {terms[i + 1]}) has dimension {len(hb)}; "
                              "use a complex file with explicit maps")
        diffs[degs[i]] = hb[0]
    C = Complex(alg, dict(zip(degs, mods)), diffs)
    C.validate()
    return shift(projectivize(C, label=expr), outer)


def parse_complex_file(text: str, alg: BoundQuiverAlgebra,
                       named: dict[str, Representation] | None = None) -> DObject:
    """Sections [terms] ("deg: descriptor") and [differentials]
    ("deg: auto", "deg: zero" or "deg: v=matrix | w=matrix")."""
    d = {nm: lines for nm, lines in _sections(text)}
    if "terms" not in d:
        raise FormatError("complex file needs a [terms] section")
    terms = {}
    for no, line in d["terms"]:
        m = re.fullmatch(r"(-?\d+)\s*:\s*(.+)", line)
        if not m:
            raise FormatError("term lines look like '0: 3/4'", no, 1)
        terms[int(m.group(1))] = parse_module(m.group(2), alg, named)
    F = alg.field
    diffs = {}
    for no, line in d.get("differentials", []):
        m = re.fullmatch(r"(-?\d+)\s*:\s*(.+)", line)
        if not m:
            raise FormatError("differential lines look like '-1: auto'", no, 1)
        i, spec = int(m.group(1)), m.group(2).strip()
        if i not in terms or i + 1 not in terms:
            raise FormatError(f"differential {i} has no source or target term", no)
        X, Y = terms[i], terms[i + 1]
        if spec == "zero":
            continue
        if spec == "auto":
            hb = hom_basis(X, Y)
            if len(hb) != 1:
                raise FormatError(f"'auto' needs a one-dimensional Hom space, found {len(hb)}", no)
            diffs[i] = hb[0]
            continue
        mats = [F.zeros(Y.dims[v], X.dims[v]) for v in range(alg.n)]
        for chunk in spec.split("|"):
            mm = re.fullmatch(r"\s*(\S+)\s*=\s*(.+)", chunk)
            if not mm:
                raise FormatError(f"bad vertex block {chunk!r}", no)
            v = _vertex(alg, mm.group(1))
            mats[v] = _parse_matrix(mm.group(2), F, (Y.dims[v], X.dims[v]), no)
        f = ModuleMorphism(X, Y, mats)
        try:
            f.validate()
        except AlgebraError as e:
            raise FormatError(str(e), no) from None
        diffs[i] = f
    C = Complex(alg, terms, diffs)
    try:
        C.validate()
    except AlgebraError as e:
        raise FormatError(str(e)) from None
    return projectivize(C)
