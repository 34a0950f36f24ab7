"""Quivers, admissible relations and the residue-path basis of kQ/I."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .exactlin import QQ, Field, rref

DEFAULT_BASIS_CAP = 10_000


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Path(NamedTuple):
    """A path as a tuple of arrow indices in traversal order (first arrow first)."""
    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)


class Quiver:
    def __init__(self, vertices: Sequence[str | int], arrows: Sequence[tuple[str, str | int, str | int]]):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex labels")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.arrows: list[Arrow] = []
        self.arrow_index: dict[str, int] = {}
        for name, s, t in arrows:
            name = str(name)
            if name in self.arrow_index:
                raise AlgebraError(f"duplicate arrow id {name!r}")
            if str(s) not in self.index or str(t) not in self.index:
                raise AlgebraError(f"arrow {name!r} has an endpoint outside the vertex set")
            self.arrow_index[name] = len(self.arrows)
            self.arrows.append(Arrow(name, self.index[str(s)], self.index[str(t)]))
        self.out_arrows = [[a for a, ar in enumerate(self.arrows) if ar.source == v]
                           for v in range(len(self.vertices))]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, label: str | int) -> int:
        try:
            return self.index[str(label)]
        except KeyError:
            raise AlgebraError(f"unknown vertex {label!r}") from None

    def trivial(self, v: int) -> Path:
        return Path(v, v, ())

    def extend(self, p: Path, a: int) -> Path:
        ar = self.arrows[a]
        if ar.source != p.target:
            raise AlgebraError("arrow does not continue the path")
        return Path(p.source, ar.target, p.arrows + (a,))

    def path(self, names: Sequence[str]) -> Path:
        """Path from arrow names given in composition order (last applied first)."""
        if not names:
            raise AlgebraError("empty path needs a vertex")
        idx = []
        for nm in reversed(list(names)):
            if nm not in self.arrow_index:
                raise AlgebraError(f"unknown arrow id {nm!r}")
            idx.append(self.arrow_index[nm])
        p = Path(self.arrows[idx[0]].source, self.arrows[idx[0]].source, ())
        for a in idx:
            p = self.extend(p, a)
        return p

    def path_name(self, p: Path) -> str:
        if not p.arrows:
            return f"e{self.vertices[p.source]}"
        return "*".join(self.arrows[a].name for a in reversed(p.arrows))

    def paths_from(self, v: int, max_len: int, cap: int) -> list[Path]:
        out = [self.trivial(v)]
        frontier = [self.trivial(v)]
        for _ in range(max_len):
            nxt = [self.extend(p, a) for p in frontier for a in self.out_arrows[p.target]]
            out.extend(nxt)
            frontier = nxt
            if len(out) > cap:
                raise AlgebraError("path enumeration exceeded the basis cap; "
                                   "the algebra looks infinite-dimensional")
        return out


def _order_key(p: Path) -> tuple:
    return (len(p.arrows), p.arrows)


Relation = list[tuple[object, Path]]


class BoundQuiverAlgebra:
    """kQ/I for an admissible ideal I generated by the given relations.

    The residue basis from s to t is the set of paths that are not leading
    terms of I in length-lexicographic order (ties broken by arrow id).
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], field: Field = QQ,
                 cap: int = DEFAULT_BASIS_CAP, name: str = ""):
        self.quiver = quiver
        self.field = field
        self.name = name
        self.relations: list[Relation] = []
        for rel in relations:
            terms = [(field.scalar(c), p) for c, p in rel if field.scalar(c) != 0]
            if not terms:
                continue
            ends = {(p.source, p.target) for _, p in terms}
            if len(ends) != 1:
                raise AlgebraError("relation terms are not parallel paths")
            if any(p.length < 2 for _, p in terms):
                raise AlgebraError("relation is not admissible: a term has length < 2")
            self.relations.append(terms)
        self._build(cap)
        self._gldim: int | None = None

    # construction
    def _build(self, cap: int) -> None:
        Q = self.quiver
        L = 1
        while True:
            paths = [p for v in range(Q.n) for p in Q.paths_from(v, L, 4 * cap)]
            ok, data = self._try_length(L, paths)
            if ok:
                break
            L += 1
        self.max_len = L
        self._reduce, self.basis_paths = data
        self.dim = sum(len(b) for b in self.basis_paths.values())
        if self.dim > cap:
            raise AlgebraError(f"algebra dimension {self.dim} exceeds the basis cap {cap}")

    def _try_length(self, L: int, paths: list[Path]):
        """Reduce modulo I + kQ_{>L}; ok if every length-L path lies in the ideal part."""
        Q, F = self.quiver, self.field
        by_end: dict[tuple[int, int], list[Path]] = {}
        for p in paths:
            by_end.setdefault((p.source, p.target), []).append(p)
        gens: dict[tuple[int, int], list[dict[Path, object]]] = {}
        for rel in self.relations:
            s0, t0 = rel[0][1].source, rel[0][1].target
            mn = min(p.length for _, p in rel)
            for w in (p for p in paths if p.target == s0 and p.length <= L - mn):
                for u in (p for p in paths if p.source == t0 and p.length + w.length <= L - mn):
                    elem: dict[Path, object] = {}
                    for c, r in rel:
                        full = Path(w.source, u.target, w.arrows + r.arrows + u.arrows)
                        if full.length <= L:
                            elem[full] = c
                    if elem:
                        gens.setdefault((w.source, u.target), []).append(elem)
        reduce: dict[Path, dict[Path, object]] = {}
        basis: dict[tuple[int, int], list[Path]] = {}
        ok = True
        for end, plist in by_end.items():
            cols = sorted(plist, key=_order_key, reverse=True)
            pos = {p: i for i, p in enumerate(cols)}
            rows = gens.get(end, [])
            m = F.zeros(len(rows), len(cols))
            for i, elem in enumerate(rows):
                for p, c in elem.items():
                    m[i, pos[p]] = F.scalar(m[i, pos[p]] + c)
            piv: list[int] = []
            if rows:
                m, piv = rref(m, F)
            pivset = set(piv)
            normal = sorted((p for p in cols if pos[p] not in pivset), key=_order_key)
            if any(p.length == L for p in normal):
                ok = False
            basis[end] = normal
            for p in normal:
                reduce[p] = {p: 1}
            for i, pc in enumerate(piv):
                vec = {}
                for q in normal:
                    c = m[i, pos[q]]
                    if c != 0:
                        vec[q] = F.negs(c)
                reduce[cols[pc]] = vec
        for s in range(Q.n):
            for t in range(Q.n):
                basis.setdefault((s, t), [])
        return ok, (reduce, basis)

    # queries
    @property
    def n(self) -> int:
        return self.quiver.n

    def basis(self, s: int, t: int) -> list[Path]:
        return self.basis_paths[(s, t)]

    def reduce(self, p: Path) -> dict[Path, object]:
        """Normal form of a path as {residue path: coefficient}."""
        if p.length > self.max_len:
            return {}
        return self._reduce[p]

    def multiply(self, p: Path, q: Path) -> dict[Path, object]:
        """Normal form of "p then q" (q applied after p)."""
        if p.target != q.source:
            return {}
        return self.reduce(Path(p.source, q.target, p.arrows + q.arrows))

    def continue_by(self, p: Path, a: int) -> dict[Path, object]:
        ar = self.quiver.arrows[a]
        if ar.source != p.target:
            return {}
        return self.reduce(Path(p.source, ar.target, p.arrows + (a,)))

    def vertex(self, label: str | int) -> int:
        return self.quiver.vertex(label)

    def label(self, v: int) -> str:
        return self.quiver.vertices[v]

    def projective_dims(self, v: int) -> tuple[int, ...]:
        return tuple(len(self.basis(v, w)) for w in range(self.n))

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<BoundQuiverAlgebra{nm}: {self.n} vertices, dim {self.dim} over {self.field}>"

    @property
    def gldim(self) -> int | None:
        return self._gldim


@dataclass(frozen=True)
class ProjectiveDescriptor:
    vertex: int
    representation: object


def build_algebra(q: Quiver, rels: Sequence[Sequence[tuple[object, Sequence[str]]]],
                  f: Field = QQ, cap: int = DEFAULT_BASIS_CAP, name: str = "") -> BoundQuiverAlgebra:
    """Relations are lists of (coefficient, arrow names in composition order)."""
    parsed = [[(c, q.path(names)) for c, names in rel] for rel in rels]
    return BoundQuiverAlgebra(q, parsed, f, cap, name)


def projective(alg: BoundQuiverAlgebra, v: int) -> ProjectiveDescriptor:
    from .modcat import ProjModule
    return ProjectiveDescriptor(v, ProjModule(alg, (v,)))


def certify_finite_gldim(alg: BoundQuiverAlgebra, bound: int = 32) -> int:
    from .modcat import projective_resolution, simple
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if alg._gldim is not None:
        return alg._gldim
    g = 0
    for v in range(alg.n):
        res = projective_resolution(simple(alg, v), bound)
        g = max(g, res.length)
    alg._gldim = g
    return g


def require_gldim(alg: BoundQuiverAlgebra) -> int:
    if alg._gldim is None:
        certify_finite_gldim(alg)
    return alg._gldim  # type: ignore[return-value]
