"""Compatibility of the tilting t-structure with the natural one, tested on finite corpora.

Scans only ever certify "no violation found on this corpus"; an infinite
category cannot be exhausted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .derivedcat import DObject, cone, homotopy_classes, module_object, shift, smart_truncate
from .formats import describe_module, describe_object
from .hrs import TStructureTower
from .modcat import Representation, is_isomorphic, projective_cover, simple
from .tilting import rhom_dims, summands_of


class Direction(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class CorpusItem:
    name: str
    obj: DObject


@dataclass(frozen=True)
class Violation:
    item: CorpusItem
    degree: int
    rhom_object: dict
    rhom_truncation: dict

    def line(self) -> str:
        return (f"violation: {self.item.name} j={self.degree} "
                f"rhom={_fmt_support(self.rhom_object)} "
                f"truncated={_fmt_support(self.rhom_truncation)}")


@dataclass
class CompatReport:
    direction: Direction
    corpus: list[CorpusItem]
    violations: list[Violation] = field(default_factory=list)
    tested: int = 0

    @property
    def found(self) -> bool:
        return bool(self.violations)

    def lines(self) -> list[str]:
        out = [f"direction: {self.direction.value}",
               f"corpus size: {len(self.corpus)}",
               f"objects tested: {self.tested}"]
        out += [v.line() for v in self.violations]
        if not self.violations:
            out.append("no violation found on corpus")
        return out


def _fmt_support(d: dict) -> str:
    return "{" + ", ".join(f"{j}:{d[j]}" for j in sorted(d)) + "}"


def truncation(x: DObject, j: int, direction: Direction) -> DObject:
    """delta^{<=j} x for the left test, delta^{>=j} x for the right test."""
    le, ge, _ = smart_truncate(x, j if direction is Direction.LEFT else j - 1)
    return le if direction is Direction.LEFT else ge


def _cut_degrees(x: DObject, direction: Direction) -> range:
    """Degrees j where the natural truncation is a proper nonzero piece of x."""
    hd = sorted(x.cohomology_dims())
    if len(hd) < 2:
        return range(0)
    return range(hd[0], hd[-1]) if direction is Direction.LEFT else range(hd[0] + 1, hd[-1] + 1)


def _in_class(tower: TStructureTower, x: DObject, direction: Direction) -> bool:
    if direction is Direction.LEFT:
        return tower.member_aisle(tower.n, x, 0)
    return tower.in_T_ge(x, 0)


def check_item(tower: TStructureTower, item: CorpusItem, direction: Direction,
               window: Iterable[int] | None = None) -> list[Violation]:
    x = item.obj
    if not _in_class(tower, x, direction):
        return []
    out = []
    for j in (_cut_degrees(x, direction) if window is None else window):
        t = truncation(x, j, direction)
        if not _in_class(tower, t, direction):
            out.append(Violation(item, j, dict(tower.rhom(x)), dict(tower.rhom(t))))
    return out


def _scan(tower: TStructureTower, corpus: Iterable[CorpusItem], direction: Direction,
          window: Iterable[int] | None, first_only: bool) -> CompatReport:
    rep = CompatReport(direction, [])
    win = None if window is None else list(window)
    for item in corpus:
        rep.corpus.append(item)
        rep.tested += 1
        rep.violations.extend(check_item(tower, item, direction, win))
        if first_only and rep.violations:
            break
    return rep


def left_compat_scan(tower: TStructureTower, corpus: Sequence[CorpusItem],
                     window: Iterable[int] | None = None) -> CompatReport:
    """Objects of T^{<=0} whose natural truncation delta^{<=j} leaves T^{<=0}."""
    return _scan(tower, corpus, Direction.LEFT, window, False)


def right_compat_scan(tower: TStructureTower, corpus: Sequence[CorpusItem],
                      window: Iterable[int] | None = None) -> CompatReport:
    """Objects of T^{>=0} whose natural truncation delta^{>=j} leaves T^{>=0}."""
    return _scan(tower, corpus, Direction.RIGHT, window, False)


def replay(tower: TStructureTower, v: Violation, direction: Direction = Direction.LEFT) -> bool:
    """Recompute both observations from scratch (no tower caches)."""
    x = v.item.obj
    t = truncation(x, v.degree, direction)
    sx, st = rhom_dims(tower.T, x), rhom_dims(tower.T, t)
    if direction is Direction.LEFT:
        return all(j <= 0 for j in sx) and any(j > 0 for j in st)
    return all(j >= 0 for j in sx) and any(j < 0 for j in st)


# corpora

def base_modules(tower: TStructureTower) -> list[tuple[str, Representation]]:
    """Simples, indecomposable projectives and summands of T, up to isomorphism."""
    alg = tower.alg
    cands: list[tuple[str, Representation]] = []
    for v in range(alg.n):
        cands.append((f"S{alg.label(v)}", simple(alg, v)))
    for v in range(alg.n):
        P, _ = projective_cover(simple(alg, v))
        cands.append((f"P{alg.label(v)}", P))
    for M in summands_of(tower.T):
        cands.append((describe_module(M), M))
    out: list[tuple[str, Representation]] = []
    for name, M in cands:
        if not any(M.dims == N.dims and is_isomorphic(M, N) for _, N in out):
            out.append((name, M))
    return out


def _shift_name(name: str, k: int) -> str:
    return name if k == 0 else f"{name}[{k}]"


def indecomposable_corpus(tower: TStructureTower, window: Iterable[int] | None = None) -> list[CorpusItem]:
    """Base modules and their shifts; for hereditary algebras this is every indecomposable."""
    n = tower.n
    win = list(range(-n - 1, n + 2)) if window is None else list(window)
    items = []
    for name, M in base_modules(tower):
        x = module_object(M)
        for k in win:
            items.append(CorpusItem(_shift_name(name, k), shift(x, k)))
    return items


def iter_cone_corpus(tower: TStructureTower, window: Iterable[int] | None = None) -> Iterator[CorpusItem]:
    """Cones of a basis of Hom_D(M, N[p]) for base modules M, N and 0 < p <= n, shifted.

    Hom between shifted modules only depends on the degree difference, so a
    single round of cones over module pairs covers every shifted pair.
    """
    n = tower.n
    win = list(range(-n - 1, n + 2)) if window is None else list(window)
    base = [(name, module_object(M)) for name, M in base_modules(tower)]
    for na, xa in base:
        for nb, xb in base:
            for p in range(1, n + 1):
                _, maps = homotopy_classes(xa.proj, xb.proj, p)
                for b, f in enumerate(maps):
                    c = cone(f, xa, shift(xb, p)).C
                    if c.is_zero():
                        continue
                    nm = f"cone({na}->{nb}[{p}]#{b})"
                    for k in win:
                        yield CorpusItem(_shift_name(nm, k), shift(c, k))


def cone_corpus(tower: TStructureTower, window: Iterable[int] | None = None) -> list[CorpusItem]:
    return list(iter_cone_corpus(tower, window))


def iter_default_corpus(tower: TStructureTower, window: Iterable[int] | None = None) -> Iterator[CorpusItem]:
    """Base modules with their shifts, then one round of cones, in a fixed order."""
    yield from indecomposable_corpus(tower, window)
    yield from iter_cone_corpus(tower, window)


def default_corpus(tower: TStructureTower, window: Iterable[int] | None = None) -> list[CorpusItem]:
    return list(iter_default_corpus(tower, window))


@dataclass
class WitnessResult:
    violation: Violation | None
    searched: int
    replayed: bool = False

    @property
    def exhausted(self) -> bool:
        return self.violation is None

    def lines(self) -> list[str]:
        if self.violation is None:
            return [f"searched: {self.searched}", "exhausted: no violation found on corpus"]
        v = self.violation
        return [f"searched: {self.searched}",
                f"witness: {v.item.name}",
                f"object: {describe_object(v.item.obj)}",
                f"degree: {v.degree}",
                f"rhom(object): {_fmt_support(v.rhom_object)}",
                f"rhom(truncation): {_fmt_support(v.rhom_truncation)}",
                f"replayed: {'yes' if self.replayed else 'no'}"]


def find_incompat_witness(tower: TStructureTower,
                          corpus: Iterable[CorpusItem] | None = None) -> WitnessResult:
    """First left-compatibility violation on the corpus (default corpus if omitted)."""
    items = iter_default_corpus(tower) if corpus is None else corpus
    rep = _scan(tower, items, Direction.LEFT, None, True)
    if not rep.violations:
        return WitnessResult(None, rep.tested)
    v = rep.violations[0]
    return WitnessResult(v, rep.tested, replay(tower, v))
