"""Finite-dimensional modules over a bound quiver algebra as representations."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .exactlin import Field, kernel_basis, quotient_maps, rank, row_space, solve
from .quiveralg import AlgebraError, BoundQuiverAlgebra, Path

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


class Representation:
    """Vertex spaces k^{d_v} with one matrix (target dim x source dim) per arrow."""

    def __init__(self, alg: BoundQuiverAlgebra, dims: Sequence[int], maps: Sequence[np.ndarray],
                 check: bool = True):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        F = alg.field
        self.maps = [F.array(m, (self.dims[a.target], self.dims[a.source]))
                     if not isinstance(m, np.ndarray) else m
                     for m, a in zip(maps, alg.quiver.arrows)]
        if len(self.dims) != alg.n or len(self.maps) != len(alg.quiver.arrows):
            raise AlgebraError("dimension vector or arrow list has the wrong length")
        self._paths: dict[Path, np.ndarray] = {}
        self.components: list[Representation] | None = None
        if check:
            self.validate()

    @property
    def F(self) -> Field:
        return self.alg.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def validate(self) -> None:
        for m, a in zip(self.maps, self.alg.quiver.arrows):
            if m.shape != (self.dims[a.target], self.dims[a.source]):
                raise AlgebraError(f"arrow {a.name}: matrix shape {m.shape} does not match dims")
        for rel in self.alg.relations:
            s, t = rel[0][1].source, rel[0][1].target
            acc = self.F.zeros(self.dims[t], self.dims[s])
            for c, p in rel:
                acc = self.F.add(acc, self.F.scal(c, self.path_matrix(p)))
            if not self.F.is_zero(acc):
                raise AlgebraError("representation violates a relation "
                                   + " + ".join(self.alg.quiver.path_name(p) for _, p in rel))

    def path_matrix(self, p: Path) -> np.ndarray:
        m = self._paths.get(p)
        if m is None:
            m = self.F.eye(self.dims[p.source])
            for a in p.arrows:
                m = self.F.mul(self.maps[a], m)
            self._paths[p] = m
        return m

    def __repr__(self) -> str:
        return f"<Representation dims={self.dims}>"


class ProjModule(Representation):
    """Direct sum of indecomposable projectives P(v_1) + ... + P(v_m).

    The basis at w is indexed by pairs (summand a, residue path v_a -> w),
    summand-major; ``gen_pos[a]`` locates the generator e_{v_a} of summand a.
    """

    def __init__(self, alg: BoundQuiverAlgebra, summands: Sequence[int]):
        self.summands = tuple(int(v) for v in summands)
        F = alg.field
        n = alg.n
        self.coords: list[list[tuple[int, Path]]] = [[] for _ in range(n)]
        for a, v in enumerate(self.summands):
            for w in range(n):
                self.coords[w].extend((a, p) for p in alg.basis(v, w))
        self.pos = [{c: i for i, c in enumerate(self.coords[w])} for w in range(n)]
        self.gen_pos = [self.pos[v][(a, Path(v, v, ()))] for a, v in enumerate(self.summands)]
        dims = [len(c) for c in self.coords]
        maps = []
        for b, ar in enumerate(alg.quiver.arrows):
            m = F.zeros(dims[ar.target], dims[ar.source])
            for j, (a, p) in enumerate(self.coords[ar.source]):
                for q, c in alg.continue_by(p, b).items():
                    m[self.pos[ar.target][(a, q)], j] = c
            maps.append(m)
        super().__init__(alg, dims, maps, check=False)

    def __repr__(self) -> str:
        return "<ProjModule " + "+".join(f"P({self.alg.label(v)})" for v in self.summands) + ">"


class ModuleMorphism:
    def __init__(self, source: Representation, target: Representation, mats: Sequence[np.ndarray],
                 check: bool = False):
        self.source = source
        self.target = target
        self.mats = list(mats)
        if check:
            self.validate()

    @property
    def F(self) -> Field:
        return self.source.F

    def validate(self) -> None:
        F = self.F
        for v, m in enumerate(self.mats):
            if m.shape != (self.target.dims[v], self.source.dims[v]):
                raise AlgebraError(f"morphism block at vertex {v} has shape {m.shape}")
        for b, ar in enumerate(self.source.alg.quiver.arrows):
            lhs = F.mul(self.mats[ar.target], self.source.maps[b])
            rhs = F.mul(self.target.maps[b], self.mats[ar.source])
            if not F.equal(lhs, rhs):
                raise AlgebraError(f"morphism does not commute with arrow {ar.name}")

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self o other."""
        return ModuleMorphism(other.source, self.target,
                              [self.F.mul(a, b) for a, b in zip(self.mats, other.mats)])

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target,
                              [self.F.add(a, b) for a, b in zip(self.mats, other.mats)])

    def scaled(self, c) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, [self.F.scal(c, a) for a in self.mats])

    def is_zero(self) -> bool:
        return all(self.F.is_zero(m) for m in self.mats)

    def is_iso(self) -> bool:
        return all(m.shape[0] == m.shape[1] and rank(m, self.F) == m.shape[0] for m in self.mats)

    def flat(self) -> np.ndarray:
        """All blocks concatenated row-major into one column vector."""
        parts = [m.reshape(-1, 1) for m in self.mats]
        return np.vstack(parts) if parts else self.F.zeros(0, 1)


def identity(M: Representation) -> ModuleMorphism:
    return ModuleMorphism(M, M, [M.F.eye(d) for d in M.dims])


def zero_map(M: Representation, N: Representation) -> ModuleMorphism:
    return ModuleMorphism(M, N, [M.F.zeros(N.dims[v], M.dims[v]) for v in range(M.alg.n)])


def zero_module(alg: BoundQuiverAlgebra) -> Representation:
    return Representation(alg, [0] * alg.n, [alg.field.zeros(0, 0) for _ in alg.quiver.arrows])


def simple(alg: BoundQuiverAlgebra, v: int) -> Representation:
    dims = [1 if w == v else 0 for w in range(alg.n)]
    return Representation(alg, dims, [alg.field.zeros(dims[a.target], dims[a.source])
                                      for a in alg.quiver.arrows])


def injective(alg: BoundQuiverAlgebra, v: int) -> Representation:
    """I(v) = D(e_v A): at w the dual of the residue paths w -> v."""
    F = alg.field
    dims = [len(alg.basis(w, v)) for w in range(alg.n)]
    maps = []
    for b, ar in enumerate(alg.quiver.arrows):
        src = {p: j for j, p in enumerate(alg.basis(ar.source, v))}
        m = F.zeros(dims[ar.target], dims[ar.source])
        for i, q in enumerate(alg.basis(ar.target, v)):
            full = Path(ar.source, v, (b,) + q.arrows)
            for p, c in alg.reduce(full).items():
                m[i, src[p]] = c
        maps.append(m)
    return Representation(alg, dims, maps)


def direct_sum(mods: Sequence[Representation]) -> tuple[Representation, list[ModuleMorphism], list[ModuleMorphism]]:
    """Direct sum with its canonical inclusions and projections."""
    alg = mods[0].alg
    F = alg.field
    if all(isinstance(M, ProjModule) or M.is_zero() for M in mods):
        S: Representation = ProjModule(alg, [v for M in mods for v in getattr(M, "summands", ())])
    else:
        dims = [sum(M.dims[v] for M in mods) for v in range(alg.n)]
        maps = []
        for b, ar in enumerate(alg.quiver.arrows):
            maps.append(F.block([[M.maps[b] if i == j else F.zeros(M.dims[ar.target], N.dims[ar.source])
                                  for j, N in enumerate(mods)] for i, M in enumerate(mods)]))
        S = Representation(alg, dims, maps, check=False)
    S.components = [c for M in mods for c in (M.components or [M])]
    incs, projs = [], []
    off = [0] * alg.n
    for M in mods:
        inc, pr = [], []
        for v in range(alg.n):
            e = F.zeros(S.dims[v], M.dims[v])
            for i in range(M.dims[v]):
                e[off[v] + i, i] = 1
            inc.append(e)
            pr.append(e.T.copy())
            off[v] += M.dims[v]
        incs.append(ModuleMorphism(M, S, inc))
        projs.append(ModuleMorphism(S, M, pr))
    return S, incs, projs


def hom_system(M: Representation, N: Representation) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Linear system whose kernel is Hom(M, N) in flattened per-vertex coordinates."""
    if M.alg is not N.alg:
        raise AlgebraError("modules over different algebras")
    F = M.F
    alg = M.alg
    layout, off = [], 0
    for v in range(alg.n):
        layout.append((off, N.dims[v], M.dims[v]))
        off += N.dims[v] * M.dims[v]
    blocks = []
    for b, ar in enumerate(alg.quiver.arrows):
        s, t = ar.source, ar.target
        rows = N.dims[t] * M.dims[s]
        if rows == 0:
            continue
        eq = F.zeros(rows, off)
        o_t, nt, mt = layout[t]
        o_s, ns, ms = layout[s]
        if nt * mt:
            eq[:, o_t:o_t + nt * mt] = F.add(eq[:, o_t:o_t + nt * mt],
                                              F._red(np.kron(F.eye(nt), M.maps[b].T)))
        if ns * ms:
            eq[:, o_s:o_s + ns * ms] = F.sub(eq[:, o_s:o_s + ns * ms],
                                              F._red(np.kron(N.maps[b], F.eye(ms))))
        blocks.append(eq)
    sysm = np.vstack(blocks) if blocks else F.zeros(0, off)
    return sysm, layout


def unflatten(M: Representation, N: Representation, vec: np.ndarray,
              layout: list[tuple[int, int, int]]) -> ModuleMorphism:
    mats = [vec[o:o + r * c].reshape(r, c).copy() for o, r, c in layout]
    return ModuleMorphism(M, N, mats)


def hom_basis(M: Representation, N: Representation) -> list[ModuleMorphism]:
    """Basis of Hom(M, N) from the null space of the intertwining system."""
    sysm, layout = hom_system(M, N)
    ker = kernel_basis(sysm, M.F)
    return [unflatten(M, N, ker[:, j], layout) for j in range(ker.shape[1])]


def hom_from_projective(P: ProjModule, N: Representation, gens: Sequence[np.ndarray]) -> ModuleMorphism:
    """The unique map P -> N sending generator a to gens[a] (a vector in N_{v_a})."""
    F = N.F
    mats = [F.zeros(N.dims[w], P.dims[w]) for w in range(P.alg.n)]
    ys = [np.asarray(g).reshape(-1, 1) for g in gens]
    for w in range(P.alg.n):
        if not N.dims[w]:
            continue
        for j, (a, p) in enumerate(P.coords[w]):
            y = ys[a]
            if not y.shape[0] or F.is_zero(y):
                continue
            mats[w][:, j:j + 1] = y if not p.arrows else F.mul(N.path_matrix(p), y)
    return ModuleMorphism(P, N, mats)


def generator_images(f: ModuleMorphism) -> list[np.ndarray]:
    P = f.source
    assert isinstance(P, ProjModule)
    return [f.mats[v][:, P.gen_pos[a]].reshape(-1, 1) for a, v in enumerate(P.summands)]


def gen_pullback(d: ModuleMorphism, N: Representation) -> np.ndarray:
    """Matrix of Hom(P, N) -> Hom(P', N), f -> f o d, for d : P' -> P between
    projective sums, in generator-image coordinates (summand-major)."""
    Pp, P = d.source, d.target
    assert isinstance(Pp, ProjModule) and isinstance(P, ProjModule)
    F = N.F
    col_off = np.cumsum([0] + [N.dims[v] for v in P.summands])
    row_off = np.cumsum([0] + [N.dims[v] for v in Pp.summands])
    out = F.zeros(int(row_off[-1]), int(col_off[-1]))
    for b, vb in enumerate(Pp.summands):
        if N.dims[vb] == 0:
            continue
        col = d.mats[vb][:, Pp.gen_pos[b]]
        for i, c in enumerate(col):
            if c == 0:
                continue
            a, p = P.coords[vb][i]
            if N.dims[P.summands[a]] == 0:
                continue
            blk = out[row_off[b]:row_off[b + 1], col_off[a]:col_off[a + 1]]
            out[row_off[b]:row_off[b + 1], col_off[a]:col_off[a + 1]] = F.add(
                blk, F.scal(c, N.path_matrix(p)))
    return out


# sub- and quotient representations

def subrep(M: Representation, spans: Sequence[np.ndarray]) -> tuple[Representation, ModuleMorphism]:
    """Subrepresentation spanned per vertex by the given columns, with inclusion."""
    F = M.F
    bases, pivs = [], []
    for v, s in enumerate(spans):
        if s.shape[1] == 0:
            bases.append(F.zeros(M.dims[v], 0))
            pivs.append([])
            continue
        r, piv = row_space(s.T, F)
        bases.append(r.T.copy())
        pivs.append(piv)
    maps = []
    for b, ar in enumerate(M.alg.quiver.arrows):
        img = F.mul(M.maps[b], bases[ar.source])
        c = img[pivs[ar.target], :] if pivs[ar.target] else F.zeros(0, img.shape[1])
        if not F.equal(F.mul(bases[ar.target], c), img):
            raise AlgebraError("subspaces are not closed under the arrows")
        maps.append(c)
    S = Representation(M.alg, [b.shape[1] for b in bases], maps, check=False)
    return S, ModuleMorphism(S, M, bases)


def quotient(M: Representation, spans: Sequence[np.ndarray]) -> tuple[Representation, ModuleMorphism]:
    """M / U for a subrepresentation U given by spanning columns, with projection."""
    F = M.F
    qs, ss = [], []
    for v, s in enumerate(spans):
        q, sec = quotient_maps(s, F)
        qs.append(q)
        ss.append(sec)
    maps = [F.mul(qs[ar.target], M.maps[b], ss[ar.source])
            for b, ar in enumerate(M.alg.quiver.arrows)]
    Q = Representation(M.alg, [q.shape[0] for q in qs], maps, check=False)
    proj = ModuleMorphism(M, Q, qs)
    proj.section = ss  # type: ignore[attr-defined]
    return Q, proj


def kernel(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    return subrep(f.source, [kernel_basis(m, f.F) for m in f.mats])


def image(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    return subrep(f.target, f.mats)


def cokernel(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    return quotient(f.target, f.mats)


def radical_spans(M: Representation) -> list[np.ndarray]:
    F = M.F
    spans = []
    for v in range(M.alg.n):
        cols = [M.maps[b] for b, ar in enumerate(M.alg.quiver.arrows) if ar.target == v]
        spans.append(np.hstack(cols) if cols else F.zeros(M.dims[v], 0))
    return spans


def top(M: Representation) -> tuple[Representation, ModuleMorphism]:
    return quotient(M, radical_spans(M))


def projective_cover(M: Representation) -> tuple[ProjModule, ModuleMorphism]:
    """Minimal projective cover: one summand P(v) per basis vector of top(M)_v."""
    T, q = top(M)
    summands, gens = [], []
    for v in range(M.alg.n):
        sec = q.section[v]  # type: ignore[attr-defined]
        for j in range(sec.shape[1]):
            summands.append(v)
            gens.append(sec[:, j:j + 1])
    P = ProjModule(M.alg, summands)
    return P, hom_from_projective(P, M, gens)


@dataclass
class Resolution:
    """0 -> P_len -> ... -> P_0 -> M, with diffs[k] : P_{k+1} -> P_k."""
    module: Representation
    terms: list[ProjModule]
    diffs: list[ModuleMorphism]
    augmentation: ModuleMorphism | None = field(default=None)

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)


def projective_resolution(M: Representation, maxlen: int = 64) -> Resolution:
    if M.is_zero():
        return Resolution(M, [], [], None)
    P, eps = projective_cover(M)
    terms, diffs = [P], []
    K, inc = kernel(eps)
    while not K.is_zero():
        if len(terms) > maxlen:
            raise AlgebraError(f"projective resolution longer than {maxlen}")
        P1, e1 = projective_cover(K)
        diffs.append(inc.compose(e1))
        terms.append(P1)
        K, inc = kernel(e1)
    return Resolution(M, terms, diffs, eps)


def ext_dim(M: Representation, N: Representation, i: int) -> int:
    """dim Ext^i(M, N) as cohomology of Hom(P(M), N)."""
    if i < 0:
        return 0
    res = projective_resolution(M)
    if i >= len(res.terms):
        return 0
    F = M.F

    def width(k: int) -> int:
        return sum(N.dims[v] for v in res.terms[k].summands) if 0 <= k < len(res.terms) else 0

    def rk(k: int) -> int:
        # rank of Hom(P_k, N) -> Hom(P_{k+1}, N)
        if k < 0 or k + 1 >= len(res.terms):
            return 0
        m = gen_pullback(res.diffs[k], N)
        return rank(m, F) if m.size else 0

    return width(i) - rk(i) - rk(i - 1)


def trace(T: Representation, M: Representation) -> tuple[Representation, ModuleMorphism]:
    """Sum of the images of all maps T -> M, with inclusion into M."""
    F = M.F
    homs = hom_basis(T, M)
    spans = [np.hstack([f.mats[v] for f in homs]) if homs else F.zeros(M.dims[v], 0)
             for v in range(M.alg.n)]
    return subrep(M, spans)


def _combination(basis: Sequence[ModuleMorphism], coeffs: Sequence[int]) -> ModuleMorphism:
    f = basis[0].scaled(coeffs[0])
    for g, c in zip(basis[1:], coeffs[1:]):
        f = f + g.scaled(c)
    return f


def find_invertible(basis: Sequence[ModuleMorphism], max_exhaustive: int = 6) -> ModuleMorphism | None:
    """An invertible element of span(basis), if the search finds one.

    Tries the combination with distinct prime coefficients first, then an
    exhaustive search over small coefficients.
    """
    if not basis:
        return None
    F = basis[0].F
    primes = [F.scalar(p) for p in _PRIMES[:len(basis)]] if len(basis) <= len(_PRIMES) else None
    if primes and all(p != 0 for p in primes):
        f = _combination(basis, primes)
        if f.is_iso():
            return f
    if len(basis) <= max_exhaustive:
        rng = (0, 1, -1, 2) if len(basis) <= 4 else (0, 1, -1)
        for coeffs in product(rng, repeat=len(basis)):
            if any(coeffs):
                f = _combination(basis, coeffs)
                if f.is_iso():
                    return f
    rs = np.random.default_rng(12345)
    for _ in range(64):
        f = _combination(basis, [int(x) for x in rs.integers(-50, 50, len(basis))])
        if f.is_iso():
            return f
    return None


def is_isomorphic(M: Representation, N: Representation) -> bool:
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    return find_invertible(hom_basis(M, N)) is not None


def in_add(M: Representation, T: Representation) -> bool:
    """M in add(T) iff 1_M lies in the span of the composites M -> T -> M."""
    if M.is_zero():
        return True
    us = hom_basis(M, T)
    vs = hom_basis(T, M)
    if not us or not vs:
        return False
    F = M.F
    cols = [v.compose(u).flat() for u in us for v in vs]
    span = np.hstack(cols)
    return solve(span, identity(M).flat(), F) is not None


def dimension_vector(M: Representation) -> tuple[int, ...]:
    return M.dims
