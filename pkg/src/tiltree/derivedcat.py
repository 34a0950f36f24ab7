"""Bounded complexes, projective replacements and homotopy classes.

Complexes are cochain complexes, d^i : X^i -> X^{i+1}. Shift follows
X[k]^i = X^{i+k} with differential (-1)^k d. Every DObject carries a minimal
bounded complex of projectives (``proj``); all derived Homs, cones and
truncations act on these.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .exactlin import Field, inverse, kernel_basis, rank, rref, solve
from .modcat import (ModuleMorphism, ProjModule, Representation, gen_pullback, hom_basis,
                     hom_from_projective, identity, kernel, projective_cover, quotient,
                     zero_map, zero_module, find_invertible)
from .quiveralg import AlgebraError, BoundQuiverAlgebra, Path, require_gldim

SUPPORT_BOUND = 64


class SupportError(AlgebraError):
    pass


class Complex:
    """Bounded complex; zero terms at either end are trimmed."""

    def __init__(self, alg: BoundQuiverAlgebra, terms: Mapping[int, Representation],
                 diffs: Mapping[int, ModuleMorphism] | None = None, check: bool = False):
        self.alg = alg
        nz = sorted(i for i, M in terms.items() if not M.is_zero())
        self.lo, self.hi = (nz[0], nz[-1]) if nz else (0, -1)
        if nz and (self.lo < -SUPPORT_BOUND or self.hi > SUPPORT_BOUND):
            raise SupportError(f"support [{self.lo}, {self.hi}] outside [-{SUPPORT_BOUND}, {SUPPORT_BOUND}]")
        self.terms = {i: terms[i] if i in terms else zero_module(alg) for i in range(self.lo, self.hi + 1)}
        diffs = diffs or {}
        self.diffs = {i: diffs[i] if i in diffs else zero_map(self.terms[i], self.terms[i + 1])
                      for i in range(self.lo, self.hi)}
        self._zero = zero_module(alg)
        if check:
            self.validate()

    @property
    def F(self) -> Field:
        return self.alg.field

    def term(self, i: int) -> Representation:
        return self.terms.get(i, self._zero)

    def diff(self, i: int) -> ModuleMorphism:
        if i in self.diffs:
            return self.diffs[i]
        return zero_map(self.term(i), self.term(i + 1))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return self.hi < self.lo

    def is_projective(self) -> bool:
        return all(isinstance(M, ProjModule) for M in self.terms.values())

    def validate(self) -> None:
        for i, d in self.diffs.items():
            d.validate()
            if i + 1 in self.diffs and not self.diffs[i + 1].compose(d).is_zero():
                raise AlgebraError(f"d o d != 0 at degree {i}")

    def euler_terms(self) -> int:
        return sum((-1) ** (i % 2) * M.dim for i, M in self.terms.items())

    def summands(self, i: int) -> tuple[int, ...]:
        M = self.term(i)
        return M.summands if isinstance(M, ProjModule) else ()

    def __repr__(self) -> str:
        return f"<Complex [{self.lo},{self.hi}] dims={[self.terms[i].dim for i in self.degrees()]}>"


class ChainMap:
    def __init__(self, source: Complex, target: Complex, maps: Mapping[int, ModuleMorphism]):
        self.source = source
        self.target = target
        self.maps = {i: m for i, m in maps.items()
                     if source.lo <= i <= source.hi and target.lo <= i <= target.hi}

    def at(self, i: int) -> ModuleMorphism:
        if i in self.maps:
            return self.maps[i]
        return zero_map(self.source.term(i), self.target.term(i))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other."""
        maps = {i: self.at(i).compose(other.at(i)) for i in other.source.degrees()
                if self.target.lo <= i <= self.target.hi}
        return ChainMap(other.source, self.target, maps)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {i: self.at(i) + other.at(i) for i in self.source.degrees()})

    def scaled(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {i: m.scaled(c) for i, m in self.maps.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def validate(self) -> None:
        for i in range(min(self.source.lo, self.target.lo) - 1, max(self.source.hi, self.target.hi) + 1):
            lhs = self.target.diff(i).compose(self.at(i))
            rhs = self.at(i + 1).compose(self.source.diff(i))
            for a, b in zip(lhs.mats, rhs.mats):
                if not self.source.F.equal(a, b):
                    raise AlgebraError(f"chain map does not commute at degree {i}")

    def is_iso(self) -> bool:
        """Termwise invertible (for minimal projective complexes: iso in D^b)."""
        if [self.source.term(i).dims for i in self.source.degrees()] != \
                [self.target.term(i).dims for i in self.target.degrees()] or \
                self.source.lo != self.target.lo:
            return False
        return all(self.at(i).is_iso() for i in self.source.degrees())


def identity_map(C: Complex) -> ChainMap:
    return ChainMap(C, C, {i: identity(M) for i, M in C.terms.items()})


def zero_chain_map(X: Complex, Y: Complex) -> ChainMap:
    return ChainMap(X, Y, {})


# basic constructions

def module_complex(M: Representation, degree: int = 0) -> Complex:
    return Complex(M.alg, {degree: M})


def shift_complex(C: Complex, k: int) -> Complex:
    if k == 0:
        return C
    sign = -1 if k % 2 else 1
    return Complex(C.alg, {i - k: M for i, M in C.terms.items()},
                   {i - k: (d.scaled(sign) if sign < 0 else d) for i, d in C.diffs.items()})


def shift_map(f: ChainMap, k: int, source: Complex | None = None, target: Complex | None = None) -> ChainMap:
    src = source or shift_complex(f.source, k)
    tgt = target or shift_complex(f.target, k)
    return ChainMap(src, tgt, {i - k: m for i, m in f.maps.items()})


def cone_complex(f: ChainMap) -> tuple[Complex, ChainMap, ChainMap]:
    """Cone(f)^i = X^{i+1} + Y^i, d = [[-d_X, 0], [f, d_Y]]; returns (cone, Y -> cone, cone -> X[1])."""
    X, Y = f.source, f.target
    alg, F = X.alg, X.F
    lo, hi = min(X.lo - 1, Y.lo), max(X.hi - 1, Y.hi)
    if X.is_zero():
        lo, hi = Y.lo, Y.hi
    if Y.is_zero():
        lo, hi = X.lo - 1, X.hi - 1
    terms, incY, prX = {}, {}, {}
    from .modcat import direct_sum
    parts = {}
    for i in range(lo, hi + 1):
        S, incs, projs = direct_sum([X.term(i + 1), Y.term(i)])
        terms[i] = S
        parts[i] = (incs, projs)
    diffs = {}
    for i in range(lo, hi):
        incs1, projs1 = parts[i + 1]
        incs0, projs0 = parts[i]
        dx = X.diff(i + 1).scaled(-1)
        m = incs1[0].compose(dx).compose(projs0[0])
        m = m + incs1[1].compose(f.at(i + 1)).compose(projs0[0])
        m = m + incs1[1].compose(Y.diff(i)).compose(projs0[1])
        diffs[i] = m
    cone = Complex(alg, terms, diffs)
    Xs = shift_complex(X, 1)
    inc = ChainMap(Y, cone, {i: parts[i][0][1] for i in Y.degrees() if i in parts})
    pr = ChainMap(cone, Xs, {i: parts[i][1][0] for i in range(lo, hi + 1) if i in parts})
    return cone, inc, pr


def minimize(C: Complex) -> tuple[Complex, ChainMap, ChainMap]:
    """Gaussian elimination of unit components of the differential.

    Returns (Cmin, f : C -> Cmin, g : Cmin -> C), mutually inverse homotopy
    equivalences; Cmin has differentials inside the radical.
    """
    if not C.is_projective():
        raise AlgebraError("minimize needs a complex of projectives")
    F = C.F
    cur = C
    fmaps = {i: identity(M) for i, M in C.terms.items()}
    gmaps = {i: identity(M) for i, M in C.terms.items()}
    while True:
        hit = _find_units(cur)
        if hit is None:
            break
        i, a, b = hit
        new, f_i, f_i1, g_i, g_i1 = _eliminate(cur, i, a, b)
        fmaps[i] = f_i.compose(fmaps[i])
        fmaps[i + 1] = f_i1.compose(fmaps[i + 1])
        gmaps[i] = gmaps[i].compose(g_i)
        gmaps[i + 1] = gmaps[i + 1].compose(g_i1)
        cur = new
    Cmin = Complex(C.alg, cur.terms, cur.diffs)
    f = ChainMap(C, Cmin, {i: fmaps[i] for i in Cmin.degrees()})
    g = ChainMap(Cmin, C, {i: gmaps[i] for i in Cmin.degrees()})
    return Cmin, f, g


def _find_units(C: Complex) -> tuple[int, list[int], list[int]] | None:
    """First degree whose differential has unit components, with a maximal
    set of summand pairs (sources a, targets b) whose unit block is invertible."""
    F = C.F
    for i in range(C.lo, C.hi):
        P, Q, d = C.terms[i], C.terms[i + 1], C.diffs[i]
        if not isinstance(P, ProjModule) or not isinstance(Q, ProjModule):
            continue
        U = F.zeros(len(Q.summands), len(P.summands))
        hit = False
        for a, v in enumerate(P.summands):
            col = d.mats[v][:, P.gen_pos[a]]
            for b, w in enumerate(Q.summands):
                if w == v and col[Q.gen_pos[b]] != 0:
                    U[b, a] = col[Q.gen_pos[b]]
                    hit = True
        if hit:
            _, cols = rref(U, F)
            _, rows = rref(U.T.copy(), F)
            return i, cols, rows
    return None


def _split(P: ProjModule, chosen: list[int], w: int) -> tuple[list[int], list[int]]:
    inside = [j for j, (s, _) in enumerate(P.coords[w]) if s in chosen]
    rest = [j for j, (s, _) in enumerate(P.coords[w]) if s not in chosen]
    return inside, rest


def _eliminate(C: Complex, i: int, a: list[int], b: list[int]):
    F, alg = C.F, C.alg
    P, Q = C.terms[i], C.terms[i + 1]
    Pr = ProjModule(alg, [v for k, v in enumerate(P.summands) if k not in a])
    Qr = ProjModule(alg, [v for k, v in enumerate(Q.summands) if k not in b])
    d = C.diffs[i]
    new_d, f_i, f_i1, g_i, g_i1 = [], [], [], [], []
    for w in range(alg.n):
        pb0, pc = _split(P, a, w)
        qb1, qd = _split(Q, b, w)
        m = d.mats[w]
        alpha = m[np.ix_(qb1, pb0)]
        delta = m[np.ix_(qb1, pc)]
        gamma = m[np.ix_(qd, pb0)]
        eps = m[np.ix_(qd, pc)]
        ainv = inverse(alpha, F) if alpha.size else F.zeros(0, 0)
        ga = F.mul(gamma, ainv)
        new_d.append(F.sub(eps, F.mul(ga, delta)))
        fi = F.zeros(len(pc), P.dims[w])
        fi[np.arange(len(pc)), pc] = 1
        f_i.append(fi)
        fi1 = F.zeros(len(qd), Q.dims[w])
        fi1[np.arange(len(qd)), qd] = 1
        if qb1 and qd:
            fi1[np.ix_(range(len(qd)), qb1)] = F.neg(ga)
        f_i1.append(fi1)
        gi = F.zeros(P.dims[w], len(pc))
        gi[pc, np.arange(len(pc))] = 1
        if pb0 and pc:
            gi[np.ix_(pb0, range(len(pc)))] = F.neg(F.mul(ainv, delta))
        g_i.append(gi)
        gi1 = F.zeros(Q.dims[w], len(qd))
        gi1[qd, np.arange(len(qd))] = 1
        g_i1.append(gi1)
    terms = dict(C.terms)
    terms[i], terms[i + 1] = Pr, Qr
    diffs = dict(C.diffs)
    diffs[i] = ModuleMorphism(Pr, Qr, new_d)
    if i - 1 in diffs:
        old = diffs[i - 1]
        diffs[i - 1] = ModuleMorphism(old.source, Pr,
                                      [old.mats[w][_split(P, a, w)[1], :] for w in range(alg.n)])
    if i + 1 in diffs:
        old = diffs[i + 1]
        diffs[i + 1] = ModuleMorphism(Qr, old.target,
                                      [old.mats[w][:, _split(Q, b, w)[1]] for w in range(alg.n)])
    new = _RawComplex(alg, terms, diffs)
    return (new, ModuleMorphism(P, Pr, f_i), ModuleMorphism(Q, Qr, f_i1),
            ModuleMorphism(Pr, P, g_i), ModuleMorphism(Qr, Q, g_i1))


class _RawComplex(Complex):
    """Untrimmed intermediate used during elimination."""

    def __init__(self, alg, terms, diffs):
        self.alg = alg
        self.terms = terms
        self.diffs = diffs
        ks = sorted(terms)
        self.lo, self.hi = (ks[0], ks[-1]) if ks else (0, -1)
        self._zero = zero_module(alg)


# cohomology

def cohomology_complex(C: Complex, i: int) -> Representation:
    """ker d^i / im d^{i-1} as a representation."""
    M = C.term(i)
    if M.is_zero():
        return zero_module(C.alg)
    K, inc = kernel(C.diff(i))
    F = C.F
    spans = []
    for v in range(C.alg.n):
        b = C.diff(i - 1).mats[v]
        if b.shape[1] == 0 or inc.mats[v].shape[1] == 0:
            spans.append(F.zeros(K.dims[v], 0))
            continue
        c = solve(inc.mats[v], b, F)
        if c is None:
            raise AlgebraError("d o d != 0 while computing cohomology")
        spans.append(c)
    H, _ = quotient(K, spans)
    return H


def cohomology_dims(C: Complex) -> dict[int, tuple[int, ...]]:
    """Nonzero cohomology dimension vectors by degree (rank computations only)."""
    F = C.F
    out = {}
    for i in C.degrees():
        dims = []
        for v in range(C.alg.n):
            n = C.term(i).dims[v]
            r_out = rank(C.diff(i).mats[v], F) if n and C.term(i + 1).dims[v] else 0
            din = C.diff(i - 1).mats[v]
            r_in = rank(din, F) if din.size else 0
            dims.append(n - r_out - r_in)
        if any(dims):
            out[i] = tuple(dims)
    return out


# objects of D^b

class DObject:
    """An object of D^b(A): a presentation with its minimal projective replacement."""

    def __init__(self, proj: Complex, presentation: Complex | None = None,
                 quasi: ChainMap | None = None, label: str = ""):
        self.proj = proj
        self.presentation = presentation if presentation is not None else proj
        self.quasi = quasi if quasi is not None else identity_map(proj)
        self.label = label
        self._hdims: dict[int, tuple[int, ...]] | None = None

    @property
    def alg(self) -> BoundQuiverAlgebra:
        return self.proj.alg

    def is_zero(self) -> bool:
        return self.proj.is_zero()

    def cohomology_dims(self) -> dict[int, tuple[int, ...]]:
        if self._hdims is None:
            self._hdims = cohomology_dims(self.proj)
        return self._hdims

    def total_dim(self) -> int:
        return sum(sum(d) for d in self.cohomology_dims().values())

    def euler(self) -> int:
        return sum((-1) ** (i % 2) * sum(d) for i, d in self.cohomology_dims().items())

    def shape(self) -> tuple:
        """Summand multiset of each term of the minimal complex (an iso invariant)."""
        return tuple((i, tuple(sorted(self.proj.summands(i)))) for i in self.proj.degrees())

    def __repr__(self) -> str:
        nm = f" {self.label}" if self.label else ""
        return f"<DObject{nm} H={self.cohomology_dims()}>"


def from_projective_complex(P: Complex, label: str = "") -> tuple[DObject, ChainMap, ChainMap]:
    Pm, f, g = minimize(P)
    return DObject(Pm, label=label), f, g


def projectivize(x: Complex, label: str = "") -> DObject:
    """Projective replacement p -> x built degree by degree from the top.

    At each step the kernel of the partial cone modulo boundaries of x is
    covered by a projective, which extends both p and the comparison map.
    """
    alg = x.alg
    require_gldim(alg)
    if x.is_projective():
        Pm, f, g = minimize(x)
        return DObject(Pm, x, g, label)
    F = alg.field
    p_terms: dict[int, ProjModule] = {}
    p_diffs: dict[int, ModuleMorphism] = {}
    phi: dict[int, ModuleMorphism] = {}
    zeroP = ProjModule(alg, ())
    n = x.hi
    while True:
        if n < -SUPPORT_BOUND - 1:
            raise SupportError("projective replacement runs past the support bound")
        pn1 = p_terms.get(n + 1, zeroP)
        Cn = x.term(n)
        # d_M : p^{n+1} + C^n -> p^{n+2} + C^{n+1}
        pn2 = p_terms.get(n + 2, zeroP)
        Cn1 = x.term(n + 1)
        mats = []
        for w in range(alg.n):
            dp = p_diffs[n + 1].mats[w] if n + 1 in p_diffs else F.zeros(pn2.dims[w], pn1.dims[w])
            ph = phi[n + 1].mats[w] if n + 1 in phi else F.zeros(Cn1.dims[w], pn1.dims[w])
            mats.append(F.block([[F.neg(dp), F.zeros(pn2.dims[w], Cn.dims[w])],
                                 [ph, x.diff(n).mats[w]]]))
        from .modcat import direct_sum
        Mn, _, _ = direct_sum([pn1, Cn])
        Mn1, _, _ = direct_sum([pn2, Cn1])
        K, inc = kernel(ModuleMorphism(Mn, Mn1, mats))
        if K.is_zero() and n < x.lo:
            break
        spans = []
        dprev = x.diff(n - 1)
        for w in range(alg.n):
            b = F.block([[F.zeros(pn1.dims[w], dprev.mats[w].shape[1])], [dprev.mats[w]]])
            if b.shape[1] == 0 or K.dims[w] == 0:
                spans.append(F.zeros(K.dims[w], 0))
                continue
            c = solve(inc.mats[w], b, F)
            if c is None:
                raise AlgebraError("boundary not inside the kernel while projectivizing")
            spans.append(c)
        Qt, q = quotient(K, spans)
        P, eps = projective_cover(Qt)
        gens = []
        for a, v in enumerate(P.summands):
            y = eps.mats[v][:, P.gen_pos[a]].reshape(-1, 1)
            gens.append(F.mul(inc.mats[v], q.section[v], y))  # type: ignore[attr-defined]
        psi = hom_from_projective(P, Mn, gens)
        top = [psi.mats[w][:pn1.dims[w], :] for w in range(alg.n)]
        bot = [psi.mats[w][pn1.dims[w]:, :] for w in range(alg.n)]
        if not P.is_zero():
            p_terms[n] = P
            p_diffs[n] = ModuleMorphism(P, pn1, [F.neg(t) for t in top])
            phi[n] = ModuleMorphism(P, Cn, bot)
        n -= 1
    pc = Complex(alg, p_terms, {i: d for i, d in p_diffs.items() if i + 1 in p_terms})
    comp = ChainMap(pc, x, phi)
    Pm, f, g = minimize(pc)
    return DObject(Pm, x, comp.compose(g), label)


def module_object(M: Representation, degree: int = 0, label: str = "") -> DObject:
    return projectivize(module_complex(M, degree), label)


def shift(x: DObject, k: int) -> DObject:
    if k == 0:
        return x
    P = shift_complex(x.proj, k)
    pres = shift_complex(x.presentation, k)
    return DObject(P, pres, shift_map(x.quasi, k, P, pres),
                   f"{x.label}[{k}]" if x.label else "")


@dataclass
class Triangle:
    """A -u-> B -v-> C -w-> A[1], maps between minimal projective complexes."""
    A: DObject
    B: DObject
    C: DObject
    u: ChainMap
    v: ChainMap
    w: ChainMap


def cone(f: ChainMap, source: DObject | None = None, target: DObject | None = None) -> Triangle:
    """Mapping cone of f : A.proj -> B.proj with canonical maps, minimized."""
    A = source or DObject(f.source)
    B = target or DObject(f.target)
    raw, inc, pr = cone_complex(f)
    Cm, fm, gm = minimize(raw)
    C = DObject(Cm)
    A1 = shift_complex(A.proj, 1)
    w = ChainMap(Cm, A1, pr.compose(gm).maps)
    return Triangle(A, B, C, f, fm.compose(inc), w)


def cohomology(x: DObject, i: int) -> Representation:
    return cohomology_complex(x.proj, i)


def smart_truncate(x: DObject, k: int) -> tuple[DObject, DObject, Triangle]:
    """delta^{<=k} x -> x -> delta^{>=k+1} x with the third term a cone."""
    P = x.proj
    if P.is_zero() or P.hi <= k:
        le, u = x, identity_map(P)
    elif all(i > k for i in x.cohomology_dims()):
        # nothing in degrees <= k
        zero = Complex(x.alg, {})
        le, u = DObject(zero), zero_chain_map(zero, P)
    else:
        Z, zinc = kernel(P.diff(k))
        terms = {i: P.terms[i] for i in range(P.lo, k)}
        terms[k] = Z
        diffs = {i: P.diffs[i] for i in range(P.lo, k - 1)}
        if k - 1 >= P.lo:
            d = P.diffs[k - 1]
            diffs[k - 1] = ModuleMorphism(d.source, Z, [
                solve(zinc.mats[w], d.mats[w], x.alg.field) if d.mats[w].size and zinc.mats[w].shape[1]
                else x.alg.field.zeros(Z.dims[w], d.mats[w].shape[1]) for w in range(x.alg.n)])
        t = Complex(x.alg, terms, diffs)
        incl = ChainMap(t, P, {i: identity(P.terms[i]) for i in range(P.lo, k)} | {k: zinc})
        obj = projectivize(t)
        le, u = DObject(obj.proj), incl.compose(obj.quasi)
    tri = cone(u, le, x)
    return le, tri.C, tri


# Hom spaces

def hom_complex_layout(P: Complex, Y: Complex, p: int) -> list[tuple[int, int, int, int]]:
    """(degree i, summand a, offset, width) for Hom^p(P, Y) in generator coordinates."""
    out, off = [], 0
    for i in P.degrees():
        T = Y.term(i + p)
        for a, v in enumerate(P.summands(i)):
            w = T.dims[v]
            out.append((i, a, off, w))
            off += w
    return out


def hom_differential(P: Complex, Y: Complex, p: int) -> tuple[np.ndarray, list, list]:
    """Matrix of D : Hom^p(P, Y) -> Hom^{p+1}(P, Y), D f = d_Y f - (-1)^p f d_P."""
    F = P.F
    src = hom_complex_layout(P, Y, p)
    dst = hom_complex_layout(P, Y, p + 1)
    ns = sum(w for *_, w in src)
    nd = sum(w for *_, w in dst)
    D = F.zeros(nd, ns)
    s_at = {(i, a): (o, w) for i, a, o, w in src}
    d_at = {(i, a): (o, w) for i, a, o, w in dst}
    sign = -1 if p % 2 else 1
    for i in P.degrees():
        summ = P.summands(i)
        dY = Y.diff(i + p)
        for a, v in enumerate(summ):
            ro, rw = d_at[(i, a)]
            so, sw = s_at[(i, a)]
            if rw and sw:
                D[ro:ro + rw, so:so + sw] = F.add(D[ro:ro + rw, so:so + sw], dY.mats[v])
        if i + 1 <= P.hi and i in P.diffs:
            pb = gen_pullback(P.diffs[i], Y.term(i + 1 + p))
            if pb.size:
                ro0 = d_at[(i, 0)][0] if summ else 0
                so0 = s_at[(i + 1, 0)][0] if P.summands(i + 1) else 0
                blk = D[ro0:ro0 + pb.shape[0], so0:so0 + pb.shape[1]]
                D[ro0:ro0 + pb.shape[0], so0:so0 + pb.shape[1]] = F.sub(blk, F.scal(sign, pb))
    return D, src, dst


def _cmap_from_vector(P: Complex, Y: Complex, p: int, vec: np.ndarray, layout, target: Complex) -> ChainMap:
    maps = {}
    for i in P.degrees():
        gens = [vec[o:o + w].reshape(-1, 1) for (j, a, o, w) in layout if j == i]
        T = Y.term(i + p)
        if T.is_zero():
            continue
        Pi = P.terms[i]
        assert isinstance(Pi, ProjModule)
        maps[i] = hom_from_projective(Pi, T, gens)
    return ChainMap(P, target, maps)


def homotopy_classes(P: Complex, Y: Complex, p: int, reps: bool = True) -> tuple[int, list[ChainMap]]:
    """dim Hom_K(P, Y[p]) for P bounded projective, with canonical representatives."""
    F = P.F
    D, src, _ = hom_differential(P, Y, p)
    n = sum(w for *_, w in src)
    if n == 0:
        return 0, []
    Dm, _, _ = hom_differential(P, Y, p - 1)
    r_out = rank(D, F) if D.size else 0
    r_in = rank(Dm, F) if Dm.size else 0
    dim = n - r_out - r_in
    if not reps or dim == 0:
        return dim, []
    Z = kernel_basis(D, F) if D.shape[0] else F.eye(n)
    B = Dm if Dm.size else F.zeros(n, 0)
    _, piv = rref(F.block([[B, Z]]), F) if B.shape[1] else rref(Z, F)
    off = B.shape[1]
    chosen = [c - off for c in piv if c >= off]
    target = shift_complex(Y, p)
    out = [_cmap_from_vector(P, Y, p, Z[:, j], src, target) for j in chosen]
    assert len(out) == dim
    return dim, out


def derived_hom_dims(x: DObject, y: DObject, degrees: Iterable[int]) -> dict[int, int]:
    return {j: homotopy_classes(x.proj, y.proj, j, reps=False)[0] for j in degrees}


def derived_hom_basis(x: DObject, y: DObject, i: int) -> tuple[int, list[ChainMap]]:
    """Hom_D(x, y[i]) via module-hom bases: cycles modulo null-homotopic maps.

    Independent of the generator-image route used by ``homotopy_classes``.
    """
    P, Y = x.proj, y.proj
    F = x.alg.field
    sign = -1 if i % 2 else 1

    def spaces(p):
        return {k: hom_basis(P.terms[k], Y.term(k + p)) for k in P.degrees()}

    def raw_layout(p):
        lay, off = {}, 0
        for k in P.degrees():
            n = sum(a * b for a, b in zip(P.terms[k].dims, Y.term(k + p).dims))
            lay[k] = (off, n)
            off += n
        return lay, off

    def d_of(f_by_deg: dict[int, ModuleMorphism], p: int, lay, total) -> np.ndarray:
        # (D f)^k = d_Y f^k - (-1)^p f^{k+1} d_P  in raw coordinates of degree p+1
        s = -1 if p % 2 else 1
        out = F.zeros(total, 1)
        for k in P.degrees():
            o, n = lay[k]
            if n == 0:
                continue
            acc = None
            if k in f_by_deg:
                acc = Y.diff(k + p).compose(f_by_deg[k]).flat()
            if k + 1 in f_by_deg and k in P.diffs:
                t = f_by_deg[k + 1].compose(P.diffs[k]).flat()
                t = F.scal(-s, t)
                acc = t if acc is None else F.add(acc, t)
            if acc is not None:
                out[o:o + n] = acc
        return out

    H_i = spaces(i)
    H_m = spaces(i - 1)
    lay_i, tot_i = raw_layout(i)
    lay_n, tot_n = raw_layout(i + 1)
    params = [(k, f) for k in P.degrees() for f in H_i[k]]
    if not params:
        return 0, []
    # cycle condition on parameters
    cols = [d_of({k: f}, i, lay_n, tot_n) for k, f in params]
    cyc_sys = np.hstack(cols) if tot_n else F.zeros(0, len(params))
    Zp = kernel_basis(cyc_sys, F) if cyc_sys.shape[0] else F.eye(len(params))
    embed = np.hstack([_embed(f, lay_i[k], tot_i, F) for k, f in params])
    Zraw = F.mul(embed, Zp) if Zp.shape[1] else F.zeros(tot_i, 0)
    hcols = [d_of({k: h}, i - 1, lay_i, tot_i) for k in P.degrees() for h in H_m[k]]
    Braw = np.hstack(hcols) if hcols else F.zeros(tot_i, 0)
    rb = rank(Braw, F) if Braw.shape[1] else 0
    rz = rank(Zraw, F) if Zraw.shape[1] else 0
    dim = rz - rb
    if dim == 0:
        return 0, []
    _, piv = rref(F.block([[Braw, Zraw]]), F)
    chosen = [c - Braw.shape[1] for c in piv if c >= Braw.shape[1]]
    target = shift_complex(Y, i)
    reps = []
    for j in chosen:
        coeffs = Zp[:, j]
        maps: dict[int, ModuleMorphism] = {}
        for (k, f), c in zip(params, coeffs):
            if c != 0:
                g = f.scaled(c)
                maps[k] = maps[k] + g if k in maps else g
        reps.append(ChainMap(P, target, maps))
    return dim, reps


def _embed(f: ModuleMorphism, slot: tuple[int, int], total: int, F: Field) -> np.ndarray:
    out = F.zeros(total, 1)
    o, n = slot
    if n:
        out[o:o + n] = f.flat()
    return out


def is_isomorphic_objects(x: DObject, y: DObject) -> bool:
    """Isomorphism in D^b: equal invariants and a termwise invertible chain map."""
    if x.cohomology_dims() != y.cohomology_dims() or x.shape() != y.shape():
        return False
    if x.is_zero():
        return True
    _, basis = homotopy_classes(x.proj, y.proj, 0)
    return _find_iso_chain_map(basis) is not None


def _find_iso_chain_map(basis: list[ChainMap]) -> ChainMap | None:
    if not basis:
        return None

    class _Wrap:
        def __init__(self, f):
            self.f = f
            self.F = f.source.F

        def scaled(self, c):
            return _Wrap(self.f.scaled(c))

        def __add__(self, o):
            return _Wrap(self.f + o.f)

        def is_iso(self):
            return self.f.is_iso()

    hit = find_invertible([_Wrap(f) for f in basis])
    return hit.f if hit is not None else None
