"""Classical tilting verification, the RHom(T, -) dimension oracle and KE classes."""
from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass, field

import numpy as np

from .derivedcat import DObject, homotopy_classes, module_object
from .exactlin import rank, solve
from .modcat import (ModuleMorphism, ProjModule, Representation, cokernel, direct_sum, ext_dim,
                     hom_basis, identity, kernel, projective_resolution)
from .quiveralg import require_gldim

_objects: "weakref.WeakKeyDictionary[Representation, DObject]" = weakref.WeakKeyDictionary()
_lock = threading.Lock()


def tilting_object(T: Representation) -> DObject:
    """T[0] with its minimal projective resolution, cached per module."""
    with _lock:
        x = _objects.get(T)
    if x is None:
        x = module_object(T, label="T")
        with _lock:
            _objects[T] = x
    return x


@dataclass
class CoresolutionStep:
    source_dims: tuple[int, ...]
    multiplicity: int
    cokernel_dims: tuple[int, ...]


@dataclass
class TiltingReport:
    module: Representation
    pd: int
    rigid: bool
    generates: bool
    claimed_n: int | None = None
    ext_profile: dict[int, int] = field(default_factory=dict)
    witness: dict[int, list[CoresolutionStep]] = field(default_factory=dict)
    end_dim: int = 0
    failure: str = ""

    @property
    def verdict(self) -> bool:
        return self.rigid and self.generates and (self.claimed_n is None or self.pd == self.claimed_n)

    def lines(self) -> list[str]:
        alg = self.module.alg
        out = [f"module dims: {' '.join(map(str, self.module.dims))}",
               f"gldim: {alg.gldim}",
               f"pd: {self.pd}",
               "rigid: " + ("yes" if self.rigid else "no")
               + " (" + ", ".join(f"Ext^{i}={d}" for i, d in sorted(self.ext_profile.items())) + ")",
               "generates: " + ("yes" if self.generates else "no"),
               f"dim End(T): {self.end_dim}"]
        for v, steps in sorted(self.witness.items()):
            chain = " -> ".join(f"T_{s.multiplicity}" for s in steps)
            out.append(f"coresolution of P({alg.label(v)}): {chain or 'in add T'}")
        if self.failure:
            out.append(f"failure: {self.failure}")
        if self.claimed_n is not None and self.claimed_n != self.pd:
            out.append(f"failure: claimed n = {self.claimed_n} but pd = {self.pd}")
        n = self.pd if self.claimed_n is None else self.claimed_n
        out.append(f"{n}-tilting: " + ("yes" if self.verdict else "no"))
        return out


def summands_of(T: Representation) -> list[Representation]:
    """The recorded direct-sum decomposition of T, or [T]."""
    return [c for c in (T.components or [T]) if not c.is_zero()]


def left_approximation(M: Representation, T: Representation,
                       summands: list[Representation] | None = None) -> ModuleMorphism | None:
    """Left add(T)-approximation M -> T_1' + ... + T_m'.

    One copy of a summand T_i per chosen generator u : M -> T_i, where the
    generators span Hom(M, T) as a left End(T)-module.
    """
    summands = summands or summands_of(T)
    F = M.F
    S, incs, projs = direct_sum(summands)
    ends = hom_basis(S, S)
    chosen: list[tuple[int, ModuleMorphism]] = []
    span = None
    for i, Ti in enumerate(summands):
        for u in hom_basis(M, Ti):
            g = incs[i].compose(u)
            vec = g.flat()
            if span is not None and rank(np.hstack([span, vec]), F) == rank(span, F):
                continue
            chosen.append((i, u))
            new = np.hstack([phi.compose(g).flat() for phi in ends])
            span = new if span is None else np.hstack([span, new])
    if not chosen:
        return None
    target, _, _ = direct_sum([summands[i] for i, _ in chosen])
    mats = [np.vstack([u.mats[v] for _, u in chosen]) for v in range(M.alg.n)]
    return ModuleMorphism(M, target, mats)


def is_split_mono(f: ModuleMorphism) -> bool:
    """Exists r with r o f = 1."""
    M = f.source
    if M.is_zero():
        return True
    rs = hom_basis(f.target, M)
    if not rs:
        return False
    span = np.hstack([r.compose(f).flat() for r in rs])
    return solve(span, identity(M).flat(), M.F) is not None


def verify_tilting(T: Representation, n: int | None = None,
                   summands: list[Representation] | None = None) -> TiltingReport:
    """Check pd, rigidity and generation (add(T)-coresolution of each P(v))."""
    alg = T.alg
    require_gldim(alg)
    summands = summands or summands_of(T)
    pd = projective_resolution(T).length
    ext = {i: ext_dim(T, T, i) for i in range(1, pd + 1)}
    rep = TiltingReport(T, pd, all(d == 0 for d in ext.values()), False, n, ext,
                        end_dim=len(hom_basis(T, T)))
    generates = True
    for v in range(alg.n):
        M: Representation = ProjModule(alg, (v,))
        steps: list[CoresolutionStep] = []
        while True:
            f = left_approximation(M, T, summands)
            if f is not None and is_split_mono(f):
                break
            if len(steps) >= pd or f is None or not kernel(f)[0].is_zero():
                generates = False
                why = "approximation by add(T) is not injective" if len(steps) < pd \
                    else f"no add(T)-coresolution within {pd} steps"
                rep.failure = f"P({alg.label(v)}): {why}"
                break
            C, _ = cokernel(f)
            steps.append(CoresolutionStep(M.dims, len(f.target.components or [f.target]), C.dims))
            M = C
        rep.witness[v] = steps
        if not generates:
            break
    rep.generates = generates
    return rep


def rhom_dims(T: Representation, x: DObject) -> dict[int, int]:
    """Nonzero dims of H^j Hom^*(P_T, proj x) = Hom_D(T, x[j])."""
    PT = tilting_object(T).proj
    P = x.proj
    if P.is_zero() or PT.is_zero():
        return {}
    out = {}
    for j in range(P.lo - PT.hi, P.hi - PT.lo + 1):
        d, _ = homotopy_classes(PT, P, j, reps=False)
        if d:
            out[j] = d
    return out


@dataclass
class StaticProfile:
    object: DObject
    dims: dict[int, int]

    @property
    def static_degree(self) -> int | None:
        nz = [j for j, d in self.dims.items() if d]
        return nz[0] if len(nz) == 1 else None


def static_profile(T: Representation, x: DObject) -> StaticProfile:
    return StaticProfile(x, rhom_dims(T, x))


def ke_class(T: Representation, M: Representation) -> int | None:
    """e if Ext^i(T, M) vanishes for all i != e, else None."""
    pd = projective_resolution(T).length
    nz = [i for i in range(pd + 1) if ext_dim(T, M, i)]
    return nz[0] if len(nz) == 1 else None
