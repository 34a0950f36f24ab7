"""The right basic tower D_0 (natural) <= ... <= D_n (tilting) of t-structures.

Level i has co-aisle D_i^{>=0} = D^{>=-i} & T^{>=0}. Truncations are built
recursively: level 0 is smart truncation; level i glues the level i-1
truncation with the torsion part of H^0_{i-1} through a homotopy pullback.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from .derivedcat import (ChainMap, Complex, DObject, Triangle, cone, homotopy_classes, identity_map,
                         shift, shift_complex, shift_map, smart_truncate, zero_chain_map)
from .modcat import Representation, direct_sum
from .quiveralg import AlgebraError
from .tilting import TiltingReport, rhom_dims, tilting_object, verify_tilting


class VerificationError(AlgebraError):
    """A constructed object failed a membership contract."""


@dataclass
class TorsionDecomposition:
    level: int
    obj: DObject
    torsion: DObject
    free: DObject
    incl: ChainMap
    proj: ChainMap
    iterations: int


def direct_sum_complex(parts: list[Complex]) -> tuple[Complex, list[ChainMap], list[ChainMap]]:
    alg = parts[0].alg
    nz = [P for P in parts if not P.is_zero()]
    lo = min((P.lo for P in nz), default=0)
    hi = max((P.hi for P in nz), default=-1)
    terms, incs, projs = {}, {}, {}
    for i in range(lo, hi + 1):
        S, inc, pr = direct_sum([P.term(i) for P in parts])
        terms[i], incs[i], projs[i] = S, inc, pr
    diffs = {}
    for i in range(lo, hi):
        m = None
        for k, P in enumerate(parts):
            t = incs[i + 1][k].compose(P.diff(i)).compose(projs[i][k])
            m = t if m is None else m + t
        diffs[i] = m
    C = Complex(alg, terms, diffs)
    ins = [ChainMap(P, C, {i: incs[i][k] for i in P.degrees()}) for k, P in enumerate(parts)]
    outs = [ChainMap(C, P, {i: projs[i][k] for i in P.degrees()}) for k, P in enumerate(parts)]
    return C, ins, outs


class TStructureTower:
    """Tower of right basic t-structures for a verified classical tilting module."""

    def __init__(self, T: Representation, n: int | None = None, verify: bool = True,
                 report: TiltingReport | None = None):
        self.T = T
        self.alg = T.alg
        self.report = report or verify_tilting(T, n)
        if not self.report.verdict:
            raise VerificationError("module is not a classical tilting module: "
                                    + (self.report.failure or "rigidity or pd check failed"))
        self.n = self.report.pd
        self.TX = tilting_object(T)
        self.verify = verify
        self._lock = threading.RLock()
        self._trunc: dict[tuple[int, int], tuple[DObject, tuple[DObject, ChainMap]]] = {}
        self._tors: dict[tuple[int, int], tuple[DObject, TorsionDecomposition]] = {}
        self._rhom: dict[int, tuple[DObject, dict[int, int]]] = {}

    # observational tests
    def rhom(self, x: DObject) -> dict[int, int]:
        key = id(x.proj)
        with self._lock:
            hit = self._rhom.get(key)
        if hit is not None:
            return hit[1]
        d = rhom_dims(self.T, x)
        with self._lock:
            self._rhom[key] = (x, d)
        return d

    def in_T_ge(self, x: DObject, k: int) -> bool:
        return all(j >= k for j in self.rhom(x))

    def in_T_le(self, x: DObject, k: int) -> bool:
        return all(j <= k for j in self.rhom(x))

    def _check_level(self, i: int) -> None:
        if not 0 <= i <= self.n:
            raise ValueError(f"level {i} outside 0..{self.n}")

    def member_coaisle(self, i: int, x: DObject, k: int = 0) -> bool:
        """x in D_i^{>=k}: H^j(x) = 0 for j < k - i and Hom(T, x[j]) = 0 for j < k."""
        self._check_level(i)
        return all(j >= k - i for j in x.cohomology_dims()) and self.in_T_ge(x, k)

    def member_aisle(self, i: int, x: DObject, k: int = 0, recursive: bool = False) -> bool:
        """x in D_i^{<=k}, by recursion on the level.

        The top level is the tilting aisle itself, tested observationally
        unless ``recursive`` asks for the level-by-level route.
        """
        self._check_level(i)
        if k != 0:
            return self.member_aisle(i, shift(x, k), 0, recursive)
        if any(j > 0 for j in x.cohomology_dims()):
            return False
        if i == 0 or self.in_T_le(x, 0):
            return True
        if i == self.n and not recursive:
            return False
        if not self.member_aisle(i - 1, x, 0, recursive):
            return False
        H = self.t_cohomology(i - 1, x, 0)
        return self.in_torsion(i - 1, H)

    def in_heart(self, i: int, x: DObject) -> bool:
        return self.member_coaisle(i, x, 0) and self.member_aisle(i, x, 0)

    def in_torsion(self, i: int, C: DObject) -> bool:
        """C in X_i (C assumed in H_i): the torsion-free part vanishes."""
        if C.is_zero():
            return True
        return self.torsion_decompose(i, C, check=False).free.is_zero()

    def in_free(self, i: int, C: DObject) -> bool:
        """C in Y_i (C assumed in H_i): Hom(T, C) = 0."""
        return self.rhom(C).get(0, 0) == 0

    def member_X(self, i: int, x: DObject) -> bool:
        return self.in_heart(i, x) and self.in_torsion(i, x)

    def member_Y(self, i: int, x: DObject) -> bool:
        return self.in_heart(i, x) and self.in_free(i, x)

    # truncation
    def truncate_le(self, i: int, x: DObject, k: int = 0) -> tuple[DObject, ChainMap]:
        """tau_i^{<=k} x with its map to x."""
        self._check_level(i)
        if k != 0:
            y = shift(x, k)
            Z, u = self.truncate_le(i, y, 0)
            Zs = shift(Z, -k)
            return Zs, ChainMap(Zs.proj, x.proj, shift_map(u, -k).maps)
        key = (i, id(x.proj))
        with self._lock:
            hit = self._trunc.get(key)
        if hit is not None:
            return hit[1]
        res = self._truncate_le0(i, x)
        with self._lock:
            self._trunc[key] = (x, res)
        return res

    def _truncate_le0(self, i: int, x: DObject) -> tuple[DObject, ChainMap]:
        if x.is_zero():
            return x, identity_map(x.proj)
        if self.member_coaisle(i, x, 1):
            z = DObject(Complex(self.alg, {}))
            return z, zero_chain_map(z.proj, x.proj)
        if all(j <= 0 for j in x.cohomology_dims()) and self.in_T_le(x, 0):
            return x, identity_map(x.proj)
        if i == 0:
            le, _, tri = smart_truncate(x, 0)
            return le, tri.u
        A0, iota = self.truncate_le(i - 1, x, 0)
        A1, j1 = self.truncate_le(i - 1, A0, -1)
        tri = cone(j1, A1, A0)
        H, v = tri.C, tri.v
        if H.is_zero():
            return A0, iota
        td = self.torsion_decompose(i - 1, H)
        if td.torsion.is_zero():
            return A1, iota.compose(j1)
        if td.free.is_zero():
            return A0, iota
        S, ins, outs = direct_sum_complex([A0.proj, td.torsion.proj])
        g = v.compose(outs[0]) + td.incl.compose(outs[1]).scaled(-1)
        gtri = cone(g, DObject(S), H)
        Z = shift(gtri.C, -1)
        w = ChainMap(Z.proj, S, shift_map(gtri.w, -1).maps)
        u = iota.compose(outs[0]).compose(w)
        if self.verify and not self.member_coaisle(i, cone(u, Z, x).C, 1):
            raise VerificationError(f"level {i}: cone of the truncation is not in the co-aisle")
        return Z, u

    def truncate(self, i: int, x: DObject, k: int = 0) -> Triangle:
        """tau_i^{<=k} x -> x -> tau_i^{>=k+1} x."""
        Z, u = self.truncate_le(i, x, k)
        return cone(u, Z, x)

    def truncate_ge(self, i: int, x: DObject, k: int) -> tuple[DObject, ChainMap]:
        """tau_i^{>=k} x with the map from x."""
        tri = self.truncate(i, x, k - 1)
        return tri.C, tri.v

    def t_cohomology(self, i: int, x: DObject, k: int = 0) -> DObject:
        """H^k_{D_i}(x) as an object of the heart H_i."""
        y = shift(x, k)
        Z, _ = self.truncate_le(i, y, 0)
        H, _ = self.truncate_ge(i, Z, 0)
        return H

    # heart arithmetic
    def heart_cokernel(self, i: int, f: ChainMap, target: DObject | None = None) -> tuple[DObject, ChainMap]:
        tri = cone(f, None, target)
        Q, q = self.truncate_ge(i, tri.C, 0)
        return Q, q.compose(tri.v)

    def heart_kernel(self, i: int, f: ChainMap, source: DObject | None = None) -> tuple[DObject, ChainMap]:
        tri = cone(f, source, None)
        Cm = shift(tri.C, -1)
        w = ChainMap(Cm.proj, f.source, shift_map(tri.w, -1).maps)
        K, k = self.truncate_le(i, Cm, 0)
        return K, w.compose(k)

    def torsion_decompose(self, i: int, C: DObject, check: bool = True) -> TorsionDecomposition:
        """Torsion part by iterated traces of T inside the heart H_i."""
        self._check_level(i)
        key = (i, id(C.proj))
        with self._lock:
            hit = self._tors.get(key)
        if hit is not None:
            return hit[1]
        cur, q = C, identity_map(C.proj)
        it = 0
        cap = C.total_dim() + 2
        while True:
            m, basis = homotopy_classes(self.TX.proj, cur.proj, 0)
            if m == 0:
                break
            it += 1
            if it > cap:
                raise VerificationError(f"iterated trace did not stabilize at level {i}")
            S, _, outs = direct_sum_complex([self.TX.proj] * m)
            ev = basis[0].compose(outs[0])
            for b, o in zip(basis[1:], outs[1:]):
                ev = ev + b.compose(o)
            ev = ChainMap(S, cur.proj, ev.maps)
            Q, qq = self.heart_cokernel(i, ev, cur)
            q = qq.compose(q)
            cur = Q
            if cur.is_zero():
                break
        if it == 0:
            z = DObject(Complex(self.alg, {}))
            td = TorsionDecomposition(i, C, z, C, zero_chain_map(z.proj, C.proj), q, 0)
        elif cur.is_zero():
            td = TorsionDecomposition(i, C, C, cur, identity_map(C.proj), q, it)
        else:
            K, k = self.heart_kernel(i, q, C)
            td = TorsionDecomposition(i, C, K, cur, k, q, it)
        if check and self.verify:
            self._verify_decomposition(td)
        with self._lock:
            self._tors[key] = (C, td)
        return td

    def _verify_decomposition(self, td: TorsionDecomposition) -> None:
        i = td.level
        for name, obj in (("torsion", td.torsion), ("free", td.free)):
            if not obj.is_zero() and not self.member_coaisle(i, obj, 0):
                raise VerificationError(f"level {i}: {name} part is not in the co-aisle of H_{i}")
        if not self.in_free(i, td.free):
            raise VerificationError(f"level {i}: free part still receives maps from T")
        if td.torsion.euler() + td.free.euler() != td.obj.euler():
            raise VerificationError(f"level {i}: torsion sequence is not additive")
