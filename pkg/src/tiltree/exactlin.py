"""Exact dense linear algebra over Q or a prime field.

Matrices are 2-d numpy arrays. Over Q the dtype is ``object`` holding ints and
Fractions; over GF(p) it is ``int64`` with entries reduced into [0, p).
Every routine takes the field explicitly, so no floating point ever appears.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "Field", "QQ", "GF", "rref", "rank", "kernel_basis", "solve",
    "inverse", "row_space", "quotient_maps", "fmt_scalar",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


class Field:
    """The rationals (``p=None``) or the prime field GF(p), p < 2**16."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)) or p >= 2**16:
                raise ValueError(f"prime field needs a prime p < 65536, got {p!r}")
            p = int(p)
        self.p = p
        self.dtype = object if p is None else np.int64

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    @property
    def name(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    # scalars
    def scalar(self, x):
        if self.p is None:
            x = Fraction(x)
            return int(x) if x.denominator == 1 else x
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def negs(self, x):
        return -x if self.p is None else (-int(x)) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            if x == 1 or x == -1:
                return int(x)
            y = Fraction(1) / x
            return int(y) if y.denominator == 1 else y
        return pow(int(x), self.p - 2, self.p)

    # matrices
    def array(self, data, shape: tuple[int, int] | None = None) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype == self.dtype and data.ndim == 2:
            return data
        rows = [[self.scalar(x) for x in row] for row in data]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        out = self.zeros(*shape)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                out[i, j] = x
        return out

    def zeros(self, r: int, c: int) -> np.ndarray:
        if self.p is None:
            out = np.empty((r, c), dtype=object)
            out.fill(0)
            return out
        return np.zeros((r, c), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = 1
        return out

    def _red(self, a: np.ndarray) -> np.ndarray:
        return a if self.p is None else a % self.p

    def mul(self, *ms: np.ndarray) -> np.ndarray:
        for a, b in zip(ms, ms[1:]):
            if a.shape[1] != b.shape[0]:
                raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if len(ms) > 2 and ms[-1].shape[1] < ms[0].shape[0]:
            # cheaper to fold from the right (e.g. matrix chain ending in a vector)
            out = ms[-1]
            for m in reversed(ms[:-1]):
                out = self._mul2(m, out)
            return out
        out = ms[0]
        for m in ms[1:]:
            out = self._mul2(out, m)
        return out

    def _mul2(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.p is None:
            return _qmul(a, b)
        return (a @ b) % self.p

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._red(a + b)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._red(a - b)

    def neg(self, a: np.ndarray) -> np.ndarray:
        return self._red(-a)

    def scal(self, c, a: np.ndarray) -> np.ndarray:
        return self._red(self.scalar(c) * a)

    def block(self, blocks: list[list[np.ndarray]]) -> np.ndarray:
        """Assemble a block matrix; empty blocks are allowed."""
        heights = [max((b.shape[0] for b in row), default=0) for row in blocks]
        widths = [max((row[j].shape[1] for row in blocks), default=0)
                  for j in range(len(blocks[0]))] if blocks else []
        out = self.zeros(sum(heights), sum(widths))
        r = 0
        for i, row in enumerate(blocks):
            c = 0
            for j, b in enumerate(row):
                if b.size:
                    out[r:r + b.shape[0], c:c + b.shape[1]] = b
                c += widths[j]
            r += heights[i]
        return out

    def is_zero(self, a: np.ndarray) -> bool:
        return not any(x != 0 for x in a.flat)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and self.is_zero(self.sub(a, b))


QQ = Field()

_SAFE = 2**62


def _all_int(a: np.ndarray) -> bool:
    return set(map(type, a.flat)) <= {int}


def _qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product over Q; exact int64 arithmetic when it cannot overflow."""
    # the matrices met in practice are block sparse: drop the dead inner index
    keep = (b != 0).any(axis=1)
    if b.shape[1] >= 8:
        keep &= (a != 0).any(axis=0)
    if not keep.all():
        a, b = a[:, keep], b[keep, :]
        if not a.shape[1]:
            return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    if min(a.shape[0], b.shape[1]) < 8:
        # thin products: converting the big factor costs more than the product
        return _normalize(a @ b)
    if not (_all_int(a) and _all_int(b)):
        return _normalize(a @ b)
    if a.shape[0] * a.shape[1] * b.shape[1] <= 512:
        return a @ b
    try:
        ai, bi = a.astype(np.int64), b.astype(np.int64)
    except OverflowError:
        return a @ b
    ma = int(np.abs(ai).max())
    mb = int(np.abs(bi).max())
    if ma * mb * a.shape[1] >= _SAFE:
        return a @ b
    return (ai @ bi).astype(object)


def _normalize(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and Fraction in set(map(type, a.flat)):
        for idx, x in np.ndenumerate(a):
            if type(x) is Fraction and x.denominator == 1:
                a[idx] = x.numerator
    return a


def GF(p: int = 32003) -> Field:
    return Field(p)


def fmt_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(int(x))


def rref(m: np.ndarray, F: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting."""
    a = np.array(F.array(m), copy=True)
    rows, cols = a.shape
    piv: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [k for k in range(r, rows) if a[k, c] != 0]
        if not nz:
            continue
        k = nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        if a[r, c] != 1:
            a[r] = F.scal(F.inv(a[r, c]), a[r])
        others = [k for k in range(rows) if k != r and a[k, c] != 0]
        if others:
            a[others] = F.sub(a[others], np.outer(a[others, c], a[r]))
        piv.append(c)
        r += 1
    if F.p is None:
        _normalize(a)
    return a, piv


def rank(m: np.ndarray, F: Field) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, F)[1])


def kernel_basis(m: np.ndarray, F: Field) -> np.ndarray:
    """Columns form the canonical null-space basis (one per free column)."""
    rows, cols = m.shape
    if rows == 0:
        return F.eye(cols)
    r, piv = rref(m, F)
    free = [c for c in range(cols) if c not in set(piv)]
    out = F.zeros(cols, len(free))
    for j, f in enumerate(free):
        out[f, j] = 1
        for i, pc in enumerate(piv):
            out[pc, j] = F.negs(r[i, f])
    return out


def solve(m: np.ndarray, b: np.ndarray, F: Field) -> np.ndarray | None:
    """Canonical particular solution of m x = b (free variables zero), or None."""
    if m.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch {m.shape} vs {b.shape}")
    n = m.shape[1]
    if m.shape[0] == 0:
        return F.zeros(n, b.shape[1])
    r, piv = rref(F.block([[m, b]]), F)
    if piv and piv[-1] >= n:
        return None
    x = F.zeros(n, b.shape[1])
    for i, pc in enumerate(piv):
        x[pc] = r[i, n:]
    return x


def inverse(m: np.ndarray, F: Field) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, F.eye(n), F)
    if x is None or rank(m, F) != n:
        raise ValueError("matrix is singular")
    return x


def row_space(m: np.ndarray, F: Field) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of rref(m) and their pivots: a canonical basis of the row space."""
    if m.shape[0] == 0:
        return F.zeros(0, m.shape[1]), []
    r, piv = rref(m, F)
    return r[:len(piv)], piv


def quotient_maps(sub: np.ndarray, F: Field) -> tuple[np.ndarray, np.ndarray]:
    """For U = column span of ``sub`` in k^n return (q, s).

    q : k^n -> k^n/U in coordinates indexed by the non-pivot positions of the
    canonical basis of U, and s a section of q by unit vectors (q s = 1).
    """
    n = sub.shape[0]
    basis, piv = row_space(sub.T, F) if sub.shape[1] else (F.zeros(0, n), [])
    free = [c for c in range(n) if c not in set(piv)]
    q = F.zeros(len(free), n)
    s = F.zeros(n, len(free))
    for j, f in enumerate(free):
        q[j, f] = 1
        s[f, j] = 1
        for i, pc in enumerate(piv):
            if basis[i, f] != 0:
                q[j, pc] = F.negs(basis[i, f])
    return q, s
