"""scikit-learn style facade: fit on a tilting module, transform modules into t-trees."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .derivedcat import DObject, module_object
from .hrs import TStructureTower
from .modcat import Representation
from .tilting import verify_tilting
from .ttree import TTree, build_ttree


def _check_module(M, alg=None) -> Representation | DObject:
    if not isinstance(M, (Representation, DObject)):
        raise TypeError(f"expected a Representation or DObject, got {type(M).__name__}")
    if alg is not None and M.alg is not alg:
        raise ValueError("module lives over a different algebra than the fitted tilting module")
    return M


class TTreeTransformer(BaseEstimator, TransformerMixin):
    """Builds the t-structure tower of a tilting module and the right t-trees of modules.

    Parameters
    ----------
    n : int or None
        Claimed projective dimension of the tilting module; None accepts the computed one.
    verify : bool
        Membership-verify every constructed piece.
    """

    def __init__(self, n: int | None = None, verify: bool = True):
        self.n = n
        self.verify = verify

    def fit(self, T: Representation, y=None):
        if not isinstance(T, Representation):
            raise TypeError("fit expects the tilting module as a Representation")
        self.report_ = verify_tilting(T, self.n)
        self.tower_ = TStructureTower(T, self.n, verify=self.verify, report=self.report_)
        self.n_ = self.tower_.n
        self.algebra_ = T.alg
        return self

    def transform(self, X: Iterable[Representation] | Representation) -> list[TTree]:
        check_is_fitted(self, "tower_")
        if isinstance(X, (Representation, DObject)):
            X = [X]
        mods = [_check_module(M, self.algebra_) for M in X]
        return [build_ttree(self.tower_, M, self.verify) for M in mods]

    def profile(self, X: Sequence[Representation | DObject]) -> np.ndarray:
        """Rows of dim Hom_D(T, x[j]) for j = 0..n."""
        check_is_fitted(self, "tower_")
        rows = []
        for x in X:
            _check_module(x, self.algebra_)
            obj = x if isinstance(x, DObject) else module_object(x)
            d = self.tower_.rhom(obj)
            rows.append([d.get(j, 0) for j in range(self.n_ + 1)])
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.n_ + 1)
