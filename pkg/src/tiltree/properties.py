"""Batch property suites over an object corpus, shared by the CLI and the tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .compat import CorpusItem
from .derivedcat import cone, derived_hom_dims, is_isomorphic_objects
from .hrs import TStructureTower
from .modcat import Representation
from .tilting import static_profile
from .ttree import TTree, build_ttree, is_static_single_branch


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.checked} checks)"


def tower_inclusions(tower: TStructureTower, corpus: Sequence[CorpusItem]) -> SuiteResult:
    """D_i^{>=l} sits in D_{i+1}^{>=l} and in D_{i-1}^{>=l-1}."""
    res = SuiteResult("tower inclusions")
    n = tower.n
    for item in corpus:
        for i in range(n + 1):
            for l in range(-n - 2, n + 3):
                if not tower.member_coaisle(i, item.obj, l):
                    continue
                res.checked += 1
                if i < n and not tower.member_coaisle(i + 1, item.obj, l):
                    res.failures.append(f"{item.name}: level {i} -> {i + 1}, degree {l}")
                if i > 0 and not tower.member_coaisle(i - 1, item.obj, l - 1):
                    res.failures.append(f"{item.name}: level {i} -> {i - 1}, degree {l}")
    return res


def orthogonality(tower: TStructureTower, corpus: Sequence[CorpusItem],
                  levels: Sequence[int] | None = None) -> SuiteResult:
    """Hom(aisle, shifted co-aisle) vanishes at every level."""
    res = SuiteResult("orthogonality")
    for i in (range(tower.n + 1) if levels is None else levels):
        aisle = [x for x in corpus if tower.member_aisle(i, x.obj, 0, recursive=True)]
        coaisle = [y for y in corpus if tower.member_coaisle(i, y.obj, 1)]
        for x in aisle:
            for y in coaisle:
                res.checked += 1
                if derived_hom_dims(x.obj, y.obj, [0])[0]:
                    res.failures.append(f"level {i}: Hom({x.name}, {y.name}) != 0")
    return res


def tree_properties(tower: TStructureTower, modules: Sequence[tuple[str, Representation]],
                    trees: dict[str, TTree] | None = None) -> list[SuiteResult]:
    """SES exactness, Euler additivity, leaf staticity, degree windows and single-branch vs static.

    A sequence of heart objects is short exact exactly when it extends to a
    triangle, so exactness is checked as cone(incl) = X_{s1}.
    """
    n = tower.n
    exact = SuiteResult("SES exactness")
    euler = SuiteResult("Euler additivity")
    leaves = SuiteResult("leaf staticity")
    window = SuiteResult("degree windows")
    branch = SuiteResult("single branch iff static")
    for name, M in modules:
        tree = trees[name] if trees and name in trees else build_ttree(tower, M)
        for v in tree.nodes():
            if v.children:
                euler.checked += 1
                exact.checked += 1
                c0, c1 = v.children
                if v.incl is not None and not is_isomorphic_objects(cone(v.incl, c0.obj, v.obj).C, c1.obj):
                    exact.failures.append(f"{name}: node {v.index or 'e'}")
                if c0.obj.euler() + c1.obj.euler() != v.obj.euler():
                    euler.failures.append(f"{name}: node {v.index or 'e'}")
            sup = [j for j, d in tower.rhom(v.obj).items() if d]
            window.checked += 1
            if any(not v.degree <= j <= n - v.depth + v.degree for j in sup):
                window.failures.append(f"{name}: node {v.index or 'e'} support {sup}")
        for leaf in tree.nonzero_leaves():
            leaves.checked += 1
            if [j for j, d in tower.rhom(leaf.obj).items() if d] != [leaf.degree]:
                leaves.failures.append(f"{name}: leaf {leaf.index}")
        branch.checked += 1
        if is_static_single_branch(tree) != static_profile(tower.T, tree.root.obj).static_degree:
            branch.failures.append(name)
    return [exact, euler, leaves, window, branch]
