"""Right t-trees: iterated torsion decompositions of a module through the tower."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .derivedcat import ChainMap, Complex, DObject, is_isomorphic_objects, module_object, shift, shift_map
from .formats import describe_object
from .hrs import TStructureTower, VerificationError
from .modcat import Representation


@dataclass
class TTreeNode:
    index: str
    obj: DObject
    children: list["TTreeNode"] = field(default_factory=list)
    incl: ChainMap | None = None   # child "0" -> parent
    proj: ChainMap | None = None   # parent -> child "1"

    @property
    def depth(self) -> int:
        return len(self.index)

    @property
    def degree(self) -> int:
        return self.index.count("1")

    def is_zero(self) -> bool:
        return self.obj.is_zero()

    def walk(self) -> Iterator["TTreeNode"]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class TTree:
    root: TTreeNode
    depth: int
    tower: TStructureTower | None = None

    def nodes(self) -> list[TTreeNode]:
        return list(self.root.walk())

    def node(self, index: str) -> TTreeNode:
        if any(c not in "01" for c in index) or len(index) > self.depth:
            raise KeyError(f"invalid tree index {index!r}")
        cur = self.root
        for c in index:
            cur = cur.children[int(c)]
        return cur

    def leaves(self) -> list[TTreeNode]:
        return [v for v in self.nodes() if v.depth == self.depth]

    def nonzero_leaves(self) -> list[TTreeNode]:
        return [v for v in self.leaves() if not v.is_zero()]


def _zero(alg) -> DObject:
    return DObject(Complex(alg, {}))


def build_ttree(tower: TStructureTower, M: Representation | DObject, verify: bool | None = None) -> TTree:
    """Right t-tree of a module M (or of any object of the standard heart)."""
    verify = tower.verify if verify is None else verify
    root_obj = M if isinstance(M, DObject) else module_object(M)
    root = TTreeNode("", root_obj)
    _grow(tower, root, verify)
    tree = TTree(root, tower.n, tower)
    if verify:
        _verify_tree(tower, tree)
    return tree


def _grow(tower: TStructureTower, node: TTreeNode, verify: bool) -> None:
    if node.depth == tower.n:
        return
    alg = tower.alg
    if node.is_zero():
        node.children = [TTreeNode(node.index + "0", _zero(alg)), TTreeNode(node.index + "1", _zero(alg))]
    else:
        d = node.degree
        C = shift(node.obj, d)
        td = tower.torsion_decompose(node.depth, C, check=verify)
        t = shift(td.torsion, -d)
        f = shift(td.free, -d)
        c0 = TTreeNode(node.index + "0", t)
        c1 = TTreeNode(node.index + "1", f)
        node.incl = ChainMap(t.proj, node.obj.proj, shift_map(td.incl, -d).maps)
        node.proj = ChainMap(node.obj.proj, f.proj, shift_map(td.proj, -d).maps)
        node.children = [c0, c1]
    for c in node.children:
        _grow(tower, c, verify)


def _verify_tree(tower: TStructureTower, tree: TTree) -> None:
    for v in tree.nodes():
        if v.is_zero():
            continue
        x = shift(v.obj, v.degree)
        if not tower.member_coaisle(v.depth, x, 0):
            raise VerificationError(f"node {v.index or 'root'} is not in its shifted heart")
        if v.children:
            c0, c1 = v.children
            if c0.obj.euler() + c1.obj.euler() != v.obj.euler():
                raise VerificationError(f"node {v.index or 'root'}: Euler characteristic not additive")
    for leaf in tree.nonzero_leaves():
        sup = [j for j, d in tower.rhom(leaf.obj).items() if d]
        if sup != [leaf.degree]:
            raise VerificationError(f"leaf {leaf.index} is not static of degree {leaf.degree}")


def leading_index(d: int, n: int) -> str:
    return "1" * d + "0" * (n - d)


def is_static_single_branch(tree: TTree) -> int | None:
    """d if exactly one leaf is nonzero and it is the leading leaf of degree d."""
    nz = tree.nonzero_leaves()
    if len(nz) != 1:
        return None
    leaf = nz[0]
    return leaf.degree if leaf.index == leading_index(leaf.degree, tree.depth) else None


def subtree(tree: TTree, index: str) -> TTree:
    node = tree.node(index)
    return TTree(node, tree.depth, tree.tower)


def _is_module(x: DObject) -> bool:
    return all(j == 0 for j in x.cohomology_dims())


def _dimvec(x: DObject) -> tuple[int, ...]:
    return x.cohomology_dims().get(0, (0,) * x.alg.n)


@dataclass
class IdentityCheck:
    index: str
    kind: str
    ok: bool


@dataclass
class IdentityReport:
    checks: list[IdentityCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"{c.index or 'e'}\t{c.kind}\t{'ok' if c.ok else 'FAIL'}" for c in self.checks]
        return out + [f"all identities hold: {'yes' if self.ok else 'no'}"]


def verify_cohomology_identities(tree: TTree) -> IdentityReport:
    """Degree window and lowest/highest tilting cohomology of every vertex.

    A vertex X of depth l and degree d has rhom support in [d, n-l+d]; its
    degree-d tilting cohomology is the all-zeros descendant and its
    degree-(n-l+d) one is the all-ones descendant, both shifted into the heart.
    """
    tw = tree.tower
    if tw is None:
        raise ValueError("tree carries no tower")
    n = tree.depth
    checks = []
    for v in tree.nodes():
        d, l = v.degree, v.depth
        top = n - l + d
        sup = tw.rhom(v.obj)
        checks.append(IdentityCheck(v.index, f"window [{d},{top}]", all(d <= j <= top for j in sup)))
        if l == n:
            continue
        for k, idx in ((d, v.index + "0" * (n - l)), (top, v.index + "1" * (n - l))):
            H = tw.t_cohomology(n, v.obj, k)
            leaf = shift(tree.node(idx).obj, k)
            checks.append(IdentityCheck(v.index, f"H^{k} = X_{idx}[{k}]", is_isomorphic_objects(H, leaf)))
    return IdentityReport(checks)


@dataclass
class LeadingLeafReport:
    leaves_leading: bool
    cohomology_static: bool
    postnikov: bool | None
    details: list[str]

    @property
    def consistent(self) -> bool:
        return self.leaves_leading == self.cohomology_static and self.postnikov is not False

    def lines(self) -> list[str]:
        yn = {True: "yes", False: "no", None: "n/a"}
        return self.details + [
            f"nonzero leaves are leading modules: {yn[self.leaves_leading]}",
            f"tilting cohomologies are static of degree -i: {yn[self.cohomology_static]}",
            f"postnikov filtration: {yn[self.postnikov]}",
            f"consistent: {yn[self.consistent]}",
        ]


def leading_leaf_analysis(tree: TTree) -> LeadingLeafReport:
    """Compare the leaf shape of the tree with the tilting cohomologies of its root.

    Nonzero leaves are all leading leaves with module values exactly when each
    H^i_T(X)[-i] is a module. In that case the vertices 1...1 are the tilting
    truncations tau^{>=i} X and H^i_T(X)[-i] -> tau^{>=i} X -> tau^{>=i+1} X
    is a short exact sequence of modules.
    """
    tw = tree.tower
    if tw is None:
        raise ValueError("tree carries no tower")
    n = tree.depth
    X = tree.root.obj
    details = []
    leaves_ok = True
    for leaf in tree.nonzero_leaves():
        lead = leaf.index == leading_index(leaf.degree, n)
        mod = _is_module(leaf.obj)
        details.append(f"leaf {leaf.index}: leading={'yes' if lead else 'no'} module={'yes' if mod else 'no'}")
        leaves_ok = leaves_ok and lead and mod
    coh = []
    for i in range(n + 1):
        Hi = shift(tw.t_cohomology(n, X, i), -i)
        coh.append(Hi)
        details.append(f"H^{i}_T[-{i}]: {describe_object(Hi)}")
    static_ok = all(_is_module(h) for h in coh)
    post = None
    if leaves_ok and static_ok:
        post = True
        ge = [X] + [tw.truncate_ge(n, X, i)[0] for i in range(1, n + 2)]
        for i in range(n + 1):
            node = tree.node("1" * i)
            if not is_isomorphic_objects(node.obj, ge[i]):
                post = False
            if not (_is_module(ge[i]) and _is_module(ge[i + 1])):
                post = False
                continue
            if tuple(a + b for a, b in zip(_dimvec(coh[i]), _dimvec(ge[i + 1]))) != _dimvec(ge[i]):
                post = False
    return LeadingLeafReport(leaves_ok, static_ok, post, details)


def summary(node: TTreeNode) -> str:
    return describe_object(node.obj)


def serialize_tree(tree: TTree) -> str:
    """Canonical depth-first text form: index, degree, cohomology data, summary."""
    lines = [f"ttree depth {tree.depth}"]
    for v in tree.nodes():
        hd = v.obj.cohomology_dims()
        coh = "; ".join(f"{d}:{','.join(map(str, dims))}" for d, dims in sorted(hd.items())) or "-"
        shape = "; ".join(f"{i}:{'+'.join(str(tree.root.obj.alg.label(s)) for s in ss) or '0'}"
                          for i, ss in v.obj.shape()) or "-"
        lines.append(f"{v.index or 'e'}\tdeg {v.degree}\tH[{coh}]\tP[{shape}]\t{summary(v)}")
    return "\n".join(lines) + "\n"


def to_dot(tree: TTree, name: str = "ttree") -> str:
    """DOT graph: solid edges for inclusions, dashed for projections."""
    def nid(v: TTreeNode) -> str:
        return "n_" + (v.index or "e")

    safe = "".join(c if c.isalnum() or c == "_" else "_" for c in name) or "ttree"
    out = [f"digraph {safe} {{", "  node [shape=box, fontname=\"monospace\"];"]
    for v in tree.nodes():
        label = f"{v.index or 'e'} : {summary(v)}".replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'  {nid(v)} [label="{label}"];')
    for v in tree.nodes():
        if v.children:
            c0, c1 = v.children
            out.append(f"  {nid(c0)} -> {nid(v)} [style=solid];")
            out.append(f"  {nid(v)} -> {nid(c1)} [style=dashed];")
    out.append("}")
    return "\n".join(out) + "\n"
