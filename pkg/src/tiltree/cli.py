"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import configparser
import functools
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import click

from .compat import (Direction, _scan, base_modules, default_corpus, find_incompat_witness,
                     indecomposable_corpus)
from .derivedcat import SupportError
from .formats import (FormatError, describe_module, describe_object, parse_algebra_file,
                      parse_field, parse_module, parse_module_file, parse_object)
from .hrs import TStructureTower, VerificationError
from .modcat import projective_cover, simple
from .properties import orthogonality, tower_inclusions, tree_properties
from .quiveralg import AlgebraError, certify_finite_gldim
from .tilting import ke_class, static_profile, verify_tilting
from .ttree import build_ttree, serialize_tree, to_dot

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class WorkspaceConfig:
    algebra: str | None = None
    tilting: str | None = None
    field: str | None = None
    out: str | None = None
    window: tuple[int, int] | None = None

    @classmethod
    def from_file(cls, path: str) -> "WorkspaceConfig":
        cp = configparser.ConfigParser()
        if not cp.read(path):
            raise FormatError(f"cannot read config {path}")
        sec = cp["workspace"] if cp.has_section("workspace") else cp[cp.default_section]
        base = Path(path).parent
        win = None
        if sec.get("window"):
            try:
                lo, hi = (int(t) for t in sec["window"].split(","))
            except ValueError:
                raise FormatError("window is 'lo, hi'") from None
            win = (lo, hi)

        def rel(key):
            v = sec.get(key)
            return str(base / v) if v else None

        return cls(rel("algebra"), rel("tilting"), sec.get("field"), rel("out"), win)


def _read(path: str | None, bundled: str) -> str:
    if path is None:
        return resources.files("tiltree").joinpath("data", bundled).read_text()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None


class Workspace:
    def __init__(self, cfg: WorkspaceConfig):
        self.cfg = cfg
        field = parse_field(cfg.field) if cfg.field else None
        self.alg = parse_algebra_file(_read(cfg.algebra, "r6.alg"), field=field)
        certify_finite_gldim(self.alg)
        self._T = None
        self._tower = None

    @property
    def T(self):
        if self._T is None:
            self._T = parse_module_file(_read(self.cfg.tilting, "t6.mod"), self.alg)
        return self._T

    @property
    def tower(self) -> TStructureTower:
        if self._tower is None:
            self._tower = TStructureTower(self.T)
        return self._tower

    def window(self) -> list[int] | None:
        if self.cfg.window is None:
            return None
        lo, hi = self.cfg.window
        return list(range(lo, hi + 1))

    def out_path(self, name: str) -> Path:
        p = Path(name)
        if self.cfg.out and not p.is_absolute():
            Path(self.cfg.out).mkdir(parents=True, exist_ok=True)
            p = Path(self.cfg.out) / p
        return p


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            code = fn(*args, **kwargs)
        except FormatError as e:
            click.echo(f"input error: {e}", err=True)
            sys.exit(EXIT_INPUT)
        except VerificationError as e:
            click.echo(f"verification failure: {e}", err=True)
            sys.exit(EXIT_FAIL)
        except (AlgebraError, SupportError) as e:
            click.echo(f"input error: {e}", err=True)
            sys.exit(EXIT_INPUT)
        sys.exit(code or EXIT_OK)
    return wrapper


def _emit(lines) -> None:
    for line in lines:
        click.echo(line)


@click.group()
@click.option("--algebra", "algebra", type=str, default=None, help="Algebra file (default: bundled R6).")
@click.option("--tilting", "tilting", type=str, default=None, help="Tilting module file (default: bundled T6).")
@click.option("--field", "field", type=str, default=None, help="Override the algebra's field, e.g. GF(101).")
@click.option("--out", "out", type=str, default=None, help="Directory for written artifacts.")
@click.option("--config", "config", type=str, default=None, help="INI file with a [workspace] section.")
@click.pass_context
def main(ctx, algebra, tilting, field, out, config):
    """Iterated t-structures and right t-trees for classical tilting modules."""
    try:
        cfg = WorkspaceConfig.from_file(config) if config else WorkspaceConfig()
    except FormatError as e:
        click.echo(f"input error: {e}", err=True)
        sys.exit(EXIT_INPUT)
    for k, v in (("algebra", algebra), ("tilting", tilting), ("field", field), ("out", out)):
        if v is not None:
            setattr(cfg, k, v)
    ctx.obj = cfg


def _ws(ctx) -> Workspace:
    return Workspace(ctx.obj)


@main.group()
def algebra():
    """Algebra commands."""


@algebra.command("check")
@click.pass_context
@_guard
def algebra_check(ctx):
    ws = _ws(ctx)
    A = ws.alg
    q = A.quiver
    _emit([f"name: {A.name or '-'}",
           f"field: {A.field.name}",
           f"vertices: {' '.join(q.vertices)}",
           f"arrows: {len(q.arrows)}",
           f"relations: {len(A.relations)}",
           f"dim: {A.dim}",
           f"gldim: {A.gldim}"])
    for v in range(A.n):
        P, _ = projective_cover(simple(A, v))
        _emit([f"P({A.label(v)}): {describe_module(P)}"])


@main.group()
def tilting():
    """Tilting module commands."""


@tilting.command("verify")
@click.option("--n", "n", type=int, default=None, help="Claimed projective dimension.")
@click.pass_context
@_guard
def tilting_verify(ctx, n):
    ws = _ws(ctx)
    rep = verify_tilting(ws.T, n)
    _emit(rep.lines())
    return EXIT_OK if rep.verdict else EXIT_FAIL


@main.command("ttree")
@click.argument("module")
@click.option("--dot", "dot", type=str, default=None, help="Write the tree as a DOT graph.")
@click.pass_context
@_guard
def ttree_cmd(ctx, module, dot):
    """Right t-tree of MODULE (a module descriptor such as simple3 or 4&6/5)."""
    ws = _ws(ctx)
    M = parse_module(module, ws.alg)
    tree = build_ttree(ws.tower, M)
    click.echo(serialize_tree(tree), nl=False)
    if dot:
        p = ws.out_path(dot)
        p.write_text(to_dot(tree, f"ttree_{module}"))
        click.echo(f"dot: {p}", err=True)


@main.command("profile")
@click.argument("obj")
@click.pass_context
@_guard
def profile_cmd(ctx, obj):
    """rhom profile, staticity and Ext class of OBJ."""
    ws = _ws(ctx)
    x = parse_object(obj, ws.alg)
    prof = static_profile(ws.T, x)
    sd = prof.static_degree
    lines = [f"object: {describe_object(x)}",
             "rhom: {" + ", ".join(f"{j}:{d}" for j, d in sorted(prof.dims.items())) + "}",
             f"static degree: {'-' if sd is None else sd}"]
    hd = x.cohomology_dims()
    if set(hd) <= {0} and hd:
        M = parse_module(obj, ws.alg) if "[" not in obj and "->" not in obj else None
        if M is not None:
            e = ke_class(ws.T, M)
            lines.append(f"ext class: {'-' if e is None else e}")
    _emit(lines)


@main.group()
def hearts():
    """Tower membership commands."""


@hearts.command("member")
@click.argument("obj")
@click.option("--level", "level", type=int, required=True)
@click.pass_context
@_guard
def hearts_member(ctx, obj, level):
    ws = _ws(ctx)
    tw = ws.tower
    if not 0 <= level <= tw.n:
        raise FormatError(f"level must lie in 0..{tw.n}")
    x = parse_object(obj, ws.alg)
    yn = {True: "yes", False: "no"}
    aisle = tw.member_aisle(level, x, 0, recursive=True)
    coaisle = tw.member_coaisle(level, x, 0)
    heart = aisle and coaisle
    _emit([f"object: {describe_object(x)}",
           f"level: {level}",
           f"aisle: {yn[aisle]}",
           f"coaisle: {yn[coaisle]}",
           f"heart: {yn[heart]}",
           f"torsion X: {yn[heart and tw.in_torsion(level, x)]}",
           f"torsion-free Y: {yn[heart and tw.in_free(level, x)]}"])


@main.group()
def compat():
    """Compatibility scans against the natural t-structure."""


@compat.command("scan")
@click.option("--direction", type=click.Choice(["left", "right", "both"]), default="both")
@click.option("--indecomposables-only", is_flag=True, help="Skip the cone round of the corpus.")
@click.pass_context
@_guard
def compat_scan(ctx, direction, indecomposables_only):
    ws = _ws(ctx)
    tw = ws.tower
    corpus = (indecomposable_corpus(tw, ws.window()) if indecomposables_only
              else default_corpus(tw, ws.window()))
    dirs = [Direction.LEFT, Direction.RIGHT] if direction == "both" else [Direction(direction)]
    for d in dirs:
        _emit(_scan(tw, corpus, d, None, False).lines())


@compat.command("witness")
@click.pass_context
@_guard
def compat_witness(ctx):
    ws = _ws(ctx)
    tw = ws.tower
    corpus = None if ws.window() is None else default_corpus(tw, ws.window())
    res = find_incompat_witness(tw, corpus)
    _emit(res.lines())
    if res.exhausted:
        # a tilting pair with n >= 2 always has a witness; not finding one means the corpus is too small
        return EXIT_FAIL if tw.n >= 2 else EXIT_OK
    return EXIT_OK if res.replayed else EXIT_FAIL


@main.group()
def corpus():
    """Batch property suites."""


@corpus.command("run")
@click.option("--trees/--no-trees", default=True, help="Include the t-tree suites.")
@click.pass_context
@_guard
def corpus_run(ctx, trees):
    ws = _ws(ctx)
    tw = ws.tower
    items = indecomposable_corpus(tw, ws.window())
    results = [tower_inclusions(tw, items)]
    near = [x for x in items if all(-1 <= j <= 1 for j in x.obj.cohomology_dims())]
    results.append(orthogonality(tw, near))
    if trees:
        results += tree_properties(tw, base_modules(tw))
    for r in results:
        click.echo(r.line())
        for f in r.failures:
            click.echo(f"  {f}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


if __name__ == "__main__":
    main()
