from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from tiltree.derivedcat import (Complex, DObject, SupportError, cohomology, cone, derived_hom_basis,
                                homotopy_classes, is_isomorphic_objects, minimize,
                                module_object, shift, smart_truncate)
from tiltree.formats import parse_module, parse_object
from tiltree.modcat import ProjModule, ext_dim, is_isomorphic

R6_INDECS = ["1", "2", "3", "4", "5", "6", "1/2", "2/3", "3/4", "4/5", "6/5", "4&6/5"]
indec = st.sampled_from(R6_INDECS)


def _euler_vec(x: DObject) -> tuple[int, ...]:
    n = x.alg.n
    out = [0] * n
    for d, dims in x.cohomology_dims().items():
        for w in range(n):
            out[w] += (-1) ** (d % 2) * dims[w]
    return tuple(out)


def test_shift_convention(r6):
    x = module_object(parse_module("6/5", r6))
    assert set(shift(x, 1).cohomology_dims()) == {-1}
    assert set(shift(x, -2).cohomology_dims()) == {2}
    assert shift(shift(x, 3), -3).cohomology_dims() == x.cohomology_dims()


def test_module_object_is_a_projective_resolution(r6):
    x = module_object(parse_module("1", r6))
    assert x.proj.is_projective()
    assert [x.proj.summands(i) for i in x.proj.degrees()] == [(4,), (3,), (2,), (1,), (0,)]
    assert is_isomorphic(cohomology(x, 0), parse_module("1", r6))


@settings(max_examples=30, deadline=None)
@given(indec, indec, st.integers(0, 4))
def test_hom_in_derived_category_is_ext(r6, a, b, j):
    M, N = parse_module(a, r6), parse_module(b, r6)
    x, y = module_object(M), module_object(N)
    d1, _ = homotopy_classes(x.proj, y.proj, j, reps=False)
    d2, basis = derived_hom_basis(x, y, j)
    assert d1 == d2 == ext_dim(M, N, j) == len(basis)


@settings(max_examples=30, deadline=None)
@given(indec, indec, st.integers(1, 3), st.data())
def test_cone_euler_additivity(r6, a, b, p, data):
    x = module_object(parse_module(a, r6))
    y = module_object(parse_module(b, r6))
    _, maps = homotopy_classes(x.proj, y.proj, p)
    if not maps:
        return
    f = data.draw(st.sampled_from(maps))
    yp = shift(y, p)
    tri = cone(f, x, yp)
    # chi(C) = chi(B) - chi(A) vertexwise, from the long exact sequence
    assert _euler_vec(tri.C) == tuple(c - a_ for c, a_ in zip(_euler_vec(yp), _euler_vec(x)))
    tri.v.validate()
    tri.w.validate()


def test_minimize_removes_contractible_pieces(r6):
    P = ProjModule(r6, (0,))
    from tiltree.modcat import identity
    C = Complex(r6, {-1: P, 0: P}, {-1: identity(P)}, check=True)
    Cm, f, g = minimize(C)
    assert Cm.is_zero()


def test_named_complex_matches_cone(r6):
    x = parse_object("4&6/5->*3/4", r6)
    assert x.cohomology_dims() == {-1: (0, 0, 0, 0, 1, 1), 0: (0, 0, 1, 0, 0, 0)}
    y = parse_object("4&6/5->*3/4", r6)
    assert is_isomorphic_objects(x, y)
    assert not is_isomorphic_objects(x, parse_object("4/5->*3/4", r6))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["4&6/5->*3/4", "4/5->3/4->*2/3", "4&6/5->3/4->2/3->*1/2", "2/3->*1/2"]),
       st.integers(-3, 1))
def test_smart_truncation_splits_cohomology(r6, expr, k):
    x = parse_object(expr, r6)
    le, ge, tri = smart_truncate(x, k)
    hx = x.cohomology_dims()
    assert le.cohomology_dims() == {d: v for d, v in hx.items() if d <= k}
    assert ge.cohomology_dims() == {d: v for d, v in hx.items() if d > k}
    tri.u.validate()


def test_isomorphism_of_shifted_objects(r6):
    a = shift(module_object(parse_module("6/5", r6)), 2)
    b = parse_object("6/5[2]", r6)
    assert is_isomorphic_objects(a, b)
    assert not is_isomorphic_objects(a, parse_object("6/5[1]", r6))


def test_support_bound(r6):
    x = module_object(parse_module("2", r6))
    with pytest.raises(SupportError):
        shift(x, 200)
