from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from tiltree.exactlin import GF
from tiltree.quiveralg import AlgebraError, BoundQuiverAlgebra, Quiver, build_algebra, certify_finite_gldim


def linear_quiver(k: int) -> Quiver:
    return Quiver([str(i) for i in range(1, k + 1)], [(f"a{i}", str(i), str(i + 1)) for i in range(1, k)])


def _brute(k: int, zero: set[int]) -> int:
    n = 0
    for s in range(1, k + 1):
        for t in range(s, k + 1):
            # arrows a_s .. a_{t-1}; forbidden consecutive pair (a_i, a_{i+1})
            if not any(i in zero for i in range(s, t - 1)):
                n += 1
    return n


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.data())
def test_monomial_linear_dimension_matches_path_count(k, data):
    zero = data.draw(st.sets(st.integers(1, k - 2), max_size=k)) if k > 2 else set()
    q = linear_quiver(k)
    rels = [[(1, [f"a{i + 1}", f"a{i}"])] for i in sorted(zero)]
    alg = build_algebra(q, rels)
    assert alg.dim == _brute(k, zero)


def test_r6_dimension_and_projectives(r6):
    assert r6.dim == 11
    dims = {r6.label(v): r6.projective_dims(v) for v in range(r6.n)}
    assert dims["1"] == (1, 1, 0, 0, 0, 0)
    assert dims["4"] == (0, 0, 0, 1, 1, 0)
    assert dims["5"] == (0, 0, 0, 0, 1, 0)
    assert dims["6"] == (0, 0, 0, 0, 1, 1)


def test_r6_global_dimension(r6):
    assert certify_finite_gldim(r6) == 4


def test_commutative_square():
    q = Quiver("1234", [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)])
    alg = build_algebra(q, [[(1, ["b", "a"]), (-1, ["d", "c"])]])
    assert alg.dim == 9
    assert alg.projective_dims(0) == (1, 1, 1, 1)
    assert certify_finite_gldim(alg) == 2


def test_hereditary_linear_gldim():
    alg = build_algebra(linear_quiver(4), [])
    assert alg.dim == 10
    assert certify_finite_gldim(alg) == 1


def test_prime_field_algebra():
    alg = build_algebra(linear_quiver(3), [[(1, ["a2", "a1"])]], GF(5))
    assert alg.dim == 5


def test_cyclic_quiver_without_relations_is_rejected():
    q = Quiver("12", [("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(AlgebraError):
        BoundQuiverAlgebra(q, [], cap=200)


def test_inadmissible_and_unknown_arrow():
    q = linear_quiver(3)
    with pytest.raises(AlgebraError):
        build_algebra(q, [[(1, ["a1"])]])
    with pytest.raises(AlgebraError):
        build_algebra(q, [[(1, ["zz", "a1"])]])
    with pytest.raises(AlgebraError):
        Quiver("12", [("a", 1, 3)])


def test_path_composition_order():
    q = linear_quiver(3)
    p = q.path(["a2", "a1"])
    assert (q.vertices[p.source], q.vertices[p.target]) == ("1", "3")
    assert q.path_name(p) == "a2*a1"
    with pytest.raises(AlgebraError):
        q.path(["a1", "a2"])
