from __future__ import annotations

import pytest

from tiltree.derivedcat import derived_hom_basis, module_object
from tiltree.formats import parse_module
from tiltree.modcat import ext_dim, simple
from tiltree.tilting import ke_class, rhom_dims, static_profile, tilting_object, verify_tilting

# computed with derived_hom_basis and ext_dim, then frozen
SIMPLE_RHOM = {
    "1": {0: 1},
    "2": {0: 2},
    "3": {0: 1, 1: 1},
    "4": {0: 1, 2: 1},
    "5": {1: 2, 3: 1},
    "6": {0: 2},
}


def test_r6_fixture_is_three_tilting(t6):
    rep = verify_tilting(t6)
    assert rep.pd == 3 and rep.rigid and rep.generates and rep.verdict
    assert rep.end_dim == 12
    assert "3-tilting: yes" in rep.lines()
    assert all(d == 0 for d in rep.ext_profile.values())


def test_claimed_dimension_mismatch(t6):
    rep = verify_tilting(t6, n=2)
    assert not rep.verdict
    assert rep.lines()[-2:] == ["failure: claimed n = 2 but pd = 3", "2-tilting: no"]


@pytest.mark.parametrize("v", sorted(SIMPLE_RHOM))
def test_simple_rhom_profiles(r6, t6, v):
    x = module_object(simple(r6, r6.vertex(v)))
    assert rhom_dims(t6, x) == SIMPLE_RHOM[v]
    TX = tilting_object(t6)
    for j in range(-4, 5):
        assert derived_hom_basis(TX, x, j)[0] == SIMPLE_RHOM[v].get(j, 0)
        if j >= 0:
            assert ext_dim(t6, simple(r6, r6.vertex(v)), j) == SIMPLE_RHOM[v].get(j, 0)


def test_static_and_ext_classes(r6, t6):
    assert static_profile(t6, module_object(t6)).static_degree == 0
    assert ke_class(t6, simple(r6, r6.vertex("1"))) == 0
    assert ke_class(t6, simple(r6, r6.vertex("5"))) is None
    assert ke_class(t6, parse_module("6/5", r6)) == 3


def test_a2_apr_module(a2, t_a2):
    rep = verify_tilting(t_a2)
    assert rep.pd == 1 and rep.verdict


def test_a2_non_rigid_and_non_generating(a2):
    sums = parse_module("1 + 2", a2)
    rep = verify_tilting(sums)
    assert not rep.rigid and not rep.verdict
    lone = parse_module("2", a2)
    rep = verify_tilting(lone)
    assert not rep.generates and not rep.verdict


def test_projective_generator_is_zero_tilting(r6):
    A = parse_module(" + ".join(f"P{r6.label(v)}" for v in range(r6.n)), r6)
    rep = verify_tilting(A)
    assert rep.pd == 0 and rep.verdict
