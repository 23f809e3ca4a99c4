import itertools

import numpy as np
import pytest

from grpscheme import catalog as cat
from grpscheme.hopf import (
    HopfAlgebra,
    GroupScheme,
    build_builtin,
    check_duality,
    check_points,
    connected_component,
    dualize,
    is_normal,
    rational_points,
    subgroup_embed,
    validate_hopf,
)
from grpscheme.norm import height_of
from grpscheme.report import ExtensionDoesNotSplit, NotHopfIdeal
from grpscheme.transfer import splitting_field
from grpscheme.scalars import GF


@pytest.mark.parametrize("label", sorted(cat.SCHEMES))
def test_catalog_schemes_validate(label):
    g = cat.scheme(label)
    rep = g.validate()
    assert rep.ok, [c.name for c in rep.failures()]
    assert check_duality(g).ok


ORDERS = {"C2": 2, "C3": 3, "S3@2": 6, "S3@3": 6, "alpha2": 2, "alpha3": 3, "alpha4": 4, "mu2": 2,
          "mu3": 3, "mu3@2": 3, "heis2": 8, "heis3": 27, "armu2": 4, "armu3": 9, "C2xalpha2": 4}


@pytest.mark.parametrize("label", sorted(ORDERS))
def test_orders(label):
    assert cat.scheme(label).order == ORDERS[label]


def _compose(a, b):
    # one-line notation; (a b)(x) = a(b(x))
    return "".join(a[int(b[x]) - 1] for x in range(len(a)))


@pytest.mark.parametrize("label", ["S3@2", "S3@3"])
def test_s3_points_follow_permutation_composition(label):
    g = cat.scheme(label)
    pts = rational_points(g)
    assert check_points(g, pts).ok
    assert len(pts) == 6
    # each point is evaluation at one group element
    names = []
    for v in pts.points:
        assert sorted(v.tolist()) == [0] * 5 + [1]
        names.append(g.coord.names[int(np.flatnonzero(v)[0])][2:])
    for i, j in itertools.product(range(6), repeat=2):
        assert names[pts.mult_table[i, j]] == _compose(names[i], names[j])


def test_point_counts_depend_on_the_field():
    # mu_3 over F_2 does not split; over F_4 it has all three points
    g = cat.scheme("mu3@2")
    with pytest.raises(ExtensionDoesNotSplit) as info:
        rational_points(g)
    assert info.value.required_degree == 2
    assert len(rational_points(g, GF(2, 2))) == 3
    assert splitting_field(g) == GF(2, 2)
    for label in ("alpha2", "heis2", "armu3"):
        assert len(rational_points(cat.scheme(label))) == 1


@pytest.mark.parametrize("label,conn,etale", [
    ("C2", 1, 2), ("S3@3", 1, 6), ("alpha3", 3, 1), ("mu2", 2, 1), ("mu3@2", 1, 3),
    ("heis2", 8, 1), ("armu3", 9, 1), ("C2xalpha2", 2, 2),
])
def test_connected_etale_split(label, conn, etale):
    c = connected_component(cat.scheme(label))
    assert c.order_connected == conn
    assert c.order_etale == etale


def test_residue_degrees_of_mu3_over_f2():
    c = connected_component(cat.scheme("mu3@2"))
    assert sorted(c.residue_degrees) == [1, 2]


@pytest.mark.parametrize("label,h", [("alpha2", 1), ("alpha4", 2), ("heis3", 1), ("armu2", 1)])
def test_height(label, h):
    assert height_of(cat.scheme(label)) == h


def test_non_coideal_rejected():
    g = cat.scheme("heis2")
    with pytest.raises(NotHopfIdeal):
        subgroup_embed(g, [cat.coord_element(g, "b")])
    with pytest.raises(NotHopfIdeal):
        subgroup_embed(g, [cat.coord_element(g, "a + 1")])


def test_normality():
    assert is_normal(cat.subgroup("S3@2", "A3"))
    assert not is_normal(cat.subgroup("S3@2", "C2"))
    assert is_normal(cat.subgroup("heis2", "K"))
    assert is_normal(cat.subgroup("heis2", "Z"))


def test_subgroup_orders():
    assert cat.subgroup("heis3", "H").sub.order == 3
    assert cat.subgroup("heis3", "K").sub.order == 9
    assert cat.subgroup("heis3", "Z").sub.order == 3
    assert cat.subgroup("armu3", "alpha").sub.order == 3
    assert cat.subgroup("S3@3", "A3").index == 2


def test_cartier_dual_of_mu_is_constant():
    d = dualize(cat.scheme("mu2"))
    assert d.validate().ok
    assert len(rational_points(d)) == 2
    assert connected_component(d).order_connected == 1


def test_broken_antipode_named():
    F = GF(2)
    g = cat.scheme("alpha2")
    A = g.coord
    bad = A.antipode.copy()
    bad[0, 1] = 1   # S(x) = x + 1
    h = HopfAlgebra(F, A.names, A.mult, A.unit, A.comult, A.counit, bad)
    rep = validate_hopf(h)
    assert [c.name for c in rep.failures()] == ["antipode"]
    assert rep["antipode"].witness == ["x"]


def test_builtin_rejects_unknown():
    with pytest.raises(ValueError):
        build_builtin("nope", 2)
    with pytest.raises(ValueError):
        build_builtin("cyclic", 2, {"n": 2}, GF(3))


def test_base_change_is_memoized_and_valid():
    g = cat.scheme("heis2")
    F4 = GF(2, 2)
    assert g.base_change(F4) is g.base_change(F4)
    assert g.base_change(F4).validate().ok


def test_product_with_constant_has_two_components():
    g = cat.scheme("C2xalpha2")
    assert len(connected_component(g).idempotents) == 2
    assert isinstance(g, GroupScheme)
