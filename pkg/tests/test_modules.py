import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grpscheme import catalog as cat
from grpscheme.adjunction import adjunction_units, coinduce, induce, projection_formula, wirthmuller_iso
from grpscheme.repmod import (
    GModule,
    dual_module,
    hom_space,
    invariants,
    module_iso_search,
    random_module,
    regular_module,
    restrict,
    tensor_modules,
    trivial_module,
)
from grpscheme.report import DimensionMismatch, SchemeMismatch


def _brute_hom_dim(a, b):
    """log_q of the number of equivariant maps, by enumeration."""
    F = a.field
    count = 0
    for entries in itertools.product(range(F.q), repeat=a.dim * b.dim):
        f = np.array(entries, dtype=np.int64).reshape(b.dim, a.dim)
        if all(np.array_equal(F.matmul(f, a.action[i]), F.matmul(b.action[i], f)) for i in range(a.scheme.order)):
            count += 1
    d = round(np.log(count) / np.log(F.q))
    assert F.q**d == count
    return d


@pytest.mark.parametrize("label", ["C2", "alpha2", "mu2", "C3", "mu3"])
def test_hom_dims_match_enumeration(label, rng):
    g = cat.scheme(label)
    mods = [trivial_module(g), regular_module(g), random_module(g, rng, 2)]
    for a, b in itertools.product(mods, repeat=2):
        if a.dim * b.dim > 9:
            continue
        assert hom_space(a, b).shape[0] == _brute_hom_dim(a, b)


@pytest.mark.parametrize("label", ["C2", "alpha3", "heis2", "armu2", "S3@2"])
def test_regular_invariants_one_dimensional(label):
    g = cat.scheme(label)
    reg = regular_module(g)
    assert reg.validate().ok
    assert invariants(reg).shape[1] == 1
    assert invariants(trivial_module(g, 3)).shape[1] == 3


def test_action_shape_checked():
    g = cat.scheme("C2")
    with pytest.raises(DimensionMismatch):
        GModule(g, np.zeros((3, 2, 2), dtype=np.int64))


def test_bad_action_reported():
    g = cat.scheme("C3")
    act = np.zeros((3, 2, 2), dtype=np.int64)
    act[0] = np.eye(2)
    act[1] = act[2] = [[1, 1], [0, 1]]   # g and g^2 act the same way
    rep = GModule(g, act).validate()
    assert not rep["action is multiplicative"].passed


def test_scheme_mismatch():
    e = cat.subgroup("S3@2", "C2")
    with pytest.raises(SchemeMismatch):
        coinduce(e, trivial_module(cat.scheme("C2")))


@pytest.mark.parametrize("label,sub", cat.PAIRS)
def test_induced_dimensions(label, sub):
    e = cat.subgroup(label, sub)
    k = trivial_module(e.sub)
    assert coinduce(e, k).module.dim == e.index
    assert induce(e, k).module.dim == e.index


def test_coinduced_from_trivial_is_regular():
    for label in ("C3", "S3@2", "alpha2", "mu3"):
        e = cat.subgroup(label, "1")
        c = coinduce(e, trivial_module(e.sub)).module
        assert module_iso_search(c, regular_module(e.amb)).status == "found"


@pytest.mark.parametrize("label,sub", [("S3@3", "C2"), ("heis2", "K"), ("armu3", "mu"), ("C2xalpha2", "alpha2")])
def test_zigzag(label, sub, rng):
    e = cat.subgroup(label, sub)
    for n in cat.module_battery(e.sub, rng):
        for m in (trivial_module(e.amb), regular_module(e.amb)):
            data = adjunction_units(e, n, m)
            assert data.report.ok, [c.name for c in data.report.failures()]


def test_projection_formula():
    e = cat.subgroup("S3@2", "A3")
    assert projection_formula(e, trivial_module(e.amb), regular_module(e.sub))


def test_untwisted_iso_fails_on_mu_complement():
    # omega is the nontrivial character of mu_p here
    e = cat.subgroup("armu3", "mu")
    k = trivial_module(e.sub)
    assert wirthmuller_iso(e, k).status == "found"
    plain = module_iso_search(induce(e, k).module, coinduce(e, k).module)
    assert plain.status == "none"


def test_dual_and_tensor():
    g = cat.scheme("heis2")
    reg = regular_module(g)
    assert dual_module(reg).validate().ok
    t = tensor_modules(reg, trivial_module(g, 2))
    assert t.dim == 16 and t.validate().ok
    assert restrict(reg, cat.subgroup("heis2", "K")).validate().ok


@given(st.integers(0, 2**31 - 1), st.sampled_from(["C3", "S3@2", "armu2", "mu3"]))
def test_random_modules_are_modules(seed, label):
    g = cat.scheme(label)
    m = random_module(g, np.random.default_rng(seed), 2)
    assert m.dim == 2
    assert m.validate().ok
