import numpy as np
import pytest

from grpscheme import catalog as cat
from grpscheme.extcoh import bar_resolution, ext_dim, transfer_ext
from grpscheme.repmod import regular_module, trivial_module
from grpscheme.report import SizeCapExceeded
from grpscheme.suites import periodic_ext_dims
from grpscheme.transfer import transfer_map


def _dims(label, top, coeff="k"):
    g = cat.scheme(label)
    k = trivial_module(g)
    m = k if coeff == "k" else regular_module(g)
    return [ext_dim(g, k, m, n).dim for n in range(top + 1)]


@pytest.mark.parametrize("label", ["C2", "C3"])
def test_cyclic_matches_periodic_resolution(label):
    g = cat.scheme(label)
    k = trivial_module(g)
    gen = g.group_alg.basis_vector(g.group_alg.index("g"))
    assert _dims(label, 3) == periodic_ext_dims(g.field.p, k.action[0], k.act(gen), 3, g.field) == [1, 1, 1, 1]


@pytest.mark.parametrize("label,top,want", [
    ("alpha2", 3, [1, 1, 1, 1]),    # k[x]/(x^2) is periodic too
    ("mu2", 3, [1, 0, 0, 0]),       # linearly reductive
    ("mu3@2", 2, [1, 0, 0]),
    ("S3@2", 2, [1, 1, 1]),         # Hom(S_3, F_2) = F_2 and H^2 = H^2(C_2)
    ("S3@3", 3, [1, 0, 0, 1]),      # the C_2-invariants of H^*(C_3, F_3)
])
def test_known_cohomology(label, top, want):
    assert _dims(label, top) == want


@pytest.mark.parametrize("label", ["C2", "alpha2", "S3@3"])
def test_regular_coefficients_acyclic(label):
    assert _dims(label, 2, "reg") == [1, 0, 0]


def test_bar_resolution_checks():
    for label in ("C2", "mu2", "armu2"):
        g = cat.scheme(label)
        assert bar_resolution(g, trivial_module(g), 2).check().ok


def test_size_cap():
    g = cat.scheme("heis3")
    with pytest.raises(SizeCapExceeded):
        ext_dim(g, trivial_module(g), trivial_module(g), 3)


@pytest.mark.parametrize("label", ["C2", "C3"])
def test_transfer_restriction_vanishes(label):
    e = cat.subgroup(label, "1")
    k = trivial_module(e.amb)
    for n in range(4):
        tr = transfer_ext(e, k, k, n)
        assert all(tr.commutes)
        assert not np.any(e.amb.field.matmul(tr.matrix, tr.restriction))


def test_degree_zero_is_module_transfer():
    for label, sub in (("S3@2", "C2"), ("S3@3", "A3"), ("mu3", "1"), ("armu3", "mu")):
        e = cat.subgroup(label, sub)
        k = trivial_module(e.amb)
        tr = transfer_ext(e, k, k, 0)
        rank = e.amb.field.rank(tr.matrix) if tr.matrix.size else 0
        assert rank == transfer_map(e, k, k).rank
