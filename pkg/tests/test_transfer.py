import numpy as np
import pytest

from grpscheme import catalog as cat
from grpscheme.adjunction import coinduce
from grpscheme.hopf import identity_embedding
from grpscheme.repmod import hom_space, invariants, tensor_modules, random_module, regular_module, restrict, splits_off_one_dim, trivial_module
from grpscheme.transfer import (
    delta_module,
    double_coset_invariants,
    higman_certificate,
    integral_space,
    lambda_scalar,
    omega,
    transfer_apply,
    transfer_domain,
    transfer_invariants,
    transfer_literal,
    transfer_map,
    unimodular,
)


@pytest.mark.parametrize("label", cat.INTEGRAL_SCHEMES)
def test_integrals_one_dimensional(label):
    g = cat.scheme(label)
    assert integral_space(g, "left").dim == 1
    assert integral_space(g, "right").dim == 1


def test_unimodularity():
    for label in ("C2", "S3@3", "alpha3", "mu3", "heis3", "C2xalpha2"):
        assert unimodular(cat.scheme(label))
    for label in ("armu2", "armu3"):
        assert not unimodular(cat.scheme(label))
        assert not delta_module(cat.scheme(label)).trivial


def test_omega_on_non_unimodular_pairs():
    assert omega(cat.subgroup("armu3", "alpha")).trivial
    assert not omega(cat.subgroup("armu3", "mu")).trivial


def _element_action(m, name):
    return m.action[m.scheme.group_alg.index(name)]


def _coset_sum(e, m, n, f):
    """sum over left coset representatives g of g f g^-1, for a constant group."""
    G = e.amb
    F = G.field
    names = G.group_alg.names
    table = G.group_table
    h_names = set(e.sub.group_alg.names)
    h_idx = [names.index(x) for x in h_names]
    seen, total = set(), np.zeros_like(f)
    for gi in range(len(names)):
        if gi in seen:
            continue
        seen.update(int(table[gi, h]) for h in h_idx)
        ginv = next(j for j in range(len(names)) if table[gi, j] == _identity(table))
        total = F.add(total, F.matmul(F.matmul(_element_action(n, names[gi]), f), _element_action(m, names[ginv])))
    return total


def _identity(table):
    n = table.shape[0]
    return next(e for e in range(n) if all(table[e, g] == g for g in range(n)))


@pytest.mark.parametrize("label,sub", [("S3@2", "C2"), ("S3@2", "A3"), ("S3@3", "C2"), ("S3@3", "A3"), ("C3", "1")])
def test_transfer_is_the_coset_sum_for_constant_groups(label, sub, rng):
    e = cat.subgroup(label, sub)
    G = e.amb
    mods = [trivial_module(G), regular_module(G), random_module(G, rng, 2)]
    for m in mods:
        for n in mods:
            dom = transfer_domain(e, m, n)
            if not len(dom):
                continue
            got = transfer_apply(e, m, n, dom)
            for f, tf in zip(dom, got):
                assert np.array_equal(tf, _coset_sum(e, m, n, f))


@pytest.mark.parametrize("label,sub", cat.PAIRS)
def test_literal_composite_matches(label, sub):
    e = cat.subgroup(label, sub)
    L = regular_module(e.amb)
    w = omega(e)
    src = invariants(tensor_modules(w.module, restrict(L, e)))
    for j in range(src.shape[1]):
        assert np.array_equal(transfer_literal(e, L, src[:, j]), transfer_invariants(e, L, src[:, [j]])[:, 0])


@pytest.mark.parametrize("label,sub", cat.PAIRS)
def test_lambda_table(label, sub):
    e = cat.subgroup(label, sub)
    lam = lambda_scalar(e)
    assert lam.nonzero == cat.LAMBDA_NONZERO[(label, sub)]
    k = trivial_module(e.amb)
    c = coinduce(e, trivial_module(e.sub)).module
    assert splits_off_one_dim(k, c) == lam.nonzero
    assert higman_certificate(k, [e]).projective == lam.nonzero


def test_index_transfer_on_trivial_module():
    # Tr(id_k) = |G:H| for constant groups
    for label, sub in (("S3@3", "C2"), ("S3@2", "A3")):
        e = cat.subgroup(label, sub)
        k = trivial_module(e.amb)
        val = transfer_apply(e, k, k, np.eye(1, dtype=np.int64)[None])[0, 0, 0]
        assert val == e.index % e.amb.field.p


def test_surjective_on_coinduced(rng):
    for label, sub in cat.PAIRS:
        e = cat.subgroup(label, sub)
        for n in (trivial_module(e.sub), regular_module(e.sub)):
            c = coinduce(e, n).module
            assert transfer_map(e, c, c).surjective, (label, sub, n.name)


@pytest.mark.parametrize("p", [2, 3])
def test_mackey_example_dimensions(p):
    label = f"heis{p}"
    H, K = cat.subgroup(label, "H"), cat.subgroup(label, "K")
    assert double_coset_invariants(None, H).dim == p * p
    assert double_coset_invariants(K, H).dim == p


@pytest.mark.parametrize("p", [2, 3])
def test_higman_projectivity_failure(p):
    from grpscheme.suites import heisenberg_v_module

    V, K = heisenberg_v_module(p)
    assert V.dim == p * p
    assert higman_certificate(V, [identity_embedding(K.sub)]).projective
    assert not higman_certificate(V, cat.k_lines(p)).projective


def test_hom_space_of_empty_transfer_domain():
    e = cat.subgroup("armu3", "mu")
    k = trivial_module(e.amb)
    assert len(transfer_domain(e, k, k)) == 0
    assert transfer_map(e, k, k).rank == 0
    assert len(hom_space(k, k)) == 1
