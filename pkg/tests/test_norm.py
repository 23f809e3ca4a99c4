import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from grpscheme import catalog as cat
from grpscheme.norm import (
    ComoduleAlgebra,
    PolyCarrier,
    algebra_invariants,
    component_determinants,
    det_bareiss,
    det_berkowitz,
    det_cofactor,
    field_norm_compare,
    mumford_norm,
    relative_norm,
    validate_comodule,
)
from grpscheme.report import NotInvariant
from grpscheme.scalars import GF, Poly


def _to_sympy(f, syms):
    return sympy.Add(*[c * sympy.Mul(*[s**k for s, k in zip(syms, e)]) for e, c in f.terms.items()])


def _from_sympy(expr, syms, S):
    p = S.field.p
    d = sympy.Poly(expr, *syms, modulus=p).as_dict()
    return S.carrier.poly({e: int(c) % p for e, c in d.items()})


def _orbit_product(S, f, perms):
    """prod over permutations of f with x_i -> x_{perm(i)}, the classical norm."""
    syms = sympy.symbols(S.carrier.vars)
    g = _to_sympy(f, syms)
    total = sympy.Integer(1)
    for perm in perms:
        total *= g.subs({syms[i]: syms[perm[i]] for i in range(len(syms))}, simultaneous=True)
    return _from_sympy(sympy.expand(total), syms, S)


@given(st.integers(0, 2**31 - 1))
def test_mumford_norm_is_the_orbit_product_for_s3(seed):
    ent = cat.norm_entry("S3@2 permutation")
    S = ent.algebra
    f = S.random_element(np.random.default_rng(seed), degree=1, terms=2)
    perms = list(itertools.permutations(range(3)))
    assert mumford_norm(S, f) == _orbit_product(S, f, perms)


@given(st.integers(0, 2**31 - 1))
def test_mumford_norm_is_the_orbit_product_for_c3(seed):
    S = cat.norm_entry("C3 permutation").algebra
    f = S.random_element(np.random.default_rng(seed), degree=2, terms=2)
    perms = [[(i + k) % 3 for i in range(3)] for k in range(3)]
    assert mumford_norm(S, f) == _orbit_product(S, f, perms)


@pytest.mark.parametrize("p", [2, 3])
@given(seed=st.integers(0, 2**31 - 1))
def test_translation_norm_is_pth_power(p, seed):
    # multiplication by f(v + x) on S[x]/(x^p) is unitriangular up to the factor f(v)
    S = cat.norm_entry(f"alpha{p} translation").algebra
    f = S.random_element(np.random.default_rng(seed), degree=3, terms=3)
    assert mumford_norm(S, f) == f**p


def test_mu3_scaling_norms():
    S = cat.norm_entry("mu3@2 scaling").algebra
    v = S.carrier.var("v")
    assert mumford_norm(S, v) == v**3
    assert mumford_norm(S, v + 1) == v**3 + 1
    assert relative_norm(S, None, v + 1).value == v**3 + 1


def test_invariant_bases():
    S = cat.norm_entry("alpha2 translation").algebra
    v = S.carrier.var("v")
    assert algebra_invariants(S, 3) == [S.one(), v**2]
    P = cat.norm_entry("S3@2 permutation").algebra
    # symmetric polynomials: 1, e1, e1^2, e2 up to degree 2
    assert len(algebra_invariants(P, 2)) == 4
    assert all(P.is_invariant(b) for b in algebra_invariants(P, 3))


def test_relative_norm_requires_invariance():
    ent = cat.norm_entry("S3@2 permutation")
    S = ent.algebra
    e = cat.subgroup("S3@2", "A3")
    x1 = S.carrier.var("x1")
    with pytest.raises(NotInvariant):
        relative_norm(S, e, x1)


def test_relative_norm_of_invariant_is_power():
    S = cat.norm_entry("S3@2 permutation").algebra
    x1, x2, x3 = (S.carrier.var(v) for v in ("x1", "x2", "x3"))
    s = x1 + x2 + x3
    for sub, idx in (("C2", 3), ("A3", 2), ("1", 6)):
        e = cat.subgroup("S3@2", sub)
        assert relative_norm(S, e, s).value == s**idx


def test_transversal_independence():
    S = cat.norm_entry("S3@2 permutation").algebra
    e = cat.subgroup("S3@2", "C2")
    x1, x2, x3 = (S.carrier.var(v) for v in ("x1", "x2", "x3"))
    s = x1 * x2 + x3   # fixed by the transposition 1 <-> 2
    a = relative_norm(S, e, s)
    b = relative_norm(S, e, s, last_representatives=True)
    assert a.transversal != b.transversal
    assert a.value == b.value
    assert S.is_invariant(a.value)


def test_height_power_is_invariant():
    S = cat.norm_entry("armu3 affine").algebra
    v = S.carrier.var("v")
    assert not S.is_invariant(v)
    # height one: p-th powers are invariant
    assert S.is_invariant(v**3)


def test_component_determinants():
    S = cat.norm_entry("C2xalpha2 swap").algebra
    u = S.carrier.var("u")
    for cd in component_determinants(S, u * u + u):
        assert cd.equal


def test_field_norm_examples():
    S, T = cat.field_f4()
    w = S.carrier.basis_elem(1)
    r = field_norm_compare(S, w)
    assert (r.degree, r.exponent, r.divides, r.agrees) == (2, 1, True, True)
    assert r.norm == S.one()
    r2 = field_norm_compare(T, T.carrier.basis_elem(1))
    assert (r2.degree, r2.exponent, r2.divides, r2.agrees) == (2, 2, True, True)


def test_broken_coaction_detected():
    g = cat.scheme("alpha2")
    C = PolyCarrier.make(g.field, ["v"])
    comps = [C.zero(), C.var("v")]   # sigma(v) = v (x) x
    rep = validate_comodule(ComoduleAlgebra(g, C, {"v": comps}))
    assert not rep["counit"].passed


# ------------------------------------------------------------- determinants
def _random_poly_matrix(seed, n, F):
    rng = np.random.default_rng(seed)
    vars_ = ("s", "t")
    M = []
    for _ in range(n):
        row = []
        for _ in range(n):
            terms = {tuple(int(x) for x in rng.integers(0, 2, size=2)): int(rng.integers(F.q)) for _ in range(2)}
            row.append(Poly(F, vars_, terms))
        M.append(row)
    return M


@given(st.integers(0, 2**31 - 1), st.integers(1, 4), st.sampled_from([(2, 1), (3, 1), (2, 2)]))
def test_determinants_agree(seed, n, pm):
    F = GF(*pm)
    M = _random_poly_matrix(seed, n, F)
    a, b = det_cofactor(M), det_berkowitz(M)
    assert a == b
    if F.m == 1:
        assert det_bareiss(M) == a
        syms = sympy.symbols("s t")
        sm = sympy.Matrix([[_to_sympy(x, syms) for x in row] for row in M])
        want = sympy.Poly(sympy.expand(sm.det()), *syms, modulus=F.p).as_dict()
        assert a.terms == {e: int(c) % F.p for e, c in want.items() if int(c) % F.p}
