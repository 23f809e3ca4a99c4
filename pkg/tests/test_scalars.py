import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_mul, gf_rem

from grpscheme.scalars import BUILTIN_MODULI, GF, Field, Poly, is_irreducible

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


def _as_poly(F, a):
    # galoistools wants high-to-low coefficient lists
    c = F.coeffs(a)[::-1]
    while c and c[0] == 0:
        c = c[1:]
    return [ZZ(x) for x in c]


def _from_poly(F, poly):
    c = [int(x) for x in poly[::-1]]
    return F.elem(c)


def _oracle_mul(F, a, b):
    mod = [ZZ(x) for x in F.modulus[::-1]]
    return _from_poly(F, gf_rem(gf_mul(_as_poly(F, a), _as_poly(F, b), F.p, ZZ), mod, F.p, ZZ))


@pytest.mark.parametrize("p,m", FIELDS)
def test_tables_match_polynomial_arithmetic(p, m):
    F = GF(p, m)
    for a in F.elements():
        for b in F.elements():
            assert int(F.mul(a, b)) == _oracle_mul(F, a, b)
            s = gf_add(_as_poly(F, a), _as_poly(F, b), p, ZZ)
            assert int(F.add(a, b)) == _from_poly(F, s)


@pytest.mark.parametrize("p,m", FIELDS)
def test_inverses(p, m):
    F = GF(p, m)
    for a in range(1, F.q):
        assert int(F.mul(a, F.inv(a))) == 1


def test_builtin_moduli_irreducible():
    for (p, m), mod in BUILTIN_MODULI.items():
        assert is_irreducible(mod, p)
        poly = sympy.Poly(list(reversed(mod)), sympy.Symbol("t"), modulus=p)
        assert poly.is_irreducible


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        Field(2, 2, (1, 0, 1))   # t^2 + 1 = (t + 1)^2
    with pytest.raises(ValueError):
        Field(4)


fields = st.sampled_from(FIELDS).map(lambda pm: GF(*pm))


@st.composite
def field_and_elems(draw, k=3):
    F = draw(fields)
    return F, [draw(st.integers(0, F.q - 1)) for _ in range(k)]


@given(field_and_elems())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


@given(fields, st.integers(0, 2**31 - 1))
def test_frobenius_is_pth_power(F, seed):
    a = int(np.random.default_rng(seed).integers(F.q))
    assert int(F.frobenius(a)) == F.power(a, F.p)
    assert F.power(a, F.q) == a


@st.composite
def matrices(draw, max_n=5):
    F = draw(fields)
    r = draw(st.integers(1, max_n))
    c = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**31 - 1))
    return F, F.random(np.random.default_rng(seed), (r, c))


@given(matrices())
def test_rref_kernel_rank(data):
    F, a = data
    r_mat, piv = F.rref(a)
    assert len(piv) == F.rank(a)
    # leftmost pivots, identity in pivot columns
    for i, pc in enumerate(piv):
        assert r_mat[i, pc] == 1
        assert np.count_nonzero(r_mat[:, pc]) == 1
    k = F.kernel(a)
    assert k.shape[1] == a.shape[1] - len(piv)
    assert not np.any(F.matmul(a, k))


@given(matrices())
def test_rank_by_counting_row_space(data):
    F, a = data
    if F.m > 1:
        return
    rows = {tuple(np.zeros(a.shape[1], dtype=np.int64))}
    for row in a:
        rows |= {tuple((np.array(r) + c * row) % F.p) for r in rows for c in range(F.p)}
    assert len(rows) == F.p ** F.rank(a)


@given(st.sampled_from(FIELDS), st.integers(0, 2**31 - 1), st.integers(1, 4))
def test_inverse_and_det(pm, seed, n):
    F = GF(*pm)
    a = F.random(np.random.default_rng(seed), (n, n))
    if F.det(a) == 0:
        assert F.rank(a) < n
        return
    inv = F.inverse(a)
    assert np.array_equal(F.matmul(a, inv), np.eye(n, dtype=np.int64))


@given(st.integers(0, 2**31 - 1))
def test_det_multiplicative(seed):
    F = GF(3, 2)
    rng = np.random.default_rng(seed)
    a, b = F.random(rng, (3, 3)), F.random(rng, (3, 3))
    assert F.det(F.matmul(a, b)) == F.mul(F.det(a), F.det(b))


@given(st.integers(0, 2**31 - 1))
def test_kron_matches_numpy_layout(seed):
    rng = np.random.default_rng(seed)
    F = GF(2, 2)
    a, b = F.random(rng, (2, 3)), F.random(rng, (3, 2))
    out = F.kron(a, b)
    for i in range(2):
        for j in range(3):
            for k in range(3):
                for l in range(2):
                    assert out[i * 3 + k, j * 2 + l] == F.mul(a[i, j], b[k, l])
    # stacks of matrices follow np.kron on every axis
    s, t = F.random(rng, (2, 2, 2)), F.random(rng, (3, 1, 2))
    assert F.kron(s, t).shape == np.kron(s, t).shape
    P = GF(3)
    s, t = P.random(rng, (2, 2, 2)), P.random(rng, (3, 1, 2))
    assert np.array_equal(P.kron(s, t), np.kron(s, t) % 3)


@given(st.integers(0, 2**31 - 1))
def test_subfield_embedding_is_a_ring_map(seed):
    small, big = GF(2, 1), GF(2, 2)
    emb = big.embedding_from(small)
    for a in range(2):
        for b in range(2):
            assert emb[int(small.mul(a, b))] == big.mul(emb[a], emb[b])
    F3, F9 = GF(3), GF(3, 2)
    e = F9.embedding_from(F3)
    assert all(F9.in_subfield(e, 1))
    assert np.array_equal(F9.restriction_to(F3, e), np.arange(3))


# ---------------------------------------------------------------- polynomials
def _poly(F, vars_, seed, trunc=None):
    rng = np.random.default_rng(seed)
    terms = {}
    for _ in range(rng.integers(0, 4)):
        e = tuple(int(x) for x in rng.integers(0, 3, size=len(vars_)))
        terms[e] = int(rng.integers(F.q))
    return Poly(F, vars_, terms, trunc)


@given(st.sampled_from(FIELDS), st.integers(0, 2**31 - 1), st.booleans())
def test_poly_ring_axioms(pm, seed, truncated):
    F = GF(*pm)
    vars_ = ("u", "v")
    trunc = (2, None) if truncated else None
    a, b, c = (_poly(F, vars_, seed + i, trunc) for i in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a - a).is_zero()
    one = Poly.const(F, vars_, 1, trunc)
    assert a * one == a


def test_poly_truncation_and_division():
    F = GF(2)
    x = Poly.var(F, ("x",), "x", (2,))
    assert (x * x).is_zero()
    y = Poly.var(GF(3), ("y",), "y")
    f = (y + 1) * (y + 2)
    assert f.divexact(y + 1) == y + 2
    with pytest.raises(ValueError):
        (y * y + 1).divexact(y)
