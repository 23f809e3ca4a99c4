"""Integrals, modular characters, the maps t~ and t, transfers, lambda and Higman certificates.

Conventions: the integral module of G is the space of right integrals
{L : L x = eps(x) L} in kG, a left module through left multiplication.  Its
basis vector is Sigma_G for etale schemes and otherwise is scaled so that its
first nonzero coordinate is 1.

t~ is computed by solving mu(y) = L_G, where mu: kG (x)_H delta_H -> kG sends
x (x) 1 to x L_H.  Tensoring with delta_G^{-1} and undoing the projection
formula gives t(1) in coind(omega^{-1}); a representative z in kG of t(1) is the
transfer element, so that Tr(l) = z . l on Hom_H(omega^{-1}, res L).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .adjunction import Coinduced, coinduce, projection_map
from .hopf import (
    GroupScheme,
    SubgroupEmbedding,
    connected_component,
    quotient_scheme,
    rational_points,
    subalgebra_hopf,
)
from .report import ConstructionError, Report
from .repmod import (
    GModule,
    character_module,
    dual_module,
    hom_space,
    is_equivariant,
    restrict,
    tensor_modules,
)
from .scalars import GF


def _normalize_first(F, v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v
    return F.mul(v, int(F.inv(int(v[nz[0]]))))


@lru_cache(maxsize=None)
def splitting_field(g: GroupScheme):
    comp = connected_component(g)
    need = 1
    for d in comp.residue_degrees:
        need = need * d // gcd(need, d)
    F = g.field
    return F if need == 1 else GF(F.p, F.m * need)


# ----------------------------------------------------------------- integrals
@dataclass(eq=False)
class IntegralSpace:
    scheme: GroupScheme
    side: str
    basis: np.ndarray          # (|G|, dim) columns, dim is 1 on valid data
    vector: np.ndarray
    normalization: str

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def _integral_basis(g: GroupScheme, side: str) -> np.ndarray:
    F, B = g.field, g.group_alg
    eye = np.eye(g.order, dtype=np.int64)
    mats = []
    for i in B.algebra_generators:
        op = B.left_mult_all[i] if side == "left" else B.right_mult_all[i]
        mats.append(F.sub(op, F.mul(eye, int(B.counit[i]))))
    return F.intersect_kernels(mats, g.order)


def sigma_g(g: GroupScheme) -> Optional[np.ndarray]:
    """Sum of the rational points over a splitting field, as kG coordinates (etale only)."""
    comp = connected_component(g)
    if comp.order_connected != 1:
        return None
    F = g.field
    ext = splitting_field(g)
    pts = rational_points(g, ext)
    total = ext.sum(pts.points, axis=0)
    values = ext.restriction_to(F, total)
    return g.functional_coords(values)


@lru_cache(maxsize=None)
def integral_space(g: GroupScheme, side: str = "right") -> IntegralSpace:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    F = g.field
    basis = _integral_basis(g, side)
    if basis.shape[1] != 1:
        return IntegralSpace(g, side, basis, basis[:, 0] if basis.shape[1] else np.zeros(g.order, np.int64), "invalid")
    sig = sigma_g(g)
    if sig is not None and np.any(sig):
        if not F.in_span(basis, sig):
            raise ConstructionError("Sigma_G is not an integral")
        return IntegralSpace(g, side, basis, sig, "sigma")
    return IntegralSpace(g, side, basis, _normalize_first(F, basis[:, 0]), "first-nonzero")


@dataclass(eq=False)
class DeltaModule:
    scheme: GroupScheme
    module: GModule
    character: np.ndarray
    integral: IntegralSpace

    @property
    def embedding(self) -> np.ndarray:
        """delta -> kG as a (|G|, 1) matrix."""
        return self.integral.vector[:, None]

    @property
    def trivial(self) -> bool:
        return np.array_equal(self.character, self.scheme.group_alg.counit)


def character_of(g: GroupScheme, vec, side: str = "left") -> np.ndarray:
    """Values chi_i with e_i v = chi_i v (side 'left') or v e_i = chi_i v."""
    F, B = g.field, g.group_alg
    v = np.asarray(vec, dtype=np.int64)
    ops = B.left_mult_all if side == "left" else B.right_mult_all
    imgs = F.matmul(ops, v[:, None])[:, :, 0]  # (n, n)
    t = int(np.flatnonzero(v)[0])
    chi = F.mul(imgs[:, t], int(F.inv(int(v[t]))))
    if not np.array_equal(imgs, F.outer(chi, v)):
        raise ConstructionError("vector does not span a one-dimensional submodule")
    return chi


@lru_cache(maxsize=None)
def delta_module(g: GroupScheme) -> DeltaModule:
    integ = integral_space(g, "right")
    if integ.dim != 1:
        raise ConstructionError(f"right integral space of {g.name} has dimension {integ.dim}")
    chi = character_of(g, integ.vector, "left")
    return DeltaModule(g, character_module(g, chi, f"delta_{g.name}"), chi, integ)


def unimodular(g: GroupScheme) -> bool:
    return delta_module(g).trivial


@dataclass(eq=False)
class Omega:
    embedding: SubgroupEmbedding
    module: GModule
    inverse_module: GModule

    @property
    def character(self) -> np.ndarray:
        return self.module.action[:, 0, 0]

    @property
    def trivial(self) -> bool:
        return np.array_equal(self.character, self.embedding.sub.group_alg.counit)


@lru_cache(maxsize=None)
def omega(e: SubgroupEmbedding) -> Omega:
    dg = delta_module(e.amb).module
    dh = delta_module(e.sub).module
    w = tensor_modules(restrict(dg, e), dual_module(dh))
    w.name = f"omega({e.sub.name},{e.amb.name})"
    winv = tensor_modules(restrict(dual_module(dg), e), dh)
    winv.name = f"omega^-1({e.sub.name},{e.amb.name})"
    return Omega(e, w, winv)


# ----------------------------------------------------------------- t and t~
@dataclass(eq=False)
class TMaps:
    embedding: SubgroupEmbedding
    coind_delta: Coinduced
    t_tilde: np.ndarray        # image of L_G in coind(delta_H)
    coind_omega_inv: Coinduced
    t: np.ndarray              # image of 1 in coind(omega^{-1})
    element: np.ndarray        # representative in kG of t(1)
    report: Report = field(default_factory=lambda: Report("t maps"))


@lru_cache(maxsize=None)
def t_maps(e: SubgroupEmbedding) -> TMaps:
    G, H = e.amb, e.sub
    F = G.field
    dg, dh = delta_module(G), delta_module(H)
    c_delta = coinduce(e, dh.module)
    lam_h = F.matmul(e.alg_inj, dh.integral.vector[:, None])[:, 0]
    mu = F.matmul(G.group_alg.right_mult(lam_h), c_delta.lift)
    sol = F.solve(mu, dg.integral.vector)
    if sol is None:
        raise ConstructionError("integral of G is not in kG L_H")
    y = sol[0]
    rep = Report(f"t maps {H.name} <= {G.name}")
    rep.add("t~ nonzero", bool(np.any(y)))
    rep.add("t~ equivariant", is_equivariant(y[:, None], dg.module, c_delta.module))
    src, _, pmat = projection_map(e, dual_module(dg.module), dh.module)
    sol = F.solve(pmat, y)
    if sol is None:
        raise ConstructionError("projection formula map is not surjective")
    z = sol[0]
    rep.add("t nonzero", bool(np.any(z)))
    from .repmod import trivial_module

    rep.add("t equivariant", is_equivariant(z[:, None], trivial_module(G), src.module))
    if not rep.ok:
        raise ConstructionError(f"t maps failed: {[c.name for c in rep.failures()]}")
    element = F.matmul(src.lift, z[:, None])[:, 0]
    return TMaps(e, c_delta, y, src, z, element, rep)


def t_retraction(e: SubgroupEmbedding) -> Optional[np.ndarray]:
    """An H-map r: res coind(omega^{-1}) -> k with r(t(1)) = 1, if one exists."""
    from .repmod import trivial_module

    tm = t_maps(e)
    F = e.amb.field
    res_c = restrict(tm.coind_omega_inv.module, e)
    for r in hom_space(res_c, trivial_module(e.sub)):
        val = int(F.matmul(r, tm.t[:, None])[0, 0])
        if val:
            return F.mul(r, int(F.inv(val)))
    return None


# ------------------------------------------------------------------ transfer
def act_element_on_hom(z, m: GModule, n: GModule, fs: np.ndarray) -> np.ndarray:
    """z . f = sum z_(2) f S(z_(1)) for a stack of maps fs (k, dim n, dim m)."""
    G = m.scheme
    F = m.field
    B = G.group_alg
    order = G.order
    w = F.matmul(np.asarray(z)[None, :], B.comult.reshape(order, order * order)).reshape(order, order)
    sa = F.matmul(B.antipode.T, m.action.reshape(order, -1)).reshape(order, m.dim, m.dim)  # S(e_a) on m
    q = F.matmul(w.T, sa.reshape(order, -1)).reshape(order, m.dim, m.dim)  # q_b = sum_a w[a,b] S(e_a)
    fs = np.asarray(fs, dtype=np.int64)
    out = np.zeros_like(fs)
    for b in np.flatnonzero(np.any(q.reshape(order, -1), axis=1)):
        out = F.add(out, F.matmul(F.matmul(n.action[b][None], fs), q[b][None]))
    return out


@dataclass(eq=False)
class TransferMap:
    embedding: SubgroupEmbedding
    src: GModule
    dst: GModule
    domain: np.ndarray     # basis of Hom_H(omega^{-1} (x) M, N), stack (k, dN, dM)
    codomain: np.ndarray   # basis of Hom_G(M, N)
    matrix: np.ndarray     # codomain coordinates of the images of the domain basis
    images: np.ndarray

    def apply(self, f) -> np.ndarray:
        return transfer_apply(self.embedding, self.src, self.dst, np.asarray(f)[None])[0]

    @property
    def rank(self) -> int:
        return self.src.field.rank(self.matrix) if self.matrix.size else 0

    @property
    def surjective(self) -> bool:
        return self.rank == self.codomain.shape[0]


def transfer_apply(e: SubgroupEmbedding, m: GModule, n: GModule, fs) -> np.ndarray:
    return act_element_on_hom(t_maps(e).element, m, n, fs)


def transfer_domain(e: SubgroupEmbedding, m: GModule, n: GModule) -> np.ndarray:
    w = omega(e)
    return hom_space(tensor_modules(w.inverse_module, restrict(m, e)), restrict(n, e))


def transfer_map(e: SubgroupEmbedding, m: GModule, n: GModule, check: bool = True) -> TransferMap:
    F = m.field
    dom = transfer_domain(e, m, n)
    cod = hom_space(m, n)
    imgs = transfer_apply(e, m, n, dom) if len(dom) else np.zeros((0, n.dim, m.dim), np.int64)
    if check:
        for f in imgs:
            if not is_equivariant(f, m, n):
                raise ConstructionError("transfer produced a non-equivariant map")
    if len(dom) and len(cod):
        mat = F.coords(cod.reshape(len(cod), -1).T, imgs.reshape(len(imgs), -1).T)
    else:
        mat = np.zeros((len(cod), len(dom)), dtype=np.int64)
    return TransferMap(e, m, n, dom, cod, mat, imgs)


def transfer_invariants(e: SubgroupEmbedding, L: GModule, vecs) -> np.ndarray:
    """Invariant form: columns of vecs in ^H(omega (x) L) go to ^G L."""
    z = t_maps(e).element
    return L.field.matmul(L.act(z), np.asarray(vecs, dtype=np.int64))


def transfer_literal(e: SubgroupEmbedding, L: GModule, vec) -> np.ndarray:
    """eps_{G,H}(L) o coind(f) o t with f: omega^{-1} -> res L, 1 |-> vec."""
    from .adjunction import coind_map, eps_coind

    F = L.field
    tm = t_maps(e)
    c_l = coinduce(e, restrict(L, e))
    f = np.asarray(vec, dtype=np.int64)[:, None]
    step = coind_map(tm.coind_omega_inv, c_l, f)
    return F.matmul(eps_coind(c_l, L), F.matmul(step, tm.t[:, None]))[:, 0]


# -------------------------------------------------------------------- lambda
@dataclass
class LambdaValue:
    nonzero: bool
    value: int
    reason: str

    def __str__(self) -> str:
        return f"nonzero({self.value})" if self.nonzero else "zero"


def lambda_scalar(e: SubgroupEmbedding) -> LambdaValue:
    w = omega(e)
    if not w.trivial:
        return LambdaValue(False, 0, "omega nontrivial")
    z = t_maps(e).element
    val = int(e.amb.group_alg.counit_of(z))
    return LambdaValue(bool(val), val, "eps(t(1))")


# -------------------------------------------------------------------- Higman
@dataclass(eq=False)
class HigmanCertificate:
    module: GModule
    collection: list
    projective: bool
    maps: list = field(default_factory=list)   # f_H per embedding
    verified: bool = False


def higman_certificate(m: GModule, collection: Sequence[SubgroupEmbedding]) -> HigmanCertificate:
    F, d = m.field, m.dim
    blocks, doms = [], []
    for e in collection:
        dom = transfer_domain(e, m, m)
        doms.append(dom)
        if len(dom):
            imgs = transfer_apply(e, m, m, dom)
            blocks.append(imgs.reshape(len(dom), -1).T)
    ident = np.eye(d, dtype=np.int64).reshape(-1)
    if not blocks:
        return HigmanCertificate(m, list(collection), False)
    sol = F.solve(np.hstack(blocks), ident)
    if sol is None:
        return HigmanCertificate(m, list(collection), False)
    x = sol[0]
    maps, off = [], 0
    for dom in doms:
        k = len(dom)
        coeffs = x[off : off + k]
        off += k
        maps.append(F.matmul(coeffs[None, :], dom.reshape(k, -1)).reshape(d, d) if k else np.zeros((d, d), np.int64))
    total = np.zeros((d, d), dtype=np.int64)
    for e, f in zip(collection, maps):
        total = F.add(total, transfer_apply(e, m, m, f[None])[0])
    return HigmanCertificate(m, list(collection), True, maps, np.array_equal(total, np.eye(d, dtype=np.int64)))


# ------------------------------------------------------------- double cosets
def _right_inv_equations(e: SubgroupEmbedding) -> np.ndarray:
    A, F, n = e.amb.coord, e.amb.field, e.amb.order
    ub = e.sub.coord.unit
    cols = []
    for j in range(n):
        lhs = F.matmul(A.comult[j], e.coord_surj.T)
        cols.append(F.sub(lhs, F.outer(A.basis_vector(j), ub)).reshape(-1))
    return np.stack(cols, axis=1)


def _left_inv_equations(e: SubgroupEmbedding) -> np.ndarray:
    A, F, n = e.amb.coord, e.amb.field, e.amb.order
    ub = e.sub.coord.unit
    cols = []
    for j in range(n):
        lhs = F.matmul(e.coord_surj, A.comult[j])
        cols.append(F.sub(lhs, F.outer(ub, A.basis_vector(j))).reshape(-1))
    return np.stack(cols, axis=1)


@dataclass(eq=False)
class DoubleCosetAlgebra:
    basis: np.ndarray        # columns in k[G]
    mult: np.ndarray         # structure constants of the subalgebra

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def double_coset_invariants(k_emb: Optional[SubgroupEmbedding], h_emb: Optional[SubgroupEmbedding]) -> DoubleCosetAlgebra:
    """^H k[G]^K: right H-invariant and left K-invariant functions."""
    amb = (k_emb or h_emb).amb
    F = amb.field
    eqs = []
    if h_emb is not None:
        eqs.append(_right_inv_equations(h_emb))
    if k_emb is not None:
        eqs.append(_left_inv_equations(k_emb))
    basis = F.column_basis(F.intersect_kernels(eqs, amb.order))
    A = amb.coord
    r = basis.shape[1]
    mult = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        for b in range(a, r):
            c = F.coords(basis, A.mul(basis[:, a], basis[:, b]))
            mult[a, b] = mult[b, a] = c
    return DoubleCosetAlgebra(basis, mult)


# ----------------------------------------------------------------- inflation
def lift_matrix(e: SubgroupEmbedding) -> np.ndarray:
    """A right inverse of the coordinate surjection."""
    F = e.amb.field
    sol = F.solve(e.coord_surj, np.eye(e.sub.order, dtype=np.int64))
    return sol[0]


def inflation_check(n_emb: SubgroupEmbedding, h_emb: SubgroupEmbedding) -> Report:
    """N normal in G, N <= H <= G: omega and t inflate from G/N, H/N."""
    from .hopf import subgroup_embed

    G = n_emb.amb
    F = G.field
    rep = Report(f"inflation {n_emb.sub.name} <= {h_emb.sub.name} <= {G.name}")
    q = quotient_scheme(n_emb, f"{G.name}/{n_emb.sub.name}")
    gbar = q.scheme
    restr = F.matmul(h_emb.coord_surj, q.inclusion)   # k[G/N] -> k[H]
    ideal = F.kernel(restr)
    hbar = subgroup_embed(gbar, [ideal[:, i] for i in range(ideal.shape[1])], f"{h_emb.sub.name}/{n_emb.sub.name}")
    rep.add("order of H/N", hbar.sub.order * n_emb.sub.order == h_emb.sub.order,
            h_emb.sub.order // n_emb.sub.order, hbar.sub.order)
    phi = F.matmul(restr, lift_matrix(hbar))       # k[H/N] -> k[H]
    H = h_emb.sub
    proj_h = np.stack(
        [hbar.sub.functional_coords(F.matmul(H.functional_values(H.group_alg.basis_vector(j))[None, :], phi)[0])
         for j in range(H.order)], axis=1)         # kH -> k(H/N)
    w_bar = omega(hbar).character
    inflated = F.matmul(w_bar[None, :], proj_h)[0]
    rep.add("omega(H,G) = infl omega(H/N,G/N)", np.array_equal(inflated, omega(h_emb).character),
            inflated, omega(h_emb).character)
    t_big = t_maps(h_emb)
    t_bar = t_maps(hbar)
    pushed = F.matmul(q.projection, t_big.element[:, None])[:, 0]
    cls = t_bar.coind_omega_inv.cls(pushed, np.ones(1, dtype=np.int64))
    rank = F.rank(np.stack([cls, t_bar.t], axis=1))
    rep.add("t(H,G) inflates t(H/N,G/N) up to a nonzero scalar", rank == 1 and bool(np.any(cls)))
    return rep
