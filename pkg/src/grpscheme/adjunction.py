"""Coinduction kG (x)_{kH} N, induction Hom_{kH}(kG, N), their units and counits.

Standard maps, for H <= G, N an H-module and M a G-module:

* eta_{G,H}(N):  N -> res coind N,        v |-> 1 (x) v
* eps_{G,H}(M):  coind res M -> M,        x (x) m |-> x m
* eta_{H,G}(M):  M -> ind res M,          m |-> (x |-> x m)
* eps_{H,G}(N):  res ind N -> N,          F |-> F(1)

An element F of ind N is stored as a (dim N, |G|) matrix with
F L_{h} = h_N F for h in kH; G acts by F |-> F R_g (right translation).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hopf import SubgroupEmbedding, compose_embeddings
from .report import ConstructionError, Report, SchemeMismatch
from .repmod import (
    GLinearMap,
    GModule,
    hom_space,
    is_equivariant,
    module_iso_search,
    quotient_module,
    restrict,
    submodule,
    tensor_modules,
)


@dataclass(eq=False)
class Coinduced:
    module: GModule
    base: GModule           # N over H
    embedding: SubgroupEmbedding
    projection: np.ndarray  # kG (x) N -> coind N
    lift: np.ndarray        # coind N -> kG (x) N

    def cls(self, x, v) -> np.ndarray:
        """Class of x (x) v."""
        F = self.module.field
        return F.matmul(self.projection, F.kron(np.asarray(x)[:, None], np.asarray(v)[:, None]))[:, 0]


@dataclass(eq=False)
class Induced:
    module: GModule
    base: GModule
    embedding: SubgroupEmbedding
    basis: np.ndarray       # columns: row-major vec of F, shape (dim N * |G|, dim ind)

    def as_matrix(self, coords) -> np.ndarray:
        F = self.module.field
        vec = F.matmul(self.basis, np.asarray(coords)[:, None])[:, 0]
        return vec.reshape(self.base.dim, self.embedding.amb.order)

    def coords_of(self, mats) -> np.ndarray:
        """Coordinates of stacked vec(F) columns."""
        return self.module.field.coords(self.basis, mats)


def _check_base(e: SubgroupEmbedding, n: GModule) -> None:
    if n.scheme is not e.sub:
        raise SchemeMismatch(f"{n.name} is not a module over {e.sub.name}")


def coinduce(e: SubgroupEmbedding, n: GModule) -> Coinduced:
    _check_base(e, n)
    G = e.amb
    F, d, order = G.field, n.dim, G.order
    B = G.group_alg
    eye_d = np.eye(d, dtype=np.int64)
    ambient = GModule(G, F.kron(B.left_mult_all, eye_d[None]), f"kG(x){n.name}")
    rels = []
    for h in e.sub.group_alg.algebra_generators:
        ih = e.alg_inj[:, h]
        rels.append(F.sub(F.kron(B.right_mult(ih), eye_d), F.kron(np.eye(order, dtype=np.int64), n.action[h])))
    rel = np.hstack(rels) if rels else np.zeros((order * d, 0), dtype=np.int64)
    q = quotient_module(ambient, F.column_basis(rel) if rel.size else rel, f"coind({n.name})")
    if q.module.dim != e.index * d:
        raise ConstructionError(f"coinduced dimension {q.module.dim} != {e.index} * {d}")
    return Coinduced(q.module, n, e, q.projection, q.lift)


def induce(e: SubgroupEmbedding, n: GModule) -> Induced:
    _check_base(e, n)
    G = e.amb
    F, d, order = G.field, n.dim, G.order
    B = G.group_alg
    eye_d = np.eye(d, dtype=np.int64)
    eye_n = np.eye(order, dtype=np.int64)
    eqs = []
    for h in e.sub.group_alg.algebra_generators:
        lh = B.left_mult(e.alg_inj[:, h])
        eqs.append(F.sub(F.kron(eye_d, lh.T), F.kron(n.action[h], eye_n)))
    basis = F.intersect_kernels(eqs, d * order)
    ambient = GModule(G, F.kron(eye_d[None], B.right_mult_all.transpose(0, 2, 1)), f"Hom(kG,{n.name})")
    mod = submodule(ambient, basis, f"ind({n.name})")
    if mod.dim != e.index * d:
        raise ConstructionError(f"induced dimension {mod.dim} != {e.index} * {d}")
    return Induced(mod, n, e, basis)


# ------------------------------------------------------------ functoriality
def coind_map(src: Coinduced, dst: Coinduced, f) -> np.ndarray:
    """coind(f) for an H-map f: N -> N'."""
    F = src.module.field
    order = src.embedding.amb.order
    big = F.kron(np.eye(order, dtype=np.int64), np.asarray(f, dtype=np.int64))
    return F.matmul(dst.projection, F.matmul(big, src.lift))


def ind_map(src: Induced, dst: Induced, f) -> np.ndarray:
    """ind(f): F |-> f F."""
    F = src.module.field
    order = src.embedding.amb.order
    big = F.kron(np.asarray(f, dtype=np.int64), np.eye(order, dtype=np.int64))
    return dst.coords_of(F.matmul(big, src.basis))


# ------------------------------------------------------------ units, counits
def eta_coind(c: Coinduced) -> np.ndarray:
    """N -> res coind N."""
    F = c.module.field
    u = c.embedding.amb.group_alg.unit
    return F.matmul(c.projection, F.kron(u[:, None], np.eye(c.base.dim, dtype=np.int64)))


def eps_coind(c: Coinduced, m: GModule) -> np.ndarray:
    """coind res M -> M; c must be the coinduction of res M."""
    F = m.field
    d, order = m.dim, m.scheme.order
    e_mat = m.action.transpose(1, 0, 2).reshape(d, order * d)
    return F.matmul(e_mat, c.lift)


def eta_ind(i: Induced, m: GModule) -> np.ndarray:
    """M -> ind res M; i must be the induction of res M."""
    d, order = m.dim, m.scheme.order
    t = m.action.transpose(1, 0, 2).reshape(d * order, d)
    return i.coords_of(t)


def eps_ind(i: Induced) -> np.ndarray:
    """res ind N -> N, evaluation at 1."""
    F = i.module.field
    u = i.embedding.amb.group_alg.unit
    ev = F.kron(np.eye(i.base.dim, dtype=np.int64), u[None, :])
    return F.matmul(ev, i.basis)


@dataclass(eq=False)
class AdjunctionData:
    embedding: SubgroupEmbedding
    input: GModule                 # N over H
    target: GModule                # M over G
    coind: Coinduced
    ind: Induced
    eta_GH: GLinearMap             # N -> res coind N
    eps_GH: GLinearMap             # coind res M -> M
    eta_HG: GLinearMap             # M -> ind res M
    eps_HG: GLinearMap             # res ind N -> N
    report: Report = field(default_factory=lambda: Report("adjunction"))
    bijections: dict = field(default_factory=dict)


def _hom_coords(basis: np.ndarray, mats: list[np.ndarray], F) -> np.ndarray:
    """Coordinates of maps in a hom-space basis (stack (k, r, c))."""
    k = basis.shape[0]
    if k == 0:
        return np.zeros((0, len(mats)), dtype=np.int64)
    flat = basis.reshape(k, -1).T
    vecs = np.stack([np.asarray(m).reshape(-1) for m in mats], axis=1)
    return F.coords(flat, vecs)


def adjunction_units(e: SubgroupEmbedding, n: GModule, m: GModule) -> AdjunctionData:
    """Build all four maps, check the zig-zag identities and realize both hom bijections."""
    _check_base(e, n)
    if m.scheme is not e.amb:
        raise SchemeMismatch(f"{m.name} is not a module over {e.amb.name}")
    F = m.field
    res_m = restrict(m, e)
    c_n = coinduce(e, n)
    c_resm = coinduce(e, res_m)
    i_n = induce(e, n)
    i_resm = induce(e, res_m)

    eta_gh = eta_coind(c_n)
    eps_gh = eps_coind(c_resm, m)
    eta_hg = eta_ind(i_resm, m)
    eps_hg = eps_ind(i_n)

    rep = Report(f"adjunction {e.sub.name} <= {e.amb.name}, N={n.name}, M={m.name}")
    rep.add("eta_GH equivariant", is_equivariant(eta_gh, n, restrict(c_n.module, e)))
    rep.add("eps_GH equivariant", is_equivariant(eps_gh, c_resm.module, m))
    rep.add("eta_HG equivariant", is_equivariant(eta_hg, m, i_resm.module))
    rep.add("eps_HG equivariant", is_equivariant(eps_hg, restrict(i_n.module, e), n))

    # zig-zags for coind -| res
    c_rc = coinduce(e, restrict(c_n.module, e))
    eps_at_coind = eps_coind(c_rc, c_n.module)
    z1 = F.matmul(eps_at_coind, coind_map(c_n, c_rc, eta_gh))
    rep.add("eps(coind N) o coind(eta N) = id", np.array_equal(z1, np.eye(c_n.module.dim, dtype=np.int64)))
    eta_at_res = eta_coind(c_resm)
    z2 = F.matmul(eps_gh, eta_at_res)
    rep.add("res(eps M) o eta(res M) = id", np.array_equal(z2, np.eye(m.dim, dtype=np.int64)))

    # zig-zags for res -| ind
    z3 = F.matmul(eps_ind(i_resm), eta_hg)
    rep.add("eps(res M) o res(eta M) = id", np.array_equal(z3, np.eye(m.dim, dtype=np.int64)))
    i_ri = induce(e, restrict(i_n.module, e))
    eta_at_ind = eta_ind(i_ri, i_n.module)
    z4 = F.matmul(ind_map(i_ri, i_n, eps_hg), eta_at_ind)
    rep.add("ind(eps N) o eta(ind N) = id", np.array_equal(z4, np.eye(i_n.module.dim, dtype=np.int64)))

    # hom bijections as explicit matrices
    bij = {}
    hg_c = hom_space(c_n.module, m)
    hh_c = hom_space(n, res_m)
    fwd = [F.matmul(phi, eta_gh) for phi in hg_c]
    bwd = [F.matmul(eps_gh, coind_map(c_n, c_resm, psi)) for psi in hh_c]
    a = _hom_coords(hh_c, fwd, F)
    b = _hom_coords(hg_c, bwd, F)
    rep.add("dim Hom_G(coind N, M) = dim Hom_H(N, res M)", len(hg_c) == len(hh_c), len(hh_c), len(hg_c))
    ok = len(hg_c) == len(hh_c) and (
        len(hg_c) == 0 or (np.array_equal(F.matmul(a, b), np.eye(len(hh_c), dtype=np.int64))
                           and np.array_equal(F.matmul(b, a), np.eye(len(hg_c), dtype=np.int64)))
    )
    rep.add("coind adjunction bijection mutually inverse", ok)
    bij["coind"] = (a, b)

    hg_i = hom_space(m, i_n.module)
    hh_i = hom_space(res_m, n)
    fwd = [F.matmul(eps_hg, phi) for phi in hg_i]
    bwd = [F.matmul(ind_map(i_resm, i_n, psi), eta_hg) for psi in hh_i]
    a = _hom_coords(hh_i, fwd, F)
    b = _hom_coords(hg_i, bwd, F)
    rep.add("dim Hom_G(M, ind N) = dim Hom_H(res M, N)", len(hg_i) == len(hh_i), len(hh_i), len(hg_i))
    ok = len(hg_i) == len(hh_i) and (
        len(hg_i) == 0 or (np.array_equal(F.matmul(a, b), np.eye(len(hh_i), dtype=np.int64))
                           and np.array_equal(F.matmul(b, a), np.eye(len(hg_i), dtype=np.int64)))
    )
    rep.add("ind adjunction bijection mutually inverse", ok)
    bij["ind"] = (a, b)

    return AdjunctionData(
        e, n, m, c_n, i_n,
        GLinearMap(n, restrict(c_n.module, e), eta_gh),
        GLinearMap(c_resm.module, m, eps_gh),
        GLinearMap(m, i_resm.module, eta_hg),
        GLinearMap(restrict(i_n.module, e), n, eps_hg),
        rep, bij,
    )


# ------------------------------------------------------- structural identities
def transitivity_coind(inner: SubgroupEmbedding, outer: SubgroupEmbedding, n: GModule) -> tuple[bool, np.ndarray]:
    """coind_H^G coind_K^H N -> coind_K^G N, x (x) [y (x) v] |-> [x y (x) v]; returns (iso?, matrix)."""
    F = n.field
    kg = compose_embeddings(inner, outer)
    c_kh = coinduce(inner, n)
    c_hg = coinduce(outer, c_kh.module)
    c_kg = coinduce(kg, n)
    G = outer.amb
    order, h_order, d = G.order, inner.amb.order, n.dim
    # kG (x) kH (x) N -> kG (x) N via x (x) y (x) v |-> x iota(y) (x) v
    mult_iota = np.zeros((order, order * h_order), dtype=np.int64)
    for x in range(order):
        for y in range(h_order):
            mult_iota[:, x * h_order + y] = G.group_alg.mul(G.group_alg.basis_vector(x), outer.alg_inj[:, y])
    big = F.kron(mult_iota, np.eye(d, dtype=np.int64))
    inner_lift = F.kron(np.eye(order, dtype=np.int64), c_kh.lift)
    mat = F.matmul(c_kg.projection, F.matmul(big, F.matmul(inner_lift, c_hg.lift)))
    ok = (
        mat.shape[0] == mat.shape[1]
        and is_equivariant(mat, c_hg.module, c_kg.module)
        and F.rank(mat) == mat.shape[0]
    )
    return ok, mat


def transitivity_ind(inner: SubgroupEmbedding, outer: SubgroupEmbedding, n: GModule, rng=None):
    kg = compose_embeddings(inner, outer)
    twice = induce(outer, induce(inner, n).module).module
    once = induce(kg, n).module
    return module_iso_search(twice, once, rng)


def projection_map(e: SubgroupEmbedding, m: GModule, n: GModule):
    """coind(res M (x) N) -> M (x) coind N, x (x) m (x) v |-> sum x1 m (x) [x2 (x) v].

    Returns (source coinduction, target coinduction, matrix).
    """
    F = m.field
    G = e.amb
    order, dm = G.order, m.dim
    D = G.group_alg.comult
    src = coinduce(e, tensor_modules(restrict(m, e), n))
    c_n = coinduce(e, n)
    w = F.matmul(D.transpose(0, 2, 1).reshape(order * order, order), m.action.reshape(order, dm * dm))
    w = w.reshape(order, order, dm, dm).transpose(2, 1, 0, 3).reshape(dm * order, order * dm)
    big = F.kron(w, np.eye(n.dim, dtype=np.int64))
    proj = F.kron(np.eye(dm, dtype=np.int64), c_n.projection)
    mat = F.matmul(proj, F.matmul(big, src.lift))
    return src, c_n, mat


def projection_formula(e: SubgroupEmbedding, m: GModule, n: GModule) -> bool:
    F = m.field
    src, c_n, mat = projection_map(e, m, n)
    dst = tensor_modules(m, c_n.module)
    return (
        mat.shape[0] == mat.shape[1]
        and is_equivariant(mat, src.module, dst)
        and F.rank(mat) == mat.shape[0]
    )


def wirthmuller_iso(e: SubgroupEmbedding, n: GModule, rng: Optional[np.random.Generator] = None):
    """Search an equivariant isomorphism ind(N) -> coind(N (x) omega^{-1})."""
    from .transfer import omega

    w = omega(e)
    twisted = tensor_modules(n, w.inverse_module)
    return module_iso_search(induce(e, n).module, coinduce(e, twisted).module, rng)
