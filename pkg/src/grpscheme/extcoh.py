"""Ext over kG from the bar resolution, and the relative transfer on Ext.

P_n = kG^{(x)(n+1)} (x) M' with G acting on the first factor, and
X_n = kG^{(x)n} (x) M', so P_n = kG (x) X_n.  A cochain complex
Hom(X_n, W) with coboundary

    (delta c)(g (x) x) = rho(g) c(x) + c(d'(g (x) x))

computes Hom_G(P_n, M) when W = M, rho = action of M, and
Hom_H(omega^{-1} (x) P_n, M) when W = Hom_H(omega^{-1} (x) kG, M) and rho(g)
is precomposition with right multiplication by g.  Here d' collects the bar
terms that do not touch the first factor of P_{n+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hopf import GroupScheme, SubgroupEmbedding
from .report import Report, SchemeMismatch, SizeCapExceeded
from .repmod import GModule, hom_space, regular_module, restrict, tensor_modules
from .transfer import omega, transfer_apply

SIZE_CAP = 20000
DEFAULT_N_MAX = 3


def _check_cap(g: GroupScheme, dim_mp: int, top: int, cap: int) -> None:
    size = g.order ** (top + 1) * dim_mp
    if size > cap:
        raise SizeCapExceeded(f"|G|^{top + 1} * dim M' = {size} exceeds the cap {cap}")


def _mult_matrix(g: GroupScheme) -> np.ndarray:
    """kG (x) kG -> kG."""
    n = g.order
    return g.group_alg.mult.reshape(n * n, n).T


def _act_matrix(m: GModule) -> np.ndarray:
    """kG (x) M -> M, g (x) v |-> g v."""
    n, d = m.scheme.order, m.dim
    return m.action.transpose(1, 0, 2).reshape(d, n * d)


def _inner_boundary(g: GroupScheme, mp: GModule, n: int) -> np.ndarray:
    """d': X_{n+1} -> X_n, the bar terms i = 1 .. n+1 (factors g_1 .. g_{n+1}, m)."""
    F = g.field
    order, d = g.order, mp.dim
    mu = _mult_matrix(g)
    act = _act_matrix(mp)
    eye_g = np.eye(order, dtype=np.int64)
    eye_m = np.eye(d, dtype=np.int64)
    total = np.zeros((order**n * d, order ** (n + 1) * d), dtype=np.int64)
    for i in range(1, n + 1):
        left = np.eye(order ** (i - 1), dtype=np.int64)
        right = np.eye(order ** (n - i), dtype=np.int64)
        term = F.kron(F.kron(F.kron(left, mu), right), eye_m)
        total = F.add(total, term if i % 2 == 0 else F.neg(term))
    last = F.kron(np.eye(order**n, dtype=np.int64), act)
    total = F.add(total, last if (n + 1) % 2 == 0 else F.neg(last))
    return total


def _coboundary(g: GroupScheme, rho: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Matrix of c |-> hstack_g(rho(g) c) + c d' on row-major vec(c)."""
    F = g.field
    order = g.order
    w = rho.shape[1]
    dx_n, dx_n1 = inner.shape
    m1 = rho.transpose(1, 0, 2).reshape(w * order, w)
    first = F.kron(m1, np.eye(dx_n, dtype=np.int64))
    second = F.kron(np.eye(w, dtype=np.int64), inner.T)
    return F.add(first, second)


@dataclass(eq=False)
class CochainComplex:
    scheme: GroupScheme
    coeff_dim: int
    deltas: list            # deltas[n]: C^n -> C^{n+1}

    def dim(self, n: int) -> int:
        return self.deltas[n].shape[1]


def cochain_complex(g: GroupScheme, mp: GModule, rho: np.ndarray, top: int, cap: int = SIZE_CAP) -> CochainComplex:
    _check_cap(g, mp.dim, top, cap)
    deltas = [_coboundary(g, rho, _inner_boundary(g, mp, n)) for n in range(top + 1)]
    return CochainComplex(g, rho.shape[1], deltas)


@dataclass(eq=False)
class Cohomology:
    degree: int
    dim: int
    cocycles: np.ndarray     # columns: basis of Z^n
    coboundaries: np.ndarray # columns: basis of B^n
    reps: np.ndarray         # columns: cocycles completing B^n to Z^n

    def coords(self, F, vecs) -> np.ndarray:
        """Ext coordinates of cocycle columns."""
        basis = np.hstack([self.reps, self.coboundaries])
        c = F.coords(basis, vecs)
        return c[: self.dim]


def cohomology(cx: CochainComplex, n: int) -> Cohomology:
    F = cx.scheme.field
    z = F.kernel(cx.deltas[n])
    if n == 0:
        b = np.zeros((z.shape[0], 0), dtype=np.int64)
    else:
        b = F.column_basis(cx.deltas[n - 1])
    if b.shape[1]:
        piv = F.rref(np.hstack([b, z]))[1]
        extra = [c - b.shape[1] for c in piv if c >= b.shape[1]]
        reps = z[:, extra]
    else:
        reps = F.column_basis(z) if z.shape[1] else z
    return Cohomology(n, reps.shape[1], z, b, reps)


def ext_dim(g: GroupScheme, mp: GModule, m: GModule, n: int, cap: int = SIZE_CAP) -> Cohomology:
    """dim Ext^n_G(M', M) with a basis of representing cocycles in Hom(X_n, M)."""
    if mp.scheme is not g or m.scheme is not g:
        raise SchemeMismatch("modules must live over the given scheme")
    cx = cochain_complex(g, mp, m.action, n, cap)
    return cohomology(cx, n)


# ------------------------------------------------------------ bar resolution
@dataclass(eq=False)
class BarResolution:
    scheme: GroupScheme
    coeff: GModule
    n_max: int
    modules: list = field(default_factory=list)   # P_n as GModules
    d: list = field(default_factory=list)         # d[n]: P_n -> P_{n-1}; d[0]: P_0 -> M'

    def check(self) -> Report:
        F = self.scheme.field
        rep = Report("bar resolution")
        for n in range(1, len(self.d)):
            rep.add(f"d_{n - 1} d_{n} = 0", not np.any(F.matmul(self.d[n - 1], self.d[n])))
        from .repmod import is_equivariant

        targets = [self.coeff] + self.modules
        for n in range(len(self.d)):
            rep.add(f"d_{n} equivariant", is_equivariant(self.d[n], self.modules[n], targets[n]))
        return rep


def bar_resolution(g: GroupScheme, mp: GModule, n_max: int = DEFAULT_N_MAX, cap: int = SIZE_CAP) -> BarResolution:
    _check_cap(g, mp.dim, n_max, cap)
    F = g.field
    order, dm = g.order, mp.dim
    B = g.group_alg
    mods, ds = [], []
    for n in range(n_max + 1):
        rest = order**n * dm
        act = F.kron(B.left_mult_all, np.eye(rest, dtype=np.int64)[None])
        mods.append(GModule(g, act, f"P_{n}"))
        if n == 0:
            ds.append(_act_matrix(mp))
        else:
            first = F.kron(_mult_matrix(g), np.eye(order ** (n - 1) * dm, dtype=np.int64))
            inner = F.kron(np.eye(order, dtype=np.int64), _inner_boundary(g, mp, n - 1))
            ds.append(F.add(first, inner))
    return BarResolution(g, mp, n_max, mods, ds)


# ---------------------------------------------------------- relative transfer
@dataclass(eq=False)
class ExtTransfer:
    degree: int
    source: Cohomology       # Ext_H^n(omega^{-1} (x) M', M)
    target: Cohomology       # Ext_G^n(M', M)
    matrix: np.ndarray       # target coords of images of source reps
    commutes: list           # per degree: levelwise transfer commutes with delta
    tau: np.ndarray          # W -> M
    w_basis: np.ndarray      # stack (|W|, dim M, |G|)
    restriction: Optional[np.ndarray] = None   # Ext_G -> Ext_H when omega is trivial


def _coefficient_space(e: SubgroupEmbedding, m: GModule):
    """W = Hom_H(omega^{-1} (x) res kG, M) with rho(g) w = w R_g."""
    G = e.amb
    F = G.field
    w = omega(e)
    reg = regular_module(G)
    basis = hom_space(tensor_modules(w.inverse_module, restrict(reg, e)), restrict(m, e))
    k = len(basis)
    flat = basis.reshape(k, -1).T
    rmats = G.group_alg.right_mult_all
    imgs = F.matmul(basis[None, :, :, :], rmats[:, None, :, :])  # (|G|, k, dM, |G|)
    rho = np.stack([F.coords(flat, imgs[gi].reshape(k, -1).T) for gi in range(G.order)])
    return basis, rho


def transfer_ext(e: SubgroupEmbedding, mp: GModule, m: GModule, n: int, cap: int = SIZE_CAP) -> ExtTransfer:
    G = e.amb
    F = G.field
    if mp.scheme is not G or m.scheme is not G:
        raise SchemeMismatch("modules must live over the ambient scheme")
    _check_cap(G, mp.dim, n, cap)
    basis, rho = _coefficient_space(e, m)
    k = len(basis)
    reg = regular_module(G)
    u = G.group_alg.unit
    trs = transfer_apply(e, reg, m, basis) if k else np.zeros((0, m.dim, G.order), np.int64)
    tau = np.stack([F.matmul(t, u[:, None])[:, 0] for t in trs], axis=1) if k else np.zeros((m.dim, 0), np.int64)
    cx_h = cochain_complex(G, mp, rho, n, cap)
    cx_g = cochain_complex(G, mp, m.action, n, cap)
    commutes = []
    for j in range(n + 1):
        dx_j = G.order**j * mp.dim
        tr_j = F.kron(tau, np.eye(dx_j, dtype=np.int64))
        tr_j1 = F.kron(tau, np.eye(dx_j * G.order, dtype=np.int64))
        commutes.append(np.array_equal(F.matmul(cx_g.deltas[j], tr_j), F.matmul(tr_j1, cx_h.deltas[j])))
    src = cohomology(cx_h, n)
    dst = cohomology(cx_g, n)
    tr_n = F.kron(tau, np.eye(G.order**n * mp.dim, dtype=np.int64))
    images = F.matmul(tr_n, src.reps) if src.dim else np.zeros((tr_n.shape[0], 0), np.int64)
    mat = dst.coords(F, images) if src.dim and dst.dim else np.zeros((dst.dim, src.dim), np.int64)
    res = None
    if omega(e).trivial and k:
        # m |-> (g |-> g m) as an element of W
        iota_cols = m.action.transpose(1, 2, 0)  # [s, m, g]: value at g of the image of basis m
        vecs = np.stack([iota_cols[:, j, :].reshape(-1) for j in range(m.dim)], axis=1)
        iota = F.coords(basis.reshape(k, -1).T, vecs)
        res_n = F.kron(iota, np.eye(G.order**n * mp.dim, dtype=np.int64))
        if dst.dim:
            res_img = F.matmul(res_n, dst.reps)
            res = src.coords(F, res_img) if src.dim else np.zeros((0, dst.dim), np.int64)
        else:
            res = np.zeros((src.dim, 0), np.int64)
    return ExtTransfer(n, src, dst, mat, commutes, tau, basis, res)
