"""Finite-dimensional left kG-modules and equivariant maps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .hopf import GroupScheme, SubgroupEmbedding, _frozen, _quotient_projection
from .report import DimensionMismatch, Report, SchemeMismatch


@dataclass(eq=False)
class GModule:
    """``action[i]`` is the matrix of the i-th basis element of kG."""

    scheme: GroupScheme
    action: np.ndarray
    name: str = "M"

    def __post_init__(self):
        a = np.asarray(self.action, dtype=np.int64)
        n = self.scheme.order
        if a.ndim != 3 or a.shape[0] != n or a.shape[1] != a.shape[2]:
            raise DimensionMismatch(f"action stack has shape {a.shape}, expected ({n}, d, d)")
        self.action = _frozen(a)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self):
        return self.scheme.field

    def act(self, x) -> np.ndarray:
        """Matrix of the kG element with coordinates x."""
        F, d = self.field, self.dim
        return F.matmul(np.asarray(x)[None, :], self.action.reshape(self.scheme.order, d * d)).reshape(d, d)

    @cached_property
    def generator_actions(self) -> list[np.ndarray]:
        return [self.action[i] for i in self.scheme.group_alg.algebra_generators]

    def validate(self) -> Report:
        F, d = self.field, self.dim
        B = self.scheme.group_alg
        n = B.dim
        rep = Report(f"module {self.name}")
        rep.add("unit acts as identity", np.array_equal(self.act(B.unit), np.eye(d, dtype=np.int64)))
        flat = self.action.reshape(n, d * d)
        ok, witness = True, None
        for g in B.algebra_generators:
            lhs = F.matmul(self.action[g][None, :, :], self.action)
            rhs = F.matmul(B.mult[g], flat).reshape(n, d, d)
            bad = np.flatnonzero((lhs != rhs).reshape(n, -1).any(axis=1))
            if bad.size:
                ok, witness = False, [B.names[g], B.names[int(bad[0])]]
                break
        rep.add("action is multiplicative", ok, witness=witness)
        return rep

    def base_change(self, ext, scheme: Optional[GroupScheme] = None) -> "GModule":
        emb = ext.embedding_from(self.field)
        return GModule(scheme or self.scheme.base_change(ext), emb[self.action], self.name)

    def __repr__(self) -> str:
        return f"GModule({self.name}, dim={self.dim}, over {self.scheme.name})"


@dataclass(eq=False)
class GLinearMap:
    src: GModule
    dst: GModule
    mat: np.ndarray

    def __post_init__(self):
        self.mat = _frozen(self.mat)
        if self.mat.shape != (self.dst.dim, self.src.dim):
            raise DimensionMismatch(f"map has shape {self.mat.shape}, expected {(self.dst.dim, self.src.dim)}")

    def is_equivariant(self) -> bool:
        return is_equivariant(self.mat, self.src, self.dst)


def is_equivariant(mat, src: GModule, dst: GModule) -> bool:
    F = src.field
    mat = np.asarray(mat, dtype=np.int64)
    for g in src.scheme.group_alg.algebra_generators:
        if not np.array_equal(F.matmul(mat, src.action[g]), F.matmul(dst.action[g], mat)):
            return False
    return True


def _same_scheme(*mods: GModule) -> None:
    s = mods[0].scheme
    for m in mods[1:]:
        if m.scheme is not s:
            raise SchemeMismatch(f"{m.name} lives over {m.scheme.name}, expected {s.name}")


# ------------------------------------------------------------ constructions
def trivial_module(g: GroupScheme, dim: int = 1) -> GModule:
    eps = g.group_alg.counit
    eye = np.eye(dim, dtype=np.int64)
    return GModule(g, g.field.mul(eps[:, None, None], eye[None]), "k" if dim == 1 else f"k^{dim}")


def regular_module(g: GroupScheme) -> GModule:
    return GModule(g, g.group_alg.left_mult_all, "kG")


def character_module(g: GroupScheme, values, name: str = "chi") -> GModule:
    """One-dimensional module on which e_i acts by values[i]."""
    return GModule(g, np.asarray(values, dtype=np.int64).reshape(-1, 1, 1), name)


def restrict(m: GModule, e: SubgroupEmbedding) -> GModule:
    if m.scheme is not e.amb:
        raise SchemeMismatch(f"{m.name} is not a module over {e.amb.name}")
    F, d = m.field, m.dim
    flat = m.action.reshape(e.amb.order, d * d)
    act = F.matmul(e.alg_inj.T, flat).reshape(e.sub.order, d, d)
    return GModule(e.sub, act, f"res({m.name})")


def tensor_modules(a: GModule, b: GModule) -> GModule:
    """Action through the comultiplication of kG; left-major basis (r, s) -> r * dim b + s."""
    _same_scheme(a, b)
    F = a.field
    D = a.scheme.group_alg.comult
    n, da, db = a.scheme.order, a.dim, b.dim
    c = F.matmul(D.reshape(n * n, n), b.action.reshape(n, db * db))  # [(i, j), (s, u)]
    c = c.reshape(n, n, db * db).transpose(1, 0, 2).reshape(n, n * db * db)
    t = F.matmul(a.action.reshape(n, da * da).T, c)  # [(r, t), (i, s, u)]
    t = t.reshape(da, da, n, db, db).transpose(2, 0, 3, 1, 4).reshape(n, da * db, da * db)
    return GModule(a.scheme, t, f"({a.name}(x){b.name})")


def dual_module(a: GModule) -> GModule:
    """(x.phi)(v) = phi(S(x) v)."""
    F, d, n = a.field, a.dim, a.scheme.order
    S = a.scheme.group_alg.antipode
    act = F.matmul(S.T, a.action.reshape(n, d * d)).reshape(n, d, d).transpose(0, 2, 1)
    return GModule(a.scheme, act, f"{a.name}^*")


def hom_module(a: GModule, b: GModule) -> GModule:
    """Hom(a, b) as dual(a) (x) b; a map f (dst x src matrix) has coordinates f.T.flatten()."""
    m = tensor_modules(dual_module(a), b)
    m.name = f"Hom({a.name},{b.name})"
    return m


def hom_to_vec(f) -> np.ndarray:
    return np.asarray(f, dtype=np.int64).T.reshape(-1)


def vec_to_hom(v, src_dim: int, dst_dim: int) -> np.ndarray:
    return np.asarray(v, dtype=np.int64).reshape(src_dim, dst_dim).T


def direct_sum(*mods: GModule) -> GModule:
    _same_scheme(*mods)
    n = mods[0].scheme.order
    d = sum(m.dim for m in mods)
    act = np.zeros((n, d, d), dtype=np.int64)
    off = 0
    for m in mods:
        act[:, off : off + m.dim, off : off + m.dim] = m.action
        off += m.dim
    return GModule(mods[0].scheme, act, "+".join(m.name for m in mods))


def submodule(m: GModule, basis: np.ndarray, name: Optional[str] = None) -> GModule:
    """Restriction of the action to the span of the (independent) columns of basis."""
    F, n, d = m.field, m.scheme.order, m.dim
    r = basis.shape[1]
    images = F.matmul(m.action, basis)  # (n, d, r)
    flat = images.transpose(1, 0, 2).reshape(d, n * r)
    coords = F.coords(basis, flat).reshape(r, n, r).transpose(1, 0, 2)
    return GModule(m.scheme, coords, name or f"sub({m.name})")


@dataclass(eq=False)
class QuotientData:
    module: GModule
    projection: np.ndarray  # (d', d)
    lift: np.ndarray        # (d, d'), projection @ lift = I


def quotient_module(m: GModule, sub_basis: np.ndarray, name: Optional[str] = None) -> QuotientData:
    F, n, d = m.field, m.scheme.order, m.dim
    sub_basis = F.column_basis(sub_basis) if sub_basis.shape[1] else sub_basis
    pi, free = _quotient_projection(F, sub_basis, d)
    lift = np.eye(d, dtype=np.int64)[:, free]
    act = F.matmul(F.matmul(pi[None], m.action), lift[None])
    return QuotientData(GModule(m.scheme, act, name or f"{m.name}/W"), pi, lift)


def generated_submodule(m: GModule, vecs: np.ndarray) -> np.ndarray:
    """Column basis of kG . span(vecs)."""
    F, n, d = m.field, m.scheme.order, m.dim
    vecs = np.asarray(vecs, dtype=np.int64).reshape(d, -1)
    imgs = F.matmul(m.action, vecs).transpose(1, 0, 2).reshape(d, -1)
    return F.column_basis(imgs)


# --------------------------------------------------------- invariant spaces
def invariants(m: GModule) -> np.ndarray:
    """Columns span {v : x v = eps(x) v}."""
    F, d = m.field, m.dim
    B = m.scheme.group_alg
    eye = np.eye(d, dtype=np.int64)
    mats = [F.sub(m.action[g], F.mul(eye, int(B.counit[g]))) for g in B.algebra_generators]
    return F.intersect_kernels(mats, d)


def hom_space(a: GModule, b: GModule) -> np.ndarray:
    """Basis of Hom_G(a, b) as a stack (k, dim b, dim a)."""
    _same_scheme(a, b)
    F = a.field
    da, db = a.dim, b.dim
    mats = []
    for ga, gb in zip(a.generator_actions, b.generator_actions):
        # row-major vec(f):  vec(f A) = (I (x) A^T) vec f,  vec(B f) = (B (x) I) vec f
        lhs = F.kron(np.eye(db, dtype=np.int64), ga.T)
        rhs = F.kron(gb, np.eye(da, dtype=np.int64))
        mats.append(F.sub(lhs, rhs))
    basis = F.intersect_kernels(mats, da * db)
    return basis.T.reshape(-1, db, da)


def compose_pairing_nonzero(into: np.ndarray, out_of: np.ndarray, F) -> bool:
    """Is some composite out_of[j] o into[i] nonzero?"""
    for f in into:
        for g in out_of:
            if np.any(F.matmul(g, f)):
                return True
    return False


def splits_off_one_dim(chi: GModule, m: GModule) -> bool:
    """chi (one-dimensional) is a direct summand of m.

    The composition pairing Hom(m, chi) x Hom(chi, m) -> End(chi) = k is
    bilinear, so a split pair exists iff it is nonzero on basis elements.
    """
    if chi.dim != 1:
        raise ValueError("expected a one-dimensional module")
    return compose_pairing_nonzero(hom_space(chi, m), hom_space(m, chi), m.field)


# ---------------------------------------------------------------- iso search
@dataclass
class IsoResult:
    status: str  # "found" | "none" | "inconclusive"
    map: Optional[GLinearMap] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "found"


EXHAUSTIVE_LIMIT = 4096
RANDOM_TRIALS = 1000


def module_iso_search(
    a: GModule,
    b: GModule,
    rng: Optional[np.random.Generator] = None,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    trials: int = RANDOM_TRIALS,
) -> IsoResult:
    _same_scheme(a, b)
    F = a.field
    if a.dim != b.dim:
        return IsoResult("none", reason=f"dimensions differ ({a.dim} vs {b.dim})")
    if a.dim == 0:
        return IsoResult("found", GLinearMap(a, b, np.zeros((0, 0), dtype=np.int64)))
    basis = hom_space(a, b)
    k = basis.shape[0]
    if k == 0:
        return IsoResult("none", reason="no nonzero equivariant maps")
    # dim Hom(a, c) is an isomorphism invariant; compare against c = a, b
    if hom_space(a, a).shape[0] != k or hom_space(b, b).shape[0] != k:
        return IsoResult("none", reason="hom dimensions preclude an isomorphism")

    def found(mat):
        g = GLinearMap(a, b, mat)
        if not g.is_equivariant():
            raise AssertionError("iso search produced a non-equivariant map")
        return IsoResult("found", g)

    for f in basis:
        if F.det(f) != 0:
            return found(f)
    flat = basis.reshape(k, -1)
    if F.q**k <= exhaustive_limit:
        for coeffs in itertools.product(range(F.q), repeat=k):
            if not any(coeffs):
                continue
            f = F.matmul(np.array(coeffs, dtype=np.int64)[None, :], flat).reshape(b.dim, a.dim)
            if F.det(f) != 0:
                return found(f)
        return IsoResult("none", reason=f"exhaustive search over {F.q}^{k} maps")
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(trials):
        coeffs = F.random(rng, (k,))
        f = F.matmul(coeffs[None, :], flat).reshape(b.dim, a.dim)
        if F.det(f) != 0:
            return found(f)
    return IsoResult("inconclusive", reason=f"{trials} random trials in a {k}-dimensional hom space")


def random_module(g: GroupScheme, rng: np.random.Generator, dim: int, attempts: int = 200) -> GModule:
    """A module of the given dimension cut from the regular module (sub or quotient).

    Falls back to a direct sum of the trivial module with a smaller random module.
    """
    F = g.field
    reg = regular_module(g)
    n = g.order
    if dim == n:
        return reg
    for _ in range(attempts):
        v = F.random(rng, (n, 1))
        w = generated_submodule(reg, v)
        if w.shape[1] == dim:
            return submodule(reg, w, f"rand{dim}")
        if n - w.shape[1] == dim:
            return quotient_module(reg, w, f"rand{dim}").module
        if w.shape[1] > dim:
            # a second cyclic submodule inside w
            u = F.matmul(w, F.random(rng, (w.shape[1], 1)))
            u2 = F.matmul(reg.act(F.random(rng, (n,))), u)
            w2 = generated_submodule(reg, u2)
            if w2.shape[1] == dim:
                return submodule(reg, w2, f"rand{dim}")
    if dim > 1:
        rest = random_module(g, rng, dim - 1, attempts)
        return direct_sum(trivial_module(g), rest)
    return trivial_module(g)
