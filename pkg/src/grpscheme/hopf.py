"""Finite-dimensional Hopf algebras by structure constants and finite group schemes.

Tensor conventions (all arrays hold encoded field elements):

* ``mult[i, j, k]``    e_i e_j = sum_k mult[i, j, k] e_k
* ``comult[i, j, k]``  Delta(e_i) = sum_{j,k} comult[i, j, k] e_j (x) e_k
* ``antipode[k, i]``   S(e_i) = sum_k antipode[k, i] e_k  (acts on column vectors)

A :class:`GroupScheme` pairs the commutative coordinate ring k[G] with the
group algebra kG = k[G]^*; ``pairing[i, j]`` is <phi_i, e_j>.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .report import (
    DimensionMismatch,
    ExtensionDoesNotSplit,
    NotHopfIdeal,
    NotNormal,
    Report,
)
from .scalars import Field, GF


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(eq=False)
class HopfAlgebra:
    field: Field
    names: list[str]
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    generators: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.names)
        shapes = {
            "mult": (self.mult, (n, n, n)),
            "unit": (self.unit, (n,)),
            "comult": (self.comult, (n, n, n)),
            "counit": (self.counit, (n,)),
            "antipode": (self.antipode, (n, n)),
        }
        for key, (arr, shape) in shapes.items():
            if np.shape(arr) != shape:
                raise DimensionMismatch(f"{key} has shape {np.shape(arr)}, expected {shape}")
        self.mult = _frozen(self.mult)
        self.unit = _frozen(self.unit)
        self.comult = _frozen(self.comult)
        self.counit = _frozen(self.counit)
        self.antipode = _frozen(self.antipode)
        self.generators = {k: _frozen(v) for k, v in self.generators.items()}

    @property
    def dim(self) -> int:
        return len(self.names)

    @cached_property
    def commutative(self) -> bool:
        return np.array_equal(self.mult, self.mult.transpose(1, 0, 2))

    @cached_property
    def cocommutative(self) -> bool:
        return np.array_equal(self.comult, self.comult.transpose(0, 2, 1))

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def index(self, name: str) -> int:
        return self.names.index(name)

    # -------------------------------------------------------------- products
    def mul(self, a, b) -> np.ndarray:
        F, n = self.field, self.dim
        left = F.matmul(np.asarray(a)[None, :], self.mult.reshape(n, n * n)).reshape(n, n)
        return F.matmul(np.asarray(b)[None, :], left)[0]

    def left_mult(self, a) -> np.ndarray:
        """Matrix of x -> a x."""
        F, n = self.field, self.dim
        return F.matmul(np.asarray(a)[None, :], self.mult.reshape(n, n * n)).reshape(n, n).T

    def right_mult(self, b) -> np.ndarray:
        """Matrix of x -> x b."""
        F, n = self.field, self.dim
        mt = self.mult.transpose(1, 0, 2).reshape(n, n * n)
        return F.matmul(np.asarray(b)[None, :], mt).reshape(n, n).T

    @cached_property
    def left_mult_all(self) -> np.ndarray:
        """Stack L[i] = matrix of left multiplication by e_i."""
        return _frozen(self.mult.transpose(0, 2, 1))

    @cached_property
    def right_mult_all(self) -> np.ndarray:
        return _frozen(self.mult.transpose(1, 2, 0))

    def power(self, a, e: int) -> np.ndarray:
        result = self.unit.copy()
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def comul(self, v) -> np.ndarray:
        """Delta(v) as an (n, n) coefficient matrix."""
        n = self.dim
        return self.field.matmul(np.asarray(v)[None, :], self.comult.reshape(n, n * n)).reshape(n, n)

    def tensor_mul(self, x, y) -> np.ndarray:
        """Product in A (x) A of two (n, n) coefficient matrices."""
        F, n, m = self.field, self.dim, self.mult
        u = F.matmul(y, m.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n)
        w = F.matmul(x, u.transpose(1, 0, 2).reshape(n, n * n))
        return F.matmul(m.reshape(n * n, n).T, w.reshape(n * n, n))

    def counit_of(self, v) -> int:
        return self.field.dot(self.counit, v)

    def antipode_of(self, v) -> np.ndarray:
        return self.field.matmul(self.antipode, np.asarray(v)[:, None])[:, 0]

    @cached_property
    def algebra_generators(self) -> list[int]:
        """Greedy list of basis indices generating the algebra."""
        F = self.field
        gens: list[int] = []
        span = self.unit[:, None]
        for i in range(self.dim):
            e = self.basis_vector(i)
            if F.in_span(span, e):
                continue
            gens.append(i)
            span = self._closure(gens)
            if span.shape[1] == self.dim:
                break
        return gens

    def _closure(self, gens: Sequence[int]) -> np.ndarray:
        F = self.field
        span = F.column_basis(self.unit[:, None])
        while True:
            prods = [span] + [F.matmul(self.left_mult_all[g], span) for g in gens]
            new = F.column_basis(np.hstack(prods))
            if new.shape[1] == span.shape[1]:
                return new
            span = new

    def base_change(self, ext: Field) -> "HopfAlgebra":
        emb = ext.embedding_from(self.field)
        return HopfAlgebra(
            ext,
            list(self.names),
            emb[self.mult],
            emb[self.unit],
            emb[self.comult],
            emb[self.counit],
            emb[self.antipode],
            {k: emb[v] for k, v in self.generators.items()},
        )


def validate_hopf(h: HopfAlgebra) -> Report:
    """Check every Hopf algebra axiom; witnesses are basis-name tuples."""
    F, n = h.field, h.dim
    M, D, u, eps, S = h.mult, h.comult, h.unit, h.counit, h.antipode
    rep = Report("hopf axioms")
    I = np.eye(n, dtype=np.int64)

    def first_bad(diff_mask, names_fn):
        idx = np.argwhere(diff_mask)
        return None if idx.size == 0 else names_fn(tuple(int(x) for x in idx[0]))

    nm = h.names

    a1 = F.matmul(M.reshape(n * n, n), M.reshape(n, n * n)).reshape(n, n, n, n)
    a2 = F.matmul(M.reshape(n * n, n), M.transpose(1, 0, 2).reshape(n, n * n))
    a2 = a2.reshape(n, n, n, n).transpose(2, 0, 1, 3)
    bad = (a1 != a2).any(axis=3)
    rep.add("associativity", not bad.any(), witness=first_bad(bad, lambda t: [nm[i] for i in t]))

    lu = F.matmul(u[None, :], M.reshape(n, n * n)).reshape(n, n)
    ru = F.matmul(M.transpose(0, 2, 1).reshape(n * n, n), u[:, None]).reshape(n, n)
    bad_u = (lu != I) | (ru != I)
    rep.add("unitality", not bad_u.any(), witness=first_bad(bad_u, lambda t: [nm[t[0]]]))

    c1 = F.matmul(D.transpose(0, 2, 1).reshape(n * n, n), D.reshape(n, n * n))
    c1 = c1.reshape(n, n, n, n).transpose(0, 2, 3, 1)
    c2 = F.matmul(D.reshape(n * n, n), D.reshape(n, n * n)).reshape(n, n, n, n)
    bad = (c1 != c2).reshape(n, -1).any(axis=1)
    rep.add("coassociativity", not bad.any(), witness=first_bad(bad, lambda t: [nm[t[0]]]))

    l_eps = F.matmul(eps[None, :], D.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n)
    r_eps = F.matmul(D.reshape(n * n, n), eps[:, None]).reshape(n, n)
    bad = ((l_eps != I) | (r_eps != I)).any(axis=1)
    rep.add("counitality", not bad.any(), witness=first_bad(bad, lambda t: [nm[t[0]]]))

    eps_prod = F.matmul(M.reshape(n * n, n), eps[:, None]).reshape(n, n)
    bad = eps_prod != F.outer(eps, eps)
    ok_eps = not bad.any() and F.dot(eps, u) == 1
    rep.add("counit_algebra_map", ok_eps, witness=first_bad(bad, lambda t: [nm[i] for i in t]))

    ok_delta = np.array_equal(h.comul(u), F.outer(u, u))
    witness = None if ok_delta else ["1"]
    if ok_delta:
        for g in h.algebra_generators:
            dg = D[g]
            for j in range(n):
                lhs = h.comul(M[g, j])
                if not np.array_equal(lhs, h.tensor_mul(dg, D[j])):
                    ok_delta, witness = False, [nm[g], nm[j]]
                    break
            if not ok_delta:
                break
    rep.add("comult_algebra_map", ok_delta, witness=witness)

    t1 = F.matmul(S.T, M.reshape(n, n * n)).reshape(n * n, n)
    left = F.matmul(D.reshape(n, n * n), t1)
    t2 = F.matmul(M.transpose(0, 2, 1).reshape(n * n, n), S).reshape(n, n, n).transpose(0, 2, 1)
    right = F.matmul(D.reshape(n, n * n), t2.reshape(n * n, n))
    target = F.outer(eps, u)
    bad = ((left != target) | (right != target)).any(axis=1)
    rep.add("antipode", not bad.any(), witness=[nm[i] for i in np.flatnonzero(bad)] or None)
    return rep


# ------------------------------------------------------------------ builders
class _MonoRing:
    """k[x_1..x_r] modulo x_i^n_i = 0 ("nil") or x_i^n_i = 1 ("cyc")."""

    def __init__(self, field: Field, rels: Sequence[tuple[str, int]]):
        self.field = field
        self.rels = list(rels)
        self.basis = list(itertools.product(*[range(n) for _, n in self.rels]))
        self.index = {e: i for i, e in enumerate(self.basis)}

    def mono_mul(self, e1, e2):
        out = []
        for (kind, n), a, b in zip(self.rels, e1, e2):
            s = a + b
            if kind == "nil":
                if s >= n:
                    return None
                out.append(s)
            else:
                out.append(s % n)
        return tuple(out)

    def one(self) -> dict:
        return {(0,) * len(self.rels): 1}

    def var(self, i: int) -> dict:
        e = [0] * len(self.rels)
        e[i] = 1
        if self.rels[i][0] == "nil" and self.rels[i][1] == 1:
            return {}
        if self.rels[i][0] == "cyc" and self.rels[i][1] == 1:
            return self.one()
        return {tuple(e): 1}

    def const(self, c: int) -> dict:
        c = int(c) % self.field.q if self.field.m == 1 else int(c)
        return {(0,) * len(self.rels): c} if c else {}

    def add(self, a: dict, b: dict) -> dict:
        F = self.field
        out = dict(a)
        for e, c in b.items():
            out[e] = int(F.add(out.get(e, 0), c))
        return {e: c for e, c in out.items() if c}

    def scale(self, a: dict, c: int) -> dict:
        F = self.field
        return {e: int(F.mul(v, c)) for e, v in a.items() if int(F.mul(v, c))}

    def neg(self, a: dict) -> dict:
        return self.scale(a, int(self.field.neg(1)))

    def mul(self, a: dict, b: dict) -> dict:
        F = self.field
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = self.mono_mul(e1, e2)
                if e is None:
                    continue
                out[e] = int(F.add(out.get(e, 0), F.mul(c1, c2)))
        return {e: c for e, c in out.items() if c}

    def pow(self, a: dict, k: int) -> dict:
        result = self.one()
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def to_vector(self, a: dict) -> np.ndarray:
        v = np.zeros(len(self.basis), dtype=np.int64)
        for e, c in a.items():
            v[self.index[e]] = c
        return v


def _mono_name(var_names, e) -> str:
    parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(var_names, e) if k]
    return "*".join(parts) if parts else "1"


def polynomial_hopf(field: Field, variables, delta, counit, antipode) -> HopfAlgebra:
    """Commutative Hopf algebra k[x_1..x_r]/(relations) from data on generators.

    ``variables`` is a list of ``(name, kind, n)`` with kind ``"nil"`` (x^n = 0)
    or ``"cyc"`` (x^n = 1).  ``delta``, ``antipode`` are callables receiving
    helper rings and returning ring elements; ``counit`` maps name -> scalar.
    """
    names = [v[0] for v in variables]
    rels = [(v[1], v[2]) for v in variables]
    ring = _MonoRing(field, rels)
    ring2 = _MonoRing(field, rels + rels)
    r = len(names)
    n = len(ring.basis)

    left = {nm: ring2.var(i) for i, nm in enumerate(names)}
    right = {nm: ring2.var(r + i) for i, nm in enumerate(names)}
    gens = {nm: ring.var(i) for i, nm in enumerate(names)}
    d_gen = delta(ring2, left, right)
    s_gen = antipode(ring, gens)

    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, e1 in enumerate(ring.basis):
        for j, e2 in enumerate(ring.basis):
            e = ring.mono_mul(e1, e2)
            if e is not None:
                mult[i, j, ring.index[e]] = 1

    comult = np.zeros((n, n, n), dtype=np.int64)
    eps = np.zeros(n, dtype=np.int64)
    anti = np.zeros((n, n), dtype=np.int64)
    for i, e in enumerate(ring.basis):
        d = ring2.one()
        s = ring.one()
        c = 1
        for nm, k in zip(names, e):
            d = ring2.mul(d, ring2.pow(d_gen[nm], k))
            s = ring.mul(s, ring.pow(s_gen[nm], k))
            c = int(field.mul(c, field.power(int(counit[nm]) % field.q, k))) if k else c
        for ee, coeff in d.items():
            comult[i, ring.index[ee[:r]], ring.index[ee[r:]]] = coeff
        anti[:, i] = ring.to_vector(s)
        eps[i] = c
    unit = ring.to_vector(ring.one())
    basis_names = [_mono_name(names, e) for e in ring.basis]
    gvecs = {nm: ring.to_vector(gens[nm]) for nm in names}
    return HopfAlgebra(field, basis_names, mult, unit, comult, eps, anti, gvecs)


def dual_hopf(h: HopfAlgebra, names: Optional[list[str]] = None) -> HopfAlgebra:
    """The dual Hopf algebra in the dual basis."""
    names = names or [f"{nm}*" for nm in h.names]
    return HopfAlgebra(
        h.field,
        names,
        h.comult.transpose(1, 2, 0),
        h.counit,
        h.mult.transpose(2, 0, 1),
        h.unit,
        h.antipode.T,
    )


def tensor_hopf(a: HopfAlgebra, b: HopfAlgebra) -> HopfAlgebra:
    F = a.field
    na, nb = a.dim, b.dim
    mult = F.mul(a.mult[:, None, :, None, :, None], b.mult[None, :, None, :, None, :])
    mult = mult.reshape(na * nb, na * nb, na * nb)
    comult = F.mul(a.comult[:, None, :, None, :, None], b.comult[None, :, None, :, None, :])
    comult = comult.reshape(na * nb, na * nb, na * nb)
    names = [f"{x}(x){y}" if (x != "1" or y != "1") else "1" for x in a.names for y in b.names]
    names = [_prod_name(x, y) for x in a.names for y in b.names]
    gens = {}
    for k, v in a.generators.items():
        gens[k] = F.kron(v[:, None], b.unit[:, None])[:, 0]
    for k, v in b.generators.items():
        gens[k] = F.kron(a.unit[:, None], v[:, None])[:, 0]
    return HopfAlgebra(
        F,
        names,
        mult,
        F.kron(a.unit[:, None], b.unit[:, None])[:, 0],
        comult,
        F.kron(a.counit[:, None], b.counit[:, None])[:, 0],
        F.kron(a.antipode, b.antipode),
        gens,
    )


def _prod_name(x: str, y: str) -> str:
    if x == "1":
        return y
    if y == "1":
        return x
    return f"{x}*{y}"


# -------------------------------------------------------------- group schemes
@dataclass(eq=False)
class GroupScheme:
    coord: HopfAlgebra
    group_alg: HopfAlgebra
    pairing: np.ndarray
    name: str = "G"

    def __post_init__(self):
        self.pairing = _frozen(self.pairing)
        if self.coord.dim != self.group_alg.dim or self.pairing.shape != (self.coord.dim,) * 2:
            raise DimensionMismatch("coordinate ring, group algebra and pairing disagree in size")

    @classmethod
    def from_coord(cls, coord: HopfAlgebra, name="G", dual_names=None) -> "GroupScheme":
        return cls(coord, dual_hopf(coord, dual_names), np.eye(coord.dim, dtype=np.int64), name)

    @property
    def field(self) -> Field:
        return self.coord.field

    @property
    def order(self) -> int:
        return self.coord.dim

    @cached_property
    def _pairing_is_identity(self) -> bool:
        return np.array_equal(self.pairing, np.eye(self.order, dtype=np.int64))

    @cached_property
    def _pairing_inv_t(self) -> np.ndarray:
        return _frozen(self.field.inverse(self.pairing.T))

    def functional_values(self, phi) -> np.ndarray:
        """Values on the k[G] basis of the kG element with coordinates phi."""
        if self._pairing_is_identity:
            return np.asarray(phi, dtype=np.int64)
        return self.field.matmul(self.pairing.T, np.asarray(phi)[:, None])[:, 0]

    def functional_coords(self, values) -> np.ndarray:
        """Inverse of :meth:`functional_values`."""
        if self._pairing_is_identity:
            return np.asarray(values, dtype=np.int64)
        return self.field.matmul(self._pairing_inv_t, np.asarray(values)[:, None])[:, 0]

    def validate(self) -> Report:
        rep = Report(f"group scheme {self.name}")
        rep.extend(validate_hopf(self.coord), "k[G] ")
        rep.extend(validate_hopf(self.group_alg), "kG ")
        rep.add("k[G] commutative", self.coord.commutative)
        rep.add("pairing invertible", self.field.rank(self.pairing) == self.order)
        rep.extend(check_duality(self))
        return rep

    def base_change(self, ext: Field) -> "GroupScheme":
        memo = self.__dict__.setdefault("_base_changes", {})
        if ext not in memo:
            emb = ext.embedding_from(self.field)
            memo[ext] = GroupScheme(
                self.coord.base_change(ext), self.group_alg.base_change(ext), emb[self.pairing], self.name
            )
        return memo[ext]

    def __repr__(self) -> str:
        return f"GroupScheme({self.name}, order={self.order}, {self.field})"


def check_duality(g: GroupScheme) -> Report:
    """Structure maps of kG are the transposes of those of k[G] under the pairing."""
    F, n = g.field, g.order
    P = g.pairing
    A, B = g.coord, g.group_alg
    rep = Report("duality")
    # (phi_a phi_b)(e_k) = sum P[a,i] P[b,j] D[k,i,j]
    lhs = F.matmul(B.mult.reshape(n * n, n), P).reshape(n, n, n)
    t = F.matmul(P, A.comult.transpose(1, 0, 2).reshape(n, n * n)).reshape(n * n, n)
    rhs = F.matmul(t, P.T).reshape(n, n, n).transpose(0, 2, 1)
    rep.add("mult(kG) dual to comult(k[G])", np.array_equal(lhs, rhs))
    # (Delta phi_a)(e_i (x) e_j) = phi_a(e_i e_j)
    u = F.matmul(B.comult.reshape(n * n, n), P).reshape(n, n, n)
    lhs = F.matmul(P.T, u.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n, n).transpose(1, 0, 2)
    rhs = F.matmul(P, A.mult.reshape(n * n, n).T).reshape(n, n, n)
    rep.add("comult(kG) dual to mult(k[G])", np.array_equal(lhs, rhs))
    rep.add("unit(kG) = counit(k[G])", np.array_equal(F.matmul(B.unit[None, :], P)[0], A.counit))
    rep.add("counit(kG) = unit(k[G])", np.array_equal(B.counit, F.matmul(P, A.unit[:, None])[:, 0]))
    rep.add("antipodes dual", np.array_equal(F.matmul(B.antipode.T, P), F.matmul(P, A.antipode)))
    return rep


# ------------------------------------------------------------------ builtins
def constant(table: Sequence[Sequence[int]], field: Field, element_names=None, name="const") -> GroupScheme:
    """Constant group scheme of a finite group given by its multiplication table."""
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    if table.shape != (n, n) or table.min() < 0 or table.max() >= n:
        raise ValueError("invalid multiplication table")
    ids = [e for e in range(n) if all(table[e, g] == g and table[g, e] == g for g in range(n))]
    if len(ids) != 1:
        raise ValueError("multiplication table has no identity")
    e = ids[0]
    for a in range(n):
        if sorted(table[a]) != list(range(n)) or sorted(table[:, a]) != list(range(n)):
            raise ValueError("multiplication table is not a Latin square")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a, b], c] != table[a, table[b, c]]:
            raise ValueError("multiplication table is not associative")
    inv = [int(np.flatnonzero(table[a] == e)[0]) for a in range(n)]
    element_names = element_names or [f"g{i}" for i in range(n)]
    mult = np.zeros((n, n, n), dtype=np.int64)
    comult = np.zeros((n, n, n), dtype=np.int64)
    anti = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        mult[a, a, a] = 1
        anti[inv[a], a] = 1
    for a in range(n):
        for b in range(n):
            comult[table[a, b], a, b] = 1
    unit = np.ones(n, dtype=np.int64)
    eps = np.zeros(n, dtype=np.int64)
    eps[e] = 1
    coord = HopfAlgebra(field, [f"d_{g}" for g in element_names], mult, unit, comult, eps, anti)
    g = GroupScheme.from_coord(coord, name, list(element_names))
    g.group_table = table  # type: ignore[attr-defined]
    return g


def cyclic_table(n: int) -> np.ndarray:
    return np.add.outer(np.arange(n), np.arange(n)) % n


def symmetric_table(n: int) -> tuple[np.ndarray, list[str]]:
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    # (a b)(x) = a(b(x))
    table = np.array([[idx[tuple(a[b[x]] for x in range(n))] for b in perms] for a in perms])
    names = ["".join(str(x + 1) for x in p) for p in perms]
    return table, names


def alpha(p: int, field: Field, height: int = 1) -> GroupScheme:
    """alpha_{p^height}: k[x]/(x^{p^height}) with x primitive."""
    coord = polynomial_hopf(
        field,
        [("x", "nil", p**height)],
        lambda R, L, Rt: {"x": R.add(L["x"], Rt["x"])},
        {"x": 0},
        lambda R, X: {"x": R.neg(X["x"])},
    )
    return GroupScheme.from_coord(coord, f"alpha_{p}" if height == 1 else f"alpha_{p}^{height}")


def mu(n: int, field: Field) -> GroupScheme:
    """mu_n: k[y]/(y^n - 1) with y group-like."""
    coord = polynomial_hopf(
        field,
        [("y", "cyc", n)],
        lambda R, L, Rt: {"y": R.mul(L["y"], Rt["y"])},
        {"y": 1},
        lambda R, X: {"y": R.pow(X["y"], n - 1)},
    )
    return GroupScheme.from_coord(coord, f"mu_{n}")


def heisenberg1(p: int, field: Field) -> GroupScheme:
    """First Frobenius kernel of the unipotent 3x3 upper triangular group.

    A point is M(a, b, c) = [[1, a, b], [0, 1, c], [0, 0, 1]] with a^p = b^p = c^p = 0
    and M(a,b,c) M(a',b',c') = M(a + a', b + b' + a c', c + c').
    """

    def delta(R, L, Rt):
        return {
            "a": R.add(L["a"], Rt["a"]),
            "b": R.add(R.add(L["b"], Rt["b"]), R.mul(L["a"], Rt["c"])),
            "c": R.add(L["c"], Rt["c"]),
        }

    def anti(R, X):
        # M(a,b,c)^{-1} = M(-a, ac - b, -c)
        return {"a": R.neg(X["a"]), "b": R.add(R.mul(X["a"], X["c"]), R.neg(X["b"])), "c": R.neg(X["c"])}

    coord = polynomial_hopf(
        field, [("a", "nil", p), ("b", "nil", p), ("c", "nil", p)], delta, {"a": 0, "b": 0, "c": 0}, anti
    )
    return GroupScheme.from_coord(coord, "heisenberg1")


def alpha_rtimes_mu(p: int, field: Field) -> GroupScheme:
    """alpha_p scaled by mu_p: Delta x = x (x) y + 1 (x) x, Delta y = y (x) y."""

    def delta(R, L, Rt):
        return {"x": R.add(R.mul(L["x"], Rt["y"]), Rt["x"]), "y": R.mul(L["y"], Rt["y"])}

    def anti(R, X):
        yinv = R.pow(X["y"], p - 1)
        return {"x": R.neg(R.mul(X["x"], yinv)), "y": yinv}

    coord = polynomial_hopf(field, [("x", "nil", p), ("y", "cyc", p)], delta, {"x": 0, "y": 1}, anti)
    return GroupScheme.from_coord(coord, "alpha_rtimes_mu")


def product(g1: GroupScheme, g2: GroupScheme) -> GroupScheme:
    coord = tensor_hopf(g1.coord, g2.coord)
    alg = tensor_hopf(g1.group_alg, g2.group_alg)
    F = g1.field
    return GroupScheme(coord, alg, F.kron(g1.pairing, g2.pairing), f"{g1.name}x{g2.name}")


def trivial_scheme(field: Field) -> GroupScheme:
    one = np.ones((1, 1, 1), dtype=np.int64)
    coord = HopfAlgebra(field, ["1"], one, np.ones(1), one, np.ones(1), np.ones((1, 1)))
    return GroupScheme.from_coord(coord, "1", ["e"])


BUILTIN_NAMES = ("constant", "cyclic", "symmetric", "alpha_p", "alpha_pn", "mu_p", "mu_n",
                 "heisenberg1", "alpha_rtimes_mu", "product", "trivial")


def build_builtin(name: str, p: int, params: Optional[dict] = None, field: Optional[Field] = None) -> GroupScheme:
    """Construct and validate a catalog group scheme."""
    params = dict(params or {})
    field = field or GF(p)
    if field.p != p:
        raise ValueError("field characteristic does not match p")
    if name == "constant":
        g = constant(params["table"], field, params.get("element_names"), params.get("label", "const"))
    elif name == "cyclic":
        n = int(params.get("n", p))
        g = constant(cyclic_table(n), field, ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)], f"C_{n}")
    elif name == "symmetric":
        n = int(params.get("n", 3))
        table, names = symmetric_table(n)
        g = constant(table, field, names, f"S_{n}")
    elif name == "alpha_p":
        g = alpha(p, field)
    elif name == "alpha_pn":
        g = alpha(p, field, int(params.get("height", 2)))
    elif name in ("mu_p", "mu_n"):
        g = mu(int(params.get("n", p)), field)
    elif name == "heisenberg1":
        g = heisenberg1(p, field)
    elif name == "alpha_rtimes_mu":
        g = alpha_rtimes_mu(p, field)
    elif name == "product":
        g = product(_operand(params["left"], p, field), _operand(params["right"], p, field))
    elif name == "trivial":
        g = trivial_scheme(field)
    else:
        raise ValueError(f"unsupported built-in scheme {name!r}")
    rep = g.validate()
    if not rep.ok:
        raise ValueError(f"built-in {name} failed validation: {[c.name for c in rep.failures()]}")
    return g


def _operand(x, p: int, field: Field) -> GroupScheme:
    if isinstance(x, GroupScheme):
        return x
    if isinstance(x, str):
        return build_builtin(x, p, None, field)
    return build_builtin(x["name"], p, x.get("params"), field)


def dualize(g: GroupScheme) -> GroupScheme:
    """Cartier dual: swap coordinate ring and group algebra (needs kG commutative)."""
    if not g.group_alg.commutative:
        raise ValueError("Cartier dual needs a commutative group algebra")
    return GroupScheme(g.group_alg, g.coord, g.pairing.T, f"{g.name}^D")


# ------------------------------------------------------------------ subgroups
@dataclass(eq=False)
class SubgroupEmbedding:
    sub: GroupScheme
    amb: GroupScheme
    coord_surj: np.ndarray   # (dim H, dim G)
    alg_inj: np.ndarray      # (dim G, dim H)
    ideal: np.ndarray        # columns span ker(coord_surj)

    def __post_init__(self):
        self.coord_surj = _frozen(self.coord_surj)
        self.alg_inj = _frozen(self.alg_inj)
        self.ideal = _frozen(self.ideal)

    @property
    def index(self) -> int:
        return self.amb.order // self.sub.order

    def validate(self) -> Report:
        return validate_embedding(self)

    def point_map(self, psi) -> np.ndarray:
        """Push a functional on k[H] (values) to a functional on k[G] (values)."""
        F = self.amb.field
        return F.matmul(np.asarray(psi)[None, :], self.coord_surj)[0]

    def base_change(self, ext: Field) -> "SubgroupEmbedding":
        emb = ext.embedding_from(self.amb.field)
        return SubgroupEmbedding(
            self.sub.base_change(ext), self.amb.base_change(ext), emb[self.coord_surj],
            emb[self.alg_inj], emb[self.ideal]
        )

    def __repr__(self) -> str:
        return f"SubgroupEmbedding({self.sub.name} <= {self.amb.name}, index={self.index})"


def validate_embedding(e: SubgroupEmbedding) -> Report:
    G, H = e.amb, e.sub
    F = G.field
    A, B = G.coord, H.coord
    pi = e.coord_surj
    n, m = A.dim, B.dim
    rep = Report("embedding")
    rep.add("surjective", F.rank(pi) == m)
    prod_then = F.matmul(pi, A.mult.reshape(n * n, n).T)  # (m, n*n)
    pp = F.kron(pi, pi)  # (m*m, n*n)
    then_prod = F.matmul(B.mult.reshape(m * m, m).T, pp)
    rep.add("coord_surj multiplicative", np.array_equal(prod_then, then_prod))
    rep.add("coord_surj unital", np.array_equal(F.matmul(pi, A.unit[:, None])[:, 0], B.unit))
    d_then = F.matmul(pp, A.comult.reshape(n, n * n).T)  # (m*m, n)
    then_d = F.matmul(B.comult.reshape(m, m * m).T, pi)
    rep.add("coord_surj comultiplicative", np.array_equal(d_then, then_d))
    rep.add("coord_surj counital", np.array_equal(F.matmul(B.counit[None, :], pi)[0], A.counit))
    rep.add("coord_surj antipode", np.array_equal(F.matmul(pi, A.antipode), F.matmul(B.antipode, pi)))
    iota = e.alg_inj
    rep.add("alg_inj injective", F.rank(iota) == m)
    ga, ha = G.group_alg, H.group_alg
    lhs = F.matmul(iota, ha.mult.reshape(m * m, m).T)
    rhs = F.matmul(ga.mult.reshape(n * n, n).T, F.kron(iota, iota))
    rep.add("alg_inj multiplicative", np.array_equal(lhs, rhs))
    lhs = F.matmul(F.kron(iota, iota), ha.comult.reshape(m, m * m).T)
    rhs = F.matmul(ga.comult.reshape(n, n * n).T, iota)
    rep.add("alg_inj comultiplicative", np.array_equal(lhs, rhs))
    # <iota psi, f> = <psi, pi f>
    rep.add("mutually dual", np.array_equal(F.matmul(iota.T, G.pairing), F.matmul(H.pairing, pi)))
    return rep


def _ideal_span(coord: HopfAlgebra, gens: Sequence[np.ndarray]) -> np.ndarray:
    F = coord.field
    cols = [F.matmul(coord.left_mult(g), np.eye(coord.dim, dtype=np.int64)) for g in gens]
    if not cols:
        return np.zeros((coord.dim, 0), dtype=np.int64)
    return F.column_basis(np.hstack(cols))


def _quotient_projection(F: Field, ideal: np.ndarray, n: int) -> tuple[np.ndarray, list[int]]:
    """Projection onto the standard complement of a subspace (columns of ideal)."""
    if ideal.shape[1] == 0:
        return np.eye(n, dtype=np.int64), list(range(n))
    r_mat, pivots = F.rref(ideal.T)
    free = [j for j in range(n) if j not in set(pivots)]
    pi = np.zeros((len(free), n), dtype=np.int64)
    pos = {f: a for a, f in enumerate(free)}
    for f in free:
        pi[pos[f], f] = 1
    for row, pc in enumerate(pivots):
        for f in free:
            pi[pos[f], pc] = F.neg(r_mat[row, f])
    return pi, free


def subgroup_embed(g: GroupScheme, generators: Sequence, name: str = "H") -> SubgroupEmbedding:
    """Closed subgroup cut out by an ideal of k[G] (generators as vectors)."""
    A = g.coord
    F = g.field
    gens = [np.asarray(v, dtype=np.int64) for v in generators]
    ideal = _ideal_span(A, gens)
    n = A.dim
    if ideal.shape[1] == n:
        raise NotHopfIdeal("ideal is the whole coordinate ring (zero quotient)")
    pi, free = _quotient_projection(F, ideal, n)
    m = len(free)
    # Hopf ideal tests
    eps_vals = F.matmul(A.counit[None, :], ideal)[0]
    if np.any(eps_vals):
        raise NotHopfIdeal("counit does not vanish on the ideal", witness=int(np.flatnonzero(eps_vals)[0]))
    pp = F.kron(pi, pi)
    for c in range(ideal.shape[1]):
        dv = F.matmul(pp, A.comul(ideal[:, c]).reshape(-1, 1))
        if np.any(dv):
            raise NotHopfIdeal("ideal is not a coideal", witness=ideal[:, c].tolist())
        sv = F.matmul(pi, A.antipode_of(ideal[:, c])[:, None])
        if np.any(sv):
            raise NotHopfIdeal("ideal is not stable under the antipode", witness=ideal[:, c].tolist())
    lifts = np.eye(n, dtype=np.int64)[:, free]
    M = A.mult
    mult = np.zeros((m, m, m), dtype=np.int64)
    comult = np.zeros((m, m, m), dtype=np.int64)
    anti = np.zeros((m, m), dtype=np.int64)
    for a, fa in enumerate(free):
        for b, fb in enumerate(free):
            mult[a, b] = F.matmul(pi, M[fa, fb][:, None])[:, 0]
        comult[a] = F.matmul(pp, A.comult[fa].reshape(-1, 1)).reshape(m, m)
        anti[:, a] = F.matmul(pi, A.antipode[:, fa][:, None])[:, 0]
    unit = F.matmul(pi, A.unit[:, None])[:, 0]
    eps = A.counit[free]
    gen_images = {k: F.matmul(pi, v[:, None])[:, 0] for k, v in A.generators.items()}
    coord = HopfAlgebra(F, [A.names[f] for f in free], mult, unit, comult, eps, anti, gen_images)
    dual_names = [g.group_alg.names[f] if g._pairing_is_identity else f"{A.names[f]}*" for f in free]
    sub = GroupScheme.from_coord(coord, name, dual_names)
    # iota = (P_G^{-1})^T pi^T P_H^T
    iota = F.matmul(g._pairing_inv_t, F.matmul(pi.T, sub.pairing.T))
    emb = SubgroupEmbedding(sub, g, pi, iota, ideal)
    rep = sub.validate()
    rep.extend(emb.validate())
    if not rep.ok:
        raise NotHopfIdeal(f"quotient failed validation: {[c.name for c in rep.failures()]}")
    return emb


def identity_embedding(g: GroupScheme) -> SubgroupEmbedding:
    return subgroup_embed(g, [], g.name)


@lru_cache(maxsize=None)
def trivial_subgroup(g: GroupScheme) -> SubgroupEmbedding:
    """The trivial subgroup, cut out by the augmentation ideal."""
    F = g.field
    aug = F.kernel(g.coord.counit[None, :])
    return subgroup_embed(g, [aug[:, j] for j in range(aug.shape[1])], "1")


def compose_embeddings(inner: SubgroupEmbedding, outer: SubgroupEmbedding) -> SubgroupEmbedding:
    """K <= H and H <= G give K <= G."""
    F = outer.amb.field
    pi = F.matmul(inner.coord_surj, outer.coord_surj)
    iota = F.matmul(outer.alg_inj, inner.alg_inj)
    ideal = F.kernel(pi)
    return SubgroupEmbedding(inner.sub, outer.amb, pi, iota, ideal)


def coadjoint(g: GroupScheme, f) -> np.ndarray:
    """sum f_(2) (x) f_(1) S(f_(3)) as an (n, n) matrix."""
    A, F, n = g.coord, g.field, g.order
    d1 = A.comul(f)  # [i, j'] f_(1) (x) f_(2)'
    # (Delta (x) id): split second factor again
    t = F.matmul(d1, A.comult.reshape(n, n * n)).reshape(n, n, n)  # [i, j, k]: f1=i, f2=j, f3=k
    q = _prod_with_antipode(A)  # q[(i, k), :] = e_i S(e_k)
    tt = t.transpose(1, 0, 2).reshape(n, n * n)
    return F.matmul(tt, q)


def _prod_with_antipode(A: HopfAlgebra) -> np.ndarray:
    F, n = A.field, A.dim
    # e_i S(e_k) = sum_l S[l,k] e_i e_l
    out = F.matmul(A.mult.transpose(0, 2, 1).reshape(n * n, n), A.antipode)  # [(i, c), k]
    return out.reshape(n, n, n).transpose(0, 2, 1).reshape(n * n, n)


def is_normal(e: SubgroupEmbedding) -> bool:
    F = e.amb.field
    for c in range(e.ideal.shape[1]):
        conj = coadjoint(e.amb, e.ideal[:, c])
        if np.any(F.matmul(e.coord_surj, conj)):
            return False
    return True


def right_invariants(e: SubgroupEmbedding) -> np.ndarray:
    """Basis of {f : f(gh) = f(g) for h in H}, i.e. (id (x) pi) Delta f = f (x) 1."""
    G = e.amb
    A, F, n = G.coord, G.field, G.order
    rows = []
    ub = e.sub.coord.unit
    for j in range(n):
        dj = A.comult[j]  # [a, b]
        lhs = F.matmul(dj, e.coord_surj.T)  # (n, m)
        rhs = F.outer(A.basis_vector(j), ub)
        rows.append(F.sub(lhs, rhs).reshape(-1))
    mat = np.stack(rows, axis=1)  # (n*m, n)
    return F.column_basis(F.kernel(mat))


def left_invariants(e: SubgroupEmbedding) -> np.ndarray:
    """Basis of {f : f(hg) = f(g) for h in H}, i.e. (pi (x) id) Delta f = 1 (x) f."""
    G = e.amb
    A, F, n = G.coord, G.field, G.order
    ub = e.sub.coord.unit
    rows = []
    for j in range(n):
        lhs = F.matmul(e.coord_surj, A.comult[j])  # (m, n)
        rhs = F.outer(ub, A.basis_vector(j))
        rows.append(F.sub(lhs, rhs).reshape(-1))
    mat = np.stack(rows, axis=1)
    return F.column_basis(F.kernel(mat))


def subalgebra_hopf(A: HopfAlgebra, basis: np.ndarray, names=None) -> HopfAlgebra:
    """Restrict the structure of A to a sub-Hopf-algebra spanned by basis columns."""
    F = A.field
    r = basis.shape[1]
    mult = np.zeros((r, r, r), dtype=np.int64)
    comult = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        for b in range(r):
            mult[a, b] = F.coords(basis, A.mul(basis[:, a], basis[:, b]))
        d = A.comul(basis[:, a])
        half = F.coords(basis, d)  # (r, n)
        comult[a] = F.coords(basis, half.T).T
    unit = F.coords(basis, A.unit)
    eps = F.matmul(A.counit[None, :], basis)[0]
    anti = F.coords(basis, F.matmul(A.antipode, basis))
    if names is None:
        names = []
        for a in range(r):
            lead = int(np.flatnonzero(basis[:, a])[0])
            names.append(f"[{A.names[lead]}]")
    return HopfAlgebra(F, names, mult, unit, comult, eps, anti)


@dataclass(eq=False)
class Quotient:
    scheme: GroupScheme
    projection: np.ndarray   # kG -> k(G/N)
    inclusion: np.ndarray    # k[G/N] -> k[G]
    normal: SubgroupEmbedding


def quotient_scheme(e: SubgroupEmbedding, name: Optional[str] = None) -> Quotient:
    if not is_normal(e):
        raise NotNormal(f"{e.sub.name} is not normal in {e.amb.name}")
    G = e.amb
    F = G.field
    basis = right_invariants(e)
    coord = subalgebra_hopf(G.coord, basis)
    q = GroupScheme.from_coord(coord, name or f"{G.name}/{e.sub.name}")
    proj = F.matmul(basis.T, G.pairing.T)
    return Quotient(q, _frozen(proj), _frozen(basis), e)


# ------------------------------------------------------- idempotents, points
def frobenius_matrix(A: HopfAlgebra, times: int = 1) -> np.ndarray:
    """Matrix of x -> x^(q^times) on the commutative algebra A (F_q-linear)."""
    F = A.field
    q = F.q
    cols = [A.power(A.basis_vector(j), q**times) for j in range(A.dim)]
    return np.stack(cols, axis=1)


def _frob_power_matrix(A: HopfAlgebra) -> np.ndarray:
    """x -> x^(q^N) with q^N >= dim A, killing the nilradical."""
    F = A.field
    N = 1
    while F.q**N < A.dim:
        N += 1
    fr = frobenius_matrix(A)
    out = np.eye(A.dim, dtype=np.int64)
    for _ in range(N):
        out = F.matmul(fr, out)
    return out


def primitive_idempotents(A: HopfAlgebra) -> list[np.ndarray]:
    """Complete set of primitive orthogonal idempotents of a commutative algebra."""
    F = A.field
    n = A.dim
    fr = frobenius_matrix(A)
    split = F.kernel(F.sub(fr, np.eye(n, dtype=np.int64)))  # {x : x^q = x}
    idems = [A.unit.copy()]
    for col in range(split.shape[1]):
        b = split[:, col]
        refined = []
        for e in idems:
            for c in range(F.q):
                shifted = F.sub(b, F.mul(A.unit, c))
                e_c = F.sub(A.unit, A.power(shifted, F.q - 1))
                piece = A.mul(e, e_c)
                if np.any(piece):
                    refined.append(piece)
        idems = refined
    return idems


@dataclass(eq=False)
class ComponentData:
    idempotents: list
    identity_index: int
    connected: SubgroupEmbedding
    order_connected: int
    order_etale: int
    residue_degrees: list
    primitive: list


@lru_cache(maxsize=None)
def connected_component(g: GroupScheme) -> ComponentData:
    A, F = g.coord, g.field
    idems = primitive_idempotents(A)
    ident = [i for i, e in enumerate(idems) if A.counit_of(e) == 1]
    if len(ident) != 1:
        raise RuntimeError("counit does not single out one idempotent")
    i0 = ident[0]
    order = [i0] + sorted((i for i in range(len(idems)) if i != i0), key=lambda i: tuple(idems[i]))
    idems = [idems[i] for i in order]
    e0 = idems[0]
    conn = subgroup_embed(g, [F.sub(A.unit, e0)], f"{g.name}^0")
    frN = _frob_power_matrix(A)
    fr = frobenius_matrix(A)
    degrees, primitive = [], []
    for e in idems:
        factor = F.column_basis(A.left_mult(e))
        degrees.append(F.rank(F.matmul(frN, factor)))
        fixed = F.kernel(F.sub(F.matmul(fr, factor), factor))
        primitive.append(fixed.shape[1] == 1)
    return ComponentData(
        idems, 0, conn, conn.sub.order, F.rank(frN), degrees, primitive
    )


@dataclass(eq=False)
class RationalPointGroup:
    ext: Field
    points: np.ndarray        # (P, n) values on the k[G] basis, over ext
    mult_table: np.ndarray
    identity: int
    inverse: list

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, phi) -> int:
        key = tuple(int(x) for x in phi)
        for i, row in enumerate(self.points):
            if tuple(int(x) for x in row) == key:
                return i
        raise KeyError("not a rational point")


def rational_points(g: GroupScheme, ext: Optional[Field] = None) -> RationalPointGroup:
    return _rational_points(g, ext or g.field)


@lru_cache(maxsize=None)
def _rational_points(g: GroupScheme, ext: Field) -> RationalPointGroup:
    F = g.field
    comp = connected_component(g)
    rel = ext.m // F.m if ext.m % F.m == 0 else 0
    need = 1
    for d in comp.residue_degrees:
        need = need * d // gcd(need, d)
    if rel == 0 or rel % need:
        raise ExtensionDoesNotSplit(
            f"{ext} does not split {g.name}; need degree {need * F.m} over F_{F.p}", need * F.m
        )
    gx = g.base_change(ext) if ext != F else g
    A = gx.coord
    idems = primitive_idempotents(A)
    frN = _frob_power_matrix(A)
    pts = []
    for e in idems:
        w = ext.matmul(frN, A.left_mult(e))  # columns: (e_j e)^(q^N) = c_j e
        t = int(np.flatnonzero(e)[0])
        vals = ext.mul(w[t], ext.inv(int(e[t])))
        pts.append(vals)
    eps = A.counit
    pts.sort(key=lambda v: (not np.array_equal(v, eps), tuple(int(x) for x in v)))
    points = np.array(pts, dtype=np.int64)
    n = A.dim
    P = len(points)
    key = {tuple(int(x) for x in v): i for i, v in enumerate(points)}
    table = np.zeros((P, P), dtype=np.int64)
    for i in range(P):
        for j in range(P):
            # (phi * psi)(e_a) = sum comult[a, b, c] phi(e_b) psi(e_c)
            conv = ext.matmul(ext.matmul(points[i][None, :], A.comult.transpose(1, 0, 2).reshape(n, n * n)).reshape(n, n), points[j][:, None])[:, 0]
            table[i, j] = key[tuple(int(x) for x in conv)]
    inverse = [key[tuple(int(x) for x in ext.matmul(points[i][None, :], A.antipode)[0])] for i in range(P)]
    return RationalPointGroup(ext, points, table, 0, inverse)


def check_points(g: GroupScheme, pts: RationalPointGroup) -> Report:
    ext = pts.ext
    A = g.base_change(ext).coord if ext != g.field else g.coord
    n = A.dim
    rep = Report("rational points")
    homs = True
    for v in pts.points:
        prod = ext.matmul(A.mult.reshape(n * n, n), v[:, None]).reshape(n, n)
        if not np.array_equal(prod, ext.outer(v, v)) or ext.dot(v, A.unit) != 1:
            homs = False
    rep.add("points are algebra maps", homs)
    T = pts.mult_table
    P = len(pts)
    assoc = all(T[T[a, b], c] == T[a, T[b, c]] for a in range(P) for b in range(P) for c in range(P))
    rep.add("associative", assoc)
    rep.add("identity is counit", np.array_equal(pts.points[pts.identity], A.counit))
    e = pts.identity
    rep.add("identity is two-sided", all(T[e, a] == a and T[a, e] == a for a in range(P)))
    rep.add("inverses", all(T[a, pts.inverse[a]] == pts.identity for a in range(P)))
    return rep
