"""Comodule algebras, invariant rings, height, and the Mumford, relative and field norms.

A right k[G]-comodule algebra S is handled through the components of its
coaction: for s in S write sigma(s) = sum_k s_k (x) e_k over the basis e_k of
k[G]; ``coact(s)`` returns the list [s_0, ..., s_{|G|-1}].  A rational point
gamma then acts by gamma(s) = sum_k gamma(e_k) s_k, which is a left action.

Carriers are either a finite-dimensional commutative algebra given by
structure constants (elements are ``AlgElem``) or a polynomial ring with
optional truncations (elements are ``Poly``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .hopf import (
    GroupScheme,
    SubgroupEmbedding,
    connected_component,
    primitive_idempotents,
    rational_points,
    trivial_subgroup,
)
from .report import (
    CarrierNotAField,
    ConstructionError,
    MissingDegreeBound,
    NotInfinitesimal,
    NotInvariant,
    Report,
)
from .repmod import GModule
from .scalars import Field, Poly
from .transfer import splitting_field


# ------------------------------------------------------------------ carriers
class CommAlgebra:
    """Finite-dimensional commutative algebra: e_i e_j = sum_k mult[i,j,k] e_k."""

    def __init__(self, field: Field, mult, unit, names: Optional[Sequence[str]] = None):
        self.field = field
        self.mult = np.asarray(mult, dtype=np.int64)
        self.unit = np.asarray(unit, dtype=np.int64)
        n = self.mult.shape[0]
        self.names = list(names) if names is not None else [f"e{i}" for i in range(n)]
        self._flat = self.mult.reshape(n * n, n)

    @classmethod
    def from_hopf(cls, h) -> "CommAlgebra":
        return cls(h.field, h.mult, h.unit, h.names)

    @property
    def dim(self) -> int:
        return len(self.unit)

    def elem(self, vec) -> "AlgElem":
        return AlgElem(self, np.asarray(vec, dtype=np.int64))

    def one(self) -> "AlgElem":
        return self.elem(self.unit)

    def zero(self) -> "AlgElem":
        return self.elem(np.zeros(self.dim, dtype=np.int64))

    def basis_elem(self, i: int) -> "AlgElem":
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return self.elem(v)

    def mul_vec(self, a, b) -> np.ndarray:
        return self.field.matmul(self.field.outer(a, b).reshape(1, -1), self._flat)[0]

    def left_mult(self, a) -> np.ndarray:
        n = self.dim
        return self.field.matmul(np.asarray(a)[None, :], self.mult.reshape(n, n * n)).reshape(n, n).T

    def base_change(self, ext: Field) -> "CommAlgebra":
        emb = ext.embedding_from(self.field)
        return CommAlgebra(ext, emb[self.mult], emb[self.unit], self.names)

    def subalgebra(self, basis: np.ndarray, names=None) -> "CommAlgebra":
        """Structure constants on a subalgebra spanned by basis columns."""
        F = self.field
        r = basis.shape[1]
        mult = np.zeros((r, r, r), dtype=np.int64)
        for a in range(r):
            for b in range(a, r):
                c = F.coords(basis, self.mul_vec(basis[:, a], basis[:, b]))
                mult[a, b] = mult[b, a] = c
        unit = F.coords(basis, self.unit)
        return CommAlgebra(F, mult, unit, names)

    def radical(self) -> np.ndarray:
        """Kernel of the trace form; equals the nilradical over a perfect field."""
        F = self.field
        n = self.dim
        mats = [self.left_mult(np.eye(n, dtype=np.int64)[i]) for i in range(n)]
        form = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                t = F.sum(np.diagonal(F.matmul(mats[i], mats[j])))
                form[i, j] = form[j, i] = t
        return F.kernel(form)

    def is_field(self) -> bool:
        if self.radical().shape[1]:
            return False
        from .hopf import HopfAlgebra

        n = self.dim
        shell = HopfAlgebra(self.field, self.names, self.mult, self.unit,
                            np.zeros((n, n, n), np.int64), np.zeros(n, np.int64), np.zeros((n, n), np.int64))
        return len(primitive_idempotents(shell)) == 1


class AlgElem:
    """Element of a CommAlgebra with ring operators."""

    __slots__ = ("alg", "vec")

    def __init__(self, alg: CommAlgebra, vec: np.ndarray):
        self.alg = alg
        self.vec = vec

    def _other(self, o) -> np.ndarray:
        if isinstance(o, AlgElem):
            return o.vec
        return self.alg.field.mul(self.alg.unit, int(o))

    def __add__(self, o) -> "AlgElem":
        return AlgElem(self.alg, self.alg.field.add(self.vec, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o) -> "AlgElem":
        return AlgElem(self.alg, self.alg.field.sub(self.vec, self._other(o)))

    def __rsub__(self, o) -> "AlgElem":
        return AlgElem(self.alg, self.alg.field.sub(self._other(o), self.vec))

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.alg, self.alg.field.neg(self.vec))

    def __mul__(self, o) -> "AlgElem":
        if isinstance(o, AlgElem):
            return AlgElem(self.alg, self.alg.mul_vec(self.vec, o.vec))
        return self.scale(int(o))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "AlgElem":
        result = self.alg.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "AlgElem":
        return AlgElem(self.alg, self.alg.field.mul(self.vec, c))

    def is_zero(self) -> bool:
        return not np.any(self.vec)

    def __eq__(self, o) -> bool:
        return np.array_equal(self.vec, self._other(o))

    def __hash__(self) -> int:
        return hash(tuple(int(x) for x in self.vec))

    def __repr__(self) -> str:
        parts = [f"{int(c)}*{nm}" if c != 1 else nm for c, nm in zip(self.vec, self.alg.names) if c]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class PolyCarrier:
    """k[x_1..x_r] with optional per-variable nilpotency exponents."""

    field: Field
    vars: tuple
    trunc: tuple

    @classmethod
    def make(cls, field: Field, vars: Sequence[str], trunc=None) -> "PolyCarrier":
        trunc = tuple(trunc) if trunc is not None else (None,) * len(vars)
        return cls(field, tuple(vars), trunc)

    @property
    def is_domain(self) -> bool:
        return all(t is None for t in self.trunc)

    def one(self) -> Poly:
        return Poly.const(self.field, self.vars, 1, self.trunc)

    def zero(self) -> Poly:
        return Poly(self.field, self.vars, {}, self.trunc)

    def var(self, name: str) -> Poly:
        return Poly.var(self.field, self.vars, name, self.trunc)

    def poly(self, terms) -> Poly:
        return Poly(self.field, self.vars, terms, self.trunc)

    def base_change(self, ext: Field) -> "PolyCarrier":
        return PolyCarrier(ext, self.vars, self.trunc)

    def monomials(self, bound: int) -> list[tuple]:
        """Exponent vectors of total degree <= bound, in graded-lex order."""
        out = []

        def rec(i, left, acc):
            if i == len(self.vars):
                out.append(tuple(acc))
                return
            top = left if self.trunc[i] is None else min(left, self.trunc[i] - 1)
            for k in range(top + 1):
                rec(i + 1, left - k, acc + [k])

        rec(0, bound, [])
        return sorted(out, key=lambda e: (sum(e), e))


Carrier = Union[CommAlgebra, PolyCarrier]
Elem = Union[AlgElem, Poly]


def _embed_elem(x: Elem, ext: Field, target) -> Elem:
    emb = ext.embedding_from(x.field if isinstance(x, Poly) else x.alg.field)
    if isinstance(x, Poly):
        return Poly(ext, x.vars, {e: int(emb[c]) for e, c in x.terms.items()}, x.trunc)
    return AlgElem(target, emb[x.vec])


# ---------------------------------------------------------- comodule algebra
class ComoduleAlgebra:
    """Right k[G]-comodule algebra.

    For a finite carrier ``coaction`` is an array (|G|, dim S, dim S) with
    s_k = coaction[k] @ s.  For a polynomial carrier it maps each variable to
    its list of |G| components, and sigma is extended multiplicatively.
    """

    def __init__(self, scheme: GroupScheme, carrier: Carrier, coaction, name: str = "S"):
        self.scheme = scheme
        self.carrier = carrier
        self.name = name
        if isinstance(carrier, CommAlgebra):
            self.coaction = np.asarray(coaction, dtype=np.int64)
            if self.coaction.shape != (scheme.order, carrier.dim, carrier.dim):
                raise ValueError("coaction array has the wrong shape")
        else:
            self.coaction = {v: list(coaction[v]) for v in carrier.vars}
            for v, comps in self.coaction.items():
                if len(comps) != scheme.order:
                    raise ValueError(f"coaction of {v} needs {scheme.order} components")
        A = scheme.coord.mult
        self._triples = [tuple(int(t) for t in idx) + (int(A[tuple(idx)]),) for idx in np.argwhere(A)]
        self._pow_cache: dict = {}

    @property
    def field(self) -> Field:
        return self.scheme.field

    @property
    def finite(self) -> bool:
        return isinstance(self.carrier, CommAlgebra)

    def one(self) -> Elem:
        return self.carrier.one()

    def zero(self) -> Elem:
        return self.carrier.zero()

    def generators(self) -> list[tuple[str, Elem]]:
        if self.finite:
            return [(nm, self.carrier.basis_elem(i)) for i, nm in enumerate(self.carrier.names)]
        return [(v, self.carrier.var(v)) for v in self.carrier.vars]

    # -- S (x) k[G] arithmetic on component lists
    def tensor_mul(self, u: list, w: list) -> list:
        if not self.finite and self.field.m == 1:
            return self._tensor_mul_prime(u, w)
        out = [self.zero() for _ in range(self.scheme.order)]
        for k, l, m, c in self._triples:
            if u[k].is_zero() or w[l].is_zero():
                continue
            term = u[k] * w[l]
            out[m] = out[m] + (term if c == 1 else term.scale(c))
        return out

    def _tensor_mul_prime(self, u: list, w: list) -> list:
        p = self.field.p
        C = self.carrier
        free = C.is_domain
        acc = [dict() for _ in range(self.scheme.order)]
        for k, l, m, c in self._triples:
            a, b = u[k].terms, w[l].terms
            if not a or not b:
                continue
            slot = acc[m]
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    if free or all(t is None or x < t for x, t in zip(e, C.trunc)):
                        slot[e] = slot.get(e, 0) + c * c1 * c2
        zero = C.zero()
        return [zero._trusted({e: v % p for e, v in d.items() if v % p}) for d in acc]

    def unit_components(self, s: Elem) -> list:
        """Components of s (x) 1."""
        return [s.scale(int(c)) if c else self.zero() for c in self.scheme.coord.unit]

    def _var_power(self, v: str, k: int) -> list:
        key = (v, k)
        if key not in self._pow_cache:
            if k == 0:
                self._pow_cache[key] = self.unit_components(self.one())
            else:
                half = self._var_power(v, k // 2)
                sq = self.tensor_mul(half, half)
                self._pow_cache[key] = self.tensor_mul(sq, self.coaction[v]) if k % 2 else sq
        return self._pow_cache[key]

    def coact(self, s: Elem) -> list:
        if self.finite:
            F = self.field
            return [self.carrier.elem(F.matmul(self.coaction[k], s.vec[:, None])[:, 0]) for k in range(self.scheme.order)]
        F = self.field
        acc = [dict() for _ in range(self.scheme.order)]
        for e, c in s.terms.items():
            for slot, x in zip(acc, self._monomial(e)):
                for ee, cc in x.terms.items():
                    if F.m == 1:
                        slot[ee] = (slot.get(ee, 0) + cc * c) % F.p
                    else:
                        slot[ee] = int(F.add(slot.get(ee, 0), F.mul(cc, c)))
        return [self.carrier.poly(d) for d in acc]

    def _monomial(self, e: tuple) -> list:
        """Components of sigma of a monomial, built one variable at a time."""
        key = ("mono", e)
        if key not in self._pow_cache:
            i = next((j for j, k in enumerate(e) if k), None)
            if i is None:
                self._pow_cache[key] = self.unit_components(self.one())
            else:
                rest = tuple(k - (j == i) for j, k in enumerate(e))
                self._pow_cache[key] = self.tensor_mul(self._monomial(rest), self.coaction[self.carrier.vars[i]])
        return self._pow_cache[key]

    def act_point(self, point, comps: list) -> Elem:
        """gamma(s) from the components of sigma(s) and the values gamma(e_k)."""
        out = self.zero()
        for val, x in zip(point, comps):
            if val and not x.is_zero():
                out = out + x.scale(int(val))
        return out

    def is_invariant(self, s: Elem) -> bool:
        return all(a == b for a, b in zip(self.coact(s), self.unit_components(s)))

    def restrict(self, e: SubgroupEmbedding) -> "ComoduleAlgebra":
        """The k[H]-comodule algebra (id (x) pi) sigma."""
        if e.amb is not self.scheme:
            raise ValueError("embedding does not live in the acting scheme")
        F = self.field
        surj = e.coord_surj
        if self.finite:
            arr = F.matmul(surj, self.coaction.reshape(self.scheme.order, -1)).reshape(e.sub.order, *self.coaction.shape[1:])
            return ComoduleAlgebra(e.sub, self.carrier, arr, f"{self.name}|{e.sub.name}")
        co = {}
        for v, comps in self.coaction.items():
            new = []
            for m in range(e.sub.order):
                acc = self.zero()
                for k in np.flatnonzero(surj[m]):
                    acc = acc + comps[k].scale(int(surj[m, k]))
                new.append(acc)
            co[v] = new
        return ComoduleAlgebra(e.sub, self.carrier, co, f"{self.name}|{e.sub.name}")

    def base_change(self, ext: Field) -> "ComoduleAlgebra":
        memo = self.__dict__.setdefault("_base_changes", {})
        if ext not in memo:
            memo[ext] = self._base_change(ext)
        return memo[ext]

    def _base_change(self, ext: Field) -> "ComoduleAlgebra":
        g = self.scheme.base_change(ext) if ext != self.field else self.scheme
        carrier = self.carrier.base_change(ext)
        if self.finite:
            emb = ext.embedding_from(self.field)
            return ComoduleAlgebra(g, carrier, emb[self.coaction], self.name)
        co = {v: [_embed_elem(x, ext, None) for x in comps] for v, comps in self.coaction.items()}
        return ComoduleAlgebra(g, carrier, co, self.name)

    def lift(self, s: Elem, other: "ComoduleAlgebra") -> Elem:
        """Image of s in a base change of this algebra."""
        if other.field == self.field:
            return s
        return _embed_elem(s, other.field, other.carrier if other.finite else None)

    def random_element(self, rng: np.random.Generator, degree: int = 2, terms: int = 4) -> Elem:
        F = self.field
        if self.finite:
            return self.carrier.elem(F.random(rng, self.carrier.dim))
        monos = self.carrier.monomials(degree)
        picks = rng.choice(len(monos), size=min(terms, len(monos)), replace=False)
        return self.carrier.poly({monos[int(i)]: int(F.random(rng, 1)[0]) for i in picks})

    def __repr__(self) -> str:
        return f"ComoduleAlgebra({self.name} over {self.scheme.name})"


def regular_comodule(g: GroupScheme) -> ComoduleAlgebra:
    """S = k[G] with sigma = Delta."""
    A = g.coord
    return ComoduleAlgebra(g, CommAlgebra.from_hopf(A), A.comult.transpose(2, 1, 0), f"k[{g.name}]")


def translation_comodule(e: SubgroupEmbedding, side: str = "right") -> ComoduleAlgebra:
    """k[G] as a k[H]-comodule algebra by right or left translation.

    right: sigma(f) = f_1 (x) pi(f_2), invariants {f : f(gh) = f(g)}.
    left:  sigma(f) = f_2 (x) pi(S f_1), invariants {f : f(hg) = f(g)}.
    """
    G, H = e.amb, e.sub
    F = G.field
    A = G.coord
    if side == "right":
        arr = F.matmul(e.coord_surj, A.comult.transpose(2, 1, 0).reshape(G.order, -1))
        arr = arr.reshape(H.order, G.order, G.order)
    elif side == "left":
        # component m of sigma(e_i) is sum_{a,b} comult[i,a,b] (pi S e_a)_m e_b
        pis = F.matmul(e.coord_surj, A.antipode)  # (|H|, |G|): column a = pi(S e_a)
        arr = np.zeros((H.order, G.order, G.order), dtype=np.int64)
        for i in range(G.order):
            arr[:, :, i] = F.matmul(pis, A.comult[i])
    else:
        raise ValueError("side must be 'left' or 'right'")
    return ComoduleAlgebra(H, CommAlgebra.from_hopf(A), arr, f"k[{G.name}]<{side} {H.name}>")


def pullback(S: ComoduleAlgebra, g: GroupScheme, hopf_map: np.ndarray, name=None) -> ComoduleAlgebra:
    """Coaction (id (x) phi) sigma along a Hopf map phi: k[Q] -> k[G] (columns = images)."""
    F = S.field
    if S.finite:
        arr = F.matmul(hopf_map, S.coaction.reshape(S.scheme.order, -1)).reshape(g.order, *S.coaction.shape[1:])
        return ComoduleAlgebra(g, S.carrier, arr, name or S.name)
    co = {}
    for v, comps in S.coaction.items():
        new = []
        for m in range(g.order):
            acc = S.zero()
            for k in np.flatnonzero(hopf_map[m]):
                acc = acc + comps[k].scale(int(hopf_map[m, k]))
            new.append(acc)
        co[v] = new
    return ComoduleAlgebra(g, S.carrier, co, name or S.name)


def sub_comodule(S: ComoduleAlgebra, basis: np.ndarray, name=None) -> ComoduleAlgebra:
    """A coaction-stable subalgebra of a finite carrier, spanned by basis columns."""
    if not S.finite:
        raise ValueError("sub_comodule needs a finite carrier")
    F = S.field
    sub = S.carrier.subalgebra(basis)
    r = basis.shape[1]
    arr = np.zeros((S.scheme.order, r, r), dtype=np.int64)
    for k in range(S.scheme.order):
        arr[k] = F.coords(basis, F.matmul(S.coaction[k], basis))
    return ComoduleAlgebra(S.scheme, sub, arr, name or f"{S.name}'")


def comodule_to_module(S: ComoduleAlgebra, name=None) -> GModule:
    """Left kG-module phi . v = sum_k phi(e_k) v_k on a finite carrier."""
    if not S.finite:
        raise ValueError("module structure needs a finite carrier")
    g = S.scheme
    F = S.field
    eye = np.eye(g.order, dtype=np.int64)
    action = np.stack([F.lincomb(g.functional_values(eye[j]), S.coaction) for j in range(g.order)])
    return GModule(g, action, name or S.name)


def validate_comodule(S: ComoduleAlgebra) -> Report:
    g = S.scheme
    A = g.coord
    rep = Report(f"comodule algebra {S.name}")
    gens = S.generators()
    bad_counit, bad_coassoc, bad_alg = [], [], []
    for nm, s in gens:
        comps = S.coact(s)
        back = S.act_point(A.counit, comps)
        if not back == s:
            bad_counit.append(nm)
        ok = True
        for l in range(g.order):
            inner = S.coact(comps[l]) if not comps[l].is_zero() else [S.zero()] * g.order
            for k in range(g.order):
                rhs = S.zero()
                for m in np.flatnonzero(A.comult[:, k, l]):
                    rhs = rhs + comps[m].scale(int(A.comult[m, k, l]))
                if not inner[k] == rhs:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            bad_coassoc.append(nm)
    if S.finite:
        C = S.carrier
        if not all(a == b for a, b in zip(S.coact(C.one()), S.unit_components(C.one()))):
            bad_alg.append("1")
        for i, (ni, si) in enumerate(gens):
            ci = S.coact(si)
            for nj, sj in gens[i:]:
                if not all(a == b for a, b in zip(S.coact(si * sj), S.tensor_mul(ci, S.coact(sj)))):
                    bad_alg.append(f"{ni}*{nj}")
    else:
        for v, t in zip(S.carrier.vars, S.carrier.trunc):
            if t is not None and any(not x.is_zero() for x in S._var_power(v, t)):
                bad_alg.append(f"{v}^{t}")
    rep.add("counit", not bad_counit, witness=bad_counit or None)
    rep.add("coassociativity", not bad_coassoc, witness=bad_coassoc or None)
    rep.add("algebra map", not bad_alg, witness=bad_alg or None)
    return rep


# ---------------------------------------------------------------- invariants
def algebra_invariants(S: ComoduleAlgebra, degree_bound: Optional[int] = None) -> list:
    """Basis of S^G (elements of degree <= degree_bound for polynomial carriers)."""
    F = S.field
    g = S.scheme
    if S.finite:
        n = S.carrier.dim
        eye = np.eye(n, dtype=np.int64)
        rows = np.concatenate([F.sub(S.coaction[k], F.mul(eye, int(g.coord.unit[k]))) for k in range(g.order)])
        ker = F.kernel(rows)
        if not ker.shape[1]:
            return []
        red = F.rref(ker.T)[0]
        return [S.carrier.elem(r) for r in red if np.any(r)]
    if degree_bound is None:
        raise MissingDegreeBound("polynomial carriers need a degree bound")
    monos = S.carrier.monomials(degree_bound)
    cols = []
    keys: dict = {}
    for e in monos:
        s = S.carrier.poly({e: 1})
        diff = [a - b for a, b in zip(S.coact(s), S.unit_components(s))]
        col = {}
        for k, x in enumerate(diff):
            for ee, c in x.terms.items():
                key = (k, ee)
                keys.setdefault(key, len(keys))
                col[keys[key]] = c
        cols.append(col)
    mat = np.zeros((max(len(keys), 1), len(monos)), dtype=np.int64)
    for j, col in enumerate(cols):
        for i, c in col.items():
            mat[i, j] = c
    ker = F.kernel(mat)
    if not ker.shape[1]:
        return []
    # rref from the top-degree end so leading monomials are as large as possible
    red = F.rref(ker.T[:, ::-1])[0][:, ::-1]
    out = [S.carrier.poly({monos[j]: int(r[j]) for j in np.flatnonzero(r)}) for r in red if np.any(r)]
    return sorted(out, key=lambda p: (p.degree(), repr(p)))


def in_invariant_span(S: ComoduleAlgebra, s: Elem) -> bool:
    return S.is_invariant(s)


def height_of(g: GroupScheme) -> int:
    """Least n with f^(p^n) = 0 on the augmentation ideal of an infinitesimal scheme."""
    comp = connected_component(g)
    if comp.order_connected != g.order:
        raise NotInfinitesimal(f"{g.name} has {len(comp.idempotents)} components")
    A, F = g.coord, g.field
    cur = F.kernel(A.counit[None, :])
    n = 0
    while cur.shape[1] and np.any(cur):
        cur = np.stack([A.power(cur[:, j], F.p) for j in range(cur.shape[1])], axis=1)
        n += 1
    return n


# -------------------------------------------------------------- determinants
def det_cofactor(M: list) -> Elem:
    """Laplace expansion along rows, memoized over column subsets."""
    n = len(M)
    one = M[0][0] - M[0][0] + 1 if n else None
    memo: dict = {}

    def rec(row: int, cols: tuple) -> Elem:
        if row == n:
            return one
        if cols in memo:
            return memo[cols]
        acc = one - one
        for pos, c in enumerate(cols):
            a = M[row][c]
            if a.is_zero():
                continue
            minor = rec(row + 1, cols[:pos] + cols[pos + 1:])
            term = a * minor
            acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(n)))


def det_berkowitz(M: list) -> Elem:
    """Division-free determinant through the characteristic polynomial."""
    n = len(M)
    one = M[0][0] - M[0][0] + 1
    zero = one - one
    vec = [one]
    for r in range(1, n + 1):
        a = M[r - 1][r - 1]
        Rrow = [M[r - 1][j] for j in range(r - 1)]
        Scol = [M[i][r - 1] for i in range(r - 1)]
        col = [one, -a]
        cur = Scol
        for _ in range(r - 1):
            val = zero
            for x, y in zip(Rrow, cur):
                if not x.is_zero() and not y.is_zero():
                    val = val + x * y
            col.append(-val)
            nxt = []
            for i in range(r - 1):
                acc = zero
                for j in range(r - 1):
                    if not M[i][j].is_zero() and not cur[j].is_zero():
                        acc = acc + M[i][j] * cur[j]
                nxt.append(acc)
            cur = nxt
        # lower-triangular Toeplitz (r+1) x r times vec
        new = []
        for i in range(r + 1):
            acc = zero
            for j in range(min(i + 1, r)):
                if i - j < len(col) and not col[i - j].is_zero() and not vec[j].is_zero():
                    acc = acc + col[i - j] * vec[j]
            new.append(acc)
        vec = new
    d = vec[n]
    return -d if n % 2 else d


def det_bareiss(M: list) -> Poly:
    """Fraction-free elimination over a polynomial domain."""
    n = len(M)
    A = [list(row) for row in M]
    one = A[0][0] - A[0][0] + 1
    prev = one
    sign = 1
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return one - one
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = num.divexact(prev) if not num.is_zero() else num
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def ring_det(M: list, domain: bool = False) -> Elem:
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if domain:
        return det_bareiss(M)
    if n <= 6:
        return det_cofactor(M)
    return det_berkowitz(M)


def _domain(S: ComoduleAlgebra) -> bool:
    return not S.finite and S.carrier.is_domain


def multiplication_matrix(S: ComoduleAlgebra, comps: list) -> list:
    """S-matrix of multiplication by sum_k s_k (x) e_k on the S-basis 1 (x) e_j."""
    n = S.scheme.order
    M = [[S.zero() for _ in range(n)] for _ in range(n)]
    for k, j, i, c in S._triples:
        if comps[k].is_zero():
            continue
        M[i][j] = M[i][j] + (comps[k] if c == 1 else comps[k].scale(c))
    return M


def mumford_norm(S: ComoduleAlgebra, s: Elem, check: bool = True) -> Elem:
    """det of multiplication by sigma(s) on the free S-module S (x) k[G]."""
    val = ring_det(multiplication_matrix(S, S.coact(s)), _domain(S))
    if check and not S.is_invariant(val):
        raise ConstructionError("Mumford norm left the invariant ring")
    return val


# -------------------------------------------------------------- relative norm
@dataclass(eq=False)
class NormReport:
    element: object
    value: object
    exponent: int
    ext: Field
    transversal: list
    descended: bool
    invariant: bool
    coset_count: int = 0
    report: Report = field(default_factory=lambda: Report("relative norm"))


def _descend(x: Elem, base: Field, S: ComoduleAlgebra) -> Optional[Elem]:
    ext = x.field if isinstance(x, Poly) else x.alg.field
    if ext == base:
        return x
    if isinstance(x, Poly):
        coeffs = np.array(list(x.terms.values()), dtype=np.int64)
        if coeffs.size and not np.all(ext.in_subfield(coeffs, base.m)):
            return None
        small = ext.restriction_to(base, coeffs) if coeffs.size else coeffs
        return Poly(base, x.vars, dict(zip(x.terms.keys(), (int(c) for c in small))), x.trunc)
    if not np.all(ext.in_subfield(x.vec, base.m)):
        return None
    return S.carrier.elem(ext.restriction_to(base, x.vec))


def _cosets(points_g, h_idx: list, last: bool = False) -> list[int]:
    """Representatives of left cosets gamma Gamma_H in point-index order."""
    seen: set = set()
    reps = []
    T = points_g.mult_table
    for gi in range(len(points_g)):
        if gi in seen:
            continue
        coset = sorted({int(T[gi, h]) for h in h_idx})
        seen.update(coset)
        reps.append(coset[-1] if last else gi)
    return reps


def relative_norm(
    S: ComoduleAlgebra,
    e: Optional[SubgroupEmbedding],
    s: Elem,
    ext: Optional[Field] = None,
    last_representatives: bool = False,
) -> NormReport:
    """Nm_H^G(s) = prod over gamma in Gamma_G / Gamma_H of gamma(s^(|G^0| / |H^0|))."""
    G = S.scheme
    F = S.field
    if e is None:
        e = trivial_subgroup(G)
    if e.amb is not G:
        raise ValueError("embedding does not live in the acting scheme")
    if not S.restrict(e).is_invariant(s):
        raise NotInvariant(f"element is not invariant under {e.sub.name}")
    c_g = connected_component(G)
    c_h = connected_component(e.sub)
    exponent = c_g.order_connected // c_h.order_connected
    ext = ext or splitting_field(G)
    pts_g = rational_points(G, ext)
    pts_h = rational_points(e.sub, ext)
    ex = e.base_change(ext) if ext != F else e
    h_idx = [pts_g.index_of(ex.point_map(v)) for v in pts_h.points]
    reps = _cosets(pts_g, h_idx, last_representatives)
    Sx = S.base_change(ext) if ext != F else S
    t = s ** exponent
    comps = Sx.coact(S.lift(t, Sx)) if ext != F else S.coact(t)
    val = Sx.one()
    for gi in reps:
        val = val * Sx.act_point(pts_g.points[gi], comps)
    down = _descend(val, F, S)
    rep = Report("relative norm")
    rep.add("descends to base field", down is not None)
    inv = down is not None and S.is_invariant(down)
    rep.add("value is G-invariant", inv)
    return NormReport(s, down if down is not None else val, exponent, ext, reps, down is not None, inv, len(reps), rep)


@dataclass(eq=False)
class ComponentDet:
    point: int
    det: object
    expected: object
    equal: bool


def component_determinants(S: ComoduleAlgebra, s: Elem, ext: Optional[Field] = None) -> list[ComponentDet]:
    """det(m_{s,gamma}) on S (x) A_gamma against gamma(s)^|G^0|, over a splitting field."""
    G = S.scheme
    F = S.field
    ext = ext or splitting_field(G)
    Sx = S.base_change(ext) if ext != F else S
    Gx = Sx.scheme
    A = Gx.coord
    pts = rational_points(G, ext)
    sx = S.lift(s, Sx)
    comps = Sx.coact(sx)
    g0 = connected_component(G).order_connected
    out = []
    for idem in primitive_idempotents(A):
        gi = next(i for i, v in enumerate(pts.points) if ext.dot(v, idem) == 1)
        factor = ext.column_basis(A.left_mult(idem))
        r = factor.shape[1]
        M = [[Sx.zero() for _ in range(r)] for _ in range(r)]
        for k in range(A.dim):
            if comps[k].is_zero():
                continue
            prod = ext.matmul(A.left_mult(A.basis_vector(k)), factor)
            c = ext.coords(factor, prod)  # (r, r): column j = coords of e_k f_j
            for i in range(r):
                for j in range(r):
                    if c[i, j]:
                        M[i][j] = M[i][j] + comps[k].scale(int(c[i, j]))
        d = ring_det(M, _domain(Sx))
        expected = Sx.act_point(pts.points[gi], comps) ** g0
        out.append(ComponentDet(gi, d, expected, d == expected))
    return out


# ----------------------------------------------------------------- field norm
@dataclass(eq=False)
class FieldNormReport:
    element: object
    field_norm: object      # N_{L/L^G}(s), as an element of L
    norm: object            # Nm^G(s)
    degree: int             # [L : L^G]
    order: int
    exponent: int
    divides: bool
    agrees: bool


def _relative_basis(F: Field, alg: CommAlgebra, sub: np.ndarray) -> list[np.ndarray]:
    """Greedy basis of alg as a module over the subalgebra spanned by sub columns."""
    chosen: list[np.ndarray] = []
    span = np.zeros((alg.dim, 0), dtype=np.int64)
    for i in range(alg.dim):
        b = np.eye(alg.dim, dtype=np.int64)[i]
        block = F.matmul(alg.left_mult(b), sub)
        trial = np.hstack([span, block])
        if F.rank(trial) > span.shape[1]:
            chosen.append(b)
            span = F.column_basis(trial)
        if span.shape[1] == alg.dim:
            break
    return chosen


def field_norm_compare(S: ComoduleAlgebra, s: AlgElem) -> FieldNormReport:
    if not S.finite or not S.carrier.is_field():
        raise CarrierNotAField(f"{S.name} is not a field")
    F = S.field
    L = S.carrier
    inv = algebra_invariants(S)
    sub = np.stack([x.vec for x in inv], axis=1)
    K = L.subalgebra(sub)
    degree = L.dim // sub.shape[1]
    basis = _relative_basis(F, L, sub)
    if len(basis) != degree:
        raise ConstructionError("L is not free over L^G of the expected rank")
    # columns k_a b_i, ordered (i, a)
    cols = np.concatenate([F.matmul(L.left_mult(b), sub) for b in basis], axis=1)
    M = [[K.zero() for _ in range(degree)] for _ in range(degree)]
    for j, b in enumerate(basis):
        c = F.coords(cols, L.mul_vec(s.vec, b))
        for i in range(degree):
            M[i][j] = K.elem(c[i * sub.shape[1]:(i + 1) * sub.shape[1]])
    nk = ring_det(M)
    n_l = L.elem(F.matmul(sub, nk.vec[:, None])[:, 0])
    nm = relative_norm(S, None, s).value
    order = S.scheme.order
    exponent = order // degree
    return FieldNormReport(s, n_l, nm, degree, order, exponent, order % degree == 0, nm == n_l ** exponent)
