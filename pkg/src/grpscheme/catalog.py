"""Catalog of schemes, subgroups, module batteries and comodule algebras used by the suites."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import expr
from .hopf import (
    GroupScheme,
    SubgroupEmbedding,
    build_builtin,
    compose_embeddings,
    identity_embedding,
    subgroup_embed,
    trivial_subgroup,
)
from .norm import ComoduleAlgebra, PolyCarrier, regular_comodule
from .repmod import GModule, random_module, regular_module, trivial_module
from .scalars import GF

SCHEMES = {
    "C2": ("cyclic", 2, {"n": 2}),
    "C3": ("cyclic", 3, {"n": 3}),
    "S3@2": ("symmetric", 2, {"n": 3}),
    "S3@3": ("symmetric", 3, {"n": 3}),
    "alpha2": ("alpha_p", 2, {}),
    "alpha3": ("alpha_p", 3, {}),
    "alpha4": ("alpha_pn", 2, {"height": 2}),
    "mu2": ("mu_p", 2, {}),
    "mu3": ("mu_p", 3, {}),
    "mu3@2": ("mu_n", 2, {"n": 3}),
    "heis2": ("heisenberg1", 2, {}),
    "heis3": ("heisenberg1", 3, {}),
    "armu2": ("alpha_rtimes_mu", 2, {}),
    "armu3": ("alpha_rtimes_mu", 3, {}),
    "C2xalpha2": ("product", 2, {"left": {"name": "cyclic", "params": {"n": 2}}, "right": "alpha_p"}),
}

# the schemes named by the integral-dimension criterion
INTEGRAL_SCHEMES = ["C2", "C3", "S3@2", "S3@3", "alpha2", "alpha3", "mu2", "mu3", "mu3@2",
                    "heis2", "heis3", "armu2", "armu3", "C2xalpha2"]

UNIPOTENT = ["alpha2", "alpha3", "heis2", "heis3"]


def prime_of(label: str) -> int:
    return SCHEMES[label][1]


def scheme(label: str, m: int = 1) -> GroupScheme:
    return _scheme(label, int(m))


@lru_cache(maxsize=None)
def _scheme(label: str, m: int) -> GroupScheme:
    name, p, params = SCHEMES[label]
    g = build_builtin(name, p, params, GF(p, m))
    g.name = label if m == 1 else f"{label}/F{p}^{m}"
    return g


def coord_element(g: GroupScheme, text: str) -> np.ndarray:
    """Vector in k[G] of an expression in the coordinate generators."""
    A = g.coord
    names = list(A.generators)
    gens = [A.generators[n] for n in names]
    F = g.field
    return expr.evaluate(text, names, F, A.unit, gens, A.mul, F.add, lambda v, c: F.mul(v, c))


def _constant_ideal(g: GroupScheme, elements: list[str]) -> list[np.ndarray]:
    names = [n[2:] for n in g.coord.names]  # strip "d_"
    keep = set(elements)
    return [g.coord.basis_vector(i) for i, n in enumerate(names) if n not in keep]


# subgroup label -> ideal description per scheme family
def _ideal(label: str, g: GroupScheme, sub: str) -> list[np.ndarray]:
    F = g.field
    fam = SCHEMES[label][0]
    if fam in ("cyclic", "symmetric"):
        table = {
            "C2": ["123", "213"],
            "A3": ["123", "231", "312"],
        }
        return _constant_ideal(g, table[sub])
    if fam == "heisenberg1":
        if sub == "H":
            return [coord_element(g, "a"), coord_element(g, "b")]
        if sub == "K":
            return [coord_element(g, "a")]
        if sub == "Z":
            return [coord_element(g, "a"), coord_element(g, "c")]
        if sub.startswith("L"):
            lam = int(sub[1:])
            return [coord_element(g, "a"), coord_element(g, f"b - {lam}*c")]
    if fam == "alpha_rtimes_mu":
        if sub == "alpha":
            return [coord_element(g, "y - 1")]
        if sub == "mu":
            return [coord_element(g, "x")]
    if fam == "product":
        A = g.coord
        x = A.generators["x"]
        if sub == "C2":   # C_2 x 1: kill x
            return [A.mul(x, A.basis_vector(i)) for i in range(A.dim)]
        if sub == "alpha2":   # 1 x alpha_2: kill d_g
            return [A.basis_vector(A.index("d_g")), A.basis_vector(A.index("d_g*x"))]
    raise KeyError(f"no subgroup {sub!r} in {label}")


def subgroup(label: str, sub: str, m: int = 1) -> SubgroupEmbedding:
    return _subgroup(label, sub, int(m))


@lru_cache(maxsize=None)
def _subgroup(label: str, sub: str, m: int) -> SubgroupEmbedding:
    g = scheme(label, m)
    if sub == "1":
        return trivial_subgroup(g)
    if sub == "G":
        return identity_embedding(g)
    return subgroup_embed(g, _ideal(label, g, sub), sub)


@dataclass(eq=False)
class Nested:
    """K <= H <= G with the three embeddings."""

    inner: SubgroupEmbedding   # K -> H
    outer: SubgroupEmbedding   # H -> G
    composite: SubgroupEmbedding   # K -> G

    @property
    def label(self) -> str:
        return f"{self.inner.sub.name} <= {self.outer.sub.name} <= {self.outer.amb.name}"


def nested(label: str, k: str, h: str, m: int = 1) -> Nested:
    return _nested(label, k, h, int(m))


@lru_cache(maxsize=None)
def _nested(label: str, k: str, h: str, m: int) -> Nested:
    outer = subgroup(label, h, m)
    kk = subgroup(label, k, m)
    F = outer.amb.field
    ideal = F.matmul(outer.coord_surj, kk.ideal)
    gens = [ideal[:, j] for j in range(ideal.shape[1]) if np.any(ideal[:, j])]
    inner = subgroup_embed(outer.sub, gens, k) if gens else identity_embedding(outer.sub)
    return Nested(inner, outer, compose_embeddings(inner, outer))


PAIRS = [
    ("C2", "1"), ("C3", "1"), ("S3@2", "C2"), ("S3@2", "A3"), ("S3@3", "C2"), ("S3@3", "A3"),
    ("alpha2", "1"), ("alpha3", "1"), ("mu2", "1"), ("mu3", "1"), ("mu3@2", "1"),
    ("heis2", "H"), ("heis2", "K"), ("heis2", "Z"), ("heis3", "H"),
    ("armu2", "alpha"), ("armu2", "mu"), ("armu3", "alpha"), ("armu3", "mu"),
    ("C2xalpha2", "C2"), ("C2xalpha2", "alpha2"),
]

# expected zero/nonzero status of lambda per pair
LAMBDA_NONZERO = {
    ("C2", "1"): False, ("C3", "1"): False,
    ("S3@2", "C2"): True, ("S3@2", "A3"): False,      # index 3 prime to 2; index 2
    ("S3@3", "C2"): False, ("S3@3", "A3"): True,      # index 3; index 2 prime to 3
    ("alpha2", "1"): False, ("alpha3", "1"): False,
    ("mu2", "1"): True, ("mu3", "1"): True, ("mu3@2", "1"): True,
    ("heis2", "H"): False, ("heis2", "K"): False, ("heis2", "Z"): False, ("heis3", "H"): False,
    ("armu2", "alpha"): True, ("armu3", "alpha"): True,   # quotient mu_p
    ("armu2", "mu"): False, ("armu3", "mu"): False,       # omega nontrivial
    ("C2xalpha2", "C2"): False, ("C2xalpha2", "alpha2"): False,
}

NESTED = [
    ("heis2", "H", "K"), ("heis2", "1", "H"), ("heis3", "H", "K"),
    ("S3@2", "1", "C2"), ("S3@2", "1", "A3"), ("S3@3", "1", "C2"), ("S3@3", "1", "A3"),
]


def proper_subgroups(label: str) -> list[str]:
    fam = SCHEMES[label][0]
    if fam == "heisenberg1":
        return ["1", "H", "K", "Z"]
    if fam == "symmetric":
        return ["1", "C2", "A3"]
    if fam == "alpha_rtimes_mu":
        return ["1", "alpha", "mu"]
    if fam == "product":
        return ["1", "C2", "alpha2"]
    return ["1"]


def k_lines(p: int, m: int = 1) -> list[SubgroupEmbedding]:
    """{1} and the p + 1 rational alpha_p lines of K = ideal (a) in heisenberg1, as subgroups of K."""
    label = f"heis{p}"
    out = [nested(label, "1", "K", m).inner]
    for sub in ["Z"] + [f"L{lam}" for lam in range(p)]:
        out.append(nested(label, sub, "K", m).inner)
    return out


def module_battery(h: GroupScheme, rng: np.random.Generator) -> list[GModule]:
    """k, regular kH and a random 2-dimensional module (when that is not kH itself)."""
    mods = [trivial_module(h), regular_module(h)]
    if h.order > 2:
        mods.append(random_module(h, rng, 2))
    return mods


# ---------------------------------------------------------- comodule algebras
def _poly_coaction(g: GroupScheme, carrier: PolyCarrier, images: dict) -> dict:
    """images: var -> list of (expression in carrier, basis name of k[G])."""
    F = g.field
    out = {}
    for v, parts in images.items():
        comps = [carrier.zero() for _ in range(g.order)]
        for text, basis_name in parts:
            terms = expr.parse_terms(text, carrier.vars, F)
            k = g.coord.index(basis_name)
            comps[k] = comps[k] + carrier.poly(terms)
        out[v] = comps
    return out


def _alpha_translation(label: str, m: int) -> ComoduleAlgebra:
    g = scheme(label, m)
    C = PolyCarrier.make(g.field, ["v"])
    co = _poly_coaction(g, C, {"v": [("v", "1"), ("1", "x")]})
    return ComoduleAlgebra(g, C, co, "k[v] translation")


def _mu_scaling(label: str, m: int) -> ComoduleAlgebra:
    g = scheme(label, m)
    C = PolyCarrier.make(g.field, ["v"])
    co = _poly_coaction(g, C, {"v": [("v", "y")]})
    return ComoduleAlgebra(g, C, co, "k[v] scaling")


def _armu_affine(label: str, m: int) -> ComoduleAlgebra:
    g = scheme(label, m)
    C = PolyCarrier.make(g.field, ["v"])
    co = _poly_coaction(g, C, {"v": [("v", "y"), ("1", "x")]})
    return ComoduleAlgebra(g, C, co, "k[v] affine")


def _permutation(label: str, m: int, nvars: int) -> ComoduleAlgebra:
    """A constant group permuting variables: sigma(x_i) = sum_g x_{g(i)} (x) d_g."""
    g = scheme(label, m)
    names = [f"x{i + 1}" for i in range(nvars)]
    C = PolyCarrier.make(g.field, names)
    images = {v: [] for v in names}
    for bname in g.coord.names:
        el = bname[2:]
        perm = _as_permutation(el, nvars)
        for i, v in enumerate(names):
            images[v].append((names[perm[i]], bname))
    return ComoduleAlgebra(g, C, _poly_coaction(g, C, images), "permutation ring")


def _as_permutation(el: str, n: int) -> list[int]:
    if el.isdigit() and len(el) == n:
        return [int(ch) - 1 for ch in el]
    # cyclic names: "1", "g", "g^k"
    k = 0 if el == "1" else (1 if el == "g" else int(el.split("^")[1]))
    return [(i + k) % n for i in range(n)]


def _c2_alpha(m: int) -> ComoduleAlgebra:
    """C_2 x alpha_2 on k[u, v]: C_2 swaps u and v, alpha_2 translates both."""
    g = scheme("C2xalpha2", m)
    C = PolyCarrier.make(g.field, ["u", "v"])
    images = {
        "u": [("u", "d_1"), ("v", "d_g"), ("1", "d_1*x"), ("1", "d_g*x")],
        "v": [("v", "d_1"), ("u", "d_g"), ("1", "d_1*x"), ("1", "d_g*x")],
    }
    return ComoduleAlgebra(g, C, _poly_coaction(g, C, images), "k[u,v] swap+translation")


@dataclass(eq=False)
class NormEntry:
    label: str
    algebra: ComoduleAlgebra
    subgroups: list          # subgroup labels of the acting scheme
    nested: list             # (K, H) label pairs
    degree: int = 2          # degree of random elements
    bound: int = 3           # degree bound for invariant bases


NORM_LABELS = [
    "alpha2 translation", "alpha3 translation", "armu2 affine", "armu3 affine", "mu3@2 scaling",
    "S3@2 permutation", "C2xalpha2 swap", "heis2 regular", "C3 permutation",
]


def norm_entries(m: int = 1, primes=(2, 3)) -> list[NormEntry]:
    out = []
    for p in primes:
        out.append(NormEntry(f"alpha{p} translation", _alpha_translation(f"alpha{p}", m), ["1"], []))
        out.append(NormEntry(f"armu{p} affine", _armu_affine(f"armu{p}", m), ["1", "alpha", "mu"], [("1", "alpha"), ("1", "mu")]))
    if 2 in primes:
        out.append(NormEntry("mu3@2 scaling", _mu_scaling("mu3@2", m), ["1"], []))
        out.append(NormEntry("S3@2 permutation", _permutation("S3@2", m, 3), ["1", "C2", "A3"], [("1", "C2"), ("1", "A3")]))
        out.append(NormEntry("C2xalpha2 swap", _c2_alpha(m), ["1", "C2", "alpha2"], [("1", "C2"), ("1", "alpha2")]))
        out.append(NormEntry("heis2 regular", regular_comodule(scheme("heis2", m)), ["1", "H", "K"], [("H", "K"), ("1", "H")]))
    if 3 in primes:
        out.append(NormEntry("C3 permutation", _permutation("C3", m, 3), ["1"], []))
    return out


def norm_entry(label: str, m: int = 1) -> NormEntry:
    return _norm_entry(label, int(m))


@lru_cache(maxsize=None)
def _norm_entry(label: str, m: int) -> NormEntry:
    for ent in norm_entries(m):
        if ent.label == label:
            return ent
    raise KeyError(f"no norm entry {label!r}")


def c2_alpha_quotient(m: int = 1):
    """The equivariant quotient k[u, v] -> k[w], u, v |-> w, of the swap entry.

    Returns the target comodule algebra and the map on polynomials.
    """
    g = scheme("C2xalpha2", m)
    C = PolyCarrier.make(g.field, ["w"])
    images = {"w": [("w", "d_1"), ("w", "d_g"), ("1", "d_1*x"), ("1", "d_g*x")]}
    R = ComoduleAlgebra(g, C, _poly_coaction(g, C, images), "k[w]")

    def collapse(s):
        terms: dict = {}
        for (a, b), c in s.terms.items():
            terms[(a + b,)] = int(g.field.add(terms.get((a + b,), 0), c))
        return C.poly({k: v for k, v in terms.items() if v})

    return R, collapse


def field_f4(m: int = 1):
    """F_4 as a 2-dimensional F_2-algebra with Z/2 acting by Frobenius, and the
    same action inflated to Z/2 x alpha_2."""
    from .norm import CommAlgebra, pullback

    F = GF(2, m)
    # F_4 = F_2[w]/(w^2 + w + 1), basis 1, w
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0] = [1, 0]
    mult[0, 1] = mult[1, 0] = [0, 1]
    mult[1, 1] = [1, 1]
    L = CommAlgebra(F, mult, [1, 0], ["1", "w"])
    frob = np.array([[1, 1], [0, 1]], dtype=np.int64)   # w -> w^2 = w + 1
    c2 = scheme("C2", m)
    arr = np.zeros((2, 2, 2), dtype=np.int64)
    arr[c2.coord.index("d_1")] = np.eye(2, dtype=np.int64)
    arr[c2.coord.index("d_g")] = frob
    S = ComoduleAlgebra(c2, L, arr, "F4 Frobenius")
    g = scheme("C2xalpha2", m)
    A = g.coord
    # k[C_2] -> k[C_2 x alpha_2], d_h -> d_h (x) 1
    phi = np.zeros((g.order, c2.order), dtype=np.int64)
    phi[A.index("d_1"), c2.coord.index("d_1")] = 1
    phi[A.index("d_g"), c2.coord.index("d_g")] = 1
    T = pullback(S, g, phi, "F4 via C2 x alpha2")
    return S, T
