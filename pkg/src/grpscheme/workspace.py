"""TOML workspace files: field, schemes, embeddings, modules, comodule algebras, suite settings.

Loading is split in two phases.  ``parse_workspace`` reads the file and checks
that every reference resolves (``WorkspaceError`` otherwise, which the CLI maps
to exit code 2).  ``Workspace.validate`` builds every object and runs its axiom
checks; failures there are reported, not raised.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import expr
from .adjunction import coinduce, induce
from .hopf import (
    GroupScheme,
    HopfAlgebra,
    SubgroupEmbedding,
    build_builtin,
    identity_embedding,
    subgroup_embed,
    trivial_subgroup,
)
from .norm import CommAlgebra, ComoduleAlgebra, PolyCarrier, validate_comodule
from .report import NotHopfIdeal, Report
from .repmod import GModule, dual_module, regular_module, restrict, tensor_modules, trivial_module
from .scalars import Field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class WorkspaceError(ValueError):
    """Unreadable file, bad syntax, or a dangling reference."""


MODULE_KINDS = ("trivial", "regular", "coind", "ind", "restrict", "tensor", "dual", "action")


@dataclass
class SuiteSettings:
    samples: int = 100
    ext_degree: int = 3
    base_change: bool = True


@dataclass
class Workspace:
    path: str
    seed: int
    field: Field
    schemes: dict
    embeddings: dict
    modules: dict
    algebras: dict
    suites: SuiteSettings = field(default_factory=SuiteSettings)
    _built: dict = field(default_factory=dict, repr=False)

    # ---------------------------------------------------------- builders
    def scheme(self, name: str) -> GroupScheme:
        key = ("scheme", name)
        if name not in self.schemes:
            raise WorkspaceError(f"unknown scheme {name!r}")
        if key not in self._built:
            self._built[key] = _build_scheme(name, self.schemes[name], self.field)
        return self._built[key]

    def embedding(self, name: str) -> SubgroupEmbedding:
        key = ("embedding", name)
        if name not in self.embeddings:
            raise WorkspaceError(f"unknown embedding {name!r}")
        if key not in self._built:
            self._built[key] = self._build_embedding(name, self.embeddings[name])
        return self._built[key]

    def module(self, name: str) -> GModule:
        key = ("module", name)
        if name not in self.modules:
            raise WorkspaceError(f"unknown module {name!r}")
        if key not in self._built:
            self._built[key] = self._build_module(name, self.modules[name])
        return self._built[key]

    def algebra(self, name: str) -> ComoduleAlgebra:
        key = ("algebra", name)
        if name not in self.algebras:
            raise WorkspaceError(f"unknown algebra {name!r}")
        if key not in self._built:
            self._built[key] = self._build_algebra(name, self.algebras[name])
        return self._built[key]

    def _build_embedding(self, name: str, spec: dict) -> SubgroupEmbedding:
        if "within" in spec:
            outer = self.embedding(spec["within"])
            kk = self._build_embedding(name, {k: v for k, v in spec.items() if k != "within"})
            F = outer.amb.field
            ideal = F.matmul(outer.coord_surj, kk.ideal)
            gens = [ideal[:, j] for j in range(ideal.shape[1]) if np.any(ideal[:, j])]
            return subgroup_embed(outer.sub, gens, name) if gens else identity_embedding(outer.sub)
        g = self.scheme(spec["scheme"])
        kind = spec.get("kind", "ideal")
        if kind == "trivial":
            return trivial_subgroup(g)
        if kind == "identity":
            return identity_embedding(g)
        if "elements" in spec:
            keep = {str(x) for x in spec["elements"]}
            gens = [g.coord.basis_vector(i) for i, n in enumerate(g.group_alg.names) if n not in keep]
        else:
            gens = [coord_element(g, text) for text in spec.get("ideal", [])]
        return subgroup_embed(g, gens, name)

    def _build_module(self, name: str, spec: dict) -> GModule:
        kind = spec["kind"]
        if kind == "trivial":
            m = trivial_module(self.scheme(spec["scheme"]), int(spec.get("dim", 1)))
        elif kind == "regular":
            m = regular_module(self.scheme(spec["scheme"]))
        elif kind in ("coind", "ind"):
            e = self.embedding(spec["embedding"])
            base = self._over(spec["of"], e.sub)
            m = (coinduce if kind == "coind" else induce)(e, base).module
        elif kind == "restrict":
            e = self.embedding(spec["embedding"])
            m = restrict(self.module(spec["of"]), e)
        elif kind == "tensor":
            a, b = (self.module(x) for x in spec["of"])
            m = tensor_modules(a, b)
        elif kind == "dual":
            m = dual_module(self.module(spec["of"]))
        else:
            g = self.scheme(spec["scheme"])
            m = GModule(g, _elem_array(g.field, spec["action"]))
        m.name = name
        return m

    def _over(self, mod_name: str, h: GroupScheme) -> GModule:
        """A module named for an embedding's subgroup; trivial/regular are rebuilt over ``h``."""
        spec = self.modules[mod_name]
        if spec["kind"] == "trivial" and spec.get("scheme") == "@sub":
            return trivial_module(h, int(spec.get("dim", 1)))
        if spec["kind"] == "regular" and spec.get("scheme") == "@sub":
            return regular_module(h)
        return self.module(mod_name)

    def _build_algebra(self, name: str, spec: dict) -> ComoduleAlgebra:
        g = self.scheme(spec["scheme"])
        F = g.field
        if "vars" in spec:
            C = PolyCarrier.make(F, spec["vars"], spec.get("trunc"))
            co = {}
            for v in C.vars:
                comps = [C.zero() for _ in range(g.order)]
                for text, bname in spec["coaction"][v]:
                    k = g.coord.index(bname)
                    comps[k] = comps[k] + C.poly(expr.parse_terms(text, C.vars, F))
                co[v] = comps
            return ComoduleAlgebra(g, C, co, name)
        basis = list(spec["basis"])
        n = len(basis)
        mult = _triples(F, basis, spec["mult"], 3)
        unit = _vector(F, basis, spec["unit"])
        C = CommAlgebra(F, mult, unit, basis)
        arr = np.zeros((g.order, n, n), dtype=np.int64)
        for bname, mat in spec["coaction"].items():
            arr[g.coord.index(bname)] = _elem_array(F, mat)
        return ComoduleAlgebra(g, C, arr, name)

    # ------------------------------------------------------- validation
    def validate(self) -> Report:
        rep = Report(f"workspace {self.path}")
        for kind, names, build, check in (
            ("scheme", self.schemes, self.scheme, lambda x: x.validate()),
            ("embedding", self.embeddings, self.embedding, lambda x: x.validate()),
            ("module", standalone_modules(self), self.module, lambda x: x.validate()),
            ("algebra", self.algebras, self.algebra, validate_comodule),
        ):
            for nm in names:
                try:
                    obj = build(nm)
                except NotHopfIdeal as exc:
                    rep.add(f"{kind} {nm}: builds", False, True, False, witness=f"{exc} {exc.witness}")
                    continue
                except (ValueError, KeyError, IndexError) as exc:
                    rep.add(f"{kind} {nm}: builds", False, True, False, witness=str(exc))
                    continue
                rep.extend(check(obj), f"{kind} {nm}: ")
        return rep

    def parse_element(self, S: ComoduleAlgebra, text: str):
        F = S.field
        if isinstance(S.carrier, PolyCarrier):
            return S.carrier.poly(expr.parse_terms(text, S.carrier.vars, F))
        C = S.carrier
        names = [n for n in C.names if expr._IDENT.match(n)]
        gens = [C.basis_elem(C.names.index(n)) for n in names]
        return expr.evaluate(text, names, F, C.one(), gens, lambda a, b: a * b, lambda a, b: a + b,
                             lambda a, c: a.scale(int(c)))


# ---------------------------------------------------------------- helpers
def coord_element(g: GroupScheme, text: str) -> np.ndarray:
    """Vector in k[G] of an expression in the coordinate generators."""
    A = g.coord
    names = list(A.generators)
    gens = [A.generators[n] for n in names]
    F = g.field
    return expr.evaluate(text, names, F, A.unit, gens, A.mul, F.add, lambda v, c: F.mul(v, c))


def _scalar(F: Field, x) -> int:
    if isinstance(x, list):
        return int(F.elem([int(c) for c in x]))
    return int(x) % F.p if F.m == 1 else int(F.elem(int(x) % F.p))


def _elem_array(F: Field, data) -> np.ndarray:
    if isinstance(data, list) and data and isinstance(data[0], list):
        return np.stack([_elem_array(F, row) for row in data])
    if isinstance(data, list):
        # a flat list: scalars, unless the field is an extension and entries are coefficient lists
        return np.array([_scalar(F, x) for x in data], dtype=np.int64)
    return np.array(_scalar(F, data), dtype=np.int64)


def _vector(F: Field, basis: list, entries: dict) -> np.ndarray:
    v = np.zeros(len(basis), dtype=np.int64)
    for k, c in entries.items():
        v[basis.index(str(k))] = F.add(v[basis.index(str(k))], _scalar(F, c))
    return v


def _triples(F: Field, basis: list, rows: list, arity: int) -> np.ndarray:
    n = len(basis)
    out = np.zeros((n,) * arity, dtype=np.int64)
    for row in rows:
        *idx, c = row
        pos = tuple(basis.index(str(x)) for x in idx)
        out[pos] = F.add(out[pos], _scalar(F, c))
    return out


def _build_scheme(name: str, spec: dict, base: Field) -> GroupScheme:
    if "builtin" in spec:
        p = int(spec.get("p", base.p))
        m = int(spec.get("m", base.m if p == base.p else 1))
        F = base if (p, m) == (base.p, base.m) else Field(p, m)
        g = build_builtin(spec["builtin"], p, spec.get("params"), F)
        g.name = name
        return g
    F = base
    if "p" in spec or "m" in spec:
        F = Field(int(spec.get("p", base.p)), int(spec.get("m", 1)), spec.get("modulus"))
    basis = [str(b) for b in spec["basis"]]
    mult = _triples(F, basis, spec["mult"], 3)
    comult = _triples(F, basis, spec["comult"], 3)
    anti = _triples(F, basis, spec["antipode"], 2).T   # rows give S(e_i) = sum c e_j
    unit = _vector(F, basis, spec["unit"])
    counit = _vector(F, basis, spec["counit"])
    gens = {str(k): np.eye(len(basis), dtype=np.int64)[basis.index(str(v))]
            for k, v in spec.get("generators", {}).items()}
    if not gens:
        gens = {b: np.eye(len(basis), dtype=np.int64)[i] for i, b in enumerate(basis) if expr._IDENT.match(b)}
    coord = HopfAlgebra(F, basis, mult, unit, comult, counit, anti, gens)
    return GroupScheme.from_coord(coord, name, spec.get("dual_basis"))


# ---------------------------------------------------------------- parsing
def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise WorkspaceError(msg)


def parse_workspace(path) -> Workspace:
    p = Path(path)
    try:
        raw = tomllib.loads(p.read_text())
    except OSError as exc:
        raise WorkspaceError(f"cannot read {path}: {exc.strerror or exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise WorkspaceError(f"{path}: {exc}") from None
    fld = raw.get("field", {})
    _require(isinstance(fld, dict) and "p" in fld, "[field] needs p")
    try:
        F = Field(int(fld["p"]), int(fld.get("m", 1)), fld.get("modulus"))
    except ValueError as exc:
        raise WorkspaceError(f"[field]: {exc}") from None
    schemes = raw.get("schemes", {})
    embeddings = raw.get("embeddings", {})
    modules = raw.get("modules", {})
    algebras = raw.get("algebras", {})
    for nm, s in schemes.items():
        _require("builtin" in s or all(k in s for k in ("basis", "mult", "unit", "comult", "counit", "antipode")),
                 f"scheme {nm}: give builtin or basis/mult/unit/comult/counit/antipode")
    for nm, e in embeddings.items():
        _require(e.get("scheme") in schemes, f"embedding {nm}: unknown scheme {e.get('scheme')!r}")
        if "within" in e:
            _require(e["within"] in embeddings, f"embedding {nm}: unknown embedding {e['within']!r}")
    for nm, m in modules.items():
        kind = m.get("kind")
        _require(kind in MODULE_KINDS, f"module {nm}: kind must be one of {', '.join(MODULE_KINDS)}")
        if kind in ("trivial", "regular", "action"):
            _require(m.get("scheme") in schemes or m.get("scheme") == "@sub",
                     f"module {nm}: unknown scheme {m.get('scheme')!r}")
        if kind in ("coind", "ind", "restrict"):
            _require(m.get("embedding") in embeddings, f"module {nm}: unknown embedding {m.get('embedding')!r}")
        refs = m.get("of", [])
        for r in refs if isinstance(refs, list) else [refs]:
            _require(r in modules, f"module {nm}: unknown module {r!r}")
    for nm, a in algebras.items():
        _require(a.get("scheme") in schemes, f"algebra {nm}: unknown scheme {a.get('scheme')!r}")
        _require("coaction" in a and ("vars" in a or "basis" in a), f"algebra {nm}: needs coaction and vars or basis")
    st = raw.get("suites", {})
    settings = SuiteSettings(int(st.get("samples", 100)), int(st.get("ext_degree", 3)), bool(st.get("base_change", True)))
    return Workspace(str(path), int(raw.get("seed", 0)), F, schemes, embeddings, modules, algebras, settings)


def standalone_modules(ws: Workspace) -> list[str]:
    """Modules not tied to an embedding's subgroup (``scheme = "@sub"`` marks a template)."""
    return [nm for nm, m in ws.modules.items() if m.get("scheme") != "@sub"]

