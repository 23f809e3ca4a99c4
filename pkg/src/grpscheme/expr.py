"""Parsing of element expressions such as ``a*c - b`` or ``v^2 + t*v`` into algebra elements.

``t`` denotes the generator of F_q over F_p when q > p.  Coefficients must be
integers or fractions with denominator prime to p.
"""

from __future__ import annotations

import re
from typing import Callable, Sequence

import sympy

from .scalars import Field

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _scalar(field: Field, c) -> int:
    c = sympy.Rational(c)
    num, den = int(c.p) % field.p, int(c.q) % field.p
    if den == 0:
        raise ValueError(f"coefficient {c} is not defined in characteristic {field.p}")
    return int(field.mul(num, field.inv(den)))


def parse_terms(text: str, names: Sequence[str], field: Field) -> dict:
    """Expression -> {exponent tuple over names: field element}."""
    for nm in names:
        if not _IDENT.match(nm):
            raise ValueError(f"variable name {nm!r} is not an identifier")
    use_t = field.m > 1 and "t" not in names
    syms = {nm: sympy.Symbol(nm) for nm in names}
    if use_t:
        syms["t"] = sympy.Symbol("t")
    try:
        expr = sympy.parse_expr(text.replace("^", "**"), local_dict=syms, evaluate=True)
    except Exception as exc:  # sympy raises a zoo of types here
        raise ValueError(f"cannot parse {text!r}: {exc}") from None
    extra = expr.free_symbols - set(syms.values())
    if extra:
        raise ValueError(f"unknown symbols {sorted(map(str, extra))} in {text!r}")
    gens = [syms[nm] for nm in names] + ([syms["t"]] if use_t else [])
    if not gens:
        return {(): _scalar(field, expr)}
    poly = sympy.Poly(sympy.expand(expr), *gens)
    out: dict = {}
    tgen = field.elem([0, 1]) if use_t else None
    for monom, coeff in poly.terms():
        c = _scalar(field, coeff)
        if use_t:
            c = int(field.mul(c, field.power(tgen, monom[-1])))
            monom = monom[:-1]
        key = tuple(int(k) for k in monom)
        out[key] = int(field.add(out.get(key, 0), c))
    return {k: v for k, v in out.items() if v}


def evaluate(text: str, names: Sequence[str], field: Field, one, gens: Sequence, mul: Callable, add: Callable, scale: Callable):
    """Evaluate an expression in a ring given generator elements and ring operations."""
    terms = parse_terms(text, names, field)
    total = scale(one, 0)
    for e, c in terms.items():
        term = one
        for g, k in zip(gens, e):
            for _ in range(k):
                term = mul(term, g)
        total = add(total, scale(term, c))
    return total
