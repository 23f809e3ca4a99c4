"""Exact arithmetic over F_q and dense linear algebra on numpy integer arrays.

Field elements are encoded as integers in ``[0, q)``: the element
``c_0 + c_1 t + ... + c_{m-1} t^{m-1}`` of ``F_p[t]/(modulus)`` is stored as
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.  For ``m == 1`` the encoding is the
residue itself.  Matrices are plain ``int64`` arrays of encoded elements; all
linear algebra goes through a :class:`Field` instance.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

# Conway polynomials, coefficients low-to-high, monic.
BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _polymod_p(a: list[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over F_p (low-to-high lists)."""
    a = [x % p for x in a]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Brute-force irreducibility test over F_p (degrees are tiny here)."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _polymod_p(list(modulus), divisor, p):
                return False
    return True


def _exact_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Integer product of residue arrays; float64 BLAS when every sum stays exact."""
    inner = a.shape[-1] if a.ndim else 1
    if a.ndim and b.ndim and inner * (p - 1) ** 2 < 2**52 and a.size and b.size:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return a @ b


class Field:
    """The finite field F_{p^m} = F_p[t]/(modulus)."""

    def __init__(self, p: int, m: int = 1, modulus: Optional[Sequence[int]] = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            if m == 1:
                modulus = (0, 1)
            elif (p, m) in BUILTIN_MODULI:
                modulus = BUILTIN_MODULI[(p, m)]
            else:
                raise ValueError(f"no built-in modulus for F_{p}^{m}; supply one")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1:
            raise ValueError("modulus degree does not match m")
        if m > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._weights = p ** np.arange(m, dtype=np.int64)
        if m > 1:
            self._build_tables()
        else:
            self._inv = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)

    # ------------------------------------------------------------------ tables
    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        digits = self.digits(np.arange(q))  # (q, m)
        self._add = self.encode((digits[:, None, :] + digits[None, :, :]) % p)
        self._neg = self.encode((-digits) % p)
        self._sub = self._add[:, self._neg]
        # t^k reduced mod the modulus, for k < 2m - 1
        red = np.zeros((2 * m - 1, m), dtype=np.int64)
        for k in range(2 * m - 1):
            red[k] = (_polymod_p([0] * k + [1], self.modulus, p) + [0] * m)[:m]
        self._red = red
        conv = np.zeros((q, q, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        self._mul = self.encode((conv % p) @ red % p)
        inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(self._mul == 1)
        inv[rows] = cols
        self._inv = inv

    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._weights) % self.p

    def encode(self, d) -> np.ndarray:
        return np.asarray(d, dtype=np.int64) @ self._weights

    # ------------------------------------------------------------ identity
    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def elem(self, coeffs: Sequence[int] | int) -> int:
        """Encode a coefficient list (low-to-high in t) or an integer residue."""
        if isinstance(coeffs, (int, np.integer)):
            return int(coeffs) % self.p
        c = [int(x) % self.p for x in coeffs] + [0] * self.m
        return int(sum(ci * self.p**i for i, ci in enumerate(c[: self.m])))

    def coeffs(self, a: int) -> list[int]:
        return [int(x) for x in self.digits(int(a))]

    def elements(self) -> range:
        return range(self.q)

    def generator(self) -> int:
        """The class of t (for m == 1 this is a generator-free placeholder 1)."""
        return self.p if self.m > 1 else 1

    # ----------------------------------------------------------- elementwise
    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p
        return self._add[a, b]

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a) - b) % self.p
        return self._sub[a, b]

    def neg(self, a):
        if self.m == 1:
            return (-np.asarray(a)) % self.p
        return self._neg[a]

    def mul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * b) % self.p
        return self._mul[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        a = int(a)
        if e < 0:
            a, e = int(self.inv(a)), -e
        if self.m == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = int(self._mul[result, base])
            base = int(self._mul[base, base])
            e >>= 1
        return result

    def power_array(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = np.ones_like(a)
        base = a.copy()
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius(self, a):
        return self.power_array(a, self.p)

    def in_subfield(self, a, degree: int) -> np.ndarray:
        """True where a lies in the subfield F_{p^degree}."""
        return self.power_array(a, self.p**degree) == np.asarray(a)

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        d = self.digits(a)
        if axis is None:
            return int(self.encode(d.reshape(-1, self.m).sum(axis=0) % self.p))
        ax = axis if axis >= 0 else a.ndim + axis
        return self.encode(d.sum(axis=ax) % self.p)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def scalar_matrix(self, c: int, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64) * int(c)

    # ------------------------------------------------------------- products
    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return _exact_matmul(a, b, self.p) % self.p
        da = self.digits(a)
        db = self.digits(b)
        m = self.m
        shape = (a @ b).shape if a.ndim and b.ndim else ()
        acc = np.zeros((2 * m - 1,) + shape, dtype=np.int64)
        for i in range(m):
            for j in range(m):
                acc[i + j] += _exact_matmul(da[..., i], db[..., j], self.p)
        acc %= self.p
        planes = np.tensordot(self._red.T, acc, axes=(1, 0)) % self.p  # (m, ...)
        return self.encode(np.moveaxis(planes, 0, -1))

    def dot(self, a, b) -> int:
        return int(self.matmul(np.asarray(a)[None, :], np.asarray(b)[:, None])[0, 0])

    def kron(self, a, b) -> np.ndarray:
        """Kronecker product, left factor major."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return np.kron(a, b) % self.p
        nd = max(a.ndim, b.ndim)
        a = a.reshape((1,) * (nd - a.ndim) + a.shape)
        b = b.reshape((1,) * (nd - b.ndim) + b.shape)
        # interleave axes so that axis pairs (i, l) flatten to i * len_b + l
        sa = sum(((n, 1) for n in a.shape), ())
        sb = sum(((1, n) for n in b.shape), ())
        out = self.mul(a.reshape(sa), b.reshape(sb))
        return out.reshape(tuple(x * y for x, y in zip(a.shape, b.shape)))

    def outer(self, a, b) -> np.ndarray:
        return self.mul(np.asarray(a)[:, None], np.asarray(b)[None, :])

    def lincomb(self, coeffs, mats) -> np.ndarray:
        """sum_i coeffs[i] * mats[i] for a stack of arrays (first axis)."""
        mats = np.asarray(mats, dtype=np.int64)
        coeffs = np.asarray(coeffs, dtype=np.int64)
        flat = mats.reshape(mats.shape[0], -1)
        return self.matmul(coeffs[None, :], flat).reshape(mats.shape[1:])

    # --------------------------------------------------------- elimination
    def rref(self, a) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form with leftmost-column, first-nonzero-row pivoting."""
        r_mat = np.array(a, dtype=np.int64, copy=True)
        if r_mat.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        rows, cols = r_mat.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(r_mat[r:, c])
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                r_mat[[r, piv]] = r_mat[[piv, r]]
            lead = int(r_mat[r, c])
            if lead != 1:
                r_mat[r, c:] = self.mul(r_mat[r, c:], int(self.inv(lead)))
            col = r_mat[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                prod = self.outer(col[hit], r_mat[r, c:])
                r_mat[hit, c:] = self.sub(r_mat[hit, c:], prod)
            pivots.append(c)
            r += 1
        return r_mat, pivots

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel(self, a) -> np.ndarray:
        """Basis of {v : a v = 0}, returned as the columns of an (n, k) array."""
        a = np.asarray(a, dtype=np.int64)
        n = a.shape[1]
        if a.shape[0] == 0:
            return np.eye(n, dtype=np.int64)
        r_mat, pivots = self.rref(a)
        free = [c for c in range(n) if c not in set(pivots)]
        basis = np.zeros((n, len(free)), dtype=np.int64)
        basis[free, np.arange(len(free))] = 1
        if pivots and free:
            basis[np.ix_(pivots, range(len(free)))] = self.neg(r_mat[: len(pivots)][:, free])
        return basis

    def solve(self, a, b):
        """Solve a x = b.  Returns ``(x, kernel)`` or ``None`` when inconsistent.

        ``b`` may be a vector or a matrix of right-hand sides (then ``x`` is a
        matrix and the system must be consistent for every column).
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        vec = b.ndim == 1
        bb = b[:, None] if vec else b
        n = a.shape[1]
        aug = np.hstack([a, bb])
        r_mat, pivots = self.rref(aug)
        if any(pc >= n for pc in pivots):
            return None
        x = np.zeros((n, bb.shape[1]), dtype=np.int64)
        x[pivots] = r_mat[: len(pivots), n:]
        kern = self.kernel(a)
        return (x[:, 0] if vec else x), kern

    def inverse(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        r_mat, pivots = self.rref(np.hstack([a, np.eye(n, dtype=np.int64)]))
        if pivots[:n] != list(range(n)) or (len(pivots) > n and pivots[n] < n):
            raise np.linalg.LinAlgError("singular matrix")
        if len([pc for pc in pivots if pc < n]) != n:
            raise np.linalg.LinAlgError("singular matrix")
        return r_mat[:, n:]

    def det(self, a) -> int:
        r_mat = np.array(a, dtype=np.int64, copy=True)
        n = r_mat.shape[0]
        result = 1
        for c in range(n):
            nz = np.flatnonzero(r_mat[c:, c])
            if nz.size == 0:
                return 0
            piv = c + int(nz[0])
            if piv != c:
                r_mat[[c, piv]] = r_mat[[piv, c]]
                result = int(self.neg(result))
            lead = int(r_mat[c, c])
            result = int(self.mul(result, lead))
            li = int(self.inv(lead))
            below = r_mat[c + 1 :, c]
            hit = np.flatnonzero(below)
            if hit.size:
                f = self.mul(below[hit], li)
                r_mat[c + 1 + hit, c:] = self.sub(r_mat[c + 1 + hit, c:], self.outer(f, r_mat[c, c:]))
        return result

    # ------------------------------------------------------------ subspaces
    def coords(self, basis, vecs) -> np.ndarray:
        """Coordinates of the columns of ``vecs`` in the independent columns of ``basis``.

        Raises ``ValueError`` when a column is outside the span.
        """
        basis = np.asarray(basis, dtype=np.int64)
        vecs = np.asarray(vecs, dtype=np.int64)
        vec = vecs.ndim == 1
        vv = vecs[:, None] if vec else vecs
        r = basis.shape[1]
        if r == 0:
            if np.any(vv):
                raise ValueError("vector not in the span of the empty basis")
            out = np.zeros((0, vv.shape[1]), dtype=np.int64)
            return out[:, 0] if vec else out
        r_mat, pivots = self.rref(np.hstack([basis, vv]))
        if pivots[:r] != list(range(r)):
            raise ValueError("basis columns are dependent")
        if len(pivots) > r:
            raise ValueError("vector not in the span of the basis")
        out = r_mat[:r, r:]
        return out[:, 0] if vec else out

    def in_span(self, basis, vecs) -> bool:
        basis = np.asarray(basis, dtype=np.int64)
        vecs = np.asarray(vecs, dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs[:, None]
        return self.rank(np.hstack([basis, vecs])) == self.rank(basis)

    def column_basis(self, a) -> np.ndarray:
        """A basis (as columns, in rref row form transposed) of the column span of a."""
        a = np.asarray(a, dtype=np.int64)
        if a.size == 0:
            return np.zeros((a.shape[0], 0), dtype=np.int64)
        r_mat, pivots = self.rref(a.T)
        return r_mat[: len(pivots)].T.copy()

    def same_span(self, a, b) -> bool:
        return np.array_equal(self.column_basis(a), self.column_basis(b))

    def intersect_kernels(self, mats: Iterable[np.ndarray], n: int) -> np.ndarray:
        """Joint kernel of a family of (k_i, n) matrices, by successive restriction."""
        basis = np.eye(n, dtype=np.int64)
        for mat in mats:
            if basis.shape[1] == 0:
                break
            restricted = self.matmul(mat, basis)
            if not np.any(restricted):
                continue
            basis = self.matmul(basis, self.kernel(restricted))
        return basis

    # ----------------------------------------------------------- subfields
    def embedding_from(self, small: "Field") -> np.ndarray:
        """Lookup array sending encoded elements of ``small`` into this field."""
        if small.p != self.p or self.m % small.m:
            raise ValueError(f"{small} does not embed in {self}")
        if small.m == 1:
            return np.arange(small.q, dtype=np.int64)
        # smallest root of the small modulus
        for theta in range(self.q):
            acc = 0
            for c in reversed(small.modulus):
                acc = int(self.add(self.mul(acc, theta), c))
            if acc == 0:
                break
        else:  # pragma: no cover - irreducible polys of dividing degree always split
            raise ValueError("no root of subfield modulus found")
        powers = [self.power(theta, i) for i in range(small.m)]
        table = np.zeros(small.q, dtype=np.int64)
        for x in range(small.q):
            acc = 0
            for c, pw in zip(small.coeffs(x), powers):
                acc = int(self.add(acc, self.mul(c, pw)))
            table[x] = acc
        return table

    def restriction_to(self, small: "Field", a) -> np.ndarray:
        """Inverse of :meth:`embedding_from` on arrays lying in the subfield."""
        table = self.embedding_from(small)
        back = -np.ones(self.q, dtype=np.int64)
        back[table] = np.arange(small.q)
        out = back[np.asarray(a, dtype=np.int64)]
        if np.any(out < 0):
            raise ValueError("element outside the subfield")
        return out


@lru_cache(maxsize=None)
def GF(p: int, m: int = 1, modulus: Optional[tuple] = None) -> Field:
    """Cached field constructor."""
    return Field(p, m, modulus)


# --------------------------------------------------------------------- Poly
class Poly:
    """Sparse multivariate polynomial over F_q, optionally truncated.

    ``trunc[i]`` is the nilpotency exponent of variable i (``x_i^e = 0``) or
    ``None`` for a free variable.  Terms are stored as ``{exponent tuple: coeff}``
    with no zero coefficients.
    """

    __slots__ = ("field", "vars", "trunc", "terms")

    def __init__(self, field: Field, vars: Sequence[str], terms=None, trunc=None):
        self.field = field
        self.vars = tuple(vars)
        self.trunc = tuple(trunc) if trunc is not None else (None,) * len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            c = int(c) % field.q if field.m == 1 else int(c)
            if c and self._alive(e):
                clean[e] = c
        self.terms = clean

    def _alive(self, e) -> bool:
        return all(t is None or x < t for x, t in zip(e, self.trunc))

    def _like(self, terms) -> "Poly":
        return Poly(self.field, self.vars, terms, self.trunc)

    def _trusted(self, terms: dict) -> "Poly":
        """Build from already reduced, alive, nonzero terms."""
        out = object.__new__(Poly)
        out.field, out.vars, out.trunc, out.terms = self.field, self.vars, self.trunc, terms
        return out

    @classmethod
    def const(cls, field, vars, c, trunc=None) -> "Poly":
        return cls(field, vars, {(0,) * len(vars): c}, trunc)

    @classmethod
    def var(cls, field, vars, name, trunc=None) -> "Poly":
        e = [0] * len(vars)
        e[list(vars).index(name)] = 1
        return cls(field, vars, {tuple(e): 1}, trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.const(self.field, self.vars, other, self.trunc)
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        f = self.field
        if f.m == 1:
            p = f.p
            for e, c in other.terms.items():
                v = (out.get(e, 0) + c) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
            return self._trusted(out)
        for e, c in other.terms.items():
            out[e] = int(f.add(out.get(e, 0), c))
        return self._like(out)

    def __neg__(self) -> "Poly":
        return self._like({e: int(self.field.neg(c)) for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        f = self.field
        out: dict = {}
        if f.m == 1:
            p = f.p
            free = all(t is None for t in self.trunc)
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    if free or self._alive(e):
                        out[e] = out.get(e, 0) + c1 * c2
            return self._trusted({e: c % p for e, c in out.items() if c % p})
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if not self._alive(e):
                    continue
                out[e] = int(f.add(out.get(e, 0), f.mul(c1, c2)))
        return self._like(out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(self.field, self.vars, 1, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Poly.const(self.field, self.vars, int(other), self.trunc)

    def scale(self, c: int) -> "Poly":
        if self.field.m == 1:
            c = int(c) % self.field.p
            return self._trusted({e: v * c % self.field.p for e, v in self.terms.items()} if c else {})
        return self._like({e: int(self.field.mul(v, c)) for e, v in self.terms.items()})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading(self):
        """Graded-lex leading exponent."""
        return max(self.terms, key=lambda e: (sum(e), e))

    def divexact(self, d: "Poly") -> "Poly":
        """Quotient of an exact division; ValueError if d does not divide self."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        de = d.leading()
        dinv = f.inv(d.terms[de])
        q: dict = {}
        r = self
        while not r.is_zero():
            re = r.leading()
            shift = tuple(a - b for a, b in zip(re, de))
            if min(shift) < 0:
                raise ValueError("inexact polynomial division")
            c = int(f.mul(r.terms[re], dinv))
            q[shift] = c
            r = r - self._like({shift: c}) * d
        return self._like(q)

    def map_coeffs(self, fn, field: Field) -> "Poly":
        return Poly(field, self.vars, {e: fn(c) for e, c in self.terms.items()}, self.trunc)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            cs = str(c) if self.field.m == 1 else "(" + "+".join(
                f"{ci}*t^{i}" if i else str(ci) for i, ci in enumerate(self.field.coeffs(c)) if ci
            ) + ")"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)
