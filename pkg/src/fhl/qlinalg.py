"""Exact linear algebra over Q and over Q(w), w^2 + w + 1 = 0.

Rationals are plain ``int`` / ``fractions.Fraction`` values.  Elements of the
quadratic extension are :class:`QW` instances.  A matrix never mixes the two
fields; doing so raises ``TypeError``.

Matrices are stored sparsely as ``{(row, col): value}`` with no explicit
zeros.  Rank computations on integer matrices use fraction-free elimination
with row content removal, which keeps entries small for the index-difference
structure constants that appear in the chain complexes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "QW",
    "OMEGA",
    "SparseMatrix",
    "as_scalar",
    "field_of",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "inverse",
    "generalized_eigenspace_dim",
    "span_rank",
    "same_span",
    "rank_mod_p",
    "MOD_PRIME",
]


class QW:
    """The element ``a + b*w`` of Q(w), where ``w**2 == -1 - w``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        if isinstance(a, QW) or isinstance(b, QW):
            raise TypeError("QW components must be rational")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QW is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, QW):
            return other
        if isinstance(other, (int, Fraction)):
            return QW(other, 0)
        raise TypeError(f"mixed-field arithmetic: QW with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return QW(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QW(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        return QW(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        a, b, c, d = self.a, self.b, o.a, o.b
        return QW(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def conjugate(self):
        """Image under w -> w^2 = -1 - w."""
        return QW(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        c = self * o.conjugate()
        return QW(c.a / n, c.b / n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return (QW(1) / self) ** (-e)
        out, base = QW(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QW):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QW({self.a}, {self.b})"


OMEGA = QW(0, 1)


def as_scalar(x):
    """Normalize a rational to ``int`` when integral, else ``Fraction``."""
    if isinstance(x, QW):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


def field_of(values: Iterable) -> str:
    """Return ``"Q"`` or ``"Qw"``; raise on a mix of ``QW`` and ``Fraction``."""
    has_w = has_frac = False
    for v in values:
        if isinstance(v, QW):
            has_w = True
        elif isinstance(v, Fraction):
            has_frac = True
        elif not isinstance(v, int):
            raise TypeError(f"not an exact scalar: {v!r}")
    if has_w and has_frac:
        raise TypeError("matrix mixes Q and Q(w) entries")
    return "Qw" if has_w else "Q"


class SparseMatrix:
    """Immutable sparse matrix with exact entries."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative dimension")
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if v:
                clean[(r, c)] = as_scalar(v)
        field_of(clean.values())
        self.nrows = nrows
        self.ncols = ncols
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict]) -> "SparseMatrix":
        """Build from a list of ``{row: value}`` column dictionaries."""
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    entries[(r, c)] = v
        return cls(nrows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def field(self) -> str:
        return field_of(self.entries.values())

    def __getitem__(self, rc):
        return self.entries.get(rc, 0)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={len(self.entries)})"

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def rows(self) -> list:
        out = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def columns(self) -> list:
        out = [dict() for _ in range(self.ncols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def column(self, c: int) -> list:
        col = [0] * self.nrows
        for (r, cc), v in self.entries.items():
            if cc == c:
                col[r] = v
        return col

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()})

    T = property(transpose)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for rc, v in other.entries.items():
            out[rc] = out.get(rc, 0) + v
        return SparseMatrix(self.nrows, self.ncols, out)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def scale(self, s) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {rc: v * s for rc, v in self.entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right_rows = other.rows()
        out = {}
        for (r, c), v in self.entries.items():
            for c2, w in right_rows[c].items():
                key = (r, c2)
                out[key] = out.get(key, 0) + v * w
        return SparseMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        out = [0] * self.nrows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] = out[r] + v * vec[c]
        return [as_scalar(x) for x in out]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        out = {}
        for (r, c), v in self.entries.items():
            if r in rmap and c in cmap:
                out[(rmap[r], cmap[c])] = v
        return SparseMatrix(len(rows), len(cols), out)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        out = dict(self.entries)
        for (r, c), v in other.entries.items():
            out[(r, c + self.ncols)] = v
        return SparseMatrix(self.nrows, self.ncols + other.ncols, out)

    def vstack(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.transpose().hstack(other.transpose()).transpose()

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def rank(self) -> int:
        return rank(self)


# ---------------------------------------------------------------------------
# elimination

_DENSE_CUTOFF = 64


def _divide(x, y):
    if isinstance(x, QW) or isinstance(y, QW):
        return QW._coerce(x) / y
    return Fraction(x) / y


def _rref_rows(rows: list, ncols: int):
    """Gauss-Jordan on a list of sparse row dicts, column order.

    Within a column the pivot row is the one with fewest nonzeros.
    """
    rows = [dict(r) for r in rows if r]
    done = []
    pivots = []
    for c in range(ncols):
        cand = [i for i, r in enumerate(rows) if c in r]
        if not cand:
            continue
        i = min(cand, key=lambda j: len(rows[j]))
        prow = rows.pop(i)
        inv = _divide(1, prow[c])
        prow = {cc: as_scalar(v * inv) for cc, v in prow.items()}
        for r in rows:
            f = r.get(c)
            if f:
                for cc, v in prow.items():
                    nv = r.get(cc, 0) - f * v
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        rows = [r for r in rows if r]
        for r in done:
            f = r.get(c)
            if f:
                for cc, v in prow.items():
                    nv = r.get(cc, 0) - f * v
                    if nv:
                        r[cc] = as_scalar(nv)
                    else:
                        r.pop(cc, None)
        done.append(prow)
        pivots.append(c)
    return done, pivots


def _rref_dense(m: SparseMatrix):
    a = [[Fraction(v) if not isinstance(v, QW) else v for v in row] for row in m.to_dense()]
    nrows, ncols = m.shape
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        piv = next((r for r in range(pr, nrows) if a[r][c]), None)
        if piv is None:
            continue
        a[pr], a[piv] = a[piv], a[pr]
        inv = _divide(1, a[pr][c])
        a[pr] = [v * inv for v in a[pr]]
        for r in range(nrows):
            if r != pr and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[pr])]
        pivots.append(c)
        pr += 1
    return a, pivots


def rref(m: SparseMatrix):
    """Reduced row echelon form and the list of pivot columns."""
    nrows, ncols = m.shape
    if nrows <= _DENSE_CUTOFF and ncols <= _DENSE_CUTOFF:
        a, pivots = _rref_dense(m)
        return SparseMatrix.from_dense(a) if nrows else SparseMatrix(0, ncols), pivots
    done, pivots = _rref_rows(m.rows(), ncols)
    entries = {}
    for i, r in enumerate(done):
        for c, v in r.items():
            entries[(i, c)] = v
    return SparseMatrix(nrows, ncols, entries), pivots


def _content(row: dict) -> int:
    return reduce(gcd, (abs(v) for v in row.values()), 0)


def _integer_rows(m: SparseMatrix):
    """Scale each row of a rational matrix to a primitive integer row."""
    out = []
    for row in m.rows():
        if not row:
            continue
        den = reduce(lambda a, b: a * b // gcd(a, b),
                     (Fraction(v).denominator for v in row.values()), 1)
        irow = {c: int(Fraction(v) * den) for c, v in row.items()}
        g = _content(irow)
        out.append({c: v // g for c, v in irow.items()})
    return out


def _rank_integer(rows: list) -> int:
    """Fraction-free rank: Markowitz-style sparsest-row pivoting on ints."""
    rows = [r for r in rows if r]
    rk = 0
    while rows:
        i = min(range(len(rows)), key=lambda j: len(rows[j]))
        prow = rows.pop(i)
        c = min(prow, key=lambda cc: (abs(prow[cc]), cc))
        p = prow[c]
        nxt = []
        for r in rows:
            f = r.get(c)
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                new = {}
                for cc in r.keys() | prow.keys():
                    v = a * r.get(cc, 0) - b * prow.get(cc, 0)
                    if v:
                        new[cc] = v
                if new:
                    g2 = _content(new)
                    if g2 > 1:
                        new = {cc: v // g2 for cc, v in new.items()}
                    nxt.append(new)
            else:
                nxt.append(r)
        rows = nxt
        rk += 1
    return rk


def rank(m: SparseMatrix) -> int:
    if not m.entries:
        return 0
    if m.field == "Q":
        return _rank_integer(_integer_rows(m))
    return len(_rref_rows(m.rows(), m.ncols)[1])


def kernel_basis(m: SparseMatrix) -> list:
    """Basis of the right null space, one dense vector per free column."""
    nrows, ncols = m.shape
    r, pivots = rref(m)
    rows = r.rows()
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            val = rows[i].get(f)
            if val:
                v[pc] = as_scalar(-val)
        basis.append(v)
    return basis


def solve(m: SparseMatrix, rhs: Sequence):
    """One solution of ``m x = rhs`` (free variables set to zero), or ``None``."""
    if len(rhs) != m.nrows:
        raise ValueError(f"rhs has length {len(rhs)}, expected {m.nrows}")
    aug = m.hstack(SparseMatrix.from_columns(m.nrows, [{i: v for i, v in enumerate(rhs) if v}]))
    r, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [0] * m.ncols
    rows = r.rows()
    for i, pc in enumerate(pivots):
        x[pc] = as_scalar(rows[i].get(m.ncols, 0))
    return x


def inverse(m: SparseMatrix) -> SparseMatrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    r, pivots = rref(m.hstack(SparseMatrix.identity(n)))
    if [p for p in pivots if p < n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    out = {}
    for (i, c), v in r.entries.items():
        if c >= n:
            out[(i, c - n)] = v
    return SparseMatrix(n, n, out)


def generalized_eigenspace_dim(m: SparseMatrix, lam, s: int) -> int:
    """``dim ker (m - lam*Id)**s``."""
    if not m.is_square():
        raise ValueError("generalized eigenspace of a non-square matrix")
    if s < 1:
        raise ValueError("s must be >= 1")
    n = m.nrows
    shifted = m - SparseMatrix.identity(n).scale(lam) if lam else m
    p = shifted
    for _ in range(s - 1):
        p = p @ shifted
    return n - rank(p)


def span_rank(vectors: Sequence[Sequence], length: int | None = None) -> int:
    """Rank of a list of dense vectors."""
    if not vectors:
        return 0
    n = len(vectors[0]) if length is None else length
    cols = [{i: v for i, v in enumerate(vec) if v} for vec in vectors]
    return rank(SparseMatrix.from_columns(n, cols))


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], length: int) -> bool:
    ra, rb = span_rank(a, length), span_rank(b, length)
    return ra == rb == span_rank(list(a) + list(b), length)


# ---------------------------------------------------------------------------
# rank modulo a prime
#
# Residues mod p are held in float64 arrays.  With p < 2^16 and matrix
# products of inner dimension at most 2^20, every intermediate is an integer
# below 2^53, so the arithmetic is exact.  Reduction of a matrix modulo p
# only lowers its rank, which makes the result a rigorous lower bound for the
# rank over Q (or over Q(w), since p = 1 mod 3 splits there).

MOD_PRIME = 65521
_BLOCK = 1 << 20


def _mod(x, p):
    r = x - np.floor(x * (1.0 / p)) * p
    r[r < 0] += p
    r[r >= p] -= p
    return r


def _mulmod(a, b, p):
    k = a.shape[1]
    if k <= _BLOCK:
        return _mod(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]))
    for s in range(0, k, _BLOCK):
        out = _mod(out + _mod(a[:, s:s + _BLOCK] @ b[s:s + _BLOCK], p), p)
    return out


def _trsm(lo, b, p):
    """Solve ``lo x = b`` for unit lower triangular ``lo``."""
    k = lo.shape[0]
    if k <= 32:
        x = b.copy()
        for i in range(1, k):
            x[i] = _mod(x[i] - lo[i, :i] @ x[:i], p)
        return x
    h = k // 2
    x1 = _trsm(lo[:h, :h], b[:h], p)
    x2 = _trsm(lo[h:, h:], _mod(b[h:] - _mulmod(lo[h:, :h], x1, p), p), p)
    return np.vstack([x1, x2])


def _factor(a, r0, j0, j1, p) -> list:
    """In-place recursive LU of columns ``j0:j1`` below row ``r0``; returns pivot columns."""
    nrows = a.shape[0]
    if j1 - j0 <= 16:
        piv, r = [], r0
        for c in range(j0, j1):
            if r == nrows:
                break
            nz = np.flatnonzero(a[r:, c])
            if not nz.size:
                continue
            s = r + nz[0]
            if s != r:
                a[[r, s]] = a[[s, r]]
            inv = pow(int(a[r, c]), -1, p)
            col = _mod(a[r + 1:, c] * inv, p)
            a[r + 1:, c] = col
            if c + 1 < j1:
                a[r + 1:, c + 1:j1] = _mod(a[r + 1:, c + 1:j1] - np.outer(col, a[r, c + 1:j1]), p)
            piv.append(c)
            r += 1
        return piv
    jm = (j0 + j1) // 2
    piv1 = _factor(a, r0, j0, jm, p)
    k1 = len(piv1)
    if k1:
        rows = slice(r0, r0 + k1)
        u12 = _trsm(np.tril(a[rows][:, piv1], -1), a[rows, jm:j1], p)
        a[rows, jm:j1] = u12
        if r0 + k1 < nrows:
            a[r0 + k1:, jm:j1] = _mod(a[r0 + k1:, jm:j1] - _mulmod(a[r0 + k1:][:, piv1], u12, p), p)
    piv2 = _factor(a, r0 + k1, jm, j1, p) if r0 + k1 < nrows else []
    return piv1 + piv2


def _residue(v, p: int, w: int) -> int:
    if isinstance(v, QW):
        return (_residue(v.a, p, w) + _residue(v.b, p, w) * w) % p
    v = Fraction(v)
    if v.denominator % p == 0:
        raise ZeroDivisionError(f"denominator divisible by {p}")
    return v.numerator * pow(v.denominator, -1, p) % p


def rank_mod_p(m: SparseMatrix, p: int = MOD_PRIME) -> int:
    """Rank of the reduction of ``m`` modulo ``p``; never exceeds the exact rank.

    ``p`` must be below 2^16, and ``p = 1 mod 3`` for matrices over Q(w).
    """
    if not m.entries:
        return 0
    if p >= 1 << 16:
        raise ValueError("p must be below 2^16 for exact float arithmetic")
    w = 0
    if m.field == "Qw":
        if p % 3 != 1:
            raise ValueError("p must be 1 mod 3 to reduce Q(w)")
        w = next(x for x in range(2, p) if (x * x + x + 1) % p == 0)
    a = np.zeros(m.shape)
    for (r, c), v in m.entries.items():
        a[r, c] = _residue(v, p, w)
    if a.shape[0] < a.shape[1]:
        a = np.ascontiguousarray(a.T)
    return len(_factor(a, 0, 0, a.shape[1], p))
