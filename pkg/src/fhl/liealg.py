"""The algebras L_k (Witt) and the sl2 loop analogues, and their standard complexes.

Both families have a basis ``e_i`` (``i >= k``) with ``[e_a, e_b] = mu(b - a) e_{a+b}``,
where ``mu(z) = z`` for the Witt family and ``mu(z)`` is the residue of ``z``
in ``{-1, 0, 1}`` mod 3 for the loop family.

A chain is a sparse map from strictly increasing index tuples to exact
scalars.  Wedge products sort indices with a sign and vanish on repeats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .partitions import strict_partitions
from .qlinalg import QW, SparseMatrix, as_scalar, field_of

__all__ = [
    "AlgebraSpec",
    "Chain",
    "mu",
    "bracket_h",
    "quantum_bracket",
    "wedge_sign",
    "d",
    "delta",
    "delta_e",
    "inner",
    "sigma_pow",
    "sigma_conj_pow",
    "graded_basis",
    "boundary_matrix",
    "coboundary_matrix",
    "scalar_to_json",
    "scalar_from_json",
]

FAMILIES = ("witt", "loop")


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    k: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.k < -1:
            raise ValueError("k must be >= -1")

    def mu(self, z: int) -> int:
        return mu(self, z)


def mu(spec: AlgebraSpec, z: int) -> int:
    if spec.family == "witt":
        return z
    r = z % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def quantum_bracket(a: int, b: int, h):
    """``(h^(2(b-a)) - h^(b-a)) / (h^2 - h)`` for any exact ``h`` with ``h^2 != h``."""
    z = b - a
    den = h * h - h
    if not den:
        raise ZeroDivisionError("h^2 - h vanishes")
    return _norm((h ** (2 * z) - h**z) / den)


def bracket_h(a: int, b: int, h):
    """Structure constant of ``[e_a, e_b]_h`` for ``h`` a cube root of unity.

    ``h = 1`` gives the Witt value ``b - a``; a primitive root gives the loop value.
    """
    if h == 1:
        return b - a
    if not isinstance(h, QW) or h**3 != 1:
        raise ValueError(f"h must be a cube root of unity, got {h!r}")
    val = quantum_bracket(a, b, h)
    return as_scalar(val.a) if val.is_rational() else val


# ---------------------------------------------------------------------------
# chains


def wedge_sign(indices: Iterable[int]):
    """Sort ``indices``; return ``(sign, sorted tuple)`` with sign 0 on a repeat."""
    idx = list(indices)
    sign = 1
    # insertion sort; lists are short
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and idx[j - 1] == idx[j]:
            return 0, ()
    return sign, tuple(idx)


def _norm(v):
    return v if isinstance(v, QW) else as_scalar(v)


def _add_into(acc: dict, key, val):
    v = acc.get(key, 0) + val
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Chain:
    """Finite linear combination of monomials ``e_I``; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for key, val in (terms or {}).items():
            key = tuple(key)
            if any(a >= b for a, b in zip(key, key[1:])):
                sign, key = wedge_sign(key)
                val = val * sign
            if val:
                _add_into(clean, key, val)
        self._terms = {k: _norm(v) for k, v in clean.items()}
        field_of(self._terms.values())

    @classmethod
    def monomial(cls, *indices, coeff=1) -> "Chain":
        return cls({tuple(indices): coeff})

    @classmethod
    def _raw(cls, terms: dict) -> "Chain":
        c = cls.__new__(cls)
        c._terms = terms
        return c

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def field(self) -> str:
        return field_of(self._terms.values())

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, indices) -> object:
        return self._terms.get(tuple(indices), 0)

    def support(self) -> list:
        return sorted(self._terms)

    def degrees(self) -> set:
        return {sum(k) for k in self._terms}

    def dims(self) -> set:
        return {len(k) for k in self._terms}

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Chain") -> "Chain":
        out = dict(self._terms)
        for k, v in other._terms.items():
            _add_into(out, k, v)
        return Chain._raw(out)

    def __neg__(self) -> "Chain":
        return Chain._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, s) -> "Chain":
        if not s:
            return Chain()
        return Chain._raw({k: _norm(v * s) for k, v in self._terms.items()})

    __rmul__ = scale

    def wedge(self, other: "Chain") -> "Chain":
        out = {}
        for ka, va in self._terms.items():
            for kb, vb in other._terms.items():
                sign, key = wedge_sign(ka + kb)
                if sign:
                    _add_into(out, key, sign * va * vb)
        return Chain._raw(out)

    __xor__ = wedge

    def to_json(self) -> dict:
        field = self.field
        return {
            "field": field,
            "terms": [{"indices": list(k), "coeff": scalar_to_json(v)} for k, v in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Chain":
        return cls({tuple(t["indices"]): scalar_from_json(t["coeff"]) for t in obj["terms"]})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, v in self.items():
            mono = "^".join(f"e{i}" for i in k) or "1"
            parts.append(f"{v}*{mono}")
        return " + ".join(parts)


def scalar_to_json(v):
    if isinstance(v, QW):
        return [str(v.a), str(v.b)]
    return str(Fraction(v))


def scalar_from_json(obj):
    if isinstance(obj, list):
        return QW(Fraction(obj[0]), Fraction(obj[1]))
    return as_scalar(Fraction(obj))


# ---------------------------------------------------------------------------
# boundary and coboundary


def _insert(rest: tuple, m: int):
    """``e_m ^ e_rest`` as ``(sign, key)``; rest is sorted."""
    pos = 0
    for x in rest:
        if x == m:
            return 0, ()
        if x > m:
            break
        pos += 1
    return (-1 if pos & 1 else 1), rest[:pos] + (m,) + rest[pos:]


@lru_cache(maxsize=200_000)
def _d_monomial(family: str, key: tuple) -> tuple:
    spec = AlgebraSpec(family, -1)
    out = {}
    q = len(key)
    for r in range(q):
        for s in range(r + 1, q):
            c = mu(spec, key[s] - key[r])
            if not c:
                continue
            rest = key[:r] + key[r + 1 : s] + key[s + 1 :]
            sign, new = _insert(rest, key[r] + key[s])
            if sign:
                # (-1)^(r+s-1) with 1-based r, s is (-1)^(r+s+1) 0-based
                _add_into(out, new, sign * c * (1 if (r + s) & 1 else -1))
    return tuple(out.items())


def d(spec: AlgebraSpec, c: Chain) -> Chain:
    """The boundary of the standard complex."""
    out = {}
    for key, val in c._terms.items():
        for new, coef in _d_monomial(spec.family, key):
            _add_into(out, new, coef * val)
    return Chain._raw(out)


@lru_cache(maxsize=None)
def _delta_e(family: str, k: int, i: int) -> tuple:
    spec = AlgebraSpec(family, k)
    out = []
    a = k
    while 2 * a < i:
        c = mu(spec, i - 2 * a)
        if c:
            out.append(((a, i - a), c))
        a += 1
    return tuple(out)


def delta_e(spec: AlgebraSpec, i: int) -> Chain:
    """``delta_k(e_i) = sum over a + b = i, k <= a < b of mu(b - a) e_a ^ e_b``."""
    return Chain._raw(dict(_delta_e(spec.family, spec.k, i)))


@lru_cache(maxsize=200_000)
def _delta_monomial(family: str, k: int, key: tuple) -> tuple:
    out = {}
    for s, i in enumerate(key):
        sgn = -1 if s & 1 else 1
        head, tail = key[:s], key[s + 1 :]
        for (a, b), c in _delta_e(family, k, i):
            sign, new = wedge_sign(head + (a, b) + tail)
            if sign:
                _add_into(out, new, sgn * sign * c)
    return tuple(out.items())


def delta(spec: AlgebraSpec, c: Chain) -> Chain:
    """The coboundary ``delta_k``: adjoint of ``d`` for the monomial inner product."""
    out = {}
    for key, val in c._terms.items():
        for new, coef in _delta_monomial(spec.family, spec.k, key):
            _add_into(out, new, coef * val)
    return Chain._raw(out)


def inner(x: Chain, y: Chain):
    """Monomials are orthonormal."""
    fx, fy = x.field, y.field
    if fx != fy and x and y:
        raise TypeError("inner product of chains over different fields")
    small, big = (x, y) if len(x) <= len(y) else (y, x)
    total = 0
    for k, v in small._terms.items():
        w = big._terms.get(k)
        if w is not None:
            total = total + v * w
    return total if isinstance(total, QW) else as_scalar(total)


def sigma_pow(c: Chain, r: int) -> Chain:
    """Shift every index up by ``r``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return Chain._raw({tuple(i + r for i in k): v for k, v in c._terms.items()})


def sigma_conj_pow(spec: AlgebraSpec, c: Chain, r: int) -> Chain:
    """Adjoint of ``sigma_pow``: shift down by ``r``, dropping monomials that leave L(k)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    out = {}
    for k, v in c._terms.items():
        if not k or k[0] - r >= spec.k:
            out[tuple(i - r for i in k)] = v
    return Chain._raw(out)


# ---------------------------------------------------------------------------
# graded pieces


def graded_basis(spec: AlgebraSpec, n: int, q: int) -> list:
    """Strict index tuples ``>= k`` of sum ``n`` and length ``q`` (lexicographic)."""
    if q < 0:
        return []
    return list(strict_partitions(n, spec.k, q))


def _matrix(rows: list, cols: list, image) -> SparseMatrix:
    pos = {m: i for i, m in enumerate(rows)}
    entries = {}
    for j, m in enumerate(cols):
        for key, val in image(m):
            entries[(pos[key], j)] = val
    return SparseMatrix(len(rows), len(cols), entries)


def boundary_matrix(spec: AlgebraSpec, n: int, q: int) -> SparseMatrix:
    """``d : C_q -> C_{q-1}`` on the degree-``n`` slice in the monomial bases."""
    return _matrix(graded_basis(spec, n, q - 1), graded_basis(spec, n, q),
                   lambda m: _d_monomial(spec.family, m))


def coboundary_matrix(spec: AlgebraSpec, n: int, q: int) -> SparseMatrix:
    """``delta_k : C_q -> C_{q+1}`` on the degree-``n`` slice."""
    return _matrix(graded_basis(spec, n, q + 1), graded_basis(spec, n, q),
                   lambda m: _delta_monomial(spec.family, spec.k, m))


def iter_chains(spec: AlgebraSpec, n: int, q: int) -> Iterator[Chain]:
    for m in graded_basis(spec, n, q):
        yield Chain._raw({m: 1})
