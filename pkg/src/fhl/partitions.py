"""Partition combinatorics: classification, normal forms, the order on
distinguished partitions, Frobenius bijections and series identities.

Partitions are written with parts in non-decreasing order, e.g. ``(2, 6, 9)``.
A distinguished partition ``(I; J)`` carries a marked sub-multiset ``J`` of
``I`` such that the unmarked parts are pairwise distinct.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

__all__ = [
    "Partition",
    "DistinguishedPartition",
    "NormalForm",
    "FrobeniusForm",
    "TruncatedSeries",
    "strict_partitions",
    "partitions",
    "is_strict",
    "is_nonsingular",
    "is_main",
    "is_dense",
    "normal_form",
    "index",
    "leading_parts",
    "enumerate_partitions",
    "distinguished_slice",
    "all_distinguished",
    "DP",
    "s_move",
    "r_move",
    "order_leq",
    "compare",
    "order_slice",
    "dominates",
    "frobenius",
    "from_frobenius",
    "phi",
    "psi",
    "lambda_map",
    "lambda_inverse",
    "main_partition_count",
    "main_partitions_of_dim",
    "binomial_main_count",
    "phi_main",
    "series_strict_count",
    "series_marked_count",
    "series_sylvester",
    "verify_series_identity",
    "strict_count_check",
]

Partition = tuple  # non-decreasing tuple of ints


def _check_partition(parts) -> tuple:
    parts = tuple(int(p) for p in parts)
    if any(a > b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"parts must be non-decreasing: {parts}")
    return parts


def is_strict(parts: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(parts, parts[1:]))


# ---------------------------------------------------------------------------
# distinguished partitions


@dataclass(frozen=True, order=True)
class DistinguishedPartition:
    """A partition ``base`` with a marked sub-multiset ``marked``."""

    base: tuple
    marked: tuple = ()

    def __post_init__(self):
        base = _check_partition(self.base)
        marked = tuple(sorted(int(m) for m in self.marked))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "marked", marked)
        rest = list(base)
        for m in marked:
            try:
                rest.remove(m)
            except ValueError:
                raise ValueError(f"marked part {m} is not available in {base}") from None
        if not is_strict(rest):
            raise ValueError(f"unmarked parts of {self} are not distinct")

    @classmethod
    def from_marks(cls, parts: Sequence[int], flags: Sequence[bool]) -> "DistinguishedPartition":
        return cls(tuple(parts), tuple(p for p, f in zip(parts, flags) if f))

    @property
    def unmarked(self) -> tuple:
        rest = list(self.base)
        for m in self.marked:
            rest.remove(m)
        return tuple(rest)

    @property
    def degree(self) -> int:
        return sum(self.base)

    @property
    def reduced_dim(self) -> int:
        return len(self.base)

    @property
    def height(self) -> int:
        return len(self.marked)

    @property
    def dim(self) -> int:
        return len(self.base) + len(self.marked)

    def mark_flags(self) -> tuple:
        """One flag per part; among equal parts the marked copies come last."""
        flags = []
        counts = {}
        for m in self.marked:
            counts[m] = counts.get(m, 0) + 1
        for i, p in enumerate(self.base):
            remaining = sum(1 for q in self.base[i:] if q == p)
            flags.append(remaining <= counts.get(p, 0))
        return tuple(flags)

    def is_valid(self, k: int) -> bool:
        return not self.base or self.base[0] >= k

    def is_nonsingular(self, k: int) -> bool:
        if not is_nonsingular(self.base, k):
            return False
        return set(self.marked) <= set(leading_parts(self.base, k)) and is_strict(self.marked)

    def to_json(self) -> dict:
        flags = self.mark_flags()
        return {"parts": list(self.base), "marked": [i for i, f in enumerate(flags) if f]}

    @classmethod
    def from_json(cls, obj: dict) -> "DistinguishedPartition":
        parts = obj["parts"]
        return cls(tuple(parts), tuple(parts[i] for i in obj.get("marked", [])))

    def __str__(self):
        out = []
        for p, f in zip(self.base, self.mark_flags()):
            out.append(f"_{p}_" if f else str(p))
        return "(" + ",".join(out) + ")"


DP = DistinguishedPartition


# ---------------------------------------------------------------------------
# classification


def is_nonsingular(parts: Sequence[int], k: int) -> bool:
    """Nonsingular k-partition: parts >= k and consecutive gaps >= 3."""
    if parts and parts[0] < k:
        return False
    return all(b - a >= 3 for a, b in zip(parts, parts[1:]))


def _main_bound_ok(parts: Sequence[int], k: int) -> bool:
    if not parts:
        return True
    q = len(parts)
    bound = 2 * k + 3 * (q - 1)
    if parts[0] == k:
        return parts[-1] < bound
    return parts[-1] <= bound


def is_main(parts: Sequence[int], k: int) -> bool:
    return is_nonsingular(parts, k) and _main_bound_ok(parts, k)


def is_dense(parts: Sequence[int], k: int) -> bool:
    return bool(parts) and parts[0] > 2 * k and all(b - a == 3 for a, b in zip(parts, parts[1:]))


@dataclass(frozen=True)
class NormalForm:
    main_part: tuple
    dense_blocks: tuple = field(default_factory=tuple)

    @property
    def index(self) -> int:
        return len(self.dense_blocks)

    @property
    def leading_parts(self) -> tuple:
        return tuple(b[0] for b in self.dense_blocks)


@lru_cache(maxsize=None)
def _normal_form(parts: tuple, k: int) -> NormalForm:
    p = 0
    while p < len(parts) and _main_bound_ok(parts[: p + 1], k):
        p += 1
    blocks = []
    for x in parts[p:]:
        if blocks and x - blocks[-1][-1] == 3:
            blocks[-1].append(x)
        else:
            blocks.append([x])
    return NormalForm(parts[:p], tuple(tuple(b) for b in blocks))


def normal_form(parts: Sequence[int], k: int) -> NormalForm:
    """Split a nonsingular k-partition into its main part and dense blocks."""
    parts = _check_partition(parts)
    if not is_nonsingular(parts, k):
        raise ValueError(f"{parts} is not a nonsingular {k}-partition")
    return _normal_form(parts, k)


def index(parts: Sequence[int], k: int) -> int:
    return normal_form(parts, k).index


def leading_parts(parts: Sequence[int], k: int) -> tuple:
    return normal_form(parts, k).leading_parts


# ---------------------------------------------------------------------------
# enumeration


def strict_partitions(n: int, k: int = 1, q: int | None = None) -> Iterator[tuple]:
    """Strictly increasing tuples with entries >= k summing to n (lex order).

    ``k`` may be negative (signed degrees for the small algebras).
    """

    def rec(remaining, lo, slots):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        # smallest possible sum of `slots` strictly increasing parts >= lo
        for first in range(lo, remaining + 1):
            if first * slots + slots * (slots - 1) // 2 > remaining:
                break
            for rest in rec(remaining - first, first + 1, slots - 1):
                yield (first,) + rest

    if q is not None:
        yield from rec(n, k, q)
        return
    out = []
    qq = 0
    # the minimal sum k*q + q(q-1)/2 first decreases when k < 0
    while k * qq + qq * (qq - 1) // 2 <= n or qq <= -k:
        out.extend(rec(n, k, qq))
        qq += 1
    yield from sorted(out)


def partitions(n: int, k: int = 1, q: int | None = None) -> Iterator[tuple]:
    """Non-decreasing tuples with entries >= k >= 0 summing to n."""
    if k < 0:
        raise ValueError("partitions with negative parts are unbounded")

    def rec(remaining, lo, slots):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(lo, remaining + 1):
            if first * slots > remaining:
                break
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    if q is not None:
        yield from rec(n, k, q)
        return
    out = []
    qmax = n if k == 0 else n // max(k, 1)
    if k == 0 and n == 0:
        qmax = 0
    for qq in range(0, qmax + 1):
        out.extend(rec(n, k, qq))
    yield from sorted(out)


def _nonsingular(n: int, k: int, q: int | None = None) -> Iterator[tuple]:
    def rec(remaining, lo, slots):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(lo, remaining + 1):
            if first * slots + 3 * slots * (slots - 1) // 2 > remaining:
                break
            for rest in rec(remaining - first, first + 3, slots - 1):
                yield (first,) + rest

    if q is not None:
        yield from rec(n, k, q)
        return
    out = []
    qq = 0
    while k * qq + 3 * qq * (qq - 1) // 2 <= n:
        out.extend(rec(n, k, qq))
        qq += 1
    yield from sorted(out)


def enumerate_partitions(kind: str, k: int, degree: int, dim: int | None = None) -> list:
    """Exhaustive lists in lexicographic order.

    ``kind`` is one of ``strict``, ``nonsingular``, ``main`` or
    ``distinguished-nonsingular``.  For the distinguished kind ``dim`` filters
    on the total dimension ``dim(I) + dim(J)``.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if kind == "strict":
        return list(strict_partitions(degree, k, dim))
    if kind in ("nonsingular", "main", "distinguished-nonsingular") and k < 1:
        raise ValueError(f"{kind} partitions need k >= 1")
    if kind == "nonsingular":
        return list(_nonsingular(degree, k, dim))
    if kind == "main":
        return [p for p in _nonsingular(degree, k, dim) if is_main(p, k)]
    if kind == "distinguished-nonsingular":
        out = []
        for p in _nonsingular(degree, k):
            lead = leading_parts(p, k)
            for h in range(len(lead) + 1):
                if dim is not None and len(p) + h != dim:
                    continue
                for marks in combinations(lead, h):
                    out.append(DP(p, marks))
        return sorted(out, key=lambda d: (d.base, d.marked))
    raise ValueError(f"unknown partition kind {kind!r}")


def all_distinguished(n: int, k: int, dim: int | None = None) -> list:
    """Every distinguished k-partition of degree n (the set D(k, n))."""
    out = []
    for p in partitions(n, k):
        values = sorted(set(p))
        mults = [p.count(v) for v in values]
        # each value of multiplicity m keeps m-1 or m marked copies
        choices = [[(v,) * (m - 1), (v,) * m] for v, m in zip(values, mults)]

        def rec(i, acc):
            if i == len(choices):
                yield acc
                return
            for c in choices[i]:
                yield from rec(i + 1, acc + c)

        for marks in rec(0, ()):
            if dim is None or len(p) + len(marks) == dim:
                out.append(DP(p, marks))
    return out


# ---------------------------------------------------------------------------
# the order on D(k, n)


def dominates(big: Sequence[int], small: Sequence[int]) -> bool:
    """Partial sums of ``small`` never exceed those of ``big`` (same length)."""
    if len(big) != len(small) or sum(big) != sum(small):
        return False
    sb = ss = 0
    for a, b in zip(big, small):
        sb += a
        ss += b
        if ss > sb:
            return False
    return True


def s_move(a: DistinguishedPartition, idx_a: int, idx_b: int) -> DistinguishedPartition:
    """Merge the unmarked parts at positions ``idx_a`` and ``idx_b`` into one marked part."""
    flags = a.mark_flags()
    if idx_a == idx_b:
        raise ValueError("positions must differ")
    for i in (idx_a, idx_b):
        if not 0 <= i < len(a.base):
            raise IndexError(i)
        if flags[i]:
            raise ValueError(f"part at position {i} of {a} is marked")
    s = a.base[idx_a] + a.base[idx_b]
    rest = [p for i, p in enumerate(a.base) if i not in (idx_a, idx_b)]
    insort(rest, s)
    return DP(tuple(rest), a.marked + (s,))


def r_move(parts: Sequence[int], a: int, b: int) -> tuple:
    """Move one unit from part ``b`` to part ``a`` (``a < b``)."""
    out = list(parts)
    out[a] += 1
    out[b] -= 1
    return tuple(out)


def _s_moves(x: DistinguishedPartition) -> set:
    free = [i for i, f in enumerate(x.mark_flags()) if not f]
    return {s_move(x, i, j) for i, j in combinations(free, 2)}


class OrderSlice:
    """The order restricted to D(k, n) at a fixed total dimension.

    Down-sets are bitsets over the slice, computed in a linear extension
    (reduced dimension, base, marks) so every generator points to an earlier
    node.  The generators are lexicographic comparison of marks on a common
    base, dominance of bases at equal reduced dimension, and single merges.
    """

    def __init__(self, k: int, n: int, dim: int):
        self.k, self.n, self.dim = k, n, dim
        nodes = sorted(all_distinguished(n, k, dim), key=self.key)
        self.nodes = nodes
        self.pos = {x: i for i, x in enumerate(nodes)}
        self._down = [None] * len(nodes)
        self._build()

    @staticmethod
    def key(x: DistinguishedPartition):
        return (len(x.base), x.base, x.marked)

    def _build(self):
        by_base = {}
        for x in self.nodes:
            by_base.setdefault(x.base, []).append(x)
        levels = {}
        for base in by_base:
            levels.setdefault(len(base), []).append(base)
        dominated = {}
        for bases in levels.values():
            for b in bases:
                dominated[b] = [c for c in bases if c != b and dominates(b, c)]
        for i, x in enumerate(self.nodes):
            bits = 1 << i
            for y in _s_moves(x):
                bits |= self._down[self.pos[y]]
            same = by_base[x.base]
            j = same.index(x)
            if j > 0:
                bits |= self._down[self.pos[same[j - 1]]]
            for c in dominated[x.base]:
                bits |= self._down[self.pos[by_base[c][-1]]]
            self._down[i] = bits

    def leq(self, a: DistinguishedPartition, b: DistinguishedPartition) -> bool:
        return bool(self._down[self.pos[b]] >> self.pos[a] & 1)

    def down_set(self, b: DistinguishedPartition) -> list:
        bits = self._down[self.pos[b]]
        return [x for i, x in enumerate(self.nodes) if bits >> i & 1]

    def __len__(self):
        return len(self.nodes)


@lru_cache(maxsize=256)
def order_slice(k: int, n: int, dim: int) -> OrderSlice:
    return OrderSlice(k, n, dim)


def _as_dp(x) -> DistinguishedPartition:
    return x if isinstance(x, DistinguishedPartition) else DP(tuple(x), ())


def order_leq(a, b, k: int):
    """``a ⊴ b``; ``None`` when degree or total dimension differ."""
    a, b = _as_dp(a), _as_dp(b)
    if not (a.is_valid(k) and b.is_valid(k)):
        raise ValueError("inputs are not distinguished k-partitions")
    if a.degree != b.degree or a.dim != b.dim:
        return None
    if a == b:
        return True
    if a.reduced_dim == b.reduced_dim and a.height == 0 and b.height == 0:
        return dominates(b.base, a.base)
    return order_slice(k, a.degree, a.dim).leq(a, b)


def compare(a, b, k: int):
    """-1, 0, 1 for a ⊲ b, a = b, a ⊳ b; ``None`` when incomparable."""
    if order_leq(a, b, k):
        return 0 if _as_dp(a) == _as_dp(b) else -1
    if order_leq(b, a, k):
        return 1
    return None


def distinguished_slice(k: int, n: int, dim: int) -> list:
    return order_slice(k, n, dim).nodes


# ---------------------------------------------------------------------------
# Frobenius notation and the bijections


@dataclass(frozen=True)
class FrobeniusForm:
    arms: tuple
    legs: tuple

    def __str__(self):
        return "(" + ",".join(map(str, self.arms)) + "|" + ",".join(map(str, self.legs)) + ")"


def frobenius(parts: Sequence[int]) -> FrobeniusForm:
    """Frobenius coordinates; the diagonal dots are counted on the arm side."""
    parts = _check_partition(parts)
    if not parts or parts[0] < 1:
        raise ValueError("need a nonempty partition with positive parts")
    rows = sorted(parts, reverse=True)
    cols = [sum(1 for r in rows if r > j) for j in range(rows[0])]
    d = sum(1 for i, r in enumerate(rows) if r > i)
    arms = tuple(sorted(rows[i] - i for i in range(d)))
    legs = tuple(sorted(cols[i] - i - 1 for i in range(d)))
    return FrobeniusForm(arms, legs)


def from_frobenius(f: FrobeniusForm) -> tuple:
    arms = sorted(f.arms, reverse=True)
    legs = sorted(f.legs, reverse=True)
    d = len(arms)
    if len(legs) != d or d == 0:
        raise ValueError("arms and legs must have equal nonzero length")
    if any(a < 1 for a in arms) or any(b < 0 for b in legs):
        raise ValueError("arms must be positive and legs non-negative")
    rows = [arms[i] + i for i in range(d)]
    # rows below the Durfee square from the legs: column j has legs[j] + j + 1 cells
    cols = [legs[j] + j + 1 for j in range(d)]
    depth = cols[0]
    for i in range(d, depth):
        rows.append(sum(1 for j in range(d) if cols[j] > i))
    out = tuple(sorted(r for r in rows if r > 0))
    if frobenius(out) != FrobeniusForm(tuple(sorted(f.arms)), tuple(sorted(f.legs))):
        raise ValueError(f"{f} is not a valid Frobenius form")
    return out


def _strict_frobenius_ok(f: FrobeniusForm) -> bool:
    x, y = f.arms, f.legs
    if any(b - a < 2 for a, b in zip(x, x[1:])):
        return False
    if any(b - a not in (1, 2) for a, b in zip(y, y[1:])):
        return False
    if y[0] not in (0, 1):
        return False
    if x[0] == 1 and y[0] != 0:
        return False
    return True


def phi(parts: Sequence[int]) -> DistinguishedPartition:
    """Strict 1-partition -> nonsingular distinguished 1-partition."""
    parts = _check_partition(parts)
    if not is_strict(parts) or (parts and parts[0] < 1):
        raise ValueError(f"{parts} is not a strict 1-partition")
    if not parts:
        return DP((), ())
    f = frobenius(parts)
    x, y = f.arms, f.legs
    base = tuple(a + b for a, b in zip(x, y))
    prev = -1
    marks = []
    for a, b in zip(x, y):
        if b - prev == 2:
            marks.append(a + b)
        prev = b
    return DP(base, tuple(marks))


def psi(d: DistinguishedPartition) -> tuple:
    """Inverse of :func:`phi`."""
    if not d.base:
        return ()
    if not d.is_nonsingular(1):
        raise ValueError(f"{d} is not a nonsingular distinguished 1-partition")
    marked = set(d.marked)
    ys = []
    prev = -1
    for p in d.base:
        y = prev + (2 if p in marked else 1)
        ys.append(y)
        prev = y
    xs = [p - y for p, y in zip(d.base, ys)]
    f = FrobeniusForm(tuple(xs), tuple(ys))
    if not _strict_frobenius_ok(f):
        raise ValueError(f"Frobenius conditions fail for {f}")
    return from_frobenius(f)


def lambda_map(d: DistinguishedPartition, k: int) -> DistinguishedPartition:
    """Bijection M_{k,q}(h, n) -> M_{k-1,q}(h, n - q - h)."""
    if k <= 1:
        raise ValueError("lambda map needs k > 1")
    if not d.is_nonsingular(k):
        raise ValueError(f"{d} is not a nonsingular distinguished {k}-partition")
    marked = set(d.marked)
    new = tuple(p - 2 if p in marked else p - 1 for p in d.base)
    images = {p - 2 for p in marked}
    nf = normal_form(new, k - 1)
    marks = tuple(b[0] for b in nf.dense_blocks if images & set(b))
    if len(marks) != len(marked):
        raise ValueError(f"lambda image of {d} loses marks")
    return DP(new, marks)


def lambda_inverse(d: DistinguishedPartition, k: int) -> DistinguishedPartition:
    """Inverse of :func:`lambda_map` (``d`` is a distinguished (k-1)-partition)."""
    if k <= 1:
        raise ValueError("lambda map needs k > 1")
    if not d.is_nonsingular(k - 1):
        raise ValueError(f"{d} is not a nonsingular distinguished {k - 1}-partition")
    nf = normal_form(d.base, k - 1)
    lifted_marks = {b[-1] for b in nf.dense_blocks if b[0] in d.marked}
    new = tuple(p + 2 if p in lifted_marks else p + 1 for p in d.base)
    out = DP(new, tuple(p + 2 for p in sorted(lifted_marks)))
    if not out.is_nonsingular(k):
        raise ValueError(f"{d} has no preimage")
    return out


# ---------------------------------------------------------------------------
# main partition counts


def main_partition_count(k: int, q: int) -> int:
    """r(k, q) by enumeration (parts of a q-dimensional main partition are bounded)."""
    if q == 0:
        return 1
    top = 2 * k + 3 * (q - 1)
    return sum(1 for _ in _main_partitions_of_dim(k, q, top))


def _main_partitions_of_dim(k: int, q: int, top: int):
    def rec(lo, slots, acc):
        if slots == 0:
            if is_main(acc, k):
                yield acc
            return
        for x in range(lo, top + 1):
            yield from rec(x + 3, slots - 1, acc + (x,))

    yield from rec(k, q, ())


def main_partitions_of_dim(k: int, q: int) -> list:
    return list(_main_partitions_of_dim(k, q, 2 * k + 3 * (q - 1)))


def binomial_main_count(k: int, q: int) -> int:
    return comb(q + k - 1, k - 1) + comb(q + k - 2, k - 1)


def phi_main(k: int, q: int) -> dict:
    """The bijection M(k, q-1) ∪ M(k-1, q) -> M(k, q) as a dict keyed by
    ``("append", I)`` / ``("shift", I)``.  The empty partition appends ``(k,)``."""
    if k < 2 or q < 1:
        raise ValueError("the bijection is defined for k >= 2, q >= 1")
    out = {}
    for p in main_partitions_of_dim(k, q - 1):
        out[("append", p)] = p + (p[-1] + 3,) if p else (k,)
    for p in main_partitions_of_dim(k - 1, q):
        out[("shift", p)] = tuple(x + 1 for x in p[:-1]) + (p[-1] + 2,)
    return out


# ---------------------------------------------------------------------------
# truncated series in x with integer polynomial coefficients in t


class TruncatedSeries:
    """Power series in ``x`` truncated above degree ``N``; coefficients are
    integer polynomials in ``t`` stored as lists (index = t-exponent)."""

    def __init__(self, N: int, coeffs: dict | None = None):
        self.N = N
        self.coeffs = {}
        for e, poly in (coeffs or {}).items():
            if e <= N:
                self._add_at(e, poly)

    @staticmethod
    def _trim(poly):
        poly = list(poly)
        while poly and poly[-1] == 0:
            poly.pop()
        return poly

    def _add_at(self, e, poly):
        cur = self.coeffs.get(e, [])
        m = max(len(cur), len(poly))
        new = self._trim([(cur[i] if i < len(cur) else 0) + (poly[i] if i < len(poly) else 0)
                          for i in range(m)])
        if new:
            self.coeffs[e] = new
        else:
            self.coeffs.pop(e, None)

    @classmethod
    def one(cls, N: int) -> "TruncatedSeries":
        return cls(N, {0: [1]})

    @classmethod
    def monomial(cls, N: int, xe: int, te: int = 0, c: int = 1) -> "TruncatedSeries":
        return cls(N, {xe: [0] * te + [c]})

    def __add__(self, other):
        out = TruncatedSeries(self.N, self.coeffs)
        for e, poly in other.coeffs.items():
            if e <= out.N:
                out._add_at(e, poly)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int):
        return TruncatedSeries(self.N, {e: [c * v for v in p] for e, p in self.coeffs.items()})

    def __mul__(self, other):
        N = min(self.N, other.N)
        acc = {}
        for e1, p1 in self.coeffs.items():
            for e2, p2 in other.coeffs.items():
                e = e1 + e2
                if e > N:
                    continue
                prod = acc.setdefault(e, {})
                for i, a in enumerate(p1):
                    if a:
                        for j, b in enumerate(p2):
                            if b:
                                prod[i + j] = prod.get(i + j, 0) + a * b
        out = {}
        for e, d in acc.items():
            m = max(d) + 1 if d else 0
            out[e] = [d.get(i, 0) for i in range(m)]
        return TruncatedSeries(N, out)

    @classmethod
    def inv_one_minus_x_power(cls, N: int, j: int) -> "TruncatedSeries":
        """1 / (1 - x^j) truncated."""
        return cls(N, {e: [1] for e in range(0, N + 1, j)})

    def at_t(self, t: int) -> dict:
        return {e: sum(c * t ** i for i, c in enumerate(p)) for e, p in self.coeffs.items()}

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        N = min(self.N, other.N)
        a = {e: p for e, p in self.coeffs.items() if e <= N}
        b = {e: p for e, p in other.coeffs.items() if e <= N}
        return a == b

    def __repr__(self):
        return f"TruncatedSeries(N={self.N}, terms={len(self.coeffs)})"


def _binomial_poly(alpha: int) -> list:
    return [comb(alpha, i) for i in range(alpha + 1)]


def series_strict_count(k: int, N: int):
    """Both sides of the strict/nonsingular generating-function identity."""
    left = TruncatedSeries.one(N)
    right = TruncatedSeries.one(N)
    for n in range(1, N + 1):
        for p in strict_partitions(n, k):
            left = left + TruncatedSeries.monomial(N, n, len(p))
        for p in _nonsingular(n, k):
            if not p:
                continue
            a = index(p, k)
            poly = [0] * len(p) + _binomial_poly(a)
            right = right + TruncatedSeries(N, {n: poly})
    return left, right


def _product_side(k: int, N: int) -> TruncatedSeries:
    out = TruncatedSeries.one(N)
    for q in range(k, N + 1):
        out = out * (TruncatedSeries.one(N) + TruncatedSeries.monomial(N, q, 1))
    return out


def series_marked_count(k: int, N: int):
    """prod_{q>=k}(1 + t x^q) against 1 + sum_q A_{k,q}(x, t) by enumeration."""
    left = _product_side(k, N)
    right = TruncatedSeries.one(N)
    for n in range(1, N + 1):
        for d in enumerate_partitions("distinguished-nonsingular", k, n):
            if d.base:
                right = right + TruncatedSeries.monomial(N, n, d.height + d.reduced_dim)
    return left, right


def series_sylvester(k: int, N: int):
    """The product side against the closed-form sum over q."""
    left = _product_side(k, N)
    right = TruncatedSeries.one(N)
    q = 1
    while k * q + 3 * q * (q - 1) // 2 <= N:
        v = k * q + 3 * q * (q - 1) // 2
        term = TruncatedSeries.monomial(N, v, q)
        for j in range(k, q + k - 1):
            term = term * (TruncatedSeries.one(N) + TruncatedSeries.monomial(N, j, 1))
        term = term * (TruncatedSeries.one(N) + TruncatedSeries.monomial(N, 2 * q + k - 1, 1))
        for j in range(1, q + 1):
            term = term * TruncatedSeries.inv_one_minus_x_power(N, j)
        right = right + term
        q += 1
    return left, right


def verify_series_identity(which: str, k: int, N: int) -> bool:
    if k < 1 or N < 1:
        raise ValueError("need k >= 1 and N >= 1")
    fn = {"strict": series_strict_count, "marked": series_marked_count, "sylvester": series_sylvester}.get(which)
    if fn is None:
        raise ValueError(f"unknown identity {which!r}")
    left, right = fn(k, N)
    return left == right


def strict_count_check(k: int, n: int) -> bool:
    """The number of strict k-partitions of ``n`` equals ``sum 2^alpha(I)`` over nonsingular ``I``."""
    strict = sum(1 for _ in strict_partitions(n, k))
    return strict == sum(2 ** index(p, k) for p in _nonsingular(n, k))
