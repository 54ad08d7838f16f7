"""Stable cycles, the antisymmetric polynomial model, and Schur-built homology cycles.

A chain ``sum c_I e_I`` of dimension ``q`` with indices ``>= 0`` is identified
with the antisymmetric polynomial ``sum c_I Delta_I(t_1, ..., t_q)`` where
``Delta_I = det(t_r ** i_m)``.  The coefficient of ``Delta_I`` in an expanded
antisymmetric polynomial is the coefficient of ``t_1^i_1 ... t_q^i_q``.

Expanded polynomials are plain dicts ``{exponent tuple: coefficient}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .filtering import basis_change, chain_to_vector, vector_to_chain
from .laplacian import energy, gamma
from .liealg import AlgebraSpec, Chain, d, graded_basis, scalar_to_json, sigma_pow
from .partitions import dominates, enumerate_partitions, is_main, is_nonsingular, partitions
from .qlinalg import OMEGA, QW, SparseMatrix, as_scalar, kernel_basis, rank, same_span, solve

__all__ = [
    "AntisymPoly",
    "SymPoly",
    "StableBasisReport",
    "straighten",
    "chain_to_poly",
    "poly_to_chain",
    "delta_poly",
    "vandermonde",
    "divide_by_vandermonde_power",
    "d_poly",
    "is_stable",
    "stable_by_shifts",
    "stab_pos_decomposition",
    "stable_subspaces",
    "schur",
    "schur_product",
    "explicit_cycle",
    "cycle_record",
    "independent_mod_boundaries",
    "odd_delta_product_check",
    "stab_laplacian_check",
    "mult_rule_check",
    "schur_passage_check",
]


# ---------------------------------------------------------------------------
# expanded polynomials


def _add_term(acc: dict, key, val):
    v = acc.get(key, 0) + val
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _mul(a: dict, b: dict) -> dict:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            _add_term(out, tuple(x + y for x, y in zip(ka, kb)), va * vb)
    return out


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _perms(q: int) -> tuple:
    return tuple((p, _perm_sign(p)) for p in permutations(range(q)))


@lru_cache(maxsize=4096)
def _delta_expanded(key: tuple) -> tuple:
    out = {}
    for p, s in _perms(len(key)):
        _add_term(out, tuple(key[p[r]] for r in range(len(key))), s)
    return tuple(out.items())


def delta_poly(key) -> dict:
    """Expanded ``Delta_key`` in ``len(key)`` variables."""
    return dict(_delta_expanded(tuple(key)))


def vandermonde(q: int, power: int = 1) -> dict:
    """``prod_{i<j} (t_j^power - t_i^power)``."""
    return delta_poly(tuple(power * i for i in range(q)))


def _divide_binomial(f: dict, j: int, i: int, m: int):
    """Exact quotient of ``f`` by ``t_j^m - t_i^m``, or ``None``."""
    work = dict(f)
    quot = {}
    while work:
        key = max(work, key=lambda e: (e[j], e))
        if key[j] < m:
            return None
        c = work.pop(key)
        qkey = key[:j] + (key[j] - m,) + key[j + 1 :]
        _add_term(quot, qkey, c)
        # subtract c * t^qkey * (t_j^m - t_i^m): the t_j^m part cancelled above
        low = list(qkey)
        low[i] += m
        _add_term(work, tuple(low), c)
    return quot


def divide_by_vandermonde_power(f: dict, q: int, family: str, times: int = 1):
    """Exact quotient of ``f`` by ``V_q^times`` (witt) or ``V_q(t^3)^times`` (loop); ``None`` if inexact."""
    m = 1 if family == "witt" else 3
    for _ in range(times):
        for j in range(q):
            for i in range(j):
                if f is None:
                    return None
                f = _divide_binomial(f, j, i, m)
    return f


def _to_delta_basis(f: dict) -> dict:
    out = {}
    for e, c in f.items():
        if all(a < b for a, b in zip(e, e[1:])):
            out[e] = c
    return out


def _delta_basis_to_expanded(coeffs: dict) -> dict:
    out = {}
    for key, c in coeffs.items():
        for e, s in _delta_expanded(key):
            _add_term(out, e, s * c)
    return out


def straighten(exponents, q: int):
    """``(sign, key)`` with ``Delta_exponents = sign * Delta_key``; sign 0 on a repeat."""
    e = tuple(exponents)
    if len(e) != q:
        raise ValueError(f"expected {q} exponents, got {len(e)}")
    if any(x < 0 for x in e):
        raise ValueError("exponents must be non-negative")
    if len(set(e)) < q:
        return 0, ()
    order = sorted(range(q), key=lambda r: e[r])
    return _perm_sign(order), tuple(e[r] for r in order)


# ---------------------------------------------------------------------------
# the two polynomial types


@dataclass(frozen=True)
class AntisymPoly:
    """``sum coeffs[I] * Delta_I`` in ``q`` variables."""

    q: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        for key in self.coeffs:
            if len(key) != self.q or any(a >= b for a, b in zip(key, key[1:])) or (key and key[0] < 0):
                raise ValueError(f"bad Delta key {key} for {self.q} variables")

    @classmethod
    def from_expanded(cls, q: int, f: dict) -> "AntisymPoly":
        return cls(q, _to_delta_basis(f))

    def expanded(self) -> dict:
        return _delta_basis_to_expanded(self.coeffs)

    def __bool__(self):
        return any(self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, AntisymPoly):
            return NotImplemented
        clean = lambda c: {k: v for k, v in c.items() if v}  # noqa: E731
        return self.q == other.q and clean(self.coeffs) == clean(other.coeffs)

    def __add__(self, other: "AntisymPoly") -> "AntisymPoly":
        if self.q != other.q:
            raise ValueError("variable counts differ")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _add_term(out, k, v)
        return AntisymPoly(self.q, out)

    def scale(self, s) -> "AntisymPoly":
        return AntisymPoly(self.q, {k: v * s for k, v in self.coeffs.items() if v * s})

    def wedge(self, other: "AntisymPoly") -> "AntisymPoly":
        """``Delta_I ^ Delta_J = Delta_(I, J)`` extended bilinearly."""
        q = self.q + other.q
        out = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                s, key = straighten(ka + kb, q)
                if s:
                    _add_term(out, key, s * va * vb)
        return AntisymPoly(q, out)

    def to_json(self) -> dict:
        return {"delta_basis": [{"key": list(k), "coeff": scalar_to_json(v)}
                                for k, v in sorted(self.coeffs.items()) if v]}


@dataclass(frozen=True)
class SymPoly:
    """``sum coeffs[lam] * S_lam`` in ``q`` variables; ``lam`` nondecreasing of length ``q``."""

    q: int
    coeffs: dict = field(default_factory=dict)

    def antisym(self) -> AntisymPoly:
        """``V_q`` times this polynomial."""
        rho = tuple(range(self.q))
        return AntisymPoly(self.q, {tuple(a + b for a, b in zip(lam, rho)): c
                                    for lam, c in self.coeffs.items() if c})

    @classmethod
    def from_antisym(cls, f: AntisymPoly) -> "SymPoly":
        """``f / V_q`` in the Schur basis."""
        return cls(f.q, {tuple(a - r for r, a in enumerate(key)): c for key, c in f.coeffs.items() if c})

    def expanded(self) -> dict:
        return divide_by_vandermonde_power(self.antisym().expanded(), self.q, "witt")


def _pad(lam, q: int) -> tuple:
    lam = tuple(sorted(lam))
    if len(lam) > q:
        raise ValueError(f"partition {lam} has more than {q} parts")
    if any(x < 0 for x in lam):
        raise ValueError("parts must be non-negative")
    return (0,) * (q - len(lam)) + lam


def schur(lam, q: int) -> SymPoly:
    return SymPoly(q, {_pad(lam, q): 1})


def schur_product(a: SymPoly, b: SymPoly) -> SymPoly:
    """Product expanded in the Schur basis: ``(V a)(V b) / V``."""
    if a.q != b.q:
        raise ValueError("variable counts differ")
    prod = _mul(a.antisym().expanded(), b.antisym().expanded())
    quot = divide_by_vandermonde_power(prod, a.q, "witt")
    return SymPoly.from_antisym(AntisymPoly.from_expanded(a.q, quot))


# ---------------------------------------------------------------------------
# chains and polynomials


def chain_to_poly(c: Chain) -> AntisymPoly:
    if not c:
        return AntisymPoly(0, {})
    dims = c.dims()
    if len(dims) != 1:
        raise ValueError("chain is not of a single dimension")
    (q,) = dims
    coeffs = {}
    for key, v in c.items():
        if key and key[0] < 0:
            raise ValueError("negative indices lie outside the polynomial model")
        coeffs[key] = v
    return AntisymPoly(q, coeffs)


def poly_to_chain(f: AntisymPoly) -> Chain:
    return Chain({k: v for k, v in f.coeffs.items() if v})


def d_poly(family: str, f: AntisymPoly) -> AntisymPoly:
    """Boundary in the polynomial model.

    ``d F = sum_{r=1}^{q-1} (-1)^r F(.., h^2 t_r, h t_r, ..) / (h^2 - h)``
    with ``h`` a primitive cube root of unity (loop) or the limit ``h -> 1``
    (witt), where the quotient becomes a derivative in ``h``.
    """
    q = f.q
    if q <= 1:
        return AntisymPoly(max(q - 1, 0), {})
    src = f.expanded()
    out = {}
    if family == "loop":
        h = OMEGA
        den = h * h - h
    for r in range(q - 1):
        sign = -1 if r % 2 == 0 else 1  # (-1)^(r+1) for 0-based r
        for e, c in src.items():
            a, b = e[r], e[r + 1]
            merged = e[:r] + (a + b,) + e[r + 2 :]
            if family == "witt":
                w = 2 * a + b
            else:
                w = h ** (2 * a + b) / den
            _add_term(out, merged, sign * c * w)
    res = {}
    for e, v in out.items():
        if isinstance(v, QW):
            if not v.is_rational():
                raise ArithmeticError("boundary left the rationals")
            v = as_scalar(v.a)
        if v:
            res[e] = v
    return AntisymPoly.from_expanded(q - 1, res)


# ---------------------------------------------------------------------------
# stability


def _cube_divisor_times(family: str) -> int:
    return 3 if family == "witt" else 1


def _divisible(c: Chain, family: str) -> bool:
    f = chain_to_poly(c)
    if f.q <= 1:
        return True
    return divide_by_vandermonde_power(f.expanded(), f.q, family, _cube_divisor_times(family)) is not None


def stable_by_shifts(spec: AlgebraSpec, c: Chain, rmax: int | None = None) -> bool:
    """``d(sigma^r c) = 0`` for ``r = 0 .. rmax`` (default ``q + 2``)."""
    if not c:
        return True
    (q,) = c.dims()
    rmax = q + 2 if rmax is None else rmax
    return all(not d(spec, sigma_pow(c, r)) for r in range(rmax + 1))


def is_stable(c: Chain, spec: AlgebraSpec) -> bool:
    """Stability decided by Vandermonde divisibility, cross-checked on shifts."""
    if spec.k < 0:
        raise ValueError("the polynomial model needs k >= 0")
    if c and min(min(key) for key in c.support() if key) < spec.k:
        raise ValueError(f"chain has indices below k={spec.k}")
    verdict = _divisible(c, spec.family)
    if verdict != stable_by_shifts(spec, c):
        raise ArithmeticError(f"divisibility and shift tests disagree on {c!r}")
    return verdict


@dataclass(frozen=True)
class StableBasisReport:
    family: str
    k: int
    n: int
    dim: int
    basis: dict  # nonsingular partition -> hat-e chain
    dim_c: int
    dim_pos: int
    flags: dict

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def to_json(self) -> dict:
        return {
            "family": self.family, "k": self.k, "n": self.n, "dim": self.dim,
            "dimC": self.dim_c, "dimPos": self.dim_pos, "dimStab": len(self.basis),
            "basis": [{"partition": list(p), "chain": c.to_json()} for p, c in sorted(self.basis.items())],
            "flags": dict(sorted(self.flags.items())),
        }


def _span_columns(vectors: list, length: int) -> SparseMatrix:
    return SparseMatrix.from_columns(length, [{i: v for i, v in enumerate(vec) if v} for vec in vectors])


def _divisible_subspace(spec: AlgebraSpec, n: int, q: int) -> list:
    """Slice vectors (monomial coordinates) of chains divisible by the family's Vandermonde power."""
    rows = graded_basis(spec, n, q)
    pos = {m: i for i, m in enumerate(rows)}
    shift = 3 * q * (q - 1) // 2
    extra = _cycle_factor(q, spec.family)
    gens = []
    for lam in partitions_with_zeros(n - shift, q):
        s = SymPoly(q, {lam: 1}).antisym().expanded()
        gens.append(_to_delta_basis(_mul(s, extra)))
    if not gens:
        return []
    # combinations whose support stays inside indices >= k
    outside = sorted({key for g in gens for key in g if key not in pos})
    opos = {m: i for i, m in enumerate(outside)}
    if outside:
        m = SparseMatrix.from_columns(len(outside), [{opos[k]: v for k, v in g.items() if k in opos} for g in gens])
        combos = kernel_basis(m)
    else:
        combos = [[1 if i == j else 0 for i in range(len(gens))] for j in range(len(gens))]
    out = []
    for w in combos:
        vec = [0] * len(rows)
        for a, g in zip(w, gens):
            if a:
                for key, v in g.items():
                    if key in pos:
                        vec[pos[key]] += a * v
        out.append(vec)
    return out


def partitions_with_zeros(n: int, q: int):
    """Nondecreasing ``q``-tuples of non-negative integers summing to ``n``."""
    if n < 0:
        return
    if q == 0:
        if n == 0:
            yield ()
        return
    for length in range(0, q + 1):
        src = [()] if (length == 0 and n == 0) else (partitions(n, 1, length) if length else [])
        for p in src:
            yield (0,) * (q - length) + tuple(p)


def _shift_kernel(spec: AlgebraSpec, n: int, q: int) -> list:
    rows = graded_basis(spec, n, q)
    targets = {}
    cols = []
    for m in rows:
        col = {}
        for r in range(q + 3):
            img = d(spec, sigma_pow(Chain.monomial(*m), r))
            for key, v in img.items():
                idx = targets.setdefault((r, key), len(targets))
                col[idx] = v
        cols.append(col)
    return kernel_basis(SparseMatrix.from_columns(len(targets), cols))


def stable_subspaces(spec: AlgebraSpec, n: int, q: int) -> dict:
    """The stable subspace of a slice computed three ways, as lists of vectors."""
    bc = basis_change(spec, n, q)
    marked = [bc.xi.column(j) for j, s in enumerate(bc.shapes) if s.marked]
    size = len(bc.monomials)
    if marked:
        pos_t = _span_columns(marked, size).transpose()
        complement = kernel_basis(pos_t)
    else:
        complement = [[1 if i == j else 0 for i in range(size)] for j in range(size)]
    return {
        "orthogonal": complement,
        "divisible": _divisible_subspace(spec, n, q),
        "shifts": _shift_kernel(spec, n, q),
    }


def stab_pos_decomposition(spec: AlgebraSpec, n: int, dim: int, triple: bool = True) -> StableBasisReport:
    """Pos, its orthogonal complement, and the dual basis vectors ``hat e_I``."""
    if spec.k < 1:
        raise ValueError("the decomposition needs k >= 1")
    bc = basis_change(spec, n, dim)
    size = len(bc.monomials)
    mons = list(bc.monomials)
    basis = {}
    for j, s in enumerate(bc.shapes):
        if not s.marked:
            row = [bc.xi_inv[j, c] for c in range(size)]
            basis[s.base] = vector_to_chain(row, mons)
    marked_cols = [bc.xi.column(j) for j, s in enumerate(bc.shapes) if s.marked]
    dim_pos = rank(_span_columns(marked_cols, size)) if marked_cols else 0
    flags = {"dims_add_up": dim_pos + len(basis) == size}
    flags["orthogonal"] = all(
        sum(a * b for a, b in zip(chain_to_vector(c, mons), col)) == 0
        for c in basis.values() for col in marked_cols)
    flags["stable"] = all(is_stable(c, spec) for c in basis.values())
    tri = True
    for p, c in basis.items():
        for key, v in c.items():
            if key == p:
                tri &= v == 1
            else:
                tri &= (not is_nonsingular(key, spec.k)) and dominates(key, p)
    flags["singular_higher_terms"] = tri
    if triple and size:
        subs = stable_subspaces(spec, n, dim)
        ref = subs["orthogonal"]
        flags["triple_agreement"] = all(same_span(ref, other, size) for other in subs.values())
    return StableBasisReport(spec.family, spec.k, n, dim, basis, size, dim_pos, flags)


# ---------------------------------------------------------------------------
# explicit cycles


@lru_cache(maxsize=64)
def _cycle_factor_items(q: int, family: str) -> tuple:
    if family == "witt":
        return tuple(_mul(vandermonde(q), vandermonde(q)).items())
    if family == "loop":
        return tuple(divide_by_vandermonde_power(vandermonde(q, 3), q, "witt").items())
    raise ValueError(f"unknown family {family!r}")


def _cycle_factor(q: int, family: str) -> dict:
    """``V^3 / V`` (witt) or ``V(t^3) / V`` (loop): the symmetric-times-V multiplier."""
    return dict(_cycle_factor_items(q, family))


def explicit_cycle(parts, family: str, k: int) -> Chain:
    """The chain of ``S_{I - 3 rho} V^3`` (witt) or ``S_{I - 3 rho} V(t^3)`` (loop)."""
    parts = tuple(parts)
    if k < 0 or not is_nonsingular(parts, k):
        raise ValueError(f"{parts} is not a nonsingular {k}-partition")
    q = len(parts)
    base = tuple(p - 2 * r for r, p in enumerate(parts))  # (I - 3 rho) + rho
    f = _mul(delta_poly(base), _cycle_factor(q, family))
    return poly_to_chain(AntisymPoly.from_expanded(q, f))


def cycle_record(parts, family: str, k: int, chain: Chain | None = None) -> dict:
    parts = tuple(parts)
    c = explicit_cycle(parts, family, k) if chain is None else chain
    return {
        "partition": list(parts),
        "family": family,
        "k": k,
        "chain": c.to_json(),
        "polynomial": chain_to_poly(c).to_json(),
    }


def independent_mod_boundaries(spec: AlgebraSpec, cycles: list) -> bool:
    """Whether cycles of one slice are independent modulo ``d`` of the next dimension."""
    if not cycles:
        return True
    (n,) = set().union(*(c.degrees() for c in cycles))
    (q,) = set().union(*(c.dims() for c in cycles))
    from .liealg import boundary_matrix

    rows = graded_basis(spec, n, q)
    image = boundary_matrix(spec, n, q + 1)
    extra = _span_columns([chain_to_vector(c, rows) for c in cycles], len(rows))
    if not image.ncols:
        return rank(extra) == len(cycles)
    return rank(image.hstack(extra)) == rank(image) + len(cycles)


def odd_delta_product_check(parts: list) -> bool:
    """``Delta_A1 ... Delta_Am`` (``m`` odd) has integer Delta-coefficients on keys dominating the sum."""
    if len(parts) % 2 == 0:
        raise ValueError("the product rule needs an odd number of factors")
    q = len(parts[0])
    if any(len(p) != q for p in parts):
        raise ValueError("all factors need the same variable count")
    prod = {(0,) * q: 1}
    for p in parts:
        prod = _mul(prod, delta_poly(p))
    total = tuple(sum(col) for col in zip(*parts))
    for key, c in _to_delta_basis(prod).items():
        if Fraction(c).denominator != 1 or not dominates(key, total):
            return False
    return True


def mult_rule_check(m: int, f: AntisymPoly) -> bool:
    """``t_1^m ^ F = sum_p (-1)^(p-1) t_p^m F(t without t_p)``."""
    s = f.q
    lhs = AntisymPoly(1, {(m,): 1}).wedge(f).expanded()
    src = f.expanded()
    rhs = {}
    for p in range(s + 1):
        sign = 1 if p % 2 == 0 else -1
        for e, c in src.items():
            _add_term(rhs, e[:p] + (m,) + e[p:], sign * c)
    return lhs == rhs


def schur_passage_check(spec: AlgebraSpec, n: int, q: int) -> bool:
    """Over main partitions of a slice, ``E_I = hat e_I + sum integer * hat e_I'`` with ``I'`` main, ``I' > I``."""
    rep = stab_pos_decomposition(spec, n, q, triple=False)
    for p in enumerate_partitions("main", spec.k, n, q):
        e = explicit_cycle(p, spec.family, spec.k)
        rest = e - rep.basis[p]
        for other, hat in rep.basis.items():
            if other == p:
                continue
            lam = e.coeff(other)
            if lam:
                if Fraction(lam).denominator != 1 or not is_main(other, spec.k) or not dominates(other, p):
                    return False
                rest = rest - hat.scale(lam)
        if rest:
            return False
    return True


def stab_laplacian_check(n: int) -> dict:
    """Gamma_1 keeps the stable subspace and is triangular on the hat-e basis with diagonal E.

    Returns ``{"pass": bool, "collisions": [...], "eigen": {partition: chain}}``;
    collisions are reported, not failed.
    """
    spec = AlgebraSpec("witt", 1)
    ok, collisions, eigen = True, [], {}
    for q in range(1, n + 1):
        if not graded_basis(spec, n, q):
            continue
        rep = stab_pos_decomposition(spec, n, q, triple=False)
        keys = sorted(rep.basis)
        if not keys:
            continue
        hats = [rep.basis[p] for p in keys]
        images = [gamma(spec, h) for h in hats]
        # coordinates in the hat basis are read off the nonsingular coefficients
        for img in images:
            recon = Chain()
            for p, h in zip(keys, hats):
                c = img.coeff(p)
                if c:
                    recon = recon + h.scale(c)
            ok &= recon == img
        mat = {(i, j): images[j].coeff(p) for i, p in enumerate(keys) for j in range(len(keys))}
        for j, p in enumerate(keys):
            ok &= mat[j, j] == energy(p)
            for i, r in enumerate(keys):
                if i != j and mat[i, j]:
                    ok &= dominates(r, p)
        for j, p in enumerate(keys):
            above = [i for i, r in enumerate(keys) if i != j and dominates(r, p)]
            lam = mat[j, j]
            sys_m = SparseMatrix(len(above), len(above),
                                 {(a, b): mat[above[a], above[b]] - (lam if a == b else 0)
                                  for a in range(len(above)) for b in range(len(above))
                                  if mat[above[a], above[b]] - (lam if a == b else 0)})
            if rank(sys_m) < len(above):
                collisions.append(p)
                continue
            sol = solve(sys_m, [-mat[i, j] for i in above]) if above else []
            s = hats[j]
            for a, i in enumerate(above):
                if sol[a]:
                    s = s + hats[i].scale(sol[a])
            ok &= gamma(spec, s) == s.scale(lam) and is_stable(s, spec)
            eigen[p] = s
    return {"pass": bool(ok), "collisions": collisions, "eigen": eigen}
