"""The Laplace operator ``Gamma_k = d delta_k + delta_k d`` and its spectra.

For the Witt algebra with ``k = 1`` the operator is triangular in the
tau-basis of nonsingular shapes, with diagonal entry ``E(I)`` on a shape with
base ``I``; this gives the spectrum without root finding.  For ``k = 0`` the
eigenvalues are ``E0(I)``.  Any other case goes through the characteristic
polynomial, factored over Q.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .filtering import basis_change, expand_tau, vector_to_chain
from .liealg import AlgebraSpec, Chain, boundary_matrix, coboundary_matrix, d, delta, graded_basis
from .partitions import (
    DistinguishedPartition,
    enumerate_partitions,
    index,
    order_slice,
    strict_partitions,
)
from .qlinalg import SparseMatrix, kernel_basis, rank, solve

__all__ = [
    "gamma",
    "gamma_matrix",
    "energy",
    "energy_partial_sums",
    "energy0",
    "f_diagonal",
    "SpectralReport",
    "EigenvalueCollision",
    "closed_form_spectrum",
    "spectrum",
    "eigenvector",
    "harmonic_basis",
    "second_order_rhs",
    "second_order_check",
    "commutation_check",
    "tau_triangularity_violations",
    "trace_identity",
]


class EigenvalueCollision(ArithmeticError):
    """Two comparable shapes share an eigenvalue, so the triangular solve is singular.

    ``basis`` holds a basis of the whole eigenspace on the slice.
    """

    def __init__(self, msg, basis=()):
        super().__init__(msg)
        self.basis = list(basis)


def gamma(spec: AlgebraSpec, c: Chain) -> Chain:
    return d(spec, delta(spec, c)) + delta(spec, d(spec, c))


def gamma_matrix(spec: AlgebraSpec, n: int, q: int, basis: str = "monomial") -> SparseMatrix:
    """Matrix of ``Gamma_k`` on the degree-``n``, dimension-``q`` slice.

    ``basis="tau"`` expresses it in the nonsingular tau-basis (Witt, ``k = 1``
    only), columns and rows following ``basis_change(...).shapes``.
    """
    if basis not in ("monomial", "tau"):
        raise ValueError("basis must be 'monomial' or 'tau'")
    if basis == "tau" and (spec.k != 1 or spec.family != "witt"):
        raise ValueError("the tau basis is only available for the Witt algebra with k = 1")
    size = len(graded_basis(spec, n, q))
    g = SparseMatrix(size, size)
    if size:
        up, down = coboundary_matrix(spec, n, q), boundary_matrix(spec, n, q)
        if up.nrows:
            g = g + boundary_matrix(spec, n, q + 1) @ up
        if down.nrows:
            g = g + coboundary_matrix(spec, n, q - 1) @ down
    if basis == "tau":
        bc = basis_change(spec, n, q)
        return bc.tau_inv @ g @ bc.tau
    return g


# ---------------------------------------------------------------------------
# closed forms


def energy(parts) -> int:
    parts = tuple(parts)
    cross = (sum(parts) ** 2 - sum(p * p for p in parts)) // 2
    return sum(comb(p, 3) for p in parts) - cross


def energy_partial_sums(parts) -> Fraction:
    """``E`` through tail sums ``S_m``; equal to :func:`energy` on increasing input."""
    parts = tuple(parts)
    if not parts:
        return Fraction(0)
    tails = [sum(parts[m:]) for m in range(len(parts))]
    total = tails[0] * (parts[0] - 1) * (parts[0] - 2)
    for a in range(len(parts) - 1):
        total += tails[a + 1] * (parts[a] + parts[a + 1]) * (parts[a + 1] - parts[a] - 3)
    return Fraction(total, 6)


def energy0(parts) -> int:
    parts = tuple(parts)
    cross = (sum(parts) ** 2 - sum(p * p for p in parts)) // 2
    return sum(comb(p + 2, 3) for p in parts) + cross


def f_diagonal(parts) -> int:
    parts = tuple(parts)
    q = len(parts)
    cross = (sum(parts) ** 2 - sum(p * p for p in parts)) // 2
    return (sum(comb(p, 3) for p in parts) + 2 * cross
            - 3 * sum((q - 1 - a) * p * p for a, p in enumerate(parts)))


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class SpectralReport:
    family: str
    k: int
    n: int
    eigen: tuple  # ((value, multiplicity), ...) sorted by value
    harmonic_dim: int
    method: str
    irrational_factor_degrees: tuple = ()
    collisions: tuple = ()
    eigenvectors: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.eigen) + sum(self.irrational_factor_degrees)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "family": self.family,
            "k": self.k,
            "method": self.method,
            "eigen": [{"value": str(Fraction(v)), "mult": m} for v, m in self.eigen],
            "harmonic_dim": self.harmonic_dim,
        }
        if self.irrational_factor_degrees:
            out["irrational_factor_degrees"] = list(self.irrational_factor_degrees)
        if self.collisions:
            out["collisions"] = [str(s) for s in self.collisions]
        if self.eigenvectors:
            out["eigenvectors"] = [
                {"shape": s.to_json(), "chain": c.to_json()}
                for s, c in sorted(self.eigenvectors.items(), key=lambda kv: (kv[0].base, kv[0].marked))
            ]
        return out


def _nonsingular_with_empty(n: int) -> list:
    return [()] if n == 0 else enumerate_partitions("nonsingular", 1, n)


def closed_form_spectrum(k: int, n: int) -> dict:
    """``{eigenvalue: multiplicity}`` predicted for the Witt algebra, ``k`` in {0, 1}.

    For ``k = 1`` each nonsingular 1-partition ``I`` contributes ``2^alpha(I)``
    at ``E(I)``; for ``k = 0`` it contributes ``2^(alpha(I)+1)`` at ``E0(I)``,
    the factor two coming from ``c`` and ``e_0 ^ c``.  Degree zero counts the
    empty partition.
    """
    if k not in (0, 1):
        raise ValueError("closed forms exist for k = 0 and k = 1 only")
    out = Counter()
    for p in _nonsingular_with_empty(n):
        a = index(p, 1) if p else 0
        if k == 1:
            out[energy(p)] += 2**a
        else:
            out[energy0(p)] += 2 ** (a + 1)
    return dict(out)


def _slices(spec, n):
    return sorted({len(p) for p in strict_partitions(n, spec.k)})


def _eigenspace_dim(g: SparseMatrix, lam) -> int:
    """Generalized eigenspace dimension, raising the power until the rank settles."""
    shifted = g - SparseMatrix.identity(g.nrows).scale(lam) if lam else g
    p, prev = shifted, g.nrows
    for _ in range(g.nrows):
        r = rank(p)
        if r == prev:
            break
        prev = r
        p = p @ shifted
    return g.nrows - prev


def _charpoly_eigen(g: SparseMatrix):
    """Rational eigenvalues with algebraic multiplicity, and degrees of other factors."""
    from sympy import Matrix, Poly, factor_list, symbols

    x = symbols("x")
    poly = Matrix(g.to_dense()).charpoly(x)
    roots, other = Counter(), []
    for fac, mult in factor_list(poly.as_expr())[1]:
        p = Poly(fac, x)
        if p.degree() == 1:
            a, b = p.all_coeffs()
            roots[Fraction(int(-b), int(a)) if a != 1 else int(-b)] += mult
        else:
            other.extend([p.degree()] * mult)
    return roots, other


def spectrum(spec: AlgebraSpec, n: int, with_vectors: bool = False) -> SpectralReport:
    """Eigenvalues of ``Gamma_k`` on ``C^{(n)}`` with multiplicities.

    Witt ``k = 1`` reads the tau-diagonal; Witt ``k = 0`` tests the ``E0``
    candidates.  Both are then confirmed by eigenspace dimensions summing to
    the slice dimension.  Everything else factors characteristic polynomials.
    """
    total = Counter()
    irr = []
    method = "charpoly"
    closed = spec.family == "witt" and spec.k in (0, 1)
    vectors, collisions = {}, []
    for q in _slices(spec, n):
        g = gamma_matrix(spec, n, q)
        if closed and spec.k == 1 and q > 0:
            method = "tau-diagonal"
            gt = gamma_matrix(spec, n, q, "tau")
            cand = Counter(gt[i, i] for i in range(gt.nrows))
        elif closed:
            method = "closed-form" if spec.k == 0 else "tau-diagonal"
            cand = None
        else:
            roots, other = _charpoly_eigen(g)
            total.update(roots)
            irr.extend(other)
            continue
        values = set(cand) if cand is not None else set(closed_form_spectrum(spec.k, n))
        found = {}
        for v in values:
            m = _eigenspace_dim(g, v)
            if m:
                found[v] = m
        if sum(found.values()) != g.nrows:
            raise ArithmeticError(f"eigenspaces do not fill the slice n={n}, q={q}")
        if cand is not None and Counter(found) != cand:
            raise ArithmeticError(f"tau-diagonal disagrees with eigenspace dimensions at n={n}, q={q}")
        total.update(found)
        if with_vectors and spec.k == 1 and q > 0:
            for s in basis_change(spec, n, q).shapes:
                try:
                    vectors[s] = eigenvector(spec, s)
                except EigenvalueCollision:
                    collisions.append(s)
    eigen = tuple(sorted(total.items()))
    return SpectralReport(spec.family, spec.k, n, eigen, total.get(0, 0), method,
                          tuple(sorted(irr)), tuple(collisions), vectors)


def eigenvector(spec: AlgebraSpec, shape: DistinguishedPartition) -> Chain:
    """The eigenvector with tau-expansion ``shape + (shapes strictly below)``."""
    if spec.family != "witt" or spec.k != 1:
        raise ValueError("eigenvectors with tau leading term need the Witt algebra with k = 1")
    if not shape.is_nonsingular(1):
        raise ValueError(f"{shape} is not a nonsingular shape")
    n, q = shape.degree, shape.dim
    bc = basis_change(spec, n, q)
    gt = gamma_matrix(spec, n, q, "tau")
    j = bc.shapes.index(shape)
    lam = gt[j, j]
    order = order_slice(1, n, q)
    below = [i for i, s in enumerate(bc.shapes) if i != j and order.leq(s, shape)]
    system = gt.submatrix(below, below) - SparseMatrix.identity(len(below)).scale(lam)
    rhs = [-gt[i, j] for i in below]
    if rank(system) < len(below):
        g = gamma_matrix(spec, n, q) - SparseMatrix.identity(len(bc.monomials)).scale(lam)
        basis = [vector_to_chain(v, list(bc.monomials)) for v in kernel_basis(g)]
        raise EigenvalueCollision(f"eigenvalue {lam} repeats below {shape}", basis)
    sol = solve(system, rhs)
    coords = [0] * len(bc.shapes)
    coords[j] = 1
    for i, v in zip(below, sol):
        coords[i] = v
    return vector_to_chain(bc.tau.apply(coords), list(bc.monomials))


def harmonic_basis(spec: AlgebraSpec, n: int) -> list:
    """Basis of ``ker Gamma_k`` on ``C^{(n)}``.

    Witt ``k = 1`` uses the eigenvectors led by main partitions; otherwise the
    kernel is computed directly.
    """
    if spec.family == "witt" and spec.k == 1:
        out = []
        for q in _slices(spec, n):
            if q == 0:
                out.append(Chain.monomial())
                continue
            for p in enumerate_partitions("main", 1, n, q):
                out.append(eigenvector(spec, DistinguishedPartition(p, ())))
        return out
    out = []
    for q in _slices(spec, n):
        rows = graded_basis(spec, n, q)
        out.extend(vector_to_chain(v, rows) for v in kernel_basis(gamma_matrix(spec, n, q)))
    return out


# ---------------------------------------------------------------------------
# structural checks


def second_order_rhs(spec: AlgebraSpec, factors: list) -> Chain:
    """Right-hand side of the second-order expansion of ``Gamma(u_1 ^ ... ^ u_q)``.

    ``factors`` are chains of homogeneous dimensions ``r_a``.
    """
    q = len(factors)
    dims = []
    for u in factors:
        (r,) = u.dims()
        dims.append(r)
    pre = [sum(dims[:a]) for a in range(q)]
    out = Chain()
    for a in range(q):
        for b in range(a + 1, q):
            beta = dims[a] * pre[a] + dims[b] * pre[b] - dims[a] * dims[b]
            head = gamma(spec, factors[a].wedge(factors[b]))
            for c, u in enumerate(factors):
                if c not in (a, b):
                    head = head.wedge(u)
            out = out + (head if beta % 2 == 0 else -head)
    if q != 2:
        for a in range(q):
            term = Chain.monomial()
            for c, u in enumerate(factors):
                term = term.wedge(gamma(spec, u) if c == a else u)
            out = out - term.scale(q - 2)
    return out


def second_order_check(spec: AlgebraSpec, nmax: int = 14, qmax: int = 4) -> bool:
    """The second-order expansion matches ``Gamma`` on every monomial, and for
    ``k >= 1`` on every tau-monomial split into its factors."""
    for n in range(nmax + 1):
        for q in range(1, qmax + 1):
            for m in graded_basis(spec, n, q):
                factors = [Chain.monomial(i) for i in m]
                if gamma(spec, Chain.monomial(*m)) != second_order_rhs(spec, factors):
                    return False
            if spec.k < 1:
                continue
            for s in enumerate_partitions("distinguished-nonsingular", spec.k, n, q):
                flags = s.mark_flags()
                factors = [expand_tau(spec, DistinguishedPartition((i,), (i,))) if f else Chain.monomial(i)
                           for i, f in zip(s.base, flags)]
                if len(s.base) < 2:
                    continue
                if gamma(spec, expand_tau(spec, s)) != second_order_rhs(spec, factors):
                    return False
    return True


def commutation_check(spec: AlgebraSpec, n: int) -> bool:
    """``Gamma d = d Gamma`` and ``Gamma delta = delta Gamma`` on ``C^{(n)}``."""
    for q in _slices(spec, n):
        g = gamma_matrix(spec, n, q)
        if q > 0 and graded_basis(spec, n, q - 1):
            dn = boundary_matrix(spec, n, q)
            if gamma_matrix(spec, n, q - 1) @ dn != dn @ g:
                return False
        if graded_basis(spec, n, q + 1):
            up = coboundary_matrix(spec, n, q)
            if gamma_matrix(spec, n, q + 1) @ up != up @ g:
                return False
    return True


def tau_triangularity_violations(n: int) -> list:
    """Off-order entries and wrong diagonals of ``Gamma_1`` in the tau-basis."""
    spec = AlgebraSpec("witt", 1)
    bad = []
    for q in _slices(spec, n):
        if q == 0:
            continue
        bc = basis_change(spec, n, q)
        order = order_slice(1, n, q)
        gt = gamma_matrix(spec, n, q, "tau")
        for (r, c), v in gt.entries.items():
            if r != c and not order.leq(bc.shapes[r], bc.shapes[c]):
                bad.append(("off-order", bc.shapes[r], bc.shapes[c]))
        for i, s in enumerate(bc.shapes):
            if gt[i, i] != energy(s.base):
                bad.append(("diagonal", s, s))
    return bad


def trace_identity(n: int) -> bool:
    """Monomial-basis traces ``F`` against tau-basis traces ``E``, per dimension."""
    lhs, rhs = Counter(), Counter()
    for p in strict_partitions(n, 1):
        lhs[len(p)] += f_diagonal(p)
    for p in _nonsingular_with_empty(n):
        a = index(p, 1) if p else 0
        e = energy(p)
        for j in range(a + 1):
            rhs[len(p) + j] += e * comb(a, j)
    clean = lambda c: {k: v for k, v in c.items() if v}  # noqa: E731
    return clean(lhs) == clean(rhs)
