"""Filtering bases of the cochain spaces: tau- and xi-monomials.

A tau-monomial wedges ``e_i`` for unmarked parts and ``delta_k(e_i)`` for
marked parts.  A xi-monomial wedges the blocks of the normal form, applying
``delta_k`` to a whole block when its leading part is marked.  On every slice
(degree ``n``, total dimension) both families of nonsingular shapes form
bases of the cochain space; :func:`basis_change` builds and checks them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .liealg import AlgebraSpec, Chain, delta, delta_e, graded_basis, mu
from .partitions import DistinguishedPartition, enumerate_partitions, normal_form, order_slice
from .qlinalg import SparseMatrix, inverse, rank

__all__ = [
    "expand_tau",
    "expand_xi",
    "nonsingular_shapes",
    "verify_identities",
    "identity_chains",
    "BasisChange",
    "basis_change",
    "expand_in_basis",
    "chain_to_vector",
    "vector_to_chain",
    "BasisRankError",
]


class BasisRankError(ArithmeticError):
    """A filtering family fails to be a basis of its slice."""


def _need_k(spec: AlgebraSpec):
    if spec.k < 1:
        raise ValueError("filtering bases need k >= 1")


def expand_tau(spec: AlgebraSpec, shape: DistinguishedPartition) -> Chain:
    _need_k(spec)
    if not shape.is_valid(spec.k):
        raise ValueError(f"{shape} is not a distinguished {spec.k}-partition")
    out = Chain.monomial()
    for part, marked in zip(shape.base, shape.mark_flags()):
        out = out.wedge(delta_e(spec, part) if marked else Chain.monomial(part))
        if not out:
            break
    return out


def expand_xi(spec: AlgebraSpec, shape: DistinguishedPartition) -> Chain:
    _need_k(spec)
    nf = normal_form(shape.base, spec.k)
    if set(shape.marked) - set(nf.leading_parts) or len(set(shape.marked)) != len(shape.marked):
        raise ValueError(f"marks of {shape} are not leading parts of its normal form")
    out = Chain.monomial(*nf.main_part)
    for block in nf.dense_blocks:
        piece = Chain.monomial(*block)
        if block[0] in shape.marked:
            piece = delta(spec, piece)
        out = out.wedge(piece)
    return out


def nonsingular_shapes(spec: AlgebraSpec, n: int, dim: int) -> list:
    """Nonsingular shapes of the slice in a linear extension of the order."""
    _need_k(spec)
    shapes = enumerate_partitions("distinguished-nonsingular", spec.k, n, dim)
    return sorted(shapes, key=lambda s: (len(s.base), s.base, s.marked))


# ---------------------------------------------------------------------------
# identities between products e_a ^ delta(e_b)


def _e_delta(spec, n, weight) -> Chain:
    out = Chain()
    for a in range(spec.k, n - spec.k + 1):
        w = weight(a, n - a)
        if w:
            out = out + Chain.monomial(a).wedge(delta_e(spec, n - a)).scale(w)
    return out


def _delta_delta(spec, n, weight) -> Chain:
    # the a == b term enters with weight 1/2: this is delta applied to the
    # unordered e ^ delta(e) sum, and delta(e_m) ^ delta(e_m) need not vanish
    out = Chain()
    a = spec.k
    while 2 * a <= n:
        w = weight(a, n - a)
        if 2 * a == n:
            w = Fraction(w, 2)
        if w:
            out = out + delta_e(spec, a).wedge(delta_e(spec, n - a)).scale(w)
        a += 1
    return out


def identity_chains(spec: AlgebraSpec, n: int) -> list:
    """``(identity id, chain)`` pairs that must vanish in degree ``n``."""
    _need_k(spec)
    if spec.family == "witt":
        return [
            ("e-delta:1", _e_delta(spec, n, lambda a, b: 1)),
            ("e-delta:a", _e_delta(spec, n, lambda a, b: a)),
            ("e-delta:a(b-a)^2", _e_delta(spec, n, lambda a, b: a * (b - a) ** 2)),
            ("delta-delta:1", _delta_delta(spec, n, lambda a, b: 1)),
            ("delta-delta:(b-a)^2", _delta_delta(spec, n, lambda a, b: (b - a) ** 2)),
        ]
    eps = lambda z: mu(spec, z)  # noqa: E731
    out = [("e-delta:eps(a)", _e_delta(spec, n, lambda a, b: eps(a)))]
    if n % 3:
        out += [
            ("e-delta:1", _e_delta(spec, n, lambda a, b: 1)),
            ("e-delta:eps(a)eps(b-a)^2", _e_delta(spec, n, lambda a, b: eps(a) * eps(b - a) ** 2)),
        ]
    else:
        out += [
            ("e-delta:n-3a", _e_delta(spec, n, lambda a, b: n - 3 * a)),
            ("e-delta:2-3eps(a)^2", _e_delta(spec, n, lambda a, b: 2 - 3 * eps(a) ** 2)),
        ]
    out += [
        ("delta-delta:1", _delta_delta(spec, n, lambda a, b: 1)),
        ("delta-delta:eps(b-a)^2", _delta_delta(spec, n, lambda a, b: eps(b - a) ** 2)),
    ]
    return out


def verify_identities(spec: AlgebraSpec, n: int) -> list:
    """Report rows ``{"identity", "family", "k", "n", "pass"}``."""
    return [
        {"identity": name, "family": spec.family, "k": spec.k, "n": n, "pass": not chain}
        for name, chain in identity_chains(spec, n)
    ]


# ---------------------------------------------------------------------------
# basis change per slice


def chain_to_vector(c: Chain, monomials: list) -> list:
    pos = {m: i for i, m in enumerate(monomials)}
    vec = [0] * len(monomials)
    for key, val in c.items():
        if key not in pos:
            raise ValueError(f"monomial {key} is outside the slice")
        vec[pos[key]] = val
    return vec


def vector_to_chain(vec, monomials: list) -> Chain:
    return Chain({m: v for m, v in zip(monomials, vec) if v})


@dataclass(frozen=True)
class BasisChange:
    """Matrices of the tau- and xi-bases of one slice against the monomials.

    Column ``j`` of ``tau`` (``xi``) is the expansion of ``shapes[j]``; rows
    follow ``monomials``.  ``passage`` expresses the xi-basis in tau
    coordinates.
    """

    spec: AlgebraSpec
    n: int
    dim: int
    monomials: tuple
    shapes: tuple
    tau: SparseMatrix
    xi: SparseMatrix
    tau_inv: SparseMatrix
    xi_inv: SparseMatrix

    @property
    def passage(self) -> SparseMatrix:
        return self.tau_inv @ self.xi

    def triangular_violations(self) -> list:
        """Entries of the passage matrix not allowed by the order, plus zero diagonals."""
        bad = []
        if not self.shapes:
            return bad
        order = order_slice(self.spec.k, self.n, self.dim)
        p = self.passage
        for (r, c), v in p.entries.items():
            if r != c and not order.leq(self.shapes[r], self.shapes[c]):
                bad.append((self.shapes[r], self.shapes[c]))
        bad.extend((s, s) for i, s in enumerate(self.shapes) if not p[i, i])
        return bad


def _columns(chains: list, monomials: list) -> SparseMatrix:
    pos = {m: i for i, m in enumerate(monomials)}
    entries = {}
    for j, c in enumerate(chains):
        for key, val in c.items():
            entries[(pos[key], j)] = val
    return SparseMatrix(len(monomials), len(chains), entries)


@lru_cache(maxsize=512)
def basis_change(spec: AlgebraSpec, n: int, dim: int) -> BasisChange:
    monomials = tuple(graded_basis(spec, n, dim))
    shapes = tuple(nonsingular_shapes(spec, n, dim))
    if len(shapes) != len(monomials):
        raise BasisRankError(
            f"{len(shapes)} nonsingular shapes against {len(monomials)} monomials "
            f"({spec.family}, k={spec.k}, n={n}, dim={dim})")
    tau = _columns([expand_tau(spec, s) for s in shapes], list(monomials))
    xi = _columns([expand_xi(spec, s) for s in shapes], list(monomials))
    for name, m in (("tau", tau), ("xi", xi)):
        if rank(m) != len(shapes):
            raise BasisRankError(f"{name}-monomials are dependent on slice n={n}, dim={dim}")
    return BasisChange(spec, n, dim, monomials, shapes, tau, xi, inverse(tau), inverse(xi))


def expand_in_basis(c: Chain, basis: str, bc: BasisChange) -> dict:
    """Coordinates of ``c`` in the tau or xi basis of ``bc``, keyed by shape."""
    if basis not in ("tau", "xi"):
        raise ValueError("basis must be 'tau' or 'xi'")
    if c and (c.degrees() != {bc.n} or c.dims() != {bc.dim}):
        raise ValueError("chain does not lie in the slice")
    inv = bc.tau_inv if basis == "tau" else bc.xi_inv
    coords = inv.apply(chain_to_vector(c, list(bc.monomials)))
    return {s: v for s, v in zip(bc.shapes, coords) if v}
