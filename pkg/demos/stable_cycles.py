"""Chains as antisymmetric polynomials, and homology cycles built from Schur polynomials.

Run:  python3 demos/stable_cycles.py
"""

from fhl.liealg import AlgebraSpec, Chain, d, sigma_pow
from fhl.stablecycles import (
    chain_to_poly,
    divide_by_vandermonde_power,
    explicit_cycle,
    is_stable,
    schur,
    schur_product,
    stab_pos_decomposition,
)

witt1 = AlgebraSpec("witt", 1)
c = Chain.monomial(1, 4) - Chain.monomial(2, 3, coeff=3)

# e_I becomes the determinant det(t_r ** i_m).  The degree-five cycle is t1 t2 (t2 - t1)^3.
f = chain_to_poly(c)
print("as polynomial:", f.to_json())
print("quotient by V^3:", divide_by_vandermonde_power(f.expanded(), 2, "witt", 3))

# A chain is stable when every upward shift of its indices stays a cycle.
print("shifts stay cycles:", all(not d(witt1, sigma_pow(c, r)) for r in range(8)))
print("stable:", is_stable(c, witt1), " e1^e2 stable:", is_stable(Chain.monomial(1, 2), witt1))

# Schur products expand with non-negative integer coefficients.
print("\nS1 * S1 =", schur_product(schur((1,), 2), schur((1,), 2)).coeffs)

# For a main partition I the cycle S_(I - 3 rho) times V^3 has leading monomial e_I.
for parts in [(1,), (2,), (1, 4), (2, 5), (1, 4, 7)]:
    print(f"E{parts} witt: {explicit_cycle(parts, 'witt', 1)!r}")
print(f"E(1, 4) loop: {explicit_cycle((1, 4), 'loop', 1)!r}")

# Three independent descriptions of the stable subspace of a slice agree.
rep = stab_pos_decomposition(witt1, 12, 3)
print(f"\nn=12, q=3: dim C={rep.dim_c}, dim Pos={rep.dim_pos}, dim Stab={len(rep.basis)}")
print("flags:", rep.flags)
