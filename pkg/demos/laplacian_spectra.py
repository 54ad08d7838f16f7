"""Spectra of the Laplace operator on the chains of L(1) and L(0).

Run:  python3 demos/laplacian_spectra.py
"""

from fhl.laplacian import (
    EigenvalueCollision,
    closed_form_spectrum,
    eigenvector,
    energy,
    gamma,
    gamma_matrix,
    spectrum,
)
from fhl.liealg import AlgebraSpec, Chain
from fhl.partitions import DP

witt1 = AlgebraSpec("witt", 1)

# Degree 3 has two chains, e3 and e1^e2, and the Laplacian fixes both.
print("gamma(e3) =", gamma(witt1, Chain.monomial(3)))
print("gamma(e1^e2) =", gamma(witt1, Chain.monomial(1, 2)))
print("degree 3 slice, q=2:", gamma_matrix(witt1, 3, 2).to_dense())

# The spectrum is predicted by a cubic energy of nonsingular partitions.
for n in (6, 9, 12):
    rep = spectrum(witt1, n)
    assert dict(rep.eigen) == closed_form_spectrum(1, n)
    print(f"n={n}: method={rep.method}, harmonic={rep.harmonic_dim}, eigen={list(rep.eigen)}")

print("E(2,6,9) =", energy((2, 6, 9)), " E(1,4,7) =", energy((1, 4, 7)))

# Eigenvectors are led by a tau-monomial and corrected by shapes below it.
print("\neigenvector for (1,4):", eigenvector(witt1, DP((1, 4))))

# Two shapes can share an eigenvalue with something below them; then the
# leading-term recipe is ambiguous and the whole eigenspace is returned instead.
try:
    eigenvector(witt1, DP((3, 9), (9,)))
except EigenvalueCollision as exc:
    print("collision:", exc, f"(eigenspace of dimension {len(exc.basis)})")

# L(0): every eigenvalue is positive except on the constants and e0.
for n in range(4):
    print(f"L(0), n={n}:", list(spectrum(AlgebraSpec("witt", 0), n).eigen))
