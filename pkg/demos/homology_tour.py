"""Homology of the Witt subalgebra L(1) and its loop analogue, one degree at a time.

Run:  python3 demos/homology_tour.py
"""

from fhl.cohomology import cocycle_for_main, homology_dims, is_coboundary
from fhl.liealg import AlgebraSpec, Chain, d, delta
from fhl.partitions import enumerate_partitions

witt = AlgebraSpec("witt", 1)
loop = AlgebraSpec("loop", 1)

# The degree-n piece of the chain complex splits by dimension q.  Each
# nonzero Betti number sits on a slice that carries a main partition.
print("degree  q  dim C  dim H  main partitions")
for n in range(1, 15):
    for s in homology_dims(witt, n).slices:
        if s.dim_h:
            print(f"{n:>6} {s.q:>2} {s.dim_c:>6} {s.dim_h:>6}  {list(s.main)}")

# In degree 5 the cycle e1^e4 - 3 e2^e3 cancels: d(e1^e4) = 3 e5 and d(e2^e3) = e5.
c = Chain.monomial(1, 4) - Chain.monomial(2, 3, coeff=3)
print("\nd(e1^e4 - 3 e2^e3) =", d(witt, c) or 0)

# The loop algebra kills bracket coefficients divisible by 3, so e1^e4 alone is a cycle there.
print("loop: d(e1^e4) =", d(loop, Chain.monomial(1, 4)) or 0)

# Dually, every main partition leads a cocycle.
for p in enumerate_partitions("main", 1, 8):
    cocycle = cocycle_for_main(witt, p)
    print(f"cocycle for {p}: {cocycle!r}, closed: {not delta(witt, cocycle)}")

# Products of cocycles vanish in cohomology at k = 1.  At k = 2 the Witt algebra
# has a nonzero product: e3^e4 is closed and no coboundary reaches it.
k2 = AlgebraSpec("witt", 2)
prod = cocycle_for_main(k2, (3,)).wedge(cocycle_for_main(k2, (4,)))
print("\nk=2: e3 * e4 is a coboundary?", is_coboundary(k2, prod))
print("k=2: delta(e7) =", delta(k2, Chain.monomial(7)))

# Small levels: L(-1) has a single class in dimension 3, L(0) only the class of e0.
print("\nL(-1), degree 0:", {s.q: s.dim_h for s in homology_dims(AlgebraSpec("witt", -1), 0).slices})
print("L(0), degree 0:", {s.q: s.dim_h for s in homology_dims(AlgebraSpec("witt", 0), 0).slices})
