"""Strict partitions, their Frobenius coordinates, and the marked partitions they map to.

Run:  python3 demos/partition_bijections.py
"""

from fhl.partitions import (
    DP,
    enumerate_partitions,
    frobenius,
    lambda_map,
    normal_form,
    phi,
    psi,
    series_sylvester,
    strict_count_check,
)

p = (1, 2, 4, 5, 6, 8, 9)
print("Frobenius form of", p, "is", frobenius(p))
print("phi:", phi(p), " psi(phi):", psi(phi(p)))

# A nonsingular partition splits into a main head and dense blocks spaced by 3.
nf = normal_form((2, 6, 9), 1)
print("\n(2,6,9) at k=1: head", nf.main_part, "blocks", nf.dense_blocks)

# Strict partitions of n are counted by nonsingular ones weighted by 2^(number of blocks).
for n in (10, 20, 30):
    strict = len(enumerate_partitions("strict", 1, n))
    print(f"n={n}: {strict} strict partitions, weighted check {strict_count_check(1, n)}")

# Lowering the level by one moves marked partitions between degrees.
d = DP((3, 6, 11, 14, 17, 21), (11, 21))
print("\nlambda at k=2:", d, "->", lambda_map(d, 2))

# Sylvester's product identity, truncated at x-degree 8.
lhs, rhs = series_sylvester(1, 8)
print("Sylvester identity through x^8:", lhs == rhs)
