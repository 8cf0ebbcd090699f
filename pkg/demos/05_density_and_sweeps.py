"""Density, periodic structure, and exhaustive sweeps.

How common are very triangular numbers?  The running ratio drifts
downward without an obvious limit, popcounts repeat along a power-of-
two lattice, and low-weight indexes can be swept exhaustively.

Run:  python demos/05_density_and_sweeps.py
"""
from vtnum import (
    ap_search,
    conjecture_no6,
    density_series,
    periodicity_equal_popcount,
    periodicity_identity,
    popcount3_census,
    popcount_of_triangular,
)

print("== cumulative density ==\n")
print(f"{'N':>9}  {'count':>7}  ratio")
for point in density_series([100, 1000, 10**4, 10**5, 10**6]):
    print(f"{point.N:>9}  {point.vt_count:>7}  {point.ratio_decimal}")
print("\nThe ratio keeps sliding; nothing here settles the limit question.")

print("\n== popcounts repeat along 2^n + 3 + k ==\n")
for n, k in [(6, 0), (10, 5), (20, 100)]:
    assert periodicity_identity(n, k)
print("index identity verified at (n, k) = (6, 0), (10, 5), (20, 100)")
for n, m, k in [(6, 20, 0), (10, 11, 15), (30, 31, 1870)]:
    assert periodicity_equal_popcount(n, m, k)
    a = popcount_of_triangular(2**n + 3 + k)
    b = popcount_of_triangular(2**m + 3 + k)
    print(f"popcount(t_(2^{n}+3+{k})) = {a} = popcount(t_(2^{m}+3+{k})) = {b}")

print("\n== six consecutive popcount-21 triangulars ==\n")
base = 2**30 + 1873
print([popcount_of_triangular(base + i) for i in range(6)], f"at indexes {base}..{base + 5}")

print("\n== exhaustive sweep: indexes of weight 6 ==\n")
hits = conjecture_no6(6, 24)
print(f"indexes below 2^24 with exactly 6 set bits whose t has popcount <= 3: {hits}")

print("\n== every popcount-3 triangular over low-weight indexes ==\n")
values = popcount3_census(5, 40)
print(f"indexes below 2^40 of weight <= 5 give exactly: {values}")

print("\n== arithmetic progressions of very triangular indexes ==\n")
for hit in ap_search(4, 1, 3000, 6)[:8]:
    members = [hit.first + i * hit.difference for i in range(hit.length)]
    print(f"difference {hit.difference}: {members}")
