"""Where they must appear, and where they provably cannot.

Two complementary results: every interval (t_n, t_2n) contains a very
triangular number once n is large enough (and for n = 4, 5, 6), while
certified windows right below t at index 2^k - 2^(k/2) contain none.

Run:  python demos/04_intervals_and_gaps.py
"""
from vtnum import bertrand_check, bertrand_theorem_witness, gap_demonstration, gap_window

print("== very triangular values strictly between t_n and t_2n ==\n")
print(f"{'n':>4}  {'t_n':>8}  {'t_2n':>8}  witnesses")
for n in (4, 5, 6, 7, 8, 9, 10, 19):
    report = bertrand_check(n)
    witnesses = ", ".join(str(w) for w in report.witnesses) or "(none)"
    print(f"{n:>4}  {report.t_lo:>8}  {report.t_hi:>8}  {witnesses}")
print("\nOnly n = 7, 8, 9 come up empty; from n = 10 on a witness always exists.")

print("\n== the constructive witness, by shape of n ==\n")
for n in (10, 17, 18, 40, 100, 1000):
    w = bertrand_theorem_witness(n)
    print(
        f"n = {n:>5}: case {w.case:>3} gives index {w.index:>5}, "
        f"value {w.value} (inside ({n}, {2 * n}))"
    )

print("\n== certified gap windows ==\n")
for k in (28, 36):
    report = gap_window(k)
    lo, hi = report.window
    print(f"k = {k}: indexes ({lo}, {hi}] are all non-VT")
    print(f"  member popcounts: {list(report.member_popcounts)}")
    print(f"  power-of-two offsets follow the k+1 / k+2 law: {report.predictions_match}")

print("\n== ask for a gap of a given size instead ==\n")
for g in (5, 9, 25):
    report = gap_demonstration(g)
    width = len(report.member_popcounts)
    print(f"need {g:>2} consecutive non-VT indexes -> k = {report.k} provides {width}")
