"""A first walk through very triangular numbers.

A triangular number t_n = n(n+1)/2 is *very triangular* when its binary
popcount is itself a triangular number.  This script classifies a few
values by hand, then enumerates the start of the sequence.

Run:  python demos/01_classify_and_enumerate.py
"""
from vtnum import (
    binary_string,
    classify_index,
    is_triangular,
    is_very_triangular_value,
    popcount,
    sigma_enumerate,
    triangular,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("Classifying by hand")
for n in (1, 2, 6, 7, 19, 32):
    t = triangular(n)
    pc = popcount(t)
    verdict = "very triangular" if is_very_triangular_value(t) else "not"
    print(
        f"t_{n} = {t:>6} = {binary_string(t):>12}b  "
        f"popcount {pc:>2} -> {verdict}"
    )

banner("popcount 2 can never be triangular")
# t_(2^k) always has exactly two set bits, so no power-of-two index works
for k in (3, 5, 20):
    rec = classify_index(2**k)
    print(f"t_(2^{k}) = {rec.t} has popcount {rec.popcount}: is_vt = {rec.is_vt}")

banner("Recovering an index from a value")
for x in (21, 22, 523776):
    n = is_triangular(x)
    if n is None:
        print(f"{x} is not triangular")
    else:
        print(f"{x} = t_{n}")

banner("The first 20 very triangular indexes (sigma)")
indexes = sigma_enumerate(20)
print(indexes)
print("values:", [triangular(n) for n in indexes])

banner("A record, as the library reports it")
print(classify_index(7))
