"""Constructive families: indexes whose popcount is known in advance.

Five parameterized formulas produce indexes whose triangular numbers
have a provable popcount, plus one exclusion (powers of two never
qualify).  Each witness carries its prediction and the recomputed
actuals, so you can check the books yourself.

Run:  python demos/02_witness_families.py
"""
from vtnum import (
    binary_string,
    block_number,
    family_even,
    family_odd,
    family_power_minus,
    power_exclusion,
    triangular,
    twin_pair,
    verify_witness,
)


def show(w):
    params = ", ".join(f"{k}={v}" for k, v in w.params)
    print(f"{w.family.value}({params}):")
    for n, t, pc in zip(w.indices, w.values, w.actual_popcounts):
        print(f"  index {n} -> t = {t}")
        print(f"    binary {binary_string(t)}")
        print(f"    popcount {pc} (predicted {w.predicted_popcount})")
    print(f"  expected very triangular: {w.expect_vt}; matches: {w.matches}")
    assert verify_witness(w)
    print()


print("== even popcount: index 2^n + 2^ell - 1 gives popcount 2(ell+1) ==\n")
show(family_even(2, 4))
show(family_even(4, 9))

print("== power minus power: index 2^k - 2^ell gives popcount k ==\n")
show(family_power_minus(6, 3))
show(family_power_minus(10, 5))

print("== odd popcount: index 2^(2ell) - 2^ell + 1 gives popcount 2ell + 1 ==\n")
show(family_odd(7))

print("== twins: indexes 2^k - 2 and 2^k - 1 share popcount k ==\n")
show(twin_pair(6))

print("== exclusion: t at a power-of-two index always has popcount 2 ==\n")
show(power_exclusion(5))

print("== block numbers: k ones then k-1 zeros ==\n")
for k in (2, 3, 4, 10):
    b = block_number(k)
    note = "very triangular" if binary_string(b).count("1") in (1, 3, 6, 10) else "popcount not triangular"
    print(f"block({k}) = {b} = {binary_string(b)}b = t_{2**k - 1}  [{note}]")
assert block_number(10) == triangular(1023) == 523776
