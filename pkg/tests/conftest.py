"""Shared brute-force reference implementations.

Everything here deliberately avoids the package's own code paths:
values come from the direct product n(n+1)/2, popcounts from string
counting, and triangularity from additive enumeration.  A bug in the
fast kernels then shows up as a disagreement instead of being mirrored
by the reference.
"""
import pytest


def ref_triangular(n):
    return n * (n + 1) // 2


def ref_popcount(x):
    return bin(x).count("1")


def ref_triangular_set(limit):
    """All triangular numbers <= limit, built by repeated addition."""
    out = set()
    t = 0
    n = 0
    while True:
        n += 1
        t += n
        if t > limit:
            return out
        out.add(t)


# popcounts of values we test stay far below this
_SMALL = ref_triangular_set(10**6)


def ref_is_vt_index(n):
    return ref_popcount(ref_triangular(n)) in _SMALL


def ref_vt_indexes(lo, hi):
    return [n for n in range(lo, hi + 1) if ref_is_vt_index(n)]


def ref_runs(lo, hi, min_len):
    """Maximal consecutive-VT blocks, interior only (no edge handling)."""
    runs = []
    start = None
    for n in range(lo, hi + 2):
        if n <= hi and ref_is_vt_index(n):
            if start is None:
                start = n
        elif start is not None:
            if n - start >= min_len:
                runs.append((start, n - start))
            start = None
    return runs


class Reference:
    triangular = staticmethod(ref_triangular)
    popcount = staticmethod(ref_popcount)
    triangular_set = staticmethod(ref_triangular_set)
    is_vt_index = staticmethod(ref_is_vt_index)
    vt_indexes = staticmethod(ref_vt_indexes)
    runs = staticmethod(ref_runs)


@pytest.fixture(scope="session")
def ref():
    return Reference
