"""Streaming classification of triangular numbers over index ranges.

The scanner walks indexes in ascending order, maintaining t_n through
the identity t_(n+1) = t_n + (n+1) (one addition per step; the closed
form runs only once per chunk start) and classifying each value by the
popcount test.  Ranges are cut into fixed chunks: chunks whose values
fit in 64-bit words go through vectorized numpy kernels, wider chunks
through an exact big-integer loop, and both paths produce identical
records.  Chunks may be classified by concurrent workers, but results
are always consumed in ascending range order, so output is byte
deterministic regardless of worker count.

Output formats (byte exact, ASCII):

    jsonl   {"n":6,"t":"21","pc":3,"vt":true}     one object per line
    csv     header n,t,pc,vt; booleans true/false

t is serialized as a decimal string in JSON so consumers limited to
53-bit floats cannot corrupt large values.
"""
from __future__ import annotations

import itertools
import json
import os
import re
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .core import ParameterError, is_triangular, popcount_of_triangular, triangular

__all__ = [
    "DEFAULT_CHUNK",
    "FAST_INDEX_LIMIT",
    "CHECKPOINT_VERSION",
    "VtRecord",
    "Run",
    "ScanSummary",
    "ScanCheckpoint",
    "CheckpointError",
    "CheckpointVersionError",
    "CheckpointCorruptError",
    "CheckpointStateError",
    "StreamBlock",
    "classify_index",
    "scan",
    "resume_scan",
    "merge_summaries",
    "find_runs",
    "find_twins",
    "sigma_enumerate",
    "count_vt",
    "vt_flags",
    "stream_scan",
    "format_block",
    "checkpoint_save",
    "checkpoint_resume",
]

DEFAULT_CHUNK = 1 << 20

# Largest index whose triangular number fits in an unsigned 64-bit word:
# n(n+1) < 2^64 exactly when n <= 2^32 - 1.
FAST_INDEX_LIMIT = (1 << 32) - 1

# Triangular values that can occur as the popcount of a 64-bit word.
_SMALL_TRIANGULAR = (1, 3, 6, 10, 15, 21, 28, 36, 45, 55)
_VT_BY_POPCOUNT = np.zeros(65, dtype=bool)
_VT_BY_POPCOUNT[list(_SMALL_TRIANGULAR)] = True


@dataclass(frozen=True)
class VtRecord:
    """One classified triangular number."""

    n: int
    t: int
    popcount: int
    is_vt: bool


def classify_index(n: int) -> VtRecord:
    """Classify a single index exactly, at any size."""
    t = triangular(n)
    pc = t.bit_count()
    return VtRecord(n, t, pc, is_triangular(pc) is not None)


@dataclass(frozen=True)
class Run:
    """A maximal block of consecutive very triangular indexes.

    ``truncated_left`` / ``truncated_right`` mark runs touching the
    scanned range's edges, where the neighbor needed to prove maximality
    was outside the range.  A run starting at index 1 is never
    left-truncated: there is no index 0.
    """

    start: int
    length: int
    popcounts: tuple[int, ...]
    truncated_left: bool = False
    truncated_right: bool = False

    @property
    def stop(self) -> int:
        """First index past the run."""
        return self.start + self.length


@dataclass(frozen=True)
class ScanSummary:
    """Result of classifying one index range.

    ``runs_found`` holds maximal runs of length >= the scan's
    min_run_len, plus any shorter run touching a range edge (kept so
    adjacent summaries can be merged without losing straddlers).
    ``elapsed`` is informational and excluded from equality.
    """

    lo: int
    hi: int
    scanned: int
    vt_count: int
    runs_found: tuple[Run, ...]
    elapsed: float = field(compare=False, default=0.0)

    @property
    def range(self) -> tuple[int, int]:
        return (self.lo, self.hi)


CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class ScanCheckpoint:
    """Resumable scan state; ``next`` is the first unclassified index.

    ``current_t`` is the incremental accumulator t_(next-1) (0 when
    next == lo == 1), stored so a loader can detect state corruption by
    recomputing it.  ``open_run`` is the (start, length so far) of a run
    still open at the frontier, if any.
    """

    format_version: int
    lo: int
    hi: int
    next: int
    vt_count: int
    open_run: tuple[int, int] | None
    current_t: int


class CheckpointError(Exception):
    """Base class for checkpoint load failures."""


class CheckpointVersionError(CheckpointError):
    """The stored format_version is not supported."""


class CheckpointCorruptError(CheckpointError):
    """The payload is not a well-formed checkpoint document."""


class CheckpointStateError(CheckpointError):
    """Fields parse but fail the recompute or consistency checks."""


def checkpoint_save(state: ScanCheckpoint, destination: str | os.PathLike[str]) -> None:
    """Write a checkpoint atomically (temp file in place, then rename)."""
    payload = {
        "format_version": state.format_version,
        "lo": state.lo,
        "hi": state.hi,
        "next": state.next,
        "vt_count": state.vt_count,
        "open_run": list(state.open_run) if state.open_run is not None else None,
        "current_t": str(state.current_t),
    }
    dest = os.fspath(destination)
    tmp = f"{dest}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump(payload, fh)
        fh.write("\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, dest)


def checkpoint_resume(source: str | os.PathLike[str]) -> ScanCheckpoint:
    """Load and validate a checkpoint written by :func:`checkpoint_save`.

    Raises :class:`CheckpointVersionError` for an unsupported
    format_version, :class:`CheckpointCorruptError` for a malformed
    document, and :class:`CheckpointStateError` when the fields parse
    but are mutually inconsistent (including a ``current_t`` that does
    not match the recomputed t_(next-1)).
    """
    with open(source, encoding="ascii") as fh:
        try:
            payload = json.load(fh)
        except ValueError as exc:
            raise CheckpointCorruptError(f"checkpoint is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise CheckpointCorruptError("checkpoint payload is not a JSON object")
    if "format_version" not in payload:
        raise CheckpointCorruptError("checkpoint is missing format_version")
    version = payload["format_version"]
    if version != CHECKPOINT_VERSION:
        raise CheckpointVersionError(
            f"unsupported checkpoint format_version {version!r} "
            f"(supported: {CHECKPOINT_VERSION})"
        )

    def _int_field(name: str) -> int:
        value = payload.get(name)
        if not isinstance(value, int) or isinstance(value, bool):
            raise CheckpointCorruptError(f"checkpoint field {name!r} must be an integer")
        return value

    lo = _int_field("lo")
    hi = _int_field("hi")
    nxt = _int_field("next")
    vt_count = _int_field("vt_count")
    raw_open = payload.get("open_run")
    if raw_open is not None:
        if (
            not isinstance(raw_open, list)
            or len(raw_open) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw_open)
        ):
            raise CheckpointCorruptError(
                "checkpoint field 'open_run' must be null or a [start, length] pair"
            )
    raw_t = payload.get("current_t")
    if not isinstance(raw_t, str) or not re.fullmatch(r"[0-9]+", raw_t):
        raise CheckpointCorruptError(
            "checkpoint field 'current_t' must be a decimal string"
        )

    if not 1 <= lo <= hi:
        raise CheckpointStateError(f"checkpoint range [{lo}, {hi}] is invalid")
    if not lo <= nxt <= hi + 1:
        raise CheckpointStateError(
            f"checkpoint next = {nxt} falls outside [{lo}, {hi + 1}]"
        )
    if not 0 <= vt_count <= nxt - lo:
        raise CheckpointStateError(
            f"checkpoint vt_count = {vt_count} exceeds the {nxt - lo} scanned indexes"
        )
    open_run: tuple[int, int] | None = None
    if raw_open is not None:
        start, length = raw_open
        if length < 1 or start < lo or start + length != nxt:
            raise CheckpointStateError(
                f"checkpoint open_run {raw_open} does not end at the frontier {nxt}"
            )
        if length > vt_count:
            raise CheckpointStateError(
                f"checkpoint open_run length {length} exceeds vt_count {vt_count}"
            )
        open_run = (start, length)
    current_t = int(raw_t)
    expected_t = (nxt - 1) * nxt // 2
    if current_t != expected_t:
        raise CheckpointStateError(
            f"checkpoint current_t = {current_t} but recomputing t_{nxt - 1} "
            f"gives {expected_t}"
        )
    return ScanCheckpoint(
        format_version=version,
        lo=lo,
        hi=hi,
        next=nxt,
        vt_count=vt_count,
        open_run=open_run,
        current_t=current_t,
    )


# ---------------------------------------------------------------------------
# Chunked classification


@dataclass
class _Chunk:
    """One classified sub-range [lo, hi] ready for downstream consumers."""

    lo: int
    hi: int
    ns: Sequence[int]
    ts: Sequence[int]
    pcs: np.ndarray
    vts: np.ndarray

    @property
    def vt_count(self) -> int:
        return int(self.vts.sum())

    def rows(self) -> tuple[list[int], list[int], list[int], list[bool]]:
        ns = self.ns.tolist() if isinstance(self.ns, np.ndarray) else list(self.ns)
        ts = self.ts.tolist() if isinstance(self.ts, np.ndarray) else list(self.ts)
        return ns, ts, self.pcs.tolist(), self.vts.tolist()

    def iter_records(self) -> Iterator[VtRecord]:
        for n, t, pc, vt in zip(*self.rows()):
            yield VtRecord(n, t, pc, vt)


def _classify_fast(lo: int, hi: int) -> _Chunk:
    """Vectorized kernel for chunks entirely below FAST_INDEX_LIMIT."""
    ns = np.arange(lo, hi + 1, dtype=np.uint64)
    base = np.uint64(lo * (lo - 1) // 2)  # t_(lo-1): the one closed-form product
    ts = np.cumsum(ns, dtype=np.uint64) + base
    pcs = np.bitwise_count(ts)
    vts = _VT_BY_POPCOUNT[pcs]
    return _Chunk(lo, hi, ns, ts, pcs.astype(np.int64), vts)


def _classify_big(lo: int, hi: int) -> _Chunk:
    """Exact big-integer loop for chunks beyond the 64-bit tier."""
    t = lo * (lo - 1) // 2
    ts: list[int] = []
    pcs: list[int] = []
    vts: list[bool] = []
    for n in range(lo, hi + 1):
        t += n
        pc = t.bit_count()
        ts.append(t)
        pcs.append(pc)
        vts.append(is_triangular(pc) is not None)
    return _Chunk(
        lo, hi, range(lo, hi + 1), ts, np.array(pcs, dtype=np.int64), np.array(vts, dtype=bool)
    )


def _classify(lo: int, hi: int) -> _Chunk:
    if hi <= FAST_INDEX_LIMIT:
        return _classify_fast(lo, hi)
    return _classify_big(lo, hi)


def _chunk_bounds(lo: int, hi: int, size: int) -> Iterator[tuple[int, int]]:
    """Cut [lo, hi] into chunks of at most `size`, split at the tier limit."""
    a = lo
    while a <= hi:
        b = min(a + size - 1, hi)
        if a <= FAST_INDEX_LIMIT < b:
            b = FAST_INDEX_LIMIT
        yield a, b
        a = b + 1


def _ordered_map(fn: Callable, jobs: Iterable[tuple], threads: int) -> Iterator:
    """Apply fn over jobs, yielding results in job order.

    With threads > 1, a bounded window of jobs runs concurrently; the
    consumer still sees results strictly in submission order, which is
    what keeps parallel scans byte deterministic.
    """
    jobs = iter(jobs)
    if threads <= 1:
        for job in jobs:
            yield fn(*job)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending: deque = deque()
        for job in itertools.islice(jobs, threads + 2):
            pending.append(pool.submit(fn, *job))
        while pending:
            result = pending.popleft().result()
            nxt = next(jobs, None)
            if nxt is not None:
                pending.append(pool.submit(fn, *nxt))
            yield result


def _iter_chunks(
    lo: int, hi: int, *, chunk_size: int = DEFAULT_CHUNK, threads: int = 1
) -> Iterator[_Chunk]:
    yield from _ordered_map(_classify, _chunk_bounds(lo, hi, chunk_size), threads)


# ---------------------------------------------------------------------------
# Run tracking


class _RunTracker:
    """Joins per-chunk classification masks into maximal runs.

    Interior runs shorter than min_run_len are dropped immediately;
    runs touching either edge of the reporting range are always kept
    (flagged as truncated) so adjacent summaries can be merged later.
    """

    def __init__(self, report_lo: int, hi: int, min_run_len: int) -> None:
        self.report_lo = report_lo
        self.hi = hi
        self.min_run_len = min_run_len
        self.open_start: int | None = None
        self.open_pcs: list[int] = []
        self.runs: list[Run] = []

    def seed(self, start: int, popcounts: list[int]) -> None:
        """Restore a run left open by a previous, checkpointed scan."""
        self.open_start = start
        self.open_pcs = popcounts

    def _close(self, truncated_right: bool) -> None:
        assert self.open_start is not None
        start = self.open_start
        length = len(self.open_pcs)
        truncated_left = start == self.report_lo and self.report_lo > 1
        if length >= self.min_run_len or truncated_left or truncated_right:
            self.runs.append(
                Run(start, length, tuple(self.open_pcs), truncated_left, truncated_right)
            )
        self.open_start = None
        self.open_pcs = []

    def feed(self, chunk: _Chunk) -> None:
        v = chunk.vts
        m = int(v.size)
        if m == 0:
            return
        if self.open_start is not None and not v[0]:
            self._close(truncated_right=False)
        if not v.any():
            return
        marks = v.view(np.int8)
        diff = np.diff(marks)
        starts = (np.flatnonzero(diff == 1) + 1).tolist()
        stops = (np.flatnonzero(diff == -1) + 1).tolist()
        if v[0]:
            starts.insert(0, 0)
        if v[-1]:
            stops.append(m)
        pcs = chunk.pcs
        for s, e in zip(starts, stops):
            if s == 0 and self.open_start is not None:
                self.open_pcs.extend(int(p) for p in pcs[:e])
                if e == m:
                    return
                self._close(truncated_right=False)
                continue
            if e == m:
                self.open_start = chunk.lo + s
                self.open_pcs = [int(p) for p in pcs[s:e]]
                return
            start = chunk.lo + s
            length = e - s
            truncated_left = start == self.report_lo and self.report_lo > 1
            if length >= self.min_run_len or truncated_left:
                self.runs.append(
                    Run(start, length, tuple(int(p) for p in pcs[s:e]), truncated_left, False)
                )

    def finish(self) -> tuple[Run, ...]:
        if self.open_start is not None:
            # the run reaches the range end: maximality unproven there
            self._close(truncated_right=True)
        return tuple(self.runs)


# ---------------------------------------------------------------------------
# Scanning


def _open_run_popcounts(open_run: tuple[int, int]) -> list[int]:
    start, length = open_run
    return [popcount_of_triangular(i) for i in range(start, start + length)]


def _engine(
    *,
    lo: int,
    hi: int,
    start: int,
    vt_base: int,
    seed_run: tuple[int, int] | None,
    report_lo: int,
    emit: Callable[[VtRecord], None] | None,
    min_run_len: int | None,
    threads: int,
    chunk_size: int,
    checkpoint_path: str | os.PathLike[str] | None,
) -> tuple[int, tuple[Run, ...]]:
    tracker: _RunTracker | None = None
    if min_run_len is not None:
        tracker = _RunTracker(report_lo, hi, min_run_len)
        if seed_run is not None:
            tracker.seed(seed_run[0], _open_run_popcounts(seed_run))
    vt_total = vt_base
    open_state = seed_run
    for chunk in _iter_chunks(start, hi, chunk_size=chunk_size, threads=threads):
        vt_total += chunk.vt_count
        open_state = _advance_open_run(open_state, chunk)
        if tracker is not None:
            tracker.feed(chunk)
        if emit is not None:
            for record in chunk.iter_records():
                emit(record)
        if checkpoint_path is not None:
            checkpoint_save(
                ScanCheckpoint(
                    format_version=CHECKPOINT_VERSION,
                    lo=lo,
                    hi=hi,
                    next=chunk.hi + 1,
                    vt_count=vt_total,
                    open_run=open_state,
                    current_t=chunk.hi * (chunk.hi + 1) // 2,
                ),
                checkpoint_path,
            )
    runs = tracker.finish() if tracker is not None else ()
    return vt_total, runs


def _advance_open_run(
    open_state: tuple[int, int] | None, chunk: _Chunk
) -> tuple[int, int] | None:
    """Track the (start, length) of the run still open after this chunk."""
    v = chunk.vts
    m = int(v.size)
    non_vt = np.flatnonzero(~v)
    if non_vt.size == 0:
        if open_state is not None:
            return (open_state[0], open_state[1] + m)
        return (chunk.lo, m)
    trailing = m - 1 - int(non_vt[-1])
    if trailing == 0:
        return None
    return (chunk.hi - trailing + 1, trailing)


def scan(
    lo: int,
    hi: int,
    emit: Callable[[VtRecord], None] | None = None,
    *,
    min_run_len: int | None = 1,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    checkpoint_path: str | os.PathLike[str] | None = None,
) -> ScanSummary:
    """Classify every index in [lo, hi], ascending.

    ``emit`` receives one :class:`VtRecord` per index, in order; sink
    exceptions propagate.  ``min_run_len`` controls which maximal runs
    land in the summary (None disables run tracking entirely).  When
    ``checkpoint_path`` is given, a resumable checkpoint is written
    atomically after each chunk; hand it to :func:`resume_scan` to
    continue an interrupted scan.
    """
    _require_range(lo, hi)
    _require_threads(threads)
    _require_chunk(chunk_size)
    started = time.monotonic()
    vt_total, runs = _engine(
        lo=lo,
        hi=hi,
        start=lo,
        vt_base=0,
        seed_run=None,
        report_lo=lo,
        emit=emit,
        min_run_len=min_run_len,
        threads=threads,
        chunk_size=chunk_size,
        checkpoint_path=checkpoint_path,
    )
    return ScanSummary(
        lo=lo,
        hi=hi,
        scanned=hi - lo + 1,
        vt_count=vt_total,
        runs_found=runs,
        elapsed=time.monotonic() - started,
    )


def resume_scan(
    checkpoint: ScanCheckpoint,
    emit: Callable[[VtRecord], None] | None = None,
    *,
    min_run_len: int | None = 1,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    checkpoint_path: str | os.PathLike[str] | None = None,
) -> ScanSummary:
    """Continue a checkpointed scan through to its original hi.

    Emits records only for [checkpoint.next, hi]; records before the
    frontier were already emitted by the interrupted invocation, so the
    concatenation of both record streams equals an uninterrupted scan's
    stream exactly.  The returned summary covers the full original
    range, with ``vt_count`` accumulated across both invocations.  A run
    still open at the frontier is rejoined (its earlier popcounts are
    recomputed), so it is reported once, complete, with its true start;
    runs that closed before the checkpoint was taken were already
    reported by the interrupted invocation and do not reappear here.
    """
    _require_threads(threads)
    _require_chunk(chunk_size)
    started = time.monotonic()
    if checkpoint.next > checkpoint.hi:
        # nothing left to do; the summary reflects the finished range
        return ScanSummary(
            lo=checkpoint.lo,
            hi=checkpoint.hi,
            scanned=checkpoint.hi - checkpoint.lo + 1,
            vt_count=checkpoint.vt_count,
            runs_found=(),
            elapsed=time.monotonic() - started,
        )
    vt_total, runs = _engine(
        lo=checkpoint.lo,
        hi=checkpoint.hi,
        start=checkpoint.next,
        vt_base=checkpoint.vt_count,
        seed_run=checkpoint.open_run,
        report_lo=checkpoint.lo,
        emit=emit,
        min_run_len=min_run_len,
        threads=threads,
        chunk_size=chunk_size,
        checkpoint_path=checkpoint_path,
    )
    return ScanSummary(
        lo=checkpoint.lo,
        hi=checkpoint.hi,
        scanned=checkpoint.hi - checkpoint.lo + 1,
        vt_count=vt_total,
        runs_found=runs,
        elapsed=time.monotonic() - started,
    )


def merge_summaries(a: ScanSummary, b: ScanSummary, *, min_run_len: int = 1) -> ScanSummary:
    """Combine summaries of adjacent ranges into one.

    Requires b to start exactly where a ends.  Edge fragments flagged on
    the shared border are joined into a single run (or unflagged when
    the neighbor turns out not to continue them), then the joined result
    is refiltered by min_run_len, so merging partition scans reproduces
    the single-scan summary exactly.  Both inputs must have been
    produced with the same min_run_len passed here.
    """
    if b.lo != a.hi + 1:
        raise ParameterError(
            f"summaries are not adjacent: [{a.lo}, {a.hi}] then [{b.lo}, {b.hi}]"
        )
    runs_a = list(a.runs_found)
    runs_b = list(b.runs_found)
    a_frag = None
    if runs_a and runs_a[-1].truncated_right and runs_a[-1].stop == b.lo:
        a_frag = runs_a.pop()
    b_frag = None
    if runs_b and runs_b[0].truncated_left and runs_b[0].start == b.lo:
        b_frag = runs_b.pop(0)
    joined: list[Run] = []
    if a_frag is not None and b_frag is not None:
        joined = [
            Run(
                a_frag.start,
                a_frag.length + b_frag.length,
                a_frag.popcounts + b_frag.popcounts,
                a_frag.truncated_left,
                b_frag.truncated_right,
            )
        ]
    elif a_frag is not None:
        # b.lo was observed non-VT, so the fragment was maximal after all
        joined = [replace(a_frag, truncated_right=False)]
    elif b_frag is not None:
        joined = [replace(b_frag, truncated_left=False)]
    merged = runs_a + joined + runs_b
    kept = tuple(
        r
        for r in merged
        if r.length >= min_run_len or r.truncated_left or r.truncated_right
    )
    return ScanSummary(
        lo=a.lo,
        hi=b.hi,
        scanned=a.scanned + b.scanned,
        vt_count=a.vt_count + b.vt_count,
        runs_found=kept,
        elapsed=a.elapsed + b.elapsed,
    )


def find_runs(lo: int, hi: int, min_len: int, *, threads: int = 1) -> list[Run]:
    """All maximal runs of length >= min_len inside [lo, hi].

    Runs touching a range edge are included (when long enough) with the
    corresponding truncation flag set, since their full extent may
    continue outside the range.
    """
    if min_len < 1:
        raise ParameterError(f"min_len must be >= 1, got {min_len}")
    summary = scan(lo, hi, min_run_len=min_len, threads=threads)
    return [r for r in summary.runs_found if r.length >= min_len]


def find_twins(lo: int, hi: int, *, threads: int = 1) -> list[Run]:
    """Runs of length >= 2: adjacent very triangular pairs and longer."""
    return find_runs(lo, hi, 2, threads=threads)


def sigma_enumerate(count: int) -> list[int]:
    """The first `count` very triangular indexes, ascending."""
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    found: list[int] = []
    lo = 1
    size = 1 << 12
    while len(found) < count:
        hi = lo + size - 1
        for chunk in _iter_chunks(lo, hi):
            hits = np.flatnonzero(chunk.vts)
            found.extend(int(i) + chunk.lo for i in hits)
        lo = hi + 1
        size = min(size * 2, DEFAULT_CHUNK)
    return found[:count]


def count_vt(lo: int, hi: int, *, threads: int = 1) -> int:
    """Number of very triangular indexes in [lo, hi]."""
    _require_range(lo, hi)
    _require_threads(threads)
    return sum(
        chunk.vt_count for chunk in _iter_chunks(lo, hi, threads=threads)
    )


def vt_flags(lo: int, hi: int) -> np.ndarray:
    """Boolean mask over [lo, hi]: element i classifies index lo + i."""
    _require_range(lo, hi)
    return np.concatenate([chunk.vts for chunk in _iter_chunks(lo, hi)])


# ---------------------------------------------------------------------------
# Byte streams


_CSV_HEADER = b"n,t,pc,vt\n"


def format_block(chunk_rows: tuple[list[int], list[int], list[int], list[bool]], fmt: str) -> bytes:
    """Serialize classified rows to the byte-exact jsonl or csv body."""
    ns, ts, pcs, vts = chunk_rows
    if fmt == "jsonl":
        lines = [
            f'{{"n":{n},"t":"{t}","pc":{p},"vt":{"true" if v else "false"}}}\n'
            for n, t, p, v in zip(ns, ts, pcs, vts)
        ]
    elif fmt == "csv":
        lines = [
            f"{n},{t},{p},{'true' if v else 'false'}\n"
            for n, t, p, v in zip(ns, ts, pcs, vts)
        ]
    else:
        raise ParameterError(f"unsupported format {fmt!r} (expected jsonl or csv)")
    return "".join(lines).encode("ascii")


@dataclass(frozen=True)
class StreamBlock:
    """One formatted chunk plus the checkpoint state valid after it.

    Write ``payload`` first, then persist ``checkpoint``: a crash
    between the two re-emits at most nothing (the checkpoint still
    points at the block just written), never skips records.
    """

    payload: bytes
    checkpoint: ScanCheckpoint


def stream_scan(
    lo: int,
    hi: int,
    fmt: str = "jsonl",
    *,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    resume: ScanCheckpoint | None = None,
) -> Iterator[StreamBlock]:
    """Yield formatted blocks covering [lo, hi] in ascending order.

    Blocks are classified and formatted by up to `threads` workers but
    yielded strictly in range order, so the concatenated payloads are
    identical for any worker count.  With ``resume``, emission continues
    from resume.next and the csv header is suppressed (the interrupted
    stream already wrote it); concatenating the two outputs reproduces
    an uninterrupted run byte for byte.
    """
    _require_range(lo, hi)
    _require_threads(threads)
    _require_chunk(chunk_size)
    if fmt not in ("jsonl", "csv"):
        raise ParameterError(f"unsupported format {fmt!r} (expected jsonl or csv)")
    if resume is not None:
        if (resume.lo, resume.hi) != (lo, hi):
            raise CheckpointStateError(
                f"checkpoint covers [{resume.lo}, {resume.hi}] "
                f"but the requested range is [{lo}, {hi}]"
            )
        start = resume.next
        vt_total = resume.vt_count
        open_state = resume.open_run
    else:
        start = lo
        vt_total = 0
        open_state = None
    if start > hi:
        return

    def job(a: int, b: int) -> tuple[_Chunk, bytes]:
        chunk = _classify(a, b)
        return chunk, format_block(chunk.rows(), fmt)

    first = True
    for chunk, payload in _ordered_map(job, _chunk_bounds(start, hi, chunk_size), threads):
        if first and fmt == "csv" and resume is None:
            payload = _CSV_HEADER + payload
        first = False
        vt_total += chunk.vt_count
        open_state = _advance_open_run(open_state, chunk)
        yield StreamBlock(
            payload=payload,
            checkpoint=ScanCheckpoint(
                format_version=CHECKPOINT_VERSION,
                lo=lo,
                hi=hi,
                next=chunk.hi + 1,
                vt_count=vt_total,
                open_run=open_state,
                current_t=chunk.hi * (chunk.hi + 1) // 2,
            ),
        )


def _require_range(lo: int, hi: int) -> None:
    if not 1 <= lo <= hi:
        raise ParameterError(f"range must satisfy 1 <= lo <= hi, got [{lo}, {hi}]")


def _require_threads(threads: int) -> None:
    if threads < 1:
        raise ParameterError(f"threads must be >= 1, got {threads}")


def _require_chunk(chunk_size: int) -> None:
    if chunk_size < 1:
        raise ParameterError(f"chunk_size must be >= 1, got {chunk_size}")
