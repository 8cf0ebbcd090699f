"""Range scanning: chunking, tiers, runs, checkpoints, byte streams."""
import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vtnum import (
    FAST_INDEX_LIMIT,
    CheckpointCorruptError,
    CheckpointStateError,
    CheckpointVersionError,
    ParameterError,
    Run,
    ScanCheckpoint,
    checkpoint_resume,
    checkpoint_save,
    classify_index,
    count_vt,
    find_runs,
    find_twins,
    format_block,
    merge_summaries,
    resume_scan,
    scan,
    sigma_enumerate,
    stream_scan,
    vt_flags,
)


class TestScanBasics:
    def test_counts_first_21(self):
        summary = scan(1, 21)
        assert summary.vt_count == 5
        assert summary.scanned == 21
        assert summary.range == (1, 21)

    def test_emits_every_record_in_order(self, ref):
        records = []
        scan(1, 200, records.append)
        assert [r.n for r in records] == list(range(1, 201))
        for r in records:
            assert r.t == ref.triangular(r.n)
            assert r.popcount == ref.popcount(r.t)
            assert r.is_vt == ref.is_vt_index(r.n)

    def test_single_index_range(self):
        summary = scan(5, 5)
        assert summary.scanned == 1
        assert summary.vt_count == 0

    def test_range_not_anchored_at_one(self, ref):
        summary = scan(500, 700)
        assert summary.vt_count == len(ref.vt_indexes(500, 700))

    @pytest.mark.parametrize("lo,hi", [(0, 5), (5, 4), (-3, -1)])
    def test_rejects_bad_range(self, lo, hi):
        with pytest.raises(ParameterError):
            scan(lo, hi)

    def test_rejects_bad_threads_and_chunks(self):
        with pytest.raises(ParameterError):
            scan(1, 10, threads=0)
        with pytest.raises(ParameterError):
            scan(1, 10, chunk_size=0)

    def test_chunk_size_does_not_change_result(self):
        baseline = scan(1, 3000)
        for size in (1, 7, 64, 997, 3000, 10**6):
            assert scan(1, 3000, chunk_size=size) == baseline

    def test_threads_do_not_change_result(self):
        baseline = scan(1, 5000, chunk_size=256)
        for threads in (2, 4, 8):
            assert scan(1, 5000, chunk_size=256, threads=threads) == baseline

    def test_run_tracking_can_be_disabled(self):
        assert scan(1, 100, min_run_len=None).runs_found == ()

    @settings(deadline=None, max_examples=25)
    @given(
        lo=st.integers(min_value=1, max_value=4000),
        width=st.integers(min_value=0, max_value=600),
        chunk=st.integers(min_value=1, max_value=300),
    )
    def test_count_matches_reference_on_random_ranges(self, lo, width, chunk):
        hi = lo + width
        summary = scan(lo, hi, chunk_size=chunk)
        expected = sum(
            1 for n in range(lo, hi + 1)
            if bin(n * (n + 1) // 2).count("1") in (1, 3, 6, 10, 15, 21, 28)
        )
        assert summary.vt_count == expected


class TestClassifyIndex:
    def test_examples(self):
        rec = classify_index(7)
        assert (rec.n, rec.t, rec.popcount, rec.is_vt) == (7, 28, 3, True)
        rec = classify_index(5)
        assert (rec.n, rec.t, rec.popcount, rec.is_vt) == (5, 15, 4, False)

    def test_rejects_bad_index(self):
        with pytest.raises(ParameterError):
            classify_index(0)

    def test_arbitrary_precision(self):
        n = 10**25 + 11
        rec = classify_index(n)
        assert rec.t == n * (n + 1) // 2
        assert rec.popcount == bin(rec.t).count("1")


class TestTierBoundary:
    def test_straddling_range_matches_scalar_path(self):
        lo, hi = FAST_INDEX_LIMIT - 3, FAST_INDEX_LIMIT + 3
        records = []
        scan(lo, hi, records.append)
        assert records == [classify_index(n) for n in range(lo, hi + 1)]

    def test_straddling_with_tiny_chunks(self):
        lo, hi = FAST_INDEX_LIMIT - 5, FAST_INDEX_LIMIT + 5
        assert scan(lo, hi, chunk_size=3) == scan(lo, hi)

    def test_power_index_at_tier_edge(self):
        # t_(2^32) = 2^63 + 2^31: the first index classified by the big tier
        rec = classify_index(FAST_INDEX_LIMIT + 1)
        assert rec.t == 2**63 + 2**31
        assert rec.popcount == 2
        assert not rec.is_vt

    @pytest.mark.parametrize("n", [10**10, 10**15, 10**18])
    def test_big_tier_agrees_with_reference(self, n, ref):
        records = []
        scan(n, n + 3, records.append)
        for rec in records:
            assert rec.t == ref.triangular(rec.n)
            assert rec.popcount == ref.popcount(rec.t)


class TestRuns:
    def test_known_runs_up_to_1000(self):
        got = [(r.start, r.length) for r in find_runs(1, 1000, 3)]
        assert got == [(541, 3), (581, 3), (796, 3), (858, 4), (885, 3), (934, 3)]

    def test_known_runs_up_to_2000(self):
        got = [(r.start, r.length) for r in find_runs(1, 2000, 4)]
        assert got == [(858, 4), (1376, 5), (1702, 4), (1775, 4), (1857, 4)]

    def test_longest_known_run(self):
        runs = find_runs(1, 40000, 6)
        assert [(r.start, r.length) for r in runs] == [(30301, 6)]
        assert runs[0].popcounts == (15, 15, 15, 15, 15, 21)

    def test_no_long_runs_in_tiny_range(self):
        assert find_runs(1, 5, 2) == []

    def test_popcounts_recorded_per_member(self):
        (run,) = find_runs(858, 861, 4)
        assert run.popcounts == (15, 10, 10, 10)

    def test_matches_reference_enumeration(self, ref):
        got = [
            (r.start, r.length)
            for r in find_runs(1, 3000, 1)
            if not r.truncated_right
        ]
        assert got == ref.runs(1, 3000, 1)

    def test_maximality(self, ref):
        for run in find_runs(700, 2500, 1):
            for n in range(run.start, run.stop):
                assert ref.is_vt_index(n)
            if not run.truncated_left:
                assert run.start == 1 or not ref.is_vt_index(run.start - 1)
            if not run.truncated_right:
                assert not ref.is_vt_index(run.stop)

    def test_edge_truncation_flags(self):
        (run,) = scan(42, 43).runs_found
        assert run == Run(42, 2, (6, 6), truncated_left=True, truncated_right=True)
        (run,) = scan(580, 584).runs_found
        assert run == Run(581, 3, (10, 10, 10))
        # index 1 has no left neighbor, so a run starting there is complete
        first = scan(1, 30).runs_found[0]
        assert first.start == 1 and not first.truncated_left

    def test_runs_survive_chunk_boundaries(self):
        baseline = find_runs(1, 2000, 3)
        for size in (1, 2, 5, 64, 581, 1999):
            assert [
                (r.start, r.length)
                for r in scan(1, 2000, min_run_len=3, chunk_size=size).runs_found
                if r.length >= 3
            ] == [(r.start, r.length) for r in baseline]

    def test_min_len_filter(self):
        lengths = {r.length for r in find_runs(1, 2000, 2)}
        assert min(lengths) >= 2
        assert len(find_runs(1, 2000, 2)) > len(find_runs(1, 2000, 4))

    def test_rejects_bad_min_len(self):
        with pytest.raises(ParameterError):
            find_runs(1, 100, 0)


class TestTwins:
    def test_first_twin(self):
        got = find_twins(1, 10)
        assert [(r.start, r.length) for r in got] == [(6, 2)]

    def test_twin_at_42(self):
        (run,) = find_twins(40, 50)
        assert (run.start, run.length) == (42, 2)
        assert run.popcounts == (6, 6)

    def test_empty_window(self):
        assert find_twins(8, 18) == []


class TestMergeSummaries:
    def test_partition_reproduces_single_scan(self):
        whole = scan(1, 1500)
        a = scan(1, 700)
        b = scan(701, 1500)
        assert merge_summaries(a, b) == whole

    def test_split_inside_a_run(self):
        # 581..583 are consecutive VT indexes; cut between them
        whole = scan(1, 1000)
        for cut in (581, 582):
            merged = merge_summaries(scan(1, cut), scan(cut + 1, 1000))
            assert merged == whole

    def test_split_with_min_run_len(self):
        whole = scan(1, 1000, min_run_len=3)
        merged = merge_summaries(
            scan(1, 582, min_run_len=3),
            scan(583, 1000, min_run_len=3),
            min_run_len=3,
        )
        assert merged == whole

    def test_three_way_partition(self):
        whole = scan(1, 2000)
        merged = merge_summaries(
            merge_summaries(scan(1, 859), scan(860, 1703)), scan(1704, 2000)
        )
        assert merged == whole

    def test_rejects_non_adjacent(self):
        with pytest.raises(ParameterError):
            merge_summaries(scan(1, 100), scan(102, 200))
        with pytest.raises(ParameterError):
            merge_summaries(scan(1, 100), scan(100, 200))

    @settings(deadline=None, max_examples=20)
    @given(
        hi=st.integers(min_value=2, max_value=1200),
        frac=st.floats(min_value=0.01, max_value=0.99),
    )
    def test_any_cut_point(self, hi, frac):
        cut = max(1, min(hi - 1, int(hi * frac)))
        assert merge_summaries(scan(1, cut), scan(cut + 1, hi)) == scan(1, hi)


class TestSigma:
    def test_first_seven(self):
        assert sigma_enumerate(7) == [1, 6, 7, 19, 21, 23, 27]

    def test_matches_reference(self, ref):
        want = ref.vt_indexes(1, 40000)[:500]
        assert sigma_enumerate(500) == want

    def test_rejects_nonpositive(self):
        with pytest.raises(ParameterError):
            sigma_enumerate(0)


class TestCountAndFlags:
    def test_count_matches_scan(self):
        assert count_vt(1, 21) == 5
        assert count_vt(500, 700) == scan(500, 700).vt_count

    def test_flags_shape_and_pattern(self):
        flags = vt_flags(30300, 30308)
        assert flags.dtype == np.bool_
        assert flags.tolist() == [False, True, True, True, True, True, True, False, True]

    def test_flags_match_reference(self, ref):
        flags = vt_flags(1, 2000)
        assert flags.tolist() == [ref.is_vt_index(n) for n in range(1, 2001)]


class TestCheckpointFile:
    def _state(self, **kw):
        base = dict(
            format_version=1, lo=1, hi=100, next=8, vt_count=3,
            open_run=(6, 2), current_t=28,
        )
        base.update(kw)
        return ScanCheckpoint(**base)

    def test_round_trip(self, tmp_path):
        path = tmp_path / "cp.json"
        state = self._state()
        checkpoint_save(state, path)
        assert checkpoint_resume(path) == state

    def test_round_trip_without_open_run(self, tmp_path):
        path = tmp_path / "cp.json"
        state = self._state(next=6, vt_count=2, open_run=None, current_t=15)
        checkpoint_save(state, path)
        assert checkpoint_resume(path) == state

    def test_no_temp_file_left_behind(self, tmp_path):
        path = tmp_path / "cp.json"
        checkpoint_save(self._state(), path)
        assert [p.name for p in tmp_path.iterdir()] == ["cp.json"]

    def test_big_current_t_survives_json(self, tmp_path):
        # t at 10^18 overflows a double; the string field must preserve it
        n = 10**18
        state = ScanCheckpoint(1, 1, n, n + 1, 7, None, n * (n + 1) // 2)
        path = tmp_path / "cp.json"
        checkpoint_save(state, path)
        assert checkpoint_resume(path).current_t == n * (n + 1) // 2

    def test_corrupt_json(self, tmp_path):
        path = tmp_path / "cp.json"
        path.write_text('{"format_version": 1, ')
        with pytest.raises(CheckpointCorruptError):
            checkpoint_resume(path)

    def test_non_object_payload(self, tmp_path):
        path = tmp_path / "cp.json"
        path.write_text("[1, 2, 3]")
        with pytest.raises(CheckpointCorruptError):
            checkpoint_resume(path)

    def test_missing_version(self, tmp_path):
        path = tmp_path / "cp.json"
        path.write_text('{"lo": 1}')
        with pytest.raises(CheckpointCorruptError):
            checkpoint_resume(path)

    def test_unsupported_version(self, tmp_path):
        path = tmp_path / "cp.json"
        checkpoint_save(self._state(format_version=2), path)
        with pytest.raises(CheckpointVersionError):
            checkpoint_resume(path)

    def test_wrong_field_type(self, tmp_path):
        path = tmp_path / "cp.json"
        path.write_text(
            '{"format_version": 1, "lo": 1, "hi": 100, "next": "8", '
            '"vt_count": 3, "open_run": null, "current_t": "28"}'
        )
        with pytest.raises(CheckpointCorruptError):
            checkpoint_resume(path)

    def test_bool_is_not_an_int(self, tmp_path):
        path = tmp_path / "cp.json"
        path.write_text(
            '{"format_version": 1, "lo": true, "hi": 100, "next": 8, '
            '"vt_count": 3, "open_run": null, "current_t": "28"}'
        )
        with pytest.raises(CheckpointCorruptError):
            checkpoint_resume(path)

    def test_malformed_current_t(self, tmp_path):
        path = tmp_path / "cp.json"
        path.write_text(
            '{"format_version": 1, "lo": 1, "hi": 100, "next": 8, '
            '"vt_count": 3, "open_run": null, "current_t": "28x"}'
        )
        with pytest.raises(CheckpointCorruptError):
            checkpoint_resume(path)

    def test_frontier_outside_range(self, tmp_path):
        path = tmp_path / "cp.json"
        checkpoint_save(self._state(next=102, open_run=None, current_t=101 * 102 // 2), path)
        with pytest.raises(CheckpointStateError):
            checkpoint_resume(path)

    def test_vt_count_exceeds_scanned(self, tmp_path):
        path = tmp_path / "cp.json"
        checkpoint_save(self._state(vt_count=50, open_run=None), path)
        with pytest.raises(CheckpointStateError):
            checkpoint_resume(path)

    def test_open_run_not_at_frontier(self, tmp_path):
        path = tmp_path / "cp.json"
        checkpoint_save(self._state(open_run=(5, 2)), path)
        with pytest.raises(CheckpointStateError):
            checkpoint_resume(path)

    def test_accumulator_mismatch(self, tmp_path):
        path = tmp_path / "cp.json"
        checkpoint_save(self._state(current_t=29), path)
        with pytest.raises(CheckpointStateError):
            checkpoint_resume(path)


class TestResume:
    def test_scan_writes_checkpoint(self, tmp_path):
        path = tmp_path / "cp.json"
        scan(1, 50, chunk_size=7, checkpoint_path=path)
        state = checkpoint_resume(path)
        assert state.next == 51
        assert state.vt_count == 12

    def test_record_streams_concatenate(self):
        blocks = list(stream_scan(1, 200, chunk_size=17))
        mid = blocks[4].checkpoint
        early = []
        scan(1, mid.next - 1, early.append, chunk_size=17)
        late = []
        resume_scan(mid, late.append, chunk_size=31)
        whole = []
        scan(1, 200, whole.append)
        assert early + late == whole

    def test_summary_equals_one_shot_when_nothing_closed(self):
        # frontier right after index 1: no run has closed yet, so the
        # resumed summary matches the uninterrupted one exactly
        state = ScanCheckpoint(1, 1, 100, 2, 1, (1, 1), 1)
        assert resume_scan(state) == scan(1, 100)

    def test_straddling_run_is_rejoined(self):
        blocks = list(stream_scan(1, 50, chunk_size=7))
        state = blocks[0].checkpoint
        assert state.open_run == (6, 2)
        rejoined = [r for r in resume_scan(state).runs_found if r.start == 6]
        assert rejoined == [Run(6, 2, (3, 3))]

    def test_only_pre_frontier_runs_are_omitted(self):
        blocks = list(stream_scan(1, 50, chunk_size=7))
        state = blocks[0].checkpoint
        resumed = {(r.start, r.length) for r in resume_scan(state).runs_found}
        whole = {(r.start, r.length) for r in scan(1, 50).runs_found}
        assert whole - resumed == {(1, 1)}  # closed before the frontier

    def test_finished_checkpoint_yields_summary_only(self):
        state = ScanCheckpoint(1, 1, 21, 22, 5, None, 231)
        summary = resume_scan(state)
        assert summary.vt_count == 5
        assert summary.scanned == 21
        assert summary.runs_found == ()


class TestByteStreams:
    def test_jsonl_is_byte_exact(self):
        block = format_block(([6], [21], [3], [True]), "jsonl")
        assert block == b'{"n":6,"t":"21","pc":3,"vt":true}\n'

    def test_csv_is_byte_exact(self):
        block = format_block(([5], [15], [4], [False]), "csv")
        assert block == b"5,15,4,false\n"

    def test_rejects_unknown_format(self):
        with pytest.raises(ParameterError):
            format_block(([1], [1], [1], [True]), "tsv")
        with pytest.raises(ParameterError):
            list(stream_scan(1, 5, "xml"))

    def test_stream_jsonl_literal(self):
        got = b"".join(b.payload for b in stream_scan(1, 3))
        assert got == (
            b'{"n":1,"t":"1","pc":1,"vt":true}\n'
            b'{"n":2,"t":"3","pc":2,"vt":false}\n'
            b'{"n":3,"t":"6","pc":2,"vt":false}\n'
        )

    def test_stream_csv_literal(self):
        got = b"".join(b.payload for b in stream_scan(1, 5, "csv"))
        assert got == (
            b"n,t,pc,vt\n"
            b"1,1,1,true\n"
            b"2,3,2,false\n"
            b"3,6,2,false\n"
            b"4,10,2,false\n"
            b"5,15,4,false\n"
        )

    def test_jsonl_lines_parse_with_string_t(self):
        for block in stream_scan(1, 40, chunk_size=16):
            for line in block.payload.splitlines():
                row = json.loads(line)
                assert isinstance(row["n"], int)
                assert isinstance(row["t"], str)
                assert isinstance(row["pc"], int)
                assert isinstance(row["vt"], bool)
                assert int(row["t"]) == row["n"] * (row["n"] + 1) // 2

    def test_chunking_leaves_bytes_unchanged(self):
        baseline = b"".join(b.payload for b in stream_scan(1, 500))
        for size in (1, 3, 77, 499):
            got = b"".join(b.payload for b in stream_scan(1, 500, chunk_size=size))
            assert got == baseline

    def test_threads_leave_bytes_unchanged(self):
        baseline = b"".join(b.payload for b in stream_scan(1, 3000, chunk_size=128))
        for threads in (2, 4, 8):
            got = b"".join(
                b.payload
                for b in stream_scan(1, 3000, chunk_size=128, threads=threads)
            )
            assert got == baseline

    def test_block_checkpoints_advance_monotonically(self):
        last = 0
        for block in stream_scan(1, 100, chunk_size=9):
            state = block.checkpoint
            assert state.next > last
            assert state.current_t == (state.next - 1) * state.next // 2
            last = state.next
        assert last == 101

    def test_resume_requires_matching_range(self):
        blocks = list(stream_scan(1, 50, chunk_size=7))
        with pytest.raises(CheckpointStateError):
            list(stream_scan(1, 60, resume=blocks[0].checkpoint))

    def test_resumed_stream_completes_the_bytes(self):
        for fmt in ("jsonl", "csv"):
            full = b"".join(b.payload for b in stream_scan(1, 120, fmt))
            blocks = list(stream_scan(1, 120, fmt, chunk_size=13))
            for i in (0, 3, len(blocks) - 1):
                prefix = b"".join(b.payload for b in blocks[: i + 1])
                rest = b"".join(
                    b.payload
                    for b in stream_scan(
                        1, 120, fmt, chunk_size=29, resume=blocks[i].checkpoint
                    )
                )
                assert prefix + rest == full

    def test_csv_header_appears_exactly_once_across_resume(self):
        blocks = list(stream_scan(1, 60, "csv", chunk_size=11))
        rest = b"".join(
            b.payload
            for b in stream_scan(1, 60, "csv", resume=blocks[1].checkpoint)
        )
        combined = blocks[0].payload + blocks[1].payload + rest
        assert combined.count(b"n,t,pc,vt\n") == 1


class TestSummaryEquality:
    def test_elapsed_is_informational(self):
        a = scan(1, 100)
        b = dataclasses.replace(a, elapsed=a.elapsed + 99.0)
        assert a == b
