import numpy as np
import pytest

from thermobit.ensemble import EnsembleWorkerError, run_parallel_ensemble
from thermobit.streams import make_stream


def draw_one(stream):
    return float(stream.standard_normal())


def fail_at_index_three(stream):
    if stream.stream_index == 3:
        raise ValueError("boom")
    return 0.0


class TestRunParallelEnsemble:
    def test_single_worker_matches_direct_calls(self):
        got = run_parallel_ensemble(draw_one, 20, master_seed=60)
        want = [draw_one(make_stream(60, i)) for i in range(20)]
        assert got == want

    def test_worker_count_does_not_change_results(self):
        serial = run_parallel_ensemble(draw_one, 50, master_seed=61, worker_count=1)
        quad = run_parallel_ensemble(draw_one, 50, master_seed=61, worker_count=4)
        np.testing.assert_array_equal(serial, quad)

    def test_stream_offset_shifts_keys(self):
        shifted = run_parallel_ensemble(draw_one, 10, master_seed=62, stream_offset=100)
        want = [draw_one(make_stream(62, 100 + i)) for i in range(10)]
        assert shifted == want

    def test_failure_carries_stream_index(self):
        with pytest.raises(EnsembleWorkerError) as exc_info:
            run_parallel_ensemble(fail_at_index_three, 10, master_seed=63)
        assert exc_info.value.stream_index == 3

    def test_failure_propagates_from_worker_pool(self):
        with pytest.raises(EnsembleWorkerError):
            run_parallel_ensemble(fail_at_index_three, 10, master_seed=63, worker_count=2)

    def test_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            run_parallel_ensemble(draw_one, 0, master_seed=0)
        with pytest.raises(ValueError):
            run_parallel_ensemble(draw_one, 5, master_seed=0, worker_count=0)
