import numpy as np
import pytest

from thermobit.streams import make_stream


def test_same_key_reproduces_sequence():
    a = make_stream(42, 0).standard_normal(1000)
    b = make_stream(42, 0).standard_normal(1000)
    np.testing.assert_array_equal(a, b)


def test_different_streams_are_uncorrelated():
    a = make_stream(42, 0).standard_normal(10_000)
    b = make_stream(42, 1).standard_normal(10_000)
    rho = np.corrcoef(a, b)[0, 1]
    assert abs(rho) < 0.05
    assert not np.array_equal(a, b)


def test_different_seeds_differ():
    a = make_stream(1, 0).standard_normal(100)
    b = make_stream(2, 0).standard_normal(100)
    assert not np.array_equal(a, b)


def test_output_independent_of_consumption_pattern():
    # Drawing in chunks must give the same sequence as one big draw.
    one_shot = make_stream(42, 7).standard_normal(300)
    chunked = make_stream(42, 7)
    parts = [chunked.standard_normal(100) for _ in range(3)]
    np.testing.assert_array_equal(one_shot, np.concatenate(parts))


@pytest.mark.parametrize("seed,index", [(-1, 0), (0, -1), (2**64, 0), (0, 2**64)])
def test_key_range_validated(seed, index):
    with pytest.raises(ValueError):
        make_stream(seed, index)
