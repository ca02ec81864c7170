import numpy as np
import pytest

from exorder import SampleStream


def test_replay_is_identical():
    a = SampleStream(42, 7)
    b = SampleStream(42, 7)
    assert np.array_equal(a.uniforms(1000), b.uniforms(1000))


def test_distinct_indices_are_distinct():
    a = SampleStream(42, 0).uniforms(100)
    b = SampleStream(42, 1).uniforms(100)
    assert not np.array_equal(a, b)


def test_distinct_master_seeds_are_distinct():
    a = SampleStream(1, 0).uniforms(100)
    b = SampleStream(2, 0).uniforms(100)
    assert not np.array_equal(a, b)


def test_uniform_range_and_shape():
    u = SampleStream(3).uniforms((50, 4))
    assert u.shape == (50, 4)
    assert np.all((u >= 0.0) & (u < 1.0))


def test_from_label_is_stable_and_separating():
    a = SampleStream.from_label(9, "alpha")
    b = SampleStream.from_label(9, "alpha")
    c = SampleStream.from_label(9, "beta")
    assert a.stream_index == b.stream_index
    assert a.stream_index != c.stream_index
    assert np.array_equal(a.uniforms(10), b.uniforms(10))


@pytest.mark.parametrize("bad", [-1, 2**64, 1.5, "7", True])
def test_invalid_seeds_rejected(bad):
    with pytest.raises((TypeError, ValueError)):
        SampleStream(bad)


def test_invalid_stream_index_rejected():
    with pytest.raises(ValueError):
        SampleStream(0, -3)
