import pytest

from spectral_perturb.rng import SplitMix64, mix64, substream


def test_reference_stream():
    r = SplitMix64(0)
    assert [r.next_u64() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    r = SplitMix64(1234567)
    assert r.next_u64() == 6457827717110365317


def test_frozen_derived_draws():
    r = SplitMix64(42)
    assert r.uniform() == 0.7415648787718233
    assert r.normal() == -0.10551648193541083
    assert r.normal() == 0.580826744748604
    assert r.below(10) == 3
    assert r.partial_shuffle(10, 4) == [0, 8, 3, 1]
    assert substream(42, 0).partial_shuffle(40, 5) == [13, 38, 20, 5, 28]


def test_uniform_range():
    r = SplitMix64(7)
    vals = [r.uniform() for _ in range(2000)]
    assert all(0.0 <= v < 1.0 for v in vals)
    assert 0.45 < sum(vals) / len(vals) < 0.55


def test_partial_shuffle_distinct():
    idx = SplitMix64(3).partial_shuffle(40, 40)
    assert sorted(idx) == list(range(40))


def test_substreams_differ():
    assert substream(5, 0).next_u64() != substream(5, 1).next_u64()
    assert substream(5, 3).next_u64() == substream(5, 3).next_u64()


def test_seed_range():
    with pytest.raises(ValueError):
        SplitMix64(-1)
    with pytest.raises(ValueError):
        SplitMix64(2**64)
    assert mix64(0) == 0
