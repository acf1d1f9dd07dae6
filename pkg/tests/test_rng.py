import numpy as np

from bvrshotlab.rng import derive_seed, make_generator


def test_same_inputs_same_seed():
    assert derive_seed(42, "sim", 0, 0) == derive_seed(42, "sim", 0, 0)


def test_distinct_tags_distinct_seeds():
    assert derive_seed(42, "sim", 0, 0) != derive_seed(42, "sim", 0, 1)
    assert derive_seed(42, "sim", 0) != derive_seed(42, "split", 0)
    assert derive_seed(1, "a") != derive_seed(2, "a")


def test_collision_scan_over_sequential_tags():
    seeds = {derive_seed(7, "scan", i) for i in range(1_000_000)}
    assert len(seeds) == 1_000_000


def test_int_str_tags_do_not_alias():
    assert derive_seed(0, 1) != derive_seed(0, "1")
    assert derive_seed(0, True) != derive_seed(0, 1)


def test_generator_streams_reproducible():
    a = make_generator(9, "x").random(5)
    b = make_generator(9, "x").random(5)
    assert np.array_equal(a, b)
    c = make_generator(9, "y").random(5)
    assert not np.array_equal(a, c)
