import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from toricdeform.errors import InvalidFanError
from toricdeform.services.fan_core import validate
from toricdeform.services.fan_generator import (
    SEEDS,
    hirzebruch,
    obstructed_threefold,
    product_of_lines,
    random_smooth_fan,
    random_unimodular,
    relabel,
    star_subdivide,
    unimodular_transform,
)


def assert_smooth_complete(fan):
    flags = validate(fan).fan
    assert flags.is_simplicial and flags.is_smooth and flags.is_complete


@pytest.mark.parametrize("rank", sorted(SEEDS))
def test_seed_fans_are_smooth_and_complete(rank):
    for seed in SEEDS[rank]:
        fan = seed()
        assert fan.rank == rank
        assert_smooth_complete(fan)


def test_named_fans():
    assert_smooth_complete(obstructed_threefold())
    assert_smooth_complete(hirzebruch(5))
    cube = product_of_lines(3)
    assert len(cube.rays) == 6 and len(cube.max_cones) == 8


def test_star_subdivision_of_a_plane_cone():
    fan = star_subdivide(product_of_lines(2), (0, 2))
    assert fan.rays[-1] == (1, 1)
    assert len(fan.max_cones) == 5
    assert_smooth_complete(fan)


def test_star_subdivision_rejects_non_faces():
    with pytest.raises(InvalidFanError):
        star_subdivide(product_of_lines(2), (0, 1))
    with pytest.raises(InvalidFanError):
        star_subdivide(product_of_lines(2), (0,))


def test_unimodular_transform_rejects_other_matrices():
    with pytest.raises(InvalidFanError):
        unimodular_transform(hirzebruch(1), [[2, 0], [0, 1]])


def test_relabel_moves_rays_and_cones():
    fan = hirzebruch(2)
    moved = relabel(fan, [1, 2, 3, 0], [3, 2, 1, 0])
    assert moved.rays[1] == fan.rays[0]
    assert moved.max_cones[3].ray_indices == (1, 2)
    assert_smooth_complete(moved)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]), st.integers(0, 3))
def test_random_fans_are_smooth_and_complete(seed, rank, steps):
    rng = np.random.default_rng(seed)
    fan = random_smooth_fan(rng, rank, steps)
    assert_smooth_complete(fan)
    moved = unimodular_transform(fan, random_unimodular(rng, rank))
    assert_smooth_complete(moved)
