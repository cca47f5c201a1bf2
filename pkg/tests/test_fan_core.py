import pytest

from toricdeform.errors import (
    DimensionMismatchError,
    InvalidFanError,
    UnsupportedFanError,
)
from toricdeform.services.fan_core import (
    Cone,
    common_cone,
    cones_meeting,
    make_fan,
    pairing,
    ray_label,
    require_supported,
    section_membership,
    validate,
)
from toricdeform.services.fan_generator import obstructed_threefold

from conftest import U, U_SUM


def test_threefold_is_smooth_and_complete():
    report = validate(obstructed_threefold())
    assert report.fan.is_simplicial
    assert report.fan.is_smooth
    assert report.fan.is_complete
    assert report.accepted
    assert all(abs(d) == 1 for d in report.determinants)
    assert report.messages == ()


def test_projective_space_flags(p3):
    assert p3.is_simplicial and p3.is_smooth and p3.is_complete


def test_deleting_a_cone_breaks_completeness():
    fan = obstructed_threefold()
    cones = [c.ray_indices for c in fan.max_cones if c.ray_indices != (0, 1, 3)]
    report = validate(make_fan(3, fan.rays, cones))
    assert report.fan.is_simplicial
    assert not report.fan.is_complete
    assert not report.accepted
    assert any("facet" in m for m in report.messages)


def test_non_simplicial_cone_is_flagged():
    fan = make_fan(2, [(1, 0), (1, 1), (0, 1), (-1, -1)], [(0, 1, 2), (2, 3), (0, 3)])
    report = validate(fan)
    assert report.fan.is_simplicial is False
    assert not report.accepted


def test_lower_dimensional_cone_is_unsupported():
    fan = make_fan(2, [(1, 0), (0, 1), (-1, -1)], [(0,), (1, 2)])
    with pytest.raises(UnsupportedFanError):
        validate(fan)


def test_overlapping_cones_are_invalid():
    fan = make_fan(2, [(1, 0), (0, 1), (1, 1), (-1, -1)], [(0, 1), (0, 2), (1, 3), (0, 3)])
    with pytest.raises(InvalidFanError):
        validate(fan)


@pytest.mark.parametrize("rank,rays,cones", [
    (0, [], []),
    (2, [(2, 0), (0, 1)], [(0, 1)]),
    (2, [(0, 0), (0, 1)], [(0, 1)]),
    (2, [(1, 0), (1, 0)], [(0, 1)]),
    (2, [(1, 0), (0, 1)], [(0, 2)]),
    (2, [(1, 0), (0, 1), (-1, -1)], [(0, 1)]),
    (2, [(1, 0), (0, 1)], [(0, 1), (1, 0)]),
    (2, [(1, 0), (0, 1, 1)], [(0, 1)]),
])
def test_make_fan_rejects_bad_structure(rank, rays, cones):
    with pytest.raises(InvalidFanError):
        make_fan(rank, rays, cones)


def test_pairing_values(threefold):
    assert pairing(threefold, 5, U) == -1
    assert pairing(threefold, 3, U_SUM) == -1
    with pytest.raises(DimensionMismatchError):
        pairing(threefold, 0, (1, 0))


def test_section_membership(threefold):
    assert not section_membership(threefold, 0, U, (0, 5, 6))
    assert section_membership(threefold, 0, U, (0,))
    assert section_membership(threefold, 0, U, ())


def test_common_cone(threefold):
    assert common_cone(threefold, {1, 3}) == Cone((1, 3))
    assert common_cone(threefold, {6, 7}) is None
    assert common_cone(threefold, set()) == Cone(())


def test_cones_meeting(threefold):
    assert cones_meeting(threefold, (6,)) == frozenset({1, 4, 8, 12})


def test_require_supported_rejects_incomplete_fans():
    fan = make_fan(2, [(1, 0), (0, 1), (-1, 0)], [(0, 1), (1, 2)])
    with pytest.raises(UnsupportedFanError):
        require_supported(fan)


def test_ray_label():
    assert ray_label(0) == "rho_1"
