import numpy as np
import pytest

from toricdeform.services.agreement import dimension_rows, off_slice_rows, route_rows, run_suite
from toricdeform.services.degree_scan import degree_table
from toricdeform.services.fan_core import require_supported
from toricdeform.services.fan_generator import random_smooth_fan
from toricdeform.services.graded_tangent import compute_table

from conftest import U, U2, U_SUM, load_supported_fixture

ROUTE_CHECKS = {"routes", "connecting_lift", "kappa_theta", "theta_routes", "kappa_off_slice"}


def failures(rows):
    return [r.to_dict() for r in rows if not r.passed]


@pytest.mark.parametrize("a", range(4))
def test_hirzebruch_suite(hirzebruch_fans, a):
    rows = run_suite(hirzebruch_fans[a])
    assert rows
    assert failures(rows) == []


@pytest.mark.parametrize("name", ["p3", "p1p1p1"])
def test_dimensions_on_rigid_threefolds(name):
    fan = load_supported_fixture(name)
    degrees = [(c.ray, c.u) for c in degree_table(fan)]
    rows = dimension_rows(fan, degrees) + off_slice_rows(fan)
    assert rows
    assert failures(rows) == []


def test_worked_degrees(threefold):
    rows = dimension_rows(threefold, [(0, U), (5, U2), (0, U_SUM)])
    assert len(rows) == 3
    assert failures(rows) == []


def test_off_slice_degrees(threefold):
    rows = off_slice_rows(threefold)
    assert rows
    assert failures(rows) == []


def test_routes_on_the_threefold(threefold):
    table = compute_table(threefold)
    rows = route_rows(threefold, table.h1_entries())
    checks = {r.check for r in rows}
    assert {"routes", "connecting_lift", "kappa_theta", "theta_routes"} <= checks
    assert checks <= ROUTE_CHECKS
    assert failures(rows) == []


@pytest.mark.slow
def test_full_suite_on_the_threefold(threefold):
    assert failures(run_suite(threefold)) == []


@pytest.mark.slow
def test_hundred_random_fans():
    rng = np.random.default_rng(0)
    compared = 0
    for i in range(100):
        fan = require_supported(random_smooth_fan(rng, 2 + i % 2, 4))
        rows = run_suite(fan)
        assert failures(rows) == []
        compared += sum(1 for r in rows if r.check in ROUTE_CHECKS)
    assert compared > 0
