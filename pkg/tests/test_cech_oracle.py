from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from toricdeform.errors import ContractError
from toricdeform.services import cech_oracle, support_complex
from toricdeform.services.cup_product import bracket, Derivation
from toricdeform.services.fan_core import pairing, require_supported
from toricdeform.services.fan_generator import random_smooth_fan
from toricdeform.services.graded_tangent import ComponentClass, component_cochain, compute_table

from conftest import U, U2, U_SUM, Z, Z2

INDICES = list(range(4))


@pytest.fixture(scope="module")
def worked_args(threefold):
    f = component_cochain(threefold, 0, U, Z)
    f2 = component_cochain(threefold, 5, U2, Z2)
    return threefold, f, f2, 0, U, 5, U2


def test_first_order_dimension(threefold):
    assert cech_oracle.divisor_cohomology_dim(threefold, 0, U, 1) == 1


def test_obstruction_dimension(threefold):
    assert cech_oracle.divisor_cohomology_dim(threefold, 0, U_SUM, 2) == 1


def test_zero_degree(threefold):
    assert cech_oracle.divisor_cohomology_dim(threefold, 0, (0, 0, 0), 0) == 1
    assert cech_oracle.divisor_cohomology_dim(threefold, 0, (0, 0, 0), 1) == 0
    assert cech_oracle.divisor_cohomology_dim(threefold, 0, (0, 0, 0), 2) == 0


def test_unsupported_degree(threefold):
    with pytest.raises(ContractError):
        cech_oracle.divisor_cohomology_dim(threefold, 0, U, 3)


def test_coboundary_squares_to_zero(threefold):
    complex = cech_oracle.build_divisor_complex(threefold, 0, U_SUM, top=3)
    for p in range(2):
        if not complex.bases[p] or not complex.bases[p + 2]:
            continue
        product = complex.matrix(p + 1) * complex.matrix(p)
        assert product.to_Matrix().is_zero_matrix


def test_phi_on_a_single_value():
    result = cech_oracle.phi_antisymmetrize({(0, 1): Fraction(1)}, 1, [0, 1])
    assert result == {(0, 1): Fraction(1, 2)}


def test_phi_refuses_high_degrees():
    with pytest.raises(ContractError):
        cech_oracle.phi_antisymmetrize({(0, 1, 2, 3): Fraction(1)}, 3, INDICES)


def test_phi_on_derivation_values():
    value = Derivation.of(0, (-1, 0))
    result = cech_oracle.phi_antisymmetrize({(1, 0): value}, 1, [0, 1])
    assert result == {(0, 1): value.scaled(Fraction(-1, 2))}


alternating_one_cochains = st.dictionaries(
    st.sampled_from([(i, j) for i in INDICES for j in INDICES if i < j]),
    st.integers(-3, 3).map(Fraction).filter(bool),
)
singular_one_cochains = st.dictionaries(
    st.tuples(st.sampled_from(INDICES), st.sampled_from(INDICES)),
    st.integers(-3, 3).map(Fraction).filter(bool),
)


@settings(max_examples=50, deadline=None)
@given(alternating_one_cochains)
def test_phi_fixes_alternating_cochains(cochain):
    singular = cech_oracle.singular_extension(cochain, 1, INDICES)
    assert cech_oracle.phi_antisymmetrize(singular, 1, INDICES) == cochain


@settings(max_examples=50, deadline=None)
@given(singular_one_cochains)
def test_phi_commutes_with_the_coboundary(cochain):
    left = cech_oracle.alternating_coboundary(cech_oracle.phi_antisymmetrize(cochain, 1, INDICES), 1, INDICES)
    right = cech_oracle.phi_antisymmetrize(cech_oracle.singular_coboundary(cochain, 1, INDICES), 2, INDICES)
    assert left == right


def test_theta_routes_agree(worked_args):
    theta = cech_oracle.theta_cocycle(*worked_args)
    assert theta
    assert cech_oracle.theta_via_cup(*worked_args) == theta


def test_theta_values_are_multiples_of_the_bracket(worked_args):
    fan = worked_args[0]
    derivation = bracket(fan, Derivation.of(0, U), Derivation.of(5, U2))
    for value in cech_oracle.theta_cocycle(*worked_args).values():
        ((key, coefficient),) = value.terms
        assert derivation.terms[0][0] == key
        assert coefficient * 2 == int(coefficient * 2)


def test_kappa_pair(worked_args):
    pair = cech_oracle.kappa_pair(*worked_args)
    assert pair.degree == U_SUM
    # rho_1(u') = 0 kills kappa'
    assert pair.kappa2 == {}
    assert pair.kappa
    assert cech_oracle.kappa_regular(worked_args[0], pair)


def test_kappa_matches_theta(worked_args):
    assert cech_oracle.kappa_theta_matches(*worked_args)


def test_kappa_route_detects_the_obstruction(worked_args):
    assert not cech_oracle.kappa_route_vanishes(*worked_args)


def test_kappa_route_for_the_sum_of_components(threefold, worked_args):
    everything = ComponentClass(ray=0, u=U, coefficients=((Z, Fraction(1)), ((5,), Fraction(1))))
    args = list(worked_args)
    args[1] = everything.cochain(threefold)
    assert cech_oracle.kappa_route_vanishes(*args)


def test_kappa_route_needs_distinct_rays(threefold, worked_args):
    args = list(worked_args)
    args[5], args[6] = 0, U
    with pytest.raises(ContractError):
        cech_oracle.kappa_route_vanishes(*args)


def test_connecting_lift(worked_args):
    assert cech_oracle.connecting_lift_matches(*worked_args)


def test_connecting_lift_with_exchanged_inputs(worked_args):
    fan, f, f2, ray, u, ray2, u2 = worked_args
    assert cech_oracle.connecting_lift_matches(fan, f2, f, ray2, u2, ray, u)


def test_is_coboundary_rejects_unknown_tuples(threefold):
    complex = cech_oracle.build_divisor_complex(threefold, 0, U_SUM, top=2)
    # cones 0, 1 and 6 meet in rho_2, which is negative on u + u'
    missing = (0, 1, 6)
    assert missing not in complex.positions[2]
    with pytest.raises(ContractError):
        complex.is_coboundary(2, {missing: Fraction(1)})


alternating_two_cochains = st.dictionaries(
    st.sampled_from(list(combinations(INDICES, 3))),
    st.integers(-3, 3).map(Fraction).filter(bool),
)
zero_cochains = st.dictionaries(
    st.tuples(st.sampled_from(INDICES)),
    st.integers(-3, 3).map(Fraction).filter(bool),
)


@settings(max_examples=50, deadline=None)
@given(alternating_two_cochains)
def test_phi_fixes_alternating_two_cochains(cochain):
    singular = cech_oracle.singular_extension(cochain, 2, INDICES)
    assert cech_oracle.phi_antisymmetrize(singular, 2, INDICES) == cochain


@settings(max_examples=50, deadline=None)
@given(zero_cochains)
def test_phi_commutes_with_the_coboundary_in_degree_zero(cochain):
    left = cech_oracle.alternating_coboundary(cech_oracle.phi_antisymmetrize(cochain, 0, INDICES), 0, INDICES)
    right = cech_oracle.phi_antisymmetrize(cech_oracle.singular_coboundary(cochain, 0, INDICES), 1, INDICES)
    assert left == right


def random_fan(seed, rank, steps):
    return require_supported(random_smooth_fan(np.random.default_rng(seed), rank, steps))


def matrix_product_is_zero(left, right):
    return all(
        sum(a * right[k][j] for k, a in enumerate(row)) == 0
        for row in left for j in range(len(right[0]))
    )


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), rank=st.sampled_from([2, 3]), data=st.data())
def test_coboundaries_square_to_zero_on_random_fans(seed, rank, data):
    fan = random_fan(seed, rank, 3)
    ray = data.draw(st.integers(0, len(fan.rays) - 1))
    u = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=rank, max_size=rank)))

    scalar = support_complex.closed_cover_complex(support_complex.build(fan, ray, u))
    if scalar.d0 and scalar.d1:
        assert matrix_product_is_zero(scalar.d1, scalar.d0)

    divisor = cech_oracle.build_divisor_complex(fan, ray, u, top=3)
    for p in range(2):
        if divisor.bases[p] and divisor.bases[p + 1] and divisor.bases[p + 2]:
            assert (divisor.matrix(p + 1) * divisor.matrix(p)).to_Matrix().is_zero_matrix


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_kappa_vanishes_off_the_slice(seed):
    fan = random_fan(seed, 3, 4)
    entries = compute_table(fan).h1_entries()
    for e1, e2 in combinations(entries, 2):
        if e1.ray == e2.ray:
            continue
        degree = tuple(a + b for a, b in zip(e1.u, e2.u))
        for z in e1.components:
            for z2 in e2.components:
                f = component_cochain(fan, e1.ray, e1.u, z)
                f2 = component_cochain(fan, e2.ray, e2.u, z2)
                classes = cech_oracle.kappa_classes(fan, f, f2, e1.ray, e1.u, e2.ray, e2.u)
                for target, on_slice, vanishes in classes:
                    assert on_slice == (pairing(fan, target, degree) == -1)
                    if not on_slice:
                        assert vanishes


def test_kappa_classes_of_the_worked_pair(worked_args):
    assert cech_oracle.kappa_classes(*worked_args) == [(0, True, False)]
