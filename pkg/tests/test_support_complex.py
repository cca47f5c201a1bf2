from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from toricdeform.errors import ContractError
from toricdeform.services import support_complex
from toricdeform.services.degree_scan import degree_table
from toricdeform.services.support_complex import CechCocycle, permutation_sign

from conftest import U, U2, U_SUM


@pytest.fixture(scope="module")
def hexagon(threefold):
    return support_complex.build(threefold, 0, U_SUM)


def test_first_complex_has_two_components(threefold):
    complex = support_complex.build(threefold, 0, U)
    assert complex.vertices == (1, 2, 3, 4, 5)
    labeling = support_complex.components(complex)
    assert labeling.components == [(1, 2, 3, 4), (5,)]
    assert labeling.reduced_h0 == 1


def test_second_complex_is_two_points(threefold):
    complex = support_complex.build(threefold, 5, U2)
    assert complex.vertices == (6, 7)
    assert complex.edges == ()
    assert support_complex.components(complex).components == [(6,), (7,)]


def test_hexagon(hexagon):
    assert hexagon.vertices == (1, 2, 3, 5, 6, 7)
    assert len(hexagon.edges) == 6
    assert hexagon.triangles == ()
    assert support_complex.simplicial_h1_dim(hexagon) == 1
    assert support_complex.reduced_cohomology_dims(hexagon) == (0, 1)


def test_cover_complex_of_the_hexagon(hexagon):
    assert support_complex.closed_cover_complex(hexagon).dims() == (1, 1)


def test_cover_complex_counts_components(threefold):
    complex = support_complex.build(threefold, 0, U)
    assert support_complex.closed_cover_complex(complex).dims()[0] == 2


def test_empty_complex(p2):
    complex = support_complex.build(p2, 0, (-1, 0))
    assert complex.vertices == ()
    labeling = support_complex.components(complex)
    assert labeling.component_count == 0
    assert labeling.reduced_h0 == 0
    assert support_complex.simplicial_h1_dim(complex) == 0


def test_cover_and_simplicial_cohomology_agree(threefold, hirzebruch_fans):
    fans = [threefold] + list(hirzebruch_fans.values())
    for fan in fans:
        for candidate in degree_table(fan):
            complex = support_complex.build(fan, candidate.ray, candidate.u)
            h0, h1 = support_complex.closed_cover_complex(complex).dims()
            assert h0 == support_complex.components(complex).component_count
            assert h1 == support_complex.simplicial_h1_dim(complex)


def test_coboundaries_are_recognized(threefold):
    cech = support_complex.closed_cover_complex(support_complex.build(threefold, 0, U))
    start = CechCocycle(p=0, values={(c,): Fraction(c % 3) for (c,) in cech.basis0})
    cocycle = support_complex.apply_coboundary(cech, start)
    vanishes, primitive = support_complex.is_coboundary(cech, cocycle)
    assert vanishes
    assert support_complex.apply_coboundary(cech, primitive).values == cocycle.values


def test_non_cocycle_is_rejected(hexagon):
    cech = support_complex.closed_cover_complex(hexagon)
    with pytest.raises(ContractError, match="not a cocycle"):
        support_complex.is_coboundary(cech, CechCocycle(p=1, values={(0, 1): Fraction(1)}))


def test_support_outside_the_cover_is_rejected(hexagon):
    cech = support_complex.closed_cover_complex(hexagon)
    with pytest.raises(ContractError):
        support_complex.is_coboundary(cech, CechCocycle(p=1, values={(2, 4): Fraction(1)}))


def test_wrong_degree_is_rejected(hexagon):
    cech = support_complex.closed_cover_complex(hexagon)
    with pytest.raises(ContractError):
        support_complex.is_coboundary(cech, CechCocycle(p=0, values={}))


def test_cochain_values_are_alternating():
    cochain = CechCocycle(p=1, values={(0, 2): Fraction(3)})
    assert cochain.value((0, 2)) == 3
    assert cochain.value((2, 0)) == -3
    assert cochain.value((2, 2)) == 0
    assert (cochain + cochain.scaled(-1)).support() == []


def test_dump_lists_nonempty_pieces(hexagon):
    data = support_complex.dump(hexagon)
    assert data["ray_label"] == "rho_1"
    assert data["u"] == list(U_SUM)
    assert all(piece["piece"] for piece in data["cover"])


@given(st.permutations(range(5)))
def test_permutation_sign_is_multiplicative(perm):
    _, sign = permutation_sign(perm)
    _, inverse_sign = permutation_sign([perm.index(i) for i in range(5)])
    assert sign == inverse_sign
    swapped = list(perm)
    swapped[0], swapped[1] = swapped[1], swapped[0]
    assert permutation_sign(swapped)[1] == -sign


def test_permutation_sign_on_repeats():
    assert permutation_sign((1, 1, 2)) == ((1, 1, 2), 0)
    assert {permutation_sign(p)[1] for p in permutations(range(3))} == {1, -1}
