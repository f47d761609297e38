import pytest

from invlat.catalog import get_entry
from invlat.cyclotomic import CycNum, exact_sign, zeta
from invlat.errors import CapExceededError, InvalidInputError
from invlat.groups import (
    character,
    character_norm,
    close_group,
    conj_transpose,
    find_reflections,
    group_from_json,
    group_to_json,
    hermitian_inner,
    invariant_hermitian,
    irreducibility_check,
    mat_identity,
    mat_mul,
)

ALL_GROUPS = ["S3-standard", "S4-standard", "WeylB2", "G4", "Q8", "C5-zeta5"]


def test_closure_orders(s3, s4, b2, g4, q8, c5):
    assert s3.order == 6
    assert s4.order == 24
    assert b2.order == 8
    assert g4.order == 24
    assert q8.order == 8
    assert c5.order == 5


def test_closure_contains_inverses(q8):
    n = q8.dimension
    for idx in range(q8.order):
        g = q8.elements[idx]
        inv = q8.elements[q8.inverse_index[idx]]
        assert mat_mul(g, inv) == mat_identity(n)


def test_conductors(s3, g4, q8, c5):
    assert s3.conductor == 1
    assert g4.conductor == 3
    assert q8.conductor == 4
    assert c5.conductor == 5


def test_index_of(s3):
    for idx, g in enumerate(s3.elements):
        assert s3.index_of(g) == idx


def test_cap_exceeded():
    # an infinite group: a shear has infinite order
    one, nil = CycNum.rational(1), CycNum.rational(0)
    shear = ((one, one), (nil, one))
    with pytest.raises(CapExceededError):
        close_group([shear], cap=50)


def test_character_values(s3):
    chi = character(s3)
    assert chi[0] == CycNum.rational(2)
    assert sum((x.numeric().real for x in chi), 0.0) == pytest.approx(0.0)


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_character_norm_one(name):
    group = get_entry(name).group()
    assert character_norm(group) == 1
    assert irreducibility_check(group) == (True, 1)


def test_reducible_detected():
    one, nil = CycNum.rational(1), CycNum.rational(0)
    swap = ((nil, one), (one, nil))
    group = close_group([swap])
    assert character_norm(group) == 2
    assert irreducibility_check(group) == (False, 2)


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_invariant_hermitian_exactness(name):
    group = get_entry(name).group()
    gram = invariant_hermitian(group)
    n = group.dimension
    assert conj_transpose(gram) == gram
    for g in group.elements:
        assert mat_mul(mat_mul(conj_transpose(g), gram), g) == gram
    # positive definite: all leading principal minors have positive sign
    from invlat import linalg

    for k in range(1, n + 1):
        minor = [[gram[i][j] for j in range(k)] for i in range(k)]
        assert exact_sign(linalg.det(minor)) == 1


def test_hermitian_inner_conjugate_linearity(s3):
    gram = invariant_hermitian(s3)
    i4 = zeta(4)
    u = (CycNum.rational(1), CycNum.rational(0))
    v = (CycNum.rational(0), CycNum.rational(1))
    left_scaled = hermitian_inner(gram, tuple(i4 * x for x in u), v)
    right_scaled = hermitian_inner(gram, u, tuple(i4 * x for x in v))
    base = hermitian_inner(gram, u, v)
    assert left_scaled == i4.conjugate() * base
    assert right_scaled == i4 * base


def test_reflection_counts(s3, s4, b2, g4, q8):
    assert len(find_reflections(s3)) == 3
    assert len(find_reflections(s4)) == 6
    assert len(find_reflections(b2)) == 4
    assert len(find_reflections(g4)) == 8
    assert len(find_reflections(q8)) == 0


def test_reflection_data(s3):
    for ref in find_reflections(s3):
        assert exact_sign(ref.theta + CycNum.rational(1)) == 0  # theta = -1
        image = tuple(
            sum(
                (ref.matrix[i][j] * ref.root[j] for j in range(2)),
                CycNum.rational(0),
            )
            for i in range(2)
        )
        assert image == tuple(ref.theta * x for x in ref.root)


def test_g4_reflection_orders(g4):
    thetas = {str(r.theta) for r in find_reflections(g4)}
    assert thetas == {"z3", "-1 - z3"}  # the two primitive cube roots


def test_group_json_round_trip(g4):
    encoded = group_to_json(g4)
    decoded = group_from_json(encoded)
    assert decoded.order == g4.order
    assert set(decoded.elements) == set(g4.elements)


def test_group_from_json_flat_matrices():
    obj = {
        "dimension": 2,
        "conductor": 1,
        "generators": [[-1, 1, 0, 1], [1, 0, 1, -1]],
    }
    group = group_from_json(obj)
    assert group.order == 6


def test_group_from_json_rejects_bad_conductor():
    obj = {
        "dimension": 1,
        "conductor": 4,
        "generators": [[{"conductor": 3, "coeffs": [["0", "1"], ["1", "1"]]}]],
    }
    with pytest.raises(InvalidInputError):
        group_from_json(obj)
