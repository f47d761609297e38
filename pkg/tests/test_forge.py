from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from invlat.catalog import get_entry
from invlat.cyclotomic import CycNum, zeta
from invlat.errors import InvalidInputError, OutOfScopeError
from invlat.forge import (
    EUCLIDEAN_DISCRIMINANTS,
    ImaginaryQuadraticOrder,
    construct_rank_n,
    extend_rank_2n,
    maximal_order,
    orbit_lattice_over_order,
    order_saturate,
    split_as_order_module,
)
from invlat.lattices import (
    RankTwoLattice,
    invariance_check,
    lattice_from_generators,
    lattice_index,
    scale_lattice,
)
from invlat.schur import schur_index


def std_lattice(n):
    one, nil = CycNum.rational(1), CycNum.rational(0)
    return lattice_from_generators(
        [tuple(one if j == k else nil for j in range(n)) for k in range(n)]
    )


def test_order_generators_square_correctly():
    for disc in [-3, -4, -7, -8, -11, -15, -20]:
        order = ImaginaryQuadraticOrder.from_discriminant(disc)
        gen = order.generator
        # omega satisfies x^2 - tr x + nm with discriminant disc
        if disc % 4 == 0:
            assert gen * gen == CycNum.rational(Fraction(disc, 4))
        else:
            trace = gen + gen.conjugate()
            norm = gen * gen.conjugate()
            assert trace == CycNum.rational(1)
            assert norm == CycNum.rational(Fraction(1 - disc, 4))


def test_order_rejects_bad_discriminants():
    for disc in [0, 5, -1, -2, -6]:
        with pytest.raises(InvalidInputError):
            ImaginaryQuadraticOrder.from_discriminant(disc)


def test_euclidean_flags():
    for disc in EUCLIDEAN_DISCRIMINANTS:
        assert ImaginaryQuadraticOrder.from_discriminant(disc).euclidean
    for disc in [-15, -19, -20, -23]:
        assert not ImaginaryQuadraticOrder.from_discriminant(disc).euclidean


def test_maximal_order_from_field_discriminant():
    assert maximal_order(-4).discriminant == -4
    assert maximal_order(-12).discriminant == -3


def test_field_coords_and_contains():
    order = maximal_order(-3)
    omega = order.generator
    assert order.contains(omega * omega)  # omega^2 = omega - 1
    x = omega * 2 - CycNum.rational(5)
    a, b = order.field_coords(x)
    assert a == Fraction(-5) and b == Fraction(2)
    assert order.contains(x)
    assert not order.contains(omega / 2)


@given(
    st.sampled_from(EUCLIDEAN_DISCRIMINANTS),
    st.integers(-9, 9), st.integers(-9, 9),
    st.integers(-9, 9), st.integers(-9, 9),
)
@settings(max_examples=150)
def test_euclid_divmod_shrinks_norm(disc, a1, a2, b1, b2):
    order = ImaginaryQuadraticOrder.from_discriminant(disc)
    omega = order.generator
    x = CycNum.rational(a1) + omega * a2
    y = CycNum.rational(b1) + omega * b2
    if y.is_zero():
        return
    q, r = order.euclid_divmod(x, y)
    assert order.contains(q)
    assert x == q * y + r
    assert order.norm(r) < order.norm(y)


def test_divmod_known_value():
    order = maximal_order(-4)
    i4 = zeta(4)
    x = CycNum.rational(7) + i4 * 3
    y = CycNum.rational(2) + i4
    q, r = order.euclid_divmod(x, y)
    assert q == CycNum.rational(3) + i4 * 0
    assert r == CycNum.rational(1)


def test_construct_rank_n_s3(s3):
    witness = schur_index(s3).basis
    lat = construct_rank_n(s3, witness)
    assert lat.rank == 2
    assert invariance_check(lat, s3.elements)


def test_construct_rank_n_s4(s4):
    witness = schur_index(s4).basis
    lat = construct_rank_n(s4, witness)
    assert lat.rank == 3
    assert invariance_check(lat, s4.elements)


def test_construct_rank_n_rejects_unstable(g4):
    one, nil = CycNum.rational(1), CycNum.rational(0)
    # the standard basis spans a rational structure not stable under G4
    with pytest.raises(InvalidInputError):
        construct_rank_n(g4, [(one, nil), (nil, one)])


def test_extend_rank_2n(s3):
    base = std_lattice(2)
    doubled = extend_rank_2n(base, zeta(4))
    assert doubled.rank == 4
    assert invariance_check(doubled, s3.elements)
    assert doubled.contains((zeta(4), CycNum.rational(0)))


def test_extend_rejects_real_scalar():
    with pytest.raises(InvalidInputError):
        extend_rank_2n(std_lattice(2), CycNum.rational(2))


def test_orbit_lattice_g4(g4):
    order = maximal_order(-3)
    one, nil = CycNum.rational(1), CycNum.rational(0)
    lat = orbit_lattice_over_order(g4, order, (one, nil))
    assert lat.rank == 4
    assert invariance_check(lat, g4.elements)
    # stability under the order generator
    scaled = scale_lattice(order.generator, lat)
    for vec in scaled.vectors():
        assert lat.contains(vec)


def test_orbit_lattice_c3():
    group = get_entry("C3-zeta3").group()
    order = maximal_order(-3)
    lat = orbit_lattice_over_order(group, order, (CycNum.rational(1),))
    assert lat.rank == 2


def test_orbit_lattice_rejects_field_mismatch(g4):
    with pytest.raises(InvalidInputError):
        orbit_lattice_over_order(
            g4, maximal_order(-4), (CycNum.rational(1), CycNum.rational(0))
        )


def test_orbit_lattice_rejects_rational_group(s3):
    with pytest.raises(InvalidInputError):
        orbit_lattice_over_order(
            s3, maximal_order(-4), (CycNum.rational(1), CycNum.rational(0))
        )


def test_saturate_is_stable_fixed_point(g4):
    order = maximal_order(-3)
    one, nil = CycNum.rational(1), CycNum.rational(0)
    lat = orbit_lattice_over_order(g4, order, (one, nil))
    sat = order_saturate(lat, order)
    assert sat.rank == lat.rank
    assert lattice_index(sat, lat) >= 1
    again = order_saturate(sat, order)
    assert again == sat
    scaled = scale_lattice(order.generator, sat)
    for vec in scaled.vectors():
        assert sat.contains(vec)


def test_saturate_nontrivial_index():
    # Z + Z*2i is not stable under i; saturation adjoins i at index 2
    order = maximal_order(-4)
    i4 = zeta(4)
    lat = lattice_from_generators(
        [(CycNum.rational(1),), (i4 + i4,)]
    )
    sat = order_saturate(lat, order)
    assert lattice_index(sat, lat) == 2
    assert sat.contains((i4,))


def test_split_gaussian_square():
    order = maximal_order(-4)
    i4 = zeta(4)
    one, nil = CycNum.rational(1), CycNum.rational(0)
    lat = lattice_from_generators(
        [(one, nil), (i4, nil), (nil, one), (nil, i4)]
    )
    split = split_as_order_module(lat, order)
    assert len(split.basis) == 2
    gaussian = RankTwoLattice(CycNum.rational(1), i4)
    for factor in split.factors:
        assert factor.same_lattice(gaussian)


def test_split_g4_orbit(g4):
    order = maximal_order(-3)
    one, nil = CycNum.rational(1), CycNum.rational(0)
    sat = order_saturate(
        orbit_lattice_over_order(g4, order, (one, nil)), order
    )
    split = split_as_order_module(sat, order)
    assert len(split.basis) == 2
    # regeneration: the basis together with omega times it spans the lattice
    omega = order.generator
    regenerated = lattice_from_generators(
        [v for v in split.basis]
        + [tuple(omega * x for x in v) for v in split.basis],
        dim=2,
    )
    assert regenerated == sat


def test_split_requires_euclidean_order():
    order = ImaginaryQuadraticOrder.from_discriminant(-15)
    omega = order.generator
    lat = lattice_from_generators([(CycNum.rational(1),), (omega,)])
    with pytest.raises(OutOfScopeError):
        split_as_order_module(lat, order)


def test_split_requires_stability():
    order = maximal_order(-4)
    lat = std_lattice(2)  # rank 2, not i-stable
    with pytest.raises(InvalidInputError):
        split_as_order_module(lat, order)
