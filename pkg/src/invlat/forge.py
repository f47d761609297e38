"""Invariant-lattice constructions and order-module structure.

Three construction recipes (integral span of a rational form's orbit,
doubling a rank-n lattice by a non-real scalar, and the orbit span over an
imaginary-quadratic order), plus saturation to an order-stable lattice and
splitting an order-stable lattice into a free module over a euclidean order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from . import linalg
from .cyclotomic import CycNum, as_cycnum, common_conductor, sqrt_rational
from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    OutOfScopeError,
)
from .groups import GroupRep
from .lattices import (
    RankTwoLattice,
    ZLattice,
    fundamental_discriminant,
    invariance_check,
    lattice_from_generators,
    lattice_sum,
    scale_lattice,
)
from .schur import SchurWitness, classify_character_field

EUCLIDEAN_DISCRIMINANTS = (-3, -4, -7, -8, -11)


@dataclass(frozen=True)
class ImaginaryQuadraticOrder:
    """The order Z[omega] of the stated discriminant, omega realized exactly."""

    discriminant: int
    generator: CycNum
    euclidean: bool

    @classmethod
    def from_discriminant(cls, disc: int) -> "ImaginaryQuadraticOrder":
        if disc >= 0 or disc % 4 not in (0, 1):
            raise InvalidInputError(
                f"{disc} is not the discriminant of an imaginary quadratic order"
            )
        if disc % 4 == 0:
            omega = sqrt_rational(Fraction(disc, 4))
        else:
            omega = (1 + sqrt_rational(Fraction(disc))) / 2
        order = cls(disc, omega, disc in EUCLIDEAN_DISCRIMINANTS)
        u, v = order.field_coords(omega * omega)
        if u.denominator != 1 or v.denominator != 1:
            raise InternalConsistencyError("omega^2 escaped Z[omega]")
        return order

    def field_coords(self, x):
        """(u, v) rational with x = u + v*omega, or None if x is outside the field."""
        x = as_cycnum(x)
        conductor = common_conductor([x, self.generator])
        cols = [
            CycNum.rational(1).coords_at(conductor),
            self.generator.coords_at(conductor),
        ]
        system = [list(entry) for entry in zip(*cols)]
        sol = linalg.solve_right(system, list(x.coords_at(conductor)))
        if sol is None:
            return None
        return sol[0], sol[1]

    def contains(self, x) -> bool:
        coords = self.field_coords(x)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def norm(self, x) -> Fraction:
        x = as_cycnum(x)
        value = x * x.conjugate()
        if not value.is_rational():
            raise InvalidInputError("norm argument is outside the field")
        return value.as_fraction()

    def euclid_divmod(self, alpha, beta):
        """Quotient q in the order and remainder r = alpha - q*beta, N(r) < N(beta).

        Nearest-point rounding in the (1, omega) basis; the remainder bound
        holds exactly for each of the five euclidean discriminants.
        """
        alpha, beta = as_cycnum(alpha), as_cycnum(beta)
        if beta.is_zero():
            raise InvalidInputError("division by zero")
        exact = alpha / beta
        coords = self.field_coords(exact)
        if coords is None:
            raise InvalidInputError("quotient is outside the field")
        u, v = coords
        half = Fraction(1, 2)
        b = floor(v + half)
        if self.discriminant % 4 == 0:
            a = floor(u + half)
        else:
            a = floor(u + (v - b) * half + half)
        quotient = CycNum.rational(a) + self.generator * b
        remainder = alpha - quotient * beta
        if not remainder.is_zero():
            if self.norm(remainder) >= self.norm(beta):
                raise InternalConsistencyError("euclidean division failed to shrink")
        return quotient, remainder


def maximal_order(field_discriminant: int) -> ImaginaryQuadraticOrder:
    disc = fundamental_discriminant(field_discriminant)
    return ImaginaryQuadraticOrder.from_discriminant(disc)


def _witness_vectors(witness):
    if isinstance(witness, SchurWitness):
        return list(witness.basis)
    return [tuple(as_cycnum(x) for x in v) for v in witness]


def _scale_vector(scalar, vector):
    return tuple(scalar * x for x in vector)


def _apply(mat, vector):
    return tuple(linalg.matvec([list(r) for r in mat], list(vector)))


def construct_rank_n(group: GroupRep, witness) -> ZLattice:
    """Integral span of the G-orbit of a rational-form basis; rank n."""
    vectors = _witness_vectors(witness)
    n = group.dimension
    if len(vectors) != n or linalg.rank([list(v) for v in vectors]) != n:
        raise InvalidInputError("witness is not a rational form of the space")
    conductor = common_conductor([x for v in vectors for x in v])

    def expand(vec):
        row = []
        for entry in vec:
            row.extend(entry.coords_at(conductor))
        return row

    span = [expand(v) for v in vectors]
    for g in group.generators:
        for v in vectors:
            image = _apply(g, v)
            if lcm(conductor, common_conductor(image)) != conductor:
                raise InvalidInputError("witness span is not stable under the group")
            if linalg.solve_right(
                [list(col) for col in zip(*span)], expand(image)
            ) is None:
                raise InvalidInputError("witness span is not stable under the group")
    generators = [_apply(g, v) for g in group.elements for v in vectors]
    lattice = lattice_from_generators(generators, dim=n)
    if lattice.rank != n:
        raise InternalConsistencyError(
            f"orbit span has rank {lattice.rank}, expected {n}"
        )
    if not invariance_check(lattice, group.elements):
        raise InternalConsistencyError("orbit lattice is not invariant")
    return lattice


def extend_rank_2n(lattice: ZLattice, c) -> ZLattice:
    """The lattice plus c times itself; doubles the rank for non-real c."""
    c = as_cycnum(c)
    if (c - c.conjugate()).is_zero():
        raise InvalidInputError("scalar must be non-real")
    out = lattice_sum(lattice, scale_lattice(c, lattice))
    if out.rank != 2 * lattice.rank:
        raise InternalConsistencyError("extension did not double the rank")
    return out


def orbit_lattice_over_order(
    group: GroupRep, order: ImaginaryQuadraticOrder, vector
) -> ZLattice:
    """Order-span of the G-orbit of a vector; order-stable and G-invariant."""
    field = classify_character_field(group)
    if field.kind != "imaginary-quadratic":
        raise InvalidInputError(
            f"character field is {field.kind}, not imaginary quadratic"
        )
    if fundamental_discriminant(order.discriminant) != field.discriminant:
        raise InvalidInputError(
            "order does not lie in the character field"
        )
    vector = tuple(as_cycnum(x) for x in vector)
    if all(x.is_zero() for x in vector):
        raise InvalidInputError("starting vector must be nonzero")
    omega = order.generator
    generators = []
    for g in group.elements:
        image = _apply(g, vector)
        generators.append(image)
        generators.append(_scale_vector(omega, image))
    lattice = lattice_from_generators(generators, dim=group.dimension)
    if not invariance_check(lattice, group.elements):
        raise InternalConsistencyError("orbit lattice is not invariant")
    for v in lattice.vectors():
        if not lattice.contains(_scale_vector(omega, v)):
            raise InternalConsistencyError("orbit lattice is not order-stable")
    return lattice


def order_saturate(lattice: ZLattice, order: ImaginaryQuadraticOrder) -> ZLattice:
    """Smallest order-stable lattice containing the input: L + omega*L."""
    out = lattice_sum(lattice, scale_lattice(order.generator, lattice))
    if out.rank != lattice.rank:
        raise InternalConsistencyError(
            "saturation changed the rank: lattice is not commensurable "
            "with an order-stable one"
        )
    return out


@dataclass(frozen=True)
class OrderSplit:
    """A free-module basis over the order, with the per-line lattice factors."""

    order: ImaginaryQuadraticOrder
    basis: tuple  # vectors v with L = O*v_1 + ... + O*v_k, direct
    factors: tuple  # RankTwoLattice of each line, all equal to the order itself


def split_as_order_module(lattice: ZLattice, order: ImaginaryQuadraticOrder) -> OrderSplit:
    """Free-module basis of an order-stable lattice over a euclidean order."""
    if not order.euclidean:
        raise OutOfScopeError(
            f"order of discriminant {order.discriminant} is not euclidean; "
            "only discriminants -3, -4, -7, -8, -11 are supported"
        )
    omega = order.generator
    for v in lattice.vectors():
        if not lattice.contains(_scale_vector(omega, v)):
            raise InvalidInputError("lattice is not stable under the order")
    if lattice.rank % 2:
        raise InternalConsistencyError("order-stable lattice of odd rank")
    k = lattice.rank // 2
    gens = list(lattice.vectors())
    conductor = common_conductor(
        [x for v in gens for x in v] + [omega]
    )

    def expand(vec):
        row = []
        for entry in vec:
            row.extend(entry.coords_at(conductor))
        return row

    field_basis = []

    def field_coords_in_basis(vec):
        cols = []
        for u in field_basis:
            cols.append(expand(u))
            cols.append(expand(_scale_vector(omega, u)))
        if not cols:
            return None
        system = [list(col) for col in zip(*cols)]
        sol = linalg.solve_right(system, expand(vec))
        if sol is None:
            return None
        out = []
        for t in range(len(field_basis)):
            out.append(CycNum.rational(sol[2 * t]) + omega * sol[2 * t + 1])
        return out

    rows = []
    for w in gens:
        coords = field_coords_in_basis(w)
        if coords is None:
            field_basis.append(w)
            rows.append(None)
        else:
            rows.append(coords)
    if len(field_basis) != k:
        raise InternalConsistencyError(
            f"field span has dimension {len(field_basis)}, expected {k}"
        )
    zero, one = CycNum.rational(0), CycNum.rational(1)
    mat = []
    seen = 0
    for w, coords in zip(gens, rows):
        if coords is None:
            row = [zero] * k
            row[seen] = one
            seen += 1
        else:
            row = list(coords) + [zero] * (k - len(coords))
        mat.append(row)

    den = 1
    for row in mat:
        for x in row:
            u, v = order.field_coords(x)
            den = lcm(den, u.denominator, v.denominator)
    mat = [[x * den for x in row] for row in mat]

    pivot_row = 0
    for col in range(k):
        while True:
            live = [
                r for r in range(pivot_row, len(mat)) if not mat[r][col].is_zero()
            ]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: order.norm(mat[r][col]))
            base = live[0]
            for r in live[1:]:
                q, _ = order.euclid_divmod(mat[r][col], mat[base][col])
                mat[r] = [x - q * y for x, y in zip(mat[r], mat[base])]
        live = [r for r in range(pivot_row, len(mat)) if not mat[r][col].is_zero()]
        if live:
            r = live[0]
            mat[pivot_row], mat[r] = mat[r], mat[pivot_row]
            pivot_row += 1
    reduced = [row for row in mat[:pivot_row]]
    if len(reduced) != k:
        raise InternalConsistencyError("euclidean reduction lost rank")

    basis = []
    for row in reduced:
        vec = tuple(
            sum((row[i] * field_basis[i][p] for i in range(k)), zero) / den
            for p in range(lattice.dim)
        )
        basis.append(vec)
    regenerated = lattice_from_generators(
        [v for b in basis for v in (b, _scale_vector(omega, b))], dim=lattice.dim
    )
    if regenerated != lattice:
        raise InternalConsistencyError("order-module basis does not regenerate the lattice")
    factors = tuple(RankTwoLattice(one, omega) for _ in basis)
    return OrderSplit(order, tuple(basis), factors)
