"""Character-level invariants of an irreducible matrix group.

Covers the character field and its classification, the invariant-bilinear-form
type via the Frobenius-Schur indicator, the Schur index by rational orbit-span
descent, a gcd-of-kernel-dimensions shortcut certificate, and the final
verdict on which invariant-lattice ranks can exist.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import linalg
from .cyclotomic import CycNum, common_conductor
from .errors import InternalConsistencyError, InvalidInputError
from .groups import GroupRep, character, character_norm, mat_identity, mat_mul
from .lattices import fundamental_discriminant, reassemble


@dataclass(frozen=True)
class CharacterFieldClass:
    """The field generated over the rationals by all character values."""

    kind: str  # "rational" | "imaginary-quadratic" | "other"
    degree: int
    discriminant: int | None  # fundamental discriminant when imaginary quadratic
    real_valued: bool
    generator: CycNum | None  # a single field generator when degree is 2


@dataclass(frozen=True)
class BilinearFormType:
    kind: str  # "orthogonal" | "symplectic" | "complex"
    indicator: int  # 1, -1, or 0
    form: tuple | None  # invariant bilinear form certificate when indicator != 0


@dataclass(frozen=True)
class SchurWitness:
    index: int
    module_dimension: int
    basis: tuple  # complex vectors spanning the minimal module found
    stable_passes: int
    is_field_form: bool  # for index 1: basis is G-stable with full complex span


@dataclass(frozen=True)
class CharacterProfile:
    field: CharacterFieldClass
    bilinear: BilinearFormType
    schur: SchurWitness

    @property
    def schur_index(self) -> int:
        return self.schur.index


@dataclass(frozen=True)
class LatticeVerdict:
    exists_any: bool
    exists_rank_n: bool
    exists_rank_2n: bool
    clause: str  # "c-i" | "c-ii" | "none"


def _field_span_dim(values) -> int:
    """Dimension over the rationals of the algebra generated by the values."""
    conductor = common_conductor(values)
    gens = [v for v in values if not v.is_rational()]
    basis_rows = []
    basis_elems = []

    def absorb(x: CycNum) -> bool:
        row = list(x.coords_at(conductor))
        stacked = [list(r) for r in basis_rows] + [row]
        if linalg.rank(stacked) > len(basis_rows):
            basis_rows.append(tuple(row))
            basis_elems.append(x)
            return True
        return False

    absorb(CycNum.rational(1))
    queue = list(basis_elems)
    while queue:
        current = queue.pop(0)
        for g in gens:
            prod = current * g
            if absorb(prod):
                queue.append(prod)
    return len(basis_rows)


def classify_character_field(group: GroupRep) -> CharacterFieldClass:
    """Exact classification of the field generated by the character values."""
    values = character(group)
    degree = _field_span_dim(values)
    real_valued = all(v.is_real() for v in values)
    if degree == 1:
        return CharacterFieldClass("rational", 1, None, True, None)
    if degree == 2:
        gen = next(v for v in values if not v.is_rational())
        if not real_valued:
            poly = gen.minimal_polynomial()
            if len(poly) != 3:
                raise InternalConsistencyError(
                    "degree-2 field with generator of different degree"
                )
            c0, c1, _ = poly
            disc = c1 * c1 - 4 * c0
            if disc >= 0:
                raise InternalConsistencyError(
                    "non-real quadratic value with nonnegative discriminant"
                )
            den = disc.denominator
            fund = fundamental_discriminant((disc * den * den).numerator)
            return CharacterFieldClass("imaginary-quadratic", 2, fund, False, gen)
        return CharacterFieldClass("other", 2, None, True, gen)
    return CharacterFieldClass("other", degree, None, real_valued, None)


def frobenius_schur_indicator(group: GroupRep) -> int:
    """(1/|G|) sum chi(g^2), exact; 1, -1, or 0 for an irreducible character."""
    chi = character(group)
    total = CycNum.rational(0)
    for mat in group.elements:
        sq = group.index_of(mat_mul(mat, mat))
        if sq is None:
            raise InternalConsistencyError("square of an element escaped the group")
        total = total + chi[sq]
    nu = total / group.order
    if not nu.is_rational():
        raise InvalidInputError("indicator is not rational; character not irreducible")
    value = nu.as_fraction()
    if value.denominator != 1 or value not in (1, -1, 0):
        raise InvalidInputError(
            f"indicator {value} outside {{1,-1,0}}; character not irreducible"
        )
    return int(value)


def _averaged_bilinear(group: GroupRep, seed_matrix):
    n = group.dimension
    zero = CycNum.rational(0)
    total = [[zero] * n for _ in range(n)]
    for mat in group.elements:
        mt = [[mat[i][j] for i in range(n)] for j in range(n)]
        prod = linalg.matmul(linalg.matmul(mt, seed_matrix), mat)
        total = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(total, prod)]
    avg = [[x / group.order for x in row] for row in total]
    if all(x.is_zero() for row in avg for x in row):
        return None
    return tuple(tuple(row) for row in avg)


def bilinear_type(group: GroupRep) -> BilinearFormType:
    """Invariant-bilinear-form type, with the averaged form as certificate."""
    nu = frobenius_schur_indicator(group)
    if nu == 0:
        return BilinearFormType("complex", 0, None)
    n = group.dimension
    zero, one = CycNum.rational(0), CycNum.rational(1)
    seeds = []
    if nu == 1:
        for i in range(n):
            mat = [[zero] * n for _ in range(n)]
            mat[i][i] = one
            seeds.append(mat)
        for i in range(n):
            for j in range(i + 1, n):
                mat = [[zero] * n for _ in range(n)]
                mat[i][j] = one
                mat[j][i] = one
                seeds.append(mat)
    else:
        for i in range(n):
            for j in range(i + 1, n):
                mat = [[zero] * n for _ in range(n)]
                mat[i][j] = one
                mat[j][i] = -one
                seeds.append(mat)
    for seed_matrix in seeds:
        form = _averaged_bilinear(group, seed_matrix)
        if form is None:
            continue
        transposed = tuple(tuple(form[j][i] for j in range(n)) for i in range(n))
        expected = form if nu == 1 else tuple(
            tuple(-x for x in row) for row in form
        )
        if transposed != expected:
            raise InternalConsistencyError("averaged form has the wrong symmetry")
        if linalg.det([list(r) for r in form]).is_zero():
            raise InternalConsistencyError("averaged invariant form is degenerate")
        kind = "orthogonal" if nu == 1 else "symplectic"
        return BilinearFormType(kind, nu, form)
    raise InternalConsistencyError(
        "nonzero indicator but every averaged bilinear form vanished"
    )


def _expansion_conductor(group: GroupRep, vector) -> int:
    return lcm(group.conductor, common_conductor(vector))


def _orbit_span(group: GroupRep, vector, conductor: int):
    """Basis (rational rows) of the rational span of the G-orbit of vector."""
    width = group.dimension * len(CycNum.rational(0).coords_at(conductor))
    rows = []
    for mat in group.elements:
        image = linalg.matvec([list(r) for r in mat], list(vector))
        row = []
        for entry in image:
            row.extend(entry.coords_at(conductor))
        rows.append(row)
    reduced, _ = linalg.rref(rows)
    assert all(len(r) == width for r in reduced)
    return [tuple(r) for r in reduced]


def schur_index(
    group: GroupRep,
    start=None,
    seed: int = 0,
    random_combos: int = 8,
    required_stable_passes: int = 2,
) -> SchurWitness:
    """Schur index via descent to a minimal rational orbit span.

    Starting from the rational span of one G-orbit, regenerate from each basis
    vector and from seeded random small-integer combinations, keeping any
    strictly smaller span, until the required number of consecutive passes
    makes no progress.  The stable-pass count is recorded on the witness: the
    descent certifies an upper bound that is exact whenever the final module
    is simple, which a stable pass supports but does not unconditionally prove.
    """
    n = group.dimension
    if start is None:
        start = tuple(
            CycNum.rational(1 if k == 0 else 0) for k in range(n)
        )
    start = tuple(CycNum.rational(x) if isinstance(x, (int, Fraction)) else x for x in start)
    if len(start) != n or all(x.is_zero() for x in start):
        raise InvalidInputError("starting vector must be nonzero of matching length")
    conductor = _expansion_conductor(group, start)
    basis = _orbit_span(group, start, conductor)
    rng = random.Random(seed)
    stable = 0
    while stable < required_stable_passes:
        improved = False
        candidates = [reassemble(n, conductor, row) for row in basis]
        for _ in range(random_combos):
            coeffs = [rng.randint(-3, 3) for _ in basis]
            if all(c == 0 for c in coeffs):
                coeffs[rng.randrange(len(basis))] = 1
            row = [
                sum(c * x for c, x in zip(coeffs, col))
                for col in zip(*basis)
            ]
            candidates.append(reassemble(n, conductor, tuple(row)))
        for vec in candidates:
            if all(x.is_zero() for x in vec):
                continue
            span = _orbit_span(group, vec, conductor)
            if len(span) < len(basis):
                basis = span
                improved = True
                break
        stable = 0 if improved else stable + 1
    degree = _field_span_dim(character(group))
    dim = len(basis)
    if dim % (degree * n):
        raise InternalConsistencyError(
            f"module dimension {dim} is not a multiple of {degree}*{n}"
        )
    m = dim // (degree * n)
    witness = tuple(reassemble(n, conductor, row) for row in basis)
    is_form = False
    if m == 1:
        complex_rank = linalg.rank([list(v) for v in witness])
        stable_under_g = all(
            _vector_in_span(linalg.matvec([list(r) for r in g], list(v)), basis, conductor, n)
            for g in group.generators
            for v in witness
        )
        is_form = complex_rank == n and stable_under_g
        if not is_form:
            raise InternalConsistencyError("index-1 witness failed the field-form check")
    return SchurWitness(m, dim, witness, required_stable_passes, is_form)


def _vector_in_span(vector, basis_rows, conductor: int, dim: int) -> bool:
    row = []
    for entry in vector:
        row.extend(entry.coords_at(conductor))
    mat = [list(b) for b in basis_rows]
    cols = list(zip(*mat)) if mat else []
    system = [list(col) for col in cols]
    return linalg.solve_right(system, row) is not None


def gcd_kernel_shortcut(group: GroupRep):
    """Certificate that the Schur index is 1 from kernel dimensions.

    Scans rational combinations u of group elements (g - id, g + id, then
    pairwise g - h and g + h) and collects the complex kernel dimension of
    each; if the gcd of these together with n reaches 1, the index must be 1.
    Returns the list of (description, dimension) pairs on success, else None.
    """
    n = group.dimension
    identity = mat_identity(n)
    found = [("ambient", n)]
    running = n
    if running == 1:
        return tuple(found)

    def consider(label, mat) -> bool:
        nonlocal running
        kern = linalg.kernel_right([list(r) for r in mat])
        dim = len(kern)
        if dim == 0 or dim == n:
            return False
        if gcd(running, dim) < running:
            found.append((label, dim))
            running = gcd(running, dim)
        return running == 1

    for idx, g in enumerate(group.elements):
        diff = [[g[i][j] - identity[i][j] for j in range(n)] for i in range(n)]
        if consider(f"element {idx} - id", diff):
            return tuple(found)
        plus = [[g[i][j] + identity[i][j] for j in range(n)] for i in range(n)]
        if consider(f"element {idx} + id", plus):
            return tuple(found)
    for i, g in enumerate(group.elements):
        for j, h in enumerate(group.elements):
            if j <= i:
                continue
            diff = [[g[r][c] - h[r][c] for c in range(n)] for r in range(n)]
            if consider(f"element {i} - element {j}", diff):
                return tuple(found)
            plus = [[g[r][c] + h[r][c] for c in range(n)] for r in range(n)]
            if consider(f"element {i} + element {j}", plus):
                return tuple(found)
    return None


def character_profile(group: GroupRep, seed: int = 0) -> CharacterProfile:
    """Field class, bilinear type, and Schur index, with consistency checks."""
    norm = character_norm(group)
    if norm != 1:
        raise InvalidInputError(
            f"character norm is {norm}, not 1: representation is reducible"
        )
    field = classify_character_field(group)
    bilinear = bilinear_type(group)
    schur = schur_index(group, seed=seed)
    if field.kind == "rational" and field.degree != 1:
        raise InternalConsistencyError("rational field with degree > 1")
    if field.kind == "imaginary-quadratic" and (field.degree != 2 or field.real_valued):
        raise InternalConsistencyError("imaginary-quadratic class mis-built")
    if field.kind != "rational" and not field.real_valued:
        if bilinear.kind != "complex":
            raise InternalConsistencyError(
                "non-real character admits an invariant bilinear form"
            )
    if field.real_valued and schur.index > 2:
        raise InternalConsistencyError(
            "real-valued character with Schur index above 2"
        )
    return CharacterProfile(field, bilinear, schur)


def lattice_existence_verdict(profile: CharacterProfile, n: int) -> LatticeVerdict:
    """Which invariant-lattice ranks exist, per the field/index decision table."""
    m = profile.schur.index
    kind = profile.field.kind
    if m == 1 and kind in ("rational", "imaginary-quadratic"):
        return LatticeVerdict(True, kind == "rational", True, "c-i")
    if m == 2 and kind == "rational":
        return LatticeVerdict(True, False, True, "c-ii")
    return LatticeVerdict(False, False, False, "none")
