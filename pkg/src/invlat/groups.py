"""Finite matrix groups with exact cyclotomic entries.

Provides breadth-first closure from generators, characters, the exact
irreducibility test by the character norm, averaged invariant Hermitian
forms, and detection of (complex) reflections.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from . import linalg
from .cyclotomic import CycNum, as_cycnum, cyc_from_json, cyc_to_json, exact_sign
from .errors import CapExceededError, InvalidInputError


def as_matrix(rows):
    """Canonical immutable matrix with CycNum entries."""
    mat = tuple(tuple(as_cycnum(x) for x in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise InvalidInputError("matrix must be square and nonempty")
    return mat


def mat_mul(a, b):
    return tuple(tuple(x for x in row) for row in linalg.matmul(a, b))


def mat_identity(n):
    one, zero = CycNum.rational(1), CycNum.rational(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def conj_transpose(mat):
    n = len(mat)
    return tuple(tuple(mat[j][i].conjugate() for j in range(n)) for i in range(n))


def trace(mat):
    return sum((mat[i][i] for i in range(len(mat))), CycNum.rational(0))


class GroupRep:
    """A finite group of invertible matrices, closed under multiplication."""

    __slots__ = ("dimension", "generators", "elements", "_index", "inverse_index")

    def __init__(self, dimension, generators, elements):
        self.dimension = dimension
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._index = {m: k for k, m in enumerate(self.elements)}
        inv = []
        for m in self.elements:
            rows = linalg.inverse([list(r) for r in m])
            if rows is None:
                raise InvalidInputError("group element is singular")
            key = tuple(tuple(x for x in row) for row in rows)
            if key not in self._index:
                raise InvalidInputError("element inverse escaped the closure")
            inv.append(self._index[key])
        self.inverse_index = tuple(inv)

    @property
    def order(self):
        return len(self.elements)

    @property
    def conductor(self):
        out = 1
        for g in self.generators:
            for row in g:
                for x in row:
                    out = lcm(out, x.conductor)
        return out

    def index_of(self, mat):
        return self._index.get(mat)

    def __len__(self):
        return len(self.elements)


def close_group(generators, cap: int = 10000) -> GroupRep:
    """Breadth-first closure of the generated matrix group, capped."""
    gens = [as_matrix(g) for g in generators]
    if not gens:
        raise InvalidInputError("at least one generator required")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise InvalidInputError("generators have mixed dimensions")
    for g in gens:
        if linalg.inverse([list(r) for r in g]) is None:
            raise InvalidInputError("generator is singular")
    identity = mat_identity(n)
    seen = {identity: 0}
    order = [identity]
    queue = [identity]
    while queue:
        current = queue.pop(0)
        for g in gens:
            prod = mat_mul(current, g)
            if prod not in seen:
                if len(order) >= cap:
                    raise CapExceededError(
                        f"group closure exceeded the cap of {cap} elements"
                    )
                seen[prod] = len(order)
                order.append(prod)
                queue.append(prod)
    return GroupRep(n, gens, order)


def character(group: GroupRep):
    """Trace of each element, in element order."""
    return tuple(trace(m) for m in group.elements)


def character_norm(group: GroupRep) -> CycNum:
    """<chi, chi> = (1/|G|) sum chi(g) chi(g^-1), exact."""
    chi = character(group)
    total = CycNum.rational(0)
    for k in range(group.order):
        total = total + chi[k] * chi[group.inverse_index[k]]
    return total / group.order


def irreducibility_check(group: GroupRep):
    """(is_irreducible, exact character norm)."""
    norm = character_norm(group)
    return norm == 1, norm


def invariant_hermitian(group: GroupRep):
    """The averaged invariant positive-definite Hermitian form (1/|G|) sum g^H g."""
    n = group.dimension
    zero = CycNum.rational(0)
    total = [[zero] * n for _ in range(n)]
    for m in group.elements:
        mh = conj_transpose(m)
        prod = linalg.matmul(mh, m)
        total = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(total, prod)]
    gram = tuple(tuple(x / group.order for x in row) for row in total)
    if gram != conj_transpose(gram):
        raise InvalidInputError("averaged form is not Hermitian")
    for k in range(1, n + 1):
        minor = [list(row[:k]) for row in gram[:k]]
        d = linalg.det(minor)
        if not d.is_real() or exact_sign(d) <= 0:
            raise InvalidInputError("averaged form is not positive definite")
    return gram


def hermitian_inner(gram, u, v) -> CycNum:
    """<u, v> with the given Gram matrix; conjugate-linear in u, linear in v."""
    total = CycNum.rational(0)
    for i, ui in enumerate(u):
        uc = ui.conjugate()
        if not uc.is_zero():
            for j, vj in enumerate(v):
                total = total + uc * gram[i][j] * vj
    return total


@dataclass(frozen=True)
class ReflectionData:
    """A group element fixing a hyperplane pointwise."""

    element_index: int
    matrix: tuple
    theta: CycNum  # the nontrivial eigenvalue, = det(matrix)
    root: tuple  # spans the moved line, first nonzero entry normalized to 1

    def moves_line_of(self, vector) -> bool:
        return linalg.rank([list(self.root), list(vector)]) == 1


def find_reflections(group: GroupRep):
    """All reflections in the group: elements with rank(id - g) = 1."""
    n = group.dimension
    identity = mat_identity(n)
    out = []
    for idx, mat in enumerate(group.elements):
        if mat == identity:
            continue
        diff = [[identity[i][j] - mat[i][j] for j in range(n)] for i in range(n)]
        if linalg.rank(diff) != 1:
            continue
        col = next(
            j for j in range(n) if any(not diff[i][j].is_zero() for i in range(n))
        )
        root = [diff[i][col] for i in range(n)]
        lead = next(x for x in root if not x.is_zero())
        root = tuple(x / lead for x in root)
        theta = linalg.det([list(r) for r in mat])
        image = linalg.matvec([list(r) for r in mat], list(root))
        assert all(
            (a - theta * b).is_zero() for a, b in zip(image, root)
        ), "root line is not an eigenline"
        out.append(ReflectionData(idx, mat, theta, root))
    return out


def group_to_json(group: GroupRep) -> dict:
    return {
        "conductor": group.conductor,
        "dimension": group.dimension,
        "generators": [
            [[cyc_to_json(x) for x in row] for row in g] for g in group.generators
        ],
    }


def matrix_from_json(obj, dimension) -> tuple:
    if not isinstance(obj, list):
        raise InvalidInputError("matrix must be a list")
    if obj and not isinstance(obj[0], list):
        if len(obj) != dimension * dimension:
            raise InvalidInputError("flat matrix has wrong length")
        obj = [obj[i * dimension : (i + 1) * dimension] for i in range(dimension)]
    if len(obj) != dimension or any(len(row) != dimension for row in obj):
        raise InvalidInputError("matrix has wrong shape")
    return as_matrix([[cyc_from_json(x) for x in row] for row in obj])


def group_from_json(obj, cap: int = 10000) -> GroupRep:
    try:
        dimension = int(obj["dimension"])
        conductor = int(obj["conductor"])
        raw_gens = obj["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad group encoding: {exc}") from exc
    if dimension < 1 or conductor < 1 or not isinstance(raw_gens, list) or not raw_gens:
        raise InvalidInputError("group needs a dimension, conductor, and generators")
    gens = [matrix_from_json(g, dimension) for g in raw_gens]
    for g in gens:
        for row in g:
            for x in row:
                if conductor % x.conductor:
                    raise InvalidInputError(
                        "matrix entry lies outside the declared cyclotomic field"
                    )
    return close_group(gens, cap=cap)
