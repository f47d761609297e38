"""Reflection-group torus decomposition.

Splits an invariant lattice across the root lines of n generating
reflections, certifies the finite-index sublattice generated by the line
lattices, computes exact cycle multipliers and their CM consequences, and
assembles the isogeny graph of the line tori.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import inf

from . import linalg
from .cyclotomic import CycNum
from .errors import InternalConsistencyError, InvalidInputError
from .groups import (
    GroupRep,
    ReflectionData,
    find_reflections,
    hermitian_inner,
    invariant_hermitian,
    mat_identity,
    mat_mul,
)
from .lattices import (
    MultiplierRing,
    RankTwoLattice,
    ZLattice,
    intersect_with_subspace,
    lattice_from_generators,
    lattice_index,
    lattice_sum,
    multiplier_ring,
)
from .schur import classify_character_field


def choose_generating_reflections(group: GroupRep):
    """n reflections whose root lines span and which generate the group.

    Greedy pass over the reflection inventory in element order; if the greedy
    choice spans but fails to generate, falls back to scanning root-spanning
    n-subsets in enumeration order.
    """
    n = group.dimension
    inventory = find_reflections(group)
    if not inventory:
        raise InvalidInputError("group contains no reflections")

    def generates(refs) -> bool:
        seen = {mat_identity(n)}
        queue = list(seen)
        mats = [r.matrix for r in refs]
        while queue:
            current = queue.pop(0)
            for m in mats:
                nxt = mat_mul(current, m)
                if nxt not in seen:
                    if len(seen) >= group.order:
                        return False
                    seen.add(nxt)
                    queue.append(nxt)
        return len(seen) == group.order

    chosen = []
    root_rows = []
    for ref in inventory:
        trial = root_rows + [list(ref.root)]
        if linalg.rank(trial) > len(root_rows):
            chosen.append(ref)
            root_rows = trial
        if len(chosen) == n:
            break
    if len(chosen) == n and generates(chosen):
        return tuple(chosen)
    for combo in combinations(inventory, n):
        if linalg.rank([list(r.root) for r in combo]) != n:
            continue
        if generates(combo):
            return tuple(combo)
    raise InvalidInputError(
        "no spanning set of n reflections generates the group"
    )


@dataclass(frozen=True)
class LineLattice:
    """The intersection of the invariant lattice with one root line."""

    line_index: int
    reflection: ReflectionData
    lattice: ZLattice
    scalars: RankTwoLattice | None  # lattice read along the root, when rank 2
    multiplier: MultiplierRing | None

    @property
    def rank(self) -> int:
        return self.lattice.rank


@dataclass(frozen=True)
class ReflectionDecomposition:
    ambient: ZLattice
    reflections: tuple
    lines: tuple  # LineLattice per root line
    sublattice: ZLattice  # sum of the line lattices
    index: int  # [ambient : sublattice]
    s_matrix: tuple  # sum of (id - r_j)
    s_det: CycNum


def _scalar_along_root(root, vector):
    """The scalar a with vector = a*root, or None."""
    pivot = next(p for p, x in enumerate(root) if not x.is_zero())
    a = vector[pivot] / root[pivot]
    if all((x - a * y).is_zero() for x, y in zip(vector, root)):
        return a
    return None


def line_lattice_decomposition(lattice: ZLattice, refs) -> ReflectionDecomposition:
    """Split the lattice across the root lines of the given reflections."""
    n = lattice.dim
    refs = tuple(refs)
    if len(refs) != n or linalg.rank([list(r.root) for r in refs]) != n:
        raise InvalidInputError("need n reflections with spanning root lines")
    lines = []
    for j, ref in enumerate(refs):
        piece = intersect_with_subspace(lattice, [ref.root])
        scalars = None
        ring = None
        if piece.rank == 2:
            a, b = (
                _scalar_along_root(ref.root, v) for v in piece.vectors()
            )
            if a is None or b is None:
                raise InternalConsistencyError("line lattice left its line")
            scalars = RankTwoLattice(a, b)
            ring = multiplier_ring(scalars)
        lines.append(LineLattice(j, ref, piece, scalars, ring))
    if lattice.rank == 2 * n:
        if any(line.rank != 2 for line in lines):
            raise InternalConsistencyError(
                "rank-2n lattice met a root line in rank != 2"
            )
    sub = lines[0].lattice
    for line in lines[1:]:
        sub = lattice_sum(sub, line.lattice)
    index = lattice_index(lattice, sub)
    if index is inf:
        raise InternalConsistencyError("line-lattice sum has deficient rank")
    identity = mat_identity(n)
    zero = CycNum.rational(0)
    s = [[zero] * n for _ in range(n)]
    for ref in refs:
        for i in range(n):
            for j in range(n):
                s[i][j] = s[i][j] + identity[i][j] - ref.matrix[i][j]
    s_det = linalg.det([list(row) for row in s])
    if s_det.is_zero():
        raise InternalConsistencyError("sum of (id - r_j) is degenerate")
    return ReflectionDecomposition(
        lattice,
        refs,
        tuple(lines),
        sub,
        index,
        tuple(tuple(row) for row in s),
        s_det,
    )


def cycle_multiplier(refs, cycle) -> CycNum:
    """Exact eigenvalue of (id-r_{j1})(id-r_{jm})...(id-r_{j2}) on root j1.

    Each factor has rank one, so the composition's image lies in the first
    root line and its trace equals the eigenvalue; both computations are done
    and compared.
    """
    refs = tuple(refs)
    if not cycle or any(j < 0 or j >= len(refs) for j in cycle):
        raise InvalidInputError("cycle indices out of range")
    n = len(refs[0].root)
    identity = mat_identity(n)

    def one_minus(ref):
        return [
            [identity[i][j] - ref.matrix[i][j] for j in range(n)] for i in range(n)
        ]

    factors = [one_minus(refs[cycle[0]])]
    for j in reversed(cycle[1:]):
        factors.append(one_minus(refs[j]))
    op = factors[0]
    for f in factors[1:]:
        op = linalg.matmul(op, f)
    root = list(refs[cycle[0]].root)
    image = linalg.matvec(op, root)
    pivot = next(p for p, x in enumerate(root) if not x.is_zero())
    value = image[pivot] / root[pivot]
    if not all((x - value * y).is_zero() for x, y in zip(image, root)):
        raise InternalConsistencyError("cycle operator does not fix the root line")
    tr = sum((op[i][i] for i in range(n)), CycNum.rational(0))
    if tr != value:
        raise InternalConsistencyError("cycle trace disagrees with the eigenvalue")
    return value


def scan_cycle_multipliers(refs, bound: int):
    """All cycle multipliers for index tuples of length 1..bound, in order."""
    out = []
    for length in range(1, bound + 1):
        for cycle in product(range(len(refs)), repeat=length):
            out.append((cycle, cycle_multiplier(refs, cycle)))
    return out


@dataclass(frozen=True)
class CmRecord:
    cycle: tuple
    value: CycNum
    line_index: int
    ring: MultiplierRing


def cm_detect(dec: ReflectionDecomposition, bound: int | None = None):
    """First non-rational cycle multiplier, verified to multiply its line lattice."""
    n = len(dec.reflections)
    if bound is None:
        bound = n + 1
    for cycle, value in scan_cycle_multipliers(dec.reflections, bound):
        if value.is_rational():
            continue
        line = dec.lines[cycle[0]]
        for v in line.lattice.vectors():
            if not line.lattice.contains(tuple(value * x for x in v)):
                raise InternalConsistencyError(
                    "non-rational multiplier does not preserve its line lattice"
                )
        if line.scalars is None:
            raise InternalConsistencyError("CM line lattice has rank != 2")
        return CmRecord(cycle, value, cycle[0], multiplier_ring(line.scalars))
    return None


@dataclass(frozen=True)
class IsogenyEdge:
    source: int
    target: int
    image: ZLattice  # (id - r_target)(line lattice of source)
    index: int  # [line lattice of target : image]


@dataclass(frozen=True)
class IsogenyGraph:
    nodes: int
    edges: tuple  # IsogenyEdge, both directions listed
    connected: bool


def isogeny_graph(dec: ReflectionDecomposition, gram) -> IsogenyGraph:
    """Edges between root lines with nonzero inner product, with lattice maps."""
    n = len(dec.reflections)
    identity = mat_identity(dec.ambient.dim)
    edges = []
    adjacency = {j: set() for j in range(n)}
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            inner = hermitian_inner(
                gram, dec.reflections[j].root, dec.reflections[k].root
            )
            if inner.is_zero():
                continue
            rk = dec.reflections[k]
            mat = [
                [identity[p][q] - rk.matrix[p][q] for q in range(dec.ambient.dim)]
                for p in range(dec.ambient.dim)
            ]
            images = [
                tuple(linalg.matvec(mat, list(v)))
                for v in dec.lines[j].lattice.vectors()
            ]
            for w in images:
                if not dec.lines[k].lattice.contains(w):
                    raise InternalConsistencyError(
                        "reflection image left the target line lattice"
                    )
            image_lattice = lattice_from_generators(images, dim=dec.ambient.dim)
            idx = lattice_index(dec.lines[k].lattice, image_lattice)
            if idx is inf:
                raise InternalConsistencyError("isogeny witness dropped rank")
            edges.append(IsogenyEdge(j, k, image_lattice, idx))
            adjacency[j].add(k)
            adjacency[k].add(j)
    seen = {0}
    queue = [0]
    while queue:
        for nxt in adjacency[queue.pop(0)]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    connected = len(seen) == n
    if not connected:
        raise InternalConsistencyError(
            "isogeny graph disconnected for an irreducible group"
        )
    return IsogenyGraph(n, tuple(edges), connected)


@dataclass(frozen=True)
class GeomReport:
    decomposition: ReflectionDecomposition
    graph: IsogenyGraph
    multipliers: tuple  # (cycle, value) pairs scanned
    cm: CmRecord | None
    weyl_like: bool  # rational character field
    tags: tuple  # subset of ("geom-i", "geom-ii", "geom-iii")


def geom_report(group: GroupRep, lattice: ZLattice, cycle_bound: int | None = None) -> GeomReport:
    """Full reflection-torus analysis of an invariant rank-2n lattice."""
    n = group.dimension
    if lattice.rank != 2 * n:
        raise InvalidInputError(
            f"lattice rank {lattice.rank} is not twice the dimension {n}"
        )
    refs = choose_generating_reflections(group)
    dec = line_lattice_decomposition(lattice, refs)
    gram = invariant_hermitian(group)
    graph = isogeny_graph(dec, gram)
    bound = cycle_bound if cycle_bound is not None else n + 1
    multipliers = tuple(scan_cycle_multipliers(refs, bound))
    cm = cm_detect(dec, bound)
    field = classify_character_field(group)
    weyl_like = field.kind == "rational"
    if weyl_like and cm is not None:
        raise InternalConsistencyError(
            "rational character field with a non-rational cycle multiplier"
        )
    tags = ["geom-i", "geom-ii"]
    if cm is not None:
        tags.append("geom-iii")
    return GeomReport(dec, graph, multipliers, cm, weyl_like, tuple(tags))
