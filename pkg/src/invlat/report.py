"""Analysis pipeline assembling full torus reports.

A report is a plain dict (schema tag "torus-report/1") that records, for one
input, the character profile, the lattice-existence verdict, the lattices
actually constructed with their recipe tags, the reflection-torus analysis
when one applies, and the structure conclusion for the quotient tori.
All values are exact; scalars are rendered as strings.
"""

from __future__ import annotations

import json

from .catalog import CatalogEntry, get_entry, quaternion_preset
from .cyclotomic import CycNum, zeta
from .errors import InvalidInputError, OutOfScopeError
from .forge import (
    ImaginaryQuadraticOrder,
    OrderSplit,
    construct_rank_n,
    extend_rank_2n,
    maximal_order,
    orbit_lattice_over_order,
    order_saturate,
    split_as_order_module,
)
from .groups import GroupRep, character_norm, find_reflections, group_from_json
from .lattices import (
    MultiplierRing,
    RankTwoLattice,
    ZLattice,
    invariance_check,
    isogeny_test,
    lattice_from_generators,
    lattice_index,
    lattice_to_json,
    multiplier_ring,
)
from .quaternion import (
    imaginary_quadratic_subfield,
    build_quat_torus,
    ratl_verdict,
    torus_endomorphisms,
)
from .reflections import GeomReport, geom_report
from .schur import (
    CharacterProfile,
    character_profile,
    gcd_kernel_shortcut,
    lattice_existence_verdict,
)

SCHEMA = "torus-report/1"
DEFAULT_DOUBLING_SCALAR = "z4"


def _vec(v) -> list:
    return [str(x) for x in v]


def _ring_json(ring: MultiplierRing | None):
    if ring is None:
        return None
    return {
        "kind": ring.kind,
        "discriminant": ring.discriminant,
        "fundamental_discriminant": ring.fundamental_discriminant,
        "order_conductor": ring.order_conductor,
        "generator": None if ring.generator is None else str(ring.generator),
    }


def _rank_two_json(gamma: RankTwoLattice) -> dict:
    return {"g1": str(gamma.g1), "g2": str(gamma.g2)}


def _profile_json(profile: CharacterProfile, gcd_cert) -> dict:
    field = profile.field
    return {
        "character_field": {
            "kind": field.kind,
            "degree": field.degree,
            "discriminant": field.discriminant,
            "real_valued": field.real_valued,
            "generator": None if field.generator is None else str(field.generator),
        },
        "frobenius_schur": profile.bilinear.indicator,
        "bilinear_form": profile.bilinear.kind,
        "schur_index": profile.schur.index,
        "module_dimension": profile.schur.module_dimension,
        "stable_passes": profile.schur.stable_passes,
        "gcd_certificate": None
        if gcd_cert is None
        else [{"combination": label, "kernel_dimension": d} for label, d in gcd_cert],
    }


def _order_json(order: ImaginaryQuadraticOrder) -> dict:
    return {
        "discriminant": order.discriminant,
        "generator": str(order.generator),
        "euclidean": order.euclidean,
    }


def _split_json(split: OrderSplit) -> dict:
    factors = [_rank_two_json(f) for f in split.factors]
    isogenies = []
    for k in range(1, len(split.factors)):
        beta = isogeny_test(split.factors[0], split.factors[k])
        isogenies.append(
            {"source": 0, "target": k, "scalar": None if beta is None else str(beta)}
        )
    return {
        "order": _order_json(split.order),
        "module_rank": len(split.basis),
        "basis": [_vec(v) for v in split.basis],
        "factors": factors,
        "factor_isogenies": isogenies,
    }


def _geom_json(geom: GeomReport) -> dict:
    dec = geom.decomposition
    lines = []
    for line in dec.lines:
        lines.append(
            {
                "line_index": line.line_index,
                "root": _vec(line.reflection.root),
                "theta": str(line.reflection.theta),
                "rank": line.lattice.rank,
                "scalars": None if line.scalars is None else _rank_two_json(line.scalars),
                "multiplier": _ring_json(line.multiplier),
            }
        )
    return {
        "lines": lines,
        "sublattice_index": dec.index,
        "s_det": str(dec.s_det),
        "graph": {
            "edges": [
                {"source": e.source, "target": e.target, "index": e.index}
                for e in geom.graph.edges
            ],
            "connected": geom.graph.connected,
        },
        "cycle_multipliers": [
            {"cycle": list(cycle), "value": str(value)}
            for cycle, value in geom.multipliers
        ],
        "cm": None
        if geom.cm is None
        else {
            "cycle": list(geom.cm.cycle),
            "value": str(geom.cm.value),
            "line_index": geom.cm.line_index,
            "ring": _ring_json(geom.cm.ring),
        },
        "weyl_like": geom.weyl_like,
        "tags": list(geom.tags),
    }


def _lattice_entry(recipe: str, lattice: ZLattice, group: GroupRep, **extra) -> dict:
    entry = {
        "recipe": recipe,
        "rank": lattice.rank,
        "invariant": invariance_check(lattice, group.elements),
        "lattice": lattice_to_json(lattice),
    }
    entry.update(extra)
    return entry


def _scalar_order(c: CycNum) -> ImaginaryQuadraticOrder:
    """The order Z[c] for an imaginary quadratic integer c."""
    ring = multiplier_ring(RankTwoLattice(CycNum.rational(1), c))
    if ring.kind != "order":
        raise InvalidInputError(f"scalar {c} is not imaginary quadratic")
    return ImaginaryQuadraticOrder.from_discriminant(ring.discriminant)


def group_report(
    group: GroupRep,
    *,
    name: str | None = None,
    entry: CatalogEntry | None = None,
    doubling_scalar: CycNum | None = None,
    seed: int = 0,
    cycle_bound: int | None = None,
) -> dict:
    """Analyze one irreducible group: profile, verdict, lattices, structure."""
    n = group.dimension
    norm = character_norm(group)
    if norm != 1:
        raise InvalidInputError(
            f"representation is reducible: character norm {norm}, need 1"
        )
    profile = character_profile(group, seed=seed)
    gcd_cert = gcd_kernel_shortcut(group)
    verdict = lattice_existence_verdict(profile, n)

    lattices = []
    tags = []
    abelian = None
    detail = ""
    rank_2n_lattice = None
    split = None

    if verdict.clause == "c-i" and profile.field.kind == "rational":
        base = construct_rank_n(group, profile.schur.basis)
        lattices.append(_lattice_entry("Zn", base, group))
        c = doubling_scalar if doubling_scalar is not None else zeta(4)
        doubled = extend_rank_2n(base, c)
        lattices.append(_lattice_entry("ds", doubled, group, scalar=str(c)))
        rank_2n_lattice = doubled
        try:
            order = _scalar_order(c)
            split = split_as_order_module(doubled, order)
            abelian = True
            detail = (
                "the doubled lattice is a free module over an imaginary quadratic "
                "order, so the torus is an abelian variety with CM factors"
            )
        except (InvalidInputError, OutOfScopeError):
            detail = "doubled lattice built; no split certificate for this scalar"
    elif verdict.clause == "c-i":
        order = maximal_order(profile.field.discriminant)
        start = tuple(
            CycNum.rational(1 if k == 0 else 0) for k in range(n)
        )
        orbit = orbit_lattice_over_order(group, order, start)
        lattices.append(
            _lattice_entry("O", orbit, group, order=_order_json(order))
        )
        saturated = order_saturate(orbit, order)
        lattices.append(
            _lattice_entry(
                "saturate",
                saturated,
                group,
                order=_order_json(order),
                index_over_input=lattice_index(saturated, orbit),
            )
        )
        rank_2n_lattice = saturated
        tags.append("nonrationalT")
        abelian = True
        detail = (
            "the character field is imaginary quadratic, so every invariant "
            "lattice yields an abelian variety with CM"
        )
        if order.euclidean:
            split = split_as_order_module(saturated, order)
            tags.append("main2")
            detail += "; the saturated lattice splits into CM line lattices"
    elif verdict.clause == "c-ii":
        tags.append("ratL")
        evidence = None
        if entry is not None and entry.ds_base is not None:
            base = lattice_from_generators(
                [
                    tuple(CycNum.rational(x) for x in row)
                    for row in entry.ds_base
                ]
            )
            c = entry.ds_scalar
            doubled = extend_rank_2n(base, c)
            if not invariance_check(doubled, group.elements):
                raise InvalidInputError(
                    "preset doubling lattice is not invariant under the group"
                )
            lattices.append(_lattice_entry("ds", doubled, group, scalar=str(c)))
            rank_2n_lattice = doubled
            try:
                split = split_as_order_module(doubled, _scalar_order(c))
                evidence = split
            except (InvalidInputError, OutOfScopeError):
                evidence = None
        rverdict = ratl_verdict(profile, n, evidence=evidence)
        abelian = rverdict.abelian
        detail = rverdict.detail
    else:
        detail = "no nonzero invariant lattice exists for this representation"

    reflection = None
    if rank_2n_lattice is not None and find_reflections(group):
        try:
            geom = geom_report(group, rank_2n_lattice, cycle_bound)
            reflection = _geom_json(geom)
            tags.append("geom")
        except InvalidInputError:
            reflection = None

    report = {
        "schema": SCHEMA,
        "input": {
            "name": name,
            "kind": "group",
            "dimension": n,
        },
        "group": {
            "order": group.order,
            "dimension": n,
            "conductor": group.conductor,
            "reflections": len(find_reflections(group)),
        },
        "profile": _profile_json(profile, gcd_cert),
        "verdict": {
            "clause": verdict.clause,
            "exists_any": verdict.exists_any,
            "exists_rank_n": verdict.exists_rank_n,
            "exists_rank_2n": verdict.exists_rank_2n,
        },
        "lattices": lattices,
        "split": None if split is None else _split_json(split),
        "reflection": reflection,
        "quaternion": None,
        "structure": {"tags": tags, "abelian": abelian, "detail": detail},
    }
    return report


def quaternion_report(name: str, *, seed: int = 0, cap: int = 10000) -> dict:
    """Analyze one quaternion-torus preset: endomorphisms and the verdict."""
    entry = get_entry(name)
    algebra, lattice, c = quaternion_preset(name)
    torus = build_quat_torus(algebra, lattice, c)
    endos = torus_endomorphisms(torus)
    subfield = imaginary_quadratic_subfield(algebra)

    reference = get_entry("Q8").group(cap=cap)
    profile = character_profile(reference, seed=seed)
    rverdict = ratl_verdict(profile, 2, evidence=endos)

    tags = ["deform", "ratL"]
    quaternion = {
        "algebra": {
            "a": str(algebra.a),
            "b": str(algebra.b),
            "definite": algebra.definite,
        },
        "lattice": lattice_to_json(lattice),
        "complex_structure": _vec(c.coords),
        "rational_direction": torus.rational_direction,
        "direction": None if torus.direction is None else _vec(torus.direction),
        "direction_field_discriminant": torus.field_discriminant,
        "subfield": {
            "t": str(subfield.t),
            "witness": _vec(subfield.witness.coords),
            "field_discriminant": subfield.field_discriminant,
        },
        "endomorphisms": {
            "rank": endos.rank,
            "structure_tag": endos.structure_tag,
            "abelian": endos.abelian,
            "matches_input_lattice": endos.matches_input_lattice,
            "center_discriminant": endos.center_discriminant,
            "detail": endos.detail,
        },
        "verdict": {
            "branch": rverdict.branch,
            "abelian": rverdict.abelian,
            "detail": rverdict.detail,
        },
    }
    return {
        "schema": SCHEMA,
        "input": {"name": name, "kind": "quaternion-torus", "dimension": 2},
        "group": None,
        "profile": _profile_json(profile, gcd_kernel_shortcut(reference)),
        "verdict": None,
        "lattices": [],
        "split": None,
        "reflection": None,
        "quaternion": quaternion,
        "structure": {
            "tags": tags,
            "abelian": endos.abelian,
            "detail": endos.detail,
        },
    }


def analyze(
    target,
    *,
    seed: int = 0,
    cycle_bound: int | None = None,
    cap: int = 10000,
) -> dict:
    """Full report for a catalog name, group JSON dict, or GroupRep."""
    if isinstance(target, str):
        entry = get_entry(target)
        if entry.kind == "quaternion-torus":
            return quaternion_report(target, seed=seed, cap=cap)
        group = entry.group(cap=cap)
        return group_report(
            group, name=target, entry=entry, seed=seed, cycle_bound=cycle_bound
        )
    if isinstance(target, GroupRep):
        return group_report(target, seed=seed, cycle_bound=cycle_bound)
    if isinstance(target, dict):
        group = group_from_json(target, cap=cap)
        return group_report(group, seed=seed, cycle_bound=cycle_bound)
    raise InvalidInputError(f"cannot analyze {type(target).__name__}")


def render_json(report: dict) -> str:
    """Canonical serialization: stable key order, two-space indent."""
    return json.dumps(report, sort_keys=True, indent=2)
