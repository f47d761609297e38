"""Sweep rational directions on the Hamilton quaternion torus and compare
the endomorphism rings against an irrational baseline direction.  Every
rational direction generates a quadratic subfield, so the sweep lands in the
special (abelian) case throughout; only the irrational baseline stays generic.

Usage: python3 scripts/quaternion_dichotomy.py [--denominator-bound B]
"""

import argparse
from fractions import Fraction
from math import isqrt

from invlat.catalog import quaternion_preset
from invlat.quaternion import (
    QuatAlgebra,
    build_quat_torus,
    lipschitz_lattice,
    torus_endomorphisms,
)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) * isqrt(n) == n


def directions(bound: int):
    """Unit directions (0, x, y, z) with rational coordinates of bounded
    denominator, restricted to representatives with x^2+y^2+z^2 = 1."""
    seen = set()
    for q in range(1, bound + 1):
        for a in range(-q, q + 1):
            for b in range(-q, q + 1):
                rem = q * q - a * a - b * b
                if not is_square(rem):
                    continue
                c = isqrt(rem)
                for cc in {c, -c}:
                    vec = (Fraction(a, q), Fraction(b, q), Fraction(cc, q))
                    if vec not in seen:
                        seen.add(vec)
                        yield vec


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--denominator-bound", type=int, default=5)
    args = parser.parse_args()

    base_alg, base_lat, base_c = quaternion_preset("example-non-generic")
    baseline = torus_endomorphisms(build_quat_torus(base_alg, base_lat, base_c))
    print(f"irrational baseline: rank {baseline.rank}, "
          f"{baseline.structure_tag}, abelian={baseline.abelian}")
    print()

    algebra = QuatAlgebra(Fraction(-1), Fraction(-1))
    lattice = lipschitz_lattice()
    tallies = {}
    for x, y, z in directions(args.denominator_bound):
        c = algebra.element((0, x, y, z))
        torus = build_quat_torus(algebra, lattice, c)
        endo = torus_endomorphisms(torus)
        key = (endo.rank, endo.structure_tag, endo.abelian)
        tallies.setdefault(key, []).append((x, y, z))
        print(f"c = (0, {x}, {y}, {z}): rank {endo.rank}, "
              f"{endo.structure_tag}, abelian={endo.abelian}")

    print()
    for (rank, tag, abelian), dirs in sorted(tallies.items()):
        print(f"rank {rank} ({tag}, abelian={abelian}): {len(dirs)} directions")


if __name__ == "__main__":
    main()
