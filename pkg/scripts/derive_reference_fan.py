#!/usr/bin/env python3
"""Derive the two reference fans of the Z/6 x Z/2 example from scratch.

This is the provenance record for the fixture files and for the frozen
cone lists in tests/reference_values.py.  It enumerates every unimodular
triangulation of the junior triangle and then pins each reference fan by
an intrinsic property:

  * the primary fan is the unique triangulation that contains the three
    edges {1,7}, {2,4}, {3,9} and is invariant under the coordinate
    rotation x1 -> x2 -> x3 -> x1 (it turns out to be non-projective);

  * the cluster fan is the unique triangulation on which every maximal
    cone admits, for every character, a monomial minimizing the pairing
    against all of the cone's rays simultaneously (the distinguished-
    cluster property of the projective resolution).

The ray NUMBERING is a convention, not a derived fact: fixtures number
the coordinate rays 1-3 and the interior points 4-10 in the order listed
below.  The point set itself is derived and cross-checked.

Run from the repository root:

    python3 scripts/derive_reference_fan.py
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gnatfam import (
    GroupData,
    LatticeN,
    Ray,
    character_group,
    is_projective,
    junior_points,
    max_shift_coefficient,
    rho,
    search_symmetric_triangulations,
)
from gnatfam.gnat_family import _exponent_box

ORDERS = (6, 2)
WEIGHTS = ((1, 1, 4), (1, 0, 1))

F = Fraction
CANONICAL_GENERATORS = (
    (F(1), F(0), F(0)),
    (F(0), F(1), F(0)),
    (F(0), F(0), F(1)),
    (F(1, 6), F(1, 6), F(2, 3)),
    (F(1, 3), F(1, 3), F(1, 3)),
    (F(1, 2), F(1, 2), F(0)),
    (F(1, 6), F(2, 3), F(1, 6)),
    (F(1, 2), F(0), F(1, 2)),
    (F(2, 3), F(1, 6), F(1, 6)),
    (F(0), F(1, 2), F(1, 2)),
)


def cones_sorted(fan):
    return tuple(sorted(c.ray_ids for c in fan.maximal_cones))


def fmt_cone(ray_ids) -> str:
    return "{" + ",".join(map(str, ray_ids)) + "}"


def main() -> int:
    g = GroupData(ORDERS, WEIGHTS)
    lat = LatticeN(g)
    derived_points = junior_points(lat)
    print(f"group: order {g.order}, lattice index {lat.index_in_standard}")
    print(f"junior triangle: {len(derived_points)} lattice points")
    assert {r.generator for r in derived_points} == set(CANONICAL_GENERATORS), (
        "derived junior points disagree with the pinned numbering convention"
    )
    rays = tuple(Ray(k, gen) for k, gen in enumerate(CANONICAL_GENERATORS, start=1))

    t0 = time.perf_counter()
    fans = search_symmetric_triangulations(lat, rays=rays)
    print(f"unimodular triangulations: {len(fans)} "
          f"({time.perf_counter() - t0:.2f}s)")

    # -- primary fan: marked edges + rotation invariance ---------------------
    t0 = time.perf_counter()
    constrained = search_symmetric_triangulations(
        lat,
        required_edges=((1, 7), (2, 4), (3, 9)),
        symmetry=(2, 3, 1),
        rays=rays,
    )
    assert len(constrained) == 1, f"expected a unique survivor, got {len(constrained)}"
    primary = constrained[0]
    print(f"\nprimary fan: unique with edges {{1,7}},{{2,4}},{{3,9}} and "
          f"rotation symmetry ({time.perf_counter() - t0:.2f}s)")
    for c in cones_sorted(primary):
        print(f"  {fmt_cone(c)}")
    print(f"  projective: {is_projective(primary)}")
    assert not is_projective(primary)

    # -- cluster fan: simultaneous-minimum property ---------------------------
    # q[chi, ray] = min <ray, m> over monomials of character chi; a cone
    # is distinguished when one monomial per character attains all of its
    # rays' minima at once
    t0 = time.perf_counter()
    chars = character_group(g)
    q = {
        (chi, r.id): max_shift_coefficient(g, r, chi)
        for r in rays
        for chi in chars
    }
    monomials_by_char: dict = {}
    for m in _exponent_box(g):
        monomials_by_char.setdefault(rho(g, m), []).append(m)

    def pairing(gen, m):
        return sum(c * e for c, e in zip(gen, m))

    def distinguished(fan):
        for cone in fan.maximal_cones:
            cone_rays = [fan.ray(i) for i in cone.ray_ids]
            for chi in chars:
                if not any(
                    all(pairing(r.generator, m) == q[(chi, r.id)] for r in cone_rays)
                    for m in monomials_by_char[chi]
                ):
                    return False
        return True

    winners = [f for f in fans if distinguished(f)]
    assert len(winners) == 1, f"expected a unique survivor, got {len(winners)}"
    cluster = winners[0]
    print(f"\ncluster fan: unique with the simultaneous-minimum property "
          f"({time.perf_counter() - t0:.2f}s)")
    for c in cones_sorted(cluster):
        print(f"  {fmt_cone(c)}")
    print(f"  projective: {is_projective(cluster)}")
    assert is_projective(cluster)

    # -- cross-check against the frozen test data ----------------------------
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
    import reference_values as rv

    assert cones_sorted(primary) == tuple(sorted(rv.Y_CONES))
    assert cones_sorted(cluster) == tuple(sorted(rv.CLUSTER_CONES))
    assert len(fans) == rv.TRIANGULATION_COUNT
    assert CANONICAL_GENERATORS == tuple(
        rv.RAY_GENERATORS[i] for i in sorted(rv.RAY_GENERATORS)
    )
    print("\nboth fans match the frozen reference data")
    return 0


if __name__ == "__main__":
    sys.exit(main())
