"""Degree-0 orthogonality of family fibers over pairs of torus orbits.

Fix a valid normalized family and two orbits.  Every quiver arrow q is
typed by where its action map vanishes: the map is zero at a general
point of an orbit iff some ray of the orbit's cone carries a positive
coefficient in the divisor of zeroes B_q.  Writing the type as
[alive-at-first, alive-at-second]:

  * a homomorphism from the first fiber to the second scales each
    component of the subquiver of [1,1]-arrows by one constant;
  * a [0,1]-arrow leaving a component, or a [1,0]-arrow entering it
    (endpoints inside the component included -- the linear consequence
    is the same), forces that constant to zero.

So the first Hom space vanishes when every [1,1]-component is forced to
zero that way, and dually with arrow directions swapped for the reverse
Hom space.  The criterion is sufficient, never necessary: a pair it
cannot separate is reported "inconclusive", not "non-orthogonal".

For the self-pair of one orbit (two DISTINCT general points on it) the
typing is symmetric and the criterion is structurally silent.  There a
different certificate applies: around any undirected cycle of alive
arrows the coordinate exponents accumulate to a lattice vector m_c, and
the scaling constants of a homomorphism must satisfy x^{m_c}(y) =
x^{m_c}(y').  The vector m_c automatically pairs to zero with the
orbit's cone (the D-terms of the zero divisors telescope around the
cycle, and alive arrows have no zeroes along the orbit), so x^{m_c} is
a character of the orbit's own torus: nonconstant unless m_c = 0.  A
component carrying a cycle with m_c != 0 therefore admits no nonzero
homomorphism between the fibers at two general points.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .group_characters import Character, GroupData, character_permutation
from .gnat_family import GnatFamily, is_valid_family, zero_divisor_table
from .mckay_quiver import Arrow, McKayQuiver, build_quiver, components
from .toric_fan import Cone, Fan, OrbitId, orbits, ray_permutation


class ArrowType(Enum):
    BOTH = "[1,1]"
    FIRST_ONLY = "[1,0]"
    SECOND_ONLY = "[0,1]"
    NEITHER = "[0,0]"


def _type_of(zero_at_first: bool, zero_at_second: bool) -> ArrowType:
    if zero_at_first:
        return ArrowType.NEITHER if zero_at_second else ArrowType.SECOND_ONLY
    return ArrowType.FIRST_ONLY if zero_at_second else ArrowType.BOTH


def _vanishes(b, orbit: OrbitId) -> bool:
    return any(b.coefficient(i) > 0 for i in orbit.cone.ray_ids)


def arrow_types(
    fam: GnatFamily,
    fan: Fan,
    g: GroupData,
    pair,
    zero_divisors: Mapping | None = None,
) -> dict:
    """Type of every arrow with respect to the ordered orbit pair."""
    if zero_divisors is None:
        zero_divisors = zero_divisor_table(fam, g, fan)
    first, second = pair
    return {
        a: _type_of(_vanishes(b, first), _vanishes(b, second))
        for a, b in zero_divisors.items()
    }


@dataclass(frozen=True)
class ComponentEvidence:
    """One [1,1]-component with the arrows certifying each Hom direction."""

    vertices: tuple
    forward_witness: Arrow | None   # kills Hom(first fiber -> second)
    forward_kind: str | None
    backward_witness: Arrow | None  # kills Hom(second fiber -> first)
    backward_kind: str | None


@dataclass(frozen=True)
class OrthogonalityVerdict:
    pair: tuple
    component_evidence: tuple

    @property
    def components(self) -> tuple:
        return tuple(ev.vertices for ev in self.component_evidence)

    @property
    def condition_hom_ab(self) -> bool:
        return all(ev.forward_witness is not None for ev in self.component_evidence)

    @property
    def condition_hom_ba(self) -> bool:
        return all(ev.backward_witness is not None for ev in self.component_evidence)

    @property
    def orthogonal(self) -> bool:
        return self.condition_hom_ab and self.condition_hom_ba

    @property
    def status(self) -> str:
        return "orthogonal" if self.orthogonal else "inconclusive"

    @property
    def pair_labels(self) -> tuple:
        return (self.pair[0].label, self.pair[1].label)


def check_pair(
    fam: GnatFamily,
    fan: Fan,
    g: GroupData,
    pair,
    quiver: McKayQuiver | None = None,
    zero_divisors: Mapping | None = None,
) -> OrthogonalityVerdict:
    """Run the two-sided component criterion on an ordered orbit pair."""
    if quiver is None:
        quiver = build_quiver(g)
    types = arrow_types(fam, fan, g, pair, zero_divisors=zero_divisors)
    comps = components(quiver, lambda a: types[a] is ArrowType.BOTH)
    ordered = sorted(quiver.arrows, key=lambda a: (a.tail, a.coord))

    evidence = []
    for comp in comps:
        cset = set(comp)
        fw = fk = bw = bk = None
        for a in ordered:
            t = types[a]
            if t is ArrowType.BOTH or t is ArrowType.NEITHER:
                continue
            tail_in = a.tail in cset
            head_in = quiver.head(a) in cset
            if fw is None:
                if t is ArrowType.SECOND_ONLY and tail_in:
                    fw, fk = a, "[0,1] emerging"
                elif t is ArrowType.FIRST_ONLY and head_in:
                    fw, fk = a, "[1,0] entering"
            if bw is None:
                if t is ArrowType.SECOND_ONLY and head_in:
                    bw, bk = a, "[0,1] entering"
                elif t is ArrowType.FIRST_ONLY and tail_in:
                    bw, bk = a, "[1,0] emerging"
            if fw is not None and bw is not None:
                break
        evidence.append(ComponentEvidence(comp, fw, fk, bw, bk))
    return OrthogonalityVerdict(tuple(pair), tuple(evidence))


@dataclass(frozen=True)
class CycleWitness:
    arrow: Arrow          # the non-tree arrow closing the cycle
    exponents: tuple      # net coordinate exponents around the cycle


@dataclass(frozen=True)
class SameOrbitVerdict:
    """Verdict for two distinct general points of a single orbit."""

    orbit: OrbitId
    component_evidence: tuple  # pairs (vertices, CycleWitness | None)

    @property
    def components(self) -> tuple:
        return tuple(vs for vs, _ in self.component_evidence)

    @property
    def orthogonal(self) -> bool:
        return all(w is not None for _, w in self.component_evidence)

    @property
    def status(self) -> str:
        return "orthogonal" if self.orthogonal else "inconclusive"

    @property
    def pair_labels(self) -> tuple:
        return (self.orbit.label, self.orbit.label)


def same_orbit_certificate(
    fam: GnatFamily,
    fan: Fan,
    g: GroupData,
    orbit: OrbitId,
    quiver: McKayQuiver | None = None,
    zero_divisors: Mapping | None = None,
) -> SameOrbitVerdict:
    """Cycle-exponent separation of two distinct general points.

    Builds a spanning tree of each alive-arrow component and inspects
    the fundamental cycle of every remaining alive arrow; any nonzero
    net exponent vector kills the component (see the module docstring).
    Each witness vector is asserted to pair to zero with the orbit's
    cone generators -- failure would mean the divisor bookkeeping and
    the certificate disagree, which is a bug, not a data condition.
    """
    if quiver is None:
        quiver = build_quiver(g)
    if zero_divisors is None:
        zero_divisors = zero_divisor_table(fam, g, fan)
    alive = [a for a in quiver.arrows if not _vanishes(zero_divisors[a], orbit)]
    alive.sort(key=lambda a: (a.tail, a.coord))
    comps = components(quiver, lambda a: not _vanishes(zero_divisors[a], orbit))

    adjacency: dict = {v: [] for v in quiver.vertices}
    for a in alive:
        head = quiver.head(a)
        adjacency[a.tail].append((head, a, +1))
        adjacency[head].append((a.tail, a, -1))

    def unit(k: int, sign: int):
        return tuple(sign if j == k - 1 else 0 for j in range(g.n))

    def add(u, v):
        return tuple(x + y for x, y in zip(u, v))

    evidence = []
    for comp in comps:
        root = comp[0]
        potential = {root: (0,) * g.n}
        tree_arrows = set()
        frontier = [root]
        while frontier:
            v = frontier.pop(0)
            for nbr, a, sign in adjacency[v]:
                if nbr not in potential:
                    potential[nbr] = add(potential[v], unit(a.coord, sign))
                    tree_arrows.add(a)
                    frontier.append(nbr)
        witness = None
        for a in alive:
            if a in tree_arrows or a.tail not in potential:
                continue
            m_c = add(
                add(potential[a.tail], unit(a.coord, +1)),
                tuple(-x for x in potential[quiver.head(a)]),
            )
            if any(m_c):
                for i in orbit.cone.ray_ids:
                    gen = fan.ray(i).generator
                    pairing = sum(Fraction(e) * c for e, c in zip(m_c, gen))
                    if pairing != 0:
                        raise AssertionError(
                            f"cycle exponents {m_c} do not annihilate ray {i}"
                        )
                witness = CycleWitness(a, m_c)
                break
        evidence.append((comp, witness))
    return SameOrbitVerdict(orbit, tuple(evidence))


# -- the full hypothesis check ----------------------------------------------


def corollary_pairs(fan: Fan) -> list:
    """The pair list for the full check: every unordered pair of
    exceptional surfaces (self-pairs included) and every (surface,
    exceptional curve) pair, in a deterministic order."""
    surfaces = [OrbitId(Cone((i,))) for i in sorted(fan.exceptional_ray_ids)]
    exceptional = set(fan.exceptional_ray_ids)
    curves = [
        o for o in orbits(fan, 2) if set(o.cone.ray_ids) <= exceptional
    ]
    pairs = []
    for i, a in enumerate(surfaces):
        for b in surfaces[i:]:
            pairs.append((a, b))
    for a in surfaces:
        for c in curves:
            pairs.append((a, c))
    return pairs


@dataclass(frozen=True)
class CorollaryReport:
    family_valid: bool
    invalid_arrows: tuple
    verdicts: tuple

    @property
    def passed(self) -> bool:
        return self.family_valid and all(v.orthogonal for v in self.verdicts)

    @property
    def failing_pairs(self) -> tuple:
        return tuple(v.pair_labels for v in self.verdicts if not v.orthogonal)


def check_corollary2(fam: GnatFamily, fan: Fan, g: GroupData) -> CorollaryReport:
    """Hypothesis check over all surface/surface and surface/curve pairs.

    An invalid family is rejected before any pair is looked at.
    Distinct-orbit pairs run the component criterion; the self-pairs of
    a surface run the same-orbit cycle certificate, since the criterion
    cannot distinguish two points with identical vanishing data.
    """
    ok, bad = is_valid_family(fam, g, fan)
    if not ok:
        return CorollaryReport(False, tuple(bad), ())
    quiver = build_quiver(g)
    table = zero_divisor_table(fam, g, fan)
    verdicts = []
    for a, b in corollary_pairs(fan):
        if a == b:
            verdicts.append(
                same_orbit_certificate(fam, fan, g, a, quiver=quiver, zero_divisors=table)
            )
        else:
            verdicts.append(
                check_pair(fam, fan, g, (a, b), quiver=quiver, zero_divisors=table)
            )
    return CorollaryReport(True, (), tuple(verdicts))


# -- symmetry reduction ------------------------------------------------------


@dataclass(frozen=True)
class SymmetryReduction:
    invariant: bool
    reasons: tuple
    ray_map: tuple | None        # sorted (ray_id, image) pairs
    character_map: tuple | None  # sorted (chi, image) pairs
    orbit_classes: tuple         # classes of surface/curve orbits
    pair_classes: tuple          # classes of the corollary pair list


def _map_orbit(raymap: Mapping, orbit: OrbitId) -> OrbitId:
    return OrbitId(Cone(tuple(raymap[i] for i in orbit.cone.ray_ids)))


def _canonical_pair(pair):
    a, b = pair
    if len(a.cone.ray_ids) == len(b.cone.ray_ids):
        return tuple(sorted((a, b), key=lambda o: o.cone.ray_ids))
    return pair


def symmetry_reduction(
    fan: Fan,
    g: GroupData,
    perm: Sequence[int],
    fam: GnatFamily | None = None,
) -> SymmetryReduction:
    """Group the check_corollary2 pair list into symmetry classes.

    Invariance is checked, never assumed: the permuted ray set, the cone
    set, the induced character map, and (when a family is given) the
    transported divisor coefficients must all match.  On any failure the
    reduction degrades to singleton classes so downstream sweeps stay
    exhaustive.
    """
    pairs = [(_canonical_pair(p)) for p in corollary_pairs(fan)]
    reasons = []
    raymap = charmap = None
    try:
        raymap = ray_permutation(fan.rays, perm)
        cones = {c.ray_ids for c in fan.maximal_cones}
        image = {tuple(sorted(raymap[i] for i in c)) for c in cones}
        if image != cones:
            reasons.append("cone set is not invariant under the permutation")
            raymap = None
    except ValueError as exc:
        reasons.append(str(exc))
    if raymap is not None:
        try:
            charmap = character_permutation(g, perm)
        except ValueError as exc:
            reasons.append(str(exc))
    if raymap is not None and charmap is not None and fam is not None:
        for chi in fam.characters:
            d = fam.divisor(chi)
            d_image = fam.divisor(charmap[chi])
            for i in fan.ray_ids:
                if d_image.coefficient(raymap[i]) != d.coefficient(i):
                    reasons.append("family coefficients are not invariant")
                    break
            else:
                continue
            break

    if reasons:
        return SymmetryReduction(
            False,
            tuple(reasons),
            None,
            None,
            tuple((o,) for o in _corollary_orbits(fan)),
            tuple((p,) for p in pairs),
        )

    orbit_list = _corollary_orbits(fan)
    orbit_classes = _classes(orbit_list, lambda o: _map_orbit(raymap, o))
    pair_classes = _classes(
        pairs,
        lambda p: _canonical_pair((_map_orbit(raymap, p[0]), _map_orbit(raymap, p[1]))),
    )
    return SymmetryReduction(
        True,
        (),
        tuple(sorted(raymap.items())),
        tuple(sorted(charmap.items())),
        orbit_classes,
        pair_classes,
    )


def _corollary_orbits(fan: Fan) -> list:
    exceptional = set(fan.exceptional_ray_ids)
    surfaces = [OrbitId(Cone((i,))) for i in sorted(exceptional)]
    curves = [o for o in orbits(fan, 2) if set(o.cone.ray_ids) <= exceptional]
    return surfaces + curves


def _classes(items: list, step) -> tuple:
    """Orbits of `items` under the bijection `step`, deterministically."""
    index = {it: k for k, it in enumerate(items)}
    seen = set()
    classes = []
    for it in items:
        if it in seen:
            continue
        cls = []
        cur = it
        while cur not in seen:
            seen.add(cur)
            cls.append(cur)
            nxt = step(cur)
            if nxt not in index:
                # the image escaped the list; treat conservatively
                break
            cur = nxt
        classes.append(tuple(cls))
    return tuple(classes)
