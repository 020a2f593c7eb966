"""Exact-rational toric fans subdividing the positive orthant cone.

The lattice N is Z^n extended by the rows a_j/r_j of the group's weight
matrix.  A crepant resolution of C^n/G corresponds (for n = 3) to a
unimodular triangulation of the junior simplex, the slice sum(v) = 1 of
the orthant in N.  Everything here is exact: coordinates are
fractions.Fraction, determinants are computed by rational elimination,
and the projectivity test is an exact Fourier-Motzkin feasibility run.
Floating point would silently corrupt effectivity and tiling checks, so
none is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm
from typing import Callable, Iterable, Sequence

from .group_characters import GroupData

Vector = tuple  # n-tuple of Fraction


def _vec(xs: Iterable) -> Vector:
    return tuple(Fraction(x) for x in xs)


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination (tiny matrices)."""
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    result = Fraction(sign)
    for i in range(n):
        result *= m[i][i]
    return result


def solve_linear(columns: Sequence[Vector], target: Vector) -> tuple:
    """Coefficients lam with sum lam_i * columns[i] = target (Cramer's rule).

    The columns must be linearly independent; raises on a singular system.
    """
    n = len(target)
    base = det([[columns[j][i] for j in range(n)] for i in range(n)])
    if base == 0:
        raise ValueError("singular system")
    lam = []
    for k in range(n):
        mod = [
            [target[i] if j == k else columns[j][i] for j in range(n)]
            for i in range(n)
        ]
        lam.append(det(mod) / base)
    return tuple(lam)


class LatticeN:
    """The lattice N = Z^n + sum_j Z * (a_j / r_j) for a weight group.

    Membership is decided through the finite set of fractional parts
    {frac(sum_j c_j a_j / r_j) : 0 <= c_j < r_j}: v lies in N iff the
    componentwise fractional part of v is one of them.  The size of that
    set is the index [N : Z^n].
    """

    def __init__(self, group: GroupData):
        self.group = group
        self.dimension = group.n
        fracs = set()
        for cs in product(*(range(r) for r in group.factor_orders)):
            v = [Fraction(0)] * group.n
            for c, row, r in zip(cs, group.weights, group.factor_orders):
                for i in range(group.n):
                    v[i] += Fraction(c * row[i], r)
            fracs.add(tuple(x % 1 for x in v))
        self._fracs = frozenset(fracs)
        # lcm of all generator denominators; D*v is integral for any v in N
        self.denominator = lcm(1, *(r for r in group.factor_orders))

    def contains(self, v: Sequence) -> bool:
        w = _vec(v)
        if len(w) != self.dimension:
            return False
        return tuple(x % 1 for x in w) in self._fracs

    @property
    def index_in_standard(self) -> int:
        """[N : Z^n], the number of distinct fractional-part cosets."""
        return len(self._fracs)

    def is_primitive(self, v: Sequence) -> bool:
        """True iff v is in N, nonzero, and v/k leaves N for every k >= 2."""
        w = _vec(v)
        if all(x == 0 for x in w) or not self.contains(w):
            return False
        scaled = [int(x * self.denominator) for x in w]
        g0 = gcd(*scaled) if len(scaled) > 1 else abs(scaled[0])
        for k in range(2, g0 + 1):
            if g0 % k == 0 and self.contains(tuple(x / k for x in w)):
                return False
        return True

    def primitivize(self, v: Sequence) -> Vector:
        """The primitive generator of the ray through v (v must lie in N)."""
        w = _vec(v)
        if not self.contains(w):
            raise ValueError(f"{v} is not a lattice point")
        scaled = [int(x * self.denominator) for x in w]
        g0 = gcd(*scaled) if len(scaled) > 1 else abs(scaled[0])
        for k in range(g0, 1, -1):
            if g0 % k == 0:
                cand = tuple(x / k for x in w)
                if self.contains(cand):
                    return cand
        return w

    def cone_is_basic(self, generators: Sequence[Vector]) -> bool:
        """Do the generators form a Z-basis of N (unimodular cone)?

        The covolume of N is 1/index, so a full-dimensional simplicial
        cone is basic iff |det of its generators| equals 1/index.
        """
        d = det(generators)
        return abs(d) * self.index_in_standard == 1


@dataclass(frozen=True)
class Ray:
    id: int
    generator: Vector

    def __post_init__(self):
        object.__setattr__(self, "generator", _vec(self.generator))

    @property
    def is_coordinate(self) -> bool:
        """True for the rays through the standard basis vectors."""
        return sorted(self.generator) == [0] * (len(self.generator) - 1) + [1]


@dataclass(frozen=True)
class Cone:
    ray_ids: tuple

    def __post_init__(self):
        ids = tuple(sorted(int(i) for i in self.ray_ids))
        if len(set(ids)) != len(ids):
            raise ValueError(f"repeated ray id in cone {self.ray_ids}")
        object.__setattr__(self, "ray_ids", ids)

    def __len__(self):
        return len(self.ray_ids)

    def __contains__(self, ray_id):
        return ray_id in self.ray_ids


@dataclass(frozen=True)
class OrbitId:
    """A torus orbit, named by the (possibly empty) cone it closes over."""

    cone: Cone

    @property
    def label(self) -> str:
        if not self.cone.ray_ids:
            return "dense"
        return "S" + ",".join(str(i) for i in self.cone.ray_ids)


@dataclass(frozen=True)
class Fan:
    rays: tuple
    maximal_cones: tuple

    def __post_init__(self):
        rays = tuple(self.rays)
        cones = tuple(self.maximal_cones)
        ids = [r.id for r in rays]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate ray ids")
        known = set(ids)
        for c in cones:
            missing = [i for i in c.ray_ids if i not in known]
            if missing:
                raise ValueError(f"cone {c.ray_ids} references unknown rays {missing}")
        if len(set(cones)) != len(cones):
            raise ValueError("duplicate maximal cones")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "maximal_cones", cones)

    @property
    def dimension(self) -> int:
        return len(self.rays[0].generator)

    def ray(self, ray_id: int) -> Ray:
        for r in self.rays:
            if r.id == ray_id:
                return r
        raise KeyError(f"no ray with id {ray_id}")

    @property
    def ray_ids(self) -> tuple:
        return tuple(r.id for r in self.rays)

    @property
    def exceptional_ray_ids(self) -> tuple:
        """Ids of the non-coordinate rays (exceptional prime divisors)."""
        return tuple(r.id for r in self.rays if not r.is_coordinate)

    def generators(self, cone: Cone) -> tuple:
        return tuple(self.ray(i).generator for i in cone.ray_ids)


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    crepant: bool
    complete: bool
    messages: tuple

    @property
    def ok(self) -> bool:
        return self.smooth and self.crepant and self.complete


# -- junior simplex ------------------------------------------------------


def junior_points(lat: LatticeN) -> list:
    """All lattice points on the closed junior simplex sum(v) = 1, v >= 0.

    Only implemented for n = 3 (the rest of the 3-dimensional machinery
    lives on the same restriction).  Coordinate vertices come first with
    ids 1..3, the interior points follow in lexicographic order.  Any
    junior point other than a vertex has all coordinates in [0, 1), so
    the fractional-part coset set of the lattice already enumerates
    them; we just filter by coordinate sum.
    """
    if lat.dimension != 3:
        raise ValueError("junior-simplex enumeration is only supported for n = 3")
    pts = [_vec([1 if j == i else 0 for j in range(3)]) for i in range(3)]
    interior = sorted(f for f in lat._fracs if sum(f) == 1)
    pts.extend(interior)
    return [Ray(i + 1, p) for i, p in enumerate(pts)]


# -- 2-d cross-section helpers (exact) -----------------------------------
#
# All tiling questions about a fan subdividing the orthant reduce, for
# n = 3, to questions about triangles in the junior plane.  We use the
# (v_2, v_3) coordinates of the cross-section point v / sum(v).


def _section(v: Vector):
    s = sum(v)
    if s <= 0:
        raise ValueError(f"generator {v} does not meet the junior plane")
    return (v[1] / s, v[2] / s)


def _orient(a, b, c) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _tri_area2(tri) -> Fraction:
    """Twice the (unsigned) area of a cross-section triangle."""
    return abs(_orient(*tri))


def _interiors_disjoint(t1, t2) -> bool:
    """Exact separating-axis test: do two triangles have disjoint interiors?

    Two convex sets have disjoint interiors iff some line through an
    edge of one of them separates the two (weakly); we test all six
    candidate edges with orientation signs.
    """
    for tri, other in ((t1, t2), (t2, t1)):
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            c = tri[(i + 2) % 3]
            side = _orient(a, b, c)
            if side == 0:
                continue  # degenerate triangle, no information from this edge
            if all(side * _orient(a, b, p) <= 0 for p in other):
                return True
    return False


def validate_fan(lat: LatticeN, fan: Fan) -> ValidationReport:
    """Smoothness, crepancy and completeness-over-the-orthant, exactly.

    smooth   -- every maximal cone's generators form a Z-basis of N;
    crepant  -- every non-coordinate ray generator lies on sum(v) = 1;
    complete -- the maximal cones tile the orthant.  For n = 3 we check
                the junior-plane cross-section: triangles pairwise have
                disjoint interiors and their areas add up to the full
                simplex.  (Vertices lie inside the simplex because ray
                coordinates are >= 0, so no triangle can stick out.)
    Geometry failures are reported, never raised.
    """
    messages = []
    smooth = True
    crepant = True
    complete = True

    for r in fan.rays:
        if any(x < 0 for x in r.generator):
            messages.append(f"ray {r.id} has a negative coordinate")
            smooth = crepant = complete = False
        if not lat.contains(r.generator):
            messages.append(f"ray {r.id} generator is not a lattice point")
            smooth = False
        elif not lat.is_primitive(r.generator):
            messages.append(f"ray {r.id} generator is not primitive")
            smooth = False
        if not r.is_coordinate and sum(r.generator) != 1:
            messages.append(f"ray {r.id} is off the junior plane (discrepancy != 0)")
            crepant = False

    n = lat.dimension
    for c in fan.maximal_cones:
        if len(c) != n:
            messages.append(f"cone {c.ray_ids} is not full-dimensional")
            smooth = complete = False
            continue
        gens = fan.generators(c)
        if det(gens) == 0:
            messages.append(f"cone {c.ray_ids} is degenerate")
            smooth = complete = False
        elif not lat.cone_is_basic(gens):
            messages.append(f"cone {c.ray_ids} is not basic in N")
            smooth = False

    if n != 3:
        messages.append("completeness check is only implemented for n = 3")
        return ValidationReport(smooth, crepant, False, tuple(messages))

    tris = []
    for c in fan.maximal_cones:
        if len(c) == 3:
            try:
                tris.append((c, tuple(_section(v) for v in fan.generators(c))))
            except ValueError as exc:
                messages.append(str(exc))
                complete = False
    total = Fraction(0)
    for c, tri in tris:
        a2 = _tri_area2(tri)
        if a2 == 0:
            messages.append(f"cone {c.ray_ids} has a flat cross-section")
            complete = False
        total += a2
    for (c1, t1), (c2, t2) in combinations(tris, 2):
        if not _interiors_disjoint(t1, t2):
            messages.append(f"cones {c1.ray_ids} and {c2.ray_ids} overlap")
            complete = False
    if total != 1:  # the full cross-section triangle has doubled area 1
        messages.append(f"cross-section areas sum to {total}, expected 1")
        complete = False

    return ValidationReport(smooth, crepant, complete, tuple(messages))


# -- orbits ---------------------------------------------------------------


def orbits(fan: Fan, codim: int) -> list:
    """All torus orbits of the given codimension, i.e. all cone faces
    spanned by exactly `codim` rays of some maximal cone, deduplicated
    and sorted by ray-id tuple."""
    if not 0 <= codim <= fan.dimension:
        raise ValueError(f"codimension {codim} out of range 0..{fan.dimension}")
    faces = set()
    for c in fan.maximal_cones:
        for sub in combinations(c.ray_ids, codim):
            faces.add(sub)
    return [OrbitId(Cone(f)) for f in sorted(faces)]


def point_on_divisor(orbit: OrbitId, ray_id: int) -> bool:
    """A general point of the orbit lies on E_j iff e_j spans a ray of
    the orbit's cone."""
    return ray_id in orbit.cone


# -- triangulation search -------------------------------------------------


def _boundary_edges(rays: Sequence[Ray]) -> set:
    """Forced boundary edges: consecutive points along each side v_i = 0.

    A unimodular triangle cannot have a lattice point in the interior of
    an edge, so the subdivision of each side of the junior simplex is
    forced to be the chain of consecutive lattice points on it.
    """
    forced = set()
    for i in range(3):
        side = [r for r in rays if r.generator[i] == 0]
        key = (i + 1) % 3
        side.sort(key=lambda r: r.generator[key])
        for a, b in zip(side, side[1:]):
            forced.add(frozenset((a.id, b.id)))
    return forced


def _apply_coordinate_perm(perm: Sequence[int], v: Vector) -> Vector:
    """perm is 1-based: the image point is (v[perm[1]], ..., v[perm[n]])."""
    return tuple(v[p - 1] for p in perm)


def ray_permutation(rays: Sequence[Ray], perm: Sequence[int]) -> dict:
    """The ray-id permutation induced by a coordinate permutation.

    Raises if the permuted generator set differs from the original one
    (the point configuration is then not symmetric under perm).
    """
    by_gen = {r.generator: r.id for r in rays}
    mapping = {}
    for r in rays:
        image = _apply_coordinate_perm(perm, r.generator)
        if image not in by_gen:
            raise ValueError(f"point set is not invariant: ray {r.id} maps off it")
    # second loop only after the invariance of the whole set is known
    for r in rays:
        mapping[r.id] = by_gen[_apply_coordinate_perm(perm, r.generator)]
    return mapping


def search_symmetric_triangulations(
    lat: LatticeN,
    required_edges: Sequence = (),
    symmetry: Sequence[int] | None = None,
    rays: Sequence[Ray] | None = None,
) -> list:
    """All unimodular triangulations of the junior simplex on the full
    junior point set, containing every required edge and invariant under
    the given coordinate permutation.

    The search is a backtracking tiling: candidate triangles are the
    unimodular triples; each boundary edge must be used exactly once and
    each interior edge zero or two times; the recursion always extends
    the smallest open edge, and every placement is checked exactly for
    interior-disjointness against the placed triangles.  Required edges
    start out "open", which both forces their presence and prunes early.

    Returns Fan objects in a deterministic order (sorted cone lists).
    """
    if lat.dimension != 3:
        raise ValueError("triangulation search is only supported for n = 3")
    if rays is None:
        rays = junior_points(lat)
    rays = list(rays)
    sections = {r.id: _section(r.generator) for r in rays}
    gens = {r.id: r.generator for r in rays}

    candidates = []
    for trio in combinations([r.id for r in rays], 3):
        if lat.cone_is_basic([gens[i] for i in trio]):
            candidates.append(tuple(sorted(trio)))
    candidates.sort()
    by_edge: dict = {}
    for t in candidates:
        for e in combinations(t, 2):
            by_edge.setdefault(frozenset(e), []).append(t)

    boundary = _boundary_edges(rays)
    required = {frozenset((int(a), int(b))) for a, b in required_edges}
    for e in required:
        if e in boundary:
            continue
        if e not in by_edge:
            return []  # no unimodular triangle can ever contain this edge

    uses: dict = {}
    placed: list = []
    placed_tris: list = []
    results: dict = {}

    def capacity(e) -> int:
        return 1 if e in boundary else 2

    def open_edges():
        opened = {e for e in required if uses.get(e, 0) == 0}
        opened.update(e for e in boundary if uses.get(e, 0) == 0 and placed)
        opened.update(
            e for e, k in uses.items() if 0 < k < capacity(e)
        )
        return opened

    def place(t) -> bool:
        tri = tuple(sections[i] for i in t)
        for other in placed_tris:
            if not _interiors_disjoint(tri, other):
                return False
        for e in combinations(t, 2):
            if uses.get(frozenset(e), 0) >= capacity(frozenset(e)):
                return False
        for e in combinations(t, 2):
            uses[frozenset(e)] = uses.get(frozenset(e), 0) + 1
        placed.append(t)
        placed_tris.append(tri)
        return True

    def unplace(t):
        for e in combinations(t, 2):
            uses[frozenset(e)] -= 1
        placed.pop()
        placed_tris.pop()

    def recurse():
        opened = open_edges()
        if not opened:
            if not placed:
                return
            total = sum(_tri_area2(tri) for tri in placed_tris)
            assert total == 1, "edge bookkeeping closed a non-tiling"
            results[frozenset(placed)] = sorted(placed)
            return
        edge = min(opened, key=sorted)
        for t in by_edge.get(edge, []):
            if place(t):
                recurse()
                unplace(t)

    # seed: the first boundary edge must be covered by exactly one triangle
    if not boundary:
        return []
    seed = min(boundary, key=sorted)
    for t in by_edge.get(seed, []):
        if place(t):
            recurse()
            unplace(t)

    tri_sets = sorted(results.values())
    fans = [
        Fan(tuple(rays), tuple(Cone(t) for t in ts))
        for ts in tri_sets
    ]

    if required:
        fans = [
            f
            for f in fans
            if all(
                any(e <= set(c.ray_ids) for c in f.maximal_cones)
                for e in required
            )
        ]
    if symmetry is not None:
        perm = ray_permutation(rays, symmetry)
        kept = []
        for f in fans:
            cones = {tuple(sorted(c.ray_ids)) for c in f.maximal_cones}
            image = {tuple(sorted(perm[i] for i in c)) for c in cones}
            if image == cones:
                kept.append(f)
        fans = kept
    return fans


# -- projectivity ----------------------------------------------------------


def _interior_walls(fan: Fan) -> list:
    """Pairs of maximal cones sharing an (n-1)-face, with the shared face."""
    walls = {}
    for c in fan.maximal_cones:
        for w in combinations(c.ray_ids, len(c.ray_ids) - 1):
            walls.setdefault(w, []).append(c)
    out = []
    for w, cs in sorted(walls.items()):
        if len(cs) == 2:
            out.append((w, cs[0], cs[1]))
        elif len(cs) > 2:
            raise ValueError(f"wall {w} is shared by {len(cs)} cones")
    return out


def _fourier_motzkin_feasible(rows: list, num_vars: int) -> bool:
    """Feasibility of a homogeneous system of strict inequalities row.x > 0.

    Classic exact elimination: a variable is removed by combining each
    positive-coefficient row with each negative-coefficient row; a row
    with all coefficients zero certifies infeasibility (it reads 0 > 0).
    Rows are normalised and deduplicated to keep the blow-up in check.
    """

    def normalise(row):
        lead = next((x for x in row if x != 0), None)
        if lead is None:
            return None
        scale = abs(lead)
        return tuple(x / scale for x in row)

    current = set()
    for row in rows:
        norm = normalise(tuple(row))
        if norm is None:
            return False
        current.add(norm)

    for var in range(num_vars):
        pos = [r for r in current if r[var] > 0]
        neg = [r for r in current if r[var] < 0]
        rest = {r for r in current if r[var] == 0}
        for p in pos:
            for q in neg:
                combo = tuple(
                    p[i] * (-q[var]) + q[i] * p[var] for i in range(num_vars)
                )
                norm = normalise(combo)
                if norm is None:
                    return False
                rest.add(norm)
        current = rest
    return True


def is_projective(fan: Fan) -> bool:
    """Existence of a strictly convex piecewise-linear support function.

    One height variable per ray; for every interior wall shared by cones
    sigma = {a, b, c} and sigma' = (wall + {d}), expand e_d over sigma's
    generators, e_d = lam_a e_a + lam_b e_b + lam_c e_c, and require

        lam_a h_a + lam_b h_b + lam_c h_c - h_d > 0.

    Local strict convexity across every wall of a fan with convex
    support is equivalent to global strict convexity, i.e. to the
    subdivision being regular and the resolution projective over the
    quotient.  Feasibility is decided by exact Fourier-Motzkin.
    """
    ids = list(fan.ray_ids)
    pos = {ray_id: k for k, ray_id in enumerate(ids)}
    rows = []
    for wall, c1, c2 in _interior_walls(fan):
        for sigma, other in ((c1, c2), (c2, c1)):
            d = next(i for i in other.ray_ids if i not in sigma.ray_ids)
            lam = solve_linear(fan.generators(sigma), fan.ray(d).generator)
            row = [Fraction(0)] * len(ids)
            for coeff, i in zip(lam, sigma.ray_ids):
                row[pos[i]] += coeff
            row[pos[d]] -= 1
            rows.append(row)
            break  # one strict inequality per wall suffices (symmetric)
    if not rows:
        return True
    return _fourier_motzkin_feasible(rows, len(ids))
