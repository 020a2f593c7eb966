"""Finite abelian subgroups of SL_n(C) given by diagonal weight data.

A group G = Z/r_1 x ... x Z/r_s acts diagonally on C^n, the i-th
coordinate scaling by xi_1^{a[1][i]} * ... * xi_s^{a[s][i]} where xi_j
is a fixed primitive r_j-th root of unity.  Since every computation
downstream (quiver, divisor coefficients, orthogonality) only consumes
the weights, the matrix realisation is never materialised.

Characters of G are s-tuples of residues, component j taken mod r_j;
the trivial character is the zero tuple.  Monomials are n-tuples of
exponents.  Both are plain tuples of ints: cheap, hashable, and the
group arithmetic lives on GroupData.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Sequence

Character = tuple  # s residues, component j in [0, r_j)
Monomial = tuple   # n integer exponents


@dataclass(frozen=True)
class GroupData:
    """Weight presentation of a finite abelian subgroup of SL_n(C).

    factor_orders -- the cyclic orders (r_1, ..., r_s), each >= 1.
    weights       -- s x n matrix; row j lists the weights of the j-th
                     cyclic factor on the n coordinates, 0 <= a[j][i] < r_j.

    The determinant-one condition forces every row to sum to 0 mod its
    order; construction rejects weight data violating it.
    """

    factor_orders: tuple
    weights: tuple

    def __post_init__(self):
        orders = tuple(int(r) for r in self.factor_orders)
        weights = tuple(tuple(int(a) for a in row) for row in self.weights)
        object.__setattr__(self, "factor_orders", orders)
        object.__setattr__(self, "weights", weights)
        if not orders:
            raise ValueError("need at least one cyclic factor")
        if any(r < 1 for r in orders):
            raise ValueError("factor orders must be positive")
        if len(weights) != len(orders):
            raise ValueError("one weight row per cyclic factor required")
        if not weights[0]:
            raise ValueError("need at least one coordinate")
        n = len(weights[0])
        if any(len(row) != n for row in weights):
            raise ValueError("ragged weight matrix")
        for r, row in zip(orders, weights):
            if any(not (0 <= a < r) for a in row):
                raise ValueError(f"weights of a factor of order {r} must lie in [0, {r})")
            if sum(row) % r != 0:
                raise ValueError(
                    f"weight row {row} sums to {sum(row)} != 0 mod {r}; "
                    "the action would not land in SL_n"
                )

    @property
    def n(self) -> int:
        """Dimension of the ambient coordinate space."""
        return len(self.weights[0])

    @property
    def order(self) -> int:
        return prod(self.factor_orders)

    @property
    def num_factors(self) -> int:
        return len(self.factor_orders)

    @property
    def trivial_character(self) -> Character:
        return (0,) * self.num_factors

    # -- character-group arithmetic -------------------------------------

    def char_mul(self, a: Character, b: Character) -> Character:
        return tuple((x + y) % r for x, y, r in zip(a, b, self.factor_orders))

    def char_inv(self, a: Character) -> Character:
        return tuple((-x) % r for x, r in zip(a, self.factor_orders))

    def character_label(self, chi: Character) -> str:
        """Stable ASCII name used in DOT output and tables: chi_i_j..."""
        return "chi_" + "_".join(str(c) for c in chi)


def character_group(g: GroupData) -> list:
    """All |G| characters in lexicographic order of their residue tuples."""
    return [chi for chi in product(*(range(r) for r in g.factor_orders))]


def rho(g: GroupData, m: Sequence) -> Character:
    """Weight of the monomial x^m: component j is sum_i a[j][i]*m_i mod r_j.

    Additive in m, so rho is a homomorphism Z^n -> G^v.  Exponents may
    be negative (Laurent monomials); callers needing the non-negative
    orthant restrict the domain themselves.
    """
    if len(m) != g.n:
        raise ValueError(f"monomial has {len(m)} exponents, expected {g.n}")
    return tuple(
        sum(a * mi for a, mi in zip(row, m)) % r
        for row, r in zip(g.weights, g.factor_orders)
    )


def coordinate_weight_order(g: GroupData, i: int) -> int:
    """Order o_i of rho(x_i) in the character group (coordinates are 1-based).

    x_i^{o_i} is the minimal invariant power of x_i, which bounds the
    exponent box that monomial minimisation has to search.
    """
    if not 1 <= i <= g.n:
        raise ValueError(f"coordinate index {i} out of range 1..{g.n}")
    # order of the residue a mod r is r / gcd(r, a); the tuple order is the lcm
    return lcm(*(r // gcd(r, row[i - 1]) for row, r in zip(g.weights, g.factor_orders)))


def image_of_rho(g: GroupData) -> list:
    """The subgroup of G^v generated by the coordinate weights, sorted.

    Its size measures faithfulness of the action on the torus side:
    the action is faithful iff the image is all of G^v.  Kept as a
    diagnostic; the library accepts non-faithful weight data.
    """
    gens = [rho(g, tuple(1 if j == i else 0 for j in range(g.n))) for i in range(g.n)]
    seen = {g.trivial_character}
    frontier = [g.trivial_character]
    while frontier:
        chi = frontier.pop()
        for gen in gens:
            nxt = g.char_mul(chi, gen)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen)


def is_faithful(g: GroupData) -> bool:
    return len(image_of_rho(g)) == g.order


def character_permutation(g: GroupData, perm: Sequence[int]) -> dict:
    """The character map induced by a coordinate permutation.

    `perm` is 1-based and shuffles coordinates as v -> (v[perm_1], ...,
    v[perm_n]).  The same shuffle acts on exponent tuples, and the
    induced map on characters is psi(rho(m)) = rho(shuffled m); this is
    exactly the transport that makes the minimal-coefficient table
    invariant together with the matching ray permutation (the
    permutation matrix is its own inverse-transpose, so points and
    exponents shuffle identically).

    Raises if psi is not well defined on all of G^v -- which happens
    precisely when the weight data is not faithful, in which case
    symmetry transport is unavailable and callers fall back to full
    sweeps.
    """
    if sorted(perm) != list(range(1, g.n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{g.n}")
    # The kernel of rho is generated by the box differences together with
    # the vectors o_k * e_k; the induced map is well defined iff the
    # shuffle preserves that kernel, so both generator kinds get checked.
    for k in range(1, g.n + 1):
        v = [0] * g.n
        v[k - 1] = coordinate_weight_order(g, k)
        if rho(g, tuple(v[p - 1] for p in perm)) != g.trivial_character:
            raise ValueError("coordinate permutation does not induce a character map")
    mapping: dict = {}
    box = product(*(range(coordinate_weight_order(g, k)) for k in range(1, g.n + 1)))
    for m in box:
        chi = rho(g, m)
        image = rho(g, tuple(m[p - 1] for p in perm))
        if mapping.setdefault(chi, image) != image:
            raise ValueError("coordinate permutation does not induce a character map")
    missing = [chi for chi in character_group(g) if chi not in mapping]
    if missing:
        raise ValueError(
            "weight data is not faithful; induced character map is undefined on "
            f"{len(missing)} characters"
        )
    return mapping
