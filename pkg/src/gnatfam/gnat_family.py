"""Divisor-level model of gnat-families.

A normalized gnat-family on a toric resolution is recorded as one
G-Weil divisor D_chi per character, the trivial character getting the
zero divisor.  All sheaf theory is deliberately absent: effectivity of
the per-arrow divisors of zeroes

    B_(chi, x_k) = D_{chi^{-1}} + (x_k) - D_{chi^{-1} * rho(x_k)}

is the whole validity story at this level, and the maximal-shift
coefficients

    q_{chi, e} = min { <e, m> : m >= 0, rho(m) = chi }

produce the distinguished family that dominates every other normalized
one coefficientwise.  The minimum may be taken over the finite box
prod_k [0, o_k) where o_k is the order of rho(x_k): subtracting o_k
from any exponent >= o_k preserves the weight and never increases a
non-negative linear form, so some minimiser lives in the box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterable, Mapping, Sequence

from .group_characters import (
    Character,
    GroupData,
    character_group,
    coordinate_weight_order,
    rho,
)
from .mckay_quiver import Arrow, McKayQuiver, build_quiver
from .toric_fan import Fan, Ray


@dataclass(frozen=True)
class GWeilDivisor:
    """Rational coefficients over the fan's rays; absent rays mean zero."""

    coefficients: tuple

    def __post_init__(self):
        items = tuple(
            sorted(
                (int(ray_id), Fraction(c))
                for ray_id, c in dict(self.coefficients).items()
                if Fraction(c) != 0
            )
        )
        object.__setattr__(self, "coefficients", items)

    @classmethod
    def of(cls, mapping: Mapping | Iterable = ()) -> "GWeilDivisor":
        return cls(tuple(dict(mapping).items()))

    def coefficient(self, ray_id: int) -> Fraction:
        for i, c in self.coefficients:
            if i == ray_id:
                return c
        return Fraction(0)

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self.coefficients)

    def items(self):
        return self.coefficients

    def __add__(self, other: "GWeilDivisor") -> "GWeilDivisor":
        out = dict(self.coefficients)
        for i, c in other.coefficients:
            out[i] = out.get(i, Fraction(0)) + c
        return GWeilDivisor.of(out)

    def __sub__(self, other: "GWeilDivisor") -> "GWeilDivisor":
        out = dict(self.coefficients)
        for i, c in other.coefficients:
            out[i] = out.get(i, Fraction(0)) - c
        return GWeilDivisor.of(out)

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for _, c in self.coefficients)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for i, c in self.coefficients:
            terms.append(f"E_{i}" if c == 1 else f"{c} E_{i}")
        return " + ".join(terms)


@dataclass(frozen=True)
class GnatFamily:
    """One divisor per character; normalized (trivial character -> 0).

    Invalid divisor data (some B_q not effective/integral) is
    representable on purpose -- the maximality sweep has to produce and
    reject such candidates -- and is detected by is_valid_family, never
    at construction.
    """

    divisors: tuple

    def __post_init__(self):
        items = tuple(sorted((tuple(chi), d) for chi, d in dict(self.divisors).items()))
        if not items:
            raise ValueError("a family needs at least the trivial character")
        trivial = (0,) * len(items[0][0])
        lookup = dict(items)
        if trivial not in lookup:
            raise ValueError("family is missing the trivial character")
        if lookup[trivial].coefficients:
            raise ValueError("family is not normalized: trivial character has a nonzero divisor")
        object.__setattr__(self, "divisors", items)

    @classmethod
    def of(cls, mapping: Mapping) -> "GnatFamily":
        return cls(tuple(mapping.items()))

    def divisor(self, chi: Character) -> GWeilDivisor:
        for c, d in self.divisors:
            if c == tuple(chi):
                return d
        raise KeyError(f"no divisor for character {chi}")

    @property
    def characters(self) -> tuple:
        return tuple(c for c, _ in self.divisors)


@dataclass(frozen=True)
class Theta:
    """A rational character weighting summing to zero over G^v."""

    values: tuple

    def __post_init__(self):
        items = tuple(
            sorted((tuple(chi), Fraction(v)) for chi, v in dict(self.values).items())
        )
        if sum(v for _, v in items) != 0:
            raise ValueError("theta must sum to zero over the characters")
        object.__setattr__(self, "values", items)

    @classmethod
    def of(cls, mapping: Mapping) -> "Theta":
        return cls(tuple(mapping.items()))

    def value(self, chi: Character) -> Fraction:
        for c, v in self.values:
            if c == tuple(chi):
                return v
        return Fraction(0)


def theta_plus(g: GroupData) -> Theta:
    """The standard generic weighting: 1 - |G| on the trivial character,
    1 everywhere else."""
    values = {chi: Fraction(1) for chi in character_group(g)}
    values[g.trivial_character] = Fraction(1 - g.order)
    return Theta.of(values)


# -- maximal-shift coefficients ---------------------------------------------


def _exponent_box(g: GroupData):
    return product(*(range(coordinate_weight_order(g, k)) for k in range(1, g.n + 1)))


def max_shift_coefficient(g: GroupData, ray: Ray, chi: Character) -> Fraction:
    """min <ray.generator, m> over non-negative m with rho(m) = chi.

    Raises for characters outside the image of rho, where the defining
    set is empty (cannot happen for faithful weight data).
    """
    chi = tuple(chi)
    best = None
    for m in _exponent_box(g):
        if rho(g, m) == chi:
            val = sum(c * e for c, e in zip(ray.generator, m))
            if best is None or val < best:
                best = val
    if best is None:
        raise ValueError(f"character {chi} is not a weight of any monomial")
    return best


def max_shift_family(g: GroupData, fan: Fan) -> GnatFamily:
    """The coefficientwise-maximal normalized family on the fan.

    Divisors are supported on the exceptional rays only; the coordinate
    rays never contribute because rho(x_k) is generated by the other
    coordinates' weights (determinant one), so each character has a
    minimising monomial with k-th exponent zero.  One sweep of the
    exponent box fills the whole character-by-ray table.
    """
    exceptional = [fan.ray(i) for i in fan.exceptional_ray_ids]
    table: dict = {}
    for m in _exponent_box(g):
        chi = rho(g, m)
        for r in exceptional:
            val = sum(c * e for c, e in zip(r.generator, m))
            key = (chi, r.id)
            if key not in table or val < table[key]:
                table[key] = val
    divisors = {}
    for chi in character_group(g):
        coeffs = {}
        for r in exceptional:
            if (chi, r.id) not in table:
                raise ValueError(f"character {chi} is not a weight of any monomial")
            coeffs[r.id] = table[(chi, r.id)]
        divisors[chi] = GWeilDivisor.of(coeffs)
    family = GnatFamily.of(divisors)
    ok, violators = is_valid_family(family, g, fan)
    if not ok:
        raise RuntimeError(
            "maximal-shift family failed its own validity check; offending arrows: "
            + ", ".join(str(a) for a in violators[:5])
        )
    return family


def principal_divisor(g: GroupData, fan: Fan, i: int) -> GWeilDivisor:
    """Divisor of the coordinate function x_i on the resolution.

    The coefficient of E_j is the i-th coordinate of e_j's primitive
    generator: the valuation of x_i along the divisor of the ray e_j.
    """
    if not 1 <= i <= g.n:
        raise ValueError(f"coordinate index {i} out of range 1..{g.n}")
    return GWeilDivisor.of({r.id: r.generator[i - 1] for r in fan.rays})


def zero_divisor(fam: GnatFamily, g: GroupData, fan: Fan, arrow: Arrow) -> GWeilDivisor:
    """Where the family's action map along the arrow vanishes.

    For q = (chi, x_k) this is D_{chi^{-1}} + (x_k) - D_{chi^{-1}*rho(x_k)};
    the middle term carries the coordinate rays, the D-terms the
    exceptional ones.  For a valid family every coefficient is a
    non-negative integer.
    """
    chi_inv = g.char_inv(arrow.tail)
    unit = tuple(1 if j == arrow.coord - 1 else 0 for j in range(g.n))
    head_inv = g.char_mul(chi_inv, rho(g, unit))
    return (
        fam.divisor(chi_inv)
        + principal_divisor(g, fan, arrow.coord)
        - fam.divisor(head_inv)
    )


def zero_divisor_table(fam: GnatFamily, g: GroupData, fan: Fan) -> dict:
    """All divisors of zeroes at once, keyed by arrow."""
    quiver = build_quiver(g)
    return {a: zero_divisor(fam, g, fan, a) for a in quiver.arrows}


def is_valid_family(fam: GnatFamily, g: GroupData, fan: Fan):
    """(all B_q effective and integral?, list of violating arrows)."""
    bad = [
        a
        for a, b in zero_divisor_table(fam, g, fan).items()
        if not (b.is_effective and b.is_integral)
    ]
    return (not bad, bad)


def theta_weight(fam: GnatFamily, theta: Theta) -> Fraction:
    """sum over characters and rays of theta(chi) * coefficient."""
    total = Fraction(0)
    for chi, d in fam.divisors:
        t = theta.value(chi)
        if t:
            total += t * sum(c for _, c in d.items())
    return total


def shift_move(fam: GnatFamily, J: Iterable, E: int) -> GnatFamily:
    """Add the prime divisor E once to every divisor with character in J.

    J must be a nonempty proper subset of the characters avoiding the
    trivial one (normalization survives).  The result is a well-formed
    divisor set but frequently an invalid family; callers judge it with
    is_valid_family.  A move is invalid exactly when some arrow crosses
    from the complement of J into J with a zero E-coefficient in its
    divisor of zeroes: that coefficient would drop to -1.
    """
    J = {tuple(chi) for chi in J}
    chars = set(fam.characters)
    trivial = (0,) * len(next(iter(chars)))
    if not J:
        raise ValueError("J must be nonempty")
    if not J <= chars:
        raise ValueError("J contains unknown characters")
    if J == chars:
        raise ValueError("J must be a proper subset")
    if trivial in J:
        raise ValueError("J must not contain the trivial character")
    bump = GWeilDivisor.of({E: Fraction(1)})
    return GnatFamily.of(
        {chi: (d + bump if chi in J else d) for chi, d in fam.divisors}
    )


def direct_transform(fam: GnatFamily, from_fan: Fan, to_fan: Fan) -> GnatFamily:
    """Reinterpret the coefficients over another fan with the same rays.

    Two crepant resolutions of one quotient are isomorphic away from
    codimension two, so prime divisors correspond ray-by-ray; matching
    is by primitive generator, not by id.  Validity on the target is the
    caller's question to ask.
    """
    source = {r.generator: r.id for r in from_fan.rays}
    target = {r.generator: r.id for r in to_fan.rays}
    if set(source) != set(target):
        raise ValueError("fans do not share their ray generators")
    relabel = {source[gen]: target[gen] for gen in source}
    return GnatFamily.of(
        {
            chi: GWeilDivisor.of({relabel[i]: c for i, c in d.items()})
            for chi, d in fam.divisors
        }
    )


# -- deterministic table emitters -------------------------------------------


def _format_fraction(x: Fraction) -> str:
    return str(x)


def _format_mixed(x: Fraction, denom: int) -> str:
    """Render x as 'w k/denom' (whole part + remainder), e.g. 4/3 -> '1 2/6'."""
    if x == 0:
        return "0"
    whole, rem = divmod(x.numerator * (denom // x.denominator), denom)
    parts = []
    if whole:
        parts.append(str(whole))
    if rem:
        parts.append(f"{rem}/{denom}")
    return " ".join(parts)


def q_table_tsv(g: GroupData, fan: Fan, fam: GnatFamily, style: str = "fraction") -> str:
    """TSV of the family's coefficients: one row per character in
    lexicographic order, one column per exceptional ray."""
    cols = sorted(fan.exceptional_ray_ids)
    if style == "mixed":
        denom = lcm(1, *(c.denominator for _, d in fam.divisors for _, c in d.items()))
        fmt = lambda x: _format_mixed(x, denom)
    elif style == "fraction":
        fmt = _format_fraction
    else:
        raise ValueError(f"unknown table style {style!r}")
    lines = ["\t".join(["chi"] + [f"E{c}" for c in cols])]
    for chi in character_group(g):
        d = fam.divisor(chi)
        lines.append(
            "\t".join([g.character_label(chi)] + [fmt(d.coefficient(c)) for c in cols])
        )
    return "\n".join(lines) + "\n"


def principal_table_tsv(g: GroupData, fan: Fan) -> str:
    """TSV of the coordinate functions' divisors over all rays."""
    cols = sorted(fan.ray_ids)
    lines = ["\t".join(["x"] + [f"E{c}" for c in cols])]
    for i in range(1, g.n + 1):
        d = principal_divisor(g, fan, i)
        lines.append("\t".join([f"x{i}"] + [str(d.coefficient(c)) for c in cols]))
    return "\n".join(lines) + "\n"


def zero_divisor_listing(fam: GnatFamily, g: GroupData, fan: Fan) -> str:
    """One line per arrow: 'B[chi_i_j, xk] = E_a + E_b + ...', sorted."""
    quiver = build_quiver(g)
    lines = []
    for a in sorted(quiver.arrows, key=lambda a: (a.tail, a.coord)):
        b = zero_divisor(fam, g, fan, a)
        lines.append(f"B[{g.character_label(a.tail)}, x{a.coord}] = {b}")
    return "\n".join(lines) + "\n"
