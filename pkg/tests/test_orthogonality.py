from __future__ import annotations

from fractions import Fraction

import pytest

from gnatfam import (
    Arrow,
    ArrowType,
    Cone,
    Fan,
    GroupData,
    OrbitId,
    Ray,
    arrow_types,
    check_corollary2,
    check_pair,
    corollary_pairs,
    max_shift_family,
    same_orbit_certificate,
    shift_move,
    symmetry_reduction,
    zero_divisor_table,
)

import reference_values as rv


@pytest.fixture(scope="module")
def pair_s8_s17():
    return (OrbitId(Cone((8,))), OrbitId(Cone((1, 7))))


class TestArrowTypes:
    def test_sample_types(self, flagship_group, fan_y, max_shift_y, pair_s8_s17):
        types = arrow_types(max_shift_y, fan_y, flagship_group, pair_s8_s17)
        # B[chi_0_0, x1] = E_1: zero on the curve through E1, alive on S8
        assert types[Arrow((0, 0), 1)] is ArrowType.FIRST_ONLY
        # B[chi_0_1, x1] = E_1+E_4+E_5+E_8+E_9: zero on both orbits
        assert types[Arrow((0, 1), 1)] is ArrowType.NEITHER
        # B[chi_1_0, x1] = E_1+E_6+E_9: zero at the curve, not at S8
        assert types[Arrow((1, 0), 1)] is ArrowType.FIRST_ONLY
        # B[chi_2_1, x2] = E_2+E_10: alive at both
        assert types[Arrow((2, 1), 2)] is ArrowType.BOTH

    def test_swapping_the_pair_swaps_one_sided_types(
        self, flagship_group, fan_y, max_shift_y, pair_s8_s17
    ):
        fwd = arrow_types(max_shift_y, fan_y, flagship_group, pair_s8_s17)
        rev = arrow_types(
            max_shift_y, fan_y, flagship_group, (pair_s8_s17[1], pair_s8_s17[0])
        )
        swap = {
            ArrowType.FIRST_ONLY: ArrowType.SECOND_ONLY,
            ArrowType.SECOND_ONLY: ArrowType.FIRST_ONLY,
            ArrowType.BOTH: ArrowType.BOTH,
            ArrowType.NEITHER: ArrowType.NEITHER,
        }
        assert rev == {a: swap[t] for a, t in fwd.items()}

    def test_dense_orbit_never_sees_zeroes(self, flagship_group, fan_y, max_shift_y):
        dense = OrbitId(Cone(()))
        types = arrow_types(max_shift_y, fan_y, flagship_group, (dense, dense))
        assert set(types.values()) == {ArrowType.BOTH}


class TestCheckPair:
    def test_s8_s17_is_orthogonal(self, flagship_group, fan_y, max_shift_y, pair_s8_s17):
        verdict = check_pair(max_shift_y, fan_y, flagship_group, pair_s8_s17)
        assert verdict.orthogonal
        assert verdict.status == "orthogonal"
        assert verdict.components == rv.COMPONENTS_S8_S17
        assert verdict.pair_labels == ("S8", "S1,7")

    def test_s8_s17_witnesses_are_genuine(
        self, flagship_group, fan_y, max_shift_y, pair_s8_s17, flagship_quiver
    ):
        verdict = check_pair(max_shift_y, fan_y, flagship_group, pair_s8_s17)
        types = arrow_types(max_shift_y, fan_y, flagship_group, pair_s8_s17)
        for ev in verdict.component_evidence:
            comp = set(ev.vertices)
            fw, bw = ev.forward_witness, ev.backward_witness
            assert fw is not None and bw is not None
            if ev.forward_kind == "[0,1] emerging":
                assert types[fw] is ArrowType.SECOND_ONLY and fw.tail in comp
            else:
                assert ev.forward_kind == "[1,0] entering"
                assert types[fw] is ArrowType.FIRST_ONLY
                assert flagship_quiver.head(fw) in comp
            if ev.backward_kind == "[0,1] entering":
                assert types[bw] is ArrowType.SECOND_ONLY
                assert flagship_quiver.head(bw) in comp
            else:
                assert ev.backward_kind == "[1,0] emerging"
                assert types[bw] is ArrowType.FIRST_ONLY and bw.tail in comp

    def test_dense_pair_is_inconclusive(self, flagship_group, fan_y, max_shift_y):
        dense = OrbitId(Cone(()))
        verdict = check_pair(max_shift_y, fan_y, flagship_group, (dense, dense))
        assert not verdict.orthogonal
        assert verdict.status == "inconclusive"
        # a single all-vertex component with no one-sided witness
        assert len(verdict.components) == 1

    def test_surface_self_pair_is_inconclusive(self, flagship_group, fan_y, max_shift_y):
        s8 = OrbitId(Cone((8,)))
        verdict = check_pair(max_shift_y, fan_y, flagship_group, (s8, s8))
        assert verdict.status == "inconclusive"

    def test_never_claims_non_orthogonal(self, flagship_group, fan_y, max_shift_y):
        # the criterion is one-sided; the only statuses it may utter
        for pair in corollary_pairs(fan_y)[:12]:
            v = check_pair(max_shift_y, fan_y, flagship_group, pair)
            assert v.status in {"orthogonal", "inconclusive"}


class TestSameOrbitCertificate:
    def test_s8_self_pair_is_orthogonal(self, flagship_group, fan_y, max_shift_y):
        s8 = OrbitId(Cone((8,)))
        verdict = same_orbit_certificate(max_shift_y, fan_y, flagship_group, s8)
        assert verdict.orthogonal
        assert verdict.pair_labels == ("S8", "S8")
        gen = rv.RAY_GENERATORS[8]
        for vertices, witness in verdict.component_evidence:
            assert witness is not None
            assert any(witness.exponents)
            # the witness really is a coordinate on the orbit's torus
            assert sum(Fraction(e) * c for e, c in zip(witness.exponents, gen)) == 0

    def test_every_surface_self_pair_certified(self, flagship_group, fan_y, max_shift_y):
        for i in rv.EXCEPTIONAL_RAY_IDS:
            verdict = same_orbit_certificate(
                max_shift_y, fan_y, flagship_group, OrbitId(Cone((i,)))
            )
            assert verdict.orthogonal, i

    def test_dense_self_pair_is_orthogonal(self, flagship_group, fan_y, max_shift_y):
        dense = OrbitId(Cone(()))
        verdict = same_orbit_certificate(max_shift_y, fan_y, flagship_group, dense)
        assert verdict.orthogonal
        assert len(verdict.components) == 1

    def test_witness_cycles_close_up(
        self, flagship_group, fan_y, max_shift_y, flagship_quiver
    ):
        # the closing arrow of each witness joins vertices of its component
        s5 = OrbitId(Cone((5,)))
        verdict = same_orbit_certificate(max_shift_y, fan_y, flagship_group, s5)
        for vertices, witness in verdict.component_evidence:
            assert witness.arrow.tail in vertices
            assert flagship_quiver.head(witness.arrow) in vertices


class TestSmallestSurfaceCase:
    """A_1 surface singularity: one exceptional curve, everything by hand.

    The two alive arrows at the exceptional orbit both run from the
    trivial character to the sign character, acting by the two coordinate
    functions.  Their ratio x1/x2 is the coordinate on the orbit's own
    torus, so fibers at two distinct points only admit the zero morphism;
    the certificate must find exactly that cycle.
    """

    @pytest.fixture()
    def setup(self):
        g = GroupData((2,), ((1, 1),))
        rays = (
            Ray(1, (Fraction(1), Fraction(0))),
            Ray(2, (Fraction(0), Fraction(1))),
            Ray(3, (Fraction(1, 2), Fraction(1, 2))),
        )
        fan = Fan(rays, (Cone((1, 3)), Cone((2, 3))))
        fam = max_shift_family(g, fan)
        return g, fan, fam

    def test_family_values(self, setup):
        g, fan, fam = setup
        assert fam.divisor((1,)).coefficient(3) == Fraction(1, 2)
        assert fam.divisor((0,)).coefficient(3) == 0

    def test_alive_arrows(self, setup):
        g, fan, fam = setup
        table = zero_divisor_table(fam, g, fan)
        orbit = OrbitId(Cone((3,)))
        alive = sorted(
            (a for a, b in table.items() if b.coefficient(3) == 0),
            key=lambda a: (a.tail, a.coord),
        )
        assert alive == [Arrow((0,), 1), Arrow((0,), 2)]

    def test_certificate_matches_hand_computation(self, setup):
        g, fan, fam = setup
        verdict = same_orbit_certificate(fam, g=g, fan=fan, orbit=OrbitId(Cone((3,))))
        assert verdict.orthogonal
        ((vertices, witness),) = [
            (vs, w) for vs, w in verdict.component_evidence if len(vs) == 2
        ]
        assert vertices == ((0,), (1,))
        assert witness.exponents in {(1, -1), (-1, 1)}

    def test_linear_system_oracle(self, setup):
        # Hom between fibers at orbit parameters t and t': constants
        # (c0, c1) with c1 * v = v' * c0 for both alive arrows, where the
        # arrow values at the two points are (t, 1) and (t', 1) after
        # scaling.  Nonzero solutions exist iff t == t'.
        def hom_dimension(t, t_prime):
            # c1 * t = t' * c0  and  c1 * 1 = 1 * c0  =>  c0 (t - t') = 0
            solutions = []
            for c0 in (Fraction(0), Fraction(1), Fraction(2)):
                c1 = c0  # from the second equation
                if c1 * t == t_prime * c0:
                    solutions.append((c0, c1))
            nonzero = [s for s in solutions if any(s)]
            return bool(nonzero)

        assert not hom_dimension(Fraction(2), Fraction(3))
        assert not hom_dimension(Fraction(1, 2), Fraction(1, 3))
        assert hom_dimension(Fraction(2), Fraction(2))


class TestCorollarySweep:
    def test_pair_list(self, fan_y):
        pairs = corollary_pairs(fan_y)
        assert len(pairs) == 28 + 63
        surfaces = [(f"S{i}", f"S{j}") for i in rv.EXCEPTIONAL_RAY_IDS
                    for j in rv.EXCEPTIONAL_RAY_IDS if i <= j]
        assert [(a.label, b.label) for a, b in pairs[:28]] == surfaces
        curve_labels = {b.label for _, b in pairs[28:]}
        assert curve_labels == {f"S{i},{j}" for i, j in rv.EXCEPTIONAL_CURVES}

    def test_full_sweep_passes(self, flagship_group, fan_y, max_shift_y):
        report = check_corollary2(max_shift_y, fan_y, flagship_group)
        assert report.family_valid
        assert report.invalid_arrows == ()
        assert len(report.verdicts) == 91
        assert report.passed
        assert report.failing_pairs == ()
        assert all(v.status == "orthogonal" for v in report.verdicts)

    def test_invalid_family_rejected_before_pairs(self, flagship_group, fan_y, max_shift_y):
        broken = shift_move(max_shift_y, [(1, 0)], 4)
        report = check_corollary2(broken, fan_y, flagship_group)
        assert not report.family_valid
        assert report.invalid_arrows
        assert report.verdicts == ()
        assert not report.passed

    def test_cluster_fan_also_passes(self, flagship_group, fan_cluster):
        fam = max_shift_family(flagship_group, fan_cluster)
        report = check_corollary2(fam, fan_cluster, flagship_group)
        assert report.passed
        assert len(report.verdicts) == len(corollary_pairs(fan_cluster))


class TestSymmetryReduction:
    def test_rotation_is_invariant(self, fan_y, flagship_group, max_shift_y):
        red = symmetry_reduction(fan_y, flagship_group, rv.ROTATION_PERM, fam=max_shift_y)
        assert red.invariant
        assert red.reasons == ()
        assert dict(red.ray_map) == rv.ROTATION_RAY_MAP
        charmap = dict(red.character_map)
        for chi, image in rv.ROTATION_CHAR_MAP_SAMPLES.items():
            assert charmap[chi] == image

    def test_orbit_classes(self, fan_y, flagship_group, max_shift_y):
        red = symmetry_reduction(fan_y, flagship_group, rv.ROTATION_PERM, fam=max_shift_y)
        got = tuple(
            tuple(set(o.cone.ray_ids) for o in cls) for cls in red.orbit_classes
        )
        assert got == rv.ROTATION_ORBIT_CLASSES

    def test_pair_classes_partition_everything(self, fan_y, flagship_group, max_shift_y):
        red = symmetry_reduction(fan_y, flagship_group, rv.ROTATION_PERM, fam=max_shift_y)
        assert len(red.pair_classes) == rv.ROTATION_PAIR_CLASS_COUNT
        sizes = sorted(len(c) for c in red.pair_classes)
        assert sizes == [1] + [3] * 30
        total = [p for cls in red.pair_classes for p in cls]
        assert len(total) == len(set(total)) == 91
        # the one fixed pair is the self-pair of the rotation-fixed surface
        (fixed,) = [cls[0] for cls in red.pair_classes if len(cls) == 1]
        assert fixed[0].label == fixed[1].label == "S5"

    def test_verdicts_transport_across_classes(self, fan_y, flagship_group, max_shift_y):
        red = symmetry_reduction(fan_y, flagship_group, rv.ROTATION_PERM, fam=max_shift_y)
        g = flagship_group
        for cls in red.pair_classes:
            statuses = set()
            components_per_member = []
            for a, b in cls:
                if a == b:
                    v = same_orbit_certificate(max_shift_y, fan_y, g, a)
                else:
                    v = check_pair(max_shift_y, fan_y, g, (a, b))
                statuses.add(v.status)
                components_per_member.append(sorted(len(c) for c in v.components))
            assert len(statuses) == 1
            # transported verdicts agree in shape, not just in status
            assert len({tuple(c) for c in components_per_member}) == 1

    def test_identity_permutation_gives_singletons(self, fan_y, flagship_group, max_shift_y):
        red = symmetry_reduction(fan_y, flagship_group, (1, 2, 3), fam=max_shift_y)
        assert red.invariant
        assert all(len(c) == 1 for c in red.orbit_classes)
        assert len(red.pair_classes) == 91

    def test_non_symmetry_degrades_to_singletons(self, fan_y, flagship_group, max_shift_y):
        # swapping x2 and x3 maps the ray set to itself but not the cones
        red = symmetry_reduction(fan_y, flagship_group, (1, 3, 2), fam=max_shift_y)
        assert not red.invariant
        assert any("cone set" in r for r in red.reasons)
        assert all(len(c) == 1 for c in red.pair_classes)
        assert len(red.pair_classes) == 91

    def test_asymmetric_family_degrades(self, fan_y, flagship_group, max_shift_y):
        lowered = shift_move(max_shift_y, [(1, 0)], 4)  # breaks the symmetry
        red = symmetry_reduction(fan_y, flagship_group, rv.ROTATION_PERM, fam=lowered)
        assert not red.invariant
        assert any("family" in r for r in red.reasons)

    def test_reduction_without_family_checks_geometry_only(self, fan_y, flagship_group):
        red = symmetry_reduction(fan_y, flagship_group, rv.ROTATION_PERM)
        assert red.invariant
        assert len(red.pair_classes) == rv.ROTATION_PAIR_CLASS_COUNT
