"""Operator-space audits, rough quotients and representations."""

import json
import random

import pytest

from granum import (Granulation, GranularOperatorSpace, Universe,
                    audit_full_underlap, audit_lower_stability,
                    audit_weak_representability, basic_rough_order,
                    interval_representation, knowledge_validity_check,
                    lower_approx, rough_objects, upper_approx)
from granum import parthood as ph

from conftest import granulation_suite


def classical_ops(granulation):
    return (lambda a: lower_approx(a, granulation),
            lambda a: upper_approx(a, granulation))


class TestWeakRepresentability:
    def test_classical_space_passes(self, space5):
        report = audit_weak_representability(space5)
        assert report.passed and report.mode == "exhaustive"
        assert report.checked == 32

    def test_explicit_upper_violation_witnessed(self, u5, gran5):
        lo, up = classical_ops(gran5)
        bad = u5.region("13")

        def upper(a):
            return bad if a == u5.region("1") else up(a)
        space = GranularOperatorSpace(u5, gran5, lower=lo, upper=upper)
        report = audit_weak_representability(space)
        assert not report.passed
        assert any(w["region"] == u5.region("1") and w["side"] == "upper"
                   for w in report.witnesses)

    def test_singleton_granulation_accepts_any_operators(self):
        u = Universe(("a", "b", "c"))
        g = Granulation.from_sets(u, [["a"], ["b"], ["c"]])
        rng = random.Random(3)
        table = {a: u.region_from_bits(rng.randrange(8)) for a in u.all_regions()}
        space = GranularOperatorSpace(u, g, lower=table.get, upper=table.get)
        assert audit_weak_representability(space).passed


class TestLowerStability:
    def test_rough_inclusion_passes(self, space5):
        assert audit_lower_stability(space5).passed

    def test_ultra_cautious_report_emitted(self, u5, gran5):
        space = GranularOperatorSpace(u5, gran5, parthood=ph.ULTRA_CAUTIOUS)
        report = audit_lower_stability(space)
        assert report.axiom == "lower-stability"
        assert report.mode == "exhaustive"

    def test_whole_universe_granule_trivial(self):
        u = Universe(("a", "b"))
        g = Granulation.from_sets(u, [["a", "b"]])
        assert audit_lower_stability(GranularOperatorSpace(u, g)).passed


class TestFullUnderlap:
    def test_block_pair_has_definite_witness(self, space5, u5):
        report = audit_full_underlap(space5)
        assert report.passed
        detail = next(d for d in report.details
                      if {tuple(sorted(p)) for p in d["pair"]} ==
                      {("1", "2"), ("3",)})
        z = detail["witness"]
        assert space5.is_definite(z)
        assert ph.proper_part(space5.parthood, u5.region("12"), z, space5)
        # the whole universe qualifies too
        assert ph.proper_part(space5.parthood, u5.region("3"), u5.full_region(), space5)

    def test_single_universe_granule_fails(self):
        u = Universe(("a", "b"))
        g = Granulation.from_sets(u, [["a", "b"]])
        report = audit_full_underlap(GranularOperatorSpace(u, g))
        assert not report.passed

    def test_two_singletons_witness_full(self):
        u = Universe(("1", "2"))
        g = Granulation.from_sets(u, [["1"], ["2"]])
        report = audit_full_underlap(GranularOperatorSpace(u, g))
        assert report.passed
        pair = next(d for d in report.details
                    if {tuple(sorted(p)) for p in d["pair"]} == {("1",), ("2",)})
        assert pair["witness"] == u.full_region()


class TestRoughObjects:
    def test_same_signature_same_class(self, space5, u5):
        q = rough_objects(space5)
        assert q.class_of(u5.region("13")) is q.class_of(u5.region("23"))

    def test_definite_block_is_singleton_class(self, space5, u5):
        c = rough_objects(space5).class_of(u5.region("3"))
        assert c.members == (u5.region("3"),) and c.crisp

    def test_class_count_is_18(self, space5):
        assert len(rough_objects(space5).classes) == 18

    def test_classes_partition_the_power_set(self, space5):
        q = rough_objects(space5)
        seen = [m for c in q.classes for m in c.members]
        assert len(seen) == 32 and len(set(seen)) == 32

    def test_definite_only_notion(self, space5):
        q = rough_objects(space5, notion="definite-only")
        assert len(q.classes) == 18  # partitions are idempotent, all stable

    def test_definite_only_drops_unstable(self, u5, gran5):
        lo, up = classical_ops(gran5)

        def weird_upper(a):
            # not idempotent: upper({3}) = {3,4} but upper({3,4}) = {3,4,5}
            if a == u5.region("3"):
                return u5.region("34")
            return up(a)
        space = GranularOperatorSpace(u5, gran5, lower=lo, upper=weird_upper)
        full = rough_objects(space)
        stable = rough_objects(space, notion="definite-only")
        assert len(stable.classes) < len(full.classes)


class TestBasicRoughOrder:
    def test_bottom_and_top(self, space5, u5):
        q = rough_objects(space5)
        order = basic_rough_order(q)
        bottom = q.classes.index(q.class_of(u5.empty_region()))
        top = q.classes.index(q.class_of(u5.full_region()))
        assert bottom in order.bottoms() and top in order.tops()
        assert order.is_bounded()

    def test_antisymmetric_for_rough_inclusion(self, space5):
        order = basic_rough_order(rough_objects(space5))
        assert not order.reflexive_failures()
        assert not order.transitive_failures()
        assert not order.antisymmetric_failures()

    def test_non_signature_variant_checks_all_pairs(self, u5, gran5):
        space = GranularOperatorSpace(u5, gran5, parthood=ph.G_SIMPLE)
        order = basic_rough_order(rough_objects(space))
        assert not order.reflexive_failures()


class TestIntervalRepresentation:
    def test_counts_and_pairs(self, space5):
        rep = interval_representation(rough_objects(space5))
        assert rep.n_crisp == 8
        assert rep.n_classes == 18
        assert len(rep.rough) == rep.n_classes - rep.n_crisp == 10
        for _, (a, b) in rep.phi:
            assert a < b  # strict nesting

    def test_class_of_singleton_maps_to_empty_and_block(self, space5, u5):
        rep = interval_representation(rough_objects(space5))
        target = next(pair for cls, pair in rep.phi
                      if u5.region("1") in cls.members)
        assert target == (u5.empty_region(), u5.region("12"))

    def test_crisp_classes_excluded_from_rough(self, space5, u5):
        rep = interval_representation(rough_objects(space5))
        assert u5.region("3") in rep.crisp
        assert all(u5.region("3") not in c.members for c in rep.rough)

    def test_unrepresentable_listed_not_fatal(self, u5, gran5):
        lo, up = classical_ops(gran5)

        def weird_upper(a):
            # class of {1} gets signature (empty, {1}) whose upper is not definite
            if a == u5.region("1"):
                return u5.region("1")
            return up(a)
        space = GranularOperatorSpace(u5, gran5, lower=lo, upper=weird_upper)
        rep = interval_representation(rough_objects(space))
        assert rep.unrepresentable
        assert any(u5.region("1") in c.members for c in rep.unrepresentable)

    def test_json_stable(self, space5):
        rep = interval_representation(rough_objects(space5))
        a = json.dumps(rep.to_dict(), sort_keys=True)
        b = json.dumps(interval_representation(rough_objects(space5)).to_dict(),
                       sort_keys=True)
        assert a == b


class TestKnowledgeValidity:
    def test_all_hold_for_partition(self, space5, u5):
        report = knowledge_validity_check(u5.region("134"), space5)
        assert report.all_hold

    def test_empty_region(self, space5, u5):
        assert knowledge_validity_check(u5.empty_region(), space5).all_hold

    def test_non_idempotent_lower_fails_with_values(self, u5, gran5):
        lo, up = classical_ops(gran5)

        def bad_lower(a):
            if a == u5.region("12"):
                return u5.region("1")
            if a == u5.region("1"):
                return u5.empty_region()
            return lo(a)
        space = GranularOperatorSpace(u5, gran5, lower=bad_lower, upper=up)
        report = knowledge_validity_check(u5.region("12"), space)
        assert not report.all_hold
        eq = next(e for e in report.equations if e["name"] == "lower-idempotent")
        assert not eq["holds"]
        assert eq["lhs"] != eq["rhs"]


class TestSpaceBasics:
    def test_partition_spaces_pass_all_audits(self):
        for name, g in granulation_suite():
            if not g.is_partition() or len(g.universe) > 6:
                continue
            space = GranularOperatorSpace(g.universe, g)
            assert audit_weak_representability(space).passed, name
            assert audit_lower_stability(space).passed, name
            if len(g.granules) > 1:
                assert audit_full_underlap(space).passed, name

    def test_containment_checked_not_assumed(self, u5, gran5):
        lo, up = classical_ops(gran5)
        space = GranularOperatorSpace(u5, gran5, lower=lambda a: a, upper=lambda a: lo(a))
        bad = space.containment_violations()
        assert bad  # upper misses parts of lower: reported, not an exception

    def test_explicit_mode_requires_both(self, u5, gran5):
        with pytest.raises(ValueError, match="both"):
            GranularOperatorSpace(u5, gran5, lower=lambda a: a)

    def test_sampled_mode_for_large_universe(self):
        u = Universe(tuple(f"e{i}" for i in range(16)))
        g = Granulation.from_sets(u, [[e] for e in u.elements])
        space = GranularOperatorSpace(u, g)
        report = audit_weak_representability(space, sample=64, seed=9)
        assert report.mode == "sampled"
        assert report.seed == 9
