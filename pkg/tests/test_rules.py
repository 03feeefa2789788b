"""Rewriting rules on legal strings: the three reducing rules, the two
in-place duals, rule sequences, reduction search, orbits, and the
graph-equivalence decision."""

import random
from itertools import chain, combinations

import pytest
from hypothesis import given

from redukt import (
    DualRule,
    ExtendedARG,
    NotApplicableError,
    OrbitLimitError,
    RuleSequence,
    StringRule,
    applicable_dual_rules,
    apply_dsdr,
    apply_dspr,
    apply_rule,
    apply_sdr,
    apply_sequence,
    apply_snr,
    apply_spr,
    are_isomorphic_extended,
    build_extended_reduction_graph,
    build_reduction_graph,
    canonical_equiv_rep,
    domain,
    dual_equivalent,
    equivalent,
    flip_set,
    format_legal_string,
    format_rule_sequence,
    is_positive,
    is_theta,
    orbit,
    overlap,
    p_interval,
    parse_legal_string,
    parse_rule,
    parse_rule_sequence,
    successful_reduction_search,
)

from oracles import all_strings, legal_string_strategy, random_legal_string

P = parse_legal_string
F = format_legal_string
U = P("2 -7 4 7 3 5 3 -4 2 6 5 6")

legal_strings = legal_string_strategy()


def subsets(xs):
    xs = sorted(xs)
    return chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))


class TestStringRules:
    @pytest.mark.parametrize(
        "text,p,expected",
        [
            ("2 3 3 2", 3, "2 2"),
            ("2 -3 -3 2", 3, "2 2"),
            ("3 2 2 3", 2, "3 3"),
            ("2 2", 2, ""),
            ("-2 -2", 2, ""),
        ],
    )
    def test_snr(self, text, p, expected):
        assert F(apply_snr(P(text), p)) == expected

    @pytest.mark.parametrize(
        "text,p",
        [
            ("2 3 2 3", 2),  # occurrences not adjacent
            ("2 -2", 2),  # adjacent but opposite bars
            ("2 2", 3),  # symbol absent
        ],
    )
    def test_snr_not_applicable(self, text, p):
        with pytest.raises(NotApplicableError):
            apply_snr(P(text), p)

    @pytest.mark.parametrize(
        "text,p,expected",
        [
            ("2 3 -2 3", 2, "-3 3"),
            ("2 -2", 2, ""),
            ("2 3 4 -3 4 -2", 2, "-4 3 -4 -3"),
        ],
    )
    def test_spr(self, text, p, expected):
        assert F(apply_spr(P(text), p)) == expected

    def test_spr_needs_positive_symbol(self):
        with pytest.raises(NotApplicableError):
            apply_spr(P("2 2"), 2)

    def test_sdr(self):
        assert F(apply_sdr(P("2 4 3 2 3 4"), 2, 3)) == "4 4"
        assert F(apply_sdr(P("2 3 2 3"), 2, 3)) == ""

    def test_sdr_requires_role_order(self):
        # the first named pointer must be the one occurring first
        with pytest.raises(NotApplicableError, match="precede"):
            apply_sdr(P("2 4 3 2 3 4"), 3, 2)

    @pytest.mark.parametrize(
        "text,p,q",
        [
            ("2 2 3 3", 2, 3),  # no overlap
            ("2 3 -2 3", 2, 3),  # 2 is positive
            ("2 3 2 -3", 2, 3),  # 3 is positive
            ("2 3 2 3", 2, 2),  # not distinct
        ],
    )
    def test_sdr_not_applicable(self, text, p, q):
        with pytest.raises((NotApplicableError, ValueError)):
            apply_sdr(P(text), p, q)

    @given(legal_strings)
    def test_reducing_rules_shorten_by_their_domain(self, u):
        for p in domain(u):
            for fn in (apply_snr, apply_spr):
                try:
                    v = fn(u, p)
                except NotApplicableError:
                    continue
                assert len(v) == len(u) - 2
                assert domain(v) == domain(u) - {p}


class TestDualRules:
    def test_dspr(self):
        assert F(apply_dspr(U, 2)) == "2 4 -3 -5 -3 -7 -4 7 2 6 5 6"
        assert F(apply_dspr(P("2 2"), 2)) == "2 2"
        assert F(apply_dspr(P("2 3 3 2"), 2)) == "2 -3 -3 2"

    def test_dspr_needs_negative_symbol(self):
        with pytest.raises(NotApplicableError):
            apply_dspr(P("2 -2"), 2)

    def test_dsdr(self):
        assert F(apply_dsdr(P("2 4 3 -2 5 -3 5 4"), 2, 3)) == "2 5 3 -2 4 -3 5 4"
        # an alternating overlap with this sign pattern is a fixed point
        assert F(apply_dsdr(P("2 3 -2 -3"), 2, 3)) == "2 3 -2 -3"

    @pytest.mark.parametrize(
        "text,p,q",
        [
            ("2 3 2 -3", 2, 3),  # 2 is negative
            ("2 -2 3 -3", 2, 3),  # no overlap
        ],
    )
    def test_dsdr_not_applicable(self, text, p, q):
        with pytest.raises(NotApplicableError):
            apply_dsdr(P(text), p, q)

    @given(legal_strings)
    def test_duals_preserve_length_and_domain(self, u):
        for rule in applicable_dual_rules(u):
            v = apply_rule(u, rule)
            assert len(v) == len(u)
            assert domain(v) == domain(u)

    @given(legal_strings)
    def test_duals_are_involutions(self, u):
        for rule in applicable_dual_rules(u):
            v = apply_rule(u, rule)
            assert apply_rule(v, rule) == u

    def test_applicable_listing(self):
        assert [str(r) for r in applicable_dual_rules(U)] == [
            "dspr(2)",
            "dspr(3)",
            "dspr(5)",
            "dspr(6)",
            "dsdr(7,4)",
        ]
        assert [str(r) for r in applicable_dual_rules(P("2 3 -2 -3"))] == ["dsdr(2,3)"]
        assert applicable_dual_rules(P("2 -2")) == []

    @given(legal_strings)
    def test_applicable_listing_is_complete(self, u):
        listed = set(applicable_dual_rules(u))
        for p in domain(u):
            occ = [x for x in u.letters if x.symbol == p]
            negative = occ[0].barred == occ[1].barred
            assert (DualRule("dspr", (p,)) in listed) == negative
        for p, q in combinations(sorted(domain(u)), 2):
            expected = is_positive(u, p) and is_positive(u, q) and overlap(u, p, q)
            i, j = p_interval(u, p)[0], p_interval(u, q)[0]
            ordered = (p, q) if i < j else (q, p)
            assert (DualRule("dsdr", ordered) in listed) == expected

    def test_image_extension_is_flipped_extension(self):
        rng = random.Random(31)
        for _ in range(60):
            u = random_legal_string(rng, max_symbols=4)
            g = build_reduction_graph(u)
            base = build_extended_reduction_graph(u).merge
            for rule in applicable_dual_rules(u):
                image = build_extended_reduction_graph(apply_rule(u, rule))
                flipped = ExtendedARG(arg=g, merge=flip_set(g, base, rule.dom))
                assert are_isomorphic_extended(image, flipped)


class TestRuleText:
    def test_parse_examples(self):
        assert parse_rule("sdr(2,3)") == StringRule("sdr", (2, 3))
        assert parse_rule("dspr(7)") == DualRule("dspr", (7,))
        assert str(parse_rule("dsdr(7,4)")) == "dsdr(7,4)"

    @pytest.mark.parametrize(
        "text",
        ["xyz(2)", "snr(2,3)", "sdr(2)", "dspr()", "snr(1)", "sdr(2,2)", "snr 2"],
    )
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rule(text)

    def test_sequence_round_trip(self):
        seq = parse_rule_sequence("dspr(2) dsdr(3,5) snr(4)")
        assert format_rule_sequence(seq) == "dspr(2) dsdr(3,5) snr(4)"
        assert parse_rule_sequence(format_rule_sequence(seq)) == seq

    def test_sequence_domains(self):
        seq = parse_rule_sequence("dspr(2) dsdr(3,5)")
        assert seq.dom == frozenset({2, 3, 5})
        assert seq.odom == frozenset({2, 3, 5})
        assert seq.is_reduced

    def test_repeated_symbols_cancel_in_odom(self):
        seq = parse_rule_sequence("dspr(2) dspr(2)")
        assert seq.dom == frozenset({2})
        assert seq.odom == frozenset()
        assert not seq.is_reduced

    def test_empty_sequence(self):
        seq = parse_rule_sequence("")
        assert seq.rules == ()
        assert seq.dom == seq.odom == frozenset()
        assert seq.is_reduced


class TestReduction:
    def test_generic_example(self):
        seq = successful_reduction_search(U)
        assert str(seq) == "spr(4) spr(5) spr(2) snr(7) snr(3) snr(6)"
        assert seq.is_reduced
        assert apply_sequence(U, seq) == P("")

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("", ""),
            ("2 2", "snr(2)"),
            ("2 -2", "spr(2)"),
            ("2 3 2 3", "sdr(2,3)"),
        ],
    )
    def test_small_examples(self, text, expected):
        assert str(successful_reduction_search(P(text))) == expected

    @given(legal_strings)
    def test_always_reaches_empty(self, u):
        seq = successful_reduction_search(u)
        assert apply_sequence(u, seq) == P("")
        assert seq.dom == domain(u)
        assert seq.is_reduced
        assert all(r.kind in ("snr", "spr", "sdr") for r in seq)


def greedy_realization(u, d, biggest=False):
    """A dual rule sequence with odd domain d, clearing one negative or
    two overlapping positive symbols of d per step; returns (None, u)
    when the walk gets stuck."""
    rules, v, remaining = [], u, set(d)
    while remaining:
        order = sorted(remaining, reverse=biggest)
        neg = [p for p in order if not is_positive(v, p)]
        if neg:
            rule = DualRule("dspr", (neg[0],))
        else:
            pair = next(
                ((p, q) for p, q in combinations(order, 2) if overlap(v, p, q)), None
            )
            if pair is None:
                return None, v
            i, j = p_interval(v, pair[0])[0], p_interval(v, pair[1])[0]
            rule = DualRule("dsdr", pair if i < j else (pair[1], pair[0]))
        rules.append(rule)
        v = apply_rule(v, rule)
        remaining ^= set(rule.dom)
    return RuleSequence(tuple(rules)), v


class TestFlipRealization:
    def test_every_theta_member_is_reachable(self):
        rng = random.Random(33)
        for _ in range(25):
            u = random_legal_string(rng, max_symbols=4)
            g = build_reduction_graph(u)
            base = build_extended_reduction_graph(u).merge
            for d in subsets(domain(u)):
                d = frozenset(d)
                target = flip_set(g, base, d)
                seq, v = greedy_realization(u, d)
                if is_theta(g, target):
                    assert seq is not None
                    assert seq.odom == d
                    assert are_isomorphic_extended(
                        build_extended_reduction_graph(v),
                        ExtendedARG(arg=g, merge=target),
                    )
                else:
                    assert seq is None

    def test_odd_domain_determines_result(self):
        rng = random.Random(34)
        for _ in range(25):
            u = random_legal_string(rng, max_symbols=4)
            g = build_reduction_graph(u)
            base = build_extended_reduction_graph(u).merge
            for d in subsets(domain(u)):
                d = frozenset(d)
                if not is_theta(g, flip_set(g, base, d)):
                    continue
                _, small_first = greedy_realization(u, d)
                _, big_first = greedy_realization(u, d, biggest=True)
                assert equivalent(small_first, big_first)


class TestOrbit:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("2 2", {"2 2"}),
            ("2 -2", {"2 -2"}),
            ("2 2 3 3", {"2 2 3 3"}),
            ("2 3 2 3", {"2 3 2 3", "2 3 -2 3", "2 3 2 -3"}),
        ],
    )
    def test_examples(self, text, expected):
        assert {F(v) for v in orbit(P(text))} == expected

    def test_generic_example_size(self):
        assert len(orbit(U)) == 16

    def test_budget(self):
        with pytest.raises(OrbitLimitError):
            orbit(P("2 3 2 3"), max_size=2)
        assert len(orbit(P("2 3 2 3"), max_size=3)) == 3

    @given(legal_strings)
    def test_closure_and_membership(self, u):
        members = orbit(u)
        assert canonical_equiv_rep(u) in members
        for v in members:
            assert dual_equivalent(u, v)
            for rule in applicable_dual_rules(v):
                assert canonical_equiv_rep(apply_rule(v, rule)) in members


class TestDualEquivalence:
    def test_examples(self):
        assert not dual_equivalent(P("2 2"), P("2 -2"))
        assert dual_equivalent(P("2 -2"), P("-2 2"))
        assert dual_equivalent(U, apply_dspr(U, 2))
        assert not dual_equivalent(P("2 2"), P("3 3"))

    def test_orbit_members_share_graph(self):
        canon = {F(v) for v in orbit(U)}
        for v_text in sorted(canon)[:6]:
            assert dual_equivalent(U, P(v_text))

    def test_agrees_with_orbit_partition_on_one_symbol(self):
        universe = all_strings([2])
        for u in universe:
            members = orbit(u)
            for v in universe:
                assert dual_equivalent(u, v) == (canonical_equiv_rep(v) in members)
