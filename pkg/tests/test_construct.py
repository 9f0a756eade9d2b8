"""Closure constructions: exact law checks, fixed and randomized."""

from fractions import Fraction

import pytest

from qwa import (
    AcceptanceKind,
    BooleanAutomaton,
    LassoWord,
    Semantics,
    ValueFunction,
    WeightedAutomaton,
    cobuchi_to_buchi_positive,
    evaluate,
    fixture,
    initial_choice,
    limsup_sum,
    normalize_initial,
    synchronized_product,
    threshold_boolean,
    uniformized_support,
    validate,
    weight_accepting_states,
)
from conftest import random_automaton, random_lasso

F = Fraction
POS, AS = Semantics.POSITIVE, Semantics.ALMOST_SURE
LIMIT_FNS = (ValueFunction.limsup(), ValueFunction.liminf(), ValueFunction.limavg())


def constant_machine(value, letters=("a", "b")):
    return WeightedAutomaton.make(
        ["c"], letters, {"c": 1}, {("c", a): {"c": (1, value)} for a in letters}
    )


def word(prefix, loop):
    return LassoWord(tuple(prefix), tuple(loop))


class TestNormalizeInitial:
    def test_dirac_untouched(self):
        auto = fixture("fig2_LF").automaton
        assert normalize_initial(auto) is auto

    def test_split_initial_gets_fresh_state(self, rng):
        auto = random_automaton(rng, dirac=False)
        while len(auto.initial_support()) == 1:
            auto = random_automaton(rng, dirac=False)
        fixed = normalize_initial(auto)
        assert validate(fixed) == []
        assert len(fixed.states) == len(auto.states) + 1
        assert len(fixed.initial_support()) == 1
        # limit values are preserved word for word
        for _ in range(10):
            w = random_lasso(rng, max_prefix=2, max_loop=3)
            for valfn in LIMIT_FNS:
                for semantics in (POS, AS):
                    assert evaluate(fixed, valfn, semantics, w) == evaluate(
                        auto, valfn, semantics, w
                    )


class TestInitialChoice:
    def test_idempotent_on_identical_operands(self, rng):
        auto = fixture("fig3_LI").automaton
        combined = initial_choice(auto, auto)
        assert validate(combined) == []
        for _ in range(10):
            w = random_lasso(rng, max_prefix=2, max_loop=3)
            assert evaluate(combined, ValueFunction.limavg(), POS, w) == evaluate(
                auto, ValueFunction.limavg(), POS, w
            )

    def test_constant_zero_against_finitely_many_a(self):
        combined = initial_choice(constant_machine(0), fixture("fig2_LF").automaton)
        assert evaluate(combined, ValueFunction.limavg(), POS, word("", "b")) == 1

    def test_state_count_bound(self):
        a, b = fixture("fig2_LF").automaton, fixture("fig3_LI").automaton
        assert len(initial_choice(a, b).states) == len(a.states) + len(b.states) + 1

    def test_alphabet_mismatch_rejected(self):
        with pytest.raises(ValueError, match="alphabet"):
            initial_choice(fixture("fig1_low").automaton, fixture("fig2_LF").automaton)

    def test_max_min_laws_on_random_operands(self, rng):
        for _ in range(25):
            a1 = random_automaton(rng, max_states=3)
            a2 = random_automaton(rng, max_states=3)
            combined = initial_choice(a1, a2)
            assert validate(combined) == []
            for _ in range(4):
                w = random_lasso(rng)
                for valfn in LIMIT_FNS:
                    assert evaluate(combined, valfn, POS, w) == max(
                        evaluate(a1, valfn, POS, w), evaluate(a2, valfn, POS, w)
                    )
                    assert evaluate(combined, valfn, AS, w) == min(
                        evaluate(a1, valfn, AS, w), evaluate(a2, valfn, AS, w)
                    )


class TestSynchronizedProduct:
    def test_identical_deterministic_operands_unchanged(self, rng):
        auto = fixture("da_counter").automaton
        prod = synchronized_product(auto, auto, "max")
        for _ in range(10):
            w = random_lasso(rng)
            assert evaluate(prod, ValueFunction.limavg(), AS, w) == evaluate(
                auto, ValueFunction.limavg(), AS, w
            )

    def test_constant_operands_min(self):
        prod = synchronized_product(constant_machine(3), constant_machine(1), "min")
        assert evaluate(prod, ValueFunction.liminf(), POS, word("", "ab")) == 1

    def test_state_count_bound(self):
        a, b = fixture("fig2_LF").automaton, fixture("fig3_LI").automaton
        assert len(synchronized_product(a, b, "sum").states) == len(a.states) * len(b.states)

    def test_max_and_min_laws_on_random_operands(self, rng):
        for _ in range(25):
            a1 = random_automaton(rng, max_states=3)
            a2 = random_automaton(rng, max_states=3)
            prod_max = synchronized_product(a1, a2, "max")
            prod_min = synchronized_product(a1, a2, "min")
            assert validate(prod_max) == [] and validate(prod_min) == []
            for _ in range(4):
                w = random_lasso(rng)
                assert evaluate(prod_max, ValueFunction.limsup(), AS, w) == max(
                    evaluate(a1, ValueFunction.limsup(), AS, w),
                    evaluate(a2, ValueFunction.limsup(), AS, w),
                )
                assert evaluate(prod_min, ValueFunction.liminf(), POS, w) == min(
                    evaluate(a1, ValueFunction.liminf(), POS, w),
                    evaluate(a2, ValueFunction.liminf(), POS, w),
                )


class TestLimsupSum:
    def test_constant_operands_add(self, rng):
        combined = limsup_sum(constant_machine(1), constant_machine(2))
        for _ in range(8):
            w = random_lasso(rng)
            assert evaluate(combined, ValueFunction.limsup(), POS, w) == 3
            assert evaluate(combined, ValueFunction.limsup(), AS, w) == 3

    def test_vanishing_survival_doubles(self):
        auto = fixture("fig4_Lz").automaton
        combined = limsup_sum(auto, auto)
        assert evaluate(combined, ValueFunction.limsup(), POS, word("", "a")) == 2
        assert evaluate(combined, ValueFunction.limsup(), POS, word("", "ab")) == 0

    def test_sum_law_on_random_operands(self, rng):
        for _ in range(20):
            a1 = random_automaton(rng, max_states=2, weight_pool=(0, 1))
            a2 = random_automaton(rng, max_states=2, weight_pool=(0, 2))
            combined = limsup_sum(a1, a2)
            assert validate(combined) == []
            for _ in range(4):
                w = random_lasso(rng)
                for semantics in (POS, AS):
                    assert evaluate(combined, ValueFunction.limsup(), semantics, w) == (
                        evaluate(a1, ValueFunction.limsup(), semantics, w)
                        + evaluate(a2, ValueFunction.limsup(), semantics, w)
                    )


class TestThresholdBoolean:
    def test_below_min_makes_everything_accepting(self):
        auto = fixture("fig1_low").automaton
        boolean = threshold_boolean(auto, F(0), AcceptanceKind.BUCHI)
        assert set(boolean.automaton.weight_values()) == {F(1)}

    def test_above_max_makes_nothing_accepting(self):
        auto = fixture("fig1_low").automaton
        boolean = threshold_boolean(auto, F(6), AcceptanceKind.BUCHI)
        assert set(boolean.automaton.weight_values()) == {F(0)}
        assert boolean.accepting_states == ()

    def test_vanishing_survival_threshold(self):
        boolean = threshold_boolean(fixture("fig4_Lz").automaton, F(1), AcceptanceKind.BUCHI)
        auto = boolean.automaton
        assert set(auto.weight_values()) <= {F(0), F(1)}
        assert evaluate(auto, ValueFunction.limsup(), POS, word("", "a")) == 1
        assert evaluate(auto, ValueFunction.limsup(), POS, word("", "ab")) == 0

    def test_accepting_states_follow_state_weights(self):
        boolean = threshold_boolean(fixture("fig2_LF").automaton, F(1), AcceptanceKind.COBUCHI)
        assert boolean.accepting_states == ("q1",)

    def test_threshold_law_against_evaluator(self, rng):
        for _ in range(20):
            auto = random_automaton(rng, max_states=3)
            v = F(rng.choice((0, 1, 2)))
            boolean = threshold_boolean(auto, v, AcceptanceKind.BUCHI)
            w = random_lasso(rng)
            reached = evaluate(auto, ValueFunction.limsup(), POS, w) >= v
            flag = evaluate(boolean.automaton, ValueFunction.limsup(), POS, w)
            assert reached == (flag == 1)


class TestCobuchiToBuchi:
    def test_doubles_the_state_count(self):
        boolean = threshold_boolean(fixture("fig2_LF").automaton, F(1), AcceptanceKind.COBUCHI)
        result = cobuchi_to_buchi_positive(boolean)
        assert len(result.automaton.states) == 2 * len(boolean.automaton.states)
        assert result.acceptance is AcceptanceKind.BUCHI
        assert validate(result.automaton) == []

    def test_word_with_finitely_many_a_accepted_before_and_after(self):
        boolean = threshold_boolean(fixture("fig2_LF").automaton, F(1), AcceptanceKind.COBUCHI)
        result = cobuchi_to_buchi_positive(boolean)
        w = word("", "b")
        assert evaluate(boolean.automaton, ValueFunction.liminf(), POS, w) == 1
        assert evaluate(result.automaton, ValueFunction.limsup(), POS, w) == 1

    def test_empty_accepting_set_accepts_nothing(self, rng):
        base = fixture("fig3_LI").automaton
        boolean = BooleanAutomaton(
            threshold_boolean(base, F(5), AcceptanceKind.COBUCHI).automaton,
            AcceptanceKind.COBUCHI,
            (),
        )
        result = cobuchi_to_buchi_positive(boolean)
        for _ in range(8):
            w = random_lasso(rng)
            assert evaluate(result.automaton, ValueFunction.limsup(), POS, w) == 0

    def test_requires_dirac_initial(self):
        auto = WeightedAutomaton.make(
            ["x", "y"],
            ["a"],
            {"x": F(1, 2), "y": F(1, 2)},
            {("x", "a"): {"x": (1, 1)}, ("y", "a"): {"y": (1, 0)}},
        )
        boolean = BooleanAutomaton(auto, AcceptanceKind.COBUCHI, ("x",))
        with pytest.raises(ValueError, match="Dirac"):
            cobuchi_to_buchi_positive(boolean)

    def test_language_equivalence_on_random_cobuchi(self, rng):
        for _ in range(20):
            base = random_automaton(
                rng, max_states=3, weight_pool=(0, 1), dirac=True, state_weights=True
            )
            boolean = BooleanAutomaton(base, AcceptanceKind.COBUCHI, weight_accepting_states(base, F(1)))
            result = cobuchi_to_buchi_positive(boolean)
            assert validate(result.automaton) == []
            for _ in range(4):
                w = random_lasso(rng)
                before = evaluate(base, ValueFunction.liminf(), POS, w) == 1
                after = evaluate(result.automaton, ValueFunction.limsup(), POS, w) == 1
                assert before == after


class TestUniformizedSupport:
    def test_uniform_automaton_round_trips_exactly(self):
        auto = fixture("fig3_LI").automaton  # every row already uniform
        assert uniformized_support(auto) == auto

    def test_deterministic_round_trip_identity(self):
        auto = fixture("da_counter").automaton
        assert uniformized_support(auto) == auto

    def test_skewed_probabilities_keep_positive_disc_values(self, rng):
        auto = fixture("fig1_low").automaton  # 9/10 vs 1/10 branches
        flat = uniformized_support(auto)
        assert flat.successors("q0", "send") == {
            "q1": (F(1, 2), F(1)),
            "q2": (F(1, 2), F(1)),
        }
        disc = ValueFunction.disc("1/2")
        for _ in range(50):
            w = random_lasso(rng, letters=("send", "ack"))
            assert evaluate(flat, disc, POS, w) == evaluate(auto, disc, POS, w)
