from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from termstrat import (
    Fail,
    First,
    FuelExhausted,
    Id,
    IfTE,
    Mu,
    Not,
    Occurs,
    ParseError,
    Repeat,
    RuleRef,
    STK,
    SVar,
    Seq,
    Try,
    UnboundSVar,
    UnknownLabel,
    Value,
    check_invariant,
    eval_strategy,
    forbidden_strategy,
    invariant_strategy,
    parse_strategy,
    parse_term,
    print_strategy,
)
from test_terms import term_exprs


def t(rex, text):
    return parse_term(text, rex.signature)


def ev(rex, s, term, fuel=10000):
    return eval_strategy(s, term, rex.rules, fuel)


def strat_exprs(labels, patterns):
    leaves = st.sampled_from(
        [Id(), Fail()]
        + [RuleRef(l) for l in labels]
        + [Occurs(p) for p in patterns]
    )

    def extend(inner):
        return st.one_of(
            st.tuples(inner, inner).map(lambda p: Seq(*p)),
            st.tuples(inner, inner).map(lambda p: First(*p)),
            inner.map(Try),
            inner.map(Not),
            st.tuples(inner, inner, inner).map(lambda p: IfTE(*p)),
            inner.map(Repeat),
        )

    return st.recursive(leaves, extend, max_leaves=8)


@pytest.fixture(scope="module")
def rex_exprs(rex):
    labels = tuple(r.label for r in rex.rules)
    patterns = [t(rex, "a"), t(rex, "g(x)"), t(rex, "h(x,x)")]
    return strat_exprs(labels, patterns), term_exprs(rex.signature)


class TestBasicCombinators:
    def test_id(self, rex):
        term = t(rex, "f(a)")
        assert ev(rex, Id(), term) == Value(term)

    def test_fail(self, rex):
        assert ev(rex, Fail(), t(rex, "a")) == STK

    def test_rule_at_root(self, rex):
        assert ev(rex, RuleRef("r1"), t(rex, "a")) == Value(t(rex, "b"))

    def test_rule_no_match_is_failure(self, rex):
        assert ev(rex, RuleRef("r1"), t(rex, "b")) == STK

    def test_rule_does_not_descend(self, rex):
        assert ev(rex, RuleRef("r1"), t(rex, "f(a)")) == STK

    def test_rule_instantiates(self, rex):
        assert ev(rex, RuleRef("ps"), t(rex, "plus(s(0),0)")) == Value(
            t(rex, "s(plus(0,0))")
        )

    def test_unknown_label(self, rex):
        with pytest.raises(UnknownLabel):
            ev(rex, RuleRef("zz"), t(rex, "a"))

    def test_seq_chains(self, rex):
        s = Seq(RuleRef("r3"), RuleRef("r2"))
        assert ev(rex, s, t(rex, "f(a)")) == Value(t(rex, "a"))

    def test_seq_absorbs_failure(self, rex):
        assert ev(rex, Seq(Fail(), Id()), t(rex, "a")) == STK
        assert ev(rex, Seq(RuleRef("r1"), RuleRef("r1")), t(rex, "a")) == STK

    def test_first_prefers_left(self, rex):
        s = First(RuleRef("r1"), Id())
        assert ev(rex, s, t(rex, "a")) == Value(t(rex, "b"))

    def test_first_falls_back_on_original(self, rex):
        s = First(RuleRef("r1"), RuleRef("r3"))
        assert ev(rex, s, t(rex, "f(a)")) == Value(t(rex, "g(a)"))

    def test_try_keeps_term_on_failure(self, rex):
        term = t(rex, "f(g(a))")
        assert ev(rex, Try(Fail()), term) == Value(term)

    def test_not_inverts(self, rex):
        term = t(rex, "a")
        assert ev(rex, Not(Id()), term) == STK
        assert ev(rex, Not(Fail()), term) == Value(term)

    def test_ifte_both_branches_see_original(self, rex):
        s = IfTE(RuleRef("r1"), RuleRef("r1"), Id())
        assert ev(rex, s, t(rex, "a")) == Value(t(rex, "b"))
        term = t(rex, "b")
        assert ev(rex, s, term) == Value(term)

    def test_ifte_discards_condition_result(self, rex):
        s = IfTE(Seq(RuleRef("r3"), RuleRef("r2")), Id(), Fail())
        term = t(rex, "f(a)")
        assert ev(rex, s, term) == Value(term)


class TestRecursion:
    def test_repeat_until_failure(self, rex):
        assert ev(rex, Repeat(RuleRef("r1")), t(rex, "a")) == Value(t(rex, "b"))

    def test_repeat_zero_iterations(self, rex):
        term = t(rex, "b")
        assert ev(rex, Repeat(RuleRef("r1")), term) == Value(term)

    def test_repeat_id_diverges(self, rex):
        with pytest.raises(FuelExhausted):
            ev(rex, Repeat(Id()), t(rex, "a"), fuel=100)

    def test_fuel_not_conflated_with_failure(self, rex):
        assert ev(rex, Fail(), t(rex, "a"), fuel=100) == STK
        with pytest.raises(FuelExhausted):
            ev(rex, Repeat(Try(Id())), t(rex, "a"), fuel=100)

    def test_mu_unfolds(self, rex):
        s = Mu("X", First(Seq(RuleRef("r2"), SVar("X")), Id()))
        assert ev(rex, s, t(rex, "g(g(a))")) == Value(t(rex, "a"))

    def test_nested_mu_shadowing_is_lexical(self, rex):
        inner = Mu("X", Try(Seq(RuleRef("r2"), SVar("X"))))
        outer = Mu("X", Seq(Try(Seq(RuleRef("r3"), inner)), SVar("X")))
        with pytest.raises(FuelExhausted):
            ev(rex, outer, t(rex, "f(a)"), fuel=200)

    def test_nested_repeat(self, rex):
        s = Repeat(Seq(Repeat(RuleRef("r2")), RuleRef("r3")))
        assert ev(rex, s, t(rex, "f(a)")) == Value(t(rex, "g(a)"))

    def test_unbound_svar(self, rex):
        with pytest.raises(UnboundSVar):
            ev(rex, SVar("X"), t(rex, "a"))


class TestOccursAndIdioms:
    def test_check_invariant_nested(self, rex):
        assert check_invariant(t(rex, "g(x)"), t(rex, "f(g(a))"))

    def test_check_invariant_absent(self, rex):
        assert not check_invariant(t(rex, "b"), t(rex, "f(g(a))"))

    def test_variable_pattern_always_present(self, rex):
        assert check_invariant(t(rex, "x"), t(rex, "plus(0,s(0))"))

    def test_invariant_strategy_matches_predicate(self, rex):
        term = t(rex, "f(g(a))")
        assert ev(rex, invariant_strategy(t(rex, "g(x)")), term) == Value(term)
        assert ev(rex, invariant_strategy(t(rex, "b")), term) == STK

    def test_forbidden_strategy(self, rex):
        term = t(rex, "f(g(a))")
        assert ev(rex, forbidden_strategy(t(rex, "b")), term) == Value(term)
        assert ev(rex, forbidden_strategy(t(rex, "g(x)")), term) == STK

    def test_forbidden_is_negated_invariant(self, rex):
        for text in ("a", "b", "f(g(a))", "h(a,b)", "plus(0,0)"):
            term = t(rex, text)
            for pattern in ("a", "g(x)", "h(x,x)", "x"):
                g = t(rex, pattern)
                assert ev(rex, forbidden_strategy(g), term) == ev(
                    rex, Not(invariant_strategy(g)), term
                )

    def test_occurs_nonlinear_pattern(self, rex):
        s = Occurs(t(rex, "h(x,x)"))
        assert ev(rex, s, t(rex, "f(h(a,a))")) != STK
        assert ev(rex, s, t(rex, "f(h(a,b))")) == STK


class TestParsePrint:
    def test_repeat_first(self, rex):
        got = parse_strategy("repeat(first(r1,r2))", rex.rules, rex.signature)
        assert got == Repeat(First(RuleRef("r1"), RuleRef("r2")))

    def test_unbound_name(self, rex):
        with pytest.raises(UnboundSVar):
            parse_strategy("X", rex.rules, rex.signature)

    def test_mu_binds(self, rex):
        got = parse_strategy("mu X . try(seq(r1,X))", rex.rules, rex.signature)
        assert got == Mu("X", Try(Seq(RuleRef("r1"), SVar("X"))))

    def test_mu_scope_does_not_leak(self, rex):
        with pytest.raises(UnboundSVar):
            parse_strategy("seq(mu X . X,X)", rex.rules, rex.signature)

    def test_occurs_takes_a_term(self, rex):
        got = parse_strategy("occurs(h(x,x))", rex.rules, rex.signature)
        assert got == Occurs(t(rex, "h(x,x)"))

    def test_named_aliases_splice(self, rex):
        named = {"step": First(RuleRef("r3"), RuleRef("r2"))}
        got = parse_strategy("repeat(step)", rex.rules, rex.signature, named)
        assert got == Repeat(named["step"])

    def test_bound_var_shadows_label(self, rex):
        got = parse_strategy("mu r1 . r1", rex.rules, rex.signature)
        assert got == Mu("r1", SVar("r1"))

    def test_reserved_mu_variable(self, rex):
        with pytest.raises(ParseError):
            parse_strategy("mu id . id", rex.rules, rex.signature)

    def test_wrong_arity(self, rex):
        with pytest.raises(ParseError):
            parse_strategy("seq(r1)", rex.rules, rex.signature)
        with pytest.raises(ParseError):
            parse_strategy("try(r1,r2)", rex.rules, rex.signature)

    def test_print_forms(self, rex):
        assert print_strategy(Repeat(First(RuleRef("r1"), Id()))) == "repeat(first(r1,id))"
        assert (
            print_strategy(Mu("X", IfTE(Occurs(t(rex, "a")), SVar("X"), Fail())))
            == "mu X . ifTE(occurs(a),X,fail)"
        )

    def test_roundtrip_examples(self, rex):
        for text in (
            "id",
            "fail",
            "r1",
            "seq(first(r1,r2),not(try(r3)))",
            "ifTE(occurs(g(x)),repeat(r2),id)",
            "mu X . try(seq(first(r3,r2),X))",
        ):
            expr = parse_strategy(text, rex.rules, rex.signature)
            assert print_strategy(expr) == text
            assert parse_strategy(text, rex.rules, rex.signature) == expr


class TestLaws:
    @given(data=st.data())
    @settings(max_examples=120, deadline=None)
    def test_try_fail_is_identity(self, rex, rex_exprs, data):
        _, terms = rex_exprs
        term = data.draw(terms)
        assert ev(rex, Try(Fail()), term) == Value(term)

    @given(data=st.data())
    @settings(max_examples=120, deadline=None)
    def test_first_fail_left_unit(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s, term = data.draw(exprs), data.draw(terms)
        try:
            lhs = ev(rex, First(Fail(), s), term, fuel=400)
            rhs = ev(rex, s, term, fuel=400)
        except FuelExhausted:
            assume(False)
        assert lhs == rhs

    @given(data=st.data())
    @settings(max_examples=120, deadline=None)
    def test_first_fail_right_unit(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s, term = data.draw(exprs), data.draw(terms)
        try:
            lhs = ev(rex, First(s, Fail()), term, fuel=400)
            rhs = ev(rex, s, term, fuel=400)
        except FuelExhausted:
            assume(False)
        assert lhs == rhs

    @given(data=st.data())
    @settings(max_examples=120, deadline=None)
    def test_seq_id_units(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s, term = data.draw(exprs), data.draw(terms)
        try:
            base = ev(rex, s, term, fuel=400)
            left = ev(rex, Seq(Id(), s), term, fuel=400)
            right = ev(rex, Seq(s, Id()), term, fuel=400)
        except FuelExhausted:
            assume(False)
        assert left == base == right

    @given(data=st.data())
    @settings(max_examples=120, deadline=None)
    def test_double_negation(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s, term = data.draw(exprs), data.draw(terms)
        try:
            base = ev(rex, s, term, fuel=400)
            doubled = ev(rex, Not(Not(s)), term, fuel=400)
        except FuelExhausted:
            assume(False)
        assert doubled == (Value(term) if base != STK else STK)

    @given(data=st.data())
    @settings(max_examples=120, deadline=None)
    def test_seq_stk_absorption(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s1, s2, term = data.draw(exprs), data.draw(exprs), data.draw(terms)
        try:
            if ev(rex, s1, term, fuel=400) != STK:
                assume(False)
            assert ev(rex, Seq(s1, s2), term, fuel=800) == STK
        except FuelExhausted:
            assume(False)

    @given(data=st.data())
    @settings(max_examples=100, deadline=None)
    def test_repeat_postcondition(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s, term = data.draw(exprs), data.draw(terms)
        try:
            result = ev(rex, Repeat(s), term, fuel=600)
        except FuelExhausted:
            assume(False)
        if result != STK:
            try:
                assert ev(rex, s, result.term, fuel=600) == STK
            except FuelExhausted:
                assume(False)

    @given(data=st.data())
    @settings(max_examples=100, deadline=None)
    def test_repeat_fixpoint(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s, term = data.draw(exprs), data.draw(terms)
        try:
            lhs = ev(rex, Repeat(s), term, fuel=600)
            rhs = ev(rex, Try(Seq(s, Repeat(s))), term, fuel=700)
        except FuelExhausted:
            assume(False)
        assert lhs == rhs

    @given(data=st.data())
    @settings(max_examples=100, deadline=None)
    def test_fuel_monotonicity(self, rex, rex_exprs, data):
        exprs, terms = rex_exprs
        s, term = data.draw(exprs), data.draw(terms)
        n = data.draw(st.integers(min_value=1, max_value=300))
        try:
            small = ev(rex, s, term, fuel=n)
        except FuelExhausted:
            assume(False)
        assert ev(rex, s, term, fuel=2 * n) == small
        assert ev(rex, s, term, fuel=10 * n) == small
