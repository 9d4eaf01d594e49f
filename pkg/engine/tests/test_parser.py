"""
Tests for the surface-language parser and theory files
"""

import pytest
from hypothesis import HealthCheck, given, settings

from engine.fuzzy_horn.errors import ParseError, SignatureError
from engine.fuzzy_horn.parser import parse_formula, parse_term, parse_theory
from engine.fuzzy_horn.syntax import (
    BOTTOM,
    TOP,
    Binary,
    Connective,
    HornTag,
    Quantified,
    Quantifier,
    Signature,
    Var,
    atom,
    biconditional,
    classify_horn,
    const,
    equation,
    format_formula,
    format_term,
    forall,
    fun,
    implies,
    negation,
    strong_conj,
    weak_conj,
)

from engine.tests.horn_strategies import PROPERTY_SIGNATURE, formulas, terms

SIG = Signature.build({"P": 1, "Q": 1, "R": 2, "S": 0}, {"f": 1}, constants=["c", "d"], equality=True)
x, y = Var("x"), Var("y")
c, d = const("c"), const("d")


class TestFormulas:
    def test_atom(self):
        assert parse_formula("P(c)", SIG) == atom("P", c)

    def test_propositional_symbol(self):
        assert parse_formula("S", SIG) == atom("S")

    def test_undeclared_lowercase_name_is_variable(self):
        assert parse_formula("P(x)", SIG) == atom("P", x)

    def test_strong_binds_tighter_than_weak(self):
        phi = parse_formula("P(c) & Q(c) /\\ S", SIG)
        assert phi == weak_conj(strong_conj(atom("P", c), atom("Q", c)), atom("S"))

    def test_implication_right_associative(self):
        phi = parse_formula("P(c) -> Q(c) -> S", SIG)
        assert phi == implies(atom("P", c), implies(atom("Q", c), atom("S")))

    def test_disjunction(self):
        phi = parse_formula("P(c) \\/ Q(c)", SIG)
        assert phi == Binary(Connective.OR, atom("P", c), atom("Q", c))

    def test_quantifier_scope_extends_right(self):
        phi = parse_formula("forall x. P(x) -> Q(x)", SIG)
        assert phi == forall("x", implies(atom("P", x), atom("Q", x)))

    def test_several_variables(self):
        phi = parse_formula("exists x y. R(x, y)", SIG)
        assert phi == Quantified(Quantifier.EXISTS, "x", Quantified(Quantifier.EXISTS, "y", atom("R", x, y)))

    def test_negation_normalised(self):
        phi = parse_formula("~P(c)", SIG)
        assert phi == implies(atom("P", c), BOTTOM)
        assert phi.origin == "neg"

    def test_biconditional_normalised(self):
        phi = parse_formula("P(c) <-> Q(c)", SIG)
        assert phi == weak_conj(implies(atom("P", c), atom("Q", c)), implies(atom("Q", c), atom("P", c)))
        assert phi.origin == "iff"

    def test_truth_constants(self):
        assert parse_formula("top -> bot", SIG) == implies(TOP, BOTTOM)

    def test_unicode_connectives(self):
        assert parse_formula("∀x. P(x) → Q(x)", SIG) == parse_formula("forall x. P(x) -> Q(x)", SIG)
        assert parse_formula("¬P(c) ∧ ⊤", SIG) == weak_conj(negation(atom("P", c)), TOP)

    def test_equation(self):
        assert parse_formula("f(x) == c", SIG) == equation(fun("f", x), c)

    def test_primed_variable(self):
        assert parse_formula("P(y')", SIG) == atom("P", Var("y'"))


class TestErrors:
    def test_undeclared_predicate(self):
        with pytest.raises(SignatureError, match="undeclared predicate"):
            parse_formula("T(c)", SIG)

    def test_predicate_arity(self):
        with pytest.raises(SignatureError, match="arity mismatch for R"):
            parse_formula("R(c)", SIG)

    def test_function_arity(self):
        with pytest.raises(SignatureError, match="arity mismatch for f"):
            parse_formula("P(f(c, d))", SIG)

    def test_constant_applied(self):
        with pytest.raises(SignatureError):
            parse_formula("P(c(d))", SIG)

    def test_equality_off(self):
        with pytest.raises(SignatureError, match="equality"):
            parse_formula("c == d", Signature.build({"P": 1}, constants=["c", "d"]))

    def test_quantifying_over_constant(self):
        with pytest.raises(SignatureError, match="cannot quantify"):
            parse_formula("forall c. P(c)", SIG)

    def test_syntax_error_has_location(self):
        with pytest.raises(ParseError) as info:
            parse_formula("P(c) & & Q(c)", SIG)
        assert info.value.line == 1
        assert info.value.column is not None

    def test_unbalanced_parenthesis(self):
        with pytest.raises(ParseError):
            parse_formula("(P(c) -> Q(c)", SIG)


class TestRoundTrip:
    def test_fixed_examples(self):
        for text in [
            "forall x. (P(x) -> Q(x))",
            "(P(c) & Q(c)) /\\ S",
            "~(c == d)",
            "(forall x. P(x)) <-> Q(c)",
            "exists y. R(y, f(y))",
        ]:
            assert format_formula(parse_formula(text, SIG)) == text

    def test_biconditional_printed_back(self):
        phi = biconditional(atom("P", c), atom("S"))
        assert format_formula(phi) == "P(c) <-> S"

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(formulas())
    def test_print_then_parse(self, phi):
        assert parse_formula(format_formula(phi), PROPERTY_SIGNATURE) == phi

    @settings(max_examples=100, deadline=None)
    @given(terms())
    def test_terms(self, term):
        assert parse_term(format_term(term), PROPERTY_SIGNATURE) == term


class TestTheoryFiles:
    def test_declarations_and_closure(self):
        theory = parse_theory("pred P/1, Q/1\nconst c\n\nP(c)\nP(x) -> Q(x)\n", name="demo")
        assert theory.signature.predicate_arity("Q") == 1
        assert theory.signature.constants == ("c",)
        assert len(theory) == 2
        assert theory.lines == (4, 5)
        assert theory.formulas[1] == forall("x", implies(atom("P", x), atom("Q", x)))

    def test_open_formulas_kept_when_not_closing(self):
        theory = parse_theory("pred P/1\nP(x)\n", close=False)
        assert theory.formulas == (atom("P", x),)

    def test_comments_ignored(self):
        theory = parse_theory("# header\npred P/1  # one place\nconst c\nP(c)  # fact\n")
        assert list(theory) == [atom("P", c)]

    def test_equality_switch(self):
        assert parse_theory("equality on\nconst c\nc == c\n").signature.has_equality
        with pytest.raises(ParseError):
            parse_theory("equality maybe\n")

    def test_bad_symbol_declaration(self):
        with pytest.raises(ParseError):
            parse_theory("pred P\n")
        with pytest.raises(ParseError):
            parse_theory("pred P/one\n")

    def test_errors_carry_line_numbers(self):
        with pytest.raises(ParseError) as info:
            parse_theory("pred P/1\nconst c\nP(c) ->\n")
        assert info.value.line == 3
        with pytest.raises(SignatureError, match="line 3"):
            parse_theory("pred P/1\nconst c\nQ(c)\n")

    def test_classify_samples(self, pack_path):
        theory = parse_theory((pack_path / "theories" / "classify_samples.horn").read_text())
        tags = [classify_horn(phi).tag for phi in theory]
        assert tags == [
            HornTag.BASIC_HORN,
            HornTag.HORN_CLAUSE,
            HornTag.W_HORN_CLAUSE,
            HornTag.QUANTIFIER_FREE_HORN,
            HornTag.HORN_FORMULA,
            HornTag.NOT_HORN,
        ]
