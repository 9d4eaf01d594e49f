"""
Tests for signatures, terms, formulas, Horn classification, rank and substitution
"""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from engine.fuzzy_horn.errors import SignatureError
from engine.fuzzy_horn.parser import parse_formula
from engine.fuzzy_horn.syntax import (
    BOTTOM,
    EQUALITY,
    Atom,
    Binary,
    Connective,
    HornTag,
    Quantified,
    Quantifier,
    Signature,
    Var,
    atom,
    classify_horn,
    const,
    equation,
    exists,
    forall,
    format_formula,
    free_vars,
    fun,
    generate_terms,
    implies,
    is_equality_free,
    is_ground,
    negation,
    rank,
    similarity_axioms,
    split_basic,
    strong_conj,
    substitute,
    term_vars,
    universal_closure,
    weak_conj,
)

from engine.tests.horn_strategies import PROPERTY_SIGNATURE, VARIABLE_NAMES, horn_matrices, substitutions

PROPERTY_SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])

SIG = Signature.build({"P": 1, "Q": 1, "R": 1}, {"f": 1}, constants=["c", "d"], equality=True)
x, y = Var("x"), Var("y")
c = const("c")


class TestSignature:
    def test_equality_flag_adds_binary_symbol(self):
        signature = Signature.build({"P": 1}, equality=True)
        assert signature.has_equality
        assert signature.predicate_arity(EQUALITY) == 2

    def test_predicate_and_function_names_disjoint(self):
        with pytest.raises(SignatureError):
            Signature(predicates=(("P", 1),), functions=(("P", 1),))

    def test_case_conventions_enforced(self):
        with pytest.raises(SignatureError):
            Signature.build({"p": 1})
        with pytest.raises(SignatureError):
            Signature.build(functions={"F": 1})

    def test_negative_arity_rejected(self):
        with pytest.raises(SignatureError):
            Signature.build({"P": -1})

    def test_constants_and_function_symbols(self):
        assert SIG.constants == ("c", "d")
        assert SIG.function_symbols == (("f", 1),)
        assert ("==", 2) not in SIG.user_predicates

    def test_merged_combines_vocabularies(self):
        left = Signature.build({"P": 1}, constants=["c"])
        right = Signature.build({"Q": 2}, {"f": 1}, equality=True)
        merged = left.merged(right)
        assert merged.predicate_arity("Q") == 2
        assert merged.function_arity("f") == 1
        assert merged.has_equality

    def test_merged_rejects_conflicting_arity(self):
        with pytest.raises(SignatureError):
            Signature.build({"P": 1}).merged(Signature.build({"P": 2}))


class TestTerms:
    def test_ground(self):
        assert is_ground(fun("f", c))
        assert not is_ground(fun("f", x))

    def test_generate_terms_depth_two(self):
        terms, truncated = generate_terms([c], [("f", 1)], depth=2, max_terms=100)
        assert terms == (c, fun("f", c), fun("f", fun("f", c)))
        assert not truncated

    def test_generate_terms_cap(self):
        terms, truncated = generate_terms([c], [("f", 1)], depth=5, max_terms=3)
        assert len(terms) == 3
        assert truncated


class TestFreeVars:
    def test_atom(self):
        assert free_vars(atom("P", x)) == {"x"}

    def test_closed(self):
        assert free_vars(forall("x", atom("P", x))) == frozenset()

    def test_mixed(self):
        assert free_vars(forall("x", implies(atom("P", x), atom("Q", y)))) == {"y"}


class TestClassification:
    def test_basic_horn_rule(self):
        phi = implies(strong_conj(atom("P", x), atom("Q", x)), atom("R", x))
        assert classify_horn(phi).tag is HornTag.BASIC_HORN

    def test_bare_atom_is_both_tracks(self):
        result = classify_horn(atom("P", c))
        assert result.tag is HornTag.BASIC_HORN
        assert result.strong and result.weak
        assert result.is_clause

    def test_weak_body(self):
        phi = implies(weak_conj(atom("P", x), atom("Q", x)), atom("R", x))
        result = classify_horn(phi)
        assert result.tag is HornTag.BASIC_W_HORN
        assert not result.strong and result.weak

    def test_existential_prefix_is_formula_not_clause(self):
        phi = exists("x", implies(atom("P", x), atom("Q", x)))
        result = classify_horn(phi)
        assert result.tag is HornTag.HORN_FORMULA
        assert not result.is_clause

    def test_negated_implication_is_not_horn(self):
        phi = negation(implies(atom("P", c), BOTTOM))
        assert classify_horn(phi).tag is HornTag.NOT_HORN

    def test_disjunction_is_not_horn(self):
        assert classify_horn(Binary(Connective.OR, atom("P", x), atom("Q", x))).tag is HornTag.NOT_HORN

    def test_universal_clause(self):
        phi = forall("x", implies(atom("P", x), atom("Q", x)))
        result = classify_horn(phi)
        assert result.tag is HornTag.HORN_CLAUSE
        assert result.prefix == ((Quantifier.FORALL, "x"),)

    def test_quantifier_free_conjunction(self):
        phi = strong_conj(implies(atom("P", c), atom("Q", c)), atom("R", c))
        result = classify_horn(phi)
        assert result.tag is HornTag.QUANTIFIER_FREE_HORN
        assert len(result.conjuncts) == 2

    def test_vacuous_quantifier_allowed(self):
        assert classify_horn(forall("y", atom("P", c))).is_clause

    def test_split_basic(self):
        body, head = split_basic(implies(weak_conj(atom("P", x), atom("Q", x)), atom("R", x)))
        assert body == (atom("P", x), atom("Q", x))
        assert head == atom("R", x)

    @PROPERTY_SETTINGS
    @given(horn_matrices())
    def test_generated_matrices_are_clauses(self, matrix):
        assert classify_horn(matrix).is_clause
        assert classify_horn(universal_closure(matrix)).is_clause

    @PROPERTY_SETTINGS
    @given(horn_matrices(), st.permutations(["u", "v", "w"]))
    def test_stable_under_renaming(self, matrix, fresh):
        renaming = {old: Var(new) for old, new in zip(VARIABLE_NAMES, fresh)}
        renamed = substitute(matrix, renaming)
        assert classify_horn(renamed).tag is classify_horn(matrix).tag
        assert classify_horn(universal_closure(renamed)).tag is classify_horn(universal_closure(matrix)).tag


class TestRank:
    def test_atomic(self):
        assert rank(atom("P", c)) == 0

    def test_one_quantifier(self):
        phi = forall("x", implies(strong_conj(atom("P", x), atom("Q", x)), atom("R", x)))
        assert rank(phi) == 1

    def test_two_quantifiers(self):
        assert rank(forall(["x", "y"], implies(atom("P", x), atom("Q", y)))) == 2

    def test_negation_counts_on_surface_only(self):
        phi = negation(forall("x", atom("P", x)))
        assert rank(phi) == 2
        assert rank(phi, surface=False) == 1

    def test_biconditional_counts_once_on_surface(self):
        phi = parse_formula("(forall x. P(x)) <-> Q(c)", SIG)
        assert rank(phi) == 1
        assert rank(phi, surface=False) == 2

    @PROPERTY_SETTINGS
    @given(horn_matrices(), st.sets(st.sampled_from(VARIABLE_NAMES)), substitutions())
    def test_substitution_preserves_rank(self, matrix, bound, s):
        phi = forall(sorted(bound), matrix) if bound else matrix
        assert rank(substitute(phi, s)) == rank(phi)


class TestSubstitution:
    def test_textbook(self):
        phi = implies(atom("P", x), atom("Q", x))
        result = substitute(phi, {"x": fun("f", c)})
        assert format_formula(result) == "P(f(c)) -> Q(f(c))"

    def test_capture_avoiding_rename(self):
        phi = forall("y", implies(atom("P", x), atom("Q", y)))
        result = substitute(phi, {"x": y})
        assert result == Quantified(Quantifier.FORALL, "y'", implies(atom("P", y), atom("Q", Var("y'"))))
        assert format_formula(result) == "forall y'. (P(y) -> Q(y'))"

    def test_bound_variable_untouched(self):
        phi = forall("x", atom("P", x))
        assert substitute(phi, {"x": c}) is phi

    def test_horn_clause_matrix_instance(self):
        clause = forall("x", implies(atom("P", x), atom("Q", x)))
        instance = substitute(clause.body, {"x": c})
        assert classify_horn(instance).is_clause
        assert classify_horn(universal_closure(instance)).is_clause

    @PROPERTY_SETTINGS
    @given(horn_matrices(), st.sets(st.sampled_from(VARIABLE_NAMES)), substitutions())
    def test_substitution_keeps_horn_clauses(self, matrix, bound, s):
        phi = forall(sorted(bound), matrix) if bound else matrix
        result = substitute(phi, s)
        assert classify_horn(result).is_clause
        assert classify_horn(universal_closure(result)).is_clause

    @PROPERTY_SETTINGS
    @given(horn_matrices(), substitutions())
    def test_free_variables_after_substitution(self, matrix, s):
        before = free_vars(matrix)
        incoming = frozenset().union(*(term_vars(t) for name, t in s.items() if name in before))
        assert free_vars(substitute(matrix, s)) == (before - set(s)) | incoming


class TestSimilarityAxioms:
    def test_counts(self):
        axioms = similarity_axioms(SIG)
        # S1-S3, one C1 for f, one C2 each for P, Q, R
        assert len(axioms) == 3 + 1 + 3

    def test_pure_equality_signature(self):
        axioms = similarity_axioms(Signature.build(equality=True))
        assert len(axioms) == 3
        assert format_formula(axioms[0]) == "forall x. x == x"

    def test_congruence_instance_for_function(self):
        signature = Signature.build({}, {"f": 1}, equality=True)
        expected = forall(["x", "y"], implies(equation(x, y), equation(fun("f", x), fun("f", y))))
        assert expected in similarity_axioms(signature)

    def test_congruence_instance_for_predicate(self):
        signature = Signature.build({"P": 1}, equality=True)
        expected = parse_formula("forall x y. x == y -> (P(x) <-> P(y))", signature)
        assert expected in similarity_axioms(signature)

    def test_horn_form_is_horn(self):
        for axiom in similarity_axioms(SIG, horn_form=True):
            assert classify_horn(axiom).is_clause

    def test_requires_equality(self):
        with pytest.raises(SignatureError):
            similarity_axioms(Signature.build({"P": 1}))


class TestFormulaHelpers:
    def test_equality_free(self):
        assert is_equality_free(atom("P", c))
        assert not is_equality_free(implies(equation(x, c), atom("P", x)))

    def test_universal_closure_sorted(self):
        phi = universal_closure(implies(atom("P", y), atom("Q", x)))
        assert isinstance(phi, Quantified) and phi.variable == "x"
        assert phi.body.variable == "y"

    def test_atom_printing(self):
        assert format_formula(Atom("S", ())) == "S"
        assert str(equation(x, c)) == "x == c"

    def test_negated_equation_printing(self):
        assert format_formula(negation(equation(x, c))) == "~(x == c)"

    def test_property_signature_has_propositional_symbol(self):
        assert PROPERTY_SIGNATURE.predicate_arity("S") == 0
