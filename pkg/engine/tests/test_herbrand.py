"""
Tests for Herbrand universes, H-structures and least H-models
"""

import random

import pytest

from engine.fuzzy_horn.algebra import get_algebra
from engine.fuzzy_horn.errors import HerbrandError, InconsistentTheoryError
from engine.fuzzy_horn.herbrand import (
    HStructure,
    h_structure_from_atoms,
    h_structure_of_model,
    herbrand_universe,
    least_h_model,
)
from engine.fuzzy_horn.parser import parse_formula, parse_theory
from engine.fuzzy_horn.saturation import SaturationConfig
from engine.fuzzy_horn.semantics import ModelStatus, UnknownAtDepth, Value, eval_sentence, is_model
from engine.fuzzy_horn.syntax import Signature, atom, const, equation, fun

from engine.tests.horn_strategies import horn_theories, random_structure

c, z = const("c"), const("z")


def successor(loader):
    return loader.load_theory("successor.horn")


class TestUniverse:
    def test_function_free(self):
        universe = herbrand_universe(Signature.build({"P": 1}, constants=["c", "d"]), depth=3)
        assert universe.terms == (c, const("d"))
        assert universe.complete

    def test_depth_bounded(self, loader):
        universe = herbrand_universe(successor(loader).signature, depth=2)
        assert universe.terms == (z, fun("s", z), fun("s", fun("s", z)))
        assert not universe.complete
        assert fun("s", z) in universe

    def test_needs_a_constant(self):
        with pytest.raises(HerbrandError, match="constant"):
            herbrand_universe(Signature.build({"P": 1}), depth=1)


class TestHStructure:
    SIG = Signature.build({"P": 1, "Q": 1}, constants=["c"], equality=True)

    def test_rejects_equations(self):
        with pytest.raises(HerbrandError, match="equations"):
            h_structure_from_atoms([equation(c, c)], self.SIG, 0)

    def test_rejects_terms_outside_universe(self, loader):
        sig = successor(loader).signature
        with pytest.raises(HerbrandError, match="outside"):
            h_structure_from_atoms([atom("N", fun("s", fun("s", z)))], sig, 1)

    def test_rejects_nullary_predicates(self):
        with pytest.raises(HerbrandError, match="0-ary"):
            h_structure_from_atoms([], Signature.build({"S": 0}, constants=["c"]), 0)

    def test_equality_is_identity(self):
        M = h_structure_from_atoms([atom("P", c)], self.SIG, 0)
        assert M.crisp_equality
        assert eval_sentence(M, parse_formula("c == c", self.SIG)) == Value(1)
        assert eval_sentence(M, parse_formula("P(c) & ~Q(c)", self.SIG)) == Value(1)

    def test_sorted_atoms(self, loader):
        sig = successor(loader).signature
        universe = herbrand_universe(sig, 2)
        H = HStructure(sig, universe, frozenset({atom("N", fun("s", z)), atom("N", z)}))
        assert H.sorted_atoms() == [atom("N", z), atom("N", fun("s", z))]


class TestTruncatedHStructure:
    @pytest.fixture
    def M(self, loader):
        theory = successor(loader)
        return least_h_model(theory, theory.signature, SaturationConfig(depth=1)).to_structure()

    def test_functions_are_partial(self, M):
        assert M.partial and not M.domain_complete
        assert M.apply("s", (z,)) == fun("s", z)

    def test_universal_is_unknown(self, M):
        phi = parse_formula("forall x. N(x) -> N(s(x))", M.signature)
        assert eval_sentence(M, phi) == UnknownAtDepth(1)
        assert is_model(M, [phi]).status is ModelStatus.UNKNOWN

    def test_existential_short_circuits(self, M):
        assert eval_sentence(M, parse_formula("exists x. N(x)", M.signature)) == Value(1)

    def test_atom_beyond_depth(self, M):
        assert eval_sentence(M, parse_formula("N(s(s(z)))", M.signature)) == UnknownAtDepth(1)

    def test_extraction_needs_partial_flag(self, M):
        with pytest.raises(HerbrandError, match="cannot evaluate"):
            h_structure_of_model(M, M.signature, 2)
        H = h_structure_of_model(M, M.signature, 2, partial=True)
        assert H.atoms == {atom("N", z), atom("N", fun("s", z))}
        assert H.skipped == (atom("N", fun("s", fun("s", z))),)


class TestLeastModel:
    def test_two_clause(self, loader):
        theory = loader.load_theory("two_clause.horn")
        H = least_h_model(theory, theory.signature)
        assert H.atoms == {atom("P", c), atom("Q", c)}
        assert is_model(H.to_structure(), theory).status is ModelStatus.YES

    def test_successor_up_to_depth(self, loader):
        theory = successor(loader)
        H = least_h_model(theory, theory.signature, SaturationConfig(depth=2))
        assert H.sorted_atoms() == [atom("N", z), atom("N", fun("s", z)), atom("N", fun("s", fun("s", z)))]

    def test_equality_rejected(self, loader):
        theory = loader.load_theory("equality.horn")
        with pytest.raises(HerbrandError, match="equality-free"):
            least_h_model(theory, theory.signature)

    def test_inconsistent(self, loader):
        theory = loader.load_theory("inconsistent.horn")
        with pytest.raises(InconsistentTheoryError):
            least_h_model(theory, theory.signature)

    def test_nullary_rejected(self):
        theory = parse_theory("pred S/0, P/1\nconst c\nS\n")
        with pytest.raises(HerbrandError, match="0-ary"):
            least_h_model(theory, theory.signature)

    def test_removing_any_atom_breaks_the_model(self):
        tried = 0
        for instance in horn_theories(150, seed=808, equality=False):
            H = least_h_model(instance.clauses, instance.signature)
            if not H.atoms or len(H.atoms) > 6:
                continue
            tried += 1
            assert is_model(H.to_structure(), instance.clauses).status is ModelStatus.YES
            for missing in H.atoms:
                smaller = h_structure_from_atoms(H.atoms - {missing}, instance.signature, 0)
                assert is_model(smaller, instance.clauses).status is ModelStatus.NO
        assert tried > 10


class TestModelsToHStructures:
    def test_lukasiewicz_example(self, loader, lukasiewicz_example):
        theory = loader.load_theory("lukasiewicz_example.horn")
        H = h_structure_of_model(lukasiewicz_example, theory.signature, 0)
        assert H.atoms == {atom("P1", c)}
        assert is_model(H.to_structure(), theory).status is ModelStatus.YES

    def test_true_clauses_survive(self):
        rng = random.Random(909)
        pairs = 0
        attempts = 0
        while pairs < 200 and attempts < 5000:
            attempts += 1
            instance = horn_theories(1, seed=rng.randrange(10 ** 9), equality=False)[0]
            algebra = get_algebra(rng.choice(["lukasiewicz-11", "godel-5"]))
            M = random_structure(rng, instance.signature, algebra, rng.randint(1, 3), top_bias=0.7)
            N = h_structure_of_model(M, instance.signature, 0).to_structure()
            for clause in instance.clauses:
                if eval_sentence(M, clause) != Value(algebra.top):
                    continue
                pairs += 1
                assert eval_sentence(N, clause) == Value(1)
        assert pairs >= 200
