"""
Tests for MTL-algebras, the law checker and truth-value text
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from engine.fuzzy_horn.algebra import (
    FiniteChain,
    TableAlgebra,
    boolean_values,
    check_residuation,
    format_truth,
    get_algebra,
    parse_rational,
)
from engine.fuzzy_horn.errors import AlgebraError
from engine.fuzzy_horn.loader import algebra_from_dict

from engine.tests.horn_strategies import fraction_samples, non_lattice_algebra, unit_rationals

F = Fraction

L5_TABLE = {
    "name": "lukasiewicz5",
    "size": 5,
    "order": [0, 1, 2, 3, 4],
    "conj": [[max(0, i + j - 4) for j in range(5)] for i in range(5)],
    "residuum": [[min(4, 4 - i + j) for j in range(5)] for i in range(5)],
}


def corrupted_table():
    data = dict(L5_TABLE)
    data["residuum"] = [[min(i, j) for j in range(5)] for i in range(5)]
    return data


class TestBundledAlgebras:
    def test_laws_hold_exhaustively(self, finite_algebra):
        report = check_residuation(finite_algebra)
        assert report.passed, report.describe()
        size = len(finite_algebra.elements())
        assert report.checked == size * size * 2 + size + size ** 3

    def test_laws_hold_on_samples(self, unit_algebra):
        samples = fraction_samples(random.Random(7), 22)
        report = check_residuation(unit_algebra, samples)
        assert report.passed, report.describe()

    def test_infinite_algebra_needs_samples(self, unit_algebra):
        with pytest.raises(AlgebraError, match="infinite"):
            check_residuation(unit_algebra)

    def test_chains_use_min_and_max(self, finite_algebra):
        values = finite_algebra.elements()
        for a in values:
            for b in values:
                assert finite_algebra.meet(a, b) == min(a, b)
                assert finite_algebra.join(a, b) == max(a, b)

    def test_boolean_embedding_preserves_operations(self, finite_algebra):
        boolean = get_algebra("boolean")
        embed = boolean_values(finite_algebra)
        for a in boolean.elements():
            for b in boolean.elements():
                assert embed[boolean.conj(a, b)] == finite_algebra.conj(embed[a], embed[b])
                assert embed[boolean.residuum(a, b)] == finite_algebra.residuum(embed[a], embed[b])
                assert embed[boolean.meet(a, b)] == finite_algebra.meet(embed[a], embed[b])
                assert embed[boolean.join(a, b)] == finite_algebra.join(embed[a], embed[b])


class TestOperations:
    def test_lukasiewicz(self):
        algebra = get_algebra("lukasiewicz")
        assert algebra.conj(F(3, 5), F(3, 5)) == F(1, 5)
        assert algebra.residuum(F(4, 5), F(1, 2)) == F(7, 10)
        assert algebra.neg(F(1, 4)) == F(3, 4)

    def test_godel(self):
        algebra = get_algebra("godel")
        assert algebra.conj(F(1, 3), F(1, 2)) == F(1, 3)
        assert algebra.residuum(F(1, 2), F(1, 3)) == F(1, 3)
        assert algebra.neg(F(1, 2)) == 0

    def test_product(self):
        algebra = get_algebra("product")
        assert algebra.conj(F(1, 2), F(1, 3)) == F(1, 6)
        assert algebra.residuum(F(1, 2), F(1, 4)) == F(1, 2)
        assert algebra.residuum(F(1, 4), F(1, 2)) == 1

    def test_boolean(self):
        algebra = get_algebra("B2")
        assert algebra.elements() == (0, 1)
        assert algebra.residuum(1, 0) == 0
        assert algebra.residuum(0, 0) == 1

    def test_foreign_value_rejected(self):
        with pytest.raises(AlgebraError, match="not an element"):
            get_algebra("lukasiewicz-5").conj(F(1, 3), F(1, 2))
        with pytest.raises(AlgebraError):
            get_algebra("godel").conj(F(3, 2), 0)

    @settings(max_examples=200, deadline=None)
    @given(unit_rationals, unit_rationals, unit_rationals)
    def test_residuation_on_rationals(self, a, b, c):
        for name in ("godel", "lukasiewicz", "product"):
            algebra = get_algebra(name)
            assert (algebra.conj(a, b) <= c) == (a <= algebra.residuum(b, c))

    @settings(max_examples=200, deadline=None)
    @given(unit_rationals, unit_rationals)
    def test_prelinearity_on_rationals(self, a, b):
        for name in ("godel", "lukasiewicz", "product"):
            algebra = get_algebra(name)
            assert algebra.join(algebra.residuum(a, b), algebra.residuum(b, a)) == 1


class TestRegistry:
    def test_aliases(self):
        assert get_algebra("G").name == "godel"
        assert get_algebra("L").name == "lukasiewicz"
        assert get_algebra("P").name == "product"

    def test_chain_names(self):
        chain = get_algebra("L5")
        assert isinstance(chain, FiniteChain)
        assert chain.name == "lukasiewicz-5"
        assert chain.elements() == (0, F(1, 4), F(1, 2), F(3, 4), 1)
        assert get_algebra("godel-chain", chain_size=3).elements() == (0, F(1, 2), 1)

    def test_unknown(self):
        with pytest.raises(AlgebraError, match="Unknown algebra"):
            get_algebra("heyting")

    def test_chain_too_small(self):
        with pytest.raises(AlgebraError):
            FiniteChain("godel", 1)

    def test_chain_membership(self):
        chain = get_algebra("lukasiewicz-5")
        assert chain.contains(F(3, 4))
        assert not chain.contains(F(1, 3))
        assert chain.index(F(3, 4)) == 3


class TestTableAlgebras:
    def test_lukasiewicz_table_passes(self):
        algebra = algebra_from_dict(L5_TABLE)
        assert algebra.bottom == 0 and algebra.top == 4
        assert algebra.is_chain
        assert algebra.conj(3, 3) == 2

    def test_loaded_from_pack(self, loader):
        algebra = loader.load_algebra_table("lukasiewicz5.algebra.yaml")
        assert algebra == algebra_from_dict(L5_TABLE)

    def test_corrupted_table_fails_prelinearity(self):
        data = corrupted_table()
        algebra = TableAlgebra("broken", data["conj"], data["residuum"], data["order"])
        report = check_residuation(algebra)
        assert not report.passed
        assert report.law == "prelinearity"
        assert report.witness == (0, 0)

    def test_corrupted_table_rejected_on_load(self):
        with pytest.raises(AlgebraError, match="prelinearity"):
            algebra_from_dict(corrupted_table())

    def test_declared_size_must_match(self):
        data = dict(L5_TABLE, size=4)
        with pytest.raises(AlgebraError, match="declares size"):
            algebra_from_dict(data)

    def test_out_of_range_entry(self):
        with pytest.raises(AlgebraError, match="out-of-range"):
            TableAlgebra("bad", [[0, 2], [0, 1]], [[1, 1], [0, 1]], [0, 1])

    def test_non_lattice_order_has_missing_join(self):
        algebra = non_lattice_algebra()
        assert not algebra.is_chain
        assert algebra.join(1, 2) is None
        assert algebra.meet(3, 4) is None
        assert algebra.join(1, 3) == 3
        report = check_residuation(algebra)
        assert report.law == "meet/join existence"

    def test_coerce_index(self):
        algebra = algebra_from_dict(L5_TABLE)
        assert algebra.coerce("2") == 2
        with pytest.raises(AlgebraError):
            algebra.coerce("half")
        with pytest.raises(AlgebraError):
            algebra.coerce(7)


class TestTruthText:
    def test_parse_rational(self):
        assert parse_rational("3/5") == F(3, 5)
        assert parse_rational(0.9) == F(9, 10)
        assert parse_rational("0.25") == F(1, 4)
        assert parse_rational(1) == 1

    def test_parse_rational_rejects(self):
        for raw in (True, "half", "1/0", None):
            with pytest.raises(AlgebraError):
                parse_rational(raw)

    def test_format_truth(self):
        assert format_truth(F(3, 5)) == "3/5"
        assert format_truth(F(1)) == "1"
        assert format_truth(F(3, 5), decimal=True) == "0.6"
        assert format_truth(F(1, 8), decimal=True) == "0.125"
        assert format_truth(F(1, 3), decimal=True) == "0.333333"
        assert format_truth(3) == "3"

    def test_coerce_reads_decimals_exactly(self):
        assert get_algebra("lukasiewicz").coerce(0.1) == F(1, 10)
        assert get_algebra("lukasiewicz-5").coerce("1/4") == F(1, 4)
        with pytest.raises(AlgebraError):
            get_algebra("lukasiewicz-5").coerce("1/3")
