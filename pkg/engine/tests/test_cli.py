"""
Tests for the command-line tool: exit codes and line formats
"""

import io

import pytest

from engine.fuzzy_horn.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main, parse_assignments
from engine.fuzzy_horn.errors import EvaluationError


@pytest.fixture
def run(pack_path):
    def invoke(*argv):
        out = io.StringIO()
        code = main([*argv, "--pack", str(pack_path)], out)
        return code, out.getvalue().splitlines()

    return invoke


def golden(fixtures_path, name):
    return (fixtures_path / name).read_text(encoding="utf-8").splitlines()


class TestGoldenOutput:
    def test_classify(self, run, fixtures_path):
        code, lines = run("classify", "classify_samples.horn", "--format", "machine")
        assert code == EXIT_FAILURE
        assert lines == golden(fixtures_path, "classify_machine.txt")

    def test_repro(self, run, fixtures_path):
        code, lines = run("repro", "all", "--format", "machine")
        assert code == EXIT_OK
        assert lines == golden(fixtures_path, "repro_machine.txt")


class TestEval:
    def test_exact_value(self, run):
        assert run("eval", "lukasiewicz_example.structure.yaml", "P1(c) & P2(c) -> P3(c)") == (EXIT_OK, ["3/5"])

    def test_decimal(self, run):
        code, lines = run("eval", "lukasiewicz_example.structure.yaml", "P1(c) & P2(c) -> P3(c)", "--decimal")
        assert lines == ["0.6"]

    def test_assignment(self, run):
        code, lines = run("eval", "lukasiewicz_example.structure.yaml", "P2(x) & P2(x)", "--assign", "x=c", "--format", "machine")
        assert (code, lines) == (EXIT_OK, ["value=4/5"])

    def test_parse_error(self, run, capsys):
        code, _ = run("eval", "two_point.structure.yaml", "P(c) &")
        assert code == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_missing_structure(self, run):
        code, _ = run("eval", "absent.structure.yaml", "top")
        assert code == EXIT_USAGE


class TestSaturate:
    def test_equality_classes(self, run):
        code, lines = run("saturate", "equality.horn", "--format", "machine")
        assert code == EXIT_OK
        assert "class {c, d}" in lines
        assert "atom P(d)" in lines
        assert "consistent=yes" in lines

    def test_inconsistent(self, run):
        assert run("saturate", "inconsistent.horn") == (EXIT_FAILURE, ["inconsistent: 0̄ derived"])

    def test_not_horn(self, run, capsys):
        code, _ = run("saturate", "godel_counterexample.horn")
        assert code == EXIT_FAILURE
        assert "Horn" in capsys.readouterr().err

    def test_output_dir(self, run, tmp_path):
        code, _ = run("saturate", "equality.horn", "--output-dir", str(tmp_path))
        assert code == EXIT_OK
        assert (tmp_path / "classes.txt").read_text() == "1: c, d\n2: v1\n"
        assert (tmp_path / "term_structure.yaml").exists()

    def test_depth_flag(self, run):
        code, lines = run("saturate", "successor.horn", "--depth", "1", "--frozen-vars", "0", "--format", "machine")
        assert code == EXIT_OK
        assert "complete=no" in lines
        assert "atom N(s(z))" in lines
        assert "atom N(s(s(z)))" not in lines


class TestModelCheck:
    def test_model(self, run):
        assert run("model-check", "two_point.structure.yaml", "two_clause.horn", "--format", "machine") == (
            EXIT_OK,
            ["model=yes"],
        )

    def test_counterexample(self, run):
        code, lines = run(
            "model-check", "lukasiewicz_example.structure.yaml", "lukasiewicz_example.horn", "--format", "machine"
        )
        assert code == EXIT_FAILURE
        assert lines[0] == "model=no"
        assert lines[-1] == "value=3/5"

    def test_symbols_must_match(self, run):
        code, _ = run("model-check", "godel_example.structure.yaml", "two_clause.horn")
        assert code == EXIT_USAGE


class TestHerbrand:
    def test_least_model(self, run):
        code, lines = run("herbrand", "two_clause.horn", "--format", "machine")
        assert code == EXIT_OK
        assert lines == ["atoms=2", "complete=yes", "atom P(c)", "atom Q(c)"]

    def test_from_structure(self, run):
        code, lines = run("herbrand", "lukasiewicz_example.horn", "--structure", "lukasiewicz_example.structure.yaml")
        assert code == EXIT_OK
        assert "  P1(c)" in lines
        assert lines[-1].startswith("N^H ") and lines[-1].endswith(" = 1")

    def test_export(self, run, tmp_path):
        target = tmp_path / "nh.structure.yaml"
        code, _ = run("herbrand", "two_clause.horn", "--export", str(target))
        assert code == EXIT_OK
        assert "P:" in target.read_text()

    def test_needs_input(self, run):
        assert run("herbrand")[0] == EXIT_USAGE


class TestMorphismCommands:
    def test_identity_map(self, run):
        code, lines = run(
            "hom-check", "two_point.structure.yaml", "two_point.structure.yaml", "identity.map.yaml", "--format", "machine"
        )
        assert code == EXIT_OK
        assert lines[0] == "kind=isomorphism"

    def test_swap_map(self, run):
        code, lines = run("hom-check", "two_point.structure.yaml", "two_point.structure.yaml", "swap.map.yaml")
        assert code == EXIT_FAILURE
        assert lines[0] == "kind: none"
        assert "  predicates: FAILS (P(a) is 1 but its image is not)" in lines

    def test_free_hom(self, run):
        code, lines = run(
            "free-hom",
            "two_clause.horn",
            "two_point.structure.yaml",
            "--frozen-vars",
            "1",
            "--assign",
            "v1=b",
            "--exhaustive",
            "--format",
            "machine",
        )
        assert code == EXIT_OK
        assert lines == [
            "f: 0->0, 1->1",
            "g: c -> a",
            "g: v1 -> b",
            "complete=yes",
            "kind=isomorphism",
            "homomorphisms=1",
        ]

    def test_free_hom_on_truncated_universe(self, run, tmp_path):
        target = tmp_path / "loop.structure.yaml"
        target.write_text(
            "algebra: boolean\ndomain: [n]\nconstants:\n  z: n\nfunctions:\n  s: [[n, n]]\npredicates:\n  N: [[n, 1]]\n"
        )
        code, lines = run("free-hom", "successor.horn", str(target), "--assign", "v1=n", "--format", "machine")
        assert code == EXIT_OK
        assert "g: z -> n" in lines
        assert lines[-2:] == ["complete=no", "kind=unchecked"]
        code, lines = run("free-hom", "successor.horn", str(target), "--assign", "v1=n")
        assert lines[-2:] == ["complete: no", "kind: unchecked (map built on the generated fragment only)"]

    def test_free_hom_into_non_model(self, run):
        code, _ = run("free-hom", "lukasiewicz_example.horn", "lukasiewicz_example.structure.yaml", "--assign", "v1=c")
        assert code == EXIT_FAILURE


class TestUsage:
    def test_unknown_command(self):
        assert main(["prove", "x"], io.StringIO()) == EXIT_USAGE

    def test_missing_config(self, tmp_path):
        assert main(["repro", "all", "--config", str(tmp_path / "absent.yaml")], io.StringIO()) == EXIT_USAGE

    def test_parse_assignments(self):
        assert parse_assignments(["x=a, y=b", "z=a"], ("a", "b")) == {"x": "a", "y": "b", "z": "a"}
        with pytest.raises(EvaluationError, match="not an element"):
            parse_assignments(["x=c"], ("a", "b"))
        with pytest.raises(EvaluationError, match="x=e"):
            parse_assignments(["x"], ("a",))
