"""
Command-line tool

Usage:
    python -m engine.fuzzy_horn classify theories/two_clause.horn
    python -m engine.fuzzy_horn saturate theories/equality.horn --depth 1 --output-dir out/
    python -m engine.fuzzy_horn eval lukasiewicz_example.structure.yaml "P1(c) & P2(c) -> P3(c)"
    python -m engine.fuzzy_horn repro all

Exit codes: 0 success, 1 semantic failure (not Horn, not a model, mismatch,
inconsistent theory), 2 usage, parse or file errors.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, TextIO

from .algebra import format_truth
from .config import EngineConfig, load_config
from .errors import (
    AlgebraError,
    ConfigError,
    EvaluationError,
    HerbrandError,
    HornEngineError,
    InconsistentTheoryError,
    MorphismError,
    NotHornError,
    ParseError,
    SignatureError,
    StructureError,
)
from .herbrand import h_structure_of_model, least_h_model
from .loader import TheoryLoader, dump_classes, dump_h_set, dump_map, dump_structure
from .morphisms import canonical_free_map, check_homomorphism, enumerate_homomorphisms
from .parser import Theory, parse_formula
from .repro import EXAMPLES, run_example
from .saturation import build_term_structure, saturate
from .semantics import Element, FuzzyStructure, TruthOutcome, Undefined, Value, eval_formula, eval_sentence, is_model
from .syntax import Signature, Var, classify_horn, format_formula, rank

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_USAGE_ERRORS = (FileNotFoundError, ParseError, SignatureError, ConfigError, StructureError, AlgebraError, EvaluationError)
_SEMANTIC_ERRORS = (NotHornError, InconsistentTheoryError, HerbrandError, MorphismError)


class CommandContext:
    """Everything a subcommand needs: parsed arguments, config, loader and output stream"""

    def __init__(self, args: argparse.Namespace, config: EngineConfig, out: TextIO):
        self.args = args
        self.config = config
        self.out = out
        self.loader = TheoryLoader(args.pack)
        self.machine = config.output_format == "machine"

    def emit(self, line: str = "") -> None:
        print(line, file=self.out)

    def truth(self, value) -> str:
        return format_truth(value, self.config.decimal)

    def outcome(self, outcome: TruthOutcome) -> str:
        if isinstance(outcome, Value):
            return self.truth(outcome.value)
        if isinstance(outcome, Undefined):
            return f"undefined ({outcome.reason})" if outcome.reason else "undefined"
        return f"unknown at depth {outcome.depth}"

    def theory(self, name: str) -> Theory:
        return self.loader.load_theory(name)

    def structure(self, name: str) -> FuzzyStructure:
        return self.loader.load_structure(name, self.args.algebra or self.config.algebra_name)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def parse_assignments(specs: Optional[Sequence[str]], domain: Sequence[Element]) -> Dict[str, Element]:
    """
    Read x=e pairs (comma separated, option may repeat) against a domain

    Elements are matched by their text.
    """
    by_text = {str(d): d for d in domain}
    evaluation: Dict[str, Element] = {}
    for spec in specs or ():
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            name, sep, value = part.partition("=")
            name, value = name.strip(), value.strip()
            if not sep or not name or not value:
                raise EvaluationError(f"assignments look like x=e, got {part!r}")
            if value not in by_text:
                raise EvaluationError(f"{value} is not an element of the domain {sorted(by_text)}")
            evaluation[name] = by_text[value]
    return evaluation


def check_compatible(theory: Signature, structure: FuzzyStructure) -> None:
    """Every symbol of the theory must be interpreted by the structure with the same arity"""
    target = structure.signature
    for name, arity in theory.predicates:
        if target.predicate_arity(name) != arity:
            raise SignatureError(f"structure {structure.name} does not interpret predicate {name}/{arity}")
    for name, arity in theory.functions:
        if target.function_arity(name) != arity:
            raise SignatureError(f"structure {structure.name} does not interpret function {name}/{arity}")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    _logger.info(f"Wrote {path}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_classify(ctx: CommandContext) -> int:
    theory = ctx.theory(ctx.args.theory)
    all_clauses = True
    for line_no, phi in zip(theory.lines, theory.formulas):
        result = classify_horn(phi)
        all_clauses = all_clauses and result.is_clause
        if ctx.machine:
            ctx.emit(
                f"line={line_no} tag={result.tag.value} clause={_yes(result.is_clause)} "
                f"strong={_yes(result.strong)} weak={_yes(result.weak)} "
                f"rank={rank(phi)} normalized_rank={rank(phi, surface=False)}"
            )
        else:
            ctx.emit(
                f"{line_no}: {result.tag.value:<20} clause={_yes(result.is_clause)} "
                f"rank={rank(phi)}/{rank(phi, surface=False)}  {format_formula(phi)}"
            )
    _logger.info(f"Classified {len(theory)} formulas from {theory.name}")
    return EXIT_OK if all_clauses else EXIT_FAILURE


def cmd_saturate(ctx: CommandContext) -> int:
    theory = ctx.theory(ctx.args.theory)
    result = saturate(theory.formulas, theory.signature, ctx.config.saturation)
    if result.bottom_derived:
        ctx.emit("inconsistent: 0̄ derived")
        return EXIT_FAILURE

    summary = result.summary()
    if ctx.machine:
        for key in ("atoms", "classes", "universe", "rounds", "complete", "consistent", "truncated"):
            value = summary[key]
            ctx.emit(f"{key}={_yes(value) if isinstance(value, bool) else value}")
    else:
        ctx.emit(
            f"atoms: {summary['atoms']}  classes: {summary['classes']}  universe: {summary['universe']}  "
            f"rounds: {summary['rounds']}  complete: {_yes(summary['complete'])}  consistent: yes"
        )
    for phi in sorted(result.ground_atoms(include_equality=False), key=format_formula):
        ctx.emit(f"atom {format_formula(phi)}" if ctx.machine else f"  {format_formula(phi)}")
    for members in result.classes():
        if len(members) > 1:
            text = "{" + ", ".join(str(t) for t in members) + "}"
            ctx.emit(f"class {text}" if ctx.machine else f"  class {text}")

    if ctx.args.output_dir:
        out_dir = Path(ctx.args.output_dir)
        _write(out_dir / "term_structure.yaml", dump_structure(build_term_structure(result), ctx.config.decimal))
        _write(out_dir / "classes.txt", dump_classes(result))
    return EXIT_OK


def cmd_eval(ctx: CommandContext) -> int:
    structure = ctx.structure(ctx.args.structure)
    phi = parse_formula(ctx.args.formula, structure.signature)
    evaluation = parse_assignments(ctx.args.assign, structure.domain)
    outcome = eval_formula(structure, evaluation, phi)
    ctx.emit(f"value={ctx.outcome(outcome)}" if ctx.machine else ctx.outcome(outcome))
    return EXIT_OK if isinstance(outcome, Value) else EXIT_FAILURE


def cmd_model_check(ctx: CommandContext) -> int:
    structure = ctx.structure(ctx.args.structure)
    theory = ctx.theory(ctx.args.theory)
    check_compatible(theory.signature, structure)
    check = is_model(structure, theory.formulas)
    if ctx.machine:
        ctx.emit(f"model={check.status.value}")
        if check.formula is not None:
            ctx.emit(f"formula={format_formula(check.formula)}")
            ctx.emit(f"value={ctx.outcome(check.outcome)}")
    else:
        ctx.emit(check.describe())
    return EXIT_OK if check else EXIT_FAILURE


def cmd_herbrand(ctx: CommandContext) -> int:
    args = ctx.args
    if not args.theory and not args.structure:
        raise EvaluationError("herbrand needs a theory file, --structure, or both")
    theory = ctx.theory(args.theory) if args.theory else None
    depth = ctx.config.herbrand_depth

    if args.structure:
        structure = ctx.structure(args.structure)
        if theory is not None:
            check_compatible(theory.signature, structure)
        h_structure = h_structure_of_model(structure, structure.signature, depth, partial=True)
    else:
        h_structure = least_h_model(theory.formulas, theory.signature, ctx.config.saturation.replace(depth=depth))

    atoms = h_structure.sorted_atoms()
    if ctx.machine:
        ctx.emit(f"atoms={len(atoms)}")
        ctx.emit(f"complete={_yes(h_structure.universe.complete)}")
    else:
        ctx.emit(f"H ({len(atoms)} atoms, universe depth {depth}, complete: {_yes(h_structure.universe.complete)})")
    for line in dump_h_set(h_structure).splitlines():
        ctx.emit(f"atom {line}" if ctx.machine else f"  {line}")
    for phi in h_structure.skipped:
        ctx.emit(f"skipped {format_formula(phi)}")

    status = EXIT_OK
    if args.structure and theory is not None:
        n_h = h_structure.to_structure()
        for phi in theory.formulas:
            outcome = eval_sentence(n_h, phi)
            ctx.emit(f"N^H {format_formula(phi)} = {ctx.outcome(outcome)}")
            if outcome != Value(n_h.algebra.top):
                status = EXIT_FAILURE

    if args.export:
        _write(Path(args.export), dump_structure(h_structure.to_structure(), ctx.config.decimal))
    return status


def cmd_hom_check(ctx: CommandContext) -> int:
    source = ctx.structure(ctx.args.source)
    target = ctx.structure(ctx.args.target)
    structure_map = ctx.loader.load_map(ctx.args.map, source, target)
    report = check_homomorphism(source, target, structure_map)
    for line in report.lines(ctx.machine):
        ctx.emit(line)
    return EXIT_OK if report.is_homomorphism else EXIT_FAILURE


def cmd_free_hom(ctx: CommandContext) -> int:
    theory = ctx.theory(ctx.args.theory)
    target = ctx.structure(ctx.args.target)
    check_compatible(theory.signature, target)

    result = saturate(theory.formulas, theory.signature, ctx.config.saturation)
    evaluation = parse_assignments(ctx.args.assign, target.domain)
    structure_map = canonical_free_map(result, target, evaluation)
    for line in dump_map(structure_map).splitlines():
        ctx.emit(line)

    flag = "yes" if result.complete else "no"
    ctx.emit(f"complete={flag}" if ctx.machine else f"complete: {flag}")
    if not result.complete:
        # the term structure of a truncated universe is partial; check_homomorphism needs it total
        ctx.emit("kind=unchecked" if ctx.machine else "kind: unchecked (map built on the generated fragment only)")
        return EXIT_OK

    term_structure = build_term_structure(result)
    report = check_homomorphism(term_structure, target, structure_map)
    ctx.emit(f"kind={report.kind.value}" if ctx.machine else f"kind: {report.kind.value}")
    if not ctx.args.exhaustive:
        return EXIT_OK if report.is_homomorphism else EXIT_FAILURE

    fixed = {result.representative(Var(name)): value for name, value in evaluation.items() if name in result.universe.frozen}
    count = sum(1 for _ in enumerate_homomorphisms(term_structure, target, structure_map.f, fixed))
    ctx.emit(f"homomorphisms={count}" if ctx.machine else f"homomorphisms agreeing on generators: {count}")
    return EXIT_OK if count == 1 and report.is_homomorphism else EXIT_FAILURE


def cmd_repro(ctx: CommandContext) -> int:
    examples = list(EXAMPLES) if ctx.args.example == "all" else [ctx.args.example]
    passed = True
    for example in examples:
        report = run_example(example)
        for line in report.lines(ctx.machine):
            ctx.emit(line)
        passed = passed and report.ok
    return EXIT_OK if passed else EXIT_FAILURE


COMMANDS: Mapping[str, Callable[[CommandContext], int]] = {
    "classify": cmd_classify,
    "saturate": cmd_saturate,
    "eval": cmd_eval,
    "model-check": cmd_model_check,
    "herbrand": cmd_herbrand,
    "hom-check": cmd_hom_check,
    "free-hom": cmd_free_hom,
    "repro": cmd_repro,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="engine YAML config (default engine/config/horn_engine.yaml)")
    common.add_argument("--pack", help="pack directory used to resolve bare file names")
    common.add_argument("--algebra", help="algebra for structures that do not name one")
    common.add_argument("--depth", type=int, help="term depth bound")
    common.add_argument("--frozen-vars", help="number of frozen variables, or comma-separated names")
    common.add_argument("--format", choices=("text", "machine"), help="output format")
    common.add_argument("--decimal", action="store_true", default=None, help="print truth values as decimals")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="errors only")

    parser = argparse.ArgumentParser(
        prog="fuzzy-horn",
        description="Universal Horn theories over MTL-algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("classify", parents=[common], help="classify every formula of a theory")
    p.add_argument("theory")

    p = sub.add_parser("saturate", parents=[common], help="saturate a Horn theory and build its term structure")
    p.add_argument("theory")
    p.add_argument("--output-dir", help="write term_structure.yaml and classes.txt here")

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula in a structure")
    p.add_argument("structure")
    p.add_argument("formula")
    p.add_argument("--assign", action="append", help="x=e pairs for free variables")

    p = sub.add_parser("model-check", parents=[common], help="check that a structure models a theory")
    p.add_argument("structure")
    p.add_argument("theory")

    p = sub.add_parser("herbrand", parents=[common], help="least H-model, or H extracted from a structure")
    p.add_argument("theory", nargs="?")
    p.add_argument("--structure", help="extract H from this model")
    p.add_argument("--export", help="write N^H as a structure file")

    p = sub.add_parser("hom-check", parents=[common], help="check a structure map")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map")

    p = sub.add_parser("free-hom", parents=[common], help="canonical map from the term structure into a model")
    p.add_argument("theory")
    p.add_argument("target")
    p.add_argument("--assign", action="append", help="values of the frozen variables, v1=e")
    p.add_argument("--exhaustive", action="store_true", help="also search for other homomorphisms")

    p = sub.add_parser("repro", parents=[common], help="reproduce a worked example")
    p.add_argument("example", choices=list(EXAMPLES) + ["all"])
    return parser


def _frozen_override(raw: Optional[str]):
    if raw is None:
        return None
    return int(raw) if raw.strip().isdigit() else raw


def _configure_logging(args: argparse.Namespace, config: EngineConfig) -> None:
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    else:
        level = getattr(logging, config.log_level.upper())
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(level)


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = out or sys.stdout

    try:
        config = load_config(
            args.config,
            {
                "saturation.depth": args.depth,
                "herbrand.depth": args.depth,
                "saturation.frozen_vars": _frozen_override(args.frozen_vars),
                "output.format": args.format,
                "output.decimal": args.decimal,
            },
        )
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _configure_logging(args, config)
    ctx = CommandContext(args, config, out)
    try:
        return COMMANDS[args.command](ctx)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentTheoryError as exc:
        ctx.emit(str(exc))
        return EXIT_FAILURE
    except _SEMANTIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except HornEngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
