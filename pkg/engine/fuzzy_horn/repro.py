"""
Worked examples - the two numeric counterexamples and the strong conjunction witness

Each reproduction builds its structures in code, records every intermediate
value next to the value it must have, and passes only on exact agreement.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List

from .algebra import format_truth, get_algebra
from .herbrand import h_structure_of_model
from .saturation import SaturationConfig, build_term_structure_from_atoms
from .semantics import (
    JOINT_FORMULA,
    SEPARATE_FORMULA,
    FuzzyStructure,
    Value,
    eval_sentence,
    is_model,
    strong_conjunction_witness,
)
from .syntax import (
    BOTTOM,
    Signature,
    Var,
    atom,
    classify_horn,
    const,
    forall,
    format_formula,
    implies,
    negation,
    strong_conj,
    weak_conj,
)

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReproCheck:
    label: str
    expected: str
    actual: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class ReproReport:
    example: str
    description: str
    checks: List[ReproCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    def expect(self, label: str, expected: Any, actual: Any) -> None:
        self.checks.append(ReproCheck(label, _text(expected), _text(actual)))

    def lines(self, machine: bool = False) -> List[str]:
        if machine:
            rows = [f"example={self.example}"]
            rows += [f"{c.label}={c.actual} expected={c.expected} {'ok' if c.ok else 'mismatch'}" for c in self.checks]
            rows.append(f"result={'ok' if self.ok else 'mismatch'}")
            return rows
        rows = [f"{self.example}: {self.description}"]
        for c in self.checks:
            mark = "✅" if c.ok else "❌"
            rows.append(f"  {mark} {c.label} = {c.actual} (expected {c.expected})")
        return rows


def _text(value: Any) -> str:
    if isinstance(value, Value):
        return format_truth(value.value)
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return format_truth(value)
    return str(value)


def godel_counterexample() -> ReproReport:
    """A non-Horn theory whose term structure is not a model"""
    report = ReproReport("godel-0.8", "Goedel structure with ||P(c)|| = 4/5")
    signature = Signature.build({"P": 1}, constants=["c"])
    c = const("c")
    p_c = atom("P", c)
    theory_formula = negation(implies(p_c, BOTTOM))

    godel = get_algebra("godel")
    model = FuzzyStructure(
        signature=signature,
        algebra=godel,
        domain=("c",),
        functions={"c": {(): "c"}},
        predicates={"P": {("c",): Fraction(4, 5)}},
        name="godel-0.8",
    )

    report.expect(f"class of {format_formula(theory_formula)}", "NotHorn", classify_horn(theory_formula).tag.value)
    report.expect(f"M: {format_formula(p_c)}", "4/5", eval_sentence(model, p_c))
    report.expect(f"M: {format_formula(theory_formula)}", "1", eval_sentence(model, theory_formula))
    report.expect(f"M: {format_formula(implies(p_c, BOTTOM))}", "0", eval_sentence(model, implies(p_c, BOTTOM)))
    report.expect("M is a model of the theory", "yes", is_model(model, [theory_formula]).status.value)

    term_structure = build_term_structure_from_atoms([], [], signature, SaturationConfig(depth=0, frozen_vars=0))
    report.expect(f"T: {format_formula(p_c)}", "0", eval_sentence(term_structure, p_c))
    report.expect(f"T: {format_formula(implies(p_c, BOTTOM))}", "1", eval_sentence(term_structure, implies(p_c, BOTTOM)))
    report.expect(f"T: {format_formula(theory_formula)}", "0", eval_sentence(term_structure, theory_formula))
    return report


def lukasiewicz_h_structure() -> ReproReport:
    """A Horn sentence true in N^H but not in the model H was read from"""
    report = ReproReport("lukasiewicz-0.6", "Lukasiewicz structure with P1(c)=1, P2(c)=9/10, P3(c)=1/2")
    signature = Signature.build({"P1": 1, "P2": 1, "P3": 1}, constants=["c"])
    c = const("c")
    rule = implies(strong_conj(atom("P1", c), atom("P2", c)), atom("P3", c))

    model = FuzzyStructure(
        signature=signature,
        algebra=get_algebra("lukasiewicz"),
        domain=("c",),
        functions={"c": {(): "c"}},
        predicates={
            "P1": {("c",): Fraction(1)},
            "P2": {("c",): Fraction(9, 10)},
            "P3": {("c",): Fraction(1, 2)},
        },
        name="lukasiewicz-0.6",
    )
    body = strong_conj(atom("P1", c), atom("P2", c))

    report.expect(f"class of {format_formula(rule)}", "BasicHorn", classify_horn(rule).tag.value)
    report.expect(f"M: {format_formula(body)}", "9/10", eval_sentence(model, body))
    report.expect(f"M: {format_formula(rule)}", "3/5", eval_sentence(model, rule))

    h_structure = h_structure_of_model(model, signature, depth=0)
    h_text = "{" + ", ".join(format_formula(a) for a in h_structure.sorted_atoms()) + "}"
    report.expect("H", "{P1(c)}", h_text)
    report.expect(f"N^H: {format_formula(rule)}", "1", eval_sentence(h_structure.to_structure(), rule))
    return report


def strong_conjunction_remark() -> ReproReport:
    """(forall x)P & (forall x)Q is strictly below (forall x)(P & Q) on two elements"""
    report = ReproReport("forall-strong-conj", "two-element Lukasiewicz witness")
    lukasiewicz = get_algebra("lukasiewicz")
    signature = Signature.build({"P": 1, "Q": 1})
    half, one = Fraction(1, 2), Fraction(1)
    model = FuzzyStructure(
        signature=signature,
        algebra=lukasiewicz,
        domain=("d1", "d2"),
        predicates={"P": {("d1",): half, ("d2",): one}, "Q": {("d1",): one, ("d2",): half}},
        name="forall-strong-conj",
    )
    x = Var("x")
    weak_separate = weak_conj(forall("x", atom("P", x)), forall("x", atom("Q", x)))
    weak_joint = forall("x", weak_conj(atom("P", x), atom("Q", x)))

    report.expect(f"LHS {format_formula(SEPARATE_FORMULA)}", "0", eval_sentence(model, SEPARATE_FORMULA))
    report.expect(f"RHS {format_formula(JOINT_FORMULA)}", "1/2", eval_sentence(model, JOINT_FORMULA))
    report.expect(f"weak LHS {format_formula(weak_separate)}", "1/2", eval_sentence(model, weak_separate))
    report.expect(f"weak RHS {format_formula(weak_joint)}", "1/2", eval_sentence(model, weak_joint))

    witness = strong_conjunction_witness(get_algebra("lukasiewicz-5"), domain_size=2)
    report.expect("search on lukasiewicz-5: LHS", "0", witness.separate if witness else "none")
    report.expect("search on lukasiewicz-5: RHS", "1/2", witness.joint if witness else "none")
    return report


EXAMPLES: Dict[str, Callable[[], ReproReport]] = {
    "godel-0.8": godel_counterexample,
    "lukasiewicz-0.6": lukasiewicz_h_structure,
    "forall-strong-conj": strong_conjunction_remark,
}


def run_example(example: str) -> ReproReport:
    if example not in EXAMPLES:
        raise ValueError(f"Unknown example: {example} (choose from {', '.join(EXAMPLES)})")
    report = EXAMPLES[example]()
    _logger.info(f"Reproduced {example}: {'ok' if report.ok else 'mismatch'}")
    return report
