"""
Semantics - fuzzy structures and exact evaluation of terms and formulas
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import MtlAlgebra, TruthValue, get_algebra
from .errors import EvaluationError, StructureError
from .syntax import (
    EQUALITY,
    Atom,
    Binary,
    Connective,
    Formula,
    Quantified,
    Quantifier,
    Signature,
    Term,
    TruthConstant,
    Var,
    atom,
    forall,
    format_formula,
    free_vars,
    strong_conj,
)

_logger = logging.getLogger(__name__)

Element = Any
VarEvaluation = Mapping[str, Element]
FunctionInterpretation = Union[Mapping[Tuple[Element, ...], Element], Callable[..., Optional[Element]]]
PredicateInterpretation = Union[Mapping[Tuple[Element, ...], TruthValue], Callable[..., TruthValue]]


# ---------------------------------------------------------------------------
# Outcomes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Value:
    value: TruthValue


@dataclass(frozen=True)
class Undefined:
    """An infimum or supremum the algebra does not have"""

    reason: str = ""


@dataclass(frozen=True)
class UnknownAtDepth:
    """The answer depends on elements or terms beyond the enumerated fragment"""

    depth: int


TruthOutcome = Union[Value, Undefined, UnknownAtDepth]


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FuzzyStructure:
    """
    A-structure for a signature

    Function tables map argument tuples to elements and predicate tables map
    argument tuples to truth values (0-ary symbols use the key ()). Missing
    predicate entries take the value default (algebra bottom when None).
    Callables may replace tables. When partial is set, a function table
    may lack entries; applying it there leaves the enumerated fragment.
    A structure whose domain_complete flag is off lists only a finite
    fragment of an infinite domain (depth says how deep it goes).
    """

    signature: Signature
    algebra: MtlAlgebra
    domain: Tuple[Element, ...]
    functions: Mapping[str, FunctionInterpretation] = field(default_factory=dict)
    predicates: Mapping[str, PredicateInterpretation] = field(default_factory=dict)
    default: Optional[TruthValue] = None
    crisp_equality: bool = False
    partial: bool = False
    domain_complete: bool = True
    depth: int = 0
    name: str = ""

    def __post_init__(self):
        if not self.domain:
            raise StructureError(f"structure {self.name or '<anonymous>'} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise StructureError(f"structure {self.name or '<anonymous>'} lists a domain element twice")
        object.__setattr__(self, "domain", tuple(self.domain))
        if self.default is None:
            object.__setattr__(self, "default", self.algebra.bottom)
        self.algebra.check(self.default)

        if self.signature.has_equality and EQUALITY not in self.predicates:
            object.__setattr__(self, "crisp_equality", True)

        for name, arity in self.signature.functions:
            if name not in self.functions:
                raise StructureError(f"no interpretation for function symbol {name}/{arity}")
        for name in self.functions:
            if self.signature.function_arity(name) is None:
                raise StructureError(f"interpretation given for undeclared function {name}")
        for name in self.predicates:
            if self.signature.predicate_arity(name) is None:
                raise StructureError(f"interpretation given for undeclared predicate {name}")

        self._validate_tables()

    def _validate_tables(self) -> None:
        members = set(self.domain)
        for name, arity in self.signature.functions:
            table = self.functions[name]
            if callable(table):
                continue
            for args, result in table.items():
                if len(args) != arity:
                    raise StructureError(f"function {name} row {args!r} has wrong arity")
                if self.domain_complete and (result not in members or not set(args) <= members):
                    raise StructureError(f"function {name} row {args!r} -> {result!r} leaves the domain")
            if self.domain_complete and not self.partial:
                for args in itertools.product(self.domain, repeat=arity):
                    if args not in table:
                        raise StructureError(f"function {name} is not total: missing {args!r}")

        for name, table in self.predicates.items():
            if callable(table):
                continue
            arity = self.signature.predicate_arity(name)
            for args, value in table.items():
                if len(args) != arity:
                    raise StructureError(f"predicate {name} row {args!r} has wrong arity")
                if self.domain_complete and not set(args) <= members:
                    raise StructureError(f"predicate {name} row {args!r} leaves the domain")
                self.algebra.check(value)

    # interpretation access

    def apply(self, symbol: str, args: Tuple[Element, ...]) -> Optional[Element]:
        """F_M(args), or None when outside a partial interpretation"""
        table = self.functions[symbol]
        if callable(table):
            return table(*args)
        return table.get(tuple(args))

    def predicate_value(self, symbol: str, args: Tuple[Element, ...]) -> TruthValue:
        if symbol == EQUALITY and self.crisp_equality:
            return self.algebra.top if args[0] == args[1] else self.algebra.bottom
        table = self.predicates.get(symbol)
        if table is None:
            return self.default
        if callable(table):
            return table(*args)
        return table.get(tuple(args), self.default)

    def constant(self, name: str) -> Element:
        return self.apply(name, ())

    @property
    def is_finite(self) -> bool:
        return self.domain_complete


def structure_from_tables(
    signature: Signature,
    algebra: Union[str, MtlAlgebra],
    domain: Sequence[Element],
    functions: Optional[Mapping[str, Any]] = None,
    predicates: Optional[Mapping[str, Any]] = None,
    **options,
) -> FuzzyStructure:
    """
    Build a structure from loose tables

    Args:
        signature: vocabulary
        algebra: algebra instance or bundled name
        domain: elements
        functions: name -> {args tuple: element}; constants may be given as a
            bare element
        predicates: name -> {args tuple: value}; 0-ary predicates may be
            given as a bare value; values pass through algebra.coerce

    Returns:
        Validated FuzzyStructure
    """
    if isinstance(algebra, str):
        algebra = get_algebra(algebra)

    function_tables: Dict[str, FunctionInterpretation] = {}
    for name, table in (functions or {}).items():
        if callable(table) or isinstance(table, Mapping):
            function_tables[name] = table
        else:
            function_tables[name] = {(): table}

    predicate_tables: Dict[str, PredicateInterpretation] = {}
    for name, table in (predicates or {}).items():
        if callable(table):
            predicate_tables[name] = table
        elif isinstance(table, Mapping):
            predicate_tables[name] = {
                (args if isinstance(args, tuple) else (args,)): algebra.coerce(value) for args, value in table.items()
            }
        else:
            predicate_tables[name] = {(): algebra.coerce(table)}

    return FuzzyStructure(
        signature=signature,
        algebra=algebra,
        domain=tuple(domain),
        functions=function_tables,
        predicates=predicate_tables,
        **options,
    )


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


class FormulaEvaluator:
    """Evaluate terms and formulas in one structure"""

    def __init__(self, structure: FuzzyStructure):
        self.structure = structure
        self.algebra = structure.algebra
        self.supported_connectives = {
            Connective.STRONG_AND: self._op_strong_and,
            Connective.WEAK_AND: self._op_weak_and,
            Connective.OR: self._op_or,
            Connective.IMPLIES: self._op_implies,
        }
        self.supported_quantifiers = {
            Quantifier.FORALL: self._op_forall,
            Quantifier.EXISTS: self._op_exists,
        }

    def term(self, v: VarEvaluation, t: Term) -> Optional[Element]:
        """||t|| under v, or None when an application leaves a partial interpretation"""
        if isinstance(t, Var):
            if t.name not in v:
                raise EvaluationError(f"unmapped variable {t.name}")
            return v[t.name]
        args = []
        for arg in t.args:
            value = self.term(v, arg)
            if value is None:
                return None
            args.append(value)
        return self.structure.apply(t.symbol, tuple(args))

    def formula(self, v: VarEvaluation, phi: Formula) -> TruthOutcome:
        if isinstance(phi, TruthConstant):
            return Value(self.algebra.top if phi.value else self.algebra.bottom)
        if isinstance(phi, Atom):
            return self._atom(v, phi)
        if isinstance(phi, Binary):
            return self.supported_connectives[phi.connective](v, phi.left, phi.right)
        if isinstance(phi, Quantified):
            return self.supported_quantifiers[phi.quantifier](v, phi.variable, phi.body)
        raise EvaluationError(f"Unsupported formula node: {phi!r}")

    def _atom(self, v: VarEvaluation, phi: Atom) -> TruthOutcome:
        args = []
        for arg in phi.args:
            value = self.term(v, arg)
            if value is None:
                return UnknownAtDepth(self.structure.depth)
            args.append(value)
        return Value(self.structure.predicate_value(phi.predicate, tuple(args)))

    # connectives: absorbing operands decide the result before the other side is looked at

    def _combine(self, left: TruthOutcome, right: TruthOutcome, operation) -> TruthOutcome:
        if isinstance(left, Value) and isinstance(right, Value):
            result = operation(left.value, right.value)
            if result is None:
                return Undefined(f"no lattice bound for {left.value!r}, {right.value!r}")
            return Value(result)
        for outcome in (left, right):
            if isinstance(outcome, Undefined):
                return outcome
        return left if not isinstance(left, Value) else right

    def _op_strong_and(self, v, left, right) -> TruthOutcome:
        bottom = Value(self.algebra.bottom)
        first = self.formula(v, left)
        if first == bottom:
            return bottom
        second = self.formula(v, right)
        if second == bottom:
            return bottom
        return self._combine(first, second, self.algebra.conj)

    def _op_weak_and(self, v, left, right) -> TruthOutcome:
        bottom = Value(self.algebra.bottom)
        first = self.formula(v, left)
        if first == bottom:
            return bottom
        second = self.formula(v, right)
        if second == bottom:
            return bottom
        return self._combine(first, second, self.algebra.meet)

    def _op_or(self, v, left, right) -> TruthOutcome:
        top = Value(self.algebra.top)
        first = self.formula(v, left)
        if first == top:
            return top
        second = self.formula(v, right)
        if second == top:
            return top
        return self._combine(first, second, self.algebra.join)

    def _op_implies(self, v, left, right) -> TruthOutcome:
        top = Value(self.algebra.top)
        first = self.formula(v, left)
        if first == Value(self.algebra.bottom):
            return top
        second = self.formula(v, right)
        if second == top:
            return top
        return self._combine(first, second, self.algebra.residuum)

    # quantifiers range over the listed domain

    def _quantify(self, v, variable, body, absorbing, fold) -> TruthOutcome:
        values: List[TruthValue] = []
        pending: Optional[TruthOutcome] = None
        for element in self.structure.domain:
            outcome = self.formula({**v, variable: element}, body)
            if isinstance(outcome, Value):
                if outcome.value == absorbing:
                    return outcome
                values.append(outcome.value)
            elif pending is None or isinstance(outcome, Undefined):
                pending = outcome

        if pending is not None:
            return pending
        if not self.structure.domain_complete:
            return UnknownAtDepth(self.structure.depth)
        result = fold(values)
        if result is None:
            return Undefined(f"no bound for the values of {variable}")
        return Value(result)

    def _op_forall(self, v, variable, body) -> TruthOutcome:
        return self._quantify(v, variable, body, self.algebra.bottom, self.algebra.meet_all)

    def _op_exists(self, v, variable, body) -> TruthOutcome:
        return self._quantify(v, variable, body, self.algebra.top, self.algebra.join_all)


def _check_evaluation(M: FuzzyStructure, v: VarEvaluation, names: Iterable[str]) -> None:
    missing = sorted(set(names) - set(v))
    if missing:
        raise EvaluationError(f"unmapped free variables: {', '.join(missing)}")


def eval_term(M: FuzzyStructure, v: VarEvaluation, t: Term) -> Element:
    """
    Value of a term

    Raises:
        EvaluationError: unmapped variable, or the term leaves the enumerated
            fragment of a partial structure
    """
    value = FormulaEvaluator(M).term(v, t)
    if value is None:
        raise EvaluationError(f"term {t} is outside the interpreted fragment of {M.name or 'the structure'}")
    return value


def eval_formula(M: FuzzyStructure, v: VarEvaluation, phi: Formula) -> TruthOutcome:
    """
    ||phi|| in M under v

    Args:
        M: structure
        v: evaluation covering the free variables of phi
        phi: formula

    Returns:
        Value, Undefined (missing lattice bound) or UnknownAtDepth
        (quantifier over a truncated domain that did not short-circuit)
    """
    _check_evaluation(M, v, free_vars(phi))
    return FormulaEvaluator(M).formula(v, phi)


def eval_sentence(M: FuzzyStructure, phi: Formula) -> TruthOutcome:
    return eval_formula(M, {}, phi)


class ModelStatus(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ModelCheck:
    """Result of is_model; formula/assignment/outcome describe the witness"""

    status: ModelStatus
    formula: Optional[Formula] = None
    assignment: Mapping[str, Element] = field(default_factory=dict)
    outcome: Optional[TruthOutcome] = None

    def __bool__(self):
        return self.status is ModelStatus.YES

    def describe(self) -> str:
        if self.status is ModelStatus.YES:
            return "yes"
        binding = ", ".join(f"{k}={v}" for k, v in sorted(self.assignment.items(), key=lambda kv: kv[0]))
        where = f" under {binding}" if binding else ""
        return f"{self.status.value}: {format_formula(self.formula)}{where} gives {self.outcome}"


def is_model(M: FuzzyStructure, theory: Iterable[Formula]) -> ModelCheck:
    """
    Check that every formula is 1 under every evaluation of its free variables

    Returns:
        YES, NO with the first failing formula and evaluation, or UNKNOWN
        when only undecided outcomes were met
    """
    evaluator = FormulaEvaluator(M)
    top = Value(M.algebra.top)
    undecided: Optional[ModelCheck] = None

    for phi in theory:
        names = sorted(free_vars(phi))
        for elements in itertools.product(M.domain, repeat=len(names)):
            v = dict(zip(names, elements))
            outcome = evaluator.formula(v, phi)
            if outcome == top:
                continue
            if isinstance(outcome, Value):
                _logger.debug(f"Model check fails: {format_formula(phi)} = {outcome.value}")
                return ModelCheck(ModelStatus.NO, phi, v, outcome)
            if undecided is None:
                undecided = ModelCheck(ModelStatus.UNKNOWN, phi, v, outcome)
        if names and not M.domain_complete and undecided is None:
            undecided = ModelCheck(ModelStatus.UNKNOWN, phi, {}, UnknownAtDepth(M.depth))

    return undecided if undecided is not None else ModelCheck(ModelStatus.YES)


# ---------------------------------------------------------------------------
# Strong conjunction and the universal quantifier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjunctionWitness:
    """Interpretations where (forall x)(P(x) & Q(x)) exceeds (forall x)P(x) & (forall x)Q(x)"""

    structure: FuzzyStructure
    separate: TruthValue
    joint: TruthValue


WITNESS_SIGNATURE = Signature.build({"P": 1, "Q": 1})
SEPARATE_FORMULA = strong_conj(forall("x", atom("P", Var("x"))), forall("x", atom("Q", Var("x"))))
JOINT_FORMULA = forall("x", strong_conj(atom("P", Var("x")), atom("Q", Var("x"))))


def strong_conjunction_witness(
    algebra: MtlAlgebra,
    domain_size: int = 2,
    values: Optional[Sequence[TruthValue]] = None,
) -> Optional[ConjunctionWitness]:
    """
    Exhaustive search for the widest gap between the two conjunction forms

    Args:
        algebra: algebra to search in
        domain_size: number of domain elements
        values: truth values to try; the carrier of a finite algebra,
            quarters of [0,1] otherwise

    Returns:
        The first interpretation with the largest gap, or None when the two
        forms agree everywhere
    """
    if values is None:
        values = algebra.elements()
        if values is None:
            values = [algebra.coerce(f"{k}/4") for k in range(5)]
    domain = tuple(f"d{i}" for i in range(1, domain_size + 1))
    tables = list(itertools.product(values, repeat=domain_size))

    best: Optional[ConjunctionWitness] = None
    best_gap = None
    for p_values in tables:
        for q_values in tables:
            M = FuzzyStructure(
                signature=WITNESS_SIGNATURE,
                algebra=algebra,
                domain=domain,
                predicates={
                    "P": {(d,): a for d, a in zip(domain, p_values)},
                    "Q": {(d,): b for d, b in zip(domain, q_values)},
                },
                name="conjunction-witness",
            )
            separate = eval_sentence(M, SEPARATE_FORMULA)
            joint = eval_sentence(M, JOINT_FORMULA)
            if not (isinstance(separate, Value) and isinstance(joint, Value)):
                continue
            if separate.value == joint.value or not algebra.leq(separate.value, joint.value):
                continue
            gap = joint.value - separate.value
            if best is None or gap > best_gap:
                best, best_gap = ConjunctionWitness(M, separate.value, joint.value), gap

    if best is not None:
        _logger.info(f"Strong conjunction witness in {algebra.name}: {best.separate} < {best.joint}")
    return best
