"""
Morphisms - homomorphisms between fuzzy structures and the canonical free map

A structure map is a pair (f, g): f between the truth-value algebras and g
between the domains.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .algebra import BooleanAlgebra, MtlAlgebra, TruthValue, format_truth
from .errors import MorphismError, NotAModelError, NotReducedError, WellDefinednessError
from .saturation import SaturationResult
from .semantics import Element, FuzzyStructure, ModelStatus, VarEvaluation, eval_term, is_model
from .syntax import EQUALITY, Term, format_term

_logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraMap:
    """
    Map between truth-value algebras

    kind is one of explicit (pairs), identity, embedding (the bound-preserving
    map of {0, 1} into the target) or composite.
    """

    source: MtlAlgebra
    target: MtlAlgebra
    kind: str = "explicit"
    pairs: Tuple[Tuple[TruthValue, TruthValue], ...] = ()
    parts: Tuple["AlgebraMap", ...] = ()

    @classmethod
    def identity(cls, algebra: MtlAlgebra) -> "AlgebraMap":
        return cls(algebra, algebra, kind="identity")

    @classmethod
    def boolean_embedding(cls, source: MtlAlgebra, target: MtlAlgebra) -> "AlgebraMap":
        return cls(source, target, kind="embedding")

    @classmethod
    def explicit(cls, source: MtlAlgebra, target: MtlAlgebra, pairs: Mapping[TruthValue, TruthValue]) -> "AlgebraMap":
        for a, b in pairs.items():
            source.check(a)
            target.check(b)
        return cls(source, target, kind="explicit", pairs=tuple(pairs.items()))

    def defined_on(self, value: TruthValue) -> bool:
        if self.kind == "identity":
            return self.source.contains(value)
        if self.kind == "embedding":
            return value in (self.source.bottom, self.source.top)
        if self.kind == "composite":
            first, second = self.parts
            return first.defined_on(value) and second.defined_on(first(value))
        return any(a == value for a, _ in self.pairs)

    def domain(self) -> Optional[Tuple[TruthValue, ...]]:
        """Finite domain of definition, None when it is the whole of an infinite carrier"""
        if self.kind == "identity":
            return self.source.elements()
        if self.kind == "embedding":
            return (self.source.bottom, self.source.top)
        if self.kind == "composite":
            first = self.parts[0].domain()
            return None if first is None else tuple(a for a in first if self.defined_on(a))
        return tuple(a for a, _ in self.pairs)

    def __call__(self, value: TruthValue) -> TruthValue:
        if self.kind == "identity":
            self.source.check(value)
            return value
        if self.kind == "embedding":
            if value == self.source.top:
                return self.target.top
            if value == self.source.bottom:
                return self.target.bottom
            raise MorphismError(f"the {{0,1}} embedding is undefined at {value!r}")
        if self.kind == "composite":
            first, second = self.parts
            return second(first(value))
        for a, b in self.pairs:
            if a == value:
                return b
        raise MorphismError(f"algebra map undefined at {value!r}")

    def then(self, other: "AlgebraMap") -> "AlgebraMap":
        return AlgebraMap(self.source, other.target, kind="composite", parts=(self, other))


@dataclass(frozen=True)
class StructureMap:
    """(f, g); complete is False when g was only checked on a generated fragment"""

    f: AlgebraMap
    g: Mapping[Element, Element]
    complete: bool = True

    @classmethod
    def identity(cls, structure: FuzzyStructure) -> "StructureMap":
        return cls(AlgebraMap.identity(structure.algebra), {d: d for d in structure.domain})

    def image(self, element: Element) -> Element:
        if element not in self.g:
            raise MorphismError(f"domain map undefined at {element!r}")
        return self.g[element]


def compose(first: StructureMap, second: StructureMap) -> StructureMap:
    """second after first"""
    g = {d: second.image(e) for d, e in first.g.items()}
    return StructureMap(first.f.then(second.f), g, first.complete and second.complete)


# ---------------------------------------------------------------------------
# Homomorphism check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: str = ""

    def __bool__(self):
        return self.holds


class MorphismKind(Enum):
    NONE = "none"
    HOMOMORPHISM = "homomorphism"
    STRICT = "strict"
    EMBEDDING = "embedding"
    ISOMORPHISM = "isomorphism"


@dataclass(frozen=True)
class MorphismReport:
    algebra_hom: ConditionResult
    functions: ConditionResult
    predicates: ConditionResult
    strict: ConditionResult
    injective_f: ConditionResult
    injective_g: ConditionResult
    surjective: ConditionResult

    @property
    def is_homomorphism(self) -> bool:
        return bool(self.algebra_hom and self.functions and self.predicates)

    @property
    def kind(self) -> MorphismKind:
        if not self.is_homomorphism:
            return MorphismKind.NONE
        if not self.strict:
            return MorphismKind.HOMOMORPHISM
        if not (self.injective_f and self.injective_g):
            return MorphismKind.STRICT
        if not self.surjective:
            return MorphismKind.EMBEDDING
        return MorphismKind.ISOMORPHISM

    def conditions(self) -> List[Tuple[str, ConditionResult]]:
        return [
            ("algebra_hom", self.algebra_hom),
            ("functions", self.functions),
            ("predicates", self.predicates),
            ("strict", self.strict),
            ("injective_f", self.injective_f),
            ("injective_g", self.injective_g),
            ("surjective", self.surjective),
        ]

    def lines(self, machine: bool = False) -> List[str]:
        if machine:
            rows = [f"kind={self.kind.value}"]
            rows += [f"{name}={'yes' if result else 'no'}" for name, result in self.conditions()]
            return rows
        rows = [f"kind: {self.kind.value}"]
        for name, result in self.conditions():
            rows.append(f"  {name}: {'ok' if result else 'FAILS'}" + (f" ({result.witness})" if result.witness else ""))
        return rows


def _algebra_values(structure: FuzzyStructure) -> List[TruthValue]:
    values = {structure.algebra.bottom, structure.algebra.top, structure.default}
    for table in structure.predicates.values():
        if not callable(table):
            values.update(table.values())
    return sorted(values, key=repr)


def _check_algebra_map(f: AlgebraMap, src: FuzzyStructure) -> ConditionResult:
    source, target = f.source, f.target
    if f(source.bottom) != target.bottom:
        return ConditionResult(False, "f(0) is not 0")
    if f(source.top) != target.top:
        return ConditionResult(False, "f(1) is not 1")
    if f.kind == "identity" and source == target:
        return ConditionResult(True)

    domain = f.domain()
    if domain is None:
        domain = tuple(v for v in _algebra_values(src) if f.defined_on(v))
    operations = (
        ("*", source.conj, target.conj),
        ("=>", source.residuum, target.residuum),
        ("meet", source.meet, target.meet),
        ("join", source.join, target.join),
    )
    for a in domain:
        for b in domain:
            for label, op_source, op_target in operations:
                inner = op_source(a, b)
                if inner is None or not f.defined_on(inner):
                    continue
                if f(inner) != op_target(f(a), f(b)):
                    return ConditionResult(
                        False, f"f({format_truth(a)} {label} {format_truth(b)}) != f({format_truth(a)}) {label} f({format_truth(b)})"
                    )
    return ConditionResult(True)


def _surjective_f(f: AlgebraMap) -> bool:
    if f.kind == "identity":
        return True
    carrier = f.target.elements()
    domain = f.domain()
    if carrier is None or domain is None:
        return False
    return set(carrier) <= {f(a) for a in domain}


def _injective_f(f: AlgebraMap) -> bool:
    if f.kind == "identity":
        return True
    domain = f.domain()
    if domain is None:
        return False
    return len({f(a) for a in domain}) == len(set(domain))


def _show(args: Sequence[Element]) -> str:
    return "(" + ", ".join(str(a) for a in args) + ")"


def check_homomorphism(src: FuzzyStructure, dst: FuzzyStructure, structure_map: StructureMap) -> MorphismReport:
    """
    Check every condition of a structure map exhaustively

    Args:
        src: finite source structure
        dst: target structure over the same symbols
        structure_map: candidate (f, g)

    Returns:
        MorphismReport with the first counterexample of each failed condition

    Raises:
        MorphismError: g or f is not total on src, or the symbols differ
    """
    if not src.domain_complete:
        raise MorphismError("the source structure must have a finite domain")
    for d in src.domain:
        structure_map.image(d)
    for value in _algebra_values(src):
        if not structure_map.f.defined_on(value):
            raise MorphismError(f"algebra map undefined at {format_truth(value)} used by the source")
    for name, arity in src.signature.functions:
        if dst.signature.function_arity(name) != arity:
            raise MorphismError(f"target does not interpret function {name}/{arity}")
    for name, arity in src.signature.predicates:
        if dst.signature.predicate_arity(name) != arity:
            raise MorphismError(f"target does not interpret predicate {name}/{arity}")

    f, g = structure_map.f, structure_map.g
    algebra_hom = _check_algebra_map(f, src)

    functions = ConditionResult(True)
    for name, arity in src.signature.functions:
        for args in itertools.product(src.domain, repeat=arity):
            value = src.apply(name, args)
            if value is None:
                continue
            image = dst.apply(name, tuple(g[a] for a in args))
            if image != g[value]:
                functions = ConditionResult(False, f"g({name}{_show(args)}) != {name}(g{_show(args)})")
                break
        if not functions:
            break

    predicates = ConditionResult(True)
    strict = ConditionResult(True)
    src_top, dst_top = src.algebra.top, dst.algebra.top
    for name, arity in src.signature.predicates:
        for args in itertools.product(src.domain, repeat=arity):
            source_one = src.predicate_value(name, args) == src_top
            target_one = dst.predicate_value(name, tuple(g[a] for a in args)) == dst_top
            if source_one and not target_one and predicates:
                predicates = ConditionResult(False, f"{name}{_show(args)} is 1 but its image is not")
            if source_one != target_one and strict:
                strict = ConditionResult(False, f"{name}{_show(args)} and its image disagree on being 1")

    injective_g = ConditionResult(True)
    seen: Dict[Element, Element] = {}
    for d in src.domain:
        e = g[d]
        if e in seen:
            injective_g = ConditionResult(False, f"g({d}) = g({seen[e]})")
            break
        seen[e] = d

    image = set(g[d] for d in src.domain)
    missing = [e for e in dst.domain if e not in image]
    surjective = ConditionResult(
        dst.domain_complete and not missing and _surjective_f(f),
        f"{missing[0]} not in the image of g" if missing else "",
    )

    report = MorphismReport(
        algebra_hom=algebra_hom,
        functions=functions,
        predicates=predicates,
        strict=strict,
        injective_f=ConditionResult(_injective_f(f), "" if _injective_f(f) else "f is not injective"),
        injective_g=injective_g,
        surjective=surjective,
    )
    _logger.debug(f"Homomorphism check {src.name} -> {dst.name}: {report.kind.value}")
    return report


def enumerate_homomorphisms(
    src: FuzzyStructure,
    dst: FuzzyStructure,
    f: AlgebraMap,
    fixed: Optional[Mapping[Element, Element]] = None,
) -> Iterator[StructureMap]:
    """Every domain map g (agreeing with fixed) for which (f, g) is a homomorphism"""
    fixed = dict(fixed or {})
    free = [d for d in src.domain if d not in fixed]
    for images in itertools.product(dst.domain, repeat=len(free)):
        g = dict(fixed)
        g.update(zip(free, images))
        candidate = StructureMap(f, g)
        if check_homomorphism(src, dst, candidate).is_homomorphism:
            yield candidate


# ---------------------------------------------------------------------------
# Reducedness and the free map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedCheck:
    reduced: bool
    witness: Optional[Tuple[Element, Element]] = None

    def __bool__(self):
        return self.reduced


def is_reduced(structure: FuzzyStructure) -> ReducedCheck:
    """
    Equality property: d == e is 1 exactly when d and e are the same element

    Raises:
        MorphismError: the signature has no ==
    """
    if not structure.signature.has_equality:
        raise MorphismError("reducedness needs the equality symbol ==")
    top = structure.algebra.top
    for d in structure.domain:
        for e in structure.domain:
            if (structure.predicate_value(EQUALITY, (d, e)) == top) != (d == e):
                return ReducedCheck(False, (d, e))
    return ReducedCheck(True)


def canonical_free_map(
    result: SaturationResult,
    target: FuzzyStructure,
    evaluation: VarEvaluation,
    theory: Optional[Iterable] = None,
) -> StructureMap:
    """
    The unique homomorphism from the term structure fixed on the generators

    f is the {0,1} embedding and g sends the class of t to ||t|| under the
    evaluation. A target that reads == as crisp identity skips the
    reducedness test.

    Args:
        result: saturation of the theory
        target: finite model
        evaluation: values of the frozen variables in the target
        theory: formulas to model-check; the saturated theory when omitted

    Raises:
        NotReducedError: target lacks the equality property
        WellDefinednessError: two terms of one class have different values
        NotAModelError: target does not satisfy the theory
    """
    if not target.domain_complete:
        raise MorphismError("the target must have a finite domain")
    if result.bottom_derived:
        raise MorphismError("the theory is inconsistent; there is no term structure")

    missing = [name for name in result.universe.frozen if name not in evaluation]
    if missing:
        raise MorphismError(f"evaluation does not cover the frozen variables {missing}")

    if result.signature.has_equality and not target.crisp_equality:
        check = is_reduced(target)
        if not check:
            d, e = check.witness
            raise NotReducedError(f"target is not reduced: {d} == {e} breaks the equality property", witness=check.witness)

    g: Dict[Element, Element] = {}
    for members in result.classes():
        values = [eval_term(target, evaluation, t) for t in members]
        if len(set(values)) > 1:
            raise WellDefinednessError(
                f"class {{{', '.join(format_term(t) for t in members)}}} is sent to {sorted(set(map(str, values)))}",
                members=members,
                values=tuple(values),
            )
        g[members[0]] = values[0]

    theory = list(result.theory if theory is None else theory)
    check = is_model(target, theory)
    if check.status is not ModelStatus.YES:
        raise NotAModelError(f"target is not a model of the theory: {check.describe()}", check=check)

    f = AlgebraMap.boolean_embedding(BooleanAlgebra(), target.algebra)
    _logger.info(f"Canonical free map built on {len(g)} classes")
    return StructureMap(f, g, complete=result.complete)


@dataclass(frozen=True)
class UniquenessCheck:
    unique: bool
    witness: Optional[Term] = None

    def __bool__(self):
        return self.unique


def check_uniqueness(
    result: SaturationResult,
    target: FuzzyStructure,
    evaluation: VarEvaluation,
    candidate: StructureMap,
) -> UniquenessCheck:
    """Compare a candidate with the canonical map class by class; report the smallest differing term"""
    canonical = canonical_free_map(result, target, evaluation)
    for members in result.classes():
        rep = members[0]
        if candidate.g.get(rep) != canonical.g[rep]:
            return UniquenessCheck(False, rep)
    return UniquenessCheck(True)
