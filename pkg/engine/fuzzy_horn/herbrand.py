"""
Herbrand - Herbrand universes, H-structures and least H-models
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .algebra import ONE, BooleanAlgebra
from .errors import HerbrandError, InconsistentTheoryError
from .saturation import SaturationConfig, saturate
from .semantics import FuzzyStructure, Value, eval_sentence
from .syntax import (
    EQUALITY,
    App,
    Atom,
    Formula,
    Signature,
    Term,
    format_formula,
    generate_terms,
    is_equality_free,
    is_ground,
    term_key,
)

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HerbrandUniverse:
    """Ground terms up to a depth; complete when there are no proper function symbols"""

    terms: Tuple[Term, ...]
    depth: int
    complete: bool

    def __contains__(self, term: Term) -> bool:
        return term in self.terms

    def __len__(self) -> int:
        return len(self.terms)


def _reject_propositional(signature: Signature) -> None:
    nullary = [name for name, arity in signature.user_predicates if arity == 0]
    if nullary:
        raise HerbrandError(
            f"H-structures only interpret predicates of arity >= 1; 0-ary predicates {nullary} are not allowed"
        )


def herbrand_universe(signature: Signature, depth: int, max_terms: int = 5000) -> HerbrandUniverse:
    """
    All ground terms of depth <= depth

    Raises:
        HerbrandError: the signature has no constant
    """
    if not signature.constants:
        raise HerbrandError("the Herbrand universe needs at least one individual constant")
    seeds = [App(name, ()) for name in signature.constants]
    terms, truncated = generate_terms(seeds, signature.function_symbols, depth, max_terms)
    return HerbrandUniverse(terms=terms, depth=depth, complete=not signature.function_symbols and not truncated)


@dataclass(frozen=True)
class HStructure:
    """
    H-structure: a set H of ground atoms, read as the atoms that are 1

    skipped lists atoms whose value could not be decided during extraction.
    """

    signature: Signature
    universe: HerbrandUniverse
    atoms: FrozenSet[Atom]
    skipped: Tuple[Atom, ...] = ()

    def __post_init__(self):
        _reject_propositional(self.signature)
        members = set(self.universe.terms)
        for phi in self.atoms:
            if phi.predicate == EQUALITY:
                raise HerbrandError(f"H may not contain equations: {format_formula(phi)}")
            if self.signature.predicate_arity(phi.predicate) != len(phi.args):
                raise HerbrandError(f"atom does not fit the signature: {format_formula(phi)}")
            for arg in phi.args:
                if not is_ground(arg) or arg not in members:
                    raise HerbrandError(
                        f"atom {format_formula(phi)} uses a term outside the Herbrand universe of depth {self.universe.depth}"
                    )

    def sorted_atoms(self) -> List[Atom]:
        return sorted(self.atoms, key=lambda a: (a.predicate, tuple(term_key(t) for t in a.args)))

    def to_structure(self) -> FuzzyStructure:
        """The Boolean structure N^H: functions act syntactically, == is identity"""
        domain = self.universe.terms
        members = set(domain)
        functions: Dict[str, Dict[Tuple[Term, ...], Term]] = {}
        partial = False
        for name, arity in self.signature.functions:
            table = {}
            for args in itertools.product(domain, repeat=arity):
                term = App(name, tuple(args))
                if term in members:
                    table[tuple(args)] = term
                else:
                    partial = True
            functions[name] = table

        predicates: Dict[str, Dict[Tuple[Term, ...], object]] = {name: {} for name, _ in self.signature.user_predicates}
        for phi in self.atoms:
            predicates[phi.predicate][phi.args] = ONE

        return FuzzyStructure(
            signature=self.signature,
            algebra=BooleanAlgebra(),
            domain=domain,
            functions=functions,
            predicates=predicates,
            crisp_equality=True,
            partial=partial,
            domain_complete=self.universe.complete,
            depth=self.universe.depth,
            name="h-structure",
        )


def _ground_atoms(signature: Signature, universe: HerbrandUniverse) -> Iterable[Atom]:
    for name, arity in signature.user_predicates:
        for args in itertools.product(universe.terms, repeat=arity):
            yield Atom(name, tuple(args))


def h_structure_from_atoms(atoms: Iterable[Atom], signature: Signature, depth: int) -> FuzzyStructure:
    """
    N^H for a given set H

    Raises:
        HerbrandError: an atom mentions == or a term outside the universe
    """
    universe = herbrand_universe(signature, depth)
    return HStructure(signature, universe, frozenset(atoms)).to_structure()


def h_structure_of_model(
    structure: FuzzyStructure,
    signature: Signature,
    depth: int,
    partial: bool = False,
) -> HStructure:
    """
    H = the equality-free ground atoms that are 1 in a structure

    Args:
        structure: model to read
        signature: vocabulary
        depth: depth of the Herbrand universe
        partial: skip atoms whose value is undecided instead of failing

    Raises:
        HerbrandError: an atom could not be evaluated and partial is False
    """
    _reject_propositional(signature)
    universe = herbrand_universe(signature, depth)
    top = Value(structure.algebra.top)
    found = set()
    skipped = []
    for phi in _ground_atoms(signature, universe):
        outcome = eval_sentence(structure, phi)
        if outcome == top:
            found.add(phi)
        elif not isinstance(outcome, Value):
            if not partial:
                raise HerbrandError(f"cannot evaluate {format_formula(phi)} in {structure.name or 'the structure'}: {outcome}")
            skipped.append(phi)

    if skipped:
        _logger.warning(f"Skipped {len(skipped)} undecided atoms while extracting H")
    return HStructure(signature, universe, frozenset(found), tuple(skipped))


def least_h_model(
    theory: Iterable[Formula],
    signature: Signature,
    config: Optional[SaturationConfig] = None,
) -> HStructure:
    """
    Least H-model of an equality-free universal Horn theory

    Saturates over ground terms only; H is the set of derived atoms.

    Raises:
        HerbrandError: equality in the theory, no constant, or 0-ary predicates
        InconsistentTheoryError: the theory derives 0̄
    """
    config = config or SaturationConfig()
    theory = list(theory)
    for phi in theory:
        if not is_equality_free(phi):
            raise HerbrandError(f"least H-models need equality-free theories: {format_formula(phi)}")
    _reject_propositional(signature)
    universe = herbrand_universe(signature, config.depth, config.max_terms)

    result = saturate(theory, signature, config.replace(frozen_vars=0))
    if result.bottom_derived:
        raise InconsistentTheoryError("inconsistent: 0̄ derived; the theory has no H-model")

    atoms = frozenset(result.ground_atoms(include_equality=False))
    _logger.info(f"Least H-model has {len(atoms)} atoms (complete={result.complete})")
    return HStructure(signature, universe, atoms)
