"""
Saturation - derivable atoms and the term congruence of a universal Horn theory

Hyperresolution runs to a fixpoint over a depth-bounded universe of terms
built from the constants and a set of frozen variables. Equations feed a
union-find congruence closure; atoms are stored over class roots so they
follow every merge.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .algebra import ONE, BooleanAlgebra
from .errors import ConfigError, EvaluationError, InconsistentTheoryError, NotHornError
from .semantics import FuzzyStructure
from .syntax import (
    EQUALITY,
    App,
    Atom,
    Formula,
    Signature,
    Term,
    TruthConstant,
    Var,
    classify_horn,
    format_formula,
    format_term,
    free_vars,
    generate_terms,
    is_atomic,
    split_basic,
    term_depth,
    term_vars,
    universal_closure,
)

_logger = logging.getLogger(__name__)

Fact = Tuple[str, Tuple[int, ...]]


@dataclass(frozen=True)
class SaturationConfig:
    """
    Bounds of a saturation run

    frozen_vars is either a count m (names v1..vm) or explicit names.
    shuffle_seed permutes processing orders; results do not depend on it.
    """

    depth: int = 2
    frozen_vars: Union[int, Tuple[str, ...]] = 1
    max_rounds: int = 1000
    max_terms: int = 5000
    shuffle_seed: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.depth, int) or self.depth < 0:
            raise ConfigError(f"saturation depth must be a non-negative integer, got {self.depth!r}")
        if not isinstance(self.max_rounds, int) or self.max_rounds < 1:
            raise ConfigError(f"max_rounds must be positive, got {self.max_rounds!r}")
        if not isinstance(self.max_terms, int) or self.max_terms < 1:
            raise ConfigError(f"max_terms must be positive, got {self.max_terms!r}")
        if isinstance(self.frozen_vars, int):
            if self.frozen_vars < 0:
                raise ConfigError(f"frozen_vars must be non-negative, got {self.frozen_vars}")
        else:
            object.__setattr__(self, "frozen_vars", tuple(self.frozen_vars))

    def frozen_names(self) -> Tuple[str, ...]:
        if isinstance(self.frozen_vars, int):
            return tuple(f"v{i}" for i in range(1, self.frozen_vars + 1))
        return self.frozen_vars

    def replace(self, **changes) -> "SaturationConfig":
        values = {
            "depth": self.depth,
            "frozen_vars": self.frozen_vars,
            "max_rounds": self.max_rounds,
            "max_terms": self.max_terms,
            "shuffle_seed": self.shuffle_seed,
        }
        values.update(changes)
        return SaturationConfig(**values)


# ---------------------------------------------------------------------------
# Universe and congruence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TermUniverse:
    """Terms over constants and frozen variables, ordered by (depth, text)"""

    terms: Tuple[Term, ...]
    frozen: Tuple[str, ...]
    depth: int
    truncated: bool
    function_free: bool
    index: Mapping[Term, int] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def generate(cls, signature: Signature, frozen: Sequence[str], depth: int, max_terms: int) -> "TermUniverse":
        clash = set(frozen) & set(signature.constants)
        if clash:
            raise ConfigError(f"frozen variable names collide with constants: {sorted(clash)}")
        seeds = [App(name, ()) for name in signature.constants] + [Var(name) for name in frozen]
        functions = signature.function_symbols
        terms, truncated = generate_terms(seeds, functions, depth, max_terms)
        if not terms:
            raise ConfigError("the term universe is empty: declare a constant or use frozen variables")
        if truncated:
            _logger.warning(f"Term universe capped at {max_terms} terms")
        return cls(
            terms=terms,
            frozen=tuple(frozen),
            depth=depth,
            truncated=truncated,
            function_free=not functions,
            index={term: i for i, term in enumerate(terms)},
        )

    @property
    def complete(self) -> bool:
        """Exact iff there is nothing beyond the depth bound and the cap was not hit"""
        return self.function_free and not self.truncated

    def __contains__(self, term: Term) -> bool:
        return term in self.index

    def __len__(self) -> int:
        return len(self.terms)


class CongruenceState:
    """
    Union-find over universe terms with a signature table for congruence

    The representative of a class is its member with the smallest index,
    i.e. the smallest term by (depth, text).
    """

    def __init__(self, universe: TermUniverse):
        self.universe = universe
        size = len(universe.terms)
        self.parent = list(range(size))
        self.rank = [0] * size
        self.smallest = list(range(size))
        self.members: List[List[int]] = [[i] for i in range(size)]
        self.uses: List[List[int]] = [[] for _ in range(size)]
        self.arguments: Dict[int, Tuple[int, ...]] = {}
        self.signatures: Dict[Tuple[str, Tuple[int, ...]], int] = {}
        self.merges = 0

        for i, term in enumerate(universe.terms):
            if isinstance(term, App) and term.args:
                arg_ids = tuple(universe.index[a] for a in term.args)
                self.arguments[i] = arg_ids
                for a in set(arg_ids):
                    self.uses[a].append(i)
                self.signatures[(term.symbol, arg_ids)] = i

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def _signature(self, app: int) -> Tuple[str, Tuple[int, ...]]:
        return (self.universe.terms[app].symbol, tuple(self.find(a) for a in self.arguments[app]))

    def lookup(self, symbol: str, arg_roots: Tuple[int, ...]) -> Optional[int]:
        """Root of the class of symbol(args), None when outside the universe"""
        if not arg_roots:
            index = self.universe.index.get(App(symbol, ()))
            return None if index is None else self.find(index)
        app = self.signatures.get((symbol, arg_roots))
        return None if app is None else self.find(app)

    def merge(self, a: int, b: int) -> bool:
        """Merge two classes and propagate congruence; True if anything changed"""
        pending = [(a, b)]
        changed = False
        while pending:
            x, y = pending.pop()
            rx, ry = self.find(x), self.find(y)
            if rx == ry:
                continue
            if self.rank[rx] < self.rank[ry]:
                rx, ry = ry, rx
            self.parent[ry] = rx
            if self.rank[rx] == self.rank[ry]:
                self.rank[rx] += 1
            self.smallest[rx] = min(self.smallest[rx], self.smallest[ry])
            self.members[rx].extend(self.members[ry])
            self.members[ry] = []
            self.merges += 1
            changed = True
            _logger.debug(
                f"Merged {format_term(self.universe.terms[x])} ~ {format_term(self.universe.terms[y])}"
            )

            moved, self.uses[ry] = self.uses[ry], []
            for app in moved:
                key = self._signature(app)
                other = self.signatures.get(key)
                if other is None:
                    self.signatures[key] = app
                elif self.find(other) != self.find(app):
                    pending.append((other, app))
            self.uses[rx].extend(moved)
        return changed

    def roots(self) -> List[int]:
        return sorted({self.find(i) for i in range(len(self.parent))}, key=lambda r: self.smallest[r])

    def representative(self, index: int) -> Term:
        return self.universe.terms[self.smallest[self.find(index)]]

    def class_members(self, index: int) -> Tuple[Term, ...]:
        root = self.find(index)
        return tuple(self.universe.terms[i] for i in sorted(self.members[root]))


@dataclass(frozen=True)
class AtomBase:
    """Derived atoms over class roots"""

    facts: FrozenSet[Fact]
    bottom_derived: bool = False

    def __len__(self):
        return len(self.facts)


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    """One basic Horn conjunct of a clause: body atoms and a head"""

    variables: Tuple[str, ...]
    body: Tuple[Formula, ...]
    head: Formula
    source: Formula

    @property
    def predicate_atoms(self) -> Tuple[Atom, ...]:
        return tuple(a for a in self.body if isinstance(a, Atom) and a.predicate != EQUALITY)

    @property
    def equations(self) -> Tuple[Atom, ...]:
        return tuple(a for a in self.body if isinstance(a, Atom) and a.predicate == EQUALITY)

    @property
    def blocked(self) -> bool:
        """A 0̄ in the body never holds"""
        return any(isinstance(a, TruthConstant) and not a.value for a in self.body)


def compile_rules(theory: Iterable[Formula]) -> List[Rule]:
    """
    Split (w-)Horn clauses into rules

    Raises:
        NotHornError: a formula is not a (w-)Horn clause
    """
    rules: List[Rule] = []
    for phi in theory:
        closed = universal_closure(phi)
        horn = classify_horn(closed)
        if not horn.is_clause:
            raise NotHornError(f"not a (w-)Horn clause: {format_formula(phi)} ({horn.tag.value})", formula=phi)
        for conjunct in horn.conjuncts:
            body, head = split_basic(conjunct)
            names = set(free_vars(conjunct))
            rules.append(Rule(tuple(sorted(names)), tuple(body), head, closed))
    return rules


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


class Derivation(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SaturationResult:
    signature: Signature
    universe: TermUniverse
    congruence: CongruenceState = field(compare=False)
    atoms: AtomBase
    complete: bool
    rounds: int = 0
    config: SaturationConfig = field(default_factory=SaturationConfig)
    theory: Tuple[Formula, ...] = ()

    @property
    def bottom_derived(self) -> bool:
        return self.atoms.bottom_derived

    @property
    def consistent(self) -> bool:
        return not self.atoms.bottom_derived

    def index_of(self, term: Term) -> int:
        for name in term_vars(term):
            if name not in self.universe.frozen:
                raise EvaluationError(f"variable {name} is not one of the frozen variables {list(self.universe.frozen)}")
        index = self.universe.index.get(term)
        if index is None:
            raise EvaluationError(f"term {format_term(term)} is outside the generated universe")
        return index

    def classes(self) -> Tuple[Tuple[Term, ...], ...]:
        """Classes ordered by representative, representative first"""
        return tuple(self.congruence.class_members(root) for root in self.congruence.roots())

    def class_of(self, term: Term) -> Tuple[Term, ...]:
        return self.congruence.class_members(self.index_of(term))

    def representative(self, term: Term) -> Term:
        return self.congruence.representative(self.index_of(term))

    def ground_atoms(self, include_equality: bool = True) -> FrozenSet[Atom]:
        """Every derived atom over universe terms, expanded through the classes"""
        members = {root: self.congruence.class_members(root) for root in self.congruence.roots()}
        found: Set[Atom] = set()
        for predicate, roots in self.atoms.facts:
            for args in itertools.product(*(members[r] for r in roots)):
                found.add(Atom(predicate, tuple(args)))
        if include_equality and self.signature.has_equality:
            for group in members.values():
                for left in group:
                    for right in group:
                        found.add(Atom(EQUALITY, (left, right)))
        return frozenset(found)

    def summary(self) -> Dict[str, object]:
        return {
            "atoms": len(self.atoms),
            "classes": len(self.congruence.roots()),
            "universe": len(self.universe),
            "rounds": self.rounds,
            "complete": self.complete,
            "consistent": self.consistent,
            "truncated": self.universe.truncated,
        }


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


class _Saturator:
    def __init__(self, rules: List[Rule], universe: TermUniverse, config: SaturationConfig):
        self.rules = rules
        self.universe = universe
        self.config = config
        self.cc = CongruenceState(universe)
        self.facts: Set[Fact] = set()
        self.bottom = False
        self.head_truncated = False
        self._rng = random.Random(config.shuffle_seed) if config.shuffle_seed is not None else None
        self._roots: List[int] = []

    # term handling

    def instantiate(self, term: Term, binding: Mapping[str, int]) -> Optional[int]:
        if isinstance(term, Var):
            if term.name in binding:
                return binding[term.name]
            index = self.universe.index.get(term)
            return None if index is None else self.cc.find(index)
        arg_roots = []
        for arg in term.args:
            root = self.instantiate(arg, binding)
            if root is None:
                return None
            arg_roots.append(root)
        return self.cc.lookup(term.symbol, tuple(arg_roots))

    def _bound(self, term: Term, binding: Mapping[str, int]) -> bool:
        return term_vars(term) <= set(binding)

    def match(self, pattern: Term, root: int, binding: Dict[str, int]) -> Iterator[Dict[str, int]]:
        """Extensions of binding under which pattern lies in the class root"""
        if isinstance(pattern, Var):
            if pattern.name in binding:
                if binding[pattern.name] == root:
                    yield binding
            else:
                yield {**binding, pattern.name: root}
            return
        if self._bound(pattern, binding):
            if self.instantiate(pattern, binding) == root:
                yield binding
            return
        for member in self.cc.members[root]:
            term = self.universe.terms[member]
            if isinstance(term, App) and term.symbol == pattern.symbol and len(term.args) == len(pattern.args):
                arg_roots = tuple(self.cc.find(a) for a in self.cc.arguments[member])
                yield from self.match_all(pattern.args, arg_roots, binding)

    def match_all(self, patterns: Sequence[Term], roots: Sequence[int], binding: Dict[str, int]):
        if not patterns:
            yield binding
            return
        for extended in self.match(patterns[0], roots[0], binding):
            yield from self.match_all(patterns[1:], roots[1:], extended)

    # body join

    def bindings(self, rule: Rule, sources: Sequence[Mapping[str, List[Tuple[int, ...]]]]) -> Iterator[Dict[str, int]]:
        atoms = rule.predicate_atoms

        def join(position: int, binding: Dict[str, int]):
            if position == len(atoms):
                yield from self.solve(rule, list(rule.equations), binding)
                return
            atom = atoms[position]
            for roots in sources[position].get(atom.predicate, ()):
                for extended in self.match_all(atom.args, roots, binding):
                    yield from join(position + 1, extended)

        yield from join(0, {})

    def solve(self, rule: Rule, equations: List[Atom], binding: Dict[str, int]) -> Iterator[Dict[str, int]]:
        if not equations:
            unbound = [name for name in rule.variables if name not in binding]
            if not unbound:
                yield binding
                return
            for roots in itertools.product(self._roots, repeat=len(unbound)):
                yield {**binding, **dict(zip(unbound, roots))}
            return

        for position, equation in enumerate(equations):
            left, right = equation.args
            rest = equations[:position] + equations[position + 1 :]
            for known, other in ((left, right), (right, left)):
                if not self._bound(known, binding):
                    continue
                root = self.instantiate(known, binding)
                if root is None:
                    return
                for extended in self.match(other, root, binding):
                    yield from self.solve(rule, rest, extended)
                return

        pending = sorted(set().union(*(term_vars(a) for e in equations for a in e.args)) - set(binding))
        for root in self._roots:
            yield from self.solve(rule, equations, {**binding, pending[0]: root})

    # rounds

    def fire(self, rule: Rule, binding: Mapping[str, int], new_facts: Set[Fact], new_equations: List[Tuple[int, int]]):
        head = rule.head
        if isinstance(head, TruthConstant):
            if not head.value:
                self.bottom = True
            return
        if head.predicate == EQUALITY:
            left = self.instantiate(head.args[0], binding)
            right = self.instantiate(head.args[1], binding)
            if left is None or right is None:
                self.head_truncated = True
            elif left != right:
                new_equations.append((left, right))
            return
        roots = []
        for arg in head.args:
            root = self.instantiate(arg, binding)
            if root is None:
                self.head_truncated = True
                return
            roots.append(root)
        fact = (head.predicate, tuple(roots))
        if fact not in self.facts:
            new_facts.add(fact)

    def _index(self, facts: Iterable[Fact]) -> Dict[str, List[Tuple[int, ...]]]:
        indexed: Dict[str, List[Tuple[int, ...]]] = {}
        for predicate, roots in sorted(facts):
            indexed.setdefault(predicate, []).append(roots)
        if self._rng is not None:
            for rows in indexed.values():
                self._rng.shuffle(rows)
        return indexed

    def canonical(self, fact: Fact) -> Fact:
        return (fact[0], tuple(self.cc.find(r) for r in fact[1]))

    def run(self) -> Tuple[int, bool]:
        rules = [rule for rule in self.rules if not rule.blocked]
        if self._rng is not None:
            self._rng.shuffle(rules)

        full = True
        delta: Set[Fact] = set()
        rounds = 0
        while True:
            if rounds >= self.config.max_rounds:
                _logger.warning(f"Saturation stopped after {rounds} rounds without a fixpoint")
                return rounds, False
            rounds += 1
            self._roots = self.cc.roots()
            everything = self._index(self.facts)
            recent = self._index(delta)
            new_facts: Set[Fact] = set()
            new_equations: List[Tuple[int, int]] = []

            for rule in rules:
                width = len(rule.predicate_atoms)
                if full:
                    plans = [[everything] * width]
                elif width == 0:
                    continue
                else:
                    plans = [[recent if i == pivot else everything for i in range(width)] for pivot in range(width)]
                for sources in plans:
                    for binding in self.bindings(rule, sources):
                        self.fire(rule, binding, new_facts, new_equations)
                        if self.bottom:
                            _logger.info(f"0̄ derived from {format_formula(rule.source)}")
                            self.facts |= new_facts
                            return rounds, False

            if not new_facts and not new_equations:
                return rounds, True

            if self._rng is not None:
                self._rng.shuffle(new_equations)
            merged = False
            for left, right in new_equations:
                merged = self.cc.merge(left, right) or merged

            if merged:
                self.facts = {self.canonical(f) for f in self.facts | new_facts}
                delta = set(self.facts)
            else:
                delta = new_facts - self.facts
                self.facts |= delta
            full = merged
            _logger.debug(
                f"Round {rounds}: +{len(new_facts)} atoms, {len(new_equations)} equations, merged={merged}"
            )


def saturate(
    theory: Iterable[Formula],
    signature: Signature,
    config: Optional[SaturationConfig] = None,
) -> SaturationResult:
    """
    Saturate a universal (w-)Horn theory

    Args:
        theory: (w-)Horn clauses; open formulas are read universally closed
        signature: vocabulary of the theory
        config: depth bound, frozen variables, round and term limits

    Returns:
        SaturationResult; complete is set when the universe is exact and the
        fixpoint closed within max_rounds

    Raises:
        NotHornError: some formula is not a (w-)Horn clause
    """
    config = config or SaturationConfig()
    theory = list(theory)
    rules = compile_rules(theory)
    universe = TermUniverse.generate(signature, config.frozen_names(), config.depth, config.max_terms)
    _logger.info(
        f"Saturating {len(theory)} formulas ({len(rules)} rules) over {len(universe)} terms, depth {config.depth}"
    )

    engine = _Saturator(rules, universe, config)
    rounds, closed = engine.run()
    complete = closed and universe.complete and not engine.head_truncated
    result = SaturationResult(
        signature=signature,
        universe=universe,
        congruence=engine.cc,
        atoms=AtomBase(frozenset(engine.canonical(f) for f in engine.facts), engine.bottom),
        complete=complete,
        rounds=rounds,
        theory=tuple(theory),
        config=config,
    )
    if engine.bottom:
        _logger.info("Theory is inconsistent: 0̄ derived")
    _logger.info(
        f"Saturation finished after {rounds} rounds: {len(result.atoms)} atoms, "
        f"{len(engine.cc.roots())} classes, complete={complete}"
    )
    return result


def derives_atom(result: SaturationResult, phi: Formula) -> Derivation:
    """
    Whether the theory derives an atomic formula

    Every atom is derivable from an inconsistent theory. Otherwise the
    answer is NO only when the saturation is complete.

    Raises:
        EvaluationError: phi is not atomic, or mentions a variable that is
            not frozen
    """
    if not is_atomic(phi):
        raise EvaluationError(f"derives_atom needs an atomic formula, got {format_formula(phi)}")
    if result.bottom_derived:
        return Derivation.YES
    absent = Derivation.NO if result.complete else Derivation.UNKNOWN
    if isinstance(phi, TruthConstant):
        return Derivation.YES if phi.value else absent

    try:
        indices = [result.index_of(arg) for arg in phi.args]
    except EvaluationError:
        if any(name not in result.universe.frozen for arg in phi.args for name in term_vars(arg)):
            raise
        return Derivation.UNKNOWN

    cc = result.congruence
    if phi.predicate == EQUALITY:
        return Derivation.YES if cc.same(indices[0], indices[1]) else absent
    fact = (phi.predicate, tuple(cc.find(i) for i in indices))
    return Derivation.YES if fact in result.atoms.facts else absent


# ---------------------------------------------------------------------------
# Term structure
# ---------------------------------------------------------------------------


def build_term_structure(result: SaturationResult) -> FuzzyStructure:
    """
    The term structure over the Boolean algebra

    The domain is the classes (named by representatives), functions act on
    representatives, predicates are 1 exactly on derived atoms and == is 1
    exactly on equal classes. Applications leaving the universe are absent,
    which makes the structure partial.

    Raises:
        InconsistentTheoryError: the theory derives 0̄
    """
    if result.bottom_derived:
        raise InconsistentTheoryError("inconsistent: 0̄ derived; the term structure does not exist")

    cc = result.congruence
    terms = result.universe.terms
    roots = cc.roots()
    rep = {root: terms[cc.smallest[root]] for root in roots}
    domain = tuple(rep[root] for root in roots)

    functions: Dict[str, Dict[Tuple[Term, ...], Term]] = {}
    partial = False
    for name, arity in result.signature.functions:
        table: Dict[Tuple[Term, ...], Term] = {}
        for arg_roots in itertools.product(roots, repeat=arity):
            target = cc.lookup(name, tuple(arg_roots))
            if target is None:
                partial = True
                continue
            table[tuple(rep[r] for r in arg_roots)] = rep[target]
        functions[name] = table

    predicates: Dict[str, Dict[Tuple[Term, ...], object]] = {
        name: {} for name, _ in result.signature.user_predicates
    }
    for predicate, fact_roots in result.atoms.facts:
        predicates.setdefault(predicate, {})[tuple(rep[r] for r in fact_roots)] = ONE
    if result.signature.has_equality:
        predicates[EQUALITY] = {
            (rep[a], rep[b]): ONE for a in roots for b in roots if cc.same(a, b)
        }

    return FuzzyStructure(
        signature=result.signature,
        algebra=BooleanAlgebra(),
        domain=domain,
        functions=functions,
        predicates=predicates,
        partial=partial,
        domain_complete=result.universe.complete,
        depth=result.universe.depth,
        name="term-structure",
    )


def _seeded_depth(config: SaturationConfig, formulas: Iterable[Formula]) -> int:
    deepest = config.depth
    for phi in formulas:
        if isinstance(phi, Atom):
            for arg in phi.args:
                deepest = max(deepest, term_depth(arg))
    return deepest


def build_term_structure_from_atoms(
    atoms: Iterable[Atom],
    equations: Iterable[Tuple[Term, Term]],
    signature: Signature,
    config: Optional[SaturationConfig] = None,
) -> FuzzyStructure:
    """
    Term structure over an externally supplied atom base

    Equations are closed under similarity and congruence; atoms follow the
    resulting classes. The depth bound is raised to cover the given terms.
    """
    config = config or SaturationConfig()
    atoms = list(atoms)
    equations = list(equations)
    for phi in atoms:
        if not isinstance(phi, Atom):
            raise EvaluationError(f"expected an atom, got {format_formula(phi)}")

    depth = _seeded_depth(config, atoms + [Atom(EQUALITY, pair) for pair in equations])
    universe = TermUniverse.generate(signature, config.frozen_names(), depth, config.max_terms)
    cc = CongruenceState(universe)

    def locate(term: Term) -> int:
        index = universe.index.get(term)
        if index is None:
            raise EvaluationError(f"term {format_term(term)} is outside the generated universe")
        return index

    for left, right in equations:
        cc.merge(locate(left), locate(right))

    facts = set()
    for phi in atoms:
        if phi.predicate == EQUALITY:
            cc.merge(locate(phi.args[0]), locate(phi.args[1]))
        else:
            facts.add((phi.predicate, tuple(locate(a) for a in phi.args)))
    facts = frozenset((p, tuple(cc.find(i) for i in ids)) for p, ids in facts)

    result = SaturationResult(
        signature=signature,
        universe=universe,
        congruence=cc,
        atoms=AtomBase(facts),
        complete=universe.complete,
        config=config,
    )
    return build_term_structure(result)


def canonical_evaluation(result: SaturationResult, variables: Optional[Iterable[str]] = None) -> Dict[str, Term]:
    """
    The evaluation sending each frozen variable to its class

    Args:
        result: saturation result
        variables: names to map; all frozen variables when omitted

    Raises:
        EvaluationError: a requested variable is not frozen
    """
    names = list(variables) if variables is not None else list(result.universe.frozen)
    evaluation = {}
    for name in names:
        if name not in result.universe.frozen:
            raise EvaluationError(
                f"variable {name} is outside the frozen set {list(result.universe.frozen)}"
            )
        evaluation[name] = result.representative(Var(name))
    return evaluation
