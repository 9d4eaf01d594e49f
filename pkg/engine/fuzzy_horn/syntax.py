"""
Syntax - signatures, terms and formulas of the fuzzy predicate language

Formulas are immutable trees. Negation and the biconditional are derived:
~phi is stored as phi -> bot, phi <-> psi as (phi -> psi) /\\ (psi -> phi).
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import SignatureError

_logger = logging.getLogger(__name__)

EQUALITY = "=="

RESERVED_WORDS = frozenset({"forall", "exists", "bot", "top"})

_PREDICATE_NAME = re.compile(r"^[A-Z][A-Za-z0-9_]*$")
_FUNCTION_NAME = re.compile(r"^[a-z][A-Za-z0-9_]*$")


# ---------------------------------------------------------------------------
# Signature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Predicate and function symbols with their arities"""

    predicates: Tuple[Tuple[str, int], ...] = ()
    functions: Tuple[Tuple[str, int], ...] = ()
    has_equality: bool = False

    def __post_init__(self):
        predicates = dict(self.predicates)
        functions = dict(self.functions)

        if EQUALITY in predicates:
            if predicates[EQUALITY] != 2:
                raise SignatureError(f"equality symbol {EQUALITY} must be binary")
            object.__setattr__(self, "has_equality", True)
        elif self.has_equality:
            predicates[EQUALITY] = 2

        for name, arity in predicates.items():
            if name != EQUALITY and not _PREDICATE_NAME.match(name):
                raise SignatureError(f"predicate symbol must start uppercase: {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise SignatureError(f"invalid arity for predicate {name}: {arity!r}")

        for name, arity in functions.items():
            if not _FUNCTION_NAME.match(name) or name in RESERVED_WORDS:
                raise SignatureError(f"function symbol must start lowercase and not be reserved: {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise SignatureError(f"invalid arity for function {name}: {arity!r}")

        overlap = set(predicates) & set(functions)
        if overlap:
            raise SignatureError(f"symbols declared both as predicate and function: {sorted(overlap)}")

        object.__setattr__(self, "predicates", tuple(sorted(predicates.items())))
        object.__setattr__(self, "functions", tuple(sorted(functions.items())))

    def __hash__(self):
        return hash((self.predicates, self.functions, self.has_equality))

    @classmethod
    def build(
        cls,
        predicates: Optional[Mapping[str, int]] = None,
        functions: Optional[Mapping[str, int]] = None,
        constants: Iterable[str] = (),
        equality: bool = False,
    ) -> "Signature":
        """
        Convenience constructor from plain mappings

        Args:
            predicates: predicate name -> arity
            functions: function name -> arity
            constants: names of 0-ary function symbols
            equality: whether the binary symbol == is present

        Returns:
            Validated signature
        """
        funcs = dict(functions or {})
        for name in constants:
            funcs[name] = 0
        return cls(
            predicates=tuple((predicates or {}).items()),
            functions=tuple(funcs.items()),
            has_equality=equality,
        )

    def predicate_arity(self, name: str) -> Optional[int]:
        return dict(self.predicates).get(name)

    def function_arity(self, name: str) -> Optional[int]:
        return dict(self.functions).get(name)

    @property
    def constants(self) -> Tuple[str, ...]:
        return tuple(name for name, arity in self.functions if arity == 0)

    @property
    def function_symbols(self) -> Tuple[Tuple[str, int], ...]:
        """Function symbols of arity >= 1"""
        return tuple((name, arity) for name, arity in self.functions if arity >= 1)

    @property
    def user_predicates(self) -> Tuple[Tuple[str, int], ...]:
        """Predicate symbols other than =="""
        return tuple((name, arity) for name, arity in self.predicates if name != EQUALITY)

    def merged(self, other: "Signature") -> "Signature":
        predicates = dict(self.predicates)
        functions = dict(self.functions)
        for name, arity in other.predicates:
            if predicates.get(name, arity) != arity:
                raise SignatureError(f"conflicting arities for {name}")
            predicates[name] = arity
        for name, arity in other.functions:
            if functions.get(name, arity) != arity:
                raise SignatureError(f"conflicting arities for {name}")
            functions[name] = arity
        return Signature(
            predicates=tuple(predicates.items()),
            functions=tuple(functions.items()),
            has_equality=self.has_equality or other.has_equality,
        )


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    """Function application; constants are applications with no arguments"""

    symbol: str
    args: Tuple["Term", ...] = ()

    def __str__(self):
        return format_term(self)


Term = Union[Var, App]


def const(name: str) -> App:
    return App(name, ())


def fun(name: str, *args: Term) -> App:
    return App(name, tuple(args))


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if not term.args:
        return term.symbol
    return f"{term.symbol}({', '.join(format_term(a) for a in term.args)})"


@lru_cache(maxsize=None)
def term_depth(term: Term) -> int:
    if isinstance(term, Var) or not term.args:
        return 0
    return 1 + max(term_depth(a) for a in term.args)


@lru_cache(maxsize=None)
def term_vars(term: Term) -> FrozenSet[str]:
    if isinstance(term, Var):
        return frozenset({term.name})
    return frozenset().union(*(term_vars(a) for a in term.args))


def is_ground(term: Term) -> bool:
    """A term is ground iff it has no variables"""
    return not term_vars(term)


def term_key(term: Term) -> Tuple[int, str]:
    """Ordering key: depth first, then text"""
    return (term_depth(term), format_term(term))


def subterms(term: Term) -> Iterable[Term]:
    yield term
    if isinstance(term, App):
        for arg in term.args:
            yield from subterms(arg)


def substitute_term(term: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if not term.args:
        return term
    return App(term.symbol, tuple(substitute_term(a, mapping) for a in term.args))


def generate_terms(
    seeds: Sequence[Term],
    functions: Sequence[Tuple[str, int]],
    depth: int,
    max_terms: int,
) -> Tuple[Tuple[Term, ...], bool]:
    """
    Close a set of seed terms under function application up to a depth bound

    Args:
        seeds: depth-0 terms (constants, frozen variables)
        functions: function symbols of arity >= 1
        depth: maximal nesting depth
        max_terms: hard cap on the number of generated terms

    Returns:
        (terms ordered by term_key, truncated flag for the max_terms cap)
    """
    terms: List[Term] = sorted(set(seeds), key=term_key)
    if len(terms) > max_terms:
        return tuple(terms[:max_terms]), True

    for level in range(1, depth + 1):
        pool = list(terms)
        fresh: List[Term] = []
        for name, arity in sorted(functions):
            for args in itertools.product(pool, repeat=arity):
                if max(term_depth(a) for a in args) != level - 1:
                    continue
                fresh.append(App(name, tuple(args)))
                if len(terms) + len(fresh) > max_terms:
                    fresh.sort(key=term_key)
                    terms.extend(fresh[: max_terms - len(terms)])
                    _logger.debug(f"Term generation capped at {max_terms} terms (depth {level})")
                    return tuple(terms), True
        fresh.sort(key=term_key)
        terms.extend(fresh)

    return tuple(terms), False


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


class Connective(Enum):
    STRONG_AND = "&"
    WEAK_AND = "/\\"
    OR = "\\/"
    IMPLIES = "->"


class Quantifier(Enum):
    FORALL = "forall"
    EXISTS = "exists"


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[Term, ...] = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class TruthConstant:
    """0̄ (value False) or 1̄ (value True)"""

    value: bool

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Binary:
    connective: Connective
    left: "Formula"
    right: "Formula"
    # "neg" or "iff" when the node was produced by normalising ~ or <->
    origin: Optional[str] = field(default=None, compare=False)

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Quantified:
    quantifier: Quantifier
    variable: str
    body: "Formula"

    def __str__(self):
        return format_formula(self)


Formula = Union[Atom, TruthConstant, Binary, Quantified]

BOTTOM = TruthConstant(False)
TOP = TruthConstant(True)


def atom(predicate: str, *args: Term) -> Atom:
    return Atom(predicate, tuple(args))


def equation(left: Term, right: Term) -> Atom:
    return Atom(EQUALITY, (left, right))


def implies(left: Formula, right: Formula) -> Binary:
    return Binary(Connective.IMPLIES, left, right)


def negation(phi: Formula) -> Binary:
    return Binary(Connective.IMPLIES, phi, BOTTOM, origin="neg")


def biconditional(left: Formula, right: Formula) -> Binary:
    return Binary(Connective.WEAK_AND, implies(left, right), implies(right, left), origin="iff")


def _fold(connective: Connective, parts: Sequence[Formula]) -> Formula:
    if not parts:
        raise ValueError("empty conjunction")
    result = parts[0]
    for part in parts[1:]:
        result = Binary(connective, result, part)
    return result


def strong_conj(*parts: Formula) -> Formula:
    return _fold(Connective.STRONG_AND, parts)


def weak_conj(*parts: Formula) -> Formula:
    return _fold(Connective.WEAK_AND, parts)


def disj(*parts: Formula) -> Formula:
    return _fold(Connective.OR, parts)


def forall(variables: Union[str, Sequence[str]], body: Formula) -> Formula:
    names = [variables] if isinstance(variables, str) else list(variables)
    for name in reversed(names):
        body = Quantified(Quantifier.FORALL, name, body)
    return body


def exists(variables: Union[str, Sequence[str]], body: Formula) -> Formula:
    names = [variables] if isinstance(variables, str) else list(variables)
    for name in reversed(names):
        body = Quantified(Quantifier.EXISTS, name, body)
    return body


def is_atomic(phi: Formula) -> bool:
    """Atoms and the truth constants 0̄, 1̄ are atomic"""
    return isinstance(phi, (Atom, TruthConstant))


def free_vars(phi: Formula) -> FrozenSet[str]:
    if isinstance(phi, Atom):
        return frozenset().union(*(term_vars(a) for a in phi.args))
    if isinstance(phi, TruthConstant):
        return frozenset()
    if isinstance(phi, Binary):
        return free_vars(phi.left) | free_vars(phi.right)
    return free_vars(phi.body) - {phi.variable}


def all_vars(phi: Formula) -> FrozenSet[str]:
    """Free and bound variable names"""
    if isinstance(phi, Atom):
        return frozenset().union(*(term_vars(a) for a in phi.args))
    if isinstance(phi, TruthConstant):
        return frozenset()
    if isinstance(phi, Binary):
        return all_vars(phi.left) | all_vars(phi.right)
    return all_vars(phi.body) | {phi.variable}


def atoms_of(phi: Formula) -> Iterable[Atom]:
    if isinstance(phi, Atom):
        yield phi
    elif isinstance(phi, Binary):
        yield from atoms_of(phi.left)
        yield from atoms_of(phi.right)
    elif isinstance(phi, Quantified):
        yield from atoms_of(phi.body)


def is_equality_free(phi: Formula) -> bool:
    return all(a.predicate != EQUALITY for a in atoms_of(phi))


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def universal_closure(phi: Formula) -> Formula:
    names = sorted(free_vars(phi))
    if not names:
        return phi
    _logger.debug(f"Universally closing over {names}: {format_formula(phi)}")
    return forall(names, phi)


def rank(phi: Formula, surface: bool = True) -> int:
    """
    Rank of a formula

    Atoms have rank 0, quantifiers add 1, binary connectives add the ranks
    of their parts. With surface=True, a formula written ~phi counts as
    rank(phi)+1 and phi <-> psi as one binary connective; with
    surface=False the normalised tree is measured as stored.
    """
    if is_atomic(phi):
        return 0
    if isinstance(phi, Quantified):
        return rank(phi.body, surface) + 1
    if surface and phi.origin == "neg":
        return rank(phi.left, surface) + 1
    if surface and phi.origin == "iff" and isinstance(phi.left, Binary):
        return rank(phi.left.left, surface) + rank(phi.left.right, surface)
    return rank(phi.left, surface) + rank(phi.right, surface)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _format(phi: Formula) -> str:
    if isinstance(phi, Atom):
        if phi.predicate == EQUALITY:
            return f"{format_term(phi.args[0])} == {format_term(phi.args[1])}"
        if not phi.args:
            return phi.predicate
        return f"{phi.predicate}({', '.join(format_term(a) for a in phi.args)})"
    if isinstance(phi, TruthConstant):
        return "top" if phi.value else "bot"
    if isinstance(phi, Quantified):
        return f"({phi.quantifier.value} {phi.variable}. {_format(phi.body)})"
    if phi.origin == "neg":
        inner = _format(phi.left)
        if isinstance(phi.left, Atom) and phi.left.predicate == EQUALITY:
            inner = f"({inner})"
        return f"~{inner}"
    if phi.origin == "iff" and isinstance(phi.left, Binary):
        return f"({_format(phi.left.left)} <-> {_format(phi.left.right)})"
    return f"({_format(phi.left)} {phi.connective.value} {_format(phi.right)})"


def format_formula(phi: Formula) -> str:
    """Fully parenthesised text that parse_formula reads back to the same tree"""
    text = _format(phi)
    if text.startswith("(") and text.endswith(")") and _outer_parens_match(text):
        return text[1:-1]
    return text


def _outer_parens_match(text: str) -> bool:
    depth = 0
    for index, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth == 0 and index != len(text) - 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------


def _fresh_name(name: str, avoid: FrozenSet[str]) -> str:
    candidate = name + "'"
    while candidate in avoid:
        candidate += "'"
    return candidate


def substitute(phi: Formula, mapping: Mapping[str, Term]) -> Formula:
    """
    Simultaneous capture-avoiding substitution

    Variables of the mapping that are not free in phi are ignored. A bound
    variable that would capture a variable of a replacing term is renamed
    with primes (y -> y').
    """
    live = {name: term for name, term in mapping.items() if name in free_vars(phi)}
    if not live:
        return phi
    return _substitute(phi, live)


def _substitute(phi: Formula, mapping: Dict[str, Term]) -> Formula:
    if isinstance(phi, Atom):
        return Atom(phi.predicate, tuple(substitute_term(a, mapping) for a in phi.args))
    if isinstance(phi, TruthConstant):
        return phi
    if isinstance(phi, Binary):
        return Binary(
            phi.connective,
            _substitute(phi.left, mapping),
            _substitute(phi.right, mapping),
            origin=phi.origin,
        )

    body_free = free_vars(phi.body)
    inner = {name: term for name, term in mapping.items() if name != phi.variable and name in body_free}
    if not inner:
        return phi

    incoming = frozenset().union(*(term_vars(t) for t in inner.values()))
    if phi.variable not in incoming:
        return Quantified(phi.quantifier, phi.variable, _substitute(phi.body, inner))

    renamed = _fresh_name(phi.variable, incoming | all_vars(phi.body) | frozenset(inner))
    _logger.debug(f"Renaming bound variable {phi.variable} -> {renamed} to avoid capture")
    inner[phi.variable] = Var(renamed)
    return Quantified(phi.quantifier, renamed, _substitute(phi.body, inner))


# ---------------------------------------------------------------------------
# Horn classification
# ---------------------------------------------------------------------------


class HornTag(Enum):
    BASIC_HORN = "BasicHorn"
    BASIC_W_HORN = "BasicWHorn"
    QUANTIFIER_FREE_HORN = "QuantifierFreeHorn"
    QUANTIFIER_FREE_W_HORN = "QuantifierFreeWHorn"
    HORN_CLAUSE = "HornClause"
    W_HORN_CLAUSE = "WHornClause"
    HORN_FORMULA = "HornFormula"
    W_HORN_FORMULA = "WHornFormula"
    NOT_HORN = "NotHorn"


# specificity levels of one track
_NOT, _FORMULA, _CLAUSE, _QUANTIFIER_FREE, _BASIC = range(5)

_TAGS = {
    (_BASIC, True): HornTag.BASIC_HORN,
    (_BASIC, False): HornTag.BASIC_W_HORN,
    (_QUANTIFIER_FREE, True): HornTag.QUANTIFIER_FREE_HORN,
    (_QUANTIFIER_FREE, False): HornTag.QUANTIFIER_FREE_W_HORN,
    (_CLAUSE, True): HornTag.HORN_CLAUSE,
    (_CLAUSE, False): HornTag.W_HORN_CLAUSE,
    (_FORMULA, True): HornTag.HORN_FORMULA,
    (_FORMULA, False): HornTag.W_HORN_FORMULA,
}


@dataclass(frozen=True)
class HornClass:
    """
    Classification of a formula

    tag is the most specific applicable class, preferring the strong track
    on ties; strong and weak tell whether the formula is (w-)Horn at all.
    For Horn results prefix/matrix/conjuncts describe the clause shape,
    conjuncts being the basic (w-)Horn formulas of the matrix.
    """

    tag: HornTag
    strong: bool = False
    weak: bool = False
    prefix: Tuple[Tuple[Quantifier, str], ...] = ()
    matrix: Optional[Formula] = None
    conjuncts: Tuple[Formula, ...] = ()

    @property
    def is_horn(self) -> bool:
        return self.tag is not HornTag.NOT_HORN

    @property
    def is_clause(self) -> bool:
        """(w-)Horn clause: all-universal (possibly empty) prefix"""
        return self.is_horn and all(q is Quantifier.FORALL for q, _ in self.prefix)


def _flatten(phi: Formula, connective: Connective) -> List[Formula]:
    if isinstance(phi, Binary) and phi.connective is connective:
        return _flatten(phi.left, connective) + _flatten(phi.right, connective)
    return [phi]


def _is_basic(phi: Formula, connective: Connective) -> bool:
    if is_atomic(phi):
        return True
    if not (isinstance(phi, Binary) and phi.connective is Connective.IMPLIES):
        return False
    if not is_atomic(phi.right):
        return False
    return all(is_atomic(part) for part in _flatten(phi.left, connective))


def _strip_prefix(phi: Formula) -> Tuple[Tuple[Tuple[Quantifier, str], ...], Formula]:
    prefix = []
    while isinstance(phi, Quantified):
        prefix.append((phi.quantifier, phi.variable))
        phi = phi.body
    return tuple(prefix), phi


def _track_level(prefix, matrix: Formula, connective: Connective) -> Tuple[int, Tuple[Formula, ...]]:
    conjuncts = _flatten(matrix, connective)
    if not all(_is_basic(part, connective) for part in conjuncts):
        return _NOT, ()
    if not prefix:
        return (_BASIC if len(conjuncts) == 1 else _QUANTIFIER_FREE), tuple(conjuncts)
    if all(q is Quantifier.FORALL for q, _ in prefix):
        return _CLAUSE, tuple(conjuncts)
    return _FORMULA, tuple(conjuncts)


def classify_horn(phi: Formula) -> HornClass:
    """
    Classify a normalised formula as (w-)Horn

    Args:
        phi: formula to classify

    Returns:
        HornClass with the most specific tag and both track flags
    """
    prefix, matrix = _strip_prefix(phi)
    strong_level, strong_parts = _track_level(prefix, matrix, Connective.STRONG_AND)
    weak_level, weak_parts = _track_level(prefix, matrix, Connective.WEAK_AND)

    if strong_level == _NOT and weak_level == _NOT:
        return HornClass(HornTag.NOT_HORN)

    use_strong = strong_level >= weak_level
    level = strong_level if use_strong else weak_level
    return HornClass(
        tag=_TAGS[(level, use_strong)],
        strong=strong_level != _NOT,
        weak=weak_level != _NOT,
        prefix=prefix,
        matrix=matrix,
        conjuncts=strong_parts if use_strong else weak_parts,
    )


def split_basic(phi: Formula) -> Tuple[Tuple[Formula, ...], Formula]:
    """Body atoms and head of a basic (w-)Horn formula"""
    if is_atomic(phi):
        return (), phi
    if not (isinstance(phi, Binary) and phi.connective is Connective.IMPLIES):
        raise ValueError(f"not a basic Horn formula: {format_formula(phi)}")
    body = _flatten(phi.left, Connective.STRONG_AND)
    if len(body) == 1:
        body = _flatten(phi.left, Connective.WEAK_AND)
    return tuple(body), phi.right


# ---------------------------------------------------------------------------
# Similarity and congruence schemata
# ---------------------------------------------------------------------------


def _variable_names(prefix: str, arity: int) -> List[str]:
    if arity == 1:
        return [prefix]
    return [f"{prefix}{i}" for i in range(1, arity + 1)]


def similarity_axioms(signature: Signature, horn_form: bool = False) -> Tuple[Formula, ...]:
    """
    Similarity axioms S1-S3 and congruence instances C1, C2

    Args:
        signature: signature with ==
        horn_form: emit C2 as x1==y1 & ... & xn==yn & P(x) -> P(y)
            instead of the biconditional form

    Returns:
        S1, S2, S3, then one C1 per function of arity >= 1 and one C2 per
        predicate of arity >= 1 other than ==
    """
    if not signature.has_equality:
        raise SignatureError("similarity axioms need the equality symbol ==")

    x, y, z = Var("x"), Var("y"), Var("z")
    axioms: List[Formula] = [
        forall("x", equation(x, x)),
        forall(["x", "y"], implies(equation(x, y), equation(y, x))),
        forall(["x", "y", "z"], implies(strong_conj(equation(x, y), equation(y, z)), equation(x, z))),
    ]

    for name, arity in signature.function_symbols:
        xs = [Var(n) for n in _variable_names("x", arity)]
        ys = [Var(n) for n in _variable_names("y", arity)]
        body = strong_conj(*(equation(a, b) for a, b in zip(xs, ys)))
        head = equation(App(name, tuple(xs)), App(name, tuple(ys)))
        axioms.append(forall([v.name for v in xs + ys], implies(body, head)))

    for name, arity in signature.user_predicates:
        if arity == 0:
            continue
        xs = [Var(n) for n in _variable_names("x", arity)]
        ys = [Var(n) for n in _variable_names("y", arity)]
        equations = [equation(a, b) for a, b in zip(xs, ys)]
        left, right = Atom(name, tuple(xs)), Atom(name, tuple(ys))
        if horn_form:
            matrix = implies(strong_conj(*equations, left), right)
        else:
            matrix = implies(strong_conj(*equations), biconditional(left, right))
        axioms.append(forall([v.name for v in xs + ys], matrix))

    return tuple(axioms)
