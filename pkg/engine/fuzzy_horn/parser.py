"""
Parser - surface syntax of formulas and theory files

Grammar (loosest binding first): quantifier prefix, <->, -> (right
associative), \\/, /\\, &, ~, atoms. Quantified formulas stand at formula
level or inside parentheses.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .errors import ParseError, SignatureError
from .syntax import (
    BOTTOM,
    EQUALITY,
    TOP,
    App,
    Atom,
    Binary,
    Connective,
    Formula,
    Quantified,
    Quantifier,
    Signature,
    Term,
    Var,
    biconditional,
    negation,
    universal_closure,
)

_logger = logging.getLogger(__name__)

FORMULA_GRAMMAR = r"""
    ?start: formula
    ?term_start: term

    ?formula: iff
            | quantifier variables "." formula      -> quantified

    quantifier: "forall"                            -> forall
              | "∀"                                 -> forall
              | "exists"                            -> exists
              | "∃"                                 -> exists

    variables: NAME+

    ?iff: implication
        | implication _IFF implication              -> iff

    ?implication: disjunction
                | disjunction _IMP implication      -> implies

    ?disjunction: weak_conj
                | disjunction _OR weak_conj         -> disj

    ?weak_conj: strong_conj
              | weak_conj _WAND strong_conj         -> wconj

    ?strong_conj: unary
                | strong_conj "&" unary             -> sconj

    ?unary: _NOT unary                              -> negation
          | atom
          | "(" formula ")"

    ?atom: PRED args                                -> predicate
         | PRED                                     -> predicate
         | term _EQ term                            -> equation
         | "bot"                                    -> bottom
         | "⊥"                                      -> bottom
         | "top"                                    -> top
         | "⊤"                                      -> top

    ?term: NAME args                                -> application
         | NAME                                     -> name

    args: "(" ")"
        | "(" term ("," term)* ")"

    _IFF: "<->" | "↔"
    _IMP: "->" | "→"
    _OR: "\\/" | "∨"
    _WAND: "/\\" | "∧"
    _NOT: "~" | "¬"
    _EQ: "==" | "≈"

    PRED: /[A-Z][A-Za-z0-9_]*/
    NAME: /[a-z][A-Za-z0-9_]*'*/

    %import common.WS
    %ignore WS
"""

_PARSER = Lark(FORMULA_GRAMMAR, parser="lalr", start=["start", "term_start"])


def _where(token: Token) -> str:
    return f" at line {token.line}, column {token.column}"


@v_args(inline=True)
class FormulaBuilder(Transformer):
    """Turns the parse tree into normalised formula objects, checking the signature"""

    def __init__(self, signature: Signature):
        super().__init__()
        self.signature = signature

    # terms

    def args(self, *terms):
        return list(terms)

    def application(self, name: Token, arguments: List[Term]):
        arity = self.signature.function_arity(str(name))
        if arity is None:
            raise SignatureError(f"undeclared function symbol {name}{_where(name)}")
        if arity != len(arguments):
            raise SignatureError(
                f"arity mismatch for {name}: expected {arity}, got {len(arguments)}{_where(name)}"
            )
        return App(str(name), tuple(arguments))

    def name(self, token: Token):
        arity = self.signature.function_arity(str(token))
        if arity is None:
            return Var(str(token))
        if arity != 0:
            raise SignatureError(f"arity mismatch for {token}: expected {arity}, got 0{_where(token)}")
        return App(str(token), ())

    # atoms

    def predicate(self, name: Token, arguments: Optional[List[Term]] = None):
        arguments = arguments or []
        arity = self.signature.predicate_arity(str(name))
        if arity is None:
            raise SignatureError(f"undeclared predicate symbol {name}{_where(name)}")
        if arity != len(arguments):
            raise SignatureError(
                f"arity mismatch for {name}: expected {arity}, got {len(arguments)}{_where(name)}"
            )
        return Atom(str(name), tuple(arguments))

    def equation(self, left: Term, right: Term):
        if not self.signature.has_equality:
            raise SignatureError("equality used but the signature has equality off")
        return Atom(EQUALITY, (left, right))

    def bottom(self):
        return BOTTOM

    def top(self):
        return TOP

    # connectives

    def negation(self, phi):
        return negation(phi)

    def sconj(self, left, right):
        return Binary(Connective.STRONG_AND, left, right)

    def wconj(self, left, right):
        return Binary(Connective.WEAK_AND, left, right)

    def disj(self, left, right):
        return Binary(Connective.OR, left, right)

    def implies(self, left, right):
        return Binary(Connective.IMPLIES, left, right)

    def iff(self, left, right):
        return biconditional(left, right)

    # quantifiers

    def forall(self):
        return Quantifier.FORALL

    def exists(self):
        return Quantifier.EXISTS

    def variables(self, *names: Token):
        for token in names:
            if self.signature.function_arity(str(token)) is not None:
                raise SignatureError(f"cannot quantify over function symbol {token}{_where(token)}")
        return [str(token) for token in names]

    def quantified(self, quantifier: Quantifier, names: List[str], body: Formula):
        for name in reversed(names):
            body = Quantified(quantifier, name, body)
        return body


def _run(text: str, signature: Signature, start: str):
    try:
        tree = _PARSER.parse(text, start=start)
    except UnexpectedInput as exc:
        line = getattr(exc, "line", None)
        column = getattr(exc, "column", None)
        if line is not None and line < 0:
            line, column = None, None
        raise ParseError(f"syntax error in {text!r}", line=line, column=column, text=text) from exc

    try:
        return FormulaBuilder(signature).transform(tree)
    except VisitError as exc:
        raise exc.orig_exc from None


def parse_formula(text: str, signature: Signature) -> Formula:
    """
    Parse one formula of the surface language

    Args:
        text: formula text, e.g. "forall x. (P(x) -> Q(x))"
        signature: declared symbols; lowercase names not declared as
            functions are variables

    Returns:
        Normalised formula (~ and <-> expanded)
    """
    return _run(text, signature, "start")


def parse_term(text: str, signature: Signature) -> Term:
    return _run(text, signature, "term_start")


# ---------------------------------------------------------------------------
# Theory files
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Theory:
    """A signature plus the formulas of a theory file, with their source lines"""

    signature: Signature
    formulas: Tuple[Formula, ...]
    lines: Tuple[int, ...] = ()
    name: str = ""

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)


_DECLARATIONS = ("pred", "fun", "const", "equality")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _split_names(rest: str) -> List[str]:
    return [part.strip() for part in rest.replace(",", " ").split() if part.strip()]


def _parse_symbol(spec: str, line_no: int) -> Tuple[str, int]:
    if "/" not in spec:
        raise ParseError(f"expected NAME/ARITY, got {spec!r}", line=line_no)
    name, arity = spec.split("/", 1)
    try:
        return name, int(arity)
    except ValueError:
        raise ParseError(f"arity must be an integer in {spec!r}", line=line_no) from None


def parse_signature_lines(lines: List[Tuple[int, str]]) -> Signature:
    predicates: Dict[str, int] = {}
    functions: Dict[str, int] = {}
    equality = False

    for line_no, line in lines:
        keyword, _, rest = line.partition(" ")
        if keyword == "pred":
            for spec in _split_names(rest):
                name, arity = _parse_symbol(spec, line_no)
                predicates[name] = arity
        elif keyword == "fun":
            for spec in _split_names(rest):
                name, arity = _parse_symbol(spec, line_no)
                functions[name] = arity
        elif keyword == "const":
            for name in _split_names(rest):
                functions[name] = 0
        elif keyword == "equality":
            flag = rest.strip().lower()
            if flag not in ("on", "off"):
                raise ParseError(f"equality must be 'on' or 'off', got {flag!r}", line=line_no)
            equality = flag == "on"

    try:
        return Signature.build(predicates, functions, equality=equality)
    except SignatureError as exc:
        raise SignatureError(f"{exc} (signature header)") from None


def parse_theory(text: str, name: str = "", close: bool = True) -> Theory:
    """
    Parse a theory file

    Declaration lines (pred P/1, fun f/2, const c, equality on|off) may appear
    anywhere; every other non-blank line holds one formula. Open formulas are
    universally closed unless close is False.

    Args:
        text: file contents
        name: label used in messages
        close: universally close open axioms

    Returns:
        Parsed theory
    """
    declarations: List[Tuple[int, str]] = []
    bodies: List[Tuple[int, str]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line.split(" ", 1)[0] in _DECLARATIONS:
            declarations.append((line_no, line))
        else:
            bodies.append((line_no, line))

    signature = parse_signature_lines(declarations)

    formulas: List[Formula] = []
    lines: List[int] = []
    for line_no, body in bodies:
        try:
            phi = parse_formula(body, signature)
        except ParseError as exc:
            raise ParseError(f"{name or 'theory'}: syntax error in {body!r}", line=line_no, column=exc.column) from None
        except SignatureError as exc:
            raise SignatureError(f"{name or 'theory'} line {line_no}: {exc}") from None
        formulas.append(universal_closure(phi) if close else phi)
        lines.append(line_no)

    _logger.info(f"Parsed theory {name or '<text>'}: {len(formulas)} formulas")
    return Theory(signature=signature, formulas=tuple(formulas), lines=tuple(lines), name=name)
