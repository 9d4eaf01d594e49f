"""
Algebra - MTL-algebras of truth values

[0,1] algebras and the bundled finite chains keep their values as exact
Fractions; user table algebras use integer indices 0..n-1.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from .errors import AlgebraError

_logger = logging.getLogger(__name__)

TruthValue = Any

ZERO = Fraction(0)
ONE = Fraction(1)


class MtlAlgebra:
    """
    Bounded integral commutative residuated lattice with prelinearity

    Subclasses implement _conj, _residuum, _meet, _join and contains.
    Public operations validate their operands.
    """

    name = "mtl"
    bottom: TruthValue = ZERO
    top: TruthValue = ONE

    def elements(self) -> Optional[Tuple[TruthValue, ...]]:
        """Whole carrier for finite algebras, None otherwise"""
        return None

    @property
    def is_finite(self) -> bool:
        return self.elements() is not None

    @property
    def is_chain(self) -> bool:
        return True

    def contains(self, value: TruthValue) -> bool:
        raise NotImplementedError

    def check(self, *values: TruthValue) -> None:
        for value in values:
            if not self.contains(value):
                raise AlgebraError(f"{value!r} is not an element of {self.name}")

    def conj(self, a: TruthValue, b: TruthValue) -> TruthValue:
        self.check(a, b)
        return self._conj(a, b)

    def residuum(self, a: TruthValue, b: TruthValue) -> TruthValue:
        self.check(a, b)
        return self._residuum(a, b)

    def meet(self, a: TruthValue, b: TruthValue) -> Optional[TruthValue]:
        self.check(a, b)
        return self._meet(a, b)

    def join(self, a: TruthValue, b: TruthValue) -> Optional[TruthValue]:
        self.check(a, b)
        return self._join(a, b)

    def neg(self, a: TruthValue) -> TruthValue:
        return self.residuum(a, self.bottom)

    def leq(self, a: TruthValue, b: TruthValue) -> bool:
        return self.meet(a, b) == a

    def meet_all(self, values: Iterable[TruthValue]) -> Optional[TruthValue]:
        """Infimum of a finite nonempty family; None when it does not exist"""
        result = self.top
        for value in values:
            result = self._meet(result, value)
            if result is None:
                return None
        return result

    def join_all(self, values: Iterable[TruthValue]) -> Optional[TruthValue]:
        result = self.bottom
        for value in values:
            result = self._join(result, value)
            if result is None:
                return None
        return result

    def coerce(self, raw: Any) -> TruthValue:
        """
        Read a truth value written in a data file or on the command line

        Accepts Fractions, ints, "p/q" strings and decimals; floats are read
        through their shortest decimal text so 0.9 becomes 9/10.
        """
        value = parse_rational(raw)
        self.check(value)
        return value

    def format(self, value: TruthValue, decimal: bool = False) -> str:
        return format_truth(value, decimal)

    def _key(self):
        return (type(self).__name__, self.name)

    def __eq__(self, other):
        return isinstance(other, MtlAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# [0,1] algebras
# ---------------------------------------------------------------------------


class UnitIntervalAlgebra(MtlAlgebra):
    """Standard algebra of a continuous t-norm on the rational points of [0,1]"""

    def contains(self, value: TruthValue) -> bool:
        return isinstance(value, (Fraction, int)) and not isinstance(value, bool) and 0 <= value <= 1

    def _meet(self, a, b):
        return min(a, b)

    def _join(self, a, b):
        return max(a, b)


class GodelAlgebra(UnitIntervalAlgebra):
    name = "godel"

    def _conj(self, a, b):
        return Fraction(min(a, b))

    def _residuum(self, a, b):
        return ONE if a <= b else Fraction(b)


class LukasiewiczAlgebra(UnitIntervalAlgebra):
    name = "lukasiewicz"

    def _conj(self, a, b):
        return max(ZERO, Fraction(a) + b - 1)

    def _residuum(self, a, b):
        return min(ONE, 1 - Fraction(a) + b)


class ProductAlgebra(UnitIntervalAlgebra):
    name = "product"

    def _conj(self, a, b):
        return Fraction(a) * b

    def _residuum(self, a, b):
        return ONE if a <= b else Fraction(b) / a


# ---------------------------------------------------------------------------
# Finite algebras
# ---------------------------------------------------------------------------


class BooleanAlgebra(MtlAlgebra):
    """Two-element Boolean algebra {0, 1}"""

    name = "boolean"

    def elements(self):
        return (ZERO, ONE)

    def contains(self, value):
        return not isinstance(value, bool) and isinstance(value, (Fraction, int)) and value in (0, 1)

    def _conj(self, a, b):
        return ONE if (a == 1 and b == 1) else ZERO

    def _residuum(self, a, b):
        return ONE if (a == 0 or b == 1) else ZERO

    def _meet(self, a, b):
        return Fraction(min(a, b))

    def _join(self, a, b):
        return Fraction(max(a, b))


class FiniteChain(MtlAlgebra):
    """Gödel or Łukasiewicz chain with elements k/(n-1), k = 0..n-1"""

    def __init__(self, kind: str, size: int):
        if kind not in ("godel", "lukasiewicz"):
            raise AlgebraError(f"unknown chain kind: {kind}")
        if size < 2:
            raise AlgebraError(f"a chain needs at least 2 elements, got {size}")
        self.kind = kind
        self.size = size
        self.name = f"{kind}-{size}"
        self._elements = tuple(Fraction(k, size - 1) for k in range(size))

    def elements(self):
        return self._elements

    def contains(self, value):
        if isinstance(value, bool) or not isinstance(value, (Fraction, int)):
            return False
        if not 0 <= value <= 1:
            return False
        return (Fraction(value) * (self.size - 1)).denominator == 1

    def index(self, value: TruthValue) -> int:
        self.check(value)
        return int(Fraction(value) * (self.size - 1))

    def _conj(self, a, b):
        if self.kind == "godel":
            return Fraction(min(a, b))
        return max(ZERO, Fraction(a) + b - 1)

    def _residuum(self, a, b):
        if a <= b:
            return ONE
        if self.kind == "godel":
            return Fraction(b)
        return 1 - Fraction(a) + b

    def _meet(self, a, b):
        return Fraction(min(a, b))

    def _join(self, a, b):
        return Fraction(max(a, b))


class TableAlgebra(MtlAlgebra):
    """
    Finite algebra given by operation tables over indices 0..size-1

    Args:
        name: label
        conj: size x size table of the strong conjunction
        residuum: size x size table of the residuum
        order: size x size 0/1 matrix (order[i][j] == 1 iff i <= j), or a
            list of all indices from bottom to top for a chain
        bottom: index of 0, derived from the order when omitted
        top: index of 1, derived from the order when omitted
    """

    def __init__(
        self,
        name: str,
        conj: Sequence[Sequence[int]],
        residuum: Sequence[Sequence[int]],
        order: Sequence[Any],
        bottom: Optional[int] = None,
        top: Optional[int] = None,
    ):
        size = len(conj)
        if size < 2:
            raise AlgebraError(f"table algebra {name} needs at least 2 elements")
        for label, table in (("conj", conj), ("residuum", residuum)):
            if len(table) != size or any(len(row) != size for row in table):
                raise AlgebraError(f"{label} table of {name} must be {size}x{size}")
            for row in table:
                for cell in row:
                    if not isinstance(cell, int) or not 0 <= cell < size:
                        raise AlgebraError(f"{label} table of {name} has out-of-range entry {cell!r}")

        self.name = name
        self.size = size
        self._conj_table = tuple(tuple(row) for row in conj)
        self._residuum_table = tuple(tuple(row) for row in residuum)
        self._leq = self._read_order(order, size)
        self.bottom = self._extreme(bottom, lowest=True)
        self.top = self._extreme(top, lowest=False)

    @staticmethod
    def _read_order(order: Sequence[Any], size: int) -> Tuple[Tuple[bool, ...], ...]:
        if order and all(isinstance(x, int) for x in order):
            if sorted(order) != list(range(size)):
                raise AlgebraError("chain order must list every index exactly once")
            position = {element: rank for rank, element in enumerate(order)}
            return tuple(tuple(position[i] <= position[j] for j in range(size)) for i in range(size))
        if len(order) != size or any(len(row) != size for row in order):
            raise AlgebraError(f"order matrix must be {size}x{size}")
        return tuple(tuple(bool(cell) for cell in row) for row in order)

    def _extreme(self, given: Optional[int], lowest: bool) -> int:
        if given is not None:
            self.check(given)
            return given
        for candidate in range(self.size):
            if all((self._leq[candidate][j] if lowest else self._leq[j][candidate]) for j in range(self.size)):
                return candidate
        raise AlgebraError(f"order of {self.name} has no {'least' if lowest else 'greatest'} element")

    def elements(self):
        return tuple(range(self.size))

    @property
    def is_chain(self) -> bool:
        return all(self._leq[i][j] or self._leq[j][i] for i in range(self.size) for j in range(self.size))

    def contains(self, value):
        return isinstance(value, int) and not isinstance(value, bool) and 0 <= value < self.size

    def coerce(self, raw: Any) -> TruthValue:
        try:
            value = int(raw)
        except (TypeError, ValueError):
            raise AlgebraError(f"table algebra {self.name} expects an element index, got {raw!r}") from None
        self.check(value)
        return value

    def _conj(self, a, b):
        return self._conj_table[a][b]

    def _residuum(self, a, b):
        return self._residuum_table[a][b]

    def _bound(self, a, b, lower: bool) -> Optional[int]:
        if lower:
            candidates = [c for c in range(self.size) if self._leq[c][a] and self._leq[c][b]]
            best = [c for c in candidates if all(self._leq[d][c] for d in candidates)]
        else:
            candidates = [c for c in range(self.size) if self._leq[a][c] and self._leq[b][c]]
            best = [c for c in candidates if all(self._leq[c][d] for d in candidates)]
        return best[0] if len(best) == 1 else None

    def _meet(self, a, b):
        return self._bound(a, b, lower=True)

    def _join(self, a, b):
        return self._bound(a, b, lower=False)

    def leq(self, a, b) -> bool:
        self.check(a, b)
        return self._leq[a][b]

    def format(self, value, decimal=False):
        return str(value)

    def _key(self):
        return (type(self).__name__, self.name, self._conj_table, self._residuum_table, self._leq)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def conj(algebra: MtlAlgebra, a: TruthValue, b: TruthValue) -> TruthValue:
    return algebra.conj(a, b)


def residuum(algebra: MtlAlgebra, a: TruthValue, b: TruthValue) -> TruthValue:
    return algebra.residuum(a, b)


@dataclass(frozen=True)
class LawReport:
    """Outcome of check_residuation: passed, or the first failing law and its witness"""

    passed: bool
    law: str = ""
    witness: Tuple[TruthValue, ...] = ()
    checked: int = 0

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return f"pass ({self.checked} checks)"
        return f"{self.law} fails at {', '.join(format_truth(w) for w in self.witness)}"


def check_residuation(algebra: MtlAlgebra, samples: Optional[Sequence[TruthValue]] = None) -> LawReport:
    """
    Check the MTL-algebra laws on all pairs and triples of samples

    Args:
        algebra: algebra under test
        samples: elements to combine; the whole carrier when omitted

    Returns:
        LawReport with the first counterexample. Pairs are checked for
        closure and meet/join existence, then single elements for bounds
        and unit, then pairs for commutativity and prelinearity, then
        triples for associativity, monotonicity and residuation.
    """
    if samples is None:
        samples = algebra.elements()
        if samples is None:
            raise AlgebraError(f"{algebra.name} is infinite; pass explicit samples")
    samples = list(samples)
    algebra.check(*samples)

    checked = 0
    leq = algebra.leq
    bottom, top = algebra.bottom, algebra.top

    for a in samples:
        for b in samples:
            checked += 1
            c, r = algebra._conj(a, b), algebra._residuum(a, b)
            if not (algebra.contains(c) and algebra.contains(r)):
                return LawReport(False, "closure", (a, b), checked)
            if algebra._meet(a, b) is None or algebra._join(a, b) is None:
                return LawReport(False, "meet/join existence", (a, b), checked)

    for a in samples:
        checked += 1
        if not (leq(bottom, a) and leq(a, top)):
            return LawReport(False, "bounds", (a,), checked)
        if algebra._conj(a, top) != a or algebra._conj(top, a) != a:
            return LawReport(False, "unit", (a,), checked)

    for a in samples:
        for b in samples:
            checked += 1
            if algebra._conj(a, b) != algebra._conj(b, a):
                return LawReport(False, "commutativity", (a, b), checked)
            if algebra._join(algebra._residuum(a, b), algebra._residuum(b, a)) != top:
                return LawReport(False, "prelinearity", (a, b), checked)

    for a in samples:
        for b in samples:
            for c in samples:
                checked += 1
                if algebra._conj(algebra._conj(a, b), c) != algebra._conj(a, algebra._conj(b, c)):
                    return LawReport(False, "associativity", (a, b, c), checked)
                if leq(a, b):
                    if not leq(algebra._conj(a, c), algebra._conj(b, c)):
                        return LawReport(False, "conj monotonicity", (a, b, c), checked)
                    if not leq(algebra._residuum(b, c), algebra._residuum(a, c)):
                        return LawReport(False, "residuum antitonicity", (a, b, c), checked)
                    if not leq(algebra._residuum(c, a), algebra._residuum(c, b)):
                        return LawReport(False, "residuum monotonicity", (a, b, c), checked)
                if leq(algebra._conj(a, b), c) != leq(a, algebra._residuum(b, c)):
                    return LawReport(False, "residuation", (a, b, c), checked)

    _logger.debug(f"Algebra laws hold for {algebra.name} on {len(samples)} samples")
    return LawReport(True, checked=checked)


# ---------------------------------------------------------------------------
# Registry and value text
# ---------------------------------------------------------------------------

_ALIASES = {
    "boolean": "boolean",
    "b2": "boolean",
    "godel": "godel",
    "g": "godel",
    "lukasiewicz": "lukasiewicz",
    "l": "lukasiewicz",
    "product": "product",
    "p": "product",
}

_CHAIN = re.compile(r"^(godel|lukasiewicz|g|l)-?(\d+|chain)$")


@lru_cache(maxsize=None)
def get_algebra(name: str, chain_size: int = 5) -> MtlAlgebra:
    """
    Bundled algebra by name

    Args:
        name: boolean (B2), godel (G), lukasiewicz (L), product (P), or a
            chain godel-N / lukasiewicz-N (GN, LN); godel-chain and
            lukasiewicz-chain take their size from chain_size
        chain_size: number of elements for *-chain names

    Returns:
        Algebra instance (shared)
    """
    key = name.strip().lower()
    if key in _ALIASES:
        return {
            "boolean": BooleanAlgebra,
            "godel": GodelAlgebra,
            "lukasiewicz": LukasiewiczAlgebra,
            "product": ProductAlgebra,
        }[_ALIASES[key]]()

    match = _CHAIN.match(key)
    if match:
        kind = {"g": "godel", "l": "lukasiewicz"}.get(match.group(1), match.group(1))
        size = chain_size if match.group(2) == "chain" else int(match.group(2))
        return FiniteChain(kind, size)

    raise AlgebraError(f"Unknown algebra: {name}")


_RATIONAL = re.compile(r"^\s*(-?\d+)\s*/\s*(\d+)\s*$")


def parse_rational(raw: Any) -> Fraction:
    if isinstance(raw, bool):
        raise AlgebraError(f"not a truth value: {raw!r}")
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        return Fraction(repr(raw))
    if isinstance(raw, str):
        match = _RATIONAL.match(raw)
        try:
            if match:
                return Fraction(int(match.group(1)), int(match.group(2)))
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise AlgebraError(f"not a truth value: {raw!r}")


def format_truth(value: TruthValue, decimal: bool = False) -> str:
    """p/q text of a value (integers print bare); decimal=True gives a decimal string"""
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    if not decimal:
        return f"{value.numerator}/{value.denominator}"

    denominator = value.denominator
    for prime in (2, 5):
        while denominator % prime == 0:
            denominator //= prime
    if denominator == 1:
        digits = 0
        scaled = value
        while scaled.denominator != 1:
            scaled *= 10
            digits += 1
        text = f"{scaled.numerator:0{digits + 1}d}" if scaled.numerator >= 0 else str(scaled.numerator)
        return f"{text[:-digits]}.{text[-digits:]}"
    return f"{float(value):.6g}"


def boolean_values(algebra: MtlAlgebra) -> Dict[TruthValue, TruthValue]:
    """The bound-preserving embedding of {0, 1} into an algebra"""
    return {ZERO: algebra.bottom, ONE: algebra.top}
