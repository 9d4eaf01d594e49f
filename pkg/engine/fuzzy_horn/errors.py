"""
Engine errors - one base class, one subclass per failure family
"""

from typing import Optional


class HornEngineError(ValueError):
    """Base class for every error raised by the engine"""


class ConfigError(HornEngineError):
    """Invalid engine configuration"""


class ParseError(HornEngineError):
    """Surface text does not conform to the grammar"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None, text: str = ""):
        self.line = line
        self.column = column
        self.text = text
        location = ""
        if line is not None:
            location = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{message}{location}")


class SignatureError(HornEngineError):
    """Undeclared symbol, arity mismatch or malformed declaration"""


class AlgebraError(HornEngineError):
    """Foreign truth value or an operation table that is not an MTL-algebra"""


class EvaluationError(HornEngineError):
    """Evaluation cannot start (unmapped variable, wrong kind of formula)"""


class StructureError(HornEngineError):
    """Malformed or non-total structure"""


class NotHornError(HornEngineError):
    """A theory handed to the saturation engine contains a non-Horn formula"""

    def __init__(self, message: str, formula=None):
        self.formula = formula
        super().__init__(message)


class InconsistentTheoryError(HornEngineError):
    """The theory derives 0̄"""


class HerbrandError(HornEngineError):
    """Herbrand construction preconditions are violated"""


class MorphismError(HornEngineError):
    """A structure map cannot be built or checked"""


class NotReducedError(MorphismError):
    """Target structure lacks the equality property"""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class WellDefinednessError(MorphismError):
    """Two terms of one class are sent to different elements"""

    def __init__(self, message: str, members=None, values=None):
        self.members = members
        self.values = values
        super().__init__(message)


class NotAModelError(MorphismError):
    """Target structure does not satisfy the theory"""

    def __init__(self, message: str, check=None):
        self.check = check
        super().__init__(message)
