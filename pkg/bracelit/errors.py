"""
Exception hierarchy for bracelit.
Every error carries the first failing witness both as attributes and in its message.
"""


class BracelitError(Exception):
    """Base class for all bracelit errors."""


class ValidationError(BracelitError, ValueError):
    """
    Raised when an input table, set or map violates a required axiom.

    Attributes:
        side: Which table of a brace failed ("add" or "mul"), or None for plain groups.
    """

    side: str | None = None

    def tagged(self, side: str) -> "ValidationError":
        """Attach the failing side of a brace and prefix the message."""
        self.side = side
        self.args = (f"[{side}] {self.args[0]}" if self.args else f"[{side}]",)
        return self


class TableShapeError(ValidationError):
    def __init__(self, shape: tuple[int, ...]):
        self.shape = shape
        super().__init__(f"Operation table must be a square array with entries in 0..n-1, got shape {shape}")


class NotLatinSquare(ValidationError):
    def __init__(self, axis: str, index: int):
        self.axis = axis
        self.index = index
        super().__init__(f"Table is not a Latin square: {axis} {index} repeats an entry")


class NoIdentity(ValidationError):
    def __init__(self) -> None:
        super().__init__("Table has no two-sided identity element")


class NoInverse(ValidationError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"Element {element} has no two-sided inverse")


class NotAssociative(ValidationError):
    def __init__(self, i: int, j: int, k: int):
        self.witness = (i, j, k)
        super().__init__(f"Associativity fails at ({i}, {j}, {k})")


class NotASubgroup(ValidationError):
    def __init__(self, elements: tuple[int, ...]):
        self.elements = elements
        super().__init__(f"Not a subgroup: {list(elements)}")


class IdentityMismatch(ValidationError):
    def __init__(self, add_identity: int, mul_identity: int):
        self.add_identity = add_identity
        self.mul_identity = mul_identity
        super().__init__(f"Additive identity {add_identity} differs from multiplicative identity {mul_identity}")


class BraceIdentityFails(ValidationError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"Brace identity a*(b+c) = a*b - a + a*c fails at (a, b, c) = ({a}, {b}, {c})")


class NotAdditiveSubgroup(ValidationError):
    def __init__(self, elements: tuple[int, ...]):
        self.elements = elements
        super().__init__(f"Not an additive subgroup: {list(elements)}")


class NotLeftIdeal(ValidationError):
    def __init__(self, elements: tuple[int, ...]):
        self.elements = elements
        super().__init__(f"Not a left ideal: {list(elements)}")


class NotAnIdeal(ValidationError):
    def __init__(self, elements: tuple[int, ...]):
        self.elements = elements
        super().__init__(f"Not an ideal: {list(elements)}")


class NotASubBrace(ValidationError):
    def __init__(self, which: str, elements: tuple[int, ...]):
        self.which = which
        self.elements = elements
        super().__init__(f"{which} is not a sub-skew brace: {list(elements)}")


class NotTwoSided(ValidationError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"Brace is not two-sided: (a+b)*c = a*c - c + b*c fails at ({a}, {b}, {c})")


class SigmaNotAutomorphism(ValidationError):
    def __init__(self, u: int):
        self.u = u
        super().__init__(f"Action of {u} does not preserve both operations of the first factor")


class SigmaNotHomomorphism(ValidationError):
    def __init__(self, u: int, v: int):
        self.witness = (u, v)
        super().__init__(f"Action is not a homomorphism at ({u}, {v})")


class BoundExceeded(BracelitError):
    def __init__(self, order: int, bound: int, what: str):
        self.order = order
        self.bound = bound
        self.what = what
        super().__init__(f"{what}: order {order} exceeds the configured bound {bound}")


class ParseError(BracelitError, ValueError):
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class AlgebraError(ValidationError):
    """Base class for malformed structure-constant input."""


class IndexOutOfRange(AlgebraError):
    def __init__(self, entry: tuple[object, ...], dim: int):
        self.entry = entry
        super().__init__(f"Entry {entry} has an index outside 0..{dim - 1}")


class DuplicateEntry(AlgebraError):
    def __init__(self, key: tuple[int, int, int]):
        self.key = key
        super().__init__(f"Duplicate entry for (i, j, k) = {key}")


class DimensionMismatch(AlgebraError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"Expected a coefficient sequence of length {expected}, got {got}")


class MissingBracket(AlgebraError):
    def __init__(self) -> None:
        super().__init__("Algebra has no bracket")


class InternalFault(BracelitError, AssertionError):
    """A post-condition that holds on validated input failed."""
