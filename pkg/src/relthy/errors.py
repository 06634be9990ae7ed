"""Exception hierarchy shared by every relthy module."""


class RelthyError(Exception):
    """Base class for all errors raised by relthy."""


class UnknownGenerator(RelthyError):
    def __init__(self, name):
        super().__init__(f"unknown generator {name!r}")
        self.name = name


class UnknownSort(RelthyError):
    def __init__(self, name):
        super().__init__(f"unknown sort {name!r}")
        self.name = name


class InterfaceMismatch(RelthyError):
    """Raised when two interfaces that must agree do not.

    ``position`` is a dotted path of child indices from the root of the term
    to the offending ``Seq`` node (``""`` for the root itself).
    """

    def __init__(self, position, expected, found):
        super().__init__(
            f"interface mismatch at {position or '<root>'}: "
            f"expected {list(expected)}, found {list(found)}"
        )
        self.position = position
        self.expected = tuple(expected)
        self.found = tuple(found)


class NotParallel(RelthyError):
    pass


class TheoryError(RelthyError):
    """A theory violates one of its well-formedness invariants."""


class AxiomTypeError(TheoryError):
    def __init__(self, name, cause):
        super().__init__(f"axiom {name!r} does not typecheck: {cause}")
        self.name = name
        self.cause = cause


class NotEndo(RelthyError):
    pass


class NotAPer(RelthyError):
    pass


class SearchSpaceTooLarge(RelthyError):
    def __init__(self, bits, budget):
        super().__init__(
            f"search space of 2^{bits} candidate interpretations exceeds "
            f"budget {budget}; stream the results or raise the budget"
        )
        self.bits = bits
        self.budget = budget


class ParseError(RelthyError):
    def __init__(self, line, col, msg):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col
        self.msg = msg


class ModelError(RelthyError):
    """A model's interpretation does not match its theory's arities."""
