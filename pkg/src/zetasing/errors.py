"""Exception hierarchy shared by every stage of the pipeline."""


class ZetasingError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ZetasingError, ValueError):
    """A scalar argument lies outside its admissible interval."""


class StructuralError(ZetasingError, ValueError):
    """Shapes, lengths or bases of the operands do not match."""


class ContractError(ZetasingError, ValueError):
    """A documented precondition of an operation was violated."""


class DegenerateInputError(ZetasingError):
    """The pipeline reached a state that valid input can never produce."""


class SchemaError(ZetasingError, ValueError):
    """A problem file does not match the expected JSON layout.

    ``path`` is a JSON-pointer-like location such as ``A[1][0]``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class LagrangianError(ContractError):
    """The boundary matrices do not describe a Lagrangian subspace."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
