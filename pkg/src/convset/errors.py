"""Exception hierarchy shared by all modules."""


class ConvsetError(Exception):
    """Base class; the CLI maps it to exit code 1."""


class StructureError(ConvsetError):
    """Operands disagree in variable count, backend or shape."""


class PreconditionError(ConvsetError):
    """An operation was called outside its documented domain."""


class TriangularityError(PreconditionError):
    """A coefficient table has a nonzero entry d_pq with p > q."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"nonzero entry at (p, q) = {witness} with p > q")


class SolverError(ConvsetError):
    """An iterative numerical solve failed to converge; CLI exit code 2."""
