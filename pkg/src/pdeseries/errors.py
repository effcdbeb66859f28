"""Exception types shared across the solver modules."""


class PdeSeriesError(Exception):
    """Base class for all library-specific failures."""


class AtomBudgetError(PdeSeriesError):
    """An expression exceeded the atom-count cap during normalization."""

    def __init__(self, count, cap, step=None):
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"expression grew to {count} atoms (cap {cap}){where}")
        self.count = count
        self.cap = cap
        self.step = step


class NonEigenAtomError(PdeSeriesError):
    """An atom is not a Laplacian eigenfunction where one is required."""

    def __init__(self, atom_text):
        super().__init__(f"atom {atom_text} is not a Laplacian eigenfunction")
        self.atom_text = atom_text


class ZeroEigenvalueError(PdeSeriesError):
    """Inverse Laplacian requested for a harmonic atom (eigenvalue 0)."""

    def __init__(self, atom_text):
        super().__init__(
            f"atom {atom_text} has Laplacian eigenvalue 0; not invertible"
        )
        self.atom_text = atom_text


class ResonanceError(PdeSeriesError):
    """The implicit step operator is singular on an exponential class.

    ``lam`` is the x-exponent of the failing class, ``step`` the series
    index being computed when known.
    """

    def __init__(self, lam, step=None):
        self.lam = lam
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(
            f"resonance{where}: operator not invertible on exponential "
            f"class lambda = {lam!r} (1 - c*lambda^i = 0)"
        )


class ExpressionSyntaxError(PdeSeriesError):
    """Text expression rejected by the parser, with a 0-based position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ProblemFileError(PdeSeriesError):
    """Problem-definition file rejected, with a 1-based line number."""

    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class PotentialSingularityError(PdeSeriesError):
    """The harmonic potential was evaluated at its singular point."""
