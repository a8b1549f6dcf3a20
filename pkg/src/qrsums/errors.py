"""Exception types shared across the toolkit.

Everything derives from QrsumsError so callers can catch toolkit failures
in one place; the CLI maps QrsumsError to a usage-error exit code.
"""


class QrsumsError(Exception):
    """Base class for all toolkit errors."""


class CompositeInputError(QrsumsError):
    """Modulus failed a primality check."""


class EvenModulusError(QrsumsError):
    """Modulus is 2; the toolkit needs an odd prime."""


class TupleNotDistinctError(QrsumsError):
    """An operation requiring pairwise-distinct coordinates got a repeat."""


class OddTupleError(QrsumsError):
    """An operation defined only for even tuple length got odd k."""


class EmptySetError(QrsumsError):
    """A set argument that must be nonempty was empty."""


class ModulusMismatchError(QrsumsError):
    """Two arguments were built over different prime moduli."""


class BudgetExceededError(QrsumsError):
    """An exhaustive enumeration would exceed the configured budget."""


class HypothesisViolatedError(QrsumsError):
    """A conditional inequality was evaluated on a pair that does not
    satisfy its hypothesis (A+B inside the residue set).

    Deliberately distinct from the inequality itself failing: a failed
    hypothesis means the check does not apply, not that the bound is wrong.
    """


class ParameterRangeError(QrsumsError):
    """A real parameter (eta, delta, theta) fell outside its domain."""
