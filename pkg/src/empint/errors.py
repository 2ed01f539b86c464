"""Exception taxonomy shared across the package.

Every error raised on a violated precondition has its own class so callers
(and the command line driver) can react to the exact failure mode instead
of string-matching messages.
"""


class EmpintError(Exception):
    """Base class for all package-specific errors."""


# -- measure spaces ---------------------------------------------------------

class EmptySpace(EmpintError):
    """The atom list is empty."""


class WeightsNotNormalized(EmpintError):
    """Atom weights do not sum to one (exactly, or within float tolerance)."""


class NegativeWeight(EmpintError):
    """An atom weight is negative."""


class EnumerationTooLarge(EmpintError):
    """An exhaustive enumeration would exceed the configured cap."""


# -- kernels ----------------------------------------------------------------

class SpaceMismatch(EmpintError):
    """Two kernels (or a kernel and a sample) live on different spaces."""


class NoSuchAxis(EmpintError):
    """An axis label is not present in the kernel."""


class SameAxis(EmpintError):
    """An operation needs two distinct axes but got the same one twice."""


class ArityMismatch(EmpintError):
    """A kernel has the wrong number of arguments for the operation."""


class NotCanonical(EmpintError):
    """A kernel fails the vanishing-marginals requirement."""


# -- diagrams ---------------------------------------------------------------

class InvalidClass(EmpintError):
    """Contraction class parameters violate 0 <= p <= l <= min(k1, k2)."""


class InvalidDiagram(EmpintError):
    """Edge set or coloring violates the diagram constraints."""


# -- dominance certificates -------------------------------------------------

class BlockMismatch(EmpintError):
    """Certificate blocks do not partition the kernel's axis labels."""


class SigmaMismatch(EmpintError):
    """Two certificates that must share a variance budget do not."""


class RankTooSmall(EmpintError):
    """The requested contraction would push the certificate rank below one."""


# -- tail and moment bounds -------------------------------------------------

class NonpositiveX(EmpintError):
    """Tail bounds are only defined for positive levels x."""


class OutOfRegime(EmpintError):
    """The level x lies outside the bound's regime of validity."""


class BadM(EmpintError):
    """Moment order must be a power of two for the recursion-based bounds."""


class RegimeViolation(EmpintError):
    """A side condition such as k*M <= n fails."""


# -- Monte Carlo ------------------------------------------------------------

class InsufficientTailData(EmpintError):
    """Too few grid points with nonzero exceedance to fit constants."""


class EmptyGrid(EmpintError):
    """A level grid must contain at least one point."""
