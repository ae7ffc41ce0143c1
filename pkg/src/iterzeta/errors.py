"""Exception taxonomy.

Two broad families matter for callers (and for the CLI exit codes):

* ``ValidationError`` subclasses: the request itself is malformed or outside
  the supported desk range.  Nothing was computed.
* ``ComputationError`` subclasses: the request was legal but a numeric
  procedure could not finish within its budget (refinement depth, sieve
  limit, search grid, ...).  Partial diagnostics go into the message.
"""


class IterzetaError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(IterzetaError):
    """Input outside the documented contract."""


class PoleAtOne(ValidationError):
    """Evaluation requested at the pole s = 1."""


class UnsupportedRange(ValidationError):
    """Point outside the supported desk range (sigma, |t| or m)."""


class ParseError(ValidationError):
    """Malformed text input; message carries the line number."""


class MonotonicityError(ValidationError):
    """Zero ordinates not strictly increasing."""


class LimitExceeded(ValidationError):
    """Requested size above the hard cap (sieve limit, box dimension)."""


class ConvergenceDomain(ValidationError):
    """Series argument outside the guaranteed convergence disk."""


class CutoffExceeded(ValidationError):
    """Cutoff X larger than the prime table provides."""


class TooFewSamples(ValidationError):
    """Grid or sample count too small to be meaningful."""


class TooFewRadii(ValidationError):
    """A polygon needs at least three sides."""


class DominanceViolation(ValidationError):
    """One side longer than the sum of all others."""


class TargetOutsideDisk(ValidationError):
    """Polygon target outside the reachable disk |z| <= sum of radii."""


class TableCoverage(ValidationError):
    """Zero table does not cover the requested height range."""


class ComputationError(IterzetaError):
    """Numeric procedure failed within its budget."""


class BranchObstruction(ComputationError):
    """Branch tracking blocked by a zero within guard distance of the ray."""


class QuadratureNonconvergence(ComputationError):
    """Adaptive quadrature hit its maximum refinement depth."""


class RootFindFailure(ComputationError):
    """Scalar root finder failed to bracket or converge."""


class WindowExhausted(ComputationError):
    """Prime window cannot satisfy the construction inequalities
    within the sieve limit (epsilon too small or limit too low)."""


class BudgetExceeded(ComputationError):
    """Search grid or evaluation budget above the configured cap."""
