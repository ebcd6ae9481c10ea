"""Exception types shared across modules."""


class BudgetExceeded(RuntimeError):
    """A node/time/size budget was hit; results so far are partial."""


class NotAManifoldCertificate(ValueError):
    """An operation requiring certified sphere links was invoked without
    a certificate."""


class ConstructionFailed(RuntimeError):
    """Exact polytope construction failed an internal consistency check."""


class InvalidMove(ValueError):
    """A bistellar move was applied that is not valid on the complex."""


class NotAMatching(ValueError):
    """The missing edges of a candidate cross-polytope subcomplex do not
    form a perfect matching."""
