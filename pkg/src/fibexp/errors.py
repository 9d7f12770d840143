"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad input that a caller (or CLI user) can fix."""


class NotInvertibleError(ValidationError):
    """gcd(k, r) != 1, so k has no inverse mod r and targeting is impossible."""


class NotAndersonPairError(ValidationError):
    """(u, v) with v*phi + u <= 0 does not occur in the extended array."""


class DegenerateDeltaError(ValidationError):
    """delta(u, v) = 0, i.e. u = v = 0; no column can be assigned."""


class BackendMismatchError(ValidationError):
    """Group elements from different groups were combined."""
