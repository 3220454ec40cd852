"""Exception hierarchy for the design toolkit."""


class QpmDesignError(Exception):
    """Base class for all toolkit errors."""


class OutOfRange(QpmDesignError):
    """Requested wavelength/temperature outside a model's validated domain."""


class NoGuidedMode(QpmDesignError):
    """The waveguide does not support a fundamental mode at the requested
    wavelength (no interior maximum of the effective-index functional)."""


class QuadratureFailure(QpmDesignError):
    """Adaptive quadrature could not reach the requested tolerance."""


class NonPositiveFrequency(QpmDesignError):
    """An index combination yields a non-positive QPM spatial frequency."""


class DegenerateModulation(QpmDesignError):
    """K1 = K2: the modulation period diverges, a single-period grating
    suffices and the dual-period construction is undefined."""


class DegenerateGroupIndices(QpmDesignError):
    """Group-index difference too small; bandwidth formally unbounded."""


class FilterTooWide(QpmDesignError):
    """Bandpass filter wider than the narrower process bandwidth."""


class UndefinedGamma(QpmDesignError):
    """Both process amplitudes vanish; entanglement degree undefined."""


class ConfigError(QpmDesignError):
    """Invalid or inconsistent run configuration."""
