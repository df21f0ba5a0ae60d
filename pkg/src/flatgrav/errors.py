"""Exception types shared across the library."""


class FlatgravError(Exception):
    """Base class for all library errors."""


class PotentialOutOfRange(FlatgravError):
    """Scalar potential g0 >= 1: the time warp factor 1/(1 - g0) blows up."""


class NonPositiveRadius(FlatgravError):
    """A radius that must be > 0 was not."""


class InvalidSpeed(FlatgravError):
    """Coordinate or physical speed at or above the speed of light."""


class NoConvergence(FlatgravError):
    """Fixed-point iteration exhausted its step budget."""


class UnboundOrbit(FlatgravError):
    """Orbital elements describe an unbound (ecc >= 1) trajectory."""


class TurningPointNotFound(FlatgravError):
    """Radial turning points of a bound orbit could not be located."""


class ToleranceNotMet(FlatgravError):
    """An integration finished without reaching the requested tolerance."""


class InsufficientOrbits(FlatgravError):
    """Trajectory does not span enough perihelion passages."""


class DenominatorVanishes(FlatgravError):
    """Rosette equation evaluated outside its validity regime (3*r_o*u >= 1)."""


class GeometryInvalid(FlatgravError):
    """Ray/echo geometry fails its sanity constraints."""


class RayCaptured(FlatgravError):
    """Photon path left the weak-field validity region (u > 1/(4*r_o))."""


class UnsupportedQuantity(FlatgravError):
    """Baseline comparison asked for a quantity it does not provide."""


class ConfigInvalid(FlatgravError):
    """Scenario configuration failed validation."""


class NumericalFailure(FlatgravError):
    """A numerical routine failed downstream of valid input."""
