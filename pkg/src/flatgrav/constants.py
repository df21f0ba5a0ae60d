"""Physical constants for the SI conversion boundary.

All library internals use geometric units (c = 1, lengths in meters);
these constants only appear when converting to or from SI at the CLI edge.
"""
import math

G_SI = 6.674e-11        # m^3 kg^-1 s^-2
C_SI = 2.998e8          # m/s

ARCSEC_PER_RAD = 180.0 * 3600.0 / math.pi
SECONDS_PER_CENTURY = 100.0 * 365.25 * 86400.0
