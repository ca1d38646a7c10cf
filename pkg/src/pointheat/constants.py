"""Physical constants (CODATA 2018), shared by every module."""

CONSTANTS_VERSION = "CODATA2018"

HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23       # J / K
C = 2.99792458e8        # m / s
