"""Local quantum uncertainty of XY and XYT spin chains near criticality."""

__version__ = "0.1.0"

from spincrit.state import CorrelatorSet, TwoSiteState, build_rho
from spincrit.lqu import LquResult, lqu, lqu_bruteforce, skew_information, w_matrix
from spincrit.xy import XYParams, xy_correlators
from spincrit.xyt import XYTParams, xyt_correlators

__all__ = [
    "CorrelatorSet",
    "LquResult",
    "TwoSiteState",
    "XYParams",
    "XYTParams",
    "build_rho",
    "lqu",
    "lqu_bruteforce",
    "skew_information",
    "w_matrix",
    "xy_correlators",
    "xyt_correlators",
]
