from .chart import Cut, DivisorChart, RationalForm
from .curves import CurveModel, SiInstance
from .cycles import IntCycle, RatCycle
from .graph import ResolutionGraph
from .results import H1Bounds, LauferReduction, LauferStep, MinimizationResult
from .seifert import SeifertData, WhForm, WhInvariants, parse_seifert
from .series import ExpSeries

__all__ = [
    "Cut",
    "CurveModel",
    "DivisorChart",
    "ExpSeries",
    "H1Bounds",
    "IntCycle",
    "LauferReduction",
    "LauferStep",
    "MinimizationResult",
    "RatCycle",
    "RationalForm",
    "ResolutionGraph",
    "SeifertData",
    "SiInstance",
    "WhForm",
    "WhInvariants",
    "parse_seifert",
]
