from .core import canonical_cycle, chi, dual_base, parse_graph, validate_graph
from .dominance import generic_h1, in_sdom, in_van, is_dominant, l_dom
from .laufer import laufer_reduce, laufer_zmin
from .minimize import min_chi_box, min_chi_orthant

__all__ = [
    "canonical_cycle",
    "chi",
    "dual_base",
    "generic_h1",
    "in_sdom",
    "in_van",
    "is_dominant",
    "l_dom",
    "laufer_reduce",
    "laufer_zmin",
    "min_chi_box",
    "min_chi_orthant",
    "parse_graph",
    "validate_graph",
]
