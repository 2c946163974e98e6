from .chart import abel_map_chart, pairing_coord, residue_constraint_rank
from .series import TruncSeries

__all__ = ["TruncSeries", "abel_map_chart", "pairing_coord", "residue_constraint_rank"]
